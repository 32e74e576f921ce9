//! Global advection matrices with periodic Bloch wrap, volume penalization
//! and the appended SFD filter block.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fr1d::{ElementOperators, NodalBasis};
use crate::masking::{Eta, MaskField, PenalizationParams};
use crate::sfd::SfdParams;

/// Half-length of the `[-1, 1]` analysis domain; enters the corner phase
/// factors `exp(+-2ikT)`.
pub const DOMAIN_HALF_LENGTH: f64 = 1.0;

/// Dense global operator for `du/dt = M u` at one Bloch wavenumber.
#[derive(Debug, Clone)]
pub struct GlobalOperator {
    pub matrix: Array2<Complex64>,
    pub n_elements: usize,
    pub order: usize,
    /// Solid ratio of the mask used in assembly (0 for the periodic case).
    pub solid_ratio: f64,
    /// The raw domain wavenumber the corner phases were evaluated at.
    pub wavenumber: f64,
    /// `(exp(-2ikT), exp(+2ikT))`.
    pub bloch_phase: (Complex64, Complex64),
    /// Physical coordinates of the u solution points (excludes the q_bar
    /// block).
    pub points_x: Vec<f64>,
    /// Per-point solid indicator for the u block.
    pub is_solid: Vec<bool>,
    /// Column/row offset of the appended q_bar block, if present.
    pub sfd_offset: Option<usize>,
}

impl GlobalOperator {
    /// Number of u unknowns (without the filter block).
    pub fn n_state(&self) -> usize {
        self.n_elements * (self.order + 1)
    }
}

fn block_write(
    m: &mut Array2<Complex64>,
    row0: usize,
    col0: usize,
    block: &ndarray::Array2<f64>,
    phase: Complex64,
) {
    for i in 0..block.nrows() {
        for j in 0..block.ncols() {
            m[(row0 + i, col0 + j)] += phase * block[(i, j)];
        }
    }
}

fn base_periodic(
    ops: &ElementOperators,
    n: usize,
    k: f64,
    extra: usize,
) -> (Array2<Complex64>, (Complex64, Complex64)) {
    let np = ops.order + 1;
    let size = n * np + extra;
    let mut m = Array2::zeros((size, size));
    let one = Complex64::new(1.0, 0.0);
    let phase_left = Complex64::from_polar(1.0, -2.0 * k * DOMAIN_HALF_LENGTH);
    let phase_right = phase_left.conj();
    for e in 0..n {
        let r0 = e * np;
        block_write(&mut m, r0, r0, &ops.center, one);
        if e > 0 {
            block_write(&mut m, r0, r0 - np, &ops.left, one);
        } else {
            // Wrap to the last element with the Bloch phase exp(-2ikT).
            block_write(&mut m, 0, (n - 1) * np, &ops.left, phase_left);
        }
        if e + 1 < n {
            block_write(&mut m, r0, r0 + np, &ops.right, one);
        } else {
            // Wrap to the first element with exp(+2ikT).
            block_write(&mut m, r0, 0, &ops.right, phase_right);
        }
    }
    (m, (phase_left, phase_right))
}

fn mesh_points(ops: &ElementOperators, n: usize) -> Vec<f64> {
    let basis = NodalBasis::new(ops.order);
    crate::fr1d::solution_points_1d(n, ops.h, -1.0, &basis.nodes)
}

/// Eq. B.5: plain periodic advection matrix (no mask) at wavenumber `k`.
pub fn assemble_periodic(ops: &ElementOperators, n: usize, k: f64) -> Result<GlobalOperator> {
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "periodic assembly needs at least 2 elements, got {n}"
        )));
    }
    let (matrix, bloch_phase) = base_periodic(ops, n, k, 0);
    let points_x = mesh_points(ops, n);
    let n_pts = points_x.len();
    Ok(GlobalOperator {
        matrix,
        n_elements: n,
        order: ops.order,
        solid_ratio: 0.0,
        wavenumber: k,
        bloch_phase,
        points_x,
        is_solid: vec![false; n_pts],
        sfd_offset: None,
    })
}

/// Eq. B.6: periodic matrix with the IBM element diagonal replaced by
/// `C - (1/eta) I - chi_f I`, the `chi_f I` coupling into the q_bar block,
/// and the filter rows `I/Delta`, `-I/Delta`. Disabling penalization or SFD
/// removes exactly the corresponding terms.
pub fn assemble_ibm_sfd(
    ops: &ElementOperators,
    n: usize,
    k: f64,
    mask: &MaskField,
    pen: &PenalizationParams,
    sfd: &SfdParams,
) -> Result<GlobalOperator> {
    if n < 2 {
        return Err(Error::InvalidParam(format!(
            "assembly needs at least 2 elements, got {n}"
        )));
    }
    let np = ops.order + 1;
    if mask.values.len() != n * np {
        return Err(Error::ShapeMismatch(format!(
            "mask has {} points, expected {}",
            mask.values.len(),
            n * np
        )));
    }
    // The slab must occupy whole elements.
    let mut solid_elems = Vec::new();
    for e in 0..n {
        let pts = &mask.values[e * np..(e + 1) * np];
        let count = pts.iter().filter(|&&s| s).count();
        if count == np {
            solid_elems.push(e);
        } else if count != 0 {
            return Err(Error::InvalidParam(format!(
                "solid region is not aligned with element boundaries (element {e} is partially masked)"
            )));
        }
    }

    let n_solid = solid_elems.len() * np;
    let extra = if sfd.enabled { n_solid } else { 0 };
    let (mut matrix, bloch_phase) = base_periodic(ops, n, k, extra);

    for (si, &e) in solid_elems.iter().enumerate() {
        let r0 = e * np;
        // -(1/eta) I on the IBM diagonal block.
        if let Eta::Finite(eta) = pen.eta {
            for i in 0..np {
                matrix[(r0 + i, r0 + i)] -= Complex64::new(1.0 / eta, 0.0);
            }
        }
        if sfd.enabled {
            let q0 = n * np + si * np;
            for i in 0..np {
                // -chi_f I on the IBM block, +chi_f I coupling into q_bar.
                matrix[(r0 + i, r0 + i)] -= Complex64::new(sfd.chi_f, 0.0);
                matrix[(r0 + i, q0 + i)] += Complex64::new(sfd.chi_f, 0.0);
                // Filter rows: dq_bar/dt = (u - q_bar)/Delta.
                matrix[(q0 + i, r0 + i)] += Complex64::new(1.0 / sfd.delta, 0.0);
                matrix[(q0 + i, q0 + i)] -= Complex64::new(1.0 / sfd.delta, 0.0);
            }
        }
    }

    let points_x = mesh_points(ops, n);
    Ok(GlobalOperator {
        matrix,
        n_elements: n,
        order: ops.order,
        solid_ratio: mask.solid_ratio,
        wavenumber: k,
        bloch_phase,
        points_x,
        is_solid: mask.values.clone(),
        sfd_offset: if sfd.enabled { Some(n * np) } else { None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fr1d::{CorrectionGradients, NodalBasis};
    use crate::masking::GeometryTag;
    use approx::assert_abs_diff_eq;

    fn ops(p: usize, n: usize) -> ElementOperators {
        let basis = NodalBasis::new(p);
        let corr = CorrectionGradients::new(&basis);
        ElementOperators::new(&basis, &corr, 2.0 / n as f64, 1.0, 1.0).unwrap()
    }

    #[test]
    fn corner_phases_are_unity_at_k_zero() {
        let op = assemble_periodic(&ops(2, 4), 4, 0.0).unwrap();
        assert_eq!(op.bloch_phase.0, Complex64::new(1.0, 0.0));
        assert_eq!(op.bloch_phase.1, Complex64::new(1.0, 0.0));
    }

    /// Hand-assembled P=0 case: each element reduces to a finite-volume
    /// upwind cell. With c=1, lambda=1, h=1: L = [1/h] = 1 times the left
    /// correction gradient (-1/2) times -2... the closed forms give
    /// L = 1/h, C = -1/h, R = 0, i.e. classic upwind du_n/dt = (u_{n-1} - u_n)/h.
    #[test]
    fn p0_matches_finite_volume_upwind() {
        let n = 2;
        let o = ops(0, n); // h = 1
        let op = assemble_periodic(&o, n, 0.0).unwrap();
        let expect = [[-1.0, 1.0], [1.0, -1.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(op.matrix[(i, j)].re, expect[i][j], epsilon = 1e-13);
                assert_abs_diff_eq!(op.matrix[(i, j)].im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn rejects_single_element() {
        assert!(assemble_periodic(&ops(1, 2), 1, 0.0).is_err());
    }

    #[test]
    fn upwind_spectrum_in_left_half_plane() {
        let n = 40;
        let o = ops(3, n);
        for k in [0.0, 3.1, 20.0] {
            let op = assemble_periodic(&o, n, k).unwrap();
            let (vals, _) = crate::eigen::eig_complex(&op.matrix).unwrap();
            for v in vals {
                assert!(v.re <= 1e-9, "eigenvalue {v} in the right half-plane at k={k}");
            }
        }
    }

    fn slab_mask(n: usize, p: usize, z: usize) -> MaskField {
        let basis = NodalBasis::new(p);
        let h = 2.0 / n as f64;
        let xs = crate::fr1d::solution_points_1d(n, h, -1.0, &basis.nodes);
        let delta = z as f64 * h;
        MaskField::new(
            xs.iter().map(|&x| crate::masking::mask_slab(x, delta)).collect(),
            GeometryTag::Slab,
        )
    }

    #[test]
    fn penalization_only_shifts_the_ibm_diagonal() {
        let n = 8;
        let p = 1;
        let o = ops(p, n);
        let pen = PenalizationParams::no_slip(Eta::Finite(1e-3)).unwrap();
        let base = assemble_periodic(&o, n, 0.7).unwrap();
        let with = assemble_ibm_sfd(&o, n, 0.7, &slab_mask(n, p, 1), &pen, &SfdParams::disabled())
            .unwrap();
        assert_eq!(with.matrix.nrows(), base.matrix.nrows());
        let np = p + 1;
        let ibm = n / 2; // slab starts at x = 0
        for i in 0..n * np {
            for j in 0..n * np {
                let diff = with.matrix[(i, j)] - base.matrix[(i, j)];
                if i == j && (ibm * np..(ibm + 1) * np).contains(&i) {
                    assert_abs_diff_eq!(diff.re, -1000.0, epsilon = 1e-9);
                } else {
                    assert_eq!(diff, Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn disabled_terms_reduce_to_periodic_plus_decoupled_filter() {
        let n = 8;
        let p = 2;
        let o = ops(p, n);
        let pen = PenalizationParams::disabled();
        let sfd = SfdParams {
            chi_f: 0.0,
            delta: 0.5,
            enabled: true,
        };
        let op = assemble_ibm_sfd(&o, n, 0.3, &slab_mask(n, p, 1), &pen, &sfd).unwrap();
        let base = assemble_periodic(&o, n, 0.3).unwrap();
        let nu = n * (p + 1);
        assert_eq!(op.matrix.nrows(), nu + (p + 1));
        // u-block identical to Eq. B.5; no coupling from q_bar into u.
        for i in 0..nu {
            for j in 0..nu {
                assert_eq!(op.matrix[(i, j)], base.matrix[(i, j)]);
            }
            for j in nu..nu + p + 1 {
                assert_eq!(op.matrix[(i, j)], Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn misaligned_slab_is_rejected() {
        let n = 8;
        let p = 2;
        let o = ops(p, n);
        let basis = NodalBasis::new(p);
        let xs = crate::fr1d::solution_points_1d(n, 2.0 / n as f64, -1.0, &basis.nodes);
        // Slab of half an element width: cuts through element interiors.
        let delta = 0.5 * (2.0 / n as f64);
        let mask = MaskField::new(
            xs.iter().map(|&x| crate::masking::mask_slab(x, delta)).collect(),
            GeometryTag::Slab,
        );
        let pen = PenalizationParams::no_slip(Eta::Finite(1e-3)).unwrap();
        let err = assemble_ibm_sfd(&o, n, 0.0, &mask, &pen, &SfdParams::disabled());
        assert!(err.is_err());
    }
}
