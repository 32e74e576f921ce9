//! Nodal Lagrange basis at Gauss-Legendre solution points.

use ndarray::Array2;

/// Evaluate the Legendre polynomial `P_n` and its derivative at `x` by the
/// three-term recurrence.
pub fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let p_next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = p_next;
    }
    // P'_n(x) = n (x P_n - P_{n-1}) / (x^2 - 1), safe away from +-1.
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Gauss-Legendre nodes of the (n-point) rule, ascending in `(-1, 1)`.
///
/// Newton iteration on `P_n` to ~1e-15; the node set is symmetrized so that
/// `r[i] = -r[n-1-i]` holds exactly in floating point.
fn gauss_nodes(n: usize) -> Vec<f64> {
    let mut nodes = vec![0.0; n];
    for i in 0..n {
        // Standard asymptotic initial guess.
        let mut x = -(std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Enforce exact reflection symmetry.
    for i in 0..n / 2 {
        let m = 0.5 * (nodes[n - 1 - i] - nodes[i]);
        nodes[i] = -m;
        nodes[n - 1 - i] = m;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    nodes
}

/// Nodal Lagrange basis on the Gauss-Legendre points of degree `order`.
#[derive(Debug, Clone)]
pub struct NodalBasis {
    /// Polynomial degree P.
    pub order: usize,
    /// The P+1 solution points in `(-1, 1)`.
    pub nodes: Vec<f64>,
    /// Gauss quadrature weights associated with the nodes.
    pub weights: Vec<f64>,
    /// Barycentric weights of the node set.
    pub bary_weights: Vec<f64>,
    /// Derivative operator, `diff_matrix[(i, j)] = l_j'(r_i)`.
    pub diff_matrix: Array2<f64>,
    /// `l_j(-1)` for all j.
    pub boundary_interp_left: Vec<f64>,
    /// `l_j(+1)` for all j.
    pub boundary_interp_right: Vec<f64>,
}

impl NodalBasis {
    pub fn new(order: usize) -> Self {
        let np = order + 1;
        let nodes = gauss_nodes(np);

        let mut weights = vec![0.0; np];
        for (i, &x) in nodes.iter().enumerate() {
            let (_, dp) = legendre_and_derivative(np, x);
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }

        let mut bary = vec![1.0; np];
        for j in 0..np {
            for k in 0..np {
                if k != j {
                    bary[j] *= nodes[j] - nodes[k];
                }
            }
            bary[j] = 1.0 / bary[j];
        }

        let mut diff = Array2::zeros((np, np));
        for i in 0..np {
            let mut row_sum = 0.0;
            for j in 0..np {
                if i != j {
                    let d = (bary[j] / bary[i]) / (nodes[i] - nodes[j]);
                    diff[(i, j)] = d;
                    row_sum += d;
                }
            }
            // Negative row-sum trick keeps D * const = 0 to round-off.
            diff[(i, i)] = -row_sum;
        }

        let basis = Self {
            order,
            boundary_interp_left: Vec::new(),
            boundary_interp_right: Vec::new(),
            weights,
            bary_weights: bary,
            nodes,
            diff_matrix: diff,
        };
        let left = basis.eval_lagrange(-1.0);
        let right = basis.eval_lagrange(1.0);
        Self {
            boundary_interp_left: left,
            boundary_interp_right: right,
            ..basis
        }
    }

    /// All Lagrange cardinal polynomials evaluated at `t` (barycentric form).
    pub fn eval_lagrange(&self, t: f64) -> Vec<f64> {
        let np = self.nodes.len();
        // Exact cardinal property if t coincides with a node.
        for (j, &x) in self.nodes.iter().enumerate() {
            if t == x {
                let mut v = vec![0.0; np];
                v[j] = 1.0;
                return v;
            }
        }
        let terms: Vec<f64> = (0..np)
            .map(|j| self.bary_weights[j] / (t - self.nodes[j]))
            .collect();
        let denom: f64 = terms.iter().sum();
        terms.iter().map(|&w| w / denom).collect()
    }

    /// Interpolate nodal values `u` to the point `t`.
    pub fn interpolate(&self, u: &[f64], t: f64) -> f64 {
        self.eval_lagrange(t)
            .iter()
            .zip(u)
            .map(|(l, v)| l * v)
            .sum()
    }
}
