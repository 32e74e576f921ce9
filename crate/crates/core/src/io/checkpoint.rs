//! Binary checkpoints with checksums and mesh-hash verification.
//!
//! Layout (little-endian): magic, schema version, metadata, the conserved
//! state, the SFD filter vector, then an FNV-1a checksum of everything
//! before it. Restoring verifies magic, version, checksum and (through the
//! caller) the mesh hash, giving bit-exact resume.

use std::path::Path;

use crate::error::{Error, Result};

const MAGIC: &[u8; 8] = b"PFRCKPT\x01";
const VERSION: u32 = 1;

/// Run identity and position stored alongside the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckpointMeta {
    /// Hash of the discretization (mesh edges, order); restores onto a
    /// different mesh are rejected by the caller comparing this value.
    pub mesh_hash: u64,
    pub step: u64,
    pub time: f64,
}

#[derive(Debug, Clone)]
pub struct Checkpoint {
    pub meta: CheckpointMeta,
    pub state: Vec<f64>,
    pub q_bar: Vec<f64>,
}

/// FNV-1a, 64-bit.
pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn push_f64s(buf: &mut Vec<u8>, values: &[f64]) {
    buf.extend_from_slice(&(values.len() as u64).to_le_bytes());
    for v in values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
}

fn read_u64(bytes: &[u8], pos: &mut usize) -> Result<u64> {
    let end = *pos + 8;
    let slice = bytes
        .get(*pos..end)
        .ok_or_else(|| Error::Checkpoint("truncated file".into()))?;
    *pos = end;
    Ok(u64::from_le_bytes(slice.try_into().unwrap()))
}

fn read_f64s(bytes: &[u8], pos: &mut usize) -> Result<Vec<f64>> {
    let n = read_u64(bytes, pos)? as usize;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(f64::from_bits(read_u64(bytes, pos)?));
    }
    Ok(out)
}

pub fn save_checkpoint(ckpt: &Checkpoint, path: &Path) -> Result<()> {
    let mut buf = Vec::with_capacity(64 + 8 * (ckpt.state.len() + ckpt.q_bar.len()));
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&ckpt.meta.mesh_hash.to_le_bytes());
    buf.extend_from_slice(&ckpt.meta.step.to_le_bytes());
    buf.extend_from_slice(&ckpt.meta.time.to_le_bytes());
    push_f64s(&mut buf, &ckpt.state);
    push_f64s(&mut buf, &ckpt.q_bar);
    let checksum = fnv1a(&buf);
    buf.extend_from_slice(&checksum.to_le_bytes());
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, buf)?;
    Ok(())
}

pub fn restore(path: &Path) -> Result<Checkpoint> {
    let bytes = std::fs::read(path)?;
    if bytes.len() < MAGIC.len() + 4 + 8 {
        return Err(Error::Checkpoint("file too short".into()));
    }
    if &bytes[..8] != MAGIC {
        return Err(Error::Checkpoint("bad magic; not a checkpoint file".into()));
    }
    let payload_len = bytes.len() - 8;
    let stored = u64::from_le_bytes(bytes[payload_len..].try_into().unwrap());
    let computed = fnv1a(&bytes[..payload_len]);
    if stored != computed {
        return Err(Error::Checkpoint(format!(
            "checksum mismatch: stored {stored:#x}, computed {computed:#x}"
        )));
    }
    let mut pos = 8;
    let version = u32::from_le_bytes(bytes[pos..pos + 4].try_into().unwrap());
    pos += 4;
    if version != VERSION {
        return Err(Error::Checkpoint(format!(
            "unsupported checkpoint version {version} (expected {VERSION})"
        )));
    }
    let mesh_hash = read_u64(&bytes, &mut pos)?;
    let step = read_u64(&bytes, &mut pos)?;
    let time = f64::from_bits(read_u64(&bytes, &mut pos)?);
    let state = read_f64s(&bytes, &mut pos)?;
    let q_bar = read_f64s(&bytes, &mut pos)?;
    Ok(Checkpoint {
        meta: CheckpointMeta {
            mesh_hash,
            step,
            time,
        },
        state,
        q_bar,
    })
}
