//! Output writers: full-precision CSV tables and checksummed binary
//! checkpoints.

mod checkpoint;
mod csv;

pub use checkpoint::{restore, save_checkpoint, Checkpoint, CheckpointMeta};
pub use csv::{format_f64, read_csv, write_csv, Cell, Table};

/// Hash used to fingerprint discretizations in checkpoint files.
pub fn checkpoint_hash(bytes: &[u8]) -> u64 {
    checkpoint::fnv1a(bytes)
}
