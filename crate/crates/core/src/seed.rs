//! Deterministic seed fan-out.
//!
//! Every randomized component derives its seed from a master seed plus a
//! string path naming the job (dataset, selector, measure, repeat index, …)
//! via FNV-1a. Unlike the std hasher this is stable across processes and
//! builds, so adding one run to a benchmark never shifts another run's
//! random stream.

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// Derives a child seed from `master` and a path of name components.
pub fn mix(master: u64, parts: &[&str]) -> u64 {
    let mut hash = FNV_OFFSET;
    for byte in master.to_le_bytes() {
        hash = (hash ^ byte as u64).wrapping_mul(FNV_PRIME);
    }
    for part in parts {
        for &byte in part.as_bytes() {
            hash = (hash ^ byte as u64).wrapping_mul(FNV_PRIME);
        }
        // Separator so ("ab","c") and ("a","bc") diverge.
        hash = (hash ^ 0x1f).wrapping_mul(FNV_PRIME);
    }
    hash
}
