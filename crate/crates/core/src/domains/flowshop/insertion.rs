use alloc::vec;
use alloc::vec::Vec;

use super::{FlowShopInstance, JobPermutation};

/// Makespan of inserting `job` at every position `0..=seq.len()` of `seq`,
/// in O(len * m) using head, tail and forward completion tables.
pub fn insertion_makespans(inst: &FlowShopInstance, seq: &[u32], job: u32) -> Vec<u64> {
    let m = inst.machines();
    let k = seq.len();
    // heads: e[i] is the completion row of seq[..i]; e[0] = 0
    let mut e = vec![0u64; (k + 1) * m];
    for i in 0..k {
        let row = inst.row(seq[i]);
        let mut prev = 0;
        for j in 0..m {
            let v = prev.max(e[i * m + j]) + row[j];
            e[(i + 1) * m + j] = v;
            prev = v;
        }
    }
    // tails: q[i] is the time from the start of seq[i] on machine j to the end; q[k] = 0
    let mut q = vec![0u64; (k + 1) * m];
    for i in (0..k).rev() {
        let row = inst.row(seq[i]);
        let mut next = 0;
        for j in (0..m).rev() {
            let v = next.max(q[(i + 1) * m + j]) + row[j];
            q[i * m + j] = v;
            next = v;
        }
    }
    let px = inst.row(job);
    (0..=k)
        .map(|pos| {
            let mut f = 0;
            let mut best = 0;
            for j in 0..m {
                f = f.max(e[pos * m + j]) + px[j];
                best = best.max(f + q[pos * m + j]);
            }
            best
        })
        .collect()
}

/// Leftmost position with minimal makespan.
pub fn best_insertion(inst: &FlowShopInstance, seq: &[u32], job: u32) -> (usize, u64) {
    let all = insertion_makespans(inst, seq, job);
    let mut best = (0, all[0]);
    for (pos, &v) in all.iter().enumerate().skip(1) {
        if v < best.1 {
            best = (pos, v);
        }
    }
    best
}

/// NEH construction: insert jobs in `rank` order, each at its best position.
pub fn neh(inst: &FlowShopInstance, rank: &[u32]) -> JobPermutation {
    let mut seq = Vec::with_capacity(rank.len());
    let mut value = 0;
    for &job in rank {
        let (pos, v) = best_insertion(inst, &seq, job);
        seq.insert(pos, job);
        value = v;
    }
    if seq.is_empty() {
        return JobPermutation::new(inst, seq);
    }
    JobPermutation { order: seq, makespan: value }
}
