use alloc::vec;
use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::insertion::{best_insertion, insertion_makespans};
use super::{makespan, FlowShopInstance};
use crate::params::floor_count;
use crate::RunRng;

pub(super) fn reinsert(order: &mut Vec<u32>, rng: &mut RunRng) {
    let n = order.len();
    if n < 2 {
        return;
    }
    let job = order.remove(rng.gen_range(0..n));
    order.insert(rng.gen_range(0..n), job);
}

pub(super) fn swap(order: &mut [u32], rng: &mut RunRng) {
    let n = order.len();
    if n < 2 {
        return;
    }
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    order.swap(a, b);
}

pub(super) fn shuffle_subset(order: &mut [u32], alpha: f64, rng: &mut RunRng) {
    let n = order.len();
    if n < 2 {
        return;
    }
    let k = (2 + floor_count(alpha * (n - 2) as f64)).min(n);
    let positions = index::sample(rng, n, k).into_vec();
    let mut values: Vec<u32> = positions.iter().map(|&i| order[i]).collect();
    values.shuffle(rng);
    for (&i, v) in positions.iter().zip(values) {
        order[i] = v;
    }
}

fn ruin(order: &mut Vec<u32>, l: usize, rng: &mut RunRng) -> Vec<u32> {
    let positions = index::sample(rng, order.len(), l).into_vec();
    let removed: Vec<u32> = positions.iter().map(|&i| order[i]).collect();
    let mut gone = vec![false; order.len()];
    for &i in &positions {
        gone[i] = true;
    }
    let mut k = 0;
    order.retain(|_| {
        k += 1;
        !gone[k - 1]
    });
    removed
}

fn ruin_size(alpha: f64, n: usize) -> usize {
    floor_count(alpha * n.saturating_sub(1) as f64)
}

pub(super) fn iterated_greedy(inst: &FlowShopInstance, order: &mut Vec<u32>, alpha: f64, rng: &mut RunRng) {
    let l = ruin_size(alpha, order.len());
    if l == 0 {
        return;
    }
    for job in ruin(order, l, rng) {
        let (pos, _) = best_insertion(inst, order, job);
        order.insert(pos, job);
    }
}

pub(super) fn iterated_greedy_beam(
    inst: &FlowShopInstance,
    order: &mut Vec<u32>,
    alpha: f64,
    beta: f64,
    rng: &mut RunRng,
) {
    let l = ruin_size(alpha, order.len());
    if l == 0 {
        return;
    }
    let q = floor_count(beta * (l - 1) as f64) + 1;
    let removed = ruin(order, l, rng);
    let mut beam: Vec<Vec<u32>> = vec![core::mem::take(order)];
    for job in removed {
        let mut candidates: Vec<(u64, usize, usize)> = Vec::new();
        for (b, seq) in beam.iter().enumerate() {
            for (pos, v) in insertion_makespans(inst, seq, job).into_iter().enumerate() {
                candidates.push((v, b, pos));
            }
        }
        candidates.sort_unstable();
        let mut next: Vec<Vec<u32>> = Vec::with_capacity(q);
        for (_, b, pos) in candidates {
            let mut seq = Vec::with_capacity(beam[b].len() + 1);
            seq.extend_from_slice(&beam[b][..pos]);
            seq.push(job);
            seq.extend_from_slice(&beam[b][pos..]);
            if !next.contains(&seq) {
                next.push(seq);
                if next.len() == q {
                    break;
                }
            }
        }
        beam = next;
    }
    *order = beam.swap_remove(0);
}

/// Moves the job at `from` to its best position if that strictly improves
/// `current`; returns the new makespan when it moved.
fn best_move(inst: &FlowShopInstance, order: &mut Vec<u32>, from: usize, current: u64) -> Option<u64> {
    let job = order.remove(from);
    let (pos, v) = best_insertion(inst, order, job);
    if v < current {
        order.insert(pos, job);
        Some(v)
    } else {
        order.insert(from, job);
        None
    }
}

/// First position (left to right) that strictly improves `current`.
fn first_move(inst: &FlowShopInstance, order: &mut Vec<u32>, from: usize, current: u64) -> Option<u64> {
    let job = order.remove(from);
    let all = insertion_makespans(inst, order, job);
    match all.iter().position(|&v| v < current) {
        Some(pos) => {
            order.insert(pos, job);
            Some(all[pos])
        }
        None => {
            order.insert(from, job);
            None
        }
    }
}

type Move = fn(&FlowShopInstance, &mut Vec<u32>, usize, u64) -> Option<u64>;

fn descend(inst: &FlowShopInstance, order: &mut Vec<u32>, step: Move) {
    if order.len() < 2 {
        return;
    }
    let mut current = makespan(inst, order);
    loop {
        let mut improved = false;
        let snapshot = order.clone();
        for job in snapshot {
            let from = order.iter().position(|&j| j == job).expect("job present");
            if let Some(v) = step(inst, order, from, current) {
                current = v;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
}

pub(super) fn steepest(inst: &FlowShopInstance, order: &mut Vec<u32>) {
    descend(inst, order, best_move);
}

pub(super) fn first_improvement(inst: &FlowShopInstance, order: &mut Vec<u32>) {
    descend(inst, order, first_move);
}

pub(super) fn random_pass(inst: &FlowShopInstance, order: &mut Vec<u32>, beta: f64, best: bool, rng: &mut RunRng) {
    let n = order.len();
    if n < 2 {
        return;
    }
    let r = (floor_count(beta * (n - 1) as f64) + 1).min(n);
    let jobs: Vec<u32> = index::sample(rng, n, r).iter().map(|i| order[i]).collect();
    let step: Move = if best { best_move } else { first_move };
    let mut current = makespan(inst, order);
    for job in jobs {
        let from = order.iter().position(|&j| j == job).expect("job present");
        if let Some(v) = step(inst, order, from, current) {
            current = v;
        }
    }
}

/// Two ordered cut points `a < b` in `0..=n`.
fn cuts(n: usize, rng: &mut RunRng) -> (usize, usize) {
    let mut pair = index::sample(rng, n + 1, 2).into_vec();
    pair.sort_unstable();
    (pair[0], pair[1])
}

pub(crate) fn ox_at(first: &[u32], second: &[u32], a: usize, b: usize) -> Vec<u32> {
    let n = first.len();
    let mut child = vec![u32::MAX; n];
    let mut used = vec![false; n];
    for i in a..b {
        child[i] = first[i];
        used[first[i] as usize] = true;
    }
    let mut fill = (b..n).chain(0..a);
    for k in 0..n {
        let job = second[(b + k) % n];
        if !used[job as usize] {
            child[fill.next().expect("free slot")] = job;
        }
    }
    child
}

pub(super) fn ox(first: &[u32], second: &[u32], rng: &mut RunRng) -> Vec<u32> {
    let (a, b) = cuts(first.len(), rng);
    ox_at(first, second, a, b)
}

pub(crate) fn pmx_at(first: &[u32], second: &[u32], a: usize, b: usize) -> Vec<u32> {
    let n = first.len();
    let mut pos_in_first = vec![usize::MAX; n];
    for i in a..b {
        pos_in_first[first[i] as usize] = i;
    }
    let mut child = second.to_vec();
    child[a..b].copy_from_slice(&first[a..b]);
    for i in (0..a).chain(b..n) {
        let mut job = second[i];
        while pos_in_first[job as usize] != usize::MAX {
            job = second[pos_in_first[job as usize]];
        }
        child[i] = job;
    }
    child
}

pub(super) fn pmx(first: &[u32], second: &[u32], rng: &mut RunRng) -> Vec<u32> {
    let (a, b) = cuts(first.len(), rng);
    pmx_at(first, second, a, b)
}

pub(crate) fn ppx_with(first: &[u32], second: &[u32], mut pick_first: impl FnMut() -> bool) -> Vec<u32> {
    let n = first.len();
    let mut used = vec![false; n];
    let (mut i, mut j) = (0, 0);
    let mut child = Vec::with_capacity(n);
    while child.len() < n {
        let parent = if pick_first() { (first, &mut i) } else { (second, &mut j) };
        let (seq, cursor) = parent;
        while used[seq[*cursor] as usize] {
            *cursor += 1;
        }
        let job = seq[*cursor];
        used[job as usize] = true;
        child.push(job);
    }
    child
}

pub(super) fn ppx(first: &[u32], second: &[u32], rng: &mut RunRng) -> Vec<u32> {
    ppx_with(first, second, || rng.gen_bool(0.5))
}

pub(crate) fn one_point_at(first: &[u32], second: &[u32], cut: usize) -> Vec<u32> {
    let mut used = vec![false; first.len()];
    let mut child = first[..cut].to_vec();
    for &job in &child {
        used[job as usize] = true;
    }
    child.extend(second.iter().filter(|&&j| !used[j as usize]));
    child
}

pub(super) fn one_point(first: &[u32], second: &[u32], rng: &mut RunRng) -> Vec<u32> {
    let n = first.len();
    let cut = if n < 2 { n } else { rng.gen_range(1..n) };
    one_point_at(first, second, cut)
}
