use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{best_fit_insert, Bin, Packing, PackingInstance};
use crate::params::{ceil_count, floor_count, pass_budget};
use crate::RunRng;

fn sq(x: u64) -> u128 {
    u128::from(x) * u128::from(x)
}

fn locate(p: &Packing, n: usize) -> Vec<(usize, usize)> {
    let mut at = vec![(0, 0); n];
    for (i, b) in p.bins.iter().enumerate() {
        for (k, &piece) in b.pieces.iter().enumerate() {
            at[piece as usize] = (i, k);
        }
    }
    at
}

fn two_distinct(n: usize, rng: &mut RunRng) -> Option<(usize, usize)> {
    if n < 2 {
        return None;
    }
    let a = rng.gen_range(0..n);
    let mut b = rng.gen_range(0..n - 1);
    if b >= a {
        b += 1;
    }
    Some((a, b))
}

fn lowest_bin(p: &Packing) -> Option<usize> {
    p.bins
        .iter()
        .enumerate()
        .min_by_key(|(i, b)| (b.fullness, *i))
        .map(|(i, _)| i)
}

fn repack(inst: &PackingInstance, p: &mut Packing, mut pieces: Vec<u32>) {
    pieces.sort_by_key(|&j| (core::cmp::Reverse(inst.weights[j as usize]), j));
    for j in pieces {
        best_fit_insert(inst, p, j);
    }
}

pub(super) fn swap_pieces(inst: &PackingInstance, p: &mut Packing, rng: &mut RunRng) {
    let Some((a, b)) = two_distinct(inst.num_pieces(), rng) else {
        return;
    };
    let at = locate(p, inst.num_pieces());
    let (ba, ka) = at[a];
    let (bb, kb) = at[b];
    if ba == bb {
        return;
    }
    let (wa, wb) = (inst.weights[a], inst.weights[b]);
    p.bins[ba].pieces.swap_remove(ka);
    p.bins[ba].fullness -= wa;
    p.bins[bb].pieces.swap_remove(kb);
    p.bins[bb].fullness -= wb;
    let mut moves = [(a, bb, wa), (b, ba, wb)];
    moves.sort_by_key(|m| m.0);
    for (piece, target, w) in moves {
        if p.bins[target].fullness + w <= inst.capacity {
            p.bins[target].push(piece as u32, w);
        } else {
            p.bins.push(Bin::with(piece as u32, w));
        }
    }
}

pub(super) fn split_bin(inst: &PackingInstance, p: &mut Packing, rng: &mut RunRng) {
    let n = p.bins.len();
    let total: usize = p.bins.iter().map(|b| b.pieces.len()).sum();
    let candidates: Vec<usize> = (0..n)
        .filter(|&i| p.bins[i].pieces.len() * n > total)
        .collect();
    let Some(&i) = candidates.choose(rng) else {
        return;
    };
    let old = core::mem::take(&mut p.bins[i].pieces);
    let mut halves = [Bin { pieces: Vec::new(), fullness: 0 }, Bin { pieces: Vec::new(), fullness: 0 }];
    for (k, j) in old.into_iter().enumerate() {
        halves[k % 2].push(j, inst.weights[j as usize]);
    }
    let [keep, moved] = halves;
    p.bins[i] = keep;
    p.bins.push(moved);
}

pub(super) fn repack_lowest(inst: &PackingInstance, p: &mut Packing) {
    let Some(i) = lowest_bin(p) else {
        return;
    };
    let bin = p.bins.remove(i);
    repack(inst, p, bin.pieces);
}

pub(super) fn ruin_count(alpha: f64, bins: usize) -> usize {
    (1 + floor_count(5.0 * alpha)).min(bins)
}

pub(super) fn ruin(inst: &PackingInstance, p: &mut Packing, x: usize, highest: bool) {
    let mut order: Vec<usize> = (0..p.bins.len()).collect();
    if highest {
        order.sort_by_key(|&i| (core::cmp::Reverse(p.bins[i].fullness), i));
    } else {
        order.sort_by_key(|&i| (p.bins[i].fullness, i));
    }
    let mut chosen = vec![false; p.bins.len()];
    for &i in order.iter().take(x) {
        chosen[i] = true;
    }
    let mut pieces = Vec::new();
    let mut kept = Vec::with_capacity(p.bins.len());
    for (i, b) in core::mem::take(&mut p.bins).into_iter().enumerate() {
        if chosen[i] {
            pieces.extend(b.pieces);
        } else {
            kept.push(b);
        }
    }
    p.bins = kept;
    repack(inst, p, pieces);
}

pub(super) fn swap_descent(inst: &PackingInstance, p: &mut Packing, beta: f64, rng: &mut RunRng) {
    let n = inst.num_pieces();
    if n < 2 {
        return;
    }
    let mut at = locate(p, n);
    let mut stale = 0;
    for _ in 0..pass_budget(beta, n) {
        if stale >= n {
            break;
        }
        stale += 1;
        let (a, b) = two_distinct(n, rng).expect("n >= 2");
        let ((ba, ka), (bb, kb)) = (at[a], at[b]);
        if ba == bb {
            continue;
        }
        let (wa, wb) = (inst.weights[a], inst.weights[b]);
        let fa = p.bins[ba].fullness - wa + wb;
        let fb = p.bins[bb].fullness - wb + wa;
        if fa > inst.capacity || fb > inst.capacity {
            continue;
        }
        let before = sq(p.bins[ba].fullness) + sq(p.bins[bb].fullness);
        let after = sq(fa) + sq(fb);
        if after < before {
            continue;
        }
        if after > before {
            stale = 0;
        }
        p.bins[ba].pieces[ka] = b as u32;
        p.bins[bb].pieces[kb] = a as u32;
        p.bins[ba].fullness = fa;
        p.bins[bb].fullness = fb;
        at[a] = (bb, kb);
        at[b] = (ba, ka);
    }
}

/// One exchange move out of the lowest bin; false when none exists.
fn exchange_once(inst: &PackingInstance, p: &mut Packing, rng: &mut RunRng) -> bool {
    let Some(low) = lowest_bin(p) else {
        return false;
    };
    let w = |j: u32| inst.weights[j as usize];
    let (kp, &piece) = p.bins[low]
        .pieces
        .iter()
        .enumerate()
        .max_by_key(|(k, &j)| (w(j), core::cmp::Reverse(*k)))
        .expect("bins are non-empty");
    let wp = w(piece);
    let mut others: Vec<usize> = (0..p.bins.len()).filter(|&i| i != low).collect();
    others.shuffle(rng);

    for &i in &others {
        let room = inst.capacity - p.bins[i].fullness;
        let best = p.bins[i]
            .pieces
            .iter()
            .enumerate()
            .filter(|(_, &q)| w(q) < wp && wp - w(q) <= room)
            .max_by_key(|(k, &q)| (w(q), core::cmp::Reverse(*k)));
        if let Some((kq, &q)) = best {
            let d = wp - w(q);
            p.bins[i].pieces[kq] = piece;
            p.bins[i].fullness += d;
            p.bins[low].pieces[kp] = q;
            p.bins[low].fullness -= d;
            return true;
        }
    }

    for &i in &others {
        let room = inst.capacity - p.bins[i].fullness;
        let bin = &p.bins[i].pieces;
        let mut found = None;
        'pairs: for x in 0..bin.len() {
            for y in x + 1..bin.len() {
                let pair = w(bin[x]) + w(bin[y]);
                if pair < wp && wp - pair <= room {
                    found = Some((x, y, pair));
                    break 'pairs;
                }
            }
        }
        if let Some((x, y, pair)) = found {
            let d = wp - pair;
            let bin = &mut p.bins[i];
            let (q1, q2) = (bin.pieces[x], bin.pieces[y]);
            bin.pieces.swap_remove(y);
            bin.pieces[x] = piece;
            bin.fullness += d;
            let lowb = &mut p.bins[low];
            lowb.pieces[kp] = q1;
            lowb.pieces.push(q2);
            lowb.fullness -= d;
            return true;
        }
    }
    false
}

pub(super) fn exchange_lowest(inst: &PackingInstance, p: &mut Packing, beta: f64, rng: &mut RunRng) {
    let iterations = ceil_count((1.0 + 9.0 * beta) * p.bins.len() as f64);
    for _ in 0..iterations {
        if !exchange_once(inst, p, rng) {
            break;
        }
    }
}

pub(super) fn exon_shuffling(inst: &PackingInstance, a: &Packing, b: &Packing) -> Packing {
    let mut all: Vec<&Bin> = a.bins.iter().chain(b.bins.iter()).collect();
    all.sort_by_key(|bin| inst.capacity - bin.fullness);
    let mut used = vec![false; inst.num_pieces()];
    let mut taken = vec![false; all.len()];
    let mut child = Packing::default();
    for (t, bin) in all.iter().enumerate() {
        if bin.pieces.iter().all(|&j| !used[j as usize]) {
            for &j in &bin.pieces {
                used[j as usize] = true;
            }
            child.bins.push((*bin).clone());
            taken[t] = true;
        }
    }
    for (t, bin) in all.iter().enumerate() {
        if taken[t] {
            continue;
        }
        let mut rest = Bin { pieces: Vec::new(), fullness: 0 };
        for &j in &bin.pieces {
            if !core::mem::replace(&mut used[j as usize], true) {
                rest.push(j, inst.weights[j as usize]);
            }
        }
        if !rest.pieces.is_empty() {
            child.bins.push(rest);
        }
    }
    child
}
