use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::{Model, Roster, OFF};
use crate::domain::ApplyContext;
use crate::params::{ceil_count, floor_count, pass_budget, round_count};
use crate::RunRng;

pub(super) fn rebuild_few(alpha: f64) -> usize {
    round_count(alpha * 4.0) + 2
}

pub(super) fn rebuild_proportional(alpha: f64, employees: usize) -> usize {
    round_count(alpha * employees as f64)
}

pub(super) fn unassign(m: &Model, r: &mut Roster, alpha: f64, rng: &mut RunRng) {
    let cells: Vec<(usize, usize)> = r.assignments().map(|(e, d, _)| (e, d)).collect();
    let k = ceil_count(alpha * cells.len() as f64).min(cells.len());
    for i in index::sample(rng, cells.len(), k) {
        let (e, d) = cells[i];
        r.set(m, e, d, None);
    }
}

/// First-improvement additions over `cells` until a full pass adds nothing.
fn fill(m: &Model, r: &mut Roster, cells: &[(usize, usize)]) {
    loop {
        let mut improved = false;
        for &(e, d) in cells {
            if r.raw(e, d) != OFF {
                continue;
            }
            if let Some(s) = (0..m.s as u32).find(|&s| r.delta(m, e, d, Some(s)) < 0) {
                r.set(m, e, d, Some(s));
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
}

pub(super) fn greedy_add(m: &Model, r: &mut Roster, rng: &mut RunRng) {
    let mut cells: Vec<(usize, usize)> = (0..m.e).flat_map(|e| (0..m.d).map(move |d| (e, d))).collect();
    cells.shuffle(rng);
    fill(m, r, &cells);
}

/// Requests to work first, then greedy additions over the row in random day order.
fn rebuild_row(m: &Model, r: &mut Roster, e: usize, rng: &mut RunRng) {
    for d in 0..m.d {
        for &k in &m.requests_at[e * m.d + d] {
            let q = &m.inst.requests[k as usize];
            if !q.on || r.raw(e, d) != OFF {
                continue;
            }
            let shift = q.shift.unwrap_or_else(|| {
                (0..m.s as u32).min_by_key(|&s| r.delta(m, e, d, Some(s))).expect("at least one shift")
            });
            r.set(m, e, d, Some(shift));
        }
    }
    let mut days: Vec<(usize, usize)> = (0..m.d).map(|d| (e, d)).collect();
    days.shuffle(rng);
    fill(m, r, &days);
}

pub(super) fn ruin_recreate(m: &Model, r: &mut Roster, x: usize, rng: &mut RunRng) {
    let x = x.min(m.e);
    let chosen = index::sample(rng, m.e, x).into_vec();
    for &e in &chosen {
        for d in 0..m.d {
            r.set(m, e, d, None);
        }
    }
    for &e in &chosen {
        rebuild_row(m, r, e, rng);
    }
}

/// Applies `cells` (position, value) pairs and keeps them only on strict improvement.
fn try_cells(m: &Model, r: &mut Roster, cells: &[(usize, usize, u8)]) -> bool {
    let before = r.penalty();
    let mut undo: Vec<(usize, usize, u8)> = Vec::with_capacity(cells.len());
    for &(e, d, v) in cells {
        undo.push((e, d, r.raw(e, d)));
        r.set(m, e, d, super::decode(v));
    }
    if r.penalty() < before {
        return true;
    }
    for &(e, d, v) in undo.iter().rev() {
        r.set(m, e, d, super::decode(v));
    }
    false
}

fn sampled_descent(m: &Model, r: &mut Roster, beta: f64, rng: &mut RunRng, mut propose: impl FnMut(&Roster, &mut RunRng) -> Option<Vec<(usize, usize, u8)>>) {
    let size = m.e * m.d;
    let mut stale = 0;
    for _ in 0..pass_budget(beta, size) {
        if stale >= size {
            break;
        }
        stale += 1;
        if let Some(cells) = propose(r, rng) {
            if try_cells(m, r, &cells) {
                stale = 0;
            }
        }
    }
}

pub(super) fn swap_between(m: &Model, r: &mut Roster, beta: f64, rng: &mut RunRng) {
    if m.e < 2 {
        return;
    }
    sampled_descent(m, r, beta, rng, |r, rng| {
        let a = rng.gen_range(0..m.e);
        let mut b = rng.gen_range(0..m.e - 1);
        if b >= a {
            b += 1;
        }
        let len = rng.gen_range(1..=3usize.min(m.d));
        let start = rng.gen_range(0..=m.d - len);
        let days = start..start + len;
        if days.clone().all(|d| r.raw(a, d) == r.raw(b, d)) {
            return None;
        }
        let mut cells = Vec::with_capacity(2 * len);
        for d in days {
            cells.push((a, d, r.raw(b, d)));
            cells.push((b, d, r.raw(a, d)));
        }
        Some(cells)
    });
}

pub(super) fn swap_within(m: &Model, r: &mut Roster, beta: f64, rng: &mut RunRng) {
    if m.d < 2 {
        return;
    }
    sampled_descent(m, r, beta, rng, |r, rng| {
        let e = rng.gen_range(0..m.e);
        let x = rng.gen_range(0..m.d);
        let mut y = rng.gen_range(0..m.d - 1);
        if y >= x {
            y += 1;
        }
        if r.raw(e, x) == r.raw(e, y) {
            return None;
        }
        Some(alloc::vec![(e, x, r.raw(e, y)), (e, y, r.raw(e, x))])
    });
}

struct Journal {
    undo: Vec<(usize, usize, u8)>,
}

impl Journal {
    fn set(&mut self, m: &Model, r: &mut Roster, e: usize, d: usize, v: u8) {
        self.undo.push((e, d, r.raw(e, d)));
        r.set(m, e, d, super::decode(v));
    }

    fn rollback(&mut self, m: &Model, r: &mut Roster, to: usize) {
        while self.undo.len() > to {
            let (e, d, v) = self.undo.pop().expect("non-empty");
            r.set(m, e, d, super::decode(v));
        }
    }
}

/// Moves a random assigned shift to the best receiving employee on the same
/// day, then keeps moving whatever that employee held, for up to `length`
/// steps. The best improving prefix is kept, otherwise everything is undone.
fn chain(m: &Model, r: &mut Roster, length: usize, regenerate: bool, rng: &mut RunRng) {
    let assigned: Vec<(usize, usize)> = r.assignments().map(|(e, d, _)| (e, d)).collect();
    let Some(&(mut holder, d)) = assigned.choose(rng) else {
        return;
    };
    let start = r.penalty();
    let mut journal = Journal { undo: Vec::new() };
    let mut best = (start, 0);
    let mut moving = r.raw(holder, d);
    let mut visited = alloc::vec![false; m.e];
    visited[holder] = true;
    for _ in 0..length {
        journal.set(m, r, holder, d, OFF);
        if regenerate {
            let mut days: Vec<(usize, usize)> = (0..m.d).filter(|&x| x != d).map(|x| (holder, x)).collect();
            days.shuffle(rng);
            for &(e, x) in &days {
                if r.raw(e, x) == OFF {
                    if let Some(s) = (0..m.s as u8).find(|&s| r.delta(m, e, x, Some(u32::from(s))) < 0) {
                        journal.set(m, r, e, x, s);
                    }
                }
            }
        }
        let receiver = (0..m.e)
            .filter(|&e| !visited[e] && r.raw(e, d) != moving)
            .min_by_key(|&e| (r.delta(m, e, d, Some(u32::from(moving))), e));
        let Some(receiver) = receiver else {
            break;
        };
        let displaced = r.raw(receiver, d);
        journal.set(m, r, receiver, d, moving);
        visited[receiver] = true;
        if r.penalty() < best.0 {
            best = (r.penalty(), journal.undo.len());
        }
        if displaced == OFF {
            break;
        }
        holder = receiver;
        moving = displaced;
    }
    journal.rollback(m, r, best.1);
}

pub(super) fn ejection_chain(m: &Model, r: &mut Roster, beta: f64, regenerate: bool, ctx: &mut ApplyContext<'_>) {
    let length = 1 + floor_count(9.0 * beta);
    let starts = ceil_count(beta * (m.e * m.d) as f64);
    let deadline = ctx.clock.map(|c| (c, c.elapsed_ms() + (beta * 5000.0) as u64));
    for _ in 0..starts {
        if let Some((clock, until)) = deadline {
            if clock.elapsed_ms() >= until {
                break;
            }
        }
        chain(m, r, length, regenerate, ctx.rng);
    }
}

/// Assignments ranked by the penalty increase caused by removing them,
/// largest first, ties by `(employee, day)`.
fn ranked(m: &Model, r: &Roster) -> Vec<(usize, usize, u8)> {
    let mut scored: Vec<(i64, usize, usize, u8)> = r
        .assignments()
        .map(|(e, d, s)| (-r.delta(m, e, d, None), e, d, s as u8))
        .collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    scored.into_iter().map(|(_, e, d, s)| (e, d, s)).collect()
}

pub(super) fn best_assignments(m: &Model, a: &Roster, b: &Roster, alpha: f64) -> Roster {
    let x = 4 + round_count((1.0 - alpha) * 16.0);
    let mut child = Roster::empty(m);
    for parent in [a, b] {
        for (e, d, s) in ranked(m, parent).into_iter().take(x) {
            if child.raw(e, d) == OFF {
                child.set(m, e, d, Some(u32::from(s)));
            }
        }
    }
    child
}

pub(super) fn common(m: &Model, a: &Roster, b: &Roster) -> Roster {
    let mut child = Roster::empty(m);
    for (e, d, s) in a.assignments() {
        if b.get(e, d) == Some(s) {
            child.set(m, e, d, Some(s));
        }
    }
    child
}

pub(super) fn alternate(m: &Model, a: &Roster, b: &Roster, rng: &mut RunRng) -> Roster {
    let mut child = common(m, a, b);
    let mut only = |p: &Roster| {
        let mut cells: Vec<(usize, usize, u32)> = p.assignments().filter(|&(e, d, _)| child.raw(e, d) == OFF).collect();
        cells.shuffle(rng);
        cells
    };
    let (first, second) = (only(a), only(b));
    let mut queues = [first.into_iter(), second.into_iter()];
    let mut turn = 0;
    let mut exhausted = [false; 2];
    while !(exhausted[0] && exhausted[1]) {
        match queues[turn].next() {
            Some((e, d, s)) => {
                if child.raw(e, d) == OFF && !child.cover_met(m, d, s) {
                    child.set(m, e, d, Some(s));
                }
            }
            None => exhausted[turn] = true,
        }
        turn = 1 - turn;
    }
    child
}
