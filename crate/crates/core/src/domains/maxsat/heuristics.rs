use alloc::vec::Vec;

use rand::seq::index;
use rand::Rng;

use super::{Assignment, MaxSat};
use crate::rng::argmax_random_ties;
use crate::params::{ceil_count, pass_budget};
use crate::RunRng;

/// Flip the variable of highest net gain, ties uniformly at random.
pub(super) fn gsat(p: &MaxSat, a: &mut Assignment, rng: &mut RunRng) {
    if let Some(v) = argmax_random_ties(0..p.num_vars(), |v| a.net_gain(v), rng) {
        p.flip(a, v);
    }
}

/// Like GSAT, ties broken by highest age, then lowest index.
pub(super) fn hsat(p: &MaxSat, a: &mut Assignment) {
    let best = (0..p.num_vars()).max_by(|&x, &y| {
        (a.net_gain(x), a.age(x))
            .cmp(&(a.net_gain(y), a.age(y)))
            .then(y.cmp(&x))
    });
    if let Some(v) = best {
        p.flip(a, v);
    }
}

fn random_broken_clause(a: &Assignment, rng: &mut RunRng) -> Option<usize> {
    let broken = a.broken_clauses();
    if broken.is_empty() {
        None
    } else {
        Some(broken[rng.gen_range(0..broken.len())] as usize)
    }
}

pub(super) fn walksat(p: &MaxSat, a: &mut Assignment, rng: &mut RunRng) {
    let Some(c) = random_broken_clause(a, rng) else {
        return;
    };
    let vars: Vec<usize> = p.clause_var_ids(c).collect();
    let free: Vec<usize> = vars
        .iter()
        .copied()
        .filter(|&v| a.negative_gain(v) == 0)
        .collect();
    let v = if !free.is_empty() {
        free[rng.gen_range(0..free.len())]
    } else if rng.gen_bool(0.5) {
        vars[rng.gen_range(0..vars.len())]
    } else {
        *vars
            .iter()
            .min_by_key(|&&v| (a.negative_gain(v), v))
            .expect("clauses are non-empty")
    };
    p.flip(a, v);
}

pub(super) fn novelty(p: &MaxSat, a: &mut Assignment, rng: &mut RunRng) {
    let Some(c) = random_broken_clause(a, rng) else {
        return;
    };
    let mut ranked: Vec<usize> = p.clause_var_ids(c).collect();
    // highest net gain first, lowest index on ties
    ranked.sort_by(|&x, &y| a.net_gain(y).cmp(&a.net_gain(x)).then(x.cmp(&y)));
    let best = ranked[0];
    let min_age = ranked.iter().map(|&v| a.age(v)).min().expect("non-empty");
    let v = if ranked.len() == 1 || a.age(best) != min_age || rng.gen_bool(0.3) {
        best
    } else {
        ranked[1]
    };
    p.flip(a, v);
}

/// Re-randomise `ceil(intensity * n)` distinct variables.
pub(super) fn reinitialise(p: &MaxSat, a: &mut Assignment, intensity: f64, rng: &mut RunRng) {
    let n = p.num_vars();
    let k = ceil_count(intensity * n as f64).min(n);
    let chosen: Vec<usize> = if k == n {
        // same draw order as a fresh random assignment
        (0..n).collect()
    } else {
        index::sample(rng, n, k).into_vec()
    };
    for v in chosen {
        let value = rng.gen_bool(0.5);
        if a.values[v] != value {
            p.flip(a, v);
        }
    }
}

/// First-improvement search over flips proposed by `propose`; sideways
/// flips are taken, worsening ones are not. Stops after the attempt budget
/// or `n` consecutive attempts without strict improvement.
fn first_improvement(
    p: &MaxSat,
    a: &mut Assignment,
    depth: f64,
    rng: &mut RunRng,
    propose: impl Fn(&Assignment, &mut RunRng) -> Option<usize>,
) {
    let n = p.num_vars();
    let mut stale = 0usize;
    for _ in 0..pass_budget(depth, n) {
        if stale >= n {
            break;
        }
        let Some(v) = propose(a, rng) else {
            break;
        };
        let gain = a.net_gain(v);
        if gain >= 0 {
            p.flip(a, v);
        }
        if gain > 0 {
            stale = 0;
        } else {
            stale += 1;
        }
    }
}

pub(super) fn local_search_random(p: &MaxSat, a: &mut Assignment, depth: f64, rng: &mut RunRng) {
    let n = p.num_vars();
    if n == 0 {
        return;
    }
    first_improvement(p, a, depth, rng, |_, rng| Some(rng.gen_range(0..n)));
}

pub(super) fn local_search_broken(p: &MaxSat, a: &mut Assignment, depth: f64, rng: &mut RunRng) {
    first_improvement(p, a, depth, rng, |a, rng| {
        let c = random_broken_clause(a, rng)?;
        let vars: Vec<usize> = p.clause_var_ids(c).collect();
        Some(vars[rng.gen_range(0..vars.len())])
    });
}

/// Child takes `[0, cut)` from `first` and `[cut, n)` from `second`.
pub(crate) fn one_point_at(first: &[bool], second: &[bool], cut: usize) -> Vec<bool> {
    first[..cut].iter().chain(&second[cut..]).copied().collect()
}

pub(super) fn one_point(first: &[bool], second: &[bool], rng: &mut RunRng) -> Vec<bool> {
    let n = first.len();
    if n < 2 {
        return first.to_vec();
    }
    one_point_at(first, second, rng.gen_range(1..n))
}

pub(super) fn two_point(first: &[bool], second: &[bool], rng: &mut RunRng) -> Vec<bool> {
    let n = first.len();
    if n < 3 {
        return one_point(first, second, rng);
    }
    let mut cuts = index::sample(rng, n - 1, 2).into_vec();
    cuts.sort_unstable();
    let (lo, hi) = (cuts[0] + 1, cuts[1] + 1);
    (0..n)
        .map(|i| if (lo..hi).contains(&i) { second[i] } else { first[i] })
        .collect()
}
