use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};

use super::*;
use crate::rng::domain_stream;
use crate::SearchParameters;

fn lit(k: i64) -> Literal {
    Literal::from_dimacs(k).unwrap()
}

fn formula(n: usize, clauses: &[&[i64]]) -> CnfFormula {
    CnfFormula::new(n, clauses.iter().map(|c| c.iter().map(|&k| lit(k)).collect()).collect())
        .unwrap()
}

fn eq1() -> CnfFormula {
    formula(4, &[&[1, -2, -3], &[-1, 3, 4], &[2, -3, -4]])
}

/// Gains by flipping each variable on a copy and rescanning every clause.
fn oracle_gains(f: &CnfFormula, values: &[bool]) -> Vec<(i64, u32, u32)> {
    let before: Vec<bool> = (0..f.num_clauses()).map(|c| f.clause_satisfied(c, values)).collect();
    (0..f.num_vars())
        .map(|v| {
            let mut flipped = values.to_vec();
            flipped[v] = !flipped[v];
            let mut pos = 0;
            let mut neg = 0;
            for (c, &sat) in before.iter().enumerate() {
                let sat_after = f.clause_satisfied(c, &flipped);
                if !sat && sat_after {
                    pos += 1;
                }
                if sat && !sat_after {
                    neg += 1;
                }
            }
            let net = f.count_broken(values) as i64 - f.count_broken(&flipped) as i64;
            (net, pos, neg)
        })
        .collect()
}

fn assert_consistent(p: &MaxSat, a: &Assignment) {
    let f = p.formula();
    assert_eq!(a.broken_count(), f.count_broken(a.values()));
    for (v, (net, pos, neg)) in oracle_gains(f, a.values()).into_iter().enumerate() {
        assert_eq!(a.net_gain(v), net, "net gain of {v}");
        assert_eq!(a.positive_gain(v), pos, "positive gain of {v}");
        assert_eq!(a.negative_gain(v), neg, "negative gain of {v}");
        assert_eq!(a.net_gain(v), i64::from(a.positive_gain(v)) - i64::from(a.negative_gain(v)));
    }
}

fn ctx_apply(p: &MaxSat, h: usize, a: &Assignment, params: SearchParameters, rng: &mut RunRng) -> Assignment {
    let mut out = a.clone();
    let mut ctx = ApplyContext { params, rng, clock: None };
    p.apply(h, &mut out, &mut ctx);
    out
}

#[test]
fn objective_on_worked_formula() {
    let p = MaxSat::from_formula(eq1());
    // x1..x4 = F, F, T, F satisfies all three clauses
    assert_eq!(p.objective(&p.assignment(vec![false, false, true, false])), 0.0);
    // every clause has a positive literal, so all-true satisfies the formula
    let all_true = vec![true; 4];
    let by_hand = [
        all_true[0] || !all_true[1] || !all_true[2],
        !all_true[0] || all_true[2] || all_true[3],
        all_true[1] || !all_true[2] || !all_true[3],
    ]
    .iter()
    .filter(|&&s| !s)
    .count();
    assert_eq!(by_hand, 0);
    assert_eq!(p.objective(&p.assignment(all_true)), by_hand as f64);
}

#[test]
fn repeated_clause_counts_multiplicity() {
    let c: &[i64] = &[1, 2];
    let p = MaxSat::from_formula(formula(2, &[c, c, c, c, c]));
    assert_eq!(p.objective(&p.assignment(vec![false, false])), 5.0);
}

#[test]
fn gsat_worked_example() {
    let p = MaxSat::from_formula(formula(2, &[&[1], &[1], &[-2]]));
    let a = p.assignment(vec![false, false]);
    let gains = oracle_gains(p.formula(), a.values());
    assert_eq!(gains[0].0, 2);
    assert_eq!(gains[1].0, -1);
    assert_consistent(&p, &a);
    let out = ctx_apply(&p, 0, &a, SearchParameters::default(), &mut domain_stream(0));
    assert_eq!(out.values(), &[true, false]);
    assert_eq!(p.objective(&out), 0.0);
}

#[test]
fn incremental_bookkeeping_matches_oracle_over_random_flips() {
    let mut rng = domain_stream(11);
    let p = MaxSat::from_formula(random_3sat(40, 4.2, &mut rng));
    let mut a = p.random_assignment(&mut rng);
    assert_consistent(&p, &a);
    for _ in 0..1000 {
        let v = rng.gen_range(0..p.num_vars());
        let predicted = a.broken_count() as i64 - a.net_gain(v);
        p.flip(&mut a, v);
        assert_eq!(a.broken_count() as i64, predicted);
        assert_eq!(a.age(v), 0);
        assert_consistent(&p, &a);
    }
}

#[test]
fn ages_count_flips_since_last_flip() {
    let p = MaxSat::from_formula(eq1());
    let mut a = p.assignment(vec![false; 4]);
    p.flip(&mut a, 0);
    p.flip(&mut a, 1);
    p.flip(&mut a, 2);
    assert_eq!(a.age(0), 2);
    assert_eq!(a.age(1), 1);
    assert_eq!(a.age(2), 0);
    assert_eq!(a.age(3), 3);
}

#[test]
fn reinitialise_all_equals_fresh_random_assignment() {
    let mut rng = domain_stream(3);
    let p = MaxSat::from_formula(random_3sat(30, 4.0, &mut rng));
    let start = p.assignment(vec![false; 30]);
    let params = SearchParameters::new(1.0, 0.2).unwrap();
    let out = ctx_apply(&p, 4, &start, params, &mut domain_stream(77));
    let fresh = p.random_assignment(&mut domain_stream(77));
    assert_eq!(out.values(), fresh.values());
    assert_consistent(&p, &out);
}

#[test]
fn one_point_crossover_definition() {
    let a = [true, true, true, true, true];
    let b = [false, false, false, false, false];
    assert_eq!(heuristics::one_point_at(&a, &b, 2), vec![true, true, false, false, false]);
    assert_eq!(heuristics::one_point_at(&a, &b, 0), b.to_vec());
    assert_eq!(heuristics::one_point_at(&a, &b, 5), a.to_vec());
}

#[test]
fn two_point_crossover_takes_one_middle_segment() {
    let p = MaxSat::from_formula(random_3sat(20, 4.0, &mut domain_stream(1)));
    let a = p.assignment(vec![true; 20]);
    let b = p.assignment(vec![false; 20]);
    let mut rng = domain_stream(8);
    for _ in 0..50 {
        let mut ctx = ApplyContext { params: SearchParameters::default(), rng: &mut rng, clock: None };
        let child = p.crossover(8, &a, &b, &mut ctx);
        let v = child.values();
        let switches = v.windows(2).filter(|w| w[0] != w[1]).count();
        assert!(v[0] && v[19]);
        assert_eq!(switches, 2);
        assert_consistent(&p, &child);
    }
}

#[test]
fn satisfied_formula_needs_no_broken_clause() {
    let p = MaxSat::from_formula(eq1());
    let a = p.assignment(vec![false, false, true, false]);
    for h in [2, 3, 6] {
        let out = ctx_apply(&p, h, &a, SearchParameters::default(), &mut domain_stream(0));
        assert_eq!(out, a, "heuristic {h}");
    }
}

#[test]
fn greedy_flips_strictly_improve_when_possible() {
    let mut rng = domain_stream(5);
    let p = MaxSat::from_formula(random_3sat(60, 4.3, &mut rng));
    for _ in 0..200 {
        let a = p.random_assignment(&mut rng);
        let has_positive = (0..60).any(|v| a.net_gain(v) > 0);
        for h in [0, 1] {
            let out = ctx_apply(&p, h, &a, SearchParameters::default(), &mut rng);
            if has_positive {
                assert!(out.broken_count() < a.broken_count());
            }
            assert_consistent(&p, &out);
        }
    }
}

#[test]
fn walksat_with_free_variable_never_worsens() {
    let mut rng = domain_stream(9);
    let p = MaxSat::from_formula(random_3sat(30, 3.0, &mut rng));
    let mut checked = 0;
    for _ in 0..500 {
        let a = p.random_assignment(&mut rng);
        let all_have_free = a
            .broken_clauses()
            .iter()
            .all(|&c| p.clause_var_ids(c as usize).any(|v| a.negative_gain(v) == 0));
        if !all_have_free || a.broken_count() == 0 {
            continue;
        }
        checked += 1;
        let out = ctx_apply(&p, 2, &a, SearchParameters::default(), &mut rng);
        assert!(out.broken_count() < a.broken_count());
    }
    assert!(checked > 10);
}

#[test]
fn novelty_flips_a_variable_of_a_broken_clause() {
    let mut rng = domain_stream(21);
    let p = MaxSat::from_formula(random_3sat(25, 4.0, &mut rng));
    for _ in 0..200 {
        let a = p.random_assignment(&mut rng);
        if a.broken_count() == 0 {
            continue;
        }
        let out = ctx_apply(&p, 3, &a, SearchParameters::default(), &mut rng);
        let changed: Vec<usize> = (0..25).filter(|&v| a.values()[v] != out.values()[v]).collect();
        assert_eq!(changed.len(), 1);
        assert!(a
            .broken_clauses()
            .iter()
            .any(|&c| p.clause_var_ids(c as usize).any(|v| v == changed[0])));
    }
}

proptest! {
    #[test]
    fn bookkeeping_survives_odd_clauses(
        clauses in prop::collection::vec(prop::collection::vec((0u32..6, any::<bool>()), 1..5), 1..25),
        flips in prop::collection::vec(0usize..6, 0..60),
        seed in any::<u64>(),
    ) {
        // duplicate and complementary literals are allowed here
        let f = CnfFormula::new(
            6,
            clauses.iter().map(|c| c.iter().map(|&(v, neg)| Literal { var: v, negated: neg }).collect()).collect(),
        ).unwrap();
        let p = MaxSat::from_formula(f);
        let mut a = p.random_assignment(&mut RunRng::seed_from_u64(seed));
        assert_consistent(&p, &a);
        for v in flips {
            p.flip(&mut a, v);
            assert_consistent(&p, &a);
        }
    }

    #[test]
    fn local_searches_never_worsen(seed in any::<u64>(), depth in 0.0f64..=1.0) {
        let mut rng = RunRng::seed_from_u64(seed);
        let p = MaxSat::from_formula(random_3sat(30, 4.3, &mut rng));
        let a = p.random_assignment(&mut rng);
        let params = SearchParameters::new(0.2, depth).unwrap();
        for h in [5, 6] {
            let out = ctx_apply(&p, h, &a, params, &mut rng);
            prop_assert!(out.broken_count() <= a.broken_count());
            prop_assert_eq!(out.broken_count(), p.formula().count_broken(out.values()));
        }
    }
}
