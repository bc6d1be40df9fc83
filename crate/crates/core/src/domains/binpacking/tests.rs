use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};

use super::*;
use crate::SearchParameters;

fn inst(capacity: u64, weights: &[u64]) -> PackingInstance {
    PackingInstance::new("t", capacity, weights.to_vec()).unwrap()
}

fn oracle_fitness(inst: &PackingInstance, p: &Packing) -> f64 {
    let c = inst.capacity() as f64;
    let total: f64 = p
        .bins()
        .iter()
        .map(|b| {
            let f: u64 = b.pieces().iter().map(|&j| inst.weights()[j as usize]).sum();
            (f as f64 / c) * (f as f64 / c)
        })
        .sum();
    1.0 - total / p.num_bins() as f64
}

fn apply(bp: &BinPacking, h: usize, p: &Packing, params: SearchParameters, rng: &mut RunRng) -> Packing {
    let mut out = p.clone();
    let mut ctx = ApplyContext { params, rng, clock: None };
    bp.apply(h, &mut out, &mut ctx);
    out
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

#[test]
fn fitness_worked_values() {
    let i = inst(150, &[150, 75]);
    let p = Packing::from_bins(&i, vec![vec![0], vec![1]]);
    assert!((fitness(&i, &p) - 0.375).abs() < 1e-15);

    let i = inst(10, &[4, 6, 10]);
    let full = Packing::from_bins(&i, vec![vec![0, 1], vec![2]]);
    assert_eq!(fitness(&i, &full), 0.0);
    let single = Packing::from_bins(&inst(10, &[10]), vec![vec![0]]);
    assert_eq!(fitness(&inst(10, &[10]), &single), 0.0);
}

#[test]
fn invalid_weights_rejected() {
    assert!(PackingInstance::new("x", 10, vec![0]).is_err());
    assert!(PackingInstance::new("x", 10, vec![11]).is_err());
    assert!(PackingInstance::new("x", 0, vec![]).is_err());
}

#[test]
fn first_fit_examples() {
    let i = inst(10, &[5, 5, 5]);
    let p = first_fit(&i, &[0, 1, 2]);
    assert_eq!(p, Packing::from_bins(&i, vec![vec![0, 1], vec![2]]));

    let i = inst(10, &[6, 6, 6]);
    for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
        assert_eq!(first_fit(&i, &order).num_bins(), 3);
    }
}

#[test]
fn best_fit_prefers_tightest_bin() {
    // residuals 5, 4, 10 with C = 10 (the last is opened by a weight-0 stand-in)
    let i = inst(10, &[5, 6, 4, 1]);
    let mut p = Packing::from_bins(&i, vec![vec![0], vec![1]]);
    assert_eq!(best_fit_bin(&i, &p, 4), Some(1));
    best_fit_insert(&i, &mut p, 2);
    assert_eq!(p.bins()[1].pieces(), &[1, 2]);
    assert_eq!(p.bins()[1].fullness(), 10);
    // ties go to the lowest index; nothing fits opens a bin
    let i = inst(10, &[5, 5, 3, 9]);
    let mut p = Packing::from_bins(&i, vec![vec![0], vec![1]]);
    assert_eq!(best_fit_bin(&i, &p, 3), Some(0));
    best_fit_insert(&i, &mut p, 3);
    assert_eq!(p.num_bins(), 3);
}

#[test]
fn repack_lowest_absorbs_bin() {
    let i = inst(10, &[6, 6, 2, 1]);
    let p = Packing::from_bins(&i, vec![vec![0], vec![1], vec![2, 3]]);
    let bp = BinPacking::new(Arc::new(i.clone()));
    let out = apply(&bp, 2, &p, SearchParameters::default(), &mut RunRng::seed_from_u64(0));
    assert_eq!(out.num_bins(), 2);
    out.validate(&i).unwrap();
}

#[test]
fn full_ruin_is_best_fit_decreasing() {
    let mut rng = RunRng::seed_from_u64(4);
    // x = 1 + floor(5 alpha) reaches every bin only when there are at most six
    let i = PackingInstance::generate_uniform("u", 12, 150, &mut rng);
    let bp = BinPacking::new(Arc::new(i.clone()));
    let p = bp.initialise(&mut rng);
    assert!(p.num_bins() <= 6 && p.num_bins() > 2);
    // direct best-fit-decreasing oracle
    let mut order: Vec<usize> = (0..i.num_pieces()).collect();
    order.sort_by(|&a, &b| i.weights()[b].cmp(&i.weights()[a]).then(a.cmp(&b)));
    let mut bins: Vec<(Vec<u32>, u64)> = Vec::new();
    for j in order {
        let w = i.weights()[j];
        let mut best: Option<usize> = None;
        for (k, (_, f)) in bins.iter().enumerate() {
            if f + w <= 150 && best.is_none_or(|b| bins[b].1 < *f) {
                best = Some(k);
            }
        }
        match best {
            Some(k) => {
                bins[k].0.push(j as u32);
                bins[k].1 += w;
            }
            None => bins.push((vec![j as u32], w)),
        }
    }
    let expected = Packing::from_bins(&i, bins.into_iter().map(|b| b.0).collect());
    let out = apply(&bp, 3, &p, SearchParameters::new(1.0, 0.2).unwrap(), &mut rng);
    assert_eq!(out, expected);
    let out = apply(&bp, 4, &p, SearchParameters::new(1.0, 0.2).unwrap(), &mut rng);
    assert_eq!(out, expected);
}

#[test]
fn exon_shuffling_identity() {
    let mut rng = RunRng::seed_from_u64(9);
    let i = PackingInstance::generate_uniform("u", 60, 150, &mut rng);
    let bp = BinPacking::new(Arc::new(i.clone()));
    let p = bp.initialise(&mut rng);
    let mut ctx = ApplyContext { params: SearchParameters::default(), rng: &mut rng, clock: None };
    let child = bp.crossover(7, &p, &p, &mut ctx);
    let mut a: Vec<Vec<u32>> = child.bins().iter().map(|b| b.pieces().to_vec()).collect();
    let mut b: Vec<Vec<u32>> = p.bins().iter().map(|b| b.pieces().to_vec()).collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn exon_shuffling_keeps_full_bins_first() {
    let i = inst(10, &[10, 5, 5, 3, 7]);
    let a = Packing::from_bins(&i, vec![vec![0], vec![1, 2], vec![3, 4]]);
    let b = Packing::from_bins(&i, vec![vec![0], vec![1, 3], vec![2], vec![4]]);
    let child = heuristics::exon_shuffling(&i, &a, &b);
    child.validate(&i).unwrap();
    assert_eq!(child.bins().len(), 3);
    assert!(child.bins().iter().all(|b| b.fullness() == 10));
}

#[test]
fn swap_overflow_opens_bin() {
    // swapping 8 and 7 leaves 7 + 2 and 8, but swapping 2 and 7 overflows 8 + 7
    let i = inst(10, &[8, 2, 7]);
    let p = Packing::from_bins(&i, vec![vec![0, 1], vec![2]]);
    let bp = BinPacking::new(Arc::new(i.clone()));
    let mut seen_overflow = false;
    for s in 0..64 {
        let out = apply(&bp, 0, &p, SearchParameters::default(), &mut RunRng::seed_from_u64(s));
        out.validate(&i).unwrap();
        seen_overflow |= out.num_bins() == 3;
    }
    assert!(seen_overflow);
}

#[test]
fn split_halves_crowded_bin() {
    let i = inst(100, &[1, 1, 1, 1, 90]);
    let p = Packing::from_bins(&i, vec![vec![0, 1, 2, 3], vec![4]]);
    let bp = BinPacking::new(Arc::new(i.clone()));
    let out = apply(&bp, 1, &p, SearchParameters::default(), &mut RunRng::seed_from_u64(1));
    out.validate(&i).unwrap();
    assert_eq!(out.num_bins(), 3);
    assert_eq!(out.bins()[0].pieces(), &[0, 2]);
    assert_eq!(out.bins()[2].pieces(), &[1, 3]);
}

#[test]
fn exchange_moves_large_piece_up() {
    // lowest bin {5}; bin {3, 4} takes the 5 in exchange for the 4
    let i = inst(10, &[5, 3, 4]);
    let p = Packing::from_bins(&i, vec![vec![1, 2], vec![0]]);
    let bp = BinPacking::new(Arc::new(i.clone()));
    let out = apply(&bp, 6, &p, SearchParameters::new(0.2, 0.0).unwrap(), &mut RunRng::seed_from_u64(2));
    out.validate(&i).unwrap();
    assert!(fitness(&i, &out) < fitness(&i, &p));

    // only a two-piece exchange is possible
    let i = inst(10, &[6, 2, 2, 5]);
    let p = Packing::from_bins(&i, vec![vec![3, 1, 2], vec![0]]);
    let bp = BinPacking::new(Arc::new(i.clone()));
    let out = apply(&bp, 6, &p, SearchParameters::new(0.2, 0.0).unwrap(), &mut RunRng::seed_from_u64(2));
    out.validate(&i).unwrap();
    assert!(fitness(&i, &out) < fitness(&i, &p));
}

#[test]
fn merging_bins_improves_fitness() {
    let mut rng = RunRng::seed_from_u64(11);
    for _ in 0..500 {
        let c = rng.gen_range(10..1000u64);
        let a = rng.gen_range(1..c);
        let b = rng.gen_range(1..=c - a);
        let mut weights = vec![a, b];
        let extra = rng.gen_range(0..5);
        weights.extend((0..extra).map(|_| rng.gen_range(1..=c)));
        let i = PackingInstance::new("m", c, weights).unwrap();
        let rest: Vec<Vec<u32>> = (2..i.num_pieces() as u32).map(|j| vec![j]).collect();
        let mut split = vec![vec![0], vec![1]];
        split.extend(rest.clone());
        let mut merged = vec![vec![0, 1]];
        merged.extend(rest);
        let fs = fitness(&i, &Packing::from_bins(&i, split));
        let fm = fitness(&i, &Packing::from_bins(&i, merged));
        assert!(fm < fs, "merge {a}+{b} into {c}");
    }
}

#[test]
fn decreasing_order_is_never_worse_than_worst_random() {
    let mut rng = RunRng::seed_from_u64(21);
    let i = PackingInstance::generate_uniform("u", 80, 150, &mut rng);
    let mut order: Vec<u32> = (0..80).collect();
    let mut worst = 0;
    for _ in 0..100 {
        order.shuffle(&mut rng);
        let p = first_fit(&i, &order);
        assert!(p.num_bins() <= 80);
        worst = worst.max(p.num_bins());
    }
    order.sort_by(|&a, &b| i.weights()[b as usize].cmp(&i.weights()[a as usize]));
    assert!(first_fit(&i, &order).num_bins() <= worst);
}

#[test]
fn triplets_sum_to_capacity() {
    let mut rng = RunRng::seed_from_u64(5);
    let i = PackingInstance::generate_triplets("t", 60, 1000, &mut rng);
    assert_eq!(i.num_pieces(), 60);
    assert_eq!(i.weights().iter().sum::<u64>(), 20 * 1000);
    assert!(i.weights().iter().all(|&w| (250..=490).contains(&w)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn operators_preserve_invariants(
        weights in prop::collection::vec(1u64..=100, 1..40),
        seed in any::<u64>(),
        alpha in 0.0f64..=1.0,
        beta in 0.0f64..=1.0,
        ops in prop::collection::vec(0usize..8, 1..40),
    ) {
        let i = PackingInstance::new("p", 100, weights).unwrap();
        let bp = BinPacking::new(Arc::new(i.clone()));
        let params = SearchParameters::new(alpha, beta).unwrap();
        let mut rng = RunRng::seed_from_u64(seed);
        let mut p = bp.initialise(&mut rng);
        let mut other = bp.initialise(&mut rng);
        for h in ops {
            let before = fitness(&i, &p);
            let next = if h == 7 {
                let mut ctx = ApplyContext { params, rng: &mut rng, clock: None };
                bp.crossover(h, &p, &other, &mut ctx)
            } else {
                apply(&bp, h, &p, params, &mut rng)
            };
            prop_assert!(next.validate(&i).is_ok(), "h{}: {:?}", h + 1, next.validate(&i));
            let f = bp.objective(&next);
            prop_assert!(close(f, oracle_fitness(&i, &next)));
            prop_assert!((0.0..1.0).contains(&f));
            if h == 5 || h == 6 {
                prop_assert!(f <= before, "h{} worsened {} -> {}", h + 1, before, f);
            }
            other = p;
            p = next;
        }
    }
}
