use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::SeedableRng;
use xdhh_core::algorithms::{by_name, ALGORITHMS};
use xdhh_core::domains::binpacking::{BinPacking, PackingInstance};
use xdhh_core::domains::flowshop::{makespan, FlowShop, FlowShopInstance};
use xdhh_core::domains::maxsat::{random_3sat, MaxSat};
use xdhh_core::domains::personnel::{Personnel, RosterInstance};
use xdhh_core::{run, BudgetMode, Clock, Domain, Error, ProblemDomain, RunResult, RunRng};

fn domains(seed: u64) -> Vec<Box<dyn ProblemDomain>> {
    let mut rng = RunRng::seed_from_u64(seed);
    vec![
        Box::new(Domain::with_instance(MaxSat::from_formula(random_3sat(30, 4.2, &mut rng)), 0)),
        Box::new(Domain::with_instance(
            BinPacking::new(Arc::new(PackingInstance::generate_uniform("u", 30, 150, &mut rng))),
            0,
        )),
        Box::new(Domain::with_instance(
            FlowShop::new(Arc::new(FlowShopInstance::generate("f", 8, 3, 20, &mut rng).unwrap())),
            0,
        )),
        Box::new(Domain::with_instance(
            Personnel::from_instance(RosterInstance::generate(5, 14, 3, &mut rng).unwrap()).unwrap(),
            0,
        )),
    ]
}

fn run_named(alg: &str, domain: &mut dyn ProblemDomain, evals: u64, seed: u64) -> RunResult {
    run(by_name(alg).unwrap().as_mut(), domain, BudgetMode::Evaluations(evals), seed, None).unwrap()
}

#[test]
fn repeated_runs_are_identical() {
    for alg in ALGORITHMS {
        for (a, b) in domains(1).iter_mut().zip(domains(1).iter_mut()) {
            let x = run_named(alg, a.as_mut(), 2000, 11);
            let y = run_named(alg, b.as_mut(), 2000, 11);
            assert_eq!(x, y, "{alg} on {}", x.domain);
            let z = run_named(alg, a.as_mut(), 2000, 11);
            assert_eq!(x, z, "{alg} rerun on the same domain object");
        }
    }
}

#[test]
fn best_never_exceeds_initial_and_budget_is_exact() {
    for alg in ALGORITHMS {
        for mut d in domains(2) {
            let r = run_named(alg, d.as_mut(), 1500, 3);
            assert_eq!(r.evaluations_used, 1500);
            assert!(r.best_value <= r.initial_value().unwrap());
            let pts = r.trace.points();
            assert!(pts.windows(2).all(|w| w[1].1 <= w[0].1 && w[1].0 >= w[0].0));
            assert_eq!(pts.last().unwrap().0, 1500);
        }
    }
}

#[test]
fn empty_budget_is_rejected() {
    let mut d = domains(0).remove(0);
    let err = run(by_name("random").unwrap().as_mut(), d.as_mut(), BudgetMode::Evaluations(0), 1, None);
    assert_eq!(err.unwrap_err(), Error::BudgetEmpty);
}

struct Ticker(AtomicU64);

impl Clock for Ticker {
    fn elapsed_ms(&self) -> u64 {
        self.0.fetch_add(1, Ordering::Relaxed) / 16
    }
}

#[test]
fn wall_clock_budget_terminates() {
    for alg in ALGORITHMS {
        for mut d in domains(4) {
            let clock: Arc<dyn Clock> = Arc::new(Ticker(AtomicU64::new(0)));
            let r = run(by_name(alg).unwrap().as_mut(), d.as_mut(), BudgetMode::WallClock(50), 1, Some(clock)).unwrap();
            assert!(r.evaluations_used > 0);
        }
        let mut d = domains(4).remove(0);
        let missing = run(by_name(alg).unwrap().as_mut(), d.as_mut(), BudgetMode::WallClock(50), 1, None);
        assert_eq!(missing.unwrap_err(), Error::MissingClock);
    }
}

fn enumeration_optimum(inst: &FlowShopInstance) -> u64 {
    fn go(inst: &FlowShopInstance, prefix: &mut Vec<u32>, left: &mut Vec<u32>, best: &mut u64) {
        if left.is_empty() {
            *best = (*best).min(makespan(inst, prefix));
            return;
        }
        for k in 0..left.len() {
            let j = left.remove(k);
            prefix.push(j);
            go(inst, prefix, left, best);
            prefix.pop();
            left.insert(k, j);
        }
    }
    let mut best = u64::MAX;
    go(inst, &mut Vec::new(), &mut (0..inst.jobs() as u32).collect(), &mut best);
    best
}

#[test]
fn ils_solves_small_flow_shop() {
    let inst = FlowShopInstance::generate("f6x3", 6, 3, 50, &mut RunRng::seed_from_u64(7)).unwrap();
    let optimum = enumeration_optimum(&inst) as f64;
    let mut domain = Domain::with_instance(FlowShop::new(Arc::new(inst)), 0);
    let hits = (0..5)
        .filter(|&seed| run_named("ils", &mut domain, 5000, seed).best_value == optimum)
        .count();
    assert!(hits >= 4, "{hits}/5 runs reached {optimum}");
}
