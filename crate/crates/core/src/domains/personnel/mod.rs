//! Personnel rostering over a small soft-constraint model.
//!
//! Five weighted families are penalised: cover deviation per day and shift,
//! unmet requests, workload outside `[min_shifts, max_shifts]`, working runs
//! longer than `max_consecutive`, and forbidden shift successions on
//! consecutive days. Every roster is feasible; only the penalty differs.

mod heuristics;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domain::{default_instance_id, ApplyContext, Problem};
use crate::{Error, HeuristicDescriptor, HeuristicKind, Result, RunRng};

pub const DOMAIN_ID: &str = "personnel";

pub const HEURISTICS: &[HeuristicDescriptor] = &[
    HeuristicDescriptor::new(0, HeuristicKind::Mutation, "unassign-shifts"),
    HeuristicDescriptor::new(1, HeuristicKind::RuinRecreate, "rebuild-few"),
    HeuristicDescriptor::new(2, HeuristicKind::RuinRecreate, "rebuild-proportional"),
    HeuristicDescriptor::new(3, HeuristicKind::RuinRecreate, "rebuild-one"),
    HeuristicDescriptor::new(4, HeuristicKind::LocalSearch, "greedy-add"),
    HeuristicDescriptor::new(5, HeuristicKind::LocalSearch, "swap-between-employees"),
    HeuristicDescriptor::new(6, HeuristicKind::LocalSearch, "swap-within-employee"),
    HeuristicDescriptor::new(7, HeuristicKind::LocalSearch, "ejection-chain"),
    HeuristicDescriptor::new(8, HeuristicKind::LocalSearch, "ejection-chain-regenerate"),
    HeuristicDescriptor::new(9, HeuristicKind::Crossover, "best-assignments"),
    HeuristicDescriptor::new(10, HeuristicKind::Crossover, "alternate-assignments"),
    HeuristicDescriptor::new(11, HeuristicKind::Crossover, "common-assignments"),
];

/// A preference for one cell. `shift: None` refers to working any shift
/// (`on`) or having the day off (`!on`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub employee: u32,
    pub day: u32,
    pub shift: Option<u32>,
    pub weight: u64,
    pub on: bool,
}

impl Request {
    fn violated(&self, cell: Option<u32>) -> bool {
        match (self.shift, self.on) {
            (Some(s), true) => cell != Some(s),
            (Some(s), false) => cell == Some(s),
            (None, true) => cell.is_none(),
            (None, false) => cell.is_some(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RosterInstance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub employees: u32,
    pub days: u32,
    pub shift_types: u32,
    /// `cover[day][shift]`
    pub cover: Vec<Vec<u32>>,
    pub w_cover: u64,
    #[serde(default)]
    pub requests: Vec<Request>,
    pub max_shifts: Vec<u32>,
    pub min_shifts: Vec<u32>,
    pub w_load: u64,
    pub max_consecutive: u32,
    pub w_consec: u64,
    #[serde(default)]
    pub forbidden_successions: Vec<(u32, u32)>,
    pub w_succ: u64,
}

const OFF: u8 = u8::MAX;

impl RosterInstance {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInstance(m));
        let (e, d, s) = (self.employees, self.days, self.shift_types);
        if e == 0 || d == 0 || s == 0 {
            return bad("employees, days and shift_types must be positive".into());
        }
        if s >= u32::from(OFF) {
            return bad(format!("at most {} shift types are supported", OFF - 1));
        }
        if self.cover.len() != d as usize || self.cover.iter().any(|row| row.len() != s as usize) {
            return bad(format!("cover must be {d} rows of {s} entries"));
        }
        if let Some((day, _)) = self
            .cover
            .iter()
            .enumerate()
            .find(|(_, row)| row.iter().map(|&c| u64::from(c)).sum::<u64>() > u64::from(e))
        {
            return bad(format!("cover on day {day} needs more than {e} employees"));
        }
        if self.max_shifts.len() != e as usize || self.min_shifts.len() != e as usize {
            return bad(format!("max_shifts and min_shifts need {e} entries"));
        }
        for r in &self.requests {
            if r.employee >= e || r.day >= d || r.shift.is_some_and(|x| x >= s) {
                return bad(format!("request {r:?} is out of range"));
            }
        }
        if let Some(p) = self.forbidden_successions.iter().find(|(a, b)| *a >= s || *b >= s) {
            return bad(format!("forbidden succession {p:?} is out of range"));
        }
        Ok(())
    }

    pub fn id(&self) -> String {
        self.name.clone().unwrap_or_else(|| {
            default_instance_id("roster", &[self.employees as usize, self.days as usize, self.shift_types as usize])
        })
    }

    /// Random instance with per-day cover leaving some slack, sparse requests
    /// and a forbidden late-to-early succession.
    pub fn generate(employees: u32, days: u32, shift_types: u32, rng: &mut RunRng) -> Result<Self> {
        if employees == 0 || days == 0 || shift_types == 0 || shift_types >= u32::from(OFF) {
            return Err(Error::InvalidInstance("generator dimensions out of range".into()));
        }
        let per_shift = (employees * 2 / (3 * shift_types)).max(1);
        let cover = (0..days)
            .map(|_| {
                let mut left = employees;
                (0..shift_types)
                    .map(|_| {
                        let c = rng.gen_range(0..=per_shift).min(left);
                        left -= c;
                        c
                    })
                    .collect()
            })
            .collect();
        let mut requests = Vec::new();
        for e in 0..employees {
            for _ in 0..(days / 7).max(1) {
                let shift = if rng.gen_bool(0.5) { Some(rng.gen_range(0..shift_types)) } else { None };
                requests.push(Request {
                    employee: e,
                    day: rng.gen_range(0..days),
                    shift,
                    weight: rng.gen_range(1..=3),
                    on: rng.gen_bool(0.5),
                });
            }
        }
        let max = (days * 5).div_ceil(7);
        let forbidden_successions = if shift_types > 1 { vec![(shift_types - 1, 0)] } else { Vec::new() };
        Ok(Self {
            name: None,
            employees,
            days,
            shift_types,
            cover,
            w_cover: 10,
            requests,
            max_shifts: vec![max; employees as usize],
            min_shifts: vec![max.saturating_sub(days / 7 + 2); employees as usize],
            w_load: 5,
            max_consecutive: 5,
            w_consec: 5,
            forbidden_successions,
            w_succ: 10,
        })
    }
}

/// Validated instance with lookup tables.
#[derive(Debug, Clone)]
pub struct Model {
    inst: RosterInstance,
    e: usize,
    d: usize,
    s: usize,
    requests_at: Vec<Vec<u32>>,
    forbidden: Vec<bool>,
}

impl Model {
    pub fn new(inst: RosterInstance) -> Result<Self> {
        inst.validate()?;
        let (e, d, s) = (inst.employees as usize, inst.days as usize, inst.shift_types as usize);
        let mut requests_at = vec![Vec::new(); e * d];
        for (k, r) in inst.requests.iter().enumerate() {
            requests_at[r.employee as usize * d + r.day as usize].push(k as u32);
        }
        let mut forbidden = vec![false; s * s];
        for &(a, b) in &inst.forbidden_successions {
            forbidden[a as usize * s + b as usize] = true;
        }
        Ok(Self { inst, e, d, s, requests_at, forbidden })
    }

    pub fn instance(&self) -> &RosterInstance {
        &self.inst
    }

    pub fn employees(&self) -> usize {
        self.e
    }

    pub fn days(&self) -> usize {
        self.d
    }

    pub fn shift_types(&self) -> usize {
        self.s
    }

    fn cover(&self, d: usize, s: usize) -> u32 {
        self.inst.cover[d][s]
    }

    fn forbidden(&self, a: u8, b: u8) -> bool {
        a != OFF && b != OFF && self.forbidden[a as usize * self.s + b as usize]
    }

    fn load_penalty(&self, e: usize, n: u32) -> u64 {
        let max = self.inst.max_shifts[e];
        let min = self.inst.min_shifts[e];
        u64::from(n.saturating_sub(max) + min.saturating_sub(n))
    }

    fn overrun(&self, run: u32) -> u64 {
        u64::from(run.saturating_sub(self.inst.max_consecutive))
    }
}

fn decode(c: u8) -> Option<u32> {
    (c != OFF).then_some(u32::from(c))
}

fn encode(c: Option<u32>) -> u8 {
    c.map_or(OFF, |s| s as u8)
}

/// Roster grid with cover counts and the total penalty kept current.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Roster {
    days: usize,
    cells: Vec<u8>,
    covered: Vec<u32>,
    assigned: Vec<u32>,
    penalty: u64,
}

impl Roster {
    pub fn empty(model: &Model) -> Self {
        let mut r = Self {
            days: model.d,
            cells: vec![OFF; model.e * model.d],
            covered: vec![0; model.d * model.s],
            assigned: vec![0; model.e],
            penalty: 0,
        };
        r.penalty = penalty(model, &r);
        r
    }

    pub fn from_cells(model: &Model, cells: &[Vec<Option<u32>>]) -> Self {
        let mut r = Self::empty(model);
        for (e, row) in cells.iter().enumerate() {
            for (d, &c) in row.iter().enumerate() {
                r.set(model, e, d, c);
            }
        }
        r
    }

    pub fn get(&self, e: usize, d: usize) -> Option<u32> {
        decode(self.cells[e * self.days + d])
    }

    pub fn penalty(&self) -> u64 {
        self.penalty
    }

    pub fn assigned_count(&self) -> usize {
        self.assigned.iter().map(|&n| n as usize).sum()
    }

    pub fn assignments(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != OFF)
            .map(move |(k, &c)| (k / self.days, k % self.days, u32::from(c)))
    }

    fn raw(&self, e: usize, d: usize) -> u8 {
        self.cells[e * self.days + d]
    }

    fn run_left(&self, e: usize, d: usize) -> u32 {
        (0..d).rev().take_while(|&x| self.raw(e, x) != OFF).count() as u32
    }

    fn run_right(&self, e: usize, d: usize) -> u32 {
        (d + 1..self.days).take_while(|&x| self.raw(e, x) != OFF).count() as u32
    }

    /// Penalty change of setting cell `(e, d)` to `new`.
    pub fn delta(&self, model: &Model, e: usize, d: usize, new: Option<u32>) -> i64 {
        let old = self.raw(e, d);
        let new = encode(new);
        if old == new {
            return 0;
        }
        let inst = &model.inst;
        let mut cover = 0i64;
        let dev = |count: u32, need: u32| i64::from(count.abs_diff(need));
        if old != OFF {
            let (c, r) = (self.covered[d * model.s + old as usize], model.cover(d, old as usize));
            cover += dev(c - 1, r) - dev(c, r);
        }
        if new != OFF {
            let (c, r) = (self.covered[d * model.s + new as usize], model.cover(d, new as usize));
            cover += dev(c + 1, r) - dev(c, r);
        }
        let mut requests = 0i64;
        for &k in &model.requests_at[e * model.d + d] {
            let r = &inst.requests[k as usize];
            requests += r.weight as i64 * (i64::from(r.violated(decode(new))) - i64::from(r.violated(decode(old))));
        }
        let n = self.assigned[e];
        let n_new = n + u32::from(new != OFF) - u32::from(old != OFF);
        let load = model.load_penalty(e, n_new) as i64 - model.load_penalty(e, n) as i64;
        let mut consec = 0i64;
        if (old == OFF) != (new == OFF) {
            let (l, r) = (self.run_left(e, d), self.run_right(e, d));
            let joined = model.overrun(l + r + 1) as i64 - model.overrun(l) as i64 - model.overrun(r) as i64;
            consec = if new == OFF { -joined } else { joined };
        }
        let mut succ = 0i64;
        if d > 0 {
            let prev = self.raw(e, d - 1);
            succ += i64::from(model.forbidden(prev, new)) - i64::from(model.forbidden(prev, old));
        }
        if d + 1 < self.days {
            let next = self.raw(e, d + 1);
            succ += i64::from(model.forbidden(new, next)) - i64::from(model.forbidden(old, next));
        }
        inst.w_cover as i64 * cover
            + requests
            + inst.w_load as i64 * load
            + inst.w_consec as i64 * consec
            + inst.w_succ as i64 * succ
    }

    /// Sets a cell and returns the penalty change.
    pub fn set(&mut self, model: &Model, e: usize, d: usize, new: Option<u32>) -> i64 {
        let delta = self.delta(model, e, d, new);
        let k = e * self.days + d;
        let old = self.cells[k];
        let new = encode(new);
        if old == new {
            return 0;
        }
        if old != OFF {
            self.covered[d * model.s + old as usize] -= 1;
            self.assigned[e] -= 1;
        }
        if new != OFF {
            self.covered[d * model.s + new as usize] += 1;
            self.assigned[e] += 1;
        }
        self.cells[k] = new;
        self.penalty = (self.penalty as i64 + delta) as u64;
        delta
    }

    fn cover_met(&self, model: &Model, d: usize, s: u32) -> bool {
        self.covered[d * model.s + s as usize] >= model.cover(d, s as usize)
    }
}

/// Penalty recomputed from the grid alone.
pub fn penalty(model: &Model, r: &Roster) -> u64 {
    let inst = &model.inst;
    let mut cover = 0u64;
    for d in 0..model.d {
        for s in 0..model.s {
            let count = (0..model.e).filter(|&e| r.raw(e, d) == s as u8).count() as u32;
            cover += u64::from(count.abs_diff(model.cover(d, s)));
        }
    }
    let requests: u64 = inst
        .requests
        .iter()
        .filter(|q| q.violated(r.get(q.employee as usize, q.day as usize)))
        .map(|q| q.weight)
        .sum();
    let mut load = 0;
    let mut consec = 0;
    let mut succ = 0;
    for e in 0..model.e {
        let worked = (0..model.d).filter(|&d| r.raw(e, d) != OFF).count() as u32;
        load += model.load_penalty(e, worked);
        let mut run = 0;
        for d in 0..model.d {
            if r.raw(e, d) == OFF {
                consec += model.overrun(run);
                run = 0;
            } else {
                run += 1;
            }
            if d > 0 && model.forbidden(r.raw(e, d - 1), r.raw(e, d)) {
                succ += 1;
            }
        }
        consec += model.overrun(run);
    }
    inst.w_cover * cover + requests + inst.w_load * load + inst.w_consec * consec + inst.w_succ * succ
}

#[derive(Debug, Clone)]
pub struct Personnel {
    model: Arc<Model>,
    id: String,
}

impl Personnel {
    pub fn new(model: Arc<Model>) -> Self {
        let id = model.inst.id();
        Self { model, id }
    }

    pub fn from_instance(inst: RosterInstance) -> Result<Self> {
        Ok(Self::new(Arc::new(Model::new(inst)?)))
    }

    pub fn model(&self) -> &Model {
        &self.model
    }
}

impl Problem for Personnel {
    type Solution = Roster;

    fn domain_id(&self) -> &'static str {
        DOMAIN_ID
    }

    fn instance_id(&self) -> &str {
        &self.id
    }

    fn heuristics(&self) -> &'static [HeuristicDescriptor] {
        HEURISTICS
    }

    fn initialise(&self, rng: &mut RunRng) -> Roster {
        let mut r = Roster::empty(&self.model);
        heuristics::greedy_add(&self.model, &mut r, rng);
        r
    }

    fn objective(&self, r: &Roster) -> f64 {
        r.penalty as f64
    }

    fn apply(&self, h: usize, r: &mut Roster, ctx: &mut ApplyContext<'_>) {
        let m = &*self.model;
        let alpha = ctx.params.intensity_of_mutation();
        let beta = ctx.params.depth_of_search();
        match h {
            0 => heuristics::unassign(m, r, alpha, ctx.rng),
            1 => heuristics::ruin_recreate(m, r, heuristics::rebuild_few(alpha), ctx.rng),
            2 => heuristics::ruin_recreate(m, r, heuristics::rebuild_proportional(alpha, m.e), ctx.rng),
            3 => heuristics::ruin_recreate(m, r, 1, ctx.rng),
            4 => heuristics::greedy_add(m, r, ctx.rng),
            5 => heuristics::swap_between(m, r, beta, ctx.rng),
            6 => heuristics::swap_within(m, r, beta, ctx.rng),
            7 => heuristics::ejection_chain(m, r, beta, false, ctx),
            8 => heuristics::ejection_chain(m, r, beta, true, ctx),
            _ => unreachable!("heuristic {h} is not unary"),
        }
    }

    fn crossover(&self, h: usize, a: &Roster, b: &Roster, ctx: &mut ApplyContext<'_>) -> Roster {
        let m = &*self.model;
        match h {
            9 => heuristics::best_assignments(m, a, b, ctx.params.intensity_of_mutation()),
            10 => heuristics::alternate(m, a, b, ctx.rng),
            11 => heuristics::common(m, a, b),
            _ => unreachable!("heuristic {h} is not a crossover"),
        }
    }
}
