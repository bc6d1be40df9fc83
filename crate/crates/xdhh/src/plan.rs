//! Batch experiments: plan files, validation and parallel execution.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use xdhh_core::algorithms::{by_name, ALGORITHMS};
use xdhh_core::{run, BudgetMode, Clock};

use crate::clock::StdClock;
use crate::instance::{self, DomainId, Generator, Instance};
use crate::results;

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceSource {
    Path(PathBuf),
    Generate(Generator),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanCell {
    pub domain: DomainId,
    pub instance: InstanceSource,
    pub algorithms: Vec<String>,
    pub seeds: Vec<u64>,
    pub budget: BudgetMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentPlan {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub cells: Vec<PlanCell>,
}

/// One run of a validated plan.
#[derive(Debug, Clone)]
pub struct Job {
    pub instance: Arc<Instance>,
    pub algorithm: String,
    pub seed: u64,
    pub budget: BudgetMode,
    pub file: String,
}

#[derive(Debug, Default)]
pub struct PlanOutcome {
    pub written: Vec<String>,
    pub failures: Vec<(String, String)>,
}

impl PlanOutcome {
    pub fn success(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub files: Vec<ManifestEntry>,
}

impl ExperimentPlan {
    /// Reads a plan; relative paths inside it are taken relative to the
    /// plan file.
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut plan: ExperimentPlan =
            serde_json::from_str(&text).with_context(|| format!("parsing plan {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new(""));
        for cell in &mut plan.cells {
            if let InstanceSource::Path(p) = &mut cell.instance {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        }
        if let Some(out) = &mut plan.output {
            if out.is_relative() {
                *out = base.join(&*out);
            }
        }
        Ok(plan)
    }

    /// Checks the whole plan and loads its instances. Nothing runs unless
    /// every cell is valid.
    pub fn validate(&self) -> anyhow::Result<Vec<Job>> {
        let mut problems = Vec::new();
        let mut jobs = Vec::new();
        let mut files = BTreeSet::new();
        if self.cells.is_empty() {
            problems.push("plan has no cells".to_string());
        }
        for (i, cell) in self.cells.iter().enumerate() {
            let at = format!("cell {}", i + 1);
            if cell.algorithms.is_empty() {
                problems.push(format!("{at}: no algorithms"));
            }
            for a in &cell.algorithms {
                if by_name(a).is_none() {
                    problems.push(format!("{at}: unknown algorithm {a:?} (expected one of {})", ALGORITHMS.join(", ")));
                }
            }
            let mut set = BTreeSet::new();
            if cell.algorithms.iter().any(|a| !set.insert(a)) {
                problems.push(format!("{at}: algorithm listed twice"));
            }
            if cell.seeds.is_empty() {
                problems.push(format!("{at}: no seeds"));
            }
            let mut set = BTreeSet::new();
            if let Some(s) = cell.seeds.iter().find(|s| !set.insert(**s)) {
                problems.push(format!("{at}: seed {s} listed twice"));
            }
            if cell.budget.limit() == 0 {
                problems.push(format!("{at}: budget is empty"));
            }
            let loaded = match &cell.instance {
                InstanceSource::Path(p) if !p.is_file() => Err(anyhow::anyhow!("instance file {} not found", p.display())),
                InstanceSource::Path(p) => instance::load(cell.domain, p),
                InstanceSource::Generate(g) if g.domain() != cell.domain => Err(anyhow::anyhow!(
                    "generator is for {} but the cell domain is {}",
                    g.domain(),
                    cell.domain
                )),
                InstanceSource::Generate(g) => g.generate(&g.default_id()),
            };
            let inst = match loaded {
                Ok(inst) => Arc::new(inst),
                Err(e) => {
                    problems.push(format!("{at}: {e:#}"));
                    continue;
                }
            };
            let id = inst.id();
            for a in &cell.algorithms {
                for &seed in &cell.seeds {
                    let file = results::file_name(cell.domain.as_str(), &id, a, seed);
                    if !files.insert(file.clone()) {
                        problems.push(format!("{at}: run {file} appears more than once in the plan"));
                    }
                    jobs.push(Job {
                        instance: inst.clone(),
                        algorithm: a.clone(),
                        seed,
                        budget: cell.budget,
                        file,
                    });
                }
            }
        }
        if !problems.is_empty() {
            bail!("invalid plan:\n  {}", problems.join("\n  "));
        }
        Ok(jobs)
    }
}

fn run_job(job: &Job, out: &Path) -> anyhow::Result<String> {
    let mut algorithm = by_name(&job.algorithm).with_context(|| format!("unknown algorithm {}", job.algorithm))?;
    let mut domain = job.instance.new_domain();
    let clock: Option<Arc<dyn Clock>> = match job.budget {
        BudgetMode::WallClock(_) => Some(Arc::new(StdClock::start())),
        BudgetMode::Evaluations(_) => None,
    };
    let result = run(algorithm.as_mut(), domain.as_mut(), job.budget, job.seed, clock)?;
    let text = results::to_json(&result);
    results::write_atomic(out, &job.file, text.as_bytes())?;
    Ok(results::sha256_hex(text.as_bytes()))
}

/// Runs `jobs` on at most `threads` threads and updates the manifest in
/// `out`. Failed runs are reported, completed ones are kept.
pub fn execute(jobs: &[Job], out: &Path, threads: usize) -> anyhow::Result<PlanOutcome> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build()?;
    let outcomes: Vec<(String, anyhow::Result<String>)> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                log::info!("running {}", job.file);
                (job.file.clone(), run_job(job, out))
            })
            .collect()
    });

    let mut entries: BTreeMap<String, String> = read_manifest(out)
        .unwrap_or_default()
        .files
        .into_iter()
        .filter(|e| out.join(&e.file).is_file())
        .map(|e| (e.file, e.sha256))
        .collect();
    let mut outcome = PlanOutcome::default();
    for (file, r) in outcomes {
        match r {
            Ok(hash) => {
                entries.insert(file.clone(), hash);
                outcome.written.push(file);
            }
            Err(e) => outcome.failures.push((file, format!("{e:#}"))),
        }
    }
    let manifest = Manifest {
        files: entries.into_iter().map(|(file, sha256)| ManifestEntry { file, sha256 }).collect(),
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    results::write_atomic(out, MANIFEST, text.as_bytes())?;
    Ok(outcome)
}

pub fn read_manifest(dir: &Path) -> anyhow::Result<Manifest> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Recomputes every manifest hash; returns one message per mismatch.
pub fn verify(dir: &Path) -> anyhow::Result<Vec<String>> {
    let manifest = read_manifest(dir)?;
    let mut problems = Vec::new();
    for e in &manifest.files {
        match fs::read(dir.join(&e.file)) {
            Ok(bytes) if results::sha256_hex(&bytes) == e.sha256 => {}
            Ok(_) => problems.push(format!("{}: hash mismatch", e.file)),
            Err(err) => problems.push(format!("{}: {err}", e.file)),
        }
    }
    Ok(problems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(seeds: Vec<u64>) -> PlanCell {
        PlanCell {
            domain: DomainId::Flowshop,
            instance: InstanceSource::Generate(Generator::Flowshop { jobs: 5, machines: 2, pmax: 9, seed: 1 }),
            algorithms: vec!["ils".into(), "random".into()],
            seeds,
            budget: BudgetMode::Evaluations(200),
        }
    }

    #[test]
    fn json_shape() {
        let text = r#"{"cells":[{"domain":"flowshop",
            "instance":{"generate":{"domain":"flowshop","jobs":5,"machines":2,"pmax":9,"seed":1}},
            "algorithms":["ils","random"],"seeds":[1,2],
            "budget":{"mode":"evaluations","limit":200}}]}"#;
        let plan: ExperimentPlan = serde_json::from_str(text).unwrap();
        assert_eq!(plan, ExperimentPlan { output: None, cells: vec![cell(vec![1, 2])] });
        assert_eq!(plan.validate().unwrap().len(), 4);
    }

    #[test]
    fn rejects_bad_cells() {
        let dup_seed = ExperimentPlan { output: None, cells: vec![cell(vec![1, 1])] };
        assert!(dup_seed.validate().is_err());
        let dup_run = ExperimentPlan { output: None, cells: vec![cell(vec![1]), cell(vec![1])] };
        assert!(dup_run.validate().unwrap_err().to_string().contains("more than once"));
        let mut c = cell(vec![1]);
        c.algorithms.push("sa".into());
        assert!(ExperimentPlan { output: None, cells: vec![c] }.validate().is_err());
        let mut c = cell(vec![1]);
        c.domain = DomainId::Maxsat;
        assert!(ExperimentPlan { output: None, cells: vec![c] }.validate().is_err());
        let mut c = cell(vec![1]);
        c.instance = InstanceSource::Path("/nonexistent/x.fsp".into());
        assert!(ExperimentPlan { output: None, cells: vec![c] }.validate().unwrap_err().to_string().contains("not found"));
    }
}
