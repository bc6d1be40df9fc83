//! Loading and generating instances for the four domains.

use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use anyhow::{bail, Context};
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use xdhh_core::domains::binpacking::{self, BinPacking, PackingInstance};
use xdhh_core::domains::flowshop::{self, FlowShop, FlowShopInstance};
use xdhh_core::domains::maxsat::{self, random_3sat, CnfFormula, MaxSat};
use xdhh_core::domains::personnel::{self, Model, Personnel, RosterInstance};
use xdhh_core::{Domain, ProblemDomain, RunRng};

use crate::formats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DomainId {
    Maxsat,
    Binpacking,
    Flowshop,
    Personnel,
}

impl DomainId {
    pub const ALL: [DomainId; 4] = [DomainId::Maxsat, DomainId::Binpacking, DomainId::Flowshop, DomainId::Personnel];

    pub fn as_str(self) -> &'static str {
        match self {
            DomainId::Maxsat => maxsat::DOMAIN_ID,
            DomainId::Binpacking => binpacking::DOMAIN_ID,
            DomainId::Flowshop => flowshop::DOMAIN_ID,
            DomainId::Personnel => personnel::DOMAIN_ID,
        }
    }

    /// File extension used by `generate`.
    pub fn extension(self) -> &'static str {
        match self {
            DomainId::Maxsat => "cnf",
            DomainId::Binpacking => "bpp",
            DomainId::Flowshop => "fsp",
            DomainId::Personnel => "json",
        }
    }
}

impl fmt::Display for DomainId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DomainId {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        DomainId::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .with_context(|| format!("unknown domain {s:?} (expected maxsat, binpacking, flowshop or personnel)"))
    }
}

/// A loaded instance, shareable read-only across runs.
#[derive(Debug, Clone)]
pub enum Instance {
    Maxsat { id: String, formula: Arc<CnfFormula> },
    Binpacking(Arc<PackingInstance>),
    Flowshop(Arc<FlowShopInstance>),
    Personnel(Arc<Model>),
}

impl Instance {
    pub fn domain(&self) -> DomainId {
        match self {
            Instance::Maxsat { .. } => DomainId::Maxsat,
            Instance::Binpacking(_) => DomainId::Binpacking,
            Instance::Flowshop(_) => DomainId::Flowshop,
            Instance::Personnel(_) => DomainId::Personnel,
        }
    }

    pub fn id(&self) -> String {
        match self {
            Instance::Maxsat { id, .. } => id.clone(),
            Instance::Binpacking(i) => i.id().to_string(),
            Instance::Flowshop(i) => i.id().to_string(),
            Instance::Personnel(m) => m.instance().id(),
        }
    }

    /// A fresh domain object with this instance loaded.
    pub fn new_domain(&self) -> Box<dyn ProblemDomain> {
        match self {
            Instance::Maxsat { id, formula } => {
                Box::new(Domain::with_instance(MaxSat::new(formula.clone(), id.clone()), 0))
            }
            Instance::Binpacking(i) => Box::new(Domain::with_instance(BinPacking::new(i.clone()), 0)),
            Instance::Flowshop(i) => Box::new(Domain::with_instance(FlowShop::new(i.clone()), 0)),
            Instance::Personnel(m) => Box::new(Domain::with_instance(Personnel::new(m.clone()), 0)),
        }
    }

    /// The instance in its file format.
    pub fn render(&self) -> String {
        match self {
            Instance::Maxsat { formula, .. } => formats::write_dimacs(formula),
            Instance::Binpacking(i) => formats::write_packing(i),
            Instance::Flowshop(i) => formats::write_flowshop(i),
            Instance::Personnel(m) => formats::write_roster(m.instance()),
        }
    }
}

/// Id derived from a path: its file stem.
pub fn id_from_path(path: &Path) -> anyhow::Result<String> {
    path.file_stem()
        .and_then(|s| s.to_str())
        .map(str::to_string)
        .with_context(|| format!("cannot derive an instance id from {}", path.display()))
}

/// Parses `text` as an instance of `domain` named `id`.
pub fn parse(domain: DomainId, id: &str, text: &str) -> anyhow::Result<Instance> {
    Ok(match domain {
        DomainId::Maxsat => Instance::Maxsat {
            id: id.to_string(),
            formula: Arc::new(formats::parse_dimacs(text)?),
        },
        DomainId::Binpacking => Instance::Binpacking(Arc::new(formats::parse_packing(id, text)?)),
        DomainId::Flowshop => {
            let inst = if formats::flowshop::is_taillard(text) {
                let mut all = formats::parse_taillard(id, text)?;
                if all.len() != 1 {
                    bail!("Taillard file holds {} instances; convert it first", all.len());
                }
                all.remove(0)
            } else {
                formats::parse_flowshop(id, text)?
            };
            Instance::Flowshop(Arc::new(inst))
        }
        DomainId::Personnel => {
            let mut inst = formats::parse_roster(text)?;
            inst.name = Some(id.to_string());
            Instance::Personnel(Arc::new(Model::new(inst)?))
        }
    })
}

/// Loads an instance file; the file stem becomes the instance id.
pub fn load(domain: DomainId, path: &Path) -> anyhow::Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let id = id_from_path(path)?;
    parse(domain, &id, &text).with_context(|| format!("parsing {} as {domain}", path.display()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PieceDistribution {
    Uniform,
    Triplet,
}

/// Seeded instance generator, tagged by domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, clap::Subcommand)]
#[serde(tag = "domain", rename_all = "lowercase", deny_unknown_fields)]
pub enum Generator {
    /// Uniform random 3-SAT.
    Maxsat {
        #[arg(long)]
        vars: usize,
        #[arg(long, default_value_t = 4.26)]
        ratio: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Uniform or triplet piece weights.
    Binpacking {
        #[arg(long)]
        pieces: usize,
        #[arg(long, default_value_t = 150)]
        capacity: u64,
        #[arg(long, value_enum, default_value_t = PieceDistribution::Uniform)]
        dist: PieceDistribution,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Uniform integer processing times in [1, pmax].
    Flowshop {
        #[arg(long)]
        jobs: usize,
        #[arg(long)]
        machines: usize,
        #[arg(long, default_value_t = 99)]
        pmax: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Roster with random cover, requests and workload limits.
    Personnel {
        #[arg(long)]
        employees: u32,
        #[arg(long)]
        days: u32,
        #[arg(long, default_value_t = 3)]
        shift_types: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

impl Generator {
    pub fn domain(&self) -> DomainId {
        match self {
            Generator::Maxsat { .. } => DomainId::Maxsat,
            Generator::Binpacking { .. } => DomainId::Binpacking,
            Generator::Flowshop { .. } => DomainId::Flowshop,
            Generator::Personnel { .. } => DomainId::Personnel,
        }
    }

    /// Id encoding the generator parameters.
    pub fn default_id(&self) -> String {
        match *self {
            Generator::Maxsat { vars, ratio, seed } => format!("maxsat-v{vars}-r{ratio}-s{seed}"),
            Generator::Binpacking { pieces, capacity, dist, seed } => {
                let d = match dist {
                    PieceDistribution::Uniform => "u",
                    PieceDistribution::Triplet => "t",
                };
                format!("binpacking-{d}{pieces}-c{capacity}-s{seed}")
            }
            Generator::Flowshop { jobs, machines, pmax, seed } => format!("flowshop-{jobs}x{machines}-p{pmax}-s{seed}"),
            Generator::Personnel { employees, days, shift_types, seed } => {
                format!("personnel-{employees}x{days}x{shift_types}-s{seed}")
            }
        }
    }

    pub fn generate(&self, id: &str) -> anyhow::Result<Instance> {
        let seed = match *self {
            Generator::Maxsat { seed, .. }
            | Generator::Binpacking { seed, .. }
            | Generator::Flowshop { seed, .. }
            | Generator::Personnel { seed, .. } => seed,
        };
        let mut rng = RunRng::seed_from_u64(seed);
        Ok(match *self {
            Generator::Maxsat { vars, ratio, .. } => {
                if vars < 3 || !(ratio.is_finite() && ratio > 0.0) {
                    bail!("3-SAT needs at least 3 variables and a positive clause ratio");
                }
                Instance::Maxsat {
                    id: id.to_string(),
                    formula: Arc::new(random_3sat(vars, ratio, &mut rng)),
                }
            }
            Generator::Binpacking { pieces, capacity, dist, .. } => {
                if pieces == 0 {
                    bail!("at least one piece is required");
                }
                let inst = match dist {
                    PieceDistribution::Uniform => PackingInstance::generate_uniform(id, pieces, capacity, &mut rng),
                    PieceDistribution::Triplet => {
                        if pieces % 3 != 0 {
                            bail!("triplet instances need a multiple of 3 pieces");
                        }
                        PackingInstance::generate_triplets(id, pieces, capacity, &mut rng)
                    }
                };
                Instance::Binpacking(Arc::new(PackingInstance::new(id, inst.capacity(), inst.weights().to_vec())?))
            }
            Generator::Flowshop { jobs, machines, pmax, .. } => {
                Instance::Flowshop(Arc::new(FlowShopInstance::generate(id, jobs, machines, pmax, &mut rng)?))
            }
            Generator::Personnel { employees, days, shift_types, .. } => {
                let mut inst = RosterInstance::generate(employees, days, shift_types, &mut rng)?;
                inst.name = Some(id.to_string());
                Instance::Personnel(Arc::new(Model::new(inst)?))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_ids_round_trip() {
        for d in DomainId::ALL {
            assert_eq!(d.as_str().parse::<DomainId>().unwrap(), d);
        }
        assert!("tsp".parse::<DomainId>().is_err());
    }

    #[test]
    fn generated_instances_reparse_identically() {
        let gens = [
            Generator::Maxsat { vars: 20, ratio: 4.0, seed: 2 },
            Generator::Binpacking { pieces: 30, capacity: 150, dist: PieceDistribution::Triplet, seed: 2 },
            Generator::Flowshop { jobs: 6, machines: 3, pmax: 20, seed: 2 },
            Generator::Personnel { employees: 5, days: 14, shift_types: 3, seed: 2 },
        ];
        for g in gens {
            let id = g.default_id();
            let inst = g.generate(&id).unwrap();
            assert_eq!(inst.domain(), g.domain());
            assert_eq!(inst.id(), id);
            let again = parse(g.domain(), &id, &inst.render()).unwrap();
            assert_eq!(again.render(), inst.render());
            assert_eq!(g.generate(&id).unwrap().render(), inst.render());
        }
    }

    #[test]
    fn generator_json_is_tagged_by_domain() {
        let g: Generator = serde_json::from_str(r#"{"domain":"flowshop","jobs":6,"machines":3,"pmax":9,"seed":4}"#).unwrap();
        assert_eq!(g, Generator::Flowshop { jobs: 6, machines: 3, pmax: 9, seed: 4 });
        assert!(serde_json::from_str::<Generator>(r#"{"domain":"flowshop","jobs":6}"#).is_err());
    }

    #[test]
    fn bad_generator_parameters() {
        assert!(Generator::Maxsat { vars: 2, ratio: 4.0, seed: 1 }.generate("x").is_err());
        assert!(Generator::Binpacking { pieces: 4, capacity: 150, dist: PieceDistribution::Triplet, seed: 1 }
            .generate("x")
            .is_err());
        assert!(Generator::Flowshop { jobs: 3, machines: 2, pmax: 0, seed: 1 }.generate("x").is_err());
    }
}
