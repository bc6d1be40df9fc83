use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use xdhh::formats;
use xdhh::instance::{self, DomainId, Generator};
use xdhh::plan::{self, ExperimentPlan, InstanceSource, PlanCell};
use xdhh::{report, results};
use xdhh_core::BudgetMode;

/// Cross-domain hyper-heuristic experiments.
#[derive(Parser)]
#[command(name = "xdhh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one configuration or a whole plan.
    Run(RunArgs),
    /// Write a seeded random instance.
    Generate {
        #[command(subcommand)]
        generator: Generator,
        /// File stem; defaults to one built from the parameters.
        #[arg(long, global = true)]
        name: Option<String>,
        #[arg(long, env = "XDHH_OUT", default_value = ".", global = true)]
        out: PathBuf,
    },
    /// Rank algorithms over a results directory.
    Report {
        results: PathBuf,
        /// Where borda.csv and summary.json go; defaults to the results directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check result files against the manifest.
    Verify { results: PathBuf },
    /// Split a Taillard benchmark file into plain flow shop instances.
    ConvertTaillard {
        input: PathBuf,
        #[arg(long, env = "XDHH_OUT", default_value = ".")]
        out: PathBuf,
    },
    /// Print the fitness trace of a result file as CSV.
    Trace { result: PathBuf },
}

#[derive(Args)]
struct RunArgs {
    /// JSON experiment plan.
    #[arg(long, conflicts_with_all = ["domain", "instance", "algorithm", "seed", "budget_evals", "budget_ms"])]
    plan: Option<PathBuf>,
    #[arg(long, value_enum, required_unless_present = "plan")]
    domain: Option<DomainId>,
    #[arg(long, required_unless_present = "plan")]
    instance: Option<PathBuf>,
    #[arg(long, required_unless_present = "plan")]
    algorithm: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, conflicts_with = "budget_ms")]
    budget_evals: Option<u64>,
    #[arg(long)]
    budget_ms: Option<u64>,
    #[arg(long, env = "XDHH_OUT")]
    out: Option<PathBuf>,
    /// Parallel runs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

const DEFAULT_EVALUATIONS: u64 = 100_000;

fn cmd_run(args: RunArgs) -> anyhow::Result<bool> {
    let (plan, out) = match &args.plan {
        Some(path) => {
            let plan = ExperimentPlan::load(path)?;
            let out = args.out.clone().or_else(|| plan.output.clone());
            (plan, out)
        }
        None => {
            let budget = match (args.budget_evals, args.budget_ms) {
                (_, Some(ms)) => BudgetMode::WallClock(ms),
                (Some(n), None) => BudgetMode::Evaluations(n),
                (None, None) => BudgetMode::Evaluations(DEFAULT_EVALUATIONS),
            };
            let cell = PlanCell {
                domain: args.domain.expect("required by clap"),
                instance: InstanceSource::Path(args.instance.clone().expect("required by clap")),
                algorithms: vec![args.algorithm.clone().expect("required by clap")],
                seeds: vec![args.seed],
                budget,
            };
            (ExperimentPlan { output: None, cells: vec![cell] }, args.out.clone())
        }
    };
    let out = out.unwrap_or_else(|| PathBuf::from("results"));
    let jobs = plan.validate()?;
    let outcome = plan::execute(&jobs, &out, args.jobs)?;
    println!("{} run(s) written to {}", outcome.written.len(), out.display());
    for (file, err) in &outcome.failures {
        eprintln!("failed: {file}: {err}");
    }
    Ok(outcome.success())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Generate { generator, name, out } => {
            let name = results::sanitize(&name.unwrap_or_else(|| generator.default_id()));
            let inst = generator.generate(&name)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let file = format!("{name}.{}", generator.domain().extension());
            let path = results::write_atomic(&out, &file, inst.render().as_bytes())?;
            println!("{}", path.display());
            Ok(true)
        }
        Command::Report { results, out } => {
            let out = out.unwrap_or_else(|| results.clone());
            let r = report::write_report(&results, &out)?;
            print!("{}", report::borda_csv(&r));
            Ok(true)
        }
        Command::Verify { results } => {
            let problems = plan::verify(&results)?;
            for p in &problems {
                eprintln!("{p}");
            }
            if problems.is_empty() {
                println!("manifest verified");
            }
            Ok(problems.is_empty())
        }
        Command::ConvertTaillard { input, out } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let id = results::sanitize(&instance::id_from_path(&input)?);
            let all = formats::parse_taillard(&id, &text)?;
            if all.is_empty() {
                bail!("no instances in {}", input.display());
            }
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            for inst in &all {
                let file = format!("{}.{}", results::sanitize(inst.id()), DomainId::Flowshop.extension());
                let path = results::write_atomic(&out, &file, formats::write_flowshop(inst).as_bytes())?;
                println!("{}", path.display());
            }
            Ok(true)
        }
        Command::Trace { result } => {
            let text = fs::read_to_string(&result).with_context(|| format!("reading {}", result.display()))?;
            print!("{}", results::trace_csv(&results::from_json(&text)?));
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
