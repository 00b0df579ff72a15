use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use extrank::engine::Ranker;
use extrank::fuzz::{fuzz, FuzzConfig};
use extrank::gradual::{self, GradualId};
use extrank::principles::{check, PrincipleId, PrincipleReport};
use extrank::report::{emit_dot, RankingReport};
use extrank::semantics::{enumerate, SemanticsId};
use extrank::spec::RankingSpec;
use extrank::{apx, Framework, Limits, CAP_ENV_VAR, DEFAULT_ENUMERATION_CAP};

/// Extension rankings for abstract argumentation frameworks.
///
/// Frameworks are read from APX files. Sets are comma-separated argument
/// names; `{}` is the empty set.
#[derive(Parser)]
#[command(name = "extrank", version)]
struct Cli {
    /// Seed for sampled principle checks and fuzzing.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest framework accepted by extension enumeration.
    #[arg(long, global = true, env = CAP_ENV_VAR, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lists the extensions of a semantics, one per line.
    Extensions {
        file: PathBuf,
        /// One of cf, ad, co, gr, pr, st, sst.
        #[arg(long)]
        semantics: SemanticsId,
    },
    /// Compares two sets: better, worse, equivalent or incomparable.
    Compare {
        file: PathBuf,
        #[arg(long)]
        spec: RankingSpec,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        /// Also print the base relation that decided the comparison.
        #[arg(long)]
        explain: bool,
    },
    /// Prints the equivalence classes of the ranking over all subsets, best first.
    Rank {
        file: PathBuf,
        #[arg(long)]
        spec: RankingSpec,
        /// Writes the Hasse diagram as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Writes the ranking as a JSON report.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Lists the most plausible sets, one per line.
    Max {
        file: PathBuf,
        #[arg(long)]
        spec: RankingSpec,
    },
    /// Prints an argument ranking and the per-argument values behind it.
    Gradual {
        file: PathBuf,
        #[arg(long)]
        method: GradualId,
    },
    /// Checks a principle on one framework; exits 1 on a violation.
    Principles {
        file: PathBuf,
        #[arg(long)]
        spec: RankingSpec,
        #[arg(long)]
        principle: PrincipleId,
        /// Prints the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Searches random frameworks for a violation; exits 1 when one is found.
    Fuzz {
        #[arg(long)]
        spec: RankingSpec,
        #[arg(long)]
        principle: PrincipleId,
        #[arg(long, default_value_t = FuzzConfig::default().trials)]
        trials: usize,
        #[arg(long, default_value_t = FuzzConfig::default().max_args)]
        max_args: usize,
        #[arg(long, default_value_t = FuzzConfig::default().density)]
        density: f64,
        /// Reports the first witness as found, without shrinking it.
        #[arg(long)]
        no_shrink: bool,
        /// Prints the report as JSON.
        #[arg(long)]
        json: bool,
    },
}

/// How a successful run ended.
enum Status {
    Ok,
    Violation,
}

fn load(path: &Path) -> Result<Framework> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    apx::parse_apx(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn ranker(path: &Path, spec: RankingSpec, limits: Limits) -> Result<Ranker> {
    Ok(Ranker::with_limits(load(path)?, spec, limits))
}

fn print_report(report: &PrincipleReport, json: bool) -> Result<Status> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else {
        let verdict = match report.outcome.witness() {
            Some(w) => format!("violated: {}", w.describe()),
            None => "no violation found".to_string(),
        };
        println!("{} {}: {verdict}", report.spec, report.principle);
        let mode = format!("{:?}", report.mode).to_lowercase();
        println!("cases checked: {} ({mode})", report.sample_size);
        if report.structurally_unsatisfiable {
            println!("note: the semantics has no extension on this framework");
        }
    }
    Ok(if report.outcome.is_violated() {
        Status::Violation
    } else {
        Status::Ok
    })
}

fn run(cli: Cli) -> Result<Status> {
    let limits = Limits {
        enumeration: cli.cap,
        ..Limits::default()
    };
    match cli.command {
        Command::Extensions { file, semantics } => {
            let f = load(&file)?;
            for e in enumerate(&f, semantics, limits.enumeration)?.extensions {
                println!("{}", f.format_set(&e));
            }
        }
        Command::Compare {
            file,
            spec,
            left,
            right,
            explain,
        } => {
            let r = ranker(&file, spec, limits)?;
            let e = r.framework().parse_set(&left)?;
            let e2 = r.framework().parse_set(&right)?;
            let (verdict, relation) = r.explain(&e, &e2)?;
            match relation.filter(|_| explain) {
                Some(rel) => println!("{verdict} ({rel})"),
                None => println!("{verdict}"),
            }
        }
        Command::Rank { file, spec, dot, json } => {
            let m = ranker(&file, spec, limits)?.materialize(None)?;
            for (i, line) in m.describe().iter().enumerate() {
                let mark = if m.maximal.contains(&i) { "*" } else { " " };
                println!("{mark}{i}: {line}");
            }
            for (worse, better) in &m.edges {
                println!("{worse} -> {better}");
            }
            if let Some(path) = dot {
                fs::write(&path, emit_dot(&m)).with_context(|| format!("cannot write {}", path.display()))?;
            }
            if let Some(path) = json {
                let report = RankingReport::from_ranking(&m);
                fs::write(&path, report.to_json()).with_context(|| format!("cannot write {}", path.display()))?;
            }
        }
        Command::Max { file, spec } => {
            let r = ranker(&file, spec, limits)?;
            for e in r.most_plausible()? {
                println!("{}", r.framework().format_set(&e));
            }
        }
        Command::Gradual { file, method } => {
            let f = load(&file)?;
            let ranking = gradual::rank(&f, method)?;
            println!("{}", ranking.describe(&f));
            match method {
                GradualId::Cat => {
                    for (a, score) in gradual::cat_scores(&f)?.iter().enumerate() {
                        println!("{} {score:.9}", f.name(a));
                    }
                }
                GradualId::Bbs => {
                    for (a, position) in gradual::sv(&ranking).iter().enumerate() {
                        println!("{} {position}", f.name(a));
                    }
                }
            }
        }
        Command::Principles {
            file,
            spec,
            principle,
            json,
        } => {
            let f = load(&file)?;
            return print_report(&check(&f, &spec, principle, cli.seed)?, json);
        }
        Command::Fuzz {
            spec,
            principle,
            trials,
            max_args,
            density,
            no_shrink,
            json,
        } => {
            let config = FuzzConfig {
                trials,
                max_args,
                density,
                seed: cli.seed,
                shrink: !no_shrink,
                ..FuzzConfig::default()
            };
            anyhow::ensure!(config.min_args <= max_args, "--max-args must be at least {}", config.min_args);
            anyhow::ensure!((0.0..=1.0).contains(&density), "--density must lie in [0, 1]");
            return print_report(&fuzz(&spec, principle, &config)?, json);
        }
    }
    Ok(Status::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violation) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            let capped = err
                .chain()
                .any(|e| e.downcast_ref::<extrank::Error>().is_some_and(extrank::Error::is_resource_cap));
            ExitCode::from(if capped { 3 } else { 2 })
        }
    }
}
