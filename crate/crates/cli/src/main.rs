mod io;
mod plot;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{error::ErrorKind, Args, Parser, Subcommand};
use majorlab::axioms::{classify_faithfulness, default_schedule, order_parameter, probe_axioms, DEFAULT_TOLERANCE};
use majorlab::bijection::{entropy_from_relent, extension_lower_witness, extension_upper_witness, relent_from_entropy};
use majorlab::catalytic::{
    brute_force_catalyst, catalytic_relmaj, default_grid, trumps, CatalystSearch, Verdict, DEFAULT_GRID_POINTS,
};
use majorlab::divergences::{parse_divergence, parse_entropy, EntropyFn, SharedDivergence, SharedEntropy};
use majorlab::json::{channel_to_json, ext_real_to_json, prob_vec_to_json};
use majorlab::majorisation::{birkhoff_decompose, majorises, mixing_witness};
use majorlab::rational::format_rational;
use majorlab::relmaj::{channel_witness, embed_to_uniform, lorenz_curve, relatively_majorises};
use majorlab::{ExtReal, MajorError, ProbVec};
use serde_json::{json, Value};

const FORMATS: &str = "\
Input formats (schemas in crates/cli/schemas):
  probability vector  {\"dist\": [\"1/3\", \"1/4\", 0.25, \"1/6\"]}
  channel             {\"rows\": [[\"1\", \"0\"], [\"1/2\", \"1/2\"]]}
Entries are fractions or decimals, read exactly (0.4 is 2/5).
Divergences: alpha:A, kl, min, max, path, tv, chi2. Entropies: alpha:A, shannon, min, max.
Values are in bits; +inf is written as {\"value\": null, \"exact_infinite\": true}.
Exit status: 0 on a computed result, 1 for a negative result under --strict, 2 on input errors.
Environment: MAJORLAB_THREADS caps the worker threads.";

#[derive(Parser)]
#[command(name = "majorlab", version, about = "Exact majorisation and axiomatic relative entropies", after_help = FORMATS)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Tolerance for axiom probes (must be positive).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of interior grid orders for trumping and catalytic checks.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Exit with status 1 when the answer is negative.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Does p majorise q?
    Majorize {
        p: PathBuf,
        q: PathBuf,
        /// Write a mixing channel taking p (restricted to its support) to q.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Does (p, q) relatively majorise (p2, q2)?
    Relmaj {
        p: PathBuf,
        q: PathBuf,
        p2: PathBuf,
        q2: PathBuf,
        /// Write a channel W with pW = p2 and qW = q2.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Lorenz curve of (p, q).
    Lorenz {
        p: PathBuf,
        q: PathBuf,
        /// Write vertices as CSV (`-` for standard output).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write an SVG plot with both boundaries (`-` for standard output).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The embedding (p, q) ~ (r, u^(k)) for full-support q.
    Embed { p: PathBuf, q: PathBuf },
    /// Evaluate a relative entropy.
    Divergence {
        #[command(flatten)]
        which: DivergenceChoice,
        p: PathBuf,
        q: PathBuf,
    },
    /// Evaluate an entropy.
    Entropy {
        #[command(flatten)]
        which: EntropyChoice,
        p: PathBuf,
    },
    /// Map between relative entropies and entropies.
    Bijection {
        #[command(subcommand)]
        direction: BijectionCommand,
    },
    /// Grid check of the Rényi conditions for p trumping p2.
    Trump { p: PathBuf, p2: PathBuf },
    /// Grid check of catalytic relative majorisation, optionally with a catalyst search.
    Catalytic {
        p: PathBuf,
        q: PathBuf,
        p2: PathBuf,
        q2: PathBuf,
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 6)]
        denom: u64,
        /// Let the second catalyst vary instead of fixing it uniform.
        #[arg(long)]
        free: bool,
    },
    /// Probe data processing, additivity, identity and normalisation.
    Axioms {
        #[arg(long)]
        divergence: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Estimate the order of a relative entropy.
    Order {
        #[arg(long)]
        divergence: String,
    },
    /// Classify a relative entropy as faithful or not.
    Faithful {
        #[arg(long)]
        divergence: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Certified witnesses.
    Witness {
        #[command(subcommand)]
        kind: WitnessCommand,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DivergenceChoice {
    /// Rényi order (a number or `inf`).
    #[arg(long)]
    alpha: Option<String>,
    /// f-divergence generator: tv, chi2 or kl.
    #[arg(long)]
    f: Option<String>,
    /// Any divergence name.
    #[arg(long)]
    divergence: Option<String>,
}

impl DivergenceChoice {
    fn resolve(&self) -> Result<SharedDivergence> {
        let name = match (&self.alpha, &self.f, &self.divergence) {
            (Some(a), _, _) => format!("alpha:{a}"),
            (_, Some(f), _) if matches!(f.as_str(), "tv" | "chi2" | "kl") => f.clone(),
            (_, Some(f), _) => bail!(MajorError::Parse(format!("unknown generator {f:?}"))),
            (_, _, Some(d)) => d.clone(),
            _ => unreachable!("clap enforces one choice"),
        };
        Ok(parse_divergence(&name)?)
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct EntropyChoice {
    /// Rényi order (a number or `inf`).
    #[arg(long)]
    alpha: Option<String>,
    /// Any entropy name.
    #[arg(long)]
    entropy: Option<String>,
}

impl EntropyChoice {
    fn resolve(&self) -> Result<SharedEntropy> {
        let name = match (&self.alpha, &self.entropy) {
            (Some(a), _) => format!("alpha:{a}"),
            (_, Some(e)) => e.clone(),
            _ => unreachable!("clap enforces one choice"),
        };
        Ok(parse_entropy(&name)?)
    }
}

#[derive(Subcommand)]
enum BijectionCommand {
    /// p ↦ log n - D(p‖u^(n)).
    ToEntropy {
        #[command(flatten)]
        which: DivergenceChoice,
        p: PathBuf,
    },
    /// (p, q) ↦ log k - H(r) for the embedding of (p, q).
    ToRelent {
        #[arg(long)]
        entropy: String,
        p: PathBuf,
        q: PathBuf,
    },
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// log k - H(r) after checking (p, q) ≻ (r, u^(k)), k = |r|.
    Lower {
        #[arg(long)]
        entropy: String,
        p: PathBuf,
        q: PathBuf,
        r: PathBuf,
    },
    /// log k - H(r) after checking (r, u^(k)) ≻ (p, q), k = |r|.
    Upper {
        #[arg(long)]
        entropy: String,
        p: PathBuf,
        q: PathBuf,
        r: PathBuf,
    },
    /// Birkhoff decomposition of a bistochastic channel.
    Birkhoff { w: PathBuf },
}

/// A JSON result and whether it counts as positive for `--strict`.
struct Outcome {
    value: Value,
    positive: bool,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Outcome { value, positive: true }
    }
}

fn ext_value(v: majorlab::Result<ExtReal>) -> Result<Value> {
    match v {
        Ok(x) => Ok(ext_real_to_json(x)),
        Err(MajorError::ExtensionDiverged { lower, upper }) => Ok(json!({
            "value": null,
            "exact_infinite": false,
            "bits": true,
            "bracket": [lower, upper],
        })),
        Err(e) => Err(e.into()),
    }
}

fn finite_value(v: f64) -> Result<Value> {
    Ok(ext_real_to_json(ExtReal::new(v)?))
}

fn read(path: &Path) -> Result<ProbVec> {
    io::read_prob_vec(path)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let grid = default_grid(g.grid.unwrap_or(DEFAULT_GRID_POINTS));
    Ok(match &cli.command {
        Command::Majorize { p, q, witness } => {
            let (p, q) = (read(p)?, read(q)?);
            let holds = majorises(&p, &q);
            if let (true, Some(path)) = (holds, witness) {
                io::write_json(path, &channel_to_json(&mixing_witness(&p, &q)?))?;
            }
            Outcome {
                value: json!({ "majorises": holds }),
                positive: holds,
            }
        }
        Command::Relmaj { p, q, p2, q2, witness } => {
            let (p, q, p2, q2) = (read(p)?, read(q)?, read(p2)?, read(q2)?);
            let holds = relatively_majorises(&p, &q, &p2, &q2)?;
            if let (true, Some(path)) = (holds, witness) {
                let w = channel_witness(&p, &q, &p2, &q2)?.context("no channel found for a majorised pair")?;
                io::write_json(path, &channel_to_json(&w))?;
            }
            Outcome {
                value: json!({ "relatively_majorises": holds }),
                positive: holds,
            }
        }
        Command::Lorenz { p, q, csv, svg } => {
            let curve = lorenz_curve(&read(p)?, &read(q)?)?;
            if let Some(path) = csv {
                io::write_text(path, &plot::csv(&curve))?;
            }
            if let Some(path) = svg {
                io::write_text(path, &plot::svg(&curve))?;
            }
            if csv.is_some() || svg.is_some() {
                return Ok(Outcome {
                    value: Value::Null,
                    positive: true,
                });
            }
            json!({
                "vertices": curve
                    .vertices()
                    .iter()
                    .map(|(a, b)| [format_rational(a), format_rational(b)])
                    .collect::<Vec<_>>(),
            })
            .into()
        }
        Command::Embed { p, q } => {
            let (r, k) = embed_to_uniform(&read(p)?, &read(q)?)?;
            let mut v = prob_vec_to_json(&r);
            v["k"] = json!(k);
            v.into()
        }
        Command::Divergence { which, p, q } => ext_value(which.resolve()?.evaluate(&read(p)?, &read(q)?))?.into(),
        Command::Entropy { which, p } => finite_value(which.resolve()?.evaluate(&read(p)?)?)?.into(),
        Command::Bijection { direction } => match direction {
            BijectionCommand::ToEntropy { which, p } => {
                finite_value(entropy_from_relent(which.resolve()?).evaluate(&read(p)?)?)?.into()
            }
            BijectionCommand::ToRelent { entropy, p, q } => ext_value(relent_from_entropy(
                parse_entropy(entropy)?.as_ref(),
                &read(p)?,
                &read(q)?,
            ))?
            .into(),
        },
        Command::Trump { p, p2 } => {
            let t = trumps(&read(p)?, &read(p2)?, &grid)?;
            Outcome {
                value: report::tri_state(&t),
                positive: t.verdict == Verdict::Holds,
            }
        }
        Command::Catalytic {
            p,
            q,
            p2,
            q2,
            search,
            max_dim,
            denom,
            free,
        } => {
            let (p, q, p2, q2) = (read(p)?, read(q)?, read(p2)?, read(q2)?);
            let t = catalytic_relmaj(&p, &q, &p2, &q2, &grid)?;
            let mut value = report::tri_state(&t);
            let mut positive = t.verdict == Verdict::Holds;
            if *search {
                let mode = if *free {
                    CatalystSearch::Free
                } else {
                    CatalystSearch::Plain
                };
                let found = brute_force_catalyst(&p, &q, &p2, &q2, *max_dim, *denom, mode)?;
                positive = found.is_some();
                value["catalyst"] = match found {
                    Some((r, t)) => json!({ "r": prob_vec_to_json(&r), "t": prob_vec_to_json(&t) }),
                    None => Value::Null,
                };
            }
            Outcome { value, positive }
        }
        Command::Axioms { divergence, samples } => {
            let tol = g.tol.unwrap_or(DEFAULT_TOLERANCE);
            let d = parse_divergence(divergence)?;
            let reports = probe_axioms(d.as_ref(), *samples, g.seed, tol);
            Outcome {
                positive: reports.iter().all(|r| r.passed()),
                value: json!({
                    "divergence": d.name(),
                    "seed": g.seed,
                    "samples": samples,
                    "reports": reports.iter().map(report::axiom_report).collect::<Vec<_>>(),
                }),
            }
        }
        Command::Order { divergence } => {
            let d = parse_divergence(divergence)?;
            let mut v = report::order(&order_parameter(d.as_ref(), &default_schedule())?);
            v["divergence"] = json!(d.name());
            v.into()
        }
        Command::Faithful { divergence, samples } => {
            let d = parse_divergence(divergence)?;
            let f = classify_faithfulness(d.as_ref(), *samples, g.seed)?;
            let mut v = report::faithfulness(&f);
            v["divergence"] = json!(d.name());
            v.into()
        }
        Command::Witness { kind } => match kind {
            WitnessCommand::Lower { entropy, p, q, r } | WitnessCommand::Upper { entropy, p, q, r } => {
                let h = parse_entropy(entropy)?;
                let (p, q, r) = (read(p)?, read(q)?, read(r)?);
                let k = r.len();
                let bound = if matches!(kind, WitnessCommand::Lower { .. }) {
                    extension_lower_witness(h.as_ref(), &p, &q, &r, k)
                } else {
                    extension_upper_witness(h.as_ref(), &p, &q, &r, k)
                };
                ext_value(bound)?.into()
            }
            WitnessCommand::Birkhoff { w } => {
                let terms = birkhoff_decompose(&io::read_channel(w)?)?;
                json!({
                    "terms": terms
                        .iter()
                        .map(|(c, perm)| json!({ "weight": format_rational(c), "permutation": perm }))
                        .collect::<Vec<_>>(),
                })
                .into()
            }
        },
    })
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("MAJORLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("MAJORLAB_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            eprintln!("\n{FORMATS}");
            return ExitCode::from(2);
        }
    };
    let result = (|| {
        if cli.global.tol.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
            bail!("--tol must be a positive number");
        }
        configure_threads()?;
        let outcome = run(&cli)?;
        if !outcome.value.is_null() {
            io::write_json(cli.global.out.as_deref().unwrap_or(Path::new("-")), &outcome.value)?;
        }
        Ok(outcome.positive)
    })();
    match result {
        Ok(positive) if cli.global.strict && !positive => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
