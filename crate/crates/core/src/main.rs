use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use owadom::dominance::RankingMethod;
use owadom::lattice::{LatticeOptions, TNorm};
use owadom::owa::{importance_weights, quantifier_weights, ImportanceVector, Quantifier};
use owadom::pipeline::{rank_alternatives, score_alternative, DecisionProblem};
use owadom::problem_file::{parse_problem, Strictness};
use owadom::report::{ranking_text, score_text, to_json, Style};
use owadom::Diagnostic;

/// OWA aggregation of uncertain linguistic satisfactions.
#[derive(Parser)]
#[command(name = "owadom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Fuzzy ranking used on surrogates (overrides the problem file).
    #[arg(long, global = true, value_enum)]
    ranking: Option<Ranking>,
    /// Grid points for lattice operations.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(2..))]
    grid: Option<u64>,
    /// t-norm inside the inclusion index.
    #[arg(long, global = true)]
    tnorm: Option<TNorm>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Treat unknown fields as errors (default).
    #[arg(long, global = true, conflicts_with = "lenient")]
    strict: bool,
    /// Report unknown fields as warnings and ignore them.
    #[arg(long, global = true)]
    lenient: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Rank every alternative in a problem file.
    Rank { spec: PathBuf },
    /// Score one alternative with its full trace.
    Score {
        spec: PathBuf,
        #[arg(long)]
        alternative: String,
    },
    /// Print OWA weights generated by a quantifier.
    Weights {
        /// `power:<α>` or `knots:z,q;z,q;…`
        #[arg(long)]
        quantifier: Quantifier,
        /// Number of arguments.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Comma-separated importances, already in rank order.
        #[arg(long, value_delimiter = ',')]
        importances: Option<Vec<f64>>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Ranking {
    Centroid,
    LatticeIni,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Validation(Vec<Diagnostic>),
    Usage(String),
}

fn style() -> Style {
    let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
    Style {
        color: !no_color && std::io::stdout().is_terminal(),
    }
}

fn load(path: &PathBuf, opts: &GlobalOpts) -> Result<(DecisionProblem, Vec<String>), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let strictness = if opts.lenient {
        Strictness::Lenient
    } else {
        Strictness::Strict
    };
    let parsed = parse_problem(&text, strictness).map_err(Failure::Validation)?;
    let mut problem = parsed.problem;

    let mut lattice = match problem.ranking {
        RankingMethod::LatticeIni(o) => o,
        RankingMethod::Centroid => LatticeOptions::default(),
    };
    if let Some(g) = opts.grid {
        lattice.grid_points = g as usize;
    }
    if let Some(t) = opts.tnorm {
        lattice.tnorm = t;
    }
    problem.ranking = match (opts.ranking, problem.ranking) {
        (Some(Ranking::Centroid), _) | (None, RankingMethod::Centroid) => RankingMethod::Centroid,
        (Some(Ranking::LatticeIni), _) | (None, RankingMethod::LatticeIni(_)) => {
            RankingMethod::LatticeIni(lattice)
        }
    };
    let warnings = parsed.warnings.iter().map(|d| d.to_string()).collect();
    Ok((problem, warnings))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Rank { spec } => {
            let (problem, parse_warnings) = load(spec, opts)?;
            let mut report = rank_alternatives(&problem)
                .map_err(|e| Failure::Validation(vec![Diagnostic::new("", e.to_string())]))?;
            report.warnings.splice(0..0, parse_warnings);
            Ok(match opts.format {
                Format::Json => to_json(&report),
                Format::Text => ranking_text(&report, &problem.scale, style()),
            })
        }
        Command::Score { spec, alternative } => {
            let (problem, parse_warnings) = load(spec, opts)?;
            let score = score_alternative(&problem, alternative)
                .map_err(|e| Failure::Validation(vec![Diagnostic::new("", e.to_string())]))?;
            for w in &parse_warnings {
                eprintln!("warning: {w}");
            }
            Ok(match opts.format {
                Format::Json => to_json(&score),
                Format::Text => score_text(&score, &problem.scale, style()),
            })
        }
        Command::Weights {
            quantifier,
            n,
            importances,
        } => {
            let n = *n as usize;
            let weights = match importances {
                None => quantifier_weights(quantifier, n),
                Some(l) if l.len() != n => {
                    return Err(Failure::Usage(format!(
                        "{} importances for --n {n}",
                        l.len()
                    )));
                }
                Some(l) => ImportanceVector::new(l.clone())
                    .and_then(|imp| importance_weights(quantifier, &imp)),
            }
            .map_err(|e| Failure::Validation(vec![Diagnostic::new("", e.to_string())]))?;
            Ok(match opts.format {
                Format::Json => to_json(&json!({
                    "quantifier": quantifier.to_string(),
                    "weights": weights,
                })),
                Format::Text => {
                    let parts: Vec<_> = weights
                        .as_slice()
                        .iter()
                        .map(|&w| owadom::fmt::sig6(w))
                        .collect();
                    format!("{}\n", parts.join(" "))
                }
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Validation(diags)) => {
            for d in diags {
                eprintln!("error: {d}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
