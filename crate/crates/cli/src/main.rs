use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rootcert::conjectures::{verify_counterexamples, ConjectureId};
use rootcert::constructions::{Family, FamilySpec};
use rootcert::logmap::{cone_membership, log_image, sample_cone_vs_strata, ConeSpec, SampleBox};
use rootcert::rational;
use rootcert::text::{format_poly, parse_poly};
use rootcert::trig::DEFAULT_PRECISION_BITS;
use rootcert::{analyze, count_real_roots, Error, Poly};

#[derive(Parser)]
#[command(name = "rootcert", version, about = "Certified real-root bounds from coefficient ratios")]
struct Cli {
    /// Working precision for transcendental thresholds.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_BITS)]
    precision_bits: u32,
    /// Output format; `gen` defaults to text, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampling commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    SharpThm2,
    SharpPr1,
    CounterexampleQ,
    HutchinsonExtremal,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::SharpThm2 => Family::SharpThm2,
            FamilyArg::SharpPr1 => Family::SharpPr1,
            FamilyArg::CounterexampleQ => Family::CounterexampleQ,
            FamilyArg::HutchinsonExtremal => Family::HutchinsonExtremal,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every criterion, the oracle and the conjectural bounds.
    Analyze { path: PathBuf },
    /// Exact real root count and isolating intervals.
    Oracle { path: PathBuf },
    /// Print a member of a polynomial family in the text format.
    Gen {
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
    },
    /// Evaluate a conjecture on the counterexample tower up to degree n-max.
    VerifyConjecture {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        #[arg(long)]
        n_max: usize,
    },
    /// Test whether a polynomial lies in a q-cone.
    ConeCheck {
        #[arg(long)]
        spec: PathBuf,
        path: PathBuf,
    },
    /// Sample a q-cone and histogram the oracle root counts.
    ConeSample {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 2.0)]
        log_span: f64,
    },
}

/// Failure with the exit code it maps to.
enum Failure {
    Input(String),
    Contradiction(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn read_source(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_poly(path: &Path) -> Result<Poly, Failure> {
    let src = read_source(path)?;
    parse_poly(&src).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_spec(path: &Path) -> Result<ConeSpec, Failure> {
    let src = read_source(path)?;
    serde_json::from_str(&src).map_err(|e| Failure::Input(format!("{}: bad cone spec: {e}", path.display())))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ConeCheckReport {
    member: bool,
    #[serde(with = "rational::serde_str_vec")]
    q: Vec<rational::Rational>,
    kappa: Vec<f64>,
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let default = match cli.command {
        Command::Gen { .. } => Format::Text,
        _ => Format::Json,
    };
    let text = cli.format.unwrap_or(default) == Format::Text;
    match &cli.command {
        Command::Analyze { path } => {
            let p = read_poly(path)?;
            let report = analyze(&p, cli.precision_bits)?;
            let out = if text {
                let mut s = String::new();
                writeln!(s, "polynomial: {p}").unwrap();
                writeln!(s, "real roots: {}", report.oracle.total_with_multiplicity).unwrap();
                for c in report.certificates.iter().filter(|c| c.applicable) {
                    let state = if c.fired {
                        let (lo, hi) = c.root_range().unwrap();
                        format!("fired, roots in [{lo}, {hi}]")
                    } else if c.indeterminate {
                        "indeterminate".to_string()
                    } else {
                        "silent".to_string()
                    };
                    writeln!(s, "{:?}: {state}", c.criterion).unwrap();
                }
                for c in &report.conjectures {
                    writeln!(
                        s,
                        "{:?}: bound {}, violated {}",
                        c.conjecture, c.predicted_bound, c.violated
                    )
                    .unwrap();
                }
                writeln!(s, "combined: [{}, {}]", report.combined.0, report.combined.1).unwrap();
                writeln!(s, "agreement: {}", report.agreement).unwrap();
                s
            } else {
                json(&report)
            };
            if report.agreement {
                Ok(out)
            } else {
                print!("{out}");
                Err(Failure::Contradiction(format!(
                    "certificate contradicts the oracle: {:?}",
                    report.contradictions
                )))
            }
        }
        Command::Oracle { path } => {
            let p = read_poly(path)?;
            let report = count_real_roots(&p)?;
            if text {
                let mut s = format!(
                    "real roots: {} (distinct {})\n",
                    report.total_with_multiplicity, report.distinct_count
                );
                for iv in &report.isolating_intervals {
                    let (lo, hi) = (rational::to_string(&iv.lo), rational::to_string(&iv.hi));
                    if iv.is_exact() {
                        writeln!(s, "{lo} (multiplicity {})", iv.multiplicity).unwrap();
                    } else {
                        writeln!(s, "({lo}, {hi}) (multiplicity {})", iv.multiplicity).unwrap();
                    }
                }
                Ok(s)
            } else {
                Ok(json(&report))
            }
        }
        Command::Gen { family, n, m, j } => {
            let spec = FamilySpec { family: (*family).into(), n: *n, m: *m, j: *j };
            let p = spec.generate()?;
            if text {
                Ok(format_poly(&p, &[]))
            } else {
                Ok(json(&p))
            }
        }
        Command::VerifyConjecture { id, n_max } => {
            let id = ConjectureId::from_number(*id).expect("clap restricts the range");
            let sweep = verify_counterexamples(*n_max)?;
            let reports = sweep.reports(id);
            if text {
                let mut s = String::new();
                for r in &reports {
                    writeln!(
                        s,
                        "n = {}: bound {}, roots {}, violated {}",
                        r.degree, r.predicted_bound, r.actual_roots, r.violated
                    )
                    .unwrap();
                }
                Ok(s)
            } else {
                Ok(json(&reports))
            }
        }
        Command::ConeCheck { spec, path } => {
            let spec = read_spec(spec)?;
            let p = read_poly(path)?;
            let member = cone_membership(&p, &spec)?;
            let lp = log_image(&p)?;
            if text {
                Ok(format!("member: {member}\n"))
            } else {
                Ok(json(&ConeCheckReport { member, q: lp.q, kappa: lp.kappa }))
            }
        }
        Command::ConeSample { spec, n, count, log_span } => {
            let spec = read_spec(spec)?;
            if !(log_span.is_finite() && *log_span > 0.0) {
                return Err(Failure::Input("log-span must be positive".into()));
            }
            let bx = SampleBox { log_span: *log_span, ..SampleBox::default() };
            let summary = sample_cone_vs_strata(&spec, *n, *count, cli.seed, bx)?;
            if text {
                let mut s = String::new();
                for (roots, k) in &summary.histogram {
                    writeln!(s, "{roots} real roots: {k}").unwrap();
                }
                Ok(s)
            } else {
                Ok(json(&summary))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Contradiction(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
