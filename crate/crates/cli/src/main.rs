use clap::{Args, Parser, Subcommand, ValueEnum};
use rth_cli::suite;
use rth_core::convex::ConvexKind;
use rth_core::dist::{build_k_dist, certify_contraction, min_distinguishability, DeterministicTheory};
use rth_core::gen::{build, FamilySpec};
use rth_core::inform::{more_informative, InformMode};
use rth_core::monotone::{cost_monotone, yield_monotone};
use rth_core::translate::{certify_direct, pull_back, PullbackMode};
use rth_core::{dot, io, Error, OrderedResources, ResourceSet, ResourceTheory};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rth", version, about = "Finite resource theories: validation, orders, monotones")]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check the theory axioms and report violations.
    Validate {
        #[arg(long)]
        theory: PathBuf,
        /// Treat the input as a convex theory (with points) and also check
        /// bilinearity.
        #[arg(long)]
        convex: bool,
        /// Carrier size beyond which associativity is sampled.
        #[arg(long, default_value_t = 64)]
        cap: usize,
        /// Warn on incompatible (empty-combination) pairs.
        #[arg(long)]
        strict: bool,
    },
    /// Emit the derived resource order.
    Order {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build a monotone.
    Monotone {
        #[command(subcommand)]
        construction: MonotoneCmd,
    },
    /// Compare two valuations by informativeness.
    Compare {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long)]
        valuation2: PathBuf,
        #[arg(long, value_enum, default_value_t = CompareMode::Partial)]
        mode: CompareMode,
    },
    /// Build the k-distinguishability lifting of a deterministic theory.
    Dist {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, short)]
        k: usize,
        /// Restrict free tuples to constant tuples of free base resources.
        #[arg(long)]
        constrained: bool,
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
    },
    /// Generate a theory from a seeded family.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the property suite (the acceptance criteria).
    Check {
        /// "all" or a criterion number 1–10.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CompareMode {
    Monotone,
    Partial,
}

#[derive(Args)]
struct YieldCostArgs {
    #[arg(long)]
    theory: PathBuf,
    #[arg(long)]
    valuation: PathBuf,
    /// "free" or a file holding a JSON array of resource names.
    #[arg(long, default_value = "free")]
    d: String,
}

#[derive(Subcommand)]
enum MonotoneCmd {
    /// Greatest monotone extension: sup of the valuation over the D-image.
    Yield(YieldCostArgs),
    /// Least monotone extension: inf of the valuation over the D-preimage.
    Cost(YieldCostArgs),
    /// Pull a root valuation back through a mediating map.
    Pullback {
        /// Mediating-map file (embeds source and target theories).
        #[arg(long)]
        map: PathBuf,
        /// Root valuation over the target carrier.
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long, value_enum)]
        mode: PullMode,
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
    },
    /// Minimal distinguishability from a 2-contraction over a base theory.
    Contraction {
        #[arg(long)]
        theory: PathBuf,
        /// 2-contraction values over the unconstrained pair carrier; defaults
        /// to the difference indicator.
        #[arg(long)]
        valuation: Option<PathBuf>,
        /// "free" or a file holding a JSON array of base resource names
        /// (must be downward closed).
        #[arg(long, default_value = "free")]
        d: String,
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
    },
    /// One of the convex-alignment monotones on a convex theory.
    Convex {
        #[arg(long)]
        theory: PathBuf,
        #[arg(long, value_enum)]
        kind: CliConvexKind,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PullMode {
    Max,
    Min,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliConvexKind {
    Weight,
    Robustness,
    FreeRobustness,
    NonConvexity,
}

impl From<CliConvexKind> for ConvexKind {
    fn from(k: CliConvexKind) -> ConvexKind {
        match k {
            CliConvexKind::Weight => ConvexKind::Weight,
            CliConvexKind::Robustness => ConvexKind::Robustness,
            CliConvexKind::FreeRobustness => ConvexKind::FreeRobustness,
            CliConvexKind::NonConvexity => ConvexKind::NonConvexity,
        }
    }
}

/// Exit 1: a domain-level failure (axiom violation, uncertifiable input,
/// failed check). Exit 2: unreadable or unparsable input.
enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Io(_) | Error::Json(_) | Error::InvalidInput(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_theory(path: &PathBuf) -> Result<ResourceTheory, Failure> {
    Ok(io::theory_from_json(&read(path)?)?)
}

fn load_d(spec: &str, names: &[String]) -> Result<Option<ResourceSet>, Failure> {
    if spec == "free" {
        return Ok(None);
    }
    let text = read(&PathBuf::from(spec))?;
    let members: Vec<String> =
        serde_json::from_str(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut set = ResourceSet::empty(names.len());
    for m in &members {
        let i = names
            .iter()
            .position(|n| n == m)
            .ok_or_else(|| Failure::Usage(format!("unknown resource `{m}` in D")))?;
        set.insert(i);
    }
    Ok(Some(set))
}

#[derive(Serialize)]
struct ValidateReport<'a> {
    valid: bool,
    #[serde(flatten)]
    report: &'a rth_core::ValidationReport,
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    match cli.command {
        Command::Validate {
            theory,
            convex,
            cap,
            strict,
        } => {
            let text = read(&theory)?;
            let report = if convex {
                io::convex_from_json(&text)?.validate()
            } else {
                let t = io::theory_from_json(&text)?;
                let opts = rth_core::theory::ValidateOptions {
                    cap,
                    warn_incompatible: strict,
                    ..Default::default()
                };
                t.validate_with(&opts)
            };
            let valid = report.is_valid();
            Ok((
                pretty(&ValidateReport {
                    valid,
                    report: &report,
                }) + "\n",
                valid,
            ))
        }
        Command::Order { theory, format } => {
            let t = load_theory(&theory)?;
            let pre = t.resource_order()?;
            match format {
                Format::Dot => Ok((dot::order_to_dot(&pre), true)),
                Format::Json => {
                    #[derive(Serialize)]
                    struct OrderReport {
                        labels: Vec<String>,
                        pairs: Vec<(String, String)>,
                    }
                    let pairs = pre
                        .pairs()
                        .into_iter()
                        .map(|(a, b)| (pre.label(a).to_string(), pre.label(b).to_string()))
                        .collect();
                    Ok((
                        pretty(&OrderReport {
                            labels: pre.labels().to_vec(),
                            pairs,
                        }) + "\n",
                        true,
                    ))
                }
            }
        }
        Command::Monotone { construction } => {
            let (names, m) = match construction {
                MonotoneCmd::Yield(ref args) | MonotoneCmd::Cost(ref args) => {
                    let is_yield = matches!(construction, MonotoneCmd::Yield(_));
                    let t = load_theory(&args.theory)?;
                    let f = io::valuation_from_json(t.names(), &read(&args.valuation)?)?;
                    let d = load_d(&args.d, t.names())?;
                    let names = t.names().to_vec();
                    let ctx = OrderedResources::from_theory(t)?;
                    let m = if is_yield {
                        yield_monotone(&ctx, &f, d.as_ref())?
                    } else {
                        cost_monotone(&ctx, &f, d.as_ref())?
                    };
                    (names, m)
                }
                MonotoneCmd::Pullback {
                    map,
                    valuation,
                    mode,
                    cap,
                } => {
                    let (source, target, f) = io::mediating_map_from_json(&read(&map)?)?;
                    let root = io::valuation_from_json(target.names(), &read(&valuation)?)?;
                    let names = source.names().to_vec();
                    let src = OrderedResources::from_theory(source)?;
                    let tgt = OrderedResources::from_theory(target)?;
                    let cert = certify_direct(f, &src, &tgt, cap)?;
                    let mode = match mode {
                        PullMode::Max => PullbackMode::Max,
                        PullMode::Min => PullbackMode::Min,
                    };
                    (names, pull_back(&cert, &src, &tgt, &root, mode)?)
                }
                MonotoneCmd::Contraction {
                    theory,
                    valuation,
                    d,
                    cap,
                } => {
                    let base = DeterministicTheory::new(load_theory(&theory)?)?;
                    let names = base.theory().names().to_vec();
                    let pairs = build_k_dist(&base, 2, false, cap)?;
                    let values = match valuation {
                        Some(path) => {
                            let f = io::valuation_from_json(
                                pairs.theory().names(),
                                &read(&path)?,
                            )?;
                            (0..pairs.len())
                                .map(|t| {
                                    f.value(t).cloned().ok_or_else(|| {
                                        Failure::Usage(
                                            "contraction valuation must be total".into(),
                                        )
                                    })
                                })
                                .collect::<Result<Vec<_>, _>>()?
                        }
                        None => rth_core::dist::difference_indicator(base.len(), 2),
                    };
                    let cert = certify_contraction(&base, 2, values, cap)?;
                    let r_dc = load_d(&d, names.as_slice())?
                        .unwrap_or_else(|| base.theory().free().clone());
                    (names, min_distinguishability(&base, &cert, &r_dc)?)
                }
                MonotoneCmd::Convex { theory, kind } => {
                    let ct = io::convex_from_json(&read(&theory)?)?;
                    let names = ct.theory().names().to_vec();
                    let m = rth_core::convex::named_monotone(&ct, kind.into())?;
                    (names, m)
                }
            };
            Ok((io::monotone_to_json(&names, &m) + "\n", true))
        }
        Command::Compare {
            theory,
            valuation,
            valuation2,
            mode,
        } => {
            let t = load_theory(&theory)?;
            let f = io::valuation_from_json(t.names(), &read(&valuation)?)?;
            let g = io::valuation_from_json(t.names(), &read(&valuation2)?)?;
            let ctx = OrderedResources::from_theory(t)?;
            let pre = ctx.order();
            let m = match mode {
                CompareMode::Monotone => InformMode::Monotone,
                CompareMode::Partial => InformMode::Partial,
            };
            let forward = more_informative(&f, &g, &pre, m)?;
            let backward = more_informative(&g, &f, &pre, m)?;
            #[derive(Serialize)]
            struct CompareReport {
                mode: &'static str,
                first_more_informative: bool,
                second_more_informative: bool,
                equivalent: bool,
            }
            Ok((
                pretty(&CompareReport {
                    mode: match mode {
                        CompareMode::Monotone => "monotone",
                        CompareMode::Partial => "partial",
                    },
                    first_more_informative: forward,
                    second_more_informative: backward,
                    equivalent: forward && backward,
                }) + "\n",
                true,
            ))
        }
        Command::Dist {
            theory,
            k,
            constrained,
            cap,
        } => {
            let base = DeterministicTheory::new(load_theory(&theory)?)?;
            let tt = build_k_dist(&base, k, constrained, cap)?;
            Ok((io::theory_to_json(tt.theory()) + "\n", true))
        }
        Command::Gen {
            family,
            size,
            seed,
            format,
        } => {
            let spec = FamilySpec::from_name(&family, size)?;
            let t = build(&spec, seed)?;
            match format {
                Format::Json => Ok((io::theory_to_json(&t) + "\n", true)),
                Format::Dot => Ok((dot::order_to_dot(&t.resource_order()?), true)),
            }
        }
        Command::Check {
            suite: which,
            trials,
            seed,
        } => {
            let results = if which == "all" {
                suite::run_all(trials, seed)
            } else {
                let id: usize = which
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad suite `{which}`")))?;
                if !(1..=10).contains(&id) {
                    return Err(Failure::Usage("suite must be \"all\" or 1..=10".into()));
                }
                vec![suite::run_one(id, trials, seed)]
            };
            let mut out = String::new();
            let mut all_passed = true;
            for r in &results {
                all_passed &= r.passed;
                out.push_str(&format!(
                    "criterion {}: {} — {} ({})\n",
                    r.id,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                ));
            }
            Ok((out, all_passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok((text, ok)) => {
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
