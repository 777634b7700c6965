mod bodies;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use mixvol::bezout::{self, CheckKind, SearchOptions, Witness};
use mixvol::exclusion;
use mixvol::io::{self, CorpusKind};
use mixvol::mixed::{mixed_volume, mixed_volume_oracle, BodyTuple};
use mixvol::{bkk, par, rational, Error, Value};

#[derive(Parser)]
#[command(name = "mixvol", version, about = "Exact mixed volumes, Bezout-type inequalities and excluding conditions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Seed for every stochastic step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search budget (candidate pairs or restarts).
    #[arg(long, global = true, default_value_t = 10_000)]
    budget: usize,
    /// Number of random trials.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Decimal digits for high-precision checks.
    #[arg(long, global = true, default_value_t = 60)]
    precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (default: logical cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Volume of a body.
    Volume { body: String },
    /// Mixed volume of bodies given as `body[:multiplicity]`.
    Mixed {
        #[arg(long, num_args = 1.., required = true)]
        bodies: Vec<String>,
        /// Cross-check against the dehomogenized volume-polynomial oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Bezout-type ratios and lower-bound searches.
    #[command(subcommand)]
    Bezout(BezoutCommand),
    /// Sweep an inequality over seeded random instances.
    Check {
        #[arg(value_parser = parse_check)]
        kind: CheckKind,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Excluding conditions: isoperimetric ratios, perturbation tests, facet census.
    #[command(subcommand)]
    Exclude(ExcludeCommand),
    /// Shift facet `i` of `P` by `t` (in units of its primitive normal).
    Perturb {
        #[arg(long = "P")]
        p: String,
        #[arg(long)]
        facet: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Count torus zeros of random sparse systems against the mixed area.
    #[command(subcommand)]
    Bkk(BkkCommand),
    /// Write the canonical simplex, cube and cross-polytope files.
    Corpus {
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
        dims: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum BezoutCommand {
    /// Exact ratio: `b_2` with --A/--B, `b` with --tuple, `b'` with --lower.
    Ratio {
        #[arg(long = "K")]
        k: String,
        #[arg(long = "A", requires = "b")]
        a: Option<String>,
        #[arg(long = "B")]
        b: Option<String>,
        #[arg(long, num_args = 1.., conflicts_with_all = ["a", "lower"])]
        tuple: Vec<String>,
        #[arg(long, num_args = 1.., conflicts_with = "a")]
        lower: Vec<String>,
    },
    /// Certified lower bound for `b_2(K)` from a candidate search.
    Search {
        #[arg(long = "K")]
        k: String,
        #[arg(long)]
        no_float: bool,
        #[arg(long)]
        no_perturbations: bool,
    },
}

#[derive(Subcommand)]
enum ExcludeCommand {
    /// Facet isoperimetric condition.
    Isop {
        #[arg(long = "P")]
        p: String,
    },
    /// Affine-image isoperimetric search.
    Affine {
        #[arg(long = "P")]
        p: String,
    },
    /// Proportionality of the mixed surface measures of a perturbation.
    Sigma {
        #[arg(long = "P")]
        p: String,
        #[arg(long)]
        facet: usize,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Weak decomposability with a verified witness.
    Weak {
        #[arg(long = "P")]
        p: String,
    },
    /// Face-dimension census of the surface measure.
    Omega {
        #[arg(long = "P")]
        p: String,
    },
}

#[derive(Subcommand)]
enum BkkCommand {
    /// Count torus zeros of seeded random systems against twice the mixed area.
    Verify {
        #[arg(long)]
        support1: String,
        #[arg(long)]
        support2: String,
    },
}

fn parse_check(s: &str) -> Result<CheckKind, String> {
    s.parse::<CheckKind>().map_err(|e| e.to_string())
}

/// A finished command: its JSON result, a one-line text rendering, and whether all assertions held.
struct Outcome {
    result: Json,
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(result: Json, text: String) -> Self {
        Outcome { result, text, ok: true }
    }
}

fn certified_text(value: &Value, certified: bool) -> String {
    format!("{value} ({})", if certified { "certified" } else { "float" })
}

fn witness_arg(w: &Witness, k_arg: &str) -> String {
    match w {
        Witness::Segment { direction } => format!(
            "seg:{}",
            direction.coords().iter().map(rational::format).collect::<Vec<_>>().join(",")
        ),
        Witness::Perturbation { facet, t } => format!("pert:{facet}:{}", rational::format(t)),
        Witness::Body { .. } | Witness::FloatSegment { .. } => k_arg.to_string(),
    }
}

fn run(command: &Command, g: &Global) -> mixvol::Result<Outcome> {
    match command {
        Command::Volume { body } => {
            let p = bodies::load(body)?;
            let v = Value::Exact(p.volume());
            Ok(Outcome::ok(json!({ "volume": v }), v.to_string()))
        }
        Command::Mixed { bodies: specs, oracle } => {
            let entries = specs.iter().map(|s| bodies::with_multiplicity(s)).collect::<mixvol::Result<Vec<_>>>()?;
            let tuple = BodyTuple::new(entries)?;
            let v = mixed_volume(&tuple)?;
            let mut result = json!({ "mixed_volume": Value::Exact(v.clone()) });
            let mut ok = true;
            let mut text = rational::format(&v);
            if *oracle {
                let o = mixed_volume_oracle(&tuple)?;
                ok = o == v;
                result["oracle"] = json!(Value::Exact(o.clone()));
                result["oracle_agrees"] = json!(ok);
                text = format!("{text} (oracle {})", if ok { "agrees" } else { "DISAGREES" });
            }
            Ok(Outcome { result, text, ok })
        }
        Command::Bezout(BezoutCommand::Ratio { k, a, b, tuple, lower }) => {
            let kb = bodies::load(k)?;
            let report = if let (Some(a), Some(b)) = (a, b) {
                let (pa, pb) = (bodies::load_relative(a, &kb)?, bodies::load_relative(b, &kb)?);
                let r = bezout::ratio_b2(&pa, &pb, &kb)?;
                bezout::ratio_report(bezout::ReportKind::B2Ratio, r, vec![Witness::body("A", &pa), Witness::body("B", &pb)])
            } else if !tuple.is_empty() {
                let ps = tuple.iter().map(|s| bodies::load_relative(s, &kb)).collect::<mixvol::Result<Vec<_>>>()?;
                let r = bezout::ratio_b(&ps, &kb)?;
                let w = ps.iter().enumerate().map(|(i, p)| Witness::body(format!("A{}", i + 1), p)).collect();
                bezout::ratio_report(bezout::ReportKind::BRatio, r, w)
            } else if !lower.is_empty() {
                let ps = lower.iter().map(|s| bodies::load_relative(s, &kb)).collect::<mixvol::Result<Vec<_>>>()?;
                let r = bezout::ratio_bprime(&ps, &kb)?;
                let w = ps.iter().enumerate().map(|(i, p)| Witness::body(format!("L{}", i + 1), p)).collect();
                bezout::ratio_report(bezout::ReportKind::BprimeRatio, r, w)
            } else {
                return Err(Error::Parse("bezout ratio needs --A/--B, --tuple or --lower".into()));
            };
            let text = certified_text(&report.value, report.certified);
            Ok(Outcome::ok(json!(report), text))
        }
        Command::Bezout(BezoutCommand::Search { k, no_float, no_perturbations }) => {
            let kb = bodies::load(k)?;
            let opts = SearchOptions {
                budget: g.budget,
                seed: g.seed,
                float_search: !no_float,
                perturbations: !no_perturbations,
                ..SearchOptions::default()
            };
            let report = bezout::search_b2_lower(&kb, &opts)?;
            let certify = format!(
                "mixvol bezout ratio --K {k} --A {} --B {}",
                witness_arg(&report.witness[0], k),
                witness_arg(&report.witness[1], k)
            );
            let text = format!("b_2 >= {}", certified_text(&report.value, report.certified));
            let mut result = json!(report);
            result["certify"] = json!(certify);
            Ok(Outcome::ok(result, text))
        }
        Command::Check { kind, dim } => {
            if *kind == CheckKind::Diskant && g.precision < 30 {
                return Err(Error::Validation("--precision must be at least 30 for diskant".into()));
            }
            let s = bezout::sweep(*kind, *dim, g.trials, g.seed, g.precision)?;
            let text = format!(
                "{kind}: {} evaluated, {} skipped, {} violations, min margin {}",
                s.evaluated,
                s.skipped.len(),
                s.violations.len(),
                s.min_margin.as_ref().map_or("-".to_string(), |m| m.to_string())
            );
            Ok(Outcome { ok: s.passed(), result: json!(s), text })
        }
        Command::Exclude(ExcludeCommand::Isop { p }) => {
            let r = exclusion::isop(&bodies::load(p)?)?;
            let verdict = if r.condition {
                "holds: b_2(P) > 1 certified by the isoperimetric condition"
            } else if r.inconclusive {
                "inconclusive (tie)"
            } else {
                "fails"
            };
            let text = format!("Isop(P) = {:.12}, margin {:.3e}, condition {verdict}", r.body_isop, r.margin);
            Ok(Outcome::ok(json!(r), text))
        }
        Command::Exclude(ExcludeCommand::Affine { p }) => {
            let r = exclusion::affine_isop_search(&bodies::load(p)?, g.budget, g.seed)?;
            let text = format!(
                "best ratio {:.12} (identity {:.12}) over {} restarts{}",
                r.best_ratio,
                r.identity_ratio,
                r.restarts,
                if r.best_ratio > 1.0 + 1e-6 { ": exclusion certificate (float)" } else { "" }
            );
            Ok(Outcome::ok(json!(r), text))
        }
        Command::Exclude(ExcludeCommand::Sigma { p, facet, t }) => {
            let r = exclusion::sigma_proportionality(&bodies::load(p)?, *facet, &rational::parse(t)?)?;
            let text = match r.levels.iter().find(|l| !l.proportional) {
                None => format!("proportional for all r (lambda_t = {})", rational::format(&r.lambda_t)),
                Some(l) => format!(
                    "violation at r = {} on normal {} (lambda_t = {})",
                    l.r,
                    l.first_violation.as_ref().expect("violation").normal,
                    rational::format(&r.lambda_t)
                ),
            };
            Ok(Outcome::ok(json!(r), text))
        }
        Command::Exclude(ExcludeCommand::Weak { p }) => {
            let r = exclusion::weakly_decomposable_polytope(&bodies::load(p)?)?;
            let text = match &r.witness {
                None => "not weakly decomposable".to_string(),
                Some(w) => format!(
                    "weakly decomposable: witness P_{{{},{}}}",
                    w.facet_index,
                    rational::format(&w.t)
                ),
            };
            Ok(Outcome::ok(json!(r), text))
        }
        Command::Exclude(ExcludeCommand::Omega { p }) => {
            let r = exclusion::classify_omega(&bodies::load(p)?)?;
            let text = format!("{} facets, face dimensions {:?}", r.facet_count, r.face_dims);
            Ok(Outcome::ok(json!(r), text))
        }
        Command::Perturb { p, facet, t } => {
            let pb = bodies::load(p)?;
            let t = rational::parse(t)?;
            let q = exclusion::perturb_facet(&pb, *facet, &t)?;
            let interval = exclusion::stability_interval(&pb, *facet)?;
            let support: Vec<bool> = (1..pb.dim())
                .map(|r| exclusion::support_equality_check(&pb, *facet, &t, r))
                .collect::<mixvol::Result<_>>()?;
            let text = format!(
                "lambda_t = {}, {} vertices, stable for t in {interval}",
                rational::format(&q.lambda_t),
                q.result.vertices().len(),
            );
            let result = json!({
                "perturbed": q,
                "stability_interval": interval,
                "support_equal": support,
            });
            Ok(Outcome::ok(result, text))
        }
        Command::Bkk(BkkCommand::Verify { support1, support2 }) => {
            let (s1, s2) = (bodies::load_support(support1)?, bodies::load_support(support2)?);
            let s = bkk::bkk_verify(&s1, &s2, g.trials, g.seed)?;
            let text = format!(
                "{}/{} non-degenerate trials count {} = 2 V_2 (Bezout bound {}), max residual {:.2e}",
                s.matches, s.non_degenerate, s.bkk_value, s.bezout_bound, s.residual_max
            );
            Ok(Outcome { ok: s.passed(), result: json!(s), text })
        }
        Command::Corpus { out, dims } => {
            fs::create_dir_all(out).map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
            let mut written = Vec::new();
            for kind in CorpusKind::ALL {
                for &n in dims {
                    let (file, text) = io::corpus_generate(kind, n)?;
                    let path = out.join(&file);
                    fs::write(&path, text + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    written.push(path.display().to_string());
                }
            }
            let text = written.join("\n");
            Ok(Outcome::ok(json!({ "written": written }), text))
        }
    }
}

/// The invocation with the program name normalized, for the report's reproduce line.
fn reproduce_line() -> String {
    let mut parts = vec!["mixvol".to_string()];
    for a in std::env::args().skip(1) {
        if a.is_empty() || a.contains(|c: char| c.is_whitespace() || c == '\'' || c == '"') {
            parts.push(format!("'{}'", a.replace('\'', "'\\''")));
        } else {
            parts.push(a);
        }
    }
    parts.join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = cli.global.clone();
    let outcome = par::with_jobs(g.jobs, || run(&cli.command, &g));
    match outcome {
        Ok(o) => {
            match g.format {
                Format::Text => println!("{}", o.text),
                Format::Json => {
                    let report = json!({
                        "config": {
                            "seed": g.seed,
                            "budget": g.budget,
                            "trials": g.trials,
                            "precision": g.precision,
                        },
                        "result": o.result,
                        "ok": o.ok,
                        "reproduce": reproduce_line(),
                    });
                    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
                }
            }
            if o.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("assertion violated: see report (a bug or a genuine counterexample)");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
