use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand};
use genusgauge_core::obstruct::decide;
use genusgauge_core::verify::Family;
use genusgauge_core::EmbedQuery;
use serde_json::json;

use crate::context::ContextArgs;
use crate::eval::{evaluate, EvalArgs};
use crate::output::{verdict_envelope, verdict_text, Envelope};
use crate::region::{region, to_csv};
use crate::scan::{report_text, run_scan, ScanOptions};
use crate::{exit, fixtures, roots_cap, CliError, CliResult};

#[derive(Parser, Debug)]
#[command(
    name = "genusgauge",
    version,
    about = "Genus and Euler-number bounds for non-orientable surfaces"
)]
pub struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for scans (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one function exactly.
    Eval {
        /// g, g_sign, g_roots, G, N, I, P, Q, d2k1, twist, dstep, ddiff,
        /// delta, theta, kc, qd, s1s2, h1q, h1z2 or rhoq.
        function: String,
        #[command(flatten)]
        args: EvalArgs,
    },
    /// Decide whether a genus h surface with Euler number e is obstructed.
    Feasible {
        #[command(flatten)]
        context: ContextArgs,
        #[arg(long)]
        h: i64,
        #[arg(long, allow_negative_numbers = true)]
        e: i64,
    },
    /// List every unobstructed (h, e) up to a genus bound as CSV.
    Region {
        #[command(flatten)]
        context: ContextArgs,
        #[arg(long = "h-max")]
        h_max: i64,
        /// Euler window for contexts that do not bound e.
        #[arg(long = "e-max")]
        e_max: Option<i64>,
    },
    /// Run a verification family over a parameter grid.
    Scan {
        /// two_g_equals_n, appendix_identities, carlitz, tdbundle_consistency,
        /// congruence_coherence, three_way, lens_equivalence,
        /// spin_implication or tightness.
        family: Family,
        /// Largest even modulus 2k.
        #[arg(long = "max-p")]
        max_p: Option<i64>,
        /// Bound on k and on the secondary parameter of the identity checks.
        #[arg(long = "max")]
        max: Option<i64>,
        #[arg(long = "h-max")]
        h_max: Option<i64>,
        #[arg(long = "e-max")]
        e_max: Option<i64>,
        /// Largest 2k re-checked by brute force.
        #[arg(long = "brute-max-p")]
        brute_max_p: Option<i64>,
        #[arg(long = "sigma-max")]
        sigma_max: Option<i64>,
        #[arg(long = "b-max")]
        b_max: Option<i64>,
        /// Stop starting new work after this many seconds.
        #[arg(long = "time-limit", value_name = "SECONDS")]
        time_limit: Option<f64>,
    },
    /// Replay the regression fixtures.
    Fixtures {
        /// Fixture file to use instead of the bundled corpus.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

/// Execute a parsed command line, writing results to `out`. Returns the
/// exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    match &cli.command {
        Command::Eval { function, args } => {
            let v = evaluate(function, args, roots_cap()?)?;
            if cli.json {
                let inputs = json!({ "function": function, "parameters": args });
                let env = Envelope::new("eval", inputs, json!({ "value": v.value }), v.exact);
                writeln!(out, "{}", env.to_json())?;
            } else {
                writeln!(out, "{}", v.value)?;
            }
            Ok(exit::OK)
        }
        Command::Feasible { context, h, e } => {
            let query = EmbedQuery::new(*h, *e, context.build()?)?;
            let v = decide(&query)?;
            if cli.json {
                writeln!(out, "{}", verdict_envelope(&query, &v).to_json())?;
            } else {
                write!(out, "{}", verdict_text(&query, &v))?;
            }
            Ok(if v.feasible {
                exit::OK
            } else {
                exit::INFEASIBLE
            })
        }
        Command::Region {
            context,
            h_max,
            e_max,
        } => {
            let ctx = context.build()?;
            let rows = region(&ctx, *h_max, *e_max)?;
            if cli.json {
                let inputs = json!({ "context": ctx, "h_max": h_max, "e_max": e_max });
                let exact = rows.iter().all(|r| r.exact);
                let env = Envelope::new("region", inputs, json!({ "rows": rows }), exact);
                writeln!(out, "{}", env.to_json())?;
            } else {
                write!(out, "{}", to_csv(&rows))?;
            }
            Ok(exit::OK)
        }
        Command::Scan {
            family,
            max_p,
            max,
            h_max,
            e_max,
            brute_max_p,
            sigma_max,
            b_max,
            time_limit,
        } => {
            let mut opts = ScanOptions::new(*family);
            let b = &mut opts.bounds;
            if let Some(m) = max {
                b.m_max = *m;
                b.max_p = 2 * m;
            }
            for (field, value) in [
                (&mut b.max_p, max_p),
                (&mut b.h_max, h_max),
                (&mut b.e_max, e_max),
                (&mut b.brute_max_p, brute_max_p),
                (&mut b.sigma_max, sigma_max),
                (&mut b.b_max, b_max),
            ] {
                if let Some(v) = value {
                    *field = *v;
                }
            }
            b.roots_cap = roots_cap()?;
            if [b.max_p, b.m_max, b.h_max, b.e_max].iter().any(|v| *v < 1) {
                return Err(CliError::Usage("scan bounds must be positive".into()));
            }
            opts.workers = cli.workers;
            opts.time_limit = match time_limit {
                Some(t) if t.is_finite() && *t >= 0.0 => Some(Duration::from_secs_f64(*t)),
                Some(t) => {
                    return Err(CliError::Usage(format!(
                        "--time-limit must be nonnegative, got {t}"
                    )))
                }
                None => None,
            };
            let report = run_scan(&opts)?;
            if cli.json {
                let inputs =
                    json!({ "family": family, "bounds": opts.bounds, "workers": cli.workers });
                let mut env = Envelope::new(
                    "scan",
                    inputs,
                    serde_json::to_value(&report).expect("report"),
                    true,
                );
                env.violated = report.counterexample.iter().cloned().collect();
                writeln!(out, "{}", env.to_json())?;
            } else {
                write!(out, "{}", report_text(&report))?;
            }
            Ok(if !report.complete() {
                exit::RESOURCE
            } else if report.failures > 0 {
                exit::FAILURE
            } else {
                exit::OK
            })
        }
        Command::Fixtures { file } => {
            let text = match file {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| CliError::Fixture(format!("{}: {e}", path.display())))?,
                None => fixtures::BUNDLED.to_string(),
            };
            let cap = roots_cap()?;
            let replays = fixtures::parse(&text)?
                .iter()
                .map(|f| fixtures::replay(f, cap))
                .collect::<CliResult<Vec<_>>>()?;
            let failed = replays.iter().filter(|r| !r.passed()).count();
            if cli.json {
                let rows: Vec<_> = replays
                    .iter()
                    .map(|r| {
                        json!({
                            "name": r.name,
                            "expected": r.expected,
                            "actual": r.actual.as_ref().unwrap_or_else(|e| e),
                            "passed": r.passed(),
                        })
                    })
                    .collect();
                let inputs = json!({ "file": file });
                let mut env = Envelope::new("fixtures", inputs, json!({ "fixtures": rows }), true);
                env.violated = replays
                    .iter()
                    .filter(|r| !r.passed())
                    .map(|r| r.name.clone())
                    .collect();
                writeln!(out, "{}", env.to_json())?;
            } else {
                for r in &replays {
                    match (&r.actual, r.passed()) {
                        (_, true) => writeln!(out, "pass  {}", r.name)?,
                        (Ok(a), false) => {
                            writeln!(out, "FAIL  {}: expected {}, got {a}", r.name, r.expected)?
                        }
                        (Err(e), false) => {
                            writeln!(out, "FAIL  {}: expected {}, error: {e}", r.name, r.expected)?
                        }
                    }
                }
                writeln!(
                    out,
                    "{} fixtures, {} passed, {} failed",
                    replays.len(),
                    replays.len() - failed,
                    failed
                )?;
            }
            Ok(if failed == 0 { exit::OK } else { exit::FAILURE })
        }
    }
}
