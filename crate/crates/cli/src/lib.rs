//! `jiso`: exact vertex-isoperimetry on Johnson graphs from the command line.

pub mod cache;
pub mod family_file;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use johnson_iso::bounds::{counterexample, f_bound, lambda_sequence, mu_upper_critical};
use johnson_iso::combinatorics::{binomial_representation, is_critical};
use johnson_iso::solver::verify::{self, Battery, DeskScale, VerifyReport};
use johnson_iso::solver::{solve, SearchMode, DEFAULT_BUDGET};
use johnson_iso::{
    ball, boundary, compress, is_compressed, lower_shadow, upper_shadow, Error, Family,
};

use crate::cache::{Cache, CacheEntry};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_VERIFY_FAILED: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "jiso",
    version,
    about = "Exact vertex-isoperimetry on Johnson graphs J(n, m)"
)]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum boundary over k-vertex sets of J(n, m).
    Mu(MuArgs),
    /// Boundary of the colex initial segment of length k.
    Bound(Instance),
    /// Cascade representation k = C(k_0, m) + C(k_1, m-1) + ...
    Binrep {
        #[arg(short)]
        k: u64,
        #[arg(short)]
        m: u32,
    },
    /// First values of the λ-sequence.
    Lambda {
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Upper bound f(k - k_r, n, m) + k_r for critical k.
    Critical(Instance),
    /// Ball of C([t], m) against the colex segment of the same size.
    Counterexample {
        #[arg(short)]
        t: u32,
        #[arg(short)]
        m: u32,
        /// Ground-set size (default t + 3).
        #[arg(short)]
        n: Option<u32>,
    },
    /// Run verification batteries.
    Verify(VerifyArgs),
    /// Lower (or upper) shadow of a family file.
    Shadow {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        upper: bool,
    },
    /// Ball (family plus boundary) of a family file.
    Ball(FamilyArgs),
    /// Boundary of a family file.
    Boundary(FamilyArgs),
    /// Shift a family file until it is compressed.
    Compress(FamilyArgs),
}

#[derive(Debug, Args)]
pub struct Instance {
    #[arg(short)]
    pub n: u32,
    #[arg(short)]
    pub m: u32,
    #[arg(short)]
    pub k: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Auto,
    Exhaustive,
    Compressed,
}

#[derive(Debug, Args)]
pub struct MuArgs {
    #[command(flatten)]
    pub instance: Instance,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// Node budget for searches.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Also print an optimal family.
    #[arg(long)]
    pub witness: bool,
    #[arg(long, env = cache::ENV_VAR, default_value = cache::DEFAULT_PATH)]
    pub cache: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Batteries to run (see --list).
    pub batteries: Vec<String>,
    #[arg(long)]
    pub all: bool,
    /// Full acceptance ranges (10^4 random cases per property instead of 10^3).
    #[arg(long)]
    pub desk_scale: bool,
    #[arg(long)]
    pub list: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Print only failing rows.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Family file: one comma-separated subset per line.
    #[arg(short, long)]
    pub input: PathBuf,
    /// Ground-set size (default: largest element, at least m + 1).
    #[arg(short)]
    pub n: Option<u32>,
}

/// What a command produced: text for humans, JSON for machines.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            code: EXIT_OK,
        }
    }
}

pub fn run(cli: Cli) -> ExitCode {
    let as_json = cli.json;
    match execute(cli.command) {
        Ok(out) => {
            let body = if as_json {
                serde_json::to_string_pretty(&out.json).expect("json values serialize") + "\n"
            } else {
                out.text
            };
            // A closed pipe (`jiso … | head`) is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

pub fn execute(command: Command) -> Result<Output> {
    match command {
        Command::Mu(args) => cmd_mu(args),
        Command::Bound(Instance { n, m, k }) => {
            let f = f_bound(k, n, m)?;
            Ok(Output::ok(
                format!("f={f}\n"),
                json!({ "n": n, "m": m, "k": k, "f": f }),
            ))
        }
        Command::Binrep { k, m } => {
            let rep = binomial_representation(k, m)?;
            let critical = is_critical(k, m)?;
            let terms: Vec<Value> = rep
                .terms()
                .iter()
                .map(|t| json!({ "top": t.top, "bottom": t.bottom }))
                .collect();
            Ok(Output::ok(
                format!("{k} = {rep}\nterms={} critical={critical}\n", rep.len()),
                json!({ "k": k, "m": m, "terms": terms, "critical": critical }),
            ))
        }
        Command::Lambda { count } => {
            let seq = lambda_sequence(count);
            let values: Vec<String> = seq.values().iter().map(|v| v.to_string()).collect();
            Ok(Output::ok(
                format!("{}\n", values.join(" ")),
                json!({ "count": count, "values": values }),
            ))
        }
        Command::Critical(Instance { n, m, k }) => {
            let bound = mu_upper_critical(k, n, m)?;
            Ok(Output::ok(
                format!("bound={bound}\n"),
                json!({ "n": n, "m": m, "k": k, "bound": bound }),
            ))
        }
        Command::Counterexample { t, m, n } => cmd_counterexample(t, m, n),
        Command::Verify(args) => cmd_verify(args),
        Command::Shadow { family, upper } => {
            let f = family_file::read(&family.input, family.n)?;
            family_output(if upper {
                upper_shadow(&f)?
            } else {
                lower_shadow(&f)?
            })
        }
        Command::Ball(family) => family_output(ball(&family_file::read(&family.input, family.n)?)?),
        Command::Boundary(family) => {
            family_output(boundary(&family_file::read(&family.input, family.n)?)?)
        }
        Command::Compress(family) => {
            family_output(compress(&family_file::read(&family.input, family.n)?))
        }
    }
}

fn family_json(f: &Family) -> Value {
    json!({ "n": f.n(), "m": f.m(), "size": f.len(), "members": f.members() })
}

fn family_output(f: Family) -> Result<Output> {
    let mut json = family_json(&f);
    json["compressed"] = Value::Bool(is_compressed(&f));
    Ok(Output::ok(family_file::render(&f), json))
}

fn timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

fn cmd_mu(args: MuArgs) -> Result<Output> {
    let Instance { n, m, k } = args.instance;
    let cached = if args.no_cache {
        None
    } else {
        Cache::load(&args.cache)?.get(n, m, k).cloned()
    };
    if let Some(entry) = cached.filter(|e| e.certified) {
        let witness = match &entry.witness {
            Some(w) => Some(Family::new(n, m, w.iter().copied())?),
            None => None,
        };
        return Ok(mu_output(
            n,
            m,
            k,
            entry.mu,
            &entry.method,
            true,
            true,
            witness.as_ref(),
            args.witness,
        ));
    }

    let mode = match args.mode {
        Mode::Auto => None,
        Mode::Exhaustive => Some(SearchMode::Exhaustive),
        Mode::Compressed => Some(SearchMode::Compressed),
    };
    let (result, code) = match solve(n, m, k, mode, args.budget) {
        Ok(r) => (r, EXIT_OK),
        Err(Error::Inconclusive { best, .. }) => (*best, EXIT_INCONCLUSIVE),
        Err(e) => return Err(e.into()),
    };
    if !args.no_cache {
        match cache::store(&args.cache, CacheEntry::from_result(&result, timestamp())) {
            Ok(_) => {}
            Err(e) => eprintln!("warning: result not cached: {e:#}"),
        }
    }
    let mut out = mu_output(
        n,
        m,
        k,
        result.mu,
        result.method.as_str(),
        result.certified,
        false,
        Some(&result.witness),
        args.witness,
    );
    out.code = code;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn mu_output(
    n: u32,
    m: u32,
    k: u64,
    mu: u64,
    method: &str,
    certified: bool,
    cached: bool,
    witness: Option<&Family>,
    show_witness: bool,
) -> Output {
    let status = if certified {
        "certified"
    } else {
        "inconclusive"
    };
    let mut text = if certified {
        format!("mu={mu} {status} method={method}\n")
    } else {
        format!("mu<={mu} {status} method={method}\n")
    };
    let mut json = json!({
        "n": n, "m": m, "k": k, "mu": mu, "method": method,
        "certified": certified, "cached": cached,
    });
    if show_witness {
        if let Some(w) = witness {
            text += &family_file::render(w);
            json["witness"] = json!(w.members());
        }
    }
    Output {
        text,
        json,
        code: if certified {
            EXIT_OK
        } else {
            EXIT_INCONCLUSIVE
        },
    }
}

fn cmd_counterexample(t: u32, m: u32, n: Option<u32>) -> Result<Output> {
    let n = n.unwrap_or(t + 3);
    let r = counterexample(t, m, n)?;
    let rel = |a: u64, b: u64| {
        if a < b {
            "<"
        } else if a == b {
            "="
        } else {
            ">"
        }
    };
    let mut text = format!("t={t} m={m} n={n} k={}\n", r.k);
    text += &format!(
        "boundary {} {} {} (colex)\n",
        r.boundary_construction,
        rel(r.boundary_construction, r.boundary_colex),
        r.boundary_colex
    );
    text += &format!(
        "ball {} {} {} (colex)\n",
        r.ball_size_construction,
        rel(r.ball_size_construction, r.ball_size_colex),
        r.ball_size_colex
    );
    text += &format!(
        "shadow {} {} {} (colex)\n",
        r.shadow_construction,
        rel(r.shadow_construction, r.shadow_colex),
        r.shadow_colex
    );
    if r.extrapolated {
        text += "sizes beyond n = t + 3 come from the support decomposition\n";
    }
    if r.below_threshold {
        text += "note: t is at or below the λ threshold for this m\n";
    }
    let json = json!({
        "t": t, "m": m, "n": n, "base_n": r.base_n, "k": r.k,
        "boundary_construction": r.boundary_construction, "boundary_colex": r.boundary_colex,
        "ball_size_construction": r.ball_size_construction, "ball_size_colex": r.ball_size_colex,
        "shadow_construction": r.shadow_construction, "shadow_colex": r.shadow_colex,
        "strict": r.strict, "below_threshold": r.below_threshold, "extrapolated": r.extrapolated,
        "family": family_json(&r.family),
    });
    Ok(Output::ok(text, json))
}

fn cmd_verify(args: VerifyArgs) -> Result<Output> {
    if args.list {
        let names: Vec<&str> = Battery::ALL.iter().map(|b| b.name()).collect();
        return Ok(Output::ok(format!("{}\n", names.join("\n")), json!(names)));
    }
    let batteries: Vec<Battery> = if args.all {
        Battery::ALL.to_vec()
    } else if args.batteries.is_empty() {
        bail!("name one or more batteries or pass --all (see --list)");
    } else {
        args.batteries
            .iter()
            .map(|s| s.parse())
            .collect::<johnson_iso::Result<_>>()?
    };
    let mut scale = DeskScale {
        budget: args.budget,
        ..DeskScale::default()
    };
    if !args.desk_scale {
        scale.cases = 1_000;
    }
    if let Some(seed) = args.seed {
        scale.seed = seed;
    }
    let reports: Vec<VerifyReport> = verify::run_many(&batteries, &scale);

    let failed = reports.iter().any(|r| r.complete && !r.passed());
    let incomplete = reports.iter().any(|r| !r.complete);
    let code = if failed {
        EXIT_VERIFY_FAILED
    } else if incomplete {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };

    let mut text = String::new();
    for r in &reports {
        let verdict = if r.passed() {
            "PASS"
        } else if r.complete {
            "FAIL"
        } else {
            "INCOMPLETE"
        };
        let info = r.checks.iter().filter(|c| c.informational).count();
        text += &format!(
            "{verdict} {} ({} checks, {info} informational)\n",
            r.battery,
            r.checks.len()
        );
        for c in &r.checks {
            let tag = match (c.informational, c.pass) {
                (true, true) => "info ok",
                (true, false) => "info no",
                (false, true) => "pass",
                (false, false) => "FAIL",
            };
            if args.quiet && (c.informational || c.pass) {
                continue;
            }
            text += &format!(
                "  {tag:<7} {}: expected {}, observed {}\n",
                c.instance, c.expected, c.observed
            );
        }
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    text += &format!("{passed}/{} batteries passed\n", reports.len());
    let json = json!({ "passed": code == EXIT_OK, "reports": reports });
    Ok(Output { text, json, code })
}
