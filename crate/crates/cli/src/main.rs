mod certificate;
mod pipeline;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use scrollsmith::construct::{construct_scroll, four_square_plans, odd_square_form};
use scrollsmith::dims::dims_table;
use scrollsmith::reference::{reference_projection, EXPECTED};
use scrollsmith::scroll::ProjectionJson;
use scrollsmith::Error;

use certificate::{write_atomic, Certificate, CommandEcho, Stage, Status};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_SEARCH_FAILED: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Rational scrolls in P^5 with prescribed double points, and the cubic
/// fourfolds containing them.
#[derive(Parser, Debug)]
#[command(name = "scrollsmith", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a projection of S_{1,v} to P^5 with at least r double points.
    Construct(ConstructArgs),
    /// Certify a projection read from a JSON file.
    Verify(VerifyArgs),
    /// Run the full certification of the bundled S_{1,8} example.
    ReferenceExample(ReferenceArgs),
    /// Print the dimension formulas for degree D scrolls in P^N with r double points.
    Dims(DimsArgs),
    /// List the chain plans with r double points for S_{1,v}.
    Foursquare(FoursquareArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
        }
    }
}

#[derive(Args, Debug)]
struct Common {
    /// Verification primes, comma separated. Each must be a prime not dividing 6.
    #[arg(long, value_delimiter = ',', default_value = "31")]
    primes: Vec<u32>,
    /// Seed of the ChaCha8 generator driving every random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(long)]
    r: u64,
    #[arg(long)]
    v: u32,
    #[command(flatten)]
    common: Common,
    /// Directory receiving lambda.json and report.json.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Projection matrix JSON, as written by `construct`.
    #[arg(long)]
    lambda: PathBuf,
    #[command(flatten)]
    common: Common,
    /// Also write the certificate to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReferenceArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DimsArgs {
    #[arg(long = "D")]
    degree: i64,
    #[arg(long = "N")]
    n: i64,
    #[arg(long, default_value_t = 0)]
    r: i64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct FoursquareArgs {
    #[arg(long)]
    r: u64,
    #[arg(long)]
    v: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// Failure that ends the command before a certificate exists.
struct Abort {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Abort {
    Abort {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::PlanInfeasible(_) => EXIT_INFEASIBLE,
        Error::SearchFailed { .. } => EXIT_SEARCH_FAILED,
        Error::NotPrime(_)
        | Error::UnsupportedCharacteristic(_)
        | Error::Parse(_)
        | Error::InvalidSpec(_)
        | Error::InvalidProjection(_)
        | Error::Shape(_)
        | Error::Domain(_)
        | Error::DuplicateParameter(_)
        | Error::Unsupported(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn check_primes(primes: &[u32]) -> Result<(), Abort> {
    if primes.is_empty() {
        return Err(usage("--primes needs at least one prime"));
    }
    for &p in primes {
        scrollsmith::algebra::check_prime(p).map_err(|e| usage(e.to_string()))?;
        if p == 2 || p == 3 {
            return Err(usage(Error::UnsupportedCharacteristic(p as u64).to_string()));
        }
    }
    Ok(())
}

fn primes_arg(primes: &[u32]) -> String {
    primes.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn argv(parts: &[&str]) -> Vec<String> {
    std::iter::once("scrollsmith").chain(parts.iter().copied()).map(String::from).collect()
}

fn emit(cert: &Certificate, format: Format, out: Option<&Path>) -> Result<u8, Abort> {
    if let Some(path) = out {
        write_atomic(path, &cert.to_json()).map_err(|e| Abort {
            code: EXIT_FAIL,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
    }
    match format {
        Format::Json => print!("{}", cert.to_json()),
        Format::Text => print!("{}", cert.to_text()),
    }
    Ok(if cert.passed() { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_construct(a: &ConstructArgs) -> Result<u8, Abort> {
    let c = &a.common;
    check_primes(&c.primes)?;
    let (r, v, seed, primes) = (a.r.to_string(), a.v.to_string(), c.seed.to_string(), primes_arg(&c.primes));
    let out = a.out.display().to_string();
    let echo = CommandEcho {
        name: "construct".into(),
        argv: argv(&[
            "construct", "--r", &r, "--v", &v, "--seed", &seed, "--primes", &primes, "--out", &out, "--format",
            c.format.name(),
        ]),
        config: json!({ "r": a.r, "v": a.v, "seed": c.seed, "primes": c.primes, "rng": "ChaCha8", "out": out }),
    };
    let lambda_path = a.out.join("lambda.json");
    let report_path = a.out.join("report.json");
    let write = |path: &Path, text: String| {
        write_atomic(path, &text).map_err(|e| Abort {
            code: EXIT_FAIL,
            message: format!("cannot write {}: {e}", path.display()),
        })
    };
    match construct_scroll(a.r, a.v, c.seed, &c.primes) {
        Ok(built) => {
            let report = built.report();
            let mut stages = vec![Stage::new(
                "construction",
                None,
                Status::Pass,
                json!({
                    "plan": report.plan,
                    "requested_plan": report.requested_plan,
                    "frame_vectors": report.frame_vectors,
                    "frame_stats": report.frame_stats,
                    "completion_attempts": report.completion_attempts,
                    "lambda_digest": report.lambda_digest,
                }),
            )];
            for rep in &report.reports {
                let ok = rep.tangent_clearance && rep.degenerate_pairs.is_empty() && rep.pair_count as u64 >= a.r;
                stages.push(Stage::new(
                    "singular_pairs",
                    Some(rep.prime),
                    if ok { Status::Pass } else { Status::Fail },
                    serde_json::to_value(rep).unwrap(),
                ));
            }
            let results = json!({
                "lambda_file": "lambda.json",
                "sections": report.reports.iter().map(|rep| json!({
                    "prime": rep.prime,
                    "singular_pairs": rep.pair_count,
                    "distinct_points": rep.distinct_points,
                    "tangent_clearance": rep.tangent_clearance,
                })).collect::<Vec<_>>(),
            });
            let cert = Certificate::new(echo, results, stages);
            let lambda = serde_json::to_string_pretty(&built.lambda_json()).unwrap() + "\n";
            write(&lambda_path, lambda)?;
            write(&report_path, cert.to_json())?;
            emit(&cert, c.format, None)
        }
        Err(e) => {
            let code = exit_code_for(&e);
            if code == EXIT_USAGE {
                return Err(usage(e.to_string()));
            }
            let cert = Certificate::new(echo, Value::Null, vec![Stage::failed("construction", None, e.to_string())]);
            write(&report_path, cert.to_json())?;
            emit(&cert, c.format, None)?;
            eprintln!("error: {e}");
            Ok(code)
        }
    }
}

fn verify_sections(lambda: &ProjectionJson, c: &Common) -> Result<(Vec<pipeline::Summary>, Vec<Stage>), Abort> {
    let mut summaries = Vec::new();
    let mut stages = Vec::new();
    for &p in &c.primes {
        match pipeline::verify_prime(lambda, p, c.seed) {
            Ok((s, st)) => {
                summaries.push(s);
                stages.extend(st);
            }
            Err(e) if exit_code_for(&e) == EXIT_USAGE => return Err(usage(e.to_string())),
            Err(e) => stages.push(Stage::failed("projection", Some(p), e.to_string())),
        }
    }
    Ok((summaries, stages))
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, Abort> {
    let c = &a.common;
    check_primes(&c.primes)?;
    let text = std::fs::read_to_string(&a.lambda).map_err(|e| usage(format!("cannot read {}: {e}", a.lambda.display())))?;
    let lambda: ProjectionJson = serde_json::from_str(&text).map_err(|e| usage(format!("bad projection JSON: {e}")))?;
    let (seed, primes, path) = (c.seed.to_string(), primes_arg(&c.primes), a.lambda.display().to_string());
    let mut parts = vec!["verify", "--lambda", &path, "--seed", &seed, "--primes", &primes, "--format", c.format.name()];
    let out = a.out.as_ref().map(|o| o.display().to_string());
    if let Some(o) = &out {
        parts.extend(["--out", o]);
    }
    let echo = CommandEcho {
        name: "verify".into(),
        argv: argv(&parts),
        config: json!({ "lambda": path, "seed": c.seed, "primes": c.primes, "rng": "ChaCha8" }),
    };
    let (summaries, stages) = verify_sections(&lambda, c)?;
    let cert = Certificate::new(echo, serde_json::to_value(&summaries).unwrap(), stages);
    emit(&cert, c.format, a.out.as_deref())
}

fn cmd_reference(a: &ReferenceArgs) -> Result<u8, Abort> {
    let c = &a.common;
    check_primes(&c.primes)?;
    let (seed, primes) = (c.seed.to_string(), primes_arg(&c.primes));
    let mut parts = vec!["reference-example", "--seed", &seed, "--primes", &primes, "--format", c.format.name()];
    let out = a.out.as_ref().map(|o| o.display().to_string());
    if let Some(o) = &out {
        parts.extend(["--out", o]);
    }
    let echo = CommandEcho {
        name: "reference-example".into(),
        argv: argv(&parts),
        config: json!({ "seed": c.seed, "primes": c.primes, "rng": "ChaCha8" }),
    };
    let pm = match reference_projection() {
        Ok(pm) => pm,
        Err(e) => {
            let cert = Certificate::new(echo, Value::Null, vec![Stage::failed("reference_asset", None, e.to_string())]);
            return emit(&cert, c.format, a.out.as_deref());
        }
    };
    let mut stages = vec![Stage::new("reference_asset", None, Status::Pass, json!({ "digest": pm.digest() }))];
    let (summaries, section_stages) = verify_sections(&pm.to_json(), c)?;
    stages.extend(section_stages);
    for s in &summaries {
        stages.push(pipeline::expectation_stage(s, pm.spec(), &EXPECTED));
    }
    let cert = Certificate::new(echo, serde_json::to_value(&summaries).unwrap(), stages);
    emit(&cert, c.format, a.out.as_deref())
}

fn cmd_dims(a: &DimsArgs) -> Result<u8, Abort> {
    let table = dims_table(a.degree, a.n, a.r).map_err(|e| usage(e.to_string()))?;
    match a.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&table).unwrap()),
        Format::Text => {
            let opt = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
            let mut rows: Vec<(String, String)> = vec![
                ("D".into(), table.degree.to_string()),
                ("N".into(), table.n.to_string()),
                ("r".into(), table.r.to_string()),
                ("dim_hilbert".into(), table.dim_hilbert.to_string()),
                ("h0_normal_bundle".into(), table.h0_normal_bundle.to_string()),
                ("chi_tangent".into(), table.chi_tangent.to_string()),
                ("hilbert_polynomial".into(), table.hilbert_polynomial.join(", ")),
            ];
            for (u, d) in &table.strata {
                rows.push((format!("dim_stratum(u={u})"), d.to_string()));
            }
            if let Some(cf) = &table.codim {
                rows.push(("codim_sigma_1".into(), cf.sigma_1.to_string()));
                rows.push(("codim_sigma_j".into(), cf.sigma_j.to_string()));
                rows.push(("bound_r".into(), cf.bound_r.to_string()));
                rows.push(("bound_valid".into(), cf.bound_valid.to_string()));
                rows.push(("guaranteed_r".into(), cf.guaranteed_r.to_string()));
                rows.push(("secant_degree".into(), cf.secant_degree.to_string()));
            }
            rows.push(("singular_stratum_lower_bound".into(), opt(table.singular_stratum_lower_bound)));
            let w = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in rows {
                println!("{k:<w$}  {v}");
            }
        }
    }
    Ok(EXIT_PASS)
}

fn cmd_foursquare(a: &FoursquareArgs) -> Result<u8, Abort> {
    let plans = four_square_plans(a.r, a.v);
    match a.format {
        Format::Json => {
            let rows: Vec<Value> = plans
                .iter()
                .map(|k| json!({ "sizes": k, "odd_squares": odd_square_form(k) }))
                .collect();
            println!("{}", serde_json::to_string_pretty(&json!({ "r": a.r, "v": a.v, "plans": rows })).unwrap());
        }
        Format::Text => {
            for k in &plans {
                let a = odd_square_form(k);
                println!("{} {} {} {}    8r+4 = {}² + {}² + {}² + {}²", k[0], k[1], k[2], k[3], a[0], a[1], a[2], a[3]);
            }
            if plans.is_empty() {
                println!("no plans");
            }
        }
    }
    Ok(if plans.is_empty() { EXIT_INFEASIBLE } else { EXIT_PASS })
}

fn configure_threads() -> Result<(), Abort> {
    if let Ok(v) = std::env::var("SCROLLSMITH_THREADS") {
        let n: usize = v.parse().map_err(|_| usage(format!("SCROLLSMITH_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(usage("SCROLLSMITH_THREADS must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let run = configure_threads().and_then(|_| match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Verify(a) => cmd_verify(a),
        Command::ReferenceExample(a) => cmd_reference(a),
        Command::Dims(a) => cmd_dims(a),
        Command::Foursquare(a) => cmd_foursquare(a),
    });
    match run {
        Ok(code) => ExitCode::from(code),
        Err(abort) => {
            eprintln!("error: {}", abort.message);
            if abort.code == EXIT_USAGE {
                eprintln!("run `scrollsmith --help` for usage");
            }
            ExitCode::from(abort.code)
        }
    }
}
