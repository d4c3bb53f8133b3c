use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use bcm_core::combinatorics::{motzkin_bc_direct, CatalanTable, ProfileKey};
use bcm_core::eo::{w_from_free_energy, EoForms};
use bcm_core::io::{
    catalan_records, laurent_to_json, motzkin_records, CatalanRecordJson, CheckJson, DiskCache,
    EoFormJson, MotzkinRecordJson, Report, FORMAT_VERSION,
};
use bcm_core::laplace::FreeEnergies;
use bcm_core::rational::{format_rat, parse_rat, Rat};
use bcm_core::verify;

#[derive(Parser)]
#[command(
    name = "bcm",
    version,
    about = "Exact generalized Catalan / bc-Motzkin numbers, their Laplace transforms, and the topological recursion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generalized Catalan numbers C_{g,v}.
    #[command(name = "compute-catalan")]
    ComputeCatalan(TableArgs),
    /// Generalized bc-Motzkin numbers, as (b,c)-polynomials or specialized.
    #[command(name = "compute-motzkin")]
    ComputeMotzkin(MotzkinArgs),
    /// The Laplace transform F_{g,v} as a Laurent polynomial.
    #[command(name = "compute-F", alias = "compute-f")]
    ComputeF(KeyArgs),
    /// The Eynard-Orantin density w_{g,v}, by either or both routes.
    #[command(name = "compute-W", alias = "compute-w")]
    ComputeW(ComputeWArgs),
    /// Run a verification suite and emit a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct TableArgs {
    #[arg(long)]
    pub genus: u32,
    #[arg(long)]
    pub vertices: usize,
    /// Comma-separated degree vector, e.g. "4,2"; exactly one of this and
    /// --max-total is required.
    #[arg(long)]
    pub degrees: Option<String>,
    /// Sweep every degree vector with total at most this bound.
    #[arg(long = "max-total")]
    pub max_total: Option<u32>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long = "cache-dir", env = "BCM_CACHE_DIR", default_value = ".bcm-cache")]
    pub cache_dir: PathBuf,
}

#[derive(Args)]
pub struct MotzkinArgs {
    #[command(flatten)]
    pub table: TableArgs,
    /// Rational b weight as P/Q; with --c, values are specialized.
    #[arg(long)]
    pub b: Option<String>,
    /// Rational c weight as P/Q.
    #[arg(long)]
    pub c: Option<String>,
}

#[derive(Args)]
pub struct KeyArgs {
    #[arg(long)]
    pub genus: u32,
    #[arg(long)]
    pub vertices: u32,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long = "cache-dir", env = "BCM_CACHE_DIR", default_value = ".bcm-cache")]
    pub cache_dir: PathBuf,
}

#[derive(Args)]
pub struct ComputeWArgs {
    #[command(flatten)]
    pub key: KeyArgs,
    #[arg(long, value_enum)]
    pub method: Method,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// One of: catalan-oracle, motzkin, identities, laplace, eo, bridge, all.
    #[arg(long)]
    pub suite: Suite,
    /// Bridge weight b as P/Q (bridge suite only; default 0).
    #[arg(long)]
    pub b: Option<String>,
    /// Bridge weight c as P/Q (bridge suite only; default 1).
    #[arg(long)]
    pub c: Option<String>,
    /// Largest color total checked by the bridge suite.
    #[arg(long = "max-total", default_value_t = 10)]
    pub max_total: u32,
    /// Worker threads for fanning out suite checks.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    #[value(name = "dF", alias = "df")]
    DerivativeOfF,
    Residue,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    CatalanOracle,
    Motzkin,
    Identities,
    Laplace,
    Eo,
    Bridge,
    All,
}

fn usage_error(message: &str) -> ! {
    eprintln!("error: {message}");
    std::process::exit(2);
}

fn parse_degrees(args: &TableArgs) -> Vec<Vec<u32>> {
    match (&args.degrees, args.max_total) {
        (Some(text), None) => {
            let parsed: std::result::Result<Vec<u32>, _> =
                text.split(',').map(|p| p.trim().parse::<u32>()).collect();
            let Ok(degrees) = parsed else {
                usage_error(&format!("--degrees must be comma-separated nonnegative integers, got {text:?}"))
            };
            if degrees.len() != args.vertices {
                usage_error(&format!(
                    "--degrees lists {} entries but --vertices is {}",
                    degrees.len(),
                    args.vertices
                ));
            }
            vec![degrees]
        }
        (None, Some(max_total)) => sweep_profiles(args.vertices, max_total),
        _ => usage_error("exactly one of --degrees and --max-total is required"),
    }
}

/// Degree vectors sorted non-increasing (entries >= 0) with the given total
/// bound, in lexicographic output order.
fn sweep_profiles(vertices: usize, max_total: u32) -> Vec<Vec<u32>> {
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, remaining: u32, cap: u32, slots: usize) {
        if slots == 0 {
            let mut sorted = current.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            out.push(sorted);
            return;
        }
        for d in 0..=cap.min(remaining) {
            current.push(d);
            rec(out, current, remaining - d, d, slots - 1);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut out, &mut Vec::new(), max_total, max_total, vertices);
    out.sort();
    out.dedup();
    out
}

fn write_output(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

pub fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::ComputeCatalan(args) => compute_catalan(args).map(|_| true),
        Command::ComputeMotzkin(args) => compute_motzkin(args).map(|_| true),
        Command::ComputeF(args) => compute_f(args).map(|_| true),
        Command::ComputeW(args) => compute_w(args),
        Command::Verify(args) => verify_command(args),
    }
}

fn compute_catalan(args: TableArgs) -> Result<()> {
    let profiles = parse_degrees(&args);
    let mut cache = DiskCache::open(&args.cache_dir)?;
    let mut table = CatalanTable::new();
    for record in cache.load_all_records::<CatalanRecordJson>("catalan") {
        let value = record.value.parse().context("corrupt cached integer")?;
        table.insert_entry(ProfileKey::new(record.g, record.n), value);
    }

    let mut records = Vec::new();
    for degrees in &profiles {
        let signed: Vec<i64> = degrees.iter().map(|&d| d as i64).collect();
        let value = table.value(args.genus as i64, &signed);
        records.push((ProfileKey::new(args.genus, degrees.clone()), value));
    }
    let records = catalan_records(&records);

    // Persist every group the computation touched.
    let mut groups: BTreeMap<(u32, u32), Vec<(ProfileKey, num_bigint::BigInt)>> = BTreeMap::new();
    for (key, value) in table.entries() {
        groups
            .entry((key.genus(), key.vertices() as u32))
            .or_default()
            .push((key.clone(), value.clone()));
    }
    for ((g, v), entries) in groups {
        cache.store_records("catalan", g, v, &catalan_records(&entries))?;
    }

    let content = match args.format {
        OutputFormat::Json => serde_json::to_string_pretty(&records)? + "\n",
        OutputFormat::Csv => {
            let mut out = String::from("g,v,n,value\n");
            for r in &records {
                let n: Vec<String> = r.n.iter().map(|d| d.to_string()).collect();
                out.push_str(&format!("{},{},{},{}\n", r.g, r.v, n.join(" "), r.value));
            }
            out
        }
    };
    write_output(&args.output, &content)
}

fn compute_motzkin(args: MotzkinArgs) -> Result<()> {
    let weights = match (&args.b, &args.c) {
        (Some(b), Some(c)) => match (parse_rat(b), parse_rat(c)) {
            (Ok(b), Ok(c)) => Some((b, c)),
            _ => usage_error("--b and --c must be rationals P/Q with Q > 0"),
        },
        (None, None) => None,
        _ => usage_error("--b and --c must be given together"),
    };
    if weights.is_none() && args.table.format == OutputFormat::Csv {
        usage_error("CSV output needs --b and --c; use --format json for polynomial tables");
    }
    let profiles = parse_degrees(&args.table);
    let mut cache = DiskCache::open(&args.table.cache_dir)?;
    let mut cached: BTreeMap<(u32, Vec<u32>), bcm_core::combinatorics::BcPolynomial> =
        BTreeMap::new();
    for record in cache.load_all_records::<MotzkinRecordJson>("motzkin") {
        let poly = bcm_core::io::motzkin_record_to_poly(&record)?;
        cached.insert((record.g, record.n), poly);
    }
    let mut catalan = CatalanTable::new();
    let mut records = Vec::new();
    for degrees in &profiles {
        let key = ProfileKey::new(args.table.genus, degrees.clone());
        let value = match cached.get(&(key.genus(), key.degrees().to_vec())) {
            Some(poly) => poly.clone(),
            None => motzkin_bc_direct(args.table.genus, degrees, &mut catalan),
        };
        records.push((key, value));
    }
    let json_records = motzkin_records(&records);
    let mut groups: BTreeMap<(u32, u32), Vec<MotzkinRecordJson>> = BTreeMap::new();
    for record in &json_records {
        groups.entry((record.g, record.v)).or_default().push(record.clone());
    }
    for ((g, v), group) in groups {
        cache.store_records("motzkin", g, v, &group)?;
    }

    let content = match (&weights, args.table.format) {
        (_, OutputFormat::Json) => serde_json::to_string_pretty(&json_records)? + "\n",
        (Some((b, c)), OutputFormat::Csv) => {
            let mut out = String::from("g,v,n,value\n");
            for (key, value) in &records {
                let n: Vec<String> = key.degrees().iter().map(|d| d.to_string()).collect();
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    key.genus(),
                    key.vertices(),
                    n.join(" "),
                    format_rat(&value.specialize(b, c))
                ));
            }
            out
        }
        (None, OutputFormat::Csv) => unreachable!("rejected above"),
    };
    write_output(&args.table.output, &content)
}

fn compute_f(args: KeyArgs) -> Result<()> {
    let mut fe = FreeEnergies::with_cache(&args.cache_dir)?;
    let f = fe.get_or_compute(args.genus, args.vertices)?;
    let json = laurent_to_json(&f, "t");
    write_output(&args.output, &(serde_json::to_string_pretty(&json)? + "\n"))
}

fn compute_w(args: ComputeWArgs) -> Result<bool> {
    let (g, v) = (args.key.genus, args.key.vertices);
    let mut cache = DiskCache::open(&args.key.cache_dir)?;

    let via_derivative = |cache: &DiskCache| -> Result<bcm_core::poly::LaurentPoly> {
        let mut fe = FreeEnergies::with_cache(cache.dir())?;
        Ok(w_from_free_energy(&fe.get_or_compute(g, v)?))
    };
    let via_residue = |cache: &mut DiskCache| -> Result<bcm_core::poly::LaurentPoly> {
        let mut eo = EoForms::new();
        for level in 1..=(2 * g as i64 - 2 + v as i64) {
            for gg in 0..=((level + 1) / 2) as u32 {
                let vv = (level + 2 - 2 * gg as i64) as u32;
                if vv >= 1 {
                    if let Some(w) = cache.load_laurent("W", gg, vv) {
                        eo.insert(gg, vv, w);
                    }
                }
            }
        }
        let w = eo.tr(g, v)?;
        for (gg, vv) in eo.computed_keys() {
            cache.store_laurent("W", gg, vv, eo.get(gg, vv).expect("computed"))?;
        }
        Ok(w)
    };

    match args.method {
        Method::DerivativeOfF => {
            let w = via_derivative(&cache)?;
            let json = EoFormJson { g, v, poly: laurent_to_json(&w, "t") };
            write_output(&args.key.output, &(serde_json::to_string_pretty(&json)? + "\n"))?;
            Ok(true)
        }
        Method::Residue => {
            let w = via_residue(&mut cache)?;
            let json = EoFormJson { g, v, poly: laurent_to_json(&w, "t") };
            write_output(&args.key.output, &(serde_json::to_string_pretty(&json)? + "\n"))?;
            Ok(true)
        }
        Method::Both => {
            let from_f = via_derivative(&cache)?;
            let from_residue = via_residue(&mut cache)?;
            let matches = from_f == from_residue;
            let json = serde_json::json!({
                "g": g,
                "v": v,
                "dF": laurent_to_json(&from_f, "t"),
                "residue": laurent_to_json(&from_residue, "t"),
                "match": matches,
            });
            write_output(&args.key.output, &(serde_json::to_string_pretty(&json)? + "\n"))?;
            if !matches {
                eprintln!("error: routes disagree for w_({g},{v})");
            }
            Ok(matches)
        }
    }
}

fn verify_command(args: VerifyArgs) -> Result<bool> {
    let parse_weight = |text: Option<&str>, default: i64| match text {
        None => Rat::from_integer(default.into()),
        Some(text) => match parse_rat(text) {
            Ok(value) => value,
            Err(_) => usage_error("--b and --c must be rationals P/Q with Q > 0"),
        },
    };
    let b = parse_weight(args.b.as_deref(), 0);
    let c = parse_weight(args.c.as_deref(), 1);
    let max_total = args.max_total;

    type SuiteJob = Box<dyn Fn() -> bcm_core::Result<Vec<verify::Check>> + Send + Sync>;
    let jobs: Vec<SuiteJob> = match args.suite {
        Suite::CatalanOracle => vec![Box::new(verify::suite_catalan_oracle)],
        Suite::Motzkin => vec![Box::new(verify::suite_motzkin)],
        Suite::Identities => vec![Box::new(verify::suite_identities)],
        Suite::Laplace => vec![Box::new(verify::suite_laplace)],
        Suite::Eo => vec![Box::new(verify::suite_eo)],
        Suite::Bridge => {
            let (b, c) = (b.clone(), c.clone());
            vec![Box::new(move || verify::suite_bridge(&b, &c, max_total))]
        }
        Suite::All => {
            let mut list: Vec<SuiteJob> = vec![
                Box::new(verify::suite_catalan_oracle),
                Box::new(verify::suite_motzkin),
                Box::new(verify::suite_identities),
                Box::new(verify::suite_laplace),
                Box::new(verify::suite_eo),
            ];
            for (sb, sc) in verify::bridge_samples() {
                list.push(Box::new(move || verify::suite_bridge(&sb, &sc, max_total)));
            }
            list
        }
    };

    let results: Vec<bcm_core::Result<Vec<verify::Check>>> = if args.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs)
            .build()
            .context("building worker pool")?;
        use rayon::prelude::*;
        pool.install(|| jobs.par_iter().map(|job| job()).collect())
    } else {
        jobs.iter().map(|job| job()).collect()
    };

    let mut checks = Vec::new();
    for result in results {
        checks.extend(result?);
    }

    let suite_name = match args.suite {
        Suite::CatalanOracle => "catalan-oracle",
        Suite::Motzkin => "motzkin",
        Suite::Identities => "identities",
        Suite::Laplace => "laplace",
        Suite::Eo => "eo",
        Suite::Bridge => "bridge",
        Suite::All => "all",
    };
    let all_passed = verify::all_pass(&checks);
    let report = Report {
        suite: suite_name.to_string(),
        version: FORMAT_VERSION,
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        checks: checks
            .iter()
            .map(|check| CheckJson {
                name: check.name.clone(),
                status: if check.pass { "pass" } else { "fail" }.to_string(),
                detail: check.detail.clone(),
            })
            .collect(),
    };
    let rendered = if args.suite == Suite::Bridge {
        // The bridge report additionally carries the per-coefficient
        // comparisons.
        let details = verify::bridge_coefficient_details(&b, &c, max_total)?;
        let mut value = serde_json::to_value(&report)?;
        value["coefficients"] = serde_json::json!(details
            .into_iter()
            .map(|(key, entries)| serde_json::json!({ "key": key, "entries": entries }))
            .collect::<Vec<_>>());
        serde_json::to_string_pretty(&value)?
    } else {
        serde_json::to_string_pretty(&report)?
    };
    write_output(&args.output, &(rendered + "\n"))?;
    if !all_passed {
        for check in checks.iter().filter(|c| !c.pass) {
            eprintln!("FAIL {}: {}", check.name, check.detail);
        }
    }
    Ok(all_passed)
}
