//! Command-line front end for the `designauth` library.
//!
//! Subcommands cover the full pipeline: `generate` a Steiner design,
//! `order` its blocks into a perfect-secrecy encoding matrix, `verify` a
//! matrix's exact security properties, print parameter `table`s of optimal
//! codes, and emit the published reference `fixtures`.
//!
//! Exit codes: 0 on success, 1 when a verification ran to completion and
//! failed, 2 on usage or parameter errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::bigint::BigUint;

use designauth::authcode::{display_rational, AuthCode, DEFAULT_DECEPTION_WORK_LIMIT};
use designauth::designs::geometry::{pg_lines, prime_power, spherical_design};
use designauth::designs::triples::sts_cyclic;
use designauth::designs::witt::witt_search;
use designauth::designs::{divisibility_check, io as design_io, DesignStats};
use designauth::field::MAX_FIELD_ORDER;
use designauth::fixtures;
use designauth::ordering::{order_blocks, validate_ordering, EncodingMatrix};

#[derive(Parser)]
#[command(name = "designauth", version, about = "Optimal authentication codes with perfect secrecy from Steiner designs")]
struct Cli {
    /// Emit machine-readable JSON instead of human-oriented text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a design and print its statistics.
    Generate(GenerateArgs),
    /// Order a design's blocks into a perfect-secrecy encoding matrix.
    Order(OrderArgs),
    /// Verify an encoding matrix exactly: deception probabilities, secrecy,
    /// optimality.
    Verify(VerifyArgs),
    /// Print a parameter table of optimal codes.
    Table(TableArgs),
    /// Write the published reference encoding matrices as CSV files.
    Fixtures(FixturesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Lines of the projective geometry PG(d,q): a 2-((q^{d+1}−1)/(q−1), q+1, 1) design.
    Pg,
    /// Spherical geometry on the projective line over GF(q^d): a 3-(q^d+1, q+1, 1) design.
    Spherical,
    /// Cyclic Steiner triple system: a 2-(v,3,1) design, v ≡ 1 (mod 6).
    Sts,
    /// The 5-(12,6,1) Witt design and its derived 4-(11,5,1) design.
    Witt,
}

impl Family {
    fn label(self) -> &'static str {
        match self {
            Family::Pg => "projective",
            Family::Spherical => "spherical",
            Family::Sts => "sts",
            Family::Witt => "witt",
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// Design family.
    #[arg(value_enum)]
    family: Family,
    /// Prime power q (pg, spherical).
    #[arg(long)]
    q: Option<u64>,
    /// Dimension d (pg, spherical).
    #[arg(long)]
    d: Option<usize>,
    /// Number of points v (sts); must satisfy v ≡ 1 (mod 6).
    #[arg(long)]
    v: Option<usize>,
    /// Write the design as JSON to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// For witt: also write the derived 4-(11,5,1) design here.
    #[arg(long)]
    derived_out: Option<PathBuf>,
}

#[derive(Args)]
struct OrderArgs {
    /// Design file (JSON) to order.
    design: PathBuf,
    /// Write the matrix here (.csv or .json decides the format); stdout
    /// otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Encoding matrix file (.csv or .json).
    matrix: PathBuf,
    /// Highest spoofing order to check (P_d0 .. P_d<order>).
    #[arg(long, default_value_t = 1)]
    spoof_order: usize,
    /// Ceiling on subset tests per deception-probability computation.
    #[arg(long, default_value_t = DEFAULT_DECEPTION_WORK_LIMIT)]
    work_limit: u64,
}

#[derive(Args)]
struct TableArgs {
    /// Reproduce the published table of 14 further optimal codes,
    /// recomputing every rule count from (t, v, k).
    #[arg(long, conflicts_with_all = ["family"])]
    reference: bool,
    /// Scan one family's parameter range instead.
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Largest dimension d to scan (pg, spherical).
    #[arg(long, default_value_t = 4)]
    max_d: usize,
    /// Largest field order q to scan (pg, spherical).
    #[arg(long, default_value_t = 9)]
    max_q: u64,
    /// Largest point count v to scan (sts).
    #[arg(long, default_value_t = 43)]
    max_v: usize,
}

#[derive(Args)]
struct FixturesArgs {
    /// Directory to write fano.csv and mobius_order3.csv into.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    // Die quietly when stdout closes early (`designauth … | head`) instead
    // of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Generate(args) => cmd_generate(cli.json, args),
        Command::Order(args) => cmd_order(cli.json, args),
        Command::Verify(args) => cmd_verify(cli.json, args),
        Command::Table(args) => cmd_table(cli.json, args),
        Command::Fixtures(args) => cmd_fixtures(cli.json, args),
    }
}

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

fn need<T>(value: Option<T>, flag: &str, family: &str) -> anyhow::Result<T> {
    value.with_context(|| format!("family `{family}` requires {flag}"))
}

fn cmd_generate(json: bool, args: GenerateArgs) -> anyhow::Result<ExitCode> {
    let (design, derived) = match args.family {
        Family::Pg => {
            let q = need(args.q, "--q", "pg")?;
            let d = need(args.d, "--d", "pg")?;
            (pg_lines(d, q)?, None)
        }
        Family::Spherical => {
            let q = need(args.q, "--q", "spherical")?;
            let d = need(args.d, "--d", "spherical")?;
            (spherical_design(q, d)?, None)
        }
        Family::Sts => {
            let v = need(args.v, "--v", "sts")?;
            (sts_cyclic(v)?, None)
        }
        Family::Witt => {
            let (big, derived) = witt_search()?;
            (big, Some(derived))
        }
    };

    if let Some(path) = &args.out {
        design_io::emit(&design, path)?;
    }
    if let Some(derived) = &derived {
        if let Some(path) = &args.derived_out {
            design_io::emit(derived, path)?;
        }
    } else if args.derived_out.is_some() {
        bail!("--derived-out applies only to the witt family");
    }

    if json {
        let mut out = serde_json::json!({ "design": stats_json(&design.stats()) });
        if let Some(derived) = &derived {
            out["derived"] = stats_json(&derived.stats());
        }
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        print_stats(&design.stats());
        if let Some(derived) = &derived {
            println!("derived design:");
            print_stats(&derived.stats());
        }
        if let Some(path) = &args.out {
            println!("wrote {}", path.display());
        }
        if let (Some(path), Some(_)) = (&args.derived_out, &derived) {
            println!("wrote {}", path.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn stats_json(stats: &DesignStats) -> serde_json::Value {
    serde_json::json!({
        "t": stats.t,
        "v": stats.v,
        "k": stats.k,
        "lambda": stats.lambda,
        "b": stats.b.to_string(),
        "r": stats.r.to_string(),
        "lambda_s": stats.lambda_s.iter().map(BigUint::to_string).collect::<Vec<_>>(),
    })
}

fn print_stats(stats: &DesignStats) {
    println!(
        "design: {}-({},{},{})",
        stats.t, stats.v, stats.k, stats.lambda
    );
    println!("blocks (b): {}", stats.b);
    println!("replication (r): {}", stats.r);
    let lambdas: Vec<String> = stats.lambda_s.iter().map(BigUint::to_string).collect();
    println!("lambda_s (s = 0..{}): {}", stats.t, lambdas.join(" "));
}

// ---------------------------------------------------------------------------
// order
// ---------------------------------------------------------------------------

fn cmd_order(json: bool, args: OrderArgs) -> anyhow::Result<ExitCode> {
    let design = design_io::ingest(&args.design)?;
    let matrix = order_blocks(&design)?;
    let report = validate_ordering(&design, &matrix);
    if !report.ok() {
        bail!("internal error: ordered matrix failed validation: {report:?}");
    }
    match &args.out {
        Some(path) => {
            matrix.write_path(path)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "b": matrix.b(),
                        "k": matrix.k(),
                        "v": matrix.v(),
                        "out": path.display().to_string(),
                    })
                );
            } else {
                println!(
                    "ordered {} blocks into a {}x{} encoding matrix on {} messages",
                    matrix.b(),
                    matrix.b(),
                    matrix.k(),
                    matrix.v()
                );
                println!(
                    "every message occupies each column exactly {} time(s)",
                    matrix.b() / matrix.v()
                );
                println!("wrote {}", path.display());
            }
        }
        None => {
            if json {
                print!("{}", matrix.to_json_string());
            } else {
                print!("{}", matrix.to_csv_string());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(json: bool, args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let matrix = EncodingMatrix::read_path(&args.matrix)?;
    let code = AuthCode::new(matrix)?;
    let report = code.security_report(args.spoof_order, args.work_limit)?;
    let pass = report.all_pass();

    if json {
        println!("{}", serde_json::to_string_pretty(&report.to_json())?);
    } else {
        println!(
            "code: b={} rules, k={} source states, v={} messages",
            report.b, report.k, report.v
        );
        for (i, (p, floor)) in report.deception.iter().zip(&report.massey_floor).enumerate() {
            let met = if p == floor { "meets floor exactly" } else { "above floor" };
            println!(
                "P_d{i} = {}  (floor {}, {met})",
                display_rational(p),
                display_rational(floor)
            );
        }
        println!(
            "{}-fold secure against spoofing: {}",
            report.spoof_order,
            yes_no(report.t_fold_secure)
        );
        let secrecy_ok = report.secrecy.ok();
        if secrecy_ok {
            println!("perfect secrecy: pass");
        } else {
            println!(
                "perfect secrecy: FAIL ({} violation(s))",
                report.secrecy.violations.len() + report.secrecy.posterior_violations.len()
            );
        }
        println!(
            "rule-count floor C(v,{})/C(k,{}) = {}; optimal: {}",
            report.spoof_order + 1,
            report.spoof_order + 1,
            display_rational(&report.bound),
            yes_no(report.optimal)
        );
        for note in &report.notes {
            println!("note: {note}");
        }
        println!("RESULT: {}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

struct TableRow {
    t: usize,
    k: usize,
    v: usize,
    b: BigUint,
    family: &'static str,
    v_divides_b: bool,
    construction_available: bool,
}

fn table_row(
    t: usize,
    k: usize,
    v: usize,
    family: &'static str,
    construction_available: bool,
) -> anyhow::Result<TableRow> {
    let report = divisibility_check(t, v, k);
    let b = report
        .b
        .with_context(|| format!("inadmissible parameters t={t}, v={v}, k={k}"))?;
    let v_divides_b = report.v_divides_b.expect("flag accompanies integral b");
    Ok(TableRow {
        t,
        k,
        v,
        b,
        family,
        v_divides_b,
        construction_available,
    })
}

fn cmd_table(json: bool, args: TableArgs) -> anyhow::Result<ExitCode> {
    let rows = if args.reference {
        reference_rows()?
    } else if let Some(family) = args.family {
        family_rows(family, &args)?
    } else {
        bail!("pass --reference or --family <pg|spherical|sts|witt>");
    };

    if json {
        let objs: Vec<serde_json::Value> = rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "t": r.t,
                    "k": r.k,
                    "v": r.v,
                    "b": r.b.to_string(),
                    "family": r.family,
                    "v_divides_b": r.v_divides_b,
                    "construction_available": r.construction_available,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&objs)?);
    } else {
        println!(
            "{:>2} {:>3} {:>5} {:>14}  {:<10} {:>5} {:>13}",
            "t", "k", "v", "b", "family", "v | b", "constructible"
        );
        for r in &rows {
            println!(
                "{:>2} {:>3} {:>5} {:>14}  {:<10} {:>5} {:>13}",
                r.t,
                r.k,
                r.v,
                r.b.to_string(),
                r.family,
                yes_no(r.v_divides_b),
                yes_no(r.construction_available)
            );
        }
        println!("{} row(s)", rows.len());
    }
    Ok(ExitCode::SUCCESS)
}

/// The published 14-row table, with every rule count recomputed from
/// (t, v, k) and cross-checked against the printed value.
fn reference_rows() -> anyhow::Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for entry in fixtures::REFERENCE_PARAMETERS {
        let row = table_row(entry.t, entry.k, entry.v, entry.family, entry.family == "witt")?;
        if row.b != BigUint::from(entry.b) {
            bail!(
                "recomputed b = {} for t={}, v={}, k={} disagrees with the printed {}",
                row.b,
                entry.t,
                entry.v,
                entry.k,
                entry.b
            );
        }
        if !row.v_divides_b {
            bail!(
                "v = {} does not divide b = {} for the printed row",
                entry.v,
                row.b
            );
        }
        rows.push(row);
    }
    Ok(rows)
}

fn family_rows(family: Family, args: &TableArgs) -> anyhow::Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    match family {
        Family::Pg => {
            for d in 2..=args.max_d {
                for q in 2..=args.max_q {
                    if prime_power(q).is_err() {
                        continue;
                    }
                    let v = geometric_sum(q, d + 1)?;
                    rows.push(table_row(2, q as usize + 1, v, family.label(), true)?);
                }
            }
        }
        Family::Spherical => {
            for d in 2..=args.max_d {
                for q in 2..=args.max_q {
                    if prime_power(q).is_err() {
                        continue;
                    }
                    let qd = checked_pow(q, d)?;
                    let available = (qd as u128) <= MAX_FIELD_ORDER;
                    rows.push(table_row(
                        3,
                        q as usize + 1,
                        qd as usize + 1,
                        family.label(),
                        available,
                    )?);
                }
            }
        }
        Family::Sts => {
            for v in (7..=args.max_v).filter(|v| v % 6 == 1 || v % 6 == 3) {
                rows.push(table_row(2, 3, v, family.label(), v % 6 == 1)?);
            }
        }
        Family::Witt => {
            rows.push(table_row(5, 6, 12, family.label(), true)?);
            rows.push(table_row(4, 5, 11, family.label(), true)?);
        }
    }
    Ok(rows)
}

/// `1 + q + … + q^(terms−1)`, the point count of PG(terms−1, q).
fn geometric_sum(q: u64, terms: usize) -> anyhow::Result<usize> {
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..terms {
        total += power;
        power = power
            .checked_mul(q as u128)
            .context("parameter range overflows")?;
    }
    usize::try_from(total).context("parameter range overflows")
}

fn checked_pow(q: u64, d: usize) -> anyhow::Result<u64> {
    let mut power: u64 = 1;
    for _ in 0..d {
        power = power
            .checked_mul(q)
            .context("parameter range overflows")?;
    }
    Ok(power)
}

// ---------------------------------------------------------------------------
// fixtures
// ---------------------------------------------------------------------------

fn cmd_fixtures(json: bool, args: FixturesArgs) -> anyhow::Result<ExitCode> {
    std::fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {}", args.out_dir.display()))?;
    let fano = args.out_dir.join("fano.csv");
    let mobius = args.out_dir.join("mobius_order3.csv");
    std::fs::write(&fano, fixtures::fano_csv())?;
    std::fs::write(&mobius, fixtures::mobius_order3_csv())?;
    if json {
        println!(
            "{}",
            serde_json::json!({
                "written": [fano.display().to_string(), mobius.display().to_string()],
            })
        );
    } else {
        println!("wrote {}", fano.display());
        println!("wrote {}", mobius.display());
    }
    Ok(ExitCode::SUCCESS)
}
