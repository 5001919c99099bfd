//! Command line frontend.  Every subcommand prints one report row per line,
//! tab-separated by default or as JSON objects with `--json`, in a fixed
//! order so repeated runs are byte-identical.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use endoclass::characters::{all_characters, bernoulli_b1, s0_set, s_odd};
use endoclass::classifier::{
    algebras_for_case, case_table, classify_example, CentralizerCase, CubicExample,
};
use endoclass::cm_types::{
    compute_s, decompose_dual_type, decompose_twisted, enumerate_cm_types,
    expected_s_closed_form,
};
use endoclass::curve::{
    depress_cubic, differential_basis, genus_from_multiplicities, new_part_dimension,
    normalizer_classification, type_from_basis,
};
use endoclass::cyclo::fixed_subfield;
use endoclass::report::{all_passed, render_rows, ReportRow};
use endoclass::verify::run_suite;
use num::BigRational;
use serde_json::json;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Parser)]
#[command(name = "endoclass", version, about = "Exact computations around cyclic covers and their endomorphism algebras")]
struct Cli {
    /// Emit one JSON object per row instead of tab-separated lines
    #[arg(long, global = true)]
    json: bool,

    /// Exit 1 if any emitted row has status fail
    #[arg(long, global = true)]
    assert: bool,

    /// Worker threads for range sweeps (default: ENDOCLASS_JOBS, then 1)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Admissible twist sets of moduli, with closed-form checks where known
    Sq {
        /// Single modulus
        #[arg(long, conflicts_with = "range")]
        q: Option<u64>,
        /// Inclusive sweep `LO..HI`
        #[arg(long)]
        range: Option<String>,
    },
    /// Enumerate every CM type at a modulus
    Tq {
        #[arg(long)]
        q: u64,
    },
    /// Decompose the cubic multiplication type into pairs of CM types
    Decompose {
        #[arg(long)]
        q: u64,
        /// Solve the twisted variant `h = g + (g . theta_s)` instead
        #[arg(long)]
        s: Option<u64>,
    },
    /// Endomorphism algebras: stated tables, single cases, worked cubics
    Classify {
        /// Level for table or case queries
        #[arg(long, conflicts_with = "f")]
        q: Option<u64>,
        /// Centralizer case: E, L, EplusE, or Mat2E
        #[arg(long, requires = "q")]
        case: Option<String>,
        /// Named cubic: x3p1, x3mx, x3px, or generic
        #[arg(long, requires = "level")]
        f: Option<String>,
        /// Level for a named cubic
        #[arg(long = "N", conflicts_with = "q")]
        level: Option<u64>,
    },
    /// Twisted first Bernoulli numbers of all characters at a modulus
    Bernoulli {
        #[arg(long = "N")]
        modulus: u64,
        /// Restrict to odd characters
        #[arg(long)]
        odd_only: bool,
    },
    /// Odd characters whose twisted Bernoulli number vanishes
    S0 {
        #[arg(long = "N")]
        modulus: u64,
    },
    /// Fixed subfield of a cyclotomic field under a unit subgroup
    Fields {
        /// Cyclotomic conductor
        #[arg(long)]
        n: u64,
        /// Full subgroup as comma-separated units, e.g. 1,2,4
        #[arg(long)]
        subgroup: String,
    },
    /// Genus, differential bases, and automorphisms of cyclic covers
    Curve {
        #[command(subcommand)]
        command: CurveCommand,
    },
    /// Run verification suites; exits 1 if any row fails
    Verify {
        /// Suite name, or `all`
        #[arg(long)]
        suite: String,
        /// Override the suite's sweep bound
        #[arg(long)]
        max: Option<u64>,
    },
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Riemann-Hurwitz genus of `y^N = prod (x - e_i)^{m_i}`
    Genus {
        #[arg(long)]
        level: u64,
        /// Root multiplicities, comma separated
        #[arg(long, default_value = "1,1,1")]
        mults: String,
    },
    /// Holomorphic differential basis exponents and the type they induce
    Basis {
        #[arg(long)]
        level: u64,
        /// Degree of the defining polynomial
        #[arg(long, default_value_t = 3)]
        n: u64,
    },
    /// Automorphisms of `y^N = x^3 + a x^2 + b x + c` beyond the cyclic ones
    Aut {
        #[arg(long)]
        level: u64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        c: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let (rows, always_assert) = match &cli.command {
        Command::Sq { q, range } => (sq_rows(*q, range.as_deref(), effective_jobs(cli))?, false),
        Command::Tq { q } => (tq_rows(*q)?, false),
        Command::Decompose { q, s } => (decompose_rows(*q, *s)?, false),
        Command::Classify { q, case, f, level } => {
            (classify_rows(*q, case.as_deref(), f.as_deref(), *level)?, false)
        }
        Command::Bernoulli { modulus, odd_only } => (bernoulli_rows(*modulus, *odd_only)?, false),
        Command::S0 { modulus } => (s0_rows(*modulus)?, false),
        Command::Fields { n, subgroup } => (fields_rows(*n, subgroup)?, false),
        Command::Curve { command } => (curve_rows(command)?, false),
        Command::Verify { suite, max } => {
            let outcome = run_suite(suite, *max)?;
            (outcome.rows, true)
        }
    };
    print!("{}", render_rows(&rows, cli.json));
    if (cli.assert || always_assert) && !all_passed(&rows) {
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn effective_jobs(cli: &Cli) -> usize {
    cli.jobs
        .or_else(|| std::env::var("ENDOCLASS_JOBS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1)
        .max(1)
}

/// Runs `f` over `items` on up to `jobs` threads, returning the row blocks
/// in input order regardless of scheduling.
fn parallel_map_ordered<F>(items: &[u64], jobs: usize, f: F) -> Result<Vec<ReportRow>>
where
    F: Fn(u64) -> Result<Vec<ReportRow>> + Sync,
{
    let jobs = jobs.max(1).min(items.len().max(1));
    if jobs == 1 {
        let mut out = Vec::new();
        for &item in items {
            out.extend(f(item)?);
        }
        return Ok(out);
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<Vec<ReportRow>>>>> =
        items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let result = f(items[i]);
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });
    let mut out = Vec::new();
    for slot in slots {
        out.extend(slot.into_inner().unwrap().expect("worker filled every slot")?);
    }
    Ok(out)
}

fn parse_range(text: &str) -> Result<(u64, u64)> {
    let (lo, hi) = text
        .split_once("..")
        .with_context(|| format!("range {text:?} is not of the form LO..HI"))?;
    let lo: u64 = lo.trim().parse().with_context(|| format!("bad lower bound {lo:?}"))?;
    let hi: u64 = hi.trim().parse().with_context(|| format!("bad upper bound {hi:?}"))?;
    if lo > hi {
        bail!("empty range {text:?}");
    }
    Ok((lo, hi))
}

fn single_sq_rows(q: u64) -> Result<Vec<ReportRow>> {
    let twists = compute_s(q)?;
    let computed: Vec<u64> = twists.iter().map(|t| t.s).collect();
    let witnesses: Vec<serde_json::Value> = twists
        .iter()
        .map(|t| json!({"s": t.s, "witness": t.witness.bit_string(), "unique": t.unique}))
        .collect();
    let expected = expected_s_closed_form(q);
    let row = ReportRow::new("twist-set").param("q", q).result(json!({
        "s": computed,
        "witnesses": witnesses,
        "expected": expected,
    }));
    Ok(vec![match expected {
        Some(e) => row.check(computed == e),
        None => row,
    }])
}

fn sq_rows(q: Option<u64>, range: Option<&str>, jobs: usize) -> Result<Vec<ReportRow>> {
    match (q, range) {
        (Some(q), None) => single_sq_rows(q),
        (None, Some(range)) => {
            let (lo, hi) = parse_range(range)?;
            let items: Vec<u64> = (lo.max(3)..=hi).collect();
            parallel_map_ordered(&items, jobs, single_sq_rows)
        }
        _ => bail!("pass exactly one of --q or --range"),
    }
}

fn tq_rows(q: u64) -> Result<Vec<ReportRow>> {
    let mut members = enumerate_cm_types(q)?;
    members.sort();
    let mut rows = Vec::new();
    for (i, g) in members.iter().enumerate() {
        rows.push(
            ReportRow::new("cm-type")
                .param("q", q)
                .param("index", i)
                .result(json!({
                    "member": g.bit_string(),
                    "primitive": g.is_primitive(),
                    "stabilizer": g.stabilizer(),
                })),
        );
    }
    rows.push(
        ReportRow::new("cm-type-count").param("q", q).result(json!({"members": members.len()})),
    );
    Ok(rows)
}

fn decompose_rows(q: u64, s: Option<u64>) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    match s {
        None => {
            let pairs = decompose_dual_type(q)?;
            for (i, (a, b)) in pairs.iter().enumerate() {
                rows.push(
                    ReportRow::new("decomposition")
                        .param("q", q)
                        .param("index", i)
                        .result(json!({
                            "members": [a.bit_string(), b.bit_string()],
                            "stabilizers": [a.stabilizer(), b.stabilizer()],
                        })),
                );
            }
            rows.push(
                ReportRow::new("decomposition-count")
                    .param("q", q)
                    .result(json!({"pairs": pairs.len()})),
            );
        }
        Some(s) => {
            let witnesses = decompose_twisted(q, s)?;
            for (i, g) in witnesses.iter().enumerate() {
                rows.push(
                    ReportRow::new("twisted-decomposition")
                        .param("q", q)
                        .param("s", s)
                        .param("index", i)
                        .result(json!({
                            "member": g.bit_string(),
                            "partner": g.compose_theta(s)?.bit_string(),
                        })),
                );
            }
            rows.push(
                ReportRow::new("twisted-decomposition-count")
                    .param("q", q)
                    .param("s", s)
                    .result(json!({"solutions": witnesses.len()})),
            );
        }
    }
    Ok(rows)
}

fn parse_case(token: &str) -> Result<CentralizerCase> {
    Ok(match token {
        "E" => CentralizerCase::Cyclotomic,
        "L" => CentralizerCase::QuadraticExtension,
        "EplusE" => CentralizerCase::SplitPair,
        "Mat2E" => CentralizerCase::DoubledMatrix,
        _ => bail!("unknown case {token:?}; expected E, L, EplusE, or Mat2E"),
    })
}

fn parse_form(token: &str) -> Result<CubicExample> {
    Ok(match token {
        "x3p1" => CubicExample::PlusOne,
        "x3mx" => CubicExample::MinusX,
        "x3px" => CubicExample::PlusX,
        "generic" => CubicExample::Generic,
        other => CubicExample::parse(other)
            .map_err(|_| anyhow::anyhow!("unknown cubic {token:?}; expected x3p1, x3mx, x3px, or generic"))?,
    })
}

fn classify_rows(
    q: Option<u64>,
    case: Option<&str>,
    f: Option<&str>,
    level: Option<u64>,
) -> Result<Vec<ReportRow>> {
    match (q, f, level) {
        (Some(q), None, None) => {
            let list = match case {
                None => case_table(q)?,
                Some(token) => algebras_for_case(q, parse_case(token)?)?,
            };
            let mut rows = Vec::new();
            for (i, descriptor) in list.iter().enumerate() {
                let mut row = ReportRow::new("algebra").param("q", q);
                if let Some(token) = case {
                    row = row.param("case", token);
                }
                rows.push(row.param("index", i).result(descriptor.to_json()));
            }
            Ok(rows)
        }
        (None, Some(f), Some(level)) => {
            let form = parse_form(f)?;
            let descriptor = classify_example(form, level)?;
            Ok(vec![ReportRow::new("example-algebra")
                .param("form", form.as_str())
                .param("level", level)
                .result(descriptor.to_json())])
        }
        _ => bail!("pass either --q (with optional --case) or --f with --N"),
    }
}

fn bernoulli_rows(modulus: u64, odd_only: bool) -> Result<Vec<ReportRow>> {
    let mut rows = Vec::new();
    for (index, chi) in all_characters(modulus)?.iter().enumerate() {
        if odd_only && !chi.is_odd() {
            continue;
        }
        let value = bernoulli_b1(chi);
        let exponents: Vec<String> = chi.exponents().iter().map(|e| e.to_string()).collect();
        rows.push(
            ReportRow::new("bernoulli")
                .param("modulus", modulus)
                .param("index", index)
                .param("chi", exponents.join("."))
                .param("parity", if chi.is_odd() { "odd" } else { "even" })
                .param("conductor", chi.conductor())
                .result(json!({
                    "order": chi.order(),
                    "value": value.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "field_conductor": value.conductor(),
                    "is_zero": value.is_zero(),
                })),
        );
    }
    Ok(rows)
}

fn s0_rows(modulus: u64) -> Result<Vec<ReportRow>> {
    let vanishing = s0_set(modulus)?;
    let odd_total = s_odd(modulus)?.len();
    let mut rows = Vec::new();
    for chi in &vanishing {
        let exponents: Vec<String> = chi.exponents().iter().map(|e| e.to_string()).collect();
        rows.push(
            ReportRow::new("vanishing-character")
                .param("modulus", modulus)
                .param("chi", exponents.join("."))
                .result(json!({"order": chi.order(), "conductor": chi.conductor()})),
        );
    }
    rows.push(
        ReportRow::new("vanishing-count")
            .param("modulus", modulus)
            .result(json!({"vanishing": vanishing.len(), "odd": odd_total})),
    );
    Ok(rows)
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<u64>().with_context(|| format!("bad entry {part:?} in list"))
        })
        .collect()
}

fn fields_rows(n: u64, subgroup: &str) -> Result<Vec<ReportRow>> {
    let subgroup = parse_u64_list(subgroup)?;
    let descriptor = fixed_subfield(n, &subgroup)?;
    Ok(vec![ReportRow::new("fixed-subfield")
        .param("n", n)
        .param("subgroup", subgroup.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("."))
        .result(descriptor.to_json())])
}

fn parse_rational(text: &str) -> Result<BigRational> {
    text.trim().parse::<BigRational>().with_context(|| format!("bad rational {text:?}"))
}

fn curve_rows(command: &CurveCommand) -> Result<Vec<ReportRow>> {
    match command {
        CurveCommand::Genus { level, mults } => {
            let mults = parse_u64_list(mults)?;
            let genus = genus_from_multiplicities(*level, &mults)?;
            let new_part = new_part_dimension(*level, &mults)?;
            Ok(vec![ReportRow::new("genus")
                .param("level", level)
                .param("mults", mults.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("."))
                .result(json!({"genus": genus, "new_part_dimension": new_part}))])
        }
        CurveCommand::Basis { level, n } => {
            let basis = differential_basis(*level, *n)?;
            let induced = type_from_basis(*level, *n)?;
            Ok(vec![ReportRow::new("differential-basis")
                .param("level", level)
                .param("n", n)
                .result(json!({
                    "pairs": basis,
                    "induced_type": induced.csv_string(),
                }))])
        }
        CurveCommand::Aut { level, a, b, c } => {
            let cubic = depress_cubic(&parse_rational(a)?, &parse_rational(b)?, &parse_rational(c)?);
            let quotient = normalizer_classification(*level, &cubic)?;
            Ok(vec![ReportRow::new("automorphisms")
                .param("level", level)
                .result(json!({
                    "depressed": {
                        "shift": cubic.shift.to_string(),
                        "linear": cubic.linear.to_string(),
                        "constant": cubic.constant.to_string(),
                    },
                    "group_order": quotient.order(),
                    "generator": quotient.generator_description(),
                }))])
        }
    }
}
