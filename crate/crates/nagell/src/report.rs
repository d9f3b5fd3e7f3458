//! Rendering and re-verification of solver output.
//!
//! Three formats cover every command: JSON (machine-readable, all big
//! integers as decimal strings), CSV (one solvability row per `(n, k)`
//! cell), and plain text. Rendering is deterministic — equal inputs
//! yield byte-identical output — and JSON check reports are
//! self-checking: [`verify_report_json`] re-derives every stored witness
//! and counterexample from scratch, so a tampered or stale report fails
//! loudly on load.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::form::{
    form_value, FormInstance, FormSign, Generators, Parity, SolveOutcome, SolveStatus,
};
use crate::gpell::ClassSet;
use crate::harness::{SolvabilityTable, TheoremCheck, TheoremId, Verdict};
use crate::pell::PellFundamental;

/// Output encodings shared by all commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(format!("expected json, csv, or text, got {other:?}")),
        }
    }
}

fn status_str(status: SolveStatus) -> &'static str {
    match status {
        SolveStatus::Empty => "empty",
        SolveStatus::Finite => "finite",
        SolveStatus::Infinite => "infinite",
    }
}

fn parity_str(parity: Parity) -> &'static str {
    match parity {
        Parity::BothOdd => "both-odd",
        Parity::BothEven => "both-even",
        Parity::Mixed => "mixed",
    }
}

fn sign_str(sign: Option<FormSign>) -> &'static str {
    match sign {
        Some(FormSign::Plus) => "+",
        Some(FormSign::Minus) => "-",
        None => "both",
    }
}

// ---------------------------------------------------------------------
// check reports

#[derive(Serialize, Deserialize)]
struct CheckDto {
    theorem: String,
    config: ConfigDto,
    verdict: String,
    witnesses: Vec<PairDto>,
    counterexamples: Vec<PairDto>,
    notes: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ConfigDto {
    sign: String,
    n_values: Vec<u32>,
    k_margin: u64,
    k_max: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p_max: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct PairDto {
    n: u32,
    k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    x: String,
    y: String,
}

fn check_dto(check: &TheoremCheck) -> CheckDto {
    CheckDto {
        theorem: check.theorem.as_str().to_string(),
        config: ConfigDto {
            sign: sign_str(check.theorem.sign()).to_string(),
            n_values: check.n_values.clone(),
            k_margin: check.k_margin,
            k_max: check.k_max,
            p_max: check.p_max,
        },
        verdict: check.verdict.as_str().to_string(),
        witnesses: check
            .witnesses
            .iter()
            .map(|w| PairDto { n: w.n, k: w.k, p: None, x: w.x.to_string(), y: w.y.to_string() })
            .collect(),
        counterexamples: check
            .counterexamples
            .iter()
            .map(|c| PairDto { n: c.n, k: c.k, p: c.p, x: c.x.to_string(), y: c.y.to_string() })
            .collect(),
        notes: check.notes.clone(),
    }
}

/// JSON array of check reports, pretty-printed, big integers as decimal
/// strings.
pub fn checks_to_json(checks: &[TheoremCheck]) -> String {
    let dtos: Vec<CheckDto> = checks.iter().map(check_dto).collect();
    let mut out = serde_json::to_string_pretty(&dtos).expect("report structs always serialize");
    out.push('\n');
    out
}

const GRID_HEADER: &str = "n,k,sign,solvable,odd_solution,min_witness_x,min_witness_y\n";

fn grid_line(
    out: &mut String,
    n: u32,
    k: u64,
    sign: FormSign,
    solvable: bool,
    odd: bool,
    witness: &Option<(BigUint, BigUint)>,
) {
    let (wx, wy) = match witness {
        Some((x, y)) => (x.to_string(), y.to_string()),
        None => (String::new(), String::new()),
    };
    let sign = sign_str(Some(sign));
    writeln!(out, "{n},{k},{sign},{solvable},{odd},{wx},{wy}").expect("writing to a string");
}

/// CSV of every scanned `(n, k)` grid cell across the checks, deduplicated
/// and sorted by `(n, k, sign)`.
pub fn checks_to_csv(checks: &[TheoremCheck]) -> String {
    let mut cells = std::collections::BTreeMap::new();
    for check in checks {
        let Some(sign) = check.theorem.sign() else {
            continue; // the sharpness check carries no grid
        };
        for row in &check.grid {
            let key = (row.n, row.k, sign_str(Some(sign)));
            let value = (sign, row.solvable, row.odd_solution, row.min_witness.clone());
            if let Some(previous) = cells.insert(key, value.clone()) {
                debug_assert_eq!(previous, value, "checks disagree about a grid cell");
            }
        }
    }
    let mut out = String::from(GRID_HEADER);
    for ((n, k, _), (sign, solvable, odd, witness)) in &cells {
        grid_line(&mut out, *n, *k, *sign, *solvable, *odd, witness);
    }
    out
}

/// Plain-text summary: one verdict block per check.
pub fn checks_to_text(checks: &[TheoremCheck]) -> String {
    let mut out = String::new();
    for check in checks {
        writeln!(
            out,
            "{}: {} (sign {}, n = {:?}, k_margin = {}, k <= {}{})",
            check.theorem,
            check.verdict,
            sign_str(check.theorem.sign()),
            check.n_values,
            check.k_margin,
            check.k_max,
            match check.p_max {
                Some(p) => format!(", p <= {p}"),
                None => String::new(),
            },
        )
        .expect("writing to a string");
        for w in &check.witnesses {
            writeln!(out, "  witness        n = {}, k = {}: ({}, {})", w.n, w.k, w.x, w.y)
                .expect("writing to a string");
        }
        for c in &check.counterexamples {
            let p = match c.p {
                Some(p) => format!(", p = {p}"),
                None => String::new(),
            };
            writeln!(out, "  counterexample n = {}, k = {}{}: ({}, {})", c.n, c.k, p, c.x, c.y)
                .expect("writing to a string");
        }
        for note in &check.notes {
            writeln!(out, "  note: {note}").expect("writing to a string");
        }
    }
    out
}

/// Render checks in the requested format.
pub fn checks_output(checks: &[TheoremCheck], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => checks_to_json(checks),
        OutputFormat::Csv => checks_to_csv(checks),
        OutputFormat::Text => checks_to_text(checks),
    }
}

fn parse_big(s: &str, what: &str) -> Result<BigUint, String> {
    BigUint::from_str(s).map_err(|e| format!("{what} {s:?} is not a decimal integer: {e}"))
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    for id in [
        TheoremId::T31i,
        TheoremId::T31ii,
        TheoremId::T32i,
        TheoremId::T32ii,
        TheoremId::T33i,
        TheoremId::T33ii,
        TheoremId::Sharp,
    ] {
        if id.as_str() == s {
            return Ok(id);
        }
    }
    Err(format!("unknown check identifier {s:?}"))
}

/// The sign a stored pair claims to solve: fixed by the check for the
/// grid checks, derived from `k` against `2^n ∓ 2` for the sharpness
/// check.
fn pair_sign(config_sign: &str, n: u32, k: u64) -> Result<FormSign, String> {
    match config_sign {
        "+" => Ok(FormSign::Plus),
        "-" => Ok(FormSign::Minus),
        "both" => {
            if n > 60 {
                return Err(format!("exponent {n} out of range"));
            }
            if k == (1u64 << n) + 2 {
                Ok(FormSign::Minus)
            } else if n >= 1 && k == (1u64 << n) - 2 {
                Ok(FormSign::Plus)
            } else {
                Err(format!("k = {k} is neither 2^{n} - 2 nor 2^{n} + 2"))
            }
        }
        other => Err(format!("unknown sign {other:?}")),
    }
}

fn reverify_pair(
    id: TheoremId,
    config_sign: &str,
    pair: &PairDto,
    witness: bool,
) -> Result<(), String> {
    let x = parse_big(&pair.x, "x")?;
    let y = parse_big(&pair.y, "y")?;
    if x.is_zero() || y.is_zero() {
        return Err(format!("({x}, {y}) is not a positive pair"));
    }
    let sign = pair_sign(config_sign, pair.n, pair.k)?;
    let inst = FormInstance::new(BigUint::from(pair.k), pair.n, sign);
    let value = form_value(
        &BigInt::from(x.clone()),
        &BigInt::from(y.clone()),
        &BigInt::from(inst.k.clone()),
    );
    if value != inst.rhs() {
        return Err(format!("stored pair ({x}, {y}) does not solve {inst}"));
    }
    if witness
        && matches!(id, TheoremId::T31ii | TheoremId::T32ii)
        && Parity::of(&x, &y) != Parity::BothOdd
    {
        return Err(format!("({x}, {y}) is recorded as an odd solution but is not both-odd"));
    }
    if let Some(p) = pair.p {
        // a residue counterexample asserts that k/2 ≡ ±1 (mod p) held
        if !pair.k.is_multiple_of(2) {
            return Err(format!("residue counterexample for odd k = {}", pair.k));
        }
        let r = (pair.k / 2) % p;
        if r != 1 && r + 1 != p {
            return Err(format!(
                "counterexample k = {} does not satisfy k/2 ≡ ±1 (mod {p})",
                pair.k,
            ));
        }
    }
    Ok(())
}

/// Re-verify a JSON check report from scratch: every witness and
/// counterexample must solve its equation (odd-solution witnesses must
/// be both-odd, residue counterexamples must exhibit their congruence),
/// and each verdict must agree with the presence of counterexamples.
/// Returns the number of pairs verified.
pub fn verify_report_json(json: &str) -> Result<usize, String> {
    let dtos: Vec<CheckDto> = serde_json::from_str(json).map_err(|e| format!("bad JSON: {e}"))?;
    let mut verified = 0;
    for dto in &dtos {
        let id = parse_theorem(&dto.theorem)?;
        let expected = if dto.verdict == Verdict::ReportOnly.as_str() {
            None
        } else if dto.verdict == Verdict::Pass.as_str() {
            Some(false)
        } else if dto.verdict == Verdict::Fail.as_str() {
            Some(true)
        } else {
            return Err(format!("unknown verdict {:?}", dto.verdict));
        };
        if let Some(expects_counterexamples) = expected {
            if dto.counterexamples.is_empty() == expects_counterexamples {
                return Err(format!(
                    "verdict {} disagrees with {} counterexamples in {}",
                    dto.verdict,
                    dto.counterexamples.len(),
                    dto.theorem,
                ));
            }
        }
        for w in &dto.witnesses {
            reverify_pair(id, &dto.config.sign, w, true)?;
            verified += 1;
        }
        for c in &dto.counterexamples {
            reverify_pair(id, &dto.config.sign, c, false)?;
            verified += 1;
        }
    }
    Ok(verified)
}

// ---------------------------------------------------------------------
// solvability tables

#[derive(Serialize, Deserialize)]
struct TableDto {
    sign: String,
    k_margin: u64,
    rows: Vec<TableRowDto>,
}

#[derive(Serialize, Deserialize)]
struct TableRowDto {
    n: u32,
    k_max: u64,
    solvable_k: Vec<u64>,
    odd_solution_k: Vec<u64>,
}

/// JSON view of a solvability table: per `n`, the solvable `k` and the
/// `k` with both-odd solutions.
pub fn table_to_json(table: &SolvabilityTable) -> String {
    let dto = TableDto {
        sign: sign_str(Some(table.sign)).to_string(),
        k_margin: table.k_margin,
        rows: table
            .rows
            .iter()
            .map(|scan| TableRowDto {
                n: scan.n,
                k_max: scan.k_max,
                solvable_k: scan.solvable_ks(),
                odd_solution_k: scan.odd_solution_ks(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&dto).expect("table structs always serialize");
    out.push('\n');
    out
}

/// CSV of every `(n, k)` cell of the table.
pub fn table_to_csv(table: &SolvabilityTable) -> String {
    let mut out = String::from(GRID_HEADER);
    for scan in &table.rows {
        for row in &scan.rows {
            grid_line(
                &mut out,
                scan.n,
                row.k,
                table.sign,
                row.solvable,
                row.odd_solution,
                &row.min_witness,
            );
        }
    }
    out
}

fn k_list(ks: &[u64]) -> String {
    if ks.is_empty() {
        "(none)".to_string()
    } else {
        ks.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
    }
}

/// Text view: one line per `n`.
pub fn table_to_text(table: &SolvabilityTable) -> String {
    let mut out = format!(
        "solvable k for x^2 - k x y + y^2 = {}2^n, k <= 2^n + 2 + {}\n",
        sign_str(Some(table.sign)),
        table.k_margin,
    );
    for scan in &table.rows {
        writeln!(
            out,
            "n = {:2}: solvable {}; both-odd {}",
            scan.n,
            k_list(&scan.solvable_ks()),
            k_list(&scan.odd_solution_ks()),
        )
        .expect("writing to a string");
    }
    out
}

/// Render a table in the requested format.
pub fn table_output(table: &SolvabilityTable, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => table_to_json(table),
        OutputFormat::Csv => table_to_csv(table),
        OutputFormat::Text => table_to_text(table),
    }
}

// ---------------------------------------------------------------------
// pell / gpell / solve command output

#[derive(Serialize)]
struct PellDto {
    d: String,
    x: String,
    y: String,
    solutions: Vec<UvDto>,
}

#[derive(Serialize, Deserialize)]
struct UvDto {
    x: String,
    y: String,
}

/// Render the fundamental solution and the first solutions of
/// `x^2 - d y^2 = 1`.
pub fn pell_output(
    fund: &PellFundamental,
    solutions: &[(BigUint, BigUint)],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Json => {
            let dto = PellDto {
                d: fund.d.to_string(),
                x: fund.x.to_string(),
                y: fund.y.to_string(),
                solutions: solutions
                    .iter()
                    .map(|(x, y)| UvDto { x: x.to_string(), y: y.to_string() })
                    .collect(),
            };
            let mut out = serde_json::to_string_pretty(&dto).expect("serializable");
            out.push('\n');
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("d,index,x,y\n");
            for (i, (x, y)) in solutions.iter().enumerate() {
                writeln!(out, "{},{},{x},{y}", fund.d, i + 1).expect("writing to a string");
            }
            out
        }
        OutputFormat::Text => {
            let mut out = format!(
                "fundamental solution of x^2 - {} y^2 = 1: ({}, {})\n",
                fund.d, fund.x, fund.y,
            );
            for (i, (x, y)) in solutions.iter().enumerate() {
                writeln!(out, "{:3}: ({x}, {y})", i + 1).expect("writing to a string");
            }
            out
        }
    }
}

#[derive(Serialize)]
struct GpellDto {
    d: String,
    rhs: String,
    unit: UvDto,
    classes: Vec<ClassDto>,
    solutions: Vec<UvDto>,
}

#[derive(Serialize)]
struct ClassDto {
    u: String,
    v: String,
    ambiguous: bool,
}

/// Render the class set and bounded solution list of `u^2 - d v^2 = N`.
pub fn gpell_output(
    set: &ClassSet,
    solutions: &[(BigUint, BigUint)],
    format: OutputFormat,
) -> String {
    match format {
        OutputFormat::Json => {
            let dto = GpellDto {
                d: set.d.to_string(),
                rhs: set.rhs.to_string(),
                unit: UvDto { x: set.unit.x.to_string(), y: set.unit.y.to_string() },
                classes: set
                    .reps
                    .iter()
                    .map(|r| ClassDto {
                        u: r.u.to_string(),
                        v: r.v.to_string(),
                        ambiguous: r.ambiguous,
                    })
                    .collect(),
                solutions: solutions
                    .iter()
                    .map(|(u, v)| UvDto { x: u.to_string(), y: v.to_string() })
                    .collect(),
            };
            let mut out = serde_json::to_string_pretty(&dto).expect("serializable");
            out.push('\n');
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("d,rhs,u,v\n");
            for (u, v) in solutions {
                writeln!(out, "{},{},{u},{v}", set.d, set.rhs).expect("writing to a string");
            }
            out
        }
        OutputFormat::Text => {
            if set.reps.is_empty() {
                return format!("u^2 - {} v^2 = {}: no solutions\n", set.d, set.rhs);
            }
            let classes = match set.reps.len() {
                1 => "1 class".to_string(),
                m => format!("{m} classes"),
            };
            let mut out = format!(
                "u^2 - {} v^2 = {}: {classes} (unit ({}, {}))\n",
                set.d, set.rhs, set.unit.x, set.unit.y,
            );
            for rep in &set.reps {
                let tag = if rep.ambiguous { " ambiguous" } else { "" };
                writeln!(out, "  class ({}, {}){tag}", rep.u, rep.v).expect("writing to a string");
            }
            for (u, v) in solutions {
                writeln!(out, "({u}, {v})").expect("writing to a string");
            }
            out
        }
    }
}

#[derive(Serialize)]
struct SolveDto {
    k: String,
    n: u32,
    sign: String,
    status: String,
    solutions: Vec<SolutionDto>,
    generators: Option<serde_json::Value>,
}

#[derive(Serialize)]
struct SolutionDto {
    x: String,
    y: String,
    parity: String,
}

fn generators_json(generators: &Generators) -> serde_json::Value {
    match generators {
        Generators::Classes { unit, levels } => serde_json::json!({
            "kind": "classes",
            "unit": { "x": unit.x.to_string(), "y": unit.y.to_string() },
            "levels": levels
                .iter()
                .map(|level| serde_json::json!({
                    "scale_log2": level.scale_log2,
                    "rhs": level.classes.rhs.to_string(),
                    "classes": level.classes.reps.iter().map(|r| serde_json::json!({
                        "u": r.u.to_string(),
                        "v": r.v.to_string(),
                        "ambiguous": r.ambiguous,
                    })).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
        }),
        Generators::VietaBase { base } => serde_json::json!({
            "kind": "vieta-base",
            "base": base
                .iter()
                .map(|b| serde_json::json!({ "x": b.x.to_string(), "y": b.y.to_string() }))
                .collect::<Vec<_>>(),
        }),
        Generators::Shift { step } => serde_json::json!({
            "kind": "shift",
            "step": step.to_string(),
        }),
    }
}

/// Render one solved instance: status, bounded solutions, generators.
pub fn solve_output(inst: &FormInstance, outcome: &SolveOutcome, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let dto = SolveDto {
                k: inst.k.to_string(),
                n: inst.n,
                sign: sign_str(Some(inst.sign)).to_string(),
                status: status_str(outcome.status).to_string(),
                solutions: outcome
                    .solutions
                    .iter()
                    .map(|s| SolutionDto {
                        x: s.x.to_string(),
                        y: s.y.to_string(),
                        parity: parity_str(s.parity).to_string(),
                    })
                    .collect(),
                generators: outcome.generators.as_ref().map(generators_json),
            };
            let mut out = serde_json::to_string_pretty(&dto).expect("serializable");
            out.push('\n');
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("k,n,sign,x,y,parity\n");
            for s in &outcome.solutions {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    inst.k,
                    inst.n,
                    sign_str(Some(inst.sign)),
                    s.x,
                    s.y,
                    parity_str(s.parity),
                )
                .expect("writing to a string");
            }
            out
        }
        OutputFormat::Text => {
            let mut out = format!("{inst}: {} solution set\n", status_str(outcome.status));
            match &outcome.generators {
                Some(Generators::Classes { unit, levels }) => {
                    writeln!(
                        out,
                        "generators: class ladders, unit ({}, {}), {} descent levels",
                        unit.x,
                        unit.y,
                        levels.len(),
                    )
                    .expect("writing to a string");
                }
                Some(Generators::VietaBase { base }) if base.is_empty() => {
                    writeln!(out, "generators: the Vieta walk found no base pairs")
                        .expect("writing to a string");
                }
                Some(Generators::VietaBase { base }) => {
                    let pairs: Vec<String> =
                        base.iter().map(|b| format!("({}, {})", b.x, b.y)).collect();
                    writeln!(out, "generators: base pairs {}", pairs.join(" "))
                        .expect("writing to a string");
                }
                Some(Generators::Shift { step }) => {
                    writeln!(out, "generators: x = y + {step} and its mirror")
                        .expect("writing to a string");
                }
                None => {}
            }
            for s in &outcome.solutions {
                writeln!(out, "({}, {}) [{}]", s.x, s.y, parity_str(s.parity))
                    .expect("writing to a string");
            }
            out
        }
    }
}
