//! The binary quadratic form `x^2 - k x y + y^2` against a right-hand
//! side of `±2^n`, solved exactly over the positive integers.
//!
//! Two independent mechanisms cover every `k`:
//!
//! * **Class ladders** (even `k >= 4`): substituting `u = |x - (k/2) y|`,
//!   `v = y` turns the form into `u^2 - d v^2 = ±2^n` with
//!   `d = (k/2)^2 - 1`, which [`crate::gpell`] enumerates completely.
//!   Solutions sharing a power of two are handled by descent: every
//!   solution is `2^e` times a primitive solution of the exponent-`n - 2e`
//!   equation, so one class set per descent level captures everything.
//! * **Vieta walks** (any `k >= 3`): fixing one coordinate leaves a monic
//!   quadratic in the other, so `(x, y) -> (k x - y, x)` maps solutions to
//!   strictly larger solutions and its inverse walks every solution down
//!   to a small *base pair*. Base pairs live in an explicitly bounded box
//!   and are found by direct scan.
//!
//! For even `k >= 4` both mechanisms run and their outputs are asserted
//! identical, so each call is its own differential test. Small `k` have
//! their own arms: `k <= 1` is positive definite (finite solution sets),
//! `k = 2` degenerates to `(x - y)^2 = 2^n` (an arithmetic progression of
//! solutions when `n` is even).

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::as_square;
use crate::gpell::{class_reps, class_solutions, ClassSet};
use crate::pell::{pell_fundamental, PellFundamental};
use crate::Error;

/// Sign of the right-hand side `±2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormSign {
    Plus,
    Minus,
}

impl FormSign {
    /// `+1` or `-1`.
    pub fn signum(self) -> BigInt {
        match self {
            FormSign::Plus => BigInt::one(),
            FormSign::Minus => -BigInt::one(),
        }
    }
}

impl fmt::Display for FormSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormSign::Plus => "+",
            FormSign::Minus => "-",
        })
    }
}

impl FromStr for FormSign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "+" | "plus" => Ok(FormSign::Plus),
            "-" | "minus" => Ok(FormSign::Minus),
            other => Err(format!("expected +, -, plus, or minus, got {other:?}")),
        }
    }
}

/// One concrete equation `x^2 - k x y + y^2 = sign · 2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInstance {
    pub k: BigUint,
    pub n: u32,
    pub sign: FormSign,
}

impl FormInstance {
    pub fn new(k: BigUint, n: u32, sign: FormSign) -> Self {
        FormInstance { k, n, sign }
    }

    /// The right-hand side `sign · 2^n`.
    pub fn rhs(&self) -> BigInt {
        self.sign.signum() << self.n
    }
}

impl fmt::Display for FormInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^2 - {} x y + y^2 = {}2^{}", self.k, self.sign, self.n)
    }
}

/// Joint parity of a solution pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    BothOdd,
    BothEven,
    Mixed,
}

impl Parity {
    pub fn of(x: &BigUint, y: &BigUint) -> Parity {
        match (x.is_odd(), y.is_odd()) {
            (true, true) => Parity::BothOdd,
            (false, false) => Parity::BothEven,
            _ => Parity::Mixed,
        }
    }
}

/// A verified solution of some [`FormInstance`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionPair {
    pub x: BigUint,
    pub y: BigUint,
    pub parity: Parity,
}

impl SolutionPair {
    /// Build a pair, asserting that it is positive and actually solves
    /// `inst`. Every pair the solver emits passes through here, so an
    /// algebra bug cannot silently produce garbage.
    pub fn checked(x: BigUint, y: BigUint, inst: &FormInstance) -> SolutionPair {
        assert!(!x.is_zero() && !y.is_zero(), "({x}, {y}) is not positive");
        let value = form_value(
            &BigInt::from(x.clone()),
            &BigInt::from(y.clone()),
            &BigInt::from(inst.k.clone()),
        );
        assert_eq!(value, inst.rhs(), "({x}, {y}) does not solve {inst}");
        SolutionPair { parity: Parity::of(&x, &y), x, y }
    }

    /// `(max, min)` view, for witness ordering.
    pub fn ordered(&self) -> (BigUint, BigUint) {
        if self.x >= self.y {
            (self.x.clone(), self.y.clone())
        } else {
            (self.y.clone(), self.x.clone())
        }
    }
}

/// Whether an instance has no, finitely many, or infinitely many
/// solutions. Decided exactly, independent of any enumeration bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Empty,
    Finite,
    Infinite,
}

/// One descent level of the class enumeration: the classes of
/// `u^2 - d v^2 = ±2^(n - 2·scale_log2)`, whose primitive ladder members
/// are scaled by `2^scale_log2` to land on the original equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassLevel {
    pub scale_log2: u32,
    pub classes: ClassSet,
}

/// Finite description of the full (often infinite) solution set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generators {
    /// Even `k >= 4`: one class set per descent level; every solution is
    /// a scaled, recovered ladder member.
    Classes { unit: PellFundamental, levels: Vec<ClassLevel> },
    /// Odd `k >= 3`: the base pairs of the Vieta walk.
    VietaBase { base: Vec<SolutionPair> },
    /// `k = 2`, even `n`: the progression `x = y + step` and its mirror.
    Shift { step: BigUint },
}

/// Result of [`solve_all`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Every positive solution with both coordinates at most the
    /// requested bound, mirrors included, sorted by `(y, x)`.
    pub solutions: Vec<SolutionPair>,
    pub generators: Option<Generators>,
}

/// One `k` in a [`KScan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KRow {
    pub k: u64,
    pub solvable: bool,
    /// Whether some solution has both coordinates odd.
    pub odd_solution: bool,
    /// Least witness as `(max, min)`, when solvable.
    pub min_witness: Option<(BigUint, BigUint)>,
}

/// Solvability survey over `k = 1 ..= k_max` at fixed `n` and sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KScan {
    pub n: u32,
    pub sign: FormSign,
    pub k_max: u64,
    pub rows: Vec<KRow>,
}

impl KScan {
    /// The `k` values with any solution.
    pub fn solvable_ks(&self) -> Vec<u64> {
        self.rows.iter().filter(|r| r.solvable).map(|r| r.k).collect()
    }

    /// The `k` values with a both-odd solution.
    pub fn odd_solution_ks(&self) -> Vec<u64> {
        self.rows.iter().filter(|r| r.odd_solution).map(|r| r.k).collect()
    }
}

/// `x^2 - k x y + y^2`.
pub fn form_value(x: &BigInt, y: &BigInt, k: &BigInt) -> BigInt {
    x * x - k * x * y + y * y
}

/// Substitute `u = |x - (k/2) y|`, `v = y`: the form becomes
/// `u^2 - d v^2` with `d = (k/2)^2 - 1`. Only even `k >= 4` reduce
/// (`k = 2` would give the square `d = 0`).
///
/// # Errors
///
/// [`Error::UnreducibleK`] for odd `k` or `k < 4`.
pub fn reduce_to_gpell(inst: &FormInstance) -> Result<(BigUint, BigInt), Error> {
    if inst.k.is_odd() || inst.k < BigUint::from(4u32) {
        return Err(Error::UnreducibleK(inst.k.clone()));
    }
    let half = &inst.k >> 1u32;
    Ok((&half * &half - 1u32, inst.rhs()))
}

/// Undo the reduction without verifying against any instance: the `x`
/// candidates are `(k/2) v ± u`, keeping only positive pairs.
fn recover_raw(u: &BigUint, v: &BigUint, half: &BigUint) -> Vec<(BigUint, BigUint)> {
    if v.is_zero() {
        // y = v would be zero; only positive solutions count
        return Vec::new();
    }
    let center = half * v;
    let mut out = vec![(&center + u, v.clone())];
    if !u.is_zero() && center > *u {
        out.push((center - u, v.clone()));
    }
    out
}

/// The positive form solutions `(x, v)` behind a ladder member `(u, v)`
/// of the reduced equation, verified against `inst` and sorted by
/// `(y, x)`. A member with `v = 0` or with `(k/2) v = u` recovers to
/// fewer than two pairs: its other candidates have a zero coordinate.
///
/// # Panics
///
/// Panics if `inst` does not reduce (odd `k` or `k < 4`) or if a
/// recovered pair fails to solve it — either is a caller bug, since
/// `(u, v)` must come from the matching reduced equation.
pub fn recover_xy(u: &BigUint, v: &BigUint, inst: &FormInstance) -> Vec<SolutionPair> {
    assert!(
        inst.k.is_even() && inst.k >= BigUint::from(4u32),
        "recovery needs the reducible case (even k >= 4)",
    );
    let half = &inst.k >> 1u32;
    let mut pairs: Vec<SolutionPair> = recover_raw(u, v, &half)
        .into_iter()
        .map(|(x, y)| SolutionPair::checked(x, y, inst))
        .collect();
    pairs.sort_by(|a, b| a.y.cmp(&b.y).then_with(|| a.x.cmp(&b.x)));
    pairs
}

/// Split off the largest common power of two: `(x, y) =
/// 2^e · (x0, y0)` with `x0, y0` not both even. `(0, 0)` splits to itself.
pub fn descent_split(x: &BigUint, y: &BigUint) -> (BigUint, BigUint, u32) {
    let e = match (x.trailing_zeros(), y.trailing_zeros()) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => 0,
    } as u32;
    (x >> e, y >> e, e)
}

/// Replace a solution by its companion root in `x`: `(x, y) -> (y, k y - x)`.
/// Form values are preserved; coordinates may go negative, which is how
/// the walk signals that a base pair has been passed.
pub fn vieta_jump(x: &BigInt, y: &BigInt, k: &BigInt) -> (BigInt, BigInt) {
    (y.clone(), k * y - x)
}

/// Enumeration bound that provably contains every base pair, the least
/// witness, and the least both-odd witness of `inst`.
pub fn default_bound(inst: &FormInstance) -> BigUint {
    let flat = BigUint::one() << (inst.n + 2);
    let scaled = &inst.k << (inst.n / 2 + 2);
    flat.max(scaled)
}

/// The base pairs of the Vieta walk for `k >= 3`: ordered solutions
/// `(x, y)`, `x >= y >= 1`, whose descent `(y, k y - x)` leaves the
/// ordered positive region — the new coordinate `k y - x` drops to zero
/// or below, or fails to come in under `y`. Every positive solution
/// descends to exactly one of these, so solvability is equivalent to
/// this list being non-empty.
///
/// A base row satisfies `y^2 <= 2^n` for the `+` sign and
/// `(k - 2) y^2 <= 2^(n+1)` for `-` (slightly generous, so the literal
/// base test below stays the single source of truth); within a row the
/// candidates are the roots `x = (k y ± r) / 2` of the fixed-`y`
/// quadratic, `r^2 = (k^2 - 4) y^2 + 4 · rhs`.
///
/// # Panics
///
/// Panics for `k < 3`, where the walk does not ascend.
pub fn vieta_base_solutions(inst: &FormInstance) -> Vec<SolutionPair> {
    assert!(inst.k >= BigUint::from(3u32), "the Vieta walk needs k >= 3");
    let k_int = BigInt::from(inst.k.clone());
    let disc_coeff = &k_int * &k_int - 4u32;
    let four_rhs = inst.rhs() << 2u32;
    let pow = BigUint::one() << inst.n;
    let row_cap_minus = &pow << 1u32;
    let k_less_two = &inst.k - 2u32;

    let mut out = Vec::new();
    let mut y = BigUint::one();
    loop {
        let in_box = match inst.sign {
            FormSign::Plus => &y * &y <= pow,
            FormSign::Minus => &k_less_two * &y * &y <= row_cap_minus,
        };
        if !in_box {
            break;
        }
        let y_int = BigInt::from(y.clone());
        let disc = &disc_coeff * &y_int * &y_int + &four_rhs;
        if let Some(disc) = disc.to_biguint() {
            if let Some(r) = as_square(&disc) {
                let r = BigInt::from(r);
                let ky = &k_int * &y_int;
                let mut roots = vec![&ky + &r];
                if !r.is_zero() {
                    roots.push(&ky - &r);
                }
                for doubled in roots {
                    if !doubled.is_positive() {
                        continue;
                    }
                    debug_assert!(doubled.is_even(), "root parity broke for {inst}");
                    let x = doubled >> 1u32;
                    if x < y_int {
                        continue;
                    }
                    if x >= ky || &x + &y_int < ky {
                        // descent would leave the positive quadrant (k y - x
                        // <= 0) or fail to drop under y: a base
                        let x = x.to_biguint().expect("positive by the guard above");
                        out.push(SolutionPair::checked(x, y.clone(), inst));
                    }
                }
            }
        }
        y += 1u32;
    }
    out.sort_by(|a, b| a.y.cmp(&b.y).then_with(|| a.x.cmp(&b.x)));
    out
}

/// Every positive solution of `inst` with both coordinates at most
/// `bound`, by ascending the Vieta walk from each base pair. Mirrors
/// included, sorted by `(y, x)`. Exhaustive because the walk's descent
/// sends any solution to some base pair while strictly shrinking the
/// larger coordinate.
///
/// # Panics
///
/// Panics for `k < 3`, as [`vieta_base_solutions`] does.
pub fn vieta_path_solutions(inst: &FormInstance, bound: &BigUint) -> Vec<SolutionPair> {
    let mut raw: Vec<(BigUint, BigUint)> = Vec::new();
    for base in vieta_base_solutions(inst) {
        let (mut hi, mut lo) = (base.x, base.y);
        while hi <= *bound {
            raw.push((hi.clone(), lo.clone()));
            raw.push((lo.clone(), hi.clone()));
            // k·hi >= 3·hi > lo, so the subtraction cannot underflow
            let next = &inst.k * &hi - &lo;
            lo = std::mem::replace(&mut hi, next);
        }
    }
    raw.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    raw.dedup();
    raw.into_iter().map(|(x, y)| SolutionPair::checked(x, y, inst)).collect()
}

/// Every positive solution of `inst` (even `k >= 4`) up to `bound` via
/// the class ladders, together with the class sets of all descent levels.
///
/// Level `e` holds the classes of `u^2 - d v^2 = ±2^(n-2e)`; its ladder
/// members that are *primitive* (not both coordinates even) are recovered
/// to form solutions and scaled by `2^e`. Primitivity keeps the levels
/// disjoint, and every solution splits uniquely as `2^e` times a
/// primitive one, so the union over levels is exhaustive. The levels are
/// always computed in full — solvability is read off level 0 without
/// reference to `bound`.
///
/// # Errors
///
/// [`Error::UnreducibleK`] for odd `k` or `k < 4`.
pub fn pell_path_solutions(
    inst: &FormInstance,
    bound: &BigUint,
) -> Result<(Vec<SolutionPair>, Vec<ClassLevel>), Error> {
    let (d, _) = reduce_to_gpell(inst)?;
    let unit = pell_fundamental(&d)?;
    let half = &inst.k >> 1u32;

    let mut levels = Vec::new();
    let mut raw: Vec<(BigUint, BigUint)> = Vec::new();
    for e in 0..=inst.n / 2 {
        let level_rhs = inst.sign.signum() << (inst.n - 2 * e);
        let classes = class_reps(&d, &level_rhs)?;
        if BigUint::one() << e <= *bound {
            let sub_bound = bound >> e;
            for rep in &classes.reps {
                for (u, v) in class_solutions(rep, &unit, &sub_bound) {
                    if u.is_even() && v.is_even() {
                        continue; // imprimitive: belongs to a deeper level
                    }
                    for (x, y) in recover_raw(&u, &v, &half) {
                        if x <= sub_bound {
                            raw.push((&x << e, &y << e));
                            raw.push((&y << e, &x << e));
                        }
                    }
                }
            }
        }
        levels.push(ClassLevel { scale_log2: e, classes });
    }
    raw.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    raw.dedup();
    let solutions = raw.into_iter().map(|(x, y)| SolutionPair::checked(x, y, inst)).collect();
    Ok((solutions, levels))
}

/// Full finite list of positive solutions for the positive definite
/// cases `k <= 1`, ignoring any bound.
fn definite_solutions(inst: &FormInstance) -> Vec<SolutionPair> {
    debug_assert!(inst.k <= BigUint::one());
    if inst.sign == FormSign::Minus {
        // x^2 - k x y + y^2 >= 0 for k <= 1: never a negative power
        return Vec::new();
    }
    let pow = BigUint::one() << inst.n;
    let mut out = Vec::new();
    if inst.k.is_zero() {
        // x^2 + y^2 = 2^n with y >= 1, so x^2 stays strictly below 2^n
        let mut x = BigUint::one();
        while &x * &x < pow {
            if let Some(y) = as_square(&(&pow - &x * &x)) {
                out.push(SolutionPair::checked(x.clone(), y, inst));
            }
            x += 1u32;
        }
    } else {
        // x^2 - x y + y^2 = 2^n: for fixed x the discriminant in y is
        // 2^(n+2) - 3 x^2, and the lower root (x - r) / 2 is positive
        // only for x > r
        let cap = &pow << 2u32;
        let mut x = BigUint::one();
        while &x * &x * 3u32 <= cap {
            if let Some(r) = as_square(&(&cap - &x * &x * 3u32)) {
                debug_assert_eq!(r.is_odd(), x.is_odd());
                for y2 in [Some(&x + &r), (x > r).then(|| &x - &r)].into_iter().flatten() {
                    out.push(SolutionPair::checked(x.clone(), &y2 >> 1u32, inst));
                }
            }
            x += 1u32;
        }
    }
    out.sort_by(|a, b| a.y.cmp(&b.y).then_with(|| a.x.cmp(&b.x)));
    out.dedup();
    out
}

/// Exact test for a both-odd solution, independent of any bound.
///
/// * `k <= 1`: scan the finite solution list.
/// * `k = 2`: solutions are `x = y ± 2^(n/2)`; both-odd ones exist
///   exactly when the shift is a positive even number.
/// * odd `k >= 3`: mod 2 the form is `x^2 + x y + y^2`, which is odd
///   unless both coordinates are even — so `n >= 1` forbids both-odd
///   (and mixed) solutions outright, while for `n = 0` any solution
///   chain alternates through a both-odd member.
/// * even `k >= 4`: a Vieta step swaps coordinate parities, so the
///   parity class is constant along chains and a both-odd solution
///   exists exactly when some base pair is both-odd.
pub fn odd_solution_exists(inst: &FormInstance) -> bool {
    if inst.k <= BigUint::one() {
        return definite_solutions(inst).iter().any(|s| s.parity == Parity::BothOdd);
    }
    if inst.k == BigUint::from(2u32) {
        return inst.sign == FormSign::Plus && inst.n >= 2 && inst.n.is_multiple_of(2);
    }
    if inst.k.is_odd() {
        return inst.n == 0 && !vieta_base_solutions(inst).is_empty();
    }
    vieta_base_solutions(inst).iter().any(|b| b.parity == Parity::BothOdd)
}

/// Solve one instance: exact status, all positive solutions up to
/// `bound` (mirrors included, sorted by `(y, x)`), and generators
/// describing the full set where one exists.
///
/// For even `k >= 4` the class-ladder and Vieta enumerations both run
/// and must agree exactly; a mismatch panics, making every call a
/// differential test of the two mechanisms.
pub fn solve_all(inst: &FormInstance, bound: &BigUint) -> SolveOutcome {
    let two = BigUint::from(2u32);
    if inst.k < two {
        let full = definite_solutions(inst);
        let status = if full.is_empty() { SolveStatus::Empty } else { SolveStatus::Finite };
        let solutions = full.into_iter().filter(|s| s.x <= *bound && s.y <= *bound).collect();
        return SolveOutcome { status, solutions, generators: None };
    }

    if inst.k == two {
        // (x - y)^2 = ±2^n
        if inst.sign == FormSign::Minus || inst.n % 2 == 1 {
            return SolveOutcome {
                status: SolveStatus::Empty,
                solutions: Vec::new(),
                generators: None,
            };
        }
        let step = BigUint::one() << (inst.n / 2);
        let mut raw = Vec::new();
        // positive solutions only, so the progression starts at y = 1
        let mut y = BigUint::one();
        while &y + &step <= *bound {
            raw.push((&y + &step, y.clone()));
            raw.push((y.clone(), &y + &step));
            y += 1u32;
        }
        raw.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        let solutions = raw.into_iter().map(|(x, y)| SolutionPair::checked(x, y, inst)).collect();
        return SolveOutcome {
            status: SolveStatus::Infinite,
            solutions,
            generators: Some(Generators::Shift { step }),
        };
    }

    if inst.k.is_odd() {
        let base = vieta_base_solutions(inst);
        let status = if base.is_empty() { SolveStatus::Empty } else { SolveStatus::Infinite };
        let solutions = vieta_path_solutions(inst, bound);
        return SolveOutcome {
            status,
            solutions,
            generators: Some(Generators::VietaBase { base }),
        };
    }

    let (solutions, levels) = pell_path_solutions(inst, bound).expect("even k >= 4 always reduces");
    let cross_check = vieta_path_solutions(inst, bound);
    assert_eq!(solutions, cross_check, "class-ladder and Vieta enumerations disagree for {inst}",);
    // Any solution at all is itself a ladder member of level 0, so the
    // equation is solvable exactly when level 0 has classes.
    let status = if levels[0].classes.reps.is_empty() {
        debug_assert!(levels.iter().all(|l| l.classes.reps.is_empty()));
        SolveStatus::Empty
    } else {
        SolveStatus::Infinite
    };
    let unit = levels[0].classes.unit.clone();
    SolveOutcome { status, solutions, generators: Some(Generators::Classes { unit, levels }) }
}

/// Survey `k = 1 ..= k_max` at fixed `n` and sign: exact solvability,
/// exact both-odd existence, and the least witness (minimal in the
/// `(max, min)` order). Rows are computed in parallel.
pub fn solvable_k_set(n: u32, sign: FormSign, k_max: u64) -> KScan {
    let rows: Vec<KRow> = (1..=k_max)
        .into_par_iter()
        .map(|k| {
            let inst = FormInstance::new(BigUint::from(k), n, sign);
            let outcome = solve_all(&inst, &default_bound(&inst));
            let solvable = outcome.status != SolveStatus::Empty;
            let min_witness = outcome.solutions.iter().map(|s| s.ordered()).min();
            // default_bound contains the least witness whenever one exists
            assert_eq!(solvable, min_witness.is_some(), "witness bound failed for k = {k}");
            KRow { k, solvable, odd_solution: odd_solution_exists(&inst), min_witness }
        })
        .collect();
    KScan { n, sign, k_max, rows }
}
