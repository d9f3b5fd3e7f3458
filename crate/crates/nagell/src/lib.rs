//! Exact solvers for the quadratic family `x^2 - kxy + y^2 = ±2^n` and the
//! generalized Pell equations underneath it.
//!
//! Everything here is integer-exact: square roots are floor square roots
//! compared by squaring, solvability decisions come from complete class
//! enumeration (Nagell's bounds) or Vieta base-pair enumeration, and no
//! floating point is involved anywhere.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`] — integer kernel: `isqrt`, perfect-square tests, Legendre
//!   symbols, small primes.
//! * [`pell`] — the classical Pell equation `x^2 - d y^2 = 1` via continued
//!   fractions, with the `d = m^2 - 1` fast path.
//! * [`gpell`] — the generalized equation `u^2 - d v^2 = N`: class
//!   representatives inside Nagell's fundamental-solution bounds and
//!   exhaustive solution generation per class.
//! * [`form`] — the binary form `x^2 - kxy + y^2 = ±2^n`: reduction to a
//!   generalized Pell equation for even `k`, parity descent, Vieta jumping,
//!   and the complete solver [`form::solve_all`].
//! * [`harness`] — mechanical checks of solvability-threshold claims
//!   (bounds of the shape `k ≤ 2^n ± 2`, parity and quadratic-residue
//!   constraints on solvable `k`) over finite grids, with JSON/CSV reports.
//!
//! The `examples/` directory demonstrates each capability as a runnable
//! program; the `nagell` binary exposes the same operations as subcommands
//! (`pell`, `gpell`, `solve`, `tables`, `verify`).

pub mod arith;
pub mod form;
pub mod gpell;
pub mod harness;
pub mod pell;
pub mod report;

use num_bigint::{BigInt, BigUint};

/// Errors surfaced by the solver APIs.
///
/// Precondition violations that indicate caller bugs (mismatched `d` between
/// a class and its unit, `k < 3` handed to the Vieta enumerator) panic
/// instead; these variants cover data-dependent failures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Pell theory needs `d >= 2`.
    #[error("d must be at least 2, got {0}")]
    DiscriminantTooSmall(BigUint),
    /// `x^2 - d y^2 = 1` has no nontrivial solutions when `d` is a perfect
    /// square.
    #[error("d must not be a perfect square, got {0}")]
    SquareDiscriminant(BigUint),
    /// Legendre symbols are defined only for odd prime moduli.
    #[error("modulus must be an odd prime, got {0}")]
    NotAnOddPrime(BigUint),
    /// The generalized Pell right-hand side must be nonzero.
    #[error("right-hand side must be nonzero")]
    ZeroRhs,
    /// A pair handed to a class operation does not solve its equation.
    #[error("({u}, {v}) does not solve u^2 - {d} v^2 = {rhs}")]
    NotASolution { u: BigInt, v: BigInt, d: BigUint, rhs: BigInt },
    /// Reduction to a generalized Pell equation requires even `k >= 4`.
    #[error("reduction requires even k >= 4, got k = {0}")]
    UnreducibleK(BigUint),
}

pub use form::{
    default_bound, solvable_k_set, solve_all, FormInstance, FormSign, Generators, KScan, Parity,
    SolutionPair, SolveOutcome, SolveStatus,
};
pub use gpell::{
    class_reps, class_solutions, nagell_bounds, same_class, solve_gpell, ClassRep, ClassSet,
    NagellBounds,
};
pub use harness::{
    build_tables, check_sharpness, check_thm31, check_thm32, check_thm33, SolvabilityTable,
    TheoremCheck, TheoremId, Verdict,
};
pub use pell::{cf_expand, pell_fundamental, pell_solutions, PellFundamental};
pub use report::{
    checks_output, gpell_output, pell_output, solve_output, table_output, verify_report_json,
    OutputFormat,
};
