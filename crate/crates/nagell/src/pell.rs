//! The classical Pell equation `x^2 - d y^2 = 1`.
//!
//! The fundamental (least positive) solution comes from the continued
//! fraction of `√d`: with period length `L`, the convergent `p/q` just
//! before the period closes satisfies `p^2 - d q^2 = (-1)^L`, so the
//! fundamental solution is that convergent for even `L` and its square
//! `(p^2 + d q^2, 2pq)` for odd `L`.
//!
//! Discriminants of the shape `d = m^2 - 1` (every reduced instance of the
//! form solver has one) short-circuit to `(m, 1)`, which the continued
//! fraction path provably agrees with: `√(m^2-1) = [m-1; 1, 2(m-1)]` has
//! period 2 and convergent `m/1`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::arith::{as_square, isqrt};
use crate::Error;

/// The least positive solution of `x^2 - d y^2 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellFundamental {
    pub d: BigUint,
    pub x: BigUint,
    pub y: BigUint,
}

fn validate_d(d: &BigUint) -> Result<(), Error> {
    if *d < BigUint::from(2u32) {
        return Err(Error::DiscriminantTooSmall(d.clone()));
    }
    if as_square(d).is_some() {
        return Err(Error::SquareDiscriminant(d.clone()));
    }
    Ok(())
}

/// Continued fraction of `√d` for nonsquare `d >= 2`: returns
/// `(a0, [a1, ..., aL])` where `√d = [a0; a1, ..., aL]` repeats with minimal
/// period `L`.
pub fn cf_expand(d: &BigUint) -> Result<(BigUint, Vec<BigUint>), Error> {
    validate_d(d)?;
    let a0 = isqrt(d);
    // State (m, q) represents the complete quotient (m + √d) / q. The
    // expansion of √d is purely periodic after a0, so the period closes at
    // the first return to the state that produced a1.
    let mut m = a0.clone();
    let mut q = d - &a0 * &a0;
    let start = (m.clone(), q.clone());
    let mut period = Vec::new();
    loop {
        let a = (&a0 + &m) / &q;
        m = &a * &q - &m;
        q = (d - &m * &m) / &q;
        period.push(a);
        if m == start.0 && q == start.1 {
            return Ok((a0, period));
        }
    }
}

/// Fundamental solution by continued fractions alone (no `m^2 - 1`
/// shortcut); kept separate so the shortcut can be tested against it.
fn fundamental_from_cf(d: &BigUint) -> Result<PellFundamental, Error> {
    let (a0, period) = cf_expand(d)?;
    let len = period.len();
    // Convergent of [a0; a1, ..., a_{L-1}].
    let (mut p_prev, mut p) = (BigUint::one(), a0);
    let (mut q_prev, mut q) = (BigUint::zero(), BigUint::one());
    for a in &period[..len - 1] {
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    if len % 2 == 0 {
        Ok(PellFundamental { d: d.clone(), x: p, y: q })
    } else {
        // p^2 - d q^2 = -1; squaring (p + q√d) lands on +1.
        let x = &p * &p + d * &q * &q;
        let y = (&p * &q) << 1u32;
        Ok(PellFundamental { d: d.clone(), x, y })
    }
}

/// Least positive solution of `x^2 - d y^2 = 1` for nonsquare `d >= 2`.
pub fn pell_fundamental(d: &BigUint) -> Result<PellFundamental, Error> {
    validate_d(d)?;
    if let Some(m) = as_square(&(d + 1u32)) {
        // d = m^2 - 1: the fundamental solution is (m, 1).
        return Ok(PellFundamental { d: d.clone(), x: m, y: BigUint::one() });
    }
    fundamental_from_cf(d)
}

/// The first `count` positive solutions, ascending: `(x_{j+1}, y_{j+1}) =
/// (x1 x_j + d y1 y_j, x1 y_j + y1 x_j)`.
pub fn pell_solutions(fund: &PellFundamental, count: usize) -> Vec<(BigUint, BigUint)> {
    let mut out = Vec::with_capacity(count);
    let (mut x, mut y) = (fund.x.clone(), fund.y.clone());
    for _ in 0..count {
        out.push((x.clone(), y.clone()));
        let next_x = &fund.x * &x + &fund.d * &fund.y * &y;
        let next_y = &fund.x * &y + &fund.y * &x;
        x = next_x;
        y = next_y;
    }
    out
}
