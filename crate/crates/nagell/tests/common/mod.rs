//! Brute-force oracles for the integration suite.
//!
//! Everything here is deliberately primitive: plain loops and `i128`/`u128`
//! arithmetic, sharing no code with the library under test. The form scan
//! uses three loop shortcuts, each justified inline by a monotonicity
//! argument, because the undamped double loop is too slow for the ranges
//! the acceptance gate covers; every candidate not provably excluded is
//! still tested one by one.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// Floor square root by integer Newton iteration from a power-of-two seed
/// above the root. Exact on the full `u128` range.
pub fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let shift = (128 - n.leading_zeros()).div_ceil(2);
    let mut x = 1u128 << shift; // x >= sqrt(n)
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// `Some(r)` with `r * r == n`, if `n` is a perfect square.
pub fn as_square_u128(n: u128) -> Option<u128> {
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}

/// Every positive `(x, y)` with `x^2 - k x y + y^2 = ±2^n` and both
/// coordinates at most `bound`, sorted by `(y, x)`, mirrors included.
///
/// The row scan for fixed `y` walks `x` upward over the ordered region
/// `x >= y` and tests every candidate, except where the parabola
/// `F(x) = x^2 - (k y) x + y^2` provably stays off the target:
///
/// * start: if `F(y, y) < rhs`, every `x` from `y` up to the vertex
///   `⌊k y / 2⌋` has `F(x) <= F(y, y) < rhs` (the step `F(x+1) - F(x) =
///   2x + 1 - k y` is negative there), so the scan starts at the vertex;
/// * descending skip: the same argument lets `x` jump from any point with
///   `F(x) < rhs` on the descending branch straight to the vertex;
/// * ascending stop: once `2x >= k y` the steps are positive and growing,
///   so `F > rhs` there means no further solution in the row;
/// * row stop: for `k >= 3` the start point is the vertex as soon as
///   `F(y, y) < rhs` (both sides of that comparison are monotone in `y`),
///   so when the vertex passes `bound` every later row starts past the
///   bound too and the outer loop ends.
pub fn naive_form_solutions(k: u64, n: u32, plus: bool, bound: u64) -> Vec<(u64, u64)> {
    assert!(n < 64 && bound < 1 << 20, "i128 headroom check");
    let rhs: i128 = if plus { 1 << n } else { -(1i128 << n) };
    let k = i128::from(k);
    let bound = i128::from(bound);
    let f = |x: i128, y: i128| x * x - k * x * y + y * y;

    let mut found = Vec::new();
    let mut y: i128 = 1;
    while y <= bound {
        let vertex = k * y / 2;
        let drops_under = f(y, y) < rhs;
        if k >= 3 && drops_under && vertex > bound {
            break;
        }
        let mut x = if drops_under { vertex.max(y) } else { y };
        while x <= bound {
            let value = f(x, y);
            if value == rhs {
                found.push((x as u64, y as u64));
                if x != y {
                    found.push((y as u64, x as u64));
                }
            }
            if 2 * x >= k * y && value > rhs {
                break;
            }
            if 2 * x < k * y && value < rhs {
                x = vertex.max(x + 1);
            } else {
                x += 1;
            }
        }
        y += 1;
    }
    found.sort_by_key(|&(x, y)| (y, x));
    found
}

/// Minimal solution of `x^2 - d y^2 = 1` by direct scan over `y` up to
/// `y_cap`; `None` when the fundamental solution lies beyond the cap.
pub fn pell_by_scan(d: u64, y_cap: u64) -> Option<(u128, u128)> {
    let d = u128::from(d);
    for y in 1..=u128::from(y_cap) {
        if let Some(x) = as_square_u128(d * y * y + 1) {
            return Some((x, y));
        }
    }
    None
}

/// Minimal solution of `x^2 - d y^2 = 1` by the chakravala method — an
/// independent algorithm (greedy composition of triples `a^2 - d b^2 = m`)
/// that classically terminates at the fundamental solution. Unlike the
/// direct scan it stays fast when the fundamental solution is astronomical
/// (`d = 661` and friends); the acceptance suite cross-checks it against
/// the direct scan wherever the scan can reach.
pub fn pell_by_chakravala(d: u64) -> (BigUint, BigUint) {
    assert!(!is_square_u64(d) && d >= 2, "no nontrivial solutions for square d");
    let sqrt_d = isqrt_u128(u128::from(d)) as i128;
    let d_big = BigInt::from(d);

    // start from the best single square: a^2 - d = m with |m| minimal
    let start = if (sqrt_d + 1) * (sqrt_d + 1) - i128::from(d) < i128::from(d) - sqrt_d * sqrt_d {
        sqrt_d + 1
    } else {
        sqrt_d
    };
    let mut a = BigInt::from(start);
    let mut b = BigInt::one();
    let mut m = BigInt::from(start * start - i128::from(d));

    for _ in 0..100_000 {
        if m.is_one() {
            let a = a.to_biguint().expect("a stays positive");
            let b = b.to_biguint().expect("b stays positive");
            return (a, b);
        }
        let m_abs = m.abs();
        // choose t > 0 with a + b t ≡ 0 (mod |m|) and |t^2 - d| minimal;
        // any window of |m| consecutive positive integers contains a valid
        // t, so scanning up to sqrt(d) + |m| always finds the best one
        let window = sqrt_d + i128::try_from(&m_abs).expect("|m| stays small");
        let mut best: Option<(BigInt, BigInt)> = None;
        for t in 1..=window {
            let t = BigInt::from(t);
            if ((&a + &b * &t) % &m_abs).is_zero() {
                let badness = (&t * &t - &d_big).abs();
                if best.as_ref().is_none_or(|(_, best_bad)| badness < *best_bad) {
                    best = Some((t, badness));
                }
            }
        }
        let (t, _) = best.expect("a residue class always has a member in the window");
        let next_a = (&a * &t + &d_big * &b) / &m_abs;
        let next_b = (&a + &b * &t) / &m_abs;
        let next_m = (&t * &t - &d_big) / &m;
        (a, b, m) = (next_a, next_b, next_m);
    }
    panic!("chakravala failed to terminate for d = {d}");
}

fn is_square_u64(n: u64) -> bool {
    as_square_u128(u128::from(n)).is_some()
}

/// Every `(u, v)` with `u^2 - d v^2 = rhs`, `u >= 0`, `0 <= v <= v_limit`,
/// by scanning `v` and testing `rhs + d v^2` for squareness.
pub fn naive_gpell_solutions(d: u64, rhs: i64, v_limit: u64) -> Vec<(u128, u128)> {
    let d = i128::from(d);
    let rhs = i128::from(rhs);
    let mut found = Vec::new();
    for v in 0..=i128::from(v_limit) {
        let target = rhs + d * v * v;
        if target < 0 {
            continue;
        }
        if let Some(u) = as_square_u128(target as u128) {
            found.push((u, v as u128));
        }
    }
    found
}

/// `(x, y)` as plain machine words, for comparing solver output against
/// the oracles.
pub fn pair_u64(x: &BigUint, y: &BigUint) -> (u64, u64) {
    let to = |b: &BigUint| u64::try_from(b).expect("fits in u64 at oracle scale");
    (to(x), to(y))
}
