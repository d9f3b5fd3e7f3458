//! The generalized Pell equation `u^2 - d v^2 = N` for nonzero `N`.
//!
//! Two solutions are *associated* when `N` divides both `u1 u2 - d v1 v2`
//! and `u1 v2 - u2 v1`; equivalently, their surd values `u + v √d` differ
//! by a unit factor `±(x1 + y1 √d)^j`, where `(x1, y1)` is the fundamental
//! solution of `x^2 - d y^2 = 1`. Association partitions the solutions
//! into finitely many classes.
//!
//! Nagell's strip bounds locate one member of every class: for `N > 0`
//! each class has a member with `0 <= v <= y1 √N / √(2 (x1 + 1))`, and for
//! `N < 0` one with `1 <= v <= y1 √|N| / √(2 (x1 - 1))`. Scanning that
//! strip therefore enumerates the classes ([`class_reps`]), and walking a
//! class upward by unit multiplication ([`class_solutions`]) emits every
//! non-negative member below any ceiling. [`solve_gpell`] combines the
//! two into a complete enumeration.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{as_square, isqrt};
use crate::pell::{pell_fundamental, PellFundamental};
use crate::Error;

/// Search strip for class representatives, with all quantities rounded to
/// the exact integer floor of the real bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NagellBounds {
    /// Smallest `v` a fundamental member can have: `0` for positive `N`,
    /// `1` for negative `N` (where `d v^2 = u^2 + |N| > 0` forces `v > 0`).
    pub v_min: BigUint,
    /// Largest `v` a fundamental member can have.
    pub v_max: BigUint,
    /// Largest `|u|` a fundamental member can have.
    pub u_max: BigUint,
}

/// One class of solutions, named by its strip member of least `v` (ties
/// broken toward non-negative `u`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRep {
    pub d: BigUint,
    pub rhs: BigInt,
    pub u: BigInt,
    pub v: BigUint,
    /// Whether the class coincides with its own conjugate class (the one
    /// carrying `(u, -v)`); true exactly when the class contains `(u, v)`
    /// and `(-u, v)` together, as it always does when `u = 0` or `v = 0`.
    pub ambiguous: bool,
}

/// Complete classification of `u^2 - d v^2 = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSet {
    pub d: BigUint,
    pub rhs: BigInt,
    /// Fundamental unit used for ladder steps and strip bounds.
    pub unit: PellFundamental,
    /// One representative per class, sorted by `(v, u)`. Empty exactly
    /// when the equation has no solutions.
    pub reps: Vec<ClassRep>,
}

/// Strip bounds for `u^2 - d v^2 = rhs` given the fundamental unit of `d`.
///
/// The floors are exact: `v_max` is the largest `v` with
/// `2 (x1 ± 1) v^2 <= y1^2 |rhs|` and `u_max` the largest `u` with
/// `2 u^2 <= (x1 ± 1) |rhs|`, taking `+1` for positive `rhs` and `-1` for
/// negative (integer square root of a floored quotient computes exactly
/// these maxima).
///
/// # Panics
///
/// Panics if `rhs` is zero or `fund` does not belong to `d`.
pub fn nagell_bounds(d: &BigUint, rhs: &BigInt, fund: &PellFundamental) -> NagellBounds {
    assert!(!rhs.is_zero(), "strip bounds need a nonzero right-hand side");
    assert_eq!(&fund.d, d, "fundamental unit belongs to a different discriminant");
    let n_abs = rhs.magnitude();
    let (edge, v_min) = if rhs.is_positive() {
        (&fund.x + 1u32, BigUint::zero())
    } else {
        (&fund.x - 1u32, BigUint::from(1u32))
    };
    let v_max = isqrt(&(&fund.y * &fund.y * n_abs / (&edge << 1u32)));
    let u_max = isqrt(&((&edge * n_abs) >> 1u32));
    NagellBounds { v_min, v_max, u_max }
}

/// Divisibility form of association; callers have already checked that
/// both pairs solve the equation.
fn associated(a: (&BigInt, &BigInt), b: (&BigInt, &BigInt), d: &BigInt, rhs: &BigInt) -> bool {
    let cross_u = a.0 * b.0 - d * a.1 * b.1;
    let cross_v = a.0 * b.1 - b.0 * a.1;
    cross_u.is_multiple_of(rhs) && cross_v.is_multiple_of(rhs)
}

/// Whether two solutions of `u^2 - d v^2 = rhs` lie in the same class.
///
/// # Errors
///
/// [`Error::ZeroRhs`] when `rhs = 0`, and [`Error::NotASolution`] when
/// either pair fails to solve the equation (association is only an
/// equivalence relation on actual solutions).
pub fn same_class(
    a: (&BigInt, &BigInt),
    b: (&BigInt, &BigInt),
    d: &BigUint,
    rhs: &BigInt,
) -> Result<bool, Error> {
    if rhs.is_zero() {
        return Err(Error::ZeroRhs);
    }
    let d_int = BigInt::from(d.clone());
    for (u, v) in [a, b] {
        if u * u - &d_int * v * v != *rhs {
            return Err(Error::NotASolution {
                u: u.clone(),
                v: v.clone(),
                d: d.clone(),
                rhs: rhs.clone(),
            });
        }
    }
    Ok(associated(a, b, &d_int, rhs))
}

/// One representative per solution class of `u^2 - d v^2 = rhs`.
///
/// Scans the Nagell strip; every `v` there whose `rhs + d v^2` is a
/// perfect square `u^2` contributes the candidates `(±u, v)`, and the
/// candidates are merged into classes by association. An empty `reps`
/// list proves the equation unsolvable.
///
/// # Errors
///
/// [`Error::ZeroRhs`] when `rhs = 0`; otherwise whatever
/// [`pell_fundamental`] reports for a bad discriminant.
pub fn class_reps(d: &BigUint, rhs: &BigInt) -> Result<ClassSet, Error> {
    if rhs.is_zero() {
        return Err(Error::ZeroRhs);
    }
    let fund = pell_fundamental(d)?;
    let bounds = nagell_bounds(d, rhs, &fund);
    let d_int = BigInt::from(d.clone());

    // Candidates arrive in (v ascending, then +u before -u) order, so the
    // first member of each group is the canonical representative.
    let mut groups: Vec<Vec<(BigInt, BigInt)>> = Vec::new();
    let mut v = bounds.v_min.clone();
    while v <= bounds.v_max {
        let v_int = BigInt::from(v.clone());
        let w = rhs + &d_int * &v_int * &v_int;
        if let Some(w_abs) = w.to_biguint() {
            if let Some(u) = as_square(&w_abs) {
                let u_int = BigInt::from(u);
                let mut candidates = vec![(u_int.clone(), v_int.clone())];
                if !u_int.is_zero() {
                    candidates.push((-u_int, v_int));
                }
                for cand in candidates {
                    match groups
                        .iter_mut()
                        .find(|g| associated((&g[0].0, &g[0].1), (&cand.0, &cand.1), &d_int, rhs))
                    {
                        Some(group) => group.push(cand),
                        None => groups.push(vec![cand]),
                    }
                }
            }
        }
        v += 1u32;
    }

    let mut reps: Vec<ClassRep> = groups
        .iter()
        .map(|group| {
            let (u, v) = group[0].clone();
            let ambiguous = group.iter().any(|(a, b)| group.contains(&(-a, b.clone())));
            ClassRep {
                d: d.clone(),
                rhs: rhs.clone(),
                u,
                v: v.to_biguint().expect("strip scan only visits v >= 0"),
                ambiguous,
            }
        })
        .collect();
    reps.sort_by(|a, b| a.v.cmp(&b.v).then_with(|| a.u.cmp(&b.u)));
    Ok(ClassSet { d: d.clone(), rhs: rhs.clone(), unit: fund, reps })
}

/// All non-negative members `(u, v)` of one class with `v <= v_limit`,
/// ascending.
///
/// Multiplication by the unit scales a member's surd value `u + v √d` by
/// `ε = x1 + y1 √d > 1`, and a member has both coordinates of one sign
/// exactly when `|u + v √d| >= √|rhs|`. The non-negative members of a
/// class therefore form a single geometric tail: climb from the
/// representative until the signs agree, back down to the first member
/// where they still do, and emit upward from there. Any member of the
/// class may serve as `rep`, not just the strip representative.
///
/// # Panics
///
/// Panics if `rep` and `fund` disagree about the discriminant; a `rep`
/// that does not actually solve its equation is a caller bug and is
/// caught by a debug assertion.
pub fn class_solutions(
    rep: &ClassRep,
    fund: &PellFundamental,
    v_limit: &BigUint,
) -> Vec<(BigUint, BigUint)> {
    assert_eq!(rep.d, fund.d, "class representative and unit must share a discriminant");
    let d_int = BigInt::from(rep.d.clone());
    let x1 = BigInt::from(fund.x.clone());
    let y1 = BigInt::from(fund.y.clone());
    let climb = |u: &BigInt, v: &BigInt| (&x1 * u + &d_int * &y1 * v, &x1 * v + &y1 * u);
    let descend = |u: &BigInt, v: &BigInt| (&x1 * u - &d_int * &y1 * v, &x1 * v - &y1 * u);
    let settled = |u: &BigInt, v: &BigInt| {
        (!u.is_negative() && !v.is_negative()) || (!u.is_positive() && !v.is_positive())
    };

    let mut cur = (rep.u.clone(), BigInt::from(rep.v.clone()));
    debug_assert_eq!(
        &cur.0 * &cur.0 - &d_int * &cur.1 * &cur.1,
        rep.rhs,
        "representative does not solve its own equation",
    );
    while !settled(&cur.0, &cur.1) {
        cur = climb(&cur.0, &cur.1);
    }
    loop {
        let prev = descend(&cur.0, &cur.1);
        if settled(&prev.0, &prev.1) {
            cur = prev;
        } else {
            break;
        }
    }
    if cur.0.is_negative() || cur.1.is_negative() {
        cur = (-cur.0, -cur.1);
    }

    let v_limit = BigInt::from(v_limit.clone());
    let mut out = Vec::new();
    while cur.1 <= v_limit {
        out.push((
            cur.0.to_biguint().expect("tail members are non-negative"),
            cur.1.to_biguint().expect("tail members are non-negative"),
        ));
        cur = climb(&cur.0, &cur.1);
    }
    out
}

/// Every non-negative solution of `u^2 - d v^2 = rhs` with `v <= v_limit`,
/// sorted by `(v, u)`.
///
/// # Errors
///
/// Same conditions as [`class_reps`].
pub fn solve_gpell(
    d: &BigUint,
    rhs: &BigInt,
    v_limit: &BigUint,
) -> Result<Vec<(BigUint, BigUint)>, Error> {
    let set = class_reps(d, rhs)?;
    let mut all = Vec::new();
    for rep in &set.reps {
        all.extend(class_solutions(rep, &set.unit, v_limit));
    }
    all.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    all.dedup();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn pair(u: u64, v: u64) -> (BigUint, BigUint) {
        (big(u), big(v))
    }

    fn bounds(d: u64, rhs: i64) -> NagellBounds {
        let d = big(d);
        let fund = pell_fundamental(&d).unwrap();
        nagell_bounds(&d, &int(rhs), &fund)
    }

    fn reps(d: u64, rhs: i64) -> ClassSet {
        class_reps(&big(d), &int(rhs)).unwrap()
    }

    fn rep_of(d: u64, rhs: i64, u: i64, v: u64) -> ClassRep {
        ClassRep { d: big(d), rhs: int(rhs), u: int(u), v: big(v), ambiguous: false }
    }

    /// Independent oracle: every non-negative solution with `v <= v_limit`
    /// by direct scan. Small inputs only, so plain u64 arithmetic works.
    fn scan_solutions(d: u64, rhs: i64, v_limit: u64) -> Vec<(BigUint, BigUint)> {
        let mut out = Vec::new();
        for v in 0..=v_limit {
            let w = rhs + (d * v * v) as i64;
            if w < 0 {
                continue;
            }
            let u = (w as f64).sqrt() as u64;
            for cand in [u.saturating_sub(1), u, u + 1] {
                if (cand * cand) as i64 == w {
                    out.push(pair(cand, v));
                    break;
                }
            }
        }
        out
    }

    #[test]
    fn bounds_match_worked_examples() {
        assert_eq!(bounds(8, 8), NagellBounds { v_min: big(0), v_max: big(1), u_max: big(4) });
        assert_eq!(bounds(3, 8), NagellBounds { v_min: big(0), v_max: big(1), u_max: big(3) });
        assert_eq!(bounds(8, -8), NagellBounds { v_min: big(1), v_max: big(1), u_max: big(2) });
    }

    #[test]
    fn reps_match_worked_examples() {
        let set = reps(8, 8);
        assert_eq!(set.unit, pell_fundamental(&big(8)).unwrap());
        assert_eq!(set.reps.len(), 1);
        assert_eq!((&set.reps[0].u, &set.reps[0].v), (&int(4), &big(1)));
        assert!(set.reps[0].ambiguous);

        assert!(reps(3, 8).reps.is_empty());

        let set = reps(8, 16);
        assert_eq!(set.reps.len(), 1);
        assert_eq!((&set.reps[0].u, &set.reps[0].v), (&int(4), &big(0)));
        assert!(set.reps[0].ambiguous, "a v = 0 member is its own conjugate");

        let set = reps(8, -8);
        assert_eq!(set.reps.len(), 1);
        assert_eq!((&set.reps[0].u, &set.reps[0].v), (&int(0), &big(1)));
        assert!(set.reps[0].ambiguous, "a u = 0 member is its own conjugate");
    }

    #[test]
    fn conjugate_classes_stay_separate() {
        // u^2 - 3 v^2 = 13 splits into a conjugate pair of classes whose
        // ladders are disjoint and together cover every solution.
        let set = reps(3, 13);
        assert_eq!(set.reps.len(), 2);
        assert_eq!((&set.reps[0].u, &set.reps[0].v), (&int(-4), &big(1)));
        assert_eq!((&set.reps[1].u, &set.reps[1].v), (&int(4), &big(1)));
        assert!(!set.reps[0].ambiguous);
        assert!(!set.reps[1].ambiguous);

        let limit = big(30);
        let lo = class_solutions(&set.reps[0], &set.unit, &limit);
        let hi = class_solutions(&set.reps[1], &set.unit, &limit);
        assert_eq!(lo, vec![pair(5, 2), pair(16, 9)]);
        assert_eq!(hi, vec![pair(4, 1), pair(11, 6), pair(40, 23)]);
    }

    #[test]
    fn association_worked_examples() {
        let yes = same_class((&int(4), &int(1)), (&int(20), &int(7)), &big(8), &int(8));
        assert_eq!(yes, Ok(true));
        let no = same_class((&int(4), &int(1)), (&int(-4), &int(1)), &big(3), &int(13));
        assert_eq!(no, Ok(false));
    }

    #[test]
    fn association_rejects_non_solutions() {
        assert_eq!(
            same_class((&int(3), &int(1)), (&int(4), &int(1)), &big(8), &int(8)),
            Err(Error::NotASolution { u: int(3), v: int(1), d: big(8), rhs: int(8) })
        );
        assert_eq!(
            same_class((&int(1), &int(1)), (&int(1), &int(1)), &big(8), &int(0)),
            Err(Error::ZeroRhs)
        );
    }

    #[test]
    fn association_is_an_equivalence() {
        for (d, rhs) in [(3i64, 13i64), (2, 49), (8, 8)] {
            let mut members = Vec::new();
            for (u, v) in scan_solutions(d as u64, rhs, 25) {
                let (u, v) = (BigInt::from(u), BigInt::from(v));
                members.push((u.clone(), v.clone()));
                if !u.is_zero() {
                    members.push((-u, v));
                }
            }
            let d = big(d as u64);
            let rhs = int(rhs);
            let related = |a: &(BigInt, BigInt), b: &(BigInt, BigInt)| {
                same_class((&a.0, &a.1), (&b.0, &b.1), &d, &rhs).unwrap()
            };
            for a in &members {
                assert!(related(a, a));
                for b in &members {
                    assert_eq!(related(a, b), related(b, a));
                    for c in &members {
                        if related(a, b) && related(b, c) {
                            assert!(related(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ladder_neighbours_are_associated() {
        for (d, rhs) in [(8i64, 8i64), (3, 13), (6, 3), (2, -1), (8, -8)] {
            let set = reps(d as u64, rhs);
            assert!(!set.reps.is_empty(), "d = {d}, rhs = {rhs}");
            for rep in &set.reps {
                let ladder = class_solutions(rep, &set.unit, &big(10_000));
                assert!(ladder.len() >= 2);
                for w in ladder.windows(2) {
                    let a = (BigInt::from(w[0].0.clone()), BigInt::from(w[0].1.clone()));
                    let b = (BigInt::from(w[1].0.clone()), BigInt::from(w[1].1.clone()));
                    let d = big(d as u64);
                    assert_eq!(same_class((&a.0, &a.1), (&b.0, &b.1), &d, &int(rhs)), Ok(true));
                }
            }
        }
    }

    #[test]
    fn ladder_matches_worked_examples() {
        let f8 = pell_fundamental(&big(8)).unwrap();
        assert_eq!(
            class_solutions(&rep_of(8, 8, 4, 1), &f8, &big(41)),
            vec![pair(4, 1), pair(20, 7), pair(116, 41)]
        );
        assert_eq!(
            class_solutions(&rep_of(8, 16, 4, 0), &f8, &big(10)),
            vec![pair(4, 0), pair(12, 4)]
        );
        assert_eq!(
            class_solutions(&rep_of(8, -8, 0, 1), &f8, &big(16)),
            vec![pair(0, 1), pair(8, 3)]
        );
    }

    #[test]
    fn ladder_start_point_does_not_matter() {
        // (20, 7) sits two rungs up the class of (4, 1); the walk must
        // descend to the tail start before emitting.
        let f8 = pell_fundamental(&big(8)).unwrap();
        let from_base = class_solutions(&rep_of(8, 8, 4, 1), &f8, &big(300));
        let from_above = class_solutions(&rep_of(8, 8, 20, 7), &f8, &big(300));
        assert_eq!(from_base, from_above);
    }

    #[test]
    fn ladder_respects_ceiling() {
        let f8 = pell_fundamental(&big(8)).unwrap();
        let rep = rep_of(8, 8, 4, 1);
        assert_eq!(class_solutions(&rep, &f8, &big(0)), vec![]);
        assert_eq!(class_solutions(&rep, &f8, &big(1)), vec![pair(4, 1)]);
        assert_eq!(class_solutions(&rep, &f8, &big(6)), vec![pair(4, 1)]);
    }

    #[test]
    #[should_panic(expected = "share a discriminant")]
    fn ladder_requires_matching_discriminant() {
        let f8 = pell_fundamental(&big(8)).unwrap();
        class_solutions(&rep_of(3, 13, 4, 1), &f8, &big(10));
    }

    #[test]
    fn solve_matches_worked_examples() {
        assert_eq!(
            solve_gpell(&big(3), &int(1), &big(4)).unwrap(),
            vec![pair(1, 0), pair(2, 1), pair(7, 4)]
        );
        assert_eq!(
            solve_gpell(&big(8), &int(8), &big(50)).unwrap(),
            vec![pair(4, 1), pair(20, 7), pair(116, 41)]
        );
        assert_eq!(
            solve_gpell(&big(8), &int(-8), &big(20)).unwrap(),
            vec![pair(0, 1), pair(8, 3), pair(48, 17)]
        );
        assert_eq!(solve_gpell(&big(3), &int(8), &big(100)).unwrap(), vec![]);
    }

    #[test]
    fn solve_rejects_degenerate_inputs() {
        assert_eq!(solve_gpell(&big(8), &int(0), &big(10)), Err(Error::ZeroRhs));
        assert_eq!(solve_gpell(&big(9), &int(5), &big(10)), Err(Error::SquareDiscriminant(big(9))));
        assert_eq!(
            solve_gpell(&big(1), &int(5), &big(10)),
            Err(Error::DiscriminantTooSmall(big(1)))
        );
    }

    #[test]
    fn solve_matches_exhaustive_scan() {
        // Completeness and disjointness across a dense grid: the classed
        // enumeration must reproduce the direct scan exactly, without any
        // solution appearing in two ladders.
        let v_limit = 60u64;
        for d in 2u64..=20 {
            if as_square(&big(d)).is_some() {
                continue;
            }
            for rhs in -50i64..=50 {
                if rhs == 0 {
                    continue;
                }
                let expected = scan_solutions(d, rhs, v_limit);
                let set = reps(d, rhs);
                let mut got = Vec::new();
                for rep in &set.reps {
                    got.extend(class_solutions(rep, &set.unit, &big(v_limit)));
                }
                let merged = got.len();
                got.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
                got.dedup();
                assert_eq!(got.len(), merged, "overlapping ladders: d = {d}, rhs = {rhs}");
                assert_eq!(got, expected, "d = {d}, rhs = {rhs}");
            }
        }
    }

    proptest! {
        /// The strip bounds are the exact integer maxima of their defining
        /// inequalities, for both signs of the right-hand side.
        #[test]
        fn bounds_are_exact_floors(d in 2u64..60, n in 1i64..200, negate: bool) {
            prop_assume!(as_square(&big(d)).is_none());
            let rhs = if negate { -n } else { n };
            let d = big(d);
            let fund = pell_fundamental(&d).unwrap();
            let got = nagell_bounds(&d, &int(rhs), &fund);

            let edge = if rhs > 0 { &fund.x + 1u32 } else { &fund.x - 1u32 };
            let n_abs = big(n as u64);
            let v_cap = &fund.y * &fund.y * &n_abs;
            let fits_v = |v: &BigUint| (&edge << 1u32) * v * v <= v_cap;
            prop_assert!(fits_v(&got.v_max));
            prop_assert!(!fits_v(&(&got.v_max + 1u32)));

            let u_cap = &edge * &n_abs;
            let fits_u = |u: &BigUint| (u * u) << 1u32 <= u_cap;
            prop_assert!(fits_u(&got.u_max));
            prop_assert!(!fits_u(&(&got.u_max + 1u32)));

            prop_assert_eq!(got.v_min, big(if rhs > 0 { 0 } else { 1 }));
        }
    }
}
