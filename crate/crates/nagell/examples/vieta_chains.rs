// Vieta jumping from the inside: base pairs, the descending jump that
// defines them, and the ascending chains they generate. For fixed `y`,
// the form is a quadratic in `x` whose two roots sum to `k y` — swapping
// roots is the jump, and pairs whose downward jump leaves the positive
// ordered region are the bases everything else descends to.
//
// Run with: `cargo run --example vieta_chains`

use nagell::form::{vieta_base_solutions, vieta_jump};
use nagell::{FormInstance, FormSign};
use num_bigint::{BigInt, BigUint};

fn main() {
    // on the positive side the base of an odd-k instance can sit on the
    // boundary row y^2 = 2^n: here (40, 8) for k = 5, n = 6
    let inst = FormInstance::new(BigUint::from(5u32), 6, FormSign::Plus);
    let bases = vieta_base_solutions(&inst);
    println!("base pairs of {inst}:");
    for b in &bases {
        println!("  ({}, {})", b.x, b.y);
    }
    assert_eq!(bases.len(), 1);
    assert_eq!((bases[0].x.clone(), bases[0].y.clone()), (40u32.into(), 8u32.into()));

    // the downward jump from the base leaves the positive quadrant, which
    // is exactly what makes it a base
    let k = BigInt::from(5);
    let (_, dropped) = vieta_jump(&BigInt::from(40), &BigInt::from(8), &k);
    println!("downward jump from (40, 8) produces {dropped} <= 0: nothing below the base");
    assert!(dropped <= BigInt::from(0));

    // upward, the chain ascends forever; each step swaps in the larger
    // root, and the form value never changes
    println!("\nascending chain from (40, 8):");
    let (mut lo, mut hi) = (BigInt::from(8), BigInt::from(40));
    for _ in 0..4 {
        let value = &hi * &hi - &k * &hi * &lo + &lo * &lo;
        assert_eq!(value, BigInt::from(64), "chain members all take the value 2^6");
        println!("  ({hi}, {lo})");
        (lo, hi) = (hi.clone(), &k * &hi - &lo);
    }

    // on the negative side the all-ones pair is a base whenever
    // k = 2^n + 2 — the instances that make the solvability bound sharp
    for n in [1u32, 3, 5] {
        let k = (1u64 << n) + 2;
        let inst = FormInstance::new(BigUint::from(k), n, FormSign::Minus);
        let bases = vieta_base_solutions(&inst);
        assert!(
            bases.iter().any(|b| b.x == BigUint::from(1u32) && b.y == BigUint::from(1u32)),
            "(1, 1) must be a base of {inst}"
        );
        println!("(1, 1) is a base of {inst}");
    }
}
