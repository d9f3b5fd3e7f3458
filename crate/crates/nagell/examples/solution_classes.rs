// The generalized equation `u^2 - d v^2 = N`: solutions fall into
// finitely many classes, each a two-sided orbit of the Pell unit, and
// every class has a representative inside an explicit strip. Enumerating
// the strip and walking the orbits is a complete, exact solver.
//
// Run with: `cargo run --example solution_classes`

use nagell::{
    class_reps, class_solutions, nagell_bounds, pell_fundamental, same_class, solve_gpell,
};
use num_bigint::{BigInt, BigUint};

fn main() {
    let d = BigUint::from(8u32);
    let rhs = BigInt::from(8);

    // the representative strip: every class meets it, so scanning it
    // bounds the class count
    let fund = pell_fundamental(&d).unwrap();
    let bounds = nagell_bounds(&d, &rhs, &fund);
    println!(
        "strip for u^2 - 8 v^2 = 8: v in [{}, {}], |u| <= {}",
        bounds.v_min, bounds.v_max, bounds.u_max
    );

    let set = class_reps(&d, &rhs).unwrap();
    println!("classes found: {}", set.reps.len());
    for rep in &set.reps {
        println!("  representative ({}, {}), ambiguous: {}", rep.u, rep.v, rep.ambiguous);
    }
    assert_eq!(set.reps.len(), 1, "all solutions of this instance are one orbit");
    assert!(set.reps[0].ambiguous, "(u, v) and (-u, v) generate the same orbit here");

    // (4, 1) and (20, 7) are unit-multiples of each other; the class test
    // is a pair of divisibility checks, no orbit walking involved
    let a = (BigInt::from(4), BigInt::from(1));
    let b = (BigInt::from(20), BigInt::from(7));
    assert!(same_class((&a.0, &a.1), (&b.0, &b.1), &d, &rhs).unwrap());
    println!("(4, 1) ~ (20, 7): same class");

    // full bounded enumeration, both signs of the right-hand side
    for rhs in [BigInt::from(8), BigInt::from(-8)] {
        let solutions = solve_gpell(&d, &rhs, &BigUint::from(100u32)).unwrap();
        println!("\nsolutions of u^2 - 8 v^2 = {rhs} with v <= 100:");
        for (u, v) in &solutions {
            let value = BigInt::from(u * u) - BigInt::from(&d * (v * v));
            assert_eq!(value, rhs, "({u}, {v}) must solve the equation");
            println!("  ({u}, {v})");
        }
    }

    // a single class unrolled by hand: the ladder from its representative
    let set = class_reps(&d, &BigInt::from(-8)).unwrap();
    let ladder = class_solutions(&set.reps[0], &set.unit, &BigUint::from(3363u32));
    assert_eq!(ladder.len(), 6, "six members up to v = 3363");
    println!("\nladder of the v = 1 class, negative side: {} members", ladder.len());
}
