// The classical Pell equation `x^2 - d y^2 = 1`: continued-fraction
// expansions, fundamental solutions, and the `d = m^2 - 1` family whose
// units come out instantly.
//
// Run with: `cargo run --example pell_fundamentals`

use nagell::{cf_expand, pell_fundamental, pell_solutions};
use num_bigint::BigUint;

fn main() {
    // the periodic expansion of sqrt(7): [2; 1, 1, 1, 4]
    let (a0, period) = cf_expand(&BigUint::from(7u32)).unwrap();
    println!("sqrt(7) = [{a0}; {}] (period {})", join(&period), period.len());
    assert_eq!(a0, BigUint::from(2u32));
    assert_eq!(period.len(), 4);

    // d = 61 is the classic small d with an enormous fundamental solution
    let fund = pell_fundamental(&BigUint::from(61u32)).unwrap();
    println!("fundamental solution for d = 61: ({}, {})", fund.x, fund.y);
    assert_eq!(fund.x.to_string(), "1766319049");
    assert_eq!(fund.y.to_string(), "226153980");

    // powers of the fundamental solution walk the whole solution group;
    // re-check each against the equation
    let d = BigUint::from(7u32);
    let fund = pell_fundamental(&d).unwrap();
    println!("\nfirst solutions for d = 7:");
    for (x, y) in pell_solutions(&fund, 4) {
        assert_eq!(&x * &x, &d * (&y * &y) + 1u32, "({x}, {y}) must solve the equation");
        println!("  ({x}, {y})");
    }

    // d = m^2 - 1 always has the unit (m, 1): these are exactly the
    // discriminants the quadratic-form solver reduces to
    println!("\nunits for d = m^2 - 1:");
    for m in [3u32, 12, 500] {
        let fund = pell_fundamental(&BigUint::from(m * m - 1)).unwrap();
        assert_eq!(fund.x, BigUint::from(m));
        assert_eq!(fund.y, BigUint::from(1u32));
        println!("  d = {:6} -> ({m}, 1)", m * m - 1);
    }
}

fn join(parts: &[BigUint]) -> String {
    parts.iter().map(BigUint::to_string).collect::<Vec<_>>().join(", ")
}
