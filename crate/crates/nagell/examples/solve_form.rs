// The main entry point: every positive solution of
// `x^2 - k x y + y^2 = ±2^n` up to a bound, with a finite description of
// the full solution set. The solver picks its strategy from `k`:
// positive-definite arms for `k <= 1`, a shifted-square progression for
// `k = 2`, Vieta walks for odd `k >= 3`, and generalized-Pell class
// ladders (cross-checked against the walk) for even `k >= 4`.
//
// Run with: `cargo run --example solve_form`

use nagell::{solve_all, FormInstance, FormSign, Generators, SolveStatus};
use num_bigint::BigUint;

fn show(inst: &FormInstance, bound: u64) -> SolveStatus {
    let outcome = solve_all(inst, &BigUint::from(bound));
    println!("{inst}, coordinates up to {bound}:");
    println!("  status: {:?}", outcome.status);
    match &outcome.generators {
        Some(Generators::Classes { unit, levels }) => {
            println!(
                "  generated by class ladders: unit ({}, {}), {} levels",
                unit.x,
                unit.y,
                levels.len()
            );
        }
        Some(Generators::VietaBase { base }) if base.is_empty() => {
            println!("  the Vieta walk found no base pairs: nothing to generate");
        }
        Some(Generators::VietaBase { base }) => {
            let pairs: Vec<String> = base.iter().map(|b| format!("({}, {})", b.x, b.y)).collect();
            println!("  generated by the Vieta walk from {}", pairs.join(", "));
        }
        Some(Generators::Shift { step }) => {
            println!("  generated by x = y + {step} and its mirror");
        }
        None => println!("  no generators: the solution set is empty"),
    }
    for s in &outcome.solutions {
        println!("  ({}, {})  [{:?}]", s.x, s.y, s.parity);
    }
    println!();
    outcome.status
}

fn main() {
    // an infinite family reached through the class machinery
    let inst = FormInstance::new(BigUint::from(6u32), 3, FormSign::Plus);
    assert_eq!(show(&inst, 50), SolveStatus::Infinite);

    // the negative side at the sharp corner k = 2^n + 2 starts at (1, 1)
    let inst = FormInstance::new(BigUint::from(10u32), 3, FormSign::Minus);
    assert_eq!(show(&inst, 100), SolveStatus::Infinite);

    // k = 2: the form is (x - y)^2, an arithmetic progression of solutions
    let inst = FormInstance::new(BigUint::from(2u32), 4, FormSign::Plus);
    assert_eq!(show(&inst, 10), SolveStatus::Infinite);

    // k <= 1 makes the form positive definite: finitely many solutions
    let inst = FormInstance::new(BigUint::from(1u32), 0, FormSign::Plus);
    assert_eq!(show(&inst, 10), SolveStatus::Finite);

    // and some instances are simply empty — here because the positive
    // sign with n = 1 admits no k at all
    let inst = FormInstance::new(BigUint::from(7u32), 1, FormSign::Plus);
    assert_eq!(show(&inst, 1000), SolveStatus::Empty);
}
