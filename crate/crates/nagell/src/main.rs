//! Thin command-line front end. All mathematics lives in the library;
//! this binary parses arguments, picks an output format, and maps
//! failures to exit codes: `0` success, `1` a verification check
//! failed, `2` usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::{BigInt, BigUint};

use nagell::harness::{
    build_tables, check_sharpness, check_thm31, check_thm32, check_thm33, TheoremCheck, Verdict,
};
use nagell::report::{
    checks_output, gpell_output, pell_output, solve_output, table_output, OutputFormat,
};
use nagell::{
    class_reps, default_bound, pell_fundamental, pell_solutions, solve_all, solve_gpell,
    FormInstance, FormSign,
};

#[derive(Parser)]
#[command(name = "nagell", version, about = "Exact solver for x^2 - k x y + y^2 = ±2^n")]
struct Cli {
    /// Output format: text, json, or csv
    #[arg(long, global = true, default_value = "text")]
    format: OutputFormat,
    /// Write the output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental and iterated solutions of x^2 - d y^2 = 1
    Pell {
        d: u64,
        /// How many solutions to list
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Class representatives and bounded solutions of u^2 - d v^2 = rhs
    Gpell {
        d: u64,
        #[arg(allow_hyphen_values = true)]
        rhs: i64,
        /// Enumerate solutions with v up to this limit
        #[arg(long, default_value_t = 1000)]
        v_limit: u64,
    },
    /// All positive solutions of x^2 - k x y + y^2 = ±2^n up to a bound
    Solve {
        /// Coefficient of the mixed term
        #[arg(long)]
        k: u64,
        /// Exponent: the right-hand side is ±2^n
        #[arg(long)]
        n: u32,
        /// Right-hand sign: +, -, plus, or minus
        #[arg(long, default_value = "+")]
        sign: FormSign,
        /// Coordinate bound; defaults to one that provably contains all
        /// base pairs and minimal witnesses
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Solvability tables: which k admit solutions, for each n
    Tables {
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        /// Right-hand sign: +, -, plus, or minus
        #[arg(long, default_value = "-")]
        sign: FormSign,
        /// Scan k up to 2^n + 2 plus this margin
        #[arg(long, default_value_t = 8)]
        k_margin: u64,
    },
    /// Run the built-in solvability checks and emit a report
    Verify {
        /// Which check: 3.1, 3.2, 3.3, sharpness, or all
        #[arg(long, default_value = "all")]
        theorem: String,
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        /// Scan k up to the claimed threshold plus this margin
        #[arg(long, default_value_t = 8)]
        k_margin: u64,
        /// Largest prime for the quadratic-residue checks
        #[arg(long, default_value_t = 100)]
        p_max: u64,
    },
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), String> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_checks(
    theorem: &str,
    n_max: u32,
    k_margin: u64,
    p_max: u64,
) -> Result<Vec<TheoremCheck>, String> {
    let ns: Vec<u32> = (0..=n_max).collect();
    let checks = match theorem {
        "3.1" => check_thm31(&ns, k_margin),
        "3.2" => check_thm32(&ns, k_margin),
        "3.3" => check_thm33(&ns, p_max),
        "sharpness" => vec![check_sharpness(&ns)],
        "all" => {
            let mut all = check_thm31(&ns, k_margin);
            all.extend(check_thm32(&ns, k_margin));
            all.extend(check_thm33(&ns, p_max));
            all.push(check_sharpness(&ns));
            all
        }
        other => {
            return Err(format!(
                "unknown check {other:?}; expected 3.1, 3.2, 3.3, sharpness, or all"
            ))
        }
    };
    Ok(checks)
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Pell { d, count } => {
            let d = BigUint::from(d);
            let fund = pell_fundamental(&d).map_err(|e| e.to_string())?;
            let solutions = pell_solutions(&fund, count);
            for (x, y) in &solutions {
                // belt and braces: nothing is printed unverified
                assert_eq!(BigInt::from(x * x) - BigInt::from(&d * (y * y)), BigInt::from(1));
            }
            emit(&pell_output(&fund, &solutions, cli.format), &cli.output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gpell { d, rhs, v_limit } => {
            let d = BigUint::from(d);
            let rhs = BigInt::from(rhs);
            let set = class_reps(&d, &rhs).map_err(|e| e.to_string())?;
            let solutions =
                solve_gpell(&d, &rhs, &BigUint::from(v_limit)).map_err(|e| e.to_string())?;
            for (u, v) in &solutions {
                assert_eq!(BigInt::from(u * u) - BigInt::from(&d * (v * v)), rhs);
            }
            emit(&gpell_output(&set, &solutions, cli.format), &cli.output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { k, n, sign, bound } => {
            let inst = FormInstance::new(BigUint::from(k), n, sign);
            let bound = match bound {
                Some(bound) => BigUint::from(bound),
                None => default_bound(&inst),
            };
            // every solution was verified at construction by SolutionPair::checked
            let outcome = solve_all(&inst, &bound);
            emit(&solve_output(&inst, &outcome, cli.format), &cli.output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Tables { n_max, sign, k_margin } => {
            let table = build_tables(n_max, sign, k_margin);
            emit(&table_output(&table, cli.format), &cli.output)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { theorem, n_max, k_margin, p_max } => {
            let checks = run_checks(&theorem, n_max, k_margin, p_max)?;
            emit(&checks_output(&checks, cli.format), &cli.output)?;
            if checks.iter().any(|c| c.verdict == Verdict::Fail) {
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("NAGELL_THREADS") {
        match usize::from_str(threads.trim()) {
            Ok(t) if t >= 1 => {
                // ignore the error if a global pool already exists
                let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
            }
            _ => {
                eprintln!("NAGELL_THREADS must be a positive integer, got {threads:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
