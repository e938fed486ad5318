// Degree-set constructions for both problems, with thresholds against the
// brute-force optimum.

use agdmm::constructions::{self as cons, Kind};
use agdmm::semigroup::NumericalSemigroup;
use agdmm::Result;

pub fn run_example() -> Result<()> {
    let s = NumericalSemigroup::from_generators(&[3, 4])?;
    let (m, n) = (3, 2);
    for row in cons::threshold_table(&s, m, n)? {
        println!(
            "poly {:<10} threshold {:>3}  ({} = {})",
            row.method.to_string(),
            row.threshold,
            row.formula_text,
            row.formula
        );
    }
    let best = cons::brute_force_optimal(&s, Kind::Poly, m, n, cons::default_search_bound(&s, m, n))?;
    println!(
        "poly search     threshold {:>3}  D_A={:?} D_B={:?}",
        best.threshold(),
        best.d_a(),
        best.d_b()
    );

    let m = 12;
    let trivial = cons::matdot_trivial(&s, m)?;
    let optimal = cons::matdot_optimal(&s, m)?;
    println!("matdot trivial  threshold {:>3}", trivial.threshold());
    println!(
        "matdot optimal  threshold {:>3}  d={:?}",
        optimal.threshold(),
        optimal.d()
    );
    println!("{}", optimal.to_json());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
