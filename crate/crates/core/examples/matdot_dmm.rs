// Matdot-style coded multiplication on the Hermitian curve over GF(25) with
// 125 workers and the optimal degree sets for m = 40.

use agdmm::codec::{worker_multiply, CodeScheme};
use agdmm::constructions::{Kind, Method};
use agdmm::funcfield::Curve;
use agdmm::matrix::Matrix;
use agdmm::Result;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub fn run_example() -> Result<()> {
    let curve = Curve::hermitian(5)?;
    let scheme = CodeScheme::build(&curve, Kind::Matdot, Method::Optimal, 40, None, 125)?;
    let f = scheme.field();
    let sol = scheme.solution();
    println!(
        "d = {:?}, threshold {} of {}",
        sol.d(),
        scheme.threshold(),
        scheme.workers()
    );

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(2);
    let a = Matrix::random(f, 8, 40, &mut rng);
    let b = Matrix::random(f, 40, 8, &mut rng);
    let mut results = scheme
        .encode(&a, &b)?
        .iter()
        .map(|s| worker_multiply(f, s))
        .collect::<Result<Vec<_>>>()?;
    results.shuffle(&mut rng);
    results.truncate(scheme.threshold());

    let decoded = scheme.decode(&results)?;
    assert_eq!(decoded.product, a.mul(f, &b)?.0);
    println!("recovered the 8x8 product from {} random workers", results.len());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
