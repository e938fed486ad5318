// Polynomial-style coded multiplication over the Hermitian curve: eight
// workers over GF(4), any six of them suffice.

use agdmm::codec::{worker_multiply, CodeScheme};
use agdmm::constructions::{Kind, Method};
use agdmm::funcfield::Curve;
use agdmm::matrix::Matrix;
use agdmm::Result;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub fn run_example() -> Result<()> {
    let curve = Curve::hermitian(2)?;
    let scheme = CodeScheme::build(&curve, Kind::Poly, Method::Apery, 2, Some(2), 8)?;
    let f = scheme.field();
    println!("threshold {} of {} workers", scheme.threshold(), scheme.workers());

    let mut rng = Xoshiro256PlusPlus::seed_from_u64(1);
    let a = Matrix::random(f, 6, 4, &mut rng);
    let b = Matrix::random(f, 4, 6, &mut rng);
    let results = scheme
        .encode(&a, &b)?
        .iter()
        .map(|s| worker_multiply(f, s))
        .collect::<Result<Vec<_>>>()?;

    // Workers 0 and 5 straggle.
    let arrived: Vec<_> = results
        .into_iter()
        .filter(|r| r.place_index != 0 && r.place_index != 5)
        .collect();
    let decoded = scheme.decode(&arrived)?;
    println!(
        "decoded from {:?} with {} multiplications",
        decoded.responders_used, decoded.decode_mults
    );
    assert_eq!(decoded.product, a.mul(f, &b)?.0);
    print!("{}", decoded.product.to_csv(f));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
