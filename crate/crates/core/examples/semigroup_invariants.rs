// Conductor, genus, Apéry sets and the Δ profile of a few semigroups.

use agdmm::semigroup::NumericalSemigroup;
use agdmm::Result;

pub fn run_example() -> Result<()> {
    for gens in [vec![2, 3], vec![3, 4], vec![3, 5, 7], vec![4, 5]] {
        let s = NumericalSemigroup::from_generators(&gens)?;
        let prof = s.delta_profile();
        println!(
            "<{gens:?}>: c = {}, g = {}, n = {}, gaps = {:?}",
            s.conductor(),
            s.genus(),
            s.n(),
            s.gaps()
        );
        println!("  Apery set w.r.t. {}: {:?}", gens[0], s.apery(gens[0])?);
        println!(
            "  Delta over {:?} = {:?}, largest maximizer {}",
            prof.domain, prof.values, prof.argmax
        );
    }

    // Hermitian semigroups peak at q * ceil((q-1)/2).
    for q in 2..=7 {
        let s = NumericalSemigroup::hermitian(q)?;
        let argmax = s.delta_profile().argmax;
        println!("<{q},{}>: Delta argmax {argmax}", q + 1);
        assert_eq!(argmax, q * (q - 1).div_ceil(2));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
