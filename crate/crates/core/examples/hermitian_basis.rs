// The Hermitian curve over GF(4), its monomial basis, and a matdot basis
// tweak that turns the f_d coordinate of f_a * f_b into an indicator.

use agdmm::funcfield::{BasisRegistry, Curve};
use agdmm::Result;

pub fn run_example() -> Result<()> {
    let curve = Curve::hermitian(2)?;
    let places = curve.places();
    println!("{} places on the Hermitian curve over GF(4)", places.len());
    for p in places.iter().take(3) {
        println!("  P{} = ({}, {})", p.index, p.x, p.y);
    }

    let (da, db, d) = ([2, 3], [2, 3], 5);
    let mut reg = BasisRegistry::monomial(&curve, 12);
    println!(
        "before: {} indicator violations",
        reg.indicator_violations(&da, &db, d)?.len()
    );
    reg.tweak_matdot(&da, &db, d)?;
    let bad = reg.indicator_violations(&da, &db, d)?;
    println!("after:  {} indicator violations", bad.len());
    assert!(bad.is_empty());
    println!("{}", serde_json::to_string_pretty(&reg.dump_json()).unwrap());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
