// Threshold-to-workers ratios along Hermitian curves over GF(q0^2), and the
// excess limit for a tower over GF(25).

use agdmm::asymptotic::{self, FamilyPoint};
use agdmm::constructions::Kind;
use agdmm::Result;

pub fn run_example() -> Result<()> {
    let m = 4;
    for q0 in [3u64, 4, 5, 7] {
        let point = FamilyPoint {
            places: q0.pow(3),
            conductor: q0 * (q0 - 1),
        };
        let (poly, _, _) = asymptotic::ratios(point, m, Kind::Poly);
        let (matdot, _, _) = asymptotic::ratios(point, m, Kind::Matdot);
        println!("q0 = {q0}: N = {}, poly rho {poly}, matdot rho {matdot}", point.places);
    }

    let series = asymptotic::parse_series("N=125,c=20;N=3125,c=600")?;
    let report = asymptotic::report(25, 40, Kind::Matdot, &series)?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
