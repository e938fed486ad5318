// Seeded straggler simulation: finish time when waiting for the threshold
// versus waiting for every worker.

use agdmm::codec::CodeScheme;
use agdmm::constructions::{Kind, Method};
use agdmm::funcfield::Curve;
use agdmm::matrix::Matrix;
use agdmm::sim::{self, StragglerModel};
use agdmm::Result;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub fn run_example() -> Result<()> {
    let curve = Curve::hermitian(3)?;
    let scheme = CodeScheme::build(&curve, Kind::Matdot, Method::Trivial, 3, None, 27)?;
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(3);
    let a = Matrix::random(scheme.field(), 3, 6, &mut rng);
    let b = Matrix::random(scheme.field(), 6, 3, &mut rng);

    for model in ["shifted-exp:tau=1,lambda=0.5", "bernoulli:p=0.2,slow=10"] {
        let model: StragglerModel = model.parse()?;
        let reports = sim::simulate(&scheme, &a, &b, &model, 7, 200)?;
        assert!(reports.iter().all(|r| r.decode_ok));
        let s = sim::summarize(&reports)?;
        println!(
            "{model}: rho {:.3}, mean finish {:.3}, p95 {:.3}, waiting for all {:.3}",
            s.rho, s.mean_finish, s.p95, s.baseline_mean
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
