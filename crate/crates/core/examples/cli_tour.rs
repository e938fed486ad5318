// Drives the command-line interface in-process.

pub fn run_example() -> Result<(), String> {
    let commands: [&[&str]; 4] = [
        &["semigroup", "info", "--gens", "3,4"],
        &[
            "construct",
            "matdot",
            "--gens",
            "2,3",
            "--method",
            "optimal",
            "--m",
            "4",
        ],
        &["search", "--kind", "poly", "--gens", "2,3", "--m", "2", "--n", "2"],
        &[
            "report",
            "asymptotic",
            "--q",
            "16",
            "--m",
            "3",
            "--mode",
            "poly",
            "--series",
            "N=64,c=12",
        ],
    ];
    for cmd in commands {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = agdmm::cli::run(std::iter::once("agdmm").chain(cmd.iter().copied()), &mut out, &mut err);
        println!("$ agdmm {}", cmd.join(" "));
        print!("{}", String::from_utf8_lossy(&out));
        if code != 0 {
            return Err(format!("exit {code}: {}", String::from_utf8_lossy(&err)));
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
