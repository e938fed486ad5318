// Arithmetic in GF(16) and GF(25) through integer element codes.

use agdmm::field::FieldSpec;
use agdmm::Result;

pub fn run_example() -> Result<()> {
    for q in [16, 25] {
        let f = FieldSpec::of_order(q)?;
        let a = f.element(7)?;
        let b = f.element(11)?;
        let prod = f.mul(a, b);
        println!("{}: {a} * {b} = {prod}, {a} + {b} = {}", f.header(), f.add(a, b));
        assert_eq!(f.div(prod, b)?, a);

        // Every nonzero element satisfies x^(q-1) = 1.
        let ones = f
            .elements()
            .skip(1)
            .filter(|&x| f.pow(x, u64::from(q) - 1) == f.element(1).unwrap())
            .count();
        println!("  {ones} of {} units satisfy x^(q-1) = 1", q - 1);
        assert_eq!(ones as u32, q - 1);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
