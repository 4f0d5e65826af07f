//! Sums of r-th roots: exact for r = 1, enclosed for r >= 2.

use rootmean::asymptotic::{partial_sum_root_enclosure, RootOrder};
use rootmean::evaluator::oracle_sum_root_enclosure;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (nu, n) = (1, 1000);
    for r in [1.0, 2.0, 3.0, 4.0, 2.5] {
        let order = RootOrder::new(r)?;
        let e = partial_sum_root_enclosure(nu, n, order)?;
        print!("r={r}: [{}, {}]", e.lo, e.hi);
        if r.fract() == 0.0 {
            let o = oracle_sum_root_enclosure(nu, n, order)?;
            print!("  oracle {}", o.midpoint());
        }
        println!();
    }
    Ok(())
}
