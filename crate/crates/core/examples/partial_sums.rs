//! Asymptotic enclosures of sum_{k=nu}^{n} sqrt(k) next to the oracle.

use rootmean::asymptotic::{delta_bounds, partial_sum_sqrt_enclosure};
use rootmean::evaluator::recover_delta;
use rootmean::Evaluator;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ev = Evaluator::default();
    for (nu, n) in [(1u64, 100u64), (2, 3), (100, 1_000_000), (50_000, 60_000)] {
        let bracket = partial_sum_sqrt_enclosure(nu, n)?;
        let sum = ev.oracle_sum_sqrt_dd(nu, n)?;
        let rec = recover_delta(nu, n, &sum);
        let bounds = delta_bounds(nu, n)?;
        println!(
            "[{nu}, {n}]: enclosure [{}, {}] width {:.2e}, oracle {}",
            bracket.lo,
            bracket.hi,
            bracket.width(),
            sum.value.to_f64()
        );
        println!(
            "    delta = {:.15} in ({:.15}, {:.15})",
            rec.delta, bounds.lower, bounds.upper
        );
    }
    Ok(())
}
