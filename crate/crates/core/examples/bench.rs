//! Timing table: oracle summation against the split evaluator.

use rootmean::cli::{bench_table, cmd_bench};
use rootmean::Evaluator;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ev = Evaluator::default();
    let rows = [1_000u64, 100_000, 10_000_000]
        .iter()
        .map(|&n| cmd_bench(&ev, n, 1e-10))
        .collect::<Result<Vec<_>, _>>()?;
    print!("{}", bench_table(&rows));
    Ok(())
}
