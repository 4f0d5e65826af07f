//! Split evaluation against direct summation at n = 10^7.

use std::time::Instant;

use rootmean::dd::Dd;
use rootmean::Evaluator;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 10_000_000;
    let ev = Evaluator::default();

    let t = Instant::now();
    let oracle = ev.oracle_mean_dd(n)?;
    let direct = t.elapsed();

    println!(
        "{:>6} {:>22} {:>12} {:>12} {:>10}",
        "nu", "value", "bound", "actual", "ms"
    );
    for nu in [16, 100, 1000, 10_000, 100_000] {
        let t = Instant::now();
        let m = ev.fast_mean_at(n, nu)?;
        let ms = t.elapsed().as_secs_f64() * 1e3;
        let actual = (Dd::new(m.value, m.value_tail) - oracle.value)
            .abs()
            .to_f64();
        println!(
            "{nu:>6} {:>22} {:>12.3e} {:>12.3e} {ms:>10.3}",
            m.value, m.error_bound, actual
        );
    }
    println!(
        "direct: {} in {:.1} ms",
        oracle.value.to_f64(),
        direct.as_secs_f64() * 1e3
    );
    Ok(())
}
