//! Certified mean with a requested tolerance.
//!
//! cargo run --release --example certified_mean -- 123456789 1e-11

use rootmean::Evaluator;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u64 = args.first().map_or(Ok(123_456_789), |s| s.parse())?;
    let eps: f64 = args.get(1).map_or(Ok(1e-11), |s| s.parse())?;

    let ev = Evaluator::default();
    let plan = ev.choose_nu(n, eps)?;
    let mean = ev.fast_mean(n, eps)?;
    let enc = mean.enclosure();
    println!(
        "n={n} eps={eps:e} method={} nu={}",
        plan.method, mean.plan.nu
    );
    println!("Sigma(n) = {} +- {:e}", mean.value, mean.error_bound);
    println!("enclosure [{}, {}]", enc.lo, enc.hi);

    let (floor, source) = ev.certified_floor(n, 1e-6)?;
    println!("floor = {floor} (decided by {source:?})");
    Ok(())
}
