//! All property sweeps at modest sizes.

use rootmean::verify::{delta_sweep, lemma2_sweep, lemma3_sweep, theorem1_sweep, SweepReport};

fn show(name: &str, r: &SweepReport) {
    println!(
        "{name:<10} checked={:<8} failed={} {:?}",
        r.checked, r.failed, r.first_failure
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    show("floor", &theorem1_sweep(200_000, u64::MAX)?);
    show("remainder", &delta_sweep(100_000, 1000, 0, u64::MAX)?);
    show("bounds", &lemma2_sweep(1e12, 10_000)?);
    show("threshold", &lemma3_sweep(1000)?);
    Ok(())
}
