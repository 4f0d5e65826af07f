//! Integer part of the mean for indices far beyond binary64.
//!
//! cargo run --example exact_floor -- 123456789012345678901234567890

use num_bigint::BigUint;
use rootmean::exactfloor::{alpha_floor, floor_a_exact, floor_via_alpha};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        vec!["1".into(), "1000000".into(), format!("1{}", "0".repeat(40))]
    } else {
        inputs
    };
    for text in inputs {
        let n: BigUint = text.parse()?;
        let m = floor_a_exact(n.clone())?;
        assert_eq!(m, floor_via_alpha(n.clone())?);
        println!("floor(Sigma({n})) = {m}");
    }

    // the floor steps up right after each threshold
    for m in [1u64, 10, 1000] {
        let t = alpha_floor(m);
        println!(
            "threshold m={m}: n={t} -> {}, n={} -> {}",
            floor_a_exact(t.clone())?,
            &t + 1u32,
            floor_a_exact(&t + 1u32)?
        );
    }
    Ok(())
}
