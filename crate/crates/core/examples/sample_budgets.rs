//! Sample counts from K: the theorem budget for a few r values against the
//! practical ceil(K) rule.

use scatter::stability::{kappa, practical_budget, sample_budget};

fn main() -> scatter::Result<()> {
    println!("kappa(1) = {:.6}", kappa(1.0));
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "K", "practical", "r = 0.5", "r = 1", "r = 2");
    for k in [11.0, 41.0, 100.0, 233.4, 328.0] {
        let b = |r| sample_budget(k, 100_000_000, r).map(|b| b.n);
        println!("{k:>8.1} {:>10} {:>10} {:>10} {:>10}", practical_budget(k)?, b(0.5)?, b(1.0)?, b(2.0)?);
    }
    Ok(())
}
