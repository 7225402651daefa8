// Random search for period matrices with a large minimal period.

use seshadri::experiments::{max_min_period_ceiling, search_max_min_period};

pub fn run_example() -> seshadri::Result<()> {
    for (g, iters) in [(1, 4000), (2, 1000), (3, 500)] {
        let r = search_max_min_period(g, iters, 2024)?;
        println!(
            "g = {g}: best m = {:.6} after {iters} steps, reference = {:.6}, ratio = {:.3}, ceiling = {:.6}",
            r.best_m,
            r.bs1_reference,
            r.ratio,
            max_min_period_ceiling(g as u32)
        );
    }
    Ok(())
}

fn main() -> seshadri::Result<()> {
    run_example()
}
