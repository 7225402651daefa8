// Seshadri bounds for a given period matrix and for a Jacobian of given
// gonality.

use seshadri::bounds::{bounds_report, compare_jacobian_bounds, gonality_crossover_genus};
use seshadri::PeriodMatrix;

pub fn run_example() -> seshadri::Result<()> {
    let hex = PeriodMatrix::elliptic(0.5, 3f64.sqrt() / 2.0)?;
    let r = bounds_report(Some(&hex), 1, None, false)?;
    println!(
        "hexagonal: m = {:.6}, pi m / 4 = {:.6}, effective lower = {}, upper = {}",
        r.m_a.unwrap_or(f64::NAN),
        r.lower_theorem.unwrap_or(f64::NAN),
        r.effective_lower,
        r.upper_ekl
    );

    let r = bounds_report(None, 5, None, false)?;
    println!(
        "g = 5: corollary lower = {:.6}, upper = {:.6}, reference = {:.6}",
        r.lower_corollary, r.upper_ekl, r.bs1_benchmark
    );

    let r = bounds_report(None, 2, Some(2), true)?;
    println!(
        "genus 2 hyperelliptic Jacobian: gonality bound {} (~{:.6}), sqrt bound {:.6}",
        r.gonality_upper_exact.as_deref().unwrap_or("-"),
        r.gonality_upper.unwrap_or(f64::NAN),
        r.jacobian_upper_sqrt.unwrap_or(f64::NAN)
    );

    for (g, d) in [(2, 2), (3, 2), (40, 2), (10, 4)] {
        let c = compare_jacobian_bounds(g, d)?;
        println!(
            "g = {g:>2}, d = {d}: 4d/pi = {:.4}, (3/pi) ln(4g+3) = {:.4}, stronger: {:?}",
            c.gonality_period_upper, c.bs2_jacobian_upper, c.stronger
        );
    }
    for d in 2..=6 {
        println!("gonality {d}: period bound wins from genus {}", gonality_crossover_genus(d)?);
    }
    Ok(())
}

fn main() -> seshadri::Result<()> {
    run_example()
}
