// The radial blow-up map and the numerical checks of its pulled-back form.

use seshadri::symplectic::{verify_all, BlowupProfile, RadialProfile, Sweep};

pub fn run_example() -> seshadri::Result<()> {
    let p = BlowupProfile::new(2, 0.8, 0.05, Some(0.08))?;
    println!("blend margin (smallest radial eigenvalue): {:.6}", p.blend_margin());
    for r in [0.04, 0.08, 0.2, 0.5, 0.8, 0.84, 1.0] {
        let (radial, tangential) = p.eigenvalues_at(r);
        println!(
            "r = {r:.2}: phi = {:.6}, phi' = {:.6}, eigenvalues = ({radial:.4}, {tangential:.4})",
            p.value(r),
            p.slope(r)
        );
    }
    for report in verify_all(&p, &Sweep::new(500, 1e-8, 7))? {
        println!(
            "{:>13}: samples = {:>4}, deviation = {:.3e}, value = {:?}, pass = {}",
            format!("{:?}", report.region), report.samples, report.max_abs_deviation, report.value, report.pass
        );
    }
    Ok(())
}

fn main() -> seshadri::Result<()> {
    run_example()
}
