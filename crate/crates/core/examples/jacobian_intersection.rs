// Intersection numbers on C x C: the difference surface in the Jacobian and
// the curve of fibers of a degree-d map to the line.

use seshadri::surface::{
    gamma_class, intersect, nef_threshold_gonality, pullback_theta, sigma_degree, sigma_multiplicity,
    seshadri_upper_from_surface, DivisorClass, Rational,
};

pub fn run_example() -> seshadri::Result<()> {
    for g in 2..=6u32 {
        let theta = pullback_theta(g)?;
        let deg = sigma_degree(g)?;
        let mult = sigma_multiplicity(g)?;
        let bound = seshadri_upper_from_surface(&Rational::from_integer(deg.clone()), mult)?;
        println!(
            "g = {g}: s*Theta = {:?}, deg Sigma = {deg}, mult = {mult}, sqrt(deg/mult) = {bound:.6}",
            theta.coefficients().map(|c| c.to_string())
        );
    }

    let g = 4;
    let delta = DivisorClass::diagonal(g)?;
    println!("Delta^2 on C x C, g = {g}: {}", intersect(&delta, &delta)?);
    for d in 2..=5 {
        let gamma = gamma_class(g, d)?;
        println!(
            "d = {d}: Gamma^2 = {}, Gamma.Delta = {}, threshold = {}",
            intersect(&gamma, &gamma)?,
            intersect(&gamma, &delta)?,
            nef_threshold_gonality(g, d)?
        );
    }
    Ok(())
}

fn main() -> seshadri::Result<()> {
    run_example()
}
