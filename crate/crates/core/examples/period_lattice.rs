// Minimal periods of a few period matrices, by enumeration and by the
// exhaustive oracle.

use nalgebra::DMatrix;
use seshadri::lattice::{brute_force_shortest, certified_box, minimal_vectors, shortest_vector};
use seshadri::{gram_from_period, PeriodMatrix};

pub fn run_example() -> seshadri::Result<()> {
    let s3 = 3f64.sqrt();
    let genus_two = PeriodMatrix::new(
        DMatrix::from_row_slice(2, 2, &[0.0, 0.5, 0.5, 0.0]),
        DMatrix::from_row_slice(2, 2, &[1.2, 0.1, 0.1, 0.9]),
    )?;
    let cases = [
        ("square", PeriodMatrix::elliptic(0.0, 1.0)?),
        ("hexagonal", PeriodMatrix::elliptic(0.5, s3 / 2.0)?),
        ("genus two", genus_two),
    ];
    for (name, tau) in &cases {
        let gram = gram_from_period(tau)?;
        let fast = shortest_vector(&gram)?;
        let slow = brute_force_shortest(&gram, certified_box(&gram)?)?;
        let (_, minimizers) = minimal_vectors(&gram)?;
        println!(
            "{name:>10}: m = {:.12}  oracle = {:.12}  vector = {:?}  minimizers = {}",
            fast.value,
            slow.value,
            fast.vector.coords(),
            minimizers.len()
        );
    }
    Ok(())
}

fn main() -> seshadri::Result<()> {
    run_example()
}
