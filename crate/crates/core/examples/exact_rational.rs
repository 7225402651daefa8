// Exact input: a period matrix with rational entries gives an exact Gram
// matrix and an exact minimal period.

use seshadri::io::{parse_period_json, PeriodInput};

pub fn run_example() -> seshadri::Result<()> {
    let text = r#"{"g": 2, "re": [["1/2", "1/3"], ["1/3", "0"]], "im": [["3/2", "1/4"], ["1/4", 1]]}"#;
    let PeriodInput::Exact(tau) = parse_period_json(text)? else {
        unreachable!("string entries select exact mode")
    };
    for row in tau.gram()? {
        println!("{}", row.iter().map(|q| format!("{q:>8}")).collect::<String>());
    }
    let m = tau.min_period_length()?;
    println!("m = {} (float {:.15}) at {:?}", m.exact_value, m.result.value, m.result.vector.coords());
    Ok(())
}

fn main() -> seshadri::Result<()> {
    run_example()
}
