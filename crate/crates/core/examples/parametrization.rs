//! Coth parametrization of φ-brackets, in both directions.

use std::sync::Arc;

use orbitforge::levi::LeviDatum;
use orbitforge::moduli::{extract_parametrization, from_parametrization, solve_ff_standard};
use orbitforge::rational::q;
use orbitforge::rootsystem::RootSystem;

fn main() -> orbitforge::Result<()> {
    let rs = Arc::new(RootSystem::new("A3".parse()?)?);
    let levi = LeviDatum::new(rs, &[2])?;
    let k = q(1);
    let sol = solve_ff_standard(&levi, &[q(3), q(4)], &k)?;
    let p = extract_parametrization(&levi, &sol.c, &k)?;
    println!("{}", serde_json::to_string_pretty(&p.to_json(&levi)).unwrap());
    let back = from_parametrization(&levi, &p)?;
    println!("round trip error {:.3e}", back.max_distance(&sol.c));
    Ok(())
}
