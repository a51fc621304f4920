//! Solve for a φ-bracket from seeds and check it against the Schouten bracket.

use std::sync::Arc;

use orbitforge::levi::LeviDatum;
use orbitforge::moduli::{solve_ff_standard, verify_ff};
use orbitforge::multivec::phi_bracket_residual;
use orbitforge::rational::{format_rational, q};
use orbitforge::rootsystem::RootSystem;

fn main() -> orbitforge::Result<()> {
    let rs = Arc::new(RootSystem::new("A3".parse()?)?);
    let levi = LeviDatum::new(rs, &[])?;
    let k = q(1);
    let sol = solve_ff_standard(&levi, &[q(2), q(3), q(5)], &k)?;
    for x in sol.positive.positives() {
        println!("c{x} = {}", format_rational(&sol.c.value(x)));
    }
    let verdict = verify_ff(&levi, &sol.c, &k)?;
    println!("equations hold: {}", verdict.holds);
    println!("[[f,f]] - mu K^2 phi = 0: {}", phi_bracket_residual(&levi, &sol.c, &k)?.is_zero());

    match solve_ff_standard(&levi, &[q(1), q(-1), q(5)], &k) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("seeds (1,-1,5): {e}"),
    }
    Ok(())
}
