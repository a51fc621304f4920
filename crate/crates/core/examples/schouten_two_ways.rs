//! Compare the direct Schouten bracket with the closed-form trivector on B2.

use std::sync::Arc;

use orbitforge::levi::LeviDatum;
use orbitforge::multivec::{bivector_from_coefficients, schouten, schouten_closed_form, BracketCoefficients};
use orbitforge::rational::frac;
use orbitforge::rootsystem::RootSystem;

fn main() -> orbitforge::Result<()> {
    let rs = Arc::new(RootSystem::new("B2".parse()?)?);
    let levi = LeviDatum::new(rs, &[])?;
    let mut n = 1;
    let c = BracketCoefficients::from_fn(&levi, |_| {
        n += 1;
        frac(n, 3)
    });
    let d = BracketCoefficients::from_fn(&levi, |x| frac(x.0.iter().map(|v| *v as i64).sum::<i64>() + 1, 2));
    let f = bivector_from_coefficients(&levi, &c);
    let g = bivector_from_coefficients(&levi, &d);
    let direct = schouten(&levi, &f, &g)?;
    let closed = schouten_closed_form(&levi, &c, &d).to_multivector(&levi);
    println!("direct: {} terms, closed form: {} terms", direct.len(), closed.len());
    println!("agree: {}", direct.sub(&closed)?.is_zero());
    Ok(())
}
