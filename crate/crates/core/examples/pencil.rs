//! Cohomology along the pencil h f0 + t s of a good pair.

use std::sync::Arc;

use orbitforge::cohomology::pencil_cohomology;
use orbitforge::levi::LeviDatum;
use orbitforge::moduli::good_bracket_family;
use orbitforge::rational::{format_rational, frac, q};
use orbitforge::rootsystem::RootSystem;

fn main() -> orbitforge::Result<()> {
    let rs = Arc::new(RootSystem::new("A2".parse()?)?);
    let levi = LeviDatum::new(rs, &[])?;
    let lambda = vec![q(1), q(2)];
    let k = q(1);
    let fam = good_bracket_family(&levi, &lambda, &k)?;
    let samples = vec![(q(1), q(0)), (q(1), q(1)), (q(0), q(1)), (frac(1, 2), frac(-3, 7))];
    for ((h, t), p) in samples.iter().zip(pencil_cohomology(&levi, &fam.f0, &lambda, &k, &samples)?) {
        println!("h = {}, t = {}: {:?}", format_rational(h), format_rational(t), p.h_dims);
    }
    Ok(())
}
