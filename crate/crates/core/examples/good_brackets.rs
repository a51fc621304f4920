//! Good pairs and the family ±f0 + t s.

use std::sync::Arc;

use orbitforge::levi::LeviDatum;
use orbitforge::moduli::{classify_good_pair, good_bracket_family};
use orbitforge::rational::{format_rational, frac, q};
use orbitforge::rootsystem::RootSystem;

fn main() -> orbitforge::Result<()> {
    for (ty, gamma) in [("A3", vec![]), ("B2", vec![2]), ("B2", vec![]), ("G2", vec![])] {
        let rs = Arc::new(RootSystem::new(ty.parse()?)?);
        let verdict = classify_good_pair(&rs, &gamma)?;
        println!("{ty}{gamma:?}: good = {}", verdict.good);
        if !verdict.good {
            continue;
        }
        let levi = LeviDatum::new(rs, &gamma)?;
        let lambda: Vec<_> = (0..levi.complement().len()).map(|i| q(i as i64 + 1)).collect();
        let fam = good_bracket_family(&levi, &lambda, &q(1))?;
        for x in levi.standard_positive().positives() {
            println!("  {x}: f0 = {}, s = {}", format_rational(&fam.f0.value(x)), format_rational(&fam.s.value(x)));
        }
        let member = fam.member(false, &frac(3, 7));
        println!("  -f0 + 3/7 s good: {}", fam.is_good(&levi, &member)?);
    }
    Ok(())
}
