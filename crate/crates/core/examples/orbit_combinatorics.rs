//! Quasiroots, positive systems and Betti numbers of a few flag manifolds.

use std::sync::Arc;

use orbitforge::levi::{betti_numbers, LeviDatum};
use orbitforge::rootsystem::RootSystem;

fn main() -> orbitforge::Result<()> {
    for (ty, gamma) in [("A2", vec![]), ("A3", vec![2]), ("B2", vec![2]), ("G2", vec![])] {
        let rs = Arc::new(RootSystem::new(ty.parse()?)?);
        let levi = LeviDatum::new(rs.clone(), &gamma)?;
        let pos = levi.standard_positive();
        let keys: Vec<String> = pos.positives().iter().map(|x| x.to_string()).collect();
        println!("{ty}{gamma:?}: dim m = {}, positive quasiroots {}", levi.dim_m(), keys.join(" "));
        for x in pos.positives() {
            println!("  {x} <- {} roots, height {}", levi.fiber(x).map_or(0, |f| f.len()), pos.height(x).unwrap_or(0));
        }
        println!("  betti {:?}", betti_numbers(&rs, &gamma)?);
    }
    Ok(())
}
