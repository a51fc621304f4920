//! Invariant Poisson cohomology of a φ-bracket and of the KKS bracket.

use std::sync::Arc;

use orbitforge::cohomology::{profile_in, InvariantComplex};
use orbitforge::levi::LeviDatum;
use orbitforge::moduli::solve_ff_standard;
use orbitforge::multivec::kks;
use orbitforge::rational::q;
use orbitforge::rootsystem::RootSystem;

fn main() -> orbitforge::Result<()> {
    for (ty, gamma) in [("A2", vec![]), ("B2", vec![]), ("A3", vec![2])] {
        let rs = Arc::new(RootSystem::new(ty.parse()?)?);
        let levi = LeviDatum::new(rs, &gamma)?;
        let n = levi.complement().len();
        let cx = InvariantComplex::full(&levi)?;
        let seeds: Vec<_> = (0..n).map(|i| q(2 * i as i64 + 3)).collect();
        let f = solve_ff_standard(&levi, &seeds, &q(1))?.c;
        let p = profile_in(&cx, &levi, &f, &q(1))?;
        println!("{ty}{gamma:?} chains {:?}", p.chain_dims);
        println!("  phi-bracket H* {:?}", p.h_dims);
        let lambda: Vec<_> = (0..n).map(|i| q(i as i64 + 1)).collect();
        let pk = profile_in(&cx, &levi, &kks(&levi, &lambda)?, &q(0))?;
        println!("  KKS H* {:?}", pk.h_dims);
    }
    Ok(())
}
