//! The standard r-matrix and its Schouten square.

use orbitforge::multivec::verify_cybe;
use orbitforge::rootsystem::RootSystem;

fn main() -> orbitforge::Result<()> {
    for ty in ["A1", "A2", "B2", "G2"] {
        let rs = RootSystem::new(ty.parse()?)?;
        let (phi, invariant) = verify_cybe(&rs)?;
        println!("{ty}: [[r,r]] has {} terms, invariant = {invariant}", phi.len());
    }
    Ok(())
}
