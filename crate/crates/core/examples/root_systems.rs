//! Chevalley data for a few simple types.

use orbitforge::rootsystem::RootSystem;

fn main() -> orbitforge::Result<()> {
    for ty in ["A2", "B2", "G2", "D4", "E6"] {
        let rs = RootSystem::new(ty.parse()?)?;
        println!(
            "{ty}: rank {}, dim {}, {} positive roots, highest root {:?}, jacobi ok = {}",
            rs.rank(),
            rs.dim(),
            rs.num_positive(),
            rs.highest_root(),
            rs.jacobi_violation().is_none()
        );
    }
    let g2 = RootSystem::new("G2".parse()?)?;
    println!("G2 Cartan matrix: {:?}", g2.cartan_matrix());
    Ok(())
}
