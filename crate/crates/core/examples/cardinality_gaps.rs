//! Which spectrum sizes occur among balanced words of length 2k.
use scatfact::explorer::{achievable_cardinalities, verify_gap_theorems_on, ExploreOptions};

fn main() -> scatfact::Result<()> {
    for k in 3..=7 {
        let r = achievable_cardinalities(
            k,
            ExploreOptions {
                orbits: true,
                jobs: None,
            },
        )?;
        let sizes: Vec<_> = r.achieved.keys().collect();
        println!("k={k}: {sizes:?}");
        println!("{}", verify_gap_theorems_on(&r)?);
    }
    Ok(())
}
