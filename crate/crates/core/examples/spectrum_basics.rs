//! Scattered factors of a few words, and the counting shortcut.
use scatfact::spectra::{
    alternating_pair_count, has_full_k_spectrum, spectrum, spectrum_cardinality,
};
use scatfact::BinaryWord;

fn main() -> scatfact::Result<()> {
    let w: BinaryWord = "ababbb".parse()?;
    println!("ScatFact_3({w}) = {:?}", spectrum(&w, 3)?.to_strings());

    // counting never materialises the set
    let long: BinaryWord = "aaabbbbabaabbbbaaaabbbaa".parse()?;
    for k in [4, 8, 12] {
        println!(
            "|ScatFact_{k}({long})| = {}",
            spectrum_cardinality(&long, k)
        );
    }

    // full k-spectrum iff at least k disjoint ab/ba pairs
    let n = alternating_pair_count(&long);
    println!(
        "{n} alternating pairs; full {n}-spectrum: {}",
        has_full_k_spectrum(&long, n)
    );
    println!("canonical form of {w}: {}", w.canonical());
    Ok(())
}
