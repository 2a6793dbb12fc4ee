//! Distinct scattered factors of an alternating word via normal-form
//! deleting sequences, without duplicates.
use scatfact::delseq::{count_normal_forms, enumerate_distinct, normal_forms};
use scatfact::spectra::spectrum_cardinality;
use scatfact::FamilySpec;

fn main() -> scatfact::Result<()> {
    let (n, l) = (9, 5);
    let x = FamilySpec::AlternatingPrefix { n }.word()?;
    let words: Vec<_> = enumerate_distinct(n, l)?.collect();
    println!("{x}: {} distinct factors of length {l}", words.len());
    for u in words.iter().take(8) {
        println!("  {u}");
    }
    println!("normal forms: {}", count_normal_forms(n, n - l)?);
    println!("dp count:     {}", spectrum_cardinality(&x, l));
    for nf in normal_forms(n, n - l)?.take(3) {
        println!("  e.g. {}", nf.to_sequence(n)?);
    }
    Ok(())
}
