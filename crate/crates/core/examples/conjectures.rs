//! Open questions checked on small ranges.
use scatfact::closed_forms::remark_inequality;
use scatfact::explorer::{
    check_last_gap_conjecture, check_nk_families, check_reconstruction_conjecture,
    check_theta_conjecture, verify_theta_palindromes, ExploreOptions,
};

fn main() -> scatfact::Result<()> {
    println!("{}", check_last_gap_conjecture(7)?);
    println!("{}", check_theta_conjecture(2..=7)?);
    println!("{}", verify_theta_palindromes(6)?);
    println!(
        "{}",
        check_reconstruction_conjecture(5, ExploreOptions::default())?
    );
    println!("{}", check_nk_families(2, 8)?);
    for i in 1..=5 {
        let r = remark_inequality(i)?;
        println!("i={i}: {} > {}? {}", r.m_form, r.strict_form, r.holds());
    }
    Ok(())
}
