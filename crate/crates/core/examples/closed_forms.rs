//! Closed-form cardinalities checked against brute force.
use scatfact::closed_forms::{grid, master_check, Formula, GenSquares};

fn main() -> scatfact::Result<()> {
    let formulas = [
        Formula::AlternatingPrefix { n: 12, l: 7 },
        Formula::AbPowerA { k: 6, c: 2, i: 3 },
        Formula::Min { k: 6, c: 3, i: 2 },
        Formula::OneMissing { k: 6, i: 2 },
        Formula::GenSquares {
            variant: GenSquares::Sandwich,
            k: 6,
            param: 2,
        },
        Formula::Square { k: 8 },
        Formula::StrictCompositions {
            total: 8,
            parts: 4,
            bound: 4,
        },
    ];
    for f in formulas {
        let value = f.evaluate()?.value;
        println!("{f}: {value} (brute force {})", f.oracle()?);
    }

    let g = grid(14, 10);
    let bad = master_check(&g)?;
    println!("{} tuples checked, {} disagreements", g.len(), bad.len());
    for m in bad.iter().take(3) {
        println!("  {}: {} vs {}", m.formula, m.value, m.oracle);
    }
    Ok(())
}
