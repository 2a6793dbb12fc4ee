//! Recovering a hidden balanced word from membership queries.
use scatfact::reconstruct::{
    real_oracle, reconstruct_general, reconstruct_two_blocks, two_blocks_query_length,
};
use scatfact::BinaryWord;

fn main() -> scatfact::Result<()> {
    let hidden: BinaryWord = "abbabaab".parse()?;
    let k = hidden.len() / 2;
    let mut oracle = real_oracle(&hidden, k + 1, false);
    let r = reconstruct_general(&mut oracle, k)?;
    println!("general: {} in {} queries", r.word, r.queries_used);

    // two a-blocks and two b-blocks, queries restricted to balanced words
    let hidden: BinaryWord = "aaabbbbabbaa".parse()?;
    let k = hidden.len() / 2;
    let mut oracle = real_oracle(&hidden, two_blocks_query_length(k), true);
    let r = reconstruct_two_blocks(&mut oracle, k)?;
    println!(
        "two blocks: {} in {} queries of length {}",
        r.word,
        r.queries_used,
        two_blocks_query_length(k)
    );
    for (q, yes) in oracle.log().iter().take(5) {
        println!("  {q}? {yes}");
    }
    Ok(())
}
