//! Reconstruction of strictly balanced words from membership queries against
//! their (possibly balance-filtered) spectra.
//!
//! [`reconstruct_general`] recovers any strictly balanced word of length `2k`
//! from `2(k+1)` queries of length `k+1`. [`reconstruct_two_blocks`] recovers
//! words of `a*b*a*b*a*` using only strictly balanced queries of length `k′`
//! (`k+1` for odd `k`, `k+2` for even `k`).

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::spectra::is_scattered_factor;
use crate::word::{BinaryWord, Symbol};

use Symbol::{A, B};

/// Answers "is `u` a scattered factor of the hidden word?" for `|u| = m`.
pub trait MembershipOracle {
    fn query_length(&self) -> usize;
    /// Whether only strictly balanced queries are answered.
    fn balanced_only(&self) -> bool;
    fn query(&mut self, u: &BinaryWord) -> Result<bool>;
    /// Number of answered queries so far.
    fn query_count(&self) -> usize;
}

/// Oracle backed by a concrete hidden word.
#[derive(Debug, Clone)]
pub struct SpectrumOracle {
    hidden: BinaryWord,
    m: usize,
    balanced_only: bool,
    log: Vec<(BinaryWord, bool)>,
}

impl SpectrumOracle {
    /// Answered queries in order.
    pub fn log(&self) -> &[(BinaryWord, bool)] {
        &self.log
    }
}

pub fn real_oracle(w: &BinaryWord, m: usize, balanced_only: bool) -> SpectrumOracle {
    SpectrumOracle {
        hidden: *w,
        m,
        balanced_only,
        log: Vec::new(),
    }
}

impl MembershipOracle for SpectrumOracle {
    fn query_length(&self) -> usize {
        self.m
    }

    fn balanced_only(&self) -> bool {
        self.balanced_only
    }

    fn query(&mut self, u: &BinaryWord) -> Result<bool> {
        if u.len() != self.m {
            return Err(Error::QueryLength {
                query: u.to_string(),
                len: u.len(),
                expected: self.m,
            });
        }
        if self.balanced_only && !u.is_strictly_balanced() {
            return Err(Error::UnbalancedQuery {
                query: u.to_string(),
            });
        }
        let answer = is_scattered_factor(u, &self.hidden);
        self.log.push((*u, answer));
        Ok(answer)
    }

    fn query_count(&self) -> usize {
        self.log.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    General,
    TwoBlocks,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::General => "general",
            Method::TwoBlocks => "two-blocks",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionResult {
    pub word: BinaryWord,
    pub queries_used: usize,
    pub method: Method,
}

/// `k′`: `k+1` for odd `k`, `k+2` for even `k`.
pub fn two_blocks_query_length(k: usize) -> usize {
    if k % 2 == 1 {
        k + 1
    } else {
        k + 2
    }
}

fn runs(parts: &[(Symbol, usize)]) -> Result<BinaryWord> {
    BinaryWord::from_runs(parts)
}

/// Recovers a strictly balanced word of length `2k` from the answers to
/// `a^i b a^{k-i}` and `b^i a b^{k-i}`, `i ∈ [k]_0`.
///
/// Since there are exactly `k` `a`s, `a^i b a^{k-i}` embeds iff some `b` has
/// exactly `i` `a`s before it. These values, taken over all `b`s, are the
/// `a`-counts at which `b`-runs start; together with the dual set they fix the
/// run structure.
pub fn reconstruct_general<O: MembershipOracle>(
    oracle: &mut O,
    k: usize,
) -> Result<ReconstructionResult> {
    if oracle.query_length() != k + 1 {
        return Err(Error::OutOfRange {
            op: "reconstruct_general",
            constraint: format!(
                "requires query length k+1 = {} (oracle answers length {})",
                k + 1,
                oracle.query_length()
            ),
        });
    }
    let start = oracle.query_count();
    if k == 0 {
        return Ok(ReconstructionResult {
            word: BinaryWord::empty(),
            queries_used: 0,
            method: Method::General,
        });
    }
    // b_at[i]: some b has exactly i a's before it; a_at[i] dually
    let mut b_at = vec![false; k + 1];
    let mut a_at = vec![false; k + 1];
    for i in 0..=k {
        b_at[i] = oracle.query(&runs(&[(A, i), (B, 1), (A, k - i)])?)?;
        a_at[i] = oracle.query(&runs(&[(B, i), (A, 1), (B, k - i)])?)?;
    }
    let word = assemble_from_gaps(k, &b_at, &a_at)?;
    // the candidate must reproduce every answer
    for i in 0..=k {
        let (x, y) = (
            runs(&[(A, i), (B, 1), (A, k - i)])?,
            runs(&[(B, i), (A, 1), (B, k - i)])?,
        );
        if is_scattered_factor(&x, &word) != b_at[i] || is_scattered_factor(&y, &word) != a_at[i] {
            return Err(Error::InconsistentOracle(format!(
                "candidate {word} disagrees with the answers at i = {i}"
            )));
        }
    }
    Ok(ReconstructionResult {
        word,
        queries_used: oracle.query_count() - start,
        method: Method::General,
    })
}

/// Run boundaries: `a`-runs end at the `a`-counts where a `b`-run starts (plus
/// `k`), `b`-runs end at the `b`-counts where an `a`-run starts (plus `k`).
fn assemble_from_gaps(k: usize, b_at: &[bool], a_at: &[bool]) -> Result<BinaryWord> {
    let starts_with_b = b_at[0];
    if starts_with_b == a_at[0] {
        return Err(Error::InconsistentOracle(format!(
            "exactly one of a^{k}-prefixed and b^{k}-prefixed answers must mark the first letter"
        )));
    }
    let ends = |marks: &[bool]| -> Vec<usize> {
        let mut e: Vec<usize> = (1..=k).filter(|&i| marks[i]).collect();
        if e.last() != Some(&k) {
            e.push(k);
        }
        e
    };
    let (a_ends, b_ends) = (ends(b_at), ends(a_at));
    let lengths = |e: &[usize]| -> Vec<usize> {
        e.iter()
            .scan(0, |prev, &x| {
                let len = x - *prev;
                *prev = x;
                Some(len)
            })
            .collect()
    };
    let (a_runs, b_runs) = (lengths(&a_ends), lengths(&b_ends));
    let (first, second, first_sym) = if starts_with_b {
        (&b_runs, &a_runs, B)
    } else {
        (&a_runs, &b_runs, A)
    };
    if !(first.len() == second.len() || first.len() == second.len() + 1) {
        return Err(Error::InconsistentOracle(format!(
            "{} a-runs and {} b-runs cannot alternate",
            a_runs.len(),
            b_runs.len()
        )));
    }
    let mut word = BinaryWord::empty();
    for (t, &len) in first.iter().enumerate() {
        word.push_run(first_sym, len)?;
        if let Some(&other) = second.get(t) {
            word.push_run(first_sym.complement(), other)?;
        }
    }
    Ok(word)
}

/// Run exponent in a query pattern.
#[derive(Debug, Clone, Copy)]
enum Exp {
    Exactly(usize),
    AtLeast(usize),
}

/// Query session for the two-block procedure: caches answers so a repeated
/// query costs nothing and keeps the transcript for the final replay.
struct Session<'a, O: MembershipOracle> {
    oracle: &'a mut O,
    h: usize,
    answers: HashMap<BinaryWord, bool>,
    transcript: Vec<(BinaryWord, bool)>,
}

impl<O: MembershipOracle> Session<'_, O> {
    fn ask(&mut self, u: BinaryWord) -> Result<bool> {
        if let Some(&ans) = self.answers.get(&u) {
            return Ok(ans);
        }
        let ans = self.oracle.query(&u)?;
        self.answers.insert(u, ans);
        self.transcript.push((u, ans));
        Ok(ans)
    }

    fn ask_runs(&mut self, parts: &[(Symbol, usize)]) -> Result<bool> {
        self.ask(runs(parts)?)
    }

    /// Whether some strictly balanced `u` of length `2h` matching the pattern
    /// is in the spectrum; queries candidates until one is.
    fn exists(&mut self, pattern: &[(Symbol, Exp)]) -> Result<bool> {
        for u in pattern_words(pattern, self.h)? {
            if self.ask(u)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Largest `m ∈ range` for which `exists(pattern(m))`, scanning upward.
    fn max_exists(
        &mut self,
        range: std::ops::RangeInclusive<usize>,
        pattern: impl Fn(usize) -> Vec<(Symbol, Exp)>,
    ) -> Result<Option<usize>> {
        let mut best = None;
        for m in range {
            if self.exists(&pattern(m))? {
                best = Some(m);
            }
        }
        Ok(best)
    }
}

/// All strictly balanced words of length `2h` matching the run pattern, in a
/// fixed order without repeats.
fn pattern_words(pattern: &[(Symbol, Exp)], h: usize) -> Result<Vec<BinaryWord>> {
    fn go(
        pattern: &[(Symbol, Exp)],
        left: [usize; 2],
        acc: &mut Vec<(Symbol, usize)>,
        out: &mut Vec<Vec<(Symbol, usize)>>,
    ) {
        let Some(&(sym, exp)) = pattern.first() else {
            if left == [0, 0] {
                out.push(acc.clone());
            }
            return;
        };
        let avail = left[sym.bit() as usize];
        let choices: Vec<usize> = match exp {
            Exp::Exactly(e) => (e <= avail).then_some(e).into_iter().collect(),
            Exp::AtLeast(lo) => (lo..=avail).collect(),
        };
        for e in choices {
            let mut rest = left;
            rest[sym.bit() as usize] -= e;
            acc.push((sym, e));
            go(&pattern[1..], rest, acc, out);
            acc.pop();
        }
    }
    let mut shapes = Vec::new();
    go(pattern, [h, h], &mut Vec::new(), &mut shapes);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for shape in shapes {
        let u = runs(&shape)?;
        if seen.insert(u) {
            out.push(u);
        }
    }
    Ok(out)
}

fn not_in_family(msg: impl Into<String>) -> Error {
    Error::NotInFamily(msg.into())
}

/// Recovers `w = a^i b^j a^ℓ b^{k-j} a^{k-i-ℓ}` from strictly balanced
/// queries of length `k′ = 2h`.
///
/// The case analysis: decide whether `w` has two `b`-blocks; with one block
/// read `i` from `a^m b^h a^{h-m}` queries; with two blocks split on `ℓ ≥ h`,
/// read the outer `a`-exponents and `ℓ` as maximal exponents of run patterns,
/// and locate `j` the same way, resolving the one remaining tie (odd `k`,
/// `{j, k-j} = {h-1, h}`) by where `b^h` can sit relative to the outer
/// `a`-blocks. For even `k` every threshold uses `h = k/2 + 1`.
pub fn reconstruct_two_blocks<O: MembershipOracle>(
    oracle: &mut O,
    k: usize,
) -> Result<ReconstructionResult> {
    let kp = two_blocks_query_length(k);
    if k == 0 {
        return Ok(ReconstructionResult {
            word: BinaryWord::empty(),
            queries_used: 0,
            method: Method::TwoBlocks,
        });
    }
    if oracle.query_length() != kp {
        return Err(Error::OutOfRange {
            op: "reconstruct_two_blocks",
            constraint: format!(
                "requires query length k′ = {kp} (oracle answers length {})",
                oracle.query_length()
            ),
        });
    }
    let h = kp / 2;
    let start = oracle.query_count();
    let mut s = Session {
        oracle,
        h,
        answers: HashMap::new(),
        transcript: Vec::new(),
    };
    let any = Exp::AtLeast(0);
    let some = Exp::AtLeast(1);

    let two_blocks = s.exists(&[(A, any), (B, some), (A, some), (B, some), (A, any)])?;
    let word = if !two_blocks {
        // a^i b^k a^{k-i}
        let i = if s.ask_runs(&[(A, h), (B, h)])? {
            let mut best = None;
            for m in 0..=h {
                if s.ask_runs(&[(A, h - m), (B, h), (A, m)])? {
                    best = Some(m);
                }
            }
            let tail = best.ok_or_else(|| not_in_family("no a^p b^h a^q answered yes"))?;
            k.checked_sub(tail)
                .ok_or_else(|| not_in_family("trailing a-block longer than k"))?
        } else {
            let mut best = None;
            for m in 0..=h {
                if s.ask_runs(&[(A, m), (B, h), (A, h - m)])? {
                    best = Some(m);
                }
            }
            best.ok_or_else(|| not_in_family("no a^p b^h a^q answered yes"))?
        };
        runs(&[(A, i), (B, k), (A, k - i)])?
    } else {
        two_block_word(&mut s, k)?
    };

    for (u, ans) in &s.transcript {
        if is_scattered_factor(u, &word) != *ans {
            return Err(not_in_family(format!(
                "candidate {word} contradicts the answer for {u}"
            )));
        }
    }
    Ok(ReconstructionResult {
        word,
        queries_used: s.oracle.query_count() - start,
        method: Method::TwoBlocks,
    })
}

fn two_block_word<O: MembershipOracle>(s: &mut Session<'_, O>, k: usize) -> Result<BinaryWord> {
    use Exp::{AtLeast, Exactly};
    let h = s.h;
    let any = AtLeast(0);
    let some = AtLeast(1);
    let missing = |what: &str| not_in_family(format!("no query witnessed {what}"));
    if h < 2 {
        return Err(not_in_family(
            "two b-blocks need at least two b's per query",
        ));
    }

    let (i, l, r, j);
    if s.exists(&[(B, some), (A, Exactly(h)), (B, some)])? {
        // ℓ ≥ h, so both outer a-blocks are shorter than h
        i = s
            .max_exists(0..=h - 1, |m| {
                vec![(A, Exactly(m)), (B, some), (A, some), (B, some), (A, any)]
            })?
            .ok_or_else(|| missing("the leading a-block"))?;
        r = s
            .max_exists(0..=h - 1, |m| {
                vec![(A, any), (B, some), (A, some), (B, some), (A, Exactly(m))]
            })?
            .ok_or_else(|| missing("the trailing a-block"))?;
        l = k
            .checked_sub(i + r)
            .filter(|&l| l >= h)
            .ok_or_else(|| not_in_family("outer a-blocks leave no middle block of length ≥ h"))?;
        j = if s.ask_runs(&[(A, h), (B, h)])? {
            // second b-block has at least h b's, so j < h
            s.max_exists(1..=h - 1, |m| {
                vec![(B, Exactly(m)), (A, some), (B, some), (A, any)]
            })?
            .ok_or_else(|| missing("the first b-block"))?
        } else {
            let second = s
                .max_exists(1..=h - 1, |m| {
                    vec![(A, any), (B, some), (A, some), (B, Exactly(m))]
                })?
                .ok_or_else(|| missing("the second b-block"))?;
            k.checked_sub(second)
                .ok_or_else(|| not_in_family("second b-block longer than k"))?
        };
    } else {
        l = s
            .max_exists(1..=h - 1, |m| {
                vec![(A, any), (B, some), (A, Exactly(m)), (B, some), (A, any)]
            })?
            .ok_or_else(|| missing("the middle a-block"))?;
        let m1 = s
            .max_exists(0..=h - 1, |m| {
                vec![(A, Exactly(m)), (B, some), (A, some), (B, some), (A, any)]
            })?
            .ok_or_else(|| missing("the leading a-block"))?;
        let m2 = s
            .max_exists(0..=h - 1, |m| {
                vec![(A, any), (B, some), (A, some), (B, some), (A, Exactly(m))]
            })?
            .ok_or_else(|| missing("the trailing a-block"))?;
        let outer = k
            .checked_sub(l)
            .ok_or_else(|| not_in_family("middle block longer than k"))?;
        i = if m1 < h - 1 {
            m1
        } else if m2 < h - 1 {
            outer
                .checked_sub(m2)
                .ok_or_else(|| not_in_family("outer blocks exceed k"))?
        } else if k % 2 == 1 && l == 1 {
            // both outer blocks reach h-1: i + r = k-1 = 2(h-1)
            h - 1
        } else {
            return Err(not_in_family(
                "both outer a-blocks saturate but ℓ + 2(h-1) ≠ k",
            ));
        };
        r = outer
            .checked_sub(i)
            .ok_or_else(|| not_in_family("outer blocks exceed k"))?;

        let m1p = s
            .max_exists(1..=h - 1, |m| {
                vec![(A, any), (B, Exactly(m)), (A, some), (B, some), (A, any)]
            })?
            .ok_or_else(|| missing("the first b-block"))?;
        let m2p = s
            .max_exists(1..=h - 1, |m| {
                vec![(A, any), (B, some), (A, some), (B, Exactly(m)), (A, any)]
            })?
            .ok_or_else(|| missing("the second b-block"))?;
        j = if m1p < h - 1 {
            m1p
        } else if m2p < h - 1 {
            k.checked_sub(m2p)
                .ok_or_else(|| not_in_family("second b-block longer than k"))?
        } else if k.is_multiple_of(2) {
            // j, k-j ≥ h-1 = k/2
            h - 1
        } else if r < h {
            // {j, k-j} = {h-1, h}: with j = h, b^h fits in the first block and
            // more than r a's can follow it
            let first_holds_h = (r + 1..=h).try_fold(false, |found, q| -> Result<bool> {
                Ok(found || s.ask_runs(&[(A, h - q), (B, h), (A, q)])?)
            })?;
            if first_holds_h {
                h
            } else {
                h - 1
            }
        } else {
            // mirror: with k-j = h, b^h fits in the second block and more than
            // i a's can precede it
            let second_holds_h = (i + 1..=h).try_fold(false, |found, p| -> Result<bool> {
                Ok(found || s.ask_runs(&[(A, p), (B, h), (A, h - p)])?)
            })?;
            if second_holds_h {
                k - h
            } else {
                h
            }
        };
    }
    if j == 0 || j >= k || l == 0 {
        return Err(not_in_family("case analysis produced a degenerate block"));
    }
    runs(&[(A, i), (B, j), (A, l), (B, k - j), (A, r)])
}

/// Every word of `a*b*a*b*a*` with `k` `a`s and `k` `b`s, in lexicographic
/// order.
pub fn two_block_words(k: usize) -> Result<Vec<BinaryWord>> {
    let mut out = HashSet::new();
    for i in 0..=k {
        for l in 0..=k - i {
            for j in 0..=k {
                out.insert(runs(&[(A, i), (B, j), (A, l), (B, k - j), (A, k - i - l)])?);
            }
        }
    }
    let mut v: Vec<_> = out.into_iter().collect();
    v.sort();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn balanced_words(k: usize) -> impl Iterator<Item = BinaryWord> {
        (0..1u128 << (2 * k))
            .filter(move |x| x.count_ones() as usize == k)
            .map(move |x| BinaryWord::from_index(x, 2 * k).unwrap())
    }

    #[test]
    fn oracle_examples() {
        let mut o = real_oracle(&w("abba"), 2, false);
        assert!(o.query(&w("ab")).unwrap());
        let mut f = real_oracle(&w("abba"), 2, true);
        assert!(matches!(
            f.query(&w("aa")),
            Err(Error::UnbalancedQuery { .. })
        ));
        assert_eq!(f.query_count(), 0);
        let mut o3 = real_oracle(&w("abba"), 3, false);
        assert!(!o3.query(&w("bbb")).unwrap());
        assert!(matches!(o3.query(&w("ab")), Err(Error::QueryLength { .. })));
        assert_eq!(o3.log().len(), 1);
    }

    #[test]
    fn general_examples() {
        for (hidden, k) in [
            ("aabb", 2),
            ("ababab", 3),
            ("aaaabbbb", 4),
            ("ab", 1),
            ("ba", 1),
        ] {
            let mut o = real_oracle(&w(hidden), k + 1, false);
            let r = reconstruct_general(&mut o, k).unwrap();
            assert_eq!(r.word, w(hidden));
            assert_eq!(r.queries_used, 2 * (k + 1));
            assert_eq!(r.method, Method::General);
        }
        let mut o = real_oracle(&BinaryWord::empty(), 1, false);
        assert_eq!(
            reconstruct_general(&mut o, 0).unwrap().word,
            BinaryWord::empty()
        );
    }

    #[test]
    fn general_rejects_wrong_query_length() {
        let mut o = real_oracle(&w("aabb"), 2, false);
        assert!(matches!(
            reconstruct_general(&mut o, 2),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn general_round_trip_exhaustive() {
        for k in 0..=6 {
            for hidden in balanced_words(k) {
                let mut o = real_oracle(&hidden, k + 1, false);
                let r = reconstruct_general(&mut o, k).unwrap();
                assert_eq!(r.word, hidden);
                assert!(r.queries_used <= 2 * (k + 1));
            }
        }
    }

    struct Liar {
        m: usize,
        count: usize,
    }

    impl MembershipOracle for Liar {
        fn query_length(&self) -> usize {
            self.m
        }
        fn balanced_only(&self) -> bool {
            false
        }
        fn query(&mut self, _u: &BinaryWord) -> Result<bool> {
            self.count += 1;
            Ok(true)
        }
        fn query_count(&self) -> usize {
            self.count
        }
    }

    #[test]
    fn inconsistent_answers_are_reported() {
        let mut liar = Liar { m: 4, count: 0 };
        assert!(matches!(
            reconstruct_general(&mut liar, 3),
            Err(Error::InconsistentOracle(_))
        ));
        let mut liar = Liar { m: 6, count: 0 };
        assert!(matches!(
            reconstruct_two_blocks(&mut liar, 5),
            Err(Error::NotInFamily(_))
        ));
    }

    #[test]
    fn two_blocks_examples() {
        for (hidden, k) in [
            ("aabbbabbaa", 5),
            ("aaabbbbbaa", 5),
            ("aabbaabb", 4),
            ("ab", 1),
            ("ba", 1),
        ] {
            let kp = two_blocks_query_length(k);
            let mut o = real_oracle(&w(hidden), kp, true);
            let r = reconstruct_two_blocks(&mut o, k).unwrap();
            assert_eq!(r.word, w(hidden), "k={k}");
            assert_eq!(r.method, Method::TwoBlocks);
        }
        assert_eq!(two_blocks_query_length(4), 6);
        assert_eq!(two_blocks_query_length(5), 6);
    }

    #[test]
    fn two_blocks_round_trip_exhaustive() {
        for k in 0..=8 {
            let kp = two_blocks_query_length(k);
            for hidden in two_block_words(k).unwrap() {
                let mut o = real_oracle(&hidden, kp, true);
                let r =
                    reconstruct_two_blocks(&mut o, k).unwrap_or_else(|e| panic!("{hidden}: {e}"));
                assert_eq!(r.word, hidden);
            }
        }
    }

    #[test]
    fn two_block_words_are_the_family() {
        for k in 0..=6 {
            let fam = two_block_words(k).unwrap();
            // a*b*a*b*a* is exactly the words with at most two b-runs
            let brute: Vec<_> = balanced_words(k)
                .filter(|x| x.blocks().count(B) <= 2)
                .collect();
            assert_eq!(fam, brute, "k={k}");
        }
    }

    #[test]
    fn outside_family_is_not_reconstructed() {
        let hidden = w("abababab");
        let mut o = real_oracle(&hidden, 6, true);
        match reconstruct_two_blocks(&mut o, 4) {
            Ok(r) => assert_ne!(r.word, hidden),
            Err(e) => assert!(matches!(e, Error::NotInFamily(_))),
        }
    }
}
