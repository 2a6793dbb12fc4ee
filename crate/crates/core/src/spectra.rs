//! k-spectra: the set of distinct length-k scattered factors (subsequences) of a
//! word, its cardinality, and related predicates.
//!
//! Sets are stored as flat `2^k`-bit membership tables indexed by the packed
//! word encoding (`a = 0`, `b = 1`, leftmost symbol most significant), so the
//! ascending index order is the lexicographic order of the members.

use std::io::Write;

use crate::error::{Error, Result};
use crate::word::{BinaryWord, Symbol};

/// Largest factor length for which a [`Spectrum`] set is materialized.
pub const MAX_SPECTRUM_K: usize = 25;

/// `ScatFact_k(w)` as a membership set over all `2^k` words of length `k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Spectrum {
    k: usize,
    bits: Vec<u64>,
}

impl Spectrum {
    pub fn empty(k: usize) -> Result<Self> {
        if k > MAX_SPECTRUM_K {
            return Err(Error::SpectrumTooLarge {
                k,
                max: MAX_SPECTRUM_K,
            });
        }
        Ok(Spectrum {
            k,
            bits: vec![0; (1usize << k).div_ceil(64)],
        })
    }

    /// The set of all `2^k` words of length `k`.
    pub fn full(k: usize) -> Result<Self> {
        let mut s = Spectrum::empty(k)?;
        for i in 0..(1usize << k) {
            s.insert_index(i);
        }
        Ok(s)
    }

    pub fn from_words<I: IntoIterator<Item = BinaryWord>>(k: usize, words: I) -> Result<Self> {
        let mut s = Spectrum::empty(k)?;
        for w in words {
            s.insert(w)?;
        }
        Ok(s)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn insert_index(&mut self, idx: usize) {
        self.bits[idx / 64] |= 1u64 << (idx % 64);
    }

    fn contains_index(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn insert(&mut self, w: BinaryWord) -> Result<bool> {
        if w.len() != self.k {
            return Err(Error::OutOfRange {
                op: "Spectrum::insert",
                constraint: format!("member {w} must have length {}", self.k),
            });
        }
        let idx = w.index() as usize;
        let fresh = !self.contains_index(idx);
        self.insert_index(idx);
        Ok(fresh)
    }

    pub fn contains(&self, w: &BinaryWord) -> bool {
        w.len() == self.k && self.contains_index(w.index() as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    /// Members in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = BinaryWord> + '_ {
        let k = self.k;
        self.bits
            .iter()
            .enumerate()
            .flat_map(move |(chunk, &word)| {
                let mut rest = word;
                std::iter::from_fn(move || {
                    if rest == 0 {
                        return None;
                    }
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(BinaryWord::from_index((chunk * 64 + bit) as u128, k).unwrap())
                })
            })
    }

    fn zip_with(&self, other: &Spectrum, op: impl Fn(u64, u64) -> u64) -> Spectrum {
        assert_eq!(self.k, other.k, "spectra of different lengths");
        Spectrum {
            k: self.k,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(&x, &y)| op(x, y))
                .collect(),
        }
    }

    pub fn union(&self, other: &Spectrum) -> Spectrum {
        self.zip_with(other, |x, y| x | y)
    }

    pub fn intersection(&self, other: &Spectrum) -> Spectrum {
        self.zip_with(other, |x, y| x & y)
    }

    pub fn difference(&self, other: &Spectrum) -> Spectrum {
        self.zip_with(other, |x, y| x & !y)
    }

    pub fn symmetric_difference(&self, other: &Spectrum) -> Spectrum {
        self.zip_with(other, |x, y| x ^ y)
    }

    pub fn is_subset(&self, other: &Spectrum) -> bool {
        self.k == other.k
            && self
                .bits
                .iter()
                .zip(&other.bits)
                .all(|(&x, &y)| x & !y == 0)
    }

    /// `Σ^k` minus this set.
    pub fn complement(&self) -> Spectrum {
        Spectrum::full(self.k).unwrap().difference(self)
    }

    /// Members with as many `a`s as `b`s.
    pub fn strictly_balanced(&self) -> Spectrum {
        let mut out = Spectrum::empty(self.k).unwrap();
        for w in self.iter().filter(|w| w.is_strictly_balanced()) {
            out.insert_index(w.index() as usize);
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.iter().map(|w| w.to_string()).collect()
    }

    /// JSON array of members in lexicographic order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_strings()).expect("string list serializes")
    }

    /// CSV with header `index,word`, one row per member in index order.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["index", "word"])?;
        for w in self.iter() {
            wtr.write_record([w.index().to_string(), w.to_string()])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

impl std::fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `ScatFact_{≤k}(w)`: the spectra for every length `0..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSpectrum {
    pub levels: Vec<Spectrum>,
}

impl FullSpectrum {
    pub fn level(&self, j: usize) -> Option<&Spectrum> {
        self.levels.get(j)
    }
}

/// Greedy left-to-right subsequence test.
pub fn is_scattered_factor(u: &BinaryWord, w: &BinaryWord) -> bool {
    if u.len() > w.len() {
        return false;
    }
    let mut matched = 0;
    for s in w.symbols() {
        if matched == u.len() {
            break;
        }
        if u.get(matched) == s {
            matched += 1;
        }
    }
    matched == u.len()
}

/// `next[p][c]`: smallest position `q ≥ p` with `w[q] = c`, or `len` if none.
fn next_occurrence(w: &BinaryWord) -> Vec<[usize; 2]> {
    let n = w.len();
    let mut next = vec![[n, n]; n + 1];
    for p in (0..n).rev() {
        next[p] = next[p + 1];
        next[p][w.get(p).bit() as usize] = p;
    }
    next
}

/// `ScatFact_k(w)`. Empty when `k > |w|`.
///
/// Walks the subsequence automaton of `w`, which reaches every distinct
/// subsequence exactly once through its leftmost embedding.
pub fn spectrum(w: &BinaryWord, k: usize) -> Result<Spectrum> {
    let mut out = Spectrum::empty(k)?;
    if k > w.len() {
        return Ok(out);
    }
    let next = next_occurrence(w);
    let n = w.len();
    // (position, depth, packed prefix)
    let mut stack = vec![(0usize, 0usize, 0usize)];
    while let Some((pos, depth, code)) = stack.pop() {
        if depth == k {
            out.insert_index(code);
            continue;
        }
        for (c, &q) in next[pos].iter().enumerate() {
            if q < n && n - (q + 1) >= k - depth - 1 {
                stack.push((q + 1, depth + 1, code << 1 | c));
            }
        }
    }
    Ok(out)
}

/// `|ScatFact_k(w)|` without materializing the set.
///
/// `D(i, l)`, the number of distinct length-`l` subsequences of `w[..i]`,
/// satisfies `D(i, l) = D(i-1, l) + D(i-1, l-1) - D(p-1, l-1)` where `p` is the
/// previous occurrence of `w[i]` (the last term is dropped if there is none).
pub fn spectrum_cardinality(w: &BinaryWord, k: usize) -> u128 {
    if k > w.len() {
        return 0;
    }
    let mut dp = vec![0u128; k + 1];
    dp[0] = 1;
    // D(p-1, ·) for the most recent occurrence p of each letter
    let mut before_last: [Option<Vec<u128>>; 2] = [None, None];
    for s in w.symbols() {
        let c = s.bit() as usize;
        let snapshot = dp.clone();
        for l in (1..=k).rev() {
            let repeated = before_last[c].as_ref().map_or(0, |prev| prev[l - 1]);
            dp[l] = dp[l] + snapshot[l - 1] - repeated;
        }
        before_last[c] = Some(snapshot);
    }
    dp[k]
}

/// `ScatFact_j(w)` for `j = 0..=k`.
pub fn full_spectrum(w: &BinaryWord, k: usize) -> Result<FullSpectrum> {
    let levels = (0..=k)
        .map(|j| spectrum(w, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(FullSpectrum { levels })
}

/// Largest `t` such that some element of `{ab, ba}^t` embeds in `w`.
///
/// Greedily closes a pair at the first letter that differs from the pair's
/// opening letter; the earliest-closing choice is optimal.
pub fn alternating_pair_count(w: &BinaryWord) -> usize {
    let mut pairs = 0;
    let mut open: Option<Symbol> = None;
    for s in w.symbols() {
        match open {
            None => open = Some(s),
            Some(first) if first != s => {
                pairs += 1;
                open = None;
            }
            Some(_) => {}
        }
    }
    pairs
}

/// Whether `ScatFact_k(w) = Σ^k`, decided through `{ab,ba}^k ∩ ScatFact_{2k}(w) ≠ ∅`.
pub fn has_full_k_spectrum(w: &BinaryWord, k: usize) -> bool {
    alternating_pair_count(w) >= k
}

pub fn spectra_equal(w1: &BinaryWord, w2: &BinaryWord, k: usize) -> Result<bool> {
    Ok(spectrum(w1, k)? == spectrum(w2, k)?)
}

/// `ScatFact_k(w) ∩ Σ^k_sb`; empty for odd `k`.
pub fn balanced_subspectrum(w: &BinaryWord, k: usize) -> Result<Spectrum> {
    if k % 2 == 1 {
        return Spectrum::empty(k);
    }
    Ok(spectrum(w, k)?.strictly_balanced())
}
