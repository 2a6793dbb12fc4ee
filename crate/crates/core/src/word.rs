//! Binary words over `{a, b}`.
//!
//! A [`BinaryWord`] packs up to [`CAPACITY`] symbols into a `u128`, most
//! significant symbol first, with `a ↦ 0` and `b ↦ 1`. For words of equal
//! length the packed value therefore orders exactly like the lexicographic
//! order with `a < b`, and for words of length `k ≤ 25` it is the index used by
//! [`crate::spectra::Spectrum`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Maximum number of symbols in a [`BinaryWord`].
pub const CAPACITY: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    A,
    B,
}

impl Symbol {
    pub fn bit(self) -> u128 {
        match self {
            Symbol::A => 0,
            Symbol::B => 1,
        }
    }

    pub fn from_bit(bit: u128) -> Symbol {
        if bit & 1 == 0 {
            Symbol::A
        } else {
            Symbol::B
        }
    }

    pub fn complement(self) -> Symbol {
        match self {
            Symbol::A => Symbol::B,
            Symbol::B => Symbol::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::A => 'a',
            Symbol::B => 'b',
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word over `{a, b}`. Immutable and `Copy`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BinaryWord {
    bits: u128,
    len: usize,
}

fn mask(len: usize) -> u128 {
    if len >= 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

impl BinaryWord {
    pub const fn empty() -> Self {
        BinaryWord { bits: 0, len: 0 }
    }

    /// Builds the word of length `len` whose packed (MSB-first) value is
    /// `index`.
    pub fn from_index(index: u128, len: usize) -> Result<Self> {
        if len > CAPACITY {
            return Err(Error::TooLong {
                len,
                capacity: CAPACITY,
            });
        }
        if index & !mask(len) != 0 {
            return Err(Error::OutOfRange {
                op: "from_index",
                constraint: format!("index {index} does not fit in {len} symbols"),
            });
        }
        Ok(BinaryWord { bits: index, len })
    }

    /// `sym^n`
    pub fn power(sym: Symbol, n: usize) -> Result<Self> {
        let mut w = BinaryWord::empty();
        w.push_run(sym, n)?;
        Ok(w)
    }

    /// Concatenation of `(symbol, length)` runs; zero-length runs are allowed.
    pub fn from_runs(runs: &[(Symbol, usize)]) -> Result<Self> {
        let mut w = BinaryWord::empty();
        for &(sym, n) in runs {
            w.push_run(sym, n)?;
        }
        Ok(w)
    }

    pub fn index(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Symbol at 0-based position `i`.
    ///
    /// Panics if `i >= len`.
    pub fn get(&self, i: usize) -> Symbol {
        assert!(
            i < self.len,
            "index {i} out of bounds for word of length {}",
            self.len
        );
        Symbol::from_bit(self.bits >> (self.len - 1 - i))
    }

    pub fn symbols(&self) -> impl DoubleEndedIterator<Item = Symbol> + ExactSizeIterator + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn count_b(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn count_a(&self) -> usize {
        self.len - self.count_b()
    }

    pub fn count(&self, sym: Symbol) -> usize {
        match sym {
            Symbol::A => self.count_a(),
            Symbol::B => self.count_b(),
        }
    }

    pub fn push(&mut self, sym: Symbol) -> Result<()> {
        self.push_run(sym, 1)
    }

    pub fn push_run(&mut self, sym: Symbol, n: usize) -> Result<()> {
        if self.len + n > CAPACITY {
            return Err(Error::TooLong {
                len: self.len + n,
                capacity: CAPACITY,
            });
        }
        if n == 0 {
            return Ok(());
        }
        let shifted = if n >= 128 { 0 } else { self.bits << n };
        let run = if sym == Symbol::B { mask(n) } else { 0 };
        self.bits = shifted | run;
        self.len += n;
        Ok(())
    }

    pub fn concat(&self, other: &BinaryWord) -> Result<Self> {
        let len = self.len + other.len;
        if len > CAPACITY {
            return Err(Error::TooLong {
                len,
                capacity: CAPACITY,
            });
        }
        let shifted = if other.len >= 128 {
            0
        } else {
            self.bits << other.len
        };
        Ok(BinaryWord {
            bits: shifted | other.bits,
            len,
        })
    }

    /// `self^n`
    pub fn repeat(&self, n: usize) -> Result<Self> {
        let mut w = BinaryWord::empty();
        for _ in 0..n {
            w = w.concat(self)?;
        }
        Ok(w)
    }

    /// The factor `w[start..end)` (0-based, half open).
    pub fn slice(&self, start: usize, end: usize) -> BinaryWord {
        assert!(start <= end && end <= self.len);
        let len = end - start;
        BinaryWord {
            bits: (self.bits >> (self.len - end)) & mask(len),
            len,
        }
    }

    /// `w^R`
    pub fn reverse(&self) -> BinaryWord {
        if self.len == 0 {
            return *self;
        }
        BinaryWord {
            bits: self.bits.reverse_bits() >> (128 - self.len),
            len: self.len,
        }
    }

    /// Image under the renaming morphism `a ↔ b`.
    pub fn rename(&self) -> BinaryWord {
        BinaryWord {
            bits: self.bits ^ mask(self.len),
            len: self.len,
        }
    }

    /// The images of `w` under identity, reversal, renaming and both.
    pub fn orbit(&self) -> [BinaryWord; 4] {
        let r = self.reverse();
        [*self, r, self.rename(), r.rename()]
    }

    /// Lexicographically smallest member of the orbit.
    pub fn canonical(&self) -> BinaryWord {
        // equal lengths, so packed order is lexicographic order
        self.orbit().into_iter().min_by_key(|w| w.bits).unwrap()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    pub fn blocks(&self) -> BlockDecomposition {
        let mut runs: Vec<(Symbol, usize)> = Vec::new();
        for s in self.symbols() {
            match runs.last_mut() {
                Some((last, n)) if *last == s => *n += 1,
                _ => runs.push((s, 1)),
            }
        }
        BlockDecomposition { runs }
    }

    pub fn balance(&self) -> BalanceClass {
        let c = self.count_a().abs_diff(self.count_b());
        BalanceClass {
            c,
            strictly_balanced: c == 0,
        }
    }

    pub fn is_strictly_balanced(&self) -> bool {
        self.count_a() == self.count_b()
    }

    /// Whether `w` is a prefix of `(ab)^ω`.
    pub fn is_alternating_prefix(&self) -> bool {
        let alt = 0xAAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAA_AAAAu128;
        // last symbol is a iff n is odd
        let expected = if self.len % 2 == 1 { alt } else { alt >> 1 };
        self.bits == expected & mask(self.len)
    }

    /// `θ`-palindrome test: `w^R` equals the renaming of `w`.
    pub fn is_theta_palindrome(&self) -> bool {
        self.reverse() == self.rename()
    }

    /// Deletes the given 0-based positions (ascending, distinct).
    pub(crate) fn delete_positions(&self, positions: &[usize]) -> BinaryWord {
        let mut out = BinaryWord::empty();
        let mut next = positions.iter().peekable();
        for i in 0..self.len {
            if next.peek() == Some(&&i) {
                next.next();
                continue;
            }
            out.bits = (out.bits << 1) | self.get(i).bit();
            out.len += 1;
        }
        out
    }
}

impl Ord for BinaryWord {
    /// Lexicographic order with `a < b`; a proper prefix precedes its extensions.
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        let a = self.bits >> (self.len - common);
        let b = other.bits >> (other.len - common);
        a.cmp(&b).then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for BinaryWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.symbols() {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    /// Parses a string over `{a, b}`. Error positions are 1-based.
    fn from_str(text: &str) -> Result<Self> {
        let mut w = BinaryWord::empty();
        for (i, ch) in text.chars().enumerate() {
            let sym = match ch {
                'a' => Symbol::A,
                'b' => Symbol::B,
                other => {
                    return Err(Error::InvalidSymbol {
                        position: i + 1,
                        found: other,
                    })
                }
            };
            if w.len == CAPACITY {
                return Err(Error::TooLong {
                    len: text.chars().count(),
                    capacity: CAPACITY,
                });
            }
            w.push(sym)?;
        }
        Ok(w)
    }
}

pub fn parse(text: &str) -> Result<BinaryWord> {
    text.parse()
}

/// Maximal-run decomposition of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub runs: Vec<(Symbol, usize)>,
}

impl BlockDecomposition {
    pub fn count(&self, sym: Symbol) -> usize {
        self.runs.iter().filter(|(s, _)| *s == sym).count()
    }

    pub fn to_word(&self) -> Result<BinaryWord> {
        BinaryWord::from_runs(&self.runs)
    }
}

/// `c = ||w|_a - |w|_b|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BalanceClass {
    pub c: usize,
    pub strictly_balanced: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let abba = w("abba");
        assert_eq!(abba.len(), 4);
        assert_eq!((abba.count_a(), abba.count_b()), (2, 2));
        assert!(w("").is_empty());
        assert_eq!(
            parse("abc"),
            Err(Error::InvalidSymbol {
                position: 3,
                found: 'c'
            })
        );
        assert!(matches!(
            parse(&"a".repeat(129)),
            Err(Error::TooLong { .. })
        ));
        assert_eq!(parse(&"ab".repeat(64)).unwrap().len(), 128);
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(w("abba").reverse(), w("abba"));
        assert_eq!(w("aab").reverse(), w("baa"));
        assert_eq!(w("").reverse(), w(""));
        assert_eq!(w("ab").rename(), w("ba"));
        assert_eq!(w("aab").rename(), w("bba"));
        assert_eq!(w("").rename(), w(""));
        assert_eq!(w("baab").canonical(), w("abba"));
        assert_eq!(w("aabb").canonical(), w("aabb"));
        assert_eq!(w("ba").canonical(), w("ab"));
        assert_eq!(w("").canonical(), w(""));
    }

    #[test]
    fn full_capacity_symmetries() {
        let long = w(&format!("a{}", "b".repeat(127)));
        assert_eq!(long.reverse().to_string(), format!("{}a", "b".repeat(127)));
        assert_eq!(long.rename().count_a(), 127);
    }

    #[test]
    fn blocks_examples() {
        let d = w("abaaabaabb").blocks();
        use Symbol::*;
        assert_eq!(d.runs, vec![(A, 1), (B, 1), (A, 3), (B, 1), (A, 2), (B, 2)]);
        assert_eq!((d.count(A), d.count(B)), (3, 3));
        assert_eq!(w("aaaa").blocks().runs, vec![(A, 4)]);
        assert!(w("").blocks().runs.is_empty());
    }

    #[test]
    fn lexicographic_order() {
        assert!(w("a") < w("aa"));
        assert!(w("ab") < w("b"));
        assert!(w("") < w("a"));
        assert!(w("aab") < w("aba"));
    }

    #[test]
    fn alternating_prefix() {
        for n in 0..20 {
            let p: String = "ab".repeat(10).chars().take(n).collect();
            assert!(w(&p).is_alternating_prefix(), "{p}");
        }
        assert!(!w("ba").is_alternating_prefix());
        assert!(!w("abb").is_alternating_prefix());
    }

    #[test]
    fn slice_and_delete() {
        let x = w("abbaa");
        assert_eq!(x.slice(1, 4), w("bba"));
        assert_eq!(x.delete_positions(&[0, 2, 3]), w("ba"));
    }

    #[test]
    fn theta_palindrome() {
        assert!(w("ab").is_theta_palindrome());
        assert!(w("abbbaaab").is_theta_palindrome());
        // an ordinary palindrome, not a fixed point of reversal∘renaming
        assert!(!w("aabbbbaa").is_theta_palindrome());
        assert!(!w("aa").is_theta_palindrome());
    }

    #[test]
    fn exhaustive_symmetry_group() {
        for len in 0..=12usize {
            for idx in 0..(1u128 << len) {
                let x = BinaryWord::from_index(idx, len).unwrap();
                assert_eq!(x.reverse().reverse(), x);
                assert_eq!(x.rename().rename(), x);
                assert_eq!(x.reverse().rename(), x.rename().reverse());
                let c = x.canonical();
                for g in x.orbit() {
                    assert_eq!(g.canonical(), c);
                }
                assert_eq!(c.canonical(), c);
                if len > 0 {
                    assert_eq!(c.get(0), Symbol::A);
                }
                assert_eq!(x.blocks().to_word().unwrap(), x);
                assert_eq!(x.to_string().parse::<BinaryWord>().unwrap(), x);
                let bal = x.balance();
                assert_eq!(bal.c % 2, len % 2);
            }
        }
    }
}
