//! Parametric word families that appear in the cardinality results.

use std::fmt;

use crate::error::{Error, Result};
use crate::word::{BinaryWord, Symbol};

use Symbol::{A, B};

/// One member of a parametric family of binary words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `a^k b^k`
    Sorted { k: usize },
    /// `a^{k-i} b^k a^i`, `1 ≤ i ≤ ⌊k/2⌋`
    Sandwich { k: usize, i: usize },
    /// `(ab)^i a² b² (ab)^{k-i-2}`, `0 ≤ i ≤ k-2`
    NearlyAlternating { k: usize, i: usize },
    /// `a^{k-1} b a b^{k-1}`
    SingleSwap { k: usize },
    /// `a^{k-1} b^k a`
    Hook { k: usize },
    /// `(ab)^{k-c} a^c`, `0 ≤ c ≤ k`
    AlternatingThenA { k: usize, c: usize },
    /// Prefix of `(ab)^ω` of length `n`.
    AlternatingPrefix { n: usize },
    /// `a^{k-2} b^j a b^{k-j} a`, `1 ≤ j ≤ k-1`
    SplitTail { k: usize, j: usize },
    /// `a^{k-2} b^j a² b^{k-j}`, `1 ≤ j ≤ k-1`
    SplitMiddle { k: usize, j: usize },
    /// `a^{k-1} b² a b^{k-2}`
    ShiftedB { k: usize },
    /// `a^r b^r (a^d b^d)^i` with `d = ⌊k/i⌋`, `r = k - d·i`
    RepeatedBlocks { k: usize, i: usize },
    /// `a^r b^{r'} (a^d b^{d'})^{i-1} a^d` with `d = ⌊k/i⌋`, `r = k - d·i`,
    /// `d' = ⌊k/(i-1)⌋`, `r' = k - d'(i-1)`
    RepeatedBlocksOpen { k: usize, i: usize },
    /// `a² b² (ab)^{k-3-i} ba (ab)^i`, `k ≥ 4`, `0 ≤ i ≤ k-3`
    LastGap { k: usize, i: usize },
    /// `a b^{k-1} a^{k-1} b`
    ThetaSeed { k: usize },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Sorted { .. } => "a^k b^k",
            FamilySpec::Sandwich { .. } => "a^{k-i} b^k a^i",
            FamilySpec::NearlyAlternating { .. } => "(ab)^i a^2 b^2 (ab)^{k-i-2}",
            FamilySpec::SingleSwap { .. } => "a^{k-1} b a b^{k-1}",
            FamilySpec::Hook { .. } => "a^{k-1} b^k a",
            FamilySpec::AlternatingThenA { .. } => "(ab)^{k-c} a^c",
            FamilySpec::AlternatingPrefix { .. } => "prefix of (ab)^ω",
            FamilySpec::SplitTail { .. } => "a^{k-2} b^j a b^{k-j} a",
            FamilySpec::SplitMiddle { .. } => "a^{k-2} b^j a^2 b^{k-j}",
            FamilySpec::ShiftedB { .. } => "a^{k-1} b^2 a b^{k-2}",
            FamilySpec::RepeatedBlocks { .. } => "a^r b^r (a^d b^d)^i",
            FamilySpec::RepeatedBlocksOpen { .. } => "a^r b^{r'} (a^d b^{d'})^{i-1} a^d",
            FamilySpec::LastGap { .. } => "a^2 b^2 (ab)^{k-3-i} ba (ab)^i",
            FamilySpec::ThetaSeed { .. } => "a b^{k-1} a^{k-1} b",
        }
    }

    fn reject(&self, constraint: impl Into<String>) -> Error {
        Error::FamilyParameter {
            family: self.name(),
            constraint: constraint.into(),
        }
    }

    fn require(&self, ok: bool, constraint: &str) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(self.reject(format!("requires {constraint} ({self})")))
        }
    }

    /// Materializes the family member.
    pub fn word(&self) -> Result<BinaryWord> {
        let ab = BinaryWord::from_runs(&[(A, 1), (B, 1)])?;
        match *self {
            FamilySpec::Sorted { k } => BinaryWord::from_runs(&[(A, k), (B, k)]),
            FamilySpec::Sandwich { k, i } => {
                self.require(i >= 1 && i <= k / 2, "1 ≤ i ≤ ⌊k/2⌋")?;
                BinaryWord::from_runs(&[(A, k - i), (B, k), (A, i)])
            }
            FamilySpec::NearlyAlternating { k, i } => {
                self.require(k >= 2 && i <= k - 2, "k ≥ 2 and 0 ≤ i ≤ k-2")?;
                ab.repeat(i)?
                    .concat(&BinaryWord::from_runs(&[(A, 2), (B, 2)])?)?
                    .concat(&ab.repeat(k - i - 2)?)
            }
            FamilySpec::SingleSwap { k } => {
                self.require(k >= 1, "k ≥ 1")?;
                BinaryWord::from_runs(&[(A, k - 1), (B, 1), (A, 1), (B, k - 1)])
            }
            FamilySpec::Hook { k } => {
                self.require(k >= 1, "k ≥ 1")?;
                BinaryWord::from_runs(&[(A, k - 1), (B, k), (A, 1)])
            }
            FamilySpec::AlternatingThenA { k, c } => {
                self.require(c <= k, "0 ≤ c ≤ k")?;
                ab.repeat(k - c)?.concat(&BinaryWord::power(A, c)?)
            }
            FamilySpec::AlternatingPrefix { n } => {
                let full = ab.repeat(n.div_ceil(2))?;
                Ok(full.slice(0, n))
            }
            FamilySpec::SplitTail { k, j } => {
                self.require(k >= 2 && j >= 1 && j < k, "k ≥ 2 and 1 ≤ j ≤ k-1")?;
                BinaryWord::from_runs(&[(A, k - 2), (B, j), (A, 1), (B, k - j), (A, 1)])
            }
            FamilySpec::SplitMiddle { k, j } => {
                self.require(k >= 2 && j >= 1 && j < k, "k ≥ 2 and 1 ≤ j ≤ k-1")?;
                BinaryWord::from_runs(&[(A, k - 2), (B, j), (A, 2), (B, k - j)])
            }
            FamilySpec::ShiftedB { k } => {
                self.require(k >= 2, "k ≥ 2")?;
                BinaryWord::from_runs(&[(A, k - 1), (B, 2), (A, 1), (B, k - 2)])
            }
            FamilySpec::RepeatedBlocks { k, i } => {
                self.require(i >= 1 && k >= i, "1 ≤ i ≤ k")?;
                let d = k / i;
                let r = k - d * i;
                let period = BinaryWord::from_runs(&[(A, d), (B, d)])?;
                BinaryWord::from_runs(&[(A, r), (B, r)])?.concat(&period.repeat(i)?)
            }
            FamilySpec::RepeatedBlocksOpen { k, i } => {
                self.require(i >= 2 && k >= i, "2 ≤ i ≤ k")?;
                let d = k / i;
                let r = k - d * i;
                let d2 = k / (i - 1);
                let r2 = k - d2 * (i - 1);
                let period = BinaryWord::from_runs(&[(A, d), (B, d2)])?;
                BinaryWord::from_runs(&[(A, r), (B, r2)])?
                    .concat(&period.repeat(i - 1)?)?
                    .concat(&BinaryWord::power(A, d)?)
            }
            FamilySpec::LastGap { k, i } => {
                self.require(k >= 4, "k ≥ 4")?;
                self.require(i + 3 <= k, "exponent k-3-i ≥ 0, i.e. i ≤ k-3")?;
                BinaryWord::from_runs(&[(A, 2), (B, 2)])?
                    .concat(&ab.repeat(k - 3 - i)?)?
                    .concat(&BinaryWord::from_runs(&[(B, 1), (A, 1)])?)?
                    .concat(&ab.repeat(i)?)
            }
            FamilySpec::ThetaSeed { k } => {
                self.require(k >= 1, "k ≥ 1")?;
                BinaryWord::from_runs(&[(A, 1), (B, k - 1), (A, k - 1), (B, 1)])
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Sorted { k }
            | FamilySpec::SingleSwap { k }
            | FamilySpec::Hook { k }
            | FamilySpec::ShiftedB { k }
            | FamilySpec::ThetaSeed { k } => write!(f, "{} with k={k}", self.name()),
            FamilySpec::Sandwich { k, i }
            | FamilySpec::NearlyAlternating { k, i }
            | FamilySpec::RepeatedBlocks { k, i }
            | FamilySpec::RepeatedBlocksOpen { k, i }
            | FamilySpec::LastGap { k, i } => write!(f, "{} with k={k}, i={i}", self.name()),
            FamilySpec::SplitTail { k, j } | FamilySpec::SplitMiddle { k, j } => {
                write!(f, "{} with k={k}, j={j}", self.name())
            }
            FamilySpec::AlternatingThenA { k, c } => write!(f, "{} with k={k}, c={c}", self.name()),
            FamilySpec::AlternatingPrefix { n } => write!(f, "{} with n={n}", self.name()),
        }
    }
}

/// Shorthand for [`FamilySpec::word`].
pub fn family(spec: FamilySpec) -> Result<BinaryWord> {
    spec.word()
}
