//! Deleting sequences and their normal forms on prefixes of `(ab)^ω`, and
//! duplicate-free enumeration of the scattered factors of such prefixes.
//!
//! On an alternating word, deleting two adjacent positions `t, t+1` removes one
//! `a` and one `b` and leaves the same word as deleting `t-1, t` (provided
//! `t-1` is kept). Sliding every adjacent pair to the front gives a normal form
//! `(1, …, j, s_{j+1}, …, s_k)` whose tail starts after `j+1` and has no two
//! adjacent positions. Distinct normal forms give distinct words, so there are
//! `Σ_j C(n-k, k-j)` distinct scattered factors of length `n-k`.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;

use crate::closed_forms::binomial;
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::word::{BinaryWord, Symbol};

/// Strictly increasing, 1-based positions to delete.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeletingSequence(Vec<usize>);

impl DeletingSequence {
    /// Validates the positions against a word of length `len`.
    pub fn new(positions: Vec<usize>, len: usize) -> Result<Self> {
        if let Some(&p) = positions.iter().find(|&&p| p == 0 || p > len) {
            return Err(Error::InvalidDeletingSequence(format!(
                "position {p} outside [1, {len}]"
            )));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDeletingSequence(format!(
                "{positions:?} is not strictly increasing"
            )));
        }
        Ok(DeletingSequence(positions))
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check_for(&self, w: &BinaryWord) -> Result<()> {
        match self.0.last() {
            Some(&p) if p > w.len() => Err(Error::InvalidDeletingSequence(format!(
                "position {p} outside [1, {}]",
                w.len()
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for DeletingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// `(1, …, j, tail…)` with `tail[0] > j+1` and no two tail positions adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub j: usize,
    pub tail: Vec<usize>,
}

impl NormalForm {
    pub fn to_sequence(&self, len: usize) -> Result<DeletingSequence> {
        DeletingSequence::new((1..=self.j).chain(self.tail.iter().copied()).collect(), len)
    }

    fn from_positions(s: &[usize]) -> NormalForm {
        let j = s
            .iter()
            .enumerate()
            .take_while(|&(t, &p)| p == t + 1)
            .count();
        NormalForm {
            j,
            tail: s[j..].to_vec(),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.tail.first().is_none_or(|&t| t > self.j + 1)
            && self.tail.windows(2).all(|w| w[1] >= w[0] + 2)
    }
}

/// The scattered factor left after deleting `σ` from `w`.
pub fn apply(w: &BinaryWord, sigma: &DeletingSequence) -> Result<BinaryWord> {
    sigma.check_for(w)?;
    let zero_based: Vec<usize> = sigma.0.iter().map(|p| p - 1).collect();
    Ok(w.delete_positions(&zero_based))
}

pub fn equivalent(w: &BinaryWord, s1: &DeletingSequence, s2: &DeletingSequence) -> Result<bool> {
    Ok(apply(w, s1)? == apply(w, s2)?)
}

fn require_alternating(w: &BinaryWord) -> Result<()> {
    if w.is_alternating_prefix() {
        Ok(())
    } else {
        Err(Error::NotAlternating(w.to_string()))
    }
}

/// One sliding step: the first adjacent pair `t, t+1` whose predecessor (or
/// the word start) is not at `t-1` moves to `t-1, t`. `None` at a fixed point.
pub fn reduce_step(w: &BinaryWord, sigma: &DeletingSequence) -> Result<Option<DeletingSequence>> {
    require_alternating(w)?;
    sigma.check_for(w)?;
    let s = &sigma.0;
    for t in 0..s.len().saturating_sub(1) {
        let prev = if t == 0 { 0 } else { s[t - 1] };
        if prev + 1 < s[t] && s[t] + 1 == s[t + 1] {
            let mut next = s.clone();
            next[t] -= 1;
            next[t + 1] -= 1;
            return Ok(Some(DeletingSequence(next)));
        }
    }
    Ok(None)
}

/// Iterates [`reduce_step`] to its fixed point.
pub fn normalize(w: &BinaryWord, sigma: &DeletingSequence) -> Result<NormalForm> {
    let mut current = sigma.clone();
    while let Some(next) = reduce_step(w, &current)? {
        current = next;
    }
    Ok(NormalForm::from_positions(&current.0))
}

/// `Σ_{j ∈ [k]_0} C(n-k, k-j)`.
pub fn count_normal_forms(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::OutOfRange {
            op: "count_normal_forms",
            constraint: format!("requires k ≤ n (k = {k}, n = {n})"),
        });
    }
    Ok((0..=k)
        .map(|j| binomial((n - k) as i64, (k - j) as i64))
        .sum())
}

/// All normal forms of `k` deletions from a length-`n` alternating word, by
/// ascending `j`, then lexicographic tail.
pub fn normal_forms(n: usize, k: usize) -> Result<impl Iterator<Item = NormalForm>> {
    if k > n {
        return Err(Error::OutOfRange {
            op: "normal_forms",
            constraint: format!("requires k ≤ n (k = {k}, n = {n})"),
        });
    }
    Ok((0..=k).flat_map(move |j| {
        let r = k - j;
        // r pairwise non-adjacent positions in [j+2, n] ↔ r-combinations of
        // [j+2, n-r+1] shifted by t_m = c_m + m
        let lo = j + 2;
        let hi = (n + 2).saturating_sub(r); // exclusive
        let combos: Box<dyn Iterator<Item = Vec<usize>>> = if r == 0 {
            Box::new(std::iter::once(Vec::new()))
        } else if hi <= lo {
            Box::new(std::iter::empty())
        } else {
            Box::new((lo..hi).combinations(r))
        };
        combos.map(move |c| NormalForm {
            j,
            tail: c.iter().enumerate().map(|(m, &x)| x + m).collect(),
        })
    }))
}

/// Every element of `ScatFact_ℓ(w)`, `w` the length-`n` prefix of `(ab)^ω`,
/// exactly once.
pub fn enumerate_distinct(n: usize, l: usize) -> Result<impl Iterator<Item = BinaryWord>> {
    if l > n {
        return Err(Error::OutOfRange {
            op: "enumerate_distinct",
            constraint: format!("requires ℓ ≤ n (ℓ = {l}, n = {n})"),
        });
    }
    let w = FamilySpec::AlternatingPrefix { n }.word()?;
    let forms = normal_forms(n, n - l)?;
    Ok(forms.map(move |nf| {
        let zero_based: Vec<usize> = (0..nf.j).chain(nf.tail.iter().map(|p| p - 1)).collect();
        w.delete_positions(&zero_based)
    }))
}

/// Every element of `ScatFact_i((ab)^{k-c} a^c)` exactly once: `a^i`, then for
/// each `j < i` the words `u·b·a^j` whose last `b` is followed by exactly `j`
/// `a`s.
pub fn enumerate_ab_power_a(
    k: usize,
    c: usize,
    i: usize,
) -> Result<impl Iterator<Item = BinaryWord>> {
    if c > k || i > k {
        return Err(Error::OutOfRange {
            op: "enumerate_ab_power_a",
            constraint: format!("requires c ≤ k and i ≤ k (k = {k}, c = {c}, i = {i})"),
        });
    }
    let head = BinaryWord::power(Symbol::A, i)?;
    let mut groups: Vec<Box<dyn Iterator<Item = BinaryWord>>> =
        vec![Box::new(std::iter::once(head))];
    for j in 0..i {
        // the b used is the rightmost one with at least j a's after it; the
        // prefix before it is (ab)^{m-1} a
        let m = (k - j).min(k - c);
        let ulen = i - 1 - j;
        if m == 0 || ulen > 2 * m - 1 {
            continue;
        }
        let suffix = BinaryWord::from_runs(&[(Symbol::B, 1), (Symbol::A, j)])?;
        groups.push(Box::new(
            enumerate_distinct(2 * m - 1, ulen)?.map(move |u| u.concat(&suffix).expect("fits")),
        ));
    }
    Ok(groups.into_iter().flatten())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::spectrum;
    use std::collections::{BTreeSet, HashSet};

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn seq(p: &[usize], len: usize) -> DeletingSequence {
        DeletingSequence::new(p.to_vec(), len).unwrap()
    }

    #[test]
    fn apply_examples() {
        let x = w("abbaa");
        assert_eq!(apply(&x, &seq(&[1, 3, 4], 5)).unwrap().to_string(), "ba");
        assert_eq!(apply(&x, &seq(&[], 5)).unwrap(), x);
        assert_eq!(
            apply(&x, &seq(&[1, 2, 3, 4, 5], 5)).unwrap(),
            BinaryWord::empty()
        );
        assert!(apply(&w("ab"), &seq(&[3], 5)).is_err());
    }

    #[test]
    fn validation() {
        assert!(DeletingSequence::new(vec![2, 2], 4).is_err());
        assert!(DeletingSequence::new(vec![3, 1], 4).is_err());
        assert!(DeletingSequence::new(vec![0], 4).is_err());
        assert!(DeletingSequence::new(vec![5], 4).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let x = w("abbaa");
        assert!(equivalent(&x, &seq(&[1, 3, 4], 5), &seq(&[1, 3, 5], 5)).unwrap());
        assert!(equivalent(&x, &seq(&[1, 2, 4], 5), &seq(&[1, 2, 5], 5)).unwrap());
        assert!(!equivalent(&w("ab"), &seq(&[1], 2), &seq(&[2], 2)).unwrap());
    }

    #[test]
    fn reduce_examples() {
        let x = w("ababa");
        assert_eq!(
            reduce_step(&x, &seq(&[2, 4, 5], 5)).unwrap(),
            Some(seq(&[2, 3, 4], 5))
        );
        assert_eq!(reduce_step(&x, &seq(&[1, 3, 5], 5)).unwrap(), None);
        // (g, t, t+1, h) → (g, t-1, t, h)
        let y = w("abababab");
        assert_eq!(
            reduce_step(&y, &seq(&[1, 4, 5, 8], 8)).unwrap(),
            Some(seq(&[1, 3, 4, 8], 8))
        );
        assert!(reduce_step(&w("aab"), &seq(&[1], 3)).is_err());
    }

    #[test]
    fn normalize_examples() {
        let x = w("ababab");
        let nf = normalize(&x, &seq(&[3, 4], 6)).unwrap();
        assert_eq!(nf, NormalForm { j: 2, tail: vec![] });
        let normal = seq(&[1, 3, 5], 6);
        assert_eq!(
            normalize(&x, &normal).unwrap(),
            NormalForm {
                j: 1,
                tail: vec![3, 5]
            }
        );
    }

    #[test]
    fn normalization_properties_exhaustive() {
        for n in 0..=10usize {
            let x = FamilySpec::AlternatingPrefix { n }.word().unwrap();
            let mut word_of_form = std::collections::HashMap::new();
            for k in 0..=n {
                for pos in (1..=n).combinations(k) {
                    let s = DeletingSequence::new(pos.clone(), n).unwrap();
                    let nf = normalize(&x, &s).unwrap();
                    assert!(nf.is_valid(), "{s} → {nf:?}");
                    let u = apply(&x, &nf.to_sequence(n).unwrap()).unwrap();
                    assert_eq!(u, apply(&x, &s).unwrap());
                    let consecutive = pos.windows(2).any(|p| p[1] == p[0] + 1);
                    assert_eq!(nf.j >= 1, consecutive || pos.first() == Some(&1), "{s}");
                    word_of_form.insert(nf, u);
                }
            }
            // distinct normal forms give distinct words
            let words: HashSet<_> = word_of_form.values().collect();
            assert_eq!(words.len(), word_of_form.len(), "n={n}");
        }
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_normal_forms(6, 3).unwrap(), BigUint::from(8u32));
        assert_eq!(count_normal_forms(7, 3).unwrap(), BigUint::from(15u32));
        for n in 0..20 {
            assert_eq!(count_normal_forms(n, 0).unwrap(), BigUint::from(1u32));
        }
        assert!(count_normal_forms(2, 3).is_err());
        for n in 0..=14 {
            for k in 0..=n {
                let generated = normal_forms(n, k).unwrap().count();
                assert_eq!(BigUint::from(generated), count_normal_forms(n, k).unwrap());
            }
        }
    }

    #[test]
    fn normal_form_order() {
        let forms: Vec<_> = normal_forms(5, 2).unwrap().collect();
        assert_eq!(
            forms[0],
            NormalForm {
                j: 0,
                tail: vec![2, 4]
            }
        );
        assert!(forms
            .windows(2)
            .all(|p| (p[0].j, &p[0].tail) < (p[1].j, &p[1].tail)));
        assert_eq!(forms.last().unwrap(), &NormalForm { j: 2, tail: vec![] });
    }

    #[test]
    fn enumerate_distinct_examples() {
        let got: Vec<_> = enumerate_distinct(6, 3).unwrap().collect();
        assert_eq!(got.len(), 8);
        assert_eq!(got.iter().collect::<BTreeSet<_>>().len(), 8);
        let got: BTreeSet<_> = enumerate_distinct(7, 4)
            .unwrap()
            .map(|u| u.to_string())
            .collect();
        assert_eq!(got.len(), 15);
        assert!(!got.contains("bbbb"));
        let all: Vec<_> = enumerate_distinct(5, 5).unwrap().collect();
        assert_eq!(all, vec![w("ababa")]);
        assert!(enumerate_distinct(3, 4).is_err());
    }

    #[test]
    fn enumerate_distinct_matches_spectrum() {
        for n in 0..=12 {
            let x = FamilySpec::AlternatingPrefix { n }.word().unwrap();
            for l in 0..=n {
                let got: Vec<_> = enumerate_distinct(n, l).unwrap().collect();
                let set: BTreeSet<_> = got.iter().copied().collect();
                assert_eq!(set.len(), got.len(), "duplicates at n={n} ℓ={l}");
                assert_eq!(
                    set,
                    spectrum(&x, l).unwrap().iter().collect(),
                    "n={n} ℓ={l}"
                );
            }
        }
    }

    #[test]
    fn enumerate_ab_power_a_examples() {
        let got: BTreeSet<_> = enumerate_ab_power_a(3, 2, 3)
            .unwrap()
            .map(|u| u.to_string())
            .collect();
        assert_eq!(
            got,
            ["aaa", "aba", "baa"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
        assert_eq!(enumerate_ab_power_a(3, 1, 3).unwrap().count(), 7);
        assert_eq!(
            enumerate_ab_power_a(4, 2, 0).unwrap().collect::<Vec<_>>(),
            vec![BinaryWord::empty()]
        );
        assert!(enumerate_ab_power_a(3, 4, 1).is_err());
    }

    #[test]
    fn enumerate_ab_power_a_matches_spectrum() {
        for k in 0..=8 {
            for c in 0..=k {
                let x = FamilySpec::AlternatingThenA { k, c }.word().unwrap();
                for i in 0..=k {
                    let got: Vec<_> = enumerate_ab_power_a(k, c, i).unwrap().collect();
                    let set: BTreeSet<_> = got.iter().copied().collect();
                    assert_eq!(set.len(), got.len(), "duplicates at k={k} c={c} i={i}");
                    assert_eq!(
                        set,
                        spectrum(&x, i).unwrap().iter().collect(),
                        "k={k} c={c} i={i}"
                    );
                }
            }
        }
    }
}
