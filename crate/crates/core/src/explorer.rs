//! Exhaustive exploration over strictly balanced words: achievable spectrum
//! cardinalities, gap and characterization checks, conjecture checkers and
//! collision search.
//!
//! Words of length `2k` are scanned as packed integers in contiguous ranges
//! split across a rayon pool; per-range results are merged through ordered
//! maps and sets, so the output never depends on the worker count.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::closed_forms::{bounded_compositions, strict_bounded_compositions};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::spectra::{
    balanced_subspectrum, has_full_k_spectrum, is_scattered_factor, spectrum, spectrum_cardinality,
    Spectrum,
};
use crate::word::{BinaryWord, Symbol};

/// Default bound on `k` for exhaustive cardinality tables.
pub const DEFAULT_MAX_K: usize = 9;
/// Default bound on `k` for collision search.
pub const DEFAULT_MAX_COLLISION_K: usize = 7;

/// `SCATFACT_MAX_K` if set and parseable, else `default`.
pub fn desk_limit(default: usize) -> usize {
    std::env::var("SCATFACT_MAX_K")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

fn guard(k: usize, default: usize, what: &str) -> Result<()> {
    let max = desk_limit(default);
    if k > max {
        let words = crate::closed_forms::binomial(2 * k as i64, k as i64);
        return Err(Error::DeskScale {
            k,
            max,
            estimate: format!("{what} over {words} strictly balanced words"),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExploreOptions {
    /// Visit one word per reversal/renaming orbit.
    pub orbits: bool,
    /// Worker threads; `None` uses rayon's global pool.
    pub jobs: Option<usize>,
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::OutOfRange {
                    op: "jobs",
                    constraint: e.to_string(),
                })?;
            Ok(pool.install(f))
        }
    }
}

const CHUNK: u128 = 1 << 12;

/// Every strictly balanced word of length `2k` (or only canonical ones),
/// mapped in parallel and folded by `merge`.
fn map_balanced<T, M, R>(
    k: usize,
    orbits: bool,
    init: impl Fn() -> T + Sync + Send,
    map: M,
    merge: R,
) -> T
where
    T: Send,
    M: Fn(&mut T, BinaryWord) + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let total: u128 = 1u128 << (2 * k);
    let chunks = total.div_ceil(CHUNK);
    (0..chunks as u64)
        .into_par_iter()
        .map(|c| {
            let mut acc = init();
            let lo = c as u128 * CHUNK;
            let hi = (lo + CHUNK).min(total);
            for x in lo..hi {
                if x.count_ones() as usize != k {
                    continue;
                }
                let w = BinaryWord::from_index(x, 2 * k).expect("2k ≤ capacity");
                if orbits && !w.is_canonical() {
                    continue;
                }
                map(&mut acc, w);
            }
            acc
        })
        .reduce(&init, &merge)
}

/// Achieved `k`-spectrum cardinalities over strictly balanced words of length
/// `2k`, each with its canonical witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityReport {
    pub k: usize,
    pub achieved: BTreeMap<u128, BTreeSet<BinaryWord>>,
    /// Unachieved values in `[k+1, 2^k]`, ascending.
    pub missing: Vec<u128>,
}

impl CardinalityReport {
    pub fn is_achieved(&self, n: u128) -> bool {
        self.achieved.contains_key(&n)
    }

    pub fn witnesses(&self, n: u128) -> Option<&BTreeSet<BinaryWord>> {
        self.achieved.get(&n)
    }

    pub fn min(&self) -> Option<u128> {
        self.achieved.keys().next().copied()
    }

    /// Achieved values within `[lo, hi]`.
    pub fn achieved_in(&self, lo: u128, hi: u128) -> Vec<u128> {
        if lo > hi {
            return Vec::new();
        }
        self.achieved.range(lo..=hi).map(|(&n, _)| n).collect()
    }

    /// Rows `(k, cardinality, achieved, smallest witness)` for every
    /// cardinality in `[k+1, 2^k]`.
    pub fn rows(&self) -> Vec<(usize, u128, bool, Option<BinaryWord>)> {
        (self.k as u128 + 1..=1u128 << self.k)
            .map(|n| {
                let w = self.achieved.get(&n).and_then(|s| s.iter().next().copied());
                (self.k, n, w.is_some(), w)
            })
            .collect()
    }

    /// CSV with header `k,cardinality,achieved,witness`.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> csv::Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["k", "cardinality", "achieved", "witness"])?;
        for (k, n, ok, w) in self.rows() {
            wtr.write_record([
                k.to_string(),
                n.to_string(),
                u8::from(ok).to_string(),
                w.map(|w| w.to_string()).unwrap_or_default(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

pub fn achievable_cardinalities(k: usize, opts: ExploreOptions) -> Result<CardinalityReport> {
    if k == 0 {
        return Err(Error::OutOfRange {
            op: "achievable_cardinalities",
            constraint: "requires k ≥ 1".into(),
        });
    }
    guard(k, DEFAULT_MAX_K, "spectrum cardinality")?;
    let achieved = in_pool(opts.jobs, || {
        map_balanced(
            k,
            opts.orbits,
            BTreeMap::<u128, BTreeSet<BinaryWord>>::new,
            |acc, w| {
                acc.entry(spectrum_cardinality(&w, k))
                    .or_default()
                    .insert(w.canonical());
            },
            |mut a, b| {
                for (n, ws) in b {
                    a.entry(n).or_default().extend(ws);
                }
                a
            },
        )
    })?;
    let missing = (k as u128 + 1..=1u128 << k)
        .filter(|n| !achieved.contains_key(n))
        .collect();
    Ok(CardinalityReport {
        k,
        achieved,
        missing,
    })
}

/// One checked claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails(Counterexample),
    Skipped(String),
}

/// Concrete words with the claimed and the computed value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub words: Vec<BinaryWord>,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Holds => write!(f, "holds"),
            Status::Skipped(why) => write!(f, "skipped ({why})"),
            Status::Fails(c) => {
                let words: Vec<String> = c.words.iter().map(|w| w.to_string()).collect();
                write!(
                    f,
                    "fails: {} expected {}, got {}",
                    words.join(" / "),
                    c.expected,
                    c.actual
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureVerdict {
    pub id: String,
    /// Human-readable parameter range checked.
    pub range: String,
    pub entries: Vec<(String, Status)>,
}

impl ConjectureVerdict {
    fn new(id: &str, range: String) -> Self {
        ConjectureVerdict {
            id: id.into(),
            range,
            entries: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, status: Status) {
        self.entries.push((label.into(), status));
    }

    pub fn holds(&self) -> bool {
        self.entries
            .iter()
            .all(|(_, s)| !matches!(s, Status::Fails(_)))
    }

    pub fn failures(&self) -> impl Iterator<Item = (&str, &Counterexample)> {
        self.entries.iter().filter_map(|(l, s)| match s {
            Status::Fails(c) => Some((l.as_str(), c)),
            _ => None,
        })
    }

    pub fn status(&self, label: &str) -> Option<&Status> {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, s)| s)
    }
}

impl fmt::Display for ConjectureVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} [{}]", self.id, self.range)?;
        for (label, status) in &self.entries {
            writeln!(f, "  {label}: {status}")?;
        }
        Ok(())
    }
}

fn fails(words: Vec<BinaryWord>, expected: impl ToString, actual: impl ToString) -> Status {
    Status::Fails(Counterexample {
        words,
        expected: expected.to_string(),
        actual: actual.to_string(),
    })
}

fn check_eq<T: PartialEq + ToString>(words: Vec<BinaryWord>, expected: T, actual: T) -> Status {
    if expected == actual {
        Status::Holds
    } else {
        fails(words, expected, actual)
    }
}

/// No achieved value in `[lo, hi]`.
fn gap_status(report: &CardinalityReport, lo: u128, hi: u128) -> Status {
    match report.achieved_in(lo, hi).first() {
        None => Status::Holds,
        Some(&n) => fails(
            report.achieved[&n].iter().take(1).copied().collect(),
            format!("no cardinality in [{lo}, {hi}]"),
            n,
        ),
    }
}

/// Minimum, the gaps after `k+1` and after `2k`, and the `3k-3` witness.
pub fn verify_gap_theorems(k: usize, opts: ExploreOptions) -> Result<ConjectureVerdict> {
    if k < 3 {
        return Err(Error::OutOfRange {
            op: "verify_gap_theorems",
            constraint: "requires k ≥ 3".into(),
        });
    }
    let report = achievable_cardinalities(k, opts)?;
    verify_gap_theorems_on(&report)
}

/// [`verify_gap_theorems`] on an existing report.
pub fn verify_gap_theorems_on(report: &CardinalityReport) -> Result<ConjectureVerdict> {
    let k = report.k;
    let kk = k as u128;
    let mut v = ConjectureVerdict::new("gaps", format!("k = {k}"));
    v.push(
        "minimum k+1",
        check_eq(
            report
                .witnesses(report.min().unwrap_or(0))
                .into_iter()
                .flatten()
                .take(1)
                .copied()
                .collect(),
            kk + 1,
            report.min().unwrap_or(0),
        ),
    );
    v.push("k+2 absent", gap_status(report, kk + 2, kk + 2));
    v.push(
        "no value in [k+2, 2k-1]",
        gap_status(report, kk + 2, 2 * kk - 1),
    );
    if k >= 5 {
        v.push(
            "no value in [2k+1, 3k-4]",
            gap_status(report, 2 * kk + 1, 3 * kk - 4),
        );
    } else {
        v.push(
            "no value in [2k+1, 3k-4]",
            Status::Skipped(format!(
                "[{}, {}] is empty for k = {k}",
                2 * k + 1,
                3 * k - 4
            )),
        );
    }
    if k >= 4 {
        let w = FamilySpec::Sandwich { k, i: 2 }.word()?;
        let card = spectrum_cardinality(&w, k);
        let status = if card != 3 * kk - 3 {
            fails(vec![w], 3 * kk - 3, card)
        } else if !report
            .witnesses(card)
            .is_some_and(|s| s.contains(&w.canonical()))
        {
            fails(vec![w], "witness listed in the report", "absent")
        } else {
            Status::Holds
        };
        v.push("3k-3 witnessed by a^{k-2} b^k a^2", status);
    }
    Ok(v)
}

fn canonical_set(words: impl IntoIterator<Item = BinaryWord>) -> BTreeSet<BinaryWord> {
    words.into_iter().map(|w| w.canonical()).collect()
}

fn witness_set_status(
    report: &CardinalityReport,
    n: u128,
    predicted: BTreeSet<BinaryWord>,
) -> Status {
    let got = report.witnesses(n).cloned().unwrap_or_default();
    if got == predicted {
        Status::Holds
    } else {
        let diff: Vec<BinaryWord> = got.symmetric_difference(&predicted).copied().collect();
        fails(
            diff,
            format!("{} orbits", predicted.len()),
            format!("{} orbits", got.len()),
        )
    }
}

/// `{ab, ba}^k`.
fn alternating_pair_words(k: usize) -> Vec<BinaryWord> {
    (0..1u128 << k)
        .map(|mask| {
            let mut w = BinaryWord::empty();
            for t in (0..k).rev() {
                let (x, y) = if mask >> t & 1 == 0 {
                    (Symbol::A, Symbol::B)
                } else {
                    (Symbol::B, Symbol::A)
                };
                w.push(x).expect("fits");
                w.push(y).expect("fits");
            }
            w
        })
        .collect()
}

/// The exact-witness statements for `k+1`, `2k`, `2^k - 1` and `2^k`, the
/// form of the single missing word, and `ScatFact_k(a^k b^k) ⊆ ScatFact_k(w)`
/// for the `2k` witnesses.
pub fn verify_characterizations(k: usize, opts: ExploreOptions) -> Result<ConjectureVerdict> {
    if k < 3 {
        return Err(Error::OutOfRange {
            op: "verify_characterizations",
            constraint: "requires k ≥ 3".into(),
        });
    }
    let report = achievable_cardinalities(k, opts)?;
    verify_characterizations_on(&report)
}

pub fn verify_characterizations_on(report: &CardinalityReport) -> Result<ConjectureVerdict> {
    let k = report.k;
    let kk = k as u128;
    let full = 1u128 << k;
    let mut v = ConjectureVerdict::new("characterizations", format!("k = {k}"));

    let sorted = FamilySpec::Sorted { k }.word()?;
    v.push(
        "k+1 exactly a^k b^k",
        witness_set_status(report, kk + 1, canonical_set([sorted])),
    );

    v.push(
        "2^k exactly {ab,ba}^k",
        witness_set_status(report, full, canonical_set(alternating_pair_words(k))),
    );

    let nearly: Vec<BinaryWord> = (0..=k - 2)
        .map(|i| FamilySpec::NearlyAlternating { k, i }.word())
        .collect::<Result<_>>()?;
    v.push(
        "2^k-1 exactly (ab)^i a^2 b^2 (ab)^{k-i-2}",
        witness_set_status(report, full - 1, canonical_set(nearly.iter().copied())),
    );
    let mut predicted_missing = Status::Holds;
    for (i, w) in nearly.iter().enumerate() {
        let missing = spectrum(w, k)?.complement().to_strings();
        let expected = format!("{}{}", "b".repeat(i + 1), "a".repeat(k - i - 1));
        if missing != [expected.clone()] {
            predicted_missing = fails(vec![*w], expected, missing.join(","));
            break;
        }
    }
    v.push(
        "predicted missing word b^{i+1} a^{k-i-1}",
        predicted_missing,
    );

    let two_k = [
        FamilySpec::SingleSwap { k }.word()?,
        FamilySpec::Hook { k }.word()?,
    ];
    v.push(
        "2k exactly a^{k-1} b a b^{k-1}, a^{k-1} b^k a",
        witness_set_status(report, 2 * kk, canonical_set(two_k)),
    );

    let base = spectrum(&sorted, k)?;
    let mut contains = Status::Holds;
    for w in two_k {
        if !base.is_subset(&spectrum(&w, k)?) {
            contains = fails(vec![w], "superset of ScatFact_k(a^k b^k)", "not a superset");
        }
    }
    v.push(
        "ScatFact_k(a^k b^k) contained in the 2k witnesses",
        contains,
    );

    // every word one short of full misses a single word b^p a^{k-p} up to symmetry
    let mut single = Status::Holds;
    for w in report.witnesses(full - 1).into_iter().flatten() {
        let missing: Vec<BinaryWord> = spectrum(w, k)?.complement().iter().collect();
        let ok = missing.len() == 1
            && missing[0].orbit().iter().any(|u| {
                let p = u.symbols().take_while(|&s| s == Symbol::B).count();
                (1..k).contains(&p) && u.symbols().skip(p).all(|s| s == Symbol::A)
            });
        if !ok {
            single = fails(
                vec![*w],
                "one missing word b^p a^{k-p} up to symmetry",
                missing
                    .iter()
                    .map(|u| u.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            break;
        }
    }
    v.push("single missing word has the form b^{i+1} a^{k-i-1}", single);
    Ok(v)
}

/// For `c`-balanced `w` of length `2k-c`, `|ScatFact_{k-c}(w)| = 2^{k-c}` iff
/// `w` has a full `(k-c)`-spectrum by the pair criterion; exhaustive for
/// `2k - c ≤ max_len`.
pub fn verify_full_spectrum_criterion(max_len: usize) -> Result<ConjectureVerdict> {
    let mut v = ConjectureVerdict::new("full-spectrum criterion", format!("2k-c ≤ {max_len}"));
    for len in 0..=max_len {
        let mut status = Status::Holds;
        for x in 0..1u128 << len {
            let w = BinaryWord::from_index(x, len)?;
            let c = w.balance().c;
            // length 2k - c with c = ||w|_a - |w|_b|
            let m = (len - c) / 2;
            let full = spectrum_cardinality(&w, m) == 1u128 << m;
            if full != has_full_k_spectrum(&w, m) {
                status = fails(vec![w], u8::from(full), u8::from(!full));
                break;
            }
        }
        v.push(format!("|w| = {len}"), status);
    }
    Ok(v)
}

/// `|ScatFact_k(a² b² (ab)^{k-3-i} ba (ab)^i)| = 2^k - 2 - i` for
/// `i ∈ [k-2]_0`. The word is undefined at `i = k-2`, which is reported as
/// skipped.
pub fn check_last_gap_conjecture(k: usize) -> Result<ConjectureVerdict> {
    if k < 4 {
        return Err(Error::OutOfRange {
            op: "check_last_gap_conjecture",
            constraint: "requires k ≥ 4".into(),
        });
    }
    let mut v = ConjectureVerdict::new("last-gap", format!("k = {k}, i ∈ [0, {}]", k - 2));
    for i in 0..=k - 2 {
        let expected = (1u128 << k) - 2 - i as u128;
        if i + 3 > k {
            v.push(
                format!("i = {i}"),
                Status::Skipped(format!("(ab)^{{k-3-i}} has negative exponent at i = {i}")),
            );
            continue;
        }
        let w = FamilySpec::LastGap { k, i }.word()?;
        v.push(
            format!("i = {i}"),
            check_eq(vec![w], expected, spectrum_cardinality(&w, k)),
        );
    }
    Ok(v)
}

/// For `w = a b^{k-1} a^{k-1} b`: `|ScatFact_k(w)| = 4(k-1)`, and with
/// `ℓ = |ScatFact_k(w^R)| ≥ 12`, `|ScatFact_{k+1}(a w b)| = 9ℓ/4 - 5`.
pub fn check_theta_conjecture(ks: std::ops::RangeInclusive<usize>) -> Result<ConjectureVerdict> {
    let mut v = ConjectureVerdict::new("theta", format!("k ∈ [{}, {}]", ks.start(), ks.end()));
    for k in ks {
        if k < 1 {
            continue;
        }
        let w = FamilySpec::ThetaSeed { k }.word()?;
        let card = spectrum_cardinality(&w, k);
        v.push(
            format!("k = {k}: 4(k-1)"),
            check_eq(vec![w], 4 * (k as u128 - 1), card),
        );
        let l = spectrum_cardinality(&w.reverse(), k);
        let label = format!("k = {k}: propagation");
        if l < 12 {
            v.push(label, Status::Skipped(format!("ℓ = {l} < 12")));
            continue;
        }
        let ext = BinaryWord::from_runs(&[(Symbol::A, 1)])?
            .concat(&w)?
            .concat(&BinaryWord::from_runs(&[(Symbol::B, 1)])?)?;
        let got = spectrum_cardinality(&ext, k + 1);
        // 4·|·| = 9ℓ - 20 keeps the comparison in integers
        let status = if 4 * got + 20 == 9 * l {
            Status::Holds
        } else {
            fails(vec![ext], format!("{}/4", 9 * l - 20), got)
        };
        v.push(label, status);
    }
    Ok(v)
}

/// θ-palindromes of length `2k` are exactly `a w′ b` and `b w′ a` for
/// θ-palindromes `w′` of length `2(k-1)`; also reports whether
/// `a^{k/2} b^k a^{k/2}` is one (even `k`).
pub fn verify_theta_palindromes(k: usize) -> Result<ConjectureVerdict> {
    if k == 0 || 2 * k > 24 {
        return Err(Error::OutOfRange {
            op: "verify_theta_palindromes",
            constraint: "requires 1 ≤ k ≤ 12".into(),
        });
    }
    let balanced = |k: usize| -> BTreeSet<BinaryWord> {
        (0..1u128 << (2 * k))
            .filter(|x| x.count_ones() as usize == k)
            .map(|x| BinaryWord::from_index(x, 2 * k).unwrap())
            .filter(|w| w.is_theta_palindrome())
            .collect()
    };
    let direct = balanced(k);
    let mut built = BTreeSet::new();
    for inner in balanced(k - 1) {
        for (x, y) in [(Symbol::A, Symbol::B), (Symbol::B, Symbol::A)] {
            let mut w = BinaryWord::empty();
            w.push(x)?;
            let mut w = w.concat(&inner)?;
            w.push(y)?;
            built.insert(w);
        }
    }
    let mut v = ConjectureVerdict::new("theta-palindromes", format!("k = {k}"));
    v.push(
        "recursive construction",
        check_eq(
            direct.symmetric_difference(&built).copied().collect(),
            direct.len(),
            built.len(),
        ),
    );
    if k.is_multiple_of(2) {
        let w = FamilySpec::Sandwich { k, i: k / 2 }.word()?;
        v.push(
            "a^{k/2} b^k a^{k/2} is a θ-palindrome",
            check_eq(
                vec![w],
                true.to_string(),
                w.is_theta_palindrome().to_string(),
            ),
        );
    }
    Ok(v)
}

/// Groups of distinct strictly balanced words of length `2k` sharing their
/// `m`-spectrum (restricted to strictly balanced members when `balanced`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionReport {
    pub k: usize,
    pub query_length: usize,
    pub balanced: bool,
    /// Each group sorted; groups sorted by their first word.
    pub groups: Vec<Vec<BinaryWord>>,
}

impl CollisionReport {
    pub fn pairs(&self) -> impl Iterator<Item = (BinaryWord, BinaryWord)> + '_ {
        self.groups.iter().flat_map(|g| {
            g.iter()
                .enumerate()
                .flat_map(move |(t, &x)| g[t + 1..].iter().map(move |&y| (x, y)))
        })
    }
}

/// Hashes every word's (filtered) spectrum and groups equal ones.
pub fn collisions(
    k: usize,
    m: usize,
    balanced: bool,
    opts: ExploreOptions,
) -> Result<CollisionReport> {
    guard(k, DEFAULT_MAX_COLLISION_K, "collision search")?;
    let key = |w: &BinaryWord| -> Result<Spectrum> {
        if balanced {
            balanced_subspectrum(w, m)
        } else {
            spectrum(w, m)
        }
    };
    key(&BinaryWord::empty())?; // surface SpectrumTooLarge before fanning out
    let map = in_pool(opts.jobs, || {
        map_balanced(
            k,
            false,
            HashMap::<Spectrum, Vec<BinaryWord>>::new,
            |acc, w| acc.entry(key(&w).expect("m checked")).or_default().push(w),
            |mut a, b| {
                for (s, ws) in b {
                    a.entry(s).or_default().extend(ws);
                }
                a
            },
        )
    })?;
    let mut groups: Vec<Vec<BinaryWord>> = map
        .into_values()
        .filter(|g| g.len() > 1)
        .map(|mut g| {
            g.sort();
            g
        })
        .collect();
    groups.sort();
    Ok(CollisionReport {
        k,
        query_length: m,
        balanced,
        groups,
    })
}

/// No two strictly balanced words of length `2k` share
/// `ScatFact_{k′}(w) ∩ Σ^{k′}_sb` (`k′ = k+1` for odd `k`, `k+2` for even).
pub fn check_reconstruction_conjecture(
    k: usize,
    opts: ExploreOptions,
) -> Result<ConjectureVerdict> {
    if k < 1 {
        return Err(Error::OutOfRange {
            op: "check_reconstruction_conjecture",
            constraint: "requires k ≥ 1".into(),
        });
    }
    let kp = crate::reconstruct::two_blocks_query_length(k);
    let report = collisions(k, kp, true, opts)?;
    let mut v = ConjectureVerdict::new("reconstruction", format!("k = {k}, k′ = {kp}"));
    let status = match report.groups.first() {
        None => Status::Holds,
        Some(g) => fails(
            g.clone(),
            "distinct balanced spectra",
            "equal balanced spectra",
        ),
    };
    v.push(format!("k′ = {kp}"), status);
    Ok(v)
}

/// Collisions at `k′ - 2`, where the conjecture's query length drops below
/// what is needed.
pub fn reconstruction_negative_control(k: usize, opts: ExploreOptions) -> Result<CollisionReport> {
    let kp = crate::reconstruct::two_blocks_query_length(k);
    collisions(k, kp - 2, true, opts)
}

/// `(ScatFact_m(w1) ∩ Σ^m_sb) Δ (ScatFact_m(w2) ∩ Σ^m_sb)`.
pub fn balanced_symmetric_difference(
    w1: &BinaryWord,
    w2: &BinaryWord,
    m: usize,
) -> Result<Spectrum> {
    Ok(balanced_subspectrum(w1, m)?.symmetric_difference(&balanced_subspectrum(w2, m)?))
}

/// Bounds for the two repeated-block families and the composition counts
/// for `(a^{k/i} b^{k/i})^i`.
pub fn check_nk_families(i: usize, k: usize) -> Result<ConjectureVerdict> {
    if !(2..=3).contains(&i) || k < i || 2 * k > 40 {
        return Err(Error::OutOfRange {
            op: "check_nk_families",
            constraint: "requires i ∈ {2, 3}, k ≥ i and 2k ≤ 40".into(),
        });
    }
    let mut v = ConjectureVerdict::new("repeated-blocks", format!("i = {i}, k = {k}"));
    let d = k / i;
    let r = k - d * i;
    let dp = k / (i - 1);
    let rp = k - dp * (i - 1);
    let big = |x: usize| BigUint::from(x);

    let w1 = FamilySpec::RepeatedBlocks { k, i }.word()?;
    let c1 = BigUint::from(spectrum_cardinality(&w1, k));
    // (k / (i(2i-1)))^{2i-1} ≤ c1, cleared of denominators
    let e = (2 * i - 1) as u32;
    let lhs = big(k).pow(e);
    let rhs = &c1 * big(i * (2 * i - 1)).pow(e);
    v.push(
        "a^r b^r (a^d b^d)^i lower bound",
        if lhs <= rhs {
            Status::Holds
        } else {
            fails(vec![w1], format!("≥ ({k}/{})^{e}", i * (2 * i - 1)), &c1)
        },
    );
    let upper1 = big(r + 1).pow(2) * big(d + 1).pow(e);
    v.push(
        "a^r b^r (a^d b^d)^i upper bound",
        if c1 <= upper1 {
            Status::Holds
        } else {
            fails(vec![w1], format!("≤ {upper1}"), &c1)
        },
    );

    let w2 = FamilySpec::RepeatedBlocksOpen { k, i }.word()?;
    let c2 = BigUint::from(spectrum_cardinality(&w2, k));
    let upper2 =
        big(r + 1) * big(rp + 1) * big(d + 1).pow(i as u32 - 1) * big(dp + 1).pow(i as u32 - 1);
    v.push(
        "a^r b^{r'} (a^d b^{d'})^{i-1} a^d upper bound",
        if c2 <= upper2 {
            Status::Holds
        } else {
            fails(vec![w2], format!("≤ {upper2}"), &c2)
        },
    );

    if r == 0 {
        let weak = bounded_compositions(k, 2 * i, d);
        v.push(
            "(a^d b^d)^i equals weak compositions",
            check_eq(vec![w1], weak, c1.clone()),
        );
        let spec = spectrum(&w1, k)?;
        let alt = FamilySpec::AlternatingPrefix { n: 2 * i }.word()?;
        let containing = spec.iter().filter(|u| is_scattered_factor(&alt, u)).count();
        let strict = strict_bounded_compositions(k, 2 * i, d);
        v.push(
            "members containing (ab)^i equal strict compositions",
            check_eq(vec![w1], strict, BigUint::from(containing)),
        );
    } else {
        v.push(
            "(a^d b^d)^i equals weak compositions",
            Status::Skipped(format!("i ∤ k (r = {r})")),
        );
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn strings(ws: &BTreeSet<BinaryWord>) -> Vec<String> {
        ws.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn k3_table() {
        let r = achievable_cardinalities(3, ExploreOptions::default()).unwrap();
        assert_eq!(r.achieved.keys().copied().collect::<Vec<_>>(), [4, 6, 7, 8]);
        assert_eq!(r.missing, [5]);
        // aabbab and abaabb are one orbit
        assert_eq!(w("aabbab").canonical(), w("abaabb").canonical());
        assert_eq!(strings(&r.achieved[&7]), ["aabbab"]);
    }

    #[test]
    fn k5_missing_contains_both_gaps() {
        let r = achievable_cardinalities(
            5,
            ExploreOptions {
                orbits: true,
                jobs: Some(2),
            },
        )
        .unwrap();
        for n in [7, 8, 9, 11] {
            assert!(r.missing.contains(&n), "{n}");
        }
        assert!(r.is_achieved(12));
    }

    #[test]
    fn orbit_reduction_is_sound() {
        for k in 1..=5 {
            let all = achievable_cardinalities(k, ExploreOptions::default()).unwrap();
            let reduced = achievable_cardinalities(
                k,
                ExploreOptions {
                    orbits: true,
                    jobs: None,
                },
            )
            .unwrap();
            assert_eq!(all, reduced, "k={k}");
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let one = achievable_cardinalities(
            6,
            ExploreOptions {
                orbits: false,
                jobs: Some(1),
            },
        )
        .unwrap();
        let four = achievable_cardinalities(
            6,
            ExploreOptions {
                orbits: false,
                jobs: Some(4),
            },
        )
        .unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn report_self_consistency() {
        let r = achievable_cardinalities(4, ExploreOptions::default()).unwrap();
        for (&n, ws) in &r.achieved {
            for w in ws {
                assert!(w.is_canonical() && w.is_strictly_balanced() && w.len() == 8);
                assert_eq!(spectrum_cardinality(w, 4), n);
            }
        }
        let lo = r.min().unwrap();
        let keys: BTreeSet<u128> = r
            .achieved
            .keys()
            .copied()
            .chain(r.missing.iter().copied())
            .collect();
        assert_eq!(keys, (lo..=16).collect());
    }

    #[test]
    fn csv_rows() {
        let r = achievable_cardinalities(3, ExploreOptions::default()).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "k,cardinality,achieved,witness\n3,4,1,aaabbb\n3,5,0,\n3,6,1,aababb\n3,7,1,aabbab\n3,8,1,ababab\n"
        );
    }

    #[test]
    fn desk_scale_guard() {
        assert!(matches!(
            achievable_cardinalities(40, ExploreOptions::default()),
            Err(Error::DeskScale { .. })
        ));
    }

    #[test]
    fn gaps_and_characterizations_small_k() {
        for k in 3..=6 {
            let r = achievable_cardinalities(
                k,
                ExploreOptions {
                    orbits: true,
                    jobs: None,
                },
            )
            .unwrap();
            let g = verify_gap_theorems_on(&r).unwrap();
            assert!(g.holds(), "{g}");
            let c = verify_characterizations_on(&r).unwrap();
            assert!(c.holds(), "{c}");
        }
        let g4 = verify_gap_theorems(4, ExploreOptions::default()).unwrap();
        assert!(matches!(
            g4.status("no value in [2k+1, 3k-4]"),
            Some(Status::Skipped(_))
        ));
    }

    #[test]
    fn full_spectrum_criterion() {
        assert!(verify_full_spectrum_criterion(12).unwrap().holds());
    }

    #[test]
    fn last_gap_reports() {
        let v = check_last_gap_conjecture(4).unwrap();
        assert_eq!(v.entries.len(), 3);
        assert!(matches!(v.status("i = 2"), Some(Status::Skipped(_))));
        let i0 = FamilySpec::LastGap { k: 4, i: 0 }.word().unwrap();
        let expected = spectrum_cardinality(&i0, 4) == 14;
        assert_eq!(matches!(v.status("i = 0"), Some(Status::Holds)), expected);
        assert!(check_last_gap_conjecture(3).is_err());
    }

    #[test]
    fn theta_reports() {
        let v = check_theta_conjecture(2..=7).unwrap();
        assert!(matches!(
            v.status("k = 2: propagation"),
            Some(Status::Skipped(_))
        ));
        assert_eq!(
            matches!(v.status("k = 4: 4(k-1)"), Some(Status::Holds)),
            spectrum_cardinality(&w("abbbaaab"), 4) == 12
        );
        for k in 1..=6 {
            let t = verify_theta_palindromes(k).unwrap();
            assert!(
                matches!(t.status("recursive construction"), Some(Status::Holds)),
                "{t}"
            );
        }
    }

    #[test]
    fn symmetric_difference_examples() {
        let d = balanced_symmetric_difference(&w("ababab"), &w("bababa"), 4).unwrap();
        assert_eq!(d.to_strings(), ["aabb", "bbaa"]);
        let d = balanced_symmetric_difference(&w("ababab"), &w("ababba"), 4).unwrap();
        assert_eq!(d.to_strings(), ["baab"]);
        let d = balanced_symmetric_difference(&w("bababa"), &w("ababba"), 4).unwrap();
        assert_eq!(d.to_strings(), ["aabb", "baab", "bbaa"]);
    }

    #[test]
    fn collisions_small() {
        let v = check_reconstruction_conjecture(2, ExploreOptions::default()).unwrap();
        assert_eq!(v.entries.len(), 1);
        // length-k spectra do not determine words of length 2k
        let c = collisions(3, 3, false, ExploreOptions::default()).unwrap();
        assert!(c.pairs().count() > 0);
        for (x, y) in c.pairs() {
            assert_ne!(x, y);
            assert_eq!(spectrum(&x, 3).unwrap(), spectrum(&y, 3).unwrap());
        }
    }

    #[test]
    fn nk_families_report() {
        let v = check_nk_families(2, 4).unwrap();
        assert!(matches!(
            v.status("a^r b^r (a^d b^d)^i lower bound"),
            Some(Status::Holds)
        ));
        assert!(matches!(
            v.status("members containing (ab)^i equal strict compositions"),
            Some(Status::Holds)
        ));
        let spec = spectrum_cardinality(&w("aabbaabb"), 4);
        assert_eq!(
            matches!(
                v.status("(a^d b^d)^i equals weak compositions"),
                Some(Status::Holds)
            ),
            BigUint::from(spec) == bounded_compositions(4, 4, 2)
        );
        assert!(check_nk_families(4, 8).is_err());
    }
}
