//! k-spectra of binary words.
//!
//! The k-spectrum `ScatFact_k(w)` of a word `w` over `{a, b}` is the set of its
//! distinct scattered factors (subsequences) of length `k`. This crate computes
//! and counts spectra, evaluates the known closed forms for structured word
//! families against brute force, enumerates spectra of alternating words
//! through deleting-sequence normal forms, reconstructs strictly balanced
//! words from spectrum membership queries, and explores which cardinalities
//! strictly balanced words can reach.
//!
//! ```
//! use scatfact::{spectra, BinaryWord};
//!
//! let w: BinaryWord = "abba".parse().unwrap();
//! let s = spectra::spectrum(&w, 3).unwrap();
//! assert_eq!(s.to_strings(), ["aba", "abb", "bba"]);
//! assert_eq!(spectra::spectrum_cardinality(&"bababaa".parse().unwrap(), 4), 12);
//! ```

pub mod cli;
pub mod closed_forms;
pub mod delseq;
pub mod error;
pub mod explorer;
pub mod family;
pub mod reconstruct;
pub mod spectra;
pub mod word;

pub use error::{Error, Result};
pub use family::{family, FamilySpec};
pub use spectra::{FullSpectrum, Spectrum};
pub use word::{BinaryWord, Symbol};
