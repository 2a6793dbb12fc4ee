//! Command-line front end. [`run`] takes the argument list and output streams
//! and returns the process exit status:
//!
//! * `0` success,
//! * `1` domain error (bad word, parameter out of range),
//! * `2` a checked claim failed under `--verify` / `--check` / `--strict`,
//! * `64` usage error.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::closed_forms::{self, Formula, GenSquares};
use crate::delseq;
use crate::error::{Error, Result};
use crate::explorer::{self, ConjectureVerdict, ExploreOptions};
use crate::family::FamilySpec;
use crate::reconstruct::{self, real_oracle};
use crate::spectra::{spectrum, spectrum_cardinality};
use crate::word::BinaryWord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "scatfact",
    version,
    about = "k-spectra (scattered factor sets) of binary words"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true)]
    pub word: Option<String>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    #[arg(long, global = true)]
    pub c: Option<usize>,
    #[arg(long, global = true)]
    pub i: Option<usize>,
    #[arg(long, global = true)]
    pub j: Option<usize>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Compare against brute force; exit 2 on mismatch.
    #[arg(long, global = true, visible_alias = "check")]
    pub verify: bool,
    /// Exit 2 when a checked claim fails.
    #[arg(long, global = true)]
    pub strict: bool,
    /// One word per reversal/renaming orbit.
    #[arg(long, global = true)]
    pub orbits: bool,
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the cardinality table as CSV to this path.
    #[arg(long, global = true)]
    pub csv: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ScatFact_k(word): --word, --k
    Spectrum,
    /// |ScatFact_k(word)|: --word, --k
    Card,
    /// Evaluate a closed form: alternating-prefix (--n, --k = factor length),
    /// ab-power-a (--k --c --i), min (--k --c [--i]), one-missing (--k --i),
    /// gensquares-1 (--k --i), gensquares-2 (--k), gensquares-3/4 (--k --j),
    /// square (--k), compositions / compositions-strict (--k --i: C(k, 2i, k/i))
    ClosedForm { id: String },
    /// Stream scattered factors: alternating-prefix (--n, --k = factor length)
    /// or ab-power-a (--k --c --i)
    Enumerate { family: String },
    /// Recover --word from oracle answers with `general` or `two-blocks`
    Reconstruct { method: String },
    /// Achievable cardinalities for strictly balanced words of length 2k
    ExploreGaps,
    /// gaps, characterizations, last-gap, theta, theta-palindromes,
    /// reconstruction, nk (--i --k), remark (--i), full-spectrum (--n)
    CheckConjecture { id: String },
}

enum Failure {
    Domain(Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn io(e: std::io::Error) -> Failure {
    Failure::Domain(Error::OutOfRange {
        op: "output",
        constraint: e.to_string(),
    })
}

fn need(v: Option<usize>, flag: &'static str) -> Result<usize> {
    v.ok_or(Error::OutOfRange {
        op: "arguments",
        constraint: format!("missing --{flag}"),
    })
}

fn need_word(cli: &Cli) -> Result<BinaryWord> {
    let text = cli.word.as_deref().ok_or(Error::OutOfRange {
        op: "arguments",
        constraint: "missing --word".into(),
    })?;
    crate::word::parse(text)
}

fn big_json(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{}", e.render());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        EXIT_USAGE
                    } else {
                        EXIT_OK
                    }
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Mismatch(msg)) => {
            let _ = writeln!(err, "mismatch: {msg}");
            EXIT_MISMATCH
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Spectrum => cmd_spectrum(cli, out),
        Command::Card => {
            let w = need_word(cli)?;
            let k = need(cli.k, "k")?;
            let n = spectrum_cardinality(&w, k);
            match cli.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({"word": w.to_string(), "k": k, "cardinality": n.to_string()})
                ),
                _ => writeln!(out, "{n}"),
            }
            .map_err(io)
        }
        Command::ClosedForm { id } => cmd_closed_form(cli, id, out),
        Command::Enumerate { family } => cmd_enumerate(cli, family, out),
        Command::Reconstruct { method } => cmd_reconstruct(cli, method, out),
        Command::ExploreGaps => cmd_explore(cli, out, err),
        Command::CheckConjecture { id } => cmd_check(cli, id, out),
    }
}

fn cmd_spectrum(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let w = need_word(cli)?;
    let k = need(cli.k, "k")?;
    let s = spectrum(&w, k)?;
    match cli.format {
        Format::Text => {
            for u in s.iter() {
                writeln!(
                    out,
                    "{}",
                    if u.is_empty() {
                        "ε".to_string()
                    } else {
                        u.to_string()
                    }
                )
                .map_err(io)?;
            }
        }
        Format::Json => writeln!(out, "{}", s.to_json()).map_err(io)?,
        Format::Csv => s
            .write_csv(&mut *out)
            .map_err(|e| io(std::io::Error::other(e)))?,
    }
    Ok(())
}

fn formula_for(cli: &Cli, id: &str) -> Result<Formula> {
    let k = || need(cli.k, "k");
    Ok(match id {
        "alternating-prefix" => Formula::AlternatingPrefix {
            n: need(cli.n, "n")?,
            l: k()?,
        },
        "ab-power-a" => Formula::AbPowerA {
            k: k()?,
            c: need(cli.c, "c")?,
            i: need(cli.i, "i")?,
        },
        "min" => Formula::Min {
            k: k()?,
            c: need(cli.c, "c")?,
            i: cli.i.unwrap_or(0),
        },
        "one-missing" => Formula::OneMissing {
            k: k()?,
            i: need(cli.i, "i")?,
        },
        "square" => Formula::Square { k: k()? },
        "compositions" | "compositions-strict" => {
            let (k, i) = (k()?, need(cli.i, "i")?);
            if i == 0 || k % i != 0 {
                return Err(Error::OutOfRange {
                    op: "compositions",
                    constraint: "requires i ≥ 1 dividing k".into(),
                });
            }
            let (total, parts, bound) = (k, 2 * i, k / i);
            if id == "compositions" {
                Formula::BoundedCompositions {
                    total,
                    parts,
                    bound,
                }
            } else {
                Formula::StrictCompositions {
                    total,
                    parts,
                    bound,
                }
            }
        }
        other => {
            let variant = other
                .strip_prefix("gensquares-")
                .and_then(|n| n.parse().ok())
                .and_then(GenSquares::from_number)
                .ok_or_else(|| Error::OutOfRange {
                    op: "closed-form",
                    constraint: format!("unknown formula {other:?}"),
                })?;
            let param = match variant {
                GenSquares::Sandwich => need(cli.i, "i")?,
                GenSquares::ShiftedB => 0,
                GenSquares::SplitTail | GenSquares::SplitMiddle => need(cli.j, "j")?,
            };
            Formula::GenSquares {
                variant,
                k: k()?,
                param,
            }
        }
    })
}

fn cmd_closed_form(cli: &Cli, id: &str, out: &mut dyn Write) -> Outcome {
    let f = formula_for(cli, id)?;
    let result = f.evaluate()?;
    let oracle = if cli.verify { Some(f.oracle()?) } else { None };
    let mut extra: Vec<(String, Value)> = Vec::new();
    match f {
        Formula::Min { k, c, .. } => {
            let ws = closed_forms::min_witnesses(k, c)?;
            extra.push((
                "witnesses".into(),
                json!(ws.iter().map(|w| w.to_string()).collect::<Vec<_>>()),
            ));
        }
        Formula::OneMissing { k, i } => {
            let (_, missing) = closed_forms::card_one_missing(k, i)?;
            extra.push(("missing".into(), json!(missing.to_string())));
        }
        _ => {}
    }
    let matches = oracle.as_ref().map(|o| *o == result.value);
    match cli.format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("formula".into(), json!(f.id()));
            obj.insert(
                "params".into(),
                Value::Object(
                    f.params()
                        .into_iter()
                        .map(|(n, v)| (n.to_string(), json!(v)))
                        .collect(),
                ),
            );
            obj.insert("value".into(), big_json(&result.value));
            if let Some(o) = &oracle {
                obj.insert("oracle".into(), big_json(o));
                obj.insert("match".into(), json!(matches));
            }
            for (key, v) in extra {
                obj.insert(key, v);
            }
            writeln!(out, "{}", Value::Object(obj)).map_err(io)?;
        }
        _ => {
            match &oracle {
                Some(o) => writeln!(
                    out,
                    "value {}, oracle {}, {}",
                    result.value,
                    o,
                    if matches == Some(true) {
                        "match"
                    } else {
                        "mismatch"
                    }
                ),
                None => writeln!(out, "{}", result.value),
            }
            .map_err(io)?;
            for (key, v) in extra {
                let text = match v {
                    Value::String(s) => s,
                    Value::Array(a) => a
                        .iter()
                        .filter_map(|x| x.as_str())
                        .collect::<Vec<_>>()
                        .join(" "),
                    other => other.to_string(),
                };
                writeln!(out, "{key} {text}").map_err(io)?;
            }
        }
    }
    if matches == Some(false) {
        return Err(Failure::Mismatch(format!(
            "{f}: formula {} but brute force {}",
            result.value,
            oracle.unwrap()
        )));
    }
    Ok(())
}

fn cmd_enumerate(cli: &Cli, family: &str, out: &mut dyn Write) -> Outcome {
    let (words, source): (Vec<BinaryWord>, BinaryWord) = match family {
        "alternating-prefix" => {
            let n = need(cli.n, "n")?;
            let l = need(cli.k, "k")?;
            (
                delseq::enumerate_distinct(n, l)?.collect(),
                FamilySpec::AlternatingPrefix { n }.word()?,
            )
        }
        "ab-power-a" => {
            let (k, c, i) = (need(cli.k, "k")?, need(cli.c, "c")?, need(cli.i, "i")?);
            (
                delseq::enumerate_ab_power_a(k, c, i)?.collect(),
                FamilySpec::AlternatingThenA { k, c }.word()?,
            )
        }
        other => {
            return Err(Error::OutOfRange {
                op: "enumerate",
                constraint: format!("unknown family {other:?} (alternating-prefix, ab-power-a)"),
            }
            .into())
        }
    };
    let len = words.first().map_or(0, |w| w.len());
    match cli.format {
        Format::Json => {
            let mut sorted: Vec<String> = words.iter().map(|w| w.to_string()).collect();
            sorted.sort();
            writeln!(out, "{}", json!(sorted)).map_err(io)?;
        }
        _ => {
            for w in &words {
                writeln!(
                    out,
                    "{}",
                    if w.is_empty() {
                        "ε".to_string()
                    } else {
                        w.to_string()
                    }
                )
                .map_err(io)?;
            }
        }
    }
    if cli.verify {
        let expected = spectrum(&source, len)?;
        let got: std::collections::BTreeSet<_> = words.iter().copied().collect();
        let dup = got.len() != words.len();
        if dup || got != expected.iter().collect() {
            return Err(Failure::Mismatch(format!(
                "stream has {} words ({} distinct), ScatFact_{len}({source}) has {}",
                words.len(),
                got.len(),
                expected.len()
            )));
        }
    }
    Ok(())
}

fn cmd_reconstruct(cli: &Cli, method: &str, out: &mut dyn Write) -> Outcome {
    let w = need_word(cli)?;
    if !w.is_strictly_balanced() {
        return Err(Error::OutOfRange {
            op: "reconstruct",
            constraint: format!("{w} is not strictly balanced"),
        }
        .into());
    }
    let k = w.len() / 2;
    let result = match method {
        "general" => reconstruct::reconstruct_general(&mut real_oracle(&w, k + 1, false), k)?,
        "two-blocks" => {
            let kp = reconstruct::two_blocks_query_length(k);
            reconstruct::reconstruct_two_blocks(&mut real_oracle(&w, kp, true), k)?
        }
        other => {
            return Err(Error::OutOfRange {
                op: "reconstruct",
                constraint: format!("unknown method {other:?} (general, two-blocks)"),
            }
            .into())
        }
    };
    let ok = result.word == w;
    match cli.format {
        Format::Json => writeln!(
            out,
            "{}",
            json!({"method": result.method.to_string(), "word": result.word.to_string(),
                   "queries": result.queries_used, "match": ok})
        ),
        _ => writeln!(
            out,
            "recovered {}\nqueries {}\n{}",
            result.word,
            result.queries_used,
            if ok { "match" } else { "mismatch" }
        ),
    }
    .map_err(io)?;
    if !ok && (cli.verify || cli.strict) {
        return Err(Failure::Mismatch(format!(
            "recovered {} from hidden {w}",
            result.word
        )));
    }
    Ok(())
}

fn options(cli: &Cli) -> ExploreOptions {
    ExploreOptions {
        orbits: cli.orbits,
        jobs: cli.jobs,
    }
}

fn cmd_explore(cli: &Cli, out: &mut dyn Write, _err: &mut dyn Write) -> Outcome {
    let k = need(cli.k, "k")?;
    let report = explorer::achievable_cardinalities(k, options(cli))?;
    if let Some(path) = &cli.csv {
        let file = std::fs::File::create(path).map_err(io)?;
        report
            .write_csv(file)
            .map_err(|e| io(std::io::Error::other(e)))?;
    }
    match cli.format {
        Format::Csv => report
            .write_csv(&mut *out)
            .map_err(|e| io(std::io::Error::other(e)))?,
        Format::Json => {
            let achieved: serde_json::Map<String, Value> = report
                .achieved
                .iter()
                .map(|(n, ws)| {
                    (
                        n.to_string(),
                        json!(ws.iter().map(|w| w.to_string()).collect::<Vec<_>>()),
                    )
                })
                .collect();
            writeln!(
                out,
                "{}",
                json!({"k": k, "achieved": achieved, "missing": report.missing.iter().map(|n| n.to_string()).collect::<Vec<_>>()})
            )
            .map_err(io)?;
        }
        Format::Text => {
            let list = |xs: Vec<u128>| {
                xs.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            writeln!(out, "k = {k}").map_err(io)?;
            writeln!(
                out,
                "achieved: {}",
                list(report.achieved.keys().copied().collect())
            )
            .map_err(io)?;
            writeln!(out, "missing: {}", list(report.missing.clone())).map_err(io)?;
        }
    }
    if cli.strict && k >= 3 {
        let v = explorer::verify_gap_theorems_on(&report)?;
        return verdict_outcome(cli, &v, out, false);
    }
    Ok(())
}

fn verdict_outcome(cli: &Cli, v: &ConjectureVerdict, out: &mut dyn Write, print: bool) -> Outcome {
    if print {
        match cli.format {
            Format::Json => {
                let entries: Vec<Value> = v
                    .entries
                    .iter()
                    .map(|(label, s)| json!({"claim": label, "status": s.to_string()}))
                    .collect();
                writeln!(
                    out,
                    "{}",
                    json!({"id": v.id, "range": v.range, "holds": v.holds(), "entries": entries})
                )
            }
            _ => write!(out, "{v}"),
        }
        .map_err(io)?;
    }
    if cli.strict && !v.holds() {
        let first = v.failures().next().map(|(l, c)| {
            let ws: Vec<String> = c.words.iter().map(|w| w.to_string()).collect();
            format!(
                "{l}: {} expected {}, got {}",
                ws.join(" / "),
                c.expected,
                c.actual
            )
        });
        return Err(Failure::Mismatch(format!(
            "{} {}",
            v.id,
            first.unwrap_or_default()
        )));
    }
    Ok(())
}

fn cmd_check(cli: &Cli, id: &str, out: &mut dyn Write) -> Outcome {
    let opts = options(cli);
    let v = match id {
        "gaps" => explorer::verify_gap_theorems(need(cli.k, "k")?, opts)?,
        "characterizations" => explorer::verify_characterizations(need(cli.k, "k")?, opts)?,
        "last-gap" => explorer::check_last_gap_conjecture(need(cli.k, "k")?)?,
        "theta" => {
            let k = need(cli.k, "k")?;
            explorer::check_theta_conjecture(cli.n.unwrap_or(2).min(k)..=k)?
        }
        "theta-palindromes" => explorer::verify_theta_palindromes(need(cli.k, "k")?)?,
        "reconstruction" => explorer::check_reconstruction_conjecture(need(cli.k, "k")?, opts)?,
        "nk" => explorer::check_nk_families(need(cli.i, "i")?, need(cli.k, "k")?)?,
        "full-spectrum" => explorer::verify_full_spectrum_criterion(cli.n.unwrap_or(12))?,
        "remark" => {
            let i = need(cli.i, "i")?;
            let r = closed_forms::remark_inequality(i)?;
            let mut v = ConjectureVerdict {
                id: "remark".into(),
                range: format!("i = {i}"),
                entries: Vec::new(),
            };
            for (label, value) in [("j < M", &r.m_form), ("j < i", &r.strict_form)] {
                let status = if value > &num_bigint::BigInt::from(0) {
                    explorer::Status::Holds
                } else {
                    explorer::Status::Fails(explorer::Counterexample {
                        words: vec![],
                        expected: "> 0".into(),
                        actual: value.to_string(),
                    })
                };
                v.entries
                    .push((format!("sum over {label} = {value}"), status));
            }
            v
        }
        other => {
            return Err(Error::OutOfRange {
                op: "check-conjecture",
                constraint: format!("unknown id {other:?}"),
            }
            .into())
        }
    };
    verdict_outcome(cli, &v, out, true)
}
