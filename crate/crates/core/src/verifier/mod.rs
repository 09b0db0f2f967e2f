//! Closed registry of congruence and divisibility identities, plus the sweep
//! driver that checks every entry over ranges of primes and parameters.
//!
//! Each identity carries an applicability predicate (returning a
//! machine-readable skip reason when it declines a cell) and two evaluators
//! that compute the left and right sides through independent routes. The
//! driver compares the sides cell by cell and assembles deterministic
//! reports: cells are enumerated in canonical (p, a, A, B) order, and results
//! are merged in that order no matter how the parallel sweep schedules them.

pub mod registry;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::primes_in;

/// Which parameters an identity sweeps besides the prime.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ParamsKind {
    POnly,
    PAndA,
    PAndAb,
}

impl ParamsKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ParamsKind::POnly => "P_ONLY",
            ParamsKind::PAndA => "P_AND_A",
            ParamsKind::PAndAb => "P_AND_AB",
        }
    }
}

impl fmt::Display for ParamsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where an identity's comparison lives: mod p, mod p^2 (quotient statements),
/// exact integers, or boolean equivalences.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ModulusKind {
    ModP,
    ModP2,
    Exact,
    BoolEquiv,
}

impl ModulusKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModulusKind::ModP => "MOD_P",
            ModulusKind::ModP2 => "MOD_P2",
            ModulusKind::Exact => "EXACT",
            ModulusKind::BoolEquiv => "BOOLEAN_EQUIV",
        }
    }
}

impl fmt::Display for ModulusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One sweep cell: a prime plus whatever parameters the identity consumes.
#[derive(Copy, Clone, Debug)]
pub struct Cell {
    pub p: u64,
    pub a: i64,
    pub ab: (i64, i64),
}

/// A single compared quantity: a residue or a divisibility/classification flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckValue {
    Residue(u64),
    Flag(bool),
}

impl fmt::Display for CheckValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckValue::Residue(r) => write!(f, "{r}"),
            CheckValue::Flag(b) => write!(f, "{b}"),
        }
    }
}

/// Labeled component values produced by one side of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SideEval {
    components: Vec<(String, CheckValue)>,
}

impl SideEval {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn residue(mut self, label: impl Into<String>, value: u64) -> Self {
        self.push_residue(label, value);
        self
    }

    pub fn flag(mut self, label: impl Into<String>, value: bool) -> Self {
        self.push_flag(label, value);
        self
    }

    pub fn push_residue(&mut self, label: impl Into<String>, value: u64) {
        self.components
            .push((label.into(), CheckValue::Residue(value)));
    }

    pub fn push_flag(&mut self, label: impl Into<String>, value: bool) {
        self.components
            .push((label.into(), CheckValue::Flag(value)));
    }

    fn render(&self) -> String {
        let mut out = String::new();
        for (i, (label, value)) in self.components.iter().enumerate() {
            if i > 0 {
                out.push_str("; ");
            }
            let _ = write!(out, "{label}={value}");
        }
        out
    }
}

pub type Applicability = fn(&Cell) -> std::result::Result<(), String>;
pub type Evaluator = fn(&Cell) -> SideEval;

/// One registry entry. The `lhs` and `rhs` evaluators share nothing beyond
/// scalar number-theory primitives; their agreement is what gets verified.
pub struct Identity {
    pub id: &'static str,
    pub anchor: &'static str,
    pub params_kind: ParamsKind,
    pub modulus_kind: ModulusKind,
    pub applicability: Applicability,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
}

/// The fixed identity registry, built once per process.
pub fn registry() -> &'static [Identity] {
    static REGISTRY: OnceLock<Vec<Identity>> = OnceLock::new();
    REGISTRY.get_or_init(registry::build)
}

/// Look up a registry entry by id.
pub fn identity(id: &str) -> Result<&'static Identity> {
    registry()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// The standing parameter grid: integers a in [-6, 6] without 0, +-1.
pub fn default_a_values() -> Vec<i64> {
    (-6..=6).filter(|a| ![-1, 0, 1].contains(a)).collect()
}

/// The standing Lucas parameter grid: (A, B) in [-4, 4]^2.
pub fn default_ab_values() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in -4..=4 {
        for b in -4..=4 {
            out.push((a, b));
        }
    }
    out
}

/// Prime and parameter ranges for one sweep; prime bounds are inclusive.
#[derive(Clone, Debug)]
pub struct SweepRange {
    pub prime_lo: u64,
    pub prime_hi: u64,
    pub a_values: Vec<i64>,
    pub ab_values: Vec<(i64, i64)>,
}

impl SweepRange {
    pub fn new(prime_lo: u64, prime_hi: u64) -> Self {
        SweepRange {
            prime_lo,
            prime_hi,
            a_values: default_a_values(),
            ab_values: default_ab_values(),
        }
    }

    pub fn with_a_values(mut self, a_values: Vec<i64>) -> Self {
        self.a_values = a_values;
        self
    }

    fn describe(&self, kind: ParamsKind) -> String {
        let mut out = format!("p in [{}, {}]", self.prime_lo, self.prime_hi);
        match kind {
            ParamsKind::POnly => {}
            ParamsKind::PAndA => {
                let list: Vec<String> = self.a_values.iter().map(|a| a.to_string()).collect();
                let _ = write!(out, "; a in {{{}}}", list.join(", "));
            }
            ParamsKind::PAndAb => {
                let amin = self.ab_values.iter().map(|x| x.0).min().unwrap_or(0);
                let amax = self.ab_values.iter().map(|x| x.0).max().unwrap_or(0);
                let bmin = self.ab_values.iter().map(|x| x.1).min().unwrap_or(0);
                let bmax = self.ab_values.iter().map(|x| x.1).max().unwrap_or(0);
                let _ = write!(
                    out,
                    "; {} pairs (A, B), A in [{amin}, {amax}], B in [{bmin}, {bmax}]",
                    self.ab_values.len()
                );
            }
        }
        out
    }
}

/// One counterexample: the cell plus the rendered side values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub p: u64,
    pub a: Option<i64>,
    #[serde(rename = "A")]
    pub big_a: Option<i64>,
    #[serde(rename = "B")]
    pub big_b: Option<i64>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of sweeping one identity over a range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub anchor: String,
    pub range: String,
    pub checked: u64,
    pub skipped: u64,
    pub failed: u64,
    pub failures: Vec<Failure>,
    pub skip_histogram: BTreeMap<String, u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

enum Outcome {
    Checked,
    Skipped(String),
    Failed(Failure),
}

fn evaluate_cell(entry: &Identity, cell: &Cell) -> Outcome {
    if let Err(reason) = (entry.applicability)(cell) {
        return Outcome::Skipped(reason);
    }
    let lhs = (entry.lhs)(cell);
    let rhs = (entry.rhs)(cell);
    if lhs == rhs {
        Outcome::Checked
    } else {
        let (a, big_a, big_b) = match entry.params_kind {
            ParamsKind::POnly => (None, None, None),
            ParamsKind::PAndA => (Some(cell.a), None, None),
            ParamsKind::PAndAb => (None, Some(cell.ab.0), Some(cell.ab.1)),
        };
        Outcome::Failed(Failure {
            p: cell.p,
            a,
            big_a,
            big_b,
            lhs: lhs.render(),
            rhs: rhs.render(),
        })
    }
}

/// Candidate cells in canonical (p, a, A, B) order.
fn cells_for(entry: &Identity, range: &SweepRange) -> Vec<Cell> {
    let primes = primes_in(range.prime_lo, range.prime_hi);
    let mut cells = Vec::new();
    for &p in &primes {
        match entry.params_kind {
            ParamsKind::POnly => cells.push(Cell {
                p,
                a: 0,
                ab: (0, 0),
            }),
            ParamsKind::PAndA => {
                for &a in &range.a_values {
                    cells.push(Cell { p, a, ab: (0, 0) });
                }
            }
            ParamsKind::PAndAb => {
                for &ab in &range.ab_values {
                    cells.push(Cell { p, a: 0, ab });
                }
            }
        }
    }
    cells
}

fn sweep(entry: &Identity, range: &SweepRange) -> VerificationReport {
    let cells = cells_for(entry, range);
    let outcomes: Vec<Outcome> = cells
        .par_iter()
        .map(|cell| evaluate_cell(entry, cell))
        .collect();
    let mut report = VerificationReport {
        identity_id: entry.id.to_string(),
        anchor: entry.anchor.to_string(),
        range: range.describe(entry.params_kind),
        checked: 0,
        skipped: 0,
        failed: 0,
        failures: Vec::new(),
        skip_histogram: BTreeMap::new(),
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Checked => report.checked += 1,
            Outcome::Skipped(reason) => {
                report.skipped += 1;
                *report.skip_histogram.entry(reason).or_insert(0) += 1;
            }
            Outcome::Failed(failure) => {
                report.failed += 1;
                report.failures.push(failure);
            }
        }
    }
    report
}

fn thread_pool(parallelism: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .expect("building a rayon pool cannot fail with a positive thread count")
}

/// Sweep one identity over the range with the given worker count.
pub fn verify(id: &str, range: &SweepRange, parallelism: usize) -> Result<VerificationReport> {
    let entry = identity(id)?;
    Ok(thread_pool(parallelism).install(|| sweep(entry, range)))
}

/// Sweep every registry entry over primes up to `prime_bound` (inclusive)
/// with the given a-grid and the standing (A, B) grid.
pub fn verify_all(
    prime_bound: u64,
    a_values: &[i64],
    parallelism: usize,
) -> Vec<VerificationReport> {
    let range = SweepRange::new(2, prime_bound).with_a_values(a_values.to_vec());
    let pool = thread_pool(parallelism);
    pool.install(|| registry().iter().map(|e| sweep(e, &range)).collect())
}

/// Structured human-readable rendering with every report field.
pub fn render_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "identity: {}", r.identity_id);
        let _ = writeln!(out, "anchor: {}", r.anchor);
        let _ = writeln!(out, "range: {}", r.range);
        let _ = writeln!(out, "checked: {}", r.checked);
        let _ = writeln!(out, "skipped: {}", r.skipped);
        let _ = writeln!(out, "failed: {}", r.failed);
        if r.skip_histogram.is_empty() {
            let _ = writeln!(out, "skip_histogram: none");
        } else {
            let _ = writeln!(out, "skip_histogram:");
            for (reason, count) in &r.skip_histogram {
                let _ = writeln!(out, "  {reason}: {count}");
            }
        }
        if r.failures.is_empty() {
            let _ = writeln!(out, "failures: none");
        } else {
            let _ = writeln!(out, "failures:");
            for f in &r.failures {
                let mut params = format!("p={}", f.p);
                if let Some(a) = f.a {
                    let _ = write!(params, " a={a}");
                }
                if let (Some(big_a), Some(big_b)) = (f.big_a, f.big_b) {
                    let _ = write!(params, " A={big_a} B={big_b}");
                }
                let _ = writeln!(out, "  {params} lhs=[{}] rhs=[{}]", f.lhs, f.rhs);
            }
        }
        let _ = writeln!(out, "---");
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Machine-readable rendering: one record per line, key=value pairs.
/// Byte-stable across runs and worker counts.
pub fn render_machine(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(
            out,
            "record=report id={} anchor={} range={} checked={} skipped={} failed={}",
            r.identity_id,
            quote(&r.anchor),
            quote(&r.range),
            r.checked,
            r.skipped,
            r.failed
        );
        for (reason, count) in &r.skip_histogram {
            let _ = writeln!(
                out,
                "record=skip id={} reason={} count={}",
                r.identity_id,
                quote(reason),
                count
            );
        }
        for f in &r.failures {
            let mut line = format!("record=failure id={} p={}", r.identity_id, f.p);
            if let Some(a) = f.a {
                let _ = write!(line, " a={a}");
            }
            if let (Some(big_a), Some(big_b)) = (f.big_a, f.big_b) {
                let _ = write!(line, " A={big_a} B={big_b}");
            }
            let _ = writeln!(out, "{line} lhs={} rhs={}", quote(&f.lhs), quote(&f.rhs));
        }
    }
    out
}
