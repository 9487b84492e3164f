//! Identity suites: enumerate or sample parameters, evaluate both sides of
//! each identity exactly, and collect a machine-readable report.

mod algebra_suites;
mod fock_suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bcgraded::{Combination, Label, Series};
use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::glhat::GlHatElement;
use crate::qtorus::TorusElement;
use crate::scalars::{Int, QMode, QScalar};

pub use fock_suites::prop_scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteId {
    TorusAxioms,
    Jacobi,
    Props11,
    Props12,
    Grading,
    Lemma21,
    Lemma22,
    Lemma23,
    Props2x,
    Theorem21,
    Theorem22,
    ThetaSum,
}

impl SuiteId {
    pub const ALL: [SuiteId; 12] = [
        SuiteId::TorusAxioms,
        SuiteId::Jacobi,
        SuiteId::Props11,
        SuiteId::Props12,
        SuiteId::Grading,
        SuiteId::Lemma21,
        SuiteId::Lemma22,
        SuiteId::Lemma23,
        SuiteId::Props2x,
        SuiteId::Theorem21,
        SuiteId::Theorem22,
        SuiteId::ThetaSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::TorusAxioms => "torus-axioms",
            SuiteId::Jacobi => "jacobi",
            SuiteId::Props11 => "props-1.1",
            SuiteId::Props12 => "props-1.2",
            SuiteId::Grading => "grading",
            SuiteId::Lemma21 => "lemma-2.1",
            SuiteId::Lemma22 => "lemma-2.2",
            SuiteId::Lemma23 => "lemma-2.3",
            SuiteId::Props2x => "props-2.x",
            SuiteId::Theorem21 => "theorem-2.1",
            SuiteId::Theorem22 => "theorem-2.2",
            SuiteId::ThetaSum => "theta-sum",
        }
    }

    /// One-line description, also used for the suite table in the docs.
    pub fn summary(self) -> &'static str {
        match self {
            SuiteId::TorusAxioms => "associativity, bar anti-involution and commutator subspace of the quantum torus",
            SuiteId::Jacobi => "Jacobi identity for the centrally extended matrix bracket",
            SuiteId::Props11 => "closed brackets of f, g, h against matrix brackets (series C, D)",
            SuiteId::Props12 => "closed brackets of all six kinds against matrix brackets (series B)",
            SuiteId::Grading => "root-space weights under the Cartan elements",
            SuiteId::Lemma21 => "symmetry of g and h quadratic operators under index swap",
            SuiteId::Lemma22 => "commutators of f, g, h operators with field modes",
            SuiteId::Lemma23 => "commutators involving the e field (series B)",
            SuiteId::Props2x => "commutators of quadratic operators with their scalar terms",
            SuiteId::Theorem21 => "Fock representation of series C and D",
            SuiteId::Theorem22 => "Fock representation of series B",
            SuiteId::ThetaSum => "closed form of the truncated theta sum",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite '{s}'")))
    }
}

/// Deliberate defects used to confirm the suites can see single-term errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// The central term of the matrix bracket changes sign on off-diagonal
    /// contractions.
    FlipCentralSign,
    /// `F_ii(0,n)` and `E_0(0,n)` lose their scalar shift.
    DropCorrection,
}

impl Mutation {
    pub fn name(self) -> &'static str {
        match self {
            Mutation::FlipCentralSign => "flip-central-sign",
            Mutation::DropCorrection => "drop-correction",
        }
    }
}

/// A closed integer interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        Interval { lo, hi }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ranges {
    /// The torus exponents `m, n, p, s`.
    pub exponents: Interval,
    /// `m` and `x` of the theta sum.
    pub theta_m: Interval,
    pub theta_x: Interval,
}

impl Default for Ranges {
    fn default() -> Self {
        Ranges { exponents: Interval::new(-2, 2), theta_m: Interval::new(-6, 6), theta_x: Interval::new(-5, 5) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: SuiteId,
    pub series: Series,
    pub qmode: QMode,
    pub cutoff: u32,
    pub ranges: Ranges,
    /// Sampled instances per identity (grids ignore it).
    pub trials: u32,
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

impl SuiteConfig {
    pub fn new(suite: SuiteId, series: Series, qmode: QMode) -> Self {
        let mut ranges = Ranges::default();
        if matches!(suite, SuiteId::TorusAxioms | SuiteId::Jacobi) {
            ranges.exponents = Interval::new(-3, 3);
        }
        SuiteConfig { suite, series, qmode, cutoff: 3, ranges, trials: 100, seed: 0, mutation: None }
    }

    pub fn validate(&self) -> Result<()> {
        use crate::bcgraded::SeriesType::*;
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        for (name, r) in [
            ("exponents", self.ranges.exponents),
            ("theta m", self.ranges.theta_m),
            ("theta x", self.ranges.theta_x),
        ] {
            if r.lo > r.hi {
                return Err(Error::InvalidConfig(format!("empty {name} range {}..{}", r.lo, r.hi)));
            }
        }
        let ty = self.series.ty;
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("suite {} requires {what}, got series {}", self.suite, self.series)))
            }
        };
        match self.suite {
            SuiteId::Props11 | SuiteId::Theorem21 => need(matches!(ty, C | D), "series c or d"),
            SuiteId::Props12 | SuiteId::Lemma23 | SuiteId::Theorem22 => need(ty == B, "series b"),
            _ => Ok(()),
        }?;
        match (self.mutation, self.suite) {
            (None, _) => Ok(()),
            (Some(Mutation::FlipCentralSign), SuiteId::Jacobi) => Ok(()),
            (Some(Mutation::DropCorrection), SuiteId::Theorem21 | SuiteId::Theorem22) => Ok(()),
            (Some(m), s) => Err(Error::InvalidConfig(format!("mutation {} does not apply to suite {s}", m.name()))),
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub identity: String,
    pub params: String,
    pub lhs: String,
    pub rhs: String,
    pub diff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub series: String,
    pub qmode: String,
    pub n: u32,
    pub cutoff: u32,
    pub trials: u32,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<String>,
    pub checked: u64,
    /// Number of failed checks; `failures` keeps the first
    /// [`Report::MAX_LISTED`] of them.
    pub failed: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl Report {
    pub const MAX_LISTED: usize = 50;

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// The report with the timing zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Report {
        Report { elapsed_ms: 0, ..self.clone() }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} series={} q={} cutoff={} checked={} failed={} ({} ms)",
            self.suite, self.series, self.qmode, self.cutoff, self.checked, self.failed, self.elapsed_ms
        )?;
        if let Some(m) = &self.mutation {
            write!(f, " mutation={m}")?;
        }
        for x in &self.failures {
            write!(f, "\n  {} [{}]\n    lhs:  {}\n    rhs:  {}\n    diff: {}", x.identity, x.params, x.lhs, x.rhs, x.diff)?;
        }
        Ok(())
    }
}

/// Values whose two sides can be compared and their difference rendered.
pub trait Checkable: PartialEq + fmt::Display {
    fn diff(&self, other: &Self) -> String;
}

impl<T: Int> Checkable for QScalar<T> {
    fn diff(&self, other: &Self) -> String {
        (self - other).to_string()
    }
}

impl<T: Int> Checkable for TorusElement<T> {
    fn diff(&self, other: &Self) -> String {
        self.sub(other).to_string()
    }
}

impl<T: Int> Checkable for GlHatElement<T> {
    fn diff(&self, other: &Self) -> String {
        self.sub(other).map(|d| d.to_string()).unwrap_or_else(|e| e.to_string())
    }
}

impl<T: Int> Checkable for FockVector<T> {
    fn diff(&self, other: &Self) -> String {
        self.sub(other).to_string()
    }
}

impl<T: Int> Checkable for Combination<T> {
    fn diff(&self, other: &Self) -> String {
        self.sub(other).to_string()
    }
}

/// Accumulates the outcome of one suite run.
struct Run {
    report: Report,
}

impl Run {
    fn new(cfg: &SuiteConfig) -> Self {
        Run {
            report: Report {
                suite: cfg.suite.name().into(),
                series: cfg.series.ty.to_string(),
                qmode: cfg.qmode.to_string(),
                n: cfg.series.n,
                cutoff: cfg.cutoff,
                trials: cfg.trials,
                seed: cfg.seed,
                mutation: cfg.mutation.map(|m| m.name().to_string()),
                checked: 0,
                failed: 0,
                failures: Vec::new(),
                elapsed_ms: 0,
            },
        }
    }

    fn check<X: Checkable>(&mut self, id: &str, params: impl FnOnce() -> String, lhs: &X, rhs: &X) -> bool {
        self.report.checked += 1;
        if lhs == rhs {
            return true;
        }
        self.report.failed += 1;
        if self.report.failures.len() < Report::MAX_LISTED {
            self.report.failures.push(Failure {
                identity: id.into(),
                params: params(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                diff: lhs.diff(rhs),
            });
        }
        false
    }
}

/// Runs one suite. Identical configurations give identical reports apart
/// from `elapsed_ms`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let start = Instant::now();
    let mut run = Run::new(cfg);
    match cfg.suite {
        SuiteId::ThetaSum => algebra_suites::theta_sum(cfg, &mut run),
        SuiteId::TorusAxioms => algebra_suites::torus_axioms(cfg, &mut run),
        SuiteId::Jacobi => algebra_suites::jacobi(cfg, &mut run),
        SuiteId::Props11 | SuiteId::Props12 => algebra_suites::closed_forms(cfg, &mut run),
        SuiteId::Grading => algebra_suites::grading(cfg, &mut run),
        SuiteId::Lemma21 => fock_suites::lemma_21(cfg, &mut run),
        SuiteId::Lemma22 => fock_suites::lemma_22(cfg, &mut run),
        SuiteId::Lemma23 => fock_suites::lemma_23(cfg, &mut run),
        SuiteId::Props2x => fock_suites::props_2x(cfg, &mut run),
        SuiteId::Theorem21 | SuiteId::Theorem22 => fock_suites::homomorphism(cfg, &mut run),
    }?;
    run.report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(run.report)
}

/// The representation check on its own: `cfg.suite` is replaced by the
/// theorem suite matching `cfg.series`.
pub fn check_homomorphism(cfg: &SuiteConfig) -> Result<Report> {
    let suite = if cfg.series.is_b() { SuiteId::Theorem22 } else { SuiteId::Theorem21 };
    run_suite(&SuiteConfig { suite, ..cfg.clone() })
}

/// Text rendering of [`crate::bcgraded::Algebra::structure_table`] rows,
/// one `[a, b] = ...` line each.
pub fn render_table<T: Int>(rows: &[(Label, Label, Combination<T>)]) -> String {
    let mut out = String::new();
    for (a, b, c) in rows {
        out.push_str(&format!("[{a}, {b}] = {c}\n"));
    }
    out
}

pub fn table_json<T: Int>(rows: &[(Label, Label, Combination<T>)]) -> serde_json::Value {
    serde_json::Value::Array(
        rows.iter()
            .map(|(a, b, c)| serde_json::json!({ "a": a.to_string(), "b": b.to_string(), "bracket": c.to_json() }))
            .collect(),
    )
}

#[cfg(test)]
mod tests;
