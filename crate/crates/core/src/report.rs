//! Solver options, hypothesis audits and solve reports.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::connectivity::kappa_capped;
use crate::digraph::{Digraph, Vertex};
use crate::oracle::Violation;
use crate::paths::PathSystem;

/// How much effort the connectivity audit spends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum KappaMode {
    /// Compute `κ(D)` exactly.
    Exact,
    /// Compute `min(κ(D), required)`; enough to decide the hypothesis.
    #[default]
    Capped,
    /// Do not compute `κ` at all.
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Refuse to run when a solver hypothesis fails.
    /// Audited values are recorded either way.
    pub enforce_hypotheses: bool,
    pub kappa: KappaMode,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { enforce_hypotheses: true, kappa: KappaMode::Capped }
    }
}

impl SolveOptions {
    pub fn relaxed() -> Self {
        SolveOptions { enforce_hypotheses: false, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", content = "value", rename_all = "snake_case"))]
pub enum KappaAudit {
    Exact(usize),
    /// The computation stopped once `κ` reached this value.
    AtLeast(usize),
    Skipped,
}

impl KappaAudit {
    pub fn measure(d: &Digraph, required: usize, mode: KappaMode) -> Self {
        match mode {
            KappaMode::Skip => KappaAudit::Skipped,
            KappaMode::Exact => KappaAudit::Exact(crate::connectivity::kappa(d)),
            KappaMode::Capped => {
                let v = kappa_capped(d, required);
                if v >= required {
                    KappaAudit::AtLeast(v)
                } else {
                    KappaAudit::Exact(v)
                }
            }
        }
    }

    /// `Some(true)` if `κ ≥ required` is certain, `None` if not computed.
    pub fn at_least(&self, required: usize) -> Option<bool> {
        match *self {
            KappaAudit::Exact(v) => Some(v >= required),
            KappaAudit::AtLeast(v) if v >= required => Some(true),
            KappaAudit::AtLeast(_) => None,
            KappaAudit::Skipped => None,
        }
    }

    pub fn lower_bound(&self) -> usize {
        match *self {
            KappaAudit::Exact(v) | KappaAudit::AtLeast(v) => v,
            KappaAudit::Skipped => 0,
        }
    }
}

impl fmt::Display for KappaAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KappaAudit::Exact(v) => write!(f, "{v}"),
            KappaAudit::AtLeast(v) => write!(f, ">= {v}"),
            KappaAudit::Skipped => f.write_str("skipped"),
        }
    }
}

/// Measured structural facts about an instance, next to what the
/// solver requires of them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Audit {
    pub order: usize,
    pub arcs: usize,
    pub semicomplete: bool,
    pub strong: bool,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub l_quasi_transitive: Option<bool>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub kappa: Option<KappaAudit>,
    pub kappa_required: usize,
    pub min_out_degree: usize,
    pub min_out_degree_required: usize,
    /// Smallest `|V(D) \ S_i|` over the parts of a composition.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub min_part_cosize: Option<usize>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub part_cosize_required: Option<usize>,
    pub enforced: bool,
}

impl Audit {
    pub(crate) fn basic(d: &Digraph, enforced: bool) -> Self {
        Audit {
            order: d.vertex_count(),
            arcs: d.arc_count(),
            semicomplete: d.is_semicomplete(),
            strong: d.is_strong(),
            min_out_degree: d.min_out_degree().unwrap_or(0),
            enforced,
            ..Audit::default()
        }
    }
}

/// A solver hypothesis that the instance does not meet.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "hypothesis", rename_all = "snake_case"))]
pub enum Hypothesis {
    NotSemicomplete { u: Vertex, v: Vertex },
    NotStrong,
    NotLQuasiTransitive { l: usize, u: Vertex, v: Vertex },
    KappaBelow { required: usize, found: KappaAudit },
    MinOutDegreeBelow { required: usize, found: usize },
    PartCoSize { part: usize, cosize: usize, required: usize, depth: usize },
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::NotSemicomplete { u, v } => write!(f, "not semicomplete ({u}, {v} non-adjacent)"),
            Hypothesis::NotStrong => f.write_str("not strong"),
            Hypothesis::NotLQuasiTransitive { l, u, v } => {
                write!(f, "not {l}-quasi-transitive ({u}, {v} joined by a {l}-path but non-adjacent)")
            }
            Hypothesis::KappaBelow { required, found } => write!(f, "κ < {required} (κ = {found})"),
            Hypothesis::MinOutDegreeBelow { required, found } => write!(f, "δ⁺ < {required} (δ⁺ = {found})"),
            Hypothesis::PartCoSize { part, cosize, required, depth } => {
                write!(f, "part {part} has co-size {cosize} < {required} at depth {depth}")
            }
        }
    }
}

/// Pipeline stages, named after what they compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Stage {
    Input,
    DominatingSet,
    PartitionTerminals,
    MinVertexMenger,
    TwoPaths,
    AnchorUnmatched,
    AnchorMatched,
    TwoPartShortcut,
    Reduction,
    Minimalize,
    Auxiliary,
    AnchorPair,
    LinkToAnchor,
    ReserveInside,
    RouteToTargets,
    AnchorLinks,
    Verify,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Input => "input",
            Stage::DominatingSet => "dominating-set",
            Stage::PartitionTerminals => "partition-terminals",
            Stage::MinVertexMenger => "min-vertex-menger",
            Stage::TwoPaths => "two-paths",
            Stage::AnchorUnmatched => "anchor-unmatched",
            Stage::AnchorMatched => "anchor-matched",
            Stage::TwoPartShortcut => "two-part-shortcut",
            Stage::Reduction => "reduction",
            Stage::Minimalize => "minimalize",
            Stage::Auxiliary => "auxiliary",
            Stage::AnchorPair => "anchor-pair",
            Stage::LinkToAnchor => "link-to-anchor",
            Stage::ReserveInside => "reserve-inside",
            Stage::RouteToTargets => "route-to-targets",
            Stage::AnchorLinks => "anchor-links",
            Stage::Verify => "verify",
        };
        f.write_str(s)
    }
}

/// Why a stage gave up.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "reason", rename_all = "snake_case"))]
pub enum Failure {
    /// A stated precondition does not hold for `vertex`.
    Precondition { clause: String, vertex: Option<Vertex> },
    /// A greedy choice ran out of candidates.
    Exhausted { clause: String, vertex: Option<Vertex> },
    /// A runtime assertion of the construction failed.
    Assertion { clause: String, vertex: Option<Vertex> },
    Infeasible { separator: Vec<Vertex>, max_paths: usize },
    NewArcLeak { arc: (Vertex, Vertex) },
    ThresholdUnreachable { pair: (Vertex, Vertex), forward: usize, backward: usize, threshold: usize },
    AvailablePathExhausted { arc: (Vertex, Vertex) },
    NotLQuasiTransitive { l: usize, u: Vertex, v: Vertex },
    NotStrong,
    AnchorNotFound,
    BudgetExceeded { budget: u64 },
    Verification { violation: Violation },
    Error { message: String },
}

impl Failure {
    pub(crate) fn precondition(clause: &str, vertex: Option<Vertex>) -> Self {
        Failure::Precondition { clause: clause.into(), vertex }
    }

    pub(crate) fn exhausted(clause: &str, vertex: Option<Vertex>) -> Self {
        Failure::Exhausted { clause: clause.into(), vertex }
    }

    pub(crate) fn assertion(clause: &str, vertex: Option<Vertex>) -> Self {
        Failure::Assertion { clause: clause.into(), vertex }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Error { message: alloc::format!("{e}") }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "status", rename_all = "snake_case"))]
pub enum Outcome {
    Linked { paths: PathSystem },
    HypothesisViolated { violations: Vec<Hypothesis> },
    StageFailed { stage: Stage, failure: Failure },
}

impl Outcome {
    pub fn is_linked(&self) -> bool {
        matches!(self, Outcome::Linked { .. })
    }

    pub fn paths(&self) -> Option<&PathSystem> {
        match self {
            Outcome::Linked { paths } => Some(paths),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolveReport {
    pub class: String,
    pub k: usize,
    pub outcome: Outcome,
    pub audit: Audit,
    /// Per-run counters (new arcs, runtime checks performed, ...).
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "BTreeMap::is_empty"))]
    pub counters: BTreeMap<String, usize>,
}

impl SolveReport {
    pub(crate) fn new(class: &str, k: usize, audit: Audit, outcome: Outcome) -> Self {
        SolveReport { class: class.into(), k, outcome, audit, counters: BTreeMap::new() }
    }

    pub fn is_linked(&self) -> bool {
        self.outcome.is_linked()
    }
}

/// Shorthand used by the pipelines.
pub(crate) type StageResult<T> = Result<T, (Stage, Failure)>;

pub(crate) trait AtStage<T> {
    fn at(self, stage: Stage) -> StageResult<T>;
}

impl<T, E: Into<Failure>> AtStage<T> for Result<T, E> {
    fn at(self, stage: Stage) -> StageResult<T> {
        self.map_err(|e| (stage, e.into()))
    }
}
