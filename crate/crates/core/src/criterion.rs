//! The edge criterion: hypotheses on `Δ`, the genus bookkeeping of an edge
//! degeneration and the resulting verdict.
//!
//! For a subdivision along `e` the geometric genus splits as
//! `p_g = Σ l*(Δ_i) + Σ l*(Δ_{i,i+1})`, the double curves contribute
//! `2 Σ l*(Δ_{i,i+1})` vanishing classes, and `Σ l*(Δ_{i,i+1}) > Σ l*(Δ_i)`
//! forces a rational (1,1)-class off the canonical line, i.e. `ρ > 1`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fine_interior::{default_bound, dim_certificate, fine_interior_reduced, DimCertificate};
use crate::harness::serde_bigint;
use crate::polytope::{Simplex3, EDGE_PAIRS};
use crate::subdivision::{identity_check, subdivide_along_oriented_edge, validate_admissibility, EdgeSubdivision};

/// Recorded on every positive verdict: genericity of `f` is not checked.
pub const NONDEGENERACY_ASSUMPTION: &str =
    "f is assumed sufficiently nondegenerate for the subdivision; this is not machine-checked";

/// Attached to inconclusive verdicts.
pub const ONE_DIRECTIONAL_NOTE: &str =
    "criterion not satisfied; it is one-directional, so this does not show that the Picard number is 1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CriterionOptions {
    /// Max-norm bound for Fine-interior normals in the reduced frame; the
    /// default bound when `None`.
    pub fine_bound: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeLStar {
    pub edge: (usize, usize),
    #[serde(with = "serde_bigint")]
    pub l_star: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    #[serde(with = "serde_bigint")]
    pub l_star_delta: BigInt,
    pub fine_dim: DimCertificate,
    pub fine_bound: u64,
    pub fine_stable: Option<bool>,
    pub edges_with_interior: Vec<EdgeLStar>,
    pub all_hold: bool,
    pub reasons: Vec<String>,
}

pub fn check_hypotheses(s: &Simplex3) -> HypothesisReport {
    check_hypotheses_with(s, &CriterionOptions::default())
}

pub fn check_hypotheses_with(s: &Simplex3, opts: &CriterionOptions) -> HypothesisReport {
    let l_star_delta = s.l_star();
    let bound = opts.fine_bound.unwrap_or_else(|| default_bound(s));
    let fine = fine_interior_reduced(s, bound);
    let fine_dim = dim_certificate(&fine);
    let edges_with_interior: Vec<EdgeLStar> = s
        .edges()
        .iter()
        .map(|e| EdgeLStar { edge: e.edge_pair().expect("edge"), l_star: e.l_star() })
        .filter(|e| !e.l_star.is_zero())
        .collect();

    let mut reasons = Vec::new();
    if l_star_delta.is_zero() {
        reasons.push("l*(Δ) = 0: no interior lattice points".to_string());
    }
    match fine_dim {
        DimCertificate::Certified { dim } if dim == 2 || dim == 3 => {}
        DimCertificate::Certified { dim } => reasons.push(format!("dim F(Δ) = {dim} ∉ {{2,3}}")),
        DimCertificate::Uncertain { low, high } => reasons.push(format!(
            "fine interior dimension not certified (between {low} and {high} at bound {bound}); retry with a larger --fine-bound"
        )),
    }
    if edges_with_interior.is_empty() {
        reasons.push("no edge with interior lattice points".to_string());
    }
    HypothesisReport {
        l_star_delta,
        fine_dim,
        fine_bound: bound,
        fine_stable: fine.stable,
        edges_with_interior,
        all_hold: reasons.is_empty(),
        reasons,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityOutcome {
    pub holds: bool,
    #[serde(with = "serde_bigint")]
    pub margin: BigInt,
}

/// `Σ cuts > Σ pieces`, with margin `Σ cuts - Σ pieces`.
pub fn evaluate_inequality(piece_lstars: &[BigInt], cut_lstars: &[BigInt]) -> InequalityOutcome {
    let margin = cut_lstars.iter().sum::<BigInt>() - piece_lstars.iter().sum::<BigInt>();
    InequalityOutcome { holds: margin > BigInt::zero(), margin }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeBudget {
    #[serde(with = "serde_bigint")]
    pub p_g: BigInt,
    #[serde(with = "serde_bigint::vec")]
    pub piece_pg: Vec<BigInt>,
    #[serde(with = "serde_bigint::vec")]
    pub cut_genera: Vec<BigInt>,
    #[serde(with = "serde_bigint")]
    pub vanishing_dim: BigInt,
    #[serde(with = "serde_bigint")]
    pub margin: BigInt,
}

/// Geometric genera of the pieces, genera of the double curves and the
/// number of vanishing classes. Fails when the subdivision breaks the
/// interior-point identity.
pub fn hodge_budget(sub: &EdgeSubdivision) -> Result<HodgeBudget> {
    let id = identity_check(sub);
    if !id.holds {
        return Err(Error::IdentityViolated {
            lhs: id.lhs.to_string(),
            rhs: (&id.pieces_sum + &id.cuts_sum).to_string(),
        });
    }
    let margin = evaluate_inequality(&id.piece_lstars, &id.cut_lstars).margin;
    Ok(HodgeBudget {
        p_g: id.lhs,
        vanishing_dim: &id.cuts_sum * 2,
        piece_pg: id.piece_lstars,
        cut_genera: id.cut_lstars,
        margin,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EdgeOutcome {
    /// The edge has no interior lattice points.
    Primitive,
    Evaluated {
        budget: HodgeBudget,
        admissible: bool,
        satisfies_inequality: bool,
    },
    Invalid {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeEvaluation {
    pub edge: (usize, usize),
    #[serde(with = "serde_bigint")]
    pub l_star: BigInt,
    pub outcome: EdgeOutcome,
}

impl EdgeEvaluation {
    pub fn margin(&self) -> Option<&BigInt> {
        match &self.outcome {
            EdgeOutcome::Evaluated { budget, .. } => Some(&budget.margin),
            _ => None,
        }
    }

    /// Valid subdivision with a positive margin.
    pub fn is_witness(&self) -> bool {
        matches!(&self.outcome, EdgeOutcome::Evaluated { admissible: true, satisfies_inequality: true, .. })
    }
}

/// Validates a subdivision and computes its budget.
pub fn evaluate_subdivision(sub: &EdgeSubdivision) -> EdgeEvaluation {
    let edge = sub.edge_pair();
    let l_star = sub.edge.l_star();
    let outcome = if !sub.covers_parent() {
        EdgeOutcome::Invalid { reason: "pieces do not cover the parent".to_string() }
    } else {
        match hodge_budget(sub) {
            Err(e) => EdgeOutcome::Invalid { reason: e.to_string() },
            Ok(budget) => {
                let admissible = validate_admissibility(sub).is_ok();
                let satisfies_inequality = budget.margin > BigInt::zero();
                EdgeOutcome::Evaluated { budget, admissible, satisfies_inequality }
            }
        }
    };
    EdgeEvaluation { edge, l_star, outcome }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CriterionVerdict {
    PicardGreaterOne {
        witness_edge: (usize, usize),
        budget: HodgeBudget,
        assumption: String,
    },
    Inconclusive {
        #[serde(with = "serde_bigint::option")]
        best_margin: Option<BigInt>,
        note: String,
    },
    HypothesisFailed {
        reasons: Vec<String>,
    },
}

impl CriterionVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            CriterionVerdict::PicardGreaterOne { .. } => "picard_greater_one",
            CriterionVerdict::Inconclusive { .. } => "inconclusive",
            CriterionVerdict::HypothesisFailed { .. } => "hypothesis_failed",
        }
    }

    pub fn is_positive(&self) -> bool {
        matches!(self, CriterionVerdict::PicardGreaterOne { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub hypotheses: HypothesisReport,
    pub verdict: CriterionVerdict,
    pub per_edge: Vec<EdgeEvaluation>,
}

impl Decision {
    /// The budget behind the verdict: the witness for a positive verdict,
    /// otherwise the best-margin valid edge.
    pub fn reported_budget(&self) -> Option<&HodgeBudget> {
        if let CriterionVerdict::PicardGreaterOne { budget, .. } = &self.verdict {
            return Some(budget);
        }
        best_evaluated(&self.per_edge).and_then(|e| match &e.outcome {
            EdgeOutcome::Evaluated { budget, .. } => Some(budget),
            _ => None,
        })
    }

    pub fn witness_edge(&self) -> Option<(usize, usize)> {
        match &self.verdict {
            CriterionVerdict::PicardGreaterOne { witness_edge, .. } => Some(*witness_edge),
            _ => None,
        }
    }

    pub fn margin(&self) -> Option<BigInt> {
        self.reported_budget().map(|b| b.margin.clone())
    }
}

/// First edge (in vertex-pair order) attaining the largest margin among
/// evaluated, admissible edges.
fn best_evaluated(per_edge: &[EdgeEvaluation]) -> Option<&EdgeEvaluation> {
    let mut best: Option<&EdgeEvaluation> = None;
    for e in per_edge {
        let EdgeOutcome::Evaluated { admissible: true, budget, .. } = &e.outcome else { continue };
        if best.and_then(EdgeEvaluation::margin).is_none_or(|m| budget.margin > *m) {
            best = Some(e);
        }
    }
    best
}

pub fn decide(s: &Simplex3) -> Decision {
    decide_with(s, &CriterionOptions::default())
}

pub fn decide_with(s: &Simplex3, opts: &CriterionOptions) -> Decision {
    let hypotheses = check_hypotheses_with(s, opts);
    if !hypotheses.all_hold {
        return Decision {
            verdict: CriterionVerdict::HypothesisFailed { reasons: hypotheses.reasons.clone() },
            hypotheses,
            per_edge: Vec::new(),
        };
    }
    let per_edge: Vec<EdgeEvaluation> = EDGE_PAIRS
        .iter()
        .map(|&(i, j)| match subdivide_along_oriented_edge(s, i, j) {
            Ok(sub) => evaluate_subdivision(&sub),
            Err(Error::EdgeWithoutInteriorPoints) => {
                EdgeEvaluation { edge: (i, j), l_star: BigInt::zero(), outcome: EdgeOutcome::Primitive }
            }
            Err(e) => EdgeEvaluation {
                edge: (i, j),
                l_star: s.face(&[i, j]).map(|f| f.l_star()).unwrap_or_default(),
                outcome: EdgeOutcome::Invalid { reason: e.to_string() },
            },
        })
        .collect();

    let best = best_evaluated(&per_edge);
    let verdict = match best {
        Some(e) if e.is_witness() => {
            let EdgeOutcome::Evaluated { budget, .. } = &e.outcome else { unreachable!() };
            CriterionVerdict::PicardGreaterOne {
                witness_edge: e.edge,
                budget: budget.clone(),
                assumption: NONDEGENERACY_ASSUMPTION.to_string(),
            }
        }
        _ => CriterionVerdict::Inconclusive {
            best_margin: best.and_then(EdgeEvaluation::margin).cloned(),
            note: ONE_DIRECTIONAL_NOTE.to_string(),
        },
    };
    Decision { hypotheses, verdict, per_edge }
}
