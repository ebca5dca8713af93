//! Batch search over weight systems or simplex files.
//!
//! Candidates are enumerated in a fixed order, evaluated on a worker pool in
//! chunks, and emitted chunk by chunk in enumeration order, so the output is
//! independent of the number of workers.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::criterion::{decide_with, CriterionOptions};
use crate::fwps::{is_well_formed, simplex_from_weights, weights_from_simplex};
use crate::harness::catalog::{CatalogRecord, Timings};
use crate::harness::io::WeightRecord;
use crate::harness::recount::{recount_edge, reverify_with};
use crate::polytope::Simplex3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeMode {
    /// `d = q0 + q1 + q2 + q3`.
    Anticanonical,
    /// Every `d <= D` divisible by all weights.
    DivisorsUpTo(u64),
}

impl std::str::FromStr for DegreeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "anticanonical" {
            return Ok(DegreeMode::Anticanonical);
        }
        match s.strip_prefix("divisors:").map(str::parse::<u64>) {
            Some(Ok(d)) if d >= 1 => Ok(DegreeMode::DivisorsUpTo(d)),
            _ => Err(format!("expected `anticanonical` or `divisors:D` with D >= 1, got {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Weights { q_max: u64, degrees: DegreeMode },
    Simplices(Vec<Simplex3>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub mode: SearchMode,
    pub fine_bound_override: Option<u64>,
    pub parallelism: usize,
    pub timings: bool,
}

/// One unit of work.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Candidate {
    Weights { q: [u64; 4], degree: u64 },
    Simplex { index: usize, simplex: Simplex3 },
}

impl Candidate {
    pub fn id(&self) -> String {
        match self {
            Candidate::Weights { q, degree } => format!("q{}-{}-{}-{}_d{degree}", q[0], q[1], q[2], q[3]),
            Candidate::Simplex { index, .. } => format!("simplex-{}", index + 1),
        }
    }
}

/// Sorted weight vectors with entries in `1..=q_max` and gcd 1, paired with
/// every degree the mode allows, in lexicographic order.
pub fn weight_candidates(q_max: u64, mode: DegreeMode) -> Vec<([u64; 4], u64)> {
    let mut out = Vec::new();
    for a in 1..=q_max {
        for b in a..=q_max {
            for c in b..=q_max {
                for e in c..=q_max {
                    let q = [a, b, c, e];
                    if a.gcd(&b).gcd(&c).gcd(&e) != 1 {
                        continue;
                    }
                    match mode {
                        DegreeMode::Anticanonical => {
                            let d = a + b + c + e;
                            if q.iter().all(|w| d % w == 0) {
                                out.push((q, d));
                            }
                        }
                        DegreeMode::DivisorsUpTo(max_d) => {
                            let l = a.lcm(&b).lcm(&c).lcm(&e);
                            out.extend((1..=max_d / l).map(|k| (q, k * l)));
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn candidates(mode: &SearchMode) -> Vec<Candidate> {
    match mode {
        SearchMode::Weights { q_max, degrees } => weight_candidates(*q_max, *degrees)
            .into_iter()
            .map(|(q, degree)| Candidate::Weights { q, degree })
            .collect(),
        SearchMode::Simplices(list) => {
            list.iter().enumerate().map(|(index, s)| Candidate::Simplex { index, simplex: s.clone() }).collect()
        }
    }
}

/// Runs the criterion on one simplex and fills a catalog record, including
/// the independent recount for positive verdicts.
pub fn evaluate_simplex(
    id: String,
    s: &Simplex3,
    weights: WeightRecord,
    opts: &CriterionOptions,
    timings: bool,
) -> CatalogRecord {
    let t0 = Instant::now();
    let decision = decide_with(s, opts);
    let decide_ms = t0.elapsed().as_millis() as u64;

    let t1 = Instant::now();
    let recount = decision.witness_edge().and_then(|e| recount_edge(s, e));
    let reverified = reverify_with(&decision, recount.as_ref());
    let recount_ms = t1.elapsed().as_millis() as u64;

    let budget = decision.reported_budget();
    CatalogRecord {
        id,
        vertices: s.vertices().to_vec(),
        fan_weights: Some(weights_from_simplex(s).sorted()),
        weights: Some(weights),
        lstar: Some(decision.hypotheses.l_star_delta.clone()),
        fine_dim: Some(decision.hypotheses.fine_dim),
        verdict: decision.verdict.label().to_string(),
        witness_edge: decision.witness_edge(),
        margin: decision.margin(),
        p_g: Some(decision.hypotheses.l_star_delta.clone()),
        vanishing_dim: budget.map(|b| b.vanishing_dim.clone()),
        reverified,
        recount,
        error: None,
        decision: Some(decision),
        timings: timings.then_some(Timings { decide_ms, recount_ms }),
    }
}

pub fn evaluate_candidate(c: &Candidate, opts: &CriterionOptions, timings: bool) -> CatalogRecord {
    match c {
        Candidate::Weights { q, degree } => {
            let qb: Vec<BigInt> = q.iter().map(|&x| BigInt::from(x)).collect();
            match simplex_from_weights(q, *degree) {
                Ok(s) => {
                    let fan = weights_from_simplex(&s);
                    let weights = WeightRecord {
                        well_formed: is_well_formed(&qb),
                        weights: qb,
                        degree: Some(*degree),
                        multiplicity: fan.multiplicity,
                    };
                    evaluate_simplex(c.id(), &s, weights, opts, timings)
                }
                Err(e) => CatalogRecord::failed(c.id(), None, e.to_string()),
            }
        }
        Candidate::Simplex { simplex, .. } => {
            let weights = WeightRecord::new(&weights_from_simplex(simplex), None);
            evaluate_simplex(c.id(), simplex, weights, opts, timings)
        }
    }
}

const CHUNK: usize = 64;

/// Evaluates every candidate and hands the records to `emit` in
/// enumeration order. Stops at the first error returned by `emit`.
pub fn run_search<E>(
    spec: &SearchSpec,
    mut emit: impl FnMut(&CatalogRecord) -> Result<(), E>,
) -> Result<SearchSummary, E> {
    let opts = CriterionOptions { fine_bound: spec.fine_bound_override };
    let all = candidates(&spec.mode);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(spec.parallelism.max(1)).build().expect("thread pool");
    let mut summary = SearchSummary::default();
    for chunk in all.chunks(CHUNK) {
        let records: Vec<CatalogRecord> =
            pool.install(|| chunk.par_iter().map(|c| evaluate_candidate(c, &opts, spec.timings)).collect());
        for r in &records {
            summary.add(r);
            emit(r)?;
        }
    }
    Ok(summary)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchSummary {
    pub total: usize,
    pub by_verdict: BTreeMap<String, usize>,
}

impl SearchSummary {
    fn add(&mut self, r: &CatalogRecord) {
        self.total += 1;
        *self.by_verdict.entry(r.verdict.clone()).or_default() += 1;
    }

    pub fn line(&self) -> String {
        let get = |k: &str| self.by_verdict.get(k).copied().unwrap_or(0);
        format!(
            "searched {} candidates: picard_greater_one {}, inconclusive {}, hypothesis_failed {}, error {}",
            self.total,
            get("picard_greater_one"),
            get("inconclusive"),
            get("hypothesis_failed"),
            get("error")
        )
    }
}
