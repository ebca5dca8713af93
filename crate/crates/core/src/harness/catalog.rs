//! Catalog records (one JSON object per line), the CSV summary and the
//! aggregate report over a catalog file.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::criterion::Decision;
use crate::fine_interior::DimCertificate;
use crate::harness::io::WeightRecord;
use crate::harness::recount::Recount;
use crate::harness::serde_bigint;
use crate::lattice::LatticeVector;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub decide_ms: u64,
    pub recount_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogRecord {
    pub id: String,
    #[serde(with = "serde_bigint::points")]
    pub vertices: Vec<LatticeVector>,
    pub weights: Option<WeightRecord>,
    /// Sorted weights read off the normal fan of the simplex itself.
    #[serde(with = "serde_bigint::option_vec")]
    pub fan_weights: Option<Vec<BigInt>>,
    #[serde(with = "serde_bigint::option")]
    pub lstar: Option<BigInt>,
    pub fine_dim: Option<DimCertificate>,
    pub verdict: String,
    pub witness_edge: Option<(usize, usize)>,
    #[serde(with = "serde_bigint::option")]
    pub margin: Option<BigInt>,
    #[serde(with = "serde_bigint::option")]
    pub p_g: Option<BigInt>,
    #[serde(with = "serde_bigint::option")]
    pub vanishing_dim: Option<BigInt>,
    /// Set on positive verdicts by the independent recount.
    pub reverified: Option<bool>,
    pub recount: Option<Recount>,
    /// Set when the candidate could not be built or evaluated.
    pub error: Option<String>,
    pub decision: Option<Decision>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl CatalogRecord {
    pub fn failed(id: String, weights: Option<WeightRecord>, message: String) -> Self {
        CatalogRecord {
            id,
            vertices: Vec::new(),
            weights,
            fan_weights: None,
            lstar: None,
            fine_dim: None,
            verdict: "error".to_string(),
            witness_edge: None,
            margin: None,
            p_g: None,
            vanishing_dim: None,
            reverified: None,
            recount: None,
            error: Some(message),
            decision: None,
            timings: None,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("catalog records serialize")
    }

    pub fn fine_dim_label(&self) -> String {
        match self.fine_dim {
            Some(DimCertificate::Certified { dim }) => dim.to_string(),
            Some(DimCertificate::Uncertain { low, high }) => format!("{low}..{high}"),
            None => String::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let opt = |v: &Option<BigInt>| v.as_ref().map_or("-".to_string(), |x| x.to_string());
        let mut s = format!("{}: {}", self.id, self.verdict);
        if let Some(w) = &self.weights {
            let ws: Vec<String> = w.weights.iter().map(|x| x.to_string()).collect();
            let _ = write!(s, " weights ({}) multiplicity {}", ws.join(","), w.multiplicity);
            if let Some(d) = w.degree {
                let _ = write!(s, " degree {d}");
            }
        }
        let _ = write!(
            s,
            " l* {} fine_dim {} margin {} vanishing_dim {}",
            opt(&self.lstar),
            self.fine_dim_label(),
            opt(&self.margin),
            opt(&self.vanishing_dim)
        );
        if let Some((i, j)) = self.witness_edge {
            let _ = write!(s, " witness ({i},{j})");
        }
        if let Some(r) = self.reverified {
            let _ = write!(s, " reverified {r}");
        }
        if let Some(e) = &self.error {
            let _ = write!(s, " error {e:?}");
        }
        s
    }
}

pub const CSV_HEADER: &str = "id,q0,q1,q2,q3,degree,multiplicity,lstar,fine_dim,verdict,margin,p_g,vanishing_dim";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(r: &CatalogRecord) -> String {
    let opt = |v: &Option<BigInt>| v.as_ref().map_or(String::new(), |x| x.to_string());
    let mut fields = vec![csv_field(&r.id)];
    match &r.weights {
        Some(w) => {
            fields.extend(w.weights.iter().map(|x| x.to_string()));
            fields.push(w.degree.map_or(String::new(), |d| d.to_string()));
            fields.push(w.multiplicity.to_string());
        }
        None => fields.extend(std::iter::repeat_n(String::new(), 6)),
    }
    fields.push(opt(&r.lstar));
    fields.push(r.fine_dim_label());
    fields.push(r.verdict.clone());
    fields.push(opt(&r.margin));
    fields.push(opt(&r.p_g));
    fields.push(opt(&r.vanishing_dim));
    fields.join(",")
}

/// Fields the report needs; everything else in a line is ignored.
#[derive(Debug, Deserialize)]
struct ReportView {
    id: String,
    verdict: String,
    weights: Option<WeightView>,
    #[serde(default, with = "serde_bigint::option")]
    margin: Option<BigInt>,
    reverified: Option<bool>,
}

#[derive(Debug, Deserialize)]
struct WeightView {
    #[serde(with = "serde_bigint")]
    multiplicity: BigInt,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogReport {
    pub records: usize,
    pub by_verdict: BTreeMap<String, usize>,
    pub margins: BTreeMap<BigInt, usize>,
    pub genuine: usize,
    pub fake: usize,
    pub unknown_multiplicity: usize,
    /// Positive records without a successful re-verification.
    pub unverified_positive: Vec<String>,
    /// `(line number, reason)` for lines that could not be read.
    pub corrupt: Vec<(usize, String)>,
}

const VERDICTS: [&str; 4] = ["picard_greater_one", "inconclusive", "hypothesis_failed", "error"];

pub fn summarize(text: &str) -> CatalogReport {
    let mut rep = CatalogReport::default();
    for v in VERDICTS {
        rep.by_verdict.insert(v.to_string(), 0);
    }
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let view: ReportView = match serde_json::from_str(line) {
            Ok(v) => v,
            Err(e) => {
                rep.corrupt.push((n + 1, e.to_string()));
                continue;
            }
        };
        if !VERDICTS.contains(&view.verdict.as_str()) {
            rep.corrupt.push((n + 1, format!("unknown verdict {:?}", view.verdict)));
            continue;
        }
        rep.records += 1;
        *rep.by_verdict.entry(view.verdict.clone()).or_default() += 1;
        if let Some(m) = view.margin {
            *rep.margins.entry(m).or_default() += 1;
        }
        match view.weights {
            Some(w) if w.multiplicity.is_one() => rep.genuine += 1,
            Some(_) => rep.fake += 1,
            None => rep.unknown_multiplicity += 1,
        }
        if view.verdict == "picard_greater_one" && view.reverified != Some(true) {
            rep.unverified_positive.push(view.id);
        }
    }
    rep
}

impl CatalogReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "records: {}", self.records);
        let _ = writeln!(s, "verdicts:");
        for (v, n) in &self.by_verdict {
            let _ = writeln!(s, "  {v:<20} {n}");
        }
        let _ = writeln!(s, "margins:");
        for (m, n) in &self.margins {
            let _ = writeln!(s, "  {m:>6} {n}");
        }
        let _ = writeln!(
            s,
            "multiplicity: genuine {} fake {} unknown {}",
            self.genuine, self.fake, self.unknown_multiplicity
        );
        for id in &self.unverified_positive {
            let _ = writeln!(s, "WARNING: positive record {id} lacks re-verification");
        }
        let _ = writeln!(s, "skipped corrupt lines: {}", self.corrupt.len());
        for (line, reason) in &self.corrupt {
            let _ = writeln!(s, "  line {line}: {reason}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_catalog() {
        let rep = summarize("");
        assert_eq!(rep.records, 0);
        assert!(rep.by_verdict.values().all(|&n| n == 0));
        assert!(rep.corrupt.is_empty());
    }

    #[test]
    fn corrupt_lines_are_skipped() {
        let text = "{\"id\":\"a\",\"verdict\":\"inconclusive\",\"weights\":null,\"margin\":-4,\"reverified\":null}\nnot json\n";
        let rep = summarize(text);
        assert_eq!(rep.records, 1);
        assert_eq!(rep.corrupt.len(), 1);
        assert_eq!(rep.corrupt[0].0, 2);
        assert_eq!(rep.margins.get(&BigInt::from(-4)), Some(&1));
    }

    #[test]
    fn unverified_positive_is_flagged() {
        let text = "{\"id\":\"p\",\"verdict\":\"picard_greater_one\",\"weights\":{\"multiplicity\":4},\"margin\":3,\"reverified\":null}";
        let rep = summarize(text);
        assert_eq!(rep.unverified_positive, vec!["p".to_string()]);
        assert_eq!(rep.fake, 1);
    }

    #[test]
    fn csv_quotes_awkward_ids() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(CSV_HEADER.split(',').count(), 13);
    }
}
