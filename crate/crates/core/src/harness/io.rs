//! Text formats shared by the CLI and the search: simplex records,
//! subdivision records and weight-system records.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fwps::WeightSystem;
use crate::harness::serde_bigint;
use crate::lattice::LatticeVector;
use crate::polytope::{GeneralSimplex, Simplex3};
use crate::subdivision::EdgeSubdivision;

/// `{"vertices": [[x,y,z], [x,y,z], [x,y,z], [x,y,z]]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexRecord {
    pub vertices: [[i64; 3]; 4],
}

impl SimplexRecord {
    pub fn from_simplex(s: &Simplex3) -> Option<Self> {
        let mut vertices = [[0i64; 3]; 4];
        for (out, v) in vertices.iter_mut().zip(s.vertices()) {
            *out = v.to_i64()?;
        }
        Some(SimplexRecord { vertices })
    }
}

/// A parse or validation failure, located in the input text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for InputError {}

fn position(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn parse_records<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<(T, usize)>, InputError> {
    let mut stream = serde_json::Deserializer::from_str(text).into_iter::<T>();
    let mut out = Vec::new();
    loop {
        let start = stream.byte_offset();
        match stream.next() {
            None => break,
            Some(Ok(r)) => {
                // Skip leading whitespace so the position points at the record.
                let skip = text[start..].len() - text[start..].trim_start().len();
                out.push((r, start + skip));
            }
            Some(Err(e)) => {
                return Err(InputError { line: e.line(), column: e.column(), message: e.to_string() });
            }
        }
    }
    Ok(out)
}

/// Parses one or more whitespace-separated simplex records.
pub fn parse_simplices(text: &str) -> Result<Vec<Simplex3>, InputError> {
    let records = parse_records::<SimplexRecord>(text)?;
    if records.is_empty() {
        return Err(InputError { line: 1, column: 1, message: "no simplex record found".to_string() });
    }
    records
        .into_iter()
        .map(|(r, offset)| {
            Simplex3::from_i64(r.vertices).map_err(|e| {
                let (line, column) = position(text, offset);
                InputError { line, column, message: e.to_string() }
            })
        })
        .collect()
}

/// Parses exactly one simplex record.
pub fn parse_simplex(text: &str) -> Result<Simplex3, InputError> {
    let mut all = parse_simplices(text)?;
    if all.len() > 1 {
        return Err(InputError { line: 1, column: 1, message: format!("expected one simplex, found {}", all.len()) });
    }
    Ok(all.remove(0))
}

/// `{"edge": [i, j], "pieces": [[[x,y,z] x 4], ...], "cuts": [[[x,y,z] x 3], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubdivisionRecord {
    pub edge: [usize; 2],
    pub pieces: Vec<Vec<[i64; 3]>>,
    pub cuts: Vec<Vec<[i64; 3]>>,
}

impl SubdivisionRecord {
    pub fn from_subdivision(sub: &EdgeSubdivision) -> Option<Self> {
        let conv = |s: &GeneralSimplex| s.vertices().iter().map(LatticeVector::to_i64).collect::<Option<Vec<_>>>();
        Some(SubdivisionRecord {
            edge: [sub.orientation.0, sub.orientation.1],
            pieces: sub.pieces.iter().map(conv).collect::<Option<_>>()?,
            cuts: sub.cuts.iter().map(conv).collect::<Option<_>>()?,
        })
    }

    pub fn into_subdivision(self, parent: &Simplex3) -> Result<EdgeSubdivision, Error> {
        let build = |v: Vec<[i64; 3]>| GeneralSimplex::from_i64(&v);
        let pieces = self.pieces.into_iter().map(build).collect::<Result<Vec<_>, _>>()?;
        let cuts = self.cuts.into_iter().map(build).collect::<Result<Vec<_>, _>>()?;
        EdgeSubdivision::custom(parent, (self.edge[0], self.edge[1]), pieces, cuts)
    }
}

pub fn parse_subdivision(text: &str) -> Result<SubdivisionRecord, InputError> {
    let mut all = parse_records::<SubdivisionRecord>(text)?;
    match all.len() {
        1 => Ok(all.remove(0).0),
        n => Err(InputError { line: 1, column: 1, message: format!("expected one subdivision record, found {n}") }),
    }
}

/// `{"weights": [q0..q3], "degree": d, "multiplicity": m, "well_formed": b}`
/// with weights ascending. `degree` is absent for simplices not built from
/// a weight system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRecord {
    #[serde(with = "serde_bigint::vec")]
    pub weights: Vec<BigInt>,
    pub degree: Option<u64>,
    #[serde(with = "serde_bigint")]
    pub multiplicity: BigInt,
    pub well_formed: bool,
}

impl WeightRecord {
    pub fn new(w: &WeightSystem, degree: Option<u64>) -> Self {
        WeightRecord { weights: w.sorted(), degree, multiplicity: w.multiplicity.clone(), well_formed: w.well_formed }
    }
}
