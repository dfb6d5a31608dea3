//! JSON problem documents: a lattice, a quiver, and optional ε-data, points,
//! lines and candidate factors.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::choworbit::ProblemInstance;
use crate::compat::EpsilonAssignment;
use crate::error::{Error, Result};
use crate::exact::num::{parse_rat, ExactRat};
use crate::exact::Poly;
use crate::grassmann::Line;
use crate::lattice::{Lattice, Weight};
use crate::quiver::{Edge, Quiver};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub rows: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: u32,
    pub s: usize,
    pub t: usize,
    pub black: u32,
    pub white: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub nodes: usize,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsilonSpec {
    pub black: BTreeMap<String, Vec<i64>>,
    pub white: BTreeMap<String, Vec<i64>>,
}

/// An integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatValue {
    Int(i64),
    Str(String),
}

impl RatValue {
    pub fn value(&self) -> Result<ExactRat> {
        match self {
            RatValue::Int(i) => Ok(ExactRat::from_integer((*i).into())),
            RatValue::Str(s) => parse_rat(s),
        }
    }
}

impl fmt::Display for RatValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatValue::Int(i) => write!(f, "{i}"),
            RatValue::Str(s) => f.write_str(s),
        }
    }
}

pub fn rat_vector(values: &[RatValue]) -> Result<Vec<ExactRat>> {
    values.iter().map(RatValue::value).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemDocument {
    #[serde(default)]
    pub name: String,
    pub lattice: LatticeSpec,
    pub quiver: QuiverSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilons: Option<EpsilonSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<RatValue>>,
    /// Each line is given by its two spanning rows.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lines: Vec<[Vec<RatValue>; 2]>,
    /// Candidate factors of the principal A-determinant, in canonical text.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<String>,
}

fn parse_cell_map(map: &BTreeMap<String, Vec<i64>>) -> Result<BTreeMap<u32, Weight>> {
    map.iter()
        .map(|(k, v)| {
            let id = k
                .trim_start_matches(['b', 'w'])
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad cell id {k:?}")))?;
            Ok((id, Weight::from_ints(v)))
        })
        .collect()
}

impl ProblemDocument {
    pub fn from_json(text: &str) -> Result<ProblemDocument> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::from_rows(&self.lattice.rows)
    }

    pub fn quiver(&self) -> Result<Quiver> {
        let edges = self
            .quiver
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id,
                s: e.s,
                t: e.t,
                black: e.black,
                white: e.white,
            })
            .collect();
        Quiver::new(self.quiver.nodes, edges)
    }

    pub fn epsilons(&self) -> Result<Option<EpsilonAssignment>> {
        self.epsilons
            .as_ref()
            .map(|e| Ok(EpsilonAssignment::new(parse_cell_map(&e.black)?, parse_cell_map(&e.white)?)))
            .transpose()
    }

    pub fn points(&self) -> Result<Vec<Vec<ExactRat>>> {
        self.points.iter().map(|p| rat_vector(p)).collect()
    }

    pub fn lines(&self) -> Result<Vec<Line>> {
        self.lines
            .iter()
            .map(|[a, b]| Line::new(rat_vector(a)?, rat_vector(b)?))
            .collect()
    }

    pub fn factors(&self) -> Result<Vec<Poly>> {
        self.factors.iter().map(|f| f.parse()).collect()
    }

    /// Builds and validates the instance, using the document's ε-data when
    /// present.
    pub fn instance(&self) -> Result<ProblemInstance> {
        ProblemInstance::new(self.lattice()?, self.quiver()?, self.epsilons()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"name":"t","lattice":{"rows":[[1,-1,0],[0,1,-1]]},
            "quiver":{"nodes":3,"edges":[{"id":1,"s":1,"t":2,"black":1,"white":1}]},
            "points":[[1,"1/2",3]]}"#;
        let doc = ProblemDocument::from_json(text).unwrap();
        assert_eq!(doc.points().unwrap()[0][1], crate::exact::num::ratio(1, 2));
        let again = ProblemDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn bad_json_is_parse_error() {
        assert!(matches!(ProblemDocument::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn cell_ids_accept_prefix() {
        let mut m = BTreeMap::new();
        m.insert("b2".to_string(), vec![0, 1]);
        m.insert("3".to_string(), vec![1, 0]);
        let parsed = parse_cell_map(&m).unwrap();
        assert_eq!(parsed.keys().copied().collect::<Vec<_>>(), vec![2, 3]);
    }
}
