//! Command-line argument values: documents, points, lines, exponent vectors.

use std::fs;

use chowform_core::exact::num::parse_rat;
use chowform_core::fixtures;
use chowform_core::{Error, ExactRat, Line, ProblemDocument, Result};

/// A document path, or one of the built-in fixture names.
pub fn load_document(arg: &str) -> Result<ProblemDocument> {
    if let Some(json) = fixtures::json_by_name(arg) {
        return ProblemDocument::from_json(json);
    }
    let text = fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))?;
    ProblemDocument::from_json(&text)
}

/// `1,-2,3/4`.
pub fn parse_vector(s: &str) -> Result<Vec<ExactRat>> {
    s.split(',').map(|x| parse_rat(x.trim())).collect()
}

/// Two comma-separated rows joined by `;`, e.g. `1,0,2;0,1,1`.
pub fn parse_line(s: &str) -> Result<Line> {
    let rows: Vec<&str> = s.split(';').collect();
    let [a, b] = rows.as_slice() else {
        return Err(Error::Parse(format!("a line needs exactly two rows separated by ';': {s:?}")));
    };
    Line::new(parse_vector(a)?, parse_vector(b)?)
}

pub fn parse_exponents(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent {x:?}")))
        })
        .collect()
}
