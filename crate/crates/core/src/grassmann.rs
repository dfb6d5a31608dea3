//! Plücker coordinates of lines in `P^{N-1}`.
//!
//! Elements of the Plücker coordinate ring `R_{2,N}` are represented by
//! their images in the polynomial ring on the matrix entries `y_{r,j}` under
//! `Y_{km} ↦ y_{1k} y_{2m} − y_{2k} y_{1m}`. That map is injective on
//! `R_{2,N}`, so equality of representatives decides equality in the ring
//! without straightening or Gröbner bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::num::{int_to_rat, ExactRat};
use crate::exact::{Poly, VarId};
use crate::lattice::Lattice;
use crate::quiver::Quiver;

/// An element of `R_{2,N}` (optionally with `u` coefficients), as its
/// minor-substituted representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PlueckerElement(pub Poly);

impl PlueckerElement {
    pub fn poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    /// Degree in the Plücker grading: half the `y`-degree, if homogeneous.
    pub fn pluecker_degree(&self) -> Option<u32> {
        let d = self.0.homogeneous_degree_in(VarId::is_y)?;
        (d % 2 == 0).then_some(d / 2)
    }
}

impl fmt::Display for PlueckerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn y(r: u8, j: usize) -> Poly {
    Poly::var(VarId::Y(r, j as u32))
}

/// `Y_{km} = y_{1k} y_{2m} − y_{2k} y_{1m}` (1-based).
pub fn pluecker_var(k: usize, m: usize) -> PlueckerElement {
    PlueckerElement(&(&y(1, k) * &y(2, m)) - &(&y(2, k) * &y(1, m)))
}

/// `Y_{ij} Y_{km} + Y_{ik} Y_{mj} + Y_{im} Y_{jk}` after substitution.
pub fn pluecker_relation(i: usize, j: usize, k: usize, m: usize) -> Poly {
    let p = |a, b| pluecker_var(a, b).0;
    &(&(&p(i, j) * &p(k, m)) + &(&p(i, k) * &p(m, j))) + &(&p(i, m) * &p(j, k))
}

pub fn pluecker_relation_check(i: usize, j: usize, k: usize, m: usize) -> bool {
    pluecker_relation(i, j, k, m).is_zero()
}

/// The ring homomorphism `z_e ↦ Y_{s(e) t(e)}`; other variables pass through.
pub fn y_substitution(quiver: &Quiver, p: &Poly) -> Result<PlueckerElement> {
    if let Some(id) = p
        .variables()
        .into_iter()
        .find_map(|v| match v {
            VarId::Z(id) if quiver.edge(id).is_none() => Some(id),
            _ => None,
        })
    {
        return Err(Error::UnknownEdge(id));
    }
    Ok(PlueckerElement(p.substitute_with(|v| match v {
        VarId::Z(id) => quiver.edge(id).map(|e| pluecker_var(e.s, e.t).0),
        _ => None,
    })))
}

/// `z_e ↦ b_{1s(e)} b_{2t(e)} − b_{1t(e)} b_{2s(e)}`.
pub fn bst_hom(lattice: &Lattice, quiver: &Quiver, p: &Poly) -> Result<Poly> {
    let mut unknown = None;
    let out = p.substitute_with(|v| match v {
        VarId::Z(id) => match quiver.edge(id) {
            Some(e) => Some(Poly::constant(int_to_rat(&lattice.det_cols(e.s, e.t)))),
            None => {
                unknown = Some(id);
                None
            }
        },
        _ => None,
    });
    match unknown {
        Some(id) => Err(Error::UnknownEdge(id)),
        None => Ok(out),
    }
}

/// A line `{t_1 y_1 + t_2 y_2}` in `P^{N-1}`, stored as a rank-2 `2×N`
/// matrix representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    rows: [Vec<ExactRat>; 2],
}

fn minor(a: &[ExactRat], b: &[ExactRat], k: usize, m: usize) -> ExactRat {
    &a[k] * &b[m] - &b[k] * &a[m]
}

impl Line {
    pub fn new(row1: Vec<ExactRat>, row2: Vec<ExactRat>) -> Result<Line> {
        if row1.len() != row2.len() {
            return Err(Error::DimensionMismatch {
                expected: row1.len(),
                found: row2.len(),
            });
        }
        let n = row1.len();
        let rank2 = (0..n).any(|k| (k + 1..n).any(|m| !minor(&row1, &row2, k, m).is_zero()));
        if !rank2 {
            return Err(Error::RankDeficientLine);
        }
        Ok(Line { rows: [row1, row2] })
    }

    /// The line through `[u]` and `[v]`.
    pub fn through(u: Vec<ExactRat>, v: Vec<ExactRat>) -> Result<Line> {
        Line::new(u, v).map_err(|e| match e {
            Error::RankDeficientLine => Error::DependentVectors,
            other => other,
        })
    }

    /// The point `𝔩` of `G(2,N)` given by the rows of `B`.
    pub fn from_lattice(lattice: &Lattice) -> Line {
        let b = lattice.matrix();
        let row = |r: usize| b.row(r).iter().map(int_to_rat).collect();
        Line {
            rows: [row(0), row(1)],
        }
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<ExactRat>; 2] {
        &self.rows
    }

    /// `Y_{km}` for 1-based `k`, `m`.
    pub fn pluecker(&self, k: usize, m: usize) -> ExactRat {
        minor(&self.rows[0], &self.rows[1], k - 1, m - 1)
    }

    /// All `Y_{km}` with `k < m`.
    pub fn pluecker_coords(&self) -> BTreeMap<(usize, usize), ExactRat> {
        let n = self.n();
        (1..=n)
            .flat_map(|k| (k + 1..=n).map(move |m| (k, m)))
            .map(|(k, m)| ((k, m), self.pluecker(k, m)))
            .collect()
    }

    /// `g · Y` for an invertible 2×2 `g`.
    pub fn transformed(&self, g: [[ExactRat; 2]; 2]) -> Result<Line> {
        let comb = |a: &ExactRat, b: &ExactRat| -> Vec<ExactRat> {
            self.rows[0].iter().zip(&self.rows[1]).map(|(x, y)| a * x + b * y).collect()
        };
        Line::new(comb(&g[0][0], &g[0][1]), comb(&g[1][0], &g[1][1]))
    }

    /// Whether `[u]` lies on the line: every 3×3 minor of `(y_1; y_2; u)`
    /// vanishes.
    pub fn contains_point(&self, u: &[ExactRat]) -> bool {
        let n = self.n();
        if u.len() != n {
            return false;
        }
        let [a, b] = &self.rows;
        for i in 0..n {
            for j in i + 1..n {
                let yij = minor(a, b, i, j);
                for k in j + 1..n {
                    // Expansion along the third row.
                    let d = &u[i] * minor(a, b, j, k) - &u[j] * minor(a, b, i, k) + &u[k] * &yij;
                    if !d.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `α y_1 + β y_2`.
    pub fn point(&self, alpha: &ExactRat, beta: &ExactRat) -> Vec<ExactRat> {
        self.rows[0].iter().zip(&self.rows[1]).map(|(x, y)| alpha * x + beta * y).collect()
    }

    fn entry_map(&self) -> HashMap<VarId, ExactRat> {
        let mut vals = HashMap::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                vals.insert(VarId::Y(r as u8 + 1, j as u32 + 1), v.clone());
            }
        }
        vals
    }
}

/// Where to evaluate a Plücker element.
#[derive(Clone, Copy, Debug)]
pub enum GrassmannPoint<'a> {
    Line(&'a Line),
    /// The point `𝔩` whose coordinates are the 2×2 minors of `B`.
    Lattice(&'a Lattice),
}

/// Substitutes the matrix entries of the point for the `y` variables.
pub fn eval_pluecker_at(pe: &PlueckerElement, point: GrassmannPoint<'_>) -> Poly {
    let owned;
    let line = match point {
        GrassmannPoint::Line(l) => l,
        GrassmannPoint::Lattice(lat) => {
            owned = Line::from_lattice(lat);
            &owned
        }
    };
    pe.0.evaluate(&line.entry_map())
}

/// `z_e ↦ Y_{s(e)t(e)}` evaluated numerically at a line.
pub fn edge_pluecker_values(quiver: &Quiver, line: &Line) -> HashMap<VarId, ExactRat> {
    quiver
        .edges()
        .iter()
        .map(|e| (VarId::Z(e.id), line.pluecker(e.s, e.t)))
        .collect()
}
