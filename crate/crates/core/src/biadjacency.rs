//! Bi-adjacency matrices `K_P(z,u)` and `K_P^c(z,u)` and the homogeneity and
//! degree identities of their determinants.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, ToPrimitive};

use crate::compat::{check_condition2, solve_epsilons_with, EpsilonAssignment};
use crate::error::{Error, Result};
use crate::exact::num::ExactInt;
use crate::exact::{Monomial, Poly, PolyMatrix, VarId};
use crate::lattice::{GroupElement, Lattice, Weight};
use crate::quiver::Quiver;
use crate::report::ValidationReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// Entries `Σ z_e u_{s(e)} u_{t(e)}`.
    Standard,
    /// Entries `Σ z_e Π_{i ∉ {s(e),t(e)}} u_i`, i.e. `u_1⋯u_N · K_P(z, u^{-1})`.
    Complementary,
}

/// Black-by-white matrix of a quiver; rows and columns sorted by cell id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiAdjacency {
    pub matrix: PolyMatrix,
    pub flavor: Flavor,
    pub black: Vec<u32>,
    pub white: Vec<u32>,
}

fn edge_entry(n: usize, id: u32, s: usize, t: usize, flavor: Flavor) -> Poly {
    let u_part: Vec<(VarId, u32)> = match flavor {
        Flavor::Standard => vec![(VarId::U(s as u32), 1), (VarId::U(t as u32), 1)],
        Flavor::Complementary => (1..=n)
            .filter(|&i| i != s && i != t)
            .map(|i| (VarId::U(i as u32), 1))
            .collect(),
    };
    let mono = Monomial::from_pairs(std::iter::once((VarId::Z(id), 1)).chain(u_part));
    Poly::term(mono, One::one())
}

impl BiAdjacency {
    pub fn build(quiver: &Quiver, flavor: Flavor) -> BiAdjacency {
        let black = quiver.black_cells();
        let white = quiver.white_cells();
        let row_of: HashMap<u32, usize> = black.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let col_of: HashMap<u32, usize> = white.iter().enumerate().map(|(j, &w)| (w, j)).collect();
        let mut matrix = PolyMatrix::labeled(
            black.iter().map(|b| format!("b{b}")).collect(),
            white.iter().map(|w| format!("w{w}")).collect(),
        );
        for e in quiver.edges() {
            let cell = (row_of[&e.black], col_of[&e.white]);
            matrix[cell] += &edge_entry(quiver.n_nodes(), e.id, e.s, e.t, flavor);
        }
        BiAdjacency {
            matrix,
            flavor,
            black,
            white,
        }
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn det(&self) -> Result<Poly> {
        self.matrix.det()
    }
}

pub fn det_biadjacency(quiver: &Quiver, flavor: Flavor) -> Result<Poly> {
    BiAdjacency::build(quiver, flavor).det()
}

/// Dense exponent vector of the `u`-part of a monomial as a weight.
pub fn u_weight(m: &Monomial, n: usize) -> Weight {
    Weight::new(m.u_exponents(n).into_iter().map(ExactInt::from).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomogeneityViolation {
    /// A `u`-monomial of entry `(b, w)` not congruent to `ε_b − ε_w`.
    Entry { black: u32, white: u32, monomial: Monomial },
    /// A `u`-monomial of `det K_P` not congruent to `a_0`.
    Determinant { monomial: Monomial },
    /// The complementary determinant is not the image of `det K_P` under
    /// `v ↦ m(1,…,1) − v`.
    ComplementDuality { detail: String },
    /// `det K_P(z, ξu) ≠ χ(ξ) det K_P(z, u)` for a sampled group point.
    GroupAction { w: Vec<ExactInt> },
}

impl fmt::Display for HomogeneityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomogeneityViolation::Entry { black, white, monomial } => {
                write!(f, "entry (b{black}, w{white}) has term {monomial} outside eps_b - eps_w")
            }
            HomogeneityViolation::Determinant { monomial } => {
                write!(f, "det term {monomial} is not congruent to a0")
            }
            HomogeneityViolation::ComplementDuality { detail } => write!(f, "complement duality: {detail}"),
            HomogeneityViolation::GroupAction { w } => {
                let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                write!(f, "group action with w = ({}) does not scale det by chi", w.join(","))
            }
        }
    }
}

/// Every `u`-monomial of entry `(b, w)` lies in the class `ε_b − ε_w`
/// (standard flavor) or `(1,…,1) − (ε_b − ε_w)` (complementary).
pub fn check_entry_homogeneity(
    lattice: &Lattice,
    k: &BiAdjacency,
    eps: &EpsilonAssignment,
) -> ValidationReport<HomogeneityViolation> {
    let n = lattice.n();
    let ones = Weight::new(vec![ExactInt::one(); n]);
    let mut report = ValidationReport::new();
    for ((i, j), entry) in k.matrix.entries() {
        let (b, w) = (k.black[i], k.white[j]);
        let (Some(eb), Some(ew)) = (eps.black.get(&b), eps.white.get(&w)) else {
            continue;
        };
        let diff = eb - ew;
        let expected = match k.flavor {
            Flavor::Standard => diff,
            Flavor::Complementary => &ones - &diff,
        };
        for (m, _) in entry.terms() {
            if !lattice.weight_class_eq(&u_weight(m, n), &expected) {
                report.push(HomogeneityViolation::Entry {
                    black: b,
                    white: w,
                    monomial: m.restrict(VarId::is_u),
                });
            }
        }
    }
    report
}

/// Every `u`-exponent vector of `det` lies in the class of `a_0`.
pub fn check_det_homogeneity(lattice: &Lattice, det: &Poly, a0: &Weight) -> ValidationReport<HomogeneityViolation> {
    let n = lattice.n();
    let mut report = ValidationReport::new();
    for u_mono in det.collect_by(VarId::is_u).into_keys() {
        if !lattice.weight_class_eq(&u_weight(&u_mono, n), a0) {
            report.push(HomogeneityViolation::Determinant { monomial: u_mono });
        }
    }
    report
}

/// Maps each `u`-exponent vector `v` of `det` to `m(1,…,1) − v`, keeping the
/// rest of the monomial and the coefficient.
pub fn complement_image(det: &Poly, n: usize, m: u32) -> Option<Poly> {
    let mut out = Poly::zero();
    for (mono, c) in det.terms() {
        let exps = mono.u_exponents(n);
        if exps.iter().any(|&e| e > m) {
            return None;
        }
        let dual = exps.iter().enumerate().map(|(i, &e)| (VarId::U(i as u32 + 1), m - e));
        let rest = mono.restrict(|v| !v.is_u());
        out.add_term(rest.mul(&Monomial::from_pairs(dual)), c.clone());
    }
    Some(out)
}

pub fn check_complement_duality(det: &Poly, det_c: &Poly, n: usize, m: u32) -> ValidationReport<HomogeneityViolation> {
    let mut report = ValidationReport::new();
    match complement_image(det, n, m) {
        None => report.push(HomogeneityViolation::ComplementDuality {
            detail: format!("some u-exponent exceeds m = {m}"),
        }),
        Some(img) if img != *det_c => report.push(HomogeneityViolation::ComplementDuality {
            detail: format!("{} of {} terms differ", (&img - det_c).len(), det_c.len().max(img.len())),
        }),
        Some(_) => {}
    }
    report
}

/// Substitutes `u_i ↦ ξ_i u_i`.
pub fn act_on_u(p: &Poly, g: &GroupElement) -> Poly {
    p.substitute_with(|v| match v {
        VarId::U(i) => Some(Poly::term(Monomial::var(v), g.coords[i as usize - 1].clone())),
        _ => None,
    })
}

/// `det(z, ξu) == χ(ξ) det(z, u)` as an exact polynomial identity.
pub fn group_action_scales_by_character(det: &Poly, g: &GroupElement, a0: &Weight) -> bool {
    act_on_u(det, g) == det.scale(&g.character(a0))
}

/// Runs the entry-level, determinant-level and complement-duality checks.
pub fn check_homogeneity(
    lattice: &Lattice,
    quiver: &Quiver,
    eps: &EpsilonAssignment,
) -> Result<ValidationReport<HomogeneityViolation>> {
    let a0 = lattice.a0()?.class;
    let k = BiAdjacency::build(quiver, Flavor::Standard);
    let kc = BiAdjacency::build(quiver, Flavor::Complementary);
    let det = k.det()?;
    let det_c = kc.det()?;
    let mut report = check_entry_homogeneity(lattice, &k, eps);
    report.violations.extend(check_det_homogeneity(lattice, &det, &a0).violations);
    report
        .violations
        .extend(check_complement_duality(&det, &det_c, lattice.n(), k.size() as u32).violations);
    Ok(report)
}

/// The five quantities `deg_z det K_P`, `½ deg_u det K_P`, `#P^2•`, `#P^2∘`,
/// `½ h̄(a_0)`, all of which must agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSummary {
    pub deg_z: Option<u32>,
    pub deg_u: Option<u32>,
    pub n_black: usize,
    pub n_white: usize,
    pub hbar_a0: ExactInt,
}

impl DegreeSummary {
    /// `ν` if all five quantities agree.
    pub fn nu(&self) -> Option<u32> {
        let nu = self.deg_z?;
        let ok = self.deg_u == Some(2 * nu)
            && self.n_black == nu as usize
            && self.n_white == nu as usize
            && self.hbar_a0.to_u64() == Some(2 * nu as u64);
        ok.then_some(nu)
    }
}

impl fmt::Display for DegreeSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |d: Option<u32>| d.map_or("inhomogeneous".to_string(), |d| d.to_string());
        write!(
            f,
            "deg_z det = {}, deg_u det = {}, #black = {}, #white = {}, hbar(a0) = {}",
            show(self.deg_z),
            show(self.deg_u),
            self.n_black,
            self.n_white,
            self.hbar_a0
        )
    }
}

pub fn degree_summary(lattice: &Lattice, quiver: &Quiver) -> Result<DegreeSummary> {
    let det = det_biadjacency(quiver, Flavor::Standard)?;
    Ok(DegreeSummary {
        deg_z: det.homogeneous_degree_in(VarId::is_z),
        deg_u: det.homogeneous_degree_in(VarId::is_u),
        n_black: quiver.black_cells().len(),
        n_white: quiver.white_cells().len(),
        hbar_a0: lattice.a0()?.class.hbar(),
    })
}

/// Certifies the degree identities; refuses unless the cell and epsilon conditions hold.
pub fn degree_check(lattice: &Lattice, quiver: &Quiver) -> Result<DegreeSummary> {
    let c1 = quiver.check_condition1();
    if !c1.is_ok() {
        return Err(Error::Condition1(c1));
    }
    let a0 = lattice.a0()?.class;
    let eps = solve_epsilons_with(lattice, quiver, &a0).map_err(|inf| Error::Infeasible(Box::new(inf)))?;
    let c2 = check_condition2(lattice, quiver, &eps, &a0);
    if !c2.is_ok() {
        return Err(Error::Condition2(c2));
    }
    let summary = degree_summary(lattice, quiver)?;
    match summary.nu() {
        Some(_) => Ok(summary),
        None => Err(Error::DegreeMismatch(summary.to_string())),
    }
}
