//! Compatibility of a lattice with a quiver: weights `ε_b`, `ε_w` attached to
//! the 2-cells such that every arrow satisfies
//! `a_{s(e)} + a_{t(e)} ≡ ε_{b(e)} − ε_{w(e)}` and the cell weights sum to `a_0`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::ExactInt;
use crate::lattice::{Lattice, Weight};
use crate::quiver::{CellRef, Quiver};
use crate::report::ValidationReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonAssignment {
    pub black: BTreeMap<u32, Weight>,
    pub white: BTreeMap<u32, Weight>,
    /// `h̄(ε_b)` of the smallest black cell; a valid assignment has
    /// `h̄(ε_b) = k` and `h̄(ε_w) = k − 2` throughout.
    pub k: ExactInt,
}

impl EpsilonAssignment {
    pub fn new(black: BTreeMap<u32, Weight>, white: BTreeMap<u32, Weight>) -> Self {
        let k = black.values().next().map(Weight::hbar).unwrap_or_else(ExactInt::zero);
        EpsilonAssignment { black, white, k }
    }

    pub fn get(&self, cell: CellRef) -> Option<&Weight> {
        match cell {
            CellRef::Black(b) => self.black.get(&b),
            CellRef::White(w) => self.white.get(&w),
        }
    }

    /// Adds `shift` to every ε; both congruences are preserved when the
    /// numbers of black and white cells agree.
    pub fn shifted(&self, shift: &Weight) -> Self {
        let add = |m: &BTreeMap<u32, Weight>| m.iter().map(|(&c, w)| (c, w + shift)).collect();
        EpsilonAssignment::new(add(&self.black), add(&self.white))
    }

    /// `Σ ε_b − Σ ε_w`.
    pub fn net(&self, n: usize) -> Weight {
        let plus = self.black.values().fold(Weight::zero(n), |acc, w| &acc + w);
        self.white.values().fold(plus, |acc, w| &acc - w)
    }
}

/// `a_{s(e)} + a_{t(e)}` as a raw vector.
pub fn edge_weight(n: usize, s: usize, t: usize) -> Weight {
    &Weight::unit(n, s) + &Weight::unit(n, t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// This arrow's congruence fails for the propagated values.
    Edge(u32),
    /// `Σ ε_b − Σ ε_w ≢ a_0`.
    Sum,
    /// The cell adjacency graph does not reach this cell from the root.
    Disconnected(CellRef),
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Edge(e) => write!(f, "edge {e}"),
            Certificate::Sum => f.write_str("sum"),
            Certificate::Disconnected(c) => write!(f, "cell {c} unreachable"),
        }
    }
}

/// Proof that no assignment exists: the values forced along a spanning tree
/// of the cell graph, plus a congruence they violate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infeasibility {
    pub certificate: Certificate,
    pub propagated: EpsilonAssignment,
    /// The vector that should lie in `L` but does not.
    pub residual: Weight,
}

impl Infeasibility {
    /// Recomputes the residual from the propagated values and confirms it is
    /// outside `L`.
    pub fn reverify(&self, lattice: &Lattice, quiver: &Quiver, a0: &Weight) -> bool {
        let n = lattice.n();
        let residual = match self.certificate {
            Certificate::Edge(id) => {
                let Some(e) = quiver.edge(id) else { return false };
                let (Some(b), Some(w)) = (self.propagated.black.get(&e.black), self.propagated.white.get(&e.white))
                else {
                    return false;
                };
                &(b - w) - &edge_weight(n, e.s, e.t)
            }
            Certificate::Sum => &self.propagated.net(n) - a0,
            Certificate::Disconnected(cell) => return self.propagated.get(cell).is_none(),
        };
        residual == self.residual && !lattice.contains(&residual.raw)
    }
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (residual {} not in L)", self.certificate, self.residual)
    }
}

/// Solves for an assignment in the gauge where the smallest black cell has
/// `ε = 0`, propagating along a breadth-first spanning tree of the cell graph.
pub fn solve_epsilons(lattice: &Lattice, quiver: &Quiver) -> Result<EpsilonAssignment> {
    let a0 = lattice.a0()?.class;
    solve_epsilons_with(lattice, quiver, &a0).map_err(|inf| Error::Infeasible(Box::new(inf)))
}

pub fn solve_epsilons_with(
    lattice: &Lattice,
    quiver: &Quiver,
    a0: &Weight,
) -> Result<EpsilonAssignment, Infeasibility> {
    let n = lattice.n();
    let blacks = quiver.black_cells();
    let whites = quiver.white_cells();
    let mut black: BTreeMap<u32, Weight> = BTreeMap::new();
    let mut white: BTreeMap<u32, Weight> = BTreeMap::new();

    if let Some(&root) = blacks.first() {
        black.insert(root, Weight::zero(n));
        let mut queue = VecDeque::from([CellRef::Black(root)]);
        while let Some(cell) = queue.pop_front() {
            for e in quiver.cell_edges(cell) {
                let step = edge_weight(n, e.s, e.t);
                match cell {
                    CellRef::Black(b) => {
                        if let Entry::Vacant(slot) = white.entry(e.white) {
                            slot.insert(&black[&b] - &step);
                            queue.push_back(CellRef::White(e.white));
                        }
                    }
                    CellRef::White(w) => {
                        if let Entry::Vacant(slot) = black.entry(e.black) {
                            slot.insert(&white[&w] + &step);
                            queue.push_back(CellRef::Black(e.black));
                        }
                    }
                }
            }
        }
    }

    let propagated = EpsilonAssignment::new(black, white);
    let missing = blacks
        .iter()
        .map(|&b| CellRef::Black(b))
        .chain(whites.iter().map(|&w| CellRef::White(w)))
        .find(|&c| propagated.get(c).is_none());
    if let Some(cell) = missing {
        return Err(Infeasibility {
            certificate: Certificate::Disconnected(cell),
            propagated,
            residual: Weight::zero(n),
        });
    }

    for e in quiver.edges() {
        let residual = &(&propagated.black[&e.black] - &propagated.white[&e.white]) - &edge_weight(n, e.s, e.t);
        if !lattice.contains(&residual.raw) {
            return Err(Infeasibility {
                certificate: Certificate::Edge(e.id),
                propagated,
                residual,
            });
        }
    }

    let residual = &propagated.net(n) - a0;
    if !lattice.contains(&residual.raw) {
        return Err(Infeasibility {
            certificate: Certificate::Sum,
            propagated,
            residual,
        });
    }
    Ok(propagated)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition2Violation {
    MissingCell(CellRef),
    WrongLength { cell: CellRef, len: usize },
    EdgeCongruence { edge: u32, residual: Weight },
    SumCongruence { residual: Weight },
    BlackLevel { cell: u32, hbar: ExactInt, k: ExactInt },
    WhiteLevel { cell: u32, hbar: ExactInt, expected: ExactInt },
}

impl fmt::Display for Condition2Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition2Violation::MissingCell(c) => write!(f, "no epsilon for cell {c}"),
            Condition2Violation::WrongLength { cell, len } => write!(f, "epsilon of {cell} has length {len}"),
            Condition2Violation::EdgeCongruence { edge, residual } => {
                write!(f, "edge {edge}: eps_b - eps_w - a_s - a_t = {residual} is not in L")
            }
            Condition2Violation::SumCongruence { residual } => {
                write!(f, "sum eps_b - sum eps_w - a0 = {residual} is not in L")
            }
            Condition2Violation::BlackLevel { cell, hbar, k } => write!(f, "hbar(eps_b{cell}) = {hbar}, expected k = {k}"),
            Condition2Violation::WhiteLevel { cell, hbar, expected } => {
                write!(f, "hbar(eps_w{cell}) = {hbar}, expected k - 2 = {expected}")
            }
        }
    }
}

/// Checks every arrow congruence, the sum congruence and the level identity
/// `h̄(ε_b) = h̄(ε_w) + 2 = k`.
pub fn check_condition2(
    lattice: &Lattice,
    quiver: &Quiver,
    eps: &EpsilonAssignment,
    a0: &Weight,
) -> ValidationReport<Condition2Violation> {
    let n = lattice.n();
    let mut report = ValidationReport::new();
    let cells = quiver
        .black_cells()
        .into_iter()
        .map(CellRef::Black)
        .chain(quiver.white_cells().into_iter().map(CellRef::White));
    for cell in cells {
        match eps.get(cell) {
            None => report.push(Condition2Violation::MissingCell(cell)),
            Some(w) if w.len() != n => report.push(Condition2Violation::WrongLength { cell, len: w.len() }),
            Some(_) => {}
        }
    }
    if !report.is_ok() {
        return report;
    }

    for e in quiver.edges() {
        let residual = &(&eps.black[&e.black] - &eps.white[&e.white]) - &edge_weight(n, e.s, e.t);
        if !lattice.contains(&residual.raw) {
            report.push(Condition2Violation::EdgeCongruence { edge: e.id, residual });
        }
    }
    let residual = &eps.net(n) - a0;
    if !lattice.contains(&residual.raw) {
        report.push(Condition2Violation::SumCongruence { residual });
    }

    let k = eps.black.values().next().map(Weight::hbar).unwrap_or_else(ExactInt::zero);
    for (&cell, w) in &eps.black {
        let hbar = w.hbar();
        if hbar != k {
            report.push(Condition2Violation::BlackLevel { cell, hbar, k: k.clone() });
        }
    }
    let expected = &k - ExactInt::from(2);
    for (&cell, w) in &eps.white {
        let hbar = w.hbar();
        if hbar != expected {
            report.push(Condition2Violation::WhiteLevel {
                cell,
                hbar,
                expected: expected.clone(),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::int;
    use crate::fixtures;

    #[test]
    fn published_dp3_epsilons_verify() {
        let f = fixtures::dp3();
        let a0 = f.lattice.a0().unwrap().class;
        let eps = f.epsilons.clone().unwrap();
        assert!(check_condition2(&f.lattice, &f.quiver, &eps, &a0).is_ok());
        assert_eq!(eps.k, int(0));
        assert_eq!(eps.white[&1].hbar(), int(-2));
    }

    #[test]
    fn solved_dp3_epsilons_verify() {
        let f = fixtures::dp3();
        let a0 = f.lattice.a0().unwrap().class;
        let eps = solve_epsilons(&f.lattice, &f.quiver).unwrap();
        assert!(check_condition2(&f.lattice, &f.quiver, &eps, &a0).is_ok());
        assert_eq!(eps.black[&1], Weight::zero(6));
        // Same solution as the published one up to a common shift.
        let published = f.epsilons.unwrap();
        let shift = &published.black[&1] - &eps.black[&1];
        for (c, w) in &eps.white {
            assert!(f.lattice.weight_class_eq(&(w + &shift), &published.white[c]));
        }
    }

    #[test]
    fn triangle_epsilons() {
        let f = fixtures::triangle();
        let a0 = f.lattice.a0().unwrap().class;
        let handmade = EpsilonAssignment::new(
            BTreeMap::from([(1, Weight::from_ints(&[1, 1, 0]))]),
            BTreeMap::from([(1, Weight::zero(3))]),
        );
        assert!(check_condition2(&f.lattice, &f.quiver, &handmade, &a0).is_ok());
        assert_eq!(handmade.k, int(2));
        let solved = solve_epsilons(&f.lattice, &f.quiver).unwrap();
        assert!(check_condition2(&f.lattice, &f.quiver, &solved, &a0).is_ok());
    }

    #[test]
    fn shift_invariance() {
        let f = fixtures::dp3();
        let a0 = f.lattice.a0().unwrap().class;
        let eps = f.epsilons.unwrap().shifted(&Weight::unit(6, 1));
        assert!(check_condition2(&f.lattice, &f.quiver, &eps, &a0).is_ok());
        assert_eq!(eps.k, int(1));
    }

    #[test]
    fn zero_assignment_fails_every_edge() {
        let f = fixtures::dp3();
        let a0 = f.lattice.a0().unwrap().class;
        let zero = |cells: Vec<u32>| cells.into_iter().map(|c| (c, Weight::zero(6))).collect();
        let eps = EpsilonAssignment::new(zero(f.quiver.black_cells()), zero(f.quiver.white_cells()));
        let report = check_condition2(&f.lattice, &f.quiver, &eps, &a0);
        let bad_edges = report
            .iter()
            .filter(|v| matches!(v, Condition2Violation::EdgeCongruence { .. }))
            .count();
        assert_eq!(bad_edges, 12);
    }

    #[test]
    fn relabeled_cell_is_infeasible_with_certificate() {
        let f = fixtures::dp3();
        let a0 = f.lattice.a0().unwrap().class;
        let q = f.quiver.with_black_label(7, 3).unwrap();
        let inf = solve_epsilons_with(&f.lattice, &q, &a0).unwrap_err();
        assert!(matches!(inf.certificate, Certificate::Edge(_)));
        assert!(inf.reverify(&f.lattice, &q, &a0));
    }
}
