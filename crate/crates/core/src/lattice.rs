//! Rank-2 lattices `L ⊂ Z^N` inside the kernel of the coordinate sum.
//!
//! A lattice is presented by a 2×N integer matrix `B` whose rows span `L`.
//! The columns `β_1..β_N` of `B` generate the secondary fan in `R^2`; its
//! chambers determine the distinguished weight `a_0`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::num::{pow_signed, ExactInt, ExactRat};
use crate::exact::{smith_normal_form, IntMatrix};
use crate::report::ValidationReport;

/// A 2-vector with exact integer coordinates.
pub type Vec2 = [ExactInt; 2];

fn cross(a: &Vec2, b: &Vec2) -> ExactInt {
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// 0 for directions in `[0°, 180°)`, 1 for `[180°, 360°)`.
fn half(v: &Vec2) -> u8 {
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular order starting at the positive x-axis.
fn angular_cmp(a: &Vec2, b: &Vec2) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn primitive(v: &Vec2) -> Vec2 {
    let g = v[0].gcd(&v[1]);
    [&v[0] / &g, &v[1] / &g]
}

/// Invariants of the presenting matrix that can fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeViolation {
    NotTwoRows(usize),
    TooFewColumns(usize),
    RankBelowTwo,
    /// 1-based row index and its (nonzero) sum.
    NonzeroRowSum { row: usize, sum: ExactInt },
    /// 1-based column index.
    ZeroColumn(usize),
}

impl fmt::Display for LatticeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeViolation::NotTwoRows(r) => write!(f, "expected 2 rows, found {r}"),
            LatticeViolation::TooFewColumns(n) => write!(f, "need N >= 3 columns, found {n}"),
            LatticeViolation::RankBelowTwo => f.write_str("rank < 2"),
            LatticeViolation::NonzeroRowSum { row, sum } => write!(f, "row {row} sums to {sum}, not 0"),
            LatticeViolation::ZeroColumn(j) => write!(f, "column {j} is zero"),
        }
    }
}

/// An element of `Z^N / L`, stored as a raw integer representative.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub raw: Vec<ExactInt>,
}

impl Weight {
    pub fn new(raw: Vec<ExactInt>) -> Self {
        Weight { raw }
    }

    pub fn from_ints(raw: &[i64]) -> Self {
        Weight::new(raw.iter().map(|&x| ExactInt::from(x)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Weight::new(vec![ExactInt::zero(); n])
    }

    /// `a_i = e_i mod L` for 1-based `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = Weight::zero(n);
        w.raw[i - 1] = ExactInt::one();
        w
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    /// `h̄`: the coordinate sum, well defined on classes since rows of `B`
    /// sum to zero.
    pub fn hbar(&self) -> ExactInt {
        self.raw.iter().sum()
    }

    pub fn dot(&self, other: &[ExactInt]) -> ExactInt {
        self.raw.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &ExactInt) -> Weight {
        Weight::new(self.raw.iter().map(|x| x * k).collect())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight::new(self.raw.iter().zip(&rhs.raw).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight::new(self.raw.iter().zip(&rhs.raw).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(self.raw.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.raw.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A ray of the secondary fan with the (1-based) columns lying on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub direction: Vec2,
    pub members: Vec<usize>,
}

/// A maximal cone between two consecutive rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    /// Sum of the two bounding primitive directions.
    pub representative: Vec2,
    /// Indices into [`SecondaryFan::rays`] of the bounding rays, counterclockwise.
    pub bounding_rays: (usize, usize),
    /// `L_c`: 1-based column pairs `(i, j)`, `i < j`.
    pub pairs: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondaryFan {
    pub rays: Vec<Ray>,
    pub chambers: Vec<Chamber>,
}

/// `a_0` computed in every chamber, with its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A0 {
    /// `(chamber representative, raw vector)` in chamber order.
    pub by_chamber: Vec<(Vec2, Weight)>,
    pub class: Weight,
}

/// Structure of `Z^N / L` from the Smith form of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    pub free_rank: usize,
    pub invariant_factors: Vec<ExactInt>,
    pub torsion_order: ExactInt,
}

impl QuotientStructure {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion_order.is_one()
    }
}

/// A rational point `ξ = (t^{w_1}, ..., t^{w_N})` of the group `G_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub w: Vec<ExactInt>,
    pub t: ExactRat,
    pub coords: Vec<ExactRat>,
}

impl GroupElement {
    /// `ξ(weight) = t^{w · raw}`; for `a_0` this is the character `χ(ξ)`.
    pub fn character(&self, weight: &Weight) -> ExactRat {
        pow_signed(&self.t, &weight.dot(&self.w))
    }

    /// Componentwise action on a point of `(C^*)^N`.
    pub fn act(&self, u: &[ExactRat]) -> Vec<ExactRat> {
        self.coords.iter().zip(u).map(|(x, y)| x * y).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    b: IntMatrix,
    /// 0-based columns with `det(β_p, β_q) != 0`, used for membership solves.
    pivot: (usize, usize),
}

impl Lattice {
    /// Validates the presenting matrix, reporting every violated invariant.
    pub fn new(b: IntMatrix) -> Result<Lattice, ValidationReport<LatticeViolation>> {
        let mut report = ValidationReport::new();
        if b.nrows() != 2 {
            report.push(LatticeViolation::NotTwoRows(b.nrows()));
            return Err(report);
        }
        let n = b.ncols();
        if n < 3 {
            report.push(LatticeViolation::TooFewColumns(n));
        }
        let cols: Vec<Vec2> = (0..n).map(|j| [b[(0, j)].clone(), b[(1, j)].clone()]).collect();
        let pivot = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .find(|&(p, q)| !cross(&cols[p], &cols[q]).is_zero());
        if pivot.is_none() {
            report.push(LatticeViolation::RankBelowTwo);
        }
        for r in 0..2 {
            let sum: ExactInt = b.row(r).iter().sum();
            if !sum.is_zero() {
                report.push(LatticeViolation::NonzeroRowSum { row: r + 1, sum });
            }
        }
        for (j, c) in cols.iter().enumerate() {
            if c[0].is_zero() && c[1].is_zero() {
                report.push(LatticeViolation::ZeroColumn(j + 1));
            }
        }
        match (report.is_ok(), pivot) {
            (true, Some(pivot)) => Ok(Lattice { b, pivot }),
            _ => Err(report),
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Lattice> {
        let b = IntMatrix::from_rows(rows)?;
        Lattice::new(b).map_err(Error::InvalidLattice)
    }

    pub fn n(&self) -> usize {
        self.b.ncols()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    /// Column `β_j`, 1-based.
    pub fn beta(&self, j: usize) -> Vec2 {
        [self.b[(0, j - 1)].clone(), self.b[(1, j - 1)].clone()]
    }

    /// `det(β_i, β_j) = b_{1i} b_{2j} - b_{1j} b_{2i}`, 1-based.
    pub fn det_cols(&self, i: usize, j: usize) -> ExactInt {
        cross(&self.beta(i), &self.beta(j))
    }

    /// The lattice presented by `g · B` for a 2×2 integer `g`.
    pub fn transformed(&self, g: [[i64; 2]; 2]) -> Result<Lattice> {
        let g = IntMatrix::from_rows(&[g[0].to_vec(), g[1].to_vec()])?;
        Lattice::new(&g * &self.b).map_err(Error::InvalidLattice)
    }

    pub fn secondary_fan(&self) -> SecondaryFan {
        let mut rays: Vec<Ray> = Vec::new();
        for j in 1..=self.n() {
            let dir = primitive(&self.beta(j));
            match rays.iter_mut().find(|r| r.direction == dir) {
                Some(r) => r.members.push(j),
                None => rays.push(Ray {
                    direction: dir,
                    members: vec![j],
                }),
            }
        }
        rays.sort_by(|a, b| angular_cmp(&a.direction, &b.direction));

        let r = rays.len();
        let chambers = (0..r)
            .map(|k| {
                let next = (k + 1) % r;
                let rep = [
                    &rays[k].direction[0] + &rays[next].direction[0],
                    &rays[k].direction[1] + &rays[next].direction[1],
                ];
                // Consecutive gaps are < 180° for valid lattices, so the sum is interior.
                let pairs = self
                    .chamber_pairs(&rep)
                    .expect("chamber representative lies strictly between rays");
                Chamber {
                    representative: rep,
                    bounding_rays: (k, next),
                    pairs,
                }
            })
            .collect();
        SecondaryFan { rays, chambers }
    }

    /// `L_c`: all pairs `{i, j}` with `det(β_i, β_j) != 0` whose closed cone
    /// contains `c`.
    pub fn chamber_pairs(&self, c: &Vec2) -> Result<BTreeSet<(usize, usize)>> {
        let on_ray = (c[0].is_zero() && c[1].is_zero())
            || (1..=self.n()).any(|j| {
                let b = self.beta(j);
                cross(&b, c).is_zero() && (&b[0] * &c[0] + &b[1] * &c[1]).is_positive()
            });
        if on_ray {
            return Err(Error::PointOnRay(c[0].to_string(), c[1].to_string()));
        }
        let mut pairs = BTreeSet::new();
        for i in 1..=self.n() {
            for j in i + 1..=self.n() {
                let (bi, bj) = (self.beta(i), self.beta(j));
                let d = cross(&bi, &bj);
                if d.is_zero() {
                    continue;
                }
                // c = α β_i + γ β_j with α = det(c, β_j)/d, γ = det(β_i, c)/d.
                let alpha = cross(c, &bj);
                let gamma = cross(&bi, c);
                let same_sign = |x: &ExactInt| x.is_zero() || x.signum() == d.signum();
                if same_sign(&alpha) && same_sign(&gamma) {
                    pairs.insert((i, j));
                }
            }
        }
        Ok(pairs)
    }

    /// `Σ_{{i,j} ∈ L_c} |det(β_i, β_j)| (e_i + e_j)` for the given list.
    pub fn a0_raw(&self, pairs: &BTreeSet<(usize, usize)>) -> Weight {
        let mut raw = vec![ExactInt::zero(); self.n()];
        for &(i, j) in pairs {
            let d = self.det_cols(i, j).abs();
            raw[i - 1] += &d;
            raw[j - 1] += &d;
        }
        Weight::new(raw)
    }

    /// `a_0` in every chamber; fails if two chambers disagree modulo `L`.
    pub fn a0(&self) -> Result<A0> {
        let fan = self.secondary_fan();
        let by_chamber: Vec<(Vec2, Weight)> = fan
            .chambers
            .iter()
            .map(|ch| (ch.representative.clone(), self.a0_raw(&ch.pairs)))
            .collect();
        let class = by_chamber[0].1.clone();
        if by_chamber.iter().any(|(_, w)| !self.weight_class_eq(w, &class)) {
            return Err(Error::InconsistentA0);
        }
        Ok(A0 { by_chamber, class })
    }

    /// Whether `v = x · B` for some integer row vector `x`.
    pub fn contains(&self, v: &[ExactInt]) -> bool {
        if v.len() != self.n() {
            return false;
        }
        let (p, q) = self.pivot;
        let b = &self.b;
        let d = &b[(0, p)] * &b[(1, q)] - &b[(0, q)] * &b[(1, p)];
        let x1n = &v[p] * &b[(1, q)] - &v[q] * &b[(1, p)];
        let x2n = &v[q] * &b[(0, p)] - &v[p] * &b[(0, q)];
        if !x1n.is_multiple_of(&d) || !x2n.is_multiple_of(&d) {
            return false;
        }
        let (x1, x2) = (x1n / &d, x2n / &d);
        (0..self.n()).all(|j| &x1 * &b[(0, j)] + &x2 * &b[(1, j)] == v[j])
    }

    pub fn weight_class_eq(&self, w1: &Weight, w2: &Weight) -> bool {
        w1.len() == w2.len() && self.contains(&(w1 - w2).raw)
    }

    pub fn quotient_structure(&self) -> QuotientStructure {
        let snf = smith_normal_form(&self.b);
        let invariant_factors = snf.invariant_factors();
        let torsion_order = invariant_factors.iter().product();
        QuotientStructure {
            free_rank: self.n() - invariant_factors.len(),
            invariant_factors,
            torsion_order,
        }
    }

    /// A basis of the integer kernel `{w : B w = 0}` (N−2 vectors).
    pub fn kernel_basis(&self) -> Vec<Vec<ExactInt>> {
        let snf = smith_normal_form(&self.b);
        (snf.rank()..self.n()).map(|j| snf.v.column(j)).collect()
    }

    pub fn in_kernel(&self, w: &[ExactInt]) -> bool {
        w.len() == self.n()
            && (0..2).all(|r| self.b.row(r).iter().zip(w).map(|(a, b)| a * b).sum::<ExactInt>().is_zero())
    }

    /// The group point `ξ_i = t^{w_i}`; requires `B w = 0` and `t != 0`.
    pub fn sample_group_element(&self, w: &[ExactInt], t: &ExactRat) -> Result<GroupElement> {
        if !self.in_kernel(w) {
            return Err(Error::NotInKernel);
        }
        if t.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(GroupElement {
            w: w.to_vec(),
            t: t.clone(),
            coords: w.iter().map(|e| pow_signed(t, e)).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::num::{int, rat};

    fn dp3() -> Lattice {
        Lattice::from_rows(&[vec![1, 1, 0, -1, -1, 0], vec![0, 1, 1, 0, -1, -1]]).unwrap()
    }

    fn triangle() -> Lattice {
        Lattice::from_rows(&[vec![1, -1, 0], vec![0, 1, -1]]).unwrap()
    }

    fn v2(x: i64, y: i64) -> Vec2 {
        [int(x), int(y)]
    }

    #[test]
    fn validation_reports_each_violation() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 0, -1, -1, 0], vec![1, 1, 0, -1, -1, 0]]).unwrap();
        let err = Lattice::new(m).unwrap_err();
        assert!(err.violations.contains(&LatticeViolation::RankBelowTwo));

        let m = IntMatrix::from_rows(&[vec![1, 0, 0, -1], vec![0, 1, 0, 0]]).unwrap();
        let err = Lattice::new(m).unwrap_err();
        assert_eq!(
            err.violations,
            vec![
                LatticeViolation::NonzeroRowSum { row: 2, sum: int(1) },
                LatticeViolation::ZeroColumn(3),
            ]
        );
    }

    #[test]
    fn dp3_fan_has_six_rays_and_chambers() {
        let fan = dp3().secondary_fan();
        let dirs: Vec<Vec2> = fan.rays.iter().map(|r| r.direction.clone()).collect();
        assert_eq!(dirs, vec![v2(1, 0), v2(1, 1), v2(0, 1), v2(-1, 0), v2(-1, -1), v2(0, -1)]);
        assert_eq!(fan.chambers.len(), 6);
        assert_eq!(fan.chambers[0].pairs, BTreeSet::from([(1, 2), (1, 3), (2, 6)]));
    }

    #[test]
    fn triangle_fan() {
        let fan = triangle().secondary_fan();
        let dirs: Vec<Vec2> = fan.rays.iter().map(|r| r.direction.clone()).collect();
        assert_eq!(dirs, vec![v2(1, 0), v2(-1, 1), v2(0, -1)]);
        assert_eq!(fan.chambers.len(), 3);
    }

    #[test]
    fn parallel_columns_share_a_ray() {
        let l = Lattice::from_rows(&[vec![1, 2, -3, 0], vec![0, 0, 1, -1]]).unwrap();
        let fan = l.secondary_fan();
        assert_eq!(fan.rays[0].members, vec![1, 2]);
        assert_eq!(fan.rays.len(), 3);
    }

    #[test]
    fn chamber_pairs_for_published_sectors() {
        let l = dp3();
        assert_eq!(l.chamber_pairs(&v2(2, 1)).unwrap(), BTreeSet::from([(1, 2), (1, 3), (2, 6)]));
        assert_eq!(l.chamber_pairs(&v2(-1, 1)).unwrap(), BTreeSet::from([(2, 4), (3, 4), (3, 5)]));
        assert!(matches!(l.chamber_pairs(&v2(2, 2)), Err(Error::PointOnRay(..))));
        assert!(matches!(l.chamber_pairs(&v2(0, 0)), Err(Error::PointOnRay(..))));
        assert_eq!(triangle().chamber_pairs(&v2(1, 1)).unwrap(), BTreeSet::from([(1, 2)]));
    }

    #[test]
    fn a0_of_triangle() {
        let a0 = triangle().a0().unwrap();
        assert_eq!(a0.class, Weight::from_ints(&[1, 1, 0]));
        assert_eq!(a0.class.hbar(), int(2));
        assert_eq!(a0.by_chamber.len(), 3);
    }

    #[test]
    fn class_equality() {
        let l = dp3();
        let a = Weight::from_ints(&[2, 2, 1, 0, 0, 1]);
        let b = Weight::from_ints(&[1, 1, 1, 1, 1, 1]);
        assert!(l.weight_class_eq(&a, &b));
        assert!(l.weight_class_eq(&a, &a));
        assert!(!l.weight_class_eq(&Weight::unit(6, 1), &Weight::zero(6)));
    }

    #[test]
    fn quotient_structures() {
        let q = dp3().quotient_structure();
        assert_eq!((q.free_rank, q.torsion_order.clone()), (4, int(1)));
        let q = triangle().quotient_structure();
        assert_eq!((q.free_rank, q.torsion_order.clone()), (1, int(1)));
        let q = Lattice::from_rows(&[vec![2, -2, 0], vec![0, 2, -2]]).unwrap().quotient_structure();
        assert_eq!(q.invariant_factors, vec![int(2), int(2)]);
        assert_eq!(q.torsion_order, int(4));
        assert!(!q.is_torsion_free());
    }

    #[test]
    fn kernel_bases() {
        let l = dp3();
        let k = l.kernel_basis();
        assert_eq!(k.len(), 4);
        assert!(k.iter().all(|w| l.in_kernel(w)));
        let k = triangle().kernel_basis();
        assert_eq!(k.len(), 1);
        let w = &k[0];
        assert!(w == &vec![int(1), int(1), int(1)] || w == &vec![int(-1), int(-1), int(-1)]);
    }

    #[test]
    fn group_samples() {
        let l = triangle();
        let g = l.sample_group_element(&[int(1), int(1), int(1)], &rat(2)).unwrap();
        assert_eq!(g.coords, vec![rat(2), rat(2), rat(2)]);
        assert_eq!(g.character(&Weight::from_ints(&[1, 1, 0])), rat(4));

        let id = l.sample_group_element(&[int(0), int(0), int(0)], &rat(5)).unwrap();
        assert!(id.coords.iter().all(|c| c.is_one()));
        assert!(matches!(l.sample_group_element(&[int(1), int(0), int(0)], &rat(2)), Err(Error::NotInKernel)));
        assert!(matches!(
            l.sample_group_element(&[int(1), int(1), int(1)], &rat(0)),
            Err(Error::ZeroParameter)
        ));
    }
}
