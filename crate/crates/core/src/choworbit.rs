//! Orbit invariants, Chow forms of orbit closures, line images and the
//! principal A-determinant for a validated lattice/quiver pair.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::biadjacency::{check_homogeneity, degree_check, det_biadjacency, Flavor};
use crate::compat::{check_condition2, solve_epsilons, EpsilonAssignment};
use crate::error::{Error, Result};
use crate::exact::num::ExactRat;
use crate::exact::{Monomial, Poly, Quotient, VarId};
use crate::grassmann::{bst_hom, edge_pluecker_values, eval_pluecker_at, y_substitution, GrassmannPoint, Line, PlueckerElement};
use crate::lattice::{Lattice, QuotientStructure, A0};
use crate::quiver::Quiver;

/// A point of `(C^*)^N` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitPoint(Vec<ExactRat>);

impl OrbitPoint {
    pub fn new(coords: Vec<ExactRat>) -> Result<OrbitPoint> {
        if let Some(i) = coords.iter().position(Zero::is_zero) {
            return Err(Error::ZeroCoordinate(i + 1));
        }
        Ok(OrbitPoint(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Result<OrbitPoint> {
        OrbitPoint::new(coords.iter().map(|&c| ExactRat::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[ExactRat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn u_values(&self) -> HashMap<VarId, ExactRat> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, c)| (VarId::U(i as u32 + 1), c.clone()))
            .collect()
    }
}

/// `E_A = ± B_st(det K_P^c(z,u))`. `E_A` is determined only up to sign;
/// `raw` is the literal specialization and `normalized` its projective
/// representative, with `raw = content · normalized`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ADeterminant {
    pub raw: Poly,
    pub normalized: Poly,
    pub content: ExactRat,
}

impl ADeterminant {
    pub fn sign_note(&self) -> &'static str {
        if self.content.is_negative() {
            "E_A = ±B_st(det K^c); the normalized form is -1 times the raw specialization"
        } else {
            "E_A = ±B_st(det K^c); the normalized form equals the raw specialization up to a positive scalar"
        }
    }
}

/// Outcome of dividing `E_A` by candidate factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetReport {
    /// `(factor, quotient)`; `None` when the factor does not divide.
    pub per_factor: Vec<(Poly, Option<Poly>)>,
    pub product: Poly,
    pub product_quotient: Option<Poly>,
}

impl FacetReport {
    pub fn all_divide(&self) -> bool {
        self.per_factor.iter().all(|(_, q)| q.is_some()) && self.product_quotient.is_some()
    }

    /// `Some(±1)` when `E_A` equals `±` the product of the factors.
    pub fn product_sign(&self) -> Option<i8> {
        let q = self.product_quotient.as_ref()?.as_constant()?;
        if q.is_one() {
            Some(1)
        } else if (-q).is_one() {
            Some(-1)
        } else {
            None
        }
    }
}

impl fmt::Display for FacetReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (factor, q) in &self.per_factor {
            match q {
                Some(q) => writeln!(f, "divides: {factor}  quotient: {q}")?,
                None => writeln!(f, "not divisible: {factor}")?,
            }
        }
        match (&self.product_quotient, self.product_sign()) {
            (_, Some(s)) => writeln!(f, "product of factors = {} E_A", if s > 0 { "+" } else { "-" }),
            (Some(q), None) => writeln!(f, "product divides E_A with quotient {q}"),
            (None, None) => writeln!(f, "product of factors does not divide E_A"),
        }
    }
}

/// Fails with [`Error::TorsionPresent`] unless `Z^N/L` is torsion free.
pub fn ensure_torsion_free(lattice: &Lattice) -> Result<()> {
    let qs = lattice.quotient_structure();
    if qs.is_torsion_free() {
        Ok(())
    } else {
        Err(Error::TorsionPresent(qs.torsion_order.to_string()))
    }
}

/// The principal A-determinant of an unvalidated pair. The torsion
/// hypothesis is checked before the quiver is examined.
pub fn principal_a_determinant(
    lattice: Lattice,
    quiver: Quiver,
    eps: Option<EpsilonAssignment>,
) -> Result<ADeterminant> {
    ensure_torsion_free(&lattice)?;
    ProblemInstance::new(lattice, quiver, eps)?.principal_a_determinant()
}

/// A lattice and quiver known to satisfy the cell and epsilon conditions and the degree
/// identities, with the two determinants precomputed.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    lattice: Lattice,
    quiver: Quiver,
    eps: EpsilonAssignment,
    a0: A0,
    nu: u32,
    det_k: Poly,
    det_kc: Poly,
    det_kc_y: PlueckerElement,
}

impl ProblemInstance {
    /// Validates everything; solves for the ε-assignment when none is given.
    pub fn new(lattice: Lattice, quiver: Quiver, eps: Option<EpsilonAssignment>) -> Result<ProblemInstance> {
        if quiver.n_nodes() != lattice.n() {
            return Err(Error::DimensionMismatch {
                expected: lattice.n(),
                found: quiver.n_nodes(),
            });
        }
        let c1 = quiver.check_condition1();
        if !c1.is_ok() {
            return Err(Error::Condition1(c1));
        }
        let a0 = lattice.a0()?;
        let eps = match eps {
            Some(e) => e,
            None => solve_epsilons(&lattice, &quiver)?,
        };
        let c2 = check_condition2(&lattice, &quiver, &eps, &a0.class);
        if !c2.is_ok() {
            return Err(Error::Condition2(c2));
        }
        let homogeneity = check_homogeneity(&lattice, &quiver, &eps)?;
        if !homogeneity.is_ok() {
            return Err(Error::Homogeneity(homogeneity));
        }
        let nu = degree_check(&lattice, &quiver)?.nu().expect("degree_check certifies nu");
        let det_k = det_biadjacency(&quiver, Flavor::Standard)?;
        let det_kc = det_biadjacency(&quiver, Flavor::Complementary)?;
        let det_kc_y = y_substitution(&quiver, &det_kc)?;
        Ok(ProblemInstance {
            lattice,
            quiver,
            eps,
            a0,
            nu,
            det_k,
            det_kc,
            det_kc_y,
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn epsilons(&self) -> &EpsilonAssignment {
        &self.eps
    }

    pub fn a0(&self) -> &A0 {
        &self.a0
    }

    /// `ν = deg_z det K_P = ½ h̄(a_0)`.
    pub fn nu(&self) -> u32 {
        self.nu
    }

    /// `det K_P(z,u)`.
    pub fn det(&self) -> &Poly {
        &self.det_k
    }

    /// `det K_P^c(z,u)`.
    pub fn det_complementary(&self) -> &Poly {
        &self.det_kc
    }

    /// `det K_P^c(y(z),u)` as an element of `R_{2,N}[u]`.
    pub fn chow_form_generic(&self) -> &PlueckerElement {
        &self.det_kc_y
    }

    pub fn quotient_structure(&self) -> QuotientStructure {
        self.lattice.quotient_structure()
    }

    fn check_point(&self, u: &OrbitPoint) -> Result<()> {
        if u.len() != self.lattice.n() {
            return Err(Error::DimensionMismatch {
                expected: self.lattice.n(),
                found: u.len(),
            });
        }
        Ok(())
    }

    /// `u ↦ det K_P(z,u)`, invariant under the kernel of `χ`.
    pub fn affine_orbit_invariant(&self, u: &OrbitPoint) -> Result<Poly> {
        self.check_point(u)?;
        Ok(self.det_k.evaluate(&u.u_values()))
    }

    /// `u ↦ det K_P(z,u) mod C^*`, invariant under the whole group.
    pub fn projective_orbit_invariant(&self, u: &OrbitPoint) -> Result<Poly> {
        let p = self.affine_orbit_invariant(u)?;
        if p.is_zero() {
            return Err(Error::DegeneratePoint);
        }
        p.normalized()
    }

    /// `u ↦ det K_P^c(y(z),u)`, optionally modulo scalars.
    pub fn chow_map_point(&self, u: &OrbitPoint, projective: bool) -> Result<PlueckerElement> {
        self.check_point(u)?;
        let p = self.det_kc_y.poly().evaluate(&u.u_values());
        if p.is_zero() {
            return Err(Error::DegeneratePoint);
        }
        Ok(PlueckerElement(if projective { p.normalized()? } else { p }))
    }

    /// A Chow form of the closure of the orbit of `[u]` in `P^{N-1}`,
    /// normalized; its Plücker degree is `ν`.
    pub fn chow_form(&self, u: &OrbitPoint) -> Result<PlueckerElement> {
        self.chow_map_point(u, true)
    }

    /// `det K_P^c(Y_st, u)` for the Plücker coordinates of `line`.
    pub fn incidence_determinant(&self, line: &Line, u: &[ExactRat]) -> Result<ExactRat> {
        if line.n() != self.lattice.n() || u.len() != self.lattice.n() {
            return Err(Error::DimensionMismatch {
                expected: self.lattice.n(),
                found: line.n().min(u.len()),
            });
        }
        let mut vals = edge_pluecker_values(&self.quiver, line);
        vals.extend(u.iter().enumerate().map(|(i, c)| (VarId::U(i as u32 + 1), c.clone())));
        let v = self.det_kc.evaluate(&vals);
        Ok(v.as_constant().expect("all variables substituted"))
    }

    /// Whether `det K_P^c(Y_st, u)` vanishes; always true when `[u]` lies on
    /// the line.
    pub fn incidence_vanishing(&self, line: &Line, u: &[ExactRat]) -> Result<bool> {
        Ok(self.incidence_determinant(line, u)?.is_zero())
    }

    /// The equation in `u` of the image of a line: `det K_P^c(y(z),u)` with
    /// `y` evaluated at the point, normalized.
    pub fn line_image_equation(&self, point: GrassmannPoint<'_>) -> Result<Poly> {
        let p = eval_pluecker_at(&self.det_kc_y, point);
        if p.is_zero() {
            return Err(Error::DegenerateLine);
        }
        p.normalized()
    }

    /// `B_st(det K_P^c(z,u))`; requires `Z^N/L` torsion free.
    pub fn principal_a_determinant(&self) -> Result<ADeterminant> {
        ensure_torsion_free(&self.lattice)?;
        let raw = bst_hom(&self.lattice, &self.quiver, &self.det_kc)?;
        let (content, normalized) = raw.content_and_normalize()?;
        Ok(ADeterminant {
            raw,
            normalized,
            content,
        })
    }

    /// Exact division of `E_A` (the raw specialization) by each factor and by
    /// their product.
    pub fn facet_divisibility(&self, factors: &[Poly]) -> Result<FacetReport> {
        let ea = self.principal_a_determinant()?.raw;
        let mut per_factor = Vec::with_capacity(factors.len());
        let mut product = Poly::one();
        for f in factors {
            per_factor.push((f.clone(), ea.divide_exact(f)?.into_option()));
            product = &product * f;
        }
        let product_quotient = match ea.divide_exact(&product)? {
            Quotient::Exact(q) => Some(q),
            Quotient::NotDivisible => None,
        };
        Ok(FacetReport {
            per_factor,
            product,
            product_quotient,
        })
    }

    /// Coefficient of `u^v` in `det K_P(z,u)`; zero if absent.
    pub fn vertex_coefficient(&self, v: &[u32]) -> Result<Poly> {
        if v.len() != self.lattice.n() {
            return Err(Error::DimensionMismatch {
                expected: self.lattice.n(),
                found: v.len(),
            });
        }
        let key = Monomial::from_u_exponents(v);
        Ok(self.det_k.collect_by(VarId::is_u).remove(&key).unwrap_or_default())
    }
}
