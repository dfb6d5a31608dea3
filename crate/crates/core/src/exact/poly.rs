//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables live in three namespaces: edge variables `z_e`, node variables
//! `u_i` and matrix-entry variables `y_{r,j}`. Monomials are ordered
//! lexicographically on the flattened exponent vector under
//! `z_1 < ... < z_E < u_1 < ... < u_N < y_{1,1} < ... < y_{2,N}`; that order
//! drives both serialization and exact division.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::num::{gcd_all, lcm_all, parse_rat, ExactInt, ExactRat};
use crate::error::{Error, Result};

/// A polynomial variable.
///
/// The derived order (`Z` before `U` before `Y`, then by index) is the
/// variable order used for monomial comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    /// Edge variable `z_e`, keyed by edge id.
    Z(u32),
    /// Node variable `u_i`, 1-based.
    U(u32),
    /// Matrix entry `y_{row,col}` with `row` in {1,2}.
    Y(u8, u32),
}

impl VarId {
    pub fn is_z(self) -> bool {
        matches!(self, VarId::Z(_))
    }

    pub fn is_u(self) -> bool {
        matches!(self, VarId::U(_))
    }

    pub fn is_y(self) -> bool {
        matches!(self, VarId::Y(..))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Z(i) => write!(f, "z{i}"),
            VarId::U(i) => write!(f, "u{i}"),
            VarId::Y(r, j) => write!(f, "y{r},{j}"),
        }
    }
}

impl FromStr for VarId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad variable {s:?}"));
        let (head, rest) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        match head {
            "z" => rest.parse().map(VarId::Z).map_err(|_| bad()),
            "u" => rest.parse().map(VarId::U).map_err(|_| bad()),
            "y" => {
                let (r, j) = rest.split_once(',').ok_or_else(bad)?;
                Ok(VarId::Y(r.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?))
            }
            _ => Err(bad()),
        }
    }
}

/// A power product of variables, stored sparsely with strictly positive
/// exponents sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(var, exponent)` pairs; repeated
    /// variables are combined and zero exponents dropped.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut acc: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_default() += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    /// `u_1^{e_1} ... u_n^{e_n}`.
    pub fn from_u_exponents(exps: &[u32]) -> Self {
        Monomial::from_pairs(exps.iter().enumerate().map(|(i, &e)| (VarId::U(i as u32 + 1), e)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map_or(0, |i| self.0[i].1)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Total degree restricted to variables satisfying `pred`.
    pub fn degree_in(&self, pred: impl Fn(VarId) -> bool) -> u32 {
        self.0.iter().filter(|(v, _)| pred(*v)).map(|&(_, e)| e).sum()
    }

    /// The sub-monomial on variables satisfying `pred`.
    pub fn restrict(&self, pred: impl Fn(VarId) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(v, _)| pred(*v)).collect())
    }

    /// Exponents of `u_1..u_n` as a dense vector.
    pub fn u_exponents(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0; n];
        for &(v, e) in &self.0 {
            if let VarId::U(i) = v {
                if let Some(slot) = out.get_mut(i as usize - 1) {
                    *slot = e;
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let d = other.0[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((v, e - d)),
                }
            } else {
                out.push((v, e));
            }
        }
        (j == other.0.len()).then_some(Monomial(out))
    }
}

impl Ord for Monomial {
    /// Lexicographic order on flattened exponent vectors.
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        for k in 0..a.len().min(b.len()) {
            let ((va, ea), (vb, eb)) = (a[k], b[k]);
            match va.cmp(&vb) {
                // `a` has a positive exponent at a variable where `b` has zero.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ea.cmp(&eb) {
                    Ordering::Equal => {}
                    ord => return ord,
                },
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial: a finite map from monomials to nonzero rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, ExactRat>,
}

/// Result of an exact division attempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quotient {
    Exact(Poly),
    NotDivisible,
}

impl Quotient {
    pub fn into_option(self) -> Option<Poly> {
        match self {
            Quotient::Exact(q) => Some(q),
            Quotient::NotDivisible => None,
        }
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(ExactRat::one())
    }

    pub fn constant(c: ExactRat) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(ExactRat::from_integer(c.into()))
    }

    pub fn var(v: VarId) -> Self {
        Poly::term(Monomial::var(v), ExactRat::one())
    }

    pub fn term(m: Monomial, c: ExactRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, ExactRat)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactRat)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactRat {
        self.terms.get(m).cloned().unwrap_or_else(ExactRat::zero)
    }

    /// The order-greatest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &ExactRat)> {
        self.terms.iter().next_back()
    }

    /// The order-least term.
    pub fn trailing_term(&self) -> Option<(&Monomial, &ExactRat)> {
        self.terms.iter().next()
    }

    pub fn as_constant(&self) -> Option<ExactRat> {
        match self.terms.len() {
            0 => Some(ExactRat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &ExactRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &ExactRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Maximum total degree over the variables satisfying `pred`; `None` for
    /// the zero polynomial.
    pub fn degree_in(&self, pred: impl Fn(VarId) -> bool + Copy) -> Option<u32> {
        self.terms.keys().map(|m| m.degree_in(pred)).max()
    }

    /// `Some(d)` if every term has degree `d` in the selected variables.
    pub fn homogeneous_degree_in(&self, pred: impl Fn(VarId) -> bool + Copy) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree_in(pred));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Ring homomorphism sending each variable in `map` to its image; other
    /// variables pass through unchanged.
    pub fn substitute(&self, map: &HashMap<VarId, Poly>) -> Poly {
        self.substitute_with(|v| map.get(&v).cloned())
    }

    /// Like [`Poly::substitute`], with images produced on demand.
    pub fn substitute_with(&self, mut image: impl FnMut(VarId) -> Option<Poly>) -> Poly {
        let mut images: HashMap<VarId, Option<Poly>> = HashMap::new();
        let mut powers: HashMap<(VarId, u32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = Poly::constant(c.clone());
            for &(v, e) in m.factors() {
                let img = images.entry(v).or_insert_with(|| image(v));
                match img {
                    None => kept.push((v, e)),
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        acc = &acc * &*pw;
                    }
                }
                if acc.is_zero() {
                    break;
                }
            }
            if acc.is_zero() {
                continue;
            }
            let kept = Monomial(kept);
            for (k, coef) in acc.terms {
                out.add_term(k.mul(&kept), coef);
            }
        }
        out
    }

    /// Substitutes exact constants for variables.
    pub fn evaluate(&self, values: &HashMap<VarId, ExactRat>) -> Poly {
        self.substitute_with(|v| values.get(&v).map(|c| Poly::constant(c.clone())))
    }

    /// Splits `self` as `content * normalized`, where `normalized` has
    /// coprime integer coefficients and a positive order-least term.
    pub fn content_and_normalize(&self) -> Result<(ExactRat, Poly)> {
        let (_, lead) = self.trailing_term().ok_or(Error::ZeroPolynomial)?;
        let num_gcd = gcd_all(self.terms.values().map(|c| c.numer()));
        let den_lcm = lcm_all(self.terms.values().map(|c| c.denom()));
        let mut content = ExactRat::new(num_gcd, den_lcm);
        if lead.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        Ok((content, self.scale(&inv)))
    }

    /// Projective representative: `content_and_normalize().1`.
    pub fn normalized(&self) -> Result<Poly> {
        self.content_and_normalize().map(|(_, p)| p)
    }

    /// Exact multivariate division by leading-monomial cancellation.
    pub fn divide_exact(&self, divisor: &Poly) -> Result<Quotient> {
        let (lm_d, lc_d) = divisor.leading_term().ok_or(Error::ZeroDivisor)?;
        let (lm_d, lc_d) = (lm_d.clone(), lc_d.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            let Some(m) = lm_r.div(&lm_d) else {
                return Ok(Quotient::NotDivisible);
            };
            let c = lc_r / &lc_d;
            rem = &rem - &divisor.mul_term(&m, &c);
            quot.add_term(m, c);
        }
        Ok(Quotient::Exact(quot))
    }

    /// Collects coefficients with respect to the variables selected by
    /// `outer`: returns a map `outer-monomial -> polynomial in the rest`.
    pub fn collect_by(&self, outer: impl Fn(VarId) -> bool + Copy) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = m.restrict(outer);
            let rest = m.restrict(|v| !outer(v));
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// All variables that occur.
    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

impl From<VarId> for Poly {
    fn from(v: VarId) -> Self {
        Poly::var(v)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    /// Canonical text form: `{sign} {|coeff|} * {factors}` per term, terms
    /// ascending, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{sign} {}", c.abs())?;
            if !m.is_one() {
                write!(f, " * {m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Parses the canonical text form. Terms may come in any order and
    /// repeated monomials are summed.
    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks == ["0"] {
            return Ok(Poly::zero());
        }
        let mut out = Poly::zero();
        let mut i = 0;
        while i < toks.len() {
            let negative = match toks[i] {
                "+" => false,
                "-" => true,
                t => return Err(Error::Parse(format!("expected sign, found {t:?}"))),
            };
            let mut c = parse_rat(
                toks.get(i + 1)
                    .ok_or_else(|| Error::Parse("dangling sign".into()))?,
            )?;
            if negative {
                c = -c;
            }
            i += 2;
            let mut pairs = Vec::new();
            if toks.get(i) == Some(&"*") {
                i += 1;
                while i < toks.len() && toks[i] != "+" && toks[i] != "-" {
                    let (v, e) = match toks[i].split_once('^') {
                        Some((v, e)) => (
                            v,
                            e.parse::<u32>()
                                .map_err(|_| Error::Parse(format!("bad exponent in {:?}", toks[i])))?,
                        ),
                        None => (toks[i], 1),
                    };
                    pairs.push((v.parse::<VarId>()?, e));
                    i += 1;
                }
                if pairs.is_empty() {
                    return Err(Error::Parse("empty monomial after '*'".into()));
                }
            }
            out.add_term(Monomial::from_pairs(pairs), c);
        }
        Ok(out)
    }
}

/// Convenience: integer coefficient as an exact rational.
pub fn coeff(c: i64) -> ExactRat {
    ExactRat::from_integer(ExactInt::from(c))
}
