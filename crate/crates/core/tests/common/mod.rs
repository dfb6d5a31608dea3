#![allow(dead_code)]

use chowform_core::exact::num::{int, rat, ratio};
use chowform_core::grassmann::pluecker_var;
use chowform_core::lattice::GroupElement;
use chowform_core::{ExactInt, ExactRat, Lattice, Monomial, Poly, PolyMatrix, VarId, Weight};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

pub fn z(i: u32) -> Poly {
    Poly::var(VarId::Z(i))
}

pub fn u(i: u32) -> Poly {
    Poly::var(VarId::U(i))
}

/// Product `z_{i1} z_{i2} ...`.
pub fn zs(ids: &[u32]) -> Poly {
    ids.iter().fold(Poly::one(), |acc, &i| &acc * &z(i))
}

/// `u^[a,b,...]`.
pub fn um(exps: &[u32]) -> Poly {
    Poly::term(Monomial::from_u_exponents(exps), rat(1))
}

/// `Y_{ab} Y_{cd} Y_{ef}` for pairs given as two-digit numbers `ab`.
pub fn ys(pairs: &[usize]) -> Poly {
    pairs
        .iter()
        .fold(Poly::one(), |acc, &p| &acc * &pluecker_var(p / 10, p % 10).0)
}

/// Leibniz expansion over all permutations.
pub fn leibniz(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Poly::zero();
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = Poly::one();
        for (i, &j) in p.iter().enumerate() {
            term = &term * &m[i][j];
        }
        if inversions % 2 == 1 {
            term = -term;
        }
        total += &term;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Fraction-free Gaussian elimination.
pub fn bareiss(m: &[Vec<ExactInt>]) -> ExactInt {
    let n = m.len();
    if n == 0 {
        return ExactInt::one();
    }
    let mut a: Vec<Vec<ExactInt>> = m.to_vec();
    let mut sign = ExactInt::one();
    let mut prev = ExactInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return ExactInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `d_1 d_2` of a rank-2 `2 × N` integer matrix equals the gcd of its 2×2 minors.
pub fn gcd_of_minors(rows: &[Vec<i64>]) -> ExactInt {
    let n = rows[0].len();
    let mut g = ExactInt::zero();
    for i in 0..n {
        for j in i + 1..n {
            let m = int(rows[0][i]) * int(rows[1][j]) - int(rows[0][j]) * int(rows[1][i]);
            g = g.gcd(&m);
        }
    }
    g
}

pub fn random_rat(rng: &mut impl Rng, bound: i64) -> ExactRat {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=bound);
    ratio(num, den)
}

pub fn random_nonzero_rat(rng: &mut impl Rng, bound: i64) -> ExactRat {
    loop {
        let r = random_rat(rng, bound);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn poly_matrix(rows: Vec<Vec<Poly>>) -> PolyMatrix {
    PolyMatrix::from_rows(rows).unwrap()
}

pub fn random_point(n: usize, rng: &mut impl Rng) -> Vec<ExactRat> {
    (0..n).map(|_| random_nonzero_rat(rng, 7)).collect()
}

pub fn random_kernel_vector(l: &Lattice, rng: &mut impl Rng) -> Vec<ExactInt> {
    let basis = l.kernel_basis();
    loop {
        let mut w = vec![ExactInt::zero(); l.n()];
        for b in &basis {
            let c = int(rng.gen_range(-2..=2));
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi += &c * bi;
            }
        }
        if w.iter().any(|x| !x.is_zero()) {
            return w;
        }
    }
}

pub fn random_t(rng: &mut impl Rng) -> ExactRat {
    loop {
        let t = random_nonzero_rat(rng, 5);
        if !t.is_one() && !(-&t).is_one() {
            return t;
        }
    }
}

/// `ξ = t^w` for a random kernel vector `w`.
pub fn sample_group(l: &Lattice, rng: &mut impl Rng) -> GroupElement {
    l.sample_group_element(&random_kernel_vector(l, rng), &random_t(rng)).unwrap()
}

/// A rational point with `χ(ξ) = 1`: `t^w` with `w · a_0 = 0`, or `(-1)^w`
/// with `w · a_0` even when the kernel has no vector orthogonal to `a_0`.
pub fn sample_character_kernel(l: &Lattice, a0: &Weight, rng: &mut impl Rng) -> GroupElement {
    let basis = l.kernel_basis();
    if basis.len() >= 2 {
        loop {
            let k1 = random_kernel_vector(l, rng);
            let k2 = random_kernel_vector(l, rng);
            let (c1, c2) = (a0.dot(&k1), a0.dot(&k2));
            let w: Vec<ExactInt> = k1.iter().zip(&k2).map(|(a, b)| &c2 * a - &c1 * b).collect();
            if w.iter().any(|x| !x.is_zero()) {
                return l.sample_group_element(&w, &random_t(rng)).unwrap();
            }
        }
    }
    loop {
        let w = random_kernel_vector(l, rng);
        let d = a0.dot(&w);
        if d.is_zero() {
            return l.sample_group_element(&w, &random_t(rng)).unwrap();
        }
        if d.is_even() {
            return l.sample_group_element(&w, &rat(-1)).unwrap();
        }
    }
}

/// `t^w` with `w · a_0 = 0`: a point of the identity component of `ker χ`.
/// `None` when that component is trivial.
pub fn sample_character_kernel_connected(l: &Lattice, a0: &Weight, rng: &mut impl Rng) -> Option<GroupElement> {
    let basis = l.kernel_basis();
    match basis.as_slice() {
        [b] if !a0.dot(b).is_zero() => None,
        [b] => Some(l.sample_group_element(b, &random_t(rng)).unwrap()),
        _ => Some(sample_character_kernel(l, a0, rng)),
    }
}
