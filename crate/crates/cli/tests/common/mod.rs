#![allow(dead_code)]

use chowform_core::exact::num::{int, rat};
use chowform_core::grassmann::pluecker_var;
use chowform_core::lattice::GroupElement;
use chowform_core::{ExactInt, ExactRat, Lattice, Monomial, Poly, VarId, Weight};
use num_traits::{One, Zero};
use rand::Rng;

pub fn zs(ids: &[u32]) -> Poly {
    ids.iter().fold(Poly::one(), |acc, &i| &acc * &Poly::var(VarId::Z(i)))
}

pub fn um(exps: &[u32]) -> Poly {
    Poly::term(Monomial::from_u_exponents(exps), rat(1))
}

/// Products of `Y_{ab}`, pairs written as two-digit numbers `ab`.
pub fn ys(pairs: &[usize]) -> Poly {
    pairs
        .iter()
        .fold(Poly::one(), |acc, &p| &acc * &pluecker_var(p / 10, p % 10).0)
}

fn signed_sum(center: Poly, plus: &[(Poly, Poly)], minus: &[(Poly, Poly)]) -> Poly {
    let mut p = center;
    for (c, m) in plus {
        p = &p + &(c * m);
    }
    for (c, m) in minus {
        p = &p - &(c * m);
    }
    p
}

/// det K(z,u) for the hexagon, typed from its published display.
pub fn dp3_det() -> Poly {
    let center = &(&(&zs(&[2, 8, 12]) + &zs(&[3, 9, 10])) + &zs(&[5, 7, 11]))
        - &(&(&zs(&[6, 8, 10]) + &zs(&[1, 9, 11])) + &zs(&[4, 7, 12]));
    signed_sum(
        &center * &um(&[1, 1, 1, 1, 1, 1]),
        &[
            (zs(&[1, 8, 12]), um(&[1, 2, 2, 1, 0, 0])),
            (zs(&[4, 9, 10]), um(&[0, 0, 1, 2, 2, 1])),
            (zs(&[6, 7, 11]), um(&[2, 1, 0, 0, 1, 2])),
        ],
        &[
            (zs(&[5, 8, 10]), um(&[0, 1, 2, 2, 1, 0])),
            (zs(&[2, 9, 11]), um(&[1, 0, 0, 1, 2, 2])),
            (zs(&[3, 7, 12]), um(&[2, 2, 1, 0, 0, 1])),
        ],
    )
}

/// det K^c(y(z),u) for the hexagon, in Plücker variables.
pub fn dp3_chow_display() -> Poly {
    let center = &(&(&ys(&[56, 24, 13]) + &ys(&[12, 46, 35])) + &ys(&[34, 62, 51]))
        - &(&(&ys(&[61, 24, 35]) + &ys(&[23, 46, 51])) + &ys(&[45, 62, 13]));
    signed_sum(
        &center * &um(&[2, 2, 2, 2, 2, 2]),
        &[
            (ys(&[23, 24, 13]), um(&[2, 1, 1, 2, 3, 3])),
            (ys(&[45, 46, 35]), um(&[3, 3, 2, 1, 1, 2])),
            (ys(&[61, 62, 51]), um(&[1, 2, 3, 3, 2, 1])),
        ],
        &[
            (ys(&[34, 24, 35]), um(&[3, 2, 1, 1, 2, 3])),
            (ys(&[56, 46, 51]), um(&[2, 3, 3, 2, 1, 1])),
            (ys(&[12, 62, 13]), um(&[1, 1, 2, 3, 3, 2])),
        ],
    )
}

pub fn dp3_ea() -> Poly {
    let plus = [um(&[2, 1, 1, 2, 3, 3]), um(&[3, 3, 2, 1, 1, 2]), um(&[1, 2, 3, 3, 2, 1])];
    let minus = [um(&[3, 2, 1, 1, 2, 3]), um(&[2, 3, 3, 2, 1, 1]), um(&[1, 1, 2, 3, 3, 2])];
    let p = plus.iter().fold(Poly::zero(), |acc, m| &acc + m);
    minus.iter().fold(p, |acc, m| &acc - m)
}

/// `u1 ... u6`, then `u1u2 - u4u5`, `u3u4 - u1u6`, `u5u6 - u2u3`.
pub fn dp3_factors() -> Vec<Poly> {
    let mut f: Vec<Poly> = (1..=6).map(|i| Poly::var(VarId::U(i))).collect();
    f.push(&um(&[1, 1, 0, 0, 0, 0]) - &um(&[0, 0, 0, 1, 1, 0]));
    f.push(&um(&[0, 0, 1, 1, 0, 0]) - &um(&[1, 0, 0, 0, 0, 1]));
    f.push(&um(&[0, 0, 0, 0, 1, 1]) - &um(&[0, 1, 1, 0, 0, 0]));
    f
}

pub fn random_nonzero_rat(rng: &mut impl Rng, bound: i64) -> ExactRat {
    loop {
        let num = rng.gen_range(-bound..=bound);
        if num != 0 {
            return ExactRat::new(int(num), int(rng.gen_range(1..=bound)));
        }
    }
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

pub fn sample_group(l: &Lattice, rng: &mut impl Rng) -> GroupElement {
    l.sample_group_element(&random_kernel_vector(l, rng), &random_t(rng)).unwrap()
}

/// A point of `ker χ`: `t^w` with `w · a_0 = 0`, or `(-1)^w` with `w · a_0`
/// even when no nonzero kernel vector is orthogonal to `a_0`.
pub fn sample_character_kernel(l: &Lattice, a0: &Weight, rng: &mut impl Rng) -> GroupElement {
    if l.kernel_basis().len() >= 2 {
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
        if (&d % int(2)).is_zero() {
            return l.sample_group_element(&w, &rat(-1)).unwrap();
        }
    }
}

pub fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Runs the CLI in-process on `args` (without the program name).
pub fn cli(args: &[&str]) -> chowform_cli::Outcome {
    chowform_cli::run(std::iter::once("chowform").chain(args.iter().copied()))
}
