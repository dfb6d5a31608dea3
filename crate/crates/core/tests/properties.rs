mod common;

use std::collections::{BTreeSet, HashMap};

use chowform_core::exact::num::{int, rat};
use chowform_core::grassmann::{
    bst_hom, eval_pluecker_at, pluecker_relation, pluecker_relation_check, pluecker_var, y_substitution,
};
use chowform_core::{fixtures, ExactRat, GrassmannPoint, Lattice, Line, Monomial, Poly, Quotient, VarId, Weight};
use common::{random_nonzero_rat, random_rat};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn var_strategy() -> impl Strategy<Value = VarId> {
    prop_oneof![
        (1u32..5).prop_map(VarId::Z),
        (1u32..5).prop_map(VarId::U),
        (1u8..3, 1u32..4).prop_map(|(r, c)| VarId::Y(r, c)),
    ]
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    let coeff = (-5i64..=5, 1i64..=3).prop_map(|(n, d)| ExactRat::new(n.into(), d.into()));
    let term = (coeff, prop::collection::vec((var_strategy(), 1u32..3), 0..3))
        .prop_map(|(c, vars)| Poly::term(Monomial::from_pairs(vars), c));
    prop::collection::vec(term, 0..4).prop_map(|ts| ts.iter().fold(Poly::zero(), |a, t| &a + t))
}

fn z_poly_strategy(edges: u32) -> impl Strategy<Value = Poly> {
    let term = (-4i64..=4, prop::collection::vec((1..=edges, 1u32..3), 0..3))
        .prop_map(|(c, vars)| {
            Poly::term(
                Monomial::from_pairs(vars.into_iter().map(|(i, e)| (VarId::Z(i), e))),
                rat(c),
            )
        });
    prop::collection::vec(term, 0..4).prop_map(|ts| ts.iter().fold(Poly::zero(), |a, t| &a + t))
}

/// Rank-2 integer `2 × N` matrices with zero row sums and no zero column.
fn lattice_strategy() -> impl Strategy<Value = Lattice> {
    (3usize..=6)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-3i64..=3, n - 1),
                prop::collection::vec(-3i64..=3, n - 1),
            )
        })
        .prop_filter_map("invalid lattice", |(a, b)| {
            let close = |mut v: Vec<i64>| {
                let s: i64 = v.iter().sum();
                v.push(-s);
                v
            };
            Lattice::from_rows(&[close(a), close(b)]).ok()
        })
}

fn unimodular_strategy() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop::collection::vec((0u8..4, -3i64..=3), 1..5).prop_map(|ops| {
        let mut g = [[1i64, 0], [0, 1]];
        for (kind, k) in ops {
            let e = match kind {
                0 => [[1, k], [0, 1]],
                1 => [[1, 0], [k, 1]],
                2 => [[0, 1], [1, 0]],
                _ => [[-1, 0], [0, 1]],
            };
            g = [
                [e[0][0] * g[0][0] + e[0][1] * g[1][0], e[0][0] * g[0][1] + e[0][1] * g[1][1]],
                [e[1][0] * g[0][0] + e[1][1] * g[1][0], e[1][0] * g[0][1] + e[1][1] * g[1][1]],
            ];
        }
        g
    })
}

fn ray_groups(l: &Lattice) -> BTreeSet<Vec<usize>> {
    l.secondary_fan().rays.into_iter().map(|r| r.members).collect()
}

fn chamber_lists(l: &Lattice) -> BTreeSet<Vec<(usize, usize)>> {
    l.secondary_fan()
        .chambers
        .into_iter()
        .map(|c| c.pairs.into_iter().collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn text_round_trip(a in poly_strategy()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Poly>().unwrap(), a);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), images in prop::collection::vec(poly_strategy(), 4)) {
        let map: HashMap<VarId, Poly> = [VarId::Z(1), VarId::U(2), VarId::Y(1, 3), VarId::Z(4)]
            .into_iter()
            .zip(images)
            .collect();
        prop_assert_eq!((&a * &b).substitute(&map), &a.substitute(&map) * &b.substitute(&map));
        prop_assert_eq!((&a + &b).substitute(&map), &a.substitute(&map) + &b.substitute(&map));
    }

    #[test]
    fn exact_division_recovers_factor(a in poly_strategy(), b in poly_strategy()) {
        prop_assume!(!b.is_zero());
        let q = (&a * &b).divide_exact(&b).unwrap();
        prop_assert_eq!(q, Quotient::Exact(a));
    }

    #[test]
    fn normalization_is_projective(a in poly_strategy(), n in 1i64..7, d in 1i64..7, neg: bool) {
        prop_assume!(!a.is_zero());
        let s = ExactRat::new((if neg { -n } else { n }).into(), d.into());
        let (c, na) = a.content_and_normalize().unwrap();
        prop_assert_eq!(na.scale(&c), a.clone());
        prop_assert_eq!(a.scale(&s).normalized().unwrap(), na.clone());
        prop_assert!(na.has_integer_coefficients());
        prop_assert!(na.trailing_term().unwrap().1 > &ExactRat::zero());
    }

    #[test]
    fn a0_is_chamber_independent(l in lattice_strategy()) {
        let fan = l.secondary_fan();
        let raws: Vec<Weight> = fan
            .chambers
            .iter()
            .map(|c| l.a0_raw(&c.pairs))
            .collect();
        for w in &raws {
            prop_assert!(l.weight_class_eq(w, &raws[0]));
        }
        prop_assert!(l.a0().is_ok());
    }

    #[test]
    fn basis_change_invariance(
        l in lattice_strategy(),
        g in unimodular_strategy(),
        w1 in prop::collection::vec(-3i64..=3, 6),
        w2 in prop::collection::vec(-3i64..=3, 6),
    ) {
        let lg = l.transformed(g).unwrap();
        let (a, ag) = (l.a0().unwrap(), lg.a0().unwrap());
        prop_assert!(l.weight_class_eq(&a.class, &ag.class));
        prop_assert!(lg.weight_class_eq(&a.class, &ag.class));
        prop_assert_eq!(ray_groups(&l), ray_groups(&lg));
        prop_assert_eq!(chamber_lists(&l), chamber_lists(&lg));
        prop_assert_eq!(l.quotient_structure().torsion_order, lg.quotient_structure().torsion_order);
        let n = l.n();
        let (w1, w2) = (Weight::from_ints(&w1[..n]), Weight::from_ints(&w2[..n]));
        prop_assert_eq!(l.weight_class_eq(&w1, &w2), lg.weight_class_eq(&w1, &w2));
    }

    #[test]
    fn hbar_is_a_class_function(l in lattice_strategy(), w in prop::collection::vec(-5i64..=5, 6), x in -4i64..=4, y in -4i64..=4) {
        let n = l.n();
        let w = Weight::from_ints(&w[..n]);
        let shift: Vec<_> = (0..n)
            .map(|j| int(x) * &l.matrix()[(0, j)] + int(y) * &l.matrix()[(1, j)])
            .collect();
        let moved = &w + &Weight::new(shift);
        prop_assert!(l.weight_class_eq(&w, &moved));
        prop_assert_eq!(w.hbar(), moved.hbar());
    }

    #[test]
    fn eval_at_lattice_point_is_bst(p in z_poly_strategy(12)) {
        let f = fixtures::dp3();
        let via_y = eval_pluecker_at(&y_substitution(&f.quiver, &p).unwrap(), GrassmannPoint::Lattice(&f.lattice));
        prop_assert_eq!(via_y, bst_hom(&f.lattice, &f.quiver, &p).unwrap());
    }

    #[test]
    fn eval_at_lattice_point_is_bst_triangle(p in z_poly_strategy(3)) {
        let f = fixtures::triangle();
        let via_y = eval_pluecker_at(&y_substitution(&f.quiver, &p).unwrap(), GrassmannPoint::Lattice(&f.lattice));
        prop_assert_eq!(via_y, bst_hom(&f.lattice, &f.quiver, &p).unwrap());
    }

    #[test]
    fn points_on_line_through(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=7);
        let u: Vec<ExactRat> = (0..n).map(|_| random_rat(&mut rng, 9)).collect();
        let v: Vec<ExactRat> = (0..n).map(|_| random_rat(&mut rng, 9)).collect();
        if let Ok(line) = Line::through(u, v) {
            let (a, b) = (random_rat(&mut rng, 9), random_rat(&mut rng, 9));
            prop_assert!(line.contains_point(&line.point(&a, &b)));
        }
    }
}

#[test]
fn pluecker_relations_vanish_up_to_eight() {
    for n in 4..=8 {
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for m in 1..=n {
                        assert!(pluecker_relation_check(i, j, k, m), "({i},{j},{k},{m})");
                    }
                }
            }
        }
    }
    assert!(pluecker_relation(1, 2, 3, 4).is_zero());
    for k in 1..=8 {
        for m in 1..=8 {
            assert_eq!(pluecker_var(k, m).0, -pluecker_var(m, k).0);
        }
    }
}

/// Random Plücker polynomials of degree ≤ 3 in `N ≤ 6`: equal representatives
/// iff equal values at 25 random rank-2 matrices.
#[test]
fn injectivity_proxy() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let n = 6;
    let lines: Vec<Line> = (0..25)
        .map(|_| loop {
            let r1 = (0..n).map(|_| random_rat(&mut rng, 7)).collect();
            let r2 = (0..n).map(|_| random_rat(&mut rng, 7)).collect();
            if let Ok(l) = Line::new(r1, r2) {
                break l;
            }
        })
        .collect();
    let random_element = |rng: &mut ChaCha8Rng| {
        let mut p = Poly::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let deg = rng.gen_range(0..=3);
            let mut t = Poly::constant(rat(rng.gen_range(-3..=3)));
            for _ in 0..deg {
                let k = rng.gen_range(1..=n);
                let m = rng.gen_range(1..=n);
                t = &t * &pluecker_var(k, m).0;
            }
            p = &p + &t;
        }
        p
    };
    let mut equal_pairs = 0;
    for trial in 0..200 {
        let a = random_element(&mut rng);
        // Half the time compare against an equivalent element rewritten via a
        // three-term relation.
        let b = if trial % 2 == 0 {
            let (i, j, k, m) = (1, 2, 3, 4);
            &a + &(&pluecker_relation(i, j, k, m) * &pluecker_var(rng.gen_range(1..=n), 5).0)
        } else {
            random_element(&mut rng)
        };
        let same_rep = a == b;
        let same_values = lines.iter().all(|l| {
            eval_pluecker_at(&chowform_core::PlueckerElement(a.clone()), GrassmannPoint::Line(l))
                == eval_pluecker_at(&chowform_core::PlueckerElement(b.clone()), GrassmannPoint::Line(l))
        });
        assert_eq!(same_rep, same_values, "trial {trial}");
        if same_rep {
            equal_pairs += 1;
        }
    }
    assert!(equal_pairs >= 100);
}

#[test]
fn generic_points_are_off_the_line() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut off = 0;
    for _ in 0..50 {
        let u: Vec<ExactRat> = (0..5).map(|_| random_nonzero_rat(&mut rng, 9)).collect();
        let v: Vec<ExactRat> = (0..5).map(|_| random_nonzero_rat(&mut rng, 9)).collect();
        let w: Vec<ExactRat> = (0..5).map(|_| random_nonzero_rat(&mut rng, 9)).collect();
        let line = Line::through(u, v).unwrap();
        if !line.contains_point(&w) {
            off += 1;
        }
    }
    assert_eq!(off, 50);
}
