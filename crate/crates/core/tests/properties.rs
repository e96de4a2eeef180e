use std::sync::OnceLock;

use proptest::prelude::*;
use superhopf::kpoincare::*;
use superhopf::presentation::ElementParity;
use superhopf::{Bicrossproduct, BuildOptions, Element, GenId, HopfStructure, Presentation, Scalar, TensorSpace, Word};

fn built() -> &'static Bicrossproduct {
    static B: OnceLock<Bicrossproduct> = OnceLock::new();
    B.get_or_init(|| {
        kappa_bundle(&SpinorConventions::default(), &KappaConventions::default())
            .build(&BuildOptions { bypass_checks: true, ..Default::default() })
            .unwrap()
    })
}

fn superspace() -> &'static HopfStructure {
    static H: OnceLock<HopfStructure> = OnceLock::new();
    H.get_or_init(make_chiral_superspace)
}

fn lorentz() -> &'static HopfStructure {
    static H: OnceLock<HopfStructure> = OnceLock::new();
    H.get_or_init(make_super_lorentz)
}

fn scalar(max_exp: i32) -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3..=max_exp, -6i64..6, 1i64..5, -6i64..6, 1i64..5), 0..4).prop_map(|ts| {
        ts.into_iter().fold(Scalar::zero(), |acc, (e, rn, rd, im, id)| &acc + &Scalar::gaussian(rn, rd, im, id, e))
    })
}

fn word(n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..n as GenId, 0..=max_len).prop_map(Word)
}

fn element(p: &Presentation, max_len: usize) -> impl Strategy<Value = Element> {
    let n = p.num_generators();
    prop::collection::vec((word(n, max_len), -3i64..4), 1..4).prop_map(|ts| {
        let mut e = Element::zero();
        for (w, c) in ts {
            e.add_term(w, Scalar::from_int(c));
        }
        e
    })
}

/// Single normal words, which are homogeneous.
fn homogeneous(p: &'static Presentation, max_len: usize) -> impl Strategy<Value = Element> {
    word(p.num_generators(), max_len).prop_map(move |w| p.normal_form_word(&w)).prop_filter("nonzero", |e| !e.is_zero())
}

fn odd(p: &Presentation, e: &Element) -> bool {
    matches!(p.element_parity(e), ElementParity::Odd)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scalar_ring_laws(a in scalar(2), b in scalar(2), c in scalar(2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!(a.terms().all(|(_, g)| !g.is_zero()));
    }

    #[test]
    fn monomials_invert(e in -4i32..4, rn in -6i64..6, rd in 1i64..5, im in -6i64..6, id in 1i64..5) {
        let m = Scalar::gaussian(rn, rd, im, id, e);
        prop_assume!(!m.is_zero());
        prop_assert!((&m * &m.invert_monomial().unwrap()).is_one());
    }

    #[test]
    fn classical_limit_is_a_homomorphism(a in scalar(0), b in scalar(0)) {
        let lim = |x: &Scalar| x.classical_limit().unwrap();
        prop_assert_eq!(lim(&(&a + &b)), &lim(&a) + &lim(&b));
        prop_assert_eq!(lim(&(&a * &b)), &lim(&a) * &lim(&b));
    }

    #[test]
    fn normal_form_is_idempotent(x in element(built().algebra(), 4)) {
        let p = built().algebra();
        let n = p.normal_form(&x);
        prop_assert_eq!(p.normal_form(&n), n.clone());
        prop_assert!(n.iter().all(|(w, _)| p.is_normal(w)));
    }

    #[test]
    fn multiplication_is_associative(
        x in element(built().algebra(), 2),
        y in element(built().algebra(), 2),
        z in element(built().algebra(), 2),
    ) {
        let p = built().algebra();
        let (x, y, z) = (p.normal_form(&x), p.normal_form(&y), p.normal_form(&z));
        prop_assert_eq!(p.mul(&p.mul(&x, &y), &z), p.mul(&x, &p.mul(&y, &z)));
    }

    #[test]
    fn lorentz_factor_supercommutes(a in homogeneous(lorentz().algebra(), 3), b in homogeneous(lorentz().algebra(), 3)) {
        let p = lorentz().algebra();
        let sign = if odd(p, &a) && odd(p, &b) { -1 } else { 1 };
        prop_assert_eq!(p.mul(&a, &b), p.mul(&b, &a).scale(&Scalar::from_int(sign)));
    }

    #[test]
    fn tensor_sign_kernel(
        a in homogeneous(superspace().algebra(), 2),
        b in homogeneous(lorentz().algebra(), 2),
        c in homogeneous(superspace().algebra(), 2),
        d in homogeneous(lorentz().algebra(), 2),
    ) {
        let (p, q) = (superspace().algebra(), lorentz().algebra());
        let space = TensorSpace::new(vec![p.clone(), q.clone()]);
        let lhs = space.from_elements(&[&a, &b]).mul(&space.from_elements(&[&c, &d])).unwrap();
        let sign = if odd(q, &b) && odd(p, &c) { -1 } else { 1 };
        let rhs = space.from_elements(&[&p.mul(&a, &c), &q.mul(&b, &d)]).scale(&Scalar::from_int(sign));
        prop_assert_eq!(lhs.terms(), rhs.terms());
    }

    #[test]
    fn tensor_product_is_associative_and_unital(
        xs in prop::collection::vec((homogeneous(superspace().algebra(), 2), homogeneous(lorentz().algebra(), 2)), 3),
    ) {
        let space = TensorSpace::new(vec![superspace().algebra().clone(), lorentz().algebra().clone()]);
        let t: Vec<_> = xs.iter().map(|(a, b)| space.from_elements(&[a, b])).collect();
        let left = t[0].mul(&t[1]).unwrap().mul(&t[2]).unwrap();
        let right = t[0].mul(&t[1].mul(&t[2]).unwrap()).unwrap();
        prop_assert_eq!(left.terms(), right.terms());
        let (lu, ru) = (space.unit().mul(&t[0]).unwrap(), t[0].mul(&space.unit()).unwrap());
        prop_assert_eq!(lu.terms(), t[0].terms());
        prop_assert_eq!(ru.terms(), t[0].terms());
    }

    #[test]
    fn graded_flip_is_an_involutive_algebra_map(
        xs in prop::collection::vec((homogeneous(superspace().algebra(), 2), homogeneous(lorentz().algebra(), 2)), 2),
    ) {
        let space = TensorSpace::new(vec![superspace().algebra().clone(), lorentz().algebra().clone()]);
        let t: Vec<_> = xs.iter().map(|(a, b)| space.from_elements(&[a, b])).collect();
        let f = t[0].graded_flip(0).unwrap();
        let back = f.graded_flip(0).unwrap();
        prop_assert_eq!(back.terms(), t[0].terms());
        let product = t[0].mul(&t[1]).unwrap().graded_flip(0).unwrap();
        let flipped = f.mul(&t[1].graded_flip(0).unwrap()).unwrap();
        prop_assert_eq!(product.terms(), flipped.terms());
    }

    #[test]
    fn coproduct_is_multiplicative_on_the_supergroup(x in element(built().algebra(), 2), y in element(built().algebra(), 2)) {
        let h = built().hopf();
        let p = h.algebra();
        let (x, y) = (p.normal_form(&x), p.normal_form(&y));
        let lhs = h.coproduct(&p.mul(&x, &y));
        let rhs = h.coproduct(&x).mul(&h.coproduct(&y)).unwrap();
        prop_assert_eq!(lhs.terms(), rhs.terms());
    }

    #[test]
    fn counit_is_a_character(x in element(built().algebra(), 3), y in element(built().algebra(), 3)) {
        let h = built().hopf();
        let p = h.algebra();
        let (x, y) = (p.normal_form(&x), p.normal_form(&y));
        prop_assert_eq!(h.counit(&p.mul(&x, &y)), &h.counit(&x) * &h.counit(&y));
        prop_assert_eq!(h.counit(&h.antipode(&x)), h.counit(&x));
    }

    #[test]
    fn odd_letters_occur_at_most_once(w in prop::collection::vec(0usize..4, 2..7)) {
        let p = built().algebra();
        let names = ["t1", "t2", "tb1", "tb2"];
        let odd = names.map(|n| p.gen(n).unwrap());
        let factors: Vec<&Element> = w.iter().map(|&i| &odd[i]).collect();
        for (word, _) in p.product(&factors).iter() {
            for n in names {
                let g = p.id(n).unwrap();
                prop_assert!(word.0.iter().filter(|&&x| x == g).count() <= 1, "{}", p.render_word(word));
            }
        }
    }
}

#[test]
fn top_odd_monomial_survives() {
    let p = built().algebra();
    let odd = ["t1", "t2", "tb1", "tb2"].map(|n| p.gen(n).unwrap());
    let top = p.product(&odd.iter().collect::<Vec<_>>());
    assert!(!top.is_zero());
    let (t1, t2, tb1, tb2) = (p.id("t1").unwrap(), p.id("t2").unwrap(), p.id("tb1").unwrap(), p.id("tb2").unwrap());
    assert!(top.iter().any(|(w, _)| w.0 == vec![t1, t2, tb1, tb2]));
}

#[test]
fn pauli_matrices_anticommute() {
    let conv = SpinorConventions::default();
    for i in 1..4 {
        for j in 1..4 {
            for r in 0..2 {
                for c in 0..2 {
                    let mut s = Scalar::zero();
                    for k in 0..2 {
                        s = &s + &(&conv.sigma[i][r][k] * &conv.sigma[j][k][c]);
                        s = &s + &(&conv.sigma[j][r][k] * &conv.sigma[i][k][c]);
                    }
                    let expected = Scalar::from_int(if i == j && r == c { 2 } else { 0 });
                    assert_eq!(s, expected, "sigma {i} {j}");
                }
            }
        }
    }
}

#[test]
fn factor_tables_preserve_parity() {
    for h in [superspace(), lorentz(), built().hopf()] {
        let p = h.algebra();
        for g in 0..p.num_generators() as GenId {
            let is_odd = p.parity(g).is_odd();
            let s = &h.antipode_table()[g as usize];
            assert!(s.is_zero() || odd(p, s) == is_odd);
            if is_odd {
                assert!(h.counit_table()[g as usize].is_zero());
            }
            for (k, _) in h.coproduct_table()[g as usize].iter() {
                let total = k.iter().map(|w| p.word_parity(w).bit()).sum::<u8>() % 2;
                assert_eq!(total == 1, is_odd, "{}", p.gen_name(g));
            }
        }
    }
}

#[test]
fn built_algebra_keeps_factor_generators() {
    let b = built();
    let d = b.data();
    let n = d.h1().algebra().num_generators() + d.h2().algebra().num_generators();
    assert_eq!(b.algebra().num_generators(), n);
}
