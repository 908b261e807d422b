use std::sync::Arc;

use hecke_core::lattice::Vector;
use hecke_core::scalar::rat;
use hecke_core::*;
use proptest::prelude::*;

fn algebra(name: &str) -> HeckeAlgebra {
    let d = RootDatum::build_preset(name).unwrap();
    let g = Arc::new(AffineWeylGroup::from_datum(d).unwrap());
    HeckeAlgebra::generic(g).unwrap()
}

fn vec2(r: i64) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-r..=r, 2).prop_map(|v| v.into_iter().collect())
}

fn preset() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["A2", "B2", "BnCn(2)", "G2", "GLn(2)"])
}

/// A short element `Σ c T_{w t_x}` with small integer coefficients.
fn small_elem(alg: &HeckeAlgebra, terms: &[(usize, Vector, i64)]) -> HeckeElem {
    let g = alg.group();
    let mut h = HeckeElem::zero();
    for (w, x, c) in terms {
        let w = w % g.finite().order();
        h.add_term(g.mul(&g.from_finite(w), &g.translation(x)), LaurentPoly::from_int(*c));
    }
    h
}

fn terms() -> impl Strategy<Value = Vec<(usize, Vector, i64)>> {
    prop::collection::vec((0usize..12, vec2(1), -2i64..=2), 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta_is_multiplicative(name in preset(), x in vec2(1), y in vec2(2)) {
        let b = Bernstein::new(&algebra(name)).unwrap();
        let prod = b.algebra().mul(&b.theta(&x), &b.theta(&y)).unwrap();
        prop_assert_eq!(prod, b.theta(&hecke_core::lattice::add(&x, &y)));
    }

    #[test]
    fn trace_is_central(name in preset(), a in terms(), c in terms()) {
        let alg = algebra(name);
        let (a, c) = (small_elem(&alg, &a), small_elem(&alg, &c));
        prop_assert_eq!(alg.tau_product(&a, &c), alg.tau_product(&c, &a));
    }

    #[test]
    fn star_reverses_products(name in preset(), a in terms(), c in terms()) {
        let alg = algebra(name);
        let (a, c) = (small_elem(&alg, &a), small_elem(&alg, &c));
        let lhs = alg.star(&alg.mul(&a, &c).unwrap());
        let rhs = alg.mul(&alg.star(&c), &alg.star(&a)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bernstein_round_trip(name in preset(), a in terms()) {
        let alg = algebra(name);
        let b = Bernstein::new(&alg).unwrap();
        let h = small_elem(&alg, &a);
        prop_assert_eq!(b.from_bernstein(&b.to_bernstein(&h)).unwrap(), h);
    }

    #[test]
    fn oracle_agrees_off_grid(name in preset(), k in vec2(3)) {
        let tg = TraceGen::new(&algebra(name)).unwrap();
        prop_assert_eq!(tg.trace_theta_partition(&k).unwrap(), tg.trace_theta_direct(&k).unwrap());
    }

    #[test]
    fn laplace_is_a_representation(
        a in terms(),
        c in terms(),
        n1 in 1i64..9, n2 in 1i64..9, d1 in 1i64..9, d2 in 1i64..9,
    ) {
        let alg = algebra("B2");
        let pr = Principal::new(&alg).unwrap();
        let p = pr.params(vec![rat(2, 1), rat(3, 1)]).unwrap();
        let t = TorusPoint::new(vec![rat(n1, d1), rat(-n2, d2)]).unwrap();
        let (a, c) = (small_elem(&alg, &a), small_elem(&alg, &c));
        let lhs = pr.laplace(&alg.mul(&a, &c).unwrap(), &t, &p).unwrap();
        let rhs = pr.laplace(&a, &t, &p).unwrap().mul(&pr.laplace(&c, &t, &p).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn intertwiner_conjugates_theta(name in preset(), x in vec2(2)) {
        let pr = Principal::new(&algebra(name)).unwrap();
        let alg = pr.algebra();
        let d = alg.group().datum();
        for i in 0..alg.group().finite().num_simple() {
            let r = pr.intertwiner_element(i).unwrap();
            let lhs = alg.mul(&r, &pr.bernstein().theta(&x)).unwrap();
            let rhs = alg.mul(&pr.bernstein().theta(&d.simple_reflect(i, &x)), &r).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
