use mirabolic::scalar::Scalar;
use mirabolic::uea::{e, verify_minor_family, Algebra, Element, Generator, MINOR_IDENTITY_TAGS};
use proptest::prelude::*;

#[test]
fn minor_families_hold_up_to_rank_four() {
    for n in 1..=4 {
        for tag in MINOR_IDENTITY_TAGS {
            let rep = verify_minor_family(tag, n, 3).unwrap();
            assert!(rep.holds, "{tag} at N={n}: {:?}", rep.residual);
        }
    }
}

fn generator(n: u8) -> impl Strategy<Value = Generator> {
    (1..=n, 1..=n).prop_map(|(i, j)| e(i, j))
}

fn word(n: u8) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(generator(n), 0..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn product_is_associative(a in word(3), b in word(3), c in word(3)) {
        let alg = Algebra::gl(3);
        let (a, b, c) = (
            Element::word(alg, &a).unwrap(),
            Element::word(alg, &b).unwrap(),
            Element::word(alg, &c).unwrap(),
        );
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn normal_form_is_idempotent(w in word(3)) {
        let alg = Algebra::gl(3);
        let x = Element::word(alg, &w).unwrap();
        let again = Element::from_terms(alg, x.terms().iter().map(|(m, c)| (m.clone(), c.clone()))).unwrap();
        prop_assert!(x.terms().keys().all(|m| m.is_sorted()));
        prop_assert_eq!(x, again);
    }

    #[test]
    fn ad_is_scaled_commutator(xi in generator(3), w in word(3)) {
        let alg = Algebra::gl(3);
        let a = Element::word(alg, &w).unwrap();
        let oracle = Element::gen(alg, xi).unwrap().commutator(&a).unwrap().scale(&(Scalar::one() / Scalar::hbar()));
        prop_assert_eq!(a.ad(xi).unwrap(), oracle);
    }

    #[test]
    fn mirabolic_is_closed(w in prop::collection::vec((1u8..=3, 1u8..=2).prop_map(|(i, j)| e(i, j)), 0..=3)) {
        let alg = Algebra::mirabolic(3);
        let x = Element::word(alg, &w).unwrap();
        prop_assert!(x.terms().keys().all(|m| m.factors().iter().all(|g| g.j < 3)));
    }
}

#[test]
fn algebra_tags_are_enforced() {
    use mirabolic::uea::UeaError;
    let m = Algebra::mirabolic(3);
    assert_eq!(Element::gen(m, e(1, 3)), Err(UeaError::NotInAlgebra(e(1, 3))));
    let x = Element::gen(Algebra::gl(3), e(1, 2)).unwrap();
    let y = Element::gen(m, e(1, 2)).unwrap();
    assert_eq!(x.mul(&y), Err(UeaError::AlgebraMismatch));
}
