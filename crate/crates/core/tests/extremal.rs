use std::collections::BTreeMap;

use mirabolic::extremal::*;
use mirabolic::matrix::ScalarMatrix;
use mirabolic::reps::Rep;
use mirabolic::scalar::{Param, Scalar};
use mirabolic::uea::{e, Algebra, Monomial};
use proptest::prelude::*;

fn negate_lambda(n: u8) -> BTreeMap<Param, Scalar> {
    (1..=n).map(|k| (Param::Lambda(k), -&Scalar::param(Param::Lambda(k)))).collect()
}

#[test]
fn annihilation_gl2_gl3() {
    for n in 2..=3 {
        for rep in [Rep::trivial(Algebra::gl(n)), Rep::vector(n)] {
            let depth = if n == 2 { 3 } else { 2 };
            let r = verify_extremal_annihilation(&rep, depth).unwrap();
            assert!(r.holds, "{}: {:?}", r.name, r.residual);
        }
    }
}

#[test]
fn vector_lowest_in_gl2() {
    let md = VermaModule::new(Rep::vector(2));
    let p = md.apply_extremal(&VermaClass::unit(1)).unwrap();
    assert!(md.act_gen(&p, e(1, 2)).unwrap().is_zero());
    // one series term: v2 − ℏ^{-1}(λ1 − λ2 + ℏ)^{-1}·f·e·v2, with e·v2 = ℏv1, f·v1 = ℏv2 + f[1]⊗v1
    let d = &Scalar::param(Param::Lambda(1)) - &Scalar::param(Param::Lambda(2));
    let den = &d + &Scalar::hbar();
    assert_eq!(p.terms().len(), 2);
    assert_eq!(p.terms()[&(Monomial::one(), 1)].to_scalar(), &d / &den);
    assert_eq!(p.terms()[&(Monomial::from_gen(e(2, 1)), 0)].to_scalar(), -&(&Scalar::one() / &den));
}

#[test]
fn expansion_orders() {
    for n in 2..=3 {
        let v = Rep::vector(n);
        let j = compute_dyn_twist(&v, &v).unwrap();
        let c0 = j.try_map(|x| x.h_series(1).map(|s| s[0].clone())).unwrap();
        assert!(c0.is_identity());
        let c1 = j.try_map(|x| x.h_series(1).map(|s| s[1].clone())).unwrap();
        let want = first_order_formula(&v, &v);
        assert_ne!(c1, want);
        // the first-order term is the printed formula with λ ↦ −λ
        let flipped = c1.try_map(|x| x.substitute(&negate_lambda(n))).unwrap();
        assert_eq!(flipped, want);
    }
}

#[test]
fn lowest_times_highest_is_fixed() {
    for n in 2..=3 {
        let v = Rep::vector(n);
        let j = compute_dyn_twist(&v, &v).unwrap();
        let d = v.dim;
        let col = (d - 1) * d;
        for r in 0..d * d {
            let want = if r == col { Scalar::one() } else { Scalar::zero() };
            assert_eq!(j.get(r, col), &want);
        }
    }
}

#[test]
fn twist_equation_and_qdybe() {
    for n in 2..=3 {
        let v = Rep::vector(n);
        let r = verify_dyn_twist_equation(&v, &v, &v).unwrap();
        assert!(r.holds, "{:?}", r.residual);
        let r = verify_qdybe(&v, &v, &v).unwrap();
        assert!(r.holds, "{:?}", r.residual);
    }
}

#[test]
fn right_convention_breaks_twist_equation() {
    let v = Rep::vector(2);
    let j = |a: &Rep, b: &Rep| compute_dyn_twist_with(a, b, LambdaConvention::Right);
    assert!(!dyn_twist_equation_with(&v, &v, &v, &j).unwrap().holds);
    assert!(qdybe_with(&v, &v, &v, &|a, b| dyn_r_matrix(a, b, &j)).unwrap().holds);
}

#[test]
fn trivial_reps() {
    let t = Rep::trivial(Algebra::gl(2));
    assert!(compute_dyn_twist(&t, &t).unwrap().is_identity());
    assert!(verify_dyn_twist_equation(&t, &t, &t).unwrap().holds);
    assert!(verify_qdybe(&t, &t, &t).unwrap().holds);
}

#[test]
fn perturbed_twist_fails() {
    let v = Rep::vector(2);
    let h2 = Scalar::hbar().pow(2);
    let j = |a: &Rep, b: &Rep| -> Result<ScalarMatrix, ExtremalError> {
        let mut m = compute_dyn_twist(a, b)?;
        if a.dim * b.dim > 1 {
            let x = m.get(1, 2).clone();
            m.set(1, 2, &x + &h2);
        }
        Ok(m)
    };
    assert!(!dyn_twist_equation_with(&v, &v, &v, &j).unwrap().holds);
}

#[test]
fn cdybe_with_sign_control() {
    assert!(verify_cdybe(2).holds);
    assert!(verify_cdybe(3).holds);
    assert!(!verify_cdybe_with(3, &|r| if r == (1, 2) { -1 } else { 1 }).holds);
}

#[test]
fn gauge_controls() {
    let v = Rep::vector(2);
    let id2 = ScalarMatrix::identity(2);
    let c = ScalarMatrix::from_fn(4, 4, |r, c| Scalar::from_int((r * 4 + c) as i64 % 3));
    assert!(gauge_check(&v, &v, &id2, &id2, &c, &c).unwrap().holds);

    let r1 = dyn_r_matrix(&v, &v, &|a, b| compute_dyn_twist(a, b)).unwrap();
    let at = |m: &ScalarMatrix| {
        let pt: BTreeMap<Param, Scalar> =
            [(Param::Lambda(1), Scalar::from_int(3)), (Param::Lambda(2), Scalar::from_int(-2))].into();
        m.try_map(|x| x.substitute(&pt)).unwrap()
    };
    assert!(!gauge_check(&v, &v, &id2, &id2, &r1, &at(&r1)).unwrap().holds);

    let s = ScalarMatrix::from_fn(2, 2, |r, c| match (r, c) {
        (0, 1) => Scalar::param(Param::Lambda(1)),
        (r, c) if r == c => Scalar::one(),
        _ => Scalar::zero(),
    });
    assert!(!gauge_check(&v, &v, &s, &s, &r1, &r1).unwrap().holds);
    assert!(matches!(
        gauge_check(&v, &v, &ScalarMatrix::zeros(2, 2), &id2, &c, &c),
        Err(ExtremalError::SingularS)
    ));
}

fn lower_word(n: u8) -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec((1..=n, 1..=n).prop_filter("lower", |(i, j)| i > j), 0..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn projector_is_idempotent_and_highest(w in lower_word(3), b in 0usize..3) {
        let md = VermaModule::new(Rep::vector(3));
        let m = Monomial::sorted(w.into_iter().map(|(i, j)| e(i, j)).collect());
        let p = md.apply_extremal(&VermaClass::basis(m, b)).unwrap();
        prop_assert_eq!(md.apply_extremal(&p).unwrap(), p.clone());
        for (i, j) in [(1, 2), (2, 3), (1, 3)] {
            prop_assert!(md.act_gen(&p, e(i, j)).unwrap().is_zero());
        }
    }
}
