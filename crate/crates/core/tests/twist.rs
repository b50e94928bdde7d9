use mirabolic::reps::Rep;
use mirabolic::scalar::{hbar, u, Scalar};
use mirabolic::twist::*;
use mirabolic::uea::Subalgebra;

fn vec_m(n: u8) -> Rep {
    Rep::vector(n).restrict(Subalgebra::Mirabolic)
}

fn sym_u(n: u8) -> Vec<Scalar> {
    (1..n).map(u).collect()
}

fn timed<T>(label: &str, f: impl FnOnce() -> T) -> T {
    let t = std::time::Instant::now();
    let r = f();
    eprintln!("{label}: {:?}", t.elapsed());
    r
}

#[test]
fn twist_equation_vector_reps() {
    for n in [2u8, 3] {
        let v = vec_m(n);
        let rep = timed(&format!("twist eq N={n}"), || verify_twist_equation(&v, &v, &v, &sym_u(n)).unwrap());
        assert!(rep.holds, "{:?}", rep.residual);
    }
}

#[test]
fn qybe_vector_reps() {
    for n in [2u8, 3] {
        let v = vec_m(n);
        let rep = timed(&format!("qybe N={n}"), || verify_qybe(&v, &v, &v, &sym_u(n)).unwrap());
        assert!(rep.holds, "{:?}", rep.residual);
    }
}

#[test]
fn classical_limit() {
    for n in [2u8, 3, 4] {
        let uu = sym_u(n);
        let r = classical_cg(&uu).unwrap();
        assert!(verify_cg_recursion(&r, &uu).holds, "recursion N={n}");
        assert!(verify_cybe(&r, &vec_m(n)).holds, "cybe N={n}");
        let zero = vec![Scalar::zero(); n as usize - 1];
        assert_eq!(classical_cg(&zero).unwrap(), cg_zero_display(n), "r(0) N={n}");
        if n <= 3 {
            let v = vec_m(n);
            let rep = timed(&format!("semiclassical N={n}"), || semiclassical_compare(&v, &v, &uu).unwrap());
            assert!(rep.holds, "{:?}", rep.residual);
        }
    }
}

#[test]
fn closed_form_for_gl2() {
    let v = Rep::vector(2);
    let vv = v.tensor(&v).unwrap();
    let uu = [u(1)];
    assert_ne!(compute_twist(&vv, &v, &uu).unwrap(), gl2_closed_form(&vv, &v, &hbar()));
    for (a, b) in [(&v, &v), (&vv, &v), (&v, &vv), (&vv, &vv)] {
        let f = compute_twist(a, b, &uu).unwrap();
        assert_eq!(f, gl2_closed_form(a, b, &Scalar::one()), "{} x {}", a.name, b.name);
    }
}

#[test]
fn mixed_reps_rank_three() {
    let v = vec_m(3);
    let d = Rep::vector(3).dual().restrict(Subalgebra::Mirabolic);
    let uu = sym_u(3);
    assert!(verify_twist_equation(&v, &d, &v, &uu).unwrap().holds);
    assert!(verify_qybe(&d, &v, &d, &uu).unwrap().holds);
    assert!(semiclassical_compare(&v, &d, &uu).unwrap().holds);
}

#[test]
fn rank_four() {
    let v = vec_m(4);
    let uu = sym_u(4);
    assert!(timed("qybe N=4", || verify_qybe(&v, &v, &v, &uu).unwrap()).holds);
    assert!(timed("semiclassical N=4", || semiclassical_compare(&v, &v, &uu).unwrap()).holds);
    assert!(timed("twist eq N=4", || verify_twist_equation(&v, &v, &v, &uu).unwrap()).holds);
}

mod props {
    use super::*;
    use mirabolic::scalar::Param;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn rational_u(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
        prop::collection::vec((-9i64..=9, 1i64..=4), n).prop_map(|v| v.into_iter().map(|(p, q)| Scalar::frac(p, q)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn classical_family_at_rational_u(uu in rational_u(3)) {
            let r = classical_cg(&uu).unwrap();
            prop_assert!(verify_cg_recursion(&r, &uu).holds);
            prop_assert!(verify_cybe(&r, &vec_m(4)).holds);
            for &(x, y, _) in &r.wedge_terms() {
                prop_assert_eq!(omega(&uu, x, y), -&omega(&uu, y, x));
            }
        }

        #[test]
        fn twist_specializes(uu in rational_u(2)) {
            let v = vec_m(3);
            let f = compute_twist(&v, &v, &uu).unwrap();
            let at: BTreeMap<Param, Scalar> = uu.iter().enumerate().map(|(k, x)| (Param::U(k as u8 + 1), x.clone())).collect();
            let sym = compute_twist(&v, &v, &sym_u(3)).unwrap();
            prop_assert_eq!(sym.try_map(|x| x.substitute(&at)).unwrap(), f);
            prop_assert!(verify_twist_equation(&v, &v, &v, &uu).unwrap().holds);
        }
    }
}
