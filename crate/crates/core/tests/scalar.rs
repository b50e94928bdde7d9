use std::collections::BTreeMap;

use mirabolic::extremal::Coeff;
use mirabolic::scalar::{parse_scalar, BigRational, Param, Poly, Scalar};
use proptest::prelude::*;

const VARS: [Param; 3] = [Param::Hbar, Param::U(1), Param::Lambda(1)];

fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=1, 0u32..=1), 1..=4).prop_map(|ts| {
        let mut s = Scalar::zero();
        for (c, a, b, d) in ts {
            let t = &(&Scalar::hbar().pow(a) * &Scalar::param(VARS[1]).pow(b)) * &Scalar::param(VARS[2]).pow(d);
            s = &s + &t.scale_int(c);
        }
        s
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_map(|(a, b)| if b.is_zero() { a } else { &a / &b })
}

fn point() -> impl Strategy<Value = [i64; 3]> {
    [(-50i64..50), (-50i64..50), (-50i64..50)]
}

fn eval(s: &Scalar, pt: [i64; 3]) -> Option<BigRational> {
    s.eval_rational(&|p| VARS.iter().position(|&v| v == p).map(|i| BigRational::from_integer(pt[i].into())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), pt in point()) {
        let (Some(x), Some(y)) = (eval(&a, pt), eval(&b, pt)) else { return Ok(()) };
        prop_assert_eq!(eval(&(&a + &b), pt), Some(&x + &y));
        prop_assert_eq!(eval(&(&a * &b), pt), Some(&x * &y));
    }

    #[test]
    fn canonical_form(a in scalar(), b in scalar()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a / &b) * &b, a.clone());
        let d = a.denom();
        prop_assert!(d.lead_coeff() == BigRational::from_integer(1.into()));
    }

    #[test]
    fn printing_round_trips(a in scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn product_rule(a in scalar(), b in scalar()) {
        for p in VARS {
            let lhs = (&a * &b).derivative(p);
            let rhs = &(&a.derivative(p) * &b) + &(&a * &b.derivative(p));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn series_truncation(a in scalar()) {
        let Ok(s) = a.h_series(3) else { return Ok(()) };
        let mut sum = Scalar::zero();
        for (k, c) in s.iter().enumerate() {
            prop_assert!(!c.depends_on(Param::Hbar));
            sum = &sum + &(c * &Scalar::hbar().pow(k as u32));
        }
        prop_assert!((&a - &sum).h_valuation() > 3);
    }

    #[test]
    fn translate_matches_substitute(a in scalar(), k in -3i64..=3) {
        let shift = Poly::var(Param::Hbar).scale(&BigRational::from_integer(k.into()));
        let mut b = BTreeMap::new();
        b.insert(Param::Lambda(1), &Scalar::param(Param::Lambda(1)) + &Scalar::from_poly(shift.clone()));
        prop_assert_eq!(a.translate(&[(Param::Lambda(1), shift)]), a.substitute(&b).unwrap());
    }

    #[test]
    fn linear_denominators_agree(ts in prop::collection::vec((-3i64..=3, -2i64..=2, 0u32..=2), 1..=5)) {
        let l = Poly::var(Param::Lambda(1));
        let h = Poly::var(Param::Hbar);
        let mut c = Coeff::zero();
        let mut s = Scalar::zero();
        for (num, shift, e) in ts {
            let f = l.add(&h.scale(&BigRational::from_integer(shift.into())));
            let mut x = Coeff::from_rational(BigRational::from_integer(num.into()));
            let mut y = Scalar::from_int(num);
            for _ in 0..e {
                x = x.mul(&Coeff::inv_linear(&f).unwrap());
                y = &y / &Scalar::from_poly(f.clone());
            }
            c = c.add(&x.mul(&Coeff::from_poly(h.clone())));
            s = &s + &(&y * &Scalar::hbar());
        }
        prop_assert_eq!(c.to_scalar(), s.clone());
        let sh = [(Param::Lambda(1), h.clone())];
        prop_assert_eq!(c.translate(&sh).to_scalar(), s.translate(&sh));
    }
}
