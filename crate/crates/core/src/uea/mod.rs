//! PBW rewriting in `U_ℏ(gl_N)` and its mirabolic subalgebra, and the
//! quantum-minor calculus of the evaluation image of the Yangian.
//!
//! The defining relation is `xy − yx = ℏ[x, y]`. Generators are ordered
//! lower-triangular first, then diagonal, then upper-triangular, each class
//! lexicographically in `(i, j)`.

mod element;
mod generator;
mod identities;
mod minors;
mod rewrite;

pub use element::Element;
pub use generator::{bracket, e, Algebra, Generator, Subalgebra};
pub use identities::{
    minor_identity_instances, subsets, verify_minor_family, verify_minor_identity, MinorIdentity,
    MINOR_IDENTITY_TAGS,
};
pub use minors::{
    coefficient_in, comatrix_entry, l_entry, minor_generators, permutations, qchar_poly, qdet,
    quantum_minor, MinorSpec,
};
pub use rewrite::{degree_cap, mono_times_gen, mono_times_mono, normal_form_word, set_degree_cap, Monomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UeaError {
    #[error("monomial length exceeded the rewriting cap of {0}")]
    DegreeCapExceeded(usize),
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("generator {0} is not in the algebra")]
    NotInAlgebra(Generator),
    #[error("elements live in different algebras")]
    AlgebraMismatch,
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

/// `PBW normal form of a · b`.
pub fn normal_mul(a: &Element, b: &Element) -> Result<Element, UeaError> {
    a.mul(b)
}

/// `ad_ξ(a) = [ξ, a]`.
pub fn ad_action(xi: Generator, a: &Element) -> Result<Element, UeaError> {
    a.ad(xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{hbar, spectral, Scalar};

    fn gl(n: u8) -> Algebra {
        Algebra::gl(n)
    }

    fn g(alg: Algebra, i: u8, j: u8) -> Element {
        Element::gen(alg, e(i, j)).unwrap()
    }

    #[test]
    fn defining_relation() {
        let a = gl(2);
        let lhs = g(a, 1, 2).mul(&g(a, 2, 1)).unwrap();
        let rhs = Element::word(a, &[e(2, 1), e(1, 2)])
            .unwrap()
            .add(&g(a, 1, 1).sub(&g(a, 2, 2)).unwrap().scale(&hbar()))
            .unwrap();
        assert_eq!(lhs, rhs);
        let m = lhs.terms().keys().find(|m| m.len() == 2).unwrap();
        assert_eq!(m.factors(), &[e(2, 1), e(1, 2)]);
    }

    #[test]
    fn unit_law() {
        let a = gl(3);
        let x = Element::word(a, &[e(1, 3), e(3, 2), e(2, 1)]).unwrap();
        assert_eq!(Element::one(a).mul(&x).unwrap(), x);
        assert_eq!(x.mul(&Element::one(a)).unwrap(), x);
    }

    #[test]
    fn associativity_example() {
        let a = gl(3);
        let left = g(a, 1, 2).mul(&g(a, 2, 3)).unwrap().mul(&g(a, 3, 1)).unwrap();
        let right = g(a, 1, 2).mul(&g(a, 2, 3).mul(&g(a, 3, 1)).unwrap()).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn ad_examples() {
        let a = gl(2);
        let x = g(a, 1, 2).ad(e(2, 1)).unwrap();
        assert_eq!(x, g(a, 2, 2).sub(&g(a, 1, 1)).unwrap());
        assert!(g(a, 1, 1).ad(e(1, 1)).unwrap().is_zero());
        // Leibniz against ℏ^{-1}(ξa − aξ)
        let w = Element::word(a, &[e(1, 1), e(1, 2)]).unwrap();
        let xi = g(a, 2, 1);
        let oracle = xi.commutator(&w).unwrap().scale(&(Scalar::one() / hbar()));
        assert_eq!(w.ad(e(2, 1)).unwrap(), oracle);
    }

    #[test]
    fn minor_examples() {
        let a = gl(2);
        let v = spectral(0);
        let m1 = quantum_minor(a, &MinorSpec::new(&[1], &[1], v.clone())).unwrap();
        assert_eq!(m1, g(a, 1, 1).add_scalar(&v));
        let rep = quantum_minor(a, &MinorSpec::new(&[1, 1], &[1, 2], v.clone())).unwrap();
        assert!(rep.is_zero());
        let full = quantum_minor(a, &MinorSpec::principal(1, 2, v.clone())).unwrap();
        let oracle = g(a, 1, 1)
            .add_scalar(&v)
            .mul(&g(a, 2, 2).add_scalar(&(&v - &hbar())))
            .unwrap()
            .sub(&g(a, 2, 1).mul(&g(a, 1, 2)).unwrap())
            .unwrap();
        assert_eq!(full, oracle);
    }

    #[test]
    fn qchar_examples() {
        let a1 = qchar_poly(1).unwrap();
        assert_eq!(a1[0], g(gl(1), 1, 1));
        let a2 = qchar_poly(2).unwrap();
        let want = g(gl(2), 1, 1).add(&g(gl(2), 2, 2)).unwrap().add_scalar(&-hbar());
        assert_eq!(a2[1], want);
        for x in [e(1, 2), e(2, 1)] {
            assert!(g(gl(2), x.i, x.j).commutator(&a2[0]).unwrap().is_zero());
        }
    }

    #[test]
    fn comatrix_examples() {
        let a = gl(2);
        let u = spectral(1);
        assert_eq!(comatrix_entry(a, 1, 1, &u).unwrap(), g(a, 2, 2).add_scalar(&u));
        assert_eq!(comatrix_entry(a, 1, 2, &u).unwrap(), g(a, 1, 2).scale(&Scalar::from_int(-1)));
        let shifted = &u - &hbar();
        let mut acc = Element::zero(a);
        for l in 1..=2 {
            acc = acc
                .add(&comatrix_entry(a, 1, l, &u).unwrap().mul(&l_entry(a, l, 2, &shifted).unwrap()).unwrap())
                .unwrap();
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn named_identities() {
        let rep = verify_minor_identity(2, &MinorIdentity::Rtt).unwrap();
        assert!(rep.holds, "{rep:?}");
        let rep = verify_minor_identity(3, &MinorIdentity::MinorQuotient { l: 2, c: 3 }).unwrap();
        assert!(rep.holds, "{rep:?}");
        let rep = verify_minor_identity(3, &MinorIdentity::AdjacentCommute { k: 2, l: 3 }).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert!(matches!(
            minor_identity_instances("nope", 2, 2),
            Err(UeaError::UnknownIdentity(_))
        ));
    }

    #[test]
    fn degree_cap_guard() {
        let a = gl(2);
        let long = vec![e(1, 2); 30];
        assert!(matches!(Element::word(a, &long), Err(UeaError::DegreeCapExceeded(24))));
    }
}
