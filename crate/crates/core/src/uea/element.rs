use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::generator::{bracket, Algebra, Generator};
use super::rewrite::{add_into, mono_times_gen, mono_times_mono, Monomial};
use super::UeaError;
use crate::scalar::Scalar;

/// A member of `U_ℏ(g)` in PBW normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    alg: Algebra,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero(alg: Algebra) -> Self {
        Element { alg, terms: BTreeMap::new() }
    }

    pub fn scalar(alg: Algebra, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Element { alg, terms }
    }

    pub fn one(alg: Algebra) -> Self {
        Element::scalar(alg, Scalar::one())
    }

    pub fn gen(alg: Algebra, g: Generator) -> Result<Self, UeaError> {
        if !alg.contains(g) {
            return Err(UeaError::NotInAlgebra(g));
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::from_gen(g), Scalar::one());
        Ok(Element { alg, terms })
    }

    /// Builds from sorted monomials; fails if a generator is outside `alg`.
    pub fn from_terms(
        alg: Algebra,
        it: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, UeaError> {
        let mut terms = BTreeMap::new();
        for (m, c) in it {
            if let Some(&g) = m.factors().iter().find(|&&g| !alg.contains(g)) {
                return Err(UeaError::NotInAlgebra(g));
            }
            debug_assert!(m.is_sorted());
            add_into(&mut terms, &m, &c);
        }
        Ok(Element { alg, terms })
    }

    /// Normal form of an arbitrary word of generators.
    pub fn word(alg: Algebra, word: &[Generator]) -> Result<Self, UeaError> {
        let mut acc = Element::one(alg);
        for &g in word {
            acc = acc.mul(&Element::gen(alg, g)?)?;
        }
        Ok(acc)
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same element viewed in a different algebra with the same `N`.
    pub fn retag(&self, alg: Algebra) -> Result<Self, UeaError> {
        if alg.n != self.alg.n {
            return Err(UeaError::AlgebraMismatch);
        }
        Element::from_terms(alg, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    fn check(&self, o: &Element) -> Result<(), UeaError> {
        if self.alg != o.alg {
            return Err(UeaError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Element) -> Result<Element, UeaError> {
        self.check(o)?;
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            add_into(&mut terms, m, c);
        }
        Ok(Element { alg: self.alg, terms })
    }

    pub fn sub(&self, o: &Element) -> Result<Element, UeaError> {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(self.alg);
        }
        Element {
            alg: self.alg,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// Adds a scalar multiple of the unit.
    pub fn add_scalar(&self, c: &Scalar) -> Element {
        let mut terms = self.terms.clone();
        add_into(&mut terms, &Monomial::one(), c);
        Element { alg: self.alg, terms }
    }

    /// PBW normal form of `self · o`.
    pub fn mul(&self, o: &Element) -> Result<Element, UeaError> {
        self.check(o)?;
        let mut terms = BTreeMap::new();
        for (b, cb) in &o.terms {
            for (a, ca) in &self.terms {
                let cab = ca * cb;
                if b.is_empty() {
                    add_into(&mut terms, a, &cab);
                } else if b.len() == 1 {
                    for (t, c) in mono_times_gen(a, b.factors()[0])?.iter() {
                        add_into(&mut terms, t, &(&cab * c));
                    }
                } else {
                    for (t, c) in mono_times_mono(a, b)? {
                        add_into(&mut terms, &t, &(&cab * &c));
                    }
                }
            }
        }
        Ok(Element { alg: self.alg, terms })
    }

    /// `self · o − o · self`.
    pub fn commutator(&self, o: &Element) -> Result<Element, UeaError> {
        self.mul(o)?.sub(&o.mul(self)?)
    }

    /// Substitutes parameters in every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            add_into(&mut terms, m, &f(c));
        }
        Element { alg: self.alg, terms }
    }

    /// `ad_ξ(a) = [ξ, a]` with the undeformed bracket, by the Leibniz rule.
    pub fn ad(&self, xi: Generator) -> Result<Element, UeaError> {
        if !self.alg.contains(xi) {
            return Err(UeaError::NotInAlgebra(xi));
        }
        let mut acc = Element::zero(self.alg);
        for (m, c) in &self.terms {
            let f = m.factors();
            for k in 0..f.len() {
                for (y, s) in bracket(xi, f[k]) {
                    let mut w: Vec<Generator> = f[..k].to_vec();
                    w.push(y);
                    w.extend_from_slice(&f[k + 1..]);
                    let t = Element::word(self.alg, &w)?;
                    acc = acc.add(&t.scale(&c.scale_int(s)))?;
                }
            }
        }
        Ok(acc)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Whittaker reduction: drops the `n_−` prefix of every monomial after
    /// replacing it by its character value `ψ(E_{i+1,i}) = 1`, other
    /// negative roots `0`.
    pub fn psi_reduce(&self) -> Element {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let f = m.factors();
            let cut = f.iter().position(|g| !g.is_lower()).unwrap_or(f.len());
            if f[..cut].iter().all(|g| g.i == g.j + 1) {
                let rest = Monomial(f[cut..].iter().copied().collect());
                add_into(&mut terms, &rest, c);
            }
        }
        Element { alg: self.alg, terms }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let list: Vec<ElementTerm> = self
            .terms
            .iter()
            .map(|(m, c)| ElementTerm {
                monomial: m.factors().iter().map(|g| [g.i, g.j]).collect(),
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_value(list).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct ElementTerm {
    monomial: Vec<[u8; 2]>,
    coeff: String,
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}
