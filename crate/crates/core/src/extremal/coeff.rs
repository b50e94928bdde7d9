//! Rational functions whose denominators are products of linear forms.
//!
//! Every denominator the extremal projector produces is a product of
//! `h_α + ℏc` evaluated on weights, and weight shifts keep them linear, so
//! sums need only an lcm of factor lists and cancellation is trial division.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::scalar::{translate_poly, BigRational, Param, Poly, Scalar};

/// A monic polynomial of total degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Lin(Poly);

impl Ord for Lin {
    fn cmp(&self, o: &Self) -> Ordering {
        let (a, b) = (self.0.terms(), o.0.terms());
        for (x, y) in a.iter().zip(b) {
            match x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)) {
                Ordering::Equal => {}
                c => return c,
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Lin {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// `num / Π f^e`, with `num` coprime to every `f`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coeff {
    num: Poly,
    den: BTreeMap<Lin, u32>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Coeff::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Coeff { num: p, den: BTreeMap::new() }
    }

    pub fn from_rational(c: BigRational) -> Self {
        Coeff::from_poly(Poly::constant(c))
    }

    /// `1/p` for `p` of total degree at most one; `None` if `p = 0`.
    pub fn inv_linear(p: &Poly) -> Option<Self> {
        if p.is_zero() {
            return None;
        }
        if let Some(c) = p.constant_value() {
            return Some(Coeff::from_rational(c.recip()));
        }
        assert_eq!(p.total_degree(), 1, "denominator factor must be linear");
        let lc = p.lead_coeff();
        let mut den = BTreeMap::new();
        den.insert(Lin(p.monic()), 1);
        Some(Coeff { num: Poly::constant(lc.recip()), den })
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> Self {
        Coeff { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if num_traits::Zero::is_zero(c) {
            return Coeff::zero();
        }
        Coeff { num: self.num.scale(c), den: self.den.clone() }
    }

    fn canonical(mut num: Poly, mut den: BTreeMap<Lin, u32>) -> Self {
        if num.is_zero() {
            return Coeff::zero();
        }
        for (f, e) in den.iter_mut() {
            while *e > 0 {
                match num.div_exact(&f.0) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, e| *e > 0);
        Coeff { num, den }
    }

    pub fn mul(&self, o: &Coeff) -> Coeff {
        if self.is_zero() || o.is_zero() {
            return Coeff::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &o.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        Coeff::canonical(self.num.mul(&o.num), den)
    }

    pub fn add(&self, o: &Coeff) -> Coeff {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Coeff::canonical(self.num.add(&o.num), self.den.clone());
        }
        let mut lcm = self.den.clone();
        for (f, e) in &o.den {
            let x = lcm.entry(f.clone()).or_insert(0);
            *x = (*x).max(*e);
        }
        let lift = |c: &Coeff| {
            let mut n = c.num.clone();
            for (f, e) in &lcm {
                let have = c.den.get(f).copied().unwrap_or(0);
                if *e > have {
                    n = n.mul(&f.0.pow(e - have));
                }
            }
            n
        };
        let num = lift(self).add(&lift(o));
        Coeff::canonical(num, lcm)
    }

    pub fn sub(&self, o: &Coeff) -> Coeff {
        self.add(&o.neg())
    }

    /// `p ↦ p + s` for each `(p, s)`; the shifts must keep factors linear.
    pub fn translate(&self, shifts: &[(Param, Poly)]) -> Coeff {
        if self.is_zero() || shifts.iter().all(|(_, s)| s.is_zero()) {
            return self.clone();
        }
        let mut num = translate_poly(&self.num, shifts);
        let mut den = BTreeMap::new();
        for (f, e) in &self.den {
            let g = translate_poly(&f.0, shifts);
            match g.constant_value() {
                Some(c) => num = num.scale(&c.recip().pow(*e as i32)),
                None => {
                    let lc = g.lead_coeff();
                    if !lc.is_one() {
                        num = num.scale(&lc.recip().pow(*e as i32));
                    }
                    *den.entry(Lin(g.monic())).or_insert(0) += e;
                }
            }
        }
        Coeff::canonical(num, den)
    }

    pub fn to_scalar(&self) -> Scalar {
        let mut d = Poly::one();
        for (f, e) in &self.den {
            d = d.mul(&f.0.pow(*e));
        }
        Scalar::from_coprime_parts(self.num.clone(), d)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_scalar())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(k: u8) -> Poly {
        Poly::var(Param::Lambda(k))
    }

    #[test]
    fn agrees_with_scalar_arithmetic() {
        let h = Poly::var(Param::Hbar);
        let a = Coeff::inv_linear(&lam(1).sub(&lam(2))).unwrap();
        let b = Coeff::inv_linear(&lam(1).sub(&lam(2)).add(&h).scale(&BigRational::from_integer(2.into()))).unwrap();
        let c = Coeff::from_poly(lam(1).mul(&h));
        let x = a.add(&b).mul(&c).sub(&a);
        let (sa, sb, sc) = (a.to_scalar(), b.to_scalar(), c.to_scalar());
        assert_eq!(x.to_scalar(), &(&(&sa + &sb) * &sc) - &sa);
        let y = Coeff::from_poly(lam(1).sub(&lam(2))).mul(&a);
        assert_eq!(y, Coeff::one());
        let shifted = a.translate(&[(Param::Lambda(1), h.clone())]);
        assert_eq!(shifted.to_scalar(), Scalar::from_poly(lam(1).sub(&lam(2)).add(&h)).recip().unwrap());
    }
}
