use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Mono, Poly};
use super::{Param, ScalarError};

/// Exact rational function in the [`Param`]s.
///
/// Always stored reduced: `gcd(num, den) = 1` and `den` has leading
/// coefficient 1, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Scalar { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { num: Poly::from_int(n), den: Poly::one() }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar { num: Poly::constant(q), den: Poly::one() }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn param(p: Param) -> Self {
        Scalar { num: Poly::var(p), den: Poly::one() }
    }

    pub fn hbar() -> Self {
        Scalar::param(Param::Hbar)
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    /// `num / den`, reduced. Fails when `den` is zero.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    /// `num / den` for coprime parts; only the leading coefficient of `den` is normalized.
    pub(crate) fn from_coprime_parts(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let lc = den.lead_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn vars(&self) -> Vec<Param> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v.sort();
        v.dedup();
        v
    }

    pub fn depends_on(&self, p: Param) -> bool {
        self.num.degree_in(p) > 0 || self.den.degree_in(p) > 0
    }

    fn reduce(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.constant_value() {
            return Scalar { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = if den.is_monomial() {
            Poly::monomial(den.mono_content().gcd(&num.mono_content()), BigRational::one())
        } else {
            gcd(&num, &den)
        };
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.lead_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn add_ref(&self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Scalar { num: self.num.add(&o.num), den: Poly::one() };
            }
            return Scalar::reduce(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return Scalar { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_one() {
            return Scalar { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let g = if self.den.is_monomial() && o.den.is_monomial() {
            Poly::monomial(self.den.mono_content().gcd(&o.den.mono_content()), BigRational::one())
        } else {
            gcd(&self.den, &o.den)
        };
        let da = self.den.div_exact(&g).unwrap();
        let db = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&db).add(&o.num.mul(&da));
        if num.is_zero() {
            return Scalar::zero();
        }
        // num is coprime to da and db, so only g can share factors with it
        let (num, g) = if g.is_one() {
            (num, g)
        } else {
            let h = gcd(&num, &g);
            if h.is_one() {
                (num, g)
            } else {
                (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
            }
        };
        let den = da.mul(&db).mul(&g);
        let lc = den.lead_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, o: &Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        let cancel = |n: &Poly, d: &Poly| -> (Poly, Poly) {
            if d.is_one() {
                return (n.clone(), d.clone());
            }
            let g = if d.is_monomial() || n.is_monomial() {
                Poly::monomial(d.mono_content().gcd(&n.mono_content()), BigRational::one())
            } else {
                gcd(n, d)
            };
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        let lc = den.lead_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn recip(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let lc = self.num.lead_coeff();
        let inv = lc.recip();
        Ok(Scalar { num: self.den.scale(&inv), den: self.num.scale(&inv) })
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self.mul_ref(&o.recip()?))
    }

    pub fn scale_rational(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn scale_int(&self, c: i64) -> Scalar {
        self.scale_rational(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        Scalar { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Simultaneous substitution of parameters by scalars.
    pub fn substitute(&self, bindings: &BTreeMap<Param, Scalar>) -> Result<Scalar, ScalarError> {
        if bindings.is_empty() || !self.vars().iter().any(|p| bindings.contains_key(p)) {
            return Ok(self.clone());
        }
        let num = eval_poly(&self.num, bindings);
        let den = eval_poly(&self.den, bindings);
        if den.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        Ok(num.mul_ref(&den.recip()?))
    }

    /// Substitution by an invertible affine change of variables
    /// `p ↦ p + c_p` with each `c_p` a polynomial free of the shifted
    /// parameters. Coprimality survives, so no gcd is needed.
    pub fn translate(&self, shifts: &[(Param, Poly)]) -> Scalar {
        if shifts.iter().all(|(_, c)| c.is_zero()) {
            return self.clone();
        }
        let num = translate_poly(&self.num, shifts);
        let den = translate_poly(&self.den, shifts);
        let lc = den.lead_coeff();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Taylor coefficients at ℏ = 0 up to `order` inclusive.
    pub fn h_series(&self, order: usize) -> Result<Vec<Scalar>, ScalarError> {
        let n = self.num.coeffs_in(Param::Hbar);
        let d = self.den.coeffs_in(Param::Hbar);
        let d0 = Scalar::from_poly(d[0].clone());
        if d0.is_zero() {
            return Err(ScalarError::PoleAtZero);
        }
        let d0inv = d0.recip()?;
        let nk = |k: usize| n.get(k).cloned().map(Scalar::from_poly).unwrap_or_else(Scalar::zero);
        let dk = |k: usize| d.get(k).cloned().map(Scalar::from_poly).unwrap_or_else(Scalar::zero);
        let mut out: Vec<Scalar> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = nk(k);
            for j in 1..=k {
                let dj = dk(j);
                if !dj.is_zero() {
                    acc = acc.sub_ref(&dj.mul_ref(&out[k - j]));
                }
            }
            out.push(acc.mul_ref(&d0inv));
        }
        Ok(out)
    }

    /// Exponent of ℏ in the leading Laurent term (negative for poles).
    pub fn h_valuation(&self) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.num.valuation_in(Param::Hbar) as i64 - self.den.valuation_in(Param::Hbar) as i64
    }

    pub fn derivative(&self, p: Param) -> Scalar {
        if !self.depends_on(p) {
            return Scalar::zero();
        }
        let dn = self.num.derivative(p);
        let dd = self.den.derivative(p);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Scalar::reduce(num, self.den.mul(&self.den))
    }

    /// Evaluation at a rational point; `None` when a parameter is unbound
    /// or the denominator vanishes.
    pub fn eval_rational(&self, point: &dyn Fn(Param) -> Option<BigRational>) -> Option<BigRational> {
        let d = self.den.eval_rational(point)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(point)? / d)
    }

    /// Multiplies by a monomial in the parameters.
    pub fn mul_mono(&self, m: &Mono) -> Scalar {
        self.mul_ref(&Scalar::from_poly(Poly::monomial(m.clone(), BigRational::one())))
    }
}

fn eval_poly(p: &Poly, bindings: &BTreeMap<Param, Scalar>) -> Scalar {
    let mut acc = Scalar::zero();
    let mut powers: BTreeMap<(Param, u32), Scalar> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut t = Scalar::from_rational(c.clone());
        let mut free = Mono::one();
        for &(q, e) in &m.0 {
            match bindings.get(&q) {
                Some(v) => {
                    let pw = powers.entry((q, e)).or_insert_with(|| v.pow(e)).clone();
                    t = t.mul_ref(&pw);
                }
                None => free = free.mul(&Mono::var(q, e)),
            }
        }
        if !free.is_one() {
            t = t.mul_mono(&free);
        }
        acc = acc.add_ref(&t);
    }
    acc
}

pub(crate) fn translate_poly(p: &Poly, shifts: &[(Param, Poly)]) -> Poly {
    let mut acc = Poly::zero();
    let mut powers: BTreeMap<(Param, u32), Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut t = Poly::constant(c.clone());
        let mut free = Mono::one();
        for &(q, e) in &m.0 {
            match shifts.iter().find(|(r, _)| *r == q) {
                Some((_, s)) if !s.is_zero() => {
                    let pw = powers
                        .entry((q, e))
                        .or_insert_with(|| Poly::var(q).add(s).pow(e))
                        .clone();
                    t = t.mul(&pw);
                }
                _ => free = free.mul(&Mono::var(q, e)),
            }
        }
        acc = acc.add(&t.mul_mono(&free));
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Param> for Scalar {
    fn from(p: Param) -> Self {
        Scalar::param(p)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$imp(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$imp(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$imp(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$imp(&o)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero")
    }
}

impl Div<Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, o: Scalar) -> Scalar {
        (&self).div(&o)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a.add_ref(&b))
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}
