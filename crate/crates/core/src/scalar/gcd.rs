//! Multivariate gcd over ℚ by recursive content / primitive-part reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::BigRational;
use super::Param;

/// Monic gcd of two polynomials. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.is_monomial() || b.is_monomial() {
        let g = a.mono_content().gcd(&b.mono_content());
        return Poly::monomial(g, One::one());
    }
    let ma = a.mono_content();
    let mb = b.mono_content();
    let gm = ma.gcd(&mb);
    let a1 = a.div_mono(&ma).unwrap();
    let b1 = b.div_mono(&mb).unwrap();
    let g = gcd_nomono(&a1, &b1);
    g.mul_mono(&gm).monic()
}

// Both inputs nonzero and free of monomial content.
fn gcd_nomono(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.monic() == b.monic() {
        return a.monic();
    }
    let (small, big) = if a.terms().len() <= b.terms().len() { (a, b) } else { (b, a) };
    if big.div_exact(small).is_some() {
        return small.monic();
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(&x) = va.iter().find(|p| !vb.contains(p)) {
        return gcd_with_coeffs(b, a, x);
    }
    if let Some(&x) = vb.iter().find(|p| !va.contains(p)) {
        return gcd_with_coeffs(a, b, x);
    }
    for &x in &va {
        if image_gcd_is_trivial(a, b, x, &va) {
            let mut g = content(&a.coeffs_in(x));
            for c in b.coeffs_in(x) {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = gcd(&g, &c);
                }
            }
            return g;
        }
    }
    let x = *va
        .iter()
        .min_by_key(|&&p| a.degree_in(p).max(b.degree_in(p)))
        .expect("nonconstant");
    univariate_gcd(a, b, x)
}

// Specializes every variable except `x` at an integer point where neither
// leading coefficient in `x` vanishes. A constant image gcd then proves the
// true gcd is free of `x`.
fn image_gcd_is_trivial(a: &Poly, b: &Poly, x: Param, vars: &[Param]) -> bool {
    let (ua, ub) = (a.coeffs_in(x), b.coeffs_in(x));
    for attempt in 0..3i64 {
        let point = |p: Param| {
            let k = vars.iter().position(|&v| v == p)? as i64;
            Some(BigRational::from_integer(BigInt::from(3 + 7 * k + 13 * attempt)))
        };
        let ev = |u: &[Poly]| -> Option<Vec<BigRational>> { u.iter().map(|c| c.eval_rational(&point)).collect() };
        let (Some(mut pa), Some(mut pb)) = (ev(&ua), ev(&ub)) else { return false };
        if pa.last().is_none_or(|c| c.is_zero()) || pb.last().is_none_or(|c| c.is_zero()) {
            continue;
        }
        // Euclid over ℚ in one variable
        loop {
            if pb.len() < 2 {
                return pb.len() == 1 || pa.len() == 1;
            }
            if pa.len() < pb.len() {
                std::mem::swap(&mut pa, &mut pb);
                continue;
            }
            let lb = pb.last().unwrap().clone();
            while pa.len() >= pb.len() {
                let q = pa.last().unwrap() / &lb;
                let shift = pa.len() - pb.len();
                for (k, c) in pb.iter().enumerate() {
                    pa[k + shift] -= &q * c;
                }
                pa.pop();
                while pa.last().is_some_and(|c| c.is_zero()) {
                    pa.pop();
                }
            }
            if pa.is_empty() {
                return false;
            }
            std::mem::swap(&mut pa, &mut pb);
        }
    }
    false
}

// gcd(a, b) where `b` depends on `x` and `a` does not.
fn gcd_with_coeffs(a: &Poly, b: &Poly, x: Param) -> Poly {
    let mut g = a.monic();
    for c in b.coeffs_in(x) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim(v: &mut Vec<Poly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn primitive(v: &[Poly]) -> Vec<Poly> {
    let c = content(v);
    let v: Vec<Poly> = if c.is_one() {
        v.to_vec()
    } else {
        v.iter().map(|p| p.div_exact(&c).expect("content divides")).collect()
    };
    integral(v)
}

// Scales to integer coefficients with trivial integer content.
fn integral(v: Vec<Poly>) -> Vec<Poly> {
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for p in &v {
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
    }
    if num.is_zero() || (den.is_one() && num.is_one()) {
        return v;
    }
    let f = BigRational::new(den, num);
    v.iter().map(|p| p.scale(&f)).collect()
}

// Pseudo-remainder of `a` by `b` as polynomials in one variable over the
// remaining ones. Both coefficient vectors are trimmed, `b` nonzero.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                r[k + shift] = r[k + shift].sub(&lr.mul(bk));
            }
        }
        trim(&mut r);
    }
    r
}

fn univariate_gcd(a: &Poly, b: &Poly, x: Param) -> Poly {
    let mut ua = a.coeffs_in(x);
    let mut ub = b.coeffs_in(x);
    trim(&mut ua);
    trim(&mut ub);
    let ca = content(&ua);
    let cb = content(&ub);
    let gc = gcd(&ca, &cb);
    let mut p = primitive(&ua);
    let mut q = primitive(&ub);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(&p, &q);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return gc;
        }
        p = q;
        q = primitive(&r);
    }
    let g = Poly::from_coeffs_in(x, &q);
    g.mul(&gc).monic()
}
