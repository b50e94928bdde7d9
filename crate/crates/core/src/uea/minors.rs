//! Quantum minors of `L(u) = u·id + E`.

use std::sync::OnceLock;

use dashmap::DashMap;

use super::generator::{e, Algebra, Generator};
use super::{Element, UeaError};
use crate::scalar::{Param, Scalar};

/// Rows `a`, columns `b`, evaluation point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorSpec {
    pub rows: Vec<u8>,
    pub cols: Vec<u8>,
    pub point: Scalar,
}

impl MinorSpec {
    pub fn new(rows: &[u8], cols: &[u8], point: Scalar) -> Self {
        MinorSpec { rows: rows.to_vec(), cols: cols.to_vec(), point }
    }

    /// Principal minor on the consecutive range `lo..=hi`.
    pub fn principal(lo: u8, hi: u8, point: Scalar) -> Self {
        let r: Vec<u8> = (lo..=hi).collect();
        MinorSpec { rows: r.clone(), cols: r, point }
    }
}

/// `L_ab(x) = δ_ab x + E_ab`.
pub fn l_entry(alg: Algebra, a: u8, b: u8, x: &Scalar) -> Result<Element, UeaError> {
    let g = e(a, b);
    if !g.in_gl(alg.n) {
        return Err(UeaError::IndexOutOfRange);
    }
    let base = Element::gen(alg, g)?;
    Ok(if a == b { base.add_scalar(x) } else { base })
}

/// All permutations of `0..m` with their signs.
pub fn permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if left.is_empty() {
            out.push((prefix.clone(), sign));
            return;
        }
        for k in 0..left.len() {
            let x = left.remove(k);
            prefix.push(x);
            // moving the k-th remaining element to the front costs k transpositions
            go(prefix, left, if k % 2 == 0 { sign } else { -sign }, out);
            prefix.pop();
            left.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..m).collect(), 1, &mut out);
    out
}

fn cache() -> &'static DashMap<(Algebra, MinorSpec), Element> {
    static C: OnceLock<DashMap<(Algebra, MinorSpec), Element>> = OnceLock::new();
    C.get_or_init(DashMap::new)
}

/// `Σ_σ sgn σ · L_{a_σ(1) b_1}(x) L_{a_σ(2) b_2}(x − ℏ) ⋯ L_{a_σ(m) b_m}(x − ℏm + ℏ)`.
pub fn quantum_minor(alg: Algebra, spec: &MinorSpec) -> Result<Element, UeaError> {
    let m = spec.rows.len();
    if spec.cols.len() != m || m > alg.n as usize {
        return Err(UeaError::IndexOutOfRange);
    }
    if spec.rows.iter().chain(&spec.cols).any(|&k| k == 0 || k > alg.n) {
        return Err(UeaError::IndexOutOfRange);
    }
    let key = (alg, spec.clone());
    if let Some(hit) = cache().get(&key) {
        return Ok(hit.clone());
    }
    let h = Scalar::hbar();
    let points: Vec<Scalar> = (0..m).map(|k| &spec.point - &h.scale_int(k as i64)).collect();
    let mut acc = Element::zero(alg);
    for (perm, sign) in permutations(m) {
        let mut prod = Element::scalar(alg, Scalar::from_int(sign));
        for k in 0..m {
            let a = spec.rows[perm[k]];
            let b = spec.cols[k];
            if !alg.contains(e(a, b)) {
                return Err(UeaError::NotInAlgebra(e(a, b)));
            }
            prod = prod.mul(&l_entry(alg, a, b, &points[k])?)?;
            if prod.is_zero() {
                break;
            }
        }
        acc = acc.add(&prod)?;
    }
    cache().insert(key, acc.clone());
    Ok(acc)
}

/// Quantum comatrix entry `L̂_ij(x) = (−1)^{i+j} L^{1..ĵ..N}_{1..î..N}(x)`.
pub fn comatrix_entry(alg: Algebra, i: u8, j: u8, x: &Scalar) -> Result<Element, UeaError> {
    let n = alg.n;
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(UeaError::IndexOutOfRange);
    }
    let rows: Vec<u8> = (1..=n).filter(|&k| k != j).collect();
    let cols: Vec<u8> = (1..=n).filter(|&k| k != i).collect();
    let minor = quantum_minor(alg, &MinorSpec::new(&rows, &cols, x.clone()))?;
    Ok(if (i + j) % 2 == 0 { minor } else { minor.scale(&Scalar::from_int(-1)) })
}

/// Coefficient of `v^i` in an element whose coefficients are polynomial in `v`.
pub fn coefficient_in(el: &Element, v: Param, i: u32) -> Element {
    el.map_coeffs(|c| {
        let parts = c.numer().coeffs_in(v);
        let den = Scalar::from_poly(c.denom().clone());
        debug_assert!(!c.denom().vars().contains(&v));
        parts
            .get(i as usize)
            .map(|p| &Scalar::from_poly(p.clone()) / &den)
            .unwrap_or_else(Scalar::zero)
    })
}

/// Quantum determinant `L^{1..N}_{1..N}(x)`.
pub fn qdet(alg: Algebra, x: &Scalar) -> Result<Element, UeaError> {
    quantum_minor(alg, &MinorSpec::principal(1, alg.n, x.clone()))
}

/// Coefficients `A_0, …, A_{N−1}` of `qdet L(v) = v^N + Σ_i A_i v^i`.
pub fn qchar_poly(n: u8) -> Result<Vec<Element>, UeaError> {
    let alg = Algebra::gl(n);
    let v = Param::Spectral(0);
    let det = qdet(alg, &Scalar::param(v))?;
    Ok((0..n as u32).map(|i| coefficient_in(&det, v, i)).collect())
}

/// Generators used by a minor, for membership checks.
pub fn minor_generators(spec: &MinorSpec) -> Vec<Generator> {
    spec.rows
        .iter()
        .flat_map(|&a| spec.cols.iter().map(move |&b| e(a, b)))
        .collect()
}
