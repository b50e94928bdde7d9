//! Checkers for the quantum-minor calculus.

use std::fmt;

use rayon::prelude::*;

use super::generator::{e, Algebra};
use super::minors::{comatrix_entry, l_entry, permutations, qdet, quantum_minor, MinorSpec};
use super::{Element, UeaError};
use crate::check::CheckReport;
use crate::scalar::{Param, Scalar};

/// One minor identity with its index data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorIdentity {
    /// Permuting rows or columns multiplies by the sign; both
    /// permutation-sum forms of the definition agree.
    Antisymmetry { rows: Vec<u8>, cols: Vec<u8> },
    /// The four row/column expansions.
    Decomposition { rows: Vec<u8>, cols: Vec<u8> },
    /// `[E_kl, L^a_b(u)]` for `k ≠ l`.
    GeneratorCommutator { k: u8, l: u8, rows: Vec<u8>, cols: Vec<u8> },
    /// `L^{1..k}_{1..k}(u) L^{1..k−1,l}_{1..k}(u−ℏ) = L^{1..k−1,l}_{1..k}(u) L^{1..k}_{1..k}(u−ℏ)`, `k ≤ l`.
    AdjacentCommute { k: u8, l: u8 },
    /// `L^{1..d−1}_{1..d−1}(u) L^{a,2..d−1}_{1..d−1}(u−ℏ) = L^{a,2..d−1}_{1..d−1}(u) L^{1..d−1}_{1..d−1}(u−ℏ)`, `a > d`.
    CyclicCommute { a: u8, d: u8 },
    /// `L^{1..l̂..c}_{1..c−1}(u) ≡ L^{1..l−1}_{1..l−1}(u)` modulo the shifted left ideal.
    MinorQuotient { l: u8, c: u8 },
    /// `M_ij(v)·q(u) − M_ij(u)·q(v) = (u − v) Σ_l M_il(v) M_lj(u)` inside `gl_c`,
    /// with `M_ij` the complementary minor (rows without `j`, columns without `i`).
    ComatrixProduct { c: u8, i: u8, j: u8 },
    /// `R(u−v) L_1(u) L_2(v) = L_2(v) L_1(u) R(u−v)`.
    Rtt,
    /// `(u−v)[L_ij(u), L_kl(v)] = ℏ(L_kj(u) L_il(v) − L_kj(v) L_il(u))`.
    Evaluation,
    /// `[E_ij, qdet L(u)] = 0`.
    QdetCentral,
    /// `Σ_l L̂_il(u) L_lj(u − ℏN + ℏ) = δ_ij qdet L(u)`.
    Comatrix,
}

impl fmt::Display for MinorIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorIdentity::Antisymmetry { rows, cols } => write!(f, "antisymmetry{rows:?}{cols:?}"),
            MinorIdentity::Decomposition { rows, cols } => write!(f, "decomposition{rows:?}{cols:?}"),
            MinorIdentity::GeneratorCommutator { k, l, rows, cols } => {
                write!(f, "generator-commutator(E{k}{l}){rows:?}{cols:?}")
            }
            MinorIdentity::AdjacentCommute { k, l } => write!(f, "adjacent-commute(k={k},l={l})"),
            MinorIdentity::CyclicCommute { a, d } => write!(f, "cyclic-commute(a={a},d={d})"),
            MinorIdentity::MinorQuotient { l, c } => write!(f, "minor-quotient(l={l},c={c})"),
            MinorIdentity::ComatrixProduct { c, i, j } => write!(f, "comatrix-product(c={c},i={i},j={j})"),
            MinorIdentity::Rtt => write!(f, "rtt"),
            MinorIdentity::Evaluation => write!(f, "evaluation"),
            MinorIdentity::QdetCentral => write!(f, "qdet-central"),
            MinorIdentity::Comatrix => write!(f, "comatrix"),
        }
    }
}

/// Registered identity tags, in suite order.
pub const MINOR_IDENTITY_TAGS: &[&str] = &[
    "antisymmetry",
    "decomposition",
    "generator-commutator",
    "adjacent-commute",
    "cyclic-commute",
    "minor-quotient",
    "comatrix-product",
    "rtt",
    "evaluation",
    "qdet-central",
    "comatrix",
];

fn formal_u() -> Scalar {
    Scalar::param(Param::Spectral(1))
}

fn formal_v() -> Scalar {
    Scalar::param(Param::Spectral(2))
}

fn minor(alg: Algebra, rows: &[u8], cols: &[u8], x: &Scalar) -> Result<Element, UeaError> {
    quantum_minor(alg, &MinorSpec::new(rows, cols, x.clone()))
}

fn compare(report: &mut CheckReport, case: impl fmt::Display, lhs: &Element, rhs: &Element) -> Result<(), UeaError> {
    let d = lhs.sub(rhs)?;
    report.record(case, d.is_zero(), || d.to_string());
    Ok(())
}

fn without(v: &[u8], k: usize) -> Vec<u8> {
    v.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect()
}

/// Checks one identity in `U_ℏ(gl_N)` with formal spectral points.
pub fn verify_minor_identity(n: u8, id: &MinorIdentity) -> Result<CheckReport, UeaError> {
    let alg = Algebra::gl(n);
    let h = Scalar::hbar();
    let u = formal_u();
    let v = formal_v();
    let mut rep = CheckReport::new(id.to_string());
    match id {
        MinorIdentity::Antisymmetry { rows, cols } => {
            let base = minor(alg, rows, cols, &u)?;
            let m = rows.len();
            for (perm, sign) in permutations(m) {
                let pr: Vec<u8> = perm.iter().map(|&k| rows[k]).collect();
                let pc: Vec<u8> = perm.iter().map(|&k| cols[k]).collect();
                let want = base.scale(&Scalar::from_int(sign));
                compare(&mut rep, format!("rows {pr:?}"), &minor(alg, &pr, cols, &u)?, &want)?;
                compare(&mut rep, format!("cols {pc:?}"), &minor(alg, rows, &pc, &u)?, &want)?;
            }
            // column-permutation form, arguments in reverse order
            let mut alt = Element::zero(alg);
            for (perm, sign) in permutations(m) {
                let mut p = Element::scalar(alg, Scalar::from_int(sign));
                for k in 0..m {
                    let x = &u - &h.scale_int((m - 1 - k) as i64);
                    p = p.mul(&l_entry(alg, rows[k], cols[perm[k]], &x)?)?;
                }
                alt = alt.add(&p)?;
            }
            compare(&mut rep, "column form", &alt, &base)?;
        }
        MinorIdentity::Decomposition { rows, cols } => {
            let m = rows.len();
            let base = minor(alg, rows, cols, &u)?;
            let last = &u - &h.scale_int(m as i64 - 1);
            let sign = |e: usize| Scalar::from_int(if e % 2 == 0 { 1 } else { -1 });
            let mut f = [Element::zero(alg), Element::zero(alg), Element::zero(alg), Element::zero(alg)];
            for l in 0..m {
                let s_last = sign(m - 1 - l);
                let s_first = sign(l);
                let t = minor(alg, &without(rows, l), &cols[..m - 1], &u)?
                    .mul(&l_entry(alg, rows[l], cols[m - 1], &last)?)?;
                f[0] = f[0].add(&t.scale(&s_last))?;
                let t = minor(alg, &rows[..m - 1], &without(cols, l), &(&u - &h))?
                    .mul(&l_entry(alg, rows[m - 1], cols[l], &u)?)?;
                f[1] = f[1].add(&t.scale(&s_last))?;
                let t = l_entry(alg, rows[l], cols[0], &u)?
                    .mul(&minor(alg, &without(rows, l), &cols[1..], &(&u - &h))?)?;
                f[2] = f[2].add(&t.scale(&s_first))?;
                let t = l_entry(alg, rows[0], cols[l], &last)?
                    .mul(&minor(alg, &rows[1..], &without(cols, l), &u)?)?;
                f[3] = f[3].add(&t.scale(&s_first))?;
            }
            for (k, fk) in f.iter().enumerate() {
                compare(&mut rep, format!("expansion {}", k + 1), fk, &base)?;
            }
        }
        MinorIdentity::GeneratorCommutator { k, l, rows, cols } => {
            if k == l {
                return Err(UeaError::IndexOutOfRange);
            }
            let base = minor(alg, rows, cols, &u)?;
            let lhs = Element::gen(alg, e(*k, *l))?.commutator(&base)?;
            let mut rhs = Element::zero(alg);
            for i in 0..rows.len() {
                if rows[i] == *l {
                    let mut r = rows.clone();
                    r[i] = *k;
                    rhs = rhs.add(&minor(alg, &r, cols, &u)?)?;
                }
                if cols[i] == *k {
                    let mut c = cols.clone();
                    c[i] = *l;
                    rhs = rhs.sub(&minor(alg, rows, &c, &u)?)?;
                }
            }
            compare(&mut rep, "commutator", &lhs, &rhs.scale(&h))?;
        }
        MinorIdentity::AdjacentCommute { k, l } => {
            let full: Vec<u8> = (1..=*k).collect();
            let mut mixed: Vec<u8> = (1..*k).collect();
            mixed.push(*l);
            let lhs = minor(alg, &full, &full, &u)?.mul(&minor(alg, &mixed, &full, &(&u - &h))?)?;
            let rhs = minor(alg, &mixed, &full, &u)?.mul(&minor(alg, &full, &full, &(&u - &h))?)?;
            compare(&mut rep, "product", &lhs, &rhs)?;
        }
        MinorIdentity::CyclicCommute { a, d } => {
            let full: Vec<u8> = (1..*d).collect();
            let mut mixed = vec![*a];
            mixed.extend(2..*d);
            let lhs = minor(alg, &full, &full, &u)?.mul(&minor(alg, &mixed, &full, &(&u - &h))?)?;
            let rhs = minor(alg, &mixed, &full, &u)?.mul(&minor(alg, &full, &full, &(&u - &h))?)?;
            compare(&mut rep, "product", &lhs, &rhs)?;
        }
        MinorIdentity::MinorQuotient { l, c } => {
            let rows: Vec<u8> = (1..=*c).filter(|x| x != l).collect();
            let cols: Vec<u8> = (1..*c).collect();
            let lhs = minor(alg, &rows, &cols, &u)?.psi_reduce();
            let small: Vec<u8> = (1..*l).collect();
            let rhs = minor(alg, &small, &small, &u)?.psi_reduce();
            compare(&mut rep, "class", &lhs, &rhs)?;
        }
        MinorIdentity::ComatrixProduct { c, i, j } => {
            let m = |a: u8, b: u8, x: &Scalar| -> Result<Element, UeaError> {
                let rows: Vec<u8> = (1..=*c).filter(|&t| t != b).collect();
                let cols: Vec<u8> = (1..=*c).filter(|&t| t != a).collect();
                minor(alg, &rows, &cols, x)
            };
            let full: Vec<u8> = (1..=*c).collect();
            let qu = minor(alg, &full, &full, &u)?;
            let qv = minor(alg, &full, &full, &v)?;
            let lhs = m(*i, *j, &v)?.mul(&qu)?.sub(&m(*i, *j, &u)?.mul(&qv)?)?;
            let mut sum = Element::zero(alg);
            for l in 1..=*c {
                sum = sum.add(&m(*i, l, &v)?.mul(&m(l, *j, &u)?)?)?;
            }
            compare(&mut rep, "product", &lhs, &sum.scale(&(&u - &v)))?;
        }
        MinorIdentity::Rtt => {
            let nn = n as usize;
            let idx = |i: usize, k: usize| i * nn + k;
            let dim = nn * nn;
            let zero = Element::zero(alg);
            let mut l1 = vec![vec![zero.clone(); dim]; dim];
            let mut l2 = vec![vec![zero.clone(); dim]; dim];
            let mut r = vec![vec![zero.clone(); dim]; dim];
            let uv = &u - &v;
            for i in 0..nn {
                for j in 0..nn {
                    let lu = l_entry(alg, i as u8 + 1, j as u8 + 1, &u)?;
                    let lv = l_entry(alg, i as u8 + 1, j as u8 + 1, &v)?;
                    for k in 0..nn {
                        l1[idx(i, k)][idx(j, k)] = lu.clone();
                        l2[idx(k, i)][idx(k, j)] = lv.clone();
                    }
                }
            }
            for i in 0..nn {
                for k in 0..nn {
                    let diag = Element::scalar(alg, uv.clone());
                    r[idx(i, k)][idx(i, k)] = r[idx(i, k)][idx(i, k)].add(&diag)?;
                    let p = Element::scalar(alg, -&h);
                    r[idx(i, k)][idx(k, i)] = r[idx(i, k)][idx(k, i)].add(&p)?;
                }
            }
            let lhs = mat_mul(&mat_mul(&r, &l1)?, &l2)?;
            let rhs = mat_mul(&mat_mul(&l2, &l1)?, &r)?;
            for p in 0..dim {
                for q in 0..dim {
                    compare(&mut rep, format!("entry ({p},{q})"), &lhs[p][q], &rhs[p][q])?;
                }
            }
        }
        MinorIdentity::Evaluation => {
            for i in 1..=n {
                for j in 1..=n {
                    for k in 1..=n {
                        for l in 1..=n {
                            let lhs = l_entry(alg, i, j, &u)?
                                .commutator(&l_entry(alg, k, l, &v)?)?
                                .scale(&(&u - &v));
                            let rhs = l_entry(alg, k, j, &u)?
                                .mul(&l_entry(alg, i, l, &v)?)?
                                .sub(&l_entry(alg, k, j, &v)?.mul(&l_entry(alg, i, l, &u)?)?)?
                                .scale(&h);
                            compare(&mut rep, format!("({i}{j},{k}{l})"), &lhs, &rhs)?;
                        }
                    }
                }
            }
        }
        MinorIdentity::QdetCentral => {
            let q = qdet(alg, &u)?;
            for g in alg.generators() {
                let c = Element::gen(alg, g)?.commutator(&q)?;
                compare(&mut rep, g, &c, &Element::zero(alg))?;
            }
        }
        MinorIdentity::Comatrix => {
            let q = qdet(alg, &u)?;
            let shifted = &u - &h.scale_int(n as i64 - 1);
            for i in 1..=n {
                for j in 1..=n {
                    let mut acc = Element::zero(alg);
                    for l in 1..=n {
                        acc = acc.add(&comatrix_entry(alg, i, l, &u)?.mul(&l_entry(alg, l, j, &shifted)?)?)?;
                    }
                    let want = if i == j { q.clone() } else { Element::zero(alg) };
                    compare(&mut rep, format!("({i},{j})"), &acc, &want)?;
                }
            }
        }
    }
    Ok(rep)
}

fn mat_mul(a: &[Vec<Element>], b: &[Vec<Element>]) -> Result<Vec<Vec<Element>>, UeaError> {
    let dim = a.len();
    let alg = a[0][0].algebra();
    let mut out = vec![vec![Element::zero(alg); dim]; dim];
    for i in 0..dim {
        for k in 0..dim {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..dim {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

/// Increasing index tuples of length `m` from `1..=n`.
pub fn subsets(n: u8, m: usize) -> Vec<Vec<u8>> {
    fn go(start: u8, n: u8, m: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            go(x + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, m, &mut Vec::new(), &mut out);
    out
}

/// Every instance of a tagged identity at rank `n`, minors of size ≤ `max_m`.
pub fn minor_identity_instances(tag: &str, n: u8, max_m: usize) -> Result<Vec<MinorIdentity>, UeaError> {
    let mut out = Vec::new();
    let pairs = || {
        let mut v = Vec::new();
        for m in 1..=max_m.min(n as usize) {
            for r in subsets(n, m) {
                for c in subsets(n, m) {
                    v.push((r.clone(), c));
                }
            }
        }
        v
    };
    match tag {
        "antisymmetry" => {
            for (rows, cols) in pairs() {
                if rows.len() >= 2 {
                    out.push(MinorIdentity::Antisymmetry { rows, cols });
                }
            }
        }
        "decomposition" => {
            for (rows, cols) in pairs() {
                out.push(MinorIdentity::Decomposition { rows, cols });
            }
        }
        "generator-commutator" => {
            for (rows, cols) in pairs() {
                for k in 1..=n {
                    for l in 1..=n {
                        if k != l {
                            out.push(MinorIdentity::GeneratorCommutator { k, l, rows: rows.clone(), cols: cols.clone() });
                        }
                    }
                }
            }
        }
        "adjacent-commute" => {
            for k in 1..=n {
                for l in k..=n {
                    out.push(MinorIdentity::AdjacentCommute { k, l });
                }
            }
        }
        "cyclic-commute" => {
            for d in 2..=n {
                for a in d + 1..=n {
                    out.push(MinorIdentity::CyclicCommute { a, d });
                }
            }
        }
        "minor-quotient" => {
            for c in 1..=n {
                for l in 1..=c {
                    out.push(MinorIdentity::MinorQuotient { l, c });
                }
            }
        }
        "comatrix-product" => {
            for c in 1..=n {
                for i in 1..=c {
                    for j in 1..=c {
                        out.push(MinorIdentity::ComatrixProduct { c, i, j });
                    }
                }
            }
        }
        "rtt" => out.push(MinorIdentity::Rtt),
        "evaluation" => out.push(MinorIdentity::Evaluation),
        "qdet-central" => out.push(MinorIdentity::QdetCentral),
        "comatrix" => out.push(MinorIdentity::Comatrix),
        other => return Err(UeaError::UnknownIdentity(other.to_string())),
    }
    Ok(out)
}

/// Runs every instance of a tagged identity, in parallel, folding the verdicts.
pub fn verify_minor_family(tag: &str, n: u8, max_m: usize) -> Result<CheckReport, UeaError> {
    let inst = minor_identity_instances(tag, n, max_m)?;
    let results: Vec<Result<CheckReport, UeaError>> =
        inst.par_iter().map(|id| verify_minor_identity(n, id)).collect();
    let mut rep = CheckReport::new(format!("{tag} (N={n})"));
    for r in results {
        rep.absorb(r?);
    }
    Ok(rep)
}
