//! The rational Cremmer-Gervais twist and R-matrix extracted from the
//! Kirillov projector, the classical family `r^CG(u⃗)`, and the constant
//! Yang-Baxter checkers.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::check::CheckReport;
use crate::matrix::{Field, ScalarMatrix};
use crate::reps::{Rep, RepError};
use crate::scalar::{Scalar, ScalarError};
use crate::uea::{bracket, e, Algebra, Generator, Subalgebra};
use crate::whittaker::{QClass, WhittakerError, WhittakerModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error(transparent)]
    Whittaker(#[from] WhittakerError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("re-projection of column {0} does not reproduce the projected class")]
    ConsistencyCheckFailed(usize),
    #[error("the twist matrix is singular")]
    SingularTwist,
    #[error("the 2-form is degenerate at the given parameters")]
    SingularForm,
    #[error("a twist entry has a pole at hbar = 0")]
    PoleAtZero,
    #[error("representation is not over the mirabolic algebra of rank {0}")]
    WrongAlgebra(u8),
}

impl From<ScalarError> for TwistError {
    fn from(_: ScalarError) -> Self {
        TwistError::PoleAtZero
    }
}

/// A square matrix on `V⊗W` with the data it was computed from.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistMatrix {
    pub n: u8,
    pub u: Vec<Scalar>,
    pub reps: Vec<String>,
    pub convention: String,
    pub matrix: ScalarMatrix,
}

impl TwistMatrix {
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct J<'a> {
            format: u32,
            n: u8,
            u: Vec<String>,
            reps: &'a [String],
            convention: &'a str,
            matrix: Vec<Vec<String>>,
        }
        serde_json::to_value(J {
            format: 1,
            n: self.n,
            u: self.u.iter().map(|s| s.to_string()).collect(),
            reps: &self.reps,
            convention: &self.convention,
            matrix: self.matrix.to_strings(),
        })
        .expect("serializable")
    }
}

fn mirabolic_rep(r: &Rep, n: u8) -> Result<Rep, TwistError> {
    if r.alg.n != n {
        return Err(TwistError::WrongAlgebra(n));
    }
    Ok(match r.alg.sub {
        Subalgebra::Mirabolic => r.clone(),
        Subalgebra::Gl => r.restrict(Subalgebra::Mirabolic),
    })
}

/// `F_{VW}(u⃗)`: column `v_a⊗w_b` is the image of `(([∅]⊗v_a)·P ⊗ w_b)·P`
/// modulo the shifted Borel.
pub fn compute_twist(v: &Rep, w: &Rep, u: &[Scalar]) -> Result<ScalarMatrix, TwistError> {
    let n = u.len() as u8 + 1;
    let (v, w) = (mirabolic_rep(v, n)?, mirabolic_rep(w, n)?);
    let alg = Algebra::mirabolic(n);
    let mv = WhittakerModule::new(alg, v.clone());
    let mvw = WhittakerModule::new(alg, v.tensor(&w)?);
    let (dv, dw) = (v.dim, w.dim);
    let projected: Vec<QClass> =
        (0..dv).into_par_iter().map(|a| mv.apply_kirillov(&QClass::unit(a), u)).collect::<Result<_, _>>()?;
    let cols: Vec<Vec<Scalar>> = (0..dv * dw)
        .into_par_iter()
        .map(|col| -> Result<Vec<Scalar>, TwistError> {
            let (a, b) = (col / dw, col % dw);
            let x = projected[a].map_basis(|k| k * dw + b);
            let m = mvw.apply_kirillov(&x, u)?;
            let f = mvw.reduce_mod_borel_u(&m, u)?;
            let back = mvw.apply_kirillov(&WhittakerModule::from_vector(&f), u)?;
            if back != m {
                return Err(TwistError::ConsistencyCheckFailed(col));
            }
            Ok(f)
        })
        .collect::<Result<_, _>>()?;
    Ok(ScalarMatrix::from_fn(dv * dw, dv * dw, |r, c| cols[c][r].clone()))
}

/// `τ ∘ F_{WV} ∘ τ` as an operator on `V⊗W`.
pub fn flipped(f_wv: &ScalarMatrix, dv: usize, dw: usize) -> ScalarMatrix {
    ScalarMatrix::flip(dw, dv).mul(f_wv).mul(&ScalarMatrix::flip(dv, dw))
}

/// `R = (τ F_{WV} τ)^{-1} F_{VW}`.
pub fn compute_r_matrix(v: &Rep, w: &Rep, u: &[Scalar]) -> Result<ScalarMatrix, TwistError> {
    let f_vw = compute_twist(v, w, u)?;
    let f_wv = if v == w { f_vw.clone() } else { compute_twist(w, v, u)? };
    let inv = flipped(&f_wv, v.dim, w.dim).inverse().ok_or(TwistError::SingularTwist)?;
    Ok(inv.mul(&f_vw))
}

pub fn twist_matrix(v: &Rep, w: &Rep, u: &[Scalar]) -> Result<TwistMatrix, TwistError> {
    Ok(TwistMatrix {
        n: u.len() as u8 + 1,
        u: u.to_vec(),
        reps: vec![v.name.clone(), w.name.clone()],
        convention: "column v_a⊗w_b, a outer".into(),
        matrix: compute_twist(v, w, u)?,
    })
}

pub fn r_matrix(v: &Rep, w: &Rep, u: &[Scalar]) -> Result<TwistMatrix, TwistError> {
    Ok(TwistMatrix {
        n: u.len() as u8 + 1,
        u: u.to_vec(),
        reps: vec![v.name.clone(), w.name.clone()],
        convention: "R = (flip F_WV flip)^-1 F_VW".into(),
        matrix: compute_r_matrix(v, w, u)?,
    })
}

fn id(d: usize) -> ScalarMatrix {
    ScalarMatrix::identity(d)
}

/// The twist equation `F_{U⊗V,W}(F_{UV}⊗1) = F_{U,V⊗W}(1⊗F_{VW})`,
/// with `twist` supplying `F` for any pair.
pub fn twist_equation_with(
    u_rep: &Rep,
    v_rep: &Rep,
    w_rep: &Rep,
    twist: &dyn Fn(&Rep, &Rep) -> Result<ScalarMatrix, TwistError>,
) -> Result<CheckReport, TwistError> {
    let uv = u_rep.tensor(v_rep)?;
    let vw = v_rep.tensor(w_rep)?;
    let lhs = twist(&uv, w_rep)?.mul(&twist(u_rep, v_rep)?.kron(&id(w_rep.dim)));
    let rhs = twist(u_rep, &vw)?.mul(&id(u_rep.dim).kron(&twist(v_rep, w_rep)?));
    let mut rep = CheckReport::new("twist equation");
    let diff = lhs.first_difference(&rhs);
    rep.record("F12", diff.is_none(), || diff.clone().unwrap_or_default());
    Ok(rep)
}

pub fn verify_twist_equation(u_rep: &Rep, v_rep: &Rep, w_rep: &Rep, u: &[Scalar]) -> Result<CheckReport, TwistError> {
    twist_equation_with(u_rep, v_rep, w_rep, &|a, b| compute_twist(a, b, u))
}

/// `R_{13}` on `U⊗V⊗W` from `R` on `U⊗W`.
pub fn embed13(r_uw: &ScalarMatrix, du: usize, dv: usize, dw: usize) -> ScalarMatrix {
    let p = id(du).kron(&ScalarMatrix::flip(dv, dw));
    let pinv = id(du).kron(&ScalarMatrix::flip(dw, dv));
    pinv.mul(&r_uw.kron(&id(dv))).mul(&p)
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` with `rmat` supplying `R` for any pair.
pub fn qybe_with(
    u_rep: &Rep,
    v_rep: &Rep,
    w_rep: &Rep,
    rmat: &dyn Fn(&Rep, &Rep) -> Result<ScalarMatrix, TwistError>,
) -> Result<CheckReport, TwistError> {
    let (du, dv, dw) = (u_rep.dim, v_rep.dim, w_rep.dim);
    let r12 = rmat(u_rep, v_rep)?.kron(&id(dw));
    let r23 = id(du).kron(&rmat(v_rep, w_rep)?);
    let r13 = embed13(&rmat(u_rep, w_rep)?, du, dv, dw);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    let mut rep = CheckReport::new("QYBE");
    let diff = lhs.first_difference(&rhs);
    rep.record("R12R13R23", diff.is_none(), || diff.clone().unwrap_or_default());
    Ok(rep)
}

pub fn verify_qybe(u_rep: &Rep, v_rep: &Rep, w_rep: &Rep, u: &[Scalar]) -> Result<CheckReport, TwistError> {
    let cache = std::sync::Mutex::new(BTreeMap::<(String, String), ScalarMatrix>::new());
    qybe_with(u_rep, v_rep, w_rep, &|a, b| {
        let key = (a.name.clone(), b.name.clone());
        if let Some(m) = cache.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let m = compute_r_matrix(a, b, u)?;
        cache.lock().unwrap().insert(key, m.clone());
        Ok(m)
    })
}

/// `Σ_k (−ℏ)^k/k! ρ_V(E21)^k ⊗ Π_{i<k} (ρ_W(E11) − i·step)` for `N = 2`.
pub fn gl2_closed_form(v: &Rep, w: &Rep, step: &Scalar) -> ScalarMatrix {
    let e21 = v.rho(e(2, 1)).to_scalar();
    let e11 = w.rho(e(1, 1)).to_scalar();
    let h = Scalar::hbar();
    let mut total = ScalarMatrix::zeros(v.dim * w.dim, v.dim * w.dim);
    let mut left = id(v.dim);
    let mut right = id(w.dim);
    let mut coeff = Scalar::one();
    for k in 0.. {
        if left.is_zero() || right.is_zero() {
            break;
        }
        total = total.add(&left.kron(&right).scale(&coeff));
        left = left.mul(&e21);
        right = right.mul(&e11.sub(&id(w.dim).scale(&step.scale_int(k))));
        coeff = &coeff * &(&-&h / &Scalar::from_int(k + 1));
    }
    total
}

/// An element of `m_N ∧ m_N`, stored as `Σ R_pq x_p ⊗ x_q` with `R` antisymmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivector {
    pub n: u8,
    pub basis: Vec<Generator>,
    pub coeffs: ScalarMatrix,
}

impl Bivector {
    pub fn zero(n: u8) -> Self {
        let basis = Algebra::mirabolic(n).generators();
        let d = basis.len();
        Bivector { n, basis, coeffs: ScalarMatrix::zeros(d, d) }
    }

    /// `Σ c · (x∧y)` with `x∧y = x⊗y − y⊗x`.
    pub fn from_wedges(n: u8, terms: &[(Generator, Generator, Scalar)]) -> Self {
        let mut b = Bivector::zero(n);
        for (x, y, c) in terms {
            let p = b.index(*x);
            let q = b.index(*y);
            let cur = b.coeffs.get(p, q).add(c);
            b.coeffs.set(p, q, cur);
            let cur = b.coeffs.get(q, p).sub(c);
            b.coeffs.set(q, p, cur);
        }
        b
    }

    fn index(&self, g: Generator) -> usize {
        self.basis.iter().position(|&x| x == g).expect("generator in the mirabolic basis")
    }

    /// `r(x_p^*) = Σ_q R_pq x_q`: contraction in the first slot.
    pub fn contract(&self, g: Generator) -> BTreeMap<Generator, Scalar> {
        let p = self.index(g);
        self.basis
            .iter()
            .enumerate()
            .filter(|(q, _)| !self.coeffs.get(p, *q).is_zero())
            .map(|(q, &x)| (x, self.coeffs.get(p, q).clone()))
            .collect()
    }

    /// `Σ R_pq ρ_V(x_p) ⊗ ρ_W(x_q)`.
    pub fn image(&self, v: &Rep, w: &Rep) -> ScalarMatrix {
        let mut out = ScalarMatrix::zeros(v.dim * w.dim, v.dim * w.dim);
        for (p, q, c) in self.coeffs.entries() {
            if c.is_zero() {
                continue;
            }
            let t = v.rho(self.basis[p]).to_scalar().kron(&w.rho(self.basis[q]).to_scalar());
            out = out.add(&t.scale(c));
        }
        out
    }

    /// `(x, y, c)` for `p < q`, meaning `c·x∧y`.
    pub fn wedge_terms(&self) -> Vec<(Generator, Generator, Scalar)> {
        let mut v = Vec::new();
        for (p, q, c) in self.coeffs.entries() {
            if p < q && !c.is_zero() {
                v.push((self.basis[p], self.basis[q], c.clone()));
            }
        }
        v
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct W {
            left: [u8; 2],
            right: [u8; 2],
            coeff: String,
        }
        let terms: Vec<W> = self
            .wedge_terms()
            .into_iter()
            .map(|(x, y, c)| W { left: [x.i, x.j], right: [y.i, y.j], coeff: c.to_string() })
            .collect();
        serde_json::json!({ "format": 1, "n": self.n, "convention": "x^y = x(x)y - y(x)x", "wedges": terms })
    }
}

/// `Tr(e_{u⃗} · [x, y])` with `e_{u⃗} = Σ E_{i,i+1} − Σ u_i E_ii`.
pub fn omega(u: &[Scalar], x: Generator, y: Generator) -> Scalar {
    let mut acc = Scalar::zero();
    for (z, c) in bracket(x, y) {
        // Tr(E_{k,k+1} E_ij) = δ_{i,k+1} δ_{j,k}; Tr(E_kk E_ij) = δ_ik δ_jk
        let t = if z.i == z.j + 1 {
            Scalar::one()
        } else if z.i == z.j && (z.i as usize) <= u.len() {
            -&u[z.i as usize - 1]
        } else {
            Scalar::zero()
        };
        acc = &acc + &t.scale_int(c);
    }
    acc
}

/// `r^CG(u⃗)`, the inverse of `ω(u⃗)` on `m_N`.
pub fn classical_cg(u: &[Scalar]) -> Result<Bivector, TwistError> {
    let n = u.len() as u8 + 1;
    let basis = Algebra::mirabolic(n).generators();
    let d = basis.len();
    let om = ScalarMatrix::from_fn(d, d, |p, q| omega(u, basis[p], basis[q]));
    let inv = om.inverse().ok_or(TwistError::SingularForm)?;
    Ok(Bivector { n, basis, coeffs: inv })
}

/// The recursion characterising `r^CG(u⃗)` on the dual basis.
pub fn verify_cg_recursion(r: &Bivector, u: &[Scalar]) -> CheckReport {
    let n = r.n;
    let mut rep = CheckReport::new(format!("cg recursion (N={n})"));
    let add = |acc: &mut BTreeMap<Generator, Scalar>, g: Generator, c: Scalar| {
        let v = acc.entry(g).or_insert_with(Scalar::zero);
        *v = &*v + &c;
    };
    for i in 1..n {
        for k in 1..=n - i {
            let lhs = r.contract(e(i + k, i));
            let mut rhs = BTreeMap::new();
            add(&mut rhs, e(i, i + k - 1), Scalar::from_int(-1));
            let c = &u[i as usize - 1] - &u[(i + k - 1) as usize - 1];
            for (g, x) in r.contract(e(i + k - 1, i)) {
                add(&mut rhs, g, -&(&c * &x));
            }
            if i > 1 {
                for (g, x) in r.contract(e(i + k - 1, i - 1)) {
                    add(&mut rhs, g, x);
                }
            }
            rhs.retain(|_, c| !c.is_zero());
            rep.record(format!("i={i},k={k}"), lhs == rhs, || format!("{lhs:?} vs {rhs:?}"));
        }
    }
    rep
}

/// `r^CG(0) = −Σ_{i>j} E_ij ∧ Σ_{k=1}^{j} E_{k,k+i−1−j}`.
pub fn cg_zero_display(n: u8) -> Bivector {
    let mut terms = Vec::new();
    for i in 1..=n {
        for j in 1..i {
            for k in 1..=j {
                terms.push((e(i, j), e(k, k + i - 1 - j), Scalar::from_int(-1)));
            }
        }
    }
    Bivector::from_wedges(n, &terms)
}

/// `[r12, r13] + [r12, r23] + [r13, r23]` on `V⊗V⊗V`.
pub fn cybe_residual(r: &Bivector, v: &Rep) -> ScalarMatrix {
    let d = v.dim;
    let mats: Vec<ScalarMatrix> = r.basis.iter().map(|g| v.rho(*g).to_scalar()).collect();
    let one = id(d);
    let mut r12 = ScalarMatrix::zeros(d * d * d, d * d * d);
    let mut r13 = r12.clone();
    let mut r23 = r12.clone();
    for (p, q, c) in r.coeffs.entries() {
        if c.is_zero() {
            continue;
        }
        let (a, b) = (&mats[p], &mats[q]);
        r12 = r12.add(&a.kron(b).kron(&one).scale(c));
        r13 = r13.add(&a.kron(&one).kron(b).scale(c));
        r23 = r23.add(&one.kron(a).kron(b).scale(c));
    }
    r12.commutator(&r13).add(&r12.commutator(&r23)).add(&r13.commutator(&r23))
}

pub fn verify_cybe(r: &Bivector, v: &Rep) -> CheckReport {
    let res = cybe_residual(r, v);
    let mut rep = CheckReport::new(format!("CYBE (N={})", r.n));
    let diff = res.first_difference(&ScalarMatrix::zeros(res.rows(), res.cols()));
    rep.record("vector", diff.is_none(), || diff.clone().unwrap_or_default());
    rep
}

/// The ℏ-linear coefficient of `F_{VW}` antisymmetrised, against `r^CG(u⃗)`
/// acting on `V⊗W`.
pub fn semiclassical_compare(v: &Rep, w: &Rep, u: &[Scalar]) -> Result<CheckReport, TwistError> {
    let n = u.len() as u8 + 1;
    let first = |m: &ScalarMatrix| -> Result<ScalarMatrix, TwistError> {
        m.try_map(|x| x.h_series(1).map(|s| s[1].clone())).map_err(TwistError::from)
    };
    let f_vw = first(&compute_twist(v, w, u)?)?;
    let f_wv = if v == w { f_vw.clone() } else { first(&compute_twist(w, v, u)?)? };
    let lhs = f_vw.sub(&flipped(&f_wv, v.dim, w.dim));
    let r = classical_cg(u)?;
    let (vm, wm) = (mirabolic_rep(v, n)?, mirabolic_rep(w, n)?);
    let rhs = r.image(&vm, &wm);
    let mut rep = CheckReport::new(format!("semiclassical limit (N={n})"));
    let diff = lhs.first_difference(&rhs);
    rep.record("f - flip f flip", diff.is_none(), || diff.clone().unwrap_or_default());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{hbar, u};

    fn vec_m(n: u8) -> Rep {
        Rep::vector(n).restrict(Subalgebra::Mirabolic)
    }

    #[test]
    fn gl2_twist_columns() {
        let v = vec_m(2);
        let f = compute_twist(&v, &v, &[u(1)]).unwrap();
        // F(v1⊗v1) = v1⊗v1 − ℏ v2⊗v1
        assert_eq!(f.get(0, 0), &Scalar::one());
        assert_eq!(f.get(2, 0), &-hbar());
        for col in 2..4 {
            for row in 0..4 {
                let want = if row == col { Scalar::one() } else { Scalar::zero() };
                assert_eq!(f.get(row, col), &want);
            }
        }
    }

    #[test]
    fn trivial_reps_give_identity() {
        let t = Rep::trivial(Algebra::mirabolic(2));
        assert!(compute_r_matrix(&t, &t, &[u(1)]).unwrap().is_identity());
    }

    #[test]
    fn classical_small_cases() {
        let r = classical_cg(&[Scalar::zero()]).unwrap();
        assert_eq!(r, Bivector::from_wedges(2, &[(e(2, 1), e(1, 1), Scalar::from_int(-1))]));
        assert_eq!(omega(&[u(1)], e(1, 1), e(2, 1)), Scalar::from_int(-1));
        assert!(verify_cybe(&Bivector::zero(2), &vec_m(2)).holds);
        let x = Bivector::from_wedges(2, &[(e(1, 1), e(2, 1), Scalar::one())]);
        assert!(verify_cybe(&x, &vec_m(2)).holds);
    }

    #[test]
    fn perturbed_twist_fails() {
        let v = vec_m(2);
        let bad = |a: &Rep, b: &Rep| -> Result<ScalarMatrix, TwistError> {
            let mut f = compute_twist(a, b, &[u(1)])?;
            let d = f.rows();
            let x = f.get(d - 1, 0).add(&hbar());
            f.set(d - 1, 0, x);
            Ok(f)
        };
        assert!(!twist_equation_with(&v, &v, &v, &bad).unwrap().holds);
    }
}
