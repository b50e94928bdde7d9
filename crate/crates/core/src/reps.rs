//! Finite-dimensional weight representations of `gl_N` and `m_N`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{Field, RatMatrix, ScalarMatrix};
use crate::scalar::{BigRational, Param, Scalar};
use crate::uea::{bracket, Algebra, Generator, Subalgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("representations of different rank")]
    RankMismatch,
    #[error("denominator vanishes after the weight shift: {0}")]
    PoleAtShiftedPoint(String),
    #[error("tensor slot {0} out of range")]
    BadSlot(usize),
}

/// Lie action matrices (no ℏ) and integral weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep {
    pub alg: Algebra,
    pub dim: usize,
    pub action: BTreeMap<Generator, RatMatrix>,
    pub weights: Vec<Vec<i64>>,
    pub name: String,
}

impl Rep {
    pub fn trivial(alg: Algebra) -> Rep {
        let action = alg.generators().into_iter().map(|g| (g, RatMatrix::zeros(1, 1))).collect();
        Rep { alg, dim: 1, action, weights: vec![vec![0; alg.n as usize]], name: "trivial".into() }
    }

    /// `ℂ^N` with `ρ(E_ij) = e_ij`.
    pub fn vector(n: u8) -> Rep {
        let alg = Algebra::gl(n);
        let d = n as usize;
        let action = alg
            .generators()
            .into_iter()
            .map(|g| (g, RatMatrix::unit(d, g.i as usize - 1, g.j as usize - 1)))
            .collect();
        let weights = (0..d)
            .map(|k| {
                let mut w = vec![0; d];
                w[k] = 1;
                w
            })
            .collect();
        Rep { alg, dim: d, action, weights, name: "vector".into() }
    }

    pub fn dual(&self) -> Rep {
        let action = self.action.iter().map(|(g, m)| (*g, m.transpose().neg())).collect();
        let weights = self.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect();
        Rep { alg: self.alg, dim: self.dim, action, weights, name: format!("dual({})", self.name) }
    }

    /// `ρ(x) ⊗ 1 + 1 ⊗ ρ(x)`, basis `v_a ⊗ w_b` with `a` outer.
    pub fn tensor(&self, o: &Rep) -> Result<Rep, RepError> {
        if self.alg != o.alg {
            return Err(RepError::RankMismatch);
        }
        let (ia, ib) = (RatMatrix::identity(self.dim), RatMatrix::identity(o.dim));
        let action = self
            .action
            .iter()
            .map(|(g, m)| (*g, m.kron(&ib).add(&ia.kron(&o.action[g]))))
            .collect();
        let mut weights = Vec::with_capacity(self.dim * o.dim);
        for a in &self.weights {
            for b in &o.weights {
                weights.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Ok(Rep { alg: self.alg, dim: self.dim * o.dim, action, weights, name: format!("{}⊗{}", self.name, o.name) })
    }

    pub fn restrict(&self, sub: Subalgebra) -> Rep {
        let alg = Algebra { n: self.alg.n, sub };
        let action = self.action.iter().filter(|(g, _)| alg.contains(**g)).map(|(g, m)| (*g, m.clone())).collect();
        Rep { alg, dim: self.dim, action, weights: self.weights.clone(), name: self.name.clone() }
    }

    pub fn n(&self) -> u8 {
        self.alg.n
    }

    /// `ρ(g)`, or an error if `g` is not in the algebra.
    pub fn rho(&self, g: Generator) -> &RatMatrix {
        &self.action[&g]
    }

    /// `ρ(g) e_b` as a sparse column.
    pub fn act_on_basis(&self, g: Generator, b: usize) -> Vec<(usize, BigRational)> {
        let m = self.rho(g);
        (0..self.dim).filter_map(|r| {
            let x = m.get(r, b);
            (!Field::is_zero(x)).then(|| (r, x.clone()))
        }).collect()
    }

    /// First generator pair violating `[ρ(x),ρ(y)] = ρ([x,y])`.
    pub fn axiom_violation(&self) -> Option<(Generator, Generator)> {
        for (x, mx) in &self.action {
            for (y, my) in &self.action {
                let mut want = RatMatrix::zeros(self.dim, self.dim);
                for (z, c) in bracket(*x, *y) {
                    want = want.add(&self.action[&z].scale(&BigRational::from_integer(c.into())));
                }
                if mx.commutator(my) != want {
                    return Some((*x, *y));
                }
            }
        }
        None
    }

    /// Whether each available `ρ(E_kk)` is diagonal with the recorded weights.
    pub fn weights_consistent(&self) -> bool {
        (1..=self.alg.n).all(|k| {
            let Some(m) = self.action.get(&crate::uea::e(k, k)) else { return true };
            m.entries().all(|(r, c, x)| {
                let want = if r == c { BigRational::from_integer(self.weights[r][k as usize - 1].into()) } else { Field::zero() };
                *x == want
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct G {
            i: u8,
            j: u8,
            matrix: Vec<Vec<String>>,
        }
        #[derive(Serialize)]
        struct R<'a> {
            format: u32,
            dim: usize,
            generators: Vec<G>,
            weights: &'a [Vec<i64>],
        }
        let generators = self.action.iter().map(|(g, m)| G { i: g.i, j: g.j, matrix: m.to_strings() }).collect();
        serde_json::to_value(R { format: 1, dim: self.dim, generators, weights: &self.weights }).expect("serializable")
    }
}

/// Substitutes `λ_k ↦ λ_k − ℏ·wt_k` in every column according to the weight of
/// that column's basis vector in tensor slot `slot` of `reps`.
pub fn weight_shift_substitute(f: &ScalarMatrix, slot: usize, reps: &[&Rep]) -> Result<ScalarMatrix, RepError> {
    if slot >= reps.len() {
        return Err(RepError::BadSlot(slot));
    }
    let dims: Vec<usize> = reps.iter().map(|r| r.dim).collect();
    let inner: usize = dims[slot + 1..].iter().product();
    let h = Scalar::hbar();
    let n = reps[slot].alg.n;
    let shifts: Vec<BTreeMap<Param, Scalar>> = reps[slot]
        .weights
        .iter()
        .map(|w| {
            (1..=n)
                .map(|k| {
                    let p = Param::Lambda(k);
                    (p, &Scalar::param(p) - &h.scale_int(w[k as usize - 1]))
                })
                .collect()
        })
        .collect();
    let mut out = f.clone();
    for (r, c, x) in f.entries() {
        if x.is_constant_scalar() {
            continue;
        }
        let b = (c / inner) % dims[slot];
        let y = x.substitute(&shifts[b]).map_err(|_| RepError::PoleAtShiftedPoint(format!("({r},{c})")))?;
        out.set(r, c, y);
    }
    Ok(out)
}

trait ConstCheck {
    fn is_constant_scalar(&self) -> bool;
}

impl ConstCheck for Scalar {
    fn is_constant_scalar(&self) -> bool {
        self.constant_value().is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uea::e;

    #[test]
    fn vector_rep_examples() {
        let v = Rep::vector(2);
        assert_eq!(v.act_on_basis(e(2, 1), 0), vec![(1, Field::one())]);
        assert!(v.act_on_basis(e(2, 1), 1).is_empty());
        assert!(Rep::vector(3).axiom_violation().is_none());
        assert!(Rep::vector(3).weights_consistent());
    }

    #[test]
    fn dual_and_tensor() {
        let v = Rep::vector(2);
        let d = v.dual();
        assert_eq!(d.rho(e(2, 1)), &v.rho(e(2, 1)).transpose().neg());
        assert!(d.axiom_violation().is_none());
        let t = v.tensor(&v).unwrap();
        assert_eq!(t.dim, 4);
        assert_eq!(t.weights[0], vec![2, 0]);
        assert!(t.axiom_violation().is_none() && t.weights_consistent());
    }

    #[test]
    fn restriction() {
        let r = Rep::vector(3).restrict(Subalgebra::Mirabolic);
        assert!(!r.action.contains_key(&e(1, 3)) && !r.action.contains_key(&e(3, 3)));
        assert_eq!(r.action.len(), 6);
        let v = Rep::vector(3);
        let a = v.tensor(&v).unwrap().restrict(Subalgebra::Mirabolic);
        let b = v.restrict(Subalgebra::Mirabolic).tensor(&v.restrict(Subalgebra::Mirabolic)).unwrap();
        assert_eq!(a.action, b.action);
    }

    #[test]
    fn weight_shift() {
        let v = Rep::vector(2);
        let l = &crate::scalar::lambda(1) - &crate::scalar::lambda(2);
        let f = ScalarMatrix::identity(2).scale(&(Scalar::one() / l));
        let g = weight_shift_substitute(&f, 0, &[&v]).unwrap();
        let want = Scalar::one() / (&(&crate::scalar::lambda(1) - &Scalar::hbar()) - &crate::scalar::lambda(2));
        assert_eq!(g.get(0, 0), &want);
        let c = ScalarMatrix::identity(4);
        assert_eq!(weight_shift_substitute(&c, 1, &[&v, &v]).unwrap(), c);
    }
}
