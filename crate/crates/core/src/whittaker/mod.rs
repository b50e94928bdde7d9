//! The Whittaker quotient `Q = n_−^ψ\U_ℏ(m_N)`, translated modules `Q⊗V`,
//! the Kirillov projector and the reduction modulo the shifted Borel.
//!
//! Classes are stored over PBW monomials in the non-lower generators of the
//! ambient algebra. With the mirabolic ambient these are `E_kl`, `k ≤ l ≤ N−1`;
//! with `gl_N` the last column joins them.

mod identities;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use serde::Serialize;
use thiserror::Error;

use crate::reps::Rep;
use crate::scalar::Scalar;
use crate::uea::{e, mono_times_gen, Algebra, Element, Generator, MinorSpec, Monomial, UeaError};

pub use identities::{
    spanning_set, verify_projector_identity, ProjectorIdentity, PROJECTOR_IDENTITY_TAGS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WhittakerError {
    #[error("series for P_{i}{j} still nonzero after {bound} terms")]
    TerminationBoundExceeded { i: u8, j: u8, bound: usize },
    #[error("a negative power of hbar survived the projector factor P_{i}{j}")]
    ResidualNegativePower { i: u8, j: u8 },
    #[error("expected {expected} spectral parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error(transparent)]
    Uea(#[from] UeaError),
}

/// `ψ(E_{i+1,i}) = 1`, zero on the other negative root vectors.
pub fn psi(g: Generator) -> i64 {
    i64::from(g.i == g.j + 1)
}

/// An element of `Q ⊗ V`, keyed by (Borel-side monomial, basis index).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QClass {
    terms: BTreeMap<(Monomial, usize), Scalar>,
}

fn add_term(acc: &mut BTreeMap<(Monomial, usize), Scalar>, key: (Monomial, usize), c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl QClass {
    pub fn zero() -> Self {
        QClass::default()
    }

    /// `[∅] ⊗ e_b`.
    pub fn unit(b: usize) -> Self {
        QClass::term(Monomial::one(), b, Scalar::one())
    }

    pub fn term(m: Monomial, b: usize, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        add_term(&mut terms, (m, b), c);
        QClass { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((Monomial, usize), Scalar)>) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in it {
            add_term(&mut terms, k, c);
        }
        QClass { terms }
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, usize), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &QClass) -> QClass {
        let mut terms = self.terms.clone();
        for (k, c) in &o.terms {
            add_term(&mut terms, k.clone(), c.clone());
        }
        QClass { terms }
    }

    pub fn add_assign_scaled(&mut self, o: &QClass, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, d) in &o.terms {
            add_term(&mut self.terms, k.clone(), d * c);
        }
    }

    pub fn sub(&self, o: &QClass) -> QClass {
        let mut out = self.clone();
        out.add_assign_scaled(o, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> QClass {
        if c.is_zero() {
            return QClass::zero();
        }
        QClass { terms: self.terms.iter().map(|(k, d)| (k.clone(), d * c)).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> QClass {
        QClass::from_terms(self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }

    /// Relabels basis indices, e.g. to embed `Q⊗V` into `Q⊗V⊗W`.
    pub fn map_basis(&self, f: impl Fn(usize) -> usize) -> QClass {
        QClass::from_terms(self.terms.iter().map(|((m, b), c)| ((m.clone(), f(*b)), c.clone())))
    }

    /// Smallest ℏ-exponent among the coefficients.
    pub fn h_valuation(&self) -> i64 {
        self.terms.values().map(Scalar::h_valuation).min().unwrap_or(i64::MAX)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|(m, _)| m.len()).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct T {
            monomial: Vec<[u8; 2]>,
            basis: usize,
            coeff: String,
        }
        let v: Vec<T> = self
            .terms
            .iter()
            .map(|((m, b), c)| T { monomial: m.factors().iter().map(|g| [g.i, g.j]).collect(), basis: *b, coeff: c.to_string() })
            .collect();
        serde_json::to_value(v).expect("serializable")
    }
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((m, b), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let m = if m.is_empty() { "∅".to_string() } else { m.to_string() };
            write!(f, "({c})[{m}]⊗v{}", b + 1)?;
        }
        Ok(())
    }
}

type QTerms = Arc<Vec<(Monomial, Scalar)>>;

/// `ψ`-reduction of `b · g` for a Borel-side monomial `b`.
fn q_times_gen(b: &Monomial, g: Generator) -> Result<QTerms, UeaError> {
    static C: OnceLock<DashMap<(Monomial, Generator), QTerms>> = OnceLock::new();
    let cache = C.get_or_init(DashMap::new);
    let key = (b.clone(), g);
    if let Some(hit) = cache.get(&key) {
        return Ok(hit.clone());
    }
    let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    for (m, c) in mono_times_gen(b, g)?.iter() {
        let f = m.factors();
        let cut = f.iter().position(|x| !x.is_lower()).unwrap_or(f.len());
        if f[..cut].iter().all(|x| psi(*x) == 1) {
            let rest = Monomial(f[cut..].iter().copied().collect());
            let v = acc.entry(rest).or_insert_with(Scalar::zero);
            *v = &*v + c;
        }
    }
    let out: QTerms = Arc::new(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
    cache.insert(key, out.clone());
    Ok(out)
}

/// A translated Whittaker module `Q ⊗ V` over `U_ℏ(m_N)` or `U_ℏ(gl_N)`.
#[derive(Clone, Debug)]
pub struct WhittakerModule {
    pub ambient: Algebra,
    pub rep: Rep,
}

#[derive(Default)]
struct Trie {
    coeff: Option<Scalar>,
    children: BTreeMap<Generator, Trie>,
}

impl Trie {
    fn insert(&mut self, word: &[Generator], c: &Scalar) {
        match word.split_first() {
            None => self.coeff = Some(c.clone()),
            Some((g, rest)) => self.children.entry(*g).or_default().insert(rest, c),
        }
    }
}

impl WhittakerModule {
    /// `Q ⊗ V`; `rep` must have the ambient's generators.
    pub fn new(ambient: Algebra, rep: Rep) -> Self {
        WhittakerModule { ambient, rep }
    }

    pub fn mirabolic(n: u8) -> Self {
        let alg = Algebra::mirabolic(n);
        WhittakerModule { ambient: alg, rep: Rep::trivial(alg) }
    }

    pub fn n(&self) -> u8 {
        self.ambient.n
    }

    pub fn dim(&self) -> usize {
        self.rep.dim
    }

    /// The projection `U → Q ⊗ V`, `a ↦ [a] ⊗ e_b`.
    pub fn reduce_to_q(&self, a: &Element, b: usize) -> QClass {
        QClass::from_terms(a.psi_reduce().terms().iter().map(|(m, c)| ((m.clone(), b), c.clone())))
    }

    /// `(q⊗v)·g = qg ⊗ v − ℏ q ⊗ ρ(g)v`.
    pub fn act_gen(&self, w: &QClass, g: Generator) -> Result<QClass, WhittakerError> {
        if !self.ambient.contains(g) {
            return Err(UeaError::NotInAlgebra(g).into());
        }
        let h = Scalar::hbar();
        let mut out = BTreeMap::new();
        for ((m, b), c) in &w.terms {
            for (m2, c2) in q_times_gen(m, g)?.iter() {
                add_term(&mut out, (m2.clone(), *b), c * c2);
            }
            for (r, x) in self.rep.act_on_basis(g, *b) {
                add_term(&mut out, (m.clone(), r), -(&(c * &h)).scale_rational(&x));
            }
        }
        Ok(QClass { terms: out })
    }

    /// Right action of an element, its monomials applied leftmost factor first.
    pub fn act(&self, w: &QClass, a: &Element) -> Result<QClass, WhittakerError> {
        if a.algebra().n != self.n() {
            return Err(UeaError::AlgebraMismatch.into());
        }
        let mut trie = Trie::default();
        for (m, c) in a.terms() {
            trie.insert(m.factors(), c);
        }
        let mut out = QClass::zero();
        self.walk(&trie, w, &mut out)?;
        Ok(out)
    }

    fn walk(&self, node: &Trie, state: &QClass, out: &mut QClass) -> Result<(), WhittakerError> {
        if state.is_zero() {
            return Ok(());
        }
        if let Some(c) = &node.coeff {
            out.add_assign_scaled(state, c);
        }
        for (g, child) in &node.children {
            let next = self.act_gen(state, *g)?;
            self.walk(child, &next, out)?;
        }
        Ok(())
    }

    /// `w · (E_ij − ψ(E_ij))`.
    pub fn act_shifted(&self, w: &QClass, g: Generator) -> Result<QClass, WhittakerError> {
        let x = self.act_gen(w, g)?;
        Ok(x.sub(&w.scale(&Scalar::from_int(psi(g)))))
    }

    pub fn is_whittaker(&self, w: &QClass) -> Result<bool, WhittakerError> {
        for g in self.ambient.generators().into_iter().filter(|g| g.is_lower()) {
            if !self.act_shifted(w, g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `w · P^ψ_ij(u)`.
    pub fn apply_projector_factor(&self, w: &QClass, i: u8, j: u8, u: &Scalar, bound: usize) -> Result<QClass, WhittakerError> {
        assert!(i > j, "projector factor needs i > j");
        let g = e(i, j);
        let h = Scalar::hbar();
        let minor_alg = Algebra::mirabolic(self.n());
        let minor_at = |k: usize| -> Result<Element, WhittakerError> {
            let pt = u - &h.scale_int(k as i64);
            let el = crate::uea::quantum_minor(minor_alg, &MinorSpec::principal(j, i - 1, pt))?;
            Ok(el.retag(self.ambient)?)
        };
        let mut out = w.clone();
        let mut t = w.clone();
        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
        let mut coeff = Scalar::one();
        let mut k = 0usize;
        loop {
            t = self.act_shifted(&t, g)?.scale(&Scalar::from_int(-1));
            if t.is_zero() {
                break;
            }
            k += 1;
            if k > bound {
                return Err(WhittakerError::TerminationBoundExceeded { i, j, bound });
            }
            coeff = &coeff * &(&Scalar::from_int(sign) / &h.scale_int(k as i64));
            let mut x = t.scale(&coeff);
            for s in 0..k {
                x = self.act(&x, &minor_at(s)?)?;
                if x.is_zero() {
                    break;
                }
            }
            out = out.add(&x);
        }
        if w.h_valuation() >= 0 && out.h_valuation() < 0 {
            return Err(WhittakerError::ResidualNegativePower { i, j });
        }
        Ok(out)
    }

    /// Factor list `(i, j)` in application order: `j = N−1, …, 1`, and `i = j+1, …, N`.
    pub fn plan(n: u8) -> Vec<(u8, u8)> {
        let mut v = Vec::new();
        for j in (1..n).rev() {
            for i in j + 1..=n {
                v.push((i, j));
            }
        }
        v
    }

    /// `w · P_{m_N}(u⃗)` with `u⃗ = (u_1, …, u_{N−1})`.
    pub fn apply_kirillov(&self, w: &QClass, u: &[Scalar]) -> Result<QClass, WhittakerError> {
        let n = self.n();
        if u.len() + 1 != n as usize {
            return Err(WhittakerError::ParameterCount { expected: n as usize - 1, got: u.len() });
        }
        let mut x = w.clone();
        for (i, j) in Self::plan(n) {
            x = self.apply_projector_factor(&x, i, j, &u[j as usize - 1], 64)?;
            if x.is_zero() {
                break;
            }
        }
        Ok(x)
    }

    /// The image of `w` in `W / W·b^{u⃗}`, as a vector in `V`. Only
    /// meaningful for the mirabolic ambient.
    pub fn reduce_mod_borel_u(&self, w: &QClass, u: &[Scalar]) -> Result<Vec<Scalar>, WhittakerError> {
        let h = Scalar::hbar();
        let mut out = vec![Scalar::zero(); self.dim()];
        let mut cur: BTreeMap<(Monomial, usize), Scalar> = w.terms.clone();
        // longest monomials first; each step strictly shortens
        while let Some(((m, b), c)) = cur.pop_last() {
            let Some(g) = m.last() else {
                out[b] = &out[b] + &c;
                continue;
            };
            if !g.in_borel(self.n()) {
                return Err(UeaError::NotInAlgebra(g).into());
            }
            let rest = m.without_last();
            if g.is_diagonal() {
                add_term(&mut cur, (rest.clone(), b), -(&c * &u[g.i as usize - 1]));
            }
            for (r, x) in self.rep.act_on_basis(g, b) {
                add_term(&mut cur, (rest.clone(), r), (&c * &h).scale_rational(&x));
            }
        }
        Ok(out)
    }

    /// `Σ_b v_b [∅]⊗e_b`.
    pub fn from_vector(v: &[Scalar]) -> QClass {
        QClass::from_terms(v.iter().enumerate().map(|(b, c)| ((Monomial::one(), b), c.clone())))
    }
}

/// Symbolic `u⃗ = (u_1, …, u_{N−1})`.
pub fn symbolic_u(n: u8) -> Vec<Scalar> {
    (1..n).map(crate::scalar::u).collect()
}

/// `u⃗ − ℏ e_i`.
pub fn shift_u(u: &[Scalar], i: usize) -> Vec<Scalar> {
    let mut v = u.to_vec();
    v[i - 1] = &v[i - 1] - &Scalar::hbar();
    v
}
