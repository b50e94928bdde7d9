//! Normal ordering of generator words.
//!
//! Products `monomial · generator` are memoized process-wide; they do not
//! depend on `N` or on the subalgebra, only on the structure constants.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use smallvec::SmallVec;

use super::generator::{bracket, Generator};
use super::UeaError;
use crate::scalar::Scalar;

/// A PBW-ordered word; empty means the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[Generator; 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn from_gen(g: Generator) -> Self {
        Monomial(smallvec::smallvec![g])
    }

    /// Sorts an arbitrary commutative collection into PBW order. Only
    /// meaningful when the factors pairwise commute or as a basis label.
    pub fn sorted(mut gs: Vec<Generator>) -> Self {
        gs.sort();
        Monomial(gs.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[Generator] {
        &self.0
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn last(&self) -> Option<Generator> {
        self.0.last().copied()
    }

    pub fn without_last(&self) -> Monomial {
        let mut v = self.0.clone();
        v.pop();
        Monomial(v)
    }

    pub fn pushed(&self, g: Generator) -> Monomial {
        let mut v = self.0.clone();
        v.push(g);
        Monomial(v)
    }

    /// Total weight.
    pub fn weight(&self, n: u8) -> Vec<i64> {
        let mut w = vec![0; n as usize];
        for g in &self.0 {
            w[g.i as usize - 1] += 1;
            w[g.j as usize - 1] -= 1;
        }
        w
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut k = 0;
        let mut first = true;
        while k < self.0.len() {
            let g = self.0[k];
            let mut e = 1;
            while k + e < self.0.len() && self.0[k + e] == g {
                e += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
            k += e;
        }
        Ok(())
    }
}

pub type Terms = Arc<Vec<(Monomial, Scalar)>>;

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(24);

/// Maximal monomial length tolerated during rewriting.
pub fn degree_cap() -> usize {
    DEGREE_CAP.load(AtomicOrdering::Relaxed)
}

pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, AtomicOrdering::Relaxed);
}

fn cache() -> &'static DashMap<(Monomial, Generator), Terms> {
    static C: OnceLock<DashMap<(Monomial, Generator), Terms>> = OnceLock::new();
    C.get_or_init(DashMap::new)
}

/// Normal form of `m · g` for a sorted monomial `m`.
pub fn mono_times_gen(m: &Monomial, g: Generator) -> Result<Terms, UeaError> {
    if m.len() + 1 > degree_cap() {
        return Err(UeaError::DegreeCapExceeded(degree_cap()));
    }
    match m.last() {
        None => return Ok(Arc::new(vec![(Monomial::from_gen(g), Scalar::one())])),
        Some(x) if x <= g => return Ok(Arc::new(vec![(m.pushed(g), Scalar::one())])),
        _ => {}
    }
    let key = (m.clone(), g);
    if let Some(hit) = cache().get(&key) {
        return Ok(hit.clone());
    }
    let x = m.last().unwrap();
    let prefix = m.without_last();
    let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    // prefix · x · g = prefix · g · x + ℏ prefix · [x, g]
    for (t, c) in mono_times_gen(&prefix, g)?.iter() {
        for (t2, c2) in mono_times_gen(t, x)?.iter() {
            add_into(&mut acc, t2, &(c * c2));
        }
    }
    let h = Scalar::hbar();
    for (y, k) in bracket(x, g) {
        let coeff = h.scale_int(k);
        for (t, c) in mono_times_gen(&prefix, y)?.iter() {
            add_into(&mut acc, t, &(c * &coeff));
        }
    }
    let out: Terms = Arc::new(acc.into_iter().collect());
    cache().insert(key, out.clone());
    Ok(out)
}

pub(crate) fn add_into(acc: &mut BTreeMap<Monomial, Scalar>, m: &Monomial, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(m) {
        Some(v) => {
            *v = &*v + c;
            if v.is_zero() {
                acc.remove(m);
            }
        }
        None => {
            acc.insert(m.clone(), c.clone());
        }
    }
}

/// Normal form of the product of two sorted monomials.
pub fn mono_times_mono(a: &Monomial, b: &Monomial) -> Result<BTreeMap<Monomial, Scalar>, UeaError> {
    let mut cur: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    cur.insert(a.clone(), Scalar::one());
    for &g in b.factors() {
        let mut next = BTreeMap::new();
        for (t, c) in &cur {
            for (t2, c2) in mono_times_gen(t, g)?.iter() {
                add_into(&mut next, t2, &(c * c2));
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Normal form of an arbitrary (unsorted) word.
pub fn normal_form_word(word: &[Generator]) -> Result<BTreeMap<Monomial, Scalar>, UeaError> {
    let w = Monomial(word.iter().copied().collect());
    mono_times_mono(&Monomial::one(), &w)
}
