//! Operator identities of the Kirillov projector, checked on spanning sets.

use std::fmt;

use rayon::prelude::*;

use super::{shift_u, QClass, WhittakerError, WhittakerModule};
use crate::check::CheckReport;
use crate::reps::Rep;
use crate::scalar::{Param, Scalar};
use crate::uea::{e, qchar_poly, qdet, quantum_minor, Algebra, MinorSpec, Monomial, Subalgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectorIdentity {
    /// `(w·P)·(E_ij − ψ(E_ij)) = 0`, `i > j`.
    RightAnnihilation,
    /// `(w·(E_ij + δ_ij u_i))·P = 0`, `i ≤ j ≤ N−1`.
    LeftAnnihilation,
    /// `(w·P)·P = w·P`.
    Idempotence,
    /// `w·P = w` on Whittaker vectors.
    Normalization,
    /// `([∅]⊗r(w·P))·P = w·P` where `r` reduces modulo `W·b^{u⃗}`.
    IsoRealized,
    /// `w·L^{i+1…N}_{i…N−1}(u_i − ℏ)·P(u⃗ − ℏe_i) = w·P(u⃗)`.
    Shift,
    /// `w·E_1N·P(u⃗) = (−1)^{N−1} w·P(u⃗ − ℏe_1)·qdet L(u_1)` in `n_−^ψ\U_ℏ(gl_N)`.
    E1N,
    /// Expansion of the class of `qdet L(v)` through `[E_lN]·P(u⃗)`.
    CenterExpansion,
    /// Classes of `(E_kN − δ_kN (N−1)ℏ)·P` at `u_i = −ℏ(i−1)` against the
    /// characteristic polynomial coefficients.
    Companion,
}

pub const PROJECTOR_IDENTITY_TAGS: &[&str] = &[
    "right-annihilation",
    "left-annihilation",
    "idempotence",
    "normalization",
    "iso-realized",
    "shift",
    "e1n",
    "center-expansion",
    "companion",
];

impl ProjectorIdentity {
    pub fn all() -> [ProjectorIdentity; 9] {
        use ProjectorIdentity::*;
        [RightAnnihilation, LeftAnnihilation, Idempotence, Normalization, IsoRealized, Shift, E1N, CenterExpansion, Companion]
    }

    pub fn tag(self) -> &'static str {
        PROJECTOR_IDENTITY_TAGS[self as usize]
    }

    pub fn from_tag(s: &str) -> Result<Self, WhittakerError> {
        Self::all()
            .into_iter()
            .find(|x| x.tag() == s)
            .ok_or_else(|| WhittakerError::UnknownIdentity(s.to_string()))
    }

    /// Whether the check lives in the `gl_N` quotient.
    pub fn gl_level(self) -> bool {
        matches!(self, ProjectorIdentity::E1N | ProjectorIdentity::CenterExpansion | ProjectorIdentity::Companion)
    }
}

impl fmt::Display for ProjectorIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Sorted monomials of length `≤ degree` over the non-lower generators of `alg`.
pub fn spanning_set(alg: Algebra, degree: usize) -> Vec<Monomial> {
    let gens = alg.borel_side();
    let mut out = vec![Monomial::one()];
    let mut layer = vec![Monomial::one()];
    for _ in 0..degree {
        let mut next = Vec::new();
        for m in &layer {
            for &g in &gens {
                if m.last().map_or(true, |x| x <= g) {
                    next.push(m.pushed(g));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn module(n: u8, gl: bool, vector: bool) -> WhittakerModule {
    let ambient = if gl { Algebra::gl(n) } else { Algebra::mirabolic(n) };
    let rep = if vector {
        let v = Rep::vector(n);
        if gl { v } else { v.restrict(Subalgebra::Mirabolic) }
    } else {
        Rep::trivial(ambient)
    };
    WhittakerModule::new(ambient, rep)
}

fn compare(rep: &mut CheckReport, case: impl fmt::Display, a: &QClass, b: &QClass) {
    let d = a.sub(b);
    rep.record(case, d.is_zero(), || d.to_string());
}

/// Checks `id` at rank `n` with spectral parameters `u` on all spanning
/// classes of Borel degree `≤ degree`, tensored with the trivial or the
/// vector representation.
pub fn verify_projector_identity(
    id: ProjectorIdentity,
    n: u8,
    u: &[Scalar],
    degree: usize,
    vector: bool,
) -> Result<CheckReport, WhittakerError> {
    // the centre statements concern classes of elements, so no coefficient module
    let vector = vector && !matches!(id, ProjectorIdentity::CenterExpansion | ProjectorIdentity::Companion);
    let md = module(n, id.gl_level(), vector);
    let name = format!("{id} (N={n}, {})", if vector { "vector" } else { "trivial" });
    let mut rep = CheckReport::new(name);
    let h = Scalar::hbar();
    match id {
        ProjectorIdentity::CenterExpansion => {
            let v = Scalar::param(Param::Spectral(0));
            let lhs = md.reduce_to_q(&qdet(md.ambient, &v)?, 0);
            let mut rhs = QClass::zero();
            let mut prod = Scalar::one();
            for l in 1..=n {
                let sign = Scalar::from_int(if (n - l) % 2 == 0 { 1 } else { -1 });
                let x = md.act_gen(&QClass::unit(0), e(l, n))?;
                let x = md.apply_kirillov(&x, u)?;
                rhs.add_assign_scaled(&x, &(&sign * &prod));
                if l < n {
                    let factor = &(&v - &u[l as usize - 1]) - &h.scale_int(l as i64 - 1);
                    prod = &prod * &factor;
                }
            }
            let tail = &(&v - &h.scale_int(n as i64 - 1)) * &prod;
            rhs.add_assign_scaled(&QClass::unit(0), &tail);
            compare(&mut rep, "qdet(v)", &lhs, &rhs);
            return Ok(rep);
        }
        ProjectorIdentity::Companion => {
            let special: Vec<Scalar> = (1..n).map(|i| h.scale_int(1 - i as i64)).collect();
            let coeffs = qchar_poly(n)?;
            for k in 1..=n {
                let mut x = md.act_gen(&QClass::unit(0), e(k, n))?;
                if k == n {
                    x.add_assign_scaled(&QClass::unit(0), &h.scale_int(1 - n as i64));
                }
                let got = md.apply_kirillov(&x, &special)?;
                let sign = Scalar::from_int(if (n - k) % 2 == 0 { 1 } else { -1 });
                let want = md.reduce_to_q(&coeffs[k as usize - 1], 0).scale(&sign);
                compare(&mut rep, format!("k={k}"), &got, &want);
            }
            return Ok(rep);
        }
        _ => {}
    }
    let basis: Vec<QClass> = spanning_set(md.ambient, degree)
        .into_iter()
        .flat_map(|m| (0..md.dim()).map(move |b| QClass::term(m.clone(), b, Scalar::one())))
        .collect();
    let results: Vec<Result<CheckReport, WhittakerError>> =
        basis.par_iter().map(|w| check_one(&md, id, n, u, w)).collect();
    for r in results {
        rep.absorb(r?);
    }
    Ok(rep)
}

fn check_one(md: &WhittakerModule, id: ProjectorIdentity, n: u8, u: &[Scalar], w: &QClass) -> Result<CheckReport, WhittakerError> {
    let mut rep = CheckReport::new(format!("{w}"));
    let h = Scalar::hbar();
    match id {
        ProjectorIdentity::RightAnnihilation => {
            let x = md.apply_kirillov(w, u)?;
            for g in md.ambient.generators().into_iter().filter(|g| g.is_lower()) {
                let y = md.act_shifted(&x, g)?;
                compare(&mut rep, g, &y, &QClass::zero());
            }
        }
        ProjectorIdentity::LeftAnnihilation => {
            for i in 1..n {
                for j in i..n {
                    let mut y = md.act_gen(w, e(i, j))?;
                    if i == j {
                        y.add_assign_scaled(w, &u[i as usize - 1]);
                    }
                    let z = md.apply_kirillov(&y, u)?;
                    compare(&mut rep, e(i, j), &z, &QClass::zero());
                }
            }
        }
        ProjectorIdentity::Idempotence => {
            let x = md.apply_kirillov(w, u)?;
            let y = md.apply_kirillov(&x, u)?;
            compare(&mut rep, "P·P", &y, &x);
        }
        ProjectorIdentity::Normalization => {
            if md.is_whittaker(w)? {
                compare(&mut rep, "whittaker input", &md.apply_kirillov(w, u)?, w);
            }
            let x = md.apply_kirillov(w, u)?;
            rep.record("image is whittaker", md.is_whittaker(&x)?, || x.to_string());
        }
        ProjectorIdentity::IsoRealized => {
            let x = md.apply_kirillov(w, u)?;
            let r = md.reduce_mod_borel_u(&x, u)?;
            let y = md.apply_kirillov(&WhittakerModule::from_vector(&r), u)?;
            compare(&mut rep, "round trip", &y, &x);
        }
        ProjectorIdentity::Shift => {
            let want = md.apply_kirillov(w, u)?;
            for i in 1..n {
                let rows: Vec<u8> = (i + 1..=n).collect();
                let cols: Vec<u8> = (i..n).collect();
                let pt = &u[i as usize - 1] - &h;
                let l = quantum_minor(md.ambient, &MinorSpec::new(&rows, &cols, pt))?;
                let got = md.apply_kirillov(&md.act(w, &l)?, &shift_u(u, i as usize))?;
                compare(&mut rep, format!("i={i}"), &got, &want);
            }
        }
        ProjectorIdentity::E1N => {
            let lhs = md.apply_kirillov(&md.act_gen(w, e(1, n))?, u)?;
            let q = qdet(md.ambient, &u[0])?;
            let sign = Scalar::from_int(if n % 2 == 1 { 1 } else { -1 });
            let rhs = md.act(&md.apply_kirillov(w, &shift_u(u, 1))?, &q)?.scale(&sign);
            compare(&mut rep, "E1N", &lhs, &rhs);
        }
        ProjectorIdentity::CenterExpansion | ProjectorIdentity::Companion => unreachable!(),
    }
    Ok(rep)
}
