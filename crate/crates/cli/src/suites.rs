//! Registered verification suites.

use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::Result;
use mirabolic::extremal::{
    compute_dyn_twist, dyn_r_matrix, dyn_twist_equation_with, first_order_formula, gauge_check, qdybe_with,
    verify_cdybe, verify_cdybe_with, verify_extremal_annihilation, ExtremalError, RootDatum,
};
use mirabolic::twist::{
    cg_zero_display, classical_cg, compute_twist, gl2_closed_form, semiclassical_compare, twist_equation_with,
    verify_cg_recursion, verify_cybe, verify_qybe, verify_twist_equation,
};
use mirabolic::uea::{verify_minor_family, Subalgebra, MINOR_IDENTITY_TAGS};
use mirabolic::whittaker::{verify_projector_identity, ProjectorIdentity};
use mirabolic::{Algebra, CheckReport, Element, Generator, Param, Rep, Scalar, ScalarMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{ConfigError, SuiteConfig};
use crate::report::{Case, Outcome, Report, Verdict};

type Thunk = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

pub struct CaseSpec {
    pub id: String,
    pub paper_ref: &'static str,
    run: Thunk,
}

fn case(id: impl Into<String>, paper_ref: &'static str, run: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> CaseSpec {
    CaseSpec { id: id.into(), paper_ref, run: Box::new(run) }
}

pub struct Suite {
    pub name: &'static str,
    pub about: &'static str,
    build: fn(&SuiteConfig) -> Vec<CaseSpec>,
}

pub const SUITES: &[Suite] = &[
    Suite { name: "pbw", about: "associativity, unit and normal form of the PBW product", build: pbw },
    Suite { name: "minors", about: "quantum minor calculus, RTT relation and the quantum determinant", build: minors },
    Suite { name: "kirillov", about: "annihilation, idempotence and normalization of the Kirillov projector", build: kirillov },
    Suite { name: "center", about: "shift identity, E_1N identity, centre expansion and companion classes", build: center },
    Suite { name: "twist", about: "twist equation, QYBE and the gl_2 closed form", build: twist },
    Suite { name: "classical", about: "classical r-matrix family, CYBE and the semiclassical limit", build: classical },
    Suite { name: "extremal", about: "extremal projector annihilation on Verma classes", build: extremal },
    Suite { name: "dynamical", about: "dynamical twist expansion, twist equation, QDYBE and CDYBE", build: dynamical },
    Suite { name: "gauge", about: "gauge transformation checker controls", build: gauge },
];

pub fn suite_names() -> Vec<&'static str> {
    let mut v: Vec<_> = SUITES.iter().map(|s| s.name).collect();
    v.push("all");
    v
}

fn lookup(name: &str) -> Result<&'static Suite, ConfigError> {
    SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| ConfigError::UnknownSuite(name.to_string(), suite_names().join(", ")))
}

/// Case specifications of a suite, without running them.
pub fn cases(name: &str, cfg: &SuiteConfig) -> Result<Vec<CaseSpec>, ConfigError> {
    cfg.validate()?;
    if name == "all" {
        let mut out = Vec::new();
        for s in SUITES {
            for mut c in (s.build)(cfg) {
                c.id = format!("{}/{}", s.name, c.id);
                out.push(c);
            }
        }
        return Ok(out);
    }
    Ok((lookup(name)?.build)(cfg))
}

/// Runs a suite; cases fan out in parallel and are reported in registry order.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report, ConfigError> {
    let specs = cases(name, cfg)?;
    let cases: Vec<Case> = specs
        .par_iter()
        .map(|c| {
            let t = Instant::now();
            let (verdict, residual) = match (c.run)() {
                Ok(o) if o.holds => (Verdict::Pass, None),
                Ok(o) => (Verdict::Fail, o.residual),
                Err(e) => (Verdict::Error, Some(e.to_string())),
            };
            Case {
                id: c.id.clone(),
                paper_ref: c.paper_ref.to_string(),
                verdict,
                residual,
                millis: cfg.timings.then(|| t.elapsed().as_millis() as u64),
            }
        })
        .collect();
    Ok(Report { format: 1, suite: name.to_string(), config: cfg.echo(), cases })
}

fn rng(cfg: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
}

fn mirabolic_vector(n: u8) -> Rep {
    Rep::vector(n).restrict(Subalgebra::Mirabolic)
}

fn random_element(r: &mut ChaCha8Rng, alg: Algebra, degree: usize) -> Result<Element> {
    let gens = alg.generators();
    let mut x = Element::zero(alg);
    for _ in 0..r.gen_range(1..=2) {
        let len = r.gen_range(0..=degree);
        let word: Vec<Generator> = (0..len).map(|_| gens[r.gen_range(0..gens.len())]).collect();
        let c = Scalar::from_int(r.gen_range(1..=3) * if r.gen_bool(0.5) { 1 } else { -1 });
        x = x.add(&Element::word(alg, &word)?.scale(&c))?;
    }
    Ok(x)
}

fn pbw(cfg: &SuiteConfig) -> Vec<CaseSpec> {
    let degree = cfg.degree.unwrap_or(3);
    let mut out = Vec::new();
    for n in cfg.ranks(&[3], &[2, 4]) {
        let alg = Algebra::gl(n);
        let mut r = rng(cfg, n as u64);
        let triples: Vec<[Element; 3]> = (0..100)
            .map(|_| {
                [0, 1, 2].map(|_| random_element(&mut r, alg, degree).expect("generators belong to the algebra"))
            })
            .collect();
        let t = triples.clone();
        out.push(case(format!("associativity/N={n}"), "associativity of the PBW product on random triples", move || {
            let bad = t.par_iter().map(|[a, b, c]| -> Result<bool> {
                Ok(a.mul(b)?.mul(c)? != a.mul(&b.mul(c)?)?)
            });
            let bad: Vec<bool> = bad.collect::<Result<_>>()?;
            Ok(match bad.iter().position(|&x| x) {
                Some(k) => Outcome::fail(format!("triple {k}")),
                None => Outcome::pass(),
            })
        }));
        let t = triples.clone();
        out.push(case(format!("normal-form/N={n}"), "products are nondecreasing monomials, and those are fixed by rewriting", move || {
            for [a, b, _] in &t {
                for m in a.mul(b)?.terms().keys() {
                    if !m.is_sorted() {
                        return Ok(Outcome::fail(format!("unsorted monomial {m}")));
                    }
                    let again = Element::word(alg, m.factors())?;
                    if again.terms().len() != 1 || again.coeff(m) != Scalar::one() {
                        return Ok(Outcome::fail(format!("{m} is not a fixed point")));
                    }
                }
            }
            Ok(Outcome::pass())
        }));
        out.push(case(format!("unit/N={n}"), "the empty monomial is a two-sided unit", move || {
            let one = Element::one(alg);
            for [a, _, _] in &triples {
                if one.mul(a)? != *a || a.mul(&one)? != *a {
                    return Ok(Outcome::fail(a.to_string()));
                }
            }
            Ok(Outcome::pass())
        }));
    }
    out
}

fn minor_ref(tag: &str) -> &'static str {
    match tag {
        "antisymmetry" => "antisymmetry of quantum minors in rows and columns",
        "decomposition" => "row and column expansions of a quantum minor",
        "generator-commutator" => "commutator of a generator with a quantum minor",
        "adjacent-commute" => "commuting leading minors at adjacent points",
        "cyclic-commute" => "commutation obtained by cyclically permuting the indices",
        "minor-quotient" => "leading minors modulo the shifted left ideal",
        "comatrix-product" => "product formula for complementary minors",
        "rtt" => "RTT relation on the evaluation image",
        "evaluation" => "evaluation homomorphism relations",
        "qdet-central" => "centrality of the quantum determinant",
        _ => "quantum comatrix inverts the L-operator up to the quantum determinant",
    }
}

fn minors(cfg: &SuiteConfig) -> Vec<CaseSpec> {
    let max_m = cfg.degree.unwrap_or(3);
    let mut out = Vec::new();
    for n in cfg.ranks(&[2, 3, 4], &[]) {
        for &tag in MINOR_IDENTITY_TAGS {
            out.push(case(format!("{tag}/N={n}"), minor_ref(tag), move || Ok(verify_minor_family(tag, n, max_m)?.into())));
        }
    }
    out
}

fn projector_ref(id: ProjectorIdentity) -> &'static str {
    match id {
        ProjectorIdentity::RightAnnihilation => "right annihilation by the shifted negative nilpotents",
        ProjectorIdentity::LeftAnnihilation => "left annihilation by the shifted Borel",
        ProjectorIdentity::Idempotence => "the Kirillov projector is idempotent",
        ProjectorIdentity::Normalization => "the projector fixes Whittaker vectors",
        ProjectorIdentity::IsoRealized => "the projector realizes the isomorphism with Borel coinvariants",
        ProjectorIdentity::Shift => "shift of the spectral parameter by a quantum minor",
        ProjectorIdentity::E1N => "E_1N times the projector through the quantum determinant",
        ProjectorIdentity::CenterExpansion => "expansion of the quantum determinant in the Whittaker quotient",
        ProjectorIdentity::Companion => "companion matrix classes at special parameters (index-shifted, signed)",
    }
}

fn projector_cases(cfg: &SuiteConfig, ids: &[ProjectorIdentity], ranks: Vec<u8>) -> Vec<CaseSpec> {
    let degree = cfg.degree.unwrap_or(2);
    let mut out = Vec::new();
    for n in ranks {
        let u = cfg.u_at(n);
        for &id in ids {
            for vector in [false, true] {
                if !vector && matches!(id, ProjectorIdentity::CenterExpansion | ProjectorIdentity::Companion) {
                    continue;
                }
                let u = u.clone();
                let label = if vector { "vector" } else { "trivial" };
                let label = if matches!(id, ProjectorIdentity::CenterExpansion | ProjectorIdentity::Companion) { "class" } else { label };
                out.push(case(format!("{id}/N={n}/{label}"), projector_ref(id), move || {
                    Ok(verify_projector_identity(id, n, &u, degree, vector)?.into())
                }));
            }
        }
    }
    out
}

fn kirillov(cfg: &SuiteConfig) -> Vec<CaseSpec> {
    use ProjectorIdentity::*;
    projector_cases(cfg, &[RightAnnihilation, LeftAnnihilation, Idempotence, Normalization, IsoRealized], cfg.ranks(&[2, 3], &[4]))
}

fn center(cfg: &SuiteConfig) -> Vec<CaseSpec> {
    use ProjectorIdentity::*;
    projector_cases(cfg, &[Shift, E1N, CenterExpansion, Companion], cfg.ranks(&[2, 3], &[4]))
}

fn twist(cfg: &SuiteConfig) -> Vec<CaseSpec> {
    let mut out = Vec::new();
    for n in cfg.ranks(&[2, 3], &[4]) {
        let u = cfg.u_at(n);
        let v = mirabolic_vector(n);
        let (u1, v1) = (u.clone(), v.clone());
        out.push(case(format!("twist-equation/N={n}"), "twist equation for the Cremmer-Gervais twist", move || {
            Ok(verify_twist_equation(&v1, &v1, &v1, &u1)?.into())
        }));
        let (u1, v1) = (u.clone(), v.clone());
        out.push(case(format!("qybe/N={n}"), "quantum Yang-Baxter equation for the twisted R-matrix", move || {
            Ok(verify_qybe(&v1, &v1, &v1, &u1)?.into())
        }));
        let mut r = rng(cfg, 100 + n as u64);
        let d = v.dim * v.dim;
        let (row, col) = (r.gen_range(0..d), r.gen_range(0..d));
        out.push(case(format!("twist-equation-perturbed/N={n}"), "negative control: a perturbed twist must fail", move || {
            let f = |a: &Rep, b: &Rep| -> Result<ScalarMatrix, mirabolic::twist::TwistError> {
                let mut m = compute_twist(a, b, &u)?;
                if a.dim == v.dim && b.dim == v.dim {
                    let x = m.get(row, col).clone();
                    m.set(row, col, &x + &Scalar::hbar().pow(2));
                }
                Ok(m)
            };
            Ok(Outcome::expect_failure(&twist_equation_with(&v, &v, &v, &f)?))
        }));
    }
    if cfg.ranks(&[2], &[]).contains(&2) {
        let u = cfg.u_at(2);
        out.push(case("closed-form/N=2", "gl_2 twist equals the closed form and does not depend on u", move || {
            let v = Rep::vector(2);
            let vv = v.tensor(&v)?;
            let mut rep = CheckReport::new("closed form");
            for (a, b) in [(&v, &v), (&vv, &v), (&v, &vv)] {
                let f = compute_twist(a, b, &u)?;
                let want = gl2_closed_form(a, b, &Scalar::one());
                rep.record(format!("{}x{}", a.name, b.name), f == want, || "differs".into());
                rep.record(format!("{}x{} u-free", a.name, b.name), f.entries().all(|(_, _, x)| !x.depends_on(Param::U(1))), || "depends on u".into());
            }
            Ok(rep.into())
        }));
    }
    out
}

fn classical(cfg: &SuiteConfig) -> Vec<CaseSpec> {
    let mut out = Vec::new();
    for n in cfg.ranks(&[2, 3, 4], &[]) {
        let u = match &cfg.u {
            crate::config::Params::Numeric(v) if v.len() == n as usize - 1 => v.clone(),
            _ => mirabolic::whittaker::symbolic_u(n),
        };
        let u1 = u.clone();
        out.push(case(format!("recursion/N={n}"), "the inverted 2-form satisfies the family equation", move || {
            Ok(verify_cg_recursion(&classical_cg(&u1)?, &u1).into())
        }));
        let u1 = u.clone();
        out.push(case(format!("cybe/N={n}"), "classical Yang-Baxter equation for the Cremmer-Gervais r-matrix", move || {
            Ok(verify_cybe(&classical_cg(&u1)?, &mirabolic_vector(n)).into())
        }));
        out.push(case(format!("zero-display/N={n}"), "r-matrix at u = 0 matches the closed display", move || {
            let zero = vec![Scalar::zero(); n as usize - 1];
            Ok((classical_cg(&zero)? == cg_zero_display(n)).into())
        }));
        if n <= 3 {
            out.push(case(format!("semiclassical/N={n}"), "hbar-linear antisymmetrization of the twist is the classical r-matrix", move || {
                let v = mirabolic_vector(n);
                Ok(semiclassical_compare(&v, &v, &u)?.into())
            }));
        }
    }
    out
}

fn extremal(cfg: &SuiteConfig) -> Vec<CaseSpec> {
    let mut out = Vec::new();
    for n in cfg.ranks(&[2, 3], &[4]) {
        let depth = cfg.degree.unwrap_or(if n == 2 { 3 } else { 2 });
        for vector in [false, true] {
            let label = if vector { "vector" } else { "trivial" };
            out.push(case(format!("annihilation/N={n}/{label}"), "e_alpha P = P f_alpha = 0 and P is idempotent", move || {
                let rep = if vector { Rep::vector(n) } else { Rep::trivial(Algebra::gl(n)) };
                Ok(verify_extremal_annihilation(&rep, depth)?.into())
            }));
        }
    }
    out
}

fn at_lambda(m: &ScalarMatrix, pt: &Option<BTreeMap<Param, Scalar>>) -> Result<ScalarMatrix> {
    Ok(match pt {
        Some(p) => m.try_map(|x| x.substitute(p))?,
        None => m.clone(),
    })
}

fn h_order(j: &ScalarMatrix, k: usize) -> Result<ScalarMatrix> {
    Ok(j.try_map(|x| x.h_series(1).map(|s| s[k].clone()))?)
}

fn dynamical(cfg: &SuiteConfig) -> Vec<CaseSpec> {
    let mut out = Vec::new();
    for n in cfg.ranks(&[2, 3], &[4]) {
        let pt = cfg.lambda_at(n);
        let p1 = pt.clone();
        out.push(case(format!("hbar0/N={n}"), "constant term of the dynamical twist is the identity", move || {
            let v = Rep::vector(n);
            let c0 = at_lambda(&h_order(&compute_dyn_twist(&v, &v)?, 0)?, &p1)?;
            Ok(c0.is_identity().into())
        }));
        let p1 = pt.clone();
        out.push(case(format!("hbar1/N={n}"), "first-order term equals -sum f_alpha (x) e_alpha / <lambda, h_alpha>", move || {
            let v = Rep::vector(n);
            let c1 = at_lambda(&h_order(&compute_dyn_twist(&v, &v)?, 1)?, &p1)?;
            let want = at_lambda(&first_order_formula(&v, &v), &p1)?;
            Ok(match c1.first_difference(&want) {
                None => Outcome::pass(),
                Some(d) => Outcome::fail(d),
            })
        }));
        let p1 = pt.clone();
        out.push(case(format!("hbar1-negated/N={n}"), "first-order term with lambda replaced by -lambda", move || {
            let v = Rep::vector(n);
            let neg: BTreeMap<Param, Scalar> = (1..=n).map(|k| (Param::Lambda(k), -&Scalar::param(Param::Lambda(k)))).collect();
            let c1 = h_order(&compute_dyn_twist(&v, &v)?, 1)?.try_map(|x| x.substitute(&neg))?;
            Ok((at_lambda(&c1, &p1)? == at_lambda(&first_order_formula(&v, &v), &p1)?).into())
        }));
        if n <= 3 {
            out.push(case(format!("dyn-twist-equation/N={n}"), "dynamical twist equation", move || {
                let v = Rep::vector(n);
                Ok(dyn_twist_equation_with(&v, &v, &v, &|a, b| compute_dyn_twist(a, b))?.into())
            }));
            out.push(case(format!("qdybe/N={n}"), "quantum dynamical Yang-Baxter equation for the standard R-matrix", move || {
                let v = Rep::vector(n);
                Ok(qdybe_with(&v, &v, &v, &|a, b| dyn_r_matrix(a, b, &|x, y| compute_dyn_twist(x, y)))?.into())
            }));
            out.push(case(format!("cdybe/N={n}"), "classical dynamical Yang-Baxter equation for the standard solution", move || {
                Ok(verify_cdybe(n).into())
            }));
        }
        let mut r = rng(cfg, 200 + n as u64);
        let d = n as usize * n as usize;
        let (row, col) = (r.gen_range(0..d), r.gen_range(0..d));
        let roots = RootDatum::new(n).roots;
        let flip = roots[r.gen_range(0..roots.len())];
        if n <= 3 {
            out.push(case(format!("dyn-twist-perturbed/N={n}"), "negative control: a perturbed dynamical twist must fail", move || {
                let v = Rep::vector(n);
                let j = |a: &Rep, b: &Rep| -> Result<ScalarMatrix, ExtremalError> {
                    let mut m = compute_dyn_twist(a, b)?;
                    if a.dim * b.dim == d {
                        let x = m.get(row, col).clone();
                        m.set(row, col, &x + &Scalar::hbar().pow(2));
                    }
                    Ok(m)
                };
                Ok(Outcome::expect_failure(&dyn_twist_equation_with(&v, &v, &v, &j)?))
            }));
            out.push(case(format!("cdybe-flipped/N={n}"), "negative control: flipping one root's sign breaks CDYBE", move || {
                Ok(Outcome::expect_failure(&verify_cdybe_with(n, &|a| if a == flip { -1 } else { 1 })))
            }));
        }
    }
    out
}

fn gauge(cfg: &SuiteConfig) -> Vec<CaseSpec> {
    let mut out = Vec::new();
    if !cfg.ranks(&[2], &[]).contains(&2) {
        return out;
    }
    let mut r = rng(cfg, 300);
    let constant = ScalarMatrix::from_fn(4, 4, |_, _| Scalar::from_int(r.gen_range(-3..=3)));
    let lambda0: BTreeMap<Param, Scalar> =
        [(Param::Lambda(1), Scalar::from_int(r.gen_range(3..=9))), (Param::Lambda(2), Scalar::from_int(r.gen_range(-9..=-3)))].into();
    let v = Rep::vector(2);
    let id2 = ScalarMatrix::identity(2);
    let (v1, i1) = (v.clone(), id2.clone());
    out.push(case("identity-gauge", "identity gauge maps a constant R-matrix to itself", move || {
        Ok(gauge_check(&v1, &v1, &i1, &i1, &constant, &constant)?.into())
    }));
    let (v1, i1) = (v.clone(), id2.clone());
    out.push(case("frozen-lambda", "negative control: a lambda-dependent R-matrix is not gauge-equivalent to its value at a point", move || {
        let r1 = dyn_r_matrix(&v1, &v1, &|a, b| compute_dyn_twist(a, b))?;
        let r2 = r1.try_map(|x| x.substitute(&lambda0))?;
        Ok(Outcome::expect_failure(&gauge_check(&v1, &v1, &i1, &i1, &r1, &r2)?))
    }));
    out.push(case("nontrivial-gauge", "negative control: a non-trivial gauge changes the R-matrix", move || {
        let r1 = dyn_r_matrix(&v, &v, &|a, b| compute_dyn_twist(a, b))?;
        let s = ScalarMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => Scalar::param(Param::Lambda(1)),
            (i, j) if i == j => Scalar::one(),
            _ => Scalar::zero(),
        });
        Ok(Outcome::expect_failure(&gauge_check(&v, &v, &s, &s, &r1, &r1)?))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        let e = run_suite("unknown", &SuiteConfig::default()).unwrap_err();
        assert!(matches!(e, ConfigError::UnknownSuite(ref s, _) if s == "unknown"));
    }

    #[test]
    fn registry_ids_are_unique() {
        let all = cases("all", &SuiteConfig::default()).unwrap();
        let mut ids: Vec<_> = all.iter().map(|c| c.id.clone()).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn gauge_suite_passes() {
        let r = run_suite("gauge", &SuiteConfig::default()).unwrap();
        assert!(r.passed(), "{}", r.to_json_string());
        assert!(r.cases.iter().all(|c| c.millis.is_none()));
    }

    #[test]
    fn rank_filter() {
        let cfg = SuiteConfig { n: Some(2), ..Default::default() };
        let c = cases("minors", &cfg).unwrap();
        assert!(!c.is_empty() && c.iter().all(|c| c.id.ends_with("N=2")));
    }
}
