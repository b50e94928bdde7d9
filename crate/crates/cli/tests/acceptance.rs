//! Acceptance criteria 1 to 12, one line each.
//!
//! Two criteria fail against the printed statements and are expected to:
//! 5 (the companion display is index-shifted and signed) and 10 (the printed
//! first-order term has the opposite sign of `λ`). The target exits nonzero
//! unless the failing set is exactly that.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use mirabolic::uea::{e, qchar_poly};
use mirabolic::whittaker::{QClass, WhittakerModule};
use mirabolic::{Algebra, Rep, Scalar};
use mirabolic_cli::{run_suite, Params, Report, SuiteConfig, Verdict};

const KNOWN_DEVIATIONS: [u8; 2] = [5, 10];

struct Line {
    id: u8,
    title: &'static str,
    pass: bool,
    note: String,
}

fn cfg(n: Option<u8>) -> SuiteConfig {
    SuiteConfig { n, ..Default::default() }
}

fn run(name: &str, c: &SuiteConfig) -> Report {
    run_suite(name, c).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Whether the selected cases all pass, with the failing ids.
fn verdict(reports: &[&Report], keep: impl Fn(&str) -> bool) -> (bool, String) {
    let mut seen = 0;
    let mut bad = Vec::new();
    for r in reports {
        for c in r.cases.iter().filter(|c| keep(&c.id)) {
            seen += 1;
            if c.verdict != Verdict::Pass {
                bad.push(format!("{} ({})", c.id, c.residual.as_deref().unwrap_or("")));
            }
        }
    }
    if seen == 0 {
        return (false, "no cases selected".into());
    }
    if bad.is_empty() {
        (true, format!("{seen} cases"))
    } else {
        (false, bad.join("; "))
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let x = f();
    (x, t.elapsed())
}

fn within(pass: bool, note: String, took: Duration, limit: Duration) -> (bool, String) {
    let ok = took < limit;
    (pass && ok, format!("{note}, {:.1} s (limit {} s)", took.as_secs_f64(), limit.as_secs()))
}

/// Classes of `(E_kN − δ_kN (N−1)ℏ)·P` at `u_i = −ℏ(i−1)` against the
/// coefficients `A_k` read literally, `qdet(v) = v^N + Σ (−1)^{N−i} A_i v^i`.
/// `A_N` is taken to be the leading coefficient.
fn companion_literal(n: u8) -> Vec<(u8, bool)> {
    let alg = Algebra::gl(n);
    let md = WhittakerModule::new(alg, Rep::trivial(alg));
    let h = Scalar::hbar();
    let special: Vec<Scalar> = (1..n).map(|i| h.scale_int(1 - i as i64)).collect();
    let a = qchar_poly(n).unwrap();
    (1..=n)
        .map(|k| {
            let mut x = md.act_gen(&QClass::unit(0), e(k, n)).unwrap();
            if k == n {
                x.add_assign_scaled(&QClass::unit(0), &h.scale_int(1 - n as i64));
            }
            let got = md.apply_kirillov(&x, &special).unwrap();
            let want = if k == n {
                QClass::unit(0)
            } else {
                let sign = Scalar::from_int(if (n - k) % 2 == 0 { 1 } else { -1 });
                md.reduce_to_q(&a[k as usize].scale(&sign), 0)
            };
            (k, got.sub(&want).is_zero())
        })
        .collect()
}

fn bin_report(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_mirabolic")).args(args).env_clear().output().expect("binary runs");
    assert!(out.status.code().is_some_and(|c| c <= 1), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn main() {
    let mut lines = Vec::new();

    let (r, took) = timed(|| run("pbw", &SuiteConfig { n: Some(3), degree: Some(3), ..Default::default() }));
    let (pass, note) = verdict(&[&r], |_| true);
    let (pass, note) = within(pass, note, took, Duration::from_secs(10));
    lines.push(Line { id: 1, title: "PBW associativity, unit and normal form, gl_3, degree <= 3", pass, note });

    let (r, took) = timed(|| run("minors", &cfg(None)));
    let (pass, note) = verdict(&[&r], |_| true);
    let (pass, note) = within(pass, note, took, Duration::from_secs(300));
    lines.push(Line { id: 2, title: "quantum minor calculus, N <= 4", pass, note });

    let (r, took) = timed(|| run("kirillov", &cfg(None)));
    let (pass, note) = verdict(&[&r], |id| !id.contains("iso-realized"));
    let (pass, mut note) = within(pass, note, took, Duration::from_secs(600));
    #[cfg(feature = "slow")]
    let pass = {
        let r4 = run("kirillov", &cfg(Some(4)));
        let (p4, n4) = verdict(&[&r4], |id| !id.contains("iso-realized"));
        note.push_str(&format!("; N=4 at u=(5,7,11): {n4}"));
        pass && p4
    };
    #[cfg(not(feature = "slow"))]
    note.push_str("; N=4 runs with --features slow");
    lines.push(Line { id: 3, title: "Kirillov projector annihilation, idempotence, normalization", pass, note });

    let center = run("center", &cfg(Some(3)));
    let (pass, note) = verdict(&[&center], |id| id.starts_with("shift/") || id.starts_with("e1n/"));
    lines.push(Line { id: 4, title: "shift identity and E_1N identity, N = 3", pass, note });

    let mut wrong = Vec::new();
    for n in [2, 3] {
        wrong.extend(companion_literal(n).into_iter().filter(|&(_, ok)| !ok).map(|(k, _)| format!("N={n} k={k}")));
    }
    let corrected = [run("center", &cfg(Some(2))), center];
    let (cpass, _) = verdict(&[&corrected[0], &corrected[1]], |id| id.starts_with("companion/"));
    let note = format!(
        "literal display differs at {}; (-1)^(N-k) a_(k-1) form {}",
        if wrong.is_empty() { "no k".to_string() } else { wrong.join(", ") },
        if cpass { "holds" } else { "also fails" }
    );
    lines.push(Line { id: 5, title: "companion matrix classes equal A_k", pass: wrong.is_empty(), note });

    let (r, took) = timed(|| run("twist", &cfg(None)));
    let (pass, note) = verdict(&[&r], |id| !id.contains("perturbed"));
    lines.push(Line { id: 6, title: "twist equation, QYBE and gl_2 closed form", pass, note: format!("{note}, {:.1} s", took.as_secs_f64()) });

    let classical = run("classical", &cfg(None));
    let (pass, note) = verdict(&[&classical], |id| id.starts_with("semiclassical/"));
    lines.push(Line { id: 7, title: "semiclassical limit of the twist, N = 2, 3", pass, note });

    let (pass, note) = verdict(&[&classical], |id| !id.starts_with("semiclassical/"));
    lines.push(Line { id: 8, title: "classical family recursion, CYBE and zero display, N <= 4", pass, note });

    let (r, took) = timed(|| run("extremal", &cfg(None)));
    let (pass, note) = verdict(&[&r], |_| true);
    let (pass, note) = within(pass, note, took, Duration::from_secs(300));
    lines.push(Line { id: 9, title: "extremal projector annihilation, gl_2 and gl_3", pass, note });

    let d2 = run("dynamical", &cfg(Some(2)));
    let rational = SuiteConfig {
        n: Some(3),
        lambda: Params::Numeric(vec![Scalar::frac(7, 2), Scalar::from_int(-1), Scalar::from_int(5)]),
        ..Default::default()
    };
    let d3 = run("dynamical", &rational);
    let wanted = |id: &str| {
        ["hbar0/", "hbar1/", "cdybe/"].iter().any(|p| id.starts_with(p))
            || id == "dyn-twist-equation/N=2"
            || id == "qdybe/N=2"
    };
    let (pass, mut note) = verdict(&[&d2, &d3], wanted);
    let (neg, _) = verdict(&[&d2, &d3], |id| id.starts_with("hbar1-negated/"));
    note.push_str(&format!("; with lambda -> -lambda the first-order term {}", if neg { "matches" } else { "still differs" }));
    lines.push(Line { id: 10, title: "dynamical twist expansion, twist equation, QDYBE, CDYBE", pass, note });

    let r = run("gauge", &cfg(None));
    let (pass, note) = verdict(&[&r], |_| true);
    lines.push(Line { id: 11, title: "gauge checker positive and negative controls", pass, note });

    let args = ["verify", "--suite", "all", "--seed", "7"];
    let (a, b) = (bin_report(&args), bin_report(&args));
    let pass = a == b && !a.is_empty();
    lines.push(Line { id: 12, title: "identical reports for identical seeds", pass, note: format!("{} bytes, suite all, seed 7", a.len()) });

    for l in &lines {
        println!("criterion {:>2} {} {}: {}", l.id, if l.pass { "PASS" } else { "FAIL" }, l.title, l.note);
    }
    let failing: BTreeSet<u8> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    let expected: BTreeSet<u8> = KNOWN_DEVIATIONS.into_iter().collect();
    println!("failing criteria {failing:?}, known deviations {expected:?}");
    if failing != expected {
        eprintln!("failing criteria changed");
        std::process::exit(1);
    }
}
