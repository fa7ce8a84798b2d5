//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! nonzero if any fails.

use std::time::Instant;

use mockq_core::etatheta::{euler_e, euler_e_by_product};
use mockq_core::lerch::{lerch_brute_force, lerch_expand, LerchSpec};
use mockq_core::numeric::{battery_scenes, run_check, NumericScene};
use mockq_core::qseries::naive_mul;
use mockq_core::registry::{self, VerifyReport};
use mockq_core::{Cyc24, Error, QSeries, Rational, GRID};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    summary: String,
}

fn records(ids: &[(&str, i64)]) -> (bool, Vec<VerifyReport>) {
    let reports: Vec<VerifyReport> = ids.iter().map(|(id, order)| registry::verify(id, *order).expect("known id")).collect();
    (reports.iter().all(VerifyReport::passed), reports)
}

fn describe(reports: &[VerifyReport]) -> String {
    reports
        .iter()
        .map(|r| {
            let mut s = format!("{} to q^{} {:?} {}ms", r.id, r.order, r.status, r.ms);
            if let Some(m) = &r.first_mismatch {
                s += &format!(" (first mismatch at {}/24)", m.exponent_num_24);
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn formal(ids: &[(&str, i64)]) -> Outcome {
    let (pass, reports) = records(ids);
    Outcome { pass, summary: describe(&reports) }
}

fn c1() -> Outcome {
    let start = Instant::now();
    let mut o = formal(&[("NEWOMEGA", 300)]);
    let secs = start.elapsed().as_secs_f64();
    o.pass &= secs < 30.0;
    o.summary += &format!(", wall {secs:.2}s (limit 30s)");
    o
}

fn c2() -> Outcome {
    let r = registry::verify("NEWOMEGA2", 300).unwrap();
    let note = r.note.clone().unwrap_or_default();
    Outcome { pass: r.passed(), summary: format!("{}; direct and twisted sides compared exactly; {note}", describe(&[r])) }
}

fn c3() -> Outcome {
    let r = registry::verify("NEWF", 300).unwrap();
    let note = r.note.clone().unwrap_or_default();
    Outcome { pass: r.passed(), summary: format!("{}; {note}", describe(&[r])) }
}

fn c6() -> Outcome {
    let jtp = registry::jtp_battery().len();
    let crank = registry::crank_battery().len();
    let mut o = formal(&[("CRANK", 200), ("THETAID", 200), ("JTP", 200)]);
    o.pass &= jtp >= 10 && crank >= 3;
    o.summary += &format!("; {jtp} JTP monomials, {crank} crank monomials, thetaid includes F(1) and F(-q)");
    o
}

fn c8() -> Outcome {
    let (pass, reports) = records(&[("RLN_OMEGA", 200), ("RLN_F", 200)]);
    let notes: Vec<String> = reports.iter().map(|r| format!("{}: {}", r.id, r.note.clone().unwrap_or_default())).collect();
    Outcome { pass, summary: format!("{}; readings: {}", describe(&reports), notes.join(" | ")) }
}

fn numeric_battery(names: &[&str], scenes: &[NumericScene], tol: Option<f64>) -> (bool, f64, Vec<String>) {
    let mut pass = true;
    let mut worst: f64 = 0.0;
    let mut lines = Vec::new();
    for name in names {
        for sc in scenes {
            match run_check(name, sc, tol) {
                Ok(r) => {
                    pass &= r.passed;
                    worst = worst.max(r.residual);
                    if !r.passed {
                        lines.push(format!("{name} at {} residual {:.3e}", r.tau, r.residual));
                    }
                }
                Err(e) => {
                    pass = false;
                    lines.push(format!("{name}: {e}"));
                }
            }
        }
    }
    (pass, worst, lines)
}

fn c9() -> Outcome {
    let start = Instant::now();
    let names = [
        "rellprops-a",
        "rellprops-b",
        "rellprops-c",
        "mutwid-a",
        "mutwid-b",
        "mutwid-c",
        "gab-i",
        "gab-ii",
        "gab-iii",
        "gab-iv",
        "gab-v",
        "gabints",
        "rext",
    ];
    let (mut pass, worst, fails) = numeric_battery(&names, &battery_scenes(), Some(1e-8));
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 60.0;
    Outcome {
        pass,
        summary: format!(
            "{} checks x 5 scenes, worst residual {worst:.3e} (limit 1e-8), {secs:.2}s{}",
            names.len(),
            fmt_fails(&fails)
        ),
    }
}

fn fmt_fails(fails: &[String]) -> String {
    if fails.is_empty() {
        String::new()
    } else {
        format!("; failures: {}", fails.join(", "))
    }
}

fn c10() -> Outcome {
    let scenes = battery_scenes();
    let (tp, tw, tf) = numeric_battery(&["t-transform"], &scenes, Some(1e-9));
    let (sp, sw, sf) = numeric_battery(&["s-transform"], &scenes, Some(1e-8));
    Outcome {
        pass: tp && sp,
        summary: format!("T worst {tw:.3e} (limit 1e-9), S worst {sw:.3e} (limit 1e-8){}", fmt_fails(&[tf, sf].concat())),
    }
}

fn c11() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for sc in battery_scenes() {
        match run_check("watson-lemma", &sc, Some(1e-6)) {
            Ok(r) => {
                pass &= r.passed;
                parts.push(format!("{}: {:.3e}, {}", r.tau, r.residual, r.detail.unwrap_or_default()));
            }
            Err(e) => {
                pass = false;
                parts.push(e.to_string());
            }
        }
    }
    Outcome { pass, summary: parts.join(" | ") }
}

fn c12() -> Outcome {
    let sc = NumericScene::new(Complex64::new(0.05, 0.8)).unwrap();
    let (pass, worst, fails) = numeric_battery(
        &["consistency-newomega", "consistency-newomega2", "consistency-newf"],
        std::slice::from_ref(&sc),
        Some(1e-7),
    );
    Outcome { pass, summary: format!("tau = 0.05+0.8i, worst residual {worst:.3e} (limit 1e-7){}", fmt_fails(&fails)) }
}

fn random_cyc(rng: &mut ChaCha8Rng) -> Cyc24 {
    match rng.gen_range(0..4) {
        0 => Cyc24::zero(),
        1 => Cyc24::from_int(rng.gen_range(-5..=5)),
        2 => Cyc24::root(rng.gen_range(0..24)),
        _ => {
            let mut c: [Rational; 8] = Default::default();
            for slot in c.iter_mut() {
                *slot = Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into());
            }
            Cyc24::from_coeffs(c)
        }
    }
}

fn random_series(rng: &mut ChaCha8Rng) -> QSeries {
    let low = rng.gen_range(-4i64..=4) * GRID + if rng.gen_bool(0.3) { rng.gen_range(0..GRID) } else { 0 };
    let len = rng.gen_range(1..=40) * GRID / if rng.gen_bool(0.5) { 1 } else { 4 };
    let coeffs = (0..len)
        .map(|k| if k % (GRID / 4).max(1) == 0 || rng.gen_bool(0.05) { random_cyc(rng) } else { Cyc24::zero() })
        .collect();
    QSeries::from_coeffs(low, low + len, coeffs).unwrap()
}

fn c13() -> Outcome {
    const CASES: usize = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f636b);

    let mut mul_ok = 0;
    for _ in 0..CASES {
        let (a, b) = (random_series(&mut rng), random_series(&mut rng));
        let fast = a.mul(&b);
        let slow = naive_mul(&a, &b);
        if fast.cap() == slow.cap() && fast.eq_to(&slow, fast.cap()).map(|r| r.is_equal()).unwrap_or(false) {
            mul_ok += 1;
        }
    }

    let mut lerch_ok = 0;
    for _ in 0..CASES {
        let mut s = LerchSpec::new(
            12 * rng.gen_range(1..=3),
            12 * rng.gen_range(-3..=3),
            24 * rng.gen_range(-2..=2),
            12 * rng.gen_range(1..=3),
            12 * rng.gen_range(-4..=4),
        )
        .rho(2 * rng.gen_range(0..12))
        .denominator_root(rng.gen_range(0..24));
        s.alternating = rng.gen_bool(0.7);
        if rng.gen_bool(0.2) {
            s = s.restrict(rng.gen_range(0..3), 3);
        }
        let cap = 30 * GRID;
        let agree = match (lerch_expand(&s, cap), lerch_brute_force(&s, cap, 16)) {
            (Ok(x), Ok(y)) => x.eq_to(&y, cap).map(|r| r.is_equal()).unwrap_or(false),
            (Err(Error::Pole { .. }), Err(Error::Pole { .. })) => true,
            _ => false,
        };
        lerch_ok += agree as usize;
    }

    let mut euler_ok = 0;
    for _ in 0..CASES {
        let m = rng.gen_range(1..=8);
        let cap = rng.gen_range(1..=150) * GRID + rng.gen_range(0..GRID);
        if euler_e(m, cap) == euler_e_by_product(m, cap) {
            euler_ok += 1;
        }
    }

    Outcome {
        pass: mul_ok == CASES && lerch_ok == CASES && euler_ok == CASES,
        summary: format!(
            "mul vs naive {mul_ok}/{CASES}, lerch_expand vs brute force {lerch_ok}/{CASES}, euler_E pentagonal vs product {euler_ok}/{CASES}"
        ),
    }
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 13] = [
        ("NEWOMEGA to q^300 under 30 s", c1),
        ("NEWOMEGA2 to q^300 directly and as twist", c2),
        ("NEWF to q^300 on the 1/24 grid", c3),
        ("Watson forms of f and omega to q^500", || formal(&[("FIDWAT", 500), ("OMEGAWATSON", 500)])),
        ("eta 3-dissection and mu-dissection to q^300, vartheta(1/3; 2tau) to q^200", || {
            formal(&[
                ("ETA3DISS", 300),
                ("MUDISS_I", 300),
                ("MUDISS_II", 300),
                ("MUDISS_III", 300),
                ("MUDISS_IV", 300),
                ("MUDISS_V", 300),
                ("MUDISS_VI", 300),
                ("VARTHETA_THIRD", 200),
            ])
        }),
        ("crank, theta-quotient and triple product batteries to q^200", c6),
        ("mu representations of omega(-q^(1/2)) and f(q) to q^200", || formal(&[("H2_MU_REP", 200), ("F_MU_REP", 200)])),
        ("lost notebook identities to q^200 with reading reported", c8),
        ("numeric battery at 5 scenes below 1e-8 in under 60 s", c9),
        ("T and S transformations of H", c10),
        ("Watson transformation with Mordell integrals", c11),
        ("formal/numeric consistency of the new identities", c12),
        ("kernel oracles on 200 random cases each", c13),
    ];
    let mut failures = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failures += 1;
        }
        println!("criterion {:2}: {verdict} {title} [{:.2}s] {}", k + 1, start.elapsed().as_secs_f64(), o.summary);
    }
    println!("acceptance: {} of 13 criteria passed", 13 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
