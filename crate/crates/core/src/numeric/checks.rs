//! Named numerical checks of the transformation laws and the formal/numeric
//! consistency of the new identities.

use serde::{Deserialize, Serialize};

use super::appell::{mu_num, mu_tilde_modular_check, mu_tilde_num, r_num, Gamma};
use super::integrals::{eichler_closed, eichler_quad, period_integral, GSelector};
use super::theta::{eta_num, g_ab_direct};
use super::vector::{
    f_num, h_vector, mordell_vector, omega_num, s_matrix_apply, t_matrix_apply, watson_remainder, WatsonCandidate,
};
use super::{c, e2pi, epi, residual, residual_vec, NumericScene, C64, PI};
use crate::error::{Error, Result};
use crate::qseries::GRID;
use crate::registry;

pub const CHECK_NAMES: &[&str] = &[
    "etatrans",
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
    "lemma33",
    "watson-lemma",
    "s-transform",
    "t-transform",
    "consistency-newomega",
    "consistency-newomega2",
    "consistency-newf",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub tau: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// τ ∈ {i, 1/4+i, −1/3+3i/4, 1/2+2i, 0.1+0.6i}.
pub fn battery_scenes() -> Vec<NumericScene> {
    [(0.0, 1.0), (0.25, 1.0), (-1.0 / 3.0, 0.75), (0.5, 2.0), (0.1, 0.6)]
        .into_iter()
        .map(|(re, im)| NumericScene::new(c(re, im)).expect("battery points lie in H"))
        .collect()
}

/// Parses "a+bi", "a-bi", "bi", "i" or "a".
pub fn parse_tau(text: &str) -> Result<C64> {
    let s: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot read `{text}` as a complex number a+bi"));
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| c(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_s, im_s) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_s.is_empty() { 0.0 } else { re_s.parse::<f64>().map_err(|_| bad())? };
    let im = match im_s {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(c(re, im))
}

fn default_tol(name: &str) -> f64 {
    match name {
        "etatrans" | "rellprops-a" => 1e-10,
        "gab-i" | "gab-ii" | "gab-iii" | "gab-iv" => 1e-11,
        "rellprops-b" | "rellprops-c" | "mutwid-a" | "mutwid-c" | "gab-v" | "t-transform" => 1e-9,
        "lemma33" | "watson-lemma" => 1e-6,
        n if n.starts_with("consistency") => 1e-7,
        _ => 1e-8,
    }
}

const U: C64 = C64::new(0.2, 0.1);
const V: C64 = C64::new(0.05, 0.3);
const GAB: [(f64, f64); 3] = [(0.3, 0.2), (1.0 / 3.0, 0.5), (-1.0 / 6.0, 0.1)];

fn worst<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<f64> {
    let mut m: f64 = 0.0;
    for r in it {
        m = m.max(r?);
    }
    Ok(m)
}

/// Runs one named check at the scene's τ.
pub fn run_check(name: &str, sc: &NumericScene, tol: Option<f64>) -> Result<CheckReport> {
    let tau = sc.tau;
    let mut detail = None;
    let res: f64 = match name {
        "etatrans" => residual(eta_num(&sc.at(-tau.inv())?)?, (-C64::i() * tau).sqrt() * eta_num(sc)?),
        "rellprops-a" => worst([c(0.3, 0.2), c(-0.1, 0.45)].map(|u| Ok(residual(r_num(u + 1.0, sc)?, -r_num(u, sc)?))))?,
        "rellprops-b" => worst([c(0.3, 0.2), c(-0.1, 0.45)].map(|u| {
            let lhs = r_num(u, sc)? + (-C64::i() * PI * (2.0 * u + tau)).exp() * r_num(u + tau, sc)?;
            Ok(residual(lhs, 2.0 * (-C64::i() * PI * (u + tau / 4.0)).exp()))
        }))?,
        "rellprops-c" => worst([c(0.3, 0.2), c(-0.1, 0.45)].map(|u| Ok(residual(r_num(-u, sc)?, r_num(u, sc)?))))?,
        "mutwid-a" => worst([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, -1, -1, 2)].map(
            |(k, l, m, n): (i64, i64, i64, i64)| {
                let lhs = mu_tilde_num(U + k as f64 * tau + l as f64, V + m as f64 * tau + n as f64, sc)?;
                let km = (k - m) as f64;
                let sign = if (k + l + m + n).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let rhs = sign * epi(km * km * tau + 2.0 * km * (U - V)) * mu_tilde_num(U, V, sc)?;
                Ok(residual(lhs, rhs))
            },
        ))?,
        "mutwid-b" => {
            let s = mu_tilde_modular_check(Gamma::S, U, V, sc)?;
            let t = mu_tilde_modular_check(Gamma::T, U, V, sc)?;
            detail = Some(format!("S: {s:.3e}, T: {t:.3e}"));
            s.max(t)
        }
        "mutwid-c" => {
            let base = mu_tilde_num(U, V, sc)?;
            residual(mu_tilde_num(-U, -V, sc)?, base).max(residual(mu_tilde_num(V, U, sc)?, base))
        }
        "gab-i" => worst(GAB.map(|(a, b)| Ok(residual(g_ab_direct(a + 1.0, b, sc)?, g_ab_direct(a, b, sc)?))))?,
        "gab-ii" => {
            worst(GAB.map(|(a, b)| Ok(residual(g_ab_direct(a, b + 1.0, sc)?, e2pi(c(a, 0.0)) * g_ab_direct(a, b, sc)?))))?
        }
        "gab-iii" => worst(GAB.map(|(a, b)| Ok(residual(g_ab_direct(-a, -b, sc)?, -g_ab_direct(a, b, sc)?))))?,
        "gab-iv" => worst(GAB.map(|(a, b)| {
            let lhs = g_ab_direct(a, b, &sc.at(tau + 1.0)?)?;
            Ok(residual(lhs, epi(c(-a * (a + 1.0), 0.0)) * g_ab_direct(a, a + b + 0.5, sc)?))
        }))?,
        "gab-v" => worst(GAB.map(|(a, b)| {
            let lhs = g_ab_direct(a, b, &sc.at(-tau.inv())?)?;
            let w = (-C64::i() * tau).sqrt();
            Ok(residual(lhs, C64::i() * e2pi(c(a * b, 0.0)) * w * w * w * g_ab_direct(b, -a, sc)?))
        }))?,
        "gabints" => {
            detail = Some("integrand denominator sqrt(-i(z+tau)), principal branch".into());
            worst([(-1.0 / 6.0, -0.5), (-1.0 / 3.0, -0.5), (-1.0 / 6.0, 0.0), (0.2, 0.3)].map(|(a, b): (f64, f64)| {
                let rhs = -epi(-a * a * tau + 2.0 * a * (b + 0.5)) * r_num(a * tau - b, sc)?;
                let closed = eichler_closed(a + 0.5, b + 0.5, 1.0, sc)?;
                let quad = eichler_quad(a + 0.5, b + 0.5, 1.0, sc)?;
                Ok(residual(closed, rhs).max(residual(quad, rhs)))
            }))?
        }
        "rext" => worst([1.0 / 6.0, -1.0 / 3.0, 0.1].map(|b: f64| {
            let lhs = r_num(-tau / 2.0 - b, sc)?;
            let rhs = epi(tau / 4.0 + b) - epi(tau / 4.0 + b + 0.5) * eichler_closed(0.0, b + 0.5, 1.0, sc)?;
            Ok(residual(lhs, rhs))
        }))?,
        "lemma33" => {
            let k = -C64::i() * 2.0 * 3f64.sqrt();
            let mut theta = [C64::new(0.0, 0.0); 3];
            for (slot, g) in theta.iter_mut().zip(GSelector::ALL) {
                *slot = k * period_integral(g, sc)?;
            }
            let j = mordell_vector(sc)?;
            let (best, r) = WatsonCandidate::ALL
                .into_iter()
                .map(|cand| (cand, residual_vec(&cand.remainder(&j, tau), &theta)))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .expect("candidates");
            let from_f = residual_vec(&watson_remainder(sc)?, &theta);
            detail = Some(format!(
                "Mordell vector {} against theta integrals: {r:.3e}; F-remainder against theta integrals: {from_f:.3e}",
                best.label()
            ));
            r.max(from_f)
        }
        "watson-lemma" => {
            let rem = watson_remainder(sc)?;
            let j = mordell_vector(sc)?;
            let scored: Vec<(WatsonCandidate, f64)> =
                WatsonCandidate::ALL.into_iter().map(|cand| (cand, residual_vec(&rem, &cand.remainder(&j, tau)))).collect();
            let best = scored.iter().min_by(|x, y| x.1.total_cmp(&y.1)).copied().expect("candidates");
            let bar = tol.unwrap_or_else(|| default_tol(name));
            let closing: Vec<&str> = scored.iter().filter(|(_, r)| *r < bar).map(|(cand, _)| cand.label()).collect();
            detail = Some(format!(
                "closes with {}; {}",
                if closing.is_empty() { "none".to_string() } else { closing.join(" and ") },
                scored.iter().map(|(cand, r)| format!("{} {r:.3e}", cand.label())).collect::<Vec<_>>().join(", ")
            ));
            best.1
        }
        "s-transform" => {
            let lhs = h_vector(&sc.at(-tau.inv())?)?;
            let w = (-C64::i() * tau).sqrt();
            let lhs = [lhs[0] / w, lhs[1] / w, lhs[2] / w];
            residual_vec(&lhs, &s_matrix_apply(&h_vector(sc)?))
        }
        "t-transform" => residual_vec(&h_vector(&sc.at(tau + 1.0)?)?, &t_matrix_apply(&h_vector(sc)?)),
        "consistency-newomega" | "consistency-newomega2" | "consistency-newf" => {
            let (r, d) = consistency(name, sc)?;
            detail = Some(d);
            r
        }
        _ => {
            return Err(Error::UnknownCheck { name: name.to_string(), valid: CHECK_NAMES.join(", ") });
        }
    };
    let tol = tol.unwrap_or_else(|| default_tol(name));
    Ok(CheckReport {
        check: name.to_string(),
        tau: format!("{}{:+}i", tau.re, tau.im),
        residual: res,
        tol,
        passed: res.is_finite() && res < tol,
        detail,
    })
}

/// Exact series of both sides (order 200) evaluated at τ, against the
/// transcendental right side built from η and μ.
fn consistency(name: &str, sc: &NumericScene) -> Result<(f64, String)> {
    let tau = sc.tau;
    let two_i_sqrt3 = C64::i() * 2.0 / 3f64.sqrt();
    let eta = |m: f64| eta_num(&sc.at(m * tau)?);
    let (id, numeric_lhs, numeric_rhs) = match name {
        "consistency-newomega" => {
            let q3 = e2pi(3.0 * tau);
            let lhs = 2.0 * e2pi(2.0 * tau) * omega_num(-q3, sc)?;
            let quot = eta(1.0)?.powi(2) * eta(4.0)?.powi(2) / (eta(2.0)?.powi(2) * eta(6.0)?);
            let m = mu_num(tau + 0.5, c(1.0 / 3.0, 0.0), &sc.at(2.0 * tau)?)?;
            let rhs = -two_i_sqrt3 - 2.0 / 3.0 * quot - 4.0 / 3f64.sqrt() * epi(-tau / 2.0 - 1.0 / 6.0) * m;
            ("NEWOMEGA", lhs, rhs)
        }
        "consistency-newomega2" => {
            let q3 = e2pi(3.0 * tau);
            let lhs = 2.0 * e2pi(2.0 * tau) * omega_num(q3, sc)?;
            let quot = eta(2.0)?.powi(4) / (eta(6.0)? * eta(1.0)?.powi(2));
            let m = mu_num(tau - 2.0 / 3.0, c(-1.0 / 3.0, 0.0), &sc.at(2.0 * tau)?)?;
            let rhs = -two_i_sqrt3 + 2.0 / 3.0 * quot - 4.0 / 3f64.sqrt() * epi(-tau / 2.0 + 1.0 / 3.0) * m;
            ("NEWOMEGA2", lhs, rhs)
        }
        _ => {
            // Both sides of the f(q³) identity times q^{1/8}.
            let lhs = f_num(e2pi(3.0 * tau), sc)?;
            let quot = eta(1.0)?.powi(4) / (3.0 * eta(3.0)? * eta(2.0)?.powi(2));
            let m = mu_num(c(-0.5, 0.0), c(-1.0 / 3.0, 0.0), sc)?;
            let rhs = e2pi(tau / 8.0) * (quot + C64::i() * 4.0 / 3f64.sqrt() * m);
            ("NEWF", lhs, rhs)
        }
    };
    let built = (registry::find(id)?.build)(200 * GRID)?;
    let pair = &built.pairs[0];
    let (el, er) = (pair.lhs.eval(tau), pair.rhs.eval(tau));
    let r1 = residual(el, numeric_rhs);
    let r2 = residual(er, numeric_rhs);
    let r3 = residual(numeric_lhs, numeric_rhs);
    Ok((r1.max(r2).max(r3), format!("series lhs {r1:.3e}, series rhs {r2:.3e}, Eulerian lhs {r3:.3e}; form: {}", pair.label)))
}

/// Runs a check across the five battery scenes, in parallel when enabled.
pub fn run_battery(name: &str, tol: Option<f64>) -> Result<Vec<CheckReport>> {
    if !CHECK_NAMES.contains(&name) {
        return Err(Error::UnknownCheck { name: name.to_string(), valid: CHECK_NAMES.join(", ") });
    }
    let scenes = battery_scenes();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        scenes.par_iter().map(|sc| run_check(name, sc, tol)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        scenes.iter().map(|sc| run_check(name, sc, tol)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_parsing() {
        assert_eq!(parse_tau("0.25+1i").unwrap(), c(0.25, 1.0));
        assert_eq!(parse_tau("i").unwrap(), c(0.0, 1.0));
        assert!(parse_tau("-1/3").is_err());
        assert_eq!(parse_tau("-0.5-2i").unwrap(), c(-0.5, -2.0));
        assert_eq!(parse_tau("1e-1+2.5e0i").unwrap(), c(0.1, 2.5));
        assert_eq!(parse_tau(" 0.1 + 0.6i ").unwrap(), c(0.1, 0.6));
        assert_eq!(parse_tau("3i").unwrap(), c(0.0, 3.0));
        assert!(parse_tau("x").is_err());
    }

    #[test]
    fn unknown_check_lists_names() {
        let sc = NumericScene::new(c(0.0, 1.0)).unwrap();
        match run_check("nope", &sc, None) {
            Err(Error::UnknownCheck { valid, .. }) => assert!(valid.contains("s-transform")),
            other => panic!("{other:?}"),
        }
    }
}
