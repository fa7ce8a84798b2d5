//! Eichler-type period integrals of unary thetas and Watson's Mordell
//! integrals.

use super::quad::integrate;
use super::special::erfcx;
use super::theta::{g012_num, g_ab_direct};
use super::{bilateral, c, epi, NumericScene, C64, PI};
use crate::error::{Error, Result};

/// Distance from `a` to the nearest nonzero point of a + Z that carries a
/// nonzero term.
fn min_abs(a: f64) -> f64 {
    let d = (a - a.round()).abs();
    if d < 1e-12 {
        1.0
    } else {
        d
    }
}

/// ∫_{−τ̄}^{i∞} g_{a,b}(cz)/√(−i(z+τ)) dz, termwise:
/// (i/√c) Σ_{n∈a+Z} sgn(n) e^{2πinb} e^{−πicn²τ̄} erfcx(|n|√(2πcy)).
pub fn eichler_closed(a: f64, b: f64, cm: f64, sc: &NumericScene) -> Result<C64> {
    let tau = sc.tau;
    let y = tau.im;
    let s = bilateral((-a).round() as i64, sc, |k| {
        let n = a + k as f64;
        if n == 0.0 {
            return Ok(C64::new(0.0, 0.0));
        }
        let phase = epi(2.0 * n * b - cm * n * n * tau.conj());
        Ok(n.signum() * phase * erfcx(n.abs() * (2.0 * PI * cm * y).sqrt()))
    })?;
    Ok(C64::i() / cm.sqrt() * s)
}

/// The same integral by quadrature along z = −τ̄ + it.
pub fn eichler_quad(a: f64, b: f64, cm: f64, sc: &NumericScene) -> Result<C64> {
    let tau = sc.tau;
    let y = tau.im;
    let d = min_abs(a);
    let t_max = 60.0 / (PI * cm * d * d);
    let mut err = None;
    let v = integrate(
        |t| {
            let z = -tau.conj() + C64::i() * t;
            match sc.at(cm * z).and_then(|s| g_ab_direct(a, b, &s)) {
                Ok(g) => C64::i() * g / (2.0 * y + t).sqrt(),
                Err(e) => {
                    err = Some(e);
                    C64::new(0.0, 0.0)
                }
            }
        },
        0.0,
        t_max,
        sc.quad_rel_tol,
        sc.max_quad_refinements,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

/// One of g₀, g₁, g₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GSelector {
    G0,
    G1,
    G2,
}

impl GSelector {
    pub const ALL: [GSelector; 3] = [GSelector::G0, GSelector::G1, GSelector::G2];

    fn index(self) -> usize {
        self as usize
    }

    /// `(factor, a, b)` with g(z) = factor · g_{a,b}(3z).
    fn as_unary(self) -> (C64, f64, f64) {
        match self {
            GSelector::G0 => (epi(c(-1.0 / 3.0, 0.0)), 1.0 / 3.0, 0.5),
            GSelector::G1 => (C64::new(-1.0, 0.0), 1.0 / 6.0, 0.0),
            GSelector::G2 => (C64::new(1.0, 0.0), 1.0 / 3.0, 0.0),
        }
    }
}

/// ∫_{−τ̄}^{i∞} g(z)/√(−i(z+τ)) dz for g ∈ {g₀, g₁, g₂}.
pub fn eichler_integral(which: GSelector, sc: &NumericScene) -> Result<C64> {
    let (k, a, b) = which.as_unary();
    Ok(k * eichler_closed(a, b, 3.0, sc)?)
}

/// ∫₀^{i∞} g(z)/√(−i(z+τ)) dz, by quadrature along z = it.
pub fn period_integral(which: GSelector, sc: &NumericScene) -> Result<C64> {
    let tau = sc.tau;
    let (_, a, _) = which.as_unary();
    let d = min_abs(a);
    let t_max = 60.0 / (PI * 3.0 * d * d);
    let mut err = None;
    let mut f = |t: f64| {
        let z = C64::i() * t;
        match g012_num(which.index(), z, sc) {
            Ok(g) => C64::i() * g / (C64::new(t, 0.0) - C64::i() * tau).sqrt(),
            Err(e) => {
                err = Some(e);
                C64::new(0.0, 0.0)
            }
        }
    };
    let mut total = C64::new(0.0, 0.0);
    for (lo, hi) in [(0.0, 1.0), (1.0, t_max)] {
        total += integrate(&mut f, lo, hi, sc.quad_rel_tol, sc.max_quad_refinements)?;
    }
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// 1 − e^{w}, accurate for small w.
fn one_minus_exp(w: C64) -> C64 {
    if w.norm() < 1e-2 {
        let mut term = w;
        let mut s = w;
        for k in 2..10 {
            term *= w / k as f64;
            s += term;
        }
        -s
    } else {
        C64::new(1.0, 0.0) - w.exp()
    }
}

/// The x → 0 limit of the trigonometric ratio in j₁, j₂, j₃.
pub fn mordell_ratio_limit(idx: usize) -> f64 {
    match idx {
        1 => 2.0 / 3.0,
        2 => 1.0,
        _ => 1.0 / 3.0,
    }
}

fn mordell_ratio(idx: usize, tau: C64, x: f64) -> C64 {
    if x == 0.0 {
        return C64::new(mordell_ratio_limit(idx), 0.0);
    }
    // sin α/sin β = e^{i(β−α)}(1 − e^{2iα})/(1 − e^{2iβ}); cos likewise with +.
    let k = match idx {
        1 => 2.0,
        _ => 1.0,
    };
    let al = k * PI * tau * x;
    let be = 3.0 * PI * tau * x;
    let front = (C64::i() * (be - al)).exp();
    if idx == 2 {
        front * (C64::new(1.0, 0.0) + (2.0 * C64::i() * al).exp()) / (C64::new(1.0, 0.0) + (2.0 * C64::i() * be).exp())
    } else {
        front * one_minus_exp(2.0 * C64::i() * al) / one_minus_exp(2.0 * C64::i() * be)
    }
}

/// j_idx(τ) = ∫₀^∞ e^{3πiτx²} (trigonometric ratio) dx for idx ∈ {1, 2, 3}.
pub fn mordell_j(idx: usize, sc: &NumericScene) -> Result<C64> {
    if !(1..=3).contains(&idx) {
        return Err(Error::InvalidArgument(format!("no Mordell integral j{idx}")));
    }
    let tau = sc.tau;
    let x_max = (60.0 / (3.0 * PI * tau.im)).sqrt();
    integrate(
        |x| (C64::i() * 3.0 * PI * tau * x * x).exp() * mordell_ratio(idx, tau, x),
        0.0,
        x_max,
        sc.quad_rel_tol,
        sc.max_quad_refinements,
    )
}

/// j_idx by a plain fine-grid trapezoid rule, as an independent oracle.
#[cfg(test)]
pub(crate) fn mordell_trapezoid(idx: usize, sc: &NumericScene, steps: usize) -> C64 {
    let tau = sc.tau;
    let x_max = (60.0 / (3.0 * PI * tau.im)).sqrt();
    let h = x_max / steps as f64;
    let f = |x: f64| (C64::i() * 3.0 * PI * tau * x * x).exp() * mordell_ratio(idx, tau, x);
    let mut s = (f(0.0) + f(x_max)) * 0.5;
    for k in 1..steps {
        s += f(k as f64 * h);
    }
    s * h
}
