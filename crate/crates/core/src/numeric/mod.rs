//! Floating-point evaluation on the upper half plane: η, ϑ, μ, R, μ̃, unary
//! thetas, Eichler and Mordell integrals, the vectors F, G, H, and checks of
//! their transformation laws.

mod appell;
mod checks;
mod integrals;
mod quad;
mod special;
mod theta;
mod vector;

pub use appell::{mu_num, mu_tilde_modular_check, mu_tilde_num, r_num, Gamma};
pub use checks::{battery_scenes, parse_tau, run_battery, run_check, CheckReport, CHECK_NAMES};
pub use integrals::{eichler_closed, eichler_integral, eichler_quad, mordell_j, period_integral, GSelector};
pub use quad::integrate;
pub use special::{beta_num, e_num, erf_complex, erfcx};
pub use theta::{eta_num, g012_num, g_ab_direct, g_ab_num, theta_num, theta_product};
pub use vector::{f_vector, g_vector, h_vector, s_matrix_apply, t_matrix_apply, watson_remainder, WatsonCandidate};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const PI: f64 = std::f64::consts::PI;

/// A point τ together with the numerical controls used around it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericScene {
    pub tau: C64,
    pub abs_tol: f64,
    pub series_term_floor: f64,
    pub quad_rel_tol: f64,
    pub max_terms: usize,
    pub max_quad_refinements: usize,
}

impl NumericScene {
    pub fn new(tau: C64) -> Result<Self> {
        if tau.im.is_nan() || tau.im <= 0.0 || !tau.re.is_finite() {
            return Err(Error::InvalidArgument(format!("tau = {tau} is not in the upper half plane")));
        }
        Ok(Self {
            tau,
            abs_tol: 1e-8,
            series_term_floor: 1e-18,
            quad_rel_tol: 1e-12,
            max_terms: 20_000,
            max_quad_refinements: 40,
        })
    }

    /// Same controls at another point.
    pub fn at(&self, tau: C64) -> Result<Self> {
        Ok(Self { tau, ..Self::new(tau)? }.with_controls(self))
    }

    fn with_controls(mut self, o: &Self) -> Self {
        self.abs_tol = o.abs_tol;
        self.series_term_floor = o.series_term_floor;
        self.quad_rel_tol = o.quad_rel_tol;
        self.max_terms = o.max_terms;
        self.max_quad_refinements = o.max_quad_refinements;
        self
    }

    pub fn y(&self) -> f64 {
        self.tau.im
    }
}

/// |a − b| / max(1, |a|, |b|).
pub fn residual(a: C64, b: C64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

pub fn residual_vec(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| residual(*x, *y)).fold(0.0, f64::max)
}

/// e^{2πi x}.
pub(crate) fn e2pi(x: C64) -> C64 {
    (C64::i() * 2.0 * PI * x).exp()
}

/// e^{πi x}.
pub(crate) fn epi(x: C64) -> C64 {
    (C64::i() * PI * x).exp()
}

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Σ_k f(k) over all integers, walking outward from `center` until three
/// consecutive terms on each side fall below the floor relative to the sum.
pub(crate) fn bilateral<F>(center: i64, sc: &NumericScene, mut f: F) -> Result<C64>
where
    F: FnMut(i64) -> Result<C64>,
{
    let mut total = f(center)?;
    let floor = sc.series_term_floor;
    for dir in [1i64, -1] {
        let mut small = 0;
        let mut k = center + dir;
        let mut count = 0usize;
        while small < 3 {
            let t = f(k)?;
            total += t;
            if t.norm() < floor * total.norm().max(1.0) {
                small += 1;
            } else {
                small = 0;
            }
            k += dir;
            count += 1;
            if count > sc.max_terms {
                return Err(Error::NonConvergence(format!("bilateral sum exceeded {} terms", sc.max_terms)));
            }
        }
    }
    Ok(total)
}
