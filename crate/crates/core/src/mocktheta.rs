//! The third order mock theta functions f, φ, ω in Eulerian and Watson form.

use crate::cyclotomic::Cyc24;
use crate::error::Result;
use crate::etatheta::euler_e;
use crate::lerch::{lerch_expand, with_precision, LerchSpec};
use crate::qseries::{QSeries, GRID};

fn eulerian<F>(cap: i64, start: i64, mut step: F) -> QSeries
where
    F: FnMut(&mut QSeries, i64) -> Option<i64>,
{
    // `step` updates the running denominator for index n and returns the
    // exponent at which term n starts, or None once past the cap.
    let mut acc = QSeries::zero(cap);
    let mut running = QSeries::one(cap);
    let mut n = start;
    while let Some(e) = step(&mut running, n) {
        acc = acc.add(&running.shift(e).truncate(cap));
        n += 1;
    }
    acc
}

/// f(q) = Σ_{n≥0} q^{n²}/(−q;q)_n².
pub fn f_eulerian(cap: i64) -> QSeries {
    let minus_one = -Cyc24::one();
    eulerian(cap, 0, |p, n| {
        if n * n * GRID >= cap {
            return None;
        }
        if n > 0 {
            p.div_one_minus(&minus_one, n * GRID);
            p.div_one_minus(&minus_one, n * GRID);
        }
        Some(n * n * GRID)
    })
}

/// ω(q) = Σ_{n≥0} q^{2n(n+1)}/(q;q²)_{n+1}².
pub fn omega_eulerian(cap: i64) -> QSeries {
    let one = Cyc24::one();
    eulerian(cap, 0, |p, n| {
        if 2 * n * (n + 1) * GRID >= cap {
            return None;
        }
        p.div_one_minus(&one, (2 * n + 1) * GRID);
        p.div_one_minus(&one, (2 * n + 1) * GRID);
        Some(2 * n * (n + 1) * GRID)
    })
}

/// φ(q) = Σ_{n≥0} q^{n²}/(−q²;q²)_n.
pub fn phi_eulerian(cap: i64) -> QSeries {
    let minus_one = -Cyc24::one();
    eulerian(cap, 0, |p, n| {
        if n * n * GRID >= cap {
            return None;
        }
        if n > 0 {
            p.div_one_minus(&minus_one, 2 * n * GRID);
        }
        Some(n * n * GRID)
    })
}

/// Σ (−1)ⁿ q^{n(3n+1)/2}/(1 + qⁿ).
pub fn f_watson_sum() -> LerchSpec {
    LerchSpec::new(36, 12, 0, 24, 0).denominator_root(12)
}

/// Σ (−1)ⁿ q^{3n(n+1)}/(1 − q^{2n+1}).
pub fn omega_watson_sum() -> LerchSpec {
    LerchSpec::new(72, 72, 0, 48, 24)
}

/// f(q) = (2/(q)∞) Σ (−1)ⁿ q^{n(3n+1)/2}/(1 + qⁿ).
pub fn f_watson(cap: i64) -> Result<QSeries> {
    with_precision(cap, |w| Ok(lerch_expand(&f_watson_sum(), w)?.div(&euler_e(1, w))?.scale_frac(2, 1)))
}

/// ω(q) = (1/(q²;q²)∞) Σ (−1)ⁿ q^{3n(n+1)}/(1 − q^{2n+1}).
pub fn omega_watson(cap: i64) -> Result<QSeries> {
    with_precision(cap, |w| lerch_expand(&omega_watson_sum(), w)?.div(&euler_e(2, w)))
}

/// ω(−q) by the q ↦ −q twist of ω(q).
pub fn omega_neg(cap: i64) -> Result<QSeries> {
    omega_watson(cap)?.twist_neg()
}

/// ω(−q) = (1/(q²;q²)∞) Σ (−1)ⁿ q^{3n(n+1)}/(1 + q^{2n+1}), built directly.
pub fn omega_neg_direct(cap: i64) -> Result<QSeries> {
    let spec = omega_watson_sum().denominator_root(12);
    with_precision(cap, |w| lerch_expand(&spec, w)?.div(&euler_e(2, w)))
}

/// Looks a series up by its CLI name.
pub fn by_name(name: &str, cap: i64) -> Option<Result<QSeries>> {
    Some(match name {
        "f" => Ok(f_eulerian(cap)),
        "omega" => Ok(omega_eulerian(cap)),
        "phi" => Ok(phi_eulerian(cap)),
        "f-watson" => f_watson(cap),
        "omega-watson" => omega_watson(cap),
        "omega-neg" => omega_neg(cap),
        _ => return None,
    })
}

pub const SERIES_NAMES: &[&str] = &["f", "omega", "phi", "f-watson", "omega-watson", "omega-neg"];
