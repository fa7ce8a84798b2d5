use super::{bilateral, c, e2pi, epi, NumericScene, C64};
use crate::error::{Error, Result};

/// η(τ) = q^{1/24} ∏(1 − qⁿ).
pub fn eta_num(sc: &NumericScene) -> Result<C64> {
    let q = e2pi(sc.tau);
    let mut prod = C64::new(1.0, 0.0);
    let mut qn = q;
    let mut n = 0;
    while qn.norm() > sc.series_term_floor * 1e-2 {
        prod *= C64::new(1.0, 0.0) - qn;
        qn *= q;
        n += 1;
        if n > sc.max_terms {
            return Err(Error::NonConvergence("eta product".into()));
        }
    }
    Ok(e2pi(sc.tau / 24.0) * prod)
}

/// ϑ(z;τ) = Σ_{ν∈1/2+Z} e^{πiν²τ + 2πiν(z+1/2)}.
pub fn theta_num(z: C64, sc: &NumericScene) -> Result<C64> {
    let tau = sc.tau;
    let center = (-z.im / tau.im - 0.5).round() as i64;
    bilateral(center, sc, |k| {
        let nu = k as f64 + 0.5;
        Ok(epi(nu * nu * tau + 2.0 * nu * (z + 0.5)))
    })
}

/// The triple product −iq^{1/8}ζ^{−1/2}∏(1−qⁿ)(1−ζq^{n−1})(1−ζ⁻¹qⁿ).
pub fn theta_product(z: C64, sc: &NumericScene) -> Result<C64> {
    let q = e2pi(sc.tau);
    let zeta = e2pi(z);
    let one = C64::new(1.0, 0.0);
    let mut prod = one - zeta;
    let mut qn = q;
    let mut n = 0;
    while qn.norm() * (1.0 + zeta.norm() + zeta.inv().norm()) > sc.series_term_floor * 1e-2 {
        prod *= (one - qn) * (one - zeta * qn) * (one - qn / zeta);
        qn *= q;
        n += 1;
        if n > sc.max_terms {
            return Err(Error::NonConvergence("theta product".into()));
        }
    }
    Ok(-C64::i() * e2pi(sc.tau / 8.0) * epi(-z) * prod)
}

/// g_{a,b}(τ) = Σ_{n∈a+Z} n e^{πin²τ + 2πinb}, summed directly.
pub fn g_ab_direct(a: f64, b: f64, sc: &NumericScene) -> Result<C64> {
    let tau = sc.tau;
    let center = (-a).round() as i64;
    bilateral(center, sc, |k| {
        let n = a + k as f64;
        Ok(n * epi(n * n * tau + 2.0 * n * b))
    })
}

/// g_{a,b}(τ), switching to g_{a,b}(τ) = i e^{2πiab}(−iτ′)^{3/2} g_{b,−a}(τ′)
/// with τ′ = −1/τ when that point sits higher in the half plane.
pub fn g_ab_num(a: f64, b: f64, sc: &NumericScene) -> Result<C64> {
    let tau = sc.tau;
    if tau.norm() >= 1.0 {
        return g_ab_direct(a, b, sc);
    }
    let tp = -tau.inv();
    let w = (-C64::i() * tp).sqrt();
    Ok(C64::i() * e2pi(c(a * b, 0.0)) * w * w * w * g_ab_direct(b, -a, &sc.at(tp)?)?)
}

/// g₀, g₁, g₂ at z, through g₀(z) = e^{−πi/3}g_{1/3,1/2}(3z),
/// g₁(z) = −g_{1/6,0}(3z), g₂(z) = g_{1/3,0}(3z).
pub fn g012_num(idx: usize, z: C64, sc: &NumericScene) -> Result<C64> {
    let at = sc.at(3.0 * z)?;
    Ok(match idx {
        0 => epi(c(-1.0 / 3.0, 0.0)) * g_ab_num(1.0 / 3.0, 0.5, &at)?,
        1 => -g_ab_num(1.0 / 6.0, 0.0, &at)?,
        2 => g_ab_num(1.0 / 3.0, 0.0, &at)?,
        _ => return Err(Error::InvalidArgument(format!("no g{idx}"))),
    })
}

/// g₀, g₁, g₂ from their defining sums, for cross-checking `g012_num`.
#[cfg(test)]
pub(crate) fn g012_defining(idx: usize, z: C64, sc: &NumericScene) -> Result<C64> {
    let (shift, alt, sign) = match idx {
        0 => (1.0 / 3.0, true, 1.0),
        1 => (1.0 / 6.0, false, -1.0),
        2 => (1.0 / 3.0, false, 1.0),
        _ => return Err(Error::InvalidArgument(format!("no g{idx}"))),
    };
    let s = bilateral(0, sc, |n| {
        let m = n as f64 + shift;
        let t = m * (C64::i() * 3.0 * super::PI * m * m * z).exp();
        Ok(if alt && n.rem_euclid(2) == 1 { -t } else { t })
    })?;
    Ok(sign * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::PI;
    use rand::{Rng, SeedableRng};

    fn scene(re: f64, im: f64) -> NumericScene {
        NumericScene::new(c(re, im)).unwrap()
    }

    #[test]
    fn eta_inversion() {
        let sc = scene(0.25, 1.0);
        let lhs = eta_num(&sc.at(-sc.tau.inv()).unwrap()).unwrap();
        let rhs = (-C64::i() * sc.tau).sqrt() * eta_num(&sc).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
    }

    #[test]
    fn eta_at_i_against_fixed_product() {
        let q = (-2.0 * PI).exp();
        let mut p = 1.0;
        for n in 1..=200 {
            p *= 1.0 - q.powi(n);
        }
        let v = eta_num(&scene(0.0, 1.0)).unwrap();
        assert!((v - c((-2.0 * PI / 24.0).exp() * p, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn theta_sum_matches_product() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let sc = scene(rng.gen_range(-0.5..0.5), rng.gen_range(0.5..1.5));
            let z = c(rng.gen_range(-0.5..0.5), rng.gen_range(-0.3..0.3));
            let s = theta_num(z, &sc).unwrap();
            let p = theta_product(z, &sc).unwrap();
            assert!((s - p).norm() < 1e-10, "{s} vs {p}");
        }
    }

    #[test]
    fn g_paths_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let sc = scene(rng.gen_range(-0.5..0.5), rng.gen_range(0.3..1.2));
            let z = sc.tau;
            for idx in 0..3 {
                let a = g012_num(idx, z, &sc).unwrap();
                let b = g012_defining(idx, z, &sc).unwrap();
                assert!((a - b).norm() < 1e-11, "g{idx}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn g_inversion_near_real_axis() {
        let sc = scene(0.1, 0.3);
        let a = g_ab_num(0.3, 0.2, &sc).unwrap();
        let b = g_ab_direct(0.3, 0.2, &sc).unwrap();
        assert!((a - b).norm() < 1e-9 * b.norm().max(1.0));
    }
}
