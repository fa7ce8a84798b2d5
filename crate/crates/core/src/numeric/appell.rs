use super::special::erfcx;
use super::theta::{eta_num, theta_num};
use super::{bilateral, epi, residual, NumericScene, C64, PI};
use crate::error::{Error, Result};

/// μ(u,v;τ) = e^{πiu}/ϑ(v;τ) · Σ (−1)ⁿ e^{πi(n²+n)τ + 2πinv}/(1 − e^{2πinτ + 2πiu}).
pub fn mu_num(u: C64, v: C64, sc: &NumericScene) -> Result<C64> {
    let tau = sc.tau;
    let th = theta_num(v, sc)?;
    if th.norm() < 1e-300 {
        return Err(Error::InvalidArgument("theta(v) vanishes".into()));
    }
    let center = (-v.im / tau.im - 0.5).round() as i64;
    let one = C64::new(1.0, 0.0);
    let s = bilateral(center, sc, |n| {
        let nf = n as f64;
        let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        // w = πi(n²+n)τ + 2πinv, x = 2πi(nτ + u).
        let w = C64::i() * PI * ((nf * nf + nf) * tau + 2.0 * nf * v);
        let x = C64::i() * 2.0 * PI * (nf * tau + u);
        let term = if x.re <= 0.0 {
            let den = one - x.exp();
            if den.norm() < 1e-14 {
                return Err(Error::InvalidArgument(format!("mu denominator vanishes at n = {n}")));
            }
            w.exp() / den
        } else {
            let den = one - (-x).exp();
            if den.norm() < 1e-14 {
                return Err(Error::InvalidArgument(format!("mu denominator vanishes at n = {n}")));
            }
            -(w - x).exp() / den
        };
        Ok(sign * term)
    })?;
    Ok(epi(u) / th * s)
}

/// R(u;τ) = Σ_{ν∈1/2+Z} {sgn ν − E((ν+a)√(2y))}(−1)^{ν−1/2} e^{−πiν²τ − 2πiνu}.
pub fn r_num(u: C64, sc: &NumericScene) -> Result<C64> {
    let tau = sc.tau;
    let y = tau.im;
    let a = u.im / y;
    let center = (-a - 0.5).round() as i64;
    bilateral(center, sc, |k| {
        let nu = k as f64 + 0.5;
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let x = (nu + a) * (2.0 * y).sqrt();
        let w = -C64::i() * PI * (nu * nu * tau + 2.0 * nu * u);
        let sx = if x > 0.0 {
            1.0
        } else if x < 0.0 {
            -1.0
        } else {
            0.0
        };
        // sgn ν − E(x) = sgn ν − sgn x + sgn x · erfc(√π|x|).
        let mut term = C64::new(0.0, 0.0);
        let jump = nu.signum() - sx;
        if jump != 0.0 {
            term += jump * w.exp();
        }
        if sx != 0.0 {
            let r = PI.sqrt() * x.abs();
            term += sx * erfcx(r) * (w - r * r).exp();
        }
        Ok(sign * term)
    })
}

/// μ̃(u,v;τ) = μ(u,v;τ) + (i/2) R(u − v;τ).
pub fn mu_tilde_num(u: C64, v: C64, sc: &NumericScene) -> Result<C64> {
    Ok(mu_num(u, v, sc)? + C64::i() * 0.5 * r_num(u - v, sc)?)
}

/// An element (a b; c d) of SL₂(Z).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gamma {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Gamma {
    pub const IDENTITY: Gamma = Gamma { a: 1, b: 0, c: 0, d: 1 };
    pub const S: Gamma = Gamma { a: 0, b: -1, c: 1, d: 0 };
    pub const T: Gamma = Gamma { a: 1, b: 1, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::InvalidArgument(format!("({a} {b}; {c} {d}) is not in SL2(Z)")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn act(&self, tau: C64) -> C64 {
        (self.a as f64 * tau + self.b as f64) / (self.c as f64 * tau + self.d as f64)
    }
}

/// Residual of μ̃(u/(cτ+d), v/(cτ+d); γτ) = V(γ)^{−3}√(cτ+d) e^{−πic(u−v)²/(cτ+d)} μ̃(u,v;τ),
/// V(γ) = η(γτ)/(√(cτ+d) η(τ)).
pub fn mu_tilde_modular_check(g: Gamma, u: C64, v: C64, sc: &NumericScene) -> Result<f64> {
    let tau = sc.tau;
    let j = g.c as f64 * tau + g.d as f64;
    if j.norm() < 1e-300 {
        return Err(Error::InvalidArgument("c tau + d = 0".into()));
    }
    let moved = sc.at(g.act(tau))?;
    let lhs = mu_tilde_num(u / j, v / j, &moved)?;
    let sj = j.sqrt();
    let vg = eta_num(&moved)? / (sj * eta_num(sc)?);
    let d = u - v;
    let rhs = vg.powi(-3) * sj * (-C64::i() * PI * g.c as f64 * d * d / j).exp() * mu_tilde_num(u, v, sc)?;
    Ok(residual(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::c;

    #[test]
    fn r_is_even_and_antiperiodic() {
        let sc = NumericScene::new(c(0.0, 1.0)).unwrap();
        let u = c(0.3, 0.2);
        let r = r_num(u, &sc).unwrap();
        assert!((r_num(u + 1.0, &sc).unwrap() + r).norm() < 1e-10);
        assert!((r_num(-u, &sc).unwrap() - r).norm() < 1e-10);
    }

    #[test]
    fn mu_matches_direct_sum_without_rearrangement() {
        // Plain summation over a wide window as an oracle for the stable form.
        let sc = NumericScene::new(c(0.1, 0.9)).unwrap();
        let (u, v) = (c(0.2, 0.1), c(0.05, 0.3));
        let tau = sc.tau;
        let mut s = C64::new(0.0, 0.0);
        for n in -30i64..=30 {
            let nf = n as f64;
            let num = epi((nf * nf + nf) * tau + 2.0 * nf * v);
            let den = C64::new(1.0, 0.0) - epi(2.0 * (nf * tau + u));
            s += if n % 2 == 0 { num / den } else { -num / den };
        }
        let direct = epi(u) / theta_num(v, &sc).unwrap() * s;
        assert!((mu_num(u, v, &sc).unwrap() - direct).norm() < 1e-12);
    }

    #[test]
    fn identity_gamma_is_trivial() {
        let sc = NumericScene::new(c(0.2, 1.1)).unwrap();
        assert!(mu_tilde_modular_check(Gamma::IDENTITY, c(0.2, 0.1), c(0.05, 0.3), &sc).unwrap() < 1e-12);
        assert!(Gamma::new(1, 1, 1, 1).is_err());
    }
}
