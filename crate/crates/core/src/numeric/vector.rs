//! The vectors F = (f₀, f₁, f₂), G and H = F − G.

use super::integrals::{eichler_integral, mordell_j, GSelector};
use super::{e2pi, NumericScene, C64};
use crate::error::{Error, Result};

fn converge<F: FnMut(usize) -> C64>(sc: &NumericScene, mut term: F) -> Result<C64> {
    let mut total = C64::new(0.0, 0.0);
    for n in 0..sc.max_terms {
        let t = term(n);
        total += t;
        if t.norm() < sc.series_term_floor * total.norm().max(1.0) && n > 2 {
            return Ok(total);
        }
    }
    Err(Error::NonConvergence("Eulerian series".into()))
}

/// f(q) = Σ q^{n²}/(−q;q)_n².
pub(crate) fn f_num(q: C64, sc: &NumericScene) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mut den = one;
    let mut qk = one;
    converge(sc, |n| {
        if n > 0 {
            qk *= q;
            den *= (one + qk) * (one + qk);
        }
        q.powu((n * n) as u32) / den
    })
}

/// ω(q) = Σ q^{2n(n+1)}/(q;q²)_{n+1}².
pub(crate) fn omega_num(q: C64, sc: &NumericScene) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let q2 = q * q;
    let mut den = one;
    let mut odd = q;
    converge(sc, |n| {
        den *= (one - odd) * (one - odd);
        odd *= q2;
        q.powu((2 * n * (n + 1)) as u32) / den
    })
}

/// F(τ) = (q^{−1/24} f(q), 2q^{1/3} ω(q^{1/2}), 2q^{1/3} ω(−q^{1/2})).
pub fn f_vector(sc: &NumericScene) -> Result<[C64; 3]> {
    let tau = sc.tau;
    let q = e2pi(tau);
    let half = e2pi(tau / 2.0);
    let third = e2pi(tau / 3.0);
    Ok([e2pi(-tau / 24.0) * f_num(q, sc)?, 2.0 * third * omega_num(half, sc)?, 2.0 * third * omega_num(-half, sc)?])
}

/// G(τ) = 2i√3 ∫_{−τ̄}^{i∞} (g₁, g₀, −g₂)(z)/√(−i(z+τ)) dz.
pub fn g_vector(sc: &NumericScene) -> Result<[C64; 3]> {
    let k = C64::i() * 2.0 * 3f64.sqrt();
    Ok([
        k * eichler_integral(GSelector::G1, sc)?,
        k * eichler_integral(GSelector::G0, sc)?,
        -k * eichler_integral(GSelector::G2, sc)?,
    ])
}

/// H = F − G.
pub fn h_vector(sc: &NumericScene) -> Result<[C64; 3]> {
    let f = f_vector(sc)?;
    let g = g_vector(sc)?;
    Ok([f[0] - g[0], f[1] - g[1], f[2] - g[2]])
}

/// (ζ₂₄⁻¹ v₀, ζ₃ v₂, ζ₃ v₁).
pub fn t_matrix_apply(v: &[C64; 3]) -> [C64; 3] {
    let z3 = e2pi(C64::new(1.0 / 3.0, 0.0));
    [e2pi(C64::new(-1.0 / 24.0, 0.0)) * v[0], z3 * v[2], z3 * v[1]]
}

/// (v₁, v₀, −v₂).
pub fn s_matrix_apply(v: &[C64; 3]) -> [C64; 3] {
    [v[1], v[0], -v[2]]
}

/// Candidate readings of the Mordell remainder vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WatsonCandidate {
    /// (j₁, −j₁, j₃).
    J1J1J3,
    /// (j₁, −j₂, j₃).
    J1J2J3,
    /// (j₂, −j₁, j₃).
    J2J1J3,
}

impl WatsonCandidate {
    pub const ALL: [WatsonCandidate; 3] = [Self::J1J1J3, Self::J1J2J3, Self::J2J1J3];

    pub fn label(self) -> &'static str {
        match self {
            Self::J1J1J3 => "(j1, -j1, j3)",
            Self::J1J2J3 => "(j1, -j2, j3)",
            Self::J2J1J3 => "(j2, -j1, j3)",
        }
    }

    /// 4√3 √(−iτ) times the candidate vector.
    pub fn remainder(self, j: &[C64; 3], tau: C64) -> [C64; 3] {
        let k = 4.0 * 3f64.sqrt() * (-C64::i() * tau).sqrt();
        let [j1, j2, j3] = *j;
        let v = match self {
            Self::J1J1J3 => [j1, -j1, j3],
            Self::J1J2J3 => [j1, -j2, j3],
            Self::J2J1J3 => [j2, -j1, j3],
        };
        [k * v[0], k * v[1], k * v[2]]
    }
}

/// (j₁, j₂, j₃) at τ.
pub fn mordell_vector(sc: &NumericScene) -> Result<[C64; 3]> {
    Ok([mordell_j(1, sc)?, mordell_j(2, sc)?, mordell_j(3, sc)?])
}

/// (1/√(−iτ)) F(−1/τ) − S·F(τ).
pub fn watson_remainder(sc: &NumericScene) -> Result<[C64; 3]> {
    let tau = sc.tau;
    let inv = f_vector(&sc.at(-tau.inv())?)?;
    let w = (-C64::i() * tau).sqrt();
    let sf = s_matrix_apply(&f_vector(sc)?);
    Ok([inv[0] / w - sf[0], inv[1] / w - sf[1], inv[2] / w - sf[2]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mocktheta;
    use crate::numeric::c;
    use crate::qseries::GRID;

    #[test]
    fn eulerian_matches_exact_coefficients() {
        let sc = NumericScene::new(c(0.13, 0.4)).unwrap();
        let q = e2pi(sc.tau);
        let cap = 120 * GRID;
        let f = mocktheta::f_eulerian(cap).eval(sc.tau);
        let w = mocktheta::omega_eulerian(cap).eval(sc.tau);
        assert!((f_num(q, &sc).unwrap() - f).norm() < 1e-12);
        assert!((omega_num(q, &sc).unwrap() - w).norm() < 1e-12);
    }

    #[test]
    fn t_then_inverse_shape() {
        let v = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        let s = s_matrix_apply(&s_matrix_apply(&v));
        assert_eq!(s, v);
        let t = t_matrix_apply(&v);
        assert!((t[1] - 3.0 * e2pi(c(1.0 / 3.0, 0.0))).norm() < 1e-15);
    }
}
