use super::{C64, PI};

/// e^{x²} erfc(x) for real x, without overflow for large x.
pub fn erfcx(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 * (x * x).exp() - erfcx(-x);
    }
    if x < 5.0 {
        return (x * x).exp() * libm::erfc(x);
    }
    // Continued fraction x/√π · 1/(x² + 1/2/(1 + 1/(x² + 3/2/(1 + …)))).
    let mut f = 0.0;
    for k in (1..60).rev() {
        f = (k as f64 / 2.0) / (x + f);
    }
    1.0 / (PI.sqrt() * (x + f))
}

fn erf_series(z: C64) -> C64 {
    let z2 = z * z;
    let mut term = z;
    let mut total = z;
    for n in 1..200 {
        term *= -z2 / n as f64;
        let add = term / (2 * n + 1) as f64;
        total += add;
        if add.norm() < 1e-17 * total.norm() {
            break;
        }
    }
    total * (2.0 / PI.sqrt())
}

/// erfc by Lentz's continued fraction, valid for Re z > 0 and |z| not small.
fn erfc_cf(z: C64) -> C64 {
    let tiny = 1e-300;
    let z2 = z * z;
    // erfc z = e^{−z²}/√π · z/(z² + 1/2/(1 + 1/(z² + 3/2/(1 + …)))).
    let mut f = z2;
    let mut cc = f;
    let mut d = C64::new(0.0, 0.0);
    for k in 1..500 {
        let a = k as f64 / 2.0;
        let b = if k % 2 == 1 { C64::new(1.0, 0.0) } else { z2 };
        d = b + a * d;
        if d.norm() < tiny {
            d = C64::new(tiny, 0.0);
        }
        cc = b + a / cc;
        if cc.norm() < tiny {
            cc = C64::new(tiny, 0.0);
        }
        d = d.inv();
        let delta = cc * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    (-z2).exp() / PI.sqrt() * z / f
}

/// erf for complex arguments.
pub fn erf_complex(z: C64) -> C64 {
    if z.im == 0.0 {
        return C64::new(libm::erf(z.re), 0.0);
    }
    if z.re < 0.0 {
        return -erf_complex(-z);
    }
    if z.norm() < 3.0 {
        erf_series(z)
    } else {
        C64::new(1.0, 0.0) - erfc_cf(z)
    }
}

/// E(z) = 2∫₀^z e^{−πu²} du = erf(√π z).
pub fn e_num(z: C64) -> C64 {
    erf_complex(z * PI.sqrt())
}

/// β(x) = ∫_x^∞ u^{−1/2} e^{−πu} du = erfc(√(πx)).
pub fn beta_num(x: f64) -> f64 {
    assert!(x >= 0.0, "beta is defined for x >= 0");
    libm::erfc((PI * x).sqrt())
}
