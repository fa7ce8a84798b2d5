//! Adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.
#![allow(clippy::excessive_precision)]

use super::C64;
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<F: FnMut(f64) -> C64>(f: &mut F, a: f64, b: f64) -> (C64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = half * XGK[j];
        let s = f(mid - x) + f(mid + x);
        kron += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    (kron * half, ((kron - gauss) * half).norm())
}

/// ∫_a^b f by recursive bisection until the Kronrod–Gauss gap of every
/// piece is below its share of `tol` relative to a first estimate of the
/// integral (floored at 1e−6 so near-zero integrals still terminate).
pub fn integrate<F: FnMut(f64) -> C64>(mut f: F, a: f64, b: f64, tol: f64, max_depth: usize) -> Result<C64> {
    let (whole, _) = gk15(&mut f, a, b);
    let scale = whole.norm().max(1e-300);
    let mut stack = vec![(a, b, 0usize)];
    let mut total = C64::new(0.0, 0.0);
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, err) = gk15(&mut f, lo, hi);
        let allowed = tol * scale.max(1e-6) * (hi - lo) / (b - a);
        if err <= allowed || err < 1e-300 {
            total += v;
        } else if depth >= max_depth {
            return Err(Error::NonConvergence(format!("quadrature on [{lo}, {hi}] did not settle (error {err:e})")));
        } else {
            let m = 0.5 * (lo + hi);
            stack.push((lo, m, depth + 1));
            stack.push((m, hi, depth + 1));
        }
    }
    Ok(total)
}
