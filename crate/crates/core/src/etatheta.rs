//! Euler products, eta quotients, Jacobi triple products and the theta
//! series Δ, P₀, P₁, ψ, φ, Θ, Θ₃.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cyclotomic::Cyc24;
use crate::error::{Error, Result};
use crate::qseries::{Monomial, QSeries, GRID};

/// Extra grid units carried internally so negative lows and shifts never
/// eat into the precision a caller asked for.
pub(crate) const PAD: i64 = 12 * GRID;

/// Checks the series is known below `cap` and trims it there.
pub(crate) fn ensure(s: QSeries, cap: i64) -> Result<QSeries> {
    if s.cap() < cap {
        return Err(Error::OutOfPrecision { exponent: cap - 1, cap: s.cap() });
    }
    Ok(s.truncate(cap))
}

/// E(q^m) = ∏(1 − q^{mn}) from Euler's pentagonal number theorem.
pub fn euler_e(m: i64, cap: i64) -> QSeries {
    assert!(m >= 1);
    let mut terms = Vec::new();
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = m * kk * (3 * kk - 1) / 2;
            if e * GRID < cap {
                any = true;
                terms.push((e, Cyc24::from_int(if kk % 2 == 0 { 1 } else { -1 })));
            }
        }
        if !any && k > 0 {
            break;
        }
        k += 1;
    }
    QSeries::from_int_terms(terms, cap)
}

/// E(q^m) as the literal truncated product; the reference for [`euler_e`].
pub fn euler_e_by_product(m: i64, cap: i64) -> QSeries {
    let mut s = QSeries::one(cap);
    let one = Cyc24::one();
    let mut n = 1;
    while m * n * GRID < cap {
        s.mul_one_minus(&one, m * n * GRID);
        n += 1;
    }
    s
}

/// Splits the factors of ∏_{k<count} (1 − c·q^{e0 + k·step}) into a monomial
/// prefactor and positive-exponent factors. `None` signals an exactly zero
/// product.
fn split_factors(a: Monomial, step: i64, count: Option<i64>, cap: i64) -> Option<(Monomial, Vec<(Cyc24, i64)>)> {
    let mut pre = Monomial::q(0);
    let mut factors = Vec::new();
    let mut k = 0;
    loop {
        if count.is_some_and(|n| k >= n) {
            break;
        }
        let e = a.qpow + k * step;
        if e > 0 && e >= cap - pre.qpow.min(0) && count.is_none() {
            break;
        }
        if e < 0 {
            // 1 − c q^e = −c q^e (1 − c⁻¹ q^{−e})
            pre = pre * Monomial::new(a.root + 12, e);
            factors.push((Cyc24::root(-a.root), -e));
        } else if e == 0 {
            if a.root == 0 {
                return None;
            }
            factors.push((Cyc24::one() - Cyc24::root(a.root), 0));
        } else {
            factors.push((Cyc24::root(a.root), e));
        }
        k += 1;
    }
    Some((pre, factors))
}

fn product_from_factors(pre: Monomial, factors: &[(Cyc24, i64)], cap: i64) -> QSeries {
    let body_cap = cap - pre.qpow;
    let mut s = QSeries::one(body_cap);
    let mut constant = pre.constant();
    for (c, e) in factors {
        if *e == 0 {
            constant = &constant * c;
        } else if *e < body_cap {
            s.mul_one_minus(c, *e);
        }
    }
    s.scale(&constant).shift(pre.qpow)
}

/// (a; q^{step/24})_∞ for a monomial `a`; factors with nonpositive
/// exponent are pulled out exactly.
pub fn pochhammer(a: Monomial, step: i64, cap: i64) -> QSeries {
    assert!(step > 0);
    match split_factors(a, step, None, cap) {
        None => QSeries::zero(cap),
        Some((pre, f)) => product_from_factors(pre, &f, cap),
    }
}

/// Finite (a; q^{step/24})_n.
pub fn pochhammer_n(a: Monomial, step: i64, n: i64, cap: i64) -> QSeries {
    assert!(step > 0);
    match split_factors(a, step, Some(n), cap) {
        None => QSeries::zero(cap),
        Some((pre, f)) => product_from_factors(pre, &f, cap),
    }
}

/// A finite product ∏ η(m·τ)^r. Multipliers are positive rationals kept in
/// grid units (`m24 = 24·m`) so that η(3τ/2) is expressible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    factors: Vec<(i64, i64)>,
}

impl EtaQuotientSpec {
    /// From `(multiplier, exponent)` pairs with integer multipliers.
    pub fn new(factors: &[(i64, i64)]) -> Self {
        let mut spec = Self { factors: Vec::new() };
        for &(m, r) in factors {
            spec.push(m * GRID, r);
        }
        spec
    }

    /// From `(multiplier·24, exponent)` pairs.
    pub fn from_grid(factors: &[(i64, i64)]) -> Self {
        let mut spec = Self { factors: Vec::new() };
        for &(m24, r) in factors {
            spec.push(m24, r);
        }
        spec
    }

    fn push(&mut self, m24: i64, r: i64) {
        assert!(m24 > 0, "eta multiplier must be positive");
        if let Some(f) = self.factors.iter_mut().find(|f| f.0 == m24) {
            f.1 += r;
        } else {
            self.factors.push((m24, r));
        }
        self.factors.retain(|f| f.1 != 0);
        self.factors.sort();
    }

    pub fn factors(&self) -> &[(i64, i64)] {
        &self.factors
    }

    /// The q-power Σ m·r/24 of the η-prefactors, in grid units.
    pub fn prefactor(&self) -> Result<i64> {
        let total: i64 = self.factors.iter().map(|(m24, r)| m24 * r).sum();
        if total % GRID != 0 {
            return Err(Error::Grid(format!("eta prefactor {total}/576 is off the grid")));
        }
        Ok(total / GRID)
    }
}

impl FromStr for EtaQuotientSpec {
    type Err = Error;

    /// Parses `eta(1)^2*eta(4)^2/eta(2)^2/eta(6)`; multipliers may be `3/2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut spec = Self { factors: Vec::new() };
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = s.as_str();
        let mut sign = 1;
        let mut first = true;
        while !rest.is_empty() {
            if !first {
                sign = match rest.as_bytes()[0] {
                    b'*' => 1,
                    b'/' => -1,
                    _ => return Err(Error::Parse(format!("expected * or / at `{rest}`"))),
                };
                rest = &rest[1..];
            }
            first = false;
            let body = rest.strip_prefix("eta(").ok_or_else(|| Error::Parse(format!("expected eta( at `{rest}`")))?;
            let close = body.find(')').ok_or_else(|| Error::Parse("unclosed eta(".into()))?;
            let m = crate::cyclotomic::parse_rational(&body[..close])?;
            let m24 = &m * BigRational::from_integer(GRID.into());
            if !m24.is_integer() || !m24.is_positive() {
                return Err(Error::Grid(format!("eta multiplier {m} is not a positive multiple of 1/24")));
            }
            let m24: i64 = m24.to_integer().try_into().map_err(|_| Error::Parse("multiplier overflow".into()))?;
            rest = &body[close + 1..];
            let mut r = 1;
            if let Some(after) = rest.strip_prefix('^') {
                let end = after.find(['*', '/']).unwrap_or(after.len());
                r = after[..end]
                    .trim_matches(|c| c == '(' || c == ')')
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent `{}`", &after[..end])))?;
                rest = &after[end..];
            }
            spec.push(m24, sign * r);
        }
        Ok(spec)
    }
}

impl fmt::Display for EtaQuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_m = |m24: i64| {
            let g = m24.gcd(&GRID);
            if g == GRID {
                format!("{}", m24 / GRID)
            } else {
                format!("{}/{}", m24 / g, GRID / g)
            }
        };
        let mut first = true;
        for &(m24, r) in self.factors.iter().filter(|f| f.1 > 0) {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "eta({})", fmt_m(m24))?;
            if r != 1 {
                write!(f, "^{r}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        for &(m24, r) in self.factors.iter().filter(|f| f.1 < 0) {
            write!(f, "/eta({})", fmt_m(m24))?;
            if r != -1 {
                write!(f, "^{}", -r)?;
            }
        }
        Ok(())
    }
}

/// ∏ E(q^m)^r without the η-prefactor, by the logarithmic-derivative
/// recurrence n·F_n = Σ_k L_k F_{n−k} over the integers.
pub fn e_product(spec: &EtaQuotientSpec, cap: i64) -> QSeries {
    if cap <= 0 {
        return QSeries::zero(cap);
    }
    let g = spec.factors.iter().fold(0i64, |acc, (m24, _)| acc.gcd(m24));
    if g == 0 {
        return QSeries::one(cap);
    }
    let len = Integer::div_ceil(&cap, &g) as usize;
    // L = x·d/dx log F in units x = q^{g/24}.
    let mut log_deriv = vec![BigInt::zero(); len];
    for &(m24, r) in &spec.factors {
        let m = (m24 / g) as usize;
        let mut n = 1usize;
        while m * n < len {
            let w = BigInt::from(r) * BigInt::from((m * n) as i64);
            let step = m * n;
            let mut k = step;
            while k < len {
                log_deriv[k] -= &w;
                k += step;
            }
            n += 1;
        }
    }
    let mut f: Vec<BigInt> = Vec::with_capacity(len);
    f.push(BigInt::from(1));
    for n in 1..len {
        let mut s = BigInt::zero();
        for k in 1..=n {
            if !log_deriv[k].is_zero() && !f[n - k].is_zero() {
                s += &log_deriv[k] * &f[n - k];
            }
        }
        let (q, r) = s.div_rem(&BigInt::from(n as i64));
        debug_assert!(r.is_zero());
        f.push(q);
    }
    let coeffs: Vec<Cyc24> = (0..cap)
        .map(|e| {
            if e % g == 0 {
                Cyc24::from_rational(BigRational::from_integer(f[(e / g) as usize].clone()))
            } else {
                Cyc24::zero()
            }
        })
        .collect();
    QSeries::from_coeffs(0, cap, coeffs).expect("window matches")
}

/// The eta quotient including its fractional q-prefactor.
pub fn eta_quotient(spec: &EtaQuotientSpec, cap: i64) -> Result<QSeries> {
    let pre = spec.prefactor()?;
    Ok(e_product(spec, cap - pre).shift(pre))
}

/// Σ_n ζ^{r0 + r1·n} q^{(a n² + b n + c)/24} over all integers n, a > 0.
pub fn theta_sum(r0: i64, r1: i64, a: i64, b: i64, c: i64, cap: i64) -> QSeries {
    assert!(a > 0);
    let bound = quadratic_range(a, b, c, cap);
    let mut acc = vec![[0i64; 24]; 0];
    let mut low = cap;
    let mut terms = Vec::new();
    for n in -bound..=bound {
        let e = a * n * n + b * n + c;
        if e < cap {
            low = low.min(e);
            terms.push((e, (r0 + r1 * n).rem_euclid(24)));
        }
    }
    if terms.is_empty() {
        return QSeries::zero(cap);
    }
    acc.resize((cap - low) as usize, [0i64; 24]);
    for (e, r) in terms {
        acc[(e - low) as usize][r as usize] += 1;
    }
    QSeries::from_coeffs(low, cap, acc.iter().map(root_counts_to_cyc).collect()).unwrap()
}

pub(crate) fn root_counts_to_cyc(counts: &[i64; 24]) -> Cyc24 {
    let mut c = Cyc24::zero();
    for (k, &n) in counts.iter().enumerate() {
        if n != 0 {
            c += &Cyc24::root(k as i64).scale(&BigRational::from_integer(n.into()));
        }
    }
    c
}

/// Smallest N such that a n² − |b| |n| + c ≥ cap for every |n| > N.
pub(crate) fn quadratic_range(a: i64, b: i64, c: i64, cap: i64) -> i64 {
    let (a, b) = (a as f64, b.abs() as f64);
    let disc = b * b + 4.0 * a * ((cap - c).max(0) as f64);
    ((b + disc.sqrt()) / (2.0 * a)).ceil() as i64 + 2
}

/// Both sides of (q², qz, q/z; q²)_∞ = Σ (−1)ⁿ zⁿ q^{n²}: `(product, sum)`.
pub fn jtp_product(z: Monomial, cap: i64) -> Result<(QSeries, QSeries)> {
    let work = cap + PAD;
    let q = Monomial::q(GRID);
    let prod = pochhammer(Monomial::q(2 * GRID), 2 * GRID, work).mul(&pochhammer(q * z, 2 * GRID, work)).mul(&pochhammer(
        q * z.inv(),
        2 * GRID,
        work,
    ));
    let sum = theta_sum(0, 12 + z.root, 24, z.qpow, 0, work);
    Ok((ensure(prod, cap)?, ensure(sum, cap)?))
}

/// Θ(z, q^m) = (z; q^m)_∞ (z⁻¹q^m; q^m)_∞ (q^m; q^m)_∞ with `m` in grid units.
pub fn theta_big(z: Monomial, m: i64, cap: i64) -> Result<QSeries> {
    let work = cap + PAD;
    let s = pochhammer(z, m, work).mul(&pochhammer(z.inv() * Monomial::q(m), m, work)).mul(&pochhammer(Monomial::q(m), m, work));
    ensure(s, cap)
}

/// Θ₃(q) = Σ q^{n²}.
pub fn theta3(cap: i64) -> QSeries {
    theta_sum(0, 0, GRID, 0, 0, cap)
}

/// Δ(q) = Σ_{n≥0} q^{n(n+1)/2}, written bilaterally as Σ q^{n(2n+1)}.
pub fn delta(cap: i64) -> QSeries {
    theta_sum(0, 0, 2 * GRID, GRID, 0, cap)
}

/// P₀ = E(q²)E(q³)²/(E(q⁶)E(q)).
pub fn p0(cap: i64) -> QSeries {
    e_product(&EtaQuotientSpec::new(&[(2, 1), (3, 2), (6, -1), (1, -1)]), cap)
}

/// P₁ = E(q⁶)²/E(q³).
pub fn p1(cap: i64) -> QSeries {
    e_product(&EtaQuotientSpec::new(&[(6, 2), (3, -1)]), cap)
}

/// `(Δ, P₀, P₁)`.
pub fn delta_p0_p1(cap: i64) -> (QSeries, QSeries, QSeries) {
    (delta(cap), p0(cap), p1(cap))
}

/// ψ(q) = Σ_{n≥0} q^{n(n+1)/2}.
pub fn psi(cap: i64) -> QSeries {
    let mut terms = Vec::new();
    let mut n = 0;
    while n * (n + 1) / 2 * GRID < cap {
        terms.push((n * (n + 1) / 2, Cyc24::one()));
        n += 1;
    }
    QSeries::from_int_terms(terms, cap)
}

/// ψ(q) = (q²;q²)_∞/(q;q²)_∞.
pub fn psi_product(cap: i64) -> Result<QSeries> {
    let num = pochhammer(Monomial::q(2 * GRID), 2 * GRID, cap);
    let den = pochhammer(Monomial::q(GRID), 2 * GRID, cap);
    num.div(&den)
}

/// φ(q) = Σ (−1)ⁿ q^{n²}.
pub fn phi_theta(cap: i64) -> QSeries {
    theta_sum(0, 12, GRID, 0, 0, cap)
}

/// φ(q) = (q;q)_∞/(−q;q)_∞.
pub fn phi_theta_product(cap: i64) -> Result<QSeries> {
    euler_e(1, cap).div(&pochhammer(Monomial::neg_q(GRID), GRID, cap))
}

/// The constant e^{5πi/6}(3/2 + i√3/2), which is −√3.
pub fn vartheta_onethird_constant() -> Cyc24 {
    let inner = Cyc24::from_frac(3, 2) + Cyc24::i_sqrt3().scale(&BigRational::new(1.into(), 2.into()));
    &Cyc24::root(10) * &inner
}

/// ϑ(1/3; 2τ): `(sum over n ∈ 1/2 + Z, closed form c·q^{1/4}E(q⁶))`.
pub fn vartheta_onethird(cap: i64) -> Result<(QSeries, QSeries)> {
    // n = k + 1/2: q^{k² + k + 1/4}, phase e^{2πi n·5/6} = ζ₂₄^{10 + 20k}.
    let sum = theta_sum(10, 20, GRID, GRID, 6, cap);
    let closed = euler_e(6, cap - 6).shift(6).scale(&vartheta_onethird_constant());
    Ok((sum, closed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, n: i64) -> Vec<i64> {
        (0..n)
            .map(|k| {
                let c = s.coeff_int(k).unwrap();
                assert!(c.is_rational_integer());
                c.coeffs()[0].to_integer().try_into().unwrap()
            })
            .collect()
    }

    #[test]
    fn euler_e_first_terms() {
        // Direct product oracle ∏_{n≤8}(1 − qⁿ), expanded by hand.
        assert_eq!(ints(&euler_e(1, 8 * GRID), 8), vec![1, -1, -1, 0, 0, 1, 0, 1]);
        let cap = 300 * GRID;
        assert_eq!(euler_e(1, cap), euler_e_by_product(1, cap));
        assert_eq!(euler_e(6, cap), euler_e(1, cap / 6).compose_power(6, 1).unwrap().truncate(cap));
        assert!(euler_e(1, cap).mul(&euler_e(1, cap).inv().unwrap()).is_one_to(cap));
    }

    #[test]
    fn eta_prefactors() {
        let s: EtaQuotientSpec = "eta(1)^2*eta(4)^2/eta(2)^2/eta(6)".parse().unwrap();
        assert_eq!(s.prefactor().unwrap(), 0);
        let s: EtaQuotientSpec = "eta(1)^4/eta(3)/eta(2)^2".parse().unwrap();
        assert_eq!(s.prefactor().unwrap(), -3);
        let s: EtaQuotientSpec = "eta(1)".parse().unwrap();
        let cap = 50 * GRID;
        assert_eq!(eta_quotient(&s, cap).unwrap(), euler_e(1, cap - 1).shift(1));
        let s: EtaQuotientSpec = "eta(6)^2*eta(3/2)^2/eta(3)^2/eta(1)".parse().unwrap();
        assert_eq!(s.prefactor().unwrap(), 8);
        assert_eq!(s.to_string(), "eta(3/2)^2*eta(6)^2/eta(1)/eta(3)^2");
        assert!("eta(1/48)".parse::<EtaQuotientSpec>().is_err());
    }

    #[test]
    fn e_product_matches_multiplication() {
        let cap = 120 * GRID;
        let spec = EtaQuotientSpec::new(&[(2, 1), (3, 2), (6, -1), (1, -1)]);
        let by_mul = euler_e(2, cap).mul(&euler_e(3, cap).pow(2).unwrap()).div(&euler_e(6, cap).mul(&euler_e(1, cap))).unwrap();
        assert!(by_mul.eq_to(&e_product(&spec, cap), cap).unwrap().is_equal());
    }

    #[test]
    fn theta3_coefficients() {
        assert_eq!(ints(&theta3(10 * GRID), 10), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
    }

    #[test]
    fn theta_big_vanishes_at_one() {
        assert!(theta_big(Monomial::q(0), GRID, 40 * GRID).unwrap().is_zero());
    }

    #[test]
    fn delta_dissection_and_twist() {
        let cap = 300 * GRID;
        let (d, p0, p1) = delta_p0_p1(cap);
        let rebuilt = p0.compose_power(3, 1).unwrap().add(&p1.compose_power(3, 1).unwrap().shift(GRID));
        assert!(d.eq_to(&rebuilt, cap).unwrap().is_equal());
        let twisted = d.twist_neg().unwrap();
        let closed = e_product(&EtaQuotientSpec::new(&[(1, 1), (4, 1), (2, -1)]), cap);
        assert!(twisted.eq_to(&closed, cap).unwrap().is_equal());
        assert!(psi(cap).eq_to(&psi_product(cap).unwrap(), cap).unwrap().is_equal());
        assert!(psi(cap).eq_to(&d, cap).unwrap().is_equal());
        assert!(phi_theta(cap).eq_to(&phi_theta_product(cap).unwrap(), cap).unwrap().is_equal());
    }

    #[test]
    fn vartheta_constant_is_minus_sqrt3() {
        assert_eq!(vartheta_onethird_constant(), -Cyc24::sqrt3());
        let (sum, closed) = vartheta_onethird(200 * GRID).unwrap();
        assert!(sum.support().all(|e| (e - 6) % GRID == 0));
        assert!(sum.eq_to(&closed, 200 * GRID).unwrap().is_equal());
    }

    #[test]
    fn jtp_z_equals_q() {
        let (p, s) = jtp_product(Monomial::q(GRID), 200 * GRID).unwrap();
        assert!(p.is_zero() && s.is_zero());
        let (p, s) = jtp_product(Monomial::new(12, 0), 100 * GRID).unwrap();
        assert!(p.eq_to(&s, 100 * GRID).unwrap().is_equal());
        assert!(s.eq_to(&theta3(100 * GRID), 100 * GRID).unwrap().is_equal());
    }

    #[test]
    fn pochhammer_with_negative_exponents() {
        // (q^{-1}; q)_∞ = (1 − q⁻¹)(1 − 1)… = 0 and (−q⁻¹; q)_∞ = (1 + q⁻¹)(−1; q)_∞.
        assert!(pochhammer(Monomial::q(-GRID), GRID, 30 * GRID).is_zero());
        let lhs = pochhammer(Monomial::neg_q(-GRID), GRID, 30 * GRID);
        let rhs = pochhammer(Monomial::neg_q(0), GRID, 31 * GRID).mul(&QSeries::one(31 * GRID).add(&QSeries::monomial(
            Cyc24::one(),
            -GRID,
            31 * GRID,
        )));
        assert!(lhs.eq_to(&rhs, 29 * GRID).unwrap().is_equal());
    }
}
