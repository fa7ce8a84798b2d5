//! Truncated Laurent series in q on the exponent grid (1/24)·Z.
//!
//! A [`QSeries`] stores every coefficient of q^{e/24} for `low <= e < cap`
//! densely; everything below `low` is zero and nothing at or above `cap` is
//! known. Arithmetic never reports coefficients past the bound its inputs
//! guarantee.

use std::fmt::Write as _;

use num_complex::Complex64;
use num_integer::Integer;

use crate::cyclotomic::{Cyc24, Rational};
use crate::error::{Error, Result};

/// Grid denominator: exponent numerators are in units of 1/24.
pub const GRID: i64 = 24;

/// A monomial ζ₂₄^root · q^{qpow/24}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub root: i64,
    pub qpow: i64,
}

impl Monomial {
    pub const fn new(root: i64, qpow: i64) -> Self {
        Self { root: root.rem_euclid(24), qpow }
    }

    /// q^{qpow/24} with unit constant.
    pub const fn q(qpow: i64) -> Self {
        Self::new(0, qpow)
    }

    /// −q^{qpow/24}.
    pub const fn neg_q(qpow: i64) -> Self {
        Self::new(12, qpow)
    }

    pub fn inv(self) -> Self {
        Self::new(-self.root, -self.qpow)
    }

    pub fn constant(&self) -> Cyc24 {
        Cyc24::root(self.root)
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, o: Monomial) -> Monomial {
        Monomial::new(self.root + o.root, self.qpow + o.qpow)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    low: i64,
    cap: i64,
    coeffs: Vec<Cyc24>,
}

/// First disagreement found by [`QSeries::eq_to`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exponent: i64,
    pub lhs: Cyc24,
    pub rhs: Cyc24,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqReport {
    pub checked_below: i64,
    pub first_mismatch: Option<Mismatch>,
}

impl EqReport {
    pub fn is_equal(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

impl QSeries {
    /// The zero series known below `cap`.
    pub fn zero(cap: i64) -> Self {
        Self { low: cap, cap, coeffs: Vec::new() }
    }

    pub fn monomial(c: Cyc24, exponent: i64, cap: i64) -> Self {
        if exponent >= cap || c.is_zero() {
            return Self::zero(cap);
        }
        let mut s = Self::zeros(exponent, cap);
        s.coeffs[0] = c;
        s
    }

    pub fn constant(c: Cyc24, cap: i64) -> Self {
        Self::monomial(c, 0, cap)
    }

    pub fn one(cap: i64) -> Self {
        Self::constant(Cyc24::one(), cap)
    }

    /// A dense all-zero window `[low, cap)`.
    pub fn zeros(low: i64, cap: i64) -> Self {
        let low = low.min(cap);
        Self { low, cap, coeffs: vec![Cyc24::zero(); (cap - low) as usize] }
    }

    pub fn from_coeffs(low: i64, cap: i64, coeffs: Vec<Cyc24>) -> Result<Self> {
        if low > cap || coeffs.len() as i64 != cap - low {
            return Err(Error::InvalidArgument(format!("window [{low}, {cap}) does not match {} coefficients", coeffs.len())));
        }
        Ok(Self { low, cap, coeffs })
    }

    /// Series with integer exponents given as `(n, c)` pairs meaning c·qⁿ.
    pub fn from_int_terms<I>(terms: I, cap: i64) -> Self
    where
        I: IntoIterator<Item = (i64, Cyc24)>,
    {
        let terms: Vec<_> = terms.into_iter().filter(|(n, _)| n * GRID < cap).collect();
        let low = terms.iter().map(|(n, _)| n * GRID).min().unwrap_or(cap).min(0);
        let mut s = Self::zeros(low, cap);
        for (n, c) in terms {
            *s.slot(n * GRID) += &c;
        }
        s
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn coeffs(&self) -> &[Cyc24] {
        &self.coeffs
    }

    fn slot(&mut self, e: i64) -> &mut Cyc24 {
        &mut self.coeffs[(e - self.low) as usize]
    }

    /// Coefficient of q^{e/24}; zero below the window.
    pub fn coeff(&self, e: i64) -> Result<Cyc24> {
        if e >= self.cap {
            return Err(Error::OutOfPrecision { exponent: e, cap: self.cap });
        }
        Ok(self.get(e).cloned().unwrap_or_default())
    }

    /// Coefficient of the integer power qⁿ.
    pub fn coeff_int(&self, n: i64) -> Result<Cyc24> {
        self.coeff(n * GRID)
    }

    fn get(&self, e: i64) -> Option<&Cyc24> {
        if e < self.low || e >= self.cap {
            None
        } else {
            Some(&self.coeffs[(e - self.low) as usize])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Cyc24::is_zero)
    }

    /// Exponents of the nonzero coefficients, ascending.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, _)| self.low + i as i64)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.support().next()
    }

    /// True when every nonzero coefficient sits on an integer power of q.
    pub fn has_integer_exponents(&self) -> bool {
        self.support().all(|e| e % GRID == 0)
    }

    /// Drops leading zeros so that `low` is the valuation.
    pub fn normalized(&self) -> Self {
        match self.valuation() {
            None => Self::zero(self.cap),
            Some(v) => Self { low: v, cap: self.cap, coeffs: self.coeffs[(v - self.low) as usize..].to_vec() },
        }
    }

    /// Lowers the precision cap to `cap` (never raises it).
    pub fn truncate(&self, cap: i64) -> Self {
        if cap >= self.cap {
            return self.clone();
        }
        if cap <= self.low {
            return Self::zero(cap);
        }
        Self { low: self.low, cap, coeffs: self.coeffs[..(cap - self.low) as usize].to_vec() }
    }

    /// Multiplication by q^{k/24}.
    pub fn shift(&self, k: i64) -> Self {
        Self { low: self.low + k, cap: self.cap + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Cyc24) -> Self {
        if c.is_one() {
            return self.clone();
        }
        let coeffs = self.coeffs.iter().map(|x| if x.is_zero() { Cyc24::zero() } else { x * c }).collect();
        Self { low: self.low, cap: self.cap, coeffs }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.scale(r)).collect();
        Self { low: self.low, cap: self.cap, coeffs }
    }

    pub fn scale_frac(&self, num: i64, den: i64) -> Self {
        self.scale_rational(&Rational::new(num.into(), den.into()))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|x| -x.clone()).collect();
        Self { low: self.low, cap: self.cap, coeffs }
    }

    pub fn add(&self, o: &QSeries) -> QSeries {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &QSeries) -> QSeries {
        self.combine(o, true)
    }

    fn combine(&self, o: &QSeries, subtract: bool) -> QSeries {
        let cap = self.cap.min(o.cap);
        let low = self.low.min(o.low).min(cap);
        let mut out = Self::zeros(low, cap);
        for e in self.low..cap {
            let c = &self.coeffs[(e - self.low) as usize];
            if !c.is_zero() {
                *out.slot(e) = c.clone();
            }
        }
        for e in o.low..cap {
            let c = &o.coeffs[(e - o.low) as usize];
            if c.is_zero() {
                continue;
            }
            if subtract {
                *out.slot(e) -= c;
            } else {
                *out.slot(e) += c;
            }
        }
        out
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, o: &QSeries) -> QSeries {
        let low = self.low + o.low;
        let cap = (self.cap + o.low).min(o.cap + self.low);
        if cap <= low {
            return Self::zero(cap);
        }
        let len = (cap - low) as usize;
        let nz_a: Vec<usize> = nonzero_indices(&self.coeffs);
        let nz_b: Vec<usize> = nonzero_indices(&o.coeffs);
        let coeffs = convolve(&self.coeffs, &nz_a, &o.coeffs, &nz_b, len);
        Self { low, cap, coeffs }
    }

    /// Multiplicative inverse by forward substitution.
    pub fn inv(&self) -> Result<QSeries> {
        let a = self.normalized();
        let Some(a0) = a.coeffs.first().cloned() else {
            return Err(Error::NotInvertible("empty window".into()));
        };
        if a0.is_zero() {
            return Err(Error::NotInvertible("leading coefficient is zero".into()));
        }
        let inv0 = a0.inv()?;
        let len = a.coeffs.len();
        let nz: Vec<usize> = nonzero_indices(&a.coeffs).into_iter().filter(|&k| k > 0).collect();
        let mut b: Vec<Cyc24> = Vec::with_capacity(len);
        b.push(inv0.clone());
        for n in 1..len {
            let mut s = Cyc24::zero();
            for &k in &nz {
                if k > n {
                    break;
                }
                let bk = &b[n - k];
                if !bk.is_zero() {
                    s.add_mul(&a.coeffs[k], bk);
                }
            }
            b.push(if s.is_zero() { s } else { -(&s * &inv0) });
        }
        let low = -a.low;
        Ok(Self { low, cap: low + len as i64, coeffs: b })
    }

    /// Integer power via the J.C.P. Miller recurrence; negative powers allowed.
    pub fn pow(&self, r: i64) -> Result<QSeries> {
        let a = self.normalized();
        if r == 0 {
            let rel = a.cap - a.low;
            return Ok(Self::one(rel.max(0)));
        }
        let Some(a0) = a.coeffs.first().cloned() else {
            return if r > 0 { Ok(Self::zero(a.cap)) } else { Err(Error::NotInvertible("empty window".into())) };
        };
        let len = a.coeffs.len();
        let inv0 = a0.inv()?;
        let nz: Vec<usize> = nonzero_indices(&a.coeffs).into_iter().filter(|&k| k > 0).collect();
        let mut f: Vec<Cyc24> = Vec::with_capacity(len);
        f.push(a0.pow(r)?);
        for n in 1..len {
            let mut s = Cyc24::zero();
            for &k in &nz {
                if k > n {
                    break;
                }
                let fk = &f[n - k];
                if fk.is_zero() {
                    continue;
                }
                let w = (r + 1) * k as i64 - n as i64;
                if w == 0 {
                    continue;
                }
                let term = a.coeffs[k].scale(&Rational::from_integer(w.into()));
                s.add_mul(&term, fk);
            }
            if s.is_zero() {
                f.push(s);
            } else {
                let d = Rational::from_integer((n as i64).into());
                f.push((&s * &inv0).scale(&d.recip()));
            }
        }
        let low = r * a.low;
        Ok(Self { low, cap: low + len as i64, coeffs: f })
    }

    /// Quotient `self / o`.
    pub fn div(&self, o: &QSeries) -> Result<QSeries> {
        Ok(self.mul(&o.inv()?))
    }

    /// Substitution q ↦ q^k for a positive rational `k = num/den`.
    pub fn compose_power(&self, num: i64, den: i64) -> Result<QSeries> {
        if num <= 0 || den <= 0 {
            return Err(Error::InvalidArgument(format!("non-positive power {num}/{den}")));
        }
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        for e in self.support() {
            if (e * num) % den != 0 {
                return Err(Error::Grid(format!("exponent {e}/24 times {num}/{den} leaves the grid")));
            }
        }
        let low = Integer::div_ceil(&(self.low * num), &den);
        let cap = Integer::div_ceil(&(self.cap * num), &den);
        let mut out = Self::zeros(low, cap);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (self.low + i as i64) * num / den;
            *out.slot(e) = c.clone();
        }
        Ok(out)
    }

    /// Component `S_j` of the m-dissection: `q^j S_j(q^m)` is the part of the
    /// series on integer exponents congruent to `j` mod `m`.
    pub fn dissect(&self, m: i64, j: i64) -> Result<QSeries> {
        if m <= 0 || !(0..m).contains(&j) {
            return Err(Error::InvalidArgument(format!("residue {j} mod {m}")));
        }
        if !self.has_integer_exponents() {
            return Err(Error::Grid("dissection needs integer exponents".into()));
        }
        let low_n = Integer::div_ceil(&self.low, &GRID);
        let cap_n = Integer::div_ceil(&self.cap, &GRID);
        let t_low = Integer::div_ceil(&(low_n - j), &m);
        let t_cap = Integer::div_ceil(&(cap_n - j), &m);
        let mut out = Self::zeros(t_low * GRID, (t_cap * GRID).max(t_low * GRID));
        for t in t_low..t_cap {
            if let Some(c) = self.get((m * t + j) * GRID) {
                if !c.is_zero() {
                    *out.slot(t * GRID) = c.clone();
                }
            }
        }
        Ok(out)
    }

    /// Reassembles Σⱼ qʲ·Sⱼ(q^m) from dissection components.
    pub fn reassemble(parts: &[QSeries]) -> Result<QSeries> {
        let m = parts.len() as i64;
        let mut acc: Option<QSeries> = None;
        for (j, p) in parts.iter().enumerate() {
            let term = p.compose_power(m, 1)?.shift(j as i64 * GRID);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.ok_or_else(|| Error::InvalidArgument("no parts".into()))
    }

    /// Substitution q ↦ −q on a series with integer exponents.
    pub fn twist_neg(&self) -> Result<QSeries> {
        if !self.has_integer_exponents() {
            return Err(Error::Grid("q -> -q twist needs integer exponents".into()));
        }
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let e = self.low + i as i64;
            if !c.is_zero() && (e / GRID) % 2 != 0 {
                *c = -c.clone();
            }
        }
        Ok(out)
    }

    /// Applies ζ ↦ ζ⁻¹ to every coefficient.
    pub fn conj_coeffs(&self) -> QSeries {
        let coeffs = self.coeffs.iter().map(Cyc24::conj).collect();
        Self { low: self.low, cap: self.cap, coeffs }
    }

    /// In place: multiply by (1 − c·q^{k/24}) with k > 0.
    pub fn mul_one_minus(&mut self, c: &Cyc24, k: i64) {
        assert!(k > 0);
        let k = k as usize;
        let n = self.coeffs.len();
        for idx in (k..n).rev() {
            let (head, tail) = self.coeffs.split_at_mut(idx);
            let src = &head[idx - k];
            if !src.is_zero() {
                tail[0].sub_mul(c, src);
            }
        }
    }

    /// In place: divide by (1 − c·q^{k/24}) with k > 0.
    pub fn div_one_minus(&mut self, c: &Cyc24, k: i64) {
        assert!(k > 0);
        let k = k as usize;
        let n = self.coeffs.len();
        for idx in k..n {
            let (head, tail) = self.coeffs.split_at_mut(idx);
            let src = &head[idx - k];
            if !src.is_zero() {
                tail[0].add_mul(c, src);
            }
        }
    }

    /// Coefficient comparison on every exponent below `below` (grid units).
    pub fn eq_to(&self, o: &QSeries, below: i64) -> Result<EqReport> {
        for s in [self, o] {
            if s.cap < below {
                return Err(Error::OutOfPrecision { exponent: below - 1, cap: s.cap });
            }
        }
        let start = self.low.min(o.low);
        for e in start..below {
            let a = self.get(e);
            let b = o.get(e);
            let equal = match (a, b) {
                (Some(x), Some(y)) => x == y,
                (Some(x), None) | (None, Some(x)) => x.is_zero(),
                (None, None) => true,
            };
            if !equal {
                return Ok(EqReport {
                    checked_below: below,
                    first_mismatch: Some(Mismatch {
                        exponent: e,
                        lhs: a.cloned().unwrap_or_default(),
                        rhs: b.cloned().unwrap_or_default(),
                    }),
                });
            }
        }
        Ok(EqReport { checked_below: below, first_mismatch: None })
    }

    /// Evaluates the truncated series at q = e^{2πiτ}.
    pub fn eval(&self, tau: Complex64) -> Complex64 {
        let step = (Complex64::i() * std::f64::consts::TAU * tau / GRID as f64).exp();
        let mut total = Complex64::new(0.0, 0.0);
        let base = (Complex64::i() * std::f64::consts::TAU * tau * self.low as f64 / GRID as f64).exp();
        let mut pw = base;
        for c in &self.coeffs {
            if !c.is_zero() {
                total += c.to_complex() * pw;
            }
            pw *= step;
        }
        total
    }

    /// One line per exponent in the window: `e/24<TAB>c0 c1 … c7`.
    pub fn dump(&self, nonzero_only: bool) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if nonzero_only && c.is_zero() {
                continue;
            }
            let _ = writeln!(out, "{}/24\t{}", self.low + i as i64, c.to_components_string());
        }
        out
    }

    /// Parses a dump; the window runs from the first listed exponent to one
    /// past the last, with unlisted exponents zero.
    pub fn parse_dump(text: &str) -> Result<QSeries> {
        let mut entries = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (e, rest) = line.split_once('\t').ok_or_else(|| Error::Parse(format!("missing tab in `{line}`")))?;
            let e = e
                .strip_suffix("/24")
                .and_then(|n| n.parse::<i64>().ok())
                .ok_or_else(|| Error::Parse(format!("bad exponent `{e}`")))?;
            entries.push((e, Cyc24::from_components_str(rest)?));
        }
        let Some(low) = entries.iter().map(|(e, _)| *e).min() else {
            return Ok(QSeries::zero(0));
        };
        let cap = entries.iter().map(|(e, _)| *e).max().unwrap() + 1;
        let mut s = Self::zeros(low, cap);
        for (e, c) in entries {
            *s.slot(e) = c;
        }
        Ok(s)
    }
}

impl std::fmt::Debug for QSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QSeries[{}..{}){{", self.low, self.cap)?;
        for (k, e) in self.support().take(8).enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}: {:?}", self.get(e).unwrap())?;
        }
        write!(f, "}}")
    }
}

fn nonzero_indices(v: &[Cyc24]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect()
}

#[cfg(feature = "parallel")]
fn convolve(a: &[Cyc24], nz_a: &[usize], b: &[Cyc24], nz_b: &[usize], len: usize) -> Vec<Cyc24> {
    use rayon::prelude::*;
    // Output-stationary: each output slot sums its own terms in a fixed order.
    let work = nz_a.len().saturating_mul(nz_b.len());
    if work < 4096 {
        return convolve_serial(a, nz_a, b, nz_b, len);
    }
    let b_dense: Vec<bool> = b.iter().map(|c| !c.is_zero()).collect();
    (0..len)
        .into_par_iter()
        .map(|k| {
            let mut acc = Cyc24::zero();
            for &i in nz_a {
                if i > k {
                    break;
                }
                let j = k - i;
                if j < b_dense.len() && b_dense[j] {
                    acc.add_mul(&a[i], &b[j]);
                }
            }
            acc
        })
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn convolve(a: &[Cyc24], nz_a: &[usize], b: &[Cyc24], nz_b: &[usize], len: usize) -> Vec<Cyc24> {
    convolve_serial(a, nz_a, b, nz_b, len)
}

fn convolve_serial(a: &[Cyc24], nz_a: &[usize], b: &[Cyc24], nz_b: &[usize], len: usize) -> Vec<Cyc24> {
    let mut out = vec![Cyc24::zero(); len];
    for &i in nz_a {
        if i >= len {
            break;
        }
        for &j in nz_b {
            if i + j >= len {
                break;
            }
            out[i + j].add_mul(&a[i], &b[j]);
        }
    }
    out
}

/// Quadratic-time reference product, kept as an independent oracle for
/// [`QSeries::mul`]: it walks every pair of exponents and uses only
/// [`QSeries::coeff`].
pub fn naive_mul(a: &QSeries, b: &QSeries) -> QSeries {
    let low = a.low() + b.low();
    let cap = (a.cap() + b.low()).min(b.cap() + a.low());
    let mut coeffs = vec![Cyc24::zero(); (cap - low).max(0) as usize];
    for (k, slot) in coeffs.iter_mut().enumerate() {
        let e = low + k as i64;
        for ea in a.low()..a.cap() {
            let eb = e - ea;
            if eb < b.low() || eb >= b.cap() {
                continue;
            }
            let p = &a.coeff(ea).unwrap() * &b.coeff(eb).unwrap();
            *slot += &p;
        }
    }
    QSeries::from_coeffs(low, cap.max(low), coeffs).unwrap()
}

/// Geometric series Σ_{k≥0} qᵏ, convenient in tests and examples.
pub fn geometric(cap_int: i64) -> QSeries {
    QSeries::from_int_terms((0..cap_int).map(|n| (n, Cyc24::one())), cap_int * GRID)
}

impl QSeries {
    /// Every nonzero coefficient is a rational integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero() || c.is_rational_integer())
    }

    /// Sum of a list of series.
    pub fn sum<'a, I: IntoIterator<Item = &'a QSeries>>(items: I, cap: i64) -> QSeries {
        items.into_iter().fold(QSeries::zero(cap), |acc, s| acc.add(s))
    }

    pub fn is_one_to(&self, below: i64) -> bool {
        self.eq_to(&QSeries::one(below), below).map(|r| r.is_equal()).unwrap_or(false)
    }
}

impl From<&QSeries> for Vec<(i64, Cyc24)> {
    fn from(s: &QSeries) -> Self {
        s.support().map(|e| (e, s.get(e).unwrap().clone())).collect()
    }
}
