//! Exact arithmetic in the cyclotomic field Q(ζ₂₄).
//!
//! Elements are stored on the power basis `1, ζ, …, ζ⁷` reduced modulo
//! Φ₂₄(x) = x⁸ − x⁴ + 1, with ζ = e^{2πi/24}. The field contains every
//! constant the mock theta identities need: ζ₃ = ζ⁸, i = ζ⁶, √3 = 2ζ² − ζ⁶
//! and e^{±πi/3} = ζ^{±4}.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Degree of Φ₂₄.
pub const DEGREE: usize = 8;

/// `REDUCE[e]` expresses ζ^e (0 ≤ e < 24) on the power basis as at most two
/// signed basis vectors.
const REDUCE: [[(usize, i8); 2]; 24] = build_reduce_table();

const fn build_reduce_table() -> [[(usize, i8); 2]; 24] {
    // x^k = x^{k-4} - x^{k-8} for k >= 8; x^12 = -1.
    let mut t = [[(0usize, 0i8); 2]; 24];
    let mut e = 0;
    while e < 24 {
        let (base, sign) = if e >= 12 { (e - 12, -1i8) } else { (e, 1i8) };
        if base < 8 {
            t[e] = [(base, sign), (0, 0)];
        } else {
            t[e] = [(base - 4, sign), (base - 8, -sign)];
        }
        e += 1;
    }
    t
}

/// An exact element of Q(ζ₂₄).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyc24 {
    c: [Rational; DEGREE],
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl Cyc24 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut out = Self::zero();
        out.c[0] = r;
        out
    }

    pub fn from_coeffs(c: [Rational; DEGREE]) -> Self {
        Self { c }
    }

    /// The root of unity ζ₂₄^k; any integer `k` is reduced mod 24.
    pub fn root(k: i64) -> Self {
        let mut out = Self::zero();
        for &(idx, sign) in &REDUCE[k.rem_euclid(24) as usize] {
            if sign != 0 {
                out.c[idx] += rat(sign as i64);
            }
        }
        out
    }

    /// i·√3 = 2ζ⁴ − 1.
    pub fn i_sqrt3() -> Self {
        Self::root(4) * Self::from_int(2) - Self::one()
    }

    /// √3 = 2ζ² − ζ⁶.
    pub fn sqrt3() -> Self {
        Self::root(2) * Self::from_int(2) - Self::root(6)
    }

    pub fn coeffs(&self) -> &[Rational; DEGREE] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// True when only the constant component is populated.
    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    /// True when every component is an integer and all but c₀ vanish.
    pub fn is_rational_integer(&self) -> bool {
        self.is_rational() && self.c[0].is_integer()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        for x in out.c.iter_mut() {
            if !x.is_zero() {
                *x *= r;
            }
        }
        out
    }

    /// Multiplication by ζ^k, realised as a signed permutation with reduction.
    pub fn mul_root(&self, k: i64) -> Self {
        let k = k.rem_euclid(24) as usize;
        if k == 0 {
            return self.clone();
        }
        let mut out = Self::zero();
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for &(idx, sign) in &REDUCE[(i + k) % 24] {
                match sign {
                    1 => out.c[idx] += ci,
                    -1 => out.c[idx] -= ci,
                    _ => {}
                }
            }
        }
        out
    }

    /// `self += a * b` without materialising the product.
    pub fn add_mul(&mut self, a: &Cyc24, b: &Cyc24) {
        for (i, ai) in a.c.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.c.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let p = ai * bj;
                let [(i0, s0), (i1, s1)] = REDUCE[i + j];
                if s1 == 0 {
                    if s0 > 0 {
                        self.c[i0] += p;
                    } else {
                        self.c[i0] -= p;
                    }
                } else {
                    if s0 > 0 {
                        self.c[i0] += &p;
                    } else {
                        self.c[i0] -= &p;
                    }
                    if s1 > 0 {
                        self.c[i1] += p;
                    } else {
                        self.c[i1] -= p;
                    }
                }
            }
        }
    }

    /// `self -= a * b`.
    pub fn sub_mul(&mut self, a: &Cyc24, b: &Cyc24) {
        let neg = -a.clone();
        self.add_mul(&neg, b);
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ₂₄.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.c[0].recip()));
        }
        let a = Poly::from_slice(&self.c);
        let phi = Poly::cyclotomic24();
        // Invariant: s_i * a ≡ r_i (mod Φ₂₄).
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant because Φ₂₄ is irreducible.
        debug_assert_eq!(r0.degree(), Some(0));
        let k = r0.coeff(0).recip();
        let inv = s0.scale(&k);
        Ok(Self::from_poly(&inv))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Complex conjugate: ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            out = out + Self::root(-(i as i64)).scale(ci);
        }
        out
    }

    /// Double-precision image under the embedding ζ ↦ e^{2πi/24}.
    pub fn to_complex(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let x = ci.to_f64().unwrap_or(f64::NAN);
            z += Complex64::from_polar(x, std::f64::consts::TAU * i as f64 / 24.0);
        }
        z
    }

    fn from_poly(p: &Poly) -> Self {
        let mut out = Self::zero();
        for (i, ci) in p.c.iter().enumerate() {
            out.c[i] = ci.clone();
        }
        out
    }
}

/// Minimal dense univariate polynomial used only for inversion.
#[derive(Clone, Debug)]
struct Poly {
    c: Vec<Rational>,
}

impl Poly {
    fn zero() -> Self {
        Self { c: Vec::new() }
    }
    fn one() -> Self {
        Self { c: vec![Rational::one()] }
    }
    fn from_slice(s: &[Rational]) -> Self {
        let mut p = Self { c: s.to_vec() };
        p.trim();
        p
    }
    fn cyclotomic24() -> Self {
        let mut c = vec![Rational::zero(); 9];
        c[0] = rat(1);
        c[4] = rat(-1);
        c[8] = rat(1);
        Self { c }
    }
    fn trim(&mut self) {
        while self.c.last().is_some_and(Zero::is_zero) {
            self.c.pop();
        }
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    fn coeff(&self, i: usize) -> Rational {
        self.c.get(i).cloned().unwrap_or_else(Rational::zero)
    }
    fn scale(&self, k: &Rational) -> Self {
        let mut p = Self { c: self.c.iter().map(|x| x * k).collect() };
        p.trim();
        p
    }
    fn sub(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut p = Poly { c: (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect() };
        p.trim();
        p
    }
    fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        let mut p = Poly { c };
        p.trim();
        p
    }
    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.c[dd].clone();
        let mut r = self.clone();
        let mut q = vec![Rational::zero(); self.c.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let k = &r.c[rd] / &lead;
            let shift = rd - dd;
            for (j, dj) in d.c.iter().enumerate() {
                r.c[shift + j] -= &k * dj;
            }
            q[shift] = k;
            r.trim();
        }
        let mut q = Poly { c: q };
        q.trim();
        (q, r)
    }
}

impl Add for Cyc24 {
    type Output = Cyc24;
    fn add(mut self, rhs: Cyc24) -> Cyc24 {
        self += &rhs;
        self
    }
}

impl Add<&Cyc24> for &Cyc24 {
    type Output = Cyc24;
    fn add(self, rhs: &Cyc24) -> Cyc24 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Cyc24> for Cyc24 {
    fn add_assign(&mut self, rhs: &Cyc24) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&Cyc24> for Cyc24 {
    fn sub_assign(&mut self, rhs: &Cyc24) {
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Sub for Cyc24 {
    type Output = Cyc24;
    fn sub(mut self, rhs: Cyc24) -> Cyc24 {
        self -= &rhs;
        self
    }
}

impl Sub<&Cyc24> for &Cyc24 {
    type Output = Cyc24;
    fn sub(self, rhs: &Cyc24) -> Cyc24 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for Cyc24 {
    type Output = Cyc24;
    fn neg(mut self) -> Cyc24 {
        for x in self.c.iter_mut() {
            if !x.is_zero() {
                *x = -x.clone();
            }
        }
        self
    }
}

impl Mul for Cyc24 {
    type Output = Cyc24;
    fn mul(self, rhs: Cyc24) -> Cyc24 {
        &self * &rhs
    }
}

impl Mul<&Cyc24> for &Cyc24 {
    type Output = Cyc24;
    fn mul(self, rhs: &Cyc24) -> Cyc24 {
        let mut out = Cyc24::zero();
        out.add_mul(self, rhs);
        out
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        format!("{}/1", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Cyc24 {
    /// Space-separated components `c0 … c7` as `p/q`; the coefficient dump format.
    pub fn to_components_string(&self) -> String {
        self.c.iter().map(fmt_rational).collect::<Vec<_>>().join(" ")
    }

    pub fn from_components_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        if parts.len() != DEGREE {
            return Err(Error::Parse(format!("expected {DEGREE} components, got {}", parts.len())));
        }
        let mut out = Self::zero();
        for (i, p) in parts.iter().enumerate() {
            out.c[i] = parse_rational(p)?;
        }
        Ok(out)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

/// Renders as `c0 + c1*z + ... + c7*z^7`, every term present.
impl fmt::Display for Cyc24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ci) in self.c.iter().enumerate() {
            let r = fmt_rational(ci);
            let term = match i {
                0 => r,
                1 => format!("{r}*z"),
                _ => format!("{r}*z^{i}"),
            };
            if i == 0 {
                write!(f, "{term}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc24(")?;
        let mut first = true;
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let sign = if ci.is_negative() { "-" } else { "+" };
            write!(f, "{sign}{}z^{i}", ci.abs())?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Cyc24 {
    type Err = Error;

    /// Parses the `Display` form. Terms may appear in any order and repeat.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Cyc24::zero();
        for term in s.split(" + ") {
            let term = term.trim();
            let (coef, power) = match term.split_once('*') {
                None => (term, 0usize),
                Some((c, z)) => {
                    let p = match z.trim() {
                        "z" => 1,
                        z => z
                            .strip_prefix("z^")
                            .and_then(|p| p.parse::<usize>().ok())
                            .filter(|&p| p < DEGREE)
                            .ok_or_else(|| Error::Parse(format!("bad power `{z}`")))?,
                    };
                    (c, p)
                }
            };
            out.c[power] += parse_rational(coef)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> Cyc24 {
        Cyc24::root(k)
    }

    #[test]
    fn zeta8_reduces() {
        assert_eq!(z(8), z(4) - Cyc24::one());
        assert_eq!(z(12), -Cyc24::one());
        assert_eq!(z(24), Cyc24::one());
        let mut p = Cyc24::one();
        for _ in 0..24 {
            p = &p * &z(1);
        }
        assert!(p.is_one());
    }

    #[test]
    fn square_roots_of_three() {
        let i_sqrt3 = z(4) * Cyc24::from_int(2) - Cyc24::one();
        assert_eq!(&i_sqrt3 * &i_sqrt3, Cyc24::from_int(-3));
        let sqrt3 = z(2) * Cyc24::from_int(2) - z(6);
        assert_eq!(&sqrt3 * &sqrt3, Cyc24::from_int(3));
        assert_eq!(Cyc24::sqrt3(), sqrt3);
        assert_eq!(Cyc24::i_sqrt3(), i_sqrt3);
    }

    #[test]
    fn inverses() {
        let i = z(6);
        let inv = i.inv().unwrap();
        assert_eq!(inv, -z(6));
        assert!((&i * &inv).is_one());
        let w = z(4);
        let inv = w.inv().unwrap();
        assert_eq!(inv, z(20));
        assert!((&w * &inv).is_one());
        assert_eq!(Cyc24::from_int(2).inv().unwrap(), Cyc24::from_frac(1, 2));
        assert!(matches!(Cyc24::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn complex_embedding() {
        assert!((Cyc24::one().to_complex() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((z(6).to_complex() - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let c = (Cyc24::from_int(2) - z(4) * Cyc24::from_int(4)).scale(&Rational::new(1.into(), 3.into()));
        let expect = Complex64::new(0.0, -2.0 / 3f64.sqrt());
        assert!((c.to_complex() - expect).norm() < 1e-12);
    }

    #[test]
    fn conj_inverts_roots() {
        for k in 0..24 {
            assert_eq!(z(k).conj(), z(-k));
        }
    }

    #[test]
    fn text_round_trip() {
        let a = z(3).scale(&Rational::new((-7).into(), 5.into())) + Cyc24::from_frac(1, 3);
        let s = a.to_string();
        assert_eq!(s, "1/3 + 0/1*z + 0/1*z^2 + -7/5*z^3 + 0/1*z^4 + 0/1*z^5 + 0/1*z^6 + 0/1*z^7");
        assert_eq!(s.parse::<Cyc24>().unwrap(), a);
        let comps = a.to_components_string();
        assert_eq!(Cyc24::from_components_str(&comps).unwrap(), a);
    }
}
