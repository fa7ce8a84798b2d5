//! Bilateral Appell–Lerch sums
//! Σₙ (−1)ⁿ ρⁿ q^{An²+Bn+C} / (1 − c·q^{Dn+E})
//! expanded exactly, plus the crank, theta and μ specializations built on them.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::cyclotomic::{parse_rational, Cyc24, Rational};
use crate::error::{Error, Result};
use crate::etatheta::{ensure, euler_e, pochhammer, quadratic_range, root_counts_to_cyc, theta_big, theta_sum, PAD};
use crate::qseries::{Monomial, QSeries, GRID};

/// Parameters of a bilateral sum, all exponents in grid units (1/24):
///
/// ζ^{const_root} Σₙ (±1)ⁿ ζ^{rho_root·n} q^{(a n² + b n + c)/24} / (1 − ζ^{c_root} q^{(d n + e)/24})
///
/// with the sign alternating when `alternating` is set, and n optionally
/// restricted to a residue class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LerchSpec {
    pub alternating: bool,
    pub const_root: i64,
    pub rho_root: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub c_root: i64,
    pub d: i64,
    pub e: i64,
    /// `(j, m)`: only n ≡ j (mod m).
    pub residue: Option<(i64, i64)>,
}

impl LerchSpec {
    /// Σ (−1)ⁿ q^{(a n² + b n + c)/24} / (1 − q^{(d n + e)/24}).
    pub fn new(a: i64, b: i64, c: i64, d: i64, e: i64) -> Self {
        Self { alternating: true, const_root: 0, rho_root: 0, a, b, c, c_root: 0, d, e, residue: None }
    }

    pub fn rho(mut self, root: i64) -> Self {
        self.rho_root = root.rem_euclid(24);
        self
    }

    pub fn denominator_root(mut self, root: i64) -> Self {
        self.c_root = root.rem_euclid(24);
        self
    }

    pub fn restrict(mut self, j: i64, m: i64) -> Self {
        self.residue = Some((j.rem_euclid(m), m));
        self
    }

    /// The same sum re-indexed by n ↦ n + s.
    pub fn shifted(&self, s: i64) -> Self {
        let sign = if self.alternating && s.rem_euclid(2) == 1 { 12 } else { 0 };
        Self {
            alternating: self.alternating,
            const_root: (self.const_root + sign + self.rho_root * s).rem_euclid(24),
            rho_root: self.rho_root,
            a: self.a,
            b: 2 * self.a * s + self.b,
            c: self.a * s * s + self.b * s + self.c,
            c_root: self.c_root,
            d: self.d,
            e: self.d * s + self.e,
            residue: self.residue.map(|(j, m)| ((j - s).rem_euclid(m), m)),
        }
    }

    fn check(&self) -> Result<()> {
        if self.a <= 0 {
            return Err(Error::InvalidArgument("quadratic coefficient must be positive".into()));
        }
        if let Some((_, m)) = self.residue {
            if m <= 0 {
                return Err(Error::InvalidArgument(format!("residue modulus {m}")));
            }
        }
        Ok(())
    }

    fn includes(&self, n: i64) -> bool {
        self.residue.is_none_or(|(j, m)| n.rem_euclid(m) == j)
    }

    fn term_root(&self, n: i64) -> i64 {
        let sign = if self.alternating && n.rem_euclid(2) == 1 { 12 } else { 0 };
        (self.const_root + sign + self.rho_root * n).rem_euclid(24)
    }
}

/// Expands the sum exactly below `cap`.
pub fn lerch_expand(spec: &LerchSpec, cap: i64) -> Result<QSeries> {
    spec.check()?;
    // A term's lowest exponent is Q(n), or Q(n) + |k| after canonicalizing a
    // negative denominator exponent, so the quadratic bound covers both.
    let bound = quadratic_range(spec.a, spec.b, spec.c, cap);
    let mut low = cap;
    for n in -bound..=bound {
        if !spec.includes(n) {
            continue;
        }
        let q = spec.a * n * n + spec.b * n + spec.c;
        let k = spec.d * n + spec.e;
        let first = if k < 0 { q - k } else { q };
        if first < cap {
            low = low.min(first);
        }
        if k == 0 && spec.c_root == 0 && q < cap {
            return Err(Error::Pole { n });
        }
    }
    if low >= cap {
        return Ok(QSeries::zero(cap));
    }
    let mut counts = vec![[0i64; 24]; (cap - low) as usize];
    let mut extra = QSeries::zero(cap);
    for n in -bound..=bound {
        if !spec.includes(n) {
            continue;
        }
        let q = spec.a * n * n + spec.b * n + spec.c;
        let k = spec.d * n + spec.e;
        let r = spec.term_root(n);
        if k > 0 {
            let mut j = 0;
            while q + j * k < cap {
                counts[(q + j * k - low) as usize][((r + spec.c_root * j).rem_euclid(24)) as usize] += 1;
                j += 1;
            }
        } else if k == 0 {
            if q < cap {
                let w = (Cyc24::one() - Cyc24::root(spec.c_root)).inv()?;
                extra = extra.add(&QSeries::monomial(w.mul_root(r), q, cap));
            }
        } else {
            // 1/(1 − c q^{k}) = −Σ_{j≥1} c^{−j} q^{−jk}
            let kk = -k;
            let mut j = 1;
            while q + j * kk < cap {
                counts[(q + j * kk - low) as usize][((r + 12 - spec.c_root * j).rem_euclid(24)) as usize] += 1;
                j += 1;
            }
        }
    }
    let coeffs = counts.iter().map(root_counts_to_cyc).collect();
    Ok(QSeries::from_coeffs(low, cap, coeffs)?.add(&extra))
}

/// Evaluates `build` at growing working caps until the result is known
/// below `cap`.
pub(crate) fn with_precision<F>(cap: i64, mut build: F) -> Result<QSeries>
where
    F: FnMut(i64) -> Result<QSeries>,
{
    let mut pad = PAD;
    loop {
        let s = build(cap + pad)?;
        if s.cap() >= cap || pad > 64 * PAD {
            return ensure(s, cap);
        }
        pad *= 4;
    }
}

fn two_monomials(c0: Cyc24, e0: i64, c1: Cyc24, e1: i64, cap: i64) -> QSeries {
    QSeries::monomial(c0, e0, cap).add(&QSeries::monomial(c1, e1, cap))
}

/// Both sides of the crank generating function in the base Q = q^{base}:
/// `(Q)∞ / ((zQ)∞ (z⁻¹Q)∞)` and `(1 − z)/(Q)∞ · Σ (−1)ⁿ Q^{n(n+1)/2}/(1 − zQⁿ)`,
/// with `z` given in terms of q.
pub fn crank_pair(z: Monomial, base: i64, cap: i64) -> Result<(QSeries, QSeries)> {
    if base < 1 {
        return Err(Error::InvalidArgument(format!("crank base {base}")));
    }
    let s = base * GRID;
    let spec = LerchSpec::new(s / 2, s / 2, 0, s, z.qpow).denominator_root(z.root);
    let rhs = with_precision(cap, |w| {
        let sum = lerch_expand(&spec, w)?;
        let factor = two_monomials(Cyc24::one(), 0, -Cyc24::root(z.root), z.qpow, w);
        factor.mul(&sum).div(&euler_e(base, w))
    })?;
    let lhs = with_precision(cap, |w| {
        let den = pochhammer(z * Monomial::q(s), s, w).mul(&pochhammer(z.inv() * Monomial::q(s), s, w));
        euler_e(base, w).div(&den)
    })?;
    Ok((lhs, rhs))
}

/// Σ (−1)ⁿ Q^{n²} zⁿ (1 − zQ^{2n})/(1 + zQ^{2n}) with Q = q^{base}.
pub fn thetaid_lhs(z: Monomial, base: i64, cap: i64) -> Result<QSeries> {
    let s = base * GRID;
    // (1 − x)/(1 + x) = −1 + 2/(1 + x)
    let spec = LerchSpec::new(s, z.qpow, 0, 2 * s, z.qpow).rho(z.root).denominator_root(z.root + 12);
    let sum = lerch_expand(&spec, cap)?;
    let theta = theta_sum(0, 12 + z.root, s, z.qpow, 0, cap);
    Ok(sum.scale(&Cyc24::from_int(2)).sub(&theta))
}

/// Both sides of Σ (−1)ⁿ Q^{n²} zⁿ (1 − zQ^{2n})/(1 + zQ^{2n})
/// = Θ(z,Q²)Θ(−zQ,Q²)Θ₃(Q)/Θ(−z,Q²).
pub fn thetaid_pair(z: Monomial, base: i64, cap: i64) -> Result<(QSeries, QSeries)> {
    let s = base * GRID;
    let lhs = with_precision(cap, |w| thetaid_lhs(z, base, w))?;
    let rhs = with_precision(cap, |w| {
        let neg_z = z * Monomial::new(12, 0);
        let num = theta_big(z, 2 * s, w)?.mul(&theta_big(neg_z * Monomial::q(s), 2 * s, w)?).mul(&theta_sum(0, 0, s, 0, 0, w));
        num.div(&theta_big(neg_z, 2 * s, w)?)
    })?;
    Ok((lhs, rhs))
}

/// An elliptic argument a·τ + b with rational a, b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuArg {
    pub tau: Rational,
    pub shift: Rational,
}

impl MuArg {
    pub fn new(tau: (i64, i64), shift: (i64, i64)) -> Self {
        Self { tau: Rational::new(tau.0.into(), tau.1.into()), shift: Rational::new(shift.0.into(), shift.1.into()) }
    }

    pub fn neg(&self) -> Self {
        Self { tau: -self.tau.clone(), shift: -self.shift.clone() }
    }
}

impl fmt::Display for MuArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*tau{}{}", self.tau, if self.shift.is_negative() { "" } else { "+" }, self.shift)
    }
}

fn grid_int(r: &Rational, scale: i64, what: &str) -> Result<i64> {
    let x = r * Rational::from_integer(scale.into());
    if !x.is_integer() {
        return Err(Error::Grid(format!("{what} = {x} is not an integer")));
    }
    x.to_integer().try_into().map_err(|_| Error::Grid(format!("{what} overflows")))
}

/// ϑ(v; Mτ) = Σ_{ν∈1/2+Z} e^{πiν²Mτ + 2πiν(v+1/2)} for v = a′τ + b′.
pub fn theta_formal(v: &MuArg, m: i64, cap: i64) -> Result<QSeries> {
    let ap = grid_int(&v.tau, 24, "24a'")?;
    let half_ap = grid_int(&v.tau, 12, "12a'")?;
    let r0 = grid_int(&v.shift, 12, "12b'")? + 6;
    Ok(theta_sum(r0, 2 * r0, 12 * m, 12 * m + ap, 3 * m + half_ap, cap))
}

/// The q-expansion of Zwegers' μ(u, v; Mτ) for u = aτ + b, v = a′τ + b′.
pub fn mu_formal(u: &MuArg, v: &MuArg, m: i64, cap: i64) -> Result<QSeries> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("tau multiplier {m}")));
    }
    let a24 = grid_int(&u.tau, 24, "24a")?;
    let pre_q = grid_int(&u.tau, 12, "12a")?;
    let pre_root = grid_int(&u.shift, 12, "12b")?;
    let c_root = grid_int(&u.shift, 24, "24b")?;
    let ap24 = grid_int(&v.tau, 24, "24a'")?;
    let rho = grid_int(&v.shift, 24, "24b'")?;
    let spec = LerchSpec::new(12 * m, 12 * m + ap24, 0, 24 * m, a24).rho(rho).denominator_root(c_root);
    with_precision(cap, |w| {
        let theta = theta_formal(v, m, w)?.normalized();
        if theta.is_zero() {
            return Err(Error::ThetaVanishes);
        }
        let body_cap = w + 2 * theta.low().abs() + pre_q.abs();
        let sum = lerch_expand(&spec, body_cap)?;
        Ok(sum.div(&theta)?.scale(&Cyc24::root(pre_root)).shift(pre_q))
    })
}

/// Parses the test syntax
/// `sum (-1)^n zeta3^n q^(n^2+n) / (1 + q^(2n+1))`, optionally followed by
/// `for n = j mod m`.
impl FromStr for LerchSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (body, residue) = match text.split_once(" for ") {
            Some((b, r)) => (b, Some(parse_residue(r)?)),
            None => (text, None),
        };
        let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        let body = body.strip_prefix("sum").ok_or_else(|| Error::Parse("expected `sum`".into()))?;
        let split = body.rfind("/(1").ok_or_else(|| Error::Parse("expected `/ (1 ± ...)`".into()))?;
        let (num, den) = (&body[..split], &body[split + 1..]);

        let mut spec = LerchSpec::new(0, 0, 0, 0, 0);
        spec.alternating = false;
        let mut quad = None;
        let mut rest = num;
        while !rest.is_empty() {
            rest = rest.trim_start_matches('*');
            if let Some(r) = rest.strip_prefix("(-1)^n") {
                spec.alternating = !spec.alternating;
                rest = r;
            } else if let Some(r) = rest.strip_prefix("q^") {
                let (expr, r) = take_exponent(r)?;
                quad = Some(parse_poly(expr)?);
                rest = r;
            } else {
                let (root, r) = take_root(rest)?;
                let (expr, r) = take_exponent(r.strip_prefix('^').ok_or_else(|| Error::Parse(format!("expected ^ at `{r}`")))?)?;
                let p = parse_poly(expr)?;
                if !p[0].is_zero() || !p[2].is_zero() || !p[1].is_integer() {
                    return Err(Error::Parse(format!("root exponent `{expr}` must be an integer multiple of n")));
                }
                spec.rho_root += root * i64::try_from(p[1].to_integer()).map_err(|_| Error::Parse("overflow".into()))?;
                rest = r;
            }
        }
        let [c, b, a] = quad.ok_or_else(|| Error::Parse("missing q^(...) factor".into()))?;
        spec.a = grid_int(&a, 24, "24A")?;
        spec.b = grid_int(&b, 24, "24B")?;
        spec.c = grid_int(&c, 24, "24C")?;

        let den = den
            .strip_prefix("(1")
            .and_then(|d| d.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("bad denominator `{den}`")))?;
        let (sign, mut rest) = match den.as_bytes().first() {
            Some(b'+') => (12, &den[1..]),
            Some(b'-') => (0, &den[1..]),
            _ => return Err(Error::Parse(format!("bad denominator `{den}`"))),
        };
        spec.c_root = sign;
        if !rest.starts_with('q') {
            let (root, r) = take_root(rest)?;
            let (power, r) = match r.strip_prefix('^') {
                Some(r) => {
                    let end = r.find('*').unwrap_or(r.len());
                    let p = r[..end]
                        .trim_matches(|c| c == '(' || c == ')')
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad power `{}`", &r[..end])))?;
                    (p, &r[end..])
                }
                None => (1, r),
            };
            spec.c_root += root * power;
            rest = r.trim_start_matches('*');
        }
        let lin = rest.strip_prefix('q').ok_or_else(|| Error::Parse(format!("expected q at `{rest}`")))?;
        let lin = if lin.is_empty() {
            [Rational::one(), Rational::zero(), Rational::zero()]
        } else {
            let (expr, r) = take_exponent(lin.strip_prefix('^').ok_or_else(|| Error::Parse("expected ^".into()))?)?;
            if !r.is_empty() {
                return Err(Error::Parse(format!("trailing `{r}`")));
            }
            parse_poly(expr)?
        };
        if !lin[2].is_zero() {
            return Err(Error::Parse("denominator exponent must be linear in n".into()));
        }
        spec.e = grid_int(&lin[0], 24, "24E")?;
        spec.d = grid_int(&lin[1], 24, "24D")?;
        spec.rho_root = spec.rho_root.rem_euclid(24);
        spec.c_root = spec.c_root.rem_euclid(24);
        spec.residue = residue;
        spec.check()?;
        Ok(spec)
    }
}

impl fmt::Display for LerchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = |a: i64, b: i64, c: i64| {
            let mut terms = Vec::new();
            for (coef, var) in [(a, "n^2"), (b, "n"), (c, "")] {
                if coef == 0 {
                    continue;
                }
                let r = Rational::new(coef.into(), GRID.into());
                let body = match (r.is_one(), var.is_empty()) {
                    (true, false) => var.to_string(),
                    (_, true) => format!("{r}"),
                    _ if (-r.clone()).is_one() => format!("-{var}"),
                    _ => format!("{r}*{var}"),
                };
                terms.push(body);
            }
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+").replace("+-", "-")
            }
        };
        write!(f, "sum")?;
        if self.const_root != 0 {
            write!(f, " zeta24^{}", self.const_root)?;
        }
        if self.alternating {
            write!(f, " (-1)^n")?;
        }
        if self.rho_root != 0 {
            write!(f, " zeta24^({}n)", self.rho_root)?;
        }
        write!(f, " q^({}) / (1 - ", poly(self.a, self.b, self.c))?;
        if self.c_root != 0 {
            write!(f, "zeta24^{}*", self.c_root)?;
        }
        write!(f, "q^({}))", poly(0, self.d, self.e))?;
        if let Some((j, m)) = self.residue {
            write!(f, " for n = {j} mod {m}")?;
        }
        Ok(())
    }
}

fn parse_residue(s: &str) -> Result<(i64, i64)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (j, m) = s
        .strip_prefix("n=")
        .and_then(|r| r.split_once("mod"))
        .ok_or_else(|| Error::Parse(format!("bad residue clause `{s}`")))?;
    let j: i64 = j.parse().map_err(|_| Error::Parse(format!("bad residue `{j}`")))?;
    let m: i64 = m.parse().map_err(|_| Error::Parse(format!("bad modulus `{m}`")))?;
    if m <= 0 {
        return Err(Error::Parse(format!("bad modulus {m}")));
    }
    Ok((j.rem_euclid(m), m))
}

/// A named root of unity: `zetaK` (K | 24), `i`, or `-1`; returns its
/// exponent as a power of ζ₂₄.
fn take_root(s: &str) -> Result<(i64, &str)> {
    if let Some(r) = s.strip_prefix("zeta") {
        let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        let k: i64 = r[..end].parse().map_err(|_| Error::Parse(format!("bad root `zeta{}`", &r[..end])))?;
        if k <= 0 || 24 % k != 0 {
            return Err(Error::Parse(format!("zeta{k} is not in Q(zeta24)")));
        }
        return Ok((24 / k, &r[end..]));
    }
    if let Some(r) = s.strip_prefix("(-1)") {
        return Ok((12, r));
    }
    if let Some(r) = s.strip_prefix('i') {
        return Ok((6, r));
    }
    Err(Error::Parse(format!("unexpected factor at `{s}`")))
}

/// Splits off `(expr)` or a bare `n`/integer exponent.
fn take_exponent(s: &str) -> Result<(&str, &str)> {
    if let Some(r) = s.strip_prefix('(') {
        let mut depth = 1;
        for (i, ch) in r.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok((&r[..i], &r[i + 1..]));
                    }
                }
                _ => {}
            }
        }
        return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
    }
    let end = if s.starts_with('n') { 1 } else { s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len()) };
    if end == 0 {
        return Err(Error::Parse(format!("missing exponent at `{s}`")));
    }
    Ok((&s[..end], &s[end..]))
}

/// A polynomial of degree ≤ 2 in n with rational coefficients, returned
/// as `[constant, linear, quadratic]`. Accepts forms like `n^2+n`,
/// `3n^2/2+n/2-1`, `(n^2+n)/2`, `2*n+1`.
fn parse_poly(s: &str) -> Result<[Rational; 3]> {
    if let Some(inner) = s.strip_prefix('(') {
        if let Some(close) = matching_paren(inner) {
            if let Some(den) = inner[close + 1..].strip_prefix('/') {
                let d = parse_rational(den)?;
                let p = parse_poly(&inner[..close])?;
                return Ok(p.map(|c| c / &d));
            }
        }
    }
    let mut out = [Rational::zero(), Rational::zero(), Rational::zero()];
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    for t in terms {
        let (neg, t) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        if t.is_empty() {
            return Err(Error::Parse(format!("empty term in `{s}`")));
        }
        let (t, den) = match t.rsplit_once('/') {
            Some((a, d)) if t.contains('n') && !d.contains('n') => (a, parse_rational(d)?),
            _ => (t, Rational::one()),
        };
        let (coef, deg) = if let Some(c) = t.strip_suffix("n^2") {
            (c, 2)
        } else if let Some(c) = t.strip_suffix('n') {
            (c, 1)
        } else {
            (t, 0)
        };
        let coef = coef.trim_end_matches('*');
        let mut r = if coef.is_empty() { Rational::one() } else { parse_rational(coef)? };
        r /= den;
        if neg {
            r = -r;
        }
        out[deg] += r;
    }
    Ok(out)
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Reference expansion: each term inverted as its own series and summed.
/// Slow and independent of [`lerch_expand`]; kept for tests.
pub fn lerch_brute_force(spec: &LerchSpec, cap: i64, window: i64) -> Result<QSeries> {
    let mut acc = QSeries::zero(cap);
    for n in -window..=window {
        if !spec.includes(n) {
            continue;
        }
        let q = spec.a * n * n + spec.b * n + spec.c;
        let k = spec.d * n + spec.e;
        if q.min(q - k) >= cap {
            continue;
        }
        let w = cap + q.abs() + 2 * k.abs() + GRID;
        let den = two_monomials(Cyc24::one(), 0, -Cyc24::root(spec.c_root), k, w).normalized();
        if den.is_zero() {
            return Err(Error::Pole { n });
        }
        let sign = if spec.alternating && n.rem_euclid(2) == 1 { -Cyc24::one() } else { Cyc24::one() };
        let c = (&sign * &Cyc24::root(spec.rho_root * n)).mul_root(spec.const_root);
        let term = den.inv()?.shift(q).scale(&c);
        acc = acc.add(&term.truncate(cap.min(term.cap())));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sum_shapes() {
        let s: LerchSpec = "sum (-1)^n zeta3^n q^(n^2+n) / (1 + q^(2n+1))".parse().unwrap();
        assert_eq!(s, LerchSpec::new(24, 24, 0, 48, 24).rho(8).denominator_root(12));
        let s: LerchSpec = "sum (-1)^n zeta3^(2n) q^(n^2+n) / (1 - zeta3*q^(2n+1))".parse().unwrap();
        assert_eq!(s, LerchSpec::new(24, 24, 0, 48, 24).rho(16).denominator_root(8));
        let s: LerchSpec = "sum (-1)^n q^((n^2+n)/2) / (1 + q^(2n)) for n = 1 mod 3".parse().unwrap();
        assert_eq!(s, LerchSpec::new(12, 12, 0, 48, 0).denominator_root(12).restrict(1, 3));
        let s: LerchSpec = "sum (-1)^n q^(3n^2/2+n/2) / (1 + q^n)".parse().unwrap();
        assert_eq!(s, LerchSpec::new(36, 12, 0, 24, 0).denominator_root(12));
        assert!("sum q^(-n^2) / (1 - q^n)".parse::<LerchSpec>().is_err());
        assert!("sum q^(n^2/48) / (1 - q^n)".parse::<LerchSpec>().is_err());
        let s = LerchSpec::new(36, 12, 0, 24, 0).denominator_root(12);
        assert_eq!(s.to_string().parse::<LerchSpec>().unwrap(), s);
    }

    #[test]
    fn forced_constant_denominator() {
        // n = 0 term of the f sum is 1/(1 + 1) = 1/2.
        let s = LerchSpec::new(36, 12, 0, 24, 0).denominator_root(12);
        let x = lerch_expand(&s, GRID).unwrap();
        assert_eq!(x.coeff(0).unwrap(), Cyc24::from_frac(1, 2));
    }

    #[test]
    fn toy_spec_matches_brute_force() {
        let s: LerchSpec = "sum (-1)^n q^(n^2) / (1 - q^(n+1))".parse().unwrap();
        assert!(matches!(lerch_expand(&s, 50 * GRID), Err(Error::Pole { n: -1 })));
        let s: LerchSpec = "sum (-1)^n q^(n^2) / (1 - zeta3*q^(n+1))".parse().unwrap();
        let cap = 50 * GRID;
        let fast = lerch_expand(&s, cap).unwrap();
        let slow = lerch_brute_force(&s, cap, 12).unwrap();
        assert!(fast.eq_to(&slow, cap).unwrap().is_equal());
    }

    #[test]
    fn shift_invariance() {
        let s: LerchSpec = "sum (-1)^n zeta3^n q^(n^2+n) / (1 + q^(2n+1))".parse().unwrap();
        let cap = 80 * GRID;
        let base = lerch_expand(&s, cap).unwrap();
        for k in [-2, -1, 1, 3] {
            assert_eq!(lerch_expand(&s.shifted(k), cap).unwrap(), base);
        }
    }

    #[test]
    fn crank_at_minus_q() {
        let (l, r) = crank_pair(Monomial::neg_q(GRID), 1, 100 * GRID).unwrap();
        assert!(l.eq_to(&r, 100 * GRID).unwrap().is_equal());
        assert!(matches!(crank_pair(Monomial::q(GRID), 1, 20 * GRID), Err(Error::Pole { .. })));
    }

    #[test]
    fn thetaid_degenerate_points() {
        assert!(thetaid_lhs(Monomial::q(0), 1, 100 * GRID).unwrap().is_zero());
        assert!(thetaid_lhs(Monomial::neg_q(GRID), 1, 100 * GRID).unwrap().is_zero());
        let (l, r) = thetaid_pair(Monomial::q(GRID), 1, 80 * GRID).unwrap();
        assert!(l.eq_to(&r, 80 * GRID).unwrap().is_equal());
    }

    #[test]
    fn theta_formal_matches_closed_form() {
        let v = MuArg::new((0, 1), (1, 3));
        let (sum, _) = crate::etatheta::vartheta_onethird(60 * GRID).unwrap();
        assert_eq!(theta_formal(&v, 2, 60 * GRID).unwrap(), sum);
        let v = MuArg::new((0, 1), (0, 1));
        assert!(matches!(mu_formal(&MuArg::new((1, 2), (1, 2)), &v, 1, 10 * GRID), Err(Error::ThetaVanishes)));
    }
}
