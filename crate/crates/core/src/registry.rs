//! Catalog of the formal identities, each bound to builders for its sides,
//! and the batch verifier that compares them coefficient by coefficient.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyc24;
use crate::dissect;
use crate::error::{Error, Result};
use crate::etatheta::{self, e_product, eta_quotient, euler_e, jtp_product, EtaQuotientSpec};
use crate::lerch::{self, crank_pair, lerch_expand, mu_formal, thetaid_lhs, thetaid_pair, with_precision, LerchSpec, MuArg};
use crate::mocktheta;
use crate::qseries::{Monomial, QSeries, GRID};

/// One comparison inside a record.
#[derive(Clone, Debug)]
pub struct SidePair {
    pub label: String,
    pub lhs: QSeries,
    pub rhs: QSeries,
}

/// What a builder produces: the pairs to compare and an optional remark
/// that ends up in the report.
#[derive(Clone, Debug, Default)]
pub struct Built {
    pub pairs: Vec<SidePair>,
    pub note: Option<String>,
}

impl Built {
    fn pair(mut self, label: impl Into<String>, lhs: QSeries, rhs: QSeries) -> Self {
        self.pairs.push(SidePair { label: label.into(), lhs, rhs });
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub type Builder = Arc<dyn Fn(i64) -> Result<Built> + Send + Sync>;

#[derive(Clone)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub description: &'static str,
    /// Default order in powers of q.
    pub default_order: i64,
    /// Grid power both sides were multiplied by to clear fractional lows.
    pub normalization: i64,
    pub build: Builder,
}

impl std::fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("default_order", &self.default_order)
            .field("normalization", &self.normalization)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchReport {
    pub exponent_num_24: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub id: String,
    pub status: Status,
    pub order: i64,
    pub first_mismatch: Option<MismatchReport>,
    pub ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn record<F>(id: &'static str, description: &'static str, default_order: i64, normalization: i64, f: F) -> IdentityRecord
where
    F: Fn(i64) -> Result<Built> + Send + Sync + 'static,
{
    IdentityRecord { id, description, default_order, normalization, build: Arc::new(f) }
}

fn eta(spec: &str, cap: i64) -> Result<QSeries> {
    eta_quotient(&spec.parse::<EtaQuotientSpec>()?, cap)
}

fn c(num: i64, den: i64) -> Cyc24 {
    Cyc24::from_frac(num, den)
}

fn sqrt3() -> Cyc24 {
    Cyc24::sqrt3()
}

fn i_sqrt3() -> Cyc24 {
    Cyc24::i_sqrt3()
}

fn mu(u: ((i64, i64), (i64, i64)), v: ((i64, i64), (i64, i64)), m: i64, cap: i64) -> Result<QSeries> {
    mu_formal(&MuArg::new(u.0, u.1), &MuArg::new(v.0, v.1), m, cap)
}

/// Compares `lhs` with each candidate reading of a right side, pairs it
/// with the first reading that holds (or the first one, if none does) and
/// records every outcome in the note.
fn resolve(lhs: QSeries, candidates: Vec<(&str, QSeries)>, cap: i64) -> Result<Built> {
    let mut outcomes = Vec::new();
    let mut chosen = None;
    for (k, (label, rhs)) in candidates.iter().enumerate() {
        let rep = lhs.eq_to(rhs, cap)?;
        outcomes.push(match &rep.first_mismatch {
            None => format!("{label}: holds"),
            Some(m) => format!("{label}: fails at q^({}/24)", m.exponent),
        });
        if rep.is_equal() && chosen.is_none() {
            chosen = Some(k);
        }
    }
    let k = chosen.unwrap_or(0);
    let (label, rhs) = candidates.into_iter().nth(k).expect("at least one candidate");
    Ok(Built::default().pair(label, lhs, rhs).note(outcomes.join("; ")))
}

/// 2q²ω(−q³).
fn newomega_lhs(cap: i64) -> Result<QSeries> {
    let w = mocktheta::omega_neg(cap / 3 + GRID)?;
    Ok(w.compose_power(3, 1)?.shift(2 * GRID).scale_frac(2, 1).truncate(cap))
}

/// 2q²ω(q³).
fn newomega2_lhs(cap: i64) -> Result<QSeries> {
    let w = mocktheta::omega_watson(cap / 3 + GRID)?;
    Ok(w.compose_power(3, 1)?.shift(2 * GRID).scale_frac(2, 1).truncate(cap))
}

fn newomega_rhs(cap: i64) -> Result<QSeries> {
    with_precision(cap, |w| {
        let quotient = eta("eta(1)^2*eta(4)^2/eta(2)^2/eta(6)", w)?;
        let sum = lerch_expand(&dissect::newomega_sum_spec(), w)?.div(&euler_e(6, w))?;
        Ok(QSeries::constant(dissect::minus_two_i_over_sqrt3(), w)
            .sub(&quotient.scale(&c(2, 3)))
            .add(&sum.scale(&(Cyc24::root(4) * c(4, 3)))))
    })
}

/// Right side of the q ↦ −q companion, with `k` in front of the Lerch sum.
fn newomega2_rhs(k: Cyc24, cap: i64) -> Result<QSeries> {
    let spec: LerchSpec = "sum (-1)^n zeta3^(2n) q^(n^2+n) / (1 - zeta3*q^(2n+1))".parse()?;
    with_precision(cap, |w| {
        let quotient = eta("eta(2)^4/eta(6)/eta(1)^2", w)?;
        let sum = lerch_expand(&spec, w)?.div(&euler_e(6, w))?;
        Ok(QSeries::constant(dissect::minus_two_i_over_sqrt3(), w).add(&quotient.scale(&c(2, 3))).add(&sum.scale(&k)))
    })
}

fn build_newomega(cap: i64) -> Result<Built> {
    Ok(Built::default().pair("2q^2 omega(-q^3) = eta-quotient + Lerch sum", newomega_lhs(cap)?, newomega_rhs(cap)?))
}

fn build_newomega_mu(cap: i64) -> Result<Built> {
    let rhs = with_precision(cap, |w| {
        let quotient = eta("eta(1)^2*eta(4)^2/eta(2)^2/eta(6)", w)?;
        let m = mu(((1, 1), (1, 2)), ((0, 1), (1, 3)), 2, w + 6)?.shift(-6);
        let k = Cyc24::root(-2) * sqrt3() * c(-4, 3);
        Ok(QSeries::constant(dissect::minus_two_i_over_sqrt3(), w).sub(&quotient.scale(&c(2, 3))).add(&m.scale(&k)))
    })?;
    Ok(Built::default().pair("2q^2 omega(-q^3) via mu(tau+1/2, 1/3; 2tau)", newomega_lhs(cap)?, rhs))
}

fn build_newomega2(cap: i64) -> Result<Built> {
    let work = cap + 6 * GRID;
    let (l1, r1) = (newomega_lhs(work)?, newomega_rhs(work)?);
    let l2 = newomega2_lhs(cap)?;
    let minus = newomega2_rhs(Cyc24::root(-4) * c(-4, 3), cap)?;
    let plus = newomega2_rhs(Cyc24::root(-4) * c(4, 3), cap)?;
    let mut b = resolve(
        l2.clone(),
        vec![("Lerch term with -4/3 e^(-pi i/3)", minus.clone()), ("Lerch term with +4/3 e^(-pi i/3)", plus)],
        cap,
    )?;
    b = b.pair("q -> -q twist of the left side", l1.twist_neg()?.truncate(cap), l2).pair(
        "q -> -q twist of the right side",
        r1.twist_neg()?.truncate(cap),
        minus,
    );
    Ok(b)
}

fn build_newomid(cap: i64) -> Result<Built> {
    let rhs = with_precision(cap, |w| {
        let quotient = eta("eta(2)^4/eta(6)/eta(1)^2", w)?;
        let m = mu(((1, 1), (-2, 3)), ((0, 1), (-1, 3)), 2, w + 6)?.shift(-6);
        let k = Cyc24::root(4) * sqrt3() * c(-4, 3);
        Ok(QSeries::constant(dissect::minus_two_i_over_sqrt3(), w).add(&quotient.scale(&c(2, 3))).add(&m.scale(&k)))
    })?;
    Ok(Built::default().pair("2q^2 omega(q^3) via mu(tau-2/3, -1/3; 2tau), tau -> 6tau", newomega2_lhs(cap)?, rhs))
}

/// f(q³), i.e. q^{-1/8}f(q³) normalized by q^{1/8}.
fn newf_lhs(cap: i64) -> Result<QSeries> {
    Ok(mocktheta::f_eulerian(cap / 3 + GRID).compose_power(3, 1)?.truncate(cap))
}

fn build_newf(cap: i64) -> Result<Built> {
    let rhs = |src: &str, k: Cyc24| -> Result<QSeries> {
        let spec: LerchSpec = src.parse()?;
        with_precision(cap, |w| {
            let quotient = eta("eta(1)^4/eta(3)/eta(2)^2", w - 3)?.shift(3);
            let sum = lerch_expand(&spec, w)?.div(&euler_e(3, w))?;
            Ok(quotient.scale(&c(1, 3)).add(&sum.scale(&k)))
        })
    };
    resolve(
        newf_lhs(cap)?,
        vec![
            ("+4/3 times sum over 1 + q^n", rhs("sum (-1)^n zeta3^n q^((n^2+n)/2) / (1 + q^n)", c(4, 3))?),
            ("-4/3 times sum over 1 + q^(2n)", rhs("sum (-1)^n zeta3^n q^((n^2+n)/2) / (1 + q^(2n))", c(-4, 3))?),
        ],
        cap,
    )
}

fn build_newf_mu(cap: i64) -> Result<Built> {
    let rhs = with_precision(cap, |w| {
        let quotient = eta("eta(1)^4/eta(3)/eta(2)^2", w - 3)?.shift(3);
        let m = mu(((0, 1), (-1, 2)), ((0, 1), (-1, 3)), 1, w - 3)?.shift(3);
        Ok(quotient.scale(&c(1, 3)).add(&m.scale(&(i_sqrt3() * c(4, 3)))))
    })?;
    Ok(Built::default().pair("f(q^3) via mu(-1/2, -1/3; tau), times q^(1/8)", newf_lhs(cap)?, rhs))
}

fn build_omega_watson(cap: i64) -> Result<Built> {
    Ok(Built::default().pair("Eulerian = Watson", mocktheta::omega_eulerian(cap), mocktheta::omega_watson(cap)?).pair(
        "omega(-q): twist = direct",
        mocktheta::omega_neg(cap)?,
        mocktheta::omega_neg_direct(cap)?,
    ))
}

fn build_f_watson(cap: i64) -> Result<Built> {
    Ok(Built::default().pair("Eulerian = Watson", mocktheta::f_eulerian(cap), mocktheta::f_watson(cap)?))
}

/// Monomials for the triple product battery.
pub fn jtp_battery() -> Vec<(&'static str, Monomial)> {
    vec![
        ("z = q", Monomial::q(GRID)),
        ("z = -1", Monomial::new(12, 0)),
        ("z = zeta3 q", Monomial::new(8, GRID)),
        ("z = 1", Monomial::q(0)),
        ("z = -q", Monomial::neg_q(GRID)),
        ("z = q^2", Monomial::q(2 * GRID)),
        ("z = i", Monomial::new(6, 0)),
        ("z = q^(1/2)", Monomial::q(12)),
        ("z = -q^(3/2)", Monomial::neg_q(36)),
        ("z = zeta24 q^(1/3)", Monomial::new(1, 8)),
    ]
}

fn build_jtp(cap: i64) -> Result<Built> {
    let mut b = Built::default();
    for (label, z) in jtp_battery() {
        let (p, s) = jtp_product(z, cap)?;
        b = b.pair(label, p, s);
    }
    Ok(b)
}

/// `(label, z, base)` for the crank battery.
pub fn crank_battery() -> Vec<(&'static str, Monomial, i64)> {
    vec![
        ("z = -q", Monomial::neg_q(GRID), 1),
        ("z = zeta3", Monomial::new(8, 0), 1),
        ("z = q^(3/2), q -> q^3", Monomial::q(36), 3),
        ("z = -q^(3/2), q -> q^3", Monomial::neg_q(36), 3),
        ("z = -q, q -> q^3", Monomial::neg_q(GRID), 3),
        ("z = -q^3, q -> q^6", Monomial::neg_q(3 * GRID), 6),
    ]
}

fn build_crank(cap: i64) -> Result<Built> {
    let mut b = Built::default();
    for (label, z, base) in crank_battery() {
        let (l, r) = crank_pair(z, base, cap)?;
        b = b.pair(label, l, r);
    }
    Ok(b)
}

fn build_thetaid(cap: i64) -> Result<Built> {
    let mut b = Built::default().pair("F(1) = 0", thetaid_lhs(Monomial::q(0), 1, cap)?, QSeries::zero(cap)).pair(
        "F(-q) = 0",
        thetaid_lhs(Monomial::neg_q(GRID), 1, cap)?,
        QSeries::zero(cap),
    );
    for (label, z, base) in
        [("z = q", Monomial::q(GRID), 1), ("z = zeta3 q", Monomial::new(8, GRID), 1), ("z = q, q -> q^3", Monomial::q(GRID), 3)]
    {
        let (l, r) = thetaid_pair(z, base, cap)?;
        b = b.pair(label, l, r);
    }
    let (_, r) = thetaid_pair(Monomial::q(GRID), 3, cap)?;
    let (e0, _, _) = dissect::e_quotients(cap);
    Ok(b.pair("product at z = q, q -> q^3 equals e0(q) E(q^2)", r, e0.mul(&euler_e(2, cap))))
}

fn build_eta3diss(cap: i64) -> Result<Built> {
    let lhs = dissect::eta3diss_lhs(3 * cap + 3 * GRID);
    let (e0, e1, e2) = dissect::e_quotients(cap);
    Ok(Built::default()
        .pair("3-dissection", lhs.truncate(cap), dissect::eta3diss_rhs(cap)?)
        .pair("component 0 = e0", lhs.dissect(3, 0)?.truncate(cap), e0)
        .pair("component 1 = -2 e1", lhs.dissect(3, 1)?.truncate(cap), e1.scale_frac(-2, 1))
        .pair("component 2 = e2", lhs.dissect(3, 2)?.truncate(cap), e2))
}

fn build_mudiss(part: dissect::MudissPart, cap: i64) -> Result<Built> {
    let mut b = Built::default();
    for (k, (l, r)) in dissect::mudiss_sides(part, cap)?.into_iter().enumerate() {
        b = b.pair(format!("{} [{k}]", part.statement()), l, r);
    }
    Ok(b)
}

fn build_assembly(cap: i64) -> Result<Built> {
    let (yl, yr) = dissect::recombination_sides(cap)?;
    let (l, r) = dissect::newomega_assembly_sides(cap)?;
    Ok(Built::default().pair("Y0 + zeta Y1 + zeta^2 Y2 recombination", yl, yr).pair("assembled identity", l, r))
}

/// 2q^{1/3}ω(−q^{1/2}).
fn omega_half_lhs(cap: i64) -> Result<QSeries> {
    let w = mocktheta::omega_neg(2 * cap + GRID)?;
    Ok(w.compose_power(1, 2)?.shift(8).scale_frac(2, 1).truncate(cap))
}

fn build_omega_half(cap: i64) -> Result<Built> {
    // ω(−q^{1/2}) itself, compared against successive rewritings.
    let target = mocktheta::omega_neg(2 * cap + GRID)?.compose_power(1, 2)?.truncate(cap);
    let over_e = |spec: &LerchSpec, shift: i64, k: Cyc24| -> Result<QSeries> {
        with_precision(cap, |w| Ok(lerch_expand(spec, w - shift)?.div(&euler_e(1, w))?.shift(shift).scale(&k)))
    };
    let first = LerchSpec::new(36, 36, 0, 24, 12).denominator_root(12);
    let split = |b: i64| LerchSpec::new(36, 36 + b, 0, 72, 36).denominator_root(12);
    let shifted = LerchSpec::new(36, 12, 0, 72, -36).denominator_root(12);
    let step1 = over_e(&first, 0, Cyc24::one())?;
    let three = over_e(&split(0), 0, Cyc24::one())?.sub(&over_e(&split(24), 12, Cyc24::one())?).add(&over_e(
        &split(48),
        24,
        Cyc24::one(),
    )?);
    let reindexed = over_e(&split(0), 0, Cyc24::one())?.add(&over_e(&shifted, -GRID, Cyc24::from_int(-2))?);
    let eta_form = e_product(&EtaQuotientSpec::from_grid(&[(144, 2), (36, 2), (72, -2), (24, -1)]), cap).add(&over_e(
        &shifted,
        -GRID,
        Cyc24::from_int(-2),
    )?);
    Ok(Built::default()
        .pair("Watson form at -q^(1/2)", target.clone(), step1)
        .pair("split over 1 + q^(3n+3/2)", target.clone(), three)
        .pair("after n -> n-1 and n -> -n", target.clone(), reindexed)
        .pair("crank step (z = -q^(3/2), q -> q^3)", target, eta_form))
}

fn build_h2(cap: i64) -> Result<Built> {
    let side = |u: ((i64, i64), (i64, i64)), v: ((i64, i64), (i64, i64))| {
        with_precision(cap, |w| {
            let quotient = eta("eta(6)^2*eta(3/2)^2/eta(3)^2/eta(1)", w)?;
            Ok(quotient.scale_frac(2, 1).sub(&mu(u, v, 3, w + 1)?.shift(-1).scale_frac(4, 1)))
        })
    };
    let minus = side(((-3, 2), (1, 2)), ((-1, 1), (0, 1)))?;
    let plus = side(((3, 2), (1, 2)), ((1, 1), (0, 1)))?;
    let mut b = resolve(
        omega_half_lhs(cap)?,
        vec![("mu(-3tau/2 + 1/2, -tau; 3tau)", minus.clone()), ("mu(3tau/2 + 1/2, tau; 3tau)", plus.clone())],
        cap,
    )?;
    let relation = if plus == minus { "the two argument forms agree" } else { "the two argument forms differ" };
    b.note = b.note.map(|n| format!("{n}; {relation}"));
    Ok(b)
}

fn build_f_mu(cap: i64) -> Result<Built> {
    let lhs = mocktheta::f_eulerian(cap + 1).shift(-1).truncate(cap);
    let rhs = with_precision(cap, |w| {
        Ok(eta("eta(3)^4/eta(1)/eta(6)^2", w)?.add(&mu(((2, 1), (1, 2)), ((1, 1), (0, 1)), 3, w + 4)?.shift(-4).scale_frac(4, 1)))
    })?;
    Ok(Built::default().pair("q^(-1/24) f(q) via mu(2tau+1/2, tau; 3tau)", lhs, rhs))
}

/// Σ q^{6n²}/((q;q⁶)_{n+1}(q⁵;q⁶)_n) by direct summation.
pub fn rln_omega_lhs(cap: i64) -> QSeries {
    let one = Cyc24::one();
    let mut acc = QSeries::zero(cap);
    let mut running = QSeries::one(cap);
    running.div_one_minus(&one, GRID);
    let mut n = 0;
    while 6 * n * n * GRID < cap {
        if n > 0 {
            running.div_one_minus(&one, (6 * n + 1) * GRID);
            running.div_one_minus(&one, (6 * n - 1) * GRID);
        }
        acc = acc.add(&running.shift(6 * n * n * GRID).truncate(cap));
        n += 1;
    }
    acc
}

fn build_rln_omega(cap: i64) -> Result<Built> {
    let w = mocktheta::omega_watson(cap / 3 + GRID)?.compose_power(3, 1)?.shift(2 * GRID).truncate(cap);
    let psi = etatheta::psi(cap);
    let rhs = QSeries::one(cap).add(&w).add(&psi.mul(&psi).div(&euler_e(6, cap))?).scale_frac(1, 2);
    Ok(Built::default()
        .pair("sum = (1 + q^2 omega(q^3) + psi(q)^2/E(q^6))/2", rln_omega_lhs(cap), rhs)
        .note("omega_3 read as the third order omega at q^3"))
}

/// Σ (−1)ⁿ (q;q)_{2n} q^{n²}/(q⁶;q⁶)_n by direct summation.
pub fn rln_f_lhs(cap: i64) -> QSeries {
    let one = Cyc24::one();
    let mut acc = QSeries::zero(cap);
    let mut running = QSeries::one(cap);
    let mut n = 0;
    while n * n * GRID < cap {
        if n > 0 {
            running.mul_one_minus(&one, (2 * n - 1) * GRID);
            running.mul_one_minus(&one, 2 * n * GRID);
            running.div_one_minus(&one, 6 * n * GRID);
        }
        let term = running.shift(n * n * GRID).truncate(cap);
        acc = if n % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        n += 1;
    }
    acc
}

fn build_rln_f(cap: i64) -> Result<Built> {
    let f3 = mocktheta::f_eulerian(cap / 3 + GRID).compose_power(3, 1)?.truncate(cap);
    let rhs_with = |theta: QSeries| -> Result<QSeries> {
        Ok(f3.scale(&c(3, 4)).add(&theta.mul(&theta).div(&euler_e(3, cap))?.scale(&c(1, 4))))
    };
    resolve(
        rln_f_lhs(cap),
        vec![
            ("phi^2(-q) as (sum (-1)^n q^(n^2))^2, theta phi at -q", rhs_with(etatheta::theta3(cap).twist_neg()?)?),
            ("phi^2(-q) as (sum q^(n^2))^2, alternating phi at -q", rhs_with(etatheta::phi_theta(cap).twist_neg()?)?),
        ],
        cap,
    )
}

fn build_vartheta(cap: i64) -> Result<Built> {
    let (s, closed) = etatheta::vartheta_onethird(cap)?;
    let formal = lerch::theta_formal(&MuArg::new((0, 1), (1, 3)), 2, cap)?;
    Ok(Built::default().pair("theta sum = -sqrt3 q^(1/4) E(q^6)", s, closed).pair(
        "via theta(v; 2tau) builder",
        formal,
        etatheta::vartheta_onethird(cap)?.1,
    ))
}

fn build_delta(cap: i64) -> Result<Built> {
    let (d, p0, p1) = etatheta::delta_p0_p1(cap);
    let diss = p0.compose_power(3, 1)?.add(&p1.compose_power(3, 1)?.shift(GRID)).truncate(cap);
    Ok(Built::default()
        .pair("Delta = P0(q^3) + q P1(q^3)", d.clone(), diss)
        .pair("Delta = E(q^2)^2/E(q)", d.clone(), e_product(&EtaQuotientSpec::new(&[(2, 2), (1, -1)]), cap))
        .pair("Delta(-q) = E(q)E(q^4)/E(q^2)", d.twist_neg()?, e_product(&EtaQuotientSpec::new(&[(1, 1), (4, 1), (2, -1)]), cap))
        .pair("psi sum = product", etatheta::psi(cap), etatheta::psi_product(cap)?)
        .pair("phi sum = product", etatheta::phi_theta(cap), etatheta::phi_theta_product(cap)?))
}

/// Every formal identity, sorted by id.
pub fn catalog() -> Vec<IdentityRecord> {
    use dissect::MudissPart as P;
    let mut v = vec![
        record("NEWOMEGA", "2q^2 omega(-q^3) as constant + eta quotient + Lerch sum over E(q^6)", 300, 0, build_newomega),
        record("NEWOMEGA_MU", "2q^2 omega(-q^3) with the Lerch sum written as mu(tau+1/2, 1/3; 2tau)", 300, 0, build_newomega_mu),
        record("NEWOMEGA_ASSEMBLY", "2q^2 omega(-q^3) rebuilt from e_j and Y_jk", 300, 0, build_assembly),
        record("NEWOMEGA2", "2q^2 omega(q^3), directly and as the q -> -q twist of NEWOMEGA", 300, 0, build_newomega2),
        record("NEWOMID", "2q^(1/3) omega(q^(1/2)) mu identity after tau -> 6tau", 300, 0, build_newomid),
        record("NEWF", "q^(-1/8) f(q^3) identity, both sides times q^(1/8)", 300, 3, build_newf),
        record("NEWF_MU", "q^(-1/8) f(q^3) via mu(-1/2, -1/3; tau), both sides times q^(1/8)", 300, 3, build_newf_mu),
        record("OMEGAWATSON", "omega(q): Eulerian form = Watson bilateral form", 500, 0, build_omega_watson),
        record("FIDWAT", "f(q): Eulerian form = Watson bilateral form", 500, 0, build_f_watson),
        record("JTP", "Jacobi triple product at 10 monomials", 200, 0, build_jtp),
        record("CRANK", "crank generating function at several monomials and bases", 200, 0, build_crank),
        record("THETAID", "theta quotient identity, including F(1) = F(-q) = 0", 200, 0, build_thetaid),
        record("ETA3DISS", "3-dissection of E(q)^2E(q^4)^2/(E(q^2)^2E(q^6))", 300, 0, build_eta3diss),
        record("MUDISS_I", "Y0 - Y2 = E(q^6)", 300, 0, |cap| build_mudiss(P::I, cap)),
        record("MUDISS_II", "Y00/E(q^2) = (e0 + 1)/2", 300, 0, |cap| build_mudiss(P::II, cap)),
        record("MUDISS_III", "Y01/E(q^2) = -e1", 300, 0, |cap| build_mudiss(P::III, cap)),
        record("MUDISS_IV", "Y10 = Y11 = 0", 300, 0, |cap| build_mudiss(P::IV, cap)),
        record("MUDISS_V", "Y12/E(q^2) = -omega(-q)", 300, 0, |cap| build_mudiss(P::V, cap)),
        record("MUDISS_VI", "2 Y02/E(q^2) = omega(-q) + e2", 300, 0, |cap| build_mudiss(P::VI, cap)),
        record("OMEGA_HALF_SPLIT", "omega(-q^(1/2)) rewritten over 1 + q^(3n+3/2)", 200, 0, build_omega_half),
        record("H2_MU_REP", "2q^(1/3) omega(-q^(1/2)) = eta quotient - 4q^(-1/24) mu(...; 3tau)", 200, 0, build_h2),
        record("F_MU_REP", "q^(-1/24) f(q) = eta quotient + 4q^(-1/6) mu(2tau+1/2, tau; 3tau)", 200, 0, build_f_mu),
        record(
            "RLN_OMEGA",
            "sum q^(6n^2)/((q;q^6)_(n+1)(q^5;q^6)_n) in terms of omega(q^3); omega_3 read as third order omega",
            200,
            0,
            build_rln_omega,
        ),
        record(
            "RLN_F",
            "sum (-1)^n (q;q)_(2n) q^(n^2)/(q^6;q^6)_n in terms of f(q^3); f_3 read as third order f",
            200,
            0,
            build_rln_f,
        ),
        record("VARTHETA_THIRD", "theta(1/3; 2tau) = -sqrt3 q^(1/4) E(q^6)", 200, 0, build_vartheta),
        record("DELTA_DISS", "Delta, P0, P1, psi and phi identities", 300, 0, build_delta),
    ];
    v.sort_by_key(|r| r.id);
    v
}

pub fn ids() -> Vec<&'static str> {
    catalog().iter().map(|r| r.id).collect()
}

pub fn find(id: &str) -> Result<IdentityRecord> {
    let all = catalog();
    all.iter()
        .find(|r| r.id.eq_ignore_ascii_case(id))
        .cloned()
        .ok_or_else(|| Error::UnknownId { id: id.to_string(), valid: all.iter().map(|r| r.id).collect::<Vec<_>>().join(", ") })
}

#[cfg(not(target_arch = "wasm32"))]
fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = std::time::Instant::now();
    let out = f();
    (out, start.elapsed().as_millis() as u64)
}

#[cfg(target_arch = "wasm32")]
fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    (f(), 0)
}

/// First failing comparison (label and mismatch), if any, plus the build note.
type Outcome = (Option<(String, MismatchReport)>, Option<String>);

/// Builds and compares a record below q^order.
pub fn verify_record(rec: &IdentityRecord, order: i64) -> VerifyReport {
    let cap = order * GRID;
    let (outcome, ms) = timed(|| -> Result<Outcome> {
        let built = (rec.build)(cap)?;
        for p in &built.pairs {
            let rep = p.lhs.eq_to(&p.rhs, cap)?;
            if let Some(m) = rep.first_mismatch {
                let mm = MismatchReport { exponent_num_24: m.exponent, lhs: m.lhs.to_string(), rhs: m.rhs.to_string() };
                return Ok((Some((p.label.clone(), mm)), built.note));
            }
        }
        Ok((None, built.note))
    });
    match outcome {
        Ok((None, note)) => VerifyReport { id: rec.id.into(), status: Status::Pass, order, first_mismatch: None, ms, note },
        Ok((Some((label, mm)), note)) => VerifyReport {
            id: rec.id.into(),
            status: Status::Fail,
            order,
            first_mismatch: Some(mm),
            ms,
            note: Some(match note {
                Some(n) => format!("failing comparison: {label}; {n}"),
                None => format!("failing comparison: {label}"),
            }),
        },
        Err(e) => VerifyReport {
            id: rec.id.into(),
            status: Status::Fail,
            order,
            first_mismatch: None,
            ms,
            note: Some(format!("error: {e}")),
        },
    }
}

pub fn verify(id: &str, order: i64) -> Result<VerifyReport> {
    if order < 1 {
        return Err(Error::InvalidArgument(format!("order {order} must be at least 1")));
    }
    Ok(verify_record(&find(id)?, order))
}

/// Verifies every record, at its default order unless overridden. Reports
/// come back sorted by id.
pub fn verify_all(order: Option<i64>) -> Vec<VerifyReport> {
    let cat = catalog();
    let run = |r: &IdentityRecord| verify_record(r, order.unwrap_or(r.default_order));
    #[cfg(feature = "parallel")]
    let mut out: Vec<VerifyReport> = {
        use rayon::prelude::*;
        cat.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut out: Vec<VerifyReport> = cat.iter().map(run).collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn reports_to_json(reports: &[VerifyReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        let cat = catalog();
        assert!(cat.len() >= 18);
        let mut ids: Vec<_> = cat.iter().map(|r| r.id).collect();
        ids.dedup();
        assert_eq!(ids.len(), cat.len());
        assert!(cat.iter().all(|r| r.default_order >= 200));
    }

    #[test]
    fn unknown_id_lists_valid_ones() {
        match verify("NO_SUCH", 10) {
            Err(Error::UnknownId { valid, .. }) => assert!(valid.contains("NEWOMEGA")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn perturbed_record_fails() {
        let base = find("FIDWAT").unwrap();
        let build = base.build.clone();
        let bad = IdentityRecord {
            build: Arc::new(move |cap| {
                let mut b = build(cap)?;
                let p = &mut b.pairs[0];
                p.rhs = p.rhs.add(&QSeries::monomial(Cyc24::one(), 7 * GRID, cap));
                Ok(b)
            }),
            ..base
        };
        let rep = verify_record(&bad, 20);
        assert_eq!(rep.status, Status::Fail);
        assert_eq!(rep.first_mismatch.unwrap().exponent_num_24, 7 * GRID);
    }

    #[test]
    fn json_schema() {
        let rep = verify("FIDWAT", 30).unwrap();
        let v: serde_json::Value = serde_json::from_str(&reports_to_json(&[rep])).unwrap();
        let o = &v[0];
        assert_eq!(o["id"], "FIDWAT");
        assert_eq!(o["status"], "pass");
        assert_eq!(o["order"], 30);
        assert!(o["first_mismatch"].is_null());
        assert!(o["ms"].is_u64());
    }
}

#[cfg(test)]
mod small_orders {
    use super::*;

    #[test]
    fn every_record_at_small_order() {
        for rep in verify_all(Some(24)) {
            assert!(rep.passed(), "{}", serde_json::to_string(&rep).unwrap());
        }
    }
}
