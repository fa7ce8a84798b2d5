//! 3-dissections behind the new ω identity: the eta quotients e₀, e₁, e₂,
//! the sums Y_j and their components Y_jk, and the final assembly.

use std::fmt;
use std::str::FromStr;

use crate::cyclotomic::Cyc24;
use crate::error::{Error, Result};
use crate::etatheta::{e_product, euler_e, EtaQuotientSpec};
use crate::lerch::{lerch_expand, LerchSpec};
use crate::mocktheta::omega_neg;
use crate::qseries::{EqReport, QSeries, GRID};

fn e0_spec() -> EtaQuotientSpec {
    EtaQuotientSpec::new(&[(6, 10), (4, 2), (1, 2), (12, -4), (3, -4), (2, -5)])
}

fn e1_spec() -> EtaQuotientSpec {
    EtaQuotientSpec::new(&[(6, 4), (4, 1), (1, 1), (12, -1), (3, -1), (2, -3)])
}

fn e2_spec() -> EtaQuotientSpec {
    EtaQuotientSpec::new(&[(12, 2), (3, 2), (6, -2), (2, -1)])
}

/// `(e₀, e₁, e₂)` from their E-product formulas.
pub fn e_quotients(cap: i64) -> (QSeries, QSeries, QSeries) {
    (e_product(&e0_spec(), cap), e_product(&e1_spec(), cap), e_product(&e2_spec(), cap))
}

/// E(q)²E(q⁴)²/(E(q²)²E(q⁶)), the quotient being dissected.
pub fn eta3diss_lhs(cap: i64) -> QSeries {
    e_product(&EtaQuotientSpec::new(&[(1, 2), (4, 2), (2, -2), (6, -1)]), cap)
}

/// e₀(q³) − 2q·e₁(q³) + q²·e₂(q³).
pub fn eta3diss_rhs(cap: i64) -> Result<QSeries> {
    let third = cap / 3 + GRID;
    let (e0, e1, e2) = e_quotients(third);
    let parts = [e0, e1.scale_frac(-2, 1), e2];
    Ok(QSeries::reassemble(&parts)?.truncate(cap))
}

/// Σ_{n ≡ j (3)} (−1)ⁿ q^{n²+n}/(1 + q^{2n+1}).
pub fn y_spec(j: i64) -> LerchSpec {
    LerchSpec::new(24, 24, 0, 48, 24).denominator_root(12).restrict(j, 3)
}

/// Σ (−1)ⁿ ζ₃ⁿ q^{n²+n}/(1 + q^{2n+1}).
pub fn newomega_sum_spec() -> LerchSpec {
    LerchSpec::new(24, 24, 0, 48, 24).denominator_root(12).rho(8)
}

/// `[Y₀, Y₁, Y₂]`.
pub fn y_sums(cap: i64) -> Result<[QSeries; 3]> {
    Ok([lerch_expand(&y_spec(0), cap)?, lerch_expand(&y_spec(1), cap)?, lerch_expand(&y_spec(2), cap)?])
}

/// `Y[j][k]` with Y_j = Σ_k q^k Y_jk(q³), each known below `cap`.
pub fn y_components(cap: i64) -> Result<[[QSeries; 3]; 3]> {
    let ys = y_sums(3 * cap + 2 * GRID)?;
    let comp = |j: usize, k: i64| -> Result<QSeries> { Ok(ys[j].dissect(3, k)?.truncate(cap)) };
    Ok([
        [comp(0, 0)?, comp(0, 1)?, comp(0, 2)?],
        [comp(1, 0)?, comp(1, 1)?, comp(1, 2)?],
        [comp(2, 0)?, comp(2, 1)?, comp(2, 2)?],
    ])
}

/// The six Y-dissection identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MudissPart {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

impl MudissPart {
    pub const ALL: [MudissPart; 6] = [Self::I, Self::II, Self::III, Self::IV, Self::V, Self::VI];

    pub fn statement(self) -> &'static str {
        match self {
            Self::I => "Y0 - Y2 = E(q^6)",
            Self::II => "2 Y00 - E(q^2) = e0 E(q^2)",
            Self::III => "Y01 = -e1 E(q^2)",
            Self::IV => "Y10 = Y11 = 0",
            Self::V => "Y12 = -omega(-q) E(q^2)",
            Self::VI => "2 Y02 - E(q^2) omega(-q) = e2 E(q^2)",
        }
    }
}

impl fmt::Display for MudissPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::I => "i",
            Self::II => "ii",
            Self::III => "iii",
            Self::IV => "iv",
            Self::V => "v",
            Self::VI => "vi",
        };
        f.write_str(s)
    }
}

impl FromStr for MudissPart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "i" | "1" => Self::I,
            "ii" | "2" => Self::II,
            "iii" | "3" => Self::III,
            "iv" | "4" => Self::IV,
            "v" | "5" => Self::V,
            "vi" | "6" => Self::VI,
            _ => return Err(Error::Parse(format!("no Y-dissection part `{s}`"))),
        })
    }
}

/// Both sides of a Y-dissection part as `(lhs, rhs)` pairs, each known below `cap`.
pub fn mudiss_sides(part: MudissPart, cap: i64) -> Result<Vec<(QSeries, QSeries)>> {
    if part == MudissPart::I {
        let ys = y_sums(cap)?;
        return Ok(vec![(ys[0].sub(&ys[2]), euler_e(6, cap))]);
    }
    let y = y_components(cap)?;
    let e2q = euler_e(2, cap);
    let (e0, e1, e2) = e_quotients(cap);
    let two = |s: &QSeries| s.scale_frac(2, 1);
    Ok(match part {
        MudissPart::I => unreachable!(),
        MudissPart::II => vec![(two(&y[0][0]).sub(&e2q), e0.mul(&e2q))],
        MudissPart::III => vec![(y[0][1].clone(), e1.mul(&e2q).neg())],
        MudissPart::IV => vec![(y[1][0].clone(), QSeries::zero(cap)), (y[1][1].clone(), QSeries::zero(cap))],
        MudissPart::V => vec![(y[1][2].clone(), omega_neg(cap)?.mul(&e2q).neg())],
        MudissPart::VI => {
            let w = omega_neg(cap)?;
            vec![(two(&y[0][2]).sub(&e2q.mul(&w)), e2.mul(&e2q))]
        }
    })
}

/// Checks a part below `cap`; the first failing pair is reported.
pub fn verify_mudiss(part: MudissPart, cap: i64) -> Result<EqReport> {
    let mut last = None;
    for (l, r) in mudiss_sides(part, cap)? {
        let rep = l.eq_to(&r, cap)?;
        if !rep.is_equal() {
            return Ok(rep);
        }
        last = Some(rep);
    }
    last.ok_or_else(|| Error::InvalidArgument("no sides".into()))
}

/// ζ = ζ₃ as an element of Q(ζ₂₄).
fn zeta3() -> Cyc24 {
    Cyc24::root(8)
}

/// The two sides of the ζ-weighted recombination
/// Y₀ + ζY₁ + ζ²Y₂ = E(q⁶)/2·[(1+ζ²)e₀(q³) + (1−ζ²) − 2q(1+ζ²)e₁(q³) + q²(1+ζ²)e₂(q³) − 3q²ζ ω(−q³)].
pub fn recombination_sides(cap: i64) -> Result<(QSeries, QSeries)> {
    let ys = y_sums(cap)?;
    let z = zeta3();
    let z2 = Cyc24::root(16);
    let lhs = ys[0].add(&ys[1].scale(&z)).add(&ys[2].scale(&z2));

    let third = cap / 3 + GRID;
    let (e0, e1, e2) = e_quotients(third);
    let w = omega_neg(third)?;
    let one_plus = Cyc24::one() + z2.clone();
    let one_minus = Cyc24::one() - z2;
    let part0 = e0.scale(&one_plus).add(&QSeries::constant(one_minus, third));
    let part1 = e1.scale(&one_plus).scale_frac(-2, 1);
    let part2 = e2.scale(&one_plus).sub(&w.scale(&z).scale_frac(3, 1));
    let bracket = QSeries::reassemble(&[part0, part1, part2])?;
    let rhs = bracket.mul(&euler_e(6, cap + GRID)).scale_frac(1, 2).truncate(cap);
    Ok((lhs.truncate(cap), rhs))
}

/// −2i/√3 = (2 − 4ζ₂₄⁴)/3.
pub fn minus_two_i_over_sqrt3() -> Cyc24 {
    (Cyc24::from_int(2) - Cyc24::root(4) * Cyc24::from_int(4)) * Cyc24::from_frac(1, 3)
}

/// Rebuilds the right side of the new ω identity from the dissected
/// pieces and returns `(2q²ω(−q³), assembled)`.
pub fn newomega_assembly_sides(cap: i64) -> Result<(QSeries, QSeries)> {
    let third = cap / 3 + GRID;
    let lhs = omega_neg(third)?.compose_power(3, 1)?.shift(2 * GRID).scale_frac(2, 1).truncate(cap);

    let eta = eta3diss_rhs(cap)?;
    let (_, recombined) = recombination_sides(cap + 6 * GRID)?;
    let mu_part = recombined.div(&euler_e(6, cap + 6 * GRID))?.scale(&Cyc24::root(4)).scale_frac(4, 3);
    let rhs = QSeries::constant(minus_two_i_over_sqrt3(), cap).sub(&eta.scale_frac(2, 3)).add(&mu_part).truncate(cap);
    Ok((lhs, rhs))
}

/// Exact check of the assembled identity below `cap`.
pub fn verify_newomega_assembly(cap: i64) -> Result<EqReport> {
    let (l, r) = newomega_assembly_sides(cap)?;
    l.eq_to(&r, cap)
}
