//! Closed-form capacity bounds in bit/s/Hz.
//!
//! Noise is normalized so `σ = √(N₀W) = 1`; `snr = ℰ/σ` for average-power
//! and PAPR constraints, `pnr = 𝒜/σ` for peak power. Every lower bound has
//! the shape `pre·log₂(1 + κ·snr²)` where `κ` is an entropy-power ratio of the
//! input symbols divided by `2πe`.

use std::collections::HashMap;
use std::f64::consts::{E, LN_2, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use crate::constraint::PowerConstraint;
use crate::distributions::{nu_from_papr, solve_mu, te_norm_factor};
use crate::error::{Error, Result};
use crate::mi::optimize_geometric_l;
use crate::numeric::optimize::grid as make_grid;
use crate::numeric::{golden_max, grid_golden_max, GridSpacing};
use crate::pulses::{Excursion, Pulse};

const TWO_PI_E: f64 = 2.0 * PI * E;

/// Smallest roll-off in the DC-aided supremum.
pub const BETA_MIN: f64 = 0.01;

/// Grid size for the β, α supremum searches.
pub const SUP_GRID_POINTS: usize = 64;

fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / LN_2
}

pub fn snr_from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn db_from_snr(snr: f64) -> f64 {
    10.0 * snr.log10()
}

/// `𝒢` and `𝒮` of a pulse, the only two numbers the DOF-optimal bounds need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseConstants {
    pub gain: f64,
    pub excursion: f64,
}

impl PulseConstants {
    /// `g_△`: `𝒢 = e⁻²`, `𝒮_N = 1`.
    pub const S2: PulseConstants = PulseConstants { gain: 0.135_335_283_236_612_7, excursion: 1.0 };
    /// Spectral-cosine pulse: `𝒢 = ¼`, `𝒮_N = 4/π`.
    pub const SC: PulseConstants = PulseConstants { gain: 0.25, excursion: 1.273_239_544_735_162_7 };

    /// Computes both metrics numerically at the pulse's native spacing.
    pub fn from_pulse(pulse: &Pulse) -> Result<Self> {
        let gain = pulse.gain_metric()?;
        match pulse.native_excursion()? {
            Excursion::Finite { value, .. } => Ok(PulseConstants { gain, excursion: value }),
            Excursion::Divergent => Err(Error::DivergentMetric(format!("excursion of {pulse} is infinite"))),
        }
    }

    fn check(&self) -> Result<()> {
        if !(self.gain > 0.0 && self.gain <= 1.0 + 1e-12) {
            return Err(Error::OutOfRange { name: "G", value: self.gain, range: "(0, 1]" });
        }
        if !(self.excursion >= 1.0 - 1e-12 && self.excursion.is_finite()) {
            return Err(Error::DivergentMetric(format!("excursion {} is not finite and ≥ 1", self.excursion)));
        }
        Ok(())
    }
}

/// `e^{2h(X)}/ℰ²` for the symbol law used at PAPR `r` with a pulse of
/// excursion `s`: truncated exponential on `[0, rℰ/s]` for `r > 2`, uniform
/// on the same interval otherwise.
pub fn papr_entropy_power(r: f64, s: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::OutOfRange { name: "r", value: r, range: "(0, ∞)" });
    }
    let base = r * r / (s * s);
    if r <= 2.0 {
        return Ok(base);
    }
    let nu = nu_from_papr(r, s)?;
    // ν ≤ 2 only through rounding just above r = 2, where μ → 0.
    let mu = if nu <= 2.0 { 0.0 } else { solve_mu(1.0 / nu)?.mu };
    let f = te_norm_factor(mu);
    Ok(base * (2.0 * mu / nu).exp() * f * f)
}

/// DOF-optimal lower bound for an arbitrary symbol entropy:
/// `log₂(1 + 𝒢·e^{2h}/(2πe))`, `h` in nats for noise-normalized symbols.
pub fn lb_general_pam(gain: f64, h_x: f64) -> f64 {
    let x = 2.0 * h_x + gain.ln() - TWO_PI_E.ln();
    if x > 700.0 {
        x / LN_2
    } else {
        log2_1p(x.exp())
    }
}

/// Exponential symbols with `g_△`: `log₂(1 + snr²/(2πe))`.
pub fn lb_exp_s2(snr: f64) -> f64 {
    log2_1p(snr * snr / TWO_PI_E)
}

/// Peak-power bound for a pulse with finite excursion.
pub fn lb_pp_general(c: PulseConstants, pnr: f64) -> Result<f64> {
    c.check()?;
    Ok(log2_1p(c.gain * pnr * pnr / (TWO_PI_E * c.excursion * c.excursion)))
}

/// Uniform symbols with the spectral-cosine pulse: `log₂(1 + π·pnr²/(128e))`.
pub fn lb_unif_cos(pnr: f64) -> f64 {
    log2_1p(PI * pnr * pnr / (128.0 * E))
}

/// Pre-SNR² factor `η` of the PAPR bound.
pub fn eta(c: PulseConstants, r: f64) -> Result<f64> {
    c.check()?;
    Ok(c.gain * papr_entropy_power(r, c.excursion)? / TWO_PI_E)
}

/// PAPR-constrained DOF-optimal bound `log₂(1 + η·snr²)`.
pub fn lb_papr_general(c: PulseConstants, r: f64, snr: f64) -> Result<f64> {
    Ok(log2_1p(eta(c, r)? * snr * snr))
}

/// Truncated-exponential symbols with `g_△`.
pub fn lb_te_s2(r: f64, snr: f64) -> Result<f64> {
    lb_papr_general(PulseConstants::S2, r, snr)
}

/// ISI-free signaling with `2·g_△` at half the Nyquist rate.
pub fn lb_ifs_s2(constraint: PowerConstraint) -> Result<f64> {
    let kappa_snr2 = match constraint {
        PowerConstraint::Average { mean } => E * E * mean * mean / TWO_PI_E,
        PowerConstraint::Peak { peak } => peak * peak / TWO_PI_E,
        PowerConstraint::Papr { mean, ratio } => papr_entropy_power(ratio, 1.0)? * mean * mean / TWO_PI_E,
    };
    Ok(0.5 * log2_1p(kappa_snr2))
}

/// DC-aided ISI-free rate for a Nyquist pulse with roll-off `β` and
/// excursion `s_beta`; `Err(InvalidRegime)` when the PAPR is unreachable.
pub fn lb_ifs_dc_fixed(beta: f64, s_beta: f64, constraint: PowerConstraint) -> Result<f64> {
    let s2 = s_beta * s_beta;
    let kappa_snr2 = match constraint {
        PowerConstraint::Average { mean } => 4.0 * mean * mean / (TWO_PI_E * s2),
        PowerConstraint::Peak { peak } => peak * peak / (TWO_PI_E * s2),
        PowerConstraint::Papr { mean, ratio } => papr_entropy_power(ratio, s_beta)? * mean * mean / TWO_PI_E,
    };
    Ok(log2_1p(kappa_snr2) / (1.0 + beta))
}

/// `𝒮_β` of the PL pulse at its Nyquist spacing, tabulated on a log grid.
#[derive(Debug)]
pub struct ExcursionTable {
    betas: Vec<f64>,
    values: Vec<f64>,
    exact: Mutex<HashMap<u64, f64>>,
}

impl ExcursionTable {
    pub fn build(beta_min: f64, points: usize) -> Result<Self> {
        let betas = make_grid(beta_min, 1.0, points, GridSpacing::Logarithmic);
        let values = betas.par_iter().map(|&b| pl_excursion(b)).collect::<Result<Vec<f64>>>()?;
        Ok(ExcursionTable { betas, values, exact: Mutex::new(HashMap::new()) })
    }

    /// Process-wide table on `[0.01, 1]` with 64 points, built on first use.
    pub fn shared() -> &'static ExcursionTable {
        static TABLE: OnceLock<ExcursionTable> = OnceLock::new();
        TABLE.get_or_init(|| ExcursionTable::build(BETA_MIN, SUP_GRID_POINTS).expect("PL excursions are finite"))
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Linear interpolation of `ln 𝒮` in `ln β`.
    pub fn interpolate(&self, beta: f64) -> f64 {
        let b = beta.clamp(self.betas[0], *self.betas.last().expect("nonempty"));
        let k = self.betas.partition_point(|&x| x < b).clamp(1, self.betas.len() - 1);
        let (b0, b1) = (self.betas[k - 1].ln(), self.betas[k].ln());
        let (s0, s1) = (self.values[k - 1].ln(), self.values[k].ln());
        let w = (b.ln() - b0) / (b1 - b0);
        (s0 + w * (s1 - s0)).exp()
    }

    /// Exact `𝒮_β`, memoized.
    pub fn exact(&self, beta: f64) -> Result<f64> {
        if let Some(k) = self.betas.iter().position(|&b| b == beta) {
            return Ok(self.values[k]);
        }
        let key = beta.to_bits();
        if let Some(&v) = self.exact.lock().expect("cache lock").get(&key) {
            return Ok(v);
        }
        let v = pl_excursion(beta)?;
        self.exact.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }
}

/// `𝒮_β` of the PL pulse at `T₀ = (1+β)/(2W)`.
pub fn pl_excursion(beta: f64) -> Result<f64> {
    let p = Pulse::parametric_linear(beta, 1.0)?;
    p.native_excursion()?.value().ok_or_else(|| Error::DivergentMetric("PL excursion".into()))
}

/// Optimum of the DC-aided bound over the roll-off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcAided {
    pub rate: f64,
    pub beta: f64,
    pub excursion: f64,
}

/// Supremum over `β ∈ [0.01, 1]` of the DC-aided ISI-free bound with the PL
/// pulse. The grid uses tabulated `𝒮_β`; golden refinement runs on the
/// interpolant and the refined point is re-scored with the exact `𝒮_β`, kept
/// only if it beats the best grid point.
pub fn lb_ifs_dc(table: &ExcursionTable, constraint: PowerConstraint) -> Result<DcAided> {
    let mut best: Option<DcAided> = None;
    for (&b, &s) in table.betas.iter().zip(&table.values) {
        if let Ok(rate) = lb_ifs_dc_fixed(b, s, constraint) {
            if best.is_none_or(|x| rate > x.rate) {
                best = Some(DcAided { rate, beta: b, excursion: s });
            }
        }
    }
    let mut best =
        best.ok_or_else(|| Error::InvalidRegime(format!("no roll-off in [{BETA_MIN}, 1] admits {constraint}")))?;
    let k = table.betas.iter().position(|&b| b == best.beta).expect("grid point");
    let lo = table.betas[k.saturating_sub(1)];
    let hi = table.betas[(k + 1).min(table.betas.len() - 1)];
    if hi > lo {
        let (b, _) =
            golden_max(|b| lb_ifs_dc_fixed(b, table.interpolate(b), constraint).unwrap_or(f64::NAN), lo, hi, 1e-6);
        let s = table.exact(b)?;
        if let Ok(rate) = lb_ifs_dc_fixed(b, s, constraint) {
            if rate > best.rate {
                best = DcAided { rate, beta: b, excursion: s };
            }
        }
    }
    Ok(best)
}

/// `log₂((e/2π)(snr + 2)²)` before clamping.
pub fn ub_ap_1_raw(snr: f64) -> f64 {
    (E / (2.0 * PI) * (snr + 2.0) * (snr + 2.0)).log2()
}

/// First AP upper bound, clamped at zero.
pub fn ub_ap_1(snr: f64) -> f64 {
    ub_ap_1_raw(snr).max(0.0)
}

fn ub2_objective(alpha: f64, k_snr2: f64) -> f64 {
    let xlog2x = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    alpha * k_snr2.log2() - (2.0 * xlog2x(1.0 - alpha) + 3.0 * xlog2x(alpha))
}

/// Second AP upper bound with its maximizing α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupAlpha {
    pub value: f64,
    pub alpha: f64,
}

pub fn ub_ap_2(snr: f64) -> SupAlpha {
    let k = E / (2.0 * PI) * snr * snr;
    let m = grid_golden_max(|a| ub2_objective(a, k), 0.0, 1.0, SUP_GRID_POINTS, GridSpacing::Linear, 1e-10);
    SupAlpha { value: m.value.max(0.0), alpha: m.arg }
}

/// High-SNR upper bound `log₂(snr²)`; `asymptotic_only` is set for `snr ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymptotic {
    pub value: f64,
    pub asymptotic_only: bool,
}

pub fn ub_mcoic_asymptote(snr: f64) -> Asymptotic {
    Asymptotic { value: (snr * snr).log2(), asymptotic_only: snr <= 1.0 }
}

/// Lifts a per-symbol discrete-time upper bound to bit/s over `2W` uses per second.
pub fn ub_lift_dtoic(rate_per_symbol: f64, bandwidth: f64) -> f64 {
    2.0 * bandwidth * rate_per_symbol
}

/// Truncated-exponential `g_△` bound with `r = A₀/snr` per point.
pub fn ap_pp_bound(snr: f64, a0: f64) -> Result<f64> {
    if !(a0 > 0.0) {
        return Err(Error::OutOfRange { name: "A0", value: a0, range: "(0, ∞)" });
    }
    lb_te_s2(a0 / snr, snr)
}

/// `(r, η)` for each `r`; infeasible points give `NaN`.
pub fn eta_curve(c: PulseConstants, r_grid: &[f64]) -> Vec<(f64, f64)> {
    r_grid.iter().map(|&r| (r, eta(c, r).unwrap_or(f64::NAN))).collect()
}

/// Root of `η_a(r) = η_b(r)` in `[lo, hi]`.
pub fn eta_crossover(a: PulseConstants, b: PulseConstants, lo: f64, hi: f64) -> Option<f64> {
    crate::numeric::bisect(|r| eta(a, r).unwrap_or(f64::NAN) - eta(b, r).unwrap_or(f64::NAN), lo, hi, 0.0)
}

/// Gap between the best AP upper bound closed form and the exponential
/// lower bound at one SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gap {
    pub bits: f64,
    pub db: f64,
}

/// `UB1 − ExpS2` in bit/s/Hz, and the extra SNR (dB) the lower bound needs
/// to reach the upper bound's value.
pub fn asymptotic_gap(snr: f64) -> Gap {
    let bits = ub_ap_1(snr) - lb_exp_s2(snr);
    let target = E / (2.0 * PI) * (snr + 2.0) * (snr + 2.0);
    let snr_needed = (TWO_PI_E * (target - 1.0)).max(0.0).sqrt();
    Gap { bits, db: db_from_snr(snr_needed) - db_from_snr(snr) }
}

/// `2 log₂ e` and `10 log₁₀ e`.
pub fn asymptotic_gap_limit() -> Gap {
    Gap { bits: 2.0 / LN_2, db: 10.0 * std::f64::consts::LOG10_E }
}

/// Named bound curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    ExpS2,
    UnifCos,
    TES2,
    ExpS2IFS,
    UnifS2IFS,
    TES2IFS,
    GeomS2IFS,
    UnifPLIFS,
    TEPLIFS,
    UB1,
    UB2,
    MCOICAsymptote,
    GeneralPAM,
    APPP,
}

impl BoundId {
    pub const ALL: [BoundId; 14] = [
        BoundId::ExpS2,
        BoundId::UnifCos,
        BoundId::TES2,
        BoundId::ExpS2IFS,
        BoundId::UnifS2IFS,
        BoundId::TES2IFS,
        BoundId::GeomS2IFS,
        BoundId::UnifPLIFS,
        BoundId::TEPLIFS,
        BoundId::UB1,
        BoundId::UB2,
        BoundId::MCOICAsymptote,
        BoundId::GeneralPAM,
        BoundId::APPP,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::ExpS2 => "ExpS2",
            BoundId::UnifCos => "UnifCos",
            BoundId::TES2 => "TES2",
            BoundId::ExpS2IFS => "ExpS2IFS",
            BoundId::UnifS2IFS => "UnifS2IFS",
            BoundId::TES2IFS => "TES2IFS",
            BoundId::GeomS2IFS => "GeomS2IFS",
            BoundId::UnifPLIFS => "UnifPLIFS",
            BoundId::TEPLIFS => "TEPLIFS",
            BoundId::UB1 => "UB1",
            BoundId::UB2 => "UB2",
            BoundId::MCOICAsymptote => "MCOICAsymptote",
            BoundId::GeneralPAM => "GeneralPAM",
            BoundId::APPP => "APPP",
        }
    }

    /// Constraint family the SNR axis refers to.
    pub fn constraint_kind(self) -> ConstraintKind {
        match self {
            BoundId::UnifCos | BoundId::UnifS2IFS => ConstraintKind::Peak,
            BoundId::TES2 | BoundId::TES2IFS | BoundId::TEPLIFS => ConstraintKind::Papr,
            BoundId::UnifPLIFS => ConstraintKind::Average,
            _ => ConstraintKind::Average,
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(self, BoundId::UB1 | BoundId::UB2 | BoundId::MCOICAsymptote)
    }

    /// One-line provenance for CSV headers.
    pub fn description(self) -> &'static str {
        match self {
            BoundId::ExpS2 => "lower bound; i.i.d. Nyquist-rate PAM, exponential symbols, g_tri pulse (G=e^-2, S_N=1)",
            BoundId::UnifCos => "lower bound; Nyquist-rate PAM, uniform symbols, spectral-cosine pulse (G=1/4, S_N=4/pi), peak power",
            BoundId::TES2 => "lower bound; Nyquist-rate PAM, truncated-exponential symbols, g_tri pulse, PAPR r",
            BoundId::ExpS2IFS => "lower bound; ISI-free PAM at rate W with 2*g_tri, exponential symbols",
            BoundId::UnifS2IFS => "lower bound; ISI-free PAM at rate W with 2*g_tri, uniform symbols, peak power",
            BoundId::TES2IFS => "lower bound; ISI-free PAM at rate W with 2*g_tri, truncated-exponential symbols, PAPR r",
            BoundId::GeomS2IFS => "lower bound; ISI-free PAM at rate W with 2*g_tri, geometric symbols, spacing optimized per SNR",
            BoundId::UnifPLIFS => "lower bound; DC-aided ISI-free PAM with PL pulse, uniform symbols, sup over roll-off in [0.01,1]",
            BoundId::TEPLIFS => "lower bound; DC-aided ISI-free PAM with PL pulse, truncated-exponential symbols, PAPR r, sup over roll-off",
            BoundId::UB1 => "upper bound; log2((e/2pi)(snr+2)^2) lifted from discrete time, clamped at 0",
            BoundId::UB2 => "upper bound; sup over alpha of the second lifted discrete-time closed form",
            BoundId::MCOICAsymptote => "asymptotic upper bound log2(snr^2); valid only at high SNR",
            BoundId::GeneralPAM => "lower bound; Nyquist-rate PAM with user pulse metrics and exponential symbols",
            BoundId::APPP => "lower bound; truncated-exponential g_tri bound with r = A0/snr",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .iter()
            .copied()
            .find(|b| b.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownBound(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    Average,
    Peak,
    Papr,
}

/// Extra parameters some bounds need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    /// PAPR for the truncated-exponential families.
    pub r: f64,
    /// Peak amplitude over σ for the AP-PP curve.
    pub a0: f64,
    /// Pulse metrics for [`BoundId::GeneralPAM`].
    pub pulse: PulseConstants,
}

impl Default for BoundParams {
    fn default() -> Self {
        BoundParams { r: 2.5, a0: 10.0, pulse: PulseConstants::S2 }
    }
}

/// Flags attached to a curve.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CurveMeta {
    pub description: String,
    pub constraint: String,
    /// Some point was raised to zero from a negative raw value.
    pub clamped: bool,
    /// Some point lies outside the regime where the bound applies.
    pub asymptotic_only: bool,
}

/// A bound evaluated on an SNR grid (dB, bit/s/Hz).
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    pub id: BoundId,
    pub points: Vec<(f64, f64)>,
    pub meta: CurveMeta,
}

/// Evaluates one bound at linear `snr` (or pnr for peak-power bounds).
pub fn evaluate(id: BoundId, snr: f64, params: &BoundParams) -> Result<f64> {
    if !(snr > 0.0) {
        return Err(Error::OutOfRange { name: "snr", value: snr, range: "(0, ∞)" });
    }
    match id {
        BoundId::ExpS2 => Ok(lb_exp_s2(snr)),
        BoundId::UnifCos => Ok(lb_unif_cos(snr)),
        BoundId::TES2 => lb_te_s2(params.r, snr),
        BoundId::ExpS2IFS => lb_ifs_s2(PowerConstraint::Average { mean: snr }),
        BoundId::UnifS2IFS => lb_ifs_s2(PowerConstraint::Peak { peak: snr }),
        BoundId::TES2IFS => lb_ifs_s2(PowerConstraint::Papr { mean: snr, ratio: params.r }),
        BoundId::GeomS2IFS => Ok(optimize_geometric_l(snr, 1.0)?.mi / LN_2),
        BoundId::UnifPLIFS => Ok(lb_ifs_dc(ExcursionTable::shared(), PowerConstraint::Average { mean: snr })?.rate),
        BoundId::TEPLIFS => {
            Ok(lb_ifs_dc(ExcursionTable::shared(), PowerConstraint::Papr { mean: snr, ratio: params.r })?.rate)
        }
        BoundId::UB1 => Ok(ub_ap_1(snr)),
        BoundId::UB2 => Ok(ub_ap_2(snr).value),
        BoundId::MCOICAsymptote => Ok(ub_mcoic_asymptote(snr).value),
        BoundId::GeneralPAM => {
            params.pulse.check()?;
            Ok(lb_general_pam(params.pulse.gain, 1.0 + snr.ln()))
        }
        BoundId::APPP => ap_pp_bound(snr, params.a0),
    }
}

/// Evaluates a bound over a dB grid, in parallel.
pub fn curve(id: BoundId, snr_db: &[f64], params: &BoundParams) -> Result<BoundCurve> {
    let values = snr_db.par_iter().map(|&db| evaluate(id, snr_from_db(db), params)).collect::<Result<Vec<f64>>>()?;
    let clamped = id == BoundId::UB1 && snr_db.iter().any(|&db| ub_ap_1_raw(snr_from_db(db)) < 0.0);
    let asymptotic_only = id == BoundId::MCOICAsymptote && snr_db.iter().any(|&db| db <= 0.0);
    let constraint = match id.constraint_kind() {
        ConstraintKind::Average => "AP".to_string(),
        ConstraintKind::Peak => "PP".to_string(),
        ConstraintKind::Papr if id == BoundId::APPP => format!("AP+PP, A0={}", params.a0),
        ConstraintKind::Papr => format!("PAPR, r={}", params.r),
    };
    Ok(BoundCurve {
        id,
        points: snr_db.iter().copied().zip(values).collect(),
        meta: CurveMeta { description: id.description().to_string(), constraint, clamped, asymptotic_only },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_s2_value() {
        assert!((lb_exp_s2(10.0) - 2.777_153_120_281_264).abs() < 1e-12);
        assert!(lb_exp_s2(1e-9) < 1e-15);
    }

    #[test]
    fn general_pam_reproduces_corollaries() {
        for &s in &[0.1, 1.0, 10.0, 1e3] {
            let g = lb_general_pam(PulseConstants::S2.gain, 1.0 + f64::ln(s));
            assert!((g - lb_exp_s2(s)).abs() <= 1e-12 * lb_exp_s2(s).max(1e-300));
            let pp = lb_pp_general(PulseConstants::SC, s).unwrap();
            assert!((pp - lb_unif_cos(s)).abs() <= 1e-12 * pp);
            let te = lb_te_s2(3.0, s).unwrap();
            let mu = solve_mu(1.0 / 3.0).unwrap().mu;
            let f = te_norm_factor(mu);
            let direct = log2_1p(9.0 * (2.0 * mu / 3.0).exp() / (2.0 * PI * E.powi(3)) * f * f * s * s);
            assert!((te - direct).abs() <= 1e-12 * direct);
        }
        assert_eq!(lb_general_pam(1.0, -1e4), 0.0);
    }

    #[test]
    fn pp_examples() {
        let v = lb_pp_general(PulseConstants::S2, 10.0).unwrap();
        assert!((v - log2_1p(100.0 / (2.0 * PI * E.powi(3)))).abs() < 1e-14);
        let inf = PulseConstants { gain: 1.0, excursion: f64::INFINITY };
        assert!(matches!(lb_pp_general(inf, 1.0), Err(Error::DivergentMetric(_))));
    }

    #[test]
    fn ub_values() {
        assert!((ub_ap_1(10.0) - 5.961_123_912_858_957).abs() < 1e-12);
        let root = (2.0 * PI / E).sqrt() - 2.0;
        assert!(root < 0.0);
        assert_eq!(ub_ap_1(1e-3), ub_ap_1_raw(1e-3).max(0.0));
        assert!((ub_mcoic_asymptote(10.0).value - 100f64.log2()).abs() < 1e-14);
        assert!(ub_mcoic_asymptote(0.5).asymptotic_only);
    }

    #[test]
    fn ub2_stationarity() {
        // At the interior optimum α³/(1−α)² = k·snr²/e.
        for &s in &[0.5, 2.0, 10.0] {
            let r = ub_ap_2(s);
            let k = E / (2.0 * PI) * s * s;
            let lhs = r.alpha.powi(3) / (1.0 - r.alpha).powi(2);
            assert!((lhs / (k / E) - 1.0).abs() < 1e-6, "snr {s}: {lhs} vs {}", k / E);
        }
        assert!(ub_ap_2(0.5).value < ub_ap_1(0.5));
        assert!(ub_ap_2(0.5).alpha < 1.0);
    }

    #[test]
    fn papr_branch_continuity() {
        for &s in &[0.3, 1.0, 30.0] {
            let a = lb_te_s2(2.0 - 1e-6, s).unwrap();
            let b = lb_te_s2(2.0 + 1e-6, s).unwrap();
            assert!((a - b).abs() < 1e-4);
            let a = lb_papr_general(PulseConstants::SC, 2.0 - 1e-6, s).unwrap();
            let b = lb_papr_general(PulseConstants::SC, 2.0 + 1e-6, s).unwrap();
            assert!((a - b).abs() < 1e-4);
        }
    }

    #[test]
    fn papr_infinite_ratio_limit() {
        for &s in &[0.1, 1.0, 10.0, 100.0] {
            let a = lb_te_s2(1e4, s).unwrap();
            let b = lb_exp_s2(s);
            assert!((a - b).abs() / b < 1e-3);
        }
    }

    #[test]
    fn sc_infeasible_above_threshold() {
        assert!(matches!(lb_papr_general(PulseConstants::SC, 10.0, 1.0), Err(Error::InvalidRegime(_))));
    }

    #[test]
    fn eta_crossover_location() {
        let r = eta_crossover(PulseConstants::S2, PulseConstants::SC, 2.05, 4.0).unwrap();
        assert!((r - 2.693_552_106_982_073).abs() < 1e-9, "{r}");
        let hi = eta(PulseConstants::S2, 1e6).unwrap();
        assert!((hi - 1.0 / TWO_PI_E).abs() / hi < 1e-4);
        let lo = eta(PulseConstants::SC, 1.5).unwrap();
        assert!((lo - 0.25 * 2.25 / (TWO_PI_E * PulseConstants::SC.excursion.powi(2))).abs() < 1e-15);
    }

    #[test]
    fn ifs_values() {
        let v = lb_ifs_s2(PowerConstraint::Average { mean: 1.0 }).unwrap();
        assert!((v - 0.5 * log2_1p(E / (2.0 * PI))).abs() < 1e-15);
        assert!((v - 0.259_332_016_918_756_4).abs() < 1e-12);
        let p = lb_ifs_s2(PowerConstraint::Papr { mean: 3.0, ratio: 1.5 }).unwrap();
        assert!((p - 0.5 * log2_1p(2.25 * 9.0 / TWO_PI_E)).abs() < 1e-15);
    }

    #[test]
    fn dc_aided_fixed_beta_tradeoff() {
        let small = pl_excursion(0.1).unwrap();
        let large = pl_excursion(0.9).unwrap();
        let at = |b: f64, s: f64, db: f64| {
            lb_ifs_dc_fixed(b, s, PowerConstraint::Average { mean: snr_from_db(db) }).unwrap()
        };
        assert!(at(0.1, small, 40.0) > at(0.9, large, 40.0));
        assert!(at(0.1, small, -5.0) < at(0.9, large, -5.0));
    }

    #[test]
    fn pl_excursion_at_unit_rolloff() {
        assert!((pl_excursion(1.0).unwrap() - 1.0).abs() < 1e-9);
        // β = 1 makes the DC-aided AP bound equal to ½ log₂(1 + 2 snr²/(πe)).
        let v = lb_ifs_dc_fixed(1.0, 1.0, PowerConstraint::Average { mean: 2.0 }).unwrap();
        assert!((v - 0.5 * log2_1p(8.0 / (PI * E))).abs() < 1e-15);
    }

    #[test]
    fn gap_at_sixty_db() {
        let g = asymptotic_gap(snr_from_db(60.0));
        let lim = asymptotic_gap_limit();
        assert!((g.bits - 2.885).abs() < 0.01 && (g.bits - lim.bits).abs() < 0.01);
        assert!((g.db - 4.343).abs() < 0.01 && (g.db - lim.db).abs() < 0.01);
        // At 0 dB the SNR gap is still wider than its limit.
        assert!(asymptotic_gap(1.0).db > lim.db);
    }

    #[test]
    fn ap_pp_saturates() {
        let a = ap_pp_bound(snr_from_db(7.0), 10.0).unwrap();
        let b = ap_pp_bound(snr_from_db(9.0), 10.0).unwrap();
        assert!(b - a < 0.05 && b >= a - 1e-12);
        let low = snr_from_db(-8.0);
        assert!((ap_pp_bound(low, 10.0).unwrap() - lb_exp_s2(low)).abs() < 0.05);
    }

    #[test]
    fn bound_names_roundtrip() {
        for id in BoundId::ALL {
            assert_eq!(id.name().parse::<BoundId>().unwrap(), id);
        }
        assert!("nope".parse::<BoundId>().is_err());
    }

    #[test]
    fn lift_is_linear() {
        assert_eq!(ub_lift_dtoic(0.0, 1.0), 0.0);
        assert_eq!(ub_lift_dtoic(1.5, 2.0), 6.0);
    }
}
