//! Input-symbol laws: exponential, uniform, truncated exponential and
//! geometric, with their entropies and the truncated-exponential shape
//! equation.
//!
//! Entropies are in nats throughout.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::bisect;

/// Upper end of the μ bracket; beyond it `e^{−μ}` is below machine precision
/// relative to `1/μ`, so the mean fraction is exactly `1/μ`.
pub const MU_MAX: f64 = 750.0;

/// Residual tolerance of the μ equation.
pub const MU_TOL: f64 = 1e-12;

/// Cumulative mass at which the geometric support is truncated.
pub const GEOMETRIC_MASS: f64 = 1.0 - 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolDistribution {
    Exponential {
        mean: f64,
    },
    Uniform {
        lo: f64,
        hi: f64,
    },
    /// Density `∝ e^{−μx/L}` on `[0, L]`.
    TruncExp {
        support: f64,
        mu: f64,
    },
    /// Masses at `0, l, 2l, …` with ratio `ℰ/(l+ℰ)`.
    Geometric {
        spacing: f64,
        mean: f64,
    },
}

/// Root of `1/μ − e^{−μ}/(1−e^{−μ}) = target`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuSolution {
    pub mu: f64,
    pub target: f64,
}

/// `1/μ − e^{−μ}/(1 − e^{−μ})`: the mean of a truncated exponential on
/// `[0, 1]` with shape μ. Strictly decreasing from ½ to 0.
pub fn mean_fraction(mu: f64) -> f64 {
    if mu.abs() < 1e-2 {
        let m2 = mu * mu;
        0.5 - mu / 12.0 + mu * m2 / 720.0 - mu * m2 * m2 / 30240.0
    } else {
        1.0 / mu - 1.0 / mu.exp_m1()
    }
}

/// `(1 − e^{−μ})/μ`, continuous at μ = 0.
pub fn te_norm_factor(mu: f64) -> f64 {
    if mu.abs() < 1e-8 {
        1.0 - 0.5 * mu
    } else {
        -(-mu).exp_m1() / mu
    }
}

/// Solves the truncated-exponential shape equation for `target ∈ (0, ½)`.
pub fn solve_mu(target: f64) -> Result<MuSolution> {
    if !(target > 0.0 && target < 0.5) {
        return Err(Error::OutOfRange { name: "target", value: target, range: "(0, 1/2)" });
    }
    if target <= mean_fraction(MU_MAX) {
        return Ok(MuSolution { mu: 1.0 / target, target });
    }
    let mu = bisect(|m| mean_fraction(m) - target, 1e-12, MU_MAX, 0.0)
        .expect("mean_fraction brackets every target in (m(750), 1/2)");
    Ok(MuSolution { mu, target })
}

/// Symbol PAPR `ν = 2r/(2S − rS + r)` giving waveform PAPR `r` after the
/// minimal DC bias for a pulse with excursion `S`.
pub fn nu_from_papr(r: f64, s: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::OutOfRange { name: "r", value: r, range: "(0, ∞)" });
    }
    if !(s >= 1.0 && s.is_finite()) {
        return Err(Error::OutOfRange { name: "S", value: s, range: "[1, ∞)" });
    }
    let den = 2.0 * s - r * s + r;
    if den <= 0.0 {
        return Err(Error::InvalidRegime(format!("PAPR {r} unreachable with excursion {s} (needs r < 2S/(S−1))")));
    }
    Ok(2.0 * r / den)
}

impl SymbolDistribution {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::OutOfRange { name, value: v, range: "(0, ∞)" })
            }
        };
        match *self {
            SymbolDistribution::Exponential { mean } => positive("mean", mean),
            SymbolDistribution::Uniform { lo, hi } => {
                if lo < hi && lo.is_finite() && hi.is_finite() {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!("uniform support [{lo}, {hi}]")))
                }
            }
            SymbolDistribution::TruncExp { support, mu } => {
                positive("support", support)?;
                if mu.is_finite() && mu >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::OutOfRange { name: "mu", value: mu, range: "[0, ∞)" })
                }
            }
            SymbolDistribution::Geometric { spacing, mean } => {
                positive("spacing", spacing)?;
                positive("mean", mean)
            }
        }
    }

    /// Differential entropy in nats.
    pub fn entropy(&self) -> Result<f64> {
        match *self {
            SymbolDistribution::Exponential { mean } => Ok(1.0 + mean.ln()),
            SymbolDistribution::Uniform { lo, hi } => Ok((hi - lo).ln()),
            SymbolDistribution::TruncExp { support, mu } => {
                Ok(mu * mean_fraction(mu) + (support * te_norm_factor(mu)).ln())
            }
            SymbolDistribution::Geometric { .. } => Err(Error::DiscreteDistribution),
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            SymbolDistribution::Exponential { mean } => mean,
            SymbolDistribution::Uniform { lo, hi } => 0.5 * (lo + hi),
            SymbolDistribution::TruncExp { support, mu } => support * mean_fraction(mu),
            SymbolDistribution::Geometric { mean, .. } => mean,
        }
    }

    /// Smallest and largest values the law can produce (geometric truncated).
    pub fn support(&self) -> (f64, f64) {
        match *self {
            SymbolDistribution::Exponential { .. } => (0.0, f64::INFINITY),
            SymbolDistribution::Uniform { lo, hi } => (lo, hi),
            SymbolDistribution::TruncExp { support, .. } => (0.0, support),
            SymbolDistribution::Geometric { spacing, .. } => (0.0, spacing * (self.geometric_masses() - 1) as f64),
        }
    }

    /// Geometric ratio `q = ℰ/(l + ℰ)`; `None` for continuous laws.
    pub fn geometric_ratio(&self) -> Option<f64> {
        match *self {
            SymbolDistribution::Geometric { spacing, mean } => Some(mean / (spacing + mean)),
            _ => None,
        }
    }

    /// Number of geometric masses kept so the retained mass is `1 − 10⁻¹²`.
    pub fn geometric_masses(&self) -> usize {
        match self.geometric_ratio() {
            Some(q) => ((1.0 - GEOMETRIC_MASS).ln() / q.ln()).ceil().max(1.0) as usize,
            None => 0,
        }
    }

    /// Independent draws by inverse CDF; deterministic for a fixed seed.
    pub fn sample(&self, seed: u64, n: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng, n)
    }

    pub fn sample_with<R: Rng>(&self, rng: &mut R, n: usize) -> Vec<f64> {
        let kmax = self.geometric_masses().saturating_sub(1) as f64;
        (0..n)
            .map(|_| {
                let u: f64 = rng.random();
                match *self {
                    SymbolDistribution::Exponential { mean } => -mean * (-u).ln_1p(),
                    SymbolDistribution::Uniform { lo, hi } => lo + (hi - lo) * u,
                    SymbolDistribution::TruncExp { support, mu } => {
                        if mu < 1e-12 {
                            support * u
                        } else {
                            -(support / mu) * (u * (-mu).exp_m1()).ln_1p()
                        }
                    }
                    SymbolDistribution::Geometric { spacing, mean } => {
                        let q = mean / (spacing + mean);
                        let k = ((-u).ln_1p() / q.ln()).floor().min(kmax);
                        spacing * k
                    }
                }
            })
            .collect()
    }
}
