//! Mutual information of the scalar channel `Y = X + Z`, `Z ~ N(0, σ²)`.
//!
//! Discrete inputs are handled by quadrature of the output entropy. The
//! geometric input has an output density satisfying
//! `p(y + l) = q·p(y) + (1−q)·φ(y + l)`, so once the Gaussian term is
//! negligible the tail of `h(Y)` is a geometric series over one period.
//! Continuous inputs are estimated by Monte Carlo using their closed-form
//! output densities.

use std::f64::consts::{E, PI};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::distributions::SymbolDistribution;
use crate::error::{Error, Result};
use crate::numeric::quad::{gk15, integrate_with_breaks, uniform_breaks};
use crate::numeric::special::{ln_normal_cdf, normal_interval, normal_pdf};
use crate::numeric::{grid_golden_max, GridSpacing};

/// Bracket for the geometric spacing, in units of σ.
pub const GEOMETRIC_SPACING_RANGE: (f64, f64) = (0.05, 20.0);

/// Grid size used to seed the spacing search.
pub const GEOMETRIC_GRID_POINTS: usize = 64;

/// Gaussian windows extend this many σ on each side of a mass point.
const WINDOW: f64 = 8.0;

/// Left edge (in σ) of the direct integration region for nonnegative inputs.
const LEFT_EDGE: f64 = -10.0;

const PANEL: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiMethod {
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiResult {
    /// Mutual information in nats.
    pub mi: f64,
    pub method: MiMethod,
    pub err_estimate: f64,
}

impl MiResult {
    pub fn bits(&self) -> f64 {
        self.mi / std::f64::consts::LN_2
    }
}

/// Finitely supported input law.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteInput {
    points: Vec<f64>,
    probs: Vec<f64>,
}

impl DiscreteInput {
    pub fn new(points: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if points.is_empty() || points.len() != probs.len() {
            return Err(Error::InvalidParameter("points and probs must be nonempty and equal length".into()));
        }
        if points.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("mass points must be strictly increasing".into()));
        }
        if probs.iter().any(|&p| !(p > 0.0)) {
            return Err(Error::InvalidParameter("probabilities must be positive".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("probabilities sum to {total}")));
        }
        Ok(DiscreteInput { points, probs })
    }

    /// Geometric law truncated at cumulative mass `1 − 10⁻¹²` and renormalized.
    pub fn geometric(spacing: f64, mean: f64) -> Result<Self> {
        let d = SymbolDistribution::Geometric { spacing, mean };
        d.validate()?;
        let q = d.geometric_ratio().expect("geometric");
        let k = d.geometric_masses();
        let mut probs: Vec<f64> = (0..k).map(|i| (1.0 - q) * q.powi(i as i32)).collect();
        let total: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|p| *p /= total);
        let points = (0..k).map(|i| i as f64 * spacing).collect();
        Ok(DiscreteInput { points, probs })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Shannon entropy in nats.
    pub fn entropy(&self) -> f64 {
        self.probs.iter().map(|&p| -p * p.ln()).sum()
    }

    /// Output density at `y` for noise standard deviation `sigma`.
    pub fn output_density(&self, y: f64, sigma: f64) -> f64 {
        let lo = self.points.partition_point(|&x| x < y - 12.0 * sigma);
        let hi = self.points.partition_point(|&x| x <= y + 12.0 * sigma);
        self.points[lo..hi].iter().zip(&self.probs[lo..hi]).map(|(&x, &p)| p * normal_pdf((y - x) / sigma)).sum::<f64>()
            / sigma
    }
}

fn neg_p_ln_p(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.ln()
    } else {
        0.0
    }
}

/// `½ ln(2πe σ²)`, the entropy of the noise.
pub fn gaussian_entropy(sigma2: f64) -> f64 {
    0.5 * (2.0 * PI * E * sigma2).ln()
}

/// `ln(1 + eˣ)` without overflow.
fn softplus(x: f64) -> f64 {
    if x > 35.0 {
        x + (-x).exp()
    } else {
        x.exp().ln_1p()
    }
}

/// Entropy-power lower bound `½ ln(1 + e^{2h}/(2πeσ²))` on `I(X; X+Z)`.
pub fn epi_lower(h_x: f64, sigma2: f64) -> f64 {
    0.5 * softplus(2.0 * h_x - 2.0 * gaussian_entropy(sigma2))
}

/// `I(X; X+Z)` for a discrete input by adaptive quadrature of `h(Y)`.
pub fn mi_discrete_gaussian(input: &DiscreteInput, sigma2: f64) -> Result<MiResult> {
    if !(sigma2 > 0.0) {
        return Err(Error::OutOfRange { name: "sigma2", value: sigma2, range: "(0, ∞)" });
    }
    let sigma = sigma2.sqrt();
    if input.points.len() == 1 {
        return Ok(MiResult { mi: 0.0, method: MiMethod::Quadrature, err_estimate: 0.0 });
    }
    // Merge the ±8σ windows around each point into disjoint intervals.
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    for &x in &input.points {
        let (a, b) = (x - WINDOW * sigma, x + WINDOW * sigma);
        match intervals.last_mut() {
            Some(last) if a <= last.1 => last.1 = b,
            _ => intervals.push((a, b)),
        }
    }
    let f = |y: f64| neg_p_ln_p(input.output_density(y, sigma));
    let (mut h, mut err) = (0.0, 0.0);
    for (a, b) in intervals {
        let q = integrate_with_breaks(&f, &uniform_breaks(a, b, sigma), 1e-11, 1e-12, 200_000);
        h += q.value;
        err += q.error;
    }
    // Mass outside the windows is below 2Φ(−8) per point; its entropy share
    // is bounded by that mass times the log of the density floor.
    err += 2.0 * normal_interval(f64::NEG_INFINITY, -WINDOW) * (WINDOW * WINDOW);
    let mi = (h - gaussian_entropy(sigma2)).max(0.0);
    Ok(MiResult { mi, method: MiMethod::Quadrature, err_estimate: err })
}

/// Output density of the geometric input with unit noise:
/// `(1−q) Σ_{i≥0} qⁱ φ(y − i·l)`, summed over masses within `9 + l` of `y`.
pub fn geometric_density(y: f64, spacing: f64, q: f64) -> f64 {
    let l = spacing;
    let reach = 9.0 + l;
    let i_lo = ((y - reach) / l).ceil().max(0.0);
    let i_hi = ((y + reach) / l).floor();
    if i_hi < i_lo {
        return 0.0;
    }
    let (i_lo, i_hi) = (i_lo as i64, i_hi as i64);
    let ic = ((y / l).round() as i64).clamp(i_lo, i_hi);
    let d = y - ic as f64 * l;
    let ln_q = q.ln();
    let centre = (ic as f64 * ln_q - 0.5 * d * d).exp();
    let decay = (-l * l).exp();
    let mut sum = centre;
    // Ratios between neighbouring terms change by a constant factor e^{−l²}.
    let mut t = centre;
    let mut ratio = q * (l * d - 0.5 * l * l).exp();
    for _ in ic..i_hi {
        t *= ratio;
        ratio *= decay;
        sum += t;
        if t < sum * 1e-18 && ratio < 1.0 {
            break;
        }
    }
    let mut t = centre;
    let mut ratio = (-l * d - 0.5 * l * l).exp() / q;
    for _ in i_lo..ic {
        t *= ratio;
        ratio *= decay;
        sum += t;
        if t < sum * 1e-18 && ratio < 1.0 {
            break;
        }
    }
    (1.0 - q) * sum / (2.0 * PI).sqrt()
}

fn panel_sum<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let n = ((b - a) / PANEL).ceil().max(1.0) as usize;
    let w = (b - a) / n as f64;
    (0..n).fold((0.0, 0.0), |(v, e), k| {
        let (pv, pe) = gk15(f, a + k as f64 * w, a + (k + 1) as f64 * w);
        (v + pv, e + pe)
    })
}

/// `I(X; X+Z)` for the geometric input with spacing `l` and mean `ℰ`.
pub fn mi_geometric(spacing: f64, mean: f64, sigma2: f64) -> Result<MiResult> {
    SymbolDistribution::Geometric { spacing, mean }.validate()?;
    if !(sigma2 > 0.0) {
        return Err(Error::OutOfRange { name: "sigma2", value: sigma2, range: "(0, ∞)" });
    }
    let sigma = sigma2.sqrt();
    let l = spacing / sigma;
    let q = mean / (spacing + mean);
    let p = |y: f64| geometric_density(y, l, q);

    // Past y0 the Gaussian term in the self-similarity relation is negligible.
    let mut y0 = 10.0;
    loop {
        let p0 = p(y0);
        let ratio = (1.0 - q) * normal_pdf(y0 + l) / (q * p0);
        if ratio < 1e-16 || !(p0 > 0.0) || y0 > 400.0 {
            break;
        }
        y0 += 2.0;
    }
    let f = |y: f64| neg_p_ln_p(p(y));
    let (direct, e1) = panel_sum(&f, LEFT_EDGE, y0);
    let (a, e2) = panel_sum(&f, y0, y0 + l);
    let (b, _) = panel_sum(&p, y0, y0 + l);
    let tail = a / (1.0 - q) - q.ln() * b * q / ((1.0 - q) * (1.0 - q));
    let h = direct + tail;
    let err = e1 + e2 / (1.0 - q);
    let mi = (h - gaussian_entropy(1.0)).max(0.0);
    Ok(MiResult { mi, method: MiMethod::Quadrature, err_estimate: err })
}

/// Result of maximizing the geometric-input MI over its spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricOptimum {
    pub spacing: f64,
    /// Nats per channel use.
    pub mi: f64,
    /// `(l, I(l))` on the seeding grid.
    pub grid: Vec<(f64, f64)>,
    /// Whether the grid scan shows a single rise-then-fall.
    pub unimodal: bool,
}

/// Maximizes `I(Q_g(l); V)` over `l ∈ [0.05σ, 20σ]`.
pub fn optimize_geometric_l(mean: f64, sigma2: f64) -> Result<GeometricOptimum> {
    if !(mean > 0.0) {
        return Err(Error::OutOfRange { name: "mean", value: mean, range: "(0, ∞)" });
    }
    if !(sigma2 > 0.0) {
        return Err(Error::OutOfRange { name: "sigma2", value: sigma2, range: "(0, ∞)" });
    }
    let sigma = sigma2.sqrt();
    let (lo, hi) = GEOMETRIC_SPACING_RANGE;
    let objective = |l: f64| mi_geometric(l, mean, sigma2).map(|r| r.mi).unwrap_or(f64::NAN);
    let m = grid_golden_max(
        objective,
        lo * sigma,
        hi * sigma,
        GEOMETRIC_GRID_POINTS,
        GridSpacing::Logarithmic,
        1e-6 * sigma,
    );
    Ok(GeometricOptimum { spacing: m.arg, mi: m.value, unimodal: is_unimodal(&m.grid), grid: m.grid })
}

/// True when the sampled sequence never rises again after it starts to fall
/// (ignoring changes below 10⁻¹²).
pub fn is_unimodal(grid: &[(f64, f64)]) -> bool {
    let mut falling = false;
    for w in grid.windows(2) {
        let d = w[1].1 - w[0].1;
        if d < -1e-12 {
            falling = true;
        } else if d > 1e-12 && falling {
            return false;
        }
    }
    true
}

/// `ln p_Y(y)` for a continuous input observed in Gaussian noise of
/// standard deviation `sigma`.
pub fn output_log_density(dist: &SymbolDistribution, sigma: f64, y: f64) -> Result<f64> {
    Ok(match *dist {
        SymbolDistribution::Exponential { mean } => {
            let z = y / sigma - sigma / mean;
            -mean.ln() + sigma * sigma / (2.0 * mean * mean) - y / mean + ln_normal_cdf(z)
        }
        SymbolDistribution::Uniform { lo, hi } => {
            normal_interval((y - hi) / sigma, (y - lo) / sigma).ln() - (hi - lo).ln()
        }
        SymbolDistribution::TruncExp { support, mu } => {
            if mu < 1e-12 {
                normal_interval((y - support) / sigma, y / sigma).ln() - support.ln()
            } else {
                let a = mu / support;
                let m = y - a * sigma * sigma;
                let ln_c = a.ln() - (-(-mu).exp_m1()).ln();
                ln_c - a * y + 0.5 * a * a * sigma * sigma + normal_interval(-m / sigma, (support - m) / sigma).ln()
            }
        }
        SymbolDistribution::Geometric { spacing, mean } => {
            let q = mean / (spacing + mean);
            (geometric_density(y / sigma, spacing / sigma, q) / sigma).ln()
        }
    })
}

/// Plug-in estimate `h(Y) ≈ −mean ln p_Y(Yₖ)` from given channel outputs.
pub fn mc_mi_from_outputs(dist: &SymbolDistribution, sigma2: f64, outputs: &[f64]) -> Result<MiResult> {
    if outputs.len() < 2 {
        return Err(Error::InvalidParameter("need at least two outputs".into()));
    }
    let sigma = sigma2.sqrt();
    let n = outputs.len() as f64;
    let (mut s, mut s2) = (0.0, 0.0);
    for &y in outputs {
        let v = -output_log_density(dist, sigma, y)?;
        s += v;
        s2 += v * v;
    }
    let mean = s / n;
    let var = ((s2 / n - mean * mean) * n / (n - 1.0)).max(0.0);
    Ok(MiResult { mi: mean - gaussian_entropy(sigma2), method: MiMethod::MonteCarlo, err_estimate: (var / n).sqrt() })
}

/// Monte Carlo estimate of `I(X; X+Z)`; the geometric law goes through
/// quadrature instead.
pub fn mc_mi_estimate(dist: &SymbolDistribution, sigma2: f64, n: usize, seed: u64) -> Result<MiResult> {
    dist.validate()?;
    if !(sigma2 > 0.0) {
        return Err(Error::OutOfRange { name: "sigma2", value: sigma2, range: "(0, ∞)" });
    }
    if let SymbolDistribution::Geometric { spacing, mean } = *dist {
        return mi_geometric(spacing, mean, sigma2);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = sigma2.sqrt();
    let xs = dist.sample_with(&mut rng, n);
    let ys: Vec<f64> = xs
        .into_iter()
        .map(|x| {
            let z: f64 = StandardNormal.sample(&mut rng);
            x + sigma * z
        })
        .collect();
    mc_mi_from_outputs(dist, sigma2, &ys)
}
