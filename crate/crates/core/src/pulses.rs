//! Bandlimited modulation pulses and their two figures of merit.
//!
//! Four pulses are supported, all bandlimited to `[-W, W]`:
//!
//! | pulse | time domain | spectrum |
//! |-------|-------------|----------|
//! | sinc  | `sinc(2Wt)` | rectangle of height `1/(2W)` |
//! | S2    | `½ sinc²(Wt)` | triangle, peak `1/(2W)` |
//! | SC    | `2cos(2πWt) / (π(1 − 16W²t²))` | `(1/(2W)) cos(πf/(2W))` |
//! | PL(β) | `sinc(2Wt/(1+β)) · sinc(2βWt/(1+β))` | trapezoid, peak `T₀ = (1+β)/(2W)` |
//!
//! Sinc, S2 and SC integrate to `1/(2W)`; PL is a normalized Nyquist pulse with
//! unit sample at the origin and zeros at every other multiple of `T₀`.
//!
//! The spectral gain metric `𝒢 = exp((1/W)∫₀^W ln|2W·G(f)|² df)` measures the
//! entropy lost by filtering an ideal Nyquist-rate ensemble through the pulse.
//! The excursion metric `𝒮(τ) = max_{t∈[0,τ]} Σᵢ |g(t − iτ)|` bounds the
//! swing of a PAM waveform with unit-bounded symbols at spacing `τ`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numeric::golden_max;
use crate::numeric::quad::{integrate_with_breaks, uniform_breaks};
use crate::numeric::special::{sinc, trigamma_large};

/// Mean log-spectrum below this value is reported as divergent; `exp` of
/// anything smaller underflows.
pub const LOG_GAIN_FLOOR: f64 = -700.0;

/// Tolerance for `|g(nT) − δ[n]|` in Nyquist verification.
pub const NYQUIST_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseKind {
    Sinc,
    S2,
    SpectralCosine,
    ParametricLinear { beta: f64 },
}

/// A real pulse bandlimited to `[-bandwidth, bandwidth]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    kind: PulseKind,
    bandwidth: f64,
}

/// `|g(t)| ≤ coeff / |t|^order` for `|t| ≥ onset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayEnvelope {
    pub coeff: f64,
    pub order: u32,
    pub onset: f64,
}

/// Symbol spacing and amplitude scale at which a pulse is ISI-free with a
/// unit sample at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NyquistSpacing {
    pub period: f64,
    pub scale: f64,
}

/// Outcome of an excursion computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Excursion {
    Finite {
        value: f64,
        /// Offset in `[0, τ]` attaining the maximum.
        argmax: f64,
        /// Terms summed explicitly on each side of the origin.
        terms: usize,
        /// Rigorous bound on the explicitly truncated tail before correction.
        tail_bound: f64,
    },
    /// The pulse decays like `1/t`, so the shifted-sum diverges.
    Divergent,
}

impl Excursion {
    pub fn value(&self) -> Option<f64> {
        match *self {
            Excursion::Finite { value, .. } => Some(value),
            Excursion::Divergent => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, Excursion::Divergent)
    }
}

/// Knobs for the excursion search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExcursionOptions {
    pub grid_points: usize,
    pub min_terms: usize,
    pub max_terms: usize,
    /// Multiple of the envelope onset (in units of τ) that the explicit sum
    /// must reach before the asymptotic tail correction is trusted.
    pub onset_multiple: f64,
}

impl Default for ExcursionOptions {
    fn default() -> Self {
        ExcursionOptions { grid_points: 513, min_terms: 1024, max_terms: 1 << 15, onset_multiple: 32.0 }
    }
}

/// Both metrics at one spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseMetrics {
    pub gain_metric: f64,
    pub excursion: Excursion,
    pub tau: f64,
}

impl Pulse {
    pub fn new(kind: PulseKind, bandwidth: f64) -> Result<Self> {
        if !(bandwidth > 0.0 && bandwidth.is_finite()) {
            return Err(Error::OutOfRange { name: "bandwidth", value: bandwidth, range: "(0, ∞)" });
        }
        if let PulseKind::ParametricLinear { beta } = kind {
            if !(beta > 0.0 && beta <= 1.0) {
                return Err(Error::OutOfRange { name: "beta", value: beta, range: "(0, 1]" });
            }
        }
        Ok(Pulse { kind, bandwidth })
    }

    pub fn sinc(bandwidth: f64) -> Self {
        Pulse::new(PulseKind::Sinc, bandwidth).expect("valid bandwidth")
    }

    pub fn s2(bandwidth: f64) -> Self {
        Pulse::new(PulseKind::S2, bandwidth).expect("valid bandwidth")
    }

    pub fn spectral_cosine(bandwidth: f64) -> Self {
        Pulse::new(PulseKind::SpectralCosine, bandwidth).expect("valid bandwidth")
    }

    pub fn parametric_linear(beta: f64, bandwidth: f64) -> Result<Self> {
        Pulse::new(PulseKind::ParametricLinear { beta }, bandwidth)
    }

    pub fn kind(&self) -> PulseKind {
        self.kind
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn beta(&self) -> Option<f64> {
        match self.kind {
            PulseKind::ParametricLinear { beta } => Some(beta),
            _ => None,
        }
    }

    /// `(1+β)/(2W)` for PL; the Nyquist interval `1/(2W)` otherwise.
    pub fn nyquist_period(&self) -> f64 {
        match self.kind {
            PulseKind::ParametricLinear { beta } => (1.0 + beta) / (2.0 * self.bandwidth),
            _ => 1.0 / (2.0 * self.bandwidth),
        }
    }

    /// Pulse amplitude at time `t` (seconds).
    pub fn eval_time(&self, t: f64) -> f64 {
        let w = self.bandwidth;
        match self.kind {
            PulseKind::Sinc => sinc(2.0 * w * t),
            PulseKind::S2 => {
                let s = sinc(w * t);
                0.5 * s * s
            }
            // Written as half the sum of two shifted sincs, which has no
            // removable singularity at t = ±1/(4W).
            PulseKind::SpectralCosine => {
                let u = 2.0 * w * t;
                0.5 * (sinc(u - 0.5) + sinc(u + 0.5))
            }
            PulseKind::ParametricLinear { beta } => {
                let u = 2.0 * w * t / (1.0 + beta);
                sinc(u) * sinc(beta * u)
            }
        }
    }

    /// Fourier transform at frequency `f` (Hz); zero outside `[-W, W]`.
    pub fn eval_freq(&self, f: f64) -> f64 {
        let w = self.bandwidth;
        let af = f.abs();
        if af > w {
            return 0.0;
        }
        match self.kind {
            PulseKind::Sinc => 1.0 / (2.0 * w),
            PulseKind::S2 => (w - af) / (2.0 * w * w),
            PulseKind::SpectralCosine => (PI * af / (2.0 * w)).cos() / (2.0 * w),
            PulseKind::ParametricLinear { beta } => {
                let t0 = (1.0 + beta) / (2.0 * w);
                let ramp = 2.0 * beta * w / (1.0 + beta);
                t0 * ((w - af) / ramp).min(1.0)
            }
        }
    }

    /// Edge of the flat part of the PL trapezoid, `W(1−β)/(1+β)`.
    pub fn flat_band_edge(&self) -> Option<f64> {
        self.beta().map(|b| self.bandwidth * (1.0 - b) / (1.0 + b))
    }

    /// Integral of the pulse over all time, i.e. `G(0)`.
    pub fn area(&self) -> f64 {
        self.eval_freq(0.0)
    }

    pub fn decay(&self) -> DecayEnvelope {
        let w = self.bandwidth;
        match self.kind {
            PulseKind::Sinc => DecayEnvelope { coeff: 1.0 / (2.0 * PI * w), order: 1, onset: 0.0 },
            PulseKind::S2 => DecayEnvelope { coeff: 1.0 / (2.0 * PI * PI * w * w), order: 2, onset: 0.0 },
            PulseKind::SpectralCosine => {
                DecayEnvelope { coeff: 1.0 / (4.0 * PI * w * w), order: 2, onset: 2f64.sqrt() / (4.0 * w) }
            }
            PulseKind::ParametricLinear { beta } => DecayEnvelope {
                coeff: (1.0 + beta).powi(2) / (4.0 * PI * PI * beta * w * w),
                order: 2,
                onset: (1.0 + beta) / (2.0 * beta * w),
            },
        }
    }

    /// The spectral gain metric 𝒢. PL is first rescaled to unit `2W·G(0)`.
    pub fn gain_metric(&self) -> Result<f64> {
        let w = self.bandwidth;
        let norm = 1.0 / (2.0 * w * self.area());
        let log_mag2 = |f: f64| {
            let g = (2.0 * w * norm * self.eval_freq(f)).abs();
            if g > 0.0 {
                2.0 * g.ln()
            } else {
                f64::NEG_INFINITY
            }
        };

        // Smooth part on [0, split]; the remaining [split, W] carries the
        // logarithmic zero at f = W and is mapped through W − f = (W − split)e^{−s}.
        let split = match self.flat_band_edge() {
            Some(edge) if edge > 0.0 => edge,
            _ => 0.5 * w,
        };
        let head = integrate_with_breaks(&log_mag2, &[0.0, split], 1e-13, 1e-13, 2000);
        let span = w - split;
        let mapped = |s: f64| {
            let d = span * (-s).exp();
            log_mag2(w - d) * d
        };
        // Stop once W − d is no longer resolvable in floating point; the
        // neglected piece is O(s·e^{−s}) relative to the band.
        let s_max = (span / (1e-13 * w)).ln();
        let tail = integrate_with_breaks(&mapped, &uniform_breaks(0.0, s_max, 2.0), 1e-13, 1e-13, 2000);

        let mean_log = (head.value + tail.value) / w;
        if !mean_log.is_finite() || mean_log < LOG_GAIN_FLOOR {
            return Err(Error::DivergentMetric(format!("mean log-spectrum {mean_log} below floor {LOG_GAIN_FLOOR}")));
        }
        Ok(mean_log.exp())
    }

    /// Number of explicit terms per side used by [`Pulse::excursion`].
    pub fn excursion_terms(&self, tau: f64, opts: &ExcursionOptions) -> usize {
        let onset_terms = (opts.onset_multiple * self.decay().onset / tau).ceil() as usize;
        onset_terms.max(opts.min_terms).min(opts.max_terms)
    }

    /// `Σᵢ |g(t − iτ)|` with `|i| ≤ n` plus an asymptotic tail correction.
    ///
    /// Beyond the explicit window the tail is modelled as `m/x²` where `m` is
    /// the mean of `|g(x)|·x²` over the outer half of the window on that side;
    /// the lattice sum of `1/x²` is then a trigamma value.
    pub fn shifted_abs_sum(&self, t: f64, tau: f64, n: usize) -> f64 {
        let mut sum = self.eval_time(t).abs();
        let half = n / 2;
        let (mut mom_r, mut mom_l) = (0.0, 0.0);
        for i in 1..=n {
            let x = i as f64 * tau;
            let gr = self.eval_time(t - x).abs();
            let gl = self.eval_time(t + x).abs();
            sum += gr + gl;
            if i > half {
                mom_r += gr * (x - t) * (x - t);
                mom_l += gl * (x + t) * (x + t);
            }
        }
        if self.decay().order == 2 && n > half {
            let cnt = (n - half) as f64;
            let tau2 = tau * tau;
            sum += mom_r / cnt / tau2 * trigamma_large(n as f64 + 1.0 - t / tau);
            sum += mom_l / cnt / tau2 * trigamma_large(n as f64 + 1.0 + t / tau);
        }
        sum
    }

    /// The excursion metric 𝒮(τ) with default options.
    pub fn excursion(&self, tau: f64) -> Result<Excursion> {
        self.excursion_with(tau, &ExcursionOptions::default())
    }

    pub fn excursion_with(&self, tau: f64, opts: &ExcursionOptions) -> Result<Excursion> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::OutOfRange { name: "tau", value: tau, range: "(0, ∞)" });
        }
        let env = self.decay();
        if env.order < 2 {
            return Ok(Excursion::Divergent);
        }
        let n = self.excursion_terms(tau, opts);
        // The periodic sum is even and τ-periodic, so [0, τ/2] holds every
        // distinct value; the grid keeps the spacing of `grid_points` over τ.
        let m = opts.grid_points.max(3) / 2 + 1;
        let samples: Vec<(f64, f64)> = (0..m)
            .map(|k| {
                let t = 0.5 * tau * k as f64 / (m - 1) as f64;
                (t, self.shifted_abs_sum(t, tau, n))
            })
            .collect();
        let (k, &(mut argmax, mut value)) =
            samples.iter().enumerate().max_by(|a, b| a.1 .1.total_cmp(&b.1 .1)).expect("grid is nonempty");
        let lo = samples[k.saturating_sub(1)].0;
        let hi = samples[(k + 1).min(m - 1)].0;
        let (t_ref, v_ref) = golden_max(|t| self.shifted_abs_sum(t, tau, n), lo, hi, tau * 1e-9);
        if v_ref > value {
            argmax = t_ref;
            value = v_ref;
        }
        let nf = n as f64;
        let tail_bound = env.coeff / (tau * tau) * (1.0 / (nf - 1.0) + 1.0 / nf);
        Ok(Excursion::Finite { value, argmax, terms: n, tail_bound })
    }

    /// 𝒮 at the pulse's native spacing: `𝒮_N` for sinc/S2/SC, `𝒮_β` for PL.
    pub fn native_excursion(&self) -> Result<Excursion> {
        self.excursion(self.nyquist_period())
    }

    pub fn metrics(&self, tau: f64) -> Result<PulseMetrics> {
        Ok(PulseMetrics { gain_metric: self.gain_metric()?, excursion: self.excursion(tau)?, tau })
    }

    /// Spacing and scale making the pulse ISI-free with unit centre sample.
    pub fn isi_free_spacing(&self) -> Option<NyquistSpacing> {
        let w = self.bandwidth;
        match self.kind {
            PulseKind::Sinc => Some(NyquistSpacing { period: 1.0 / (2.0 * w), scale: 1.0 }),
            PulseKind::S2 => Some(NyquistSpacing { period: 1.0 / w, scale: 2.0 }),
            PulseKind::SpectralCosine => None,
            PulseKind::ParametricLinear { .. } => Some(NyquistSpacing { period: self.nyquist_period(), scale: 1.0 }),
        }
    }

    /// Checks `|scale·g(n·period) − δ[n]| < 1e-9` for `n ∈ [−64, 64]`.
    pub fn verify_nyquist_at(&self, period: f64, scale: f64) -> bool {
        (-64i32..=64).all(|n| {
            let target = if n == 0 { 1.0 } else { 0.0 };
            (scale * self.eval_time(n as f64 * period) - target).abs() < NYQUIST_TOL
        })
    }

    /// Nyquist check at the pulse's own ISI-free spacing; false if it has none.
    pub fn verify_nyquist(&self) -> bool {
        self.isi_free_spacing().is_some_and(|s| self.verify_nyquist_at(s.period, s.scale))
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Pulse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PulseKind::Sinc => write!(f, "sinc"),
            PulseKind::S2 => write!(f, "s2"),
            PulseKind::SpectralCosine => write!(f, "sc"),
            PulseKind::ParametricLinear { beta } => write!(f, "pl(beta={beta})"),
        }
    }
}

/// Pulse family selector used on the command line (`sinc|s2|sc|pl`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseFamily {
    Sinc,
    S2,
    SpectralCosine,
    ParametricLinear,
}

impl PulseFamily {
    pub fn build(self, beta: Option<f64>, bandwidth: f64) -> Result<Pulse> {
        let kind = match self {
            PulseFamily::Sinc => PulseKind::Sinc,
            PulseFamily::S2 => PulseKind::S2,
            PulseFamily::SpectralCosine => PulseKind::SpectralCosine,
            PulseFamily::ParametricLinear => PulseKind::ParametricLinear {
                beta: beta.ok_or_else(|| Error::InvalidParameter("pl pulse requires --beta".into()))?,
            },
        };
        Pulse::new(kind, bandwidth)
    }
}

impl FromStr for PulseFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sinc" => Ok(PulseFamily::Sinc),
            "s2" => Ok(PulseFamily::S2),
            "sc" => Ok(PulseFamily::SpectralCosine),
            "pl" => Ok(PulseFamily::ParametricLinear),
            other => Err(Error::InvalidParameter(format!("unknown pulse `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const W: f64 = 1.0;

    #[test]
    fn time_domain_values() {
        assert_eq!(Pulse::s2(W).eval_time(0.0), 0.5);
        assert_eq!(Pulse::sinc(W).eval_time(0.0), 1.0);
        assert!((Pulse::spectral_cosine(W).eval_time(0.0) - 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn spectral_cosine_closed_form_and_singular_point() {
        let p = Pulse::spectral_cosine(W);
        let closed = |t: f64| 2.0 * (2.0 * PI * W * t).cos() / (PI * (1.0 - 16.0 * W * W * t * t));
        for &t in &[0.03, 0.2, 0.7, 1.9, -3.3] {
            assert!((p.eval_time(t) - closed(t)).abs() < 1e-14);
        }
        // L'Hôpital at 16W²t² = 1 gives 1/2; the closed form agrees just off the point.
        let t = 1.0 / (4.0 * W);
        assert!((p.eval_time(t) - 0.5).abs() < 1e-15);
        assert!((closed(t + 1e-9) - p.eval_time(t)).abs() < 1e-6);
        assert!((closed(t - 1e-9) - p.eval_time(t)).abs() < 1e-6);
    }

    #[test]
    fn spectra() {
        assert_eq!(Pulse::s2(W).eval_freq(0.0), 1.0 / (2.0 * W));
        let pl = Pulse::parametric_linear(0.5, W).unwrap();
        assert!((pl.eval_freq(0.0) - 1.5 / (2.0 * W)).abs() < 1e-15);
        for p in [Pulse::sinc(W), Pulse::s2(W), Pulse::spectral_cosine(W), pl] {
            assert_eq!(p.eval_freq(1.5 * W), 0.0);
            assert_eq!(p.eval_freq(-1.5 * W), 0.0);
        }
    }

    #[test]
    fn pl_trapezoid_corner() {
        let p = Pulse::parametric_linear(0.3, 2.0).unwrap();
        let edge = p.flat_band_edge().unwrap();
        let t0 = p.area();
        for k in 0..=100 {
            let f = edge * k as f64 / 100.0;
            assert!((p.eval_freq(f) - t0).abs() < 1e-9);
        }
        assert_eq!(p.eval_freq(2.0), 0.0);
        assert!(p.eval_freq(0.5 * (edge + 2.0)) < t0);
    }

    #[test]
    fn gain_metric_table_values() {
        assert!((Pulse::sinc(W).gain_metric().unwrap() - 1.0).abs() < 1e-12);
        assert!((Pulse::s2(W).gain_metric().unwrap() - (-2f64).exp()).abs() < 1e-9);
        assert!((Pulse::spectral_cosine(W).gain_metric().unwrap() - 0.25).abs() < 1e-9);
        // Independent of bandwidth.
        assert!((Pulse::s2(7.5).gain_metric().unwrap() - (-2f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn gain_metric_pl_matches_trapezoid_integral() {
        // On the ramp, ln of a linear function integrates to -ramp width;
        // so 𝒢 = exp(-4β/(1+β)).
        for &b in &[0.1, 0.25, 0.5, 1.0] {
            let p = Pulse::parametric_linear(b, W).unwrap();
            let expect = (-4.0 * b / (1.0 + b)).exp();
            assert!((p.gain_metric().unwrap() - expect).abs() < 1e-9, "beta {b}");
        }
    }

    #[test]
    fn excursion_table_values() {
        let tau = 1.0 / (2.0 * W);
        let s2 = Pulse::s2(W).excursion(tau).unwrap().value().unwrap();
        assert!((s2 - 1.0).abs() < 1e-4, "{s2}");
        let sc = Pulse::spectral_cosine(W).excursion(tau).unwrap().value().unwrap();
        assert!((sc - 4.0 / PI).abs() < 1e-4, "{sc}");
        assert!(Pulse::sinc(W).excursion(tau).unwrap().is_divergent());
    }

    #[test]
    fn excursion_pl_beta_one_is_unity() {
        // PL(1) = sinc²(Wt), whose 1/W-shifts sum to one everywhere.
        let p = Pulse::parametric_linear(1.0, W).unwrap();
        let s = p.native_excursion().unwrap().value().unwrap();
        assert!((s - 1.0).abs() < 1e-9, "{s}");
    }

    #[test]
    fn excursion_rejects_bad_tau() {
        assert!(Pulse::s2(W).excursion(0.0).is_err());
        assert!(Pulse::s2(W).excursion(-1.0).is_err());
    }

    #[test]
    fn nyquist_checks() {
        assert!(Pulse::parametric_linear(0.25, W).unwrap().verify_nyquist());
        assert!(Pulse::s2(W).verify_nyquist_at(1.0 / W, 2.0));
        assert!(Pulse::s2(W).verify_nyquist());
        assert!(!Pulse::s2(W).verify_nyquist_at(1.0 / (2.0 * W), 2.0));
        // g(1/(2W)) = ½ sinc²(½) = 2/π²
        assert!((Pulse::s2(W).eval_time(0.5) - 2.0 / (PI * PI)).abs() < 1e-15);
        assert!(!Pulse::spectral_cosine(W).verify_nyquist());
        assert!(Pulse::sinc(W).verify_nyquist());
    }

    #[test]
    fn invalid_parameters() {
        assert!(Pulse::parametric_linear(0.0, W).is_err());
        assert!(Pulse::parametric_linear(1.2, W).is_err());
        assert!(Pulse::new(PulseKind::S2, 0.0).is_err());
        assert!("pl".parse::<PulseFamily>().unwrap().build(None, W).is_err());
        assert!("foo".parse::<PulseFamily>().is_err());
    }
}
