//! Oversampled PAM waveforms and empirical admissibility checks.
//!
//! A trace is a finite block of `n + 2·guard` symbols convolved exactly with
//! the pulse (every symbol contributes to every sample), computed per
//! sampling phase with FFT convolution. Statistics are taken over the central
//! `n` symbol periods.

use std::io::Write;
use std::ops::Range;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::constraint::PowerConstraint;
use crate::distributions::{nu_from_papr, solve_mu, SymbolDistribution};
use crate::error::{Error, Result};
use crate::mi::{mc_mi_from_outputs, MiResult};
use crate::pulses::Pulse;

pub const MIN_OVERSAMPLING: usize = 16;
pub const DEFAULT_OVERSAMPLING: usize = 64;
pub const MIN_GUARD: usize = 32;

/// Absolute tolerance below zero still accepted as nonnegative.
pub const NONNEG_TOL: f64 = 1e-9;

/// Relative slack on average and peak power limits.
pub const POWER_RTOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct WaveformConfig {
    pub pulse: Pulse,
    /// Symbol interval `Tₛ` in seconds.
    pub spacing: f64,
    /// Amplitude applied to the pulse (2 for the ISI-free `g_△` scheme).
    pub scale: f64,
    pub dist: SymbolDistribution,
    /// Subtracted from every drawn symbol before modulation.
    pub symbol_offset: f64,
    pub dc: f64,
    pub n_symbols: usize,
    pub guard_symbols: usize,
    pub oversampling: usize,
    pub seed: u64,
}

impl WaveformConfig {
    pub fn new(pulse: Pulse, dist: SymbolDistribution, spacing: f64, n_symbols: usize, seed: u64) -> Self {
        WaveformConfig {
            pulse,
            spacing,
            scale: 1.0,
            dist,
            symbol_offset: 0.0,
            dc: 0.0,
            n_symbols,
            guard_symbols: MIN_GUARD,
            oversampling: DEFAULT_OVERSAMPLING,
            seed,
        }
    }

    /// Nyquist-rate PAM with `g_△`; average power equals the symbol mean.
    pub fn s2_nyquist_rate(dist: SymbolDistribution, n_symbols: usize, seed: u64) -> Self {
        let p = Pulse::s2(1.0);
        WaveformConfig::new(p, dist, p.nyquist_period(), n_symbols, seed)
    }

    /// ISI-free PAM at rate `W` with `2·g_△`.
    pub fn s2_isi_free(dist: SymbolDistribution, n_symbols: usize, seed: u64) -> Self {
        let mut c = WaveformConfig::new(Pulse::s2(1.0), dist, 1.0, n_symbols, seed);
        c.scale = 2.0;
        c
    }

    /// DC-aided ISI-free PAM: PL pulse at `T₀`, symbols uniform on
    /// `[−L/2, L/2]` and DC `𝒮_β·L/2`.
    pub fn pl_dc_aided(beta: f64, s_beta: f64, width: f64, n_symbols: usize, seed: u64) -> Result<Self> {
        let p = Pulse::parametric_linear(beta, 1.0)?;
        let dist = SymbolDistribution::Uniform { lo: -0.5 * width, hi: 0.5 * width };
        let mut c = WaveformConfig::new(p, dist, p.nyquist_period(), n_symbols, seed);
        c.dc = 0.5 * s_beta * width;
        Ok(c)
    }

    /// PAPR construction: truncated-exponential symbols on `[0, L]` with
    /// `𝒮·L = rℰ`, shifted by `−L/2`, plus DC `𝒮·L/2`. Average `ℰ`, peak `rℰ`.
    pub fn papr_construction(pulse: Pulse, s: f64, r: f64, mean: f64, n_symbols: usize, seed: u64) -> Result<Self> {
        if !(r > 2.0) {
            return Err(Error::OutOfRange { name: "r", value: r, range: "(2, ∞)" });
        }
        let nu = nu_from_papr(r, s)?;
        let mu = solve_mu(1.0 / nu)?.mu;
        let support = r * mean / s;
        let dist = SymbolDistribution::TruncExp { support, mu };
        let mut c = WaveformConfig::new(pulse, dist, pulse.nyquist_period(), n_symbols, seed);
        c.symbol_offset = 0.5 * support;
        c.dc = 0.5 * s * support;
        Ok(c)
    }

    pub fn with_oversampling(mut self, oversampling: usize) -> Self {
        self.oversampling = oversampling;
        self
    }

    pub fn with_guard(mut self, guard_symbols: usize) -> Self {
        self.guard_symbols = guard_symbols;
        self
    }

    pub fn with_dc(mut self, dc: f64) -> Self {
        self.dc = dc;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// `dc + scale·(E[X] − offset)·G(0)/Tₛ`.
    pub fn ensemble_mean(&self) -> f64 {
        self.dc + self.scale * (self.dist.mean() - self.symbol_offset) * self.pulse.area() / self.spacing
    }

    fn validate(&self) -> Result<()> {
        self.dist.validate()?;
        if self.oversampling < MIN_OVERSAMPLING {
            return Err(Error::InvalidParameter(format!(
                "oversampling {} below {MIN_OVERSAMPLING}",
                self.oversampling
            )));
        }
        if self.guard_symbols < MIN_GUARD {
            return Err(Error::InvalidParameter(format!("guard {} below {MIN_GUARD}", self.guard_symbols)));
        }
        if self.n_symbols == 0 || !(self.spacing > 0.0) {
            return Err(Error::InvalidParameter("need n_symbols ≥ 1 and spacing > 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveformTrace {
    pub samples: Vec<f64>,
    /// Sampling interval, `Tₛ / oversampling`.
    pub dt: f64,
    /// Modulated symbol values (after the offset), guards included.
    pub symbols: Vec<f64>,
    pub ts: f64,
    pub dc_bias: f64,
    pub pulse: Pulse,
    pub scale: f64,
    pub oversampling: usize,
    pub guard_symbols: usize,
    pub ensemble_mean: f64,
}

impl WaveformTrace {
    /// Sample indices of the central `n` symbol periods.
    pub fn central(&self) -> Range<usize> {
        let n = self.symbols.len() - 2 * self.guard_symbols;
        self.guard_symbols * self.oversampling..(self.guard_symbols + n) * self.oversampling
    }

    /// Symbol indices excluding the guards.
    pub fn central_symbols(&self) -> Range<usize> {
        self.guard_symbols..self.symbols.len() - self.guard_symbols
    }

    /// Writes `t,amplitude` rows with `t = 0` at the first symbol.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,amplitude")?;
        for (j, x) in self.samples.iter().enumerate() {
            writeln!(out, "{:.9e},{:.9e}", j as f64 * self.dt, x)?;
        }
        Ok(())
    }
}

/// Draws the symbols and synthesizes the waveform.
pub fn gen_waveform(cfg: &WaveformConfig) -> Result<WaveformTrace> {
    cfg.validate()?;
    let total = cfg.n_symbols + 2 * cfg.guard_symbols;
    let symbols: Vec<f64> = cfg.dist.sample(cfg.seed, total).into_iter().map(|x| x - cfg.symbol_offset).collect();
    gen_waveform_from_symbols(cfg, symbols)
}

/// Synthesizes the waveform for explicit symbols (guards included).
pub fn gen_waveform_from_symbols(cfg: &WaveformConfig, symbols: Vec<f64>) -> Result<WaveformTrace> {
    if cfg.oversampling < MIN_OVERSAMPLING {
        return Err(Error::InvalidParameter(format!("oversampling {} below {MIN_OVERSAMPLING}", cfg.oversampling)));
    }
    if symbols.len() < 2 * cfg.guard_symbols + 1 {
        return Err(Error::InvalidParameter("symbol block shorter than its guards".into()));
    }
    let total = symbols.len();
    let os = cfg.oversampling;
    let dt = cfg.spacing / os as f64;
    let nf = (2 * total).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(nf);
    let inv = planner.plan_fft_inverse(nf);

    let mut spec: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); nf];
    for (k, &x) in symbols.iter().enumerate() {
        spec[k].re = x;
    }
    fwd.process(&mut spec);

    let mut samples = vec![0.0; total * os];
    let mut taps: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); nf];
    let norm = 1.0 / nf as f64;
    for p in 0..os {
        let offset = p as f64 * dt;
        taps.iter_mut().for_each(|c| *c = Complex::new(0.0, 0.0));
        for m in -(total as i64 - 1)..=(total as i64 - 1) {
            let idx = m.rem_euclid(nf as i64) as usize;
            taps[idx].re = cfg.scale * cfg.pulse.eval_time(m as f64 * cfg.spacing + offset);
        }
        fwd.process(&mut taps);
        for (t, s) in taps.iter_mut().zip(&spec) {
            *t *= s;
        }
        inv.process(&mut taps);
        for k in 0..total {
            samples[k * os + p] = cfg.dc + taps[k].re * norm;
        }
    }
    let mean_x = if symbols.is_empty() { 0.0 } else { cfg.dist.mean() - cfg.symbol_offset };
    Ok(WaveformTrace {
        samples,
        dt,
        symbols,
        ts: cfg.spacing,
        dc_bias: cfg.dc,
        pulse: cfg.pulse,
        scale: cfg.scale,
        oversampling: os,
        guard_symbols: cfg.guard_symbols,
        ensemble_mean: cfg.dc + cfg.scale * mean_x * cfg.pulse.area() / cfg.spacing,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmissibilityReport {
    pub min_value: f64,
    /// Time average over the central window.
    pub avg_power: f64,
    /// Analytic mean of the ensemble the trace was drawn from.
    pub ensemble_power: f64,
    pub peak_value: f64,
    /// Bound on what symbols beyond the guards could add to a central sample.
    pub guard_truncation_bound: f64,
    pub nonnegative: bool,
    pub power_ok: bool,
    pub peak_ok: bool,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.nonnegative && self.power_ok && self.peak_ok
    }
}

/// Empirical nonnegativity, average and peak checks.
///
/// The average-power test uses the ensemble mean, which is what the
/// constraint restricts; the trace's own time average is reported alongside.
/// Values between grid points are not examined.
pub fn check_admissibility(trace: &WaveformTrace, constraint: PowerConstraint) -> AdmissibilityReport {
    let window = &trace.samples[trace.central()];
    let (mut lo, mut hi, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for &x in window {
        lo = lo.min(x);
        hi = hi.max(x);
        sum += x;
    }
    let avg = sum / window.len() as f64;
    let env = trace.pulse.decay();
    let max_sym = trace.symbols.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let g = trace.guard_symbols as f64;
    let guard_truncation_bound = if env.order < 2 {
        f64::INFINITY
    } else {
        2.0 * trace.scale.abs() * max_sym * env.coeff / (trace.ts * trace.ts * (g - 1.0))
    };
    let power_ok = constraint.average().is_none_or(|e| trace.ensemble_mean <= e * (1.0 + POWER_RTOL));
    let peak_ok = constraint.peak().is_none_or(|a| hi <= a * (1.0 + POWER_RTOL));
    AdmissibilityReport {
        min_value: lo,
        avg_power: avg,
        ensemble_power: trace.ensemble_mean,
        peak_value: hi,
        guard_truncation_bound,
        nonnegative: lo >= -NONNEG_TOL,
        power_ok,
        peak_ok,
    }
}

/// Time-averaged power pooled over independent realizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PooledPower {
    pub mean: f64,
    /// Standard error across realizations.
    pub std_error: f64,
    pub realizations: usize,
}

/// Runs `realizations` traces with seeds `seed, seed+1, …` and averages
/// their central-window power.
pub fn pooled_average_power(cfg: &WaveformConfig, realizations: usize) -> Result<PooledPower> {
    if realizations < 2 {
        return Err(Error::InvalidParameter("need at least two realizations".into()));
    }
    let mut avgs = Vec::with_capacity(realizations);
    for k in 0..realizations {
        let t = gen_waveform(&cfg.clone().with_seed(cfg.seed.wrapping_add(k as u64)))?;
        let w = &t.samples[t.central()];
        avgs.push(w.iter().sum::<f64>() / w.len() as f64);
    }
    let n = realizations as f64;
    let mean = avgs.iter().sum::<f64>() / n;
    let var = avgs.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / (n - 1.0);
    Ok(PooledPower { mean, std_error: (var / n).sqrt(), realizations })
}

/// `max |x(iTₛ) − (Xᵢ + dc)|` over the central symbols.
pub fn isi_free_sampling_check(trace: &WaveformTrace) -> f64 {
    trace
        .central_symbols()
        .map(|i| (trace.samples[i * trace.oversampling] - (trace.symbols[i] + trace.dc_bias)).abs())
        .fold(0.0, f64::max)
}

/// Rate of the discrete channel seen by a direct-sampling receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalentChannel {
    /// Per-symbol estimate, nats.
    pub mi: MiResult,
    /// Symbols per second per Hz of bandwidth, `1/(Tₛ·W)`.
    pub symbols_per_hz: f64,
    /// Spectral efficiency in bit/s/Hz.
    pub rate: f64,
}

/// Samples the noiseless trace at `iTₛ`, removes the DC, adds i.i.d. unit
/// Gaussian noise and estimates the MI with the symbol law's output density.
pub fn equivalent_channel_mi(cfg: &WaveformConfig) -> Result<EquivalentChannel> {
    if cfg.symbol_offset != 0.0 {
        return Err(Error::InvalidParameter("equivalent channel needs unshifted symbols".into()));
    }
    let trace = gen_waveform(cfg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
    let outputs: Vec<f64> = trace
        .central_symbols()
        .map(|i| {
            let z: f64 = StandardNormal.sample(&mut rng);
            trace.samples[i * trace.oversampling] - trace.dc_bias + z
        })
        .collect();
    let mi = mc_mi_from_outputs(&cfg.dist, 1.0, &outputs)?;
    let symbols_per_hz = 1.0 / (cfg.spacing * cfg.pulse.bandwidth());
    Ok(EquivalentChannel { mi, symbols_per_hz, rate: mi.bits() * symbols_per_hz })
}

/// A nonnegative symbol block whose sinc-interpolated waveform goes negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counterexample {
    /// Seed of the random sequence, `None` for the single-pulse case.
    pub seed: Option<u64>,
    pub min_value: f64,
    /// Time of the minimum relative to the first symbol.
    pub time: f64,
}

fn sinc_config(n_symbols: usize, seed: u64) -> WaveformConfig {
    let p = Pulse::sinc(1.0);
    WaveformConfig::new(p, SymbolDistribution::Exponential { mean: 1.0 }, p.nyquist_period(), n_symbols, seed)
        .with_oversampling(MIN_OVERSAMPLING)
}

fn trace_minimum(trace: &WaveformTrace) -> (f64, f64) {
    let r = trace.central();
    let start = r.start;
    trace.samples[r].iter().enumerate().fold((f64::INFINITY, 0.0), |(m, t), (j, &x)| {
        if x < m {
            (x, (start + j) as f64 * trace.dt)
        } else {
            (m, t)
        }
    })
}

/// One unit symbol among zeros: the sinc side lobes dip to about −0.217.
pub fn sinc_single_pulse() -> Result<Counterexample> {
    let cfg = sinc_config(65, 0);
    let mut symbols = vec![0.0; cfg.n_symbols + 2 * cfg.guard_symbols];
    let mid = symbols.len() / 2;
    symbols[mid] = 1.0;
    let t = gen_waveform_from_symbols(&cfg, symbols)?;
    let (min_value, time) = trace_minimum(&t);
    Ok(Counterexample { seed: None, min_value, time })
}

/// Searches i.i.d. exponential symbol blocks for a negative sinc-interpolated
/// excursion; returns the first seed that produces one.
pub fn search_sinc_counterexample(seeds: Range<u64>, n_symbols: usize) -> Result<Option<Counterexample>> {
    for seed in seeds {
        let t = gen_waveform(&sinc_config(n_symbols, seed))?;
        let (min_value, time) = trace_minimum(&t);
        if min_value < -NONNEG_TOL {
            return Ok(Some(Counterexample { seed: Some(seed), min_value, time }));
        }
    }
    Ok(None)
}
