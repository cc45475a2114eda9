//! Command implementations behind the `bloic` binary.
//!
//! Every command returns a [`Table`] (or a [`ValidationReport`]) so output
//! formatting stays in one place and tests can inspect results directly.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bounds::{
    self, asymptotic_gap, asymptotic_gap_limit, eta_crossover, eta_curve, lb_ifs_dc, lb_ifs_dc_fixed, pl_excursion,
    snr_from_db, BoundId, BoundParams, ExcursionTable, PulseConstants,
};
use crate::constraint::PowerConstraint;
use crate::distributions::SymbolDistribution;
use crate::error::{Error, Result};
use crate::mi::{epi_lower, mc_mi_estimate};
use crate::pulses::{Excursion, Pulse, PulseFamily};
use crate::simulate::{
    check_admissibility, gen_waveform, isi_free_sampling_check, pooled_average_power, search_sinc_counterexample,
    WaveformConfig,
};

/// Snapshot of every option a command may read.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// `None` means "use the command's own default grid".
    pub grid: Option<Grid>,
    pub r: f64,
    pub a0_db: f64,
    pub pulse: PulseFamily,
    pub beta: Option<f64>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { grid: None, r: 2.5, a0_db: 10.0, pulse: PulseFamily::S2, beta: None, seed: 1 }
    }
}

impl RunConfig {
    pub fn grid_or(&self, default: Grid) -> Grid {
        self.grid.unwrap_or(default)
    }

    pub fn params(&self) -> Result<BoundParams> {
        let pulse = self.pulse.build(self.beta, 1.0)?;
        let constants = match pulse.kind() {
            crate::pulses::PulseKind::S2 => PulseConstants::S2,
            crate::pulses::PulseKind::SpectralCosine => PulseConstants::SC,
            _ => PulseConstants::from_pulse(&pulse)?,
        };
        Ok(BoundParams { r: self.r, a0: snr_from_db(self.a0_db), pulse: constants })
    }
}

/// Inclusive dB grid `start, start+step, …, ≤ stop`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub const DEFAULT: Grid = Grid { start: -8.0, stop: 22.0, step: 0.25 };

    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !start.is_finite() || !stop.is_finite() {
            return Err(Error::InvalidParameter(format!("grid step must be positive, got {step}")));
        }
        if stop < start {
            return Err(Error::InvalidParameter(format!("empty grid [{start}, {stop}]")));
        }
        Ok(Grid { start, stop, step })
    }

    /// Points computed by index so round-off never drops the endpoint.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

/// CSV-ready result: `#` comments, one header row, numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(header: Vec<String>) -> Self {
        Table { comments: vec![format!("generator: bloic {}", env!("CARGO_PKG_VERSION"))], header, rows: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for c in &self.comments {
            writeln!(out, "# {c}")?;
        }
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_sig(x)).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ASCII output")
    }
}

/// Nine significant digits; fixed notation in `[1e-4, 1e9)`, otherwise
/// scientific.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..9).contains(&mag) {
        let decimals = (8 - mag).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.8e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
}

impl FigureId {
    pub const ALL: [FigureId; 8] = [
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
        FigureId::Fig8,
        FigureId::Fig9,
    ];

    pub fn title(self) -> &'static str {
        match self {
            FigureId::Fig2 => "upper and lower bounds, average-power constraint",
            FigureId::Fig3 => "average-power lower bounds, moderate SNR",
            FigureId::Fig4 => "average-power lower bounds, low SNR",
            FigureId::Fig5 => "DC-aided ISI-free rates with the PL pulse at fixed roll-off",
            FigureId::Fig6 => "peak-power lower bounds",
            FigureId::Fig7 => "PAPR lower bounds at fixed r",
            FigureId::Fig8 => "Nyquist-rate PAPR bounds over r, plus the average-and-peak curve",
            FigureId::Fig9 => "PAPR efficiency eta versus r for the s2 and sc pulses",
        }
    }

    /// Grid used when no grid flag is given; fig9's axis is `r`.
    pub fn default_grid(self) -> Grid {
        match self {
            FigureId::Fig3 => Grid { start: 0.0, stop: 15.0, step: 0.25 },
            FigureId::Fig4 => Grid { start: -10.0, stop: 0.0, step: 0.25 },
            FigureId::Fig9 => Grid { start: 1.0, stop: 8.0, step: 0.05 },
            _ => Grid::DEFAULT,
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = FigureId::ALL.iter().position(|x| x == self).expect("listed") + 2;
        write!(f, "fig{n}")
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .iter()
            .copied()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

fn snr_table(axis: &str, grid: &[f64]) -> Table {
    let mut t = Table::new(vec![axis.to_string()]);
    t.comments.push(format!("{axis}: 10*log10 of the ratio to the noise standard deviation"));
    t.comments.push("values: bit/s/Hz".into());
    t.rows = grid.iter().map(|&x| vec![x]).collect();
    t
}

fn push_column(t: &mut Table, name: String, comment: String, values: Vec<f64>) {
    t.comments.push(format!("column {name}: {comment}"));
    if values.iter().any(|v| v.is_nan()) {
        t.comments.push(format!("column {name}: nan marks parameters outside the bound's regime"));
    }
    t.header.push(name);
    for (row, v) in t.rows.iter_mut().zip(values) {
        row.push(v);
    }
}

/// Pointwise evaluation with out-of-regime points reported as `NaN`.
fn eval_column(id: BoundId, grid: &[f64], params: &BoundParams) -> Vec<f64> {
    grid.par_iter().map(|&db| bounds::evaluate(id, snr_from_db(db), params).unwrap_or(f64::NAN)).collect()
}

fn push_bound(t: &mut Table, id: BoundId, grid: &[f64], params: &BoundParams, constraint: &str) {
    let mut comment = format!("{} [{constraint}]", id.description());
    if id == BoundId::UB1 && grid.iter().any(|&db| bounds::ub_ap_1_raw(snr_from_db(db)) < 0.0) {
        comment.push_str("; clamped at 0 where the closed form is negative");
    }
    if id == BoundId::MCOICAsymptote && grid.iter().any(|&db| db <= 0.0) {
        comment.push_str("; points at snr_dB <= 0 lie outside its regime");
    }
    push_column(t, id.name().to_string(), comment, eval_column(id, grid, params));
}

/// Column names of a figure, in order (the axis column first).
pub fn figure_columns(fig: FigureId) -> Vec<String> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    match fig {
        FigureId::Fig2 => s(&["snr_dB", "ExpS2", "ExpS2IFS", "UnifPLIFS", "GeomS2IFS", "UB1", "UB2", "MCOICAsymptote"]),
        FigureId::Fig3 | FigureId::Fig4 => s(&["snr_dB", "ExpS2", "ExpS2IFS", "UnifPLIFS", "GeomS2IFS"]),
        FigureId::Fig5 => {
            let mut v = s(&["snr_dB"]);
            v.extend(FIG5_BETAS.iter().map(|b| format!("UnifPLIFS_beta{b}")));
            v
        }
        FigureId::Fig6 => s(&["pnr_dB", "UnifCos", "UnifS2IFS", "UnifPLIFS"]),
        FigureId::Fig7 => s(&["snr_dB", "TES2", "TES2IFS", "TEPLIFS"]),
        FigureId::Fig8 => {
            let mut v = s(&["snr_dB"]);
            v.extend(FIG8_RATIOS.iter().map(|r| format!("TES2_r{r}")));
            v.extend(s(&["ExpS2", "APPP"]));
            v
        }
        FigureId::Fig9 => s(&["r", "eta_s2", "eta_sc"]),
    }
}

pub const FIG5_BETAS: [f64; 6] = [0.05, 0.1, 0.2, 0.4, 0.7, 1.0];
pub const FIG8_RATIOS: [f64; 5] = [2.0, 2.5, 3.0, 4.0, 6.0];

/// Data behind one figure.
pub fn cmd_figure(fig: FigureId, cfg: &RunConfig) -> Result<Table> {
    let grid = cfg.grid_or(fig.default_grid());
    let pts = grid.points();
    let mut params = cfg.params()?;
    let mut t = match fig {
        FigureId::Fig6 => snr_table("pnr_dB", &pts),
        FigureId::Fig9 => {
            let mut t = Table::new(vec!["r".into()]);
            t.comments.push("r: peak-to-average power ratio".into());
            t.rows = pts.iter().map(|&x| vec![x]).collect();
            t
        }
        _ => snr_table("snr_dB", &pts),
    };
    t.comments.insert(1, format!("figure {fig}: {}", fig.title()));
    match fig {
        FigureId::Fig2 => {
            for id in [BoundId::ExpS2, BoundId::ExpS2IFS, BoundId::UnifPLIFS, BoundId::GeomS2IFS] {
                push_bound(&mut t, id, &pts, &params, "AP");
            }
            for id in [BoundId::UB1, BoundId::UB2, BoundId::MCOICAsymptote] {
                push_bound(&mut t, id, &pts, &params, "AP");
            }
        }
        FigureId::Fig3 | FigureId::Fig4 => {
            for id in [BoundId::ExpS2, BoundId::ExpS2IFS, BoundId::UnifPLIFS, BoundId::GeomS2IFS] {
                push_bound(&mut t, id, &pts, &params, "AP");
            }
        }
        FigureId::Fig5 => {
            for &beta in &FIG5_BETAS {
                let s = pl_excursion(beta)?;
                let values = pts
                    .par_iter()
                    .map(|&db| {
                        lb_ifs_dc_fixed(beta, s, PowerConstraint::Average { mean: snr_from_db(db) }).unwrap_or(f64::NAN)
                    })
                    .collect();
                push_column(
                    &mut t,
                    format!("UnifPLIFS_beta{beta}"),
                    format!(
                        "DC-aided ISI-free PAM, PL pulse at roll-off {beta} (S_beta={}), uniform symbols [AP]",
                        format_sig(s)
                    ),
                    values,
                );
            }
        }
        FigureId::Fig6 => {
            push_bound(&mut t, BoundId::UnifCos, &pts, &params, "PP");
            push_bound(&mut t, BoundId::UnifS2IFS, &pts, &params, "PP");
            let table = ExcursionTable::shared();
            let values = pts
                .par_iter()
                .map(|&db| {
                    lb_ifs_dc(table, PowerConstraint::Peak { peak: snr_from_db(db) }).map_or(f64::NAN, |d| d.rate)
                })
                .collect();
            push_column(
                &mut t,
                "UnifPLIFS".into(),
                "lower bound; DC-aided ISI-free PAM with PL pulse, uniform symbols, sup over roll-off in [0.01,1] [PP]"
                    .into(),
                values,
            );
        }
        FigureId::Fig7 => {
            let label = format!("PAPR, r={}", params.r);
            for id in [BoundId::TES2, BoundId::TES2IFS, BoundId::TEPLIFS] {
                push_bound(&mut t, id, &pts, &params, &label);
            }
        }
        FigureId::Fig8 => {
            for &r in &FIG8_RATIOS {
                params.r = r;
                let values = eval_column(BoundId::TES2, &pts, &params);
                push_column(
                    &mut t,
                    format!("TES2_r{r}"),
                    format!("{} [PAPR, r={r}]", BoundId::TES2.description()),
                    values,
                );
            }
            push_bound(&mut t, BoundId::ExpS2, &pts, &params, "AP, the r -> infinity limit");
            push_bound(&mut t, BoundId::APPP, &pts, &params, &format!("AP+PP, A0={} dB", cfg.a0_db));
        }
        FigureId::Fig9 => {
            push_column(
                &mut t,
                "eta_s2".into(),
                "eta for the s2 pulse".into(),
                eta_curve(PulseConstants::S2, &pts).into_iter().map(|p| p.1).collect(),
            );
            push_column(
                &mut t,
                "eta_sc".into(),
                "eta for the sc pulse".into(),
                eta_curve(PulseConstants::SC, &pts).into_iter().map(|p| p.1).collect(),
            );
            if let Some(x) = eta_crossover(PulseConstants::S2, PulseConstants::SC, 2.0, 4.0) {
                t.comments.push(format!("crossover: eta_s2 = eta_sc at r = {}", format_sig(x)));
            }
        }
    }
    Ok(t)
}

/// One or more named bounds over the grid.
pub fn cmd_curve(ids: &[BoundId], cfg: &RunConfig) -> Result<Table> {
    if ids.is_empty() {
        return Err(Error::InvalidParameter("no bound named".into()));
    }
    let pts = cfg.grid_or(Grid::DEFAULT).points();
    let params = cfg.params()?;
    let mut t = snr_table("snr_dB", &pts);
    for &id in ids {
        let c = bounds::curve(id, &pts, &params)?;
        let mut comment = format!("{} [{}]", c.meta.description, c.meta.constraint);
        if c.meta.clamped {
            comment.push_str("; clamped at 0 where the closed form is negative");
        }
        if c.meta.asymptotic_only {
            comment.push_str("; points at snr_dB <= 0 lie outside its regime");
        }
        push_column(&mut t, id.name().into(), comment, c.points.into_iter().map(|p| p.1).collect());
    }
    Ok(t)
}

/// A single bound value at one SNR (dB).
pub fn cmd_bound(id: BoundId, snr_db: f64, cfg: &RunConfig) -> Result<f64> {
    bounds::evaluate(id, snr_from_db(snr_db), &cfg.params()?)
}

/// Metrics of the selected pulse as `quantity,value` rows.
pub fn cmd_pulse(cfg: &RunConfig) -> Result<(Pulse, Vec<(String, f64)>)> {
    let pulse = cfg.pulse.build(cfg.beta, 1.0)?;
    let mut rows = vec![
        ("nyquist_period".to_string(), pulse.nyquist_period()),
        ("area".to_string(), pulse.area()),
        ("gain_metric".to_string(), pulse.gain_metric()?),
    ];
    match pulse.native_excursion()? {
        Excursion::Finite { value, argmax, tail_bound, .. } => {
            rows.push(("excursion".into(), value));
            rows.push(("excursion_argmax".into(), argmax));
            rows.push(("excursion_tail_bound".into(), tail_bound));
        }
        Excursion::Divergent => rows.push(("excursion".into(), f64::INFINITY)),
    }
    if let Some(n) = pulse.isi_free_spacing() {
        rows.push(("isi_free_period".into(), n.period));
        rows.push(("isi_free_scale".into(), n.scale));
    }
    Ok((pulse, rows))
}

/// Gap between the first upper bound and the exponential lower bound at
/// `snr_db`, plus the analytic limits.
pub fn cmd_gap(snr_db: f64) -> Table {
    let g = asymptotic_gap(snr_from_db(snr_db));
    let lim = asymptotic_gap_limit();
    let mut t =
        Table::new(vec!["snr_dB".into(), "gap_bits".into(), "gap_dB".into(), "limit_bits".into(), "limit_dB".into()]);
    t.comments.push("gap between UB1 and ExpS2; limits are 2*log2(e) and 10*log10(e)".into());
    t.rows.push(vec![snr_db, g.bits, g.db, lim.bits, lim.db]);
    t
}

/// η over an `r` grid for s2 and sc.
pub fn cmd_eta(cfg: &RunConfig) -> Result<Table> {
    cmd_figure(FigureId::Fig9, cfg)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Pulses,
    Appendices,
    Epi,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pulses" => Ok(Suite::Pulses),
            "appendices" => Ok(Suite::Appendices),
            "epi" => Ok(Suite::Epi),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidParameter(format!("unknown suite `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    /// Human-readable acceptance rule.
    pub rule: String,
    pub pass: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: measured {} expected {} ({})",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            format_sig(self.measured),
            format_sig(self.expected),
            self.rule
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn close(&mut self, name: &str, measured: f64, expected: f64, tol: f64) {
        self.checks.push(Check {
            name: name.into(),
            measured,
            expected,
            rule: format!("|diff| <= {tol:e}"),
            pass: (measured - expected).abs() <= tol,
        });
    }

    fn at_most(&mut self, name: &str, measured: f64, limit: f64) {
        self.checks.push(Check {
            name: name.into(),
            measured,
            expected: limit,
            rule: "measured <= expected".into(),
            pass: measured <= limit,
        });
    }

    fn flag(&mut self, name: &str, ok: bool, rule: &str) {
        let v = if ok { 1.0 } else { 0.0 };
        self.checks.push(Check { name: name.into(), measured: v, expected: 1.0, rule: rule.into(), pass: ok });
    }
}

/// Runs the selected invariant suites.
pub fn cmd_validate(suite: Suite, seed: u64) -> Result<ValidationReport> {
    let mut rep = ValidationReport::default();
    if matches!(suite, Suite::Pulses | Suite::All) {
        validate_pulses(&mut rep)?;
    }
    if matches!(suite, Suite::Appendices | Suite::All) {
        validate_appendices(&mut rep, seed)?;
    }
    if matches!(suite, Suite::Epi | Suite::All) {
        validate_epi(&mut rep, seed)?;
    }
    Ok(rep)
}

fn validate_pulses(rep: &mut ValidationReport) -> Result<()> {
    let sinc = Pulse::sinc(1.0);
    let s2 = Pulse::s2(1.0);
    let sc = Pulse::spectral_cosine(1.0);
    rep.close("gain sinc", sinc.gain_metric()?, 1.0, 1e-4);
    rep.close("gain s2", s2.gain_metric()?, (-2.0f64).exp(), 1e-4);
    rep.close("gain sc", sc.gain_metric()?, 0.25, 1e-4);
    rep.close("excursion s2", s2.native_excursion()?.value().unwrap_or(f64::NAN), 1.0, 1e-4);
    rep.close("excursion sc", sc.native_excursion()?.value().unwrap_or(f64::NAN), 4.0 / PI, 1e-4);
    rep.flag("excursion sinc divergent", sinc.native_excursion()?.is_divergent(), "flagged divergent");
    rep.flag("nyquist s2 at 1/W with scale 2", s2.verify_nyquist(), "zero crossings at nonzero multiples");
    let pl = Pulse::parametric_linear(0.5, 1.0)?;
    rep.flag("nyquist pl(0.5) at (1+beta)/2W", pl.verify_nyquist(), "zero crossings at nonzero multiples");
    rep.close("excursion pl(1) equals s2", pl_excursion(1.0)?, 1.0, 1e-4);
    Ok(())
}

/// Realizations pooled for the power and mean identities.
pub const POOLED_REALIZATIONS: usize = 16;
pub const POOLED_SYMBOLS: usize = 10_000;

fn validate_appendices(rep: &mut ValidationReport, seed: u64) -> Result<()> {
    let mean = 2.0;
    let cfg = WaveformConfig::s2_nyquist_rate(SymbolDistribution::Exponential { mean }, POOLED_SYMBOLS, seed)
        .with_oversampling(16);
    let p = pooled_average_power(&cfg, POOLED_REALIZATIONS)?;
    rep.close("s2 nyquist-rate average power / E", p.mean / mean, 1.0, 0.01);
    let t = gen_waveform(&cfg)?;
    let a = check_admissibility(&t, PowerConstraint::Average { mean });
    rep.at_most("s2 nyquist-rate nonnegativity (-min)", -a.min_value, crate::simulate::NONNEG_TOL);

    let beta = 0.3;
    let s = pl_excursion(beta)?;
    let width = 2.0;
    let cfg = WaveformConfig::pl_dc_aided(beta, s, width, POOLED_SYMBOLS, seed)?.with_oversampling(16);
    let p = pooled_average_power(&cfg, POOLED_REALIZATIONS)?;
    rep.close("dc-aided pl mean / (S*L/2)", p.mean / (0.5 * s * width), 1.0, 0.01);
    let t = gen_waveform(&cfg.clone().with_oversampling(64).with_seed(seed))?;
    let a = check_admissibility(&t, PowerConstraint::Peak { peak: s * width });
    rep.at_most("dc-aided pl nonnegativity (-min)", -a.min_value, crate::simulate::NONNEG_TOL);
    rep.at_most("dc-aided pl sampling identity", isi_free_sampling_check(&t), 1e-9);

    let cfg = WaveformConfig::s2_isi_free(SymbolDistribution::Exponential { mean: 1.0 }, 2000, seed);
    rep.at_most("s2 isi-free sampling identity", isi_free_sampling_check(&gen_waveform(&cfg)?), 1e-9);

    let (r, e) = (3.0, 1.0);
    let cfg = WaveformConfig::papr_construction(Pulse::s2(1.0), 1.0, r, e, 2000, seed)?;
    let t = gen_waveform(&cfg)?;
    let a = check_admissibility(&t, PowerConstraint::Papr { mean: e, ratio: r });
    rep.at_most("papr construction peak / (r E)", a.peak_value / (r * e), 1.0 + crate::simulate::POWER_RTOL);
    rep.close("papr construction ensemble mean / E", a.ensemble_power / e, 1.0, 1e-9);
    rep.at_most("papr construction nonnegativity (-min)", -a.min_value, crate::simulate::NONNEG_TOL);

    let found = search_sinc_counterexample(seed..seed + 100, 256)?;
    rep.flag("sinc counterexample within 100 seeds", found.is_some(), "negative excursion found");
    Ok(())
}

/// Monte Carlo samples per EPI check.
pub const EPI_SAMPLES: usize = 200_000;

fn validate_epi(rep: &mut ValidationReport, seed: u64) -> Result<()> {
    let cases = epi_cases();
    let results = cases
        .par_iter()
        .enumerate()
        .map(|(k, (name, dist))| {
            let mi = mc_mi_estimate(dist, 1.0, EPI_SAMPLES, seed.wrapping_add(k as u64))?;
            Ok((name.clone(), epi_lower(dist.entropy()?, 1.0), mi))
        })
        .collect::<Result<Vec<_>>>()?;
    for (name, lower, mi) in results {
        rep.checks.push(Check {
            name: format!("epi {name}"),
            measured: lower / LN_2,
            expected: (mi.mi + 3.0 * mi.err_estimate) / LN_2,
            rule: "EPI lower bound <= MC MI + 3 standard errors (bits)".into(),
            pass: lower <= mi.mi + 3.0 * mi.err_estimate,
        });
    }
    Ok(())
}

/// The `(label, distribution)` pairs used by the EPI suite.
pub fn epi_cases() -> Vec<(String, SymbolDistribution)> {
    let mut v = Vec::new();
    for &snr in &[1.0, 3.0, 10.0] {
        v.push((format!("exponential snr={snr}"), SymbolDistribution::Exponential { mean: snr }));
        v.push((format!("uniform snr={snr}"), SymbolDistribution::Uniform { lo: 0.0, hi: 2.0 * snr }));
        let mu = crate::distributions::solve_mu(1.0 / 2.5).expect("mu").mu;
        v.push((format!("truncated-exponential snr={snr}"), SymbolDistribution::TruncExp { support: 2.5 * snr, mu }));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_keeps_endpoint() {
        let g = Grid::new(-8.0, 22.0, 0.25).unwrap();
        let p = g.points();
        assert_eq!(p.len(), 121);
        assert_eq!(*p.last().unwrap(), 22.0);
        assert!(Grid::new(0.0, 1.0, 0.0).is_err());
        assert!(Grid::new(1.0, 0.0, 0.1).is_err());
    }

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(1.0), "1.00000000");
        assert_eq!(format_sig(-0.25), "-0.250000000");
        assert_eq!(format_sig(123456.789), "123456.789");
        assert_eq!(format_sig(1.5e-7), "1.50000000e-7");
        assert_eq!(format_sig(f64::NAN), "nan");
    }

    #[test]
    fn figure_ids_round_trip() {
        for f in FigureId::ALL {
            assert_eq!(f.to_string().parse::<FigureId>().unwrap(), f);
        }
        assert!(matches!("fig10".parse::<FigureId>(), Err(Error::UnknownFigure(_))));
    }

    #[test]
    fn fig9_crosses_once_in_window() {
        let t = cmd_figure(FigureId::Fig9, &RunConfig::default()).unwrap();
        let r = t.column("r").unwrap();
        let a = t.column("eta_s2").unwrap();
        let b = t.column("eta_sc").unwrap();
        let signs: Vec<(f64, bool)> = r
            .iter()
            .zip(a.iter().zip(&b))
            .filter(|(_, (x, y))| x.is_finite() && y.is_finite())
            .map(|(&r, (x, y))| (r, x > y))
            .collect();
        let flips: Vec<f64> = signs.windows(2).filter(|w| w[0].1 != w[1].1).map(|w| w[1].0).collect();
        assert_eq!(flips.len(), 1, "{flips:?}");
        assert!((2.6..=2.8).contains(&flips[0]));
    }

    #[test]
    fn gap_table() {
        let t = cmd_gap(60.0);
        assert!((t.column("gap_dB").unwrap()[0] - 4.343).abs() < 0.01);
        assert!((t.column("gap_bits").unwrap()[0] - 2.885).abs() < 0.01);
    }

    #[test]
    fn pulse_command_reports_metrics() {
        let (_, rows) = cmd_pulse(&RunConfig::default()).unwrap();
        let g = rows.iter().find(|r| r.0 == "gain_metric").unwrap().1;
        assert!((g - (-2.0f64).exp()).abs() < 1e-6);
        let cfg = RunConfig { pulse: PulseFamily::ParametricLinear, ..RunConfig::default() };
        assert!(cmd_pulse(&cfg).is_err());
    }
}
