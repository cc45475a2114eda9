use bloic::bounds::{
    self, lb_exp_s2, lb_ifs_dc_fixed, lb_ifs_s2, lb_te_s2, snr_from_db, ub_ap_1, ub_ap_2, BoundId, BoundParams,
};
use bloic::cli::{format_sig, Grid};
use bloic::distributions::{mean_fraction, nu_from_papr, solve_mu, SymbolDistribution};
use bloic::mi::{mi_geometric, DiscreteInput};
use bloic::numeric::quad::{integrate_with_breaks, uniform_breaks};
use bloic::pulses::Pulse;
use bloic::simulate::{check_admissibility, gen_waveform, gen_waveform_from_symbols, WaveformConfig};
use bloic::PowerConstraint;
use proptest::prelude::*;

fn snr_db() -> impl Strategy<Value = f64> {
    -10.0f64..60.0
}

proptest! {
    #[test]
    fn mu_round_trip(target in 1e-3f64..0.4999) {
        let mu = solve_mu(target).unwrap().mu;
        prop_assert!((mean_fraction(mu) - target).abs() < 1e-10);
    }

    #[test]
    fn mean_fraction_decreasing(a in -20.0f64..20.0, d in 1e-3f64..5.0) {
        prop_assert!(mean_fraction(a + d) < mean_fraction(a));
    }

    #[test]
    fn unit_excursion_gives_nu_equal_r(r in 1e-3f64..50.0) {
        prop_assert!((nu_from_papr(r, 1.0).unwrap() - r).abs() < 1e-12 * r);
    }

    #[test]
    fn closed_form_bounds_increase_with_snr(db in snr_db(), step in 0.01f64..3.0) {
        let (a, b) = (snr_from_db(db), snr_from_db(db + step));
        prop_assert!(lb_exp_s2(b) > lb_exp_s2(a));
        let ifs = |m: f64| lb_ifs_s2(PowerConstraint::Average { mean: m }).unwrap();
        prop_assert!(ifs(b) > ifs(a));
        prop_assert!(ub_ap_1(b) >= ub_ap_1(a));
        prop_assert!(ub_ap_2(b).value >= ub_ap_2(a).value - 1e-9);
    }

    #[test]
    fn upper_bounds_dominate_closed_form_lower_bounds(db in -10.0f64..40.0, r in 0.5f64..20.0) {
        let snr = snr_from_db(db);
        let ub = ub_ap_1(snr).min(ub_ap_2(snr).value);
        prop_assert!(lb_exp_s2(snr) <= ub);
        let ifs = lb_ifs_s2(PowerConstraint::Average { mean: snr }).unwrap();
        prop_assert!(ifs <= ub);
        prop_assert!(lb_te_s2(r, snr).unwrap() <= ub);
    }

    #[test]
    fn papr_bound_below_ap_and_increasing_in_r(db in snr_db(), r in 0.5f64..30.0, dr in 0.01f64..5.0) {
        let snr = snr_from_db(db);
        let a = lb_te_s2(r, snr).unwrap();
        let b = lb_te_s2(r + dr, snr).unwrap();
        prop_assert!(b >= a - 1e-12);
        prop_assert!(b <= lb_exp_s2(snr) * (1.0 + 1e-12));
    }

    #[test]
    fn dc_aided_pre_log_ordering(db in snr_db(), beta in 0.01f64..1.0, s in 1.0f64..4.0) {
        // Larger excursion costs power; it can never help.
        let c = PowerConstraint::Average { mean: snr_from_db(db) };
        prop_assert!(lb_ifs_dc_fixed(beta, s * 1.1, c).unwrap() <= lb_ifs_dc_fixed(beta, s, c).unwrap());
    }

    #[test]
    fn bound_names_round_trip(k in 0usize..BoundId::ALL.len()) {
        let id = BoundId::ALL[k];
        prop_assert_eq!(id.name().parse::<BoundId>().unwrap(), id);
        prop_assert_eq!(id.name().to_lowercase().parse::<BoundId>().unwrap(), id);
    }

    #[test]
    fn geometric_masses_sum_to_one(spacing in 0.05f64..20.0, mean in 1e-2f64..1e3) {
        let d = DiscreteInput::geometric(spacing, mean).unwrap();
        let total: f64 = d.probs().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(d.probs().iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn grid_points_stay_in_range(start in -20.0f64..20.0, len in 0.0f64..40.0, step in 0.01f64..5.0) {
        let g = Grid::new(start, start + len, step).unwrap();
        let p = g.points();
        prop_assert_eq!(p[0], start);
        prop_assert!(*p.last().unwrap() <= start + len + 1e-9 * step);
        prop_assert!(start + len - p.last().unwrap() < step);
    }

    #[test]
    fn csv_numbers_keep_nine_digits(x in prop::num::f64::NORMAL) {
        let back: f64 = format_sig(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-9 * x.abs());
    }

    #[test]
    fn pl_is_nyquist_at_its_spacing(beta in 0.01f64..1.0) {
        prop_assert!(Pulse::parametric_linear(beta, 1.0).unwrap().verify_nyquist());
    }

    #[test]
    fn spectrum_at_zero_is_area(beta in 0.01f64..1.0, w in 0.1f64..10.0) {
        for p in [Pulse::s2(w), Pulse::spectral_cosine(w), Pulse::parametric_linear(beta, w).unwrap()] {
            prop_assert!((p.eval_freq(0.0) - p.area()).abs() < 1e-12 * p.area());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parseval(beta in 0.05f64..1.0) {
        for p in [Pulse::s2(1.0), Pulse::spectral_cosine(1.0), Pulse::parametric_linear(beta, 1.0).unwrap()] {
            // Break at the spectral kinks so the adaptive rule sees smooth pieces.
            let e = p.flat_band_edge().unwrap_or(0.5);
            let fb = [-1.0, -e, 0.0, e, 1.0];
            let freq = integrate_with_breaks(&|f: f64| p.eval_freq(f).powi(2), &fb, 1e-15, 1e-13, 1 << 16).value;
            // Time-domain energy up to |t| = 400 plus an x⁻⁴ tail estimate.
            let t_max = 400.0;
            let breaks = uniform_breaks(-t_max, t_max, 0.5);
            let q = integrate_with_breaks(&|t: f64| p.eval_time(t).powi(2), &breaks, 1e-14, 1e-12, 1 << 16);
            let env = p.decay();
            let tail = 2.0 * env.coeff * env.coeff / (3.0 * t_max.powi(3));
            prop_assert!((q.value - freq).abs() <= tail + 1e-8, "{} {} {}", p, q.value, freq);
        }
    }

    #[test]
    fn excursion_decreases_with_roll_off(b in 0.05f64..0.9) {
        let s = |beta: f64| bounds::pl_excursion(beta).unwrap();
        prop_assert!(s(b + 0.1) < s(b));
        prop_assert!(s(b) >= 1.0);
    }

    #[test]
    fn geometric_mi_increases_with_power(db in -8.0f64..15.0, spacing in 0.5f64..8.0) {
        let a = mi_geometric(spacing, snr_from_db(db), 1.0).unwrap().mi;
        let b = mi_geometric(spacing, snr_from_db(db + 1.0), 1.0).unwrap().mi;
        prop_assert!(b > a);
    }

    #[test]
    fn optimized_geometric_beats_exponential_ifs(db in -8.0f64..10.0) {
        let p = BoundParams::default();
        let snr = snr_from_db(db);
        let g = bounds::evaluate(BoundId::GeomS2IFS, snr, &p).unwrap();
        prop_assert!(g >= bounds::evaluate(BoundId::ExpS2IFS, snr, &p).unwrap());
        prop_assert!(g <= ub_ap_1(snr).min(ub_ap_2(snr).value));
    }

    #[test]
    fn s2_waveforms_nonnegative(seed in any::<u64>(), mean in 0.1f64..10.0) {
        let cfg = WaveformConfig::s2_nyquist_rate(SymbolDistribution::Exponential { mean }, 256, seed);
        let rep = check_admissibility(&gen_waveform(&cfg).unwrap(), PowerConstraint::Average { mean });
        prop_assert!(rep.nonnegative && rep.power_ok, "{:?}", rep);
    }

    #[test]
    fn papr_construction_admissible(seed in any::<u64>(), r in 2.05f64..8.0, mean in 0.1f64..10.0) {
        let cfg = WaveformConfig::papr_construction(Pulse::s2(1.0), 1.0, r, mean, 256, seed).unwrap();
        let rep = check_admissibility(&gen_waveform(&cfg).unwrap(), PowerConstraint::Papr { mean, ratio: r });
        prop_assert!(rep.admissible(), "{:?}", rep);
        prop_assert!((rep.ensemble_power / mean - 1.0).abs() < 1e-9);
    }

    #[test]
    fn dc_aided_waveforms_nonnegative(seed in any::<u64>(), beta in 0.05f64..1.0) {
        let s = bounds::pl_excursion(beta).unwrap();
        let cfg = WaveformConfig::pl_dc_aided(beta, s, 2.0, 256, seed).unwrap();
        let rep = check_admissibility(&gen_waveform(&cfg).unwrap(), PowerConstraint::Peak { peak: 2.0 * s });
        prop_assert!(rep.admissible(), "{:?}", rep);
    }

    #[test]
    fn waveform_is_linear_in_symbols(seed in any::<u64>(), a in -3.0f64..3.0) {
        let cfg = WaveformConfig::s2_nyquist_rate(SymbolDistribution::Exponential { mean: 1.0 }, 64, seed)
            .with_oversampling(16);
        let t = gen_waveform(&cfg).unwrap();
        let scaled: Vec<f64> = t.symbols.iter().map(|x| a * x).collect();
        let u = gen_waveform_from_symbols(&cfg, scaled).unwrap();
        for (x, y) in t.samples.iter().zip(&u.samples) {
            prop_assert!((a * x - y).abs() < 1e-12 * (1.0 + x.abs()));
        }
    }
}

#[test]
fn average_power_error_shrinks_like_inverse_sqrt_n() {
    let errs: Vec<f64> = [1_000usize, 10_000, 100_000]
        .iter()
        .map(|&n| {
            let cfg = WaveformConfig::s2_nyquist_rate(SymbolDistribution::Exponential { mean: 1.0 }, n, 7)
                .with_oversampling(16);
            bloic::simulate::pooled_average_power(&cfg, 12).unwrap().std_error
        })
        .collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio / 10f64.sqrt()).ln().abs() < 2f64.ln(), "{errs:?}");
    }
}
