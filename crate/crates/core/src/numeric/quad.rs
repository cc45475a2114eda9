//! Adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

/// Kronrod abscissae on [-1, 1], positive half, outermost first. Every odd
/// index is also a Gauss node.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Result of a quadrature run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Sum of per-panel |Kronrod - Gauss| differences.
    pub error: f64,
    pub panels: usize,
}

/// Single 15-point Kronrod panel with its embedded 7-point Gauss estimate.
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Adaptive integration over the panels delimited by `breaks` (sorted,
/// at least two entries). The panel with the largest error estimate is
/// bisected until the total error falls below `max(abs_tol, rel_tol·|I|)`
/// or `max_panels` is reached.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Quadrature {
    let mut panels: Vec<Panel> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let (value, error) = gk15(f, w[0], w[1]);
            Panel { a: w[0], b: w[1], value, error }
        })
        .collect();
    if panels.is_empty() {
        return Quadrature { value: 0.0, error: 0.0, panels: 0 };
    }
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= abs_tol.max(rel_tol * value.abs()) || panels.len() >= max_panels {
            return Quadrature { value, error, panels: panels.len() };
        }
        let (worst, _) = panels.iter().enumerate().max_by(|x, y| x.1.error.total_cmp(&y.1.error)).expect("nonempty");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // Panel cannot be split further in floating point.
            panels.push(Panel { error: 0.0, ..p });
            continue;
        }
        let (v1, e1) = gk15(f, p.a, mid);
        let (v2, e2) = gk15(f, mid, p.b);
        panels.push(Panel { a: p.a, b: mid, value: v1, error: e1 });
        panels.push(Panel { a: mid, b: p.b, value: v2, error: e2 });
    }
}

/// Adaptive integration of `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Quadrature {
    integrate_with_breaks(f, &[a, b], abs_tol, rel_tol, 4096)
}

/// Evenly spaced breakpoints covering `[a, b]` with panels no wider than `width`.
pub fn uniform_breaks(a: f64, b: f64, width: f64) -> Vec<f64> {
    let n = (((b - a) / width).ceil() as usize).max(1);
    (0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect()
}
