//! One-dimensional maximization and root bracketing.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

fn finite_or_neg_inf(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Golden-section search for the maximum of `f` on `[a, b]`, stopping once
/// the bracket is narrower than `x_tol`. Returns `(x_max, f_max)`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, x_tol: f64) -> (f64, f64) {
    let eval = |x: f64| finite_or_neg_inf(f(x));
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1);
    let mut f2 = eval(x2);
    let mut iters = 0;
    while (b - a).abs() > x_tol && iters < 200 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1);
        }
        iters += 1;
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Spacing of the coarse grid seeding [`grid_golden_max`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSpacing {
    Linear,
    Logarithmic,
}

/// Outcome of a grid-seeded maximization.
#[derive(Debug, Clone, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
    /// The coarse grid samples `(x, f(x))`, in increasing `x`.
    pub grid: Vec<(f64, f64)>,
}

/// Grid points spanning `[a, b]` inclusive.
pub fn grid(a: f64, b: f64, n: usize, spacing: GridSpacing) -> Vec<f64> {
    assert!(n >= 2 && b > a);
    (0..n)
        .map(|k| {
            let s = k as f64 / (n - 1) as f64;
            match spacing {
                GridSpacing::Linear => a + (b - a) * s,
                GridSpacing::Logarithmic => (a.ln() + (b.ln() - a.ln()) * s).exp(),
            }
        })
        .collect()
}

/// Maximizes `f` on `[a, b]`: a coarse grid of `n` points locates the best
/// sample, then golden-section refines inside its neighbouring cell pair.
/// The returned value is never worse than the best grid sample.
pub fn grid_golden_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize, spacing: GridSpacing, x_tol: f64) -> Maximum {
    let xs = grid(a, b, n, spacing);
    let samples: Vec<(f64, f64)> = xs.iter().map(|&x| (x, finite_or_neg_inf(f(x)))).collect();
    let (k, &(mut arg, mut value)) =
        samples.iter().enumerate().max_by(|p, q| p.1 .1.total_cmp(&q.1 .1)).expect("grid is nonempty");
    if value.is_finite() {
        let lo = xs[k.saturating_sub(1)];
        let hi = xs[(k + 1).min(n - 1)];
        let (x, fx) = golden_max(&f, lo, hi, x_tol);
        if fx > value {
            arg = x;
            value = fx;
        }
    }
    Maximum { arg, value, grid: samples }
}

/// Bisection for a root of `f` in `[lo, hi]` where `f(lo)` and `f(hi)` have
/// opposite signs. Stops when `|f| <= f_tol` or the bracket collapses.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, f_tol: f64) -> Option<f64> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() || !f_lo.is_finite() || !f_hi.is_finite() {
        return None;
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Some(mid);
        }
        let f_mid = f(mid);
        if f_mid.abs() <= f_tol {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}
