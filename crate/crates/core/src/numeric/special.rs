//! Special functions used across the crate.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Normalized sinc, sin(πx)/(πx), with the removable point filled.
pub fn sinc(x: f64) -> f64 {
    let px = PI * x;
    if px.abs() < 1e-4 {
        let p2 = px * px;
        1.0 - p2 / 6.0 + p2 * p2 / 120.0
    } else {
        px.sin() / px
    }
}

/// Standard normal density.
pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// ln Φ(z) for the standard normal CDF, accurate deep in the lower tail.
pub fn ln_normal_cdf(z: f64) -> f64 {
    if z > -30.0 {
        (0.5 * libm::erfc(-z * FRAC_1_SQRT_2)).ln()
    } else {
        // Mills-ratio asymptotics: Φ(z) ≈ φ(z)/|z| · (1 - 1/z² + 3/z⁴)
        let z2 = z * z;
        -0.5 * z2 - (-z).ln() - 0.5 * (2.0 * PI).ln() + (1.0 - 1.0 / z2 + 3.0 / (z2 * z2)).ln()
    }
}

/// Φ(b) − Φ(a) for a < b, computed on the tail side that avoids cancellation.
pub fn normal_interval(a: f64, b: f64) -> f64 {
    if a > 0.0 {
        0.5 * (libm::erfc(a * FRAC_1_SQRT_2) - libm::erfc(b * FRAC_1_SQRT_2))
    } else if b < 0.0 {
        0.5 * (libm::erfc(-b * FRAC_1_SQRT_2) - libm::erfc(-a * FRAC_1_SQRT_2))
    } else {
        0.5 * (libm::erf(b * FRAC_1_SQRT_2) - libm::erf(a * FRAC_1_SQRT_2))
    }
}

/// Asymptotic trigamma ψ₁(z) for z ≳ 10; equals Σ_{k≥0} 1/(z+k)².
pub fn trigamma_large(z: f64) -> f64 {
    let z2 = z * z;
    1.0 / z + 1.0 / (2.0 * z2) + 1.0 / (6.0 * z2 * z) - 1.0 / (30.0 * z2 * z2 * z)
}
