//! Exponential integral E₁ and the upper incomplete Gamma function Γ(s, z) for
//! integer orders −3..=1 and complex argument with Re z ≥ 0, plus the real
//! `coth(x/2)` and `sinc` helpers.
//!
//! Every function has a scaled twin returning `e^z · f(z)`. The scaled forms
//! stay finite when `e^{-z}` underflows (Re z beyond roughly 745).

use num_complex::Complex64;
use thiserror::Error;

use crate::constants::EULER_GAMMA;
use crate::sum::ComplexNeumaierSum;

/// Lowest supported incomplete-Gamma order.
pub const MIN_ORDER: i32 = -3;
/// Highest supported incomplete-Gamma order.
pub const MAX_ORDER: i32 = 1;

/// |z| at and below which the power series (plus downward recurrence) is used.
pub const SERIES_RADIUS: f64 = 4.0;

const MAX_SERIES_TERMS: usize = 400;
const MAX_CF_ITERATIONS: usize = 20_000;
const TINY: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{function}: argument {z} is outside the domain")]
    Domain {
        function: &'static str,
        z: Complex64,
    },
    #[error("{function}: Re z < 0 is not supported (z = {z})")]
    UnsupportedRegion {
        function: &'static str,
        z: Complex64,
    },
    #[error("incomplete gamma of order {0} is not supported (orders {MIN_ORDER}..={MAX_ORDER})")]
    UnsupportedOrder(i32),
    #[error("{function}: continued fraction did not converge at z = {z}")]
    NoConvergence {
        function: &'static str,
        z: Complex64,
    },
}

fn check_domain(function: &'static str, z: Complex64) -> Result<(), SpecFunError> {
    if !z.re.is_finite() || !z.im.is_finite() || z == Complex64::new(0.0, 0.0) {
        return Err(SpecFunError::Domain { function, z });
    }
    if z.re < 0.0 {
        return Err(SpecFunError::UnsupportedRegion { function, z });
    }
    Ok(())
}

/// E₁(z) by its convergent power series `−γ − ln z − Σ (−z)^k / (k·k!)`.
///
/// Accurate to ~1e−13 for |z| ≤ 4; loses digits quickly beyond that.
/// Exposed so the two E₁ routes can be cross-checked.
pub fn exp_integral_e1_series(z: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = ComplexNeumaierSum::new();
    for k in 1..MAX_SERIES_TERMS {
        let kf = k as f64;
        term *= -z / kf;
        let contrib = term / kf;
        acc.add(contrib);
        if kf > z.norm() && contrib.norm() <= 0.25 * f64::EPSILON * acc.value().norm() {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - acc.value()
}

/// Modified Lentz evaluation of `e^z z^{-a} Γ(a, z)` as the continued fraction
/// `1/(z+1−a− 1(1−a)/(z+3−a− 2(2−a)/(z+5−a− …)))`.
fn gamma_cf_reduced(a: f64, z: Complex64) -> Result<Complex64, SpecFunError> {
    let mut b = z + (1.0 - a);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = if b.norm() < TINY {
        Complex64::new(1.0 / TINY, 0.0)
    } else {
        b.inv()
    };
    let mut h = d;
    for n in 1..MAX_CF_ITERATIONS {
        let nf = n as f64;
        let an = -nf * (nf - a);
        b += 2.0;
        d = b + d * an;
        if d.norm() < TINY {
            d = Complex64::new(TINY, 0.0);
        }
        c = b + c.inv() * an;
        if c.norm() < TINY {
            c = Complex64::new(TINY, 0.0);
        }
        d = d.inv();
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < 0.5 * f64::EPSILON {
            return Ok(h);
        }
    }
    Err(SpecFunError::NoConvergence {
        function: "incomplete gamma continued fraction",
        z,
    })
}

/// E₁(z) by the continued fraction. Converges for every Re z ≥ 0, z ≠ 0,
/// but slowly for small |z|; production use is |z| > 4.
pub fn exp_integral_e1_continued_fraction(z: Complex64) -> Result<Complex64, SpecFunError> {
    check_domain("exp_integral_e1", z)?;
    Ok(gamma_cf_reduced(0.0, z)? * (-z).exp())
}

/// `e^z E₁(z)`.
pub fn exp_integral_e1_scaled(z: Complex64) -> Result<Complex64, SpecFunError> {
    check_domain("exp_integral_e1", z)?;
    if z.norm() <= SERIES_RADIUS {
        Ok(exp_integral_e1_series(z) * z.exp())
    } else {
        gamma_cf_reduced(0.0, z)
    }
}

/// Exponential integral `E₁(z) = ∫₁^∞ e^{−zt}/t dt` for Re z ≥ 0, z ≠ 0.
pub fn exp_integral_e1(z: Complex64) -> Result<Complex64, SpecFunError> {
    check_domain("exp_integral_e1", z)?;
    if z.norm() <= SERIES_RADIUS {
        Ok(exp_integral_e1_series(z))
    } else {
        Ok(gamma_cf_reduced(0.0, z)? * (-z).exp())
    }
}

/// `e^z Γ(order, z)` for order in −3..=1.
pub fn upper_incomplete_gamma_scaled(order: i32, z: Complex64) -> Result<Complex64, SpecFunError> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
        return Err(SpecFunError::UnsupportedOrder(order));
    }
    if order == 1 {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(SpecFunError::Domain {
                function: "upper_incomplete_gamma",
                z,
            });
        }
        return Ok(Complex64::new(1.0, 0.0));
    }
    check_domain("upper_incomplete_gamma", z)?;
    if z.norm() > SERIES_RADIUS {
        // direct fraction; recurrence from E₁ would cancel here
        return Ok(gamma_cf_reduced(order as f64, z)? * z.powi(order));
    }
    let mut g = exp_integral_e1_series(z) * z.exp();
    for s in (order..0).rev() {
        g = (g - z.powi(s)) / s as f64;
    }
    Ok(g)
}

/// Upper incomplete Gamma `Γ(order, z) = ∫_z^∞ t^{order−1} e^{−t} dt`,
/// order in −3..=1, Re z ≥ 0 (any finite z for order 1).
pub fn upper_incomplete_gamma(order: i32, z: Complex64) -> Result<Complex64, SpecFunError> {
    if order == 1 {
        upper_incomplete_gamma_scaled(order, z)?;
        return Ok((-z).exp());
    }
    Ok(upper_incomplete_gamma_scaled(order, z)? * (-z).exp())
}

/// `coth(x/2)` for x > 0.
pub fn coth_half(x: f64) -> Result<f64, SpecFunError> {
    if x.is_nan() || x <= 0.0 {
        return Err(SpecFunError::Domain {
            function: "coth_half",
            z: Complex64::new(x, 0.0),
        });
    }
    if x < 1e-6 {
        Ok(2.0 / x + x / 6.0)
    } else {
        Ok(1.0 / (0.5 * x).tanh())
    }
}

/// `coth(z/2)` for complex z with Re z > 0. No domain checks; used on
/// integration contours that stay away from the poles at z = 2πik.
pub(crate) fn coth_half_complex(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        return 2.0 / z + z / 6.0 - z * z * z / 360.0;
    }
    let w = (-z).exp();
    (1.0 + w) / (1.0 - w)
}

/// `sin(x)/x` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

pub(crate) fn sinc_complex(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // independent oracle: series summed in plain order
    fn e1_oracle_real(x: f64) -> f64 {
        let mut term = 1.0;
        let mut sum = 0.0;
        for k in 1..200 {
            term *= -x / k as f64;
            sum += term / k as f64;
        }
        -EULER_GAMMA - x.ln() - sum
    }

    #[test]
    fn e1_at_one() {
        let oracle = e1_oracle_real(1.0);
        assert_relative_eq!(oracle, 0.219383934396, max_relative = 1e-11);
        let v = exp_integral_e1(c(1.0, 0.0)).unwrap();
        assert_relative_eq!(v.re, oracle, max_relative = 1e-13);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn e1_small_argument_is_log_dominated() {
        let v = exp_integral_e1(c(1e-8, 0.0)).unwrap();
        let leading = -EULER_GAMMA - 1e-8f64.ln();
        assert_relative_eq!(leading, 17.843465, max_relative = 1e-7);
        assert_relative_eq!(v.re, leading, max_relative = 1e-6);
        assert_relative_eq!(v.re, e1_oracle_real(1e-8), max_relative = 1e-14);
    }

    #[test]
    fn e1_large_argument_matches_asymptotic_series() {
        let z = 100.0f64;
        let mut series = 0.0;
        let mut term = 1.0;
        for k in 0..12 {
            series += term;
            term *= -((k + 1) as f64) / z;
        }
        let oracle = (-z).exp() / z * series;
        let v = exp_integral_e1(c(z, 0.0)).unwrap();
        assert_relative_eq!(v.re, oracle, max_relative = 1e-13);
    }

    #[test]
    fn e1_domain_errors() {
        assert!(matches!(
            exp_integral_e1(c(0.0, 0.0)),
            Err(SpecFunError::Domain { .. })
        ));
        assert!(matches!(
            exp_integral_e1(c(-1.0, 0.5)),
            Err(SpecFunError::UnsupportedRegion { .. })
        ));
        assert!(exp_integral_e1(c(0.0, 3.0)).is_ok());
    }

    #[test]
    fn gamma_examples() {
        let g1 = upper_incomplete_gamma(1, c(0.5, 0.0)).unwrap();
        assert_relative_eq!(g1.re, (-0.5f64).exp(), max_relative = 1e-15);
        assert_relative_eq!(g1.re, 0.6065306597, max_relative = 1e-10);
        let g0 = upper_incomplete_gamma(0, c(1.0, 0.0)).unwrap();
        assert_relative_eq!(g0.re, e1_oracle_real(1.0), max_relative = 1e-13);
        let gm1 = upper_incomplete_gamma(-1, c(1.0, 0.0)).unwrap();
        let oracle = (-1.0f64).exp() - e1_oracle_real(1.0);
        assert_relative_eq!(gm1.re, oracle, max_relative = 1e-13);
        assert_relative_eq!(gm1.re, 0.148495507, max_relative = 1e-8);
    }

    #[test]
    fn gamma_order_and_zero_errors() {
        assert_eq!(
            upper_incomplete_gamma(2, c(1.0, 0.0)),
            Err(SpecFunError::UnsupportedOrder(2))
        );
        assert_eq!(
            upper_incomplete_gamma(-4, c(1.0, 0.0)),
            Err(SpecFunError::UnsupportedOrder(-4))
        );
        assert!(matches!(
            upper_incomplete_gamma(-2, c(0.0, 0.0)),
            Err(SpecFunError::Domain { .. })
        ));
        assert!(upper_incomplete_gamma(1, c(0.0, 0.0)).is_ok());
    }

    #[test]
    fn order_minus_one_at_fifty_is_cancellation_free() {
        let z = 50.0f64;
        let v = upper_incomplete_gamma(-1, c(z, 0.0)).unwrap();
        let asym = (-z).exp() / (z * z);
        assert!(v.re > 0.0);
        assert!((v.re / asym - 1.0).abs() < 0.05);
        // asymptotic series e^{-z} z^{-2} (1 − 2/z + 6/z² − 24/z³ + …)
        let mut series = 0.0;
        let mut term = 1.0;
        for k in 0..10 {
            series += term;
            term *= -((k + 2) as f64) / z;
        }
        assert_relative_eq!(v.re, asym * series, max_relative = 1e-10);
    }

    #[test]
    fn real_axis_matches_quadrature() {
        use crate::quadrature::Integrator;
        let integrator = Integrator::new(1e-12);
        for &x in &[1e-4f64, 1e-2, 0.3, 1.0, 3.9, 4.1, 10.0, 50.0] {
            // ∫_x^∞ e^{-t}/t dt with t = x + u
            let r: f64 = integrator
                .integrate_semi_infinite(|u: f64| (-(x + u)).exp() / (x + u), 0.0, x.max(1e-3).min(1.0))
                .unwrap()
                .value;
            let v = upper_incomplete_gamma(0, c(x, 0.0)).unwrap();
            assert_relative_eq!(v.re, r, max_relative = 1e-8);
        }
    }

    #[test]
    fn series_and_fraction_agree_on_switching_circle() {
        for k in 0..64 {
            let theta = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (k as f64 + 0.5) / 64.0;
            let z = Complex64::from_polar(SERIES_RADIUS, theta);
            let a = exp_integral_e1_series(z);
            let b = exp_integral_e1_continued_fraction(z).unwrap();
            assert!((a - b).norm() / b.norm() < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn scaled_survives_underflow() {
        let z = c(2000.0, 300.0);
        assert_eq!(exp_integral_e1(z).unwrap().norm(), 0.0);
        let s = exp_integral_e1_scaled(z).unwrap();
        assert_relative_eq!(s.norm(), 1.0 / z.norm(), max_relative = 1e-3);
        let g = upper_incomplete_gamma_scaled(-3, z).unwrap();
        assert_relative_eq!(g.norm(), z.powi(-4).norm(), max_relative = 1e-2);
    }

    #[test]
    fn coth_half_examples() {
        assert_relative_eq!(coth_half(100.0).unwrap(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(coth_half(1e-9).unwrap(), 2e9, max_relative = 1e-15);
        let e2 = 2f64.exp();
        let oracle = (e2 + 1.0) / (e2 - 1.0);
        assert_relative_eq!(coth_half(2.0).unwrap(), oracle, max_relative = 1e-14);
        assert_relative_eq!(oracle, 1.3130352855, max_relative = 1e-10);
        assert!(coth_half(0.0).is_err());
        assert!(coth_half(-1.0).is_err());
    }

    #[test]
    fn coth_half_complex_matches_real() {
        for &x in &[1e-6, 1e-3, 0.5, 3.0, 40.0] {
            let z = coth_half_complex(c(x, 0.0));
            assert_relative_eq!(z.re, coth_half(x).unwrap(), max_relative = 1e-12);
        }
    }

    #[test]
    fn sinc_examples() {
        assert_eq!(sinc(0.0), 1.0);
        assert!(sinc(std::f64::consts::PI).abs() < 1e-15);
        assert_relative_eq!(sinc(1.0), 0.8414709848, max_relative = 1e-10);
        assert_eq!(sinc(2.5), sinc(-2.5));
        assert_relative_eq!(sinc(0.99e-4), (0.99e-4f64).sin() / 0.99e-4, max_relative = 1e-15);
    }
}
