use crate::math::ln;
use crate::{Error, Result};

// Lanczos approximation, g = 7, nine terms.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of the gamma function for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "ln_gamma argument",
            value: x,
        });
    }
    if x < 0.5 {
        // Shift up once so the series is evaluated where it is accurate.
        return Ok(lanczos(x + 1.0) - ln(x));
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * ln(2.0 * core::f64::consts::PI) + (z + 0.5) * ln(t) - t + ln(sum)
}

/// `ln(n!)`.
pub fn ln_factorial(n: u32) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if n <= 20 {
        let mut acc = 1.0_f64;
        for k in 2..=n {
            acc *= f64::from(k);
        }
        return ln(acc);
    }
    lanczos(f64::from(n) + 1.0)
}

/// `ln B(p, q) = ln Gamma(p) + ln Gamma(q) - ln Gamma(p + q)`.
pub fn ln_beta(p: f64, q: f64) -> Result<f64> {
    Ok(ln_gamma(p)? + ln_gamma(q)? - ln_gamma(p + q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn known_values() {
        assert_relative_eq!(ln_gamma(5.0).unwrap(), 24.0_f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(ln_gamma(0.5).unwrap(), std::f64::consts::PI.sqrt().ln(), max_relative = 1e-13);
        assert_relative_eq!(ln_gamma(0.5).unwrap(), 0.572_364_942_9, epsilon = 1e-10);
        assert!(ln_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(ln_gamma(2.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn matches_libm_lgamma_across_range() {
        // libm's lgamma is an independent implementation (musl).
        let mut x = 1e-3_f64;
        while x <= 1e3 {
            let ours = ln_gamma(x).unwrap();
            let reference = libm::lgamma(x);
            let scale = reference.abs().max(1.0);
            assert!(
                (ours - reference).abs() <= 1e-12 * scale,
                "x={x}: {ours} vs {reference}"
            );
            x *= 1.07;
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_relative_eq!(ln_factorial(5), 120.0_f64.ln(), max_relative = 1e-15);
        assert_relative_eq!(
            ln_factorial(30),
            ln_gamma(31.0).unwrap(),
            max_relative = 1e-14
        );
    }

    proptest! {
        #[test]
        fn recurrence(x in 0.1f64..100.0) {
            let lhs = ln_gamma(x + 1.0).unwrap();
            let rhs = ln_gamma(x).unwrap() + x.ln();
            prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs.abs().max(1.0), "{} vs {}", lhs, rhs);
        }
    }
}
