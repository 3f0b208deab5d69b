use super::gamma::{ln_factorial, ln_gamma};
use crate::math::{exp, floor};
use crate::{Error, Result};

/// `2F1(-n, b; c; s)`: the Gauss series with a nonpositive-integer first
/// parameter, which terminates after `n + 1` terms and is summed directly.
pub fn hyp2f1_terminating(n: u32, b: f64, c: f64, s: f64) -> Result<f64> {
    if c <= 0.0 && floor(c) == c {
        return Err(Error::PoleParameter(c));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain {
            what: "hypergeometric argument",
            value: s,
        });
    }
    let neg_n = -f64::from(n);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let k = f64::from(k);
        term *= (neg_n + k) * (b + k) / ((c + k) * (k + 1.0)) * s;
        sum += term;
    }
    Ok(sum)
}

fn check_jacobi_params(a: f64, b: f64) -> Result<()> {
    if !(a > -1.0) {
        return Err(Error::Domain {
            what: "Jacobi alpha",
            value: a,
        });
    }
    if !(b > -1.0) {
        return Err(Error::Domain {
            what: "Jacobi beta",
            value: b,
        });
    }
    Ok(())
}

/// Jacobi polynomial `P_n^{(a,b)}(x)` from the three-term recurrence.
pub fn jacobi_p(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    check_jacobi_params(a, b)?;
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
    for k in 2..=n {
        let k = f64::from(k);
        let s = 2.0 * k + a + b;
        let lead = 2.0 * k * (k + a + b) * (s - 2.0);
        let mid = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let back = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let next = (mid * cur - back * prev) / lead;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `P_n^{(a,b)}(x)` through its hypergeometric representation
/// `Gamma(n+a+1) / (n! Gamma(a+1)) 2F1(-n, n+a+b+1; a+1; (1-x)/2)`.
pub fn jacobi_p_via_hyp2f1(n: u32, a: f64, b: f64, x: f64) -> Result<f64> {
    check_jacobi_params(a, b)?;
    let prefactor =
        exp(ln_gamma(f64::from(n) + a + 1.0)? - ln_factorial(n) - ln_gamma(a + 1.0)?);
    let series = hyp2f1_terminating(n, f64::from(n) + a + b + 1.0, a + 1.0, 0.5 * (1.0 - x))?;
    Ok(prefactor * series)
}
