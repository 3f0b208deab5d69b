//! Scan-and-bisect root bracketing for functions that are only defined on
//! part of their interval.
//!
//! A function returns `None` where it is undefined (or where a root would be
//! unphysical); brackets are only formed between two adjacent defined grid
//! points.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Evaluates `f` on `n` uniform points of `[lo, hi]` and returns every
/// adjacent pair `(a, b)` on which `f` is defined at both ends and changes
/// sign (or vanishes at `a`).
pub fn scan_sign_changes<F>(f: F, lo: f64, hi: f64, n: usize) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> Option<f64>,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain {
            what: "scan interval",
            value: lo,
        });
    }
    if n < 2 {
        return Err(Error::Domain {
            what: "scan points",
            value: n as f64,
        });
    }
    let step = (hi - lo) / (n - 1) as f64;
    let point = |i: usize| if i + 1 == n { hi } else { lo + step * i as f64 };

    let mut brackets = Vec::new();
    let mut prev = (lo, f(lo));
    for i in 1..n {
        let x = point(i);
        let cur = (x, f(x));
        if let (Some(fa), Some(fb)) = (prev.1, cur.1) {
            if fa == 0.0 || (fa < 0.0) != (fb < 0.0) && fb != 0.0 {
                brackets.push((prev.0, cur.0));
            }
        }
        prev = cur;
    }
    Ok(brackets)
}

/// Bisects a sign change of `f` on `[a, b]` down to adjacent floating-point
/// numbers and returns whichever end has the smaller `|f|`.
pub fn bisect<F>(f: F, a: f64, b: f64) -> Result<f64>
where
    F: Fn(f64) -> Option<f64>,
{
    let undefined = |x: f64| Error::Domain {
        what: "bisection point outside the function's domain",
        value: x,
    };
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let mut fa = f(a).ok_or_else(|| undefined(a))?;
    let mut fb = f(b).ok_or_else(|| undefined(b))?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if (fa < 0.0) == (fb < 0.0) {
        return Err(Error::Domain {
            what: "bracket without sign change",
            value: a,
        });
    }
    // 2100 halvings exhaust any pair of finite doubles.
    for _ in 0..2100 {
        let m = a + 0.5 * (b - a);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m).ok_or_else(|| undefined(m))?;
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    Ok(if fa.abs() <= fb.abs() { a } else { b })
}

/// All roots of `f` on `[lo, hi]` found by an `n`-point scan, ascending.
pub fn find_roots<F>(f: F, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Option<f64>,
{
    let brackets = scan_sign_changes(&f, lo, hi, n)?;
    brackets.into_iter().map(|(a, b)| bisect(&f, a, b)).collect()
}
