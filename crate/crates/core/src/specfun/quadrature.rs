//! Adaptive Gauss-Kronrod quadrature with endpoint-singularity handling.
//!
//! The interval is cut at its midpoint and each half is swept toward its
//! outer endpoint by panels that halve in width: `[e + w/2, e + w]`,
//! `[e + w/4, e + w/2]`, ... Every panel is integrated by recursively
//! bisected 21-point Gauss-Kronrod. An integrable algebraic singularity
//! `|x - e|^p` with `p > -1` makes the partial sums converge geometrically,
//! and the epsilon algorithm extrapolates them to the limit.

use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Cap on both the number of endpoint panels and the bisection depth
    /// inside a panel.
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_depth: 60,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_depth,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::Domain {
                what: "absolute tolerance",
                value: self.abs_tol,
            });
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::Domain {
                what: "relative tolerance",
                value: self.rel_tol,
            });
        }
        if self.max_depth < 1 {
            return Err(Error::Domain {
                what: "max depth",
                value: 0.0,
            });
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    pub evaluations: usize,
}

/// Integrates `f` over `[lo, hi]` to within `max(abs_tol, rel_tol |I|)`.
pub fn integrate<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain {
            what: "integration bound",
            value: if lo.is_finite() { hi } else { lo },
        });
    }
    if lo == hi {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    if hi < lo {
        let q = integrate(f, hi, lo, spec)?;
        return Ok(Quadrature {
            value: -q.value,
            ..q
        });
    }

    let mut evals = 0;
    let mid = lo + 0.5 * (hi - lo);
    let (left, left_err) = sweep(&f, lo, mid, spec, &mut evals)?;
    let (right, right_err) = sweep(&f, hi, mid, spec, &mut evals)?;
    let value = left + right;
    let error = left_err + right_err;
    if !(error <= spec.target(value)) {
        return Err(Error::NoConvergence {
            what: "quadrature",
            reached: error,
        });
    }
    Ok(Quadrature {
        value,
        error,
        evaluations: evals,
    })
}

/// Integral over the segment between `end` and `other`, sweeping panels
/// toward `end`.
fn sweep<F>(f: &F, end: f64, other: f64, spec: &QuadratureSpec, evals: &mut usize) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let width = other - end;
    let mut partial = Vec::with_capacity(spec.max_depth as usize);
    let mut extrapolated: Vec<f64> = Vec::new();
    let mut total = 0.0;
    let mut panel_error = 0.0;
    let mut outer = 1.0_f64;

    for _ in 0..spec.max_depth {
        let inner = 0.5 * outer;
        let a = end + width * inner;
        let b = if outer == 1.0 { other } else { end + width * outer };
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (value, err) = adaptive_panel(f, lo, hi, spec, 0, evals)?;
        total += value;
        panel_error += err;
        partial.push(total);
        outer = inner;

        if partial.len() < 3 {
            continue;
        }
        extrapolated.push(epsilon_extrapolate(&partial));
        let n = extrapolated.len();
        if n < 3 {
            continue;
        }
        let latest = extrapolated[n - 1];
        let change = (latest - extrapolated[n - 2])
            .abs()
            .max((extrapolated[n - 2] - extrapolated[n - 3]).abs());
        let error = change + panel_error;
        if error <= 0.25 * spec.target(latest) {
            return Ok((latest, error));
        }
    }
    Err(Error::NoConvergence {
        what: "endpoint sweep",
        reached: outer,
    })
}

fn adaptive_panel<F>(
    f: &F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
    depth: u32,
    evals: &mut usize,
) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let (kronrod, gauss) = gauss_kronrod_21(f, a, b, evals)?;
    let err = (kronrod - gauss).abs();
    if err <= 0.01 * spec.target(kronrod) {
        return Ok((kronrod, err));
    }
    if depth >= spec.max_depth {
        return Err(Error::NoConvergence {
            what: "panel bisection",
            reached: err,
        });
    }
    let m = a + 0.5 * (b - a);
    let (l, le) = adaptive_panel(f, a, m, spec, depth + 1, evals)?;
    let (r, re) = adaptive_panel(f, m, b, spec, depth + 1, evals)?;
    Ok((l + r, le + re))
}

/// Wynn's epsilon algorithm; returns the deepest even-column entry that
/// could be formed before the differences hit rounding noise.
fn epsilon_extrapolate(seq: &[f64]) -> f64 {
    let mut best = seq[seq.len() - 1];
    let mut prev: Vec<f64> = alloc::vec![0.0; seq.len() + 1];
    let mut cur: Vec<f64> = seq.to_vec();
    let mut column = 0;
    while cur.len() >= 2 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for j in 0..cur.len() - 1 {
            let diff = cur[j + 1] - cur[j];
            let scale = cur[j + 1].abs().max(cur[j].abs());
            if diff.abs() <= 8.0 * f64::EPSILON * scale || diff == 0.0 {
                return best;
            }
            next.push(prev[j + 1] + 1.0 / diff);
        }
        column += 1;
        if column % 2 == 0 {
            let candidate = next[next.len() - 1];
            if candidate.is_finite() {
                best = candidate;
            }
        }
        prev = cur;
        cur = next;
    }
    best
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Returns the 21-point Kronrod and embedded 10-point Gauss estimates.
fn gauss_kronrod_21<F>(f: &F, a: f64, b: f64, evals: &mut usize) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Domain {
                what: "integrand value",
                value: x,
            })
        }
    };

    let fc = eval(center)?;
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    for j in 0..10 {
        let dx = half * XGK[j];
        let sum = eval(center - dx)? + eval(center + dx)?;
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    *evals += 21;
    Ok((kronrod * half, gauss * half))
}
