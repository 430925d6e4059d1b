//! Globally adaptive 21-point Gauss–Kronrod quadrature over a caller-supplied
//! initial partition, for real or complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use thiserror::Error;

use crate::sum::{ComplexNeumaierSum, NeumaierSum};

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

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_931_966_018,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Values that can be integrated: reals and complex numbers.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn to_complex(self) -> Complex64;
    fn compensated_sum<I: Iterator<Item = Self>>(iter: I) -> Self;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn compensated_sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.collect::<NeumaierSum>().value()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn compensated_sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut s = ComplexNeumaierSum::new();
        for z in iter {
            s.add(z);
        }
        s.value()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("quadrature did not reach tolerance within {intervals} intervals: estimate {estimate}, error bound {error_bound:e}")]
    Accuracy {
        estimate: Complex64,
        error_bound: f64,
        intervals: usize,
    },
    #[error("invalid integration range: {0}")]
    InvalidRange(String),
    #[error("integrand is not finite near x = {0}")]
    NonFinite(f64),
}

/// Result of a converged integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral<T> {
    pub value: T,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Integrator {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Stop when the error is below this fraction of ∫|f| (roundoff floor).
    pub l1_tol: f64,
    pub max_intervals: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Self::new(1e-10)
    }
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    abs_value: f64,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod_21<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> Segment<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = T::zero();
    let mut resk = fc * WGK[10];
    let mut resabs = WGK[10] * fc.magnitude();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..5 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg = resg + (f1 + f2) * WG[j];
        resk = resk + (f1 + f2) * WGK[jtw];
        resabs += WGK[jtw] * (f1.magnitude() + f2.magnitude());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk = resk + (f1 + f2) * WGK[jtwm1];
        resabs += WGK[jtwm1] * (f1.magnitude() + f2.magnitude());
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[10] * (fc - reskh).magnitude();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).magnitude() + (fv2[j] - reskh).magnitude());
    }
    let ah = half.abs();
    let value = resk * half;
    resabs *= ah;
    resasc *= ah;
    let mut error = ((resk - resg) * half).magnitude();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    if !value.magnitude().is_finite() || !error.is_finite() {
        error = f64::INFINITY;
    }
    Segment {
        a,
        b,
        value,
        abs_value: resabs,
        error,
    }
}

impl Integrator {
    pub fn new(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            abs_tol: 0.0,
            l1_tol: 100.0 * f64::EPSILON,
            max_intervals: 1_000_000,
        }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_intervals(mut self, n: usize) -> Self {
        self.max_intervals = n;
        self
    }

    /// Integrate `f` over `[breaks[0], breaks[last]]`, starting from the
    /// partition given by `breaks` (strictly increasing, at least two points).
    pub fn integrate<T, F>(&self, f: F, breaks: &[f64]) -> Result<Integral<T>, QuadError>
    where
        T: QuadValue,
        F: Fn(f64) -> T,
    {
        if breaks.len() < 2 {
            return Err(QuadError::InvalidRange("need at least two breakpoints".into()));
        }
        if breaks.windows(2).any(|w| !(w[1] > w[0])) || breaks.iter().any(|x| !x.is_finite()) {
            return Err(QuadError::InvalidRange("breakpoints must be finite and increasing".into()));
        }
        let mut heap: BinaryHeap<Segment<T>> = breaks
            .windows(2)
            .map(|w| gauss_kronrod_21(&f, w[0], w[1]))
            .collect();
        let mut frozen: Vec<Segment<T>> = Vec::new();
        let mut since_resum = 0usize;
        let (mut total, mut total_err, mut total_abs) = Self::totals(&heap, &frozen);
        loop {
            if !total_err.is_finite() {
                if let Some(s) = heap.iter().find(|s| !s.error.is_finite()) {
                    if (s.b - s.a) <= 1e-13 * s.a.abs().max(s.b.abs()).max(1e-300) {
                        return Err(QuadError::NonFinite(0.5 * (s.a + s.b)));
                    }
                }
            }
            let tol = self
                .abs_tol
                .max(self.rel_tol * total.magnitude())
                .max(self.l1_tol * total_abs);
            if total_err <= tol {
                break;
            }
            if heap.len() + frozen.len() >= self.max_intervals || heap.is_empty() {
                return Err(QuadError::Accuracy {
                    estimate: total.to_complex(),
                    error_bound: total_err,
                    intervals: heap.len() + frozen.len(),
                });
            }
            let worst = heap.pop().expect("heap not empty");
            let mid = 0.5 * (worst.a + worst.b);
            if !(mid > worst.a && mid < worst.b)
                || (worst.b - worst.a) <= 4.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs())
            {
                frozen.push(worst);
                continue;
            }
            let left = gauss_kronrod_21(&f, worst.a, mid);
            let right = gauss_kronrod_21(&f, mid, worst.b);
            total = total - worst.value + left.value + right.value;
            total_err += left.error + right.error - worst.error;
            total_abs += left.abs_value + right.abs_value - worst.abs_value;
            heap.push(left);
            heap.push(right);
            since_resum += 1;
            if since_resum >= 512 || !total_err.is_finite() || total_err < 0.0 {
                (total, total_err, total_abs) = Self::totals(&heap, &frozen);
                since_resum = 0;
            }
        }
        let (value, error, _) = Self::totals(&heap, &frozen);
        Ok(Integral {
            value,
            error,
            intervals: heap.len() + frozen.len(),
        })
    }

    fn totals<T: QuadValue>(heap: &BinaryHeap<Segment<T>>, frozen: &[Segment<T>]) -> (T, f64, f64) {
        let all = || heap.iter().chain(frozen.iter());
        let value = T::compensated_sum(all().map(|s| s.value));
        let error: f64 = all().map(|s| s.error).sum();
        let abs: f64 = all().map(|s| s.abs_value).sum();
        (value, error, abs)
    }

    /// Integrate over `[a, ∞)` via `x = a + scale·u/(1−u)`; `scale` should be
    /// the length over which `f` varies.
    pub fn integrate_semi_infinite<T, F>(&self, f: F, a: f64, scale: f64) -> Result<Integral<T>, QuadError>
    where
        T: QuadValue,
        F: Fn(f64) -> T,
    {
        if !(scale > 0.0) {
            return Err(QuadError::InvalidRange(format!("scale must be positive, got {scale}")));
        }
        let g = |u: f64| {
            let one_minus = 1.0 - u;
            let x = a + scale * u / one_minus;
            let jac = scale / (one_minus * one_minus);
            if !x.is_finite() || !jac.is_finite() {
                return T::zero();
            }
            f(x) * jac
        };
        let breaks = [0.0, 0.25, 0.5, 0.75, 0.9, 0.97, 1.0];
        self.integrate(g, &breaks)
    }
}

/// Breakpoints on `[a, b]` (`0 < a < b`): panel widths grow geometrically
/// from `a` (each panel at most as wide as its left end) and never exceed
/// `max_width`.
pub fn geometric_panels(a: f64, b: f64, max_width: f64) -> Vec<f64> {
    let mut breaks = vec![a];
    let mut x = a;
    while x < b {
        let w = x.max(a).min(max_width);
        let next = if x + w >= b * (1.0 - 1e-12) { b } else { x + w };
        breaks.push(next);
        x = next;
    }
    breaks
}
