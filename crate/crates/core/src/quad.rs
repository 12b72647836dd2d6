//! Adaptive Gauss–Kronrod (10/21) quadrature.
//!
//! Integrands may be real or complex; both go through [`QuadValue`]. Finite
//! intervals are bisected globally (the interval with the largest error
//! estimate is split first). Semi-infinite ranges are mapped onto `[0, 1)`
//! with `x = a + t / (1 - t)`. The Kronrod rule never evaluates the endpoints,
//! so integrable endpoint singularities are handled by bisection alone.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

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
    0.123_491_976_262_065_851_077_208_643_127_149,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Values a quadrature rule can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn from_real(x: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_real(x: f64) -> Self {
        x
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Self {
            abs,
            rel,
            max_intervals: 2000,
        }
    }

    pub const fn with_max_intervals(mut self, max_intervals: usize) -> Self {
        self.max_intervals = max_intervals;
        self
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(1e-12, 1e-12)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub abs_error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl<T: QuadValue> Integral<T> {
    /// Turns a non-converged integral into [`Error::Quadrature`].
    pub fn into_result(self, context: &'static str) -> Result<T> {
        if self.converged && self.abs_error.is_finite() {
            Ok(self.value)
        } else {
            Err(Error::Quadrature {
                context,
                estimate: self.value.magnitude(),
                abs_error: self.abs_error,
            })
        }
    }

    fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            abs_error: self.abs_error + other.abs_error,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }
}

#[derive(Clone, Copy)]
struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

fn kronrod<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> Segment<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[10];
    let mut gauss = T::zero();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kron = kron + (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = (fc - mean).magnitude() * WGK[10];
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }
    let asc = asc * half.abs();
    let value = kron * half;
    let raw = ((kron - gauss) * half).magnitude();
    let mut error = raw;
    if asc != 0.0 && raw != 0.0 {
        error = asc * (200.0 * raw / asc).powf(1.5).min(1.0);
    }
    // Roundoff floor.
    let floor = 50.0 * f64::EPSILON * value.magnitude();
    if error < floor {
        error = floor;
    }
    if !value.magnitude().is_finite() {
        error = f64::INFINITY;
    }
    Segment { a, b, value, error }
}

fn adaptive<T: QuadValue, F: FnMut(f64) -> T>(
    f: &mut F,
    initial: &[f64],
    tol: &Tolerance,
) -> Integral<T> {
    let mut segments: Vec<Segment<T>> = initial
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| kronrod(f, w[0], w[1]))
        .collect();
    let mut evaluations = 21 * segments.len();
    if segments.is_empty() {
        return Integral {
            value: T::zero(),
            abs_error: 0.0,
            evaluations,
            converged: true,
        };
    }
    let total = |segs: &[Segment<T>]| {
        segs.iter().fold((T::zero(), 0.0), |(v, e), s| (v + s.value, e + s.error))
    };
    loop {
        let (value, error) = total(&segments);
        if error <= tol.target(value.magnitude()) {
            return Integral {
                value,
                abs_error: error,
                evaluations,
                converged: true,
            };
        }
        if segments.len() >= tol.max_intervals || !error.is_finite() && segments.len() > 64 {
            return Integral {
                value,
                abs_error: error,
                evaluations,
                converged: false,
            };
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bi, be), (i, s)| {
                if s.error > be || s.error.is_nan() {
                    (i, s.error)
                } else {
                    (bi, be)
                }
            });
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) {
            // Interval exhausted at machine resolution.
            let (value, error) = total(&segments);
            return Integral {
                value: value + seg.value,
                abs_error: error + seg.error,
                evaluations,
                converged: false,
            };
        }
        segments.push(kronrod(f, seg.a, mid));
        segments.push(kronrod(f, mid, seg.b));
        evaluations += 42;
    }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<T, F>(mut f: F, a: f64, b: f64, tol: &Tolerance) -> Integral<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    if b < a {
        let r = adaptive(&mut f, &[b, a], tol);
        return Integral {
            value: r.value * -1.0,
            ..r
        };
    }
    adaptive(&mut f, &[a, b], tol)
}

/// Integrates over consecutive segments of `points` (sorted ascending),
/// refining all segments against one global error budget.
pub fn integrate_breaks<T, F>(mut f: F, points: &[f64], tol: &Tolerance) -> Integral<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    adaptive(&mut f, points, tol)
}

/// Integrates `f` over `[a, ∞)`.
pub fn integrate_to_infinity<T, F>(f: F, a: f64, tol: &Tolerance) -> Integral<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    integrate_to_infinity_breaks(f, &[a], tol)
}

/// Integrates `f` over `[points[0], ∞)` with interior break points.
/// The finite part `[points[0], points[last]]` and the mapped tail are
/// refined separately, each against the full tolerance.
pub fn integrate_to_infinity_breaks<T, F>(mut f: F, points: &[f64], tol: &Tolerance) -> Integral<T>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    let last = points[points.len() - 1];
    let head = adaptive(&mut f, points, tol);
    let mut mapped = |t: f64| {
        let one_minus = 1.0 - t;
        let x = last + t / one_minus;
        let v = f(x);
        if v.magnitude() == 0.0 {
            v
        } else {
            v * (1.0 / (one_minus * one_minus))
        }
    };
    let tail = adaptive(&mut mapped, &[0.0, 1.0], tol);
    head.combine(tail)
}
