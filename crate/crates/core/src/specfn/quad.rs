use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 20_000 }
    }
}

impl QuadOptions {
    pub fn tight() -> Self {
        Self { abs_tol: 1e-15, rel_tol: 1e-14, max_intervals: 50_000 }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        // Deep bisection can round a node onto an endpoint; keep nodes strictly interior.
        let (xl, xr) = ((c - dx).max(a.next_up()), (c + dx).min(b.next_down()));
        let s = f(xl) + f(xr);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Segment { a, b, value: k * h, error: ((k - g) * h).abs() }
}

fn integrate_finite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, opts: QuadOptions) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let mut heap = BinaryHeap::new();
    let first = kronrod(f, a, b);
    let (mut total, mut err) = (first.value, first.error);
    heap.push(first);
    while err > opts.abs_tol.max(opts.rel_tol * total.abs()) {
        if heap.len() >= opts.max_intervals {
            return Err(Error::Convergence(format!(
                "adaptive quadrature on [{a}, {b}] stalled with error estimate {err:e}"
            )));
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval cannot be split further in floating point.
            heap.push(Segment { error: 0.0, ..worst });
            err = heap.iter().map(|s| s.error).sum();
            if err == 0.0 {
                break;
            }
            continue;
        }
        let left = kronrod(f, worst.a, mid);
        let right = kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        if !total.is_finite() {
            return Err(Error::Divergence(format!("integrand is not finite on [{a}, {b}]")));
        }
    }
    // Re-sum to shed accumulated rounding from the running updates.
    Ok(heap.iter().map(|s| s.value).sum())
}

/// Adaptive Gauss–Kronrod (7, 15) quadrature; either limit may be infinite.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<f64> {
    if a.is_nan() || b.is_nan() {
        return Err(Error::Domain("quadrature limits must not be NaN".into()));
    }
    if a > b {
        return integrate(f, b, a, opts).map(|v| -v);
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => integrate_finite(&f, a, b, opts),
        (true, false) => {
            // x = a + t/(1−t)
            let g = |t: f64| {
                let s = 1.0 - t;
                let v = f(a + t / s) / (s * s);
                if v.is_finite() { v } else { 0.0 }
            };
            integrate_finite(&g, 0.0, 1.0, opts)
        }
        (false, true) => {
            let g = |t: f64| {
                let s = 1.0 - t;
                let v = f(b - t / s) / (s * s);
                if v.is_finite() { v } else { 0.0 }
            };
            integrate_finite(&g, 0.0, 1.0, opts)
        }
        (false, false) => {
            // x = t/(1−t²)
            let g = |t: f64| {
                let s = 1.0 - t * t;
                let v = f(t / s) * (1.0 + t * t) / (s * s);
                if v.is_finite() { v } else { 0.0 }
            };
            integrate_finite(&g, -1.0, 1.0, opts)
        }
    }
}
