//! Small numerical helpers shared by the evaluation modules: argument
//! reduction, exact roots of unity, compensated summation and grids.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

// 2π split into a double and its rounding residual (Cody–Waite style).
const TAU_HI: f64 = TAU;
const TAU_LO: f64 = 2.449_293_598_294_706_4e-16;

/// Reduce `x` to the window (−π, π] by subtracting the nearest multiple of 2π.
pub fn reduce_angle(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if x > -PI && x <= PI {
        return x;
    }
    if x == -PI {
        return PI;
    }
    let n = (x / TAU).round();
    let mut r = (x - n * TAU_HI) - n * TAU_LO;
    if r <= -PI {
        r = (r + TAU_HI) + TAU_LO;
    } else if r > PI {
        r = (r - TAU_HI) - TAU_LO;
    }
    if r <= -PI {
        PI
    } else {
        r
    }
}

/// Reduce `x` to the canonical window [−π, π).
pub fn canonical_location(x: f64) -> f64 {
    let r = reduce_angle(x);
    if r >= PI {
        r - TAU
    } else {
        r
    }
}

/// Sign with `sign(0) = 0`.
pub fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `(cos(2πm/n), sin(2πm/n))` with exact values on the axes, so that the
/// vanishing tests in the node classification are not polluted by rounding.
pub fn unit_root(m: i64, n: u32) -> (f64, f64) {
    let n = i64::from(n);
    let m = m.rem_euclid(n);
    if m == 0 {
        return (1.0, 0.0);
    }
    if 2 * m == n {
        return (-1.0, 0.0);
    }
    if 4 * m == n {
        return (0.0, 1.0);
    }
    if 4 * m == 3 * n {
        return (0.0, -1.0);
    }
    let angle = TAU * (m as f64) / (n as f64);
    (angle.cos(), angle.sin())
}

/// Periodic distance from `x` to the lattice `spacing·Z`.
pub fn distance_to_lattice(x: f64, spacing: f64) -> (f64, f64) {
    let m = (x / spacing).round();
    let point = m * spacing;
    ((x - point).abs(), point)
}

/// Neumaier's improved Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated summation of complex terms, component-wise.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `n` equally spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let h = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + h * i as f64 })
                .collect()
        }
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
