//! Adaptive Gauss–Kronrod (7, 15) quadrature.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7K15 panel: `(kronrod, |kronrod − gauss|)`.
pub fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Recursive bisection until each panel's error estimate is below its share
/// of `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Result<f64> {
        let (v, err) = gauss_kronrod_15(f, a, b);
        if err <= tol || err <= 1e-15 * v.abs() {
            return Ok(v);
        }
        if depth == 0 {
            return Err(Error::NonConvergence(format!(
                "quadrature on [{a}, {b}] stalled at error {err:e}"
            )));
        }
        let m = 0.5 * (a + b);
        Ok(recurse(f, a, m, 0.5 * tol, depth - 1)? + recurse(f, m, b, 0.5 * tol, depth - 1)?)
    }
    recurse(f, a, b, tol, 40)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exactness() {
        let (v, _) = gauss_kronrod_15(&|x: f64| x.powi(20), 0.0, 1.0);
        assert!((v - 1.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let f = |x: f64| 1.0 / (1e-4 + x * x);
        let v = integrate(&f, -1.0, 1.0, 1e-12).unwrap();
        let exact = 2.0 / 1e-2 * (1.0f64 / 1e-2).atan();
        assert!((v - exact).abs() < 1e-9);
    }

    #[test]
    fn oscillatory() {
        let v = integrate(&|x: f64| (50.0 * x).cos(), 0.0, 3.0, 1e-13).unwrap();
        assert!((v - (150.0f64).sin() / 50.0).abs() < 1e-12);
    }
}
