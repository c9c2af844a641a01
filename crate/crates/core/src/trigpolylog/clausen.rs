//! Clausen functions `Cl_r` and Glaisher–Clausen functions `Sl_r`, r = 1..3.
//!
//! Naming follows the parity convention used throughout the crate:
//! `Sl_r` is the sine series for odd r and the cosine series for even r,
//! `Cl_r` is the other one. So `Cl_1 = Σ cos(nx)/n`, `Cl_2 = Σ sin(nx)/n²`,
//! `Cl_3 = Σ cos(nx)/n³`, while `Sl_1`, `Sl_2`, `Sl_3` are the piecewise
//! polynomials (Bernoulli polynomials on (0, 2π)).
//!
//! `Cl_2` and `Cl_3` are evaluated with their expansions about the origin,
//!
//! ```text
//! Cl_2(x) = x − x ln|x| + Σ_{n≥1} c_n x^{2n+1} / (2n(2n+1))
//! Cl_3(x) = ζ(3) − 3x²/4 + (x²/2) ln|x| − Σ_{n≥1} c_n x^{2n+2} / (2n(2n+1)(2n+2))
//! ```
//!
//! with `c_n = |B_{2n}|/(2n)! = 2ζ(2n)/(2π)^{2n}`. On the reduced window
//! |x| ≤ π successive terms shrink by at least a factor 4.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numeric::{reduce_angle, sign};
use crate::ZETA_3;

const MAX_TERMS: usize = 40;

/// Relative distance (in units of the period) below which `Cl_1` is treated
/// as singular.
pub const CLAUSEN_POLE_TOLERANCE: f64 = 1e-9 * TAU;

fn bernoulli_ratios() -> &'static [f64; MAX_TERMS] {
    static TABLE: OnceLock<[f64; MAX_TERMS]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [0.0; MAX_TERMS];
        for (i, slot) in table.iter_mut().enumerate() {
            let n = i as i32 + 1;
            *slot = 2.0 * zeta_even(2 * n) / TAU.powi(2 * n);
        }
        table
    })
}

/// ζ(s) for even s ≥ 2 by direct summation with an Euler–Maclaurin tail.
fn zeta_even(s: i32) -> f64 {
    if s == 2 {
        return PI * PI / 6.0;
    }
    const M: i32 = 64;
    let sf = f64::from(s);
    let m = f64::from(M);
    let mut acc = m.powf(1.0 - sf) / (sf - 1.0) - 0.5 * m.powi(-s) + sf * m.powf(-sf - 1.0) / 12.0
        - sf * (sf + 1.0) * (sf + 2.0) * m.powf(-sf - 3.0) / 720.0;
    for i in (1..=M).rev() {
        acc += f64::from(i).powi(-s);
    }
    acc
}

/// Glaisher–Clausen function `Sl_r(x)` for r ∈ {1, 2, 3}.
///
/// `Sl_1(0) = 0` (sign(0) = 0), matching the value of the sine series.
pub fn glaisher_sl(r: u32, x: f64) -> Result<f64> {
    let x = reduce_angle(x);
    match r {
        1 => Ok(0.5 * (sign(x) * PI - x)),
        2 => Ok(x * x / 4.0 - PI * x.abs() / 2.0 + PI * PI / 6.0),
        3 => {
            let a = x.abs();
            Ok(sign(x) * (PI * PI * a / 6.0 - PI * a * a / 4.0 + a * a * a / 12.0))
        }
        _ => Err(Error::UnsupportedOrder(r)),
    }
}

/// Clausen function `Cl_r(x)` for r ∈ {1, 2, 3}.
///
/// `Cl_1` has a logarithmic singularity at multiples of 2π; arguments
/// closer than [`CLAUSEN_POLE_TOLERANCE`] are rejected.
pub fn clausen_cl(r: u32, x: f64) -> Result<f64> {
    let reduced = reduce_angle(x);
    match r {
        1 => {
            if reduced.abs() < CLAUSEN_POLE_TOLERANCE {
                return Err(Error::Singular {
                    x,
                    point: x - reduced,
                    tolerance: CLAUSEN_POLE_TOLERANCE,
                });
            }
            Ok(cl1_unchecked(reduced))
        }
        2 => Ok(cl2_reduced(reduced)),
        3 => Ok(cl3_reduced(reduced)),
        _ => Err(Error::UnsupportedOrder(r)),
    }
}

/// Order-0 Clausen function `Cl_0(x) = ½cot(x/2)` (the smooth part of `Cl_1'`
/// up to sign).
pub fn clausen_cl0(x: f64) -> Result<f64> {
    let reduced = reduce_angle(x);
    if reduced.abs() < CLAUSEN_POLE_TOLERANCE {
        return Err(Error::Singular {
            x,
            point: x - reduced,
            tolerance: CLAUSEN_POLE_TOLERANCE,
        });
    }
    Ok(0.5 / (0.5 * reduced).tan())
}

pub(crate) fn cl1_unchecked(reduced: f64) -> f64 {
    -(2.0 * (0.5 * reduced).sin()).abs().ln()
}

pub(crate) fn cl2_reduced(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ratios = bernoulli_ratios();
    let x2 = x * x;
    let mut power = x * x2;
    let mut series = 0.0;
    for (i, c) in ratios.iter().enumerate() {
        let n2 = 2.0 * (i as f64 + 1.0);
        let term = c * power / (n2 * (n2 + 1.0));
        series += term;
        if term.abs() < 1e-18 * series.abs() {
            break;
        }
        power *= x2;
    }
    x - x * x.abs().ln() + series
}

pub(crate) fn cl3_reduced(x: f64) -> f64 {
    if x == 0.0 {
        return ZETA_3;
    }
    let ratios = bernoulli_ratios();
    let x2 = x * x;
    let mut power = x2 * x2;
    let mut series = 0.0;
    for (i, c) in ratios.iter().enumerate() {
        let n2 = 2.0 * (i as f64 + 1.0);
        let term = c * power / (n2 * (n2 + 1.0) * (n2 + 2.0));
        series += term;
        if term.abs() < 1e-18 * series.abs() {
            break;
        }
        power *= x2;
    }
    ZETA_3 - 0.75 * x2 + 0.5 * x2 * x.abs().ln() - series
}
