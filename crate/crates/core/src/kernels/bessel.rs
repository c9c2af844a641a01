//! Modified Bessel function `K₁` for positive real arguments.
//!
//! x ≤ 2: the log series built on `I₁`. x > 2: Steed's continued fraction for
//! the ratio `K₁/K₀` together with Temme's normalisation sum (the μ = 0 case
//! of the standard `bessik` scheme).

use std::f64::consts::PI;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub fn bessel_k1(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::NonPositiveArgument(x));
    }
    if x <= 2.0 {
        Ok(k1_series(x))
    } else {
        Ok(k1_continued_fraction(x))
    }
}

fn k1_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = 1.0; // y^k / (k! (k+1)!)
    let mut psi_k1 = -EULER_GAMMA; // ψ(k+1)
    let mut psi_k2 = 1.0 - EULER_GAMMA; // ψ(k+2)
    let mut i1 = 0.0;
    let mut rest = 0.0;
    for k in 0..60 {
        i1 += term;
        let add = (psi_k1 + psi_k2) * term;
        rest += add;
        if term < 1e-18 * i1 && k > 2 {
            break;
        }
        let kf = f64::from(k);
        term *= y / ((kf + 1.0) * (kf + 2.0));
        psi_k1 += 1.0 / (kf + 1.0);
        psi_k2 += 1.0 / (kf + 2.0);
    }
    let i1 = 0.5 * x * i1;
    1.0 / x + (0.5 * x).ln() * i1 - 0.25 * x * rest
}

fn k1_continued_fraction(x: f64) -> f64 {
    const EPS: f64 = 1e-17;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..10_000 {
        let fi = f64::from(i);
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    k0 * (x + 0.5 - h) / x
}

/// Reference value from `K₁(x) = ∫_0^∞ e^{−x cosh t} cosh t dt` by the
/// trapezoid rule, which converges geometrically for this integrand.
pub fn bessel_k1_quadrature(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::NonPositiveArgument(x));
    }
    // cut where x(cosh t − 1) exceeds 60
    let t_max = (1.0 + 60.0 / x).acosh();
    let h = 0.01;
    let n = (t_max / h).ceil() as usize;
    let f = |t: f64| (-x * (t.cosh() - 1.0)).exp() * t.cosh();
    let mut acc = 0.5 * f(0.0);
    for i in 1..=n {
        acc += f(h * i as f64);
    }
    Ok(acc * h * (-x).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath besselk(1, x)
    const REFERENCE: [(f64, f64); 6] = [
        (1e-3, 999.996_238_156_085_6),
        (1.0, 0.601_907_230_197_234_6),
        (2.0, 0.139_865_881_816_522_43),
        (5.0, 0.004_044_613_445_452_164),
        (20.0, 5.883_057_969_557_038e-10),
        (30.0, 2.167_732_001_891_549_4e-14),
    ];

    #[test]
    fn reference_values() {
        for (x, v) in REFERENCE {
            let got = bessel_k1(x).unwrap();
            assert!(((got - v) / v).abs() < 1e-13, "x={x} got={got}");
        }
    }

    #[test]
    fn quadrature_oracle_agrees() {
        for (x, v) in REFERENCE {
            let got = bessel_k1_quadrature(x).unwrap();
            assert!(((got - v) / v).abs() < 1e-12, "x={x} got={got}");
        }
    }

    #[test]
    fn branches_meet() {
        let below = k1_series(2.0);
        let above = k1_continued_fraction(2.0);
        assert!(((below - above) / below).abs() < 1e-14);
    }

    #[test]
    fn limits() {
        let x = 1e-3;
        assert!((x * bessel_k1(x).unwrap() - 1.0).abs() <= 1e-3);
        let x = 20.0;
        let asym = (PI / (2.0 * x)).sqrt() * (-x).exp();
        assert!((bessel_k1(x).unwrap() / asym - 1.0).abs() <= 0.05);
        assert!(bessel_k1(0.0).is_err());
        assert!(bessel_k1(-1.0).is_err());
    }
}
