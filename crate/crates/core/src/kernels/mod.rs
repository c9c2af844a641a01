//! Convolution kernels of the nonlocal operators: the periodic Hilbert
//! kernel, the ILW kernel `C_δ` and the periodised Smith kernel.

pub mod bessel;
pub mod quadrature;

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

pub use bessel::{bessel_k1, bessel_k1_quadrature};

use crate::dispersion::{check_depth, coth_minus_one};
use crate::error::{Error, Result};
use crate::numeric::{distance_to_lattice, sign, CompensatedSum};

/// Absolute distance to a pole below which kernels are not evaluated.
pub const POLE_TOLERANCE: f64 = 1e-9;

/// Target for the truncation error of the ILW kernel series.
pub const ILW_TRUNCATION_TOLERANCE: f64 = 1e-12;

fn check_pole(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite x = {x}")));
    }
    let (dist, point) = distance_to_lattice(x, TAU);
    if dist < POLE_TOLERANCE {
        return Err(Error::Singular {
            x,
            point,
            tolerance: POLE_TOLERANCE,
        });
    }
    Ok(())
}

/// `(1/2π) cot(x/2)`.
pub fn periodic_hilbert_kernel(x: f64) -> Result<f64> {
    check_pole(x)?;
    let half = 0.5 * x;
    Ok(half.cos() / half.sin() / TAU)
}

/// Fourier multiplier of the periodic Hilbert transform, `−i sign(k)`.
pub fn hilbert_symbol(k: i64) -> Complex64 {
    Complex64::new(0.0, -sign(k as f64))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IlwKernelSpec {
    pub delta: f64,
    /// `α = η₁/ω₁` for the lattice with half-periods `ω₁ = −iδ`, `ω₃ = π`.
    pub alpha: Complex64,
    pub truncation: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IlwMethod {
    /// `−(1/2δ) Σ_{|n|≤N} coth(πx/2δ + π²n/δ)`
    CothSum,
    /// `(1/π)(αx − ζ(x))` with `ζ` from its q-series.
    Zeta,
}

impl IlwKernelSpec {
    pub fn new(delta: f64, truncation: usize) -> Result<Self> {
        check_depth(delta)?;
        if truncation == 0 {
            return Err(Error::InvalidArgument("truncation must be positive".into()));
        }
        let omega1 = Complex64::new(0.0, -delta);
        let e2 = 1.0 - 24.0 * lambert_sum(nome_squared(delta), truncation)?;
        let alpha = PI * PI * e2 / (12.0 * omega1 * omega1);
        if alpha.im.abs() > 1e-8 * alpha.re.abs().max(1.0) {
            return Err(Error::NonConvergence(format!(
                "alpha has imaginary residue {:e}",
                alpha.im
            )));
        }
        Ok(Self {
            delta,
            alpha,
            truncation,
        })
    }
}

// q² = e^{−2π²/δ}
fn nome_squared(delta: f64) -> f64 {
    (-2.0 * PI * PI / delta).exp()
}

// Σ_{n≥1} h^n / (1 − h^n)
fn lambert_sum(h: f64, max_terms: usize) -> Result<f64> {
    let mut acc = 0.0;
    let mut hn = 1.0;
    for _ in 0..max_terms {
        hn *= h;
        let term = hn / (1.0 - hn);
        acc += term;
        if term <= 1e-17 * acc.max(f64::MIN_POSITIVE) {
            return Ok(acc);
        }
    }
    Err(Error::NonConvergence(format!(
        "Lambert series with ratio {h} needs more than {max_terms} terms"
    )))
}

pub fn ilw_kernel(spec: &IlwKernelSpec, x: f64, method: IlwMethod) -> Result<f64> {
    check_pole(x)?;
    match method {
        IlwMethod::CothSum => ilw_coth_sum(spec, x),
        IlwMethod::Zeta => ilw_zeta(spec, x),
    }
}

fn ilw_coth_sum(spec: &IlwKernelSpec, x: f64) -> Result<f64> {
    let delta = spec.delta;
    let n = spec.truncation as i64;
    let a = PI * x / (2.0 * delta);
    let b = PI * PI / delta;
    // coth u = sign u + e(u); the sign count is exact, e(u) decays like e^{−2|u|}
    let edge = (b * n as f64 - a.abs()).max(0.0);
    let tail = 4.0 * (-2.0 * edge).exp() / (1.0 - (-2.0 * b).exp());
    if a.abs() >= b * n as f64 || tail / (2.0 * delta) > ILW_TRUNCATION_TOLERANCE {
        return Err(Error::NonConvergence(format!(
            "coth sum with N = {n} at x = {x}: tail estimate {:e}",
            tail / (2.0 * delta)
        )));
    }
    let mut signs = 0i64;
    let mut rest = CompensatedSum::new();
    for i in -n..=n {
        let u = a + b * i as f64;
        let s = sign(u);
        signs += s as i64;
        rest.add(s * coth_minus_one(u.abs()));
    }
    Ok(-(signs as f64 + rest.value()) / (2.0 * delta))
}

fn ilw_zeta(spec: &IlwKernelSpec, x: f64) -> Result<f64> {
    let delta = spec.delta;
    let m = (x / TAU).round();
    let x0 = x - m * TAU;
    let h = nome_squared(delta);
    let c = PI / delta;
    // ζ(x₀) = αx₀ + (π/2δ) coth(πx₀/2δ) − (2π/δ) Σ hⁿ/(1−hⁿ) sinh(nπx₀/δ)
    let mut series = CompensatedSum::new();
    let mut hn = 1.0;
    let mut converged = false;
    for i in 1..=spec.truncation {
        hn *= h;
        let term = hn / (1.0 - hn) * (i as f64 * c * x0).sinh();
        series.add(term);
        if term.abs() <= 1e-17 * series.value().abs().max(1e-300) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence(format!(
            "zeta q-series at x = {x} did not converge in {} terms",
            spec.truncation
        )));
    }
    let alpha = spec.alpha.re;
    let coth = 1.0 / (0.5 * c * x0).tanh();
    let zeta = alpha * x0 + 0.5 * c * coth - 2.0 * c * series.value();
    Ok((alpha * x0 - zeta) / PI - m / delta)
}

/// `−(i/(π√δ)) Σ_{|n|≤N} K₁(|x+2nπ|/√δ) / |x+2nπ|`.
pub fn smith_kernel_periodic(delta: f64, x: f64, truncation: usize) -> Result<Complex64> {
    check_depth(delta)?;
    check_pole(x)?;
    let root = delta.sqrt();
    let n = truncation as i64;
    // pair terms by distance from x so the sum runs from large to small
    let mut terms: Vec<f64> = Vec::with_capacity(2 * truncation + 1);
    for i in -n..=n {
        let d = (x + TAU * i as f64).abs();
        terms.push(bessel_k1(d / root)? / d);
    }
    terms.sort_by(f64::total_cmp);
    let total: CompensatedSum = terms.into_iter().collect();
    Ok(Complex64::new(0.0, -total.value() / (PI * root)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FtCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
}

/// Wavenumber cutoff of the quadrature in [`verify_k1_fourier_identity`].
pub const FT_CUTOFF: f64 = 500.0;

/// Compares `(1/√2π) ∫ e^{ikx} a²(k²+a²)^{−3/2} dk` with `√(2/π) a|x| K₁(a|x|)`.
pub fn verify_k1_fourier_identity(a: f64, x: f64) -> Result<FtCheck> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::NonPositiveArgument(a));
    }
    if x == 0.0 || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "x must be nonzero and finite, got {x}"
        )));
    }
    let xa = x.abs();
    let a2 = a * a;
    let g = |k: f64| a2 / (k * k + a2).powf(1.5);
    let dg = |k: f64| -3.0 * a2 * k / (k * k + a2).powf(2.5);
    let f = |k: f64| (k * xa).cos() * g(k);

    let panel = PI / xa;
    let panels = (FT_CUTOFF / panel).ceil() as usize;
    let mut body = CompensatedSum::new();
    for i in 0..panels {
        let lo = panel * i as f64;
        let hi = (lo + panel).min(FT_CUTOFF);
        body.add(quadrature::integrate(&f, lo, hi, 1e-14)?);
    }
    let kc = FT_CUTOFF;
    let tail = -g(kc) * (kc * xa).sin() / xa - dg(kc) * (kc * xa).cos() / (xa * xa);
    let lhs = 2.0 / TAU.sqrt() * (body.value() + tail);
    let rhs = (2.0 / PI).sqrt() * a * xa * bessel_k1(a * xa)?;
    Ok(FtCheck {
        lhs,
        rhs,
        abs_err: (lhs - rhs).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    Hilbert,
    Ilw {
        spec: IlwKernelSpec,
        method: IlwMethod,
    },
    Smith {
        delta: f64,
        truncation: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSample {
    pub x: f64,
    /// `None` at a pole or where the series did not converge.
    pub value: Option<Complex64>,
    pub pole_proximity: bool,
}

pub fn kernel_value(kind: &KernelKind, x: f64) -> Result<Complex64> {
    match kind {
        KernelKind::Hilbert => periodic_hilbert_kernel(x).map(Complex64::from),
        KernelKind::Ilw { spec, method } => ilw_kernel(spec, x, *method).map(Complex64::from),
        KernelKind::Smith { delta, truncation } => smith_kernel_periodic(*delta, x, *truncation),
    }
}

pub fn tabulate(kind: &KernelKind, grid: &[f64]) -> Vec<KernelSample> {
    grid.iter()
        .map(|&x| {
            let pole_proximity = distance_to_lattice(x, TAU).0 < POLE_TOLERANCE;
            KernelSample {
                x,
                value: kernel_value(kind, x).ok(),
                pole_proximity,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigpolylog::clausen_cl0;

    #[test]
    fn hilbert_kernel_examples() {
        assert!(periodic_hilbert_kernel(PI).unwrap().abs() < 1e-17);
        assert!((periodic_hilbert_kernel(PI / 2.0).unwrap() - 1.0 / TAU).abs() < 1e-16);
        let x = 1e-6;
        assert!((x * periodic_hilbert_kernel(x).unwrap() - 1.0 / PI).abs() < 1e-10);
        assert!(periodic_hilbert_kernel(TAU).is_err());
    }

    #[test]
    fn hilbert_kernel_is_clausen_zero() {
        for x in [0.3, -1.7, 2.9, 5.0] {
            let a = periodic_hilbert_kernel(x).unwrap();
            let b = 2.0 * clausen_cl0(x).unwrap() / TAU;
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn hilbert_symbol_convention() {
        assert_eq!(hilbert_symbol(0), Complex64::new(0.0, 0.0));
        assert_eq!(hilbert_symbol(5), Complex64::new(0.0, -1.0));
        assert_eq!(hilbert_symbol(-5), Complex64::new(0.0, 1.0));
        // symbol·(−k²) = i k|k| = iω_BO(k)
        for k in [-4i64, 3] {
            let kf = k as f64;
            let lhs = hilbert_symbol(k) * (-kf * kf);
            assert_eq!(lhs, Complex64::new(0.0, kf * kf.abs()));
        }
    }

    #[test]
    fn ilw_alpha_is_real() {
        let spec = IlwKernelSpec::new(1.0, 400).unwrap();
        assert_eq!(spec.alpha.im, 0.0);
        // δ large: E₂ → 1 − 24 e^{−2π²/δ}·… and α → −π²/(12δ²)
        let spec = IlwKernelSpec::new(0.5, 400).unwrap();
        assert!((spec.alpha.re + PI * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn ilw_oddness_and_quasi_periodicity() {
        let spec = IlwKernelSpec::new(1.0, 400).unwrap();
        for method in [IlwMethod::CothSum, IlwMethod::Zeta] {
            let a = ilw_kernel(&spec, 0.7, method).unwrap();
            let b = ilw_kernel(&spec, -0.7, method).unwrap();
            assert!((a + b).abs() < 1e-10);
            let c0 = ilw_kernel(&spec, 0.5, method).unwrap();
            let c1 = ilw_kernel(&spec, 0.5 + TAU, method).unwrap();
            assert!((c1 - c0 + 1.0).abs() < 1e-8, "{method:?}");
        }
    }

    #[test]
    fn ilw_methods_agree() {
        for delta in [0.3, 1.0, 5.0, 40.0] {
            let spec = IlwKernelSpec::new(delta, 400).unwrap();
            for x in [1.2, -0.4, 3.0, 9.5, -20.0] {
                let a = ilw_kernel(&spec, x, IlwMethod::CothSum).unwrap();
                let b = ilw_kernel(&spec, x, IlwMethod::Zeta).unwrap();
                assert!((a - b).abs() <= 1e-8, "delta={delta} x={x} {a} {b}");
            }
        }
    }

    #[test]
    fn ilw_truncation_too_small() {
        let spec = IlwKernelSpec::new(100.0, 5).unwrap_or(IlwKernelSpec {
            delta: 100.0,
            alpha: Complex64::new(0.0, 0.0),
            truncation: 5,
        });
        assert!(matches!(
            ilw_kernel(&spec, 1.0, IlwMethod::CothSum),
            Err(Error::NonConvergence(_))
        ));
    }

    #[test]
    fn ilw_tends_to_cotangent() {
        for x in [0.5, 1.0, 2.0] {
            let limit = -periodic_hilbert_kernel(x).unwrap();
            let gaps: Vec<f64> = [5.0, 20.0, 100.0]
                .iter()
                .map(|&d| {
                    let spec = IlwKernelSpec::new(d, 1000).unwrap();
                    (ilw_kernel(&spec, x, IlwMethod::CothSum).unwrap() - limit).abs()
                })
                .collect();
            assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "x={x} {gaps:?}");
        }
    }

    #[test]
    fn smith_kernel_properties() {
        let v = smith_kernel_periodic(1.0, 1.0, 10).unwrap();
        assert_eq!(v.re, 0.0);
        assert!(v.im < 0.0);
        let w = smith_kernel_periodic(1.0, -1.0, 10).unwrap();
        assert!((v.norm() - w.norm()).abs() < 1e-12);
        let v20 = smith_kernel_periodic(1.0, 1.0, 20).unwrap();
        assert!((v - v20).norm() <= 1e-12);
        assert!(smith_kernel_periodic(1.0, 0.0, 10).is_err());
    }

    #[test]
    fn k1_fourier_identity() {
        for (a, x) in [(1.0, 1.0), (1.0, 2.0), (0.5, 0.5), (2.0, 2.0)] {
            let r = verify_k1_fourier_identity(a, x).unwrap();
            assert!(r.abs_err <= 1e-4, "a={a} x={x} err={}", r.abs_err);
        }
        let p = verify_k1_fourier_identity(1.0, 1.3).unwrap();
        let m = verify_k1_fourier_identity(1.0, -1.3).unwrap();
        assert!((p.lhs - m.lhs).abs() < 1e-12);
        assert!(verify_k1_fourier_identity(1.0, 0.0).is_err());
    }

    #[test]
    fn tabulate_marks_poles() {
        let grid = [0.0, 1.0, TAU];
        let rows = tabulate(&KernelKind::Hilbert, &grid);
        assert!(rows[0].pole_proximity && rows[0].value.is_none());
        assert!(!rows[1].pole_proximity && rows[1].value.is_some());
        assert!(rows[2].pole_proximity);
    }
}
