//! Spectral evolution of periodic data, `u(t,x) = Σ b_k e^{i(kx − ω(k)t)}`.
//!
//! Truncation keeps the modes |k| ≤ N. Sums run in the fixed order
//! 0, 1, −1, 2, −2, … with compensated accumulation, so results do not
//! depend on how a grid sweep is scheduled.
//!
//! At rational times `t = pπ/q` the frequency is split as `ω(k) = n(k) + ρ(k)`
//! with `n(k)` an integer (`k|k|` or `k³`). The phase `n(k)pπ/q` is then
//! reduced modulo 2π exactly in integer arithmetic, which keeps the
//! `N = 10^5` sums free of phase round-off.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dispersion::{check_depth, coth_minus_inverse, coth_minus_one, omega, DispersionSpec};
use crate::error::{Error, Result};
use crate::numeric::{gcd, reduce_angle, CompensatedComplexSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalTime {
    p: u64,
    q: u64,
}

impl RationalTime {
    /// `t = pπ/q`, reduced to lowest terms.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidTime { p, q });
        }
        if p == 0 {
            return Ok(Self { p: 0, q: 1 });
        }
        let g = gcd(p, q);
        Ok(Self { p: p / g, q: q / g })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn t(&self) -> f64 {
        self.p as f64 * PI / self.q as f64
    }
}

impl fmt::Display for RationalTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}π/{}", self.p, self.q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Time {
    Real(f64),
    Rational(RationalTime),
}

impl Time {
    pub fn value(&self) -> f64 {
        match self {
            Time::Real(t) => *t,
            Time::Rational(r) => r.t(),
        }
    }
}

impl From<RationalTime> for Time {
    fn from(r: RationalTime) -> Self {
        Time::Rational(r)
    }
}

impl From<f64> for Time {
    fn from(t: f64) -> Self {
        Time::Real(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `(1 + sign x)/2` on (−π, π).
    RiemannStep,
    /// `γ(x) = (1/π) Σ_{k≥1} sin(kx)/k`.
    IntegratedDelta,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierInitialData {
    preset: Preset,
    custom: BTreeMap<i64, Complex64>,
}

impl FourierInitialData {
    pub fn riemann_step() -> Self {
        Self {
            preset: Preset::RiemannStep,
            custom: BTreeMap::new(),
        }
    }

    pub fn integrated_delta() -> Self {
        Self {
            preset: Preset::IntegratedDelta,
            custom: BTreeMap::new(),
        }
    }

    /// Finitely many coefficients; absent modes are zero.
    pub fn custom(coefficients: BTreeMap<i64, Complex64>) -> Self {
        Self {
            preset: Preset::Custom,
            custom: coefficients,
        }
    }

    pub fn preset(&self) -> Preset {
        self.preset
    }

    pub fn coefficient(&self, k: i64) -> Complex64 {
        match self.preset {
            Preset::RiemannStep => {
                if k == 0 {
                    Complex64::new(0.5, 0.0)
                } else if k % 2 != 0 {
                    Complex64::new(0.0, -1.0 / (PI * k as f64))
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Preset::IntegratedDelta => {
                if k == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, -1.0 / (2.0 * PI * k as f64))
                }
            }
            Preset::Custom => self.custom.get(&k).copied().unwrap_or_default(),
        }
    }

    /// `b_{−k} = conj(b_k)` for every stored mode.
    pub fn is_real(&self) -> bool {
        match self.preset {
            Preset::Custom => self.custom.iter().all(|(&k, b)| {
                (self.coefficient(-k) - b.conj()).norm() <= 1e-15 * b.norm().max(1.0)
            }),
            _ => true,
        }
    }
}

/// A frequency `ω(k)` split into an integer part and a real remainder.
pub trait Symbol: Sync {
    fn split(&self, k: i64) -> (i128, f64);

    fn frequency(&self, k: i64) -> f64 {
        let (n, rho) = self.split(k);
        n as f64 + rho
    }
}

impl Symbol for DispersionSpec {
    fn split(&self, k: i64) -> (i128, f64) {
        let ki = i128::from(k);
        let kf = k as f64;
        match *self {
            DispersionSpec::BenjaminOno => (ki * ki.abs(), 0.0),
            DispersionSpec::Kdv => (ki * ki * ki, 0.0),
            DispersionSpec::Ilw { delta } => {
                if k == 0 {
                    return (0, 0.0);
                }
                let ka = kf.abs();
                let gap = ka * coth_minus_one(delta * ka);
                (ki * ki.abs(), kf * gap - kf / delta)
            }
            DispersionSpec::Smith { delta } => {
                let inv = 1.0 / delta;
                (
                    ki * ki.abs(),
                    kf * inv / ((inv + kf * kf).sqrt() + kf.abs()),
                )
            }
        }
    }

    fn frequency(&self, k: i64) -> f64 {
        omega(*self, k as f64)
    }
}

/// ILW frequency rescaled for the shallow limit, `3ω_δ(k)/δ → k³` as δ → 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaledIlw {
    pub delta: f64,
}

impl Symbol for RescaledIlw {
    fn split(&self, k: i64) -> (i128, f64) {
        let ki = i128::from(k);
        let kf = k as f64;
        let w = 3.0 * kf * kf * coth_minus_inverse(self.delta * kf) / self.delta;
        (ki * ki * ki, w - kf * kf * kf)
    }
}

/// Evolved Fourier coefficients for |k| ≤ N.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralState {
    n_modes: u64,
    coeffs: Vec<Complex64>,
}

impl SpectralState {
    pub fn n_modes(&self) -> u64 {
        self.n_modes
    }

    pub fn coefficient(&self, k: i64) -> Complex64 {
        let idx = k + self.n_modes as i64;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    /// `Σ_{|k|≤N} c_k e^{ikx}`.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        const RESYNC: u64 = 256;
        let x = reduce_angle(x);
        let (s1, c1) = x.sin_cos();
        let step = Complex64::new(c1, s1);
        let mut rot = Complex64::new(1.0, 0.0);
        let mut acc = CompensatedComplexSum::new();
        acc.add(self.coefficient(0));
        for k in 1..=self.n_modes {
            if k % RESYNC == 0 {
                let (s, c) = reduce_angle(k as f64 * x).sin_cos();
                rot = Complex64::new(c, s);
            } else {
                rot *= step;
            }
            let ki = k as i64;
            acc.add(self.coefficient(ki) * rot);
            acc.add(self.coefficient(-ki) * rot.conj());
        }
        acc.value()
    }

    pub fn evaluate_real(&self, x: f64) -> f64 {
        self.evaluate(x).re
    }
}

/// Phase `ω(k)t` reduced modulo 2π.
fn phase<S: Symbol + ?Sized>(symbol: &S, k: i64, time: Time) -> f64 {
    match time {
        Time::Rational(r) => {
            let (n, rho) = symbol.split(k);
            let two_q = 2 * i128::from(r.q());
            let m = (n * i128::from(r.p())).rem_euclid(two_q);
            reduce_angle(PI * m as f64 / r.q() as f64 + rho * r.t())
        }
        Time::Real(t) => reduce_angle(symbol.frequency(k) * t),
    }
}

/// `b_k e^{−iω(k)t}` for |k| ≤ N.
pub fn evolve_coefficients<S: Symbol + ?Sized>(
    symbol: &S,
    data: &FourierInitialData,
    time: Time,
    n_modes: u64,
) -> SpectralState {
    let n = n_modes as i64;
    let coeffs = (-n..=n)
        .map(|k| {
            let b = data.coefficient(k);
            if b == Complex64::new(0.0, 0.0) {
                return b;
            }
            let (s, c) = phase(symbol, k, time).sin_cos();
            b * Complex64::new(c, -s)
        })
        .collect();
    SpectralState { n_modes, coeffs }
}

pub fn evolve_series_complex<S: Symbol + ?Sized>(
    symbol: &S,
    data: &FourierInitialData,
    time: Time,
    x: f64,
    n_modes: u64,
) -> Complex64 {
    evolve_coefficients(symbol, data, time, n_modes).evaluate(x)
}

/// Real part of the truncated evolution at a single point.
pub fn evolve_series(
    spec: DispersionSpec,
    data: &FourierInitialData,
    time: Time,
    x: f64,
    n_modes: u64,
) -> f64 {
    evolve_series_complex(&spec, data, time, x, n_modes).re
}

/// `v = u_ILW(t, x) − u_BO(t, x + t/δ)` for step data, both truncated at N.
pub fn ilw_residual(delta: f64, time: Time, x: f64, n_modes: u64) -> Result<f64> {
    let ilw = DispersionSpec::ilw(delta)?;
    let data = FourierInitialData::riemann_step();
    let u_ilw = evolve_series(ilw, &data, time, x, n_modes);
    let u_bo = evolve_series(
        DispersionSpec::BenjaminOno,
        &data,
        time,
        x + time.value() / delta,
        n_modes,
    );
    Ok(u_ilw - u_bo)
}

/// Step data evolved under the rescaled ILW frequency `3ω_δ(k)/δ`.
pub fn kdv_rescaled_ilw(delta: f64, time: Time, x: f64, n_modes: u64) -> Result<f64> {
    check_depth(delta)?;
    let symbol = RescaledIlw { delta };
    let data = FourierInitialData::riemann_step();
    Ok(evolve_series_complex(&symbol, &data, time, x, n_modes).re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Series,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Series => "series",
        }
    }
}

/// Values on a grid; `None` marks excluded (singular) points.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub grid: Vec<f64>,
    pub values: Vec<Option<f64>>,
    pub spec: DispersionSpec,
    pub time: Time,
    pub n_modes: u64,
    pub method: Method,
}

/// Truncated series on a grid, evaluated in parallel.
pub fn series_field(
    spec: DispersionSpec,
    data: &FourierInitialData,
    time: Time,
    grid: &[f64],
    n_modes: u64,
) -> SolutionField {
    let state = evolve_coefficients(&spec, data, time, n_modes);
    let values = grid
        .par_iter()
        .map(|&x| Some(state.evaluate_real(x)))
        .collect();
    SolutionField {
        grid: grid.to_vec(),
        values,
        spec,
        time,
        n_modes,
        method: Method::Series,
    }
}
