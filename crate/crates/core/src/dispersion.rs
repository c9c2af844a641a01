//! Dispersion relations of the four linear equations and the large-depth
//! approximation bounds for ILW and Smith.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::gcd;

/// Constant `a` in `|ε_δ(k)| ≤ a|k|e^{−2δ|k|}`, valid for δ ≥ 0.75.
pub const ILW_GAP_CONSTANT: f64 = 2.1;
/// Constant `ã` in `|1 − e^{ikε}| ≤ ã|k|ε`.
pub const ILW_PHASE_CONSTANT: f64 = 1.1;
/// Smallest depth for which [`ILW_GAP_CONSTANT`] bounds the gap at every k ≠ 0.
pub const ILW_GAP_MIN_DEPTH: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DispersionSpec {
    /// `ω = k|k|`
    BenjaminOno,
    /// `ω = k²coth(δk) − k/δ`
    Ilw { delta: f64 },
    /// `ω = k√(1/δ + k²)`
    Smith { delta: f64 },
    /// `ω = k³`
    Kdv,
}

impl DispersionSpec {
    pub fn ilw(delta: f64) -> Result<Self> {
        check_depth(delta).map(|delta| Self::Ilw { delta })
    }

    pub fn smith(delta: f64) -> Result<Self> {
        check_depth(delta).map(|delta| Self::Smith { delta })
    }

    pub fn delta(&self) -> Option<f64> {
        match *self {
            Self::Ilw { delta } | Self::Smith { delta } => Some(delta),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::BenjaminOno => "bo",
            Self::Ilw { .. } => "ilw",
            Self::Smith { .. } => "smith",
            Self::Kdv => "kdv",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.delta() {
            Some(d) => check_depth(d).map(|_| ()),
            None => Ok(()),
        }
    }
}

impl fmt::Display for DispersionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.delta() {
            Some(d) => write!(f, "{}(delta={})", self.name(), d),
            None => f.write_str(self.name()),
        }
    }
}

pub(crate) fn check_depth(delta: f64) -> Result<f64> {
    if delta.is_finite() && delta > 0.0 {
        Ok(delta)
    } else {
        Err(Error::InvalidDepth(delta))
    }
}

/// `coth(z) − 1/z`, odd, with value 0 at z = 0.
pub fn coth_minus_inverse(z: f64) -> f64 {
    let a = z.abs();
    let v = if a < 0.25 {
        let a2 = a * a;
        // Laurent coefficients 2^{2n} B_{2n} / (2n)!
        a * (1.0 / 3.0
            + a2 * (-1.0 / 45.0
                + a2 * (2.0 / 945.0
                    + a2 * (-1.0 / 4725.0
                        + a2 * (2.0 / 93555.0
                            + a2 * (-1382.0 / 638_512_875.0 + a2 * (4.0 / 18_243_225.0)))))))
    } else {
        coth_minus_one(a) + 1.0 - 1.0 / a
    };
    v.copysign(z)
}

/// `coth(a) − 1 = 2/(e^{2a} − 1)` for a > 0, without cancellation.
pub fn coth_minus_one(a: f64) -> f64 {
    2.0 / (2.0 * a).exp_m1()
}

pub fn omega(spec: DispersionSpec, k: f64) -> f64 {
    match spec {
        DispersionSpec::BenjaminOno => k * k.abs(),
        DispersionSpec::Kdv => k * k * k,
        DispersionSpec::Smith { delta } => k * (1.0 / delta + k * k).sqrt(),
        DispersionSpec::Ilw { delta } => k * k * coth_minus_inverse(delta * k),
    }
}

pub fn phase_velocity(spec: DispersionSpec, k: f64) -> Result<f64> {
    if k == 0.0 {
        return Err(Error::ZeroWavenumber);
    }
    Ok(match spec {
        DispersionSpec::BenjaminOno => k.abs(),
        DispersionSpec::Kdv => k * k,
        DispersionSpec::Smith { delta } => (1.0 / delta + k * k).sqrt(),
        DispersionSpec::Ilw { delta } => k * coth_minus_inverse(delta * k),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityGap {
    pub k: i64,
    /// `ε_δ(k) = k coth(δk) − |k|`
    pub gap: f64,
    /// `a|k|e^{−2δ|k|}`
    pub envelope: f64,
}

impl VelocityGap {
    /// Bound on `|1 − e^{ikε_δ(k)}|`.
    pub fn phase_bound(&self) -> f64 {
        ILW_PHASE_CONSTANT * (self.k as f64).abs() * self.gap
    }
}

/// Difference between the ILW velocity without its `1/δ` drift and the BO velocity.
pub fn ilw_bo_velocity_gap(delta: f64, k: i64) -> Result<VelocityGap> {
    check_depth(delta)?;
    if k == 0 {
        return Err(Error::ZeroWavenumber);
    }
    let ka = (k as f64).abs();
    Ok(VelocityGap {
        k,
        gap: ka * coth_minus_one(delta * ka),
        envelope: ILW_GAP_CONSTANT * ka * (-2.0 * delta * ka).exp(),
    })
}

/// `f(z) = (2/z)(√(1+z) − 1) = 2/(√(1+z) + 1)`, with f(0) = 1.
pub fn smith_f(z: f64) -> f64 {
    2.0 / ((1.0 + z).sqrt() + 1.0)
}

/// Linearisation of the Smith phase factors `𝒞(z;δ) = c0 + c1 z + ε_𝒞 z²`
/// and `𝒮(z;δ) = s0 + s1 z + ε_𝒮 z²` at `t = pπ/q`, with
/// `|ε_𝒞|, |ε_𝒮| ≤ eps_bound`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmithEnvelope {
    pub theta: f64,
    pub c0: f64,
    pub c1: f64,
    pub s0: f64,
    pub s1: f64,
    pub eps_bound: f64,
}

impl SmithEnvelope {
    pub fn cos_linear(&self, z: f64) -> f64 {
        self.c0 + self.c1 * z
    }

    pub fn sin_linear(&self, z: f64) -> f64 {
        self.s0 + self.s1 * z
    }
}

pub fn smith_envelope(p: u64, q: u64, delta: f64) -> Result<SmithEnvelope> {
    check_depth(delta)?;
    if q == 0 || gcd(p, q) != 1 {
        return Err(Error::InvalidTime { p, q });
    }
    let ratio = p as f64 * PI / q as f64;
    let theta = ratio / (2.0 * delta);
    let slope = ratio / (8.0 * delta * delta);
    let (s, c) = theta.sin_cos();
    Ok(SmithEnvelope {
        theta,
        c0: c,
        c1: slope * s,
        s0: s,
        s1: -slope * c,
        eps_bound: ratio / (8.0 * delta.powi(3)) * (1.0 + ratio / (8.0 * delta)),
    })
}
