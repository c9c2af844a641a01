//! Closed-form solutions of the periodic Riemann problem at rational times.
//!
//! At `t = pπ/q` the step evolves into finitely many translated order-1
//! polylogarithms `S^{2q}_{2j+1}`: exactly for BO and KdV, up to an
//! exponentially small residual for ILW and up to a certified `O(δ^{-3})`
//! error for Smith.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use crate::dispersion::{check_depth, smith_envelope, DispersionSpec};
use crate::error::{Error, Result};
use crate::evolution::{Method, RationalTime, SolutionField, Time};
use crate::numeric::{canonical_location, reduce_angle};
use crate::trigpolylog::{
    distributional_derivative, eval_family, CotTerm, DeltaTerm, DerivativeDecomposition, Family,
    PolylogIndex,
};
use crate::{ZETA_4, ZETA_5};

/// `weight · F^k_{j,r}(x − shift)` with `F` one of `S`, `C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RevivalTerm {
    pub family: Family,
    pub index: PolylogIndex,
    pub shift: f64,
    pub weight: f64,
}

impl RevivalTerm {
    pub fn order(&self) -> u32 {
        self.index.r()
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        Ok(self.weight * eval_family(self.index, self.family, x - self.shift)?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RevivalProfile {
    pub spec: DispersionSpec,
    pub time: RationalTime,
    pub terms: Vec<RevivalTerm>,
    pub constant: f64,
    /// Pointwise bound on the distance to the true solution; 0 when exact.
    pub error_bound: f64,
}

impl RevivalProfile {
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let mut acc = self.constant;
        for term in &self.terms {
            acc += term.evaluate(x)?;
        }
        Ok(acc)
    }

    /// Node locations of the order-1 terms, canonicalised to [−π, π) and sorted.
    pub fn singular_points(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = Vec::new();
        for term in self
            .terms
            .iter()
            .filter(|t| t.order() == 1 && t.weight != 0.0)
        {
            let k = term.index.k();
            for l in 0..k {
                let p = canonical_location(term.shift + TAU * f64::from(l) / f64::from(k));
                if !pts.iter().any(|&e| periodic_distance(e, p) < 1e-12) {
                    pts.push(p);
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts
    }

    /// Periodic distance from `x` to the nearest singular point.
    pub fn distance_to_singular(&self, x: f64) -> f64 {
        self.singular_points()
            .iter()
            .map(|&p| periodic_distance(x, p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Closed form on a grid; singular points become `None`.
    pub fn field(&self, grid: &[f64]) -> SolutionField {
        let values = grid.par_iter().map(|&x| self.evaluate(x).ok()).collect();
        SolutionField {
            grid: grid.to_vec(),
            values,
            spec: self.spec,
            time: Time::Rational(self.time),
            n_modes: 0,
            method: Method::Closed,
        }
    }
}

pub(crate) fn periodic_distance(a: f64, b: f64) -> f64 {
    reduce_angle(a - b).abs()
}

// π·(n mod 2q)/q, the shift n·pπ/q reduced exactly.
fn lattice_shift(n: u128, q: u64) -> f64 {
    let m = n % (2 * u128::from(q));
    reduce_angle(PI * m as f64 / q as f64)
}

fn step_terms(
    time: RationalTime,
    shift_of: impl Fn(u64) -> f64,
    layers: &[(Family, u32, f64)],
) -> Result<Vec<RevivalTerm>> {
    let q = time.q();
    let k = u32::try_from(2 * q).map_err(|_| Error::InvalidTime { p: time.p(), q })?;
    let mut terms = Vec::with_capacity(layers.len() * q as usize);
    for &(family, r, weight) in layers {
        for j in 0..q {
            let m = 2 * j + 1;
            terms.push(RevivalTerm {
                family,
                index: PolylogIndex::new(m as u32, k, r)?,
                shift: shift_of(m),
                weight,
            });
        }
    }
    Ok(terms)
}

pub fn bo_revival(time: RationalTime) -> Result<RevivalProfile> {
    let (p, q) = (time.p(), time.q());
    let terms = step_terms(
        time,
        |m| lattice_shift(u128::from(m) * u128::from(p), q),
        &[(Family::Sine, 1, 2.0 / PI)],
    )?;
    Ok(RevivalProfile {
        spec: DispersionSpec::BenjaminOno,
        time,
        terms,
        constant: 0.5,
        error_bound: 0.0,
    })
}

pub fn kdv_revival(time: RationalTime) -> Result<RevivalProfile> {
    let (p, q) = (time.p(), time.q());
    let terms = step_terms(
        time,
        |m| lattice_shift(u128::from(m) * u128::from(m) * u128::from(p), q),
        &[(Family::Sine, 1, 2.0 / PI)],
    )?;
    Ok(RevivalProfile {
        spec: DispersionSpec::Kdv,
        time,
        terms,
        constant: 0.5,
        error_bound: 0.0,
    })
}

/// Phase-shifted BO revival; differs from the ILW solution by the residual
/// of [`crate::evolution::ilw_residual`].
pub fn ilw_revival(time: RationalTime, delta: f64) -> Result<RevivalProfile> {
    let spec = DispersionSpec::ilw(delta)?;
    let (p, q) = (time.p(), time.q());
    let drift = time.t() / delta;
    let terms = step_terms(
        time,
        |m| reduce_angle(lattice_shift(u128::from(m) * u128::from(p), q) - drift),
        &[(Family::Sine, 1, 2.0 / PI)],
    )?;
    Ok(RevivalProfile {
        spec,
        time,
        terms,
        constant: 0.5,
        error_bound: 0.0,
    })
}

pub fn smith_revival(time: RationalTime, delta: f64) -> Result<RevivalProfile> {
    let spec = DispersionSpec::smith(delta)?;
    let (p, q) = (time.p(), time.q());
    let env = smith_envelope(p, q, delta)?;
    let (s, c) = env.theta.sin_cos();
    let w3 = p as f64 / (4.0 * q as f64 * delta * delta);
    let terms = step_terms(
        time,
        |m| lattice_shift(u128::from(m) * u128::from(p), q),
        &[
            (Family::Sine, 1, 2.0 / PI * c),
            (Family::Cosine, 1, -2.0 / PI * s),
            (Family::Cosine, 3, w3 * c),
            (Family::Sine, 3, w3 * s),
        ],
    )?;
    Ok(RevivalProfile {
        spec,
        time,
        terms,
        constant: 0.5,
        error_bound: smith_error_bound(p, q, delta),
    })
}

/// `pζ(5)/(2qδ³)·(1 + pπ/(8qδ))`.
pub fn smith_error_bound(p: u64, q: u64, delta: f64) -> f64 {
    let ratio = p as f64 / q as f64;
    ratio * ZETA_5 / (2.0 * delta.powi(3)) * (1.0 + ratio * PI / (8.0 * delta))
}

pub fn revival_profile(spec: DispersionSpec, time: RationalTime) -> Result<RevivalProfile> {
    match spec {
        DispersionSpec::BenjaminOno => bo_revival(time),
        DispersionSpec::Kdv => kdv_revival(time),
        DispersionSpec::Ilw { delta } => ilw_revival(time, delta),
        DispersionSpec::Smith { delta } => smith_revival(time, delta),
    }
}

pub fn bo_rational_profile(time: RationalTime, x: f64) -> Result<f64> {
    bo_revival(time)?.evaluate(x)
}

pub fn kdv_rational_profile(time: RationalTime, x: f64) -> Result<f64> {
    kdv_revival(time)?.evaluate(x)
}

pub fn ilw_rational_profile(time: RationalTime, delta: f64, x: f64) -> Result<f64> {
    ilw_revival(time, delta)?.evaluate(x)
}

/// `(value, error_bound)`.
pub fn smith_rational_profile(time: RationalTime, delta: f64, x: f64) -> Result<(f64, f64)> {
    let profile = smith_revival(time, delta)?;
    Ok((profile.evaluate(x)?, profile.error_bound))
}

/// Fundamental solution at a rational time as deltas, cotangents, a constant
/// and (Smith only) smooth order-2 corrections.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalDecomposition {
    /// The `1/(2π)` restoring the mean removed by the integrated delta.
    pub leading_constant: f64,
    /// Net constant: `leading_constant` plus the constants of the derivative terms.
    pub constant: f64,
    pub delta_terms: Vec<DeltaTerm>,
    pub cot_terms: Vec<CotTerm>,
    pub residual_terms: Vec<RevivalTerm>,
    pub residual_bound: f64,
}

impl FundamentalDecomposition {
    /// Everything except the deltas.
    pub fn smooth_part(&self, x: f64) -> Result<f64> {
        let regular = DerivativeDecomposition {
            delta_terms: Vec::new(),
            cot_terms: self.cot_terms.clone(),
            constant: self.constant,
        };
        let mut acc = regular.smooth_part(x)?;
        for term in &self.residual_terms {
            acc += term.evaluate(x)?;
        }
        Ok(acc)
    }

    pub fn total_delta_mass(&self) -> f64 {
        self.delta_terms.iter().map(|d| d.weight).sum()
    }

    /// `∫_{−π}^{π} F`: cotangents integrate to zero in principal value and
    /// order-2 polylogarithms have zero mean.
    pub fn total_mass(&self) -> f64 {
        TAU * self.constant + self.total_delta_mass()
    }
}

const COALESCE_TOL: f64 = 1e-12;

fn derivative_sum(
    time: RationalTime,
    family: Family,
    scale: f64,
) -> Result<DerivativeDecomposition> {
    let (p, q) = (time.p(), time.q());
    let k = u32::try_from(2 * q).map_err(|_| Error::InvalidTime { p, q })?;
    let mut total = DerivativeDecomposition::default();
    for m in 1..=k {
        let d = distributional_derivative(PolylogIndex::new(m, k, 1)?, family)?;
        let shift = lattice_shift(u128::from(m) * u128::from(p), q);
        total.extend(&d.translated(shift).scaled(scale));
    }
    Ok(total)
}

/// `F = 1/(2π) + (1/π) Σ_{m=1}^{2q} ∂_x S^{2q}_m(x − mpπ/q)`.
pub fn bo_fundamental_decomposition(time: RationalTime) -> Result<FundamentalDecomposition> {
    let sum = derivative_sum(time, Family::Sine, 1.0 / PI)?.coalesced(COALESCE_TOL);
    let leading = 1.0 / TAU;
    Ok(FundamentalDecomposition {
        leading_constant: leading,
        constant: leading + sum.constant,
        delta_terms: sum.delta_terms,
        cot_terms: sum.cot_terms,
        residual_terms: Vec::new(),
        residual_bound: 0.0,
    })
}

/// Approximate Smith fundamental solution with order-2 corrections; the
/// pointwise error is at most `residual_bound = (2ε/π)ζ(4)`.
pub fn smith_fundamental_approx(
    time: RationalTime,
    delta: f64,
) -> Result<FundamentalDecomposition> {
    check_depth(delta)?;
    let (p, q) = (time.p(), time.q());
    let env = smith_envelope(p, q, delta)?;
    let (s, c) = env.theta.sin_cos();
    let mut sum = derivative_sum(time, Family::Sine, c / PI)?;
    sum.extend(&derivative_sum(time, Family::Cosine, -s / PI)?);
    let sum = sum.coalesced(COALESCE_TOL);

    let w2 = p as f64 / (8.0 * q as f64 * delta * delta);
    let k = u32::try_from(2 * q).map_err(|_| Error::InvalidTime { p, q })?;
    let mut residual_terms = Vec::with_capacity(2 * k as usize);
    for (family, weight) in [(Family::Sine, -w2 * c), (Family::Cosine, w2 * s)] {
        for m in 1..=k {
            residual_terms.push(RevivalTerm {
                family,
                index: PolylogIndex::new(m, k, 2)?,
                shift: lattice_shift(u128::from(m) * u128::from(p), q),
                weight,
            });
        }
    }
    let leading = 1.0 / TAU;
    Ok(FundamentalDecomposition {
        leading_constant: leading,
        constant: leading + sum.constant,
        delta_terms: sum.delta_terms,
        cot_terms: sum.cot_terms,
        residual_terms,
        residual_bound: 2.0 * env.eps_bound / PI * ZETA_4,
    })
}
