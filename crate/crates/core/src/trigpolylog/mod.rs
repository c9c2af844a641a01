//! Trigonometric polylogarithms
//!
//! ```text
//! E^k_{j,r}(x) = Σ_{n≥0} e^{i(nk+j)x} / (nk+j)^r,   C = Re E,  S = Im E
//! ```
//!
//! Closed forms are k-term combinations of Clausen functions evaluated at the
//! shifted arguments `x + 2πl/k`, obtained by filtering the full polylogarithm
//! `Li_r(e^{ix})` with the roots of unity `e^{−2πijl/k}`. The points `2πl/k`
//! are the nodes: for r = 1 the functions jump and/or have logarithmic cusps
//! there, for r = 2 they have corners or points of infinite gradient.

pub mod clausen;

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

pub use clausen::{clausen_cl, clausen_cl0, glaisher_sl, CLAUSEN_POLE_TOLERANCE};

use crate::error::{Error, Result};
use crate::numeric::{
    canonical_location, distance_to_lattice, reduce_angle, unit_root, CompensatedComplexSum,
};

/// Highest order with a closed form.
pub const MAX_ORDER: u32 = 3;

/// Tolerance below which a trigonometric factor counts as zero when
/// classifying nodes.
pub const VANISHING_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolylogIndex {
    j: u32,
    k: u32,
    r: u32,
}

impl PolylogIndex {
    pub fn new(j: u32, k: u32, r: u32) -> Result<Self> {
        if k == 0 || j == 0 || j > k || r == 0 {
            return Err(Error::InvalidIndex { j, k, r });
        }
        Ok(Self { j, k, r })
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Node spacing 2π/k.
    pub fn node_spacing(&self) -> f64 {
        TAU / f64::from(self.k)
    }

    /// Distance to a node below which r = 1 evaluation is refused.
    pub fn node_tolerance(&self) -> f64 {
        1e-9 * self.node_spacing()
    }

    pub fn with_order(&self, r: u32) -> Result<Self> {
        Self::new(self.j, self.k, r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `S`, the imaginary part (sine series).
    Sine,
    /// `C`, the real part (cosine series).
    Cosine,
}

impl Family {
    pub fn label(&self) -> &'static str {
        match self {
            Family::Sine => "S",
            Family::Cosine => "C",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    pub k: u32,
    pub nodes: Vec<f64>,
}

/// Nodes `2πl/k` lying in [−π, π], ascending.
pub fn node_set(k: u32) -> NodeSet {
    let ki = i64::from(k.max(1));
    let nodes = (-ki..=ki)
        .filter(|l| 2 * l.abs() <= ki)
        .map(|l| {
            if 2 * l == ki {
                PI
            } else if 2 * l == -ki {
                -PI
            } else {
                TAU * l as f64 / ki as f64
            }
        })
        .collect();
    NodeSet { k, nodes }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cusp {
    Up,
    Down,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    /// r = 1: a jump (possibly zero) superposed on a logarithmic cusp (possibly absent).
    JumpCusp,
    /// r = 2: `x log|x|` behaviour.
    InfiniteGradient,
    /// r = 2: `|x|` behaviour.
    Corner,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeBehaviour {
    /// `f(node⁺) − f(node⁻)`; zero for r = 2.
    pub jump_height: f64,
    pub cusp: Cusp,
    pub kind: NodeKind,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaTerm {
    pub location: f64,
    pub weight: f64,
}

/// `weight · cot(x/2 + shift)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CotTerm {
    pub shift: f64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct DerivativeDecomposition {
    pub delta_terms: Vec<DeltaTerm>,
    pub cot_terms: Vec<CotTerm>,
    pub constant: f64,
}

impl DerivativeDecomposition {
    /// Regular part `constant + Σ w cot(x/2 + shift)`.
    pub fn smooth_part(&self, x: f64) -> Result<f64> {
        let mut acc = self.constant;
        for term in &self.cot_terms {
            let arg = 0.5 * x + term.shift;
            let s = arg.sin();
            if s.abs() < 1e-12 {
                return Err(Error::Singular {
                    x,
                    point: canonical_location(-2.0 * term.shift),
                    tolerance: 2e-12,
                });
            }
            acc += term.weight * arg.cos() / s;
        }
        Ok(acc)
    }

    pub fn total_delta_mass(&self) -> f64 {
        self.delta_terms.iter().map(|d| d.weight).sum()
    }

    /// Decomposition of `x ↦ f'(x − s)`.
    pub fn translated(&self, s: f64) -> Self {
        Self {
            delta_terms: self
                .delta_terms
                .iter()
                .map(|d| DeltaTerm {
                    location: canonical_location(d.location + s),
                    weight: d.weight,
                })
                .collect(),
            cot_terms: self
                .cot_terms
                .iter()
                .map(|c| CotTerm {
                    shift: (c.shift - 0.5 * s).rem_euclid(PI),
                    weight: c.weight,
                })
                .collect(),
            constant: self.constant,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            delta_terms: self
                .delta_terms
                .iter()
                .map(|d| DeltaTerm {
                    location: d.location,
                    weight: d.weight * factor,
                })
                .collect(),
            cot_terms: self
                .cot_terms
                .iter()
                .map(|c| CotTerm {
                    shift: c.shift,
                    weight: c.weight * factor,
                })
                .collect(),
            constant: self.constant * factor,
        }
    }

    pub fn extend(&mut self, other: &Self) {
        self.delta_terms.extend_from_slice(&other.delta_terms);
        self.cot_terms.extend_from_slice(&other.cot_terms);
        self.constant += other.constant;
    }

    /// Merge terms sharing a location (or cot shift) within `tol` and drop
    /// those whose merged weight is below `tol` in magnitude.
    pub fn coalesced(&self, tol: f64) -> Self {
        let mut deltas: Vec<DeltaTerm> = Vec::new();
        for d in &self.delta_terms {
            match deltas
                .iter_mut()
                .find(|e| periodic_gap(e.location, d.location, TAU) <= tol)
            {
                Some(e) => e.weight += d.weight,
                None => deltas.push(*d),
            }
        }
        deltas.retain(|d| d.weight.abs() > tol);
        deltas.sort_by(|a, b| a.location.total_cmp(&b.location));

        let mut cots: Vec<CotTerm> = Vec::new();
        for c in &self.cot_terms {
            match cots
                .iter_mut()
                .find(|e| periodic_gap(e.shift, c.shift, PI) <= tol)
            {
                Some(e) => e.weight += c.weight,
                None => cots.push(*c),
            }
        }
        cots.retain(|c| c.weight.abs() > tol);
        cots.sort_by(|a, b| a.shift.total_cmp(&b.shift));

        Self {
            delta_terms: deltas,
            cot_terms: cots,
            constant: self.constant,
        }
    }
}

fn periodic_gap(a: f64, b: f64, period: f64) -> f64 {
    let d = (a - b).rem_euclid(period);
    d.min(period - d)
}

/// `Σ_{n=0}^{N} e^{i(nk+j)x} / (nk+j)^r`, summed directly.
///
/// The phase is advanced by a rotation recurrence and resynchronised with a
/// direct `sin_cos` every 256 terms.
pub fn series_partial_sum(idx: PolylogIndex, x: f64, n_max: u64) -> Complex64 {
    const RESYNC: u64 = 256;
    let k = f64::from(idx.k);
    let j = f64::from(idx.j);
    let r = idx.r as i32;
    let x = reduce_angle(x);
    let (sk, ck) = (k * x).sin_cos();
    let step = Complex64::new(ck, sk);
    let mut acc = CompensatedComplexSum::new();
    let mut phase = Complex64::new(1.0, 0.0);
    for n in 0..=n_max {
        let m = n as f64 * k + j;
        if n % RESYNC == 0 {
            let (s, c) = reduce_angle(m * x).sin_cos();
            phase = Complex64::new(c, s);
        }
        acc.add(phase / m.powi(r));
        phase *= step;
    }
    acc.value()
}

/// Closed-form `(S^k_{j,r}(x), C^k_{j,r}(x))` for r ≤ 3.
pub fn eval_trig_polylog(idx: PolylogIndex, x: f64) -> Result<(f64, f64)> {
    let r = idx.r;
    if r > MAX_ORDER {
        return Err(Error::UnsupportedOrder(r));
    }
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite x = {x}")));
    }
    let spacing = idx.node_spacing();
    if r == 1 {
        let (dist, point) = distance_to_lattice(x, spacing);
        if dist < idx.node_tolerance() {
            return Err(Error::Singular {
                x,
                point,
                tolerance: idx.node_tolerance(),
            });
        }
    }
    let x0 = reduce_angle(x);
    let k = idx.k;
    let mut s_acc = 0.0;
    let mut c_acc = 0.0;
    for l in 1..=k {
        let (cos_t, sin_t) = unit_root(i64::from(idx.j) * i64::from(l), k);
        let y = reduce_angle(x0 + TAU * f64::from(l) / f64::from(k));
        let (cl, sl) = clausen_pair(r, y);
        if r % 2 == 1 {
            s_acc += -sin_t * cl + cos_t * sl;
            c_acc += cos_t * cl + sin_t * sl;
        } else {
            s_acc += cos_t * cl - sin_t * sl;
            c_acc += sin_t * cl + cos_t * sl;
        }
    }
    let inv_k = 1.0 / f64::from(k);
    Ok((s_acc * inv_k, c_acc * inv_k))
}

/// One family of [`eval_trig_polylog`].
pub fn eval_family(idx: PolylogIndex, family: Family, x: f64) -> Result<f64> {
    let (s, c) = eval_trig_polylog(idx, x)?;
    Ok(match family {
        Family::Sine => s,
        Family::Cosine => c,
    })
}

// (Cl_r(y), Sl_r(y)) for reduced y; the caller has already kept r = 1 away from y = 0.
fn clausen_pair(r: u32, y: f64) -> (f64, f64) {
    let sl = glaisher_sl(r, y).expect("order checked by caller");
    let cl = match r {
        1 => clausen::cl1_unchecked(y),
        2 => clausen::cl2_reduced(y),
        _ => clausen::cl3_reduced(y),
    };
    (cl, sl)
}

/// Behaviour of `S^k_{j,r}` or `C^k_{j,r}` at the node `2πl/k`.
///
/// For r = 1 the S-family jumps by `(π/k)cos(2πjl/k)` and carries a cusp of
/// sign `sin(2πjl/k)`; the C-family jumps by `−(π/k)sin(2πjl/k)` and carries
/// a cusp of sign `cos(2πjl/k)`. For r = 2 the node is a point of infinite
/// gradient unless the factor multiplying the `x log|x|` term vanishes, in
/// which case it is a corner.
pub fn node_behaviour(idx: PolylogIndex, l: i64, family: Family) -> Result<NodeBehaviour> {
    let (cos_t, sin_t) = unit_root(i64::from(idx.j) * l, idx.k);
    let k = f64::from(idx.k);
    let classify = |v: f64| {
        if v.abs() <= VANISHING_TOLERANCE {
            Cusp::None
        } else if v > 0.0 {
            Cusp::Up
        } else {
            Cusp::Down
        }
    };
    match idx.r {
        1 => {
            let (jump_height, cusp_factor) = match family {
                Family::Sine => (PI / k * cos_t, sin_t),
                Family::Cosine => (-PI / k * sin_t, cos_t),
            };
            Ok(NodeBehaviour {
                jump_height,
                cusp: classify(cusp_factor),
                kind: NodeKind::JumpCusp,
            })
        }
        2 => {
            let log_factor = match family {
                Family::Sine => cos_t,
                Family::Cosine => sin_t,
            };
            let kind = if log_factor.abs() <= VANISHING_TOLERANCE {
                NodeKind::Corner
            } else {
                NodeKind::InfiniteGradient
            };
            Ok(NodeBehaviour {
                jump_height: 0.0,
                cusp: Cusp::None,
                kind,
            })
        }
        r => Err(Error::UnsupportedOrder(r)),
    }
}

/// Distributional derivative of an order-1 polylogarithm as deltas at the
/// nodes, cotangent terms and a constant. Terms with an exactly vanishing
/// weight are omitted.
pub fn distributional_derivative(
    idx: PolylogIndex,
    family: Family,
) -> Result<DerivativeDecomposition> {
    if idx.r != 1 {
        return Err(Error::UnsupportedOrder(idx.r));
    }
    let k = idx.k;
    let kf = f64::from(k);
    let mut out = DerivativeDecomposition::default();
    for l in 1..=k {
        let (cos_t, sin_t) = unit_root(i64::from(idx.j) * i64::from(l), k);
        let (delta_w, cot_w) = match family {
            Family::Sine => (PI / kf * cos_t, sin_t / (2.0 * kf)),
            Family::Cosine => (PI / kf * sin_t, -cos_t / (2.0 * kf)),
        };
        if delta_w != 0.0 {
            let m = i64::from((k - l) % k);
            let m = if 2 * m >= i64::from(k) {
                m - i64::from(k)
            } else {
                m
            };
            let location = TAU * m as f64 / kf;
            out.delta_terms.push(DeltaTerm {
                location,
                weight: delta_w,
            });
        }
        if cot_w != 0.0 {
            out.cot_terms.push(CotTerm {
                shift: (PI * f64::from(l) / kf).rem_euclid(PI),
                weight: cot_w,
            });
        }
    }
    if family == Family::Sine && idx.j == k {
        out.constant = -0.5;
    }
    Ok(out)
}

/// `S^k_j(x) + S^k_{k−j}(x)` (order 1), constant on each `(mπ/k, (m+1)π/k)`.
pub fn pairwise_sum_profile(j: u32, k: u32, x: f64) -> Result<f64> {
    if k < 2 || j == 0 || j >= k {
        return Err(Error::InvalidIndex { j, k, r: 1 });
    }
    let half = PI / f64::from(k);
    let tol = 1e-9 * TAU / f64::from(k);
    let (dist, point) = distance_to_lattice(x, half);
    if dist < tol {
        return Err(Error::Singular {
            x,
            point,
            tolerance: tol,
        });
    }
    let a = eval_trig_polylog(PolylogIndex::new(j, k, 1)?, x)?.0;
    let b = eval_trig_polylog(PolylogIndex::new(k - j, k, 1)?, x)?.0;
    Ok(a + b)
}
