//! Numerical checks behind the `verify` command, one function per criterion.
//!
//! Every check compares a closed form against an independent evaluation
//! (truncated series, quadrature, finite differences) and reports the worst
//! discrepancy next to its tolerance. All tolerances are multiplied by a
//! common `scale`, so a run with `scale < 1` tightens every bound.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dispersion::{omega, DispersionSpec};
use crate::evolution::{evolve_coefficients, FourierInitialData, RationalTime, RescaledIlw, Time};
use crate::kernels::{
    bessel_k1, bessel_k1_quadrature, ilw_kernel, smith_kernel_periodic, verify_k1_fourier_identity,
    IlwKernelSpec, IlwMethod,
};
use crate::numeric::{distance_to_lattice, uniform_grid};
use crate::revival::{
    bo_revival, kdv_revival, periodic_distance, smith_error_bound, smith_revival,
};
use crate::trigpolylog::{
    eval_trig_polylog, node_behaviour, series_partial_sum, Cusp, Family, PolylogIndex,
};
use crate::ZETA_5;

const SEED: u64 = 0x5eed_2024;

#[derive(Debug, Clone, PartialEq)]
pub struct SubCheck {
    pub label: String,
    pub measured: f64,
    pub bound: f64,
    pub passed: bool,
    /// Informational lines are printed but do not decide the outcome.
    pub gating: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub id: u32,
    pub name: &'static str,
    pub parts: Vec<SubCheck>,
    pub elapsed: Duration,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.parts.iter().filter(|p| p.gating).all(|p| p.passed)
    }

    /// Largest `measured / bound` over the gating parts.
    pub fn worst_ratio(&self) -> f64 {
        self.parts
            .iter()
            .filter(|p| p.gating)
            .map(|p| {
                if p.bound > 0.0 {
                    p.measured / p.bound
                } else if p.measured > 0.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            })
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2} {}", self.id, self.name)?;
        for p in &self.parts {
            let mark = match (p.gating, p.passed) {
                (false, _) => "info",
                (true, true) => "ok",
                (true, false) => "FAIL",
            };
            write!(
                f,
                " | {}: {:.3e} <= {:.3e} ({mark})",
                p.label, p.measured, p.bound
            )?;
        }
        write!(f, " [{:.1}s]", self.elapsed.as_secs_f64())
    }
}

struct Builder {
    id: u32,
    name: &'static str,
    scale: f64,
    parts: Vec<SubCheck>,
    start: Instant,
}

impl Builder {
    fn new(id: u32, name: &'static str, scale: f64) -> Self {
        Self {
            id,
            name,
            scale,
            parts: Vec::new(),
            start: Instant::now(),
        }
    }

    fn part(&mut self, label: impl Into<String>, measured: f64, bound: f64) {
        self.push(label, measured, bound, true);
    }

    fn info(&mut self, label: impl Into<String>, measured: f64, bound: f64) {
        self.push(label, measured, bound, false);
    }

    fn push(&mut self, label: impl Into<String>, measured: f64, bound: f64, gating: bool) {
        let bound = bound * self.scale;
        self.parts.push(SubCheck {
            label: label.into(),
            measured,
            bound,
            passed: measured.is_finite() && measured <= bound,
            gating,
        });
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            id: self.id,
            name: self.name,
            parts: self.parts,
            elapsed: self.start.elapsed(),
        }
    }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values
        .into_iter()
        .fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

/// `count` seeded uniform points in [−π, π] accepted by `keep`.
fn sample_points(seed: u64, count: usize, keep: impl Fn(f64) -> bool) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0usize;
    while out.len() < count {
        let x = rng.gen_range(-PI..PI);
        tries += 1;
        assert!(tries < 1_000_000, "sampling window is empty");
        if keep(x) {
            out.push(x);
        }
    }
    out
}

fn node_distance(x: f64, k: u32) -> f64 {
    distance_to_lattice(x, TAU / f64::from(k)).0
}

/// Exclusion radius around the nodes `πm/q`: 0.3 where points that far
/// from every node exist, otherwise a quarter of the spacing.
pub fn node_buffer(q: u64) -> f64 {
    let half = PI / (2.0 * q as f64);
    if half - 0.3 >= 0.01 {
        0.3
    } else {
        half / 2.0
    }
}

pub const POLYLOG_SERIES_TERMS: u64 = 200_000;

/// 1. Closed-form polylogarithms against their partial sums.
pub fn check_polylog_oracle(scale: f64) -> CheckOutcome {
    let mut b = Builder::new(1, "polylog closed form vs series", scale);
    let tolerances = [5e-4, 1e-5, 1e-9];
    let mut cases = Vec::new();
    for k in 1..=6u32 {
        for j in 1..=k {
            for r in 1..=3u32 {
                cases.push((j, k, r));
            }
        }
    }
    let errors: Vec<(u32, f64)> = cases
        .par_iter()
        .map(|&(j, k, r)| {
            let idx = PolylogIndex::new(j, k, r).expect("valid index");
            let seed = SEED ^ (u64::from(j) << 8 | u64::from(k) << 16 | u64::from(r) << 24);
            let pts = sample_points(seed, 200, |x| node_distance(x, k) >= 0.2);
            let err = pts
                .par_iter()
                .map(|&x| {
                    let (s, c) = eval_trig_polylog(idx, x).expect("off-node point");
                    let z = series_partial_sum(idx, x, POLYLOG_SERIES_TERMS);
                    (s - z.im).abs().max((c - z.re).abs())
                })
                .reduce(|| 0.0, f64::max);
            (r, err)
        })
        .collect();
    for r in 1..=3u32 {
        let worst = max_of(errors.iter().filter(|e| e.0 == r).map(|e| e.1));
        b.part(format!("r={r}"), worst, tolerances[r as usize - 1]);
    }
    b.finish()
}

/// 2. Scale and sum identities and the derivative chains.
pub fn check_identities(scale: f64) -> CheckOutcome {
    let mut b = Builder::new(2, "polylog identities", scale);
    let mut scale_err: f64 = 0.0;
    let mut sum_err: f64 = 0.0;
    for m in 2..=3u32 {
        for k in 1..=3u32 {
            for j in 1..=k {
                for r in 1..=2u32 {
                    let seed = SEED ^ u64::from(m * 1000 + k * 100 + j * 10 + r);
                    let pts = sample_points(seed, 50, |x| node_distance(x, m * k) >= 1e-3);
                    let base_idx = PolylogIndex::new(j, k, r).unwrap();
                    let big = PolylogIndex::new(m * j, m * k, r).unwrap();
                    let factor = f64::from(m).powi(r as i32);
                    for &x in &pts {
                        let (s0, c0) = eval_trig_polylog(base_idx, x).unwrap();
                        let (s1, c1) = eval_trig_polylog(big, x / f64::from(m)).unwrap();
                        scale_err = scale_err
                            .max((factor * s1 - s0).abs())
                            .max((factor * c1 - c0).abs());
                        let (mut ss, mut cs) = (0.0, 0.0);
                        for n in 0..m {
                            let v = eval_trig_polylog(
                                PolylogIndex::new(j + n * k, m * k, r).unwrap(),
                                x,
                            )
                            .unwrap();
                            ss += v.0;
                            cs += v.1;
                        }
                        sum_err = sum_err.max((ss - s0).abs()).max((cs - c0).abs());
                    }
                }
            }
        }
    }
    b.part("scale identity", scale_err, 1e-10);
    b.part("sum identity", sum_err, 1e-10);

    let h = 1e-5;
    let mut chain_err: f64 = 0.0;
    for k in 1..=6u32 {
        let pts = sample_points(SEED ^ u64::from(k) << 32, 30, |x| {
            node_distance(x, k) >= 0.3
        });
        for j in 1..=k {
            for r in 1..=2u32 {
                let lo = PolylogIndex::new(j, k, r).unwrap();
                let hi = PolylogIndex::new(j, k, r + 1).unwrap();
                for &x in &pts {
                    let (s, c) = eval_trig_polylog(lo, x).unwrap();
                    let (sp, cp) = eval_trig_polylog(hi, x + h).unwrap();
                    let (sm, cm) = eval_trig_polylog(hi, x - h).unwrap();
                    let dc = (cp - cm) / (2.0 * h);
                    let ds = (sp - sm) / (2.0 * h);
                    chain_err = chain_err.max((dc + s).abs()).max((ds - c).abs());
                }
            }
        }
    }
    b.part("derivative chains", chain_err, 1e-5);
    b.finish()
}

/// 3. Jump heights and cusp classification at the nodes.
pub fn check_nodes(scale: f64) -> CheckOutcome {
    let mut b = Builder::new(3, "node jumps and cusps", scale);
    let h = 1e-7;
    let mut jump_err: f64 = 0.0;
    let mut magnitude_err: f64 = 0.0;
    let mut mismatches = 0u32;
    for k in 1..=5u32 {
        for j in 1..=k {
            let idx = PolylogIndex::new(j, k, 1).unwrap();
            for l in 0..i64::from(k) {
                let node = TAU * l as f64 / f64::from(k);
                let (sp, cp) = eval_trig_polylog(idx, node + h).unwrap();
                let (sm, cm) = eval_trig_polylog(idx, node - h).unwrap();
                let theta = TAU * (i64::from(j) * l) as f64 / f64::from(k);
                for (family, jump, expected_magnitude) in [
                    (Family::Sine, sp - sm, PI / f64::from(k) * theta.cos()),
                    (Family::Cosine, cp - cm, PI / f64::from(k) * theta.sin()),
                ] {
                    let nb = node_behaviour(idx, l, family).unwrap();
                    jump_err = jump_err.max((jump - nb.jump_height).abs());
                    magnitude_err = magnitude_err.max((jump.abs() - expected_magnitude.abs()).abs());
                    let observed = observed_cusp(idx, family, node);
                    if observed != Some(nb.cusp) {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    b.part("jump height", jump_err, 1e-5);
    b.part("|jump| vs (pi/k)|trig|", magnitude_err, 1e-5);
    b.part("cusp misclassifications", f64::from(mismatches), 0.0);
    b.finish()
}

// Growth of the symmetric average approaching the node: about
// (factor/k)·ln(1000) for a cusp, O(1e-3) otherwise.
fn observed_cusp(idx: PolylogIndex, family: Family, node: f64) -> Option<Cusp> {
    let avg = |h: f64| {
        let (sp, cp) = eval_trig_polylog(idx, node + h).unwrap();
        let (sm, cm) = eval_trig_polylog(idx, node - h).unwrap();
        match family {
            Family::Sine => 0.5 * (sp + sm),
            Family::Cosine => 0.5 * (cp + cm),
        }
    };
    let growth = avg(1e-6) - avg(1e-3);
    if growth > 0.1 {
        Some(Cusp::Up)
    } else if growth < -0.1 {
        Some(Cusp::Down)
    } else if growth.abs() < 0.01 {
        Some(Cusp::None)
    } else {
        None
    }
}

pub const REVIVAL_SERIES_MODES: u64 = 100_000;

/// 4. KdV profile is piecewise constant and matches the series.
pub fn check_kdv_quantisation(scale: f64) -> CheckOutcome {
    let mut b = Builder::new(4, "KdV quantisation", scale);
    let data = FourierInitialData::riemann_step();
    for q in [6u64, 9] {
        let time = RationalTime::new(1, q).unwrap();
        let prof = kdv_revival(time).unwrap();
        let state = evolve_coefficients(
            &DispersionSpec::Kdv,
            &data,
            time.into(),
            REVIVAL_SERIES_MODES,
        );
        let width = PI / q as f64;
        let mut spread: f64 = 0.0;
        let mut probes = Vec::new();
        for m in 0..2 * q {
            let lo = -PI + width * m as f64;
            let grid = uniform_grid(lo + 0.05, lo + width - 0.05, 50);
            let vals: Vec<f64> = grid.iter().map(|&x| prof.evaluate(x).unwrap()).collect();
            let hi = vals.iter().cloned().fold(f64::MIN, f64::max);
            let lo_v = vals.iter().cloned().fold(f64::MAX, f64::min);
            spread = spread.max(hi - lo_v);
            probes.extend([grid[0], grid[17], grid[33], grid[49]]);
        }
        let series_err = max_of(
            probes
                .par_iter()
                .map(|&x| (prof.evaluate(x).unwrap() - state.evaluate_real(x)).abs())
                .collect::<Vec<_>>(),
        );
        b.part(format!("q={q} spread"), spread, 1e-9);
        b.part(format!("q={q} vs series"), series_err, 1e-3);
    }
    b.finish()
}

/// 5. BO closed form against the series at several rational times.
pub fn check_bo_revival(scale: f64) -> CheckOutcome {
    let mut b = Builder::new(5, "BO revival", scale);
    let data = FourierInitialData::riemann_step();
    let mut set_mismatch = 0u32;
    for q in [2u64, 5, 6, 8, 9] {
        let time = RationalTime::new(1, q).unwrap();
        let prof = bo_revival(time).unwrap();
        let state = evolve_coefficients(
            &DispersionSpec::BenjaminOno,
            &data,
            time.into(),
            REVIVAL_SERIES_MODES,
        );
        let buffer = node_buffer(q);
        let pts = sample_points(SEED ^ q, 100, |x| {
            distance_to_lattice(x, PI / q as f64).0 >= buffer
        });
        let err = max_of(
            pts.par_iter()
                .map(|&x| (prof.evaluate(x).unwrap() - state.evaluate_real(x)).abs())
                .collect::<Vec<_>>(),
        );
        b.part(format!("q={q} (buffer {buffer:.3})"), err, 1e-3);

        let singular = prof.singular_points();
        let expected: Vec<f64> = (0..2 * q).map(|m| -PI + PI * m as f64 / q as f64).collect();
        if singular.len() != expected.len()
            || singular
                .iter()
                .zip(&expected)
                .any(|(a, e)| periodic_distance(*a, *e) > 1e-12)
        {
            set_mismatch += 1;
        }
    }
    b.part("singular set != {pi m/q}", f64::from(set_mismatch), 0.0);
    b.finish()
}

fn check_grid() -> Vec<f64> {
    uniform_grid(-PI, PI, 1001)
}

/// 6. Deep ILW is the BO solution translated by `t/δ`.
pub fn check_ilw_shifted_bo(scale: f64) -> CheckOutcome {
    let mut b = Builder::new(6, "ILW vs shifted BO", scale);
    let delta = 100.0;
    let time = RationalTime::new(1, 7).unwrap();
    let n = 64;
    let data = FourierInitialData::riemann_step();
    let ilw = evolve_coefficients(&DispersionSpec::ilw(delta).unwrap(), &data, time.into(), n);
    let bo = evolve_coefficients(&DispersionSpec::BenjaminOno, &data, time.into(), n);
    let drift = time.t() / delta;
    let nodes = crate::revival::ilw_revival(time, delta).unwrap();
    let err = max_of(
        check_grid()
            .into_iter()
            .filter(|&x| nodes.distance_to_singular(x) > 1e-6)
            .map(|x| (ilw.evaluate_real(x) - bo.evaluate_real(x + drift)).abs()),
    );
    b.part("sup |u_ILW - u_BO(x + t/delta)|", err, 1e-10);
    b.finish()
}

/// 7. Shallow ILW approaches KdV.
pub fn check_ilw_kdv_limit(scale: f64) -> CheckOutcome {
    let mut b = Builder::new(7, "ILW -> KdV limit", scale);
    let delta = 0.01;
    let ilw = DispersionSpec::ilw(delta).unwrap();
    let symbol_ratio = max_of((1..=32).map(|k| {
        let kf = f64::from(k);
        (3.0 * omega(ilw, kf) / delta - kf.powi(3)).abs()
            / (1.1 * kf.powi(5) * delta * delta / 15.0)
    }));
    b.part("symbol |3w/d - k^3| / (1.1 k^5 d^2/15)", symbol_ratio, 1.0);

    let n = 32;
    let data = FourierInitialData::riemann_step();
    let rescaled = RescaledIlw { delta };
    let away = |x: f64| distance_to_lattice(x, PI / 7.0).0 >= 0.05;
    let time = RationalTime::new(1, 7).unwrap();
    let v = evolve_coefficients(&rescaled, &data, time.into(), n);
    let k = evolve_coefficients(&DispersionSpec::Kdv, &data, time.into(), n);
    let literal = max_of(
        check_grid()
            .into_iter()
            .filter(|&x| away(x))
            .map(|x| (v.evaluate_real(x) - k.evaluate_real(x)).abs()),
    );
    b.part("profile at t=pi/7", literal, 0.05);

    let tau = Time::Real(delta * PI / 21.0);
    let v = evolve_coefficients(&rescaled, &data, tau, n);
    let k = evolve_coefficients(&DispersionSpec::Kdv, &data, tau, n);
    let tau_err = max_of(
        check_grid()
            .into_iter()
            .filter(|&x| away(x))
            .map(|x| (v.evaluate_real(x) - k.evaluate_real(x)).abs()),
    );
    b.info("profile at tau=delta*pi/21", tau_err, 0.05);
    b.finish()
}

/// 8. Smith closed form within its certified bound.
pub fn check_smith_certificate(scale: f64) -> CheckOutcome {
    let mut b = Builder::new(8, "Smith error certificate", scale);
    let (p, q, delta) = (1u64, 5u64, 10.0);
    let time = RationalTime::new(p, q).unwrap();
    let prof = smith_revival(time, delta).unwrap();
    let formula = ZETA_5 / 1e4 * (1.0 + PI / 400.0);
    b.part(
        "bound vs p zeta(5)/(2q d^3)(1+p pi/8qd)",
        (prof.error_bound - formula).abs(),
        1e-15,
    );
    b.part(
        "bound vs 1.0451e-4",
        (smith_error_bound(p, q, delta) - 1.0451e-4).abs(),
        5e-9,
    );
    let spec = DispersionSpec::smith(delta).unwrap();
    let state = evolve_coefficients(
        &spec,
        &FourierInitialData::riemann_step(),
        time.into(),
        REVIVAL_SERIES_MODES,
    );
    let buffer = node_buffer(q);
    let pts = sample_points(SEED ^ 0x5417, 100, |x| {
        distance_to_lattice(x, PI / q as f64).0 >= buffer
    });
    let err = max_of(
        pts.par_iter()
            .map(|&x| (prof.evaluate(x).unwrap() - state.evaluate_real(x)).abs())
            .collect::<Vec<_>>(),
    );
    b.part(
        format!("sup |closed - series| (buffer {buffer:.3})"),
        err,
        prof.error_bound + 2e-3,
    );
    b.finish()
}

/// 9. ILW, Smith and Bessel kernels.
pub fn check_kernels(scale: f64) -> CheckOutcome {
    let mut b = Builder::new(9, "kernels", scale);
    let spec = IlwKernelSpec::new(1.0, 400).unwrap();
    let xs: Vec<f64> = uniform_grid(-PI, PI, 41)
        .into_iter()
        .filter(|x| x.abs() > 0.05)
        .collect();
    let mut quasi: f64 = 0.0;
    let mut agree: f64 = 0.0;
    for &x in &xs {
        for method in [IlwMethod::CothSum, IlwMethod::Zeta] {
            let c0 = ilw_kernel(&spec, x, method).unwrap();
            let c1 = ilw_kernel(&spec, x + TAU, method).unwrap();
            quasi = quasi.max((c1 - c0 + 1.0 / spec.delta).abs());
        }
        let a = ilw_kernel(&spec, x, IlwMethod::CothSum).unwrap();
        let z = ilw_kernel(&spec, x, IlwMethod::Zeta).unwrap();
        agree = agree.max((a - z).abs());
    }
    b.part("ILW quasi-periodicity", quasi, 1e-8);
    b.part("ILW coth sum vs zeta", agree, 1e-8);

    let mut stability: f64 = 0.0;
    for delta in [0.25, 1.0, 4.0] {
        for &x in &xs {
            for n in [10usize, 20, 40] {
                let a = smith_kernel_periodic(delta, x, n).unwrap();
                let c = smith_kernel_periodic(delta, x, 2 * n).unwrap();
                stability = stability.max((a - c).norm());
            }
        }
    }
    b.part("Smith kernel N -> 2N", stability, 1e-12);

    let k1_err = max_of(
        (0..200)
            .into_par_iter()
            .map(|i| {
                let x = 1e-3 * (3e4f64).powf(f64::from(i) / 199.0);
                let reference = bessel_k1_quadrature(x).unwrap();
                ((bessel_k1(x).unwrap() - reference) / reference).abs()
            })
            .collect::<Vec<_>>(),
    );
    b.part("K1 relative error", k1_err, 1e-8);
    b.finish()
}

/// 10. Fourier transform identity behind the Smith kernel.
pub fn check_fourier_identity(scale: f64) -> CheckOutcome {
    let mut b = Builder::new(10, "Fourier transform identity", scale);
    let mut cases = Vec::new();
    for a in [0.5, 1.0, 2.0] {
        for x in [0.5, 1.0, 2.0] {
            cases.push((a, x));
        }
    }
    let err = max_of(
        cases
            .par_iter()
            .map(|&(a, x)| {
                verify_k1_fourier_identity(a, x)
                    .map(|r| r.abs_err)
                    .unwrap_or(f64::NAN)
            })
            .collect::<Vec<_>>(),
    );
    b.part("max |lhs - rhs|", err, 1e-4);
    b.finish()
}

pub type Check = fn(f64) -> CheckOutcome;

pub const CHECKS: [(u32, Check); 10] = [
    (1, check_polylog_oracle),
    (2, check_identities),
    (3, check_nodes),
    (4, check_kdv_quantisation),
    (5, check_bo_revival),
    (6, check_ilw_shifted_bo),
    (7, check_ilw_kdv_limit),
    (8, check_smith_certificate),
    (9, check_kernels),
    (10, check_fourier_identity),
];

pub fn run_all(scale: f64) -> Vec<CheckOutcome> {
    CHECKS.iter().map(|(_, check)| check(scale)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn buffers() {
        assert_eq!(node_buffer(2), 0.3);
        assert_eq!(node_buffer(5), 0.3);
        assert!((node_buffer(6) - PI / 24.0).abs() < 1e-15);
        assert!((node_buffer(9) - PI / 36.0).abs() < 1e-15);
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_points(7, 20, |x| x > 0.0);
        let b = sample_points(7, 20, |x| x > 0.0);
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x > 0.0 && x < PI));
    }

    #[test]
    fn tightened_scale_fails() {
        let out = check_fourier_identity(1e-9);
        assert!(!out.passed());
        let out = check_fourier_identity(1.0);
        assert!(out.passed(), "{out}");
    }

    #[test]
    fn cheap_checks_pass() {
        for out in [
            check_nodes(1.0),
            check_ilw_shifted_bo(1.0),
            check_kernels(1.0),
        ] {
            assert!(out.passed(), "{out}");
        }
    }
}
