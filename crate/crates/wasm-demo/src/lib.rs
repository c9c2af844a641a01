//! Browser bindings for the demo page in `www/`.
//!
//! Each export samples one curve on a uniform grid over [−π, π] and returns a
//! flat `Float64Array`; singular points come back as `NaN` so the page can
//! break the polyline there.

use std::f64::consts::PI;

use revival_core::evolution::evolve_coefficients;
use revival_core::numeric::uniform_grid;
use revival_core::revival::revival_profile as closed_profile;
use revival_core::trigpolylog::eval_trig_polylog;
use revival_core::{DispersionSpec, FourierInitialData, PolylogIndex, RationalTime};
use wasm_bindgen::prelude::*;

const MAX_POINTS: usize = 20_000;
const MAX_MODES: u64 = 20_000;

fn parse_spec(equation: &str, delta: f64) -> Result<DispersionSpec, String> {
    match equation {
        "bo" => Ok(DispersionSpec::BenjaminOno),
        "kdv" => Ok(DispersionSpec::Kdv),
        "ilw" => DispersionSpec::ilw(delta).map_err(|e| e.to_string()),
        "smith" => DispersionSpec::smith(delta).map_err(|e| e.to_string()),
        other => Err(format!("unknown equation '{other}'")),
    }
}

fn grid(points: usize) -> Result<Vec<f64>, String> {
    if !(2..=MAX_POINTS).contains(&points) {
        return Err(format!("points must lie in 2..={MAX_POINTS}"));
    }
    Ok(uniform_grid(-PI, PI, points))
}

/// Interleaved `[x, S, C, x, S, C, ...]`.
pub fn polylog_samples(j: u32, k: u32, r: u32, points: usize) -> Result<Vec<f64>, String> {
    let idx = PolylogIndex::new(j, k, r).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(3 * points);
    for x in grid(points)? {
        let (s, c) = eval_trig_polylog(idx, x).unwrap_or((f64::NAN, f64::NAN));
        out.extend([x, s, c]);
    }
    Ok(out)
}

/// Closed-form values followed by the profile's error bound as the last entry.
pub fn closed_samples(
    equation: &str,
    p: u32,
    q: u32,
    delta: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let spec = parse_spec(equation, delta)?;
    let time = RationalTime::new(p.into(), q.into()).map_err(|e| e.to_string())?;
    let profile = closed_profile(spec, time).map_err(|e| e.to_string())?;
    let mut out: Vec<f64> = grid(points)?
        .into_iter()
        .map(|x| profile.evaluate(x).unwrap_or(f64::NAN))
        .collect();
    out.push(profile.error_bound);
    Ok(out)
}

pub fn series_samples(
    equation: &str,
    p: u32,
    q: u32,
    delta: f64,
    modes: u32,
    points: usize,
) -> Result<Vec<f64>, String> {
    let spec = parse_spec(equation, delta)?;
    let time = RationalTime::new(p.into(), q.into()).map_err(|e| e.to_string())?;
    let modes = u64::from(modes);
    if !(1..=MAX_MODES).contains(&modes) {
        return Err(format!("modes must lie in 1..={MAX_MODES}"));
    }
    let state = evolve_coefficients(
        &spec,
        &FourierInitialData::riemann_step(),
        time.into(),
        modes,
    );
    Ok(grid(points)?
        .into_iter()
        .map(|x| state.evaluate_real(x))
        .collect())
}

#[wasm_bindgen]
pub fn polylog_curve(j: u32, k: u32, r: u32, points: usize) -> Result<Vec<f64>, JsError> {
    polylog_samples(j, k, r, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn revival_profile(
    equation: &str,
    p: u32,
    q: u32,
    delta: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    closed_samples(equation, p, q, delta, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn series_profile(
    equation: &str,
    p: u32,
    q: u32,
    delta: f64,
    modes: u32,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    series_samples(equation, p, q, delta, modes, points).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polylog_layout() {
        let v = polylog_samples(1, 2, 1, 5).unwrap();
        assert_eq!(v.len(), 15);
        assert!(v[2 * 3 + 1].is_nan());
        assert!((v[3 * 3 + 1] - PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn closed_and_series_agree_off_nodes() {
        let closed = closed_samples("bo", 1, 2, 0.0, 9).unwrap();
        assert_eq!(closed.len(), 10);
        assert_eq!(closed[9], 0.0);
        let series = series_samples("bo", 1, 2, 0.0, 20_000, 9).unwrap();
        for i in [1, 3, 5, 7] {
            assert!((closed[i] - series[i]).abs() < 1e-3, "{i}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(closed_samples("nls", 1, 2, 0.0, 9).is_err());
        assert!(closed_samples("ilw", 1, 2, -1.0, 9).is_err());
        assert!(series_samples("bo", 1, 2, 0.0, 0, 9).is_err());
        assert!(polylog_samples(1, 2, 1, 1).is_err());
    }
}
