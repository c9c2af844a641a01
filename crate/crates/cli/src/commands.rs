use std::fmt;
use std::io;
use std::process::ExitCode;
use std::time::Instant;

use log::info;
use rayon::prelude::*;

use revival_core::evolution::{evolve_coefficients, series_field};
use revival_core::kernels::{tabulate, IlwKernelSpec, IlwMethod, KernelKind};
use revival_core::numeric::uniform_grid;
use revival_core::revival::revival_profile;
use revival_core::trigpolylog::eval_trig_polylog;
use revival_core::verification::{node_buffer, CHECKS};
use revival_core::{DispersionSpec, FourierInitialData, PolylogIndex, RationalTime};

use crate::args::{
    CompareArgs, Equation, EquationArgs, GridArgs, KernelArg, KernelArgs, MethodArg, PolylogArgs,
    ProfileArgs, VerifyArgs,
};
use crate::csv::{cell, number, write_table};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(revival_core::Error),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<revival_core::Error> for CliError {
    fn from(e: revival_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type Outcome = Result<ExitCode, CliError>;

fn grid(args: &GridArgs) -> Result<Vec<f64>, CliError> {
    if !(args.x_lo.is_finite() && args.x_hi.is_finite() && args.x_lo < args.x_hi) {
        return Err(CliError::Usage(format!(
            "x range [{}, {}] is empty",
            args.x_lo, args.x_hi
        )));
    }
    let n = usize::try_from(args.points).map_err(|_| CliError::Usage("grid too large".into()))?;
    Ok(uniform_grid(args.x_lo, args.x_hi, n))
}

fn spec(eq: &EquationArgs) -> Result<DispersionSpec, CliError> {
    let needs_delta = matches!(eq.equation, Equation::Ilw | Equation::Smith);
    match (needs_delta, eq.delta) {
        (true, None) => {
            return Err(CliError::Usage(
                "--delta is required for ilw and smith".into(),
            ))
        }
        (false, Some(_)) => {
            return Err(CliError::Usage(
                "--delta applies to ilw and smith only".into(),
            ))
        }
        _ => {}
    }
    Ok(match eq.equation {
        Equation::Bo => DispersionSpec::BenjaminOno,
        Equation::Kdv => DispersionSpec::Kdv,
        Equation::Ilw => DispersionSpec::ilw(eq.delta.unwrap_or_default())?,
        Equation::Smith => DispersionSpec::smith(eq.delta.unwrap_or_default())?,
    })
}

fn time(eq: &EquationArgs) -> Result<RationalTime, CliError> {
    Ok(RationalTime::new(eq.p, eq.q)?)
}

pub fn polylog(args: &PolylogArgs) -> Outcome {
    let idx = PolylogIndex::new(args.j, args.k, args.r)?;
    let xs = grid(&args.grid)?;
    let rows: Vec<Vec<String>> = xs
        .par_iter()
        .map(|&x| match eval_trig_polylog(idx, x) {
            Ok((s, c)) => vec![number(x), number(s), number(c)],
            Err(_) => vec![number(x), cell(None), cell(None)],
        })
        .collect();
    write_table(args.grid.output.as_deref(), &["x", "S", "C"], &rows)?;
    Ok(ExitCode::SUCCESS)
}

pub fn profile(args: &ProfileArgs) -> Outcome {
    let spec = spec(&args.eq)?;
    let t = time(&args.eq)?;
    let xs = grid(&args.grid)?;
    let start = Instant::now();
    let field = match args.method {
        MethodArg::Closed => revival_profile(spec, t)?.field(&xs),
        MethodArg::Series => series_field(
            spec,
            &FourierInitialData::riemann_step(),
            t.into(),
            &xs,
            args.eq.nmodes,
        ),
    };
    info!(
        "{} profile for {spec} in {:.3}s",
        field.method.name(),
        start.elapsed().as_secs_f64()
    );
    let rows: Vec<Vec<String>> = field
        .grid
        .iter()
        .zip(&field.values)
        .map(|(&x, &u)| vec![number(x), cell(u)])
        .collect();
    write_table(args.grid.output.as_deref(), &["x", "u"], &rows)?;
    Ok(ExitCode::SUCCESS)
}

pub fn compare(args: &CompareArgs) -> Outcome {
    let spec = spec(&args.eq)?;
    let t = time(&args.eq)?;
    let xs = grid(&args.grid)?;
    let data = FourierInitialData::riemann_step();
    let n = args.eq.nmodes;
    let series = evolve_coefficients(&spec, &data, t.into(), n);

    let rows: Vec<(f64, Option<f64>, f64, Option<f64>)> = if args.shift_bo {
        let delta = match spec {
            DispersionSpec::Ilw { delta } => delta,
            _ => return Err(CliError::Usage("--shift-bo applies to ilw only".into())),
        };
        if args.buffer.is_some() {
            return Err(CliError::Usage(
                "--buffer has no effect with --shift-bo".into(),
            ));
        }
        let bo = evolve_coefficients(&DispersionSpec::BenjaminOno, &data, t.into(), n);
        let drift = t.t() / delta;
        xs.par_iter()
            .map(|&x| {
                let a = bo.evaluate_real(x + drift);
                let b = series.evaluate_real(x);
                (x, Some(a), b, Some((a - b).abs()))
            })
            .collect()
    } else {
        let closed = revival_profile(spec, t)?;
        let buffer = args.buffer.unwrap_or_else(|| node_buffer(t.q()));
        if buffer.is_nan() || buffer < 0.0 {
            return Err(CliError::Usage("--buffer must be non-negative".into()));
        }
        xs.par_iter()
            .map(|&x| {
                let a = closed.evaluate(x).ok();
                let b = series.evaluate_real(x);
                let err = a
                    .filter(|_| closed.distance_to_singular(x) >= buffer)
                    .map(|a| (a - b).abs());
                (x, a, b, err)
            })
            .collect()
    };

    let sup = rows.iter().filter_map(|r| r.3).fold(0.0, f64::max);
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|&(x, a, b, e)| vec![number(x), cell(a), number(b), cell(e)])
        .collect();
    write_table(
        args.grid.output.as_deref(),
        &["x", "u_closed", "u_series", "abs_err"],
        &table,
    )?;
    println!("sup_abs_err={}", number(sup));
    Ok(ExitCode::SUCCESS)
}

pub fn kernel(args: &KernelArgs) -> Outcome {
    let depth = |name: &str| {
        args.delta
            .ok_or_else(|| CliError::Usage(format!("--delta is required for the {name} kernel")))
    };
    let kind = match args.kind {
        KernelArg::Hilbert => {
            if args.delta.is_some() {
                return Err(CliError::Usage(
                    "the Hilbert kernel takes no --delta".into(),
                ));
            }
            KernelKind::Hilbert
        }
        KernelArg::Ilw | KernelArg::IlwZeta => KernelKind::Ilw {
            spec: IlwKernelSpec::new(depth("ilw")?, args.truncation)?,
            method: if args.kind == KernelArg::Ilw {
                IlwMethod::CothSum
            } else {
                IlwMethod::Zeta
            },
        },
        KernelArg::Smith => {
            let delta = depth("smith")?;
            DispersionSpec::smith(delta)?;
            KernelKind::Smith {
                delta,
                truncation: args.truncation,
            }
        }
    };
    let xs = grid(&args.grid)?;
    let rows: Vec<Vec<String>> = tabulate(&kind, &xs)
        .into_iter()
        .map(|s| {
            vec![
                number(s.x),
                cell(s.value.map(|v| v.re)),
                cell(s.value.map(|v| v.im)),
            ]
        })
        .collect();
    write_table(args.grid.output.as_deref(), &["x", "re", "im"], &rows)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    if !(args.tolerance_scale > 0.0 && args.tolerance_scale.is_finite()) {
        return Err(CliError::Usage("--tolerance-scale must be positive".into()));
    }
    if let Some(bad) = args
        .only
        .iter()
        .find(|id| !CHECKS.iter().any(|(c, _)| c == *id))
    {
        return Err(CliError::Usage(format!("no criterion {bad}")));
    }
    let start = Instant::now();
    let mut passed = 0;
    let mut total = 0;
    for (id, check) in CHECKS {
        if !args.only.is_empty() && !args.only.contains(&id) {
            continue;
        }
        let outcome = check(args.tolerance_scale);
        println!("{outcome}");
        total += 1;
        if outcome.passed() {
            passed += 1;
        }
    }
    println!(
        "{passed}/{total} criteria passed in {:.1}s",
        start.elapsed().as_secs_f64()
    );
    Ok(if passed == total {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
