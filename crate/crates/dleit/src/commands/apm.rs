use rayon::prelude::*;

use dleit_core::apm::{operating_point, optimize_detuning, probe_without_signal, TargetShift};
use dleit_core::optimize::linspace_step;
use dleit_core::Error;

use super::Table;
use crate::args::{ApmArgs, Shift};
use crate::error::{CliError, CliResult};

fn target(shift: Shift) -> TargetShift {
    match shift {
        Shift::Pi => TargetShift::Pi,
        Shift::HalfPi => TargetShift::HalfPi,
    }
}

const COLUMNS: [&str; 6] = ["alpha", "delta", "phi_r", "T_with", "T_without", "contrast"];

fn scan_row(alpha: f64, delta: f64, shift: TargetShift) -> CliResult<Vec<f64>> {
    match operating_point(alpha, delta, shift) {
        Ok(op) => Ok(vec![
            alpha,
            delta,
            op.phi_r,
            op.transmission_with_signal,
            op.transmission_without_signal,
            op.apm_contrast,
        ]),
        Err(Error::NoPhaseSolution(_)) => {
            let without = probe_without_signal(alpha, delta)?.norm_sqr();
            Ok(vec![alpha, delta, f64::NAN, f64::NAN, without, f64::NAN])
        }
        Err(e) => Err(e.into()),
    }
}

pub fn apm(a: &ApmArgs) -> CliResult<Table> {
    let search = a.search.search();
    if !search.is_valid() {
        return Err(CliError::Config("detuning search needs lo < hi and positive step/tol".into()));
    }
    let shift = target(a.shift);
    let alphas = &a.alpha_list.0;
    let rows: Vec<Vec<f64>> = if a.delta_scan {
        let deltas = linspace_step(search.lo, search.hi, search.scan_step);
        alphas
            .iter()
            .flat_map(|&alpha| deltas.iter().map(move |&d| (alpha, d)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(alpha, d)| scan_row(alpha, d, shift))
            .collect::<CliResult<_>>()?
    } else {
        let found = alphas
            .par_iter()
            .map(|&alpha| match optimize_detuning(alpha, shift, &search) {
                Ok(op) => Ok(Some(vec![
                    alpha,
                    op.delta,
                    op.phi_r,
                    op.transmission_with_signal,
                    op.transmission_without_signal,
                    op.apm_contrast,
                ])),
                Err(Error::NoFeasibleDetuning) => Ok(None),
                Err(e) => Err(CliError::from(e)),
            })
            .collect::<CliResult<Vec<_>>>()?;
        for (alpha, row) in alphas.iter().zip(&found) {
            if row.is_none() {
                eprintln!("dleit: warning: no feasible detuning at alpha = {alpha}, skipped");
            }
        }
        let rows: Vec<_> = found.into_iter().flatten().collect();
        if rows.is_empty() {
            return Err(CliError::Numerical(Error::NoFeasibleDetuning));
        }
        rows
    };
    Ok((COLUMNS.to_vec(), rows, Vec::new()))
}
