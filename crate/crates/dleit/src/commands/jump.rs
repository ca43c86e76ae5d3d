use rayon::prelude::*;

use dleit_core::phase_jump::{detect_zero_crossing, jump_solution};
use dleit_core::steady_state::{trace_curve, Field};
use dleit_core::MediumParams;

use super::Table;
use crate::args::JumpArgs;
use crate::error::CliResult;

/// Depth traced past the critical one when checking for the zero.
const VERIFY_DEPTH_FACTOR: f64 = 1.5;

pub fn jump(a: &JumpArgs) -> CliResult<Table> {
    let rows = a
        .delta_sweep
        .points()
        .par_iter()
        .map(|&delta| -> CliResult<Vec<f64>> {
            let j = jump_solution(delta, a.branch)?;
            let mut row = vec![delta, j.alpha_c, j.phi_pj, j.phi_sj];
            if a.verify {
                let alpha = VERIFY_DEPTH_FACTOR * j.alpha_c;
                let curve = trace_curve(j.phi_pj, &MediumParams::balanced(alpha, delta), a.samples)?;
                let step = alpha / (a.samples - 1) as f64;
                row.push(detect_zero_crossing(&curve, Field::Probe).unwrap_or(f64::NAN));
                row.push(step);
            }
            Ok(row)
        })
        .collect::<CliResult<Vec<_>>>()?;
    let mut columns = vec!["delta", "alpha_c", "phi_pj", "phi_sj"];
    if a.verify {
        columns.extend(["zeta_zero", "grid_step"]);
    }
    Ok((columns, rows, Vec::new()))
}
