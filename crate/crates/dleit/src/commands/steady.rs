use rayon::prelude::*;

use dleit_core::steady_state::{propagate_general, trace_curve_general, uniform_grid};
use dleit_core::{FieldPair, C64};

use super::Table;
use crate::args::{PhaseDiagramArgs, SteadyArgs};
use crate::error::{CliError, CliResult};

pub fn steady(a: &SteadyArgs) -> CliResult<Table> {
    let params = a.medium.params()?;
    let phis = a.phi_r_sweep.map_or_else(|| vec![a.phi_r], |s| s.points());
    let rows = phis
        .par_iter()
        .map(|&phi| -> CliResult<Vec<f64>> {
            let incident = FieldPair::with_relative_phase(&params, 1.0, phi);
            let r = trace_curve_general(&params, &incident, a.samples)?.terminal_response();
            Ok(vec![phi, r.transmission_probe, r.transmission_signal, r.phase_probe, r.phase_signal])
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok((
        vec!["phi_r", "T_p", "T_s", "dphi_p", "dphi_s"],
        rows,
        vec![("omega_sq", params.omega_sq())],
    ))
}

pub fn phase_diagram(a: &PhaseDiagramArgs) -> CliResult<Table> {
    let params = a.medium.params()?;
    let columns = vec!["zeta", "re_probe", "im_probe", "re_signal", "im_signal"];
    let row = |z: f64, p: C64, s: C64| vec![z, p.re, p.im, s.re, s.im];
    if a.signal_off {
        let incident = FieldPair::probe_only(C64::new(1.0, 0.0));
        let rows = uniform_grid(params.alpha, a.samples)?
            .into_iter()
            .map(|z| propagate_general(&params, &incident, z).map(|f| row(z, f.omega_p, f.omega_s)))
            .collect::<Result<Vec<_>, _>>()?;
        let last = rows.last().ok_or_else(|| CliError::Config("empty curve".into()))?;
        let summary = vec![("T_p", last[1] * last[1] + last[2] * last[2])];
        return Ok((columns, rows, summary));
    }
    let incident = FieldPair::with_relative_phase(&params, 1.0, a.phi_r);
    let curve = trace_curve_general(&params, &incident, a.samples)?;
    let r = curve.terminal_response();
    let rows = (0..curve.len())
        .map(|i| row(curve.zeta[i], curve.probe[i], curve.signal[i]))
        .collect();
    Ok((
        columns,
        rows,
        vec![
            ("T_p", r.transmission_probe),
            ("T_s", r.transmission_signal),
            ("dphi_p", r.phase_probe),
            ("dphi_s", r.phase_signal),
        ],
    ))
}
