use rayon::prelude::*;

use dleit_core::dynamics::{amplify, simulate, PulseShape, SimGrid};
use dleit_core::steady_state::propagate_general;
use dleit_core::{validate_perturbative, FieldPair, C64};

use super::Table;
use crate::args::{AmplifyArgs, PropagateArgs, Shape};
use crate::error::{CliError, CliResult};

fn pulse(a: &PropagateArgs, amplitude: C64) -> PulseShape {
    match a.shape {
        Shape::Square => PulseShape::square(amplitude, a.t_on, a.t_off),
        Shape::Smoothed => PulseShape::smoothed_square(amplitude, a.t_on, a.t_off, a.rise_time),
        Shape::Gaussian => PulseShape::gaussian(amplitude, a.t_on, a.t_off),
        Shape::Cw => PulseShape::cw(amplitude, a.t_on, a.rise_time),
    }
}

pub fn propagate(a: &PropagateArgs) -> CliResult<Table> {
    if a.time_stride == 0 {
        return Err(CliError::Config("time-stride must be at least 1".into()));
    }
    let params = a.medium.params()?.with_dephasing(a.gamma21);
    params.validate()?;
    let mut incident = FieldPair::with_relative_phase(&params, a.amplitude, a.phi_r);
    if let Some(s) = a.signal_amplitude {
        incident.omega_s = C64::from_polar(s, incident.omega_s.arg());
    }
    let report = validate_perturbative(&params, &incident, dleit_core::params::DEFAULT_PERTURBATIVE_RATIO);
    if !report.is_valid() {
        eprintln!("dleit: warning: {report}");
    }
    let grid = SimGrid { n_z: a.n_z, dt: a.dt, t_final: a.t_final };
    let r = simulate(&params, &pulse(a, incident.omega_p), &pulse(a, incident.omega_s), &grid)?;

    let n = r.time.len();
    let rows = (0..n)
        .filter(|&i| i % a.time_stride == 0 || i + 1 == n)
        .map(|i| {
            let (ip, is, op, os) = (r.input_probe[i], r.input_signal[i], r.output_probe[i], r.output_signal[i]);
            vec![r.time[i], ip.re, ip.im, is.re, is.im, op.re, op.im, os.re, os.im]
        })
        .collect();
    let mut summary = vec![
        ("probe_energy_transmission", r.probe_energy_transmission),
        ("signal_energy_transmission", r.signal_energy_transmission),
        ("probe_group_delay", r.probe_group_delay),
        ("signal_group_delay", r.signal_group_delay),
    ];
    if a.gamma21 == 0.0 {
        let steady = propagate_general(&params, &incident, params.alpha)?;
        let ratio = |out: C64, inp: C64| if inp.norm_sqr() > 0.0 { out.norm_sqr() / inp.norm_sqr() } else { 0.0 };
        summary.push(("steady_T_p", ratio(steady.omega_p, incident.omega_p)));
        summary.push(("steady_T_s", ratio(steady.omega_s, incident.omega_s)));
    }
    Ok((
        vec![
            "t",
            "re_in_probe",
            "im_in_probe",
            "re_in_signal",
            "im_in_signal",
            "re_out_probe",
            "im_out_probe",
            "re_out_signal",
            "im_out_signal",
        ],
        rows,
        summary,
    ))
}

pub fn amplify_sweep(a: &AmplifyArgs) -> CliResult<Table> {
    let search = a.search.search();
    if !search.is_valid() {
        return Err(CliError::Config("detuning search needs lo < hi and positive step/tol".into()));
    }
    let rows = a
        .alpha_sweep
        .points()
        .par_iter()
        .map(|&alpha| -> CliResult<Vec<f64>> {
            let p = amplify::optimum(alpha, &search)?;
            Ok(vec![p.alpha, p.delta_opt, p.phi_r_opt, p.probe_transmission, p.signal_transmission])
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok((vec!["alpha", "delta_opt", "phi_r_opt", "T_p", "T_s"], rows, Vec::new()))
}
