mod apm;
mod dynamics;
mod jump;
mod steady;

use dleit_core::{MediumParams, C64};

use crate::args::{Command, MediumArgs};
use crate::error::CliResult;
use crate::output::Report;

pub fn execute(command: &Command) -> CliResult<Report> {
    let (columns, rows, summary) = match command {
        Command::Steady(a) => steady::steady(a)?,
        Command::PhaseDiagram(a) => steady::phase_diagram(a)?,
        Command::Jump(a) => jump::jump(a)?,
        Command::Apm(a) => apm::apm(a)?,
        Command::Propagate(a) => dynamics::propagate(a)?,
        Command::AmplifySweep(a) => dynamics::amplify_sweep(a)?,
    };
    Ok(Report {
        command: command.name(),
        config: command.config(),
        summary,
        columns,
        rows,
    })
}

type Table = (Vec<&'static str>, Vec<Vec<f64>>, Vec<(&'static str, f64)>);

impl MediumArgs {
    pub fn params(&self) -> CliResult<MediumParams> {
        let p = MediumParams::new(
            self.alpha,
            self.delta,
            C64::from_polar(self.omega_c, self.phase_c),
            C64::from_polar(self.omega_d, self.phase_d),
        );
        p.validate()?;
        Ok(p)
    }
}
