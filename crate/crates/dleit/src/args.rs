//! Command-line surface. Every subcommand's arguments serialize to the
//! `key = value` pairs written into the output header, keyed by the long
//! flag name, so a header can be fed back as a config file.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

use dleit_core::optimize::{linspace_step, DetuningSearch};

#[derive(Debug, Parser)]
#[command(name = "dleit", version, about = "Double-Λ EIT steady-state, phase-jump, phase-modulation and pulse solvers")]
pub struct Cli {
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// `key = value` file of subcommand options; flags on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Terminal transmission and phase for one loop phase or a sweep.
    #[command(allow_negative_numbers = true, args_override_self = true)]
    Steady(SteadyArgs),
    /// Field ratios along the medium.
    #[command(allow_negative_numbers = true, args_override_self = true)]
    PhaseDiagram(PhaseDiagramArgs),
    /// Critical depth and jump phases over a detuning grid.
    #[command(allow_negative_numbers = true, args_override_self = true)]
    Jump(JumpArgs),
    /// Phase-modulation operating points over optical depths.
    #[command(allow_negative_numbers = true, args_override_self = true)]
    Apm(ApmArgs),
    /// Time-domain pulse propagation.
    #[command(allow_negative_numbers = true, args_override_self = true)]
    Propagate(PropagateArgs),
    /// Optimal steady amplification of the signal over optical depths.
    #[command(allow_negative_numbers = true, args_override_self = true)]
    AmplifySweep(AmplifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Steady(_) => "steady",
            Command::PhaseDiagram(_) => "phase-diagram",
            Command::Jump(_) => "jump",
            Command::Apm(_) => "apm",
            Command::Propagate(_) => "propagate",
            Command::AmplifySweep(_) => "amplify-sweep",
        }
    }

    pub fn config(&self) -> serde_json::Value {
        let v = match self {
            Command::Steady(a) => serde_json::to_value(a),
            Command::PhaseDiagram(a) => serde_json::to_value(a),
            Command::Jump(a) => serde_json::to_value(a),
            Command::Apm(a) => serde_json::to_value(a),
            Command::Propagate(a) => serde_json::to_value(a),
            Command::AmplifySweep(a) => serde_json::to_value(a),
        };
        v.expect("argument structs serialize to JSON")
    }
}

/// `start:stop:step`, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Sweep {
    pub fn points(&self) -> Vec<f64> {
        linspace_step(self.start, self.stop, self.step)
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts[..] else {
            return Err(format!("expected start:stop:step, got `{s}`"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
        let sweep = Sweep { start: num(a)?, stop: num(b)?, step: num(c)? };
        if !(sweep.step > 0.0 && sweep.stop >= sweep.start && sweep.start.is_finite() && sweep.stop.is_finite()) {
            return Err(format!("empty or unbounded range `{s}`"));
        }
        Ok(sweep)
    }
}

impl fmt::Display for Sweep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

impl Serialize for Sweep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Comma-separated list of numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct NumberList(pub Vec<f64>);

impl FromStr for NumberList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let v = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NumberList(v))
    }
}

impl fmt::Display for NumberList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl Serialize for NumberList {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Medium and strong-field settings, all in units of Γ.
#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct MediumArgs {
    /// Optical depth.
    #[arg(long)]
    pub alpha: f64,
    /// Signal-transition detuning.
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Coupling Rabi frequency magnitude.
    #[arg(long, default_value_t = 1.0)]
    pub omega_c: f64,
    /// Driving Rabi frequency magnitude.
    #[arg(long, default_value_t = 1.0)]
    pub omega_d: f64,
    /// Coupling field phase (rad).
    #[arg(long, default_value_t = 0.0)]
    pub phase_c: f64,
    /// Driving field phase (rad).
    #[arg(long, default_value_t = 0.0)]
    pub phase_d: f64,
}

/// Detuning search window for the optimizers.
#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SearchArgs {
    #[arg(long, default_value_t = 0.5)]
    pub delta_lo: f64,
    #[arg(long, default_value_t = 60.0)]
    pub delta_hi: f64,
    /// Coarse scan spacing.
    #[arg(long, default_value_t = 0.05)]
    pub delta_step: f64,
    /// Golden-section stopping width.
    #[arg(long, default_value_t = 1e-3)]
    pub delta_tol: f64,
}

impl SearchArgs {
    pub fn search(&self) -> DetuningSearch {
        DetuningSearch {
            lo: self.delta_lo,
            hi: self.delta_hi,
            scan_step: self.delta_step,
            tol: self.delta_tol,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SteadyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub medium: MediumArgs,
    /// Loop phase (rad) when no sweep is given.
    #[arg(long, default_value_t = 0.0)]
    pub phi_r: f64,
    /// Loop phase sweep `start:stop:step` (rad).
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_r_sweep: Option<Sweep>,
    /// ζ samples used to unwrap the accumulated phase.
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct PhaseDiagramArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub medium: MediumArgs,
    #[arg(long, default_value_t = 0.0)]
    pub phi_r: f64,
    /// Send no signal in; both columns are then normalized to the incident probe.
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    pub signal_off: bool,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct JumpArgs {
    /// Detuning grid `start:stop:step`.
    #[arg(long, default_value = "1:40:1", allow_hyphen_values = true)]
    pub delta_sweep: Sweep,
    /// Odd branch index.
    #[arg(long, default_value_t = 1)]
    pub branch: u32,
    /// Also locate the probe zero on a traced curve through 1.5 α_c.
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    pub verify: bool,
    #[arg(long, default_value_t = 2000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shift {
    Pi,
    HalfPi,
}

#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ApmArgs {
    /// Optical depths, comma-separated.
    #[arg(long, default_value = "10,20,50,100", allow_hyphen_values = true)]
    pub alpha_list: NumberList,
    #[arg(long, value_enum, default_value_t = Shift::Pi)]
    pub shift: Shift,
    /// Emit every scanned detuning instead of the optimum.
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    pub delta_scan: bool,
    #[command(flatten)]
    #[serde(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Square,
    Smoothed,
    Gaussian,
    Cw,
}

#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct PropagateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub medium: MediumArgs,
    /// Ground-state dephasing rate.
    #[arg(long, default_value_t = 0.0)]
    pub gamma21: f64,
    /// Loop phase of the incident pair (rad).
    #[arg(long, default_value_t = 0.0)]
    pub phi_r: f64,
    /// Incident probe amplitude.
    #[arg(long, default_value_t = 0.01)]
    pub amplitude: f64,
    /// Incident signal amplitude (defaults to the probe's).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signal_amplitude: Option<f64>,
    #[arg(long, value_enum, default_value_t = Shape::Smoothed)]
    pub shape: Shape,
    #[arg(long, default_value_t = 20.0)]
    pub t_on: f64,
    #[arg(long, default_value_t = 220.0)]
    pub t_off: f64,
    #[arg(long, default_value_t = 2.0)]
    pub rise_time: f64,
    #[arg(long, default_value_t = 200)]
    pub n_z: usize,
    #[arg(long, default_value_t = 0.02)]
    pub dt: f64,
    #[arg(long, default_value_t = 400.0)]
    pub t_final: f64,
    /// Keep every n-th time sample in the output.
    #[arg(long, default_value_t = 10)]
    pub time_stride: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct AmplifyArgs {
    /// Optical depths `start:stop:step`.
    #[arg(long, default_value = "0:100:5", allow_hyphen_values = true)]
    pub alpha_sweep: Sweep,
    #[command(flatten)]
    #[serde(flatten)]
    pub search: SearchArgs,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parses_and_prints() {
        let s: Sweep = "0:1.005:0.01".parse().unwrap();
        assert_eq!(s.to_string(), "0:1.005:0.01");
        assert_eq!(s.points().len(), 102);
        assert_eq!(*s.points().last().unwrap(), 1.005);
        assert!("1:0:0.1".parse::<Sweep>().is_err());
        assert!("0:1:0".parse::<Sweep>().is_err());
        assert!("0:1".parse::<Sweep>().is_err());
    }

    #[test]
    fn number_list_round_trips() {
        let l: NumberList = "10, 20,50.5".parse().unwrap();
        assert_eq!(l.0, [10.0, 20.0, 50.5]);
        assert_eq!(l.to_string(), "10,20,50.5");
        assert!("10,x".parse::<NumberList>().is_err());
    }

    #[test]
    fn config_keys_are_flag_names() {
        let cli = Cli::try_parse_from(["dleit", "steady", "--alpha", "100", "--phi-r-sweep", "0:1:0.5"]).unwrap();
        let cfg = cli.command.config();
        assert_eq!(cfg["alpha"], 100.0);
        assert_eq!(cfg["phi-r-sweep"], "0:1:0.5");
        assert_eq!(cfg["omega-c"], 1.0);
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
