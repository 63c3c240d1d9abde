//! Generator configuration: TOML config files with `[cd2d]` and `[shifted]`
//! sections of `key = value` lines, merged under the command line flags
//! (flags win, then the file, then built-in defaults).

use std::fs;
use std::path::Path;

use serde::Deserialize;

use samap::problems::{Cd2dConfig, MassKind, ShiftedConfig};

use crate::{CliError, GenCd2dArgs, GenShiftedArgs};

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    cd2d: Option<Cd2dSection>,
    shifted: Option<ShiftedSection>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Cd2dSection {
    m: Option<usize>,
    eta: Option<f64>,
    gamma: Option<f64>,
    conv_x: Option<f64>,
    conv_y: Option<f64>,
    reaction: Option<f64>,
    forcing: Option<f64>,
    newton_tol: Option<f64>,
    max_newton: Option<usize>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ShiftedSection {
    m: Option<usize>,
    shifts: Option<Vec<f64>>,
    num_shifts: Option<usize>,
    shift_step: Option<f64>,
    mass: Option<String>,
}

fn load(path: Option<&Path>) -> Result<ConfigFile, CliError> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("config {}: {e}", path.display())))
}

fn parse_mass(name: &str) -> Result<MassKind, CliError> {
    match name {
        "diagonal" => Ok(MassKind::Diagonal),
        "tridiagonal" => Ok(MassKind::Tridiagonal),
        other => Err(CliError::Config(format!(
            "mass must be 'diagonal' or 'tridiagonal', got '{other}'"
        ))),
    }
}

pub fn cd2d_config(args: &GenCd2dArgs) -> Result<Cd2dConfig, CliError> {
    let section = load(args.config.as_deref())?.cd2d.unwrap_or_default();
    let m = args
        .m
        .or(section.m)
        .ok_or_else(|| CliError::Config("grid side m is required (flag --m or config)".into()))?;
    let mut cfg = Cd2dConfig::new(m);
    cfg.eta = args.eta.or(section.eta).unwrap_or(cfg.eta);
    cfg.gamma = args.gamma.or(section.gamma).unwrap_or(cfg.gamma);
    cfg.conv_x = args.conv_x.or(section.conv_x).unwrap_or(cfg.conv_x);
    cfg.conv_y = args.conv_y.or(section.conv_y).unwrap_or(cfg.conv_y);
    cfg.reaction = args.reaction.or(section.reaction).unwrap_or(cfg.reaction);
    cfg.forcing = args.forcing.or(section.forcing).unwrap_or(cfg.forcing);
    cfg.newton_tol = args
        .newton_tol
        .or(section.newton_tol)
        .unwrap_or(cfg.newton_tol);
    cfg.max_newton = args
        .max_newton
        .or(section.max_newton)
        .unwrap_or(cfg.max_newton);
    Ok(cfg)
}

pub fn shifted_config(args: &GenShiftedArgs) -> Result<ShiftedConfig, CliError> {
    let section = load(args.config.as_deref())?.shifted.unwrap_or_default();
    let m = args
        .m
        .or(section.m)
        .ok_or_else(|| CliError::Config("grid side m is required (flag --m or config)".into()))?;
    let shifts = if !args.shifts.is_empty() {
        args.shifts.clone()
    } else if let Some(shifts) = section.shifts {
        shifts
    } else {
        let count = args.num_shifts.or(section.num_shifts).unwrap_or(10);
        let step = args.shift_step.or(section.shift_step).unwrap_or(50.0);
        (0..count).map(|k| step * k as f64).collect()
    };
    let mass = match args.mass.as_deref().or(section.mass.as_deref()) {
        Some(name) => parse_mass(name)?,
        None => MassKind::Diagonal,
    };
    Ok(ShiftedConfig::new(m, shifts, mass))
}
