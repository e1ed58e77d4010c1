//! Run configuration: JSON file, `AACA_CONFIG` fallback, flag overlay.
//!
//! Precedence, lowest to highest: built-in defaults, config file, flags.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use aaca_core::{AcoParams, CoordConvention, DownscaleMode, Method, VmaxMode};

use crate::AppError;

pub const CONFIG_ENV: &str = "AACA_CONFIG";

/// On-disk configuration. Every field is optional; unknown keys are
/// rejected so typos surface instead of silently using defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub tau_init: Option<f64>,
    pub phi: Option<f64>,
    pub rho: Option<f64>,
    pub q0: Option<f64>,
    pub iterations: Option<u32>,
    pub steps_per_ant: Option<u32>,
    pub ants: Option<usize>,
    pub memory_size: Option<usize>,
    pub seed: Option<u64>,
    pub vmax_mode: Option<String>,
    pub methods: Option<Vec<String>>,
    pub scale: Option<u32>,
    pub downscale: Option<String>,
    pub convention: Option<String>,
    pub obaca_normalize: Option<bool>,
    pub eps: Option<f64>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub compare: Option<PathBuf>,
}

/// Values taken from command-line flags; `None` defers to the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub methods: Option<Vec<Method>>,
    pub scale: Option<u32>,
    pub downscale: Option<DownscaleMode>,
    pub inputs: Vec<PathBuf>,
    pub output: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub compare: Option<PathBuf>,
}

/// Fully resolved, validated run settings.
#[derive(Debug, Clone)]
pub struct Settings {
    pub params: AcoParams,
    pub methods: Vec<Method>,
    pub scale: u32,
    pub downscale: DownscaleMode,
    pub convention: CoordConvention,
    pub obaca_normalize: bool,
    pub eps: f64,
    pub inputs: Vec<PathBuf>,
    pub output: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub compare: Option<PathBuf>,
}

/// Loads the config file named by `--config`, falling back to the
/// `AACA_CONFIG` environment variable. Missing both means defaults only.
pub fn load_file(explicit: Option<&Path>) -> Result<FileConfig, AppError> {
    let path = match explicit {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(CONFIG_ENV).map(PathBuf::from),
    };
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = fs::read_to_string(&path).map_err(aaca_core::Error::from)?;
    serde_json::from_str(&text)
        .map_err(|e| AppError::Config(format!("{}: {}", path.display(), e)))
}

fn parse<T>(value: Option<&str>, what: &str) -> Result<Option<T>, AppError>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    value
        .map(|s| {
            s.parse()
                .map_err(|e| AppError::Config(format!("{}: {}", what, e)))
        })
        .transpose()
}

pub fn resolve(
    file: &FileConfig,
    flags: &Overrides,
    default_methods: &[Method],
) -> Result<Settings, AppError> {
    let mut params = AcoParams::default();
    if let Some(v) = file.alpha {
        params.alpha = v;
    }
    if let Some(v) = file.beta {
        params.beta = v;
    }
    if let Some(v) = file.tau_init {
        params.tau_init = v;
    }
    if let Some(v) = file.phi {
        params.phi = v;
    }
    if let Some(v) = file.rho {
        params.rho = v;
    }
    if let Some(v) = file.q0 {
        params.q0 = v;
    }
    if let Some(v) = file.iterations {
        params.iterations = v;
    }
    if let Some(v) = file.steps_per_ant {
        params.steps_per_ant = v;
    }
    if let Some(v) = file.ants {
        params.ants = v;
    }
    if let Some(v) = file.memory_size {
        params.memory_size = v;
    }
    if let Some(v) = file.seed {
        params.seed = v;
    }
    if let Some(mode) = parse::<VmaxMode>(file.vmax_mode.as_deref(), "vmax_mode")? {
        params.vmax_mode = mode;
    }
    if let Some(v) = flags.seed {
        params.seed = v;
    }
    params.validate().map_err(AppError::Core)?;

    let methods = match (&flags.methods, &file.methods) {
        (Some(m), _) => m.clone(),
        (None, Some(names)) => {
            let mut out = Vec::new();
            for n in names {
                out.push(
                    n.parse::<Method>()
                        .map_err(|e| AppError::Config(format!("methods: {}", e)))?,
                );
            }
            out
        }
        (None, None) => default_methods.to_vec(),
    };
    if methods.is_empty() {
        return Err(AppError::Config("methods list is empty".into()));
    }

    let scale = flags.scale.or(file.scale).unwrap_or(4);
    if scale < 2 {
        return Err(AppError::Core(aaca_core::Error::InvalidScale(scale)));
    }
    let downscale = match flags.downscale {
        Some(m) => m,
        None => parse::<DownscaleMode>(file.downscale.as_deref(), "downscale")?
            .unwrap_or_default(),
    };
    let convention =
        parse::<CoordConvention>(file.convention.as_deref(), "convention")?.unwrap_or_default();
    let obaca_normalize = file.obaca_normalize.unwrap_or(true);
    let eps = file.eps.unwrap_or(aaca_core::DEFAULT_EPS);
    if !eps.is_finite() || eps < 0.0 {
        return Err(AppError::Config(format!(
            "eps must be finite and non-negative, got {}",
            eps
        )));
    }

    let inputs = if flags.inputs.is_empty() {
        file.input.iter().cloned().collect()
    } else {
        flags.inputs.clone()
    };

    Ok(Settings {
        params,
        methods,
        scale,
        downscale,
        convention,
        obaca_normalize,
        eps,
        inputs,
        output: flags.output.clone().or_else(|| file.output.clone()),
        report: flags.report.clone().or_else(|| file.report.clone()),
        compare: flags.compare.clone().or_else(|| file.compare.clone()),
    })
}

#[derive(Serialize)]
struct Echo<'a> {
    alpha: f64,
    beta: f64,
    tau_init: f64,
    phi: f64,
    rho: f64,
    q0: f64,
    iterations: u32,
    steps_per_ant: u32,
    ants: usize,
    memory_size: usize,
    seed: u64,
    vmax_mode: &'a str,
    methods: Vec<&'a str>,
    scale: u32,
    downscale: &'a str,
    convention: &'a str,
    obaca_normalize: bool,
    eps: f64,
}

/// One-line JSON rendering of the resolved settings, reproduced on stdout
/// and next to report files so every result carries its parameters.
pub fn echo_json(s: &Settings) -> String {
    let echo = Echo {
        alpha: s.params.alpha,
        beta: s.params.beta,
        tau_init: s.params.tau_init,
        phi: s.params.phi,
        rho: s.params.rho,
        q0: s.params.q0,
        iterations: s.params.iterations,
        steps_per_ant: s.params.steps_per_ant,
        ants: s.params.ants,
        memory_size: s.params.memory_size,
        seed: s.params.seed,
        vmax_mode: s.params.vmax_mode.name(),
        methods: s.methods.iter().map(Method::name).collect(),
        scale: s.scale,
        downscale: s.downscale.name(),
        convention: s.convention.name(),
        obaca_normalize: s.obaca_normalize,
        eps: s.eps,
    };
    serde_json::to_string(&echo).expect("static schema serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_resolve_without_any_sources() {
        let s = resolve(
            &FileConfig::default(),
            &Overrides::default(),
            &[Method::Aaca],
        )
        .unwrap();
        assert_eq!(s.scale, 4);
        assert_eq!(s.methods, vec![Method::Aaca]);
        assert_eq!(s.downscale, DownscaleMode::Decimate);
        assert!(s.obaca_normalize);
        assert_eq!(s.params, AcoParams::default());
    }

    #[test]
    fn flags_override_file_values() {
        let file: FileConfig =
            serde_json::from_str(r#"{"seed": 9, "scale": 2, "methods": ["bilinear"]}"#).unwrap();
        let flags = Overrides {
            seed: Some(42),
            methods: Some(vec![Method::Nearest]),
            ..Overrides::default()
        };
        let s = resolve(&file, &flags, &[Method::Aaca]).unwrap();
        assert_eq!(s.params.seed, 42);
        assert_eq!(s.scale, 2);
        assert_eq!(s.methods, vec![Method::Nearest]);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = serde_json::from_str::<FileConfig>(r#"{"alfa": 1.0}"#);
        assert!(err.is_err());
    }

    #[test]
    fn bad_enum_strings_are_reported() {
        let file: FileConfig = serde_json::from_str(r#"{"downscale": "area"}"#).unwrap();
        assert!(resolve(&file, &Overrides::default(), &[Method::Aaca]).is_err());
    }

    #[test]
    fn echo_is_stable_json() {
        let s = resolve(
            &FileConfig::default(),
            &Overrides::default(),
            &[Method::Bilinear, Method::Aaca],
        )
        .unwrap();
        let echo = echo_json(&s);
        assert!(echo.starts_with("{\"alpha\":1.0,"));
        assert!(echo.contains("\"methods\":[\"bilinear\",\"aaca\"]"));
    }

    #[test]
    fn invalid_params_fail_validation() {
        let file: FileConfig = serde_json::from_str(r#"{"phi": 1.5}"#).unwrap();
        assert!(resolve(&file, &Overrides::default(), &[Method::Aaca]).is_err());
    }
}
