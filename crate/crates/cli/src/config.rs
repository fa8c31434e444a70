//! `ScanConfig` resolution: command-line flags, then a TOML file, then the
//! built-in defaults.

use std::path::Path;

use clap::Args;
use hardy_core::ScanConfig;

use crate::error::CliError;

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigFlags {
    /// TOML file with any of the keys below.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<std::path::PathBuf>,
    /// Highest Riemann–Siegel correction term used (C0 ..= Ck).
    #[arg(long, global = true)]
    pub rs_correction_order: Option<u32>,
    /// Below this t, Z comes from Euler–Maclaurin instead of Riemann–Siegel.
    #[arg(long, global = true)]
    pub em_switch_t: Option<f64>,
    /// Bracket width at which zero refinement stops.
    #[arg(long, global = true)]
    pub bisection_tol: Option<f64>,
    /// Grid samples per mean zero gap in scans.
    #[arg(long, global = true)]
    pub samples_per_mean_gap: Option<f64>,
}

/// Parse a TOML document into a config; missing keys keep their defaults.
pub fn parse_config(text: &str) -> Result<ScanConfig, String> {
    toml::from_str::<ScanConfig>(text).map_err(|e| e.to_string())
}

pub fn load_config(flags: &ConfigFlags) -> Result<ScanConfig, CliError> {
    let mut cfg = match &flags.config {
        Some(path) => read_file(path)?,
        None => ScanConfig::default(),
    };
    if let Some(v) = flags.rs_correction_order {
        cfg.rs_correction_order = v;
    }
    if let Some(v) = flags.em_switch_t {
        cfg.em_switch_t = v;
    }
    if let Some(v) = flags.bisection_tol {
        cfg.bisection_tol = v;
    }
    if let Some(v) = flags.samples_per_mean_gap {
        cfg.samples_per_mean_gap = v;
    }
    cfg.validate().map_err(CliError::from_core)?;
    Ok(cfg)
}

fn read_file(path: &Path) -> Result<ScanConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        assert_eq!(parse_config("").unwrap(), ScanConfig::default());
        let d = ScanConfig::default();
        assert_eq!(d.rs_correction_order, 2);
        assert_eq!(d.em_switch_t, 500.0);
        assert_eq!(d.bisection_tol, 1e-9);
        assert_eq!(d.samples_per_mean_gap, 4.0);
    }

    #[test]
    fn flag_beats_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "bisection_tol = 1e-12\nrs_correction_order = 3\n").unwrap();
        let flags = ConfigFlags {
            config: Some(path),
            bisection_tol: Some(1e-8),
            ..Default::default()
        };
        let cfg = load_config(&flags).unwrap();
        assert_eq!(cfg.bisection_tol, 1e-8);
        assert_eq!(cfg.rs_correction_order, 3);
        assert_eq!(cfg.em_switch_t, 500.0);
    }

    #[test]
    fn unknown_key_is_named() {
        let err = parse_config("bisectoin_tol = 1e-9").unwrap_err();
        assert!(err.contains("bisectoin_tol"), "{err}");
        assert!(err.contains("line 1"), "{err}");
    }

    #[test]
    fn invalid_values_are_usage_errors() {
        let flags = ConfigFlags {
            samples_per_mean_gap: Some(1.0),
            ..Default::default()
        };
        assert!(matches!(load_config(&flags), Err(CliError::Usage(_))));
    }
}
