//! Output files and the run manifest.
//!
//! Every run writes its files under a run-specific name, so each data file
//! is referenced by exactly one manifest line.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::SystemTime;

use hardy_core::ScanConfig;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

pub const MANIFEST: &str = "manifests.jsonl";
pub const OUT_DIR_ENV: &str = "HARDYZ_OUT_DIR";
const SIG_DIGITS: i32 = 12;

/// A number with 12 significant digits, trailing zeros dropped.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (SIG_DIGITS - 1 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.*e}", (SIG_DIGITS - 1) as usize);
        let (mant, e) = s.split_once('e').expect("exponent");
        format!("{}e{e}", trim(mant.to_string()))
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// One CSV cell.
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Flag(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }
}

/// The files of one run, plus what goes into its manifest line.
pub struct Run {
    dir: PathBuf,
    command: &'static str,
    stem: String,
    started: SystemTime,
    parameters: Map<String, Value>,
    cfg: ScanConfig,
    outputs: Vec<PathBuf>,
}

impl Run {
    pub fn start(dir: &Path, command: &'static str, cfg: &ScanConfig) -> Result<Self, CliError> {
        fs::create_dir_all(dir)?;
        let started = SystemTime::now();
        let stamp = humantime::format_rfc3339_seconds(started)
            .to_string()
            .replace([':', '-'], "");
        // keep stems unique when several runs start within one second
        let mut n = 0;
        let stem = loop {
            let candidate = format!("{command}-{stamp}-{n}");
            let taken = fs::read_dir(dir)?
                .filter_map(|e| e.ok())
                .any(|e| e.file_name().to_string_lossy().starts_with(&candidate));
            if !taken {
                break candidate;
            }
            n += 1;
        };
        Ok(Run {
            dir: dir.to_path_buf(),
            command,
            stem,
            started,
            parameters: Map::new(),
            cfg: *cfg,
            outputs: Vec::new(),
        })
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.parameters.insert(key.to_string(), v);
    }

    fn path(&mut self, suffix: &str, ext: &str) -> PathBuf {
        let p = self.dir.join(format!("{}-{suffix}.{ext}", self.stem));
        self.outputs.push(p.clone());
        p
    }

    pub fn write_csv(
        &mut self,
        suffix: &str,
        header: &[&str],
        rows: impl IntoIterator<Item = Vec<Cell>>,
    ) -> Result<PathBuf, CliError> {
        let path = self.path(suffix, "csv");
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(header)?;
        for row in rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()?;
        Ok(path)
    }

    pub fn write_json(&mut self, suffix: &str, value: &Value) -> Result<PathBuf, CliError> {
        let path = self.path(suffix, "json");
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        fs::write(&path, text)?;
        Ok(path)
    }

    /// Append this run's manifest line and report the written files.
    pub fn finish(self) -> Result<(), CliError> {
        let finished = SystemTime::now();
        let mut line = Map::new();
        line.insert("command".into(), self.command.into());
        line.insert("parameters".into(), Value::Object(self.parameters));
        line.insert("cfg".into(), serde_json::to_value(self.cfg)?);
        let outputs: Vec<Value> = self
            .outputs
            .iter()
            .map(|p| p.display().to_string().into())
            .collect();
        line.insert("output_paths".into(), Value::Array(outputs));
        line.insert("started".into(), rfc3339(self.started).into());
        line.insert("finished".into(), rfc3339(finished).into());
        line.insert("tool_version".into(), env!("CARGO_PKG_VERSION").into());
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(self.dir.join(MANIFEST))?;
        writeln!(f, "{}", Value::Object(line))?;
        for p in &self.outputs {
            println!("{}", p.display());
        }
        Ok(())
    }
}

fn rfc3339(t: SystemTime) -> String {
    humantime::format_rfc3339_millis(t).to_string()
}

/// `cfg` fields as top-level keys of a flat JSON object.
pub fn flatten_cfg(obj: &mut Map<String, Value>, cfg: &ScanConfig) {
    if let Ok(Value::Object(m)) = serde_json::to_value(cfg) {
        obj.extend(m);
    }
}
