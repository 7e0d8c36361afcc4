use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use spdc_core::config::Config;

/// Everything needed to repeat a run: the command, its resolved options and
/// the canonical configuration text.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub tool_version: String,
    pub config: Option<String>,
    pub pump: Option<Value>,
    pub crystal: Option<Value>,
    pub options: Value,
    pub outputs: Vec<String>,
    pub threads: usize,
    pub duration_seconds: f64,
}

pub struct Recorder {
    command: &'static str,
    started: Instant,
    config: Option<Config>,
    options: Value,
    outputs: Vec<PathBuf>,
}

impl Recorder {
    pub fn new(command: &'static str, config: Option<Config>, options: Value) -> Self {
        Recorder {
            command,
            started: Instant::now(),
            config,
            options,
            outputs: Vec::new(),
        }
    }

    pub fn write(&mut self, dir: &Path, name: &str, contents: &str) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(dir)?;
        let path = dir.join(name);
        std::fs::write(&path, contents)?;
        self.outputs.push(path.clone());
        Ok(path)
    }

    pub fn finish(self, dir: &Path) -> std::io::Result<PathBuf> {
        let m = RunManifest {
            command: self.command.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            config: self.config.map(|c| c.serialize()),
            pump: self.config.map(|c| serde_json::to_value(c.pump).unwrap_or(Value::Null)),
            crystal: self.config.map(|c| serde_json::to_value(c.crystal).unwrap_or(Value::Null)),
            options: self.options,
            outputs: self.outputs.iter().map(|p| p.display().to_string()).collect(),
            threads: rayon::current_num_threads(),
            duration_seconds: self.started.elapsed().as_secs_f64(),
        };
        std::fs::create_dir_all(dir)?;
        let path = dir.join(format!("{}.manifest.json", self.command));
        let text = serde_json::to_string_pretty(&m).map_err(std::io::Error::other)?;
        std::fs::write(&path, text + "\n")?;
        Ok(path)
    }
}
