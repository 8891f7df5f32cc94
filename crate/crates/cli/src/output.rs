//! CSV and JSON emission. Numbers in CSV use 17 significant digits so that
//! identical runs produce identical bytes.

use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;

/// Parameters and settings of a run, written as the first CSV line.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub params: Value,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_s: Option<f64>,
}

impl RunManifest {
    pub fn new(command: &str, params: Value) -> Self {
        RunManifest {
            command: command.to_string(),
            params,
            version: env!("CARGO_PKG_VERSION"),
            wall_clock_s: None,
        }
    }
}

pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

pub struct Csv {
    pub manifest: RunManifest,
    pub result: Option<Value>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(manifest: RunManifest, header: Vec<&'static str>) -> Self {
        Csv { manifest, result: None, header, rows: Vec::new() }
    }

    pub fn write(&self, w: &mut dyn Write) -> std::io::Result<()> {
        writeln!(w, "# {}", serde_json::to_string(&self.manifest)?)?;
        if let Some(r) = &self.result {
            writeln!(w, "# result {}", serde_json::to_string(r)?)?;
        }
        writeln!(w, "{}", self.header.join(","))?;
        for row in &self.rows {
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

pub enum Output {
    Json(Value),
    Csv(Csv),
}

impl Output {
    pub fn write(&self, w: &mut dyn Write) -> std::io::Result<()> {
        match self {
            Output::Json(v) => writeln!(w, "{}", serde_json::to_string_pretty(v)?),
            Output::Csv(c) => c.write(w),
        }
    }

    pub fn set_wall_clock(&mut self, secs: f64) {
        match self {
            Output::Json(Value::Object(map)) => {
                map.insert("wall_clock_s".into(), json!(secs));
            }
            Output::Json(_) => {}
            Output::Csv(c) => c.manifest.wall_clock_s = Some(secs),
        }
    }
}
