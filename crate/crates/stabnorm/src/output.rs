//! CSV and JSON table writers.
//!
//! CSV files hold the rows only. JSON files wrap them as
//! `{"schema": 1, "command", "form", "parameters", "rows", "summary"}`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// One command's result: flat rows plus free-form metadata for JSON.
pub struct Table<R> {
    pub rows: Vec<R>,
    pub parameters: Value,
    pub summary: Value,
}

pub fn write_table<R: Serialize>(
    config: &RunConfig,
    table: &Table<R>,
    elapsed: Option<f64>,
) -> CliResult<PathBuf> {
    let path = config.output_path();
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            what: format!("cannot create output directory {}", dir.display()),
            source,
        })?;
    }
    match config.format {
        Format::Csv => write_csv(&path, &table.rows)?,
        Format::Json => {
            let mut doc = json!({
                "schema": SCHEMA_VERSION,
                "command": config.command.name(),
                "form": config.form,
                "parameters": table.parameters,
                "rows": table.rows,
                "summary": table.summary,
            });
            if let Some(seconds) = elapsed {
                doc["elapsed_seconds"] = json!(seconds);
            }
            write_json(&path, &doc)?;
        }
    }
    Ok(path)
}

fn write_csv<R: Serialize>(path: &Path, rows: &[R]) -> CliResult<()> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut writer = csv::Writer::from_path(path).map_err(csv_err)?;
    for row in rows {
        writer.serialize(row).map_err(csv_err)?;
    }
    writer.flush().map_err(|source| CliError::Io {
        what: format!("cannot write {}", path.display()),
        source,
    })
}

fn write_json(path: &Path, doc: &Value) -> CliResult<()> {
    let io_err = |source| CliError::Io {
        what: format!("cannot write {}", path.display()),
        source,
    };
    let mut file = fs::File::create(path).map_err(io_err)?;
    serde_json::to_writer_pretty(&mut file, doc).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    file.write_all(b"\n").map_err(io_err)
}
