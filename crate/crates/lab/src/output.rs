//! CSV and JSON writers, and the run manifest.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::LabResult;

/// Reals in CSV files: 17 significant digits, enough to round-trip a double.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputFile {
    pub file: String,
    pub sha256: String,
}

/// Collects files written into one output directory.
#[derive(Debug)]
pub struct OutputDir {
    root: PathBuf,
    files: Vec<OutputFile>,
}

impl OutputDir {
    pub fn create(root: &Path) -> LabResult<Self> {
        fs::create_dir_all(root)?;
        Ok(OutputDir { root: root.to_path_buf(), files: Vec::new() })
    }

    pub fn path(&self) -> &Path {
        &self.root
    }

    pub fn files(&self) -> &[OutputFile] {
        &self.files
    }

    fn write_bytes(&mut self, name: &str, bytes: &[u8]) -> LabResult<()> {
        fs::write(self.root.join(name), bytes)?;
        self.files.push(OutputFile { file: name.to_string(), sha256: sha256_hex(bytes) });
        Ok(())
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> LabResult<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write_bytes(name, text.as_bytes())
    }

    pub fn csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> LabResult<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
        self.write_bytes(name, &bytes)
    }
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    command: &'a str,
    version: &'a str,
    core_version: &'a str,
    config_sha256: String,
    seed: Option<u64>,
    outputs: &'a [OutputFile],
}

/// Writes the resolved `config.json` and `manifest.json`. Neither contains
/// timestamps or thread counts.
pub fn finish<C: Serialize>(out: &mut OutputDir, command: &str, config: &C, seed: Option<u64>) -> LabResult<()> {
    let mut text = serde_json::to_string_pretty(config)?;
    text.push('\n');
    fs::write(out.path().join("config.json"), &text)?;
    let manifest = Manifest {
        command,
        version: env!("CARGO_PKG_VERSION"),
        core_version: fixdist_core::VERSION,
        config_sha256: sha256_hex(text.as_bytes()),
        seed,
        outputs: out.files(),
    };
    let mut m = serde_json::to_string_pretty(&manifest)?;
    m.push('\n');
    fs::write(out.path().join("manifest.json"), m)?;
    Ok(())
}
