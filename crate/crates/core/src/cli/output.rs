use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;

/// Version of the input and report formats described in `schema/`.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct ReportHeader {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema_version: u32,
    pub command: String,
    pub seed: u64,
}

impl ReportHeader {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            tool: "biq",
            version: env!("CARGO_PKG_VERSION"),
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            seed,
        }
    }

    pub fn csv_comment(&self) -> String {
        format!(
            "# {} {} schema {} command {} seed {}\n",
            self.tool, self.version, self.schema_version, self.command, self.seed
        )
    }
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    header: &'a ReportHeader,
    result: &'a T,
}

pub fn json_document<T: Serialize>(header: &ReportHeader, result: &T) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(&Document { header, result })?;
    v.push(b'\n');
    Ok(v)
}

/// Header line followed by one JSON object per record.
pub fn jsonl_document<T: Serialize>(header: &ReportHeader, records: &[T]) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec(header)?;
    v.push(b'\n');
    crate::catalog::write_jsonl(records, &mut v)?;
    Ok(v)
}

fn temp_path(path: &Path) -> PathBuf {
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!(".{name}.{}.tmp", std::process::id()))
}

/// Writes the whole report to `path` through a temporary file and a
/// rename, or to stdout.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> Result<()> {
    match path {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
        Some(p) => {
            let tmp = temp_path(p);
            let res = (|| {
                let mut f = fs::File::create(&tmp)?;
                f.write_all(bytes)?;
                f.sync_all()?;
                fs::rename(&tmp, p)
            })();
            if res.is_err() {
                let _ = fs::remove_file(&tmp);
            }
            res?;
        }
    }
    Ok(())
}
