//! Trajectory CSV, JSON reports and the run manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use reduction_core::dynamics::{Trajectory, WallStop};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::LabError;

pub const MANIFEST: &str = "manifest.json";

/// 17 significant digits, enough to round-trip any `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let n = traj.q.first().map_or(0, Vec::len);
    let mut out = String::from("t");
    for k in 1..=n {
        out.push_str(&format!(",q{k}"));
    }
    for k in 1..=n {
        out.push_str(&format!(",p{k}"));
    }
    out.push_str(",energy\n");
    for i in 0..traj.len() {
        let row: Vec<String> = std::iter::once(traj.times[i])
            .chain(traj.q[i].iter().copied())
            .chain(traj.p[i].iter().copied())
            .chain(std::iter::once(traj.energy[i]))
            .map(num)
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_file(dir: &Path, name: &str, contents: &[u8]) -> Result<PathBuf, LabError> {
    let path = dir.join(name);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| LabError::io(parent, e))?;
    }
    let mut f = fs::File::create(&path).map_err(|e| LabError::io(&path, e))?;
    f.write_all(contents).map_err(|e| LabError::io(&path, e))?;
    Ok(path)
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf, LabError> {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    write_file(dir, name, text.as_bytes())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FileEntry {
    /// Relative to the output directory, `/`-separated.
    pub path: String,
    pub bytes: u64,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct StopEntry {
    pub time: f64,
    pub root: String,
    pub margin: f64,
}

impl From<WallStop> for StopEntry {
    fn from(s: WallStop) -> Self {
        Self {
            time: s.time,
            root: s.root.to_string(),
            margin: s.margin,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub artifact: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: serde_json::Value,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub files: Vec<FileEntry>,
    pub checks: Vec<CheckEntry>,
    pub stop: Option<StopEntry>,
    pub exit_code: i32,
}

pub fn unix_now() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0.0, |d| d.as_secs_f64())
}

/// Every regular file under `dir` except the manifest, sorted by path.
pub fn list_files(dir: &Path) -> Result<Vec<FileEntry>, LabError> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).map_err(|e| LabError::io(&d, e))? {
            let path = entry.map_err(|e| LabError::io(&d, e))?.path();
            if path.is_dir() {
                stack.push(path);
                continue;
            }
            let rel = path.strip_prefix(dir).expect("walk stays under dir");
            let rel = rel
                .components()
                .map(|c| c.as_os_str().to_string_lossy())
                .collect::<Vec<_>>()
                .join("/");
            if rel == MANIFEST {
                continue;
            }
            let bytes = fs::read(&path).map_err(|e| LabError::io(&path, e))?;
            out.push(FileEntry {
                path: rel,
                bytes: bytes.len() as u64,
                sha256: sha256_hex(&bytes),
            });
        }
    }
    out.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(out)
}
