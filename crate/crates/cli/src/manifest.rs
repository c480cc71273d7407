use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use lqfa_core::{AssembledRecognizer, Mode};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Summary of a synthesized recognizer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub mode: String,
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(rename = "P")]
    pub p: usize,
    /// Fourier dimension; absent in periodic-only mode.
    pub n: Option<usize>,
    pub bound: f64,
    pub lambda: f64,
    pub rho: f64,
    /// Basis-state counts; products report their nominal dimension.
    pub dims: BTreeMap<String, usize>,
}

impl Manifest {
    pub fn new(r: &AssembledRecognizer, t: usize, p: usize) -> Self {
        let (accept, reject) = r.claimed_bounds();
        Self {
            mode: r.mode.as_str().into(),
            t,
            p,
            n: (r.mode == Mode::Full).then_some(r.params.n),
            bound: r.bound,
            lambda: 0.5 * (accept + reject),
            rho: 0.5 * (accept - reject),
            dims: r
                .part_dims()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }
}

/// Writes through a temporary file in the target directory, so a failed
/// run never leaves a partial file behind.
pub fn write_atomically(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
