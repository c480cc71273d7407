use std::collections::BTreeSet;
use std::path::Path;

use lqfa_core::UnaryDfa;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// `{"T": .., "P": .., "accept": [..]}` on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaDocument {
    #[serde(rename = "T")]
    pub t: usize,
    #[serde(rename = "P")]
    pub p: usize,
    pub accept: Vec<usize>,
}

impl DfaDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Checks uniqueness and range of `accept`.
    pub fn to_dfa(&self) -> Result<UnaryDfa, CliError> {
        let unique: BTreeSet<usize> = self.accept.iter().copied().collect();
        if unique.len() != self.accept.len() {
            return Err(CliError::Usage("accept list has duplicates".into()));
        }
        Ok(UnaryDfa::new(self.t, self.p, unique)?)
    }
}
