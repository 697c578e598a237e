//! JSON graph-spec files.
//!
//! ```json
//! {"modes": 3, "edges": [{"i": 1, "j": 2, "re": 0.0, "im": 0.5}]}
//! ```
//!
//! Mode labels are 1-based in the file and 0-based in [`GraphSpec`].

use std::collections::HashSet;
use std::path::Path;

use gem_core::{Edge, GraphSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub i: usize,
    pub j: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpecFile {
    pub modes: usize,
    pub edges: Vec<EdgeRecord>,
}

impl GraphSpecFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            let full = e.to_string();
            // serde_json appends " at line L column C"; the variant carries both
            let message = match full.rfind(" at line ") {
                Some(k) => full[..k].to_string(),
                None => full,
            };
            CliError::Parse {
                line: e.line(),
                column: e.column(),
                message,
            }
        })
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_graph_spec(&self) -> Result<GraphSpec, CliError> {
        if self.modes == 0 {
            return Err(CliError::Input("modes must be at least 1".into()));
        }
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (k, e) in self.edges.iter().enumerate() {
            if !(1 <= e.i && e.i < e.j && e.j <= self.modes) {
                return Err(CliError::Input(format!(
                    "edge {k}: need 1 <= i < j <= {}, got i={} j={}",
                    self.modes, e.i, e.j
                )));
            }
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(CliError::Input(format!("edge {k}: weight is not finite")));
            }
            if !seen.insert((e.i, e.j)) {
                return Err(CliError::Input(format!(
                    "edge {k}: duplicate edge ({}, {})",
                    e.i, e.j
                )));
            }
            edges.push(Edge::new(e.i - 1, e.j - 1, Complex64::new(e.re, e.im)));
        }
        Ok(GraphSpec::new(self.modes, edges)?)
    }
}

impl From<&GraphSpec> for GraphSpecFile {
    fn from(spec: &GraphSpec) -> Self {
        GraphSpecFile {
            modes: spec.modes(),
            edges: spec
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    i: e.a + 1,
                    j: e.b + 1,
                    re: e.weight.re,
                    im: e.weight.im,
                })
                .collect(),
        }
    }
}
