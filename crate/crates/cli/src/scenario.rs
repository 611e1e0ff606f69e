//! Scenario JSON files: code space plus teleport configuration plus secret.
//!
//! ```json
//! {
//!   "codespace": {"graph": {"n": 4, "edges": [[1,2],[2,3],[3,4]]},
//!                 "signatures": ["0000", "0101"]},
//!   "config": {"parties": [
//!     {"name": "alice", "role": "dealer", "qubits": [1],
//!      "measurement": {"bell_with_ancilla": {"qubit": 1}}},
//!     {"name": "bob", "role": "agent", "qubits": [2, 3],
//!      "measurement": {"product": {"letters": ["Z", "Z"]}}},
//!     {"name": "rex", "role": "recoverer", "qubits": [4],
//!      "measurement": "unmeasured"}
//!   ]},
//!   "secret": [[0.6, 0.0], [0.0, 0.8]]
//! }
//! ```
//!
//! A code space may also list explicit codewords as amplitude records.

use anyhow::{Context, Result};
use num_complex::Complex64;
use serde::Deserialize;

use dqis_core::dqis::{CodeSpace, Party, Secret, TeleportConfig};
use dqis_core::graph::{basis_state, Graph, GraphSignature};
use dqis_core::state::{AmplitudeRecord, StateVector};

#[derive(Deserialize)]
pub struct ScenarioFile {
    codespace: CodeSpaceSpec,
    config: ConfigSpec,
    secret: Option<Vec<(f64, f64)>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CodeSpaceSpec {
    GraphBasis {
        graph: Graph,
        signatures: Vec<String>,
    },
    Explicit {
        n: usize,
        codewords: Vec<Vec<AmplitudeRecord>>,
    },
}

#[derive(Deserialize)]
struct ConfigSpec {
    parties: Vec<Party>,
}

impl ScenarioFile {
    pub fn load(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        serde_json::from_str(&text).context("parsing scenario JSON")
    }

    pub fn code_space(&self) -> Result<CodeSpace> {
        let codewords = match &self.codespace {
            CodeSpaceSpec::GraphBasis { graph, signatures } => signatures
                .iter()
                .map(|s| {
                    let sig = GraphSignature::from_bit_string(s)?;
                    basis_state(graph, &sig)
                })
                .collect::<dqis_core::Result<Vec<_>>>()?,
            CodeSpaceSpec::Explicit { n, codewords } => codewords
                .iter()
                .map(|records| {
                    let mut amps = vec![Complex64::ZERO; 1usize << n];
                    for r in records {
                        let idx = usize::from_str_radix(&r.bits, 2)
                            .with_context(|| format!("amplitude bits `{}`", r.bits))?;
                        amps[idx] = Complex64::new(r.re, r.im);
                    }
                    Ok(StateVector::from_amplitudes(*n, amps)?)
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(CodeSpace::new(codewords)?)
    }

    pub fn config(&self) -> Result<TeleportConfig> {
        let n = match &self.codespace {
            CodeSpaceSpec::GraphBasis { graph, .. } => graph.n(),
            CodeSpaceSpec::Explicit { n, .. } => *n,
        };
        Ok(TeleportConfig::new(self.config.parties.clone(), n)?)
    }

    pub fn secret(&self) -> Result<Option<Secret>> {
        match &self.secret {
            None => Ok(None),
            Some(pairs) => {
                let amps = pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
                Ok(Some(Secret::new(amps)?))
            }
        }
    }
}
