//! Single-qubit entangling attack on the five-qubit scenario and the
//! resulting degradation of the Bell violation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bell::BellOperator;
use crate::dqis::{encode, CodeSpace, Secret};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::pauli::{PauliLetter, PauliString};
use crate::state::StateVector;

/// Interaction angle and target for the eavesdropping unitary.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AttackParams {
    /// Radians in [0, pi/2]; 0 acts as identity on a |0> ancilla, pi/2 is CNOT.
    pub theta: f64,
    /// Channel qubit the ancilla is attached to.
    pub target_qubit: usize,
}

impl AttackParams {
    pub fn new(theta: f64) -> Result<Self> {
        AttackParams::on_qubit(theta, 4)
    }

    pub fn on_qubit(theta: f64, target_qubit: usize) -> Result<Self> {
        if !(0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&theta) {
            return Err(Error::ThetaOutOfRange { theta });
        }
        Ok(AttackParams {
            theta,
            target_qubit,
        })
    }

    pub fn cos(&self) -> f64 {
        self.theta.cos()
    }

    pub fn sin(&self) -> f64 {
        self.theta.sin()
    }
}

/// The two-qubit interaction (control: channel qubit, target: ancilla):
/// |0><0| (x) I + |1><1| (x) [[cos t, sin t], [sin t, -cos t]].
pub fn eve_unitary(p: &AttackParams) -> CMatrix {
    let c = Complex64::new(p.cos(), 0.0);
    let s = Complex64::new(p.sin(), 0.0);
    let mut m = CMatrix::identity(4);
    m[(2, 2)] = c;
    m[(2, 3)] = s;
    m[(3, 2)] = s;
    m[(3, 3)] = -c;
    m
}

/// Encode the secret on the code space, append an ancilla in |0> as the last
/// qubit, and apply the interaction on (target qubit, ancilla).
pub fn attacked_state(secret: &Secret, code: &CodeSpace, p: &AttackParams) -> Result<StateVector> {
    if p.target_qubit == 0 || p.target_qubit > code.n() {
        return Err(Error::IndexOutOfRange {
            index: p.target_qubit,
            n: code.n(),
        });
    }
    let encoded = encode(secret, code)?;
    let joint = encoded.tensor(&StateVector::zero(1)?)?;
    let eve_qubit = code.n() + 1;
    joint.apply_gate(&eve_unitary(p), &[p.target_qubit, eve_qubit])
}

/// One row of the violation sweep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ViolationSample {
    pub theta: f64,
    pub value: f64,
    /// Per-term expectations <h_m (x) I> on the attacked state, term order.
    pub term_expectations: Vec<f64>,
}

/// Bell value of the operator on the attacked state, for each angle. Each
/// term is padded with the identity on the ancilla.
pub fn violation_under_attack(
    secret: &Secret,
    code: &CodeSpace,
    bell: &BellOperator,
    thetas: &[f64],
) -> Result<Vec<ViolationSample>> {
    let padded: Vec<PauliString> = bell
        .terms()
        .iter()
        .map(|t| {
            let mut letters = t.letters().to_vec();
            letters.push(PauliLetter::I);
            PauliString::new(t.phase(), letters)
        })
        .collect();
    thetas
        .iter()
        .map(|&theta| {
            let params = AttackParams {
                theta,
                target_qubit: 4,
            };
            let state = attacked_state(secret, code, &params)?;
            let mut term_expectations = Vec::with_capacity(padded.len());
            for t in &padded {
                term_expectations.push(state.expectation(t)?);
            }
            Ok(ViolationSample {
                theta,
                value: term_expectations.iter().sum(),
                term_expectations,
            })
        })
        .collect()
}

impl ViolationSample {
    pub fn csv_header(m: usize) -> String {
        let mut cols = vec!["theta".to_string(), "value".to_string()];
        cols.extend((1..=m).map(|i| format!("h{i}")));
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let mut cols = vec![format!("{:.12}", self.theta), format!("{:.12}", self.value)];
        cols.extend(self.term_expectations.iter().map(|e| format!("{e:.12}")));
        cols.join(",")
    }
}
