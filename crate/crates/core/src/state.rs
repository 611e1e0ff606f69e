//! Dense, exact complex state-vector simulation for up to ~12 qubits.
//!
//! Basis ordering: qubit 1 is the most significant bit, so the ket
//! |q1 q2 ... qn> sits at amplitude index q1 q2 ... qn read as a binary
//! number. All measurement semantics are exhaustive branch enumeration;
//! sampling lives in the protocol harness, not here.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::pauli::{PauliLetter, PauliString};

/// Dense-engine qubit limit (amplitude vectors stay tiny and exact).
pub const MAX_QUBITS: usize = 14;

pub const NORM_TOL: f64 = 1e-12;
pub const EXPECTATION_TOL: f64 = 1e-10;
pub const FIDELITY_TOL: f64 = 1e-9;
const BRANCH_PROB_CUTOFF: f64 = 1e-12;

/// Normalized pure state on `n` qubits.
#[derive(Clone, Debug)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// |00...0>
    pub fn zero(n: usize) -> Result<Self> {
        check_size(n)?;
        let mut amps = vec![Complex64::ZERO; 1 << n];
        amps[0] = Complex64::ONE;
        Ok(StateVector { n, amps })
    }

    /// |+>^n
    pub fn plus(n: usize) -> Result<Self> {
        check_size(n)?;
        let dim = 1usize << n;
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(StateVector {
            n,
            amps: vec![a; dim],
        })
    }

    /// Build from amplitudes, which must already be normalized within 1e-12.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n)?;
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                left: amps.len(),
                right: 1 << n,
            });
        }
        let norm = l2_norm(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                deviation: (norm - 1.0).abs(),
            });
        }
        Ok(StateVector { n, amps })
    }

    /// Build from an unnormalized vector; returns the state and the norm that
    /// was divided out, so callers cannot silently treat intermediates as
    /// physical states.
    pub fn normalizing(n: usize, amps: Vec<Complex64>) -> Result<(Self, f64)> {
        check_size(n)?;
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                left: amps.len(),
                right: 1 << n,
            });
        }
        let norm = l2_norm(&amps);
        if norm < BRANCH_PROB_CUTOFF {
            return Err(Error::NotNormalized { deviation: 1.0 });
        }
        let amps = amps.iter().map(|a| a / norm).collect();
        Ok((StateVector { n, amps }, norm))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// <self|other>
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(inner(&self.amps, &other.amps))
    }

    /// Tensor product with `self` on the most significant side.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        check_size(self.n + other.n)?;
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector {
            n: self.n + other.n,
            amps,
        })
    }

    /// Apply a 2^k x 2^k unitary to the given target qubits (1-based). Target
    /// order fixes which qubit is the most significant bit of the gate index.
    pub fn apply_gate(&self, gate: &CMatrix, targets: &[usize]) -> Result<StateVector> {
        let k = targets.len();
        if gate.dim() != 1 << k {
            return Err(Error::DimensionMismatch {
                left: gate.dim(),
                right: 1 << k,
            });
        }
        self.check_targets(targets)?;
        gate.check_unitary(1e-10)?;
        let mut out = vec![Complex64::ZERO; self.dim()];
        let masks: Vec<usize> = targets.iter().map(|&t| 1usize << (self.n - t)).collect();
        let rest_mask = !masks.iter().fold(0usize, |acc, m| acc | m);
        for base in 0..self.dim() {
            if base & !rest_mask != 0 {
                continue; // enumerate each non-target assignment once
            }
            // Gather amplitudes over the 2^k target assignments.
            let mut local = vec![Complex64::ZERO; 1 << k];
            for (sub, slot) in local.iter_mut().enumerate() {
                let mut idx = base;
                for (b, mask) in masks.iter().enumerate() {
                    if sub >> (k - 1 - b) & 1 == 1 {
                        idx |= mask;
                    }
                }
                *slot = self.amps[idx];
            }
            for (sub, _) in local.iter().enumerate() {
                let mut idx = base;
                for (b, mask) in masks.iter().enumerate() {
                    if sub >> (k - 1 - b) & 1 == 1 {
                        idx |= mask;
                    }
                }
                let mut acc = Complex64::ZERO;
                for (src, &amp) in local.iter().enumerate() {
                    acc += gate[(sub, src)] * amp;
                }
                out[idx] = acc;
            }
        }
        Ok(StateVector {
            n: self.n,
            amps: out,
        })
    }

    /// Apply a signed Pauli word. This is a basis permutation with phases, so
    /// it is done directly rather than through a dense gate matrix.
    pub fn apply_pauli(&self, p: &PauliString) -> Result<StateVector> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: p.n(),
                right: self.n,
            });
        }
        let mut out = vec![Complex64::ZERO; self.dim()];
        let mut flip = 0usize;
        for (site, &l) in p.letters().iter().enumerate() {
            if l.x_bit() {
                flip |= 1 << (self.n - 1 - site);
            }
        }
        let global = p.phase().to_complex();
        for (idx, &amp) in self.amps.iter().enumerate() {
            // phase from Z/Y letters acting on set bits, plus i per Y letter
            let mut phase = global;
            for (site, &l) in p.letters().iter().enumerate() {
                let bit = idx >> (self.n - 1 - site) & 1;
                match l {
                    PauliLetter::Z if bit == 1 => phase = -phase,
                    PauliLetter::Y => {
                        // Y|0> = i|1>, Y|1> = -i|0>
                        phase *= if bit == 0 {
                            Complex64::I
                        } else {
                            -Complex64::I
                        };
                    }
                    _ => {}
                }
            }
            out[idx ^ flip] += phase * amp;
        }
        Ok(StateVector {
            n: self.n,
            amps: out,
        })
    }

    /// <state| P |state> for a Hermitian signed word; real within 1e-10.
    pub fn expectation(&self, p: &PauliString) -> Result<f64> {
        if !p.is_hermitian() {
            return Err(Error::NonHermitianPhase {
                phase: p.phase().to_string(),
            });
        }
        let applied = self.apply_pauli(p)?;
        let val = inner(&self.amps, &applied.amps);
        debug_assert!(val.im.abs() < EXPECTATION_TOL);
        Ok(val.re)
    }

    /// Exhaustive projective measurement of `targets` in the given basis.
    /// Branches with probability below 1e-12 are dropped; post-states live on
    /// the unmeasured qubits, in their original relative order.
    pub fn measure_branches(
        &self,
        basis: &ProjectiveBasis,
        targets: &[usize],
    ) -> Result<Vec<MeasurementBranch>> {
        self.check_targets(targets)?;
        if basis.k() != targets.len() {
            return Err(Error::DimensionMismatch {
                left: basis.k(),
                right: targets.len(),
            });
        }
        basis.check_complete()?;
        let mut branches = Vec::new();
        for (label, vector) in basis.outcomes() {
            let projected = project_onto(&self.amps, self.n, targets, vector);
            let norm = l2_norm(&projected);
            let probability = norm * norm;
            if probability <= BRANCH_PROB_CUTOFF {
                continue;
            }
            let post = projected.iter().map(|a| a / norm).collect();
            branches.push(MeasurementBranch {
                outcome: label.clone(),
                probability,
                post_state: StateVector {
                    n: self.n - targets.len(),
                    amps: post,
                },
            });
        }
        Ok(branches)
    }

    /// Reduced density operator on `keep` (1-based), tracing out the rest.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidConfig {
                reason: "partial trace must keep at least one qubit".into(),
            });
        }
        self.check_targets(keep)?;
        let k = keep.len();
        let env: Vec<usize> = (1..=self.n).filter(|q| !keep.contains(q)).collect();
        let dim = 1usize << k;
        let mut entries = vec![Complex64::ZERO; dim * dim];
        let env_dim = 1usize << env.len();
        for e in 0..env_dim {
            // amplitude vector over keep-assignments for this environment basis state
            let mut slice = vec![Complex64::ZERO; dim];
            for (a, slot) in slice.iter_mut().enumerate() {
                let mut idx = 0usize;
                for (pos, &q) in keep.iter().enumerate() {
                    if a >> (k - 1 - pos) & 1 == 1 {
                        idx |= 1 << (self.n - q);
                    }
                }
                for (pos, &q) in env.iter().enumerate() {
                    if e >> (env.len() - 1 - pos) & 1 == 1 {
                        idx |= 1 << (self.n - q);
                    }
                }
                *slot = self.amps[idx];
            }
            for a in 0..dim {
                for b in 0..dim {
                    entries[a * dim + b] += slice[a] * slice[b].conj();
                }
            }
        }
        Ok(DensityMatrix { n: k, entries })
    }

    /// True iff |<a|b>| >= 1 - tol.
    pub fn equal_up_to_global_phase(&self, other: &StateVector, tol: f64) -> Result<bool> {
        Ok(self.inner(other)?.norm() >= 1.0 - tol)
    }

    /// Nonzero amplitudes as (bitstring, re, im), sorted by bitstring.
    pub fn amplitude_records(&self) -> Vec<AmplitudeRecord> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-14)
            .map(|(idx, a)| AmplitudeRecord {
                bits: format!("{idx:0width$b}", width = self.n),
                re: a.re,
                im: a.im,
            })
            .collect()
    }

    fn check_targets(&self, targets: &[usize]) -> Result<()> {
        for (i, &t) in targets.iter().enumerate() {
            if t == 0 || t > self.n {
                return Err(Error::IndexOutOfRange { index: t, n: self.n });
            }
            if targets[..i].contains(&t) {
                return Err(Error::InvalidConfig {
                    reason: format!("duplicate target qubit {t}"),
                });
            }
        }
        Ok(())
    }
}

/// One nonzero amplitude in the state dump format.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AmplitudeRecord {
    pub bits: String,
    pub re: f64,
    pub im: f64,
}

/// Unnormalized projection <v|_targets |state>, living on the other qubits.
pub(crate) fn project_onto(
    amps: &[Complex64],
    n: usize,
    targets: &[usize],
    vector: &[Complex64],
) -> Vec<Complex64> {
    let k = targets.len();
    let keep: Vec<usize> = (1..=n).filter(|q| !targets.contains(q)).collect();
    let mut out = vec![Complex64::ZERO; 1 << keep.len()];
    for (idx, &amp) in amps.iter().enumerate() {
        if amp == Complex64::ZERO {
            continue;
        }
        let mut t = 0usize;
        for (pos, &q) in targets.iter().enumerate() {
            t |= (idx >> (n - q) & 1) << (k - 1 - pos);
        }
        let mut r = 0usize;
        for (pos, &q) in keep.iter().enumerate() {
            r |= (idx >> (n - q) & 1) << (keep.len() - 1 - pos);
        }
        out[r] += vector[t].conj() * amp;
    }
    out
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::SizeLimit { n, limit: MAX_QUBITS });
    }
    Ok(())
}

/// One outcome of an exhaustive projective measurement.
#[derive(Clone, Debug)]
pub struct MeasurementBranch {
    pub outcome: String,
    pub probability: f64,
    pub post_state: StateVector,
}

/// Complete orthonormal basis of a 2^k-dimensional measured subspace, with
/// outcome labels.
#[derive(Clone, Debug)]
pub struct ProjectiveBasis {
    k: usize,
    outcomes: Vec<(String, Vec<Complex64>)>,
}

impl ProjectiveBasis {
    pub fn new(k: usize, outcomes: Vec<(String, Vec<Complex64>)>) -> Self {
        ProjectiveBasis { k, outcomes }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn outcomes(&self) -> &[(String, Vec<Complex64>)] {
        &self.outcomes
    }

    /// Computational basis on k qubits, labels "00", "01", ...
    pub fn computational(k: usize) -> Self {
        let dim = 1usize << k;
        let outcomes = (0..dim)
            .map(|i| {
                let mut v = vec![Complex64::ZERO; dim];
                v[i] = Complex64::ONE;
                (format!("{i:0k$b}"), v)
            })
            .collect();
        ProjectiveBasis { k, outcomes }
    }

    /// Eigenbasis of a single-qubit Pauli letter, +1 eigenvector first.
    /// Labels: Z uses "0"/"1" (the computational basis), X uses "+"/"-",
    /// Y uses "R"/"L". The identity letter is not a measurement.
    pub fn pauli(letter: PauliLetter) -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let outcomes = match letter {
            PauliLetter::Z => vec![
                ("0".to_string(), vec![Complex64::ONE, Complex64::ZERO]),
                ("1".to_string(), vec![Complex64::ZERO, Complex64::ONE]),
            ],
            PauliLetter::X => vec![
                ("+".to_string(), vec![h, h]),
                ("-".to_string(), vec![h, -h]),
            ],
            PauliLetter::Y => vec![
                ("R".to_string(), vec![h, h * Complex64::I]),
                ("L".to_string(), vec![h, -h * Complex64::I]),
            ],
            PauliLetter::I => panic!("the identity letter is not a measurement basis"),
        };
        ProjectiveBasis { k: 1, outcomes }
    }

    /// The Bell basis {Phi+, Phi-, Psi+, Psi-} on two qubits.
    pub fn bell() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = Complex64::ZERO;
        ProjectiveBasis {
            k: 2,
            outcomes: vec![
                ("Phi+".to_string(), vec![h, z, z, h]),
                ("Phi-".to_string(), vec![h, z, z, -h]),
                ("Psi+".to_string(), vec![z, h, h, z]),
                ("Psi-".to_string(), vec![z, h, -h, z]),
            ],
        }
    }

    /// Verify the outcome vectors resolve the identity within 1e-10.
    pub fn check_complete(&self) -> Result<()> {
        let dim = 1usize << self.k;
        if self.outcomes.len() != dim {
            return Err(Error::IncompleteProjectors);
        }
        for (i, (_, u)) in self.outcomes.iter().enumerate() {
            if u.len() != dim {
                return Err(Error::IncompleteProjectors);
            }
            for (j, (_, v)) in self.outcomes.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                if (inner(u, v).norm() - want).abs() > 1e-10 {
                    return Err(Error::IncompleteProjectors);
                }
            }
        }
        Ok(())
    }
}

/// Hermitian, unit-trace reduced operator.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim() + j]
    }

    pub fn from_pure(state: &StateVector) -> Self {
        let dim = state.dim();
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[i * dim + j] = state.amps[i] * state.amps[j].conj();
            }
        }
        DensityMatrix { n: state.n, entries }
    }

    /// Equal mixture of the given states.
    pub fn mixture(states: &[StateVector]) -> Result<Self> {
        let n = states[0].n;
        let dim = 1usize << n;
        let mut entries = vec![Complex64::ZERO; dim * dim];
        let w = 1.0 / states.len() as f64;
        for s in states {
            if s.n != n {
                return Err(Error::DimensionMismatch { left: s.n, right: n });
            }
            for i in 0..dim {
                for j in 0..dim {
                    entries[i * dim + j] += w * s.amps[i] * s.amps[j].conj();
                }
            }
        }
        Ok(DensityMatrix { n, entries })
    }

    pub fn maximally_mixed(n: usize) -> Self {
        let dim = 1usize << n;
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        DensityMatrix { n, entries }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.entry(i, i)).sum()
    }

    /// Tr(rho^2)
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    /// Tr(P rho) for a signed Pauli word, exploiting that P permutes basis
    /// kets with phases.
    pub fn pauli_expectation(&self, p: &PauliString) -> Result<f64> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: p.n(),
                right: self.n,
            });
        }
        if !p.is_hermitian() {
            return Err(Error::NonHermitianPhase {
                phase: p.phase().to_string(),
            });
        }
        let mut total = Complex64::ZERO;
        for k in 0..self.dim() {
            // P|k> = c |sigma(k)>
            let mut target = k;
            let mut c = p.phase().to_complex();
            for (site, &l) in p.letters().iter().enumerate() {
                let bitpos = self.n - 1 - site;
                let bit = k >> bitpos & 1;
                match l {
                    PauliLetter::X => target ^= 1 << bitpos,
                    PauliLetter::Z => {
                        if bit == 1 {
                            c = -c;
                        }
                    }
                    PauliLetter::Y => {
                        target ^= 1 << bitpos;
                        c *= if bit == 0 { Complex64::I } else { -Complex64::I };
                    }
                    PauliLetter::I => {}
                }
            }
            total += c * self.entry(k, target);
        }
        debug_assert!(total.im.abs() < EXPECTATION_TOL);
        Ok(total.re)
    }

    pub fn to_cmatrix(&self) -> CMatrix {
        let dim = self.dim();
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = self.entry(i, j);
            }
        }
        m
    }

    /// Check Hermiticity (1e-12), unit trace (1e-12) and positive
    /// semidefiniteness (eigenvalues >= -1e-9).
    pub fn validate(&self) -> Result<()> {
        let m = self.to_cmatrix();
        if m.hermiticity_defect() > 1e-12 {
            return Err(Error::InvalidConfig {
                reason: "density matrix is not Hermitian".into(),
            });
        }
        if (self.trace() - Complex64::ONE).norm() > 1e-12 {
            return Err(Error::InvalidConfig {
                reason: "density matrix trace differs from 1".into(),
            });
        }
        let (values, _) = hermitian_eigen(&m, 96);
        if values.iter().any(|&v| v < -1e-9) {
            return Err(Error::InvalidConfig {
                reason: "density matrix has a negative eigenvalue".into(),
            });
        }
        Ok(())
    }

    /// Trace distance (1/2)||rho - sigma||_1.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(crate::linalg::trace_distance(
            &self.to_cmatrix(),
            &other.to_cmatrix(),
        ))
    }

    /// <psi| rho |psi>
    pub fn fidelity_with_pure(&self, psi: &StateVector) -> Result<f64> {
        if psi.n != self.n {
            return Err(Error::DimensionMismatch {
                left: psi.n,
                right: self.n,
            });
        }
        let mut acc = Complex64::ZERO;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += psi.amps[i].conj() * self.entry(i, j) * psi.amps[j];
            }
        }
        Ok(acc.re)
    }
}

/// Standard gates used by the graph-state construction and the protocol.
pub mod gates {
    use super::*;

    pub fn hadamard() -> CMatrix {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        CMatrix::from_rows(&[vec![h, h], vec![h, -h]])
    }

    pub fn pauli(letter: PauliLetter) -> CMatrix {
        crate::linalg::letter_matrix(letter)
    }

    pub fn cz() -> CMatrix {
        let mut m = CMatrix::identity(4);
        m[(3, 3)] = -Complex64::ONE;
        m
    }

    pub fn cnot() -> CMatrix {
        let mut m = CMatrix::zeros(4);
        m[(0, 0)] = Complex64::ONE;
        m[(1, 1)] = Complex64::ONE;
        m[(2, 3)] = Complex64::ONE;
        m[(3, 2)] = Complex64::ONE;
        m
    }
}
