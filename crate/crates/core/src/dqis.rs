//! The information-splitting core: encoding a secret into an orthonormal code
//! space, Pauli one-time-pad encryption, the teleportation-divergence checker
//! and exhaustive protocol execution with recovery.
//!
//! The teleported input is always the fiducial |0> on a dealer ancilla; the
//! secret travels in the entangled channel. The joint system is ordered
//! [ancilla, qubit 1, ..., qubit n], with the ancilla most significant.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::pauli::PauliLetter;
use crate::state::{project_onto, ProjectiveBasis, StateVector};

pub use crate::fixtures::{reproduce_tables, BranchRow, BranchTable, TablesReport};

pub const DIVERGENCE_TOL: f64 = 1e-9;
const PROB_CUTOFF: f64 = 1e-12;

/// Orthonormal codewords spanning the channel code space.
#[derive(Clone, Debug)]
pub struct CodeSpace {
    n: usize,
    codewords: Vec<StateVector>,
}

impl CodeSpace {
    /// Codewords must be pairwise orthonormal within 1e-10.
    pub fn new(codewords: Vec<StateVector>) -> Result<Self> {
        let n = codewords
            .first()
            .ok_or_else(|| Error::InvalidConfig {
                reason: "code space needs at least one codeword".into(),
            })?
            .n();
        for (i, a) in codewords.iter().enumerate() {
            if a.n() != n {
                return Err(Error::DimensionMismatch { left: a.n(), right: n });
            }
            for (j, b) in codewords.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                if (a.inner(b)?.norm() - want).abs() > 1e-10 {
                    return Err(Error::InvalidConfig {
                        reason: format!("codewords {i} and {j} are not orthonormal"),
                    });
                }
            }
        }
        Ok(CodeSpace { n, codewords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.codewords.len()
    }

    pub fn codeword(&self, j: usize) -> &StateVector {
        &self.codewords[j]
    }

    pub fn codewords(&self) -> &[StateVector] {
        &self.codewords
    }
}

/// Normalized d-dimensional secret amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct Secret {
    amps: Vec<Complex64>,
}

impl Secret {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized {
                deviation: (norm - 1.0).abs(),
            });
        }
        Ok(Secret { amps })
    }

    pub fn qubit(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Secret::new(vec![alpha, beta])
    }

    pub fn d(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// |<self|other>|^2
    pub fn fidelity(&self, other: &Secret) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }
}

/// Who does what in a teleportation run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartyRole {
    Dealer,
    Agent,
    Recoverer,
}

/// A party's measurement action during the teleportation phase.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartyMeasurement {
    /// Bell measurement on (fiducial ancilla, one owned qubit).
    BellWithAncilla { qubit: usize },
    /// One single-qubit letter basis per owned qubit, in ownership order.
    /// Z is the computational basis.
    Product { letters: Vec<PauliLetter> },
    /// The recoverer leaves its qubits unmeasured.
    Unmeasured,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Party {
    pub name: String,
    pub role: PartyRole,
    pub qubits: Vec<usize>,
    pub measurement: PartyMeasurement,
}

/// Assignment of qubits and measurement bases to parties. Ownership must
/// partition 1..=n; the dealer Bell-measures the ancilla together with one of
/// its own qubits; the recoverer holds at least one qubit and measures
/// nothing.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TeleportConfig {
    parties: Vec<Party>,
}

impl TeleportConfig {
    pub fn new(parties: Vec<Party>, n: usize) -> Result<Self> {
        let mut owned = vec![false; n + 1];
        let mut dealers = 0usize;
        let mut recoverers = 0usize;
        for p in &parties {
            for &q in &p.qubits {
                if q == 0 || q > n {
                    return Err(Error::InvalidConfig {
                        reason: format!("party {} owns qubit {q} outside 1..={n}", p.name),
                    });
                }
                if owned[q] {
                    return Err(Error::InvalidConfig {
                        reason: format!("qubit {q} owned twice"),
                    });
                }
                owned[q] = true;
            }
            match (&p.role, &p.measurement) {
                (PartyRole::Dealer, PartyMeasurement::BellWithAncilla { qubit }) => {
                    dealers += 1;
                    if !p.qubits.contains(qubit) {
                        return Err(Error::InvalidConfig {
                            reason: format!(
                                "dealer {} Bell-measures qubit {qubit} it does not own",
                                p.name
                            ),
                        });
                    }
                }
                (PartyRole::Recoverer, PartyMeasurement::Unmeasured) => {
                    recoverers += 1;
                    if p.qubits.is_empty() {
                        return Err(Error::InvalidConfig {
                            reason: format!("recoverer {} holds no qubit", p.name),
                        });
                    }
                }
                (PartyRole::Agent, PartyMeasurement::Product { letters }) => {
                    if letters.len() != p.qubits.len() {
                        return Err(Error::InvalidConfig {
                            reason: format!("party {} basis list does not cover its qubits", p.name),
                        });
                    }
                    if letters.contains(&PauliLetter::I) {
                        return Err(Error::InvalidConfig {
                            reason: format!(
                                "party {} must measure every owned qubit in a letter basis",
                                p.name
                            ),
                        });
                    }
                }
                _ => {
                    return Err(Error::InvalidConfig {
                        reason: format!("party {} has a role/measurement mismatch", p.name),
                    });
                }
            }
        }
        if dealers != 1 || recoverers != 1 {
            return Err(Error::InvalidConfig {
                reason: "need exactly one dealer and one recoverer".into(),
            });
        }
        if (1..=n).any(|q| !owned[q]) {
            return Err(Error::InvalidConfig {
                reason: "qubit ownership must partition 1..=n".into(),
            });
        }
        Ok(TeleportConfig { parties })
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }

    pub fn recoverer(&self) -> &Party {
        self.parties
            .iter()
            .find(|p| p.role == PartyRole::Recoverer)
            .expect("validated at construction")
    }

    pub fn dealer(&self) -> &Party {
        self.parties
            .iter()
            .find(|p| p.role == PartyRole::Dealer)
            .expect("validated at construction")
    }
}

/// Recovery unitaries on the recoverer's subsystem, keyed by joint outcome.
#[derive(Clone, Debug)]
pub struct RecoveryMap {
    entries: BTreeMap<String, CMatrix>,
}

impl RecoveryMap {
    pub fn from_entries(entries: BTreeMap<String, CMatrix>) -> Self {
        RecoveryMap { entries }
    }

    pub fn entry(&self, outcome: &str) -> Option<&CMatrix> {
        self.entries.get(outcome)
    }

    pub fn outcomes(&self) -> impl Iterator<Item = &String> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Diagnostics for one joint outcome of the divergence check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OutcomeDiagnostics {
    pub outcome: String,
    /// Norms of the projected codeword states.
    pub norms: Vec<f64>,
    /// Raw Gram matrix entries (re, im), row-major over codeword pairs.
    pub gram: Vec<Vec<(f64, f64)>>,
    pub equal_norms: bool,
    pub orthogonal: bool,
}

/// Result of the teleportation-divergence check.
#[derive(Clone, Debug)]
pub struct DivergenceReport {
    pub ok: bool,
    pub recovery: Option<RecoveryMap>,
    pub outcomes: Vec<OutcomeDiagnostics>,
}

/// Encode the secret onto the code space: sum_j alpha_j |G_j>.
pub fn encode(secret: &Secret, code: &CodeSpace) -> Result<StateVector> {
    if secret.d() != code.d() {
        return Err(Error::DimensionMismatch {
            left: secret.d(),
            right: code.d(),
        });
    }
    let dim = 1usize << code.n();
    let mut amps = vec![Complex64::ZERO; dim];
    for (alpha, cw) in secret.amps.iter().zip(code.codewords()) {
        for (i, a) in cw.amplitudes().iter().enumerate() {
            amps[i] += alpha * a;
        }
    }
    StateVector::from_amplitudes(code.n(), amps)
}

/// One of the d^2 shift-and-clock keys X^a Z^b. For d = 2 these are the four
/// Pauli operations of the qubit one-time pad.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncryptionKey {
    d: usize,
    shift: usize,
    clock: usize,
}

impl EncryptionKey {
    pub fn new(d: usize, label: usize) -> Result<Self> {
        if label >= d * d {
            return Err(Error::BadKeyLabel { label, d });
        }
        Ok(EncryptionKey {
            d,
            shift: label / d,
            clock: label % d,
        })
    }

    /// Qubit keys by Pauli name: I, X, Y (= XZ up to phase), Z.
    pub fn qubit_pauli(letter: PauliLetter) -> Self {
        let (shift, clock) = match letter {
            PauliLetter::I => (0, 0),
            PauliLetter::X => (1, 0),
            PauliLetter::Y => (1, 1),
            PauliLetter::Z => (0, 1),
        };
        EncryptionKey { d: 2, shift, clock }
    }

    pub fn label(&self) -> usize {
        self.shift * self.d + self.clock
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn all(d: usize) -> Vec<EncryptionKey> {
        (0..d * d)
            .map(|label| EncryptionKey::new(d, label).expect("label in range"))
            .collect()
    }

    fn omega(&self, power: usize) -> Complex64 {
        // Exact values at the quarter turns; d = 2 stays sign-exact.
        let k = power % self.d;
        if (4 * k).is_multiple_of(self.d) {
            return match 4 * k / self.d {
                0 => Complex64::ONE,
                1 => Complex64::I,
                2 => -Complex64::ONE,
                _ => -Complex64::I,
            };
        }
        let angle = 2.0 * std::f64::consts::PI * k as f64 / self.d as f64;
        Complex64::from_polar(1.0, angle)
    }
}

/// X^a Z^b |j> = omega^{b j} |j + a mod d>.
pub fn encrypt(secret: &Secret, key: &EncryptionKey) -> Result<Secret> {
    if secret.d() != key.d {
        return Err(Error::DimensionMismatch {
            left: secret.d(),
            right: key.d,
        });
    }
    let d = key.d;
    let mut out = vec![Complex64::ZERO; d];
    for (j, &a) in secret.amps.iter().enumerate() {
        out[(j + key.shift) % d] = key.omega((key.clock * j) % d) * a;
    }
    Secret::new(out)
}

/// Exact inverse of [`encrypt`].
pub fn decrypt(secret: &Secret, key: &EncryptionKey) -> Result<Secret> {
    if secret.d() != key.d {
        return Err(Error::DimensionMismatch {
            left: secret.d(),
            right: key.d,
        });
    }
    let d = key.d;
    let mut out = vec![Complex64::ZERO; d];
    for (j, slot) in out.iter_mut().enumerate() {
        let src = (j + key.shift) % d;
        *slot = secret.amps[src] * key.omega((key.clock * j) % d).conj();
    }
    Secret::new(out)
}

/// All joint outcomes of the non-recoverer parties applied to a set of joint
/// states, as unnormalized projections onto the recoverer's qubits.
/// Joint qubit 1 is the ancilla; channel qubit q is joint qubit q + 1.
fn enumerate_projections(
    cfg: &TeleportConfig,
    initial: &[Vec<Complex64>],
    n_channel: usize,
) -> Vec<(String, Vec<Vec<Complex64>>)> {
    let n_joint = n_channel + 1;
    // Track remaining joint qubits (1-based original labels) as projections
    // consume them.
    let mut states: Vec<(String, Vec<Vec<Complex64>>, Vec<usize>)> = vec![(
        String::new(),
        initial.to_vec(),
        (1..=n_joint).collect(),
    )];
    for party in cfg.parties() {
        let stages: Vec<(Vec<usize>, ProjectiveBasis)> = match &party.measurement {
            PartyMeasurement::BellWithAncilla { qubit } => {
                vec![(vec![1, qubit + 1], ProjectiveBasis::bell())]
            }
            PartyMeasurement::Product { letters } => party
                .qubits
                .iter()
                .zip(letters)
                .map(|(&q, &l)| (vec![q + 1], ProjectiveBasis::pauli(l)))
                .collect(),
            PartyMeasurement::Unmeasured => continue,
        };
        let mut party_done: Vec<(String, Vec<Vec<Complex64>>, Vec<usize>)> = Vec::new();
        for (label_prefix, vecs, remaining) in &states {
            // Within one party, chain its per-stage outcomes; labels concatenate.
            let mut partial: Vec<(String, Vec<Vec<Complex64>>, Vec<usize>)> =
                vec![(String::new(), vecs.clone(), remaining.clone())];
            for (joint_qubits, basis) in &stages {
                let mut next = Vec::new();
                for (lbl, vs, rem) in &partial {
                    let cur_n = rem.len();
                    let positions: Vec<usize> = joint_qubits
                        .iter()
                        .map(|jq| rem.iter().position(|r| r == jq).expect("qubit present") + 1)
                        .collect();
                    for (olabel, ovec) in basis.outcomes() {
                        let projected: Vec<Vec<Complex64>> = vs
                            .iter()
                            .map(|v| project_onto(v, cur_n, &positions, ovec))
                            .collect();
                        let new_rem: Vec<usize> = rem
                            .iter()
                            .copied()
                            .filter(|r| !joint_qubits.contains(r))
                            .collect();
                        next.push((format!("{lbl}{olabel}"), projected, new_rem));
                    }
                }
                partial = next;
            }
            for (lbl, vs, rem) in partial {
                let full = if label_prefix.is_empty() {
                    lbl
                } else {
                    format!("{label_prefix}|{lbl}")
                };
                party_done.push((full, vs, rem));
            }
        }
        states = party_done;
    }
    states
        .into_iter()
        .map(|(label, vecs, _)| (label, vecs))
        .collect()
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn vec_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Complete the first `filled` orthonormal columns of `m` to a full unitary
/// by Gram-Schmidt over the standard basis.
fn complete_unitary(m: &mut CMatrix, filled: usize) {
    let dim = m.dim();
    let mut have = filled;
    for cand in 0..dim {
        if have == dim {
            break;
        }
        let mut v = vec![Complex64::ZERO; dim];
        v[cand] = Complex64::ONE;
        for j in 0..have {
            let col = m.column(j);
            let overlap = vec_inner(&col, &v);
            for i in 0..dim {
                v[i] -= overlap * col[i];
            }
        }
        let norm = vec_norm(&v);
        if norm > 1e-6 {
            for x in v.iter_mut() {
                *x /= norm;
            }
            m.set_column(have, &v);
            have += 1;
        }
    }
    debug_assert_eq!(have, dim);
}

/// Check Eqs.-style divergence: teleport the fiducial |0> on the ancilla over
/// each codeword, enumerate every joint outcome of the non-recoverer parties
/// and demand the projected recoverer states have equal norms and be pairwise
/// orthogonal (both within 1e-9). When they do, the recovery unitary per
/// outcome maps |j> onto the normalized projected state of codeword j.
pub fn check_divergence(code: &CodeSpace, cfg: &TeleportConfig) -> Result<DivergenceReport> {
    validate_config_size(code, cfg)?;
    let ancilla = StateVector::zero(1)?;
    let joints: Vec<Vec<Complex64>> = code
        .codewords()
        .iter()
        .map(|cw| Ok(ancilla.tensor(cw)?.amplitudes().to_vec()))
        .collect::<Result<_>>()?;
    let outcomes = enumerate_projections(cfg, &joints, code.n());
    let rex_dim = 1usize << cfg.recoverer().qubits.len();
    let mut ok = true;
    let mut diagnostics = Vec::new();
    let mut entries = BTreeMap::new();
    for (label, vecs) in &outcomes {
        let norms: Vec<f64> = vecs.iter().map(|v| vec_norm(v)).collect();
        let max_norm = norms.iter().cloned().fold(0.0, f64::max);
        if max_norm < PROB_CUTOFF {
            continue; // outcome never occurs
        }
        let gram: Vec<Vec<(f64, f64)>> = vecs
            .iter()
            .map(|a| {
                vecs.iter()
                    .map(|b| {
                        let ip = vec_inner(a, b);
                        (ip.re, ip.im)
                    })
                    .collect()
            })
            .collect();
        let min_norm = norms.iter().cloned().fold(f64::INFINITY, f64::min);
        let equal_norms = max_norm - min_norm <= DIVERGENCE_TOL;
        let mut orthogonal = true;
        for i in 0..vecs.len() {
            for j in i + 1..vecs.len() {
                if vec_inner(&vecs[i], &vecs[j]).norm() > DIVERGENCE_TOL {
                    orthogonal = false;
                }
            }
        }
        if !(equal_norms && orthogonal) {
            ok = false;
        } else {
            let mut u = CMatrix::zeros(rex_dim);
            for (j, v) in vecs.iter().enumerate() {
                let col: Vec<Complex64> = v.iter().map(|a| a / norms[j]).collect();
                u.set_column(j, &col);
            }
            complete_unitary(&mut u, vecs.len());
            entries.insert(label.clone(), u);
        }
        diagnostics.push(OutcomeDiagnostics {
            outcome: label.clone(),
            norms,
            gram,
            equal_norms,
            orthogonal,
        });
    }
    Ok(DivergenceReport {
        ok,
        recovery: if ok { Some(RecoveryMap { entries }) } else { None },
        outcomes: diagnostics,
    })
}

/// Recovery map built from the projections of a single codeword, completing
/// each entry arbitrarily. Useful for running non-divergent code spaces to
/// exhibit what the recoverer actually obtains.
pub fn recovery_from_single_codeword(
    code: &CodeSpace,
    cfg: &TeleportConfig,
    j: usize,
) -> Result<RecoveryMap> {
    validate_config_size(code, cfg)?;
    if j >= code.d() {
        return Err(Error::IndexOutOfRange {
            index: j,
            n: code.d(),
        });
    }
    let ancilla = StateVector::zero(1)?;
    let joint = ancilla.tensor(code.codeword(j))?.amplitudes().to_vec();
    let outcomes = enumerate_projections(cfg, &[joint], code.n());
    let rex_dim = 1usize << cfg.recoverer().qubits.len();
    let mut entries = BTreeMap::new();
    for (label, vecs) in &outcomes {
        let norm = vec_norm(&vecs[0]);
        if norm < PROB_CUTOFF {
            continue;
        }
        let mut u = CMatrix::zeros(rex_dim);
        let col: Vec<Complex64> = vecs[0].iter().map(|a| a / norm).collect();
        // The single codeword pins column j; the rest is arbitrary.
        u.set_column(0, &col);
        complete_unitary(&mut u, 1);
        if j != 0 {
            // move the pinned column into position j
            let c0 = u.column(0);
            let cj = u.column(j);
            u.set_column(j, &c0);
            u.set_column(0, &cj);
        }
        entries.insert(label.clone(), u);
    }
    Ok(RecoveryMap { entries })
}

/// One exhaustive branch of a teleportation run, after recovery.
#[derive(Clone, Debug)]
pub struct TeleportBranch {
    pub outcome: String,
    pub probability: f64,
    /// Recoverer state after applying the recovery unitary.
    pub rex_state: StateVector,
    /// |<secret|recovered>|^2 against the secret embedded in the recoverer's
    /// computational basis.
    pub fidelity: f64,
}

/// Run the teleportation exhaustively over every joint outcome, applying the
/// recovery entry for each branch. With a divergence-checked recovery map,
/// every branch recovers the secret with fidelity >= 1 - 1e-9.
pub fn run_teleportation(
    secret: &Secret,
    code: &CodeSpace,
    cfg: &TeleportConfig,
    recovery: &RecoveryMap,
) -> Result<Vec<TeleportBranch>> {
    validate_config_size(code, cfg)?;
    let encoded = encode(secret, code)?;
    let ancilla = StateVector::zero(1)?;
    let joint = ancilla.tensor(&encoded)?.amplitudes().to_vec();
    let outcomes = enumerate_projections(cfg, &[joint], code.n());
    let rex_qubits = cfg.recoverer().qubits.len();
    let rex_dim = 1usize << rex_qubits;
    let mut target = vec![Complex64::ZERO; rex_dim];
    target[..secret.d()].copy_from_slice(secret.amplitudes());
    let mut branches = Vec::new();
    let mut total = 0.0;
    for (label, vecs) in &outcomes {
        let norm = vec_norm(&vecs[0]);
        let probability = norm * norm;
        if probability <= PROB_CUTOFF {
            continue;
        }
        let u = recovery
            .entry(label)
            .ok_or_else(|| Error::MissingRecoveryEntry {
                outcome: label.clone(),
            })?;
        let normalized: Vec<Complex64> = vecs[0].iter().map(|a| a / norm).collect();
        let recovered = u.dagger().apply(&normalized);
        let fidelity = vec_inner(&target, &recovered).norm_sqr();
        let (rex_state, _) = StateVector::normalizing(rex_qubits, recovered)?;
        total += probability;
        branches.push(TeleportBranch {
            outcome: label.clone(),
            probability,
            rex_state,
            fidelity,
        });
    }
    debug_assert!((total - 1.0).abs() < 1e-9, "branch probabilities sum to {total}");
    Ok(branches)
}

fn validate_config_size(code: &CodeSpace, cfg: &TeleportConfig) -> Result<()> {
    let owned: usize = cfg.parties().iter().map(|p| p.qubits.len()).sum();
    if owned != code.n() {
        return Err(Error::InvalidConfig {
            reason: format!(
                "configuration covers {owned} qubits but the code space has {}",
                code.n()
            ),
        });
    }
    let rex_dim = 1usize << cfg.recoverer().qubits.len();
    if code.d() > rex_dim {
        return Err(Error::InvalidConfig {
            reason: format!(
                "recoverer dimension {rex_dim} cannot hold a {}-dimensional secret",
                code.d()
            ),
        });
    }
    Ok(())
}

/// Product ket over the alphabet {0, 1, +, -}, e.g. "0+0"; used to express
/// reference branch states.
pub fn product_ket(s: &str) -> Vec<Complex64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = vec![Complex64::ONE];
    for c in s.chars() {
        let factor: Vec<Complex64> = match c {
            '0' => vec![Complex64::ONE, Complex64::ZERO],
            '1' => vec![Complex64::ZERO, Complex64::ONE],
            '+' => vec![Complex64::new(h, 0.0), Complex64::new(h, 0.0)],
            '-' => vec![Complex64::new(h, 0.0), Complex64::new(-h, 0.0)],
            _ => panic!("product_ket letters must be 0, 1, + or -"),
        };
        let mut next = vec![Complex64::ZERO; out.len() * 2];
        for (i, &a) in out.iter().enumerate() {
            for (j, &b) in factor.iter().enumerate() {
                next[i * 2 + j] = a * b;
            }
        }
        out = next;
    }
    out
}

/// Weighted sum of product kets.
pub fn ket_sum(terms: &[(Complex64, &str)]) -> Vec<Complex64> {
    let dim = 1usize << terms[0].1.len();
    let mut out = vec![Complex64::ZERO; dim];
    for (coef, ket) in terms {
        for (i, a) in product_ket(ket).iter().enumerate() {
            out[i] += coef * a;
        }
    }
    out
}

/// True iff `a` and `b` are proportional by a complex scalar within `tol`.
pub fn proportional(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let na = vec_norm(a);
    let nb = vec_norm(b);
    if na < 1e-14 || nb < 1e-14 {
        return na < 1e-14 && nb < 1e-14;
    }
    (vec_inner(a, b).norm() - na * nb).abs() <= tol * na * nb
}
