//! Multi-party simulation of the full protocol: distribution of N copies,
//! random local measurements, sifting, violation estimation, the
//! threshold decision and the final teleportation with decryption.
//!
//! Parties are modeled as independent logical processes whose only shared
//! structure is the message log. All randomness is pre-drawn from per-party
//! seeded streams plus per-copy "nature" streams for measurement outcomes,
//! so scheduling cannot affect the transcript: identical (config, secret,
//! seed) yield byte-identical transcripts.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::attack::{attacked_state, AttackParams};
use crate::dqis::{
    check_divergence, encode, encrypt, EncryptionKey, PartyMeasurement, Secret,
};
use crate::error::{Error, Result};
use crate::fixtures::{cluster4, fiveq, ScenarioFixture};
use crate::linalg::CMatrix;
use crate::pauli::PauliLetter;
use crate::state::{project_onto, AmplitudeRecord, ProjectiveBasis, StateVector};

pub const TRANSCRIPT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioId {
    Cluster4,
    FiveQ,
}

impl std::str::FromStr for ScenarioId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cluster4" => Ok(ScenarioId::Cluster4),
            "fiveq" => Ok(ScenarioId::FiveQ),
            other => Err(Error::InvalidScenario {
                reason: format!("unknown scenario `{other}` (expected cluster4 or fiveq)"),
            }),
        }
    }
}

impl ScenarioId {
    pub fn fixture(self) -> ScenarioFixture {
        match self {
            ScenarioId::Cluster4 => cluster4::scenario(),
            ScenarioId::FiveQ => fiveq::scenario(),
        }
    }
}

/// Who announces the serial number of the reserved copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Announcer {
    #[default]
    Alice,
    Dolly,
}

/// Run configuration for one protocol execution.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: ScenarioId,
    /// Total copies N distributed; N - 1 are measured, 1 is reserved.
    pub copies: usize,
    /// Decision threshold; defaults to the midpoint of the local-realist
    /// bound and the quantum maximum.
    pub threshold: Option<f64>,
    pub seed: u64,
    /// Entangling-attack angle applied to every distributed copy
    /// (five-qubit scenario only).
    pub attack_theta: Option<f64>,
    #[serde(default)]
    pub announcer: Announcer,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Distribute { serial: usize },
    ReserveAnnouncement { serial: usize },
    Outcome { serial: usize, values: Vec<i8> },
    Setting { serial: usize, setting: String },
    Decision { proceed: bool },
    TeleportOutcome { outcome: String },
    DecryptionKey { label: usize },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Message {
    pub round: usize,
    pub sender: String,
    pub receiver: String,
    /// Logical tick; non-decreasing per sender.
    pub timestamp: u64,
    pub payload: Payload,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CopyRecord {
    pub serial: usize,
    pub reserved: bool,
    pub key_label: usize,
    /// Composite setting per party, party order.
    pub settings: Vec<String>,
    /// Measured +-1 values per party (identity letters contribute none).
    pub outcomes: Vec<Vec<i8>>,
    pub sifted_term: Option<usize>,
    /// Folded-sign term value for sifted copies.
    pub term_value: Option<i8>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermEstimate {
    pub term_index: usize,
    pub count: usize,
    pub mean: f64,
    pub standard_error: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "decision", rename_all = "lowercase")]
pub enum Decision {
    Proceed,
    Abort { reason: String },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BellTestReport {
    pub measured_copies: usize,
    pub sifted_count: usize,
    pub sift_fraction: f64,
    pub per_term: Vec<TermEstimate>,
    /// Missing when some term was never sampled.
    pub estimate: Option<f64>,
    pub standard_error: Option<f64>,
    pub threshold: f64,
    pub decision: Decision,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RecoveryRecord {
    pub outcome: String,
    /// Fidelity of the decrypted recoverer state against the secret.
    pub fidelity: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Transcript {
    pub schema_version: u32,
    pub scenario: String,
    pub copies: usize,
    pub seed: u64,
    pub threshold: f64,
    pub announcer: Announcer,
    pub attack_theta: Option<f64>,
    /// Declared measurement sets per party, recorded for auditability.
    pub measurement_sets: Vec<(String, Vec<String>)>,
    pub reserved_serial: usize,
    pub messages: Vec<Message>,
    pub copy_records: Vec<CopyRecord>,
    pub bell_report: BellTestReport,
    pub recovery: Option<RecoveryRecord>,
    pub decision: Decision,
}

fn setting_label(setting: &[PauliLetter]) -> String {
    setting.iter().map(|l| l.as_char()).collect()
}

/// Match a joint composite setting against the operator's terms: the setting
/// must equal the term's per-party letter groups exactly (identity sites
/// included). Returns the matched term index, or None.
pub fn sift(fixture: &ScenarioFixture, settings: &[Vec<PauliLetter>]) -> Result<Option<usize>> {
    if settings.len() != fixture.bell_parties.len() {
        return Err(Error::InvalidScenario {
            reason: "one composite setting per party required".into(),
        });
    }
    for (party, setting) in fixture.bell_parties.iter().zip(settings) {
        if !party.settings.contains(setting) {
            return Err(Error::SettingOutsideSet {
                party: party.name.clone(),
                setting: setting_label(setting),
            });
        }
    }
    let term_settings = fixture.term_settings();
    Ok(term_settings
        .iter()
        .position(|t| t.as_slice() == settings))
}

/// Estimate of the Bell-operator value from sifted records.
#[derive(Clone, Debug)]
pub struct ViolationEstimate {
    pub per_term: Vec<TermEstimate>,
    /// Sum of per-term means; missing when a term has no records.
    pub estimate: Option<f64>,
    pub standard_error: Option<f64>,
}

/// Per-copy term values, grouped by term; the estimate is the sum over terms
/// of the per-term outcome means, with the standard error propagated per
/// term. Errors when there are no records at all.
pub fn estimate_violation(m: usize, records: &[(usize, i8)]) -> Result<ViolationEstimate> {
    if records.is_empty() {
        return Err(Error::NoSiftedRecords);
    }
    let mut per_term = Vec::with_capacity(m);
    let mut complete = true;
    for term_index in 0..m {
        let values: Vec<f64> = records
            .iter()
            .filter(|(t, _)| *t == term_index)
            .map(|(_, v)| *v as f64)
            .collect();
        let count = values.len();
        if count == 0 {
            complete = false;
            per_term.push(TermEstimate {
                term_index,
                count: 0,
                mean: 0.0,
                standard_error: 0.0,
            });
            continue;
        }
        let mean = values.iter().sum::<f64>() / count as f64;
        // +-1 samples: population variance 1 - mean^2.
        let variance = (1.0 - mean * mean).max(0.0);
        per_term.push(TermEstimate {
            term_index,
            count,
            mean,
            standard_error: (variance / count as f64).sqrt(),
        });
    }
    let (estimate, standard_error) = if complete {
        let est = per_term.iter().map(|t| t.mean).sum();
        let se = per_term
            .iter()
            .map(|t| t.standard_error * t.standard_error)
            .sum::<f64>()
            .sqrt();
        (Some(est), Some(se))
    } else {
        (None, None)
    };
    Ok(ViolationEstimate {
        per_term,
        estimate,
        standard_error,
    })
}

/// Sequentially collapses single qubits of a state, tracking original qubit
/// labels as measured ones are consumed.
struct CollapseSampler {
    amps: Vec<Complex64>,
    remaining: Vec<usize>,
}

impl CollapseSampler {
    fn new(state: &StateVector) -> Self {
        CollapseSampler {
            amps: state.amplitudes().to_vec(),
            remaining: (1..=state.n()).collect(),
        }
    }

    /// Measure one original qubit in a letter basis; draws the outcome from
    /// `rng` and collapses. Returns +1/-1.
    fn measure_letter<R: Rng>(&mut self, qubit: usize, letter: PauliLetter, rng: &mut R) -> i8 {
        let pos = self
            .remaining
            .iter()
            .position(|&q| q == qubit)
            .expect("qubit already measured")
            + 1;
        let basis = ProjectiveBasis::pauli(letter);
        let n_cur = self.remaining.len();
        let plus = project_onto(&self.amps, n_cur, &[pos], &basis.outcomes()[0].1);
        let p_plus: f64 = plus.iter().map(|a| a.norm_sqr()).sum();
        let draw: f64 = rng.random();
        let (chosen, p, value) = if draw < p_plus {
            (plus, p_plus, 1)
        } else {
            let minus = project_onto(&self.amps, n_cur, &[pos], &basis.outcomes()[1].1);
            let p_minus: f64 = minus.iter().map(|a| a.norm_sqr()).sum();
            (minus, p_minus, -1)
        };
        let norm = p.sqrt();
        self.amps = chosen.iter().map(|a| a / norm).collect();
        self.remaining.remove(pos - 1);
        value
    }

    /// Measure original qubits jointly in a multi-qubit basis; returns the
    /// outcome label index.
    fn measure_basis<R: Rng>(
        &mut self,
        qubits: &[usize],
        basis: &ProjectiveBasis,
        rng: &mut R,
    ) -> usize {
        let positions: Vec<usize> = qubits
            .iter()
            .map(|q| self.remaining.iter().position(|r| r == q).expect("present") + 1)
            .collect();
        let n_cur = self.remaining.len();
        let projections: Vec<(Vec<Complex64>, f64)> = basis
            .outcomes()
            .iter()
            .map(|(_, vector)| {
                let projected = project_onto(&self.amps, n_cur, &positions, vector);
                let p: f64 = projected.iter().map(|a| a.norm_sqr()).sum();
                (projected, p)
            })
            .collect();
        let mut draw: f64 = rng.random();
        let fallback = projections
            .iter()
            .rposition(|(_, p)| *p > 1e-15)
            .expect("some outcome has weight");
        let mut chosen = fallback;
        for (k, (_, p)) in projections.iter().enumerate() {
            if draw < *p && k <= fallback {
                chosen = k;
                break;
            }
            draw -= p;
        }
        let (projected, p) = &projections[chosen];
        let norm = p.sqrt();
        self.amps = projected.iter().map(|a| a / norm).collect();
        self.remaining.retain(|r| !qubits.contains(r));
        chosen
    }
}

struct MessageLog {
    messages: Vec<Message>,
}

impl MessageLog {
    fn push(&mut self, round: usize, sender: &str, receiver: &str, timestamp: u64, payload: Payload) {
        self.messages.push(Message {
            round,
            sender: sender.into(),
            receiver: receiver.into(),
            timestamp,
            payload,
        });
    }
}

/// Execute the full protocol for one scenario and secret. Abort is a normal
/// transcript outcome; only configuration problems are errors.
pub fn run_protocol(cfg: &ScenarioConfig, secret: &Secret) -> Result<Transcript> {
    let fixture = cfg.scenario.fixture();
    if cfg.copies < 2 {
        return Err(Error::InvalidScenario {
            reason: format!("need at least 2 copies, got {}", cfg.copies),
        });
    }
    if secret.d() != fixture.code.d() {
        return Err(Error::InvalidScenario {
            reason: "secret dimension does not match the scenario code space".into(),
        });
    }
    let threshold = cfg.threshold.unwrap_or_else(|| fixture.default_threshold());
    if threshold <= fixture.lr_bound as f64 {
        return Err(Error::InvalidScenario {
            reason: format!(
                "threshold {threshold} must lie strictly above the local-realist bound {}",
                fixture.lr_bound
            ),
        });
    }
    let attack = match (cfg.attack_theta, cfg.scenario) {
        (None, _) => None,
        (Some(theta), ScenarioId::FiveQ) => Some(AttackParams::new(theta)?),
        (Some(_), ScenarioId::Cluster4) => {
            return Err(Error::InvalidScenario {
                reason: "the attack model is defined only for the fiveq scenario".into(),
            })
        }
    };
    // Divergence is a precondition of the teleportation phase.
    let divergence = check_divergence(&fixture.code, &fixture.teleport)?;
    if !divergence.ok {
        return Err(Error::InvalidScenario {
            reason: "scenario code space fails the divergence check".into(),
        });
    }
    let recovery_map = divergence.recovery.expect("recovery exists when ok");

    let n = cfg.copies;
    let mut log = MessageLog { messages: Vec::new() };

    // Per-party seeded streams; nature streams are per copy.
    let stream = |k: u64| -> ChaCha12Rng {
        let mut r = ChaCha12Rng::seed_from_u64(cfg.seed);
        r.set_stream(k);
        r
    };
    let mut alice_rng = stream(1);
    let mut dolly_rng = stream(2);
    let mut party_rngs: Vec<ChaCha12Rng> = (0..fixture.bell_parties.len())
        .map(|p| stream(10 + p as u64))
        .collect();

    // Alice encrypts each copy with its own uniformly drawn key.
    let d = fixture.code.d();
    let keys: Vec<EncryptionKey> = (0..n)
        .map(|_| EncryptionKey::new(d, alice_rng.random_range(0..d * d)))
        .collect::<Result<_>>()?;

    // Dolly encodes and distributes; receipt is implicit, then the announcer
    // reserves one serial.
    for serial in 1..=n {
        log.push(0, "dolly", "all", 0, Payload::Distribute { serial });
    }
    let reserved_serial = match cfg.announcer {
        Announcer::Alice => alice_rng.random_range(1..=n),
        Announcer::Dolly => dolly_rng.random_range(1..=n),
    };
    let announcer_name = match cfg.announcer {
        Announcer::Alice => "alice",
        Announcer::Dolly => "dolly",
    };
    log.push(
        0,
        announcer_name,
        "all",
        1,
        Payload::ReserveAnnouncement {
            serial: reserved_serial,
        },
    );

    // Parties pre-draw their settings for every serial (the reserved copy's
    // draw is discarded), keeping streams aligned regardless of scheduling.
    let drawn_settings: Vec<Vec<usize>> = fixture
        .bell_parties
        .iter()
        .enumerate()
        .map(|(p, party)| {
            (0..n)
                .map(|_| party_rngs[p].random_range(0..party.settings.len()))
                .collect()
        })
        .collect();

    let mut copy_records = Vec::with_capacity(n);
    let mut sifted: Vec<(usize, i8)> = Vec::new();
    let mut tick = 2u64;
    for serial in 1..=n {
        let key = keys[serial - 1];
        if serial == reserved_serial {
            copy_records.push(CopyRecord {
                serial,
                reserved: true,
                key_label: key.label(),
                settings: Vec::new(),
                outcomes: Vec::new(),
                sifted_term: None,
                term_value: None,
            });
            continue;
        }
        let encrypted = encrypt(secret, &key)?;
        let state = match &attack {
            None => encode(&encrypted, &fixture.code)?,
            Some(params) => attacked_state(&encrypted, &fixture.code, params)?,
        };
        let mut nature = stream(1000 + serial as u64);
        let mut sampler = CollapseSampler::new(&state);
        let settings: Vec<Vec<PauliLetter>> = fixture
            .bell_parties
            .iter()
            .enumerate()
            .map(|(p, party)| party.settings[drawn_settings[p][serial - 1]].clone())
            .collect();
        // Simultaneous measurement: every outcome message of this copy
        // shares one tick; settings are announced only afterwards.
        let mut outcomes: Vec<Vec<i8>> = Vec::new();
        for (party, setting) in fixture.bell_parties.iter().zip(&settings) {
            let mut values = Vec::new();
            for (&qubit, &letter) in party.qubits.iter().zip(setting) {
                if letter == PauliLetter::I {
                    continue;
                }
                values.push(sampler.measure_letter(qubit, letter, &mut nature));
            }
            log.push(
                serial,
                &party.name,
                "alice",
                tick,
                Payload::Outcome {
                    serial,
                    values: values.clone(),
                },
            );
            outcomes.push(values);
        }
        for (party, setting) in fixture.bell_parties.iter().zip(&settings) {
            log.push(
                serial,
                &party.name,
                "alice",
                tick + 1,
                Payload::Setting {
                    serial,
                    setting: setting_label(setting),
                },
            );
        }
        tick += 2;
        let sifted_term = sift(&fixture, &settings)?;
        let term_value = sifted_term.map(|t| {
            let sign = fixture.bell.terms()[t].sign().expect("terms are Hermitian");
            let product: i8 = outcomes
                .iter()
                .flat_map(|vs| vs.iter())
                .product::<i8>();
            sign * product
        });
        if let (Some(t), Some(v)) = (sifted_term, term_value) {
            sifted.push((t, v));
        }
        copy_records.push(CopyRecord {
            serial,
            reserved: false,
            key_label: key.label(),
            settings: settings.iter().map(|s| setting_label(s)).collect(),
            outcomes,
            sifted_term,
            term_value,
        });
    }

    // Alice sifts and estimates.
    let measured = n - 1;
    let m = fixture.bell.m();
    let (per_term, estimate, standard_error) = match estimate_violation(m, &sifted) {
        Ok(est) => (est.per_term, est.estimate, est.standard_error),
        Err(Error::NoSiftedRecords) => (Vec::new(), None, None),
        Err(e) => return Err(e),
    };
    let decision = match estimate {
        Some(est) if est >= threshold => Decision::Proceed,
        Some(est) => Decision::Abort {
            reason: format!("estimate {est:.6} below threshold {threshold:.6}"),
        },
        None => Decision::Abort {
            reason: "insufficient data: not every term was sampled".into(),
        },
    };
    let bell_report = BellTestReport {
        measured_copies: measured,
        sifted_count: sifted.len(),
        sift_fraction: sifted.len() as f64 / measured as f64,
        per_term,
        estimate,
        standard_error,
        threshold,
        decision: decision.clone(),
    };
    log.push(
        n + 1,
        "alice",
        "all",
        tick,
        Payload::Decision {
            proceed: decision == Decision::Proceed,
        },
    );
    tick += 1;

    // Teleportation over the reserved copy.
    let mut recovery = None;
    if decision == Decision::Proceed {
        let key = keys[reserved_serial - 1];
        let encrypted = encrypt(secret, &key)?;
        let channel = match &attack {
            None => encode(&encrypted, &fixture.code)?,
            Some(params) => attacked_state(&encrypted, &fixture.code, params)?,
        };
        let joint = StateVector::zero(1)?.tensor(&channel)?;
        let mut nature = stream(2_000_000);
        let mut sampler = CollapseSampler::new(&joint);
        let mut outcome_parts: Vec<String> = Vec::new();
        for party in fixture.teleport.parties() {
            match &party.measurement {
                PartyMeasurement::BellWithAncilla { qubit } => {
                    let basis = ProjectiveBasis::bell();
                    let k = sampler.measure_basis(&[1, qubit + 1], &basis, &mut nature);
                    let label = basis.outcomes()[k].0.clone();
                    log.push(
                        n + 2,
                        &party.name,
                        "rex",
                        tick,
                        Payload::TeleportOutcome {
                            outcome: label.clone(),
                        },
                    );
                    outcome_parts.push(label);
                }
                PartyMeasurement::Product { letters } => {
                    let mut label = String::new();
                    for (&q, &letter) in party.qubits.iter().zip(letters) {
                        let basis = ProjectiveBasis::pauli(letter);
                        let k = sampler.measure_basis(&[q + 1], &basis, &mut nature);
                        label.push_str(&basis.outcomes()[k].0);
                    }
                    log.push(
                        n + 2,
                        &party.name,
                        "rex",
                        tick,
                        Payload::TeleportOutcome {
                            outcome: label.clone(),
                        },
                    );
                    outcome_parts.push(label);
                }
                PartyMeasurement::Unmeasured => {}
            }
        }
        let outcome = outcome_parts.join("|");
        let entry = recovery_map
            .entry(&outcome)
            .ok_or_else(|| Error::MissingRecoveryEntry {
                outcome: outcome.clone(),
            })?;
        log.push(
            n + 2,
            "alice",
            "rex",
            tick + 1,
            Payload::DecryptionKey { label: key.label() },
        );

        // Rex undoes the recovery unitary and the encryption on his qubits;
        // with an attack present the eavesdropper ancilla is still entangled,
        // so the fidelity is evaluated on Rex's reduced state.
        let rex_count = fixture.teleport.recoverer().qubits.len();
        let residual_n = sampler.remaining.len();
        let (residual, _) = StateVector::normalizing(residual_n, sampler.amps.clone())?;
        let rex_positions: Vec<usize> = (1..=rex_count).collect();
        let undone = residual.apply_gate(&entry.dagger(), &rex_positions)?;
        let decrypt_gate = decryption_matrix(&key);
        let decrypted = undone.apply_gate(&decrypt_gate, &[rex_positions[rex_count - 1]])?;
        let mut target = vec![Complex64::ZERO; 1 << rex_count];
        target[..secret.d()].copy_from_slice(secret.amplitudes());
        let target_state = StateVector::from_amplitudes(rex_count, target)?;
        let fidelity = if residual_n == rex_count {
            decrypted.inner(&target_state)?.norm_sqr()
        } else {
            let rho = decrypted.partial_trace(&rex_positions)?;
            rho.fidelity_with_pure(&target_state)?
        };
        recovery = Some(RecoveryRecord { outcome, fidelity });
    }

    Ok(Transcript {
        schema_version: TRANSCRIPT_SCHEMA_VERSION,
        scenario: fixture.name.to_string(),
        copies: n,
        seed: cfg.seed,
        threshold,
        announcer: cfg.announcer,
        attack_theta: attack.map(|a| a.theta),
        measurement_sets: fixture
            .bell_parties
            .iter()
            .map(|p| {
                (
                    p.name.clone(),
                    p.settings.iter().map(|s| setting_label(s)).collect(),
                )
            })
            .collect(),
        reserved_serial,
        messages: log.messages,
        copy_records,
        bell_report,
        recovery,
        decision,
    })
}

/// Inverse of the encryption operation as a unitary on the logical qubit
/// (d = 2 only; the recoverer's last qubit carries the logical basis).
fn decryption_matrix(key: &EncryptionKey) -> CMatrix {
    debug_assert_eq!(key.d(), 2);
    // encrypt: |j> -> omega^{b j} |j + a mod 2>, omega = -1.
    let a = key.label() / 2;
    let b = key.label() % 2;
    let mut enc = CMatrix::zeros(2);
    for j in 0..2 {
        let sign = if b * j % 2 == 1 { -1.0 } else { 1.0 };
        enc[((j + a) % 2, j)] = Complex64::new(sign, 0.0);
    }
    enc.dagger()
}

/// Check transcript discipline: per-sender timestamps never decrease, all
/// outcome messages of one copy share one tick, and no setting message for a
/// copy precedes (or ties) its outcome messages.
pub fn validate_transcript(t: &Transcript) -> Result<()> {
    use std::collections::BTreeMap;
    let mut last_per_sender: BTreeMap<&str, u64> = BTreeMap::new();
    for msg in &t.messages {
        let last = last_per_sender.entry(msg.sender.as_str()).or_insert(0);
        if msg.timestamp < *last {
            return Err(Error::TranscriptViolation {
                reason: format!(
                    "sender {} timestamp decreased from {} to {}",
                    msg.sender, last, msg.timestamp
                ),
            });
        }
        *last = msg.timestamp;
    }
    let mut outcome_ticks: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    let mut setting_ticks: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for msg in &t.messages {
        match &msg.payload {
            Payload::Outcome { serial, .. } => {
                outcome_ticks.entry(*serial).or_default().push(msg.timestamp)
            }
            Payload::Setting { serial, .. } => {
                setting_ticks.entry(*serial).or_default().push(msg.timestamp)
            }
            _ => {}
        }
    }
    for (serial, ticks) in &outcome_ticks {
        if ticks.iter().any(|&t| t != ticks[0]) {
            return Err(Error::TranscriptViolation {
                reason: format!("outcome messages for copy {serial} span multiple ticks"),
            });
        }
        if let Some(settings) = setting_ticks.get(serial) {
            let max_outcome = *ticks.iter().max().expect("nonempty");
            if settings.iter().any(|&s| s <= max_outcome) {
                return Err(Error::TranscriptViolation {
                    reason: format!(
                        "setting message for copy {serial} does not follow all outcome messages"
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Pretty one-line summary used by the command-line surface.
pub fn transcript_summary(t: &Transcript) -> String {
    let est = t
        .bell_report
        .estimate
        .map(|e| format!("{e:.4}"))
        .unwrap_or_else(|| "n/a".into());
    let decision = match &t.decision {
        Decision::Proceed => "proceed".to_string(),
        Decision::Abort { reason } => format!("abort ({reason})"),
    };
    format!(
        "scenario={} copies={} sifted={}/{} estimate={} threshold={} decision={}",
        t.scenario,
        t.copies,
        t.bell_report.sifted_count,
        t.bell_report.measured_copies,
        est,
        t.threshold,
        decision
    )
}

/// Recoverer-side view of the final state for reporting.
pub fn recovered_state_records(state: &StateVector) -> Vec<AmplitudeRecord> {
    state.amplitude_records()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn secret() -> Secret {
        Secret::qubit(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap()
    }

    fn base_config() -> ScenarioConfig {
        ScenarioConfig {
            scenario: ScenarioId::Cluster4,
            copies: 129,
            threshold: Some(3.5),
            seed: 11,
            attack_theta: None,
            announcer: Announcer::Alice,
        }
    }

    #[test]
    fn honest_cluster_run_proceeds_with_exact_estimate() {
        let t = run_protocol(&base_config(), &secret()).unwrap();
        assert_eq!(t.decision, Decision::Proceed);
        let est = t.bell_report.estimate.unwrap();
        assert!((est - 4.0).abs() < 1e-9, "estimate {est}");
        let rec = t.recovery.as_ref().unwrap();
        assert!(rec.fidelity >= 1.0 - 1e-9, "fidelity {}", rec.fidelity);
        validate_transcript(&t).unwrap();
    }

    #[test]
    fn sift_matches_expected_terms() {
        use PauliLetter::{I, X, Y, Z};
        let fixture = ScenarioId::Cluster4.fixture();
        // Alice Z, Bob XI, Rex X matches the ZXIX term.
        let idx = sift(&fixture, &[vec![Z], vec![X, I], vec![X]]).unwrap();
        assert_eq!(idx, Some(0));
        let idx = sift(&fixture, &[vec![Y], vec![X, X], vec![Y]]).unwrap();
        assert_eq!(idx, Some(2));
        let idx = sift(&fixture, &[vec![Z], vec![Y, X], vec![X]]).unwrap();
        assert_eq!(idx, None);
        // 16 joint settings, exactly 4 match.
        let mut matched = 0;
        for a in &fixture.bell_parties[0].settings {
            for b in &fixture.bell_parties[1].settings {
                for r in &fixture.bell_parties[2].settings {
                    if sift(&fixture, &[a.clone(), b.clone(), r.clone()])
                        .unwrap()
                        .is_some()
                    {
                        matched += 1;
                    }
                }
            }
        }
        assert_eq!(matched, 4);
    }

    #[test]
    fn setting_outside_set_is_an_error() {
        use PauliLetter::Z;
        let fixture = ScenarioId::Cluster4.fixture();
        let err = sift(&fixture, &[vec![Z], vec![Z, Z], vec![Z]]);
        assert!(matches!(err, Err(Error::SettingOutsideSet { .. })));
    }

    #[test]
    fn estimate_violation_basics() {
        assert!(estimate_violation(4, &[]).is_err());
        // one record per term, all +1 after sign folding -> estimate m
        let records: Vec<(usize, i8)> = (0..4).map(|t| (t, 1)).collect();
        let est = estimate_violation(4, &records).unwrap();
        assert_eq!(est.estimate, Some(4.0));
        assert_eq!(est.standard_error, Some(0.0));
        // a missing term means no estimate
        let est = estimate_violation(4, &[(0, 1), (1, -1)]).unwrap();
        assert!(est.estimate.is_none());
    }

    #[test]
    fn insufficient_data_aborts() {
        let mut cfg = base_config();
        cfg.copies = 2;
        cfg.threshold = Some(3.0);
        // Find a seed whose single measured copy misses the sift.
        let mut aborted_for_data = false;
        for seed in 0..40 {
            cfg.seed = seed;
            let t = run_protocol(&cfg, &secret()).unwrap();
            if let Decision::Abort { reason } = &t.decision {
                if reason.contains("insufficient data") {
                    aborted_for_data = true;
                    break;
                }
            }
        }
        assert!(aborted_for_data);
    }

    #[test]
    fn identical_seeds_give_identical_transcripts() {
        let t1 = run_protocol(&base_config(), &secret()).unwrap();
        let t2 = run_protocol(&base_config(), &secret()).unwrap();
        let j1 = serde_json::to_string(&t1).unwrap();
        let j2 = serde_json::to_string(&t2).unwrap();
        assert_eq!(j1, j2);
        let mut other = base_config();
        other.seed = 12;
        let t3 = run_protocol(&other, &secret()).unwrap();
        assert_ne!(j1, serde_json::to_string(&t3).unwrap());
    }

    #[test]
    fn tampered_transcript_is_rejected() {
        let mut t = run_protocol(&base_config(), &secret()).unwrap();
        let idx = t
            .messages
            .iter()
            .position(|m| matches!(m.payload, Payload::Outcome { .. }))
            .unwrap();
        t.messages[idx].timestamp += 1;
        assert!(validate_transcript(&t).is_err());
    }

    #[test]
    fn attack_config_rejected_for_cluster() {
        let mut cfg = base_config();
        cfg.attack_theta = Some(0.3);
        assert!(run_protocol(&cfg, &secret()).is_err());
    }

    #[test]
    fn threshold_must_exceed_lr_bound() {
        let mut cfg = base_config();
        cfg.threshold = Some(2.0);
        assert!(run_protocol(&cfg, &secret()).is_err());
    }
}
