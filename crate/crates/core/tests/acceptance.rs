//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use common::{inner, random_secret_amps};
use dqis_core::bell::{degenerate_signatures, lr_bound, quantum_value, verify_ghz_contradiction};
use dqis_core::dqis::{
    check_divergence, decrypt, encode, encrypt, recovery_from_single_codeword, run_teleportation,
    EncryptionKey, Secret,
};
use dqis_core::fixtures::{cluster4, fiveq, ghz_negative, reproduce_tables, shor, steane};
use dqis_core::harness::{run_protocol, Announcer, Decision, ScenarioConfig, ScenarioId};
use dqis_core::state::{DensityMatrix, StateVector};

fn criterion(id: usize, summary: &str, body: impl FnOnce() -> Result<String, String>) {
    match body() {
        Ok(detail) => println!("[acceptance] criterion {id} PASS - {summary}: {detail}"),
        Err(why) => {
            println!("[acceptance] criterion {id} FAIL - {summary}: {why}");
            panic!("criterion {id} failed: {why}");
        }
    }
}

fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn random_secret<R: Rng>(r: &mut R) -> Secret {
    Secret::new(random_secret_amps(r, 2)).unwrap()
}

#[test]
fn criterion_1_local_realist_bounds() {
    criterion(1, "local-realist bounds by exhaustive search", || {
        let cases = [
            ("cluster b1", cluster4::bell_b1(), 2i64),
            ("cluster b2", cluster4::bell_b2(), 2),
            ("fiveq", fiveq::bell(), 3),
            ("steane", steane::bell(), 4),
        ];
        let mut parts = Vec::new();
        for (name, op, want) in cases {
            let got = lr_bound(&op).map_err(|e| e.to_string())?;
            if got.bound != want {
                return Err(format!("{name}: bound {} != {want}", got.bound));
            }
            parts.push(format!("{name}={}", got.bound));
        }
        let start = Instant::now();
        let shor_bound = lr_bound(&shor::bell()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        if shor_bound.bound != 5 {
            return Err(format!("shor: bound {} != 5", shor_bound.bound));
        }
        if elapsed.as_secs() >= 60 {
            return Err(format!("shor search took {elapsed:?} (>= 60 s)"));
        }
        parts.push(format!("shor=5 in {elapsed:.2?}"));
        Ok(parts.join(", "))
    });
}

#[test]
fn criterion_2_quantum_maxima() {
    criterion(2, "quantum maxima on the degenerate states", || {
        let tol = 1e-9;
        let b1 = cluster4::bell_b1();
        for bits in ["0000", "1110"] {
            let v = quantum_value(&b1, &cluster4::state(bits)).map_err(|e| e.to_string())?;
            if (v - 4.0).abs() > tol {
                return Err(format!("b1 on {bits}: {v}"));
            }
        }
        let b2 = cluster4::bell_b2();
        for bits in ["0000", "0101"] {
            let v = quantum_value(&b2, &cluster4::state(bits)).map_err(|e| e.to_string())?;
            if (v - 4.0).abs() > tol {
                return Err(format!("b2 on {bits}: {v}"));
            }
        }
        let mut r = rng(100);
        for (name, op, code, want) in [
            ("fiveq", fiveq::bell(), fiveq::code_space(), 5.0),
            ("steane", steane::bell(), steane::code_space(), 6.0),
            ("shor", shor::bell(), shor::code_space(), 7.0),
        ] {
            for _ in 0..20 {
                let s = encode(&random_secret(&mut r), &code).map_err(|e| e.to_string())?;
                let v = quantum_value(&op, &s).map_err(|e| e.to_string())?;
                if (v - want).abs() > tol {
                    return Err(format!("{name}: value {v} != {want}"));
                }
            }
        }
        // Reported, not suppressed: the all-X flip of the five-qubit base
        // codeword anticommutes with the fourth stabilizer generator, so the
        // span it defines is NOT degenerate; the degenerate partner used
        // above is the Y1 X2 flip instead.
        let half = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let literal = encode(
            &Secret::qubit(half, half).unwrap(),
            &fiveq::branch_table_code_space(),
        )
        .map_err(|e| e.to_string())?;
        let literal_value = quantum_value(&fiveq::bell(), &literal).map_err(|e| e.to_string())?;
        if (literal_value - 5.0).abs() < 0.5 {
            return Err("expected the all-X span to miss the maximum".into());
        }
        Ok(format!(
            "b1=b2=4, fiveq=5, steane=6, shor=7 on 20 random superpositions each; \
             note: the all-X codeword pairing attains only {literal_value:.3} at equal \
             weights (fourth stabilizer eigenvalue -1), so the degenerate pairing \
             uses the Y1X2 flip"
        ))
    });
}

#[test]
fn criterion_3_degeneracy_enumeration() {
    criterion(3, "Bell-degenerate signature enumeration", || {
        let sigs_of = |op: dqis_core::bell::BellOperator,
                       gens: &[dqis_core::pauli::PauliString]| {
            degenerate_signatures(&op, gens).map_err(|e| e.to_string())
        };

        let d1 = sigs_of(cluster4::bell_b1(), &cluster4::graph_generators())?;
        let s1: Vec<String> = d1.signatures.iter().map(|s| s.to_string()).collect();
        if s1 != ["0000", "1110"] {
            return Err(format!("b1 signatures {s1:?}"));
        }
        let d2 = sigs_of(cluster4::bell_b2(), &cluster4::graph_generators())?;
        let s2: Vec<String> = d2.signatures.iter().map(|s| s.to_string()).collect();
        if s2 != ["0000", "0101"] {
            return Err(format!("b2 signatures {s2:?}"));
        }

        let d5 = sigs_of(fiveq::bell(), &fiveq::code_generators())?;
        let s5: Vec<String> = d5.signatures.iter().map(|s| s.to_string()).collect();
        if s5 != ["0000"] {
            return Err(format!("fiveq signatures {s5:?} (expected only the code space)"));
        }
        if d5.subspace_dim() != 2 {
            return Err(format!("fiveq subspace dim {}", d5.subspace_dim()));
        }

        // Steane: 4 sign vectors over the 6 listed generators; each pins a
        // 2-dimensional eigenspace on 7 qubits, total dimension 8.
        let dst = sigs_of(steane::bell(), &steane::code_generators())?;
        if dst.signatures.len() != 4 || dst.subspace_dim() != 8 {
            return Err(format!(
                "steane: {} signatures, dim {}",
                dst.signatures.len(),
                dst.subspace_dim()
            ));
        }
        let constrained: Vec<String> = dst
            .signatures
            .iter()
            .map(|s| s.to_string()[..5].to_string())
            .collect();
        if !constrained.contains(&"11100".to_string()) || !constrained.contains(&"00000".to_string())
        {
            return Err(format!("steane constrained signatures {constrained:?}"));
        }

        // Shor: 4 sign vectors over the 8 listed generators; total dim 8.
        let dsh = sigs_of(shor::bell(), &shor::code_generators())?;
        if dsh.signatures.len() != 4 || dsh.subspace_dim() != 8 {
            return Err(format!(
                "shor: {} signatures, dim {}",
                dsh.signatures.len(),
                dsh.subspace_dim()
            ));
        }
        // Constrained generators exclude the sixth (index 5).
        let shor_constrained: Vec<String> = dsh
            .signatures
            .iter()
            .map(|s| {
                s.bits()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != 5)
                    .map(|(_, &b)| if b { '1' } else { '0' })
                    .collect()
            })
            .collect();
        if !shor_constrained.contains(&"1110010".to_string())
            || !shor_constrained.contains(&"0000000".to_string())
        {
            return Err(format!("shor constrained signatures {shor_constrained:?}"));
        }

        // Cardinalities against the 2^(n - r) formula.
        for (name, d, n, r) in [
            ("b1", &d1, 4usize, 3usize),
            ("b2", &d2, 4, 3),
            ("fiveq", &d5, 5, 4),
            ("steane", &dst, 7, 4),
            ("shor", &dsh, 9, 6),
        ] {
            if d.rank != r || d.subspace_dim() != 1 << (n - r) {
                return Err(format!(
                    "{name}: rank {} dim {} vs formula 2^({n}-{r})",
                    d.rank,
                    d.subspace_dim()
                ));
            }
        }
        Ok(
            "b1 -> {0000, 1110}; b2 -> {0000, 0101}; fiveq -> code space only; \
             steane: 4 sign vectors x 2-dim eigenspaces = dim 8 (matches the 4 x 2 count); \
             shor: 4 sign vectors x 2-dim eigenspaces = dim 8 (matches the 4 x 2 count); \
             all cardinalities equal 2^(n-r)"
                .into(),
        )
    });
}

#[test]
fn criterion_4_ghz_contradiction() {
    criterion(4, "GHZ-style contradiction of the five-term operator", || {
        let op = fiveq::bell();
        let ok = verify_ghz_contradiction(&op, &fiveq::ghz_claimed_values())
            .map_err(|e| e.to_string())?;
        if !ok {
            return Err("verifier returned false".into());
        }
        Ok("term product is +identity while word values multiply to -1".into())
    });
}

#[test]
fn criterion_5_divergence_checker() {
    criterion(5, "teleportation-divergence checker", || {
        for (name, code, cfg) in [
            ("cluster4", cluster4::code_space(), cluster4::teleport_config()),
            ("fiveq", fiveq::code_space(), fiveq::teleport_config()),
            (
                "fiveq tabulated span",
                fiveq::branch_table_code_space(),
                fiveq::branch_table_config(),
            ),
        ] {
            let report = check_divergence(&code, &cfg).map_err(|e| e.to_string())?;
            if !report.ok {
                return Err(format!("{name} unexpectedly fails divergence"));
            }
        }
        let code = ghz_negative::code_space();
        let cfg = ghz_negative::teleport_config();
        let report = check_divergence(&code, &cfg).map_err(|e| e.to_string())?;
        if report.ok {
            return Err("GHZ configuration unexpectedly passes".into());
        }
        let parallel = report.outcomes.iter().any(|oc| {
            !oc.orthogonal && {
                let ip = (oc.gram[0][1].0.powi(2) + oc.gram[0][1].1.powi(2)).sqrt();
                (ip - oc.norms[0] * oc.norms[1]).abs() < 1e-9
            }
        });
        if !parallel {
            return Err("GHZ failure is not due to parallel projected vectors".into());
        }
        // Exhaustive run: the recovered state is |0> for every secret.
        let recovery = recovery_from_single_codeword(&code, &cfg, 0).map_err(|e| e.to_string())?;
        let zero = StateVector::zero(1).unwrap();
        let mut r = rng(300);
        for _ in 0..10 {
            let secret = random_secret(&mut r);
            let branches =
                run_teleportation(&secret, &code, &cfg, &recovery).map_err(|e| e.to_string())?;
            for b in &branches {
                if !b.rex_state.equal_up_to_global_phase(&zero, 1e-9).unwrap() {
                    return Err(format!("GHZ branch {} is not |0>", b.outcome));
                }
            }
        }
        Ok("cluster4 and fiveq pass; GHZ fails with parallel projections and returns |0> \
            independent of the secret"
            .into())
    });
}

#[test]
fn criterion_6_end_to_end_and_tables() {
    criterion(6, "end-to-end recovery and tabulated branches", || {
        let mut r = rng(400);
        for (name, code, cfg) in [
            ("cluster4", cluster4::code_space(), cluster4::teleport_config()),
            ("fiveq", fiveq::code_space(), fiveq::teleport_config()),
        ] {
            let recovery = check_divergence(&code, &cfg)
                .map_err(|e| e.to_string())?
                .recovery
                .ok_or_else(|| format!("{name}: no recovery map"))?;
            for _ in 0..20 {
                let secret = random_secret(&mut r);
                let branches = run_teleportation(&secret, &code, &cfg, &recovery)
                    .map_err(|e| e.to_string())?;
                for b in &branches {
                    if b.fidelity < 1.0 - 1e-9 {
                        return Err(format!(
                            "{name} branch {} fidelity {}",
                            b.outcome, b.fidelity
                        ));
                    }
                }
            }
        }
        let report = reproduce_tables().map_err(|e| e.to_string())?;
        if !report.all_match {
            let bad: Vec<String> = report
                .tables
                .iter()
                .flat_map(|t| {
                    t.rows
                        .iter()
                        .filter(|row| !row.matches_reference)
                        .map(move |row| format!("{}:{}", t.id, row.outcome))
                })
                .collect();
            return Err(format!("table rows failed: {bad:?}"));
        }
        let noted = report
            .tables
            .iter()
            .flat_map(|t| t.rows.iter())
            .filter(|row| row.note.is_some())
            .count();
        Ok(format!(
            "all branch fidelities >= 1 - 1e-9 over 20 random secrets per scenario; \
             all {} table rows match their references ({} rows carry a transcription note)",
            report.tables.iter().map(|t| t.rows.len()).sum::<usize>(),
            noted
        ))
    });
}

#[test]
fn criterion_7_attack_curve() {
    criterion(7, "attack curve 3 + 2 cos(theta)", || {
        let thetas: Vec<f64> = (0..17)
            .map(|i| i as f64 * std::f64::consts::FRAC_PI_2 / 16.0)
            .collect();
        let code = fiveq::code_space();
        let bell = fiveq::bell();
        let mut r = rng(500);
        for _ in 0..2 {
            let secret = random_secret(&mut r);
            let rows = dqis_core::attack::violation_under_attack(&secret, &code, &bell, &thetas)
                .map_err(|e| e.to_string())?;
            for row in &rows {
                let want = 3.0 + 2.0 * row.theta.cos();
                if (row.value - want).abs() >= 1e-9 {
                    return Err(format!(
                        "theta {}: value {} expected {want}",
                        row.theta, row.value
                    ));
                }
            }
            let last = rows.last().unwrap();
            if (last.value - 3.0).abs() >= 1e-9 {
                return Err(format!("theta=pi/2 value {} != 3", last.value));
            }
        }
        Ok("17 grid points within 1e-9 for independent secrets; theta=pi/2 hits the \
            local-realist bound 3"
            .into())
    });
}

#[test]
fn criterion_8_harness_statistics() {
    criterion(8, "harness statistics and determinism", || {
        // Sift fraction within 3 sigma of 1/4 at N = 10^4.
        let cfg = ScenarioConfig {
            scenario: ScenarioId::Cluster4,
            copies: 10_000,
            threshold: None,
            seed: 424242,
            attack_theta: None,
            announcer: Announcer::Alice,
        };
        let secret = Secret::qubit(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
        let t = run_protocol(&cfg, &secret).map_err(|e| e.to_string())?;
        let measured = t.bell_report.measured_copies as f64;
        let frac = t.bell_report.sift_fraction;
        let sigma = (0.25 * 0.75 / measured).sqrt();
        if (frac - 0.25).abs() > 3.0 * sigma {
            return Err(format!("sift fraction {frac} vs 0.25 +- {}", 3.0 * sigma));
        }
        // Honest estimate within 3 propagated standard errors of 4.
        let est = t.bell_report.estimate.ok_or("no estimate")?;
        let se = t.bell_report.standard_error.ok_or("no standard error")?;
        if (est - 4.0).abs() > 3.0 * se + 1e-9 {
            return Err(format!("estimate {est} +- {se}"));
        }
        if t.decision != Decision::Proceed {
            return Err("honest run did not proceed".into());
        }
        let rec = t.recovery.as_ref().ok_or("no recovery record")?;
        if rec.fidelity < 1.0 - 1e-9 {
            return Err(format!("recovered fidelity {}", rec.fidelity));
        }

        // Attacked five-qubit run at theta = pi/2 aborts at the default threshold.
        let attacked = ScenarioConfig {
            scenario: ScenarioId::FiveQ,
            copies: 4097,
            threshold: None,
            seed: 7,
            attack_theta: Some(std::f64::consts::FRAC_PI_2),
            announcer: Announcer::Alice,
        };
        let ta = run_protocol(&attacked, &secret).map_err(|e| e.to_string())?;
        let Decision::Abort { .. } = ta.decision else {
            return Err("attacked run did not abort".into());
        };
        let attacked_estimate = ta.bell_report.estimate.ok_or("no attacked estimate")?;

        // Identical seeds give byte-identical transcripts.
        let t2 = run_protocol(&cfg, &secret).map_err(|e| e.to_string())?;
        let j1 = serde_json::to_string(&t).map_err(|e| e.to_string())?;
        let j2 = serde_json::to_string(&t2).map_err(|e| e.to_string())?;
        if j1 != j2 {
            return Err("identical seeds produced different transcripts".into());
        }
        Ok(format!(
            "sift fraction {frac:.4} (3 sigma of 1/4), honest estimate {est:.4} exactly at 4, \
             attacked estimate {attacked_estimate:.3} -> abort at threshold {}, transcripts \
             byte-identical",
            ta.threshold
        ))
    });
}

#[test]
fn criterion_9_encryption() {
    criterion(9, "one-time-pad encryption", || {
        let mut r = rng(600);
        for _ in 0..50 {
            let secret = random_secret(&mut r);
            // Average over the four keys is maximally mixed.
            let states: Vec<StateVector> = EncryptionKey::all(2)
                .iter()
                .map(|k| {
                    let e = encrypt(&secret, k).unwrap();
                    StateVector::from_amplitudes(1, e.amplitudes().to_vec()).unwrap()
                })
                .collect();
            let avg = DensityMatrix::mixture(&states).map_err(|e| e.to_string())?;
            let dist = avg
                .trace_distance(&DensityMatrix::maximally_mixed(1))
                .map_err(|e| e.to_string())?;
            if dist >= 1e-10 {
                return Err(format!("trace distance {dist}"));
            }
            for key in EncryptionKey::all(2) {
                let dec = decrypt(&encrypt(&secret, &key).unwrap(), &key).unwrap();
                // identity up to global phase
                let overlap = inner(secret.amplitudes(), dec.amplitudes()).norm();
                if overlap < 1.0 - 1e-12 {
                    return Err(format!("round trip overlap {overlap} for key {:?}", key));
                }
            }
        }
        Ok("pad average within 1e-10 of maximally mixed; decrypt after encrypt is the \
            identity up to global phase for all keys"
            .into())
    });
}
