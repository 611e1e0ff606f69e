//! Independent oracles for the integration suites: dense matrix algebra,
//! naive GF(2) elimination and brute-force assignment enumeration, all built
//! separately from the library's own code paths.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;

use dqis_core::pauli::{PauliLetter, PauliString, Phase};
use dqis_core::state::StateVector;

pub type Mat = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn letter_mat(l: PauliLetter) -> Mat {
    match l {
        PauliLetter::I => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]],
        PauliLetter::X => vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]],
        PauliLetter::Y => vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]],
        PauliLetter::Z => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]],
    }
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut out = vec![vec![c(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Dense matrix of a signed word, site 1 on the most significant factor.
pub fn oracle_matrix(p: &PauliString) -> Mat {
    let mut m = vec![vec![c(1.0, 0.0)]];
    for &l in p.letters() {
        m = kron(&m, &letter_mat(l));
    }
    let phase = p.phase().to_complex();
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v *= phase;
        }
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let v = a[i][k];
            if v == Complex64::ZERO {
                continue;
            }
            for j in 0..n {
                out[i][j] += v * b[k][j];
            }
        }
    }
    out
}

pub fn mat_vec(m: &Mat, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    inner(v, v).re.sqrt()
}

/// <state| M(p) |state> via the dense matrix.
pub fn oracle_expectation(state: &StateVector, p: &PauliString) -> f64 {
    let m = oracle_matrix(p);
    let applied = mat_vec(&m, state.amplitudes());
    inner(state.amplitudes(), &applied).re
}

/// Commutation by dense commutator norm.
pub fn oracle_commutes(a: &PauliString, b: &PauliString) -> bool {
    let ma = oracle_matrix(a);
    let mb = oracle_matrix(b);
    let ab = mat_mul(&ma, &mb);
    let ba = mat_mul(&mb, &ma);
    let mut worst = 0.0f64;
    for i in 0..ab.len() {
        for j in 0..ab.len() {
            worst = worst.max((ab[i][j] - ba[i][j]).norm());
        }
    }
    worst < 1e-10
}

/// GF(2) rank by naive boolean Gaussian elimination over [x | z] rows.
pub fn oracle_rank_gf2(set: &[PauliString]) -> usize {
    if set.is_empty() {
        return 0;
    }
    let n = set[0].n();
    let mut rows: Vec<Vec<bool>> = set
        .iter()
        .map(|p| {
            let mut row = vec![false; 2 * n];
            for (i, &l) in p.letters().iter().enumerate() {
                row[i] = matches!(l, PauliLetter::X | PauliLetter::Y);
                row[n + i] = matches!(l, PauliLetter::Z | PauliLetter::Y);
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..(2 * n) {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x ^= p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Brute-force local-realist bound: enumerate raw +-1 assignments to every
/// letter that occurs at each site, evaluating each term from its letters.
pub fn oracle_lr_bound(terms: &[PauliString]) -> i64 {
    let n = terms[0].n();
    let mut used: Vec<(usize, PauliLetter)> = Vec::new();
    for site in 1..=n {
        for letter in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
            if terms.iter().any(|t| t.letter(site) == letter) {
                used.push((site, letter));
            }
        }
    }
    let k = used.len();
    let mut assignment = vec![1i8; k];
    let mut best = i64::MIN;
    loop {
        let mut total = 0i64;
        for t in terms {
            let mut v = t.sign().unwrap() as i64;
            for site in 1..=n {
                let l = t.letter(site);
                if l == PauliLetter::I {
                    continue;
                }
                let idx = used.iter().position(|&u| u == (site, l)).unwrap();
                v *= assignment[idx] as i64;
            }
            total += v;
        }
        best = best.max(total);
        // odometer over {+1, -1}^k
        let mut pos = 0;
        loop {
            if pos == k {
                return best;
            }
            if assignment[pos] == 1 {
                assignment[pos] = -1;
                break;
            }
            assignment[pos] = 1;
            pos += 1;
        }
    }
}

pub fn random_letter<R: Rng>(rng: &mut R) -> PauliLetter {
    match rng.random_range(0..4) {
        0 => PauliLetter::I,
        1 => PauliLetter::X,
        2 => PauliLetter::Y,
        _ => PauliLetter::Z,
    }
}

pub fn random_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliString {
    let letters = (0..n).map(|_| random_letter(rng)).collect();
    let phase = Phase::from_exponent(rng.random_range(0..4));
    PauliString::new(phase, letters)
}

pub fn random_hermitian_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliString {
    let letters = (0..n).map(|_| random_letter(rng)).collect();
    let phase = if rng.random_bool(0.5) {
        Phase::ONE
    } else {
        Phase::MINUS_ONE
    };
    PauliString::new(phase, letters)
}

pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> StateVector {
    let dim = 1usize << n;
    let mut amps: Vec<Complex64> = (0..dim)
        .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let nrm = norm(&amps);
    for a in amps.iter_mut() {
        *a /= nrm;
    }
    StateVector::from_amplitudes(n, amps).unwrap()
}

pub fn random_secret_amps<R: Rng>(rng: &mut R, d: usize) -> Vec<Complex64> {
    let mut amps: Vec<Complex64> = (0..d)
        .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let nrm = norm(&amps);
    for a in amps.iter_mut() {
        *a /= nrm;
    }
    amps
}

/// Haar-ish random unitary by Gram-Schmidt on a random complex matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> Vec<Vec<Complex64>> {
    loop {
        let mut cols: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                    .collect()
            })
            .collect();
        let mut ok = true;
        for i in 0..dim {
            for j in 0..i {
                let prev = cols[j].clone();
                let overlap = inner(&prev, &cols[i]);
                for (x, p) in cols[i].iter_mut().zip(&prev) {
                    *x -= overlap * p;
                }
            }
            let nrm = norm(&cols[i]);
            if nrm < 1e-6 {
                ok = false;
                break;
            }
            for x in cols[i].iter_mut() {
                *x /= nrm;
            }
        }
        if ok {
            // rows of the returned matrix are U[i][j] with columns as built
            let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
            for (j, col) in cols.iter().enumerate() {
                for (i, &v) in col.iter().enumerate() {
                    m[i][j] = v;
                }
            }
            return m;
        }
    }
}
