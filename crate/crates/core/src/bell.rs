//! Bell operators built from stabilizer products: local-realist bounds by
//! exhaustive assignment search, quantum values, degenerate-subspace
//! enumeration and the GHZ-style contradiction check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GraphSignature;
use crate::pauli::{commutes, gf2_kernel, multiply, rank_gf2, PauliLetter, PauliString};
use crate::state::StateVector;

/// Sum of m signed stabilizer words h_j. When built from a generator recipe
/// the subsets are retained so the degenerate subspace can be enumerated.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BellOperator {
    terms: Vec<PauliString>,
    /// 0-based generator index subsets, one per term.
    generator_recipe: Option<Vec<Vec<usize>>>,
}

impl BellOperator {
    /// Wrap explicit terms with no recipe.
    pub fn from_terms(terms: Vec<PauliString>) -> Self {
        BellOperator {
            terms,
            generator_recipe: None,
        }
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn m(&self) -> usize {
        self.terms.len()
    }

    pub fn n(&self) -> usize {
        self.terms.first().map_or(0, |t| t.n())
    }

    pub fn recipe(&self) -> Option<&[Vec<usize>]> {
        self.generator_recipe.as_deref()
    }
}

/// Build a Bell operator from commuting generators and index subsets. Each
/// term is the exact Pauli product of its subset, sign folded into the word.
pub fn build_bell(gens: &[PauliString], recipe: &[Vec<usize>]) -> Result<BellOperator> {
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            if !commutes(&gens[i], &gens[j])? {
                return Err(Error::AnticommutingGenerators { a: i, b: j });
            }
        }
    }
    let n = gens.first().map_or(0, |g| g.n());
    let mut terms = Vec::with_capacity(recipe.len());
    for subset in recipe {
        let mut acc = PauliString::identity(n);
        for &i in subset {
            let g = gens.get(i).ok_or(Error::IndexOutOfRange {
                index: i,
                n: gens.len(),
            })?;
            acc = multiply(&acc, g)?;
        }
        terms.push(acc);
    }
    Ok(BellOperator {
        terms,
        generator_recipe: Some(recipe.to_vec()),
    })
}

/// Local-realist bound data: `q` is the largest number of terms that take the
/// value +1 under any non-contextual assignment, and the bound is 2q - m.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LRBound {
    pub q: usize,
    pub bound: i64,
    /// One maximizing assignment, as ((site, letter), value) entries over the
    /// letters that actually occur. Sites are 1-based.
    pub witness_assignment: Vec<((usize, char), i8)>,
}

/// Exhaustive maximum of the Bell sum over non-contextual +-1 assignments to
/// every Pauli letter that actually appears at each site.
pub fn lr_bound(b: &BellOperator) -> Result<LRBound> {
    if b.m() == 0 {
        return Err(Error::InvalidConfig {
            reason: "Bell operator needs at least one term".into(),
        });
    }
    let n = b.n();
    // Collect used (site, letter) variables in a fixed order.
    let mut vars: Vec<(usize, PauliLetter)> = Vec::new();
    for site in 1..=n {
        for letter in [PauliLetter::X, PauliLetter::Y, PauliLetter::Z] {
            if b.terms.iter().any(|t| t.letter(site) == letter) {
                vars.push((site, letter));
            }
        }
    }
    let k = vars.len();
    if k >= 26 {
        return Err(Error::InvalidConfig {
            reason: format!("assignment search over 2^{k} used letters is too large"),
        });
    }
    // Per term: sign and bitmask over the variables it touches.
    let mut term_masks = Vec::with_capacity(b.m());
    for t in &b.terms {
        let mut mask = 0u32;
        for (v, &(site, letter)) in vars.iter().enumerate() {
            if t.letter(site) == letter {
                mask |= 1 << v;
            }
        }
        term_masks.push((t.sign()?, mask));
    }
    let m = b.m() as i64;
    let mut best = i64::MIN;
    let mut best_assign = 0u32;
    for assign in 0..(1u32 << k) {
        let mut total = 0i64;
        for &(sign, mask) in &term_masks {
            let neg = (assign & mask).count_ones() % 2 == 1;
            let v = if neg { -(sign as i64) } else { sign as i64 };
            total += v;
        }
        if total > best {
            best = total;
            best_assign = assign;
        }
    }
    let q = ((best + m) / 2) as usize;
    let witness_assignment = vars
        .iter()
        .enumerate()
        .map(|(v, &(site, letter))| {
            let val = if best_assign >> v & 1 == 1 { -1 } else { 1 };
            ((site, letter.as_char()), val)
        })
        .collect();
    Ok(LRBound {
        q,
        bound: best,
        witness_assignment,
    })
}

/// Sum of per-term expectations on a state.
pub fn quantum_value(b: &BellOperator, s: &StateVector) -> Result<f64> {
    if b.n() != s.n() {
        return Err(Error::DimensionMismatch {
            left: b.n(),
            right: s.n(),
        });
    }
    let mut total = 0.0;
    for t in &b.terms {
        total += s.expectation(t)?;
    }
    Ok(total)
}

/// Per-term expectations, in term order.
pub fn term_expectations(b: &BellOperator, s: &StateVector) -> Result<Vec<f64>> {
    b.terms.iter().map(|t| s.expectation(t)).collect()
}

/// Generator sign vectors whose basis states reach the algebraic maximum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegeneracySet {
    /// Solutions over the given generators; bit j set means generator j has
    /// eigenvalue -1.
    pub signatures: Vec<GraphSignature>,
    /// GF(2) rank of the recipe rows (the number of independent constraints).
    pub rank: usize,
    /// log2 of the degenerate-subspace dimension on the full n-qubit space:
    /// n - rank.
    pub subspace_dim_log2: usize,
}

impl DegeneracySet {
    pub fn subspace_dim(&self) -> usize {
        1 << self.subspace_dim_log2
    }
}

/// Enumerate every generator sign vector s for which all recipe products are
/// +1, i.e. every eigenstate with those generator eigenvalues attains the
/// quantum maximum m. The solution count is 2^(#gens - rank).
pub fn degenerate_signatures(b: &BellOperator, gens: &[PauliString]) -> Result<DegeneracySet> {
    let recipe = b.generator_recipe.as_ref().ok_or(Error::MissingRecipe)?;
    let k = gens.len();
    let rows: Vec<u64> = recipe
        .iter()
        .map(|subset| subset.iter().fold(0u64, |acc, &i| acc | 1 << i))
        .collect();
    let solutions = gf2_kernel(&rows, k);
    let signatures = solutions
        .iter()
        .map(|&mask| GraphSignature::from_mask(mask, k))
        .collect();
    let rank = rank_gf2(&b.terms)?;
    let n = b.n();
    Ok(DegeneracySet {
        signatures,
        rank,
        subspace_dim_log2: n - rank,
    })
}

/// True iff the operator product of all terms is exactly +identity while the
/// claimed per-word values multiply to -1: a value assignment logically
/// inconsistent with the operator identity.
pub fn verify_ghz_contradiction(b: &BellOperator, claimed_values: &[i8]) -> Result<bool> {
    if claimed_values.len() != b.m() {
        return Err(Error::DimensionMismatch {
            left: claimed_values.len(),
            right: b.m(),
        });
    }
    let mut prod = PauliString::identity(b.n());
    for t in &b.terms {
        prod = multiply(&prod, t)?;
    }
    let identity = prod == PauliString::identity(b.n());
    let value_product: i32 = claimed_values.iter().map(|&v| v as i32).product();
    Ok(identity && value_product == -1)
}
