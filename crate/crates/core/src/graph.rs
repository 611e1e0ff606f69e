//! Graphs, their stabilizer generators, canonical graph states and the full
//! graph-state basis.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString, Phase};
use crate::state::{StateVector, MAX_QUBITS};

/// Simple undirected graph on vertices 1..=n, no self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph {
                reason: "graph needs at least one vertex".into(),
            });
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph {
                    reason: format!("self-loop at vertex {a}"),
                });
            }
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidGraph {
                    reason: format!("edge ({a},{b}) outside 1..={n}"),
                });
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }
}

/// JSON shape: {"n": 4, "edges": [[1,2],[2,3]]}
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges.iter().copied().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::new(repr.n, &repr.edges).map_err(serde::de::Error::custom)
    }
}

/// Eigenvalue pattern of a graph basis state: bit x_j means generator j has
/// eigenvalue (-1)^{x_j}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphSignature {
    bits: Vec<bool>,
}

impl GraphSignature {
    pub fn new(bits: Vec<bool>) -> Self {
        GraphSignature { bits }
    }

    pub fn from_bit_string(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::ParseError {
                    text: s.to_string(),
                    reason: "signature must be a 0/1 string".into(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GraphSignature { bits })
    }

    /// Low bit = generator 1, matching the GF(2) solver layout.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        GraphSignature {
            bits: (0..len).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit(&self, j: usize) -> bool {
        self.bits[j]
    }

    /// Sign view s_j = (-1)^{x_j}.
    pub fn signs(&self) -> Vec<i8> {
        self.bits.iter().map(|&b| if b { -1 } else { 1 }).collect()
    }
}

impl fmt::Display for GraphSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl Serialize for GraphSignature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GraphSignature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GraphSignature::from_bit_string(&s).map_err(serde::de::Error::custom)
    }
}

/// Stabilizer generators g_j = X_j (x) Z_k over the neighborhood of j.
pub fn generators(g: &Graph) -> Vec<PauliString> {
    (1..=g.n())
        .map(|j| {
            let mut letters = vec![PauliLetter::I; g.n()];
            letters[j - 1] = PauliLetter::X;
            for k in g.neighbors(j) {
                letters[k - 1] = PauliLetter::Z;
            }
            PauliString::new(Phase::ONE, letters)
        })
        .collect()
}

/// The canonical graph state: controlled-phase applied across every edge of
/// |+>^n. Each CZ is a diagonal sign flip on amplitudes with both endpoint
/// bits set.
pub fn canonical_state(g: &Graph) -> Result<StateVector> {
    if g.n() > MAX_QUBITS {
        return Err(Error::SizeLimit {
            n: g.n(),
            limit: MAX_QUBITS,
        });
    }
    let n = g.n();
    let dim = 1usize << n;
    let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    let mut amps = vec![amp; dim];
    for (a, b) in g.edges() {
        let ma = 1usize << (n - a);
        let mb = 1usize << (n - b);
        for (idx, v) in amps.iter_mut().enumerate() {
            if idx & ma != 0 && idx & mb != 0 {
                *v = -*v;
            }
        }
    }
    StateVector::from_amplitudes(n, amps)
}

/// Graph basis state: Z_j^{x_j} applied to the canonical state. Generator j
/// then has eigenvalue (-1)^{x_j}.
pub fn basis_state(g: &Graph, x: &GraphSignature) -> Result<StateVector> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: g.n(),
        });
    }
    let mut letters = vec![PauliLetter::I; g.n()];
    for (j, &bit) in x.bits().iter().enumerate() {
        if bit {
            letters[j] = PauliLetter::Z;
        }
    }
    canonical_state(g)?.apply_pauli(&PauliString::new(Phase::ONE, letters))
}

/// Path graph with edges (j, j+1).
pub fn linear_cluster(n: usize) -> Result<Graph> {
    let edges: Vec<(usize, usize)> = (1..n).map(|j| (j, j + 1)).collect();
    Graph::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{commutes, rank_gf2};

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn four_path_generators() {
        let g = linear_cluster(4).unwrap();
        let gens = generators(&g);
        assert_eq!(gens, ["XZII", "ZXZI", "IZXZ", "IIZX"].map(p).to_vec());
    }

    #[test]
    fn single_vertex_generator() {
        let g = Graph::new(1, &[]).unwrap();
        assert_eq!(generators(&g), vec![p("X")]);
    }

    #[test]
    fn three_star_generators() {
        let g = Graph::new(3, &[(1, 2), (1, 3)]).unwrap();
        assert_eq!(generators(&g), ["XZZ", "ZXI", "ZIX"].map(p).to_vec());
    }

    #[test]
    fn generators_commute_and_are_independent() {
        let g = Graph::new(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
        let gens = generators(&g);
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                assert!(commutes(&gens[i], &gens[j]).unwrap());
            }
        }
        assert_eq!(rank_gf2(&gens).unwrap(), 5);
    }

    #[test]
    fn canonical_state_is_stabilized() {
        let g = Graph::new(5, &[(1, 2), (1, 3), (2, 4), (3, 5)]).unwrap();
        let s = canonical_state(&g).unwrap();
        for gen in generators(&g) {
            assert!((s.expectation(&gen).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn edgeless_graph_gives_plus_states() {
        let g = Graph::new(3, &[]).unwrap();
        let s = canonical_state(&g).unwrap();
        let plus = StateVector::plus(3).unwrap();
        assert!(s.equal_up_to_global_phase(&plus, 1e-12).unwrap());
    }

    #[test]
    fn basis_state_eigenvalues_follow_signature() {
        let g = linear_cluster(4).unwrap();
        let x = GraphSignature::from_bit_string("0101").unwrap();
        let s = basis_state(&g, &x).unwrap();
        let gens = generators(&g);
        for (j, gen) in gens.iter().enumerate() {
            let want = if x.bit(j) { -1.0 } else { 1.0 };
            assert!((s.expectation(gen).unwrap() - want).abs() < 1e-10);
        }
    }

    #[test]
    fn linear_cluster_edges_and_small_cases() {
        let g = linear_cluster(2).unwrap();
        let s = canonical_state(&g).unwrap();
        assert!((s.expectation(&p("XZ")).unwrap() - 1.0).abs() < 1e-12);
        assert!((s.expectation(&p("ZX")).unwrap() - 1.0).abs() < 1e-12);
        let one = linear_cluster(1).unwrap();
        let s1 = canonical_state(&one).unwrap();
        assert!(s1
            .equal_up_to_global_phase(&StateVector::plus(1).unwrap(), 1e-12)
            .unwrap());
        assert!(linear_cluster(0).is_err());
    }

    #[test]
    fn graph_json_round_trip() {
        let g = Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&text).unwrap();
        assert_eq!(g, back);
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }
}
