//! Exact algebra of signed multi-qubit Pauli words.
//!
//! A [`PauliString`] is a phase in {+1, +i, -1, -i} together with one letter
//! per site. Multiplication tracks the phase exactly (integer exponent of i
//! modulo 4, no floating point), commutation is the symplectic inner product
//! parity, and independence questions are GF(2) rank computations on the
//! phase-stripped symplectic rows.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Maximum site count representable by the bit-packed symplectic form.
pub const MAX_SITES: usize = 64;

/// Single-site Pauli letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub fn x_bit(self) -> bool {
        matches!(self, PauliLetter::X | PauliLetter::Y)
    }

    pub fn z_bit(self) -> bool {
        matches!(self, PauliLetter::Z | PauliLetter::Y)
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliLetter::I,
            (true, false) => PauliLetter::X,
            (true, true) => PauliLetter::Y,
            (false, true) => PauliLetter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    /// Two letters commute unless both are non-identity and distinct.
    pub fn commutes_with(self, other: PauliLetter) -> bool {
        self == PauliLetter::I || other == PauliLetter::I || self == other
    }
}

/// Fourth root of unity i^k, tracked as the exponent k modulo 4.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u8) -> Self {
        Phase(k % 4)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn times(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub fn inverse(self) -> Phase {
        Phase((4 - self.0) % 4)
    }

    /// True for +1 and -1.
    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// +1 or -1 when the phase is real.
    pub fn sign(self) -> Option<i8> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "+"),
            1 => write!(f, "+i"),
            2 => write!(f, "-"),
            _ => write!(f, "-i"),
        }
    }
}

/// Product of two single-site letters: (phase, resulting letter).
fn letter_mul(a: PauliLetter, b: PauliLetter) -> (Phase, PauliLetter) {
    use PauliLetter::*;
    if a == I {
        return (Phase::ONE, b);
    }
    if b == I {
        return (Phase::ONE, a);
    }
    if a == b {
        return (Phase::ONE, I);
    }
    // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
    let (phase, c) = match (a, b) {
        (X, Y) => (Phase::I, Z),
        (Y, Z) => (Phase::I, X),
        (Z, X) => (Phase::I, Y),
        (Y, X) => (Phase::MINUS_I, Z),
        (Z, Y) => (Phase::MINUS_I, X),
        (X, Z) => (Phase::MINUS_I, Y),
        _ => unreachable!(),
    };
    (phase, c)
}

/// Signed n-site Pauli word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PauliString {
    phase: Phase,
    letters: Vec<PauliLetter>,
}

impl PauliString {
    pub fn new(phase: Phase, letters: Vec<PauliLetter>) -> Self {
        PauliString { phase, letters }
    }

    pub fn identity(n: usize) -> Self {
        PauliString {
            phase: Phase::ONE,
            letters: vec![PauliLetter::I; n],
        }
    }

    /// Single non-identity letter at `site` (1-based) on an n-site word.
    pub fn single(n: usize, site: usize, letter: PauliLetter) -> Result<Self> {
        if site == 0 || site > n {
            return Err(Error::IndexOutOfRange { index: site, n });
        }
        let mut letters = vec![PauliLetter::I; n];
        letters[site - 1] = letter;
        Ok(PauliString {
            phase: Phase::ONE,
            letters,
        })
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn letters(&self) -> &[PauliLetter] {
        &self.letters
    }

    /// Letter at 1-based site index.
    pub fn letter(&self, site: usize) -> PauliLetter {
        self.letters[site - 1]
    }

    pub fn is_identity_word(&self) -> bool {
        self.letters.iter().all(|&l| l == PauliLetter::I)
    }

    /// Hermitian words carry phase +1 or -1.
    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    /// The folded sign of a Hermitian word.
    pub fn sign(&self) -> Result<i8> {
        self.phase.sign().ok_or_else(|| Error::NonHermitianPhase {
            phase: self.phase.to_string(),
        })
    }

    /// Same word with phase replaced by +1.
    pub fn unsigned(&self) -> PauliString {
        PauliString {
            phase: Phase::ONE,
            letters: self.letters.clone(),
        }
    }

    pub fn negated(&self) -> PauliString {
        PauliString {
            phase: self.phase.times(Phase::MINUS_ONE),
            letters: self.letters.clone(),
        }
    }

    pub fn symplectic(&self) -> Result<SymplecticForm> {
        SymplecticForm::from_letters(&self.letters)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            Phase::ONE => {}
            p => write!(f, "{p}")?,
        }
        for l in &self.letters {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_err = |reason: &str| Error::ParseError {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let mut rest = s.trim();
        let mut phase = Phase::ONE;
        for (token, p) in [
            ("+i", Phase::I),
            ("-i", Phase::MINUS_I),
            ("i", Phase::I),
            ("+", Phase::ONE),
            ("-", Phase::MINUS_ONE),
        ] {
            if let Some(tail) = rest.strip_prefix(token) {
                phase = p;
                rest = tail;
                break;
            }
        }
        if rest.is_empty() {
            return Err(parse_err("no letters"));
        }
        let letters = rest
            .chars()
            .map(|c| PauliLetter::from_char(c).ok_or_else(|| parse_err("letters must be I, X, Y or Z")))
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString { phase, letters })
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Phase-stripped GF(2) view of a Pauli word: X -> (x=1,z=0), Z -> (0,1),
/// Y -> (1,1), I -> (0,0), site 1 in bit 0.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SymplecticForm {
    pub n: usize,
    pub xbits: u64,
    pub zbits: u64,
}

impl SymplecticForm {
    pub fn from_letters(letters: &[PauliLetter]) -> Result<Self> {
        let n = letters.len();
        if n > MAX_SITES {
            return Err(Error::SizeLimit { n, limit: MAX_SITES });
        }
        let mut xbits = 0u64;
        let mut zbits = 0u64;
        for (i, l) in letters.iter().enumerate() {
            if l.x_bit() {
                xbits |= 1 << i;
            }
            if l.z_bit() {
                zbits |= 1 << i;
            }
        }
        Ok(SymplecticForm { n, xbits, zbits })
    }

    pub fn to_letters(self) -> Vec<PauliLetter> {
        (0..self.n)
            .map(|i| PauliLetter::from_bits(self.xbits >> i & 1 == 1, self.zbits >> i & 1 == 1))
            .collect()
    }

    /// Row vector [x | z] used for rank computations.
    pub fn row(self) -> u128 {
        (self.xbits as u128) | ((self.zbits as u128) << self.n)
    }

    /// Symplectic inner product parity; 0 means the words commute.
    pub fn product_parity(self, other: SymplecticForm) -> u32 {
        ((self.xbits & other.zbits).count_ones() + (self.zbits & other.xbits).count_ones()) % 2
    }
}

fn check_equal_length(a: &PauliString, b: &PauliString) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::LengthMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(())
}

/// Exact operator product ab with accumulated phase.
pub fn multiply(a: &PauliString, b: &PauliString) -> Result<PauliString> {
    check_equal_length(a, b)?;
    let mut phase = a.phase.times(b.phase);
    let mut letters = Vec::with_capacity(a.n());
    for (&la, &lb) in a.letters.iter().zip(&b.letters) {
        let (p, l) = letter_mul(la, lb);
        phase = phase.times(p);
        letters.push(l);
    }
    Ok(PauliString { phase, letters })
}

/// Ordered product of several words; identity for an empty slice is not
/// defined without a site count, so the caller supplies `n`.
pub fn product(words: &[&PauliString], n: usize) -> Result<PauliString> {
    let mut acc = PauliString::identity(n);
    for w in words {
        acc = multiply(&acc, w)?;
    }
    Ok(acc)
}

/// True iff ab = ba, via symplectic inner product parity.
pub fn commutes(a: &PauliString, b: &PauliString) -> Result<bool> {
    check_equal_length(a, b)?;
    Ok(a.symplectic()?.product_parity(b.symplectic()?) == 0)
}

/// GF(2) rank of the phase-stripped symplectic rows.
pub fn rank_gf2(set: &[PauliString]) -> Result<usize> {
    if set.is_empty() {
        return Ok(0);
    }
    let n = set[0].n();
    for s in set {
        if s.n() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: s.n(),
            });
        }
    }
    let rows: Vec<u128> = set
        .iter()
        .map(|s| s.symplectic().map(|f| f.row()))
        .collect::<Result<_>>()?;
    Ok(gf2_rank(&rows))
}

fn gf2_rank(rows: &[u128]) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    for &row in rows {
        let mut r = row;
        for &b in &basis {
            let pivot = 1u128 << (127 - b.leading_zeros());
            if r & pivot != 0 {
                r ^= b;
            }
        }
        if r != 0 {
            basis.push(r);
        }
    }
    basis.len()
}

/// Solve the linear system over GF(2): each row is (coefficient mask over k
/// unknowns, rhs bit). Returns one solution (free unknowns set to 0).
pub(crate) fn gf2_solve(rows: &[(u64, bool)], k: usize) -> Option<u64> {
    let mut eqs: Vec<(u64, bool)> = rows.to_vec();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (column, equation index)
    let mut next = 0usize;
    for col in 0..k {
        let Some(idx) = (next..eqs.len()).find(|&i| eqs[i].0 >> col & 1 == 1) else {
            continue;
        };
        eqs.swap(next, idx);
        let (mask, rhs) = eqs[next];
        for (i, eq) in eqs.iter_mut().enumerate() {
            if i != next && eq.0 >> col & 1 == 1 {
                eq.0 ^= mask;
                eq.1 ^= rhs;
            }
        }
        pivots.push((col, next));
        next += 1;
    }
    // Inconsistent if a zero row demands 1.
    if eqs[next..].iter().any(|&(m, r)| m == 0 && r) {
        return None;
    }
    let mut solution = 0u64;
    for &(col, row) in &pivots {
        if eqs[row].1 {
            solution |= 1 << col;
        }
    }
    Some(solution)
}

/// All solutions of the homogeneous system (rows are coefficient masks over
/// k unknowns), sorted ascending. Size is 2^(k - rank).
pub(crate) fn gf2_kernel(rows: &[u64], k: usize) -> Vec<u64> {
    let mut eqs: Vec<u64> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for col in 0..k {
        let Some(idx) = (next..eqs.len()).find(|&i| eqs[i] >> col & 1 == 1) else {
            continue;
        };
        eqs.swap(next, idx);
        let mask = eqs[next];
        for (i, eq) in eqs.iter_mut().enumerate() {
            if i != next && *eq >> col & 1 == 1 {
                *eq ^= mask;
            }
        }
        pivots.push(col);
        next += 1;
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<u64> = Vec::new();
    for &f in &free {
        let mut v = 1u64 << f;
        for (row, &col) in pivots.iter().enumerate() {
            if eqs[row] >> f & 1 == 1 {
                v |= 1 << col;
            }
        }
        basis.push(v);
    }
    let mut all: Vec<u64> = (0..1u64 << basis.len())
        .map(|combo| {
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| combo >> i & 1 == 1)
                .fold(0u64, |acc, (_, &b)| acc ^ b)
        })
        .collect();
    all.sort_unstable();
    all
}

/// Writing `h` as a product of the given words, found by a GF(2) solve on the
/// symplectic rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorExpression {
    /// 0-based indices into the generator list.
    pub indices: Vec<usize>,
    /// Residual sign: h = sign * product of the indexed generators.
    pub sign: i8,
}

/// Express `h` as a subset product of `gens` up to sign. Returns `None` when
/// `h` is outside the span. The subset is one solution of the GF(2) system;
/// for dependent generator sets other subsets may exist.
pub fn express_in_generators(
    h: &PauliString,
    gens: &[PauliString],
) -> Result<Option<GeneratorExpression>> {
    let n = h.n();
    for g in gens {
        if g.n() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: g.n(),
            });
        }
    }
    let target = h.symplectic()?;
    let forms: Vec<SymplecticForm> = gens
        .iter()
        .map(|g| g.symplectic())
        .collect::<Result<_>>()?;
    // One equation per symplectic bit position.
    let mut rows: Vec<(u64, bool)> = Vec::with_capacity(2 * n);
    for bit in 0..(2 * n) {
        let mut mask = 0u64;
        for (j, f) in forms.iter().enumerate() {
            if f.row() >> bit & 1 == 1 {
                mask |= 1 << j;
            }
        }
        rows.push((mask, target.row() >> bit & 1 == 1));
    }
    let Some(solution) = gf2_solve(&rows, gens.len()) else {
        return Ok(None);
    };
    let indices: Vec<usize> = (0..gens.len()).filter(|&j| solution >> j & 1 == 1).collect();
    let chosen: Vec<&PauliString> = indices.iter().map(|&j| &gens[j]).collect();
    let prod = product(&chosen, n)?;
    debug_assert_eq!(prod.letters, h.letters);
    let ratio = h.phase.times(prod.phase.inverse());
    match ratio.sign() {
        Some(sign) => Ok(Some(GeneratorExpression { indices, sign })),
        None => Ok(None),
    }
}

/// Find a Pauli word with a prescribed commutation pattern against `gens`:
/// entry `true` means the result must anticommute with that generator.
/// Returns a phase +1 word, or `None` when the pattern is unrealizable.
pub fn word_with_commutation_pattern(
    gens: &[PauliString],
    anticommute: &[bool],
) -> Result<Option<PauliString>> {
    if gens.is_empty() {
        return Ok(None);
    }
    let n = gens[0].n();
    let forms: Vec<SymplecticForm> = gens
        .iter()
        .map(|g| g.symplectic())
        .collect::<Result<_>>()?;
    // Unknowns: x bits 0..n, z bits n..2n of the sought word y.
    // Constraint per generator g: parity(g.z & y.x) + parity(g.x & y.z) = flag.
    let rows: Vec<(u64, bool)> = forms
        .iter()
        .zip(anticommute)
        .map(|(f, &flag)| (f.zbits | (f.xbits << n), flag))
        .collect();
    Ok(gf2_solve(&rows, 2 * n).map(|sol| {
        let form = SymplecticForm {
            n,
            xbits: sol & ((1u64 << n) - 1),
            zbits: sol >> n,
        };
        PauliString::new(Phase::ONE, form.to_letters())
    }))
}
