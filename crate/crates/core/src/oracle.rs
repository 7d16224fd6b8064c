//! Semantics of applied-oracle words.
//!
//! Two exact views and one numeric view:
//!
//! - [`WordCode`]: `Σ w_{d+1}·n^d`, a bijective base-`n` numeral. It is the
//!   exponent picked up by the phase-oracle family below, so two words give
//!   the same phase iff they are the same word.
//! - [`PhaseOracleState`]: `U_j |d, x⟩ = e^{i·x·j·n^d} |d+1, x⟩` with the
//!   phase kept as an exact integer exponent.
//! - [`UnitaryMatrix`]: dense complex matrices of dimension at most 8.

use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 8;

/// Exact code of a word over `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WordCode {
    value: BigUint,
    n: usize,
    length: usize,
}

impl WordCode {
    pub fn empty(n: usize) -> Self {
        WordCode {
            value: BigUint::zero(),
            n,
            length: 0,
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn base(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    /// Recovers the word from the value alone.
    pub fn decode(&self) -> Vec<usize> {
        decode_bijective(&self.value, self.n)
    }

    /// Parses a decimal value back into a code over base `n`.
    pub fn from_decimal(s: &str, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let value = BigUint::parse_bytes(s.trim().as_bytes(), 10)
            .ok_or_else(|| Error::Parse(format!("not a decimal integer: {s:?}")))?;
        let length = decode_bijective(&value, n).len();
        Ok(WordCode { value, n, length })
    }

    fn push(&mut self, j: usize) {
        self.value += BigUint::from(j) * BigUint::from(self.n).pow(self.length as u32);
        self.length += 1;
    }
}

fn decode_bijective(value: &BigUint, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut v = value.clone();
    let base = BigUint::from(n);
    while !v.is_zero() {
        // digits live in 1..=n, so subtract one before taking the remainder
        let digit = ((&v - 1u32) % &base).to_usize().expect("digit fits") + 1;
        v = (v - digit) / &base;
        out.push(digit);
    }
    out
}

impl fmt::Display for WordCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Serialize for WordCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.value.to_string())
    }
}

fn check_symbol(j: usize, n: usize, position: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::SymbolOutOfRange {
            symbol: j,
            position,
            n,
        });
    }
    Ok(())
}

/// `Σ word[d]·n^d` for `d = 0..len`.
pub fn word_code(word: &[usize], n: usize) -> Result<WordCode> {
    if n == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let mut value = BigUint::zero();
    let mut power = BigUint::one();
    for (d, &j) in word.iter().enumerate() {
        check_symbol(j, n, d + 1)?;
        value += &power * j;
        power *= n;
    }
    Ok(WordCode {
        value,
        n,
        length: word.len(),
    })
}

/// `|d, x⟩` with the accumulated phase exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PhaseOracleState {
    counter: usize,
    bit: bool,
    /// Phase exponent; only grows when `bit` is set.
    code: WordCode,
}

impl PhaseOracleState {
    pub fn new(bit: bool, n: usize) -> Self {
        PhaseOracleState {
            counter: 0,
            bit,
            code: WordCode::empty(n),
        }
    }

    pub fn counter(&self) -> usize {
        self.counter
    }

    pub fn bit(&self) -> bool {
        self.bit
    }

    pub fn code(&self) -> &WordCode {
        &self.code
    }

    /// Applies a whole word, first symbol first.
    pub fn apply_word(&self, word: &[usize]) -> Result<PhaseOracleState> {
        word.iter()
            .try_fold(self.clone(), |s, &j| phase_oracle_apply(j, &s, s.code.n))
    }
}

/// `U_j |d, x⟩ = e^{i·x·j·n^d} |d+1, x⟩`.
pub fn phase_oracle_apply(j: usize, s: &PhaseOracleState, n: usize) -> Result<PhaseOracleState> {
    check_symbol(j, n, s.counter + 1)?;
    if s.code.n != n {
        return Err(Error::AlphabetMismatch {
            expected: s.code.n,
            found: n,
        });
    }
    let mut next = s.clone();
    if s.bit {
        next.code.push(j);
    } else {
        next.code.length += 1;
    }
    next.counter += 1;
    Ok(next)
}

/// Dense `dim × dim` complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl UnitaryMatrix {
    pub fn identity(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut entries = vec![Complex64::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::one();
        }
        Ok(UnitaryMatrix { dim, entries })
    }

    /// Builds from rows; does not check unitarity (see [`Self::unitarity_error`]).
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(UnitaryMatrix { dim, entries })
    }

    pub fn pauli_x() -> Self {
        let (o, l) = (Complex64::zero(), Complex64::one());
        UnitaryMatrix {
            dim: 2,
            entries: vec![o, l, l, o],
        }
    }

    pub fn pauli_z() -> Self {
        let (o, l) = (Complex64::zero(), Complex64::one());
        UnitaryMatrix {
            dim: 2,
            entries: vec![l, o, o, -l],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.entries.chunks(self.dim)
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![Complex64::zero(); d * d];
        for r in 0..d {
            for c in 0..d {
                entries[c * d + r] = self.entries[r * d + c].conj();
            }
        }
        UnitaryMatrix { dim: d, entries }
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        same_dim(self.dim, rhs.dim)?;
        let d = self.dim;
        let mut entries = vec![Complex64::zero(); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.entries[r * d + k];
                for c in 0..d {
                    entries[r * d + c] += a * rhs.entries[k * d + c];
                }
            }
        }
        Ok(UnitaryMatrix { dim: d, entries })
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        same_dim(self.dim, v.len())?;
        Ok(self
            .rows()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> Result<f64> {
        same_dim(self.dim, other.dim)?;
        Ok(max_abs_diff(&self.entries, &other.entries))
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.adjoint().mul(self).expect("same dim");
        let id = UnitaryMatrix::identity(self.dim).expect("valid dim");
        max_abs_diff(&prod.entries, &id.entries)
    }
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::DimensionOutOfRange { dim });
    }
    Ok(())
}

fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

impl Serialize for UnitaryMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .rows()
            .map(|r| r.iter().map(|z| [z.re + 0.0, z.im + 0.0]).collect()) // no negative zeros
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitaryMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        UnitaryMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

/// `U_{w_m} · … · U_{w_1}`: the first symbol acts first.
pub fn word_product(word: &[usize], gates: &[UnitaryMatrix]) -> Result<UnitaryMatrix> {
    let dim = gates.first().map(|g| g.dim).unwrap_or(1);
    for g in gates {
        same_dim(dim, g.dim)?;
    }
    let mut acc = UnitaryMatrix::identity(dim)?;
    for &j in word {
        if j == 0 || j > gates.len() {
            return Err(Error::GateIndexOutOfRange {
                index: j,
                count: gates.len(),
            });
        }
        acc = gates[j - 1].mul(&acc)?;
    }
    Ok(acc)
}

/// Seeded Haar-style unitary: Gram–Schmidt on complex Gaussian columns.
pub fn random_unitary(dim: usize, seed: u64) -> Result<UnitaryMatrix> {
    check_dim(dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    Complex64::new(re, im)
                })
                .collect()
        })
        .collect();
    for k in 0..dim {
        // two passes of modified Gram–Schmidt keep the error near 1e-15
        for _ in 0..2 {
            for prev in 0..k {
                let (done, rest) = cols.split_at_mut(k);
                let q = &done[prev];
                let proj: Complex64 = q.iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
                for (x, a) in rest[0].iter_mut().zip(q) {
                    *x -= proj * a;
                }
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[k].iter_mut() {
            *x /= norm;
        }
    }
    let mut entries = vec![Complex64::zero(); dim * dim];
    for (c, col) in cols.iter().enumerate() {
        for (r, z) in col.iter().enumerate() {
            entries[r * dim + c] = *z;
        }
    }
    Ok(UnitaryMatrix { dim, entries })
}

/// Seeded normalized complex vector.
pub fn random_state(dim: usize, seed: u64) -> Result<Vec<Complex64>> {
    check_dim(dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= norm);
    Ok(v)
}
