//! The order-`p` Fock space `W_p`: parameters, the grading, occupation-number
//! basis vectors and the diagonal data of the Cartan-type generators `H_i`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `n` even and `m` odd creation/annihilation pairs, statistics of order `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FockParams {
    pub n: usize,
    pub m: usize,
    pub p: usize,
}

impl FockParams {
    pub fn new(n: usize, m: usize, p: usize) -> Result<Self> {
        let params = Self { n, m, p };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n + self.m == 0 {
            return Err(Error::InvalidParams("n + m must be at least 1".into()));
        }
        Ok(())
    }

    /// Number of generator pairs, `n + m`.
    pub fn rank(&self) -> usize {
        self.n + self.m
    }

    /// The grading: 0 for `i <= n`, 1 for `n < i <= n + m`.
    pub fn theta(&self, i: usize) -> Result<u8> {
        if i > self.rank() {
            return Err(Error::IndexRange {
                index: i as i64,
                lo: 0,
                hi: self.rank() as i64,
            });
        }
        Ok(u8::from(i > self.n))
    }

    /// `(-1)^theta_i`
    pub fn parity_sign(&self, i: usize) -> Result<i64> {
        Ok(if self.theta(i)? == 0 { 1 } else { -1 })
    }

    pub(crate) fn check_generator(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexRange {
                index: i as i64,
                lo: 1,
                hi: self.rank() as i64,
            });
        }
        Ok(())
    }

    /// Closed form for `dim W_p`: sum over the number `f` of occupied odd
    /// orbitals of `C(m, f) * C(n + p - f, n)`.
    pub fn dim_formula(&self) -> u128 {
        (0..=self.m.min(self.p))
            .map(|f| binomial(self.m as u64, f as u64) * binomial((self.n + self.p - f) as u64, self.n as u64))
            .sum()
    }
}

impl fmt::Display for FockParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={} p={}", self.n, self.m, self.p)
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j + 1) as u128)
}

/// Occupation numbers `(r_1, ..., r_{n+m})` of a basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OccupationVector(pub Vec<u32>);

impl OccupationVector {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `r_i` for a 1-based generator index.
    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    /// `r_1 + ... + r_{i-1}`
    pub fn prefix_sum(&self, i: usize) -> u32 {
        self.0[..i - 1].iter().sum()
    }

    /// Occupation of the odd orbitals strictly before `i`.
    pub fn odd_prefix(&self, params: &FockParams, i: usize) -> u32 {
        self.0[..i - 1]
            .iter()
            .enumerate()
            .filter(|(k, _)| k + 1 > params.n)
            .map(|(_, r)| *r)
            .sum()
    }

    /// The vector with `r_i` changed by `delta`, if it stays nonnegative.
    pub fn shifted(&self, i: usize, delta: i32) -> Option<Self> {
        let v = self.0[i - 1] as i64 + delta as i64;
        if v < 0 {
            return None;
        }
        let mut r = self.0.clone();
        r[i - 1] = v as u32;
        Some(Self(r))
    }

    /// Whether `r` is an admissible label of `W_p`.
    pub fn is_admissible(&self, params: &FockParams) -> bool {
        self.0.len() == params.rank()
            && self.0[params.n..].iter().all(|&r| r <= 1)
            && self.total() as usize <= params.p
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, r) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

/// Lexicographically ordered basis of `W_p` with an inverse index.
#[derive(Debug, Clone)]
pub struct FockBasis {
    params: FockParams,
    states: Vec<OccupationVector>,
    index: HashMap<OccupationVector, usize>,
}

impl PartialEq for FockBasis {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
    }
}

impl FockBasis {
    /// All `r` with `r_i >= 0` (even), `r_i in {0,1}` (odd), `sum r <= p`, in
    /// ascending lexicographic order.
    pub fn enumerate(params: FockParams) -> Result<Self> {
        params.validate()?;
        let mut states = Vec::new();
        let mut current = vec![0u32; params.rank()];
        fill(&params, 0, params.p as u32, &mut current, &mut states);
        let index = states.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        Ok(Self { params, states, index })
    }

    pub fn params(&self) -> &FockParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[OccupationVector] {
        &self.states
    }

    pub fn state(&self, k: usize) -> &OccupationVector {
        &self.states[k]
    }

    pub fn index_of(&self, r: &OccupationVector) -> Option<usize> {
        self.index.get(r).copied()
    }

    /// Position of the vacuum; always 0 in lexicographic order.
    pub fn vacuum(&self) -> usize {
        0
    }

    /// Eigenvalue of `H_i` on `r`: `p - (-1)^theta_i r_i - sum_j r_j`.
    pub fn h_eigenvalue(&self, i: usize, r: &OccupationVector) -> Result<i64> {
        h_eigenvalue(&self.params, i, r)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "params": self.params,
            "states": self.states,
        })
    }
}

/// Eigenvalue of `H_i` on `r`: `p - (-1)^theta_i r_i - sum_j r_j`.
pub fn h_eigenvalue(params: &FockParams, i: usize, r: &OccupationVector) -> Result<i64> {
    params.check_generator(i)?;
    let sign = params.parity_sign(i)?;
    Ok(params.p as i64 - sign * r.get(i) as i64 - r.total() as i64)
}

fn fill(
    params: &FockParams,
    pos: usize,
    budget: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<OccupationVector>,
) {
    if pos == params.rank() {
        out.push(OccupationVector(current.clone()));
        return;
    }
    let cap = if pos < params.n { budget } else { budget.min(1) };
    for r in 0..=cap {
        current[pos] = r;
        fill(params, pos + 1, budget - r, current, out);
    }
    current[pos] = 0;
}
