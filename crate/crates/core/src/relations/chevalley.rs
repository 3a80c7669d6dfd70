//! Reconstruction of the Chevalley generators `h_i, e_i, f_i, k_i` on `W_p`
//! from the creation/annihilation generators, at a rational value of `q`.
//!
//! `h_i` follows from inverting `H_i = h_1 + (-1)^{theta_1} h_2 + ... +
//! (-1)^{theta_{i-1}} h_i`. For `i >= 2`, `e_i` and `f_i` are the unique
//! solutions of `a_i^- = [a_{i-1}^-, e_i]_{1/q_{i-1}}` and
//! `a_i^+ = [f_i, a_{i-1}^+]_{q_{i-1}}` among operators of the right weight.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::json;

use super::linsolve::{Solution, SparseSystem};
use super::order::cartan_entry;
use crate::error::{Error, Result};
use crate::fockspace::{FockBasis, FockParams, OccupationVector};
use crate::operators::{
    matrix_to_json, Generators, OperatorMatrix, RationalSample, Realization, SparseMatrix,
};
use crate::qarith::{LaurentPoly, Rational, Scalar};

/// Which Chevalley family a relation or a solve concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChevalleyFamily {
    E,
    F,
}

/// Eigenvalue of the Chevalley `h_j` on `r`:
/// `(-1)^{theta_{j-1}} (H_j(r) - H_{j-1}(r))` with `H_0 = 0`.
pub fn chevalley_h_eigenvalue(params: &FockParams, j: usize, r: &OccupationVector) -> Result<i64> {
    let big_h = |i: usize| -> Result<i64> {
        if i == 0 {
            Ok(0)
        } else {
            crate::fockspace::h_eigenvalue(params, i, r)
        }
    };
    Ok(params.parity_sign(j - 1)? * (big_h(j)? - big_h(j - 1)?))
}

/// `q_i = q^{1 - 2 theta_i}` as an exponent of `q`.
pub fn q_index_exponent(params: &FockParams, i: usize) -> Result<i64> {
    Ok(1 - 2 * params.theta(i)? as i64)
}

/// The Chevalley generators at one rational sample of `q`, together with the
/// CAG-layer generators they were solved from.
#[derive(Debug, Clone)]
pub struct ChevalleySet {
    sample: RationalSample,
    gens: Generators<Rational>,
    h: Vec<OperatorMatrix<Rational>>,
    e: Vec<OperatorMatrix<Rational>>,
    f: Vec<OperatorMatrix<Rational>>,
    k: Vec<OperatorMatrix<Rational>>,
    k_bar: Vec<OperatorMatrix<Rational>>,
}

impl ChevalleySet {
    pub fn sample(&self) -> &RationalSample {
        &self.sample
    }

    pub fn q0(&self) -> &Rational {
        self.sample.q0()
    }

    pub fn gens(&self) -> &Generators<Rational> {
        &self.gens
    }

    pub fn params(&self) -> &FockParams {
        self.gens.params()
    }

    fn slot<'a>(&self, v: &'a [OperatorMatrix<Rational>], i: usize) -> Result<&'a OperatorMatrix<Rational>> {
        self.params().check_generator(i)?;
        Ok(&v[i - 1])
    }

    pub fn h(&self, i: usize) -> Result<&OperatorMatrix<Rational>> {
        self.slot(&self.h, i)
    }

    pub fn e(&self, i: usize) -> Result<&OperatorMatrix<Rational>> {
        self.slot(&self.e, i)
    }

    pub fn f(&self, i: usize) -> Result<&OperatorMatrix<Rational>> {
        self.slot(&self.f, i)
    }

    pub fn family(&self, which: ChevalleyFamily, i: usize) -> Result<&OperatorMatrix<Rational>> {
        match which {
            ChevalleyFamily::E => self.e(i),
            ChevalleyFamily::F => self.f(i),
        }
    }

    /// `k_i` for `power = 1`, `k_i^{-1}` for `power = -1`.
    pub fn k(&self, i: usize, power: i64) -> Result<&OperatorMatrix<Rational>> {
        match power {
            1 => self.slot(&self.k, i),
            -1 => self.slot(&self.k_bar, i),
            _ => Err(Error::IndexRange { index: power, lo: -1, hi: 1 }),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mode = self.sample.mode();
        let list = |v: &[OperatorMatrix<Rational>]| -> Vec<serde_json::Value> {
            v.iter().map(|m| matrix_to_json(m, &mode)).collect()
        };
        json!({
            "params": self.params(),
            "q0": self.q0().to_string(),
            "h": list(&self.h),
            "e": list(&self.e),
            "f": list(&self.f),
            "k": list(&self.k),
        })
    }
}

/// Solves `[A, X]_x = B` (family `E`) or `[X, A]_x = B` (family `F`) for `X`
/// supported on the entries `allowed`.
fn solve_bracket_equation(
    basis: &Arc<FockBasis>,
    a: &SparseMatrix<Rational>,
    b: &SparseMatrix<Rational>,
    x: &Rational,
    which: ChevalleyFamily,
    allowed: &[(usize, usize)],
    what: &str,
) -> Result<SparseMatrix<Rational>> {
    let dim = basis.dim();
    let mut a_cols: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); dim];
    let mut a_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); dim];
    for (r, c, v) in a.iter() {
        a_cols[c].push((r, v));
        a_rows[r].push((c, v));
    }
    // equation per output entry: coefficient of each unknown
    let mut eqs: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
    let mut add = |entry: (usize, usize), u: usize, v: Rational| {
        let row = eqs.entry(entry).or_default();
        let slot = row.entry(u).or_insert_with(Rational::zero);
        *slot = slot.add(&v);
    };
    let neg_x = x.neg();
    for (u, &(row_r, col_c)) in allowed.iter().enumerate() {
        // A E_{RC}: column C gets A[:, R];  E_{RC} A: row R gets A[C, :]
        let (left, right) = match which {
            ChevalleyFamily::E => (Rational::one(), neg_x.clone()),
            ChevalleyFamily::F => (neg_x.clone(), Rational::one()),
        };
        for &(r, v) in &a_cols[row_r] {
            add((r, col_c), u, left.mul(v));
        }
        for &(c, v) in &a_rows[col_c] {
            add((row_r, c), u, right.mul(v));
        }
    }
    for (r, c, _) in b.iter() {
        eqs.entry((r, c)).or_default();
    }
    let mut system = SparseSystem::new(allowed.len());
    for (entry, coeffs) in eqs {
        system.push(coeffs, b.get(entry.0, entry.1));
    }
    match system.solve() {
        Solution::Unique(x) => Ok(SparseMatrix::from_triplets(
            dim,
            allowed.iter().zip(x).map(|(&(r, c), v)| (r, c, v)),
        )),
        Solution::Underdetermined(d) => Err(Error::Underdetermined(what.to_string(), d)),
        Solution::Inconsistent => Err(Error::Inconsistent(what.to_string())),
    }
}

/// Reconstructs `h_i, e_i, f_i, k_i` at the rational sample `q0`.
pub fn reconstruct_chevalley(exact: &Generators<LaurentPoly>, q0: &Rational) -> Result<ChevalleySet> {
    let sample = RationalSample::new(q0.clone())?;
    let gens = exact.realize(&sample)?;
    let basis = gens.basis().clone();
    let params = *basis.params();
    let rank = params.rank();

    // h eigenvalues per generator, per state
    let h_vals: Vec<Vec<i64>> = (1..=rank)
        .map(|j| {
            basis
                .states()
                .iter()
                .map(|r| chevalley_h_eigenvalue(&params, j, r))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let diag = |j: usize, f: &dyn Fn(i64) -> Result<Rational>, label: String| -> Result<OperatorMatrix<Rational>> {
        let values = h_vals[j - 1].iter().map(|&v| f(v)).collect::<Result<Vec<_>>>()?;
        Ok(OperatorMatrix::new(basis.clone(), SparseMatrix::diagonal(values), Some(0), label))
    };
    let mut h = Vec::with_capacity(rank);
    let mut k = Vec::with_capacity(rank);
    let mut k_bar = Vec::with_capacity(rank);
    for j in 1..=rank {
        h.push(diag(j, &|v| Ok(Rational::from_i64(v)), format!("h_{j}"))?);
        k.push(diag(j, &|v| sample.q_pow(v), format!("k_{j}"))?);
        k_bar.push(diag(j, &|v| sample.q_pow(-v), format!("kbar_{j}"))?);
    }

    // weight lookup: h-eigenvalue vector of each state
    let weights: Vec<Vec<i64>> = (0..basis.dim()).map(|s| h_vals.iter().map(|hv| hv[s]).collect()).collect();
    let mut by_weight: HashMap<&[i64], Vec<usize>> = HashMap::new();
    for (s, w) in weights.iter().enumerate() {
        by_weight.entry(w.as_slice()).or_default().push(s);
    }

    let grade = |i: usize| -> Result<u8> { Ok((params.theta(i - 1)? + params.theta(i)?) % 2) };
    let mut e = vec![gens.a_minus(1)?.clone().with_label("e_1")];
    let mut f = vec![gens.a_plus(1)?.clone().with_label("f_1")];
    for i in 2..=rank {
        let qi = q_index_exponent(&params, i - 1)?;
        for which in [ChevalleyFamily::E, ChevalleyFamily::F] {
            let sign = if which == ChevalleyFamily::E { 1 } else { -1 };
            // X maps weight w to w + sign * alpha_{., i}
            let shift: Vec<i64> = (1..=rank)
                .map(|j| cartan_entry(&params, j, i).map(|a| sign * a))
                .collect::<Result<_>>()?;
            let mut allowed = Vec::new();
            for (col, w) in weights.iter().enumerate() {
                let target: Vec<i64> = w.iter().zip(&shift).map(|(a, b)| a + b).collect();
                if let Some(rows) = by_weight.get(target.as_slice()) {
                    allowed.extend(rows.iter().map(|&row| (row, col)));
                }
            }
            allowed.sort_unstable();
            let (a, b, x, label) = match which {
                ChevalleyFamily::E => (gens.a_minus(i - 1)?, gens.a_minus(i)?, sample.q_pow(-qi)?, format!("e_{i}")),
                ChevalleyFamily::F => (gens.a_plus(i - 1)?, gens.a_plus(i)?, sample.q_pow(qi)?, format!("f_{i}")),
            };
            let solved = solve_bracket_equation(&basis, &a.matrix, &b.matrix, &x, which, &allowed, &label)?;
            let op = OperatorMatrix::new(basis.clone(), solved, Some(grade(i)?), label);
            match which {
                ChevalleyFamily::E => e.push(op),
                ChevalleyFamily::F => f.push(op),
            }
        }
    }
    Ok(ChevalleySet {
        sample,
        gens,
        h,
        e,
        f,
        k,
        k_bar,
    })
}
