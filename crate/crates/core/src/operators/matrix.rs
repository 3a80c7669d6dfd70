use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fockspace::FockBasis;
use crate::qarith::Scalar;

/// Square sparse matrix with entries kept in sorted `(row, col)` order.
/// Zero entries are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<S> {
    dim: usize,
    entries: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| S::one()).collect())
    }

    pub fn diagonal(values: Vec<S>) -> Self {
        let mut m = Self::zero(values.len());
        for (k, v) in values.into_iter().enumerate() {
            m.insert(k, k, v);
        }
        m
    }

    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, S)>>(dim: usize, triplets: I) -> Self {
        let mut m = Self::zero(dim);
        for (r, c, v) in triplets {
            m.accumulate(r, c, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets an entry, dropping it when zero.
    pub fn insert(&mut self, row: usize, col: usize, value: S) {
        assert!(row < self.dim && col < self.dim, "entry ({row}, {col}) outside {0}x{0}", self.dim);
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn accumulate(&mut self, row: usize, col: usize, value: S) {
        if value.is_zero() {
            return;
        }
        let updated = match self.entries.get(&(row, col)) {
            Some(old) => old.add(&value),
            None => value,
        };
        self.insert(row, col, updated);
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every stored entry satisfies `negligible`.
    pub fn all_entries(&self, negligible: impl Fn(&S) -> bool) -> bool {
        self.entries.values().all(negligible)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.entries.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (k, v) in &rhs.entries {
            out.accumulate(k.0, k.1, v.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (k, v) in &rhs.entries {
            out.accumulate(k.0, k.1, v.neg());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self::from_triplets(self.dim, self.iter().map(|(r, col, v)| (r, col, c.mul(v))))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim);
        let mut rows_of_rhs: Vec<Vec<(usize, &S)>> = vec![Vec::new(); self.dim];
        for ((r, c), v) in &rhs.entries {
            rows_of_rhs[*r].push((*c, v));
        }
        let mut out = Self::zero(self.dim);
        for ((i, k), a) in &self.entries {
            for (j, b) in &rows_of_rhs[*k] {
                out.accumulate(*i, *j, a.mul(b));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.dim, self.iter().map(|(r, c, v)| (c, r, v.clone())))
    }

    /// Keeps only column `col`.
    pub fn column(&self, col: usize) -> Self {
        Self::from_triplets(
            self.dim,
            self.iter().filter(|(_, c, _)| *c == col).map(|(r, c, v)| (r, c, v.clone())),
        )
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> SparseMatrix<T> {
        SparseMatrix::from_triplets(self.dim, self.iter().map(|(r, c, v)| (r, c, f(v))))
    }

    pub fn try_map<T: Scalar>(&self, mut f: impl FnMut(&S) -> Result<T>) -> Result<SparseMatrix<T>> {
        let mut out = SparseMatrix::zero(self.dim);
        for (r, c, v) in self.iter() {
            out.insert(r, c, f(v)?);
        }
        Ok(out)
    }

    /// Diagonal entries as a dense vector.
    pub fn diagonal_values(&self) -> Vec<S> {
        (0..self.dim).map(|k| self.get(k, k)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(r, c)| r == c)
    }

    pub fn entries_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.iter()
                .map(|(r, c, v)| serde_json::json!([r, c, v.to_json()]))
                .collect(),
        )
    }
}

/// A generator (or any derived operator) acting on a Fock space, with its
/// Z2 grade. `grade` is `None` for operators mixing even and odd parts.
#[derive(Debug, Clone)]
pub struct OperatorMatrix<S> {
    basis: Arc<FockBasis>,
    pub matrix: SparseMatrix<S>,
    pub grade: Option<u8>,
    pub label: String,
}

impl<S: Scalar> OperatorMatrix<S> {
    pub fn new(basis: Arc<FockBasis>, matrix: SparseMatrix<S>, grade: Option<u8>, label: impl Into<String>) -> Self {
        assert_eq!(basis.dim(), matrix.dim());
        Self {
            basis,
            matrix,
            grade,
            label: label.into(),
        }
    }

    pub fn zero(basis: Arc<FockBasis>) -> Self {
        let dim = basis.dim();
        Self::new(basis, SparseMatrix::zero(dim), Some(0), "0")
    }

    pub fn identity(basis: Arc<FockBasis>) -> Self {
        let dim = basis.dim();
        Self::new(basis, SparseMatrix::identity(dim), Some(0), "1")
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        if *self.basis != *other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    fn sum_grade(&self, other: &Self) -> Option<u8> {
        if self.is_zero() {
            other.grade
        } else if other.is_zero() || self.grade == other.grade {
            self.grade
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(Self::new(
            self.basis.clone(),
            self.matrix.add(&other.matrix),
            self.sum_grade(other),
            format!("({} + {})", self.label, other.label),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(Self::new(
            self.basis.clone(),
            self.matrix.sub(&other.matrix),
            self.sum_grade(other),
            format!("({} - {})", self.label, other.label),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        let grade = match (self.grade, other.grade) {
            (Some(a), Some(b)) => Some(a ^ b),
            _ => None,
        };
        Ok(Self::new(
            self.basis.clone(),
            self.matrix.mul(&other.matrix),
            grade,
            format!("{}*{}", self.label, other.label),
        ))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.basis.clone(), self.matrix.scale(c), self.grade, self.label.clone())
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::one().neg())
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> OperatorMatrix<T> {
        OperatorMatrix::new(self.basis.clone(), self.matrix.map(f), self.grade, self.label.clone())
    }

    pub fn try_map<T: Scalar>(&self, f: impl FnMut(&S) -> Result<T>) -> Result<OperatorMatrix<T>> {
        Ok(OperatorMatrix::new(
            self.basis.clone(),
            self.matrix.try_map(f)?,
            self.grade,
            self.label.clone(),
        ))
    }

    /// The action on the vacuum: this operator with all columns but the
    /// vacuum's removed.
    pub fn on_vacuum(&self) -> Self {
        Self::new(
            self.basis.clone(),
            self.matrix.column(self.basis.vacuum()),
            self.grade,
            format!("{}|0>", self.label),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::FockParams;
    use crate::qarith::Rational;

    fn ri(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn product_matches_dense_oracle() {
        let a = SparseMatrix::from_triplets(3, [(0, 1, ri(2)), (1, 2, ri(3)), (2, 0, ri(-1))]);
        let b = SparseMatrix::from_triplets(3, [(1, 1, ri(5)), (2, 0, ri(7)), (0, 2, ri(1))]);
        let dense = |m: &SparseMatrix<Rational>| -> Vec<Vec<Rational>> {
            (0..3).map(|r| (0..3).map(|c| m.get(r, c)).collect()).collect()
        };
        let (da, db) = (dense(&a), dense(&b));
        let prod = a.mul(&b);
        for r in 0..3 {
            for c in 0..3 {
                let expect: Rational = (0..3).map(|k| &da[r][k] * &db[k][c]).sum();
                assert_eq!(prod.get(r, c), expect);
            }
        }
    }

    #[test]
    fn zero_entries_are_dropped() {
        let mut m = SparseMatrix::from_triplets(2, [(0, 0, ri(1))]);
        m.accumulate(0, 0, ri(-1));
        assert!(m.is_zero());
        m.insert(1, 1, ri(0));
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn grade_arithmetic() {
        let basis = Arc::new(FockBasis::enumerate(FockParams::new(1, 1, 1).unwrap()).unwrap());
        let odd = OperatorMatrix::new(
            basis.clone(),
            SparseMatrix::from_triplets(3, [(0, 1, ri(1))]),
            Some(1),
            "x",
        );
        let even = OperatorMatrix::new(basis.clone(), SparseMatrix::identity(3), Some(0), "1");
        assert_eq!(odd.mul(&odd).unwrap().grade, Some(0));
        assert_eq!(odd.mul(&even).unwrap().grade, Some(1));
        assert_eq!(odd.add(&even).unwrap().grade, None);
        let zero = OperatorMatrix::<Rational>::zero(basis.clone());
        assert_eq!(odd.add(&zero).unwrap().grade, Some(1));

        let other = Arc::new(FockBasis::enumerate(FockParams::new(1, 1, 2).unwrap()).unwrap());
        let foreign = OperatorMatrix::<Rational>::zero(other);
        assert_eq!(odd.add(&foreign).unwrap_err(), Error::BasisMismatch);
    }
}
