//! Sparse exact Gaussian elimination over the rationals.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::qarith::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// Consistent, with a solution space of this dimension.
    Underdetermined(usize),
    Inconsistent,
}

/// Linear system `sum_u a[eq][u] x_u = b[eq]` with sparse rows.
#[derive(Debug, Clone, Default)]
pub struct SparseSystem {
    unknowns: usize,
    rows: Vec<(BTreeMap<usize, Rational>, Rational)>,
}

impl SparseSystem {
    pub fn new(unknowns: usize) -> Self {
        Self {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: BTreeMap<usize, Rational>, rhs: Rational) {
        debug_assert!(coeffs.keys().all(|&u| u < self.unknowns));
        self.rows.push((coeffs, rhs));
    }

    pub fn solve(&self) -> Solution {
        // reduced row echelon form built incrementally; pivots[col] = row
        let mut pivots: BTreeMap<usize, (BTreeMap<usize, Rational>, Rational)> = BTreeMap::new();
        for (coeffs, rhs) in &self.rows {
            let mut row = coeffs.clone();
            row.retain(|_, v| !v.is_zero());
            let mut rhs = rhs.clone();
            let cols: Vec<usize> = row.keys().copied().collect();
            for c in cols {
                let Some(factor) = row.get(&c).cloned() else { continue };
                if let Some((prow, prhs)) = pivots.get(&c) {
                    axpy(&mut row, &mut rhs, &-factor, prow, prhs);
                }
            }
            let Some((&lead, lv)) = row.iter().next() else {
                if !rhs.is_zero() {
                    return Solution::Inconsistent;
                }
                continue;
            };
            let inv = lv.recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
            rhs *= &inv;
            for (prow, prhs) in pivots.values_mut() {
                if let Some(f) = prow.get(&lead).cloned() {
                    axpy(prow, prhs, &-f, &row, &rhs);
                }
            }
            pivots.insert(lead, (row, rhs));
        }
        let nullity = self.unknowns - pivots.len();
        if nullity > 0 {
            return Solution::Underdetermined(nullity);
        }
        let mut x = vec![Rational::zero(); self.unknowns];
        for (col, (_, rhs)) in pivots {
            x[col] = rhs;
        }
        Solution::Unique(x)
    }
}

/// `row += factor * other`
fn axpy(
    row: &mut BTreeMap<usize, Rational>,
    rhs: &mut Rational,
    factor: &Rational,
    other: &BTreeMap<usize, Rational>,
    other_rhs: &Rational,
) {
    for (c, v) in other {
        let slot = row.entry(*c).or_insert_with(Rational::zero);
        *slot += factor * v;
        if slot.is_zero() {
            row.remove(c);
        }
    }
    *rhs += factor * other_rhs;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn system(rows: &[(&[i64], i64)]) -> SparseSystem {
        let n = rows[0].0.len();
        let mut s = SparseSystem::new(n);
        for (a, b) in rows {
            s.push(a.iter().enumerate().map(|(k, v)| (k, r(*v))).collect(), r(*b));
        }
        s
    }

    #[test]
    fn unique_solution() {
        // x + y = 3, x - y = 1, 2x = 4 (redundant)
        let s = system(&[(&[1, 1], 3), (&[1, -1], 1), (&[2, 0], 4)]);
        assert_eq!(s.solve(), Solution::Unique(vec![r(2), r(1)]));
    }

    #[test]
    fn fractional_solution() {
        let s = system(&[(&[3, 0, 1], 1), (&[0, 2, 0], 1), (&[1, 1, 1], 0)]);
        let Solution::Unique(x) = s.solve() else { panic!() };
        assert_eq!(x[1], Rational::new(1.into(), 2.into()));
        assert_eq!(&r(3) * &x[0] + &x[2], r(1));
        assert_eq!(&x[0] + &x[1] + &x[2], r(0));
    }

    #[test]
    fn detects_underdetermined_and_inconsistent() {
        assert_eq!(system(&[(&[1, 1], 1)]).solve(), Solution::Underdetermined(1));
        assert_eq!(system(&[(&[1, 1], 1), (&[2, 2], 3)]).solve(), Solution::Inconsistent);
        assert_eq!(system(&[(&[0, 0], 1)]).solve(), Solution::Inconsistent);
    }
}
