use std::sync::Arc;


use super::matrix::{OperatorMatrix, SparseMatrix};
use super::realization::Realization;
use crate::error::{Error, Result};
use crate::fockspace::{FockBasis, FockParams, OccupationVector};
use crate::qarith::{q_factorial, q_number, LaurentPoly, Rational, Scalar};

/// Raising (`+`) or lowering (`-`) half of a creation/annihilation pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ladder {
    Plus,
    Minus,
}

impl Ladder {
    pub fn from_sign(sign: i64) -> Self {
        if sign >= 0 {
            Ladder::Plus
        } else {
            Ladder::Minus
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Ladder::Plus => 1,
            Ladder::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Ladder::Plus => Ladder::Minus,
            Ladder::Minus => Ladder::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Ladder::Plus => '+',
            Ladder::Minus => '-',
        }
    }
}

/// `(-1)^{theta_i (theta_1 r_1 + ... + theta_{i-1} r_{i-1})}`
fn odd_phase(params: &FockParams, i: usize, r: &OccupationVector) -> i64 {
    if i > params.n && r.odd_prefix(params, i) % 2 == 1 {
        -1
    } else {
        1
    }
}

fn eigenvalues(basis: &FockBasis, i: usize) -> Result<Vec<i64>> {
    basis.states().iter().map(|r| basis.h_eigenvalue(i, r)).collect()
}

/// `H_i`: diagonal with the integer eigenvalues `p - (-1)^theta_i r_i - sum r`.
pub fn build_h(basis: &Arc<FockBasis>, i: usize) -> Result<OperatorMatrix<LaurentPoly>> {
    let diag = eigenvalues(basis, i)?.into_iter().map(LaurentPoly::from_int).collect();
    Ok(OperatorMatrix::new(basis.clone(), SparseMatrix::diagonal(diag), Some(0), format!("H_{i}")))
}

/// `L_i^{power} = q^{power * H_i}` for `power = +1` or `-1`.
pub fn build_l(basis: &Arc<FockBasis>, i: usize, power: i64) -> Result<OperatorMatrix<LaurentPoly>> {
    if power.abs() != 1 {
        return Err(Error::IndexRange { index: power, lo: -1, hi: 1 });
    }
    let diag = eigenvalues(basis, i)?
        .into_iter()
        .map(|h| LaurentPoly::q_pow(power * h))
        .collect();
    let label = if power > 0 { format!("L_{i}") } else { format!("Lbar_{i}") };
    Ok(OperatorMatrix::new(basis.clone(), SparseMatrix::diagonal(diag), Some(0), label))
}

/// `a_i^+` in the unnormalized monomial basis
/// `v_r = (a_1^+)^{r_1} ... (a_{n+m}^+)^{r_{n+m}} |0>`:
/// `a_i^+ v_r = phase * q^{-s} (1 - theta_i r_i) v_{r + e_i}`, `s = r_1 + ... + r_{i-1}`.
pub fn build_a_plus(basis: &Arc<FockBasis>, i: usize) -> Result<OperatorMatrix<LaurentPoly>> {
    let params = *basis.params();
    params.check_generator(i)?;
    let theta = params.theta(i)? as i64;
    let mut m = SparseMatrix::zero(basis.dim());
    for (col, r) in basis.states().iter().enumerate() {
        let Some(row) = r.shifted(i, 1).and_then(|t| basis.index_of(&t)) else {
            continue;
        };
        let factor = odd_phase(&params, i, r) * (1 - theta * r.get(i) as i64);
        let s = r.prefix_sum(i) as i64;
        m.insert(row, col, LaurentPoly::monomial(Rational::from_integer(factor.into()), -s));
    }
    Ok(OperatorMatrix::new(basis.clone(), m, Some(theta as u8), format!("a+_{i}")))
}

/// `a_i^-` in the unnormalized monomial basis:
/// `a_i^- v_r = phase * q^{s} [r_i] [p - sum r + 1] v_{r - e_i}`.
pub fn build_a_minus(basis: &Arc<FockBasis>, i: usize) -> Result<OperatorMatrix<LaurentPoly>> {
    let params = *basis.params();
    params.check_generator(i)?;
    let theta = params.theta(i)?;
    let p = params.p as i64;
    let mut m = SparseMatrix::zero(basis.dim());
    for (col, r) in basis.states().iter().enumerate() {
        let Some(row) = r.shifted(i, -1).and_then(|t| basis.index_of(&t)) else {
            continue;
        };
        let s = r.prefix_sum(i) as i64;
        let amp = &q_number(r.get(i) as i64) * &q_number(p - r.total() as i64 + 1);
        let phase = Rational::from_integer(odd_phase(&params, i, r).into());
        m.insert(row, col, amp.shift(s).scale(&phase));
    }
    Ok(OperatorMatrix::new(basis.clone(), m, Some(theta), format!("a-_{i}")))
}

fn check_numeric_q(q0: f64) -> Result<()> {
    if !q0.is_finite() || q0 == 0.0 || q0.abs() == 1.0 {
        return Err(Error::BadQ(q0.to_string()));
    }
    Ok(())
}

fn checked_sqrt(x: f64, q0: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::BadQ(format!("{q0} (negative norm {x})")));
    }
    Ok(x.sqrt())
}

fn qn_f64(x: i64, q0: f64) -> f64 {
    (q0.powi(x as i32) - q0.powi(-x as i32)) / (q0 - 1.0 / q0)
}

/// `a_i^{sign}` on the orthonormal basis `|p; r)`, built directly from the
/// square-root amplitudes and phases `q^{+-s}` at a real `q0`.
pub fn build_normalized_numeric(basis: &Arc<FockBasis>, i: usize, ladder: Ladder, q0: f64) -> Result<OperatorMatrix<f64>> {
    check_numeric_q(q0)?;
    let params = *basis.params();
    params.check_generator(i)?;
    let theta = params.theta(i)?;
    let p = params.p as i64;
    let mut m = SparseMatrix::zero(basis.dim());
    for (col, r) in basis.states().iter().enumerate() {
        let delta = ladder.sign() as i32;
        let Some(row) = r.shifted(i, delta).and_then(|t| basis.index_of(&t)) else {
            continue;
        };
        let phase = odd_phase(&params, i, r) as f64;
        let s = r.prefix_sum(i) as i32;
        let ri = r.get(i) as i64;
        let free = p - r.total() as i64;
        let value = match ladder {
            Ladder::Minus => phase * q0.powi(s) * checked_sqrt(qn_f64(ri, q0) * qn_f64(free + 1, q0), q0)?,
            Ladder::Plus => {
                phase
                    * q0.powi(-s)
                    * (1 - theta as i64 * ri) as f64
                    * checked_sqrt(qn_f64(ri + 1, q0) * qn_f64(free, q0), q0)?
            }
        };
        m.insert(row, col, value);
    }
    Ok(OperatorMatrix::new(basis.clone(), m, Some(theta), format!("a{}_{i}", ladder.symbol())))
}

/// The normalization `D_rr = sqrt([p - sum r]! / ([p]! prod [r_l]!))` relating
/// the monomial basis to the orthonormal one at `q0`: `|p; r) = D_rr v_r`.
pub fn normalization_diagonal(basis: &FockBasis, q0: f64) -> Result<Vec<f64>> {
    check_numeric_q(q0)?;
    let p = basis.params().p as u32;
    let fact = |x: u32| q_factorial(x).evaluate_f64(q0);
    basis
        .states()
        .iter()
        .map(|r| {
            let mut den = fact(p)?;
            for &rl in &r.0 {
                den *= fact(rl)?;
            }
            checked_sqrt(fact(p - r.total())? / den, q0)
        })
        .collect()
}

/// All CAG-layer generators of one Fock space over a common scalar ring.
#[derive(Debug, Clone)]
pub struct Generators<S> {
    basis: Arc<FockBasis>,
    a_plus: Vec<OperatorMatrix<S>>,
    a_minus: Vec<OperatorMatrix<S>>,
    h: Vec<OperatorMatrix<S>>,
    l: Vec<OperatorMatrix<S>>,
    l_bar: Vec<OperatorMatrix<S>>,
}

impl<S: Scalar> Generators<S> {
    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn params(&self) -> &FockParams {
        self.basis.params()
    }

    fn slot<'a>(&self, v: &'a [OperatorMatrix<S>], i: usize) -> Result<&'a OperatorMatrix<S>> {
        self.params().check_generator(i)?;
        Ok(&v[i - 1])
    }

    pub fn a(&self, i: usize, ladder: Ladder) -> Result<&OperatorMatrix<S>> {
        match ladder {
            Ladder::Plus => self.slot(&self.a_plus, i),
            Ladder::Minus => self.slot(&self.a_minus, i),
        }
    }

    pub fn a_plus(&self, i: usize) -> Result<&OperatorMatrix<S>> {
        self.slot(&self.a_plus, i)
    }

    pub fn a_minus(&self, i: usize) -> Result<&OperatorMatrix<S>> {
        self.slot(&self.a_minus, i)
    }

    pub fn h(&self, i: usize) -> Result<&OperatorMatrix<S>> {
        self.slot(&self.h, i)
    }

    /// `L_i` for `power = 1`, `Lbar_i = L_i^{-1}` for `power = -1`.
    pub fn l(&self, i: usize, power: i64) -> Result<&OperatorMatrix<S>> {
        match power {
            1 => self.slot(&self.l, i),
            -1 => self.slot(&self.l_bar, i),
            _ => Err(Error::IndexRange { index: power, lo: -1, hi: 1 }),
        }
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> Result<T>) -> Result<Generators<T>> {
        let mut conv = |v: &[OperatorMatrix<S>]| -> Result<Vec<OperatorMatrix<T>>> {
            v.iter().map(|m| m.try_map(&mut f)).collect()
        };
        Ok(Generators {
            basis: self.basis.clone(),
            a_plus: conv(&self.a_plus)?,
            a_minus: conv(&self.a_minus)?,
            h: conv(&self.h)?,
            l: conv(&self.l)?,
            l_bar: conv(&self.l_bar)?,
        })
    }
}

impl Generators<LaurentPoly> {
    /// Exact generators in the unnormalized monomial basis.
    pub fn exact(params: FockParams) -> Result<Self> {
        let basis = Arc::new(FockBasis::enumerate(params)?);
        Self::exact_on(basis)
    }

    pub fn exact_on(basis: Arc<FockBasis>) -> Result<Self> {
        let idx = 1..=basis.params().rank();
        Ok(Self {
            a_plus: idx.clone().map(|i| build_a_plus(&basis, i)).collect::<Result<_>>()?,
            a_minus: idx.clone().map(|i| build_a_minus(&basis, i)).collect::<Result<_>>()?,
            h: idx.clone().map(|i| build_h(&basis, i)).collect::<Result<_>>()?,
            l: idx.clone().map(|i| build_l(&basis, i, 1)).collect::<Result<_>>()?,
            l_bar: idx.map(|i| build_l(&basis, i, -1)).collect::<Result<_>>()?,
            basis,
        })
    }

    /// The same generators with `q` realized by `real`.
    pub fn realize<R: Realization>(&self, real: &R) -> Result<Generators<R::S>> {
        self.map(|p| real.specialize(p))
    }

    /// Polynomial evaluation at any rational `q0`, including `q0 = 1`.
    pub fn evaluate_at(&self, q0: &Rational) -> Result<Generators<Rational>> {
        self.map(|p| p.evaluate(q0))
    }
}

impl Generators<f64> {
    /// Generators on the orthonormal basis at a real `q0`; `a_i^+-` come from
    /// the square-root formulas, `H_i`, `L_i` from their eigenvalues.
    pub fn normalized_numeric(params: FockParams, q0: f64) -> Result<Self> {
        let basis = Arc::new(FockBasis::enumerate(params)?);
        check_numeric_q(q0)?;
        let rank = params.rank();
        let diag = |i: usize, f: &dyn Fn(i64) -> f64, label: String| -> Result<OperatorMatrix<f64>> {
            let values = eigenvalues(&basis, i)?.into_iter().map(f).collect();
            Ok(OperatorMatrix::new(basis.clone(), SparseMatrix::diagonal(values), Some(0), label))
        };
        let mut gens = Self {
            basis: basis.clone(),
            a_plus: Vec::with_capacity(rank),
            a_minus: Vec::with_capacity(rank),
            h: Vec::with_capacity(rank),
            l: Vec::with_capacity(rank),
            l_bar: Vec::with_capacity(rank),
        };
        for i in 1..=rank {
            gens.a_plus.push(build_normalized_numeric(&basis, i, Ladder::Plus, q0)?);
            gens.a_minus.push(build_normalized_numeric(&basis, i, Ladder::Minus, q0)?);
            gens.h.push(diag(i, &|h| h as f64, format!("H_{i}"))?);
            gens.l.push(diag(i, &|h| q0.powi(h as i32), format!("L_{i}"))?);
            gens.l_bar.push(diag(i, &|h| q0.powi(-h as i32), format!("Lbar_{i}"))?);
        }
        Ok(gens)
    }
}

/// `D^{-1} A D` for a diagonal `D`.
pub fn conjugate_by_diagonal(a: &SparseMatrix<f64>, d: &[f64]) -> SparseMatrix<f64> {
    SparseMatrix::from_triplets(a.dim(), a.iter().map(|(r, c, v)| (r, c, v * d[c] / d[r])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{bracket, BracketKind, Exact};

    fn basis(n: usize, m: usize, p: usize) -> Arc<FockBasis> {
        Arc::new(FockBasis::enumerate(FockParams::new(n, m, p).unwrap()).unwrap())
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn idx(b: &FockBasis, r: &[u32]) -> usize {
        b.index_of(&OccupationVector(r.to_vec())).unwrap()
    }

    #[test]
    fn h_and_l_examples() {
        let b = basis(1, 1, 2);
        let h1 = build_h(&b, 1).unwrap();
        let diag: Vec<LaurentPoly> = h1.matrix.diagonal_values();
        let expect: Vec<LaurentPoly> = [2, 1, 0, -1, -2].iter().map(|&v| LaurentPoly::from_int(v)).collect();
        assert_eq!(diag, expect);
        for i in 1..=2 {
            let l = build_l(&b, i, 1).unwrap();
            let lb = build_l(&b, i, -1).unwrap();
            assert!(l.mul(&lb).unwrap().matrix == SparseMatrix::identity(5));
            assert!(lb.mul(&l).unwrap().matrix == SparseMatrix::identity(5));
            assert_eq!(build_h(&b, i).unwrap().matrix.get(0, 0), LaurentPoly::from_int(2));
        }
        assert!(build_h(&b, 3).is_err());
        assert!(build_l(&b, 1, 2).is_err());
    }

    #[test]
    fn ladder_examples() {
        let b = basis(1, 1, 2);
        for i in 1..=2 {
            assert!(build_a_minus(&b, i).unwrap().on_vacuum().is_zero());
        }
        let am1 = build_a_minus(&b, 1).unwrap();
        assert_eq!(am1.matrix.get(idx(&b, &[0, 0]), idx(&b, &[1, 0])), lp("q + q^-1"));
        let ap2 = build_a_plus(&b, 2).unwrap();
        // fermionic double occupancy is not a state: the column of (0,1) is empty
        let col = idx(&b, &[0, 1]);
        assert!(ap2.matrix.iter().all(|(_, c, _)| c != col));
        // nothing can be created on a full state
        for i in 1..=2 {
            let ap = build_a_plus(&b, i).unwrap();
            for (k, r) in b.states().iter().enumerate() {
                if r.total() as usize == b.params().p {
                    assert!(ap.matrix.iter().all(|(_, c, _)| c != k));
                }
            }
        }
        assert_eq!(ap2.grade, Some(1));
        assert_eq!(build_a_plus(&b, 1).unwrap().grade, Some(0));
    }

    #[test]
    fn vacuum_bracket_gives_q_number_p() {
        let b = basis(1, 1, 2);
        let c = bracket(
            &build_a_minus(&b, 1).unwrap(),
            &build_a_plus(&b, 1).unwrap(),
            BracketKind::Supercommutator,
            &LaurentPoly::one(),
        )
        .unwrap();
        let (l, lb) = (build_l(&b, 1, 1).unwrap(), build_l(&b, 1, -1).unwrap());
        let rhs = l.sub(&lb).unwrap().try_map(|x| Exact.div_q_diff(x)).unwrap();
        assert_eq!(c.matrix, rhs.matrix);
        assert_eq!(c.matrix.get(0, 0), q_number(2));
    }

    #[test]
    fn normalized_amplitude_example() {
        // sqrt([1][2]) at q0 = 0.7, with [2] = 0.7 + 1/0.7
        let expected = (0.7f64 + 1.0 / 0.7).sqrt();
        assert!((expected - 1.458_962_4).abs() < 1e-7);
        let b = basis(1, 1, 2);
        let am = build_normalized_numeric(&b, 1, Ladder::Minus, 0.7).unwrap();
        let got = am.matrix.get(idx(&b, &[0, 0]), idx(&b, &[1, 0]));
        assert!((got - expected).abs() < 1e-12);
        let d = normalization_diagonal(&b, 0.7).unwrap();
        assert!((d[0] - 1.0).abs() < 1e-15);
        assert!(matches!(build_normalized_numeric(&b, 1, Ladder::Plus, 1.0), Err(Error::BadQ(_))));
        assert!(matches!(build_normalized_numeric(&b, 1, Ladder::Plus, 0.0), Err(Error::BadQ(_))));
    }

    #[test]
    fn change_of_basis_relates_exact_and_normalized() {
        for (n, m, p) in [(1, 1, 2), (2, 1, 2), (1, 2, 3)] {
            let gens = Generators::exact(FockParams::new(n, m, p).unwrap()).unwrap();
            for q0 in [0.7, 1.3] {
                let d = normalization_diagonal(gens.basis(), q0).unwrap();
                for i in 1..=n + m {
                    for ladder in [Ladder::Plus, Ladder::Minus] {
                        let exact = gens.a(i, ladder).unwrap().matrix.map(|v| v.evaluate_f64(q0).unwrap());
                        let conj = conjugate_by_diagonal(&exact, &d);
                        let num = build_normalized_numeric(gens.basis(), i, ladder, q0).unwrap();
                        let diff = conj.sub(&num.matrix);
                        assert!(diff.max_magnitude() < 1e-10, "{n} {m} {p} {i} {ladder:?} {q0}");
                    }
                }
            }
        }
    }

    #[test]
    fn negative_q_with_negative_norm_is_rejected() {
        let b = basis(1, 0, 2);
        // [2] < 0 at negative q0
        assert!(matches!(normalization_diagonal(&b, -0.5), Err(Error::BadQ(_))));
    }
}
