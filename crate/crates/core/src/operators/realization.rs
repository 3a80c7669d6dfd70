use num_traits::{One, Signed};
use serde_json::json;

use crate::error::{Error, Result};
use crate::qarith::{LaurentPoly, Rational, Scalar};

/// How `q` is realized in the scalar ring of a computation.
#[derive(Debug, Clone, PartialEq)]
pub enum Mode {
    /// Formal indeterminate; entries are Laurent polynomials.
    Exact,
    /// `q` specialized to a rational value; entries are exact rationals.
    Sample(Rational),
    /// `q` specialized to a float; comparisons use an absolute tolerance.
    Numeric { q0: f64, tol: f64 },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Sample(_) => "exact-sample",
            Mode::Numeric { .. } => "numeric",
        }
    }

    /// `{"mode": ..., "q0": ..., "tolerance": ...}` fields for reports.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Mode::Exact => json!({"mode": "exact"}),
            Mode::Sample(q0) => json!({"mode": "exact-sample", "q0": q0.to_string()}),
            Mode::Numeric { q0, tol } => json!({"mode": "numeric", "q0": q0, "tolerance": tol}),
        }
    }
}

/// A coefficient ring together with a value (or the indeterminate) for `q`.
pub trait Realization: Send + Sync {
    type S: Scalar;

    fn mode(&self) -> Mode;

    /// `q^k`
    fn q_pow(&self, k: i64) -> Result<Self::S>;

    /// Image of a Laurent polynomial.
    fn specialize(&self, p: &LaurentPoly) -> Result<Self::S>;

    /// `x / (q - q^-1)`, exact where the ring is exact.
    fn div_q_diff(&self, x: &Self::S) -> Result<Self::S>;

    fn invert(&self, x: &Self::S) -> Result<Self::S>;

    /// Whether `x` counts as zero when comparing two sides of a relation.
    fn negligible(&self, x: &Self::S) -> bool;
}

/// Formal `q`: Laurent polynomial entries.
#[derive(Debug, Clone, Copy, Default)]
pub struct Exact;

impl Realization for Exact {
    type S = LaurentPoly;

    fn mode(&self) -> Mode {
        Mode::Exact
    }
    fn q_pow(&self, k: i64) -> Result<LaurentPoly> {
        Ok(LaurentPoly::q_pow(k))
    }
    fn specialize(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        Ok(p.clone())
    }
    fn div_q_diff(&self, x: &LaurentPoly) -> Result<LaurentPoly> {
        x.div_exact(&LaurentPoly::q_diff())
    }
    fn invert(&self, x: &LaurentPoly) -> Result<LaurentPoly> {
        x.inverse()
    }
    fn negligible(&self, x: &LaurentPoly) -> bool {
        x.is_zero()
    }
}

/// `q` specialized to a rational outside `{0, 1, -1}`.
#[derive(Debug, Clone)]
pub struct RationalSample {
    q0: Rational,
    q_diff: Rational,
}

impl RationalSample {
    pub fn new(q0: Rational) -> Result<Self> {
        if Scalar::is_zero(&q0) || q0.abs().is_one() {
            return Err(Error::BadQ(q0.to_string()));
        }
        let q_diff = &q0 - q0.recip();
        Ok(Self { q0, q_diff })
    }

    pub fn q0(&self) -> &Rational {
        &self.q0
    }
}

impl Realization for RationalSample {
    type S = Rational;

    fn mode(&self) -> Mode {
        Mode::Sample(self.q0.clone())
    }
    fn q_pow(&self, k: i64) -> Result<Rational> {
        crate::qarith::rational_powi(&self.q0, k)
    }
    fn specialize(&self, p: &LaurentPoly) -> Result<Rational> {
        p.evaluate(&self.q0)
    }
    fn div_q_diff(&self, x: &Rational) -> Result<Rational> {
        Ok(x / &self.q_diff)
    }
    fn invert(&self, x: &Rational) -> Result<Rational> {
        if Scalar::is_zero(x) {
            return Err(Error::DivisionByZero);
        }
        Ok(x.recip())
    }
    fn negligible(&self, x: &Rational) -> bool {
        Scalar::is_zero(x)
    }
}

/// Floating-point `q` with an absolute comparison tolerance.
#[derive(Debug, Clone, Copy)]
pub struct Numeric {
    q0: f64,
    tol: f64,
}

impl Numeric {
    pub const DEFAULT_TOLERANCE: f64 = 1e-10;

    pub fn new(q0: f64, tol: f64) -> Result<Self> {
        if !q0.is_finite() || q0 == 0.0 || q0.abs() == 1.0 {
            return Err(Error::BadQ(q0.to_string()));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidParams(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Self { q0, tol })
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }
}

impl Realization for Numeric {
    type S = f64;

    fn mode(&self) -> Mode {
        Mode::Numeric {
            q0: self.q0,
            tol: self.tol,
        }
    }
    fn q_pow(&self, k: i64) -> Result<f64> {
        Ok(self.q0.powi(k as i32))
    }
    fn specialize(&self, p: &LaurentPoly) -> Result<f64> {
        p.evaluate_f64(self.q0)
    }
    fn div_q_diff(&self, x: &f64) -> Result<f64> {
        Ok(x / (self.q0 - 1.0 / self.q0))
    }
    fn invert(&self, x: &f64) -> Result<f64> {
        if *x == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(1.0 / x)
    }
    fn negligible(&self, x: &f64) -> bool {
        x.abs() <= self.tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_q() {
        for bad in [0.0, 1.0, -1.0, f64::NAN] {
            assert!(matches!(Numeric::new(bad, 1e-10), Err(Error::BadQ(_))));
        }
        assert!(Numeric::new(0.7, 0.0).is_err());
        for bad in ["0", "1", "-1"] {
            let q0 = crate::qarith::parse_rational(bad).unwrap();
            assert!(matches!(RationalSample::new(q0), Err(Error::BadQ(_))));
        }
    }

    #[test]
    fn realizations_agree_on_q_diff_division() {
        let num = LaurentPoly::q_pow(3) - LaurentPoly::q_pow(-3);
        let exact = Exact.div_q_diff(&num).unwrap();
        let sample = RationalSample::new(Rational::new(2.into(), 3.into())).unwrap();
        let via_sample = sample.div_q_diff(&sample.specialize(&num).unwrap()).unwrap();
        assert_eq!(sample.specialize(&exact).unwrap(), via_sample);
        let numeric = Numeric::new(1.3, 1e-12).unwrap();
        let via_numeric = numeric.div_q_diff(&numeric.specialize(&num).unwrap()).unwrap();
        assert!((numeric.specialize(&exact).unwrap() - via_numeric).abs() < 1e-12);
    }
}
