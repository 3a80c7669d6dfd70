use super::matrix::OperatorMatrix;
use super::realization::Realization;
use crate::error::{Error, Result};
use crate::qarith::Scalar;

/// The three bilinear brackets, each deformed by a scalar `x`:
/// `[a,b]_x = ab - x ba`, `{a,b}_x = ab + x ba`,
/// and the graded `[[a,b]]_x = ab - (-1)^{deg a deg b} x ba`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
    Supercommutator,
}

impl BracketKind {
    /// Name used by the expression language.
    pub fn keyword(self) -> &'static str {
        match self {
            BracketKind::Commutator => "comm",
            BracketKind::Anticommutator => "acomm",
            BracketKind::Supercommutator => "scomm",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "comm" => Some(BracketKind::Commutator),
            "acomm" => Some(BracketKind::Anticommutator),
            "scomm" => Some(BracketKind::Supercommutator),
            _ => None,
        }
    }
}

pub fn bracket<S: Scalar>(
    a: &OperatorMatrix<S>,
    b: &OperatorMatrix<S>,
    kind: BracketKind,
    x: &S,
) -> Result<OperatorMatrix<S>> {
    let sign_minus = match kind {
        BracketKind::Commutator => true,
        BracketKind::Anticommutator => false,
        BracketKind::Supercommutator => match (a.grade, b.grade) {
            (Some(ga), Some(gb)) => ga & gb == 0,
            _ => {
                let which = if a.grade.is_none() { &a.label } else { &b.label };
                return Err(Error::GradeUndefined(which.clone()));
            }
        },
    };
    let ab = a.mul(b)?;
    let ba = b.mul(a)?.scale(x);
    let out = if sign_minus { ab.sub(&ba)? } else { ab.add(&ba)? };
    let open = match kind {
        BracketKind::Commutator => "[",
        BracketKind::Anticommutator => "{",
        BracketKind::Supercommutator => "[[",
    };
    let close = match kind {
        BracketKind::Commutator => "]",
        BracketKind::Anticommutator => "}",
        BracketKind::Supercommutator => "]]",
    };
    Ok(out.with_label(format!("{open}{}, {}{close}", a.label, b.label)))
}

/// Bracket deformed by `x = q^k` in the given realization.
pub fn bracket_q<R: Realization>(
    real: &R,
    a: &OperatorMatrix<R::S>,
    b: &OperatorMatrix<R::S>,
    kind: BracketKind,
    k: i64,
) -> Result<OperatorMatrix<R::S>> {
    bracket(a, b, kind, &real.q_pow(k)?)
}

/// `(a - b) / (q - q^-1)`, entrywise.
pub fn q_div_diff<R: Realization>(
    real: &R,
    a: &OperatorMatrix<R::S>,
    b: &OperatorMatrix<R::S>,
) -> Result<OperatorMatrix<R::S>> {
    let diff = a.sub(b)?;
    diff.try_map(|v| real.div_q_diff(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::{FockBasis, FockParams};
    use crate::operators::generators::{build_a_plus, build_h};
    use crate::operators::Exact;
    use crate::qarith::LaurentPoly;
    use std::sync::Arc;

    #[test]
    fn cartan_generators_commute() {
        let b = Arc::new(FockBasis::enumerate(FockParams::new(1, 1, 2).unwrap()).unwrap());
        let c = bracket_q(&Exact, &build_h(&b, 1).unwrap(), &build_h(&b, 2).unwrap(), BracketKind::Commutator, 0).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn odd_self_supercommutator_is_twice_the_square() {
        let b = Arc::new(FockBasis::enumerate(FockParams::new(0, 2, 2).unwrap()).unwrap());
        let a = build_a_plus(&b, 1).unwrap();
        // use a nonzero odd operator with nonzero square: a_1^+ + a_2^+ squares to a mixed term
        let x = a.add(&build_a_plus(&b, 2).unwrap()).unwrap();
        let sc = bracket(&x, &x, BracketKind::Supercommutator, &LaurentPoly::one()).unwrap();
        let two_sq = x.mul(&x).unwrap().scale(&LaurentPoly::from_int(2));
        assert_eq!(sc.matrix, two_sq.matrix);
        assert_eq!(sc.grade, Some(0));
    }

    #[test]
    fn graded_bracket_rejects_mixed_grade() {
        let b = Arc::new(FockBasis::enumerate(FockParams::new(1, 1, 2).unwrap()).unwrap());
        let mixed = build_a_plus(&b, 1).unwrap().add(&build_a_plus(&b, 2).unwrap()).unwrap();
        assert_eq!(mixed.grade, None);
        let err = bracket(&mixed, &mixed, BracketKind::Supercommutator, &LaurentPoly::one()).unwrap_err();
        assert!(matches!(err, Error::GradeUndefined(_)));
        assert!(bracket(&mixed, &mixed, BracketKind::Commutator, &LaurentPoly::one()).is_ok());
    }
}
