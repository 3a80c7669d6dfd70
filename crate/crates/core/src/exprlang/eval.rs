use super::ast::{Atom, Expr, Identity};
use crate::error::{Error, Result};
use crate::fockspace::FockBasis;
use crate::operators::{bracket, Generators, OperatorMatrix, RationalSample, Realization, SparseMatrix};
use crate::qarith::Scalar;
use crate::relations::{ChevalleySet, RelationId, RelationReport};
use std::sync::Arc;

/// Result of evaluating a subexpression: scalars stay scalars until they
/// meet an operator, where they act as multiples of the identity.
#[derive(Debug, Clone)]
pub enum Value<S: Scalar> {
    Scalar(S),
    Matrix(OperatorMatrix<S>),
}

impl<S: Scalar> Value<S> {
    pub fn into_matrix(self, basis: &Arc<FockBasis>) -> OperatorMatrix<S> {
        match self {
            Value::Matrix(m) => m,
            Value::Scalar(s) => OperatorMatrix::identity(basis.clone()).scale(&s).with_label(""),
        }
    }
}

/// Generator matrices (and optionally a Chevalley set) that atoms resolve to.
pub struct EvalContext<'a, R: Realization> {
    real: &'a R,
    gens: &'a Generators<R::S>,
    chevalley: Option<&'a ChevalleySet>,
}

impl<'a, R: Realization> EvalContext<'a, R> {
    pub fn new(real: &'a R, gens: &'a Generators<R::S>) -> Self {
        Self {
            real,
            gens,
            chevalley: None,
        }
    }

    pub fn realization(&self) -> &R {
        self.real
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        self.gens.basis()
    }

    fn atom(&self, atom: Atom, i: usize) -> Result<OperatorMatrix<R::S>> {
        if atom.is_chevalley() {
            let set = self.chevalley.ok_or_else(|| Error::UnresolvedAtom(format!("{}({i})", atom.name())))?;
            let m = match atom {
                Atom::E => set.e(i)?,
                Atom::F => set.f(i)?,
                Atom::Hch => set.h(i)?,
                Atom::K => set.k(i, 1)?,
                _ => set.k(i, -1)?,
            };
            return Ok(m.map(|v| R::S::from_rational(v)).with_label(format!("{}({i})", atom.name())));
        }
        let m = match atom {
            Atom::Ap => self.gens.a_plus(i)?,
            Atom::Am => self.gens.a_minus(i)?,
            Atom::H => self.gens.h(i)?,
            Atom::L => self.gens.l(i, 1)?,
            _ => self.gens.l(i, -1)?,
        };
        Ok(m.clone())
    }

    fn vacuum_projector(&self) -> OperatorMatrix<R::S> {
        let basis = self.basis().clone();
        let v = basis.vacuum();
        let matrix = SparseMatrix::from_triplets(basis.dim(), [(v, v, R::S::one())]);
        OperatorMatrix::new(basis, matrix, Some(0), "Vac")
    }

    fn binary(
        &self,
        a: Value<R::S>,
        b: Value<R::S>,
        scalar: impl Fn(&R::S, &R::S) -> R::S,
        matrix: impl Fn(&OperatorMatrix<R::S>, &OperatorMatrix<R::S>) -> Result<OperatorMatrix<R::S>>,
    ) -> Result<Value<R::S>> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(scalar(&x, &y)),
            (x, y) => Value::Matrix(matrix(&x.into_matrix(self.basis()), &y.into_matrix(self.basis()))?),
        })
    }

    pub fn eval(&self, e: &Expr) -> Result<Value<R::S>> {
        Ok(match e {
            Expr::Gen(atom, i) => Value::Matrix(self.atom(*atom, *i)?),
            Expr::Vac => Value::Matrix(self.vacuum_projector()),
            Expr::Num(r) => Value::Scalar(R::S::from_rational(r)),
            Expr::Q => Value::Scalar(self.real.q_pow(1)?),
            Expr::Neg(a) => match self.eval(a)? {
                Value::Scalar(x) => Value::Scalar(x.neg()),
                Value::Matrix(m) => Value::Matrix(m.neg()),
            },
            Expr::Add(a, b) => self.binary(self.eval(a)?, self.eval(b)?, |x, y| x.add(y), |x, y| x.add(y))?,
            Expr::Sub(a, b) => self.binary(self.eval(a)?, self.eval(b)?, |x, y| x.sub(y), |x, y| x.sub(y))?,
            Expr::Mul(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.mul(&y)),
                (Value::Scalar(x), Value::Matrix(m)) | (Value::Matrix(m), Value::Scalar(x)) => Value::Matrix(m.scale(&x)),
                (Value::Matrix(x), Value::Matrix(y)) => Value::Matrix(x.mul(&y)?),
            },
            Expr::Pow(a, k) => self.power(self.eval(a)?, *k)?,
            Expr::Bracket(kind, a, b, k) => {
                let x = self.real.q_pow(*k)?;
                let a = self.eval(a)?.into_matrix(self.basis());
                let b = self.eval(b)?.into_matrix(self.basis());
                Value::Matrix(bracket(&a, &b, *kind, &x)?)
            }
            Expr::QDivDiff(a, b) => match self.binary(self.eval(a)?, self.eval(b)?, |x, y| x.sub(y), |x, y| x.sub(y))? {
                Value::Scalar(x) => Value::Scalar(self.real.div_q_diff(&x)?),
                Value::Matrix(m) => Value::Matrix(m.try_map(|v| self.real.div_q_diff(v))?),
            },
        })
    }

    fn power(&self, base: Value<R::S>, k: i64) -> Result<Value<R::S>> {
        match base {
            Value::Scalar(x) => {
                let x = if k < 0 { self.real.invert(&x)? } else { x };
                let mut acc = R::S::one();
                for _ in 0..k.unsigned_abs() {
                    acc = acc.mul(&x);
                }
                Ok(Value::Scalar(acc))
            }
            Value::Matrix(m) => {
                if k < 0 {
                    return Err(Error::NegativePower(k));
                }
                let mut acc = OperatorMatrix::identity(self.basis().clone());
                for _ in 0..k {
                    acc = acc.mul(&m)?;
                }
                Ok(Value::Matrix(acc))
            }
        }
    }

    pub fn eval_matrix(&self, e: &Expr) -> Result<OperatorMatrix<R::S>> {
        Ok(self.eval(e)?.into_matrix(self.basis()))
    }

    /// Evaluates both sides and compares them under the realization's
    /// notion of zero.
    pub fn check_as(&self, id: RelationId, identity: &Identity) -> Result<RelationReport> {
        let lhs = self.eval_matrix(&identity.lhs)?;
        let rhs = self.eval_matrix(&identity.rhs)?;
        Ok(RelationReport::compare(self.real, id, &lhs, &rhs))
    }
}

impl<'a> EvalContext<'a, RationalSample> {
    /// Context at the set's sample `q0`, resolving the Chevalley atoms too.
    pub fn with_chevalley(set: &'a ChevalleySet) -> Self {
        Self {
            real: set.sample(),
            gens: set.gens(),
            chevalley: Some(set),
        }
    }
}

/// Checks a user identity; the report carries the tag `dsl`.
pub fn check_identity<R: Realization>(identity: &Identity, ctx: &EvalContext<'_, R>) -> Result<RelationReport> {
    ctx.check_as(RelationId::new("dsl", vec![]), identity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprlang::{parse_expr, parse_identity};
    use crate::fockspace::FockParams;
    use crate::operators::{Exact, Numeric};
    use crate::qarith::{parse_rational, LaurentPoly};
    use crate::relations::{reconstruct_chevalley, Status};

    fn exact(n: usize, m: usize, p: usize) -> Generators<LaurentPoly> {
        Generators::exact(FockParams::new(n, m, p).unwrap()).unwrap()
    }

    #[test]
    fn atoms_pass_through() {
        let g = exact(1, 1, 2);
        let ctx = EvalContext::new(&Exact, &g);
        let m = ctx.eval_matrix(&parse_expr("Am(1)").unwrap()).unwrap();
        assert_eq!(m.matrix, g.a_minus(1).unwrap().matrix);
        assert_eq!(m.grade, Some(0));
    }

    #[test]
    fn spot_identities() {
        let g = exact(1, 1, 2);
        let ctx = EvalContext::new(&Exact, &g);
        let id = ctx.eval_matrix(&parse_expr("L(1)*Linv(1)").unwrap()).unwrap();
        assert_eq!(id.matrix, SparseMatrix::identity(5));
        let z = ctx
            .eval_matrix(&parse_expr("scomm(Am(1),Ap(1)) - qdivdiff(L(1),Linv(1))").unwrap())
            .unwrap();
        assert!(z.is_zero());
        for text in [
            "Ap(1)*Ap(1) == Ap(1)^2",
            "scomm(Ap(1),Ap(2),1) == 0",
            "comm(H(1), H(2)) == 0",
            "Am(2) * Vac == 0",
            "H(1) * Vac == 2 * Vac",
            "q * q^-1 == 1",
            "(q - q^-1) * qdivdiff(L(1), Linv(1)) == L(1) - Linv(1)",
        ] {
            let r = check_identity(&parse_identity(text).unwrap(), &ctx).unwrap();
            assert_eq!(r.status, Status::Pass, "{text}");
        }
        let r = check_identity(&parse_identity("Ap(1) == Am(1)").unwrap(), &ctx).unwrap();
        assert_eq!(r.status, Status::Fail);
    }

    #[test]
    fn evaluation_errors() {
        let g = exact(1, 1, 2);
        let ctx = EvalContext::new(&Exact, &g);
        let err = |t: &str| ctx.eval(&parse_expr(t).unwrap()).unwrap_err();
        assert!(matches!(err("E(1)"), Error::UnresolvedAtom(_)));
        assert!(matches!(err("Ap(3)"), Error::IndexRange { index: 3, .. }));
        assert!(matches!(err("Ap(1)^-1"), Error::NegativePower(-1)));
        assert!(matches!(err("scomm(Ap(1) + Ap(2), Ap(1))"), Error::GradeUndefined(_)));
        assert!(matches!(err("qdivdiff(Ap(1), 0)"), Error::NonDivisible { .. }));
    }

    #[test]
    fn numeric_and_chevalley_contexts() {
        let params = FockParams::new(1, 1, 2).unwrap();
        let g = Generators::normalized_numeric(params, 0.7).unwrap();
        let real = Numeric::new(0.7, 1e-10).unwrap();
        let ctx = EvalContext::new(&real, &g);
        let r = check_identity(&parse_identity("scomm(Am(1), Ap(1)) == qdivdiff(L(1), Linv(1))").unwrap(), &ctx).unwrap();
        assert_eq!(r.status, Status::Pass);

        let set = reconstruct_chevalley(&exact(1, 1, 2), &parse_rational("2/3").unwrap()).unwrap();
        let ctx = EvalContext::with_chevalley(&set);
        for text in ["E(2)^2 == 0", "scomm(E(1), F(1)) == qdivdiff(K(1), Kinv(1))", "Am(1) == E(1)"] {
            let r = check_identity(&parse_identity(text).unwrap(), &ctx).unwrap();
            assert_eq!(r.status, Status::Pass, "{text}");
        }
    }
}
