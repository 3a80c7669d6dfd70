//! A small language for operator expressions and identities between them,
//! e.g. `scomm(Am(1), Ap(1)) == qdivdiff(L(1), Linv(1))`.
//!
//! Atoms: `Ap(i) Am(i) H(i) L(i) Linv(i)`, the Chevalley atoms
//! `E(i) F(i) Hch(i) K(i) Kinv(i)`, the vacuum projector `Vac`, the
//! parameter `q` and non-negative rational literals. Brackets
//! `comm / acomm / scomm (x, y [, k])` are deformed by `q^k`.

mod ast;
mod catalog_file;
mod eval;
mod fidelity;
mod parse;

pub use ast::{Atom, Expr, Identity};
pub use catalog_file::{parse_catalog, CatalogFile, CatalogLine};
pub use eval::{check_identity, EvalContext, Value};
pub use fidelity::{check_cag_via_dsl, check_chevalley_via_dsl, status_mismatches};
pub use parse::{parse, parse_expr, parse_identity, Parsed};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::FockParams;
    use crate::operators::{BracketKind, Exact, Generators};
    use crate::qarith::{LaurentPoly, Rational};
    use proptest::prelude::*;

    fn leaf(max_index: usize) -> impl Strategy<Value = Expr> {
        prop_oneof![
            (prop::sample::select(Atom::ALL.to_vec()), 1..=max_index).prop_map(|(a, i)| Expr::Gen(a, i)),
            Just(Expr::Vac),
            Just(Expr::Q),
            (0i64..20, 1i64..5).prop_map(|(a, b)| Expr::Num(Rational::new(a.into(), b.into()))),
        ]
    }

    fn tree(max_index: usize) -> impl Strategy<Value = Expr> {
        let kinds = prop::sample::select(vec![
            BracketKind::Commutator,
            BracketKind::Anticommutator,
            BracketKind::Supercommutator,
        ]);
        leaf(max_index).prop_recursive(4, 24, 2, move |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), -3i64..4).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
                (kinds.clone(), inner.clone(), inner.clone(), -3i64..4)
                    .prop_map(|(kind, a, b, k)| Expr::Bracket(kind, Box::new(a), Box::new(b), k)),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::QDivDiff(Box::new(a), Box::new(b))),
            ]
        })
    }

    /// Operator-valued expressions without divisions, so evaluation rarely fails.
    fn operator_tree() -> impl Strategy<Value = Expr> {
        let atom = (prop::sample::select(vec![Atom::Ap, Atom::Am, Atom::H, Atom::L, Atom::Linv]), 1usize..=2)
            .prop_map(|(a, i)| Expr::Gen(a, i));
        let leaf = prop_oneof![atom, Just(Expr::Q), (0i64..4).prop_map(Expr::int)];
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), 0i64..3).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
                inner.prop_map(|a| Expr::Neg(Box::new(a))),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn print_parse_round_trip(e in tree(4)) {
            let text = e.to_string();
            prop_assert_eq!(parse_expr(&text).unwrap(), e);
        }

        #[test]
        fn identity_round_trip(a in tree(3), b in tree(3)) {
            let id = Identity { lhs: a, rhs: b };
            prop_assert_eq!(parse_identity(&id.to_string()).unwrap(), id);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn evaluation_is_a_homomorphism(a in operator_tree(), b in operator_tree()) {
            let g: Generators<LaurentPoly> = Generators::exact(FockParams::new(1, 1, 2).unwrap()).unwrap();
            let ctx = EvalContext::new(&Exact, &g);
            let ea = ctx.eval_matrix(&a).unwrap();
            let eb = ctx.eval_matrix(&b).unwrap();
            let sum = ctx.eval_matrix(&Expr::Add(Box::new(a.clone()), Box::new(b.clone()))).unwrap();
            let prod = ctx.eval_matrix(&Expr::Mul(Box::new(a), Box::new(b))).unwrap();
            prop_assert_eq!(sum.matrix, ea.add(&eb).unwrap().matrix);
            prop_assert_eq!(prod.matrix, ea.mul(&eb).unwrap().matrix);
        }
    }
}
