//! Generator matrices on `W_p` and the bracket calculus.
//!
//! Exact matrices live in the unnormalized monomial basis
//! `v_r = (a_1^+)^{r_1} ... (a_{n+m}^+)^{r_{n+m}} |0>`, where every entry is a
//! Laurent polynomial. The orthonormal basis differs by a diagonal square-root
//! rescaling ([`normalization_diagonal`]) which cancels in every relation.

mod bracket;
mod generators;
pub mod hamiltonian;
mod matrix;
mod realization;

pub use bracket::{bracket, bracket_q, q_div_diff, BracketKind};
pub use generators::{
    build_a_minus, build_a_plus, build_h, build_l, build_normalized_numeric, conjugate_by_diagonal,
    normalization_diagonal, Generators, Ladder,
};
pub use matrix::{OperatorMatrix, SparseMatrix};
pub use realization::{Exact, Mode, Numeric, RationalSample, Realization};

use crate::qarith::Scalar;

/// `{"params", "label", "grade", "mode", "entries": [[row, col, value], ...]}`;
/// exact values are canonical Laurent strings, numeric values are numbers.
pub fn matrix_to_json<S: Scalar>(op: &OperatorMatrix<S>, mode: &Mode) -> serde_json::Value {
    let mut out = serde_json::json!({
        "params": op.basis().params(),
        "label": op.label,
        "grade": op.grade,
        "mode": mode.name(),
        "entries": op.matrix.entries_json(),
    });
    if let serde_json::Value::Object(extra) = mode.to_json() {
        if let Some(q0) = extra.get("q0") {
            out["q0"] = q0.clone();
        }
    }
    out
}

/// Entrywise `|a_i^+| = |transpose(a_i^-)|` on the orthonormal basis at `q0`.
/// Returns the largest deviation.
pub fn magnitude_asymmetry(plus: &SparseMatrix<f64>, minus: &SparseMatrix<f64>) -> f64 {
    let abs = |m: &SparseMatrix<f64>| m.map(|v| v.abs());
    abs(plus).sub(&abs(&minus.transpose())).max_magnitude()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::FockParams;

    #[test]
    fn matrix_json_schema() {
        let g = Generators::exact(FockParams::new(1, 1, 2).unwrap()).unwrap();
        let j = matrix_to_json(g.a_minus(1).unwrap(), &Mode::Exact);
        assert_eq!(j["label"], "a-_1");
        assert_eq!(j["grade"], 0);
        assert_eq!(j["mode"], "exact");
        assert_eq!(j["params"]["p"], 2);
        let first = &j["entries"][0];
        assert_eq!(first[0], 0);
        assert_eq!(first[1], 2);
        assert_eq!(first[2], "q + q^-1");

        let num = Generators::normalized_numeric(FockParams::new(1, 1, 2).unwrap(), 0.7).unwrap();
        let mode = Mode::Numeric { q0: 0.7, tol: 1e-10 };
        let j = matrix_to_json(num.a_minus(1).unwrap(), &mode);
        assert_eq!(j["mode"], "numeric");
        assert!(j["entries"][0][2].is_f64());
    }
}
