//! The undeformed (`q = 1`) free Hamiltonian on a Fock space with `n = m`:
//! `b_i^+- = a_i^+-` and `f_i^+- = a_{i+n}^+-` describe Bose-like and
//! Fermi-like particles with energy `eps_i`.

use serde_json::json;

use super::bracket::{bracket, BracketKind};
use super::generators::{Generators, Ladder};
use super::matrix::OperatorMatrix;
use crate::error::{Error, Result};
use crate::qarith::{LaurentPoly, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct LadderCheck {
    /// `'b'` or `'f'`
    pub species: char,
    pub orbital: usize,
    pub ladder: Ladder,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct FreeHamiltonian {
    pub energies: Vec<Rational>,
    /// `sum_i eps_i ([[b_i^+, b_i^-]] + [[f_i^+, f_i^-]])` at `q = 1`.
    pub matrix: OperatorMatrix<Rational>,
    pub spectrum: Vec<Rational>,
    pub ladder: Vec<LadderCheck>,
    /// Whether `sum_i eps_i (H_i + H_{i+n})` equals `matrix`.
    pub cartan_form_agrees: bool,
    /// Whether the `H_i + H_{i+n}` form satisfies the ladder relations.
    pub cartan_form_ladder_passes: bool,
}

impl FreeHamiltonian {
    pub fn ladder_passes(&self) -> bool {
        self.ladder.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "params": self.matrix.basis().params(),
            "energies": self.energies.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "states": self.matrix.basis().states(),
            "spectrum": self.spectrum.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "ladder": self.ladder.iter().map(|c| json!({
                "operator": format!("{}{}_{}", c.species, c.ladder.symbol(), c.orbital),
                "status": if c.pass { "pass" } else { "fail" },
            })).collect::<Vec<_>>(),
            "ladder_passes": self.ladder_passes(),
            "cartan_sum_form": {
                "equals_supercommutator_form": self.cartan_form_agrees,
                "ladder_passes": self.cartan_form_ladder_passes,
            },
        })
    }
}

fn ladder_holds(h: &OperatorMatrix<Rational>, op: &OperatorMatrix<Rational>, energy: &Rational, ladder: Ladder) -> Result<bool> {
    let lhs = bracket(h, op, BracketKind::Commutator, &Rational::from_i64(1))?;
    let rhs = op.scale(&Rational::from_i64(ladder.sign()).mul(energy));
    Ok(lhs.sub(&rhs)?.is_zero())
}

fn ladder_checks(
    gens: &Generators<Rational>,
    h: &OperatorMatrix<Rational>,
    energies: &[Rational],
) -> Result<Vec<LadderCheck>> {
    let n = gens.params().n;
    let mut out = Vec::new();
    for (k, eps) in energies.iter().enumerate() {
        let i = k + 1;
        for (species, index) in [('b', i), ('f', i + n)] {
            for ladder in [Ladder::Plus, Ladder::Minus] {
                let pass = ladder_holds(h, gens.a(index, ladder)?, eps, ladder)?;
                out.push(LadderCheck {
                    species,
                    orbital: i,
                    ladder,
                    pass,
                });
            }
        }
    }
    Ok(out)
}

/// Builds the free Hamiltonian from the exact generators evaluated at `q = 1`
/// (polynomial evaluation only) and checks `[H, b_i^+-] = +-eps_i b_i^+-`,
/// `[H, f_i^+-] = +-eps_i f_i^+-` in exact rational arithmetic.
pub fn free_hamiltonian(exact: &Generators<LaurentPoly>, energies: &[Rational]) -> Result<FreeHamiltonian> {
    let params = *exact.params();
    if params.n != params.m {
        return Err(Error::RequiresNEqM { n: params.n, m: params.m });
    }
    if energies.len() != params.n {
        return Err(Error::EnergyCount {
            expected: params.n,
            got: energies.len(),
        });
    }
    let gens = exact.evaluate_at(&Rational::from_i64(1))?;
    let n = params.n;
    let one = Rational::from_i64(1);
    let mut h = OperatorMatrix::zero(gens.basis().clone());
    let mut cartan = OperatorMatrix::zero(gens.basis().clone());
    for (k, eps) in energies.iter().enumerate() {
        let (b, f) = (k + 1, k + 1 + n);
        let bb = bracket(gens.a_plus(b)?, gens.a_minus(b)?, BracketKind::Supercommutator, &one)?;
        let ff = bracket(gens.a_plus(f)?, gens.a_minus(f)?, BracketKind::Supercommutator, &one)?;
        h = h.add(&bb.add(&ff)?.scale(eps))?;
        cartan = cartan.add(&gens.h(b)?.add(gens.h(f)?)?.scale(eps))?;
    }
    let h = h.with_label("H_free");
    let ladder = ladder_checks(&gens, &h, energies)?;
    let cartan_form_ladder_passes = ladder_checks(&gens, &cartan, energies)?.iter().all(|c| c.pass);
    Ok(FreeHamiltonian {
        energies: energies.to_vec(),
        spectrum: h.matrix.diagonal_values(),
        cartan_form_agrees: h.matrix == cartan.matrix,
        cartan_form_ladder_passes,
        ladder,
        matrix: h,
    })
}

/// `[[a_i^-, a_i^+]] = H_i` for the exact generators evaluated at `q = 1`;
/// returns the indices where it fails.
pub fn classical_limit_failures(exact: &Generators<LaurentPoly>) -> Result<Vec<usize>> {
    let gens = exact.evaluate_at(&Rational::from_i64(1))?;
    let one = Rational::from_i64(1);
    let mut failures = Vec::new();
    for i in 1..=gens.params().rank() {
        let c = bracket(gens.a_minus(i)?, gens.a_plus(i)?, BracketKind::Supercommutator, &one)?;
        if !c.sub(gens.h(i)?)?.is_zero() {
            failures.push(i);
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::FockParams;
    use crate::qarith::parse_rational;

    fn gens(n: usize, m: usize, p: usize) -> Generators<LaurentPoly> {
        Generators::exact(FockParams::new(n, m, p).unwrap()).unwrap()
    }

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn spectrum_counts_particle_energies() {
        let g = gens(1, 1, 2);
        let h = free_hamiltonian(&g, &[q("1")]).unwrap();
        let expect: Vec<Rational> = ["0", "1", "1", "2", "2"].iter().map(|s| q(s)).collect();
        assert_eq!(h.spectrum, expect);
        assert!(h.matrix.matrix.is_diagonal());
        assert!(h.ladder_passes());
    }

    #[test]
    fn ladder_exact_with_fractional_energy() {
        let g = gens(1, 1, 2);
        let h = free_hamiltonian(&g, &[q("3/2")]).unwrap();
        assert!(h.ladder_passes());
        assert_eq!(h.ladder.len(), 4);
        // [H, b_1^+] on the vacuum column is eps_1 times the b_1^+ column
        let one = Rational::from_i64(1);
        let at1 = g.evaluate_at(&one).unwrap();
        let lhs = bracket(&h.matrix, at1.a_plus(1).unwrap(), BracketKind::Commutator, &one).unwrap().on_vacuum();
        let rhs = at1.a_plus(1).unwrap().scale(&q("3/2")).on_vacuum();
        assert_eq!(lhs.matrix, rhs.matrix);
    }

    #[test]
    fn cartan_sum_form_differs() {
        let h = free_hamiltonian(&gens(2, 2, 2), &[q("3/2"), q("2/5")]).unwrap();
        assert!(h.ladder_passes());
        assert!(!h.cartan_form_agrees);
        assert!(!h.cartan_form_ladder_passes);
    }

    #[test]
    fn requires_equal_even_and_odd_counts() {
        assert!(matches!(free_hamiltonian(&gens(2, 1, 2), &[q("1"), q("1")]), Err(Error::RequiresNEqM { .. })));
        assert!(matches!(free_hamiltonian(&gens(1, 1, 2), &[]), Err(Error::EnergyCount { .. })));
    }

    #[test]
    fn classical_limit_holds() {
        for (n, m, p) in [(1, 1, 2), (2, 1, 2), (0, 2, 2), (2, 2, 3)] {
            assert!(classical_limit_failures(&gens(n, m, p)).unwrap().is_empty());
        }
    }
}
