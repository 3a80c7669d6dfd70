//! The relation catalog. Every instance knows how to compute its two sides
//! natively from generator matrices and how to render itself as an identity
//! in the expression language; the two routes are kept independent.

use std::fmt;

use super::chevalley::{q_index_exponent, ChevalleyFamily, ChevalleySet};
use super::order::{cartan_entry, epsilon};
use crate::error::Result;
use crate::fockspace::FockParams;
use crate::operators::{bracket, bracket_q, q_div_diff, BracketKind, Generators, Ladder, OperatorMatrix, Realization};
use crate::qarith::{Rational, Scalar};

/// Relation tag plus the index tuple it is instantiated at.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationId {
    pub tag: &'static str,
    pub indices: Vec<i64>,
}

impl RelationId {
    pub fn new(tag: &'static str, indices: Vec<i64>) -> Self {
        Self { tag, indices }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.tag, self.indices)
    }
}

/// Which of the two printed right-hand sides of the general triple relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleForm {
    /// correction term `(q - 1/q) [[a_k, a_j]] a_i` on the left of `a_i`
    Middle,
    /// correction term `q^xi (q - 1/q) a_i [[a_k, a_j]]`
    Right,
}

/// A relation among the creation/annihilation generators `H_i, L_i, a_i^+-`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CagRelation {
    /// `[H_i, H_j] = 0`
    HCommute { i: usize, j: usize },
    /// `[H_i, a_j^+-] = -+(1 + (-1)^theta_i delta_ij) a_j^+-`
    HAction { i: usize, j: usize, ladder: Ladder },
    /// `[[a_i^-, a_i^+]] = (L_i - Lbar_i) / (q - 1/q)`
    LadderBracket { tag: &'static str, i: usize },
    /// `[[ [[a_i^eta, a_{i+xi}^{-eta}]], a_k^eta ]]_{q^{xi(1+(-1)^theta_i delta_ik)}}
    ///  = eta^theta_k delta_{k,i+xi} L_k^{-xi eta} a_i^eta`
    AdjacentTriple { i: usize, xi: i64, eta: Ladder, k: usize },
    /// `[[a_i^xi, a_j^xi]]_q = 0`
    QCommute { tag: &'static str, i: usize, j: usize, ladder: Ladder },
    /// `[[a_i^xi, a_i^xi]] = 0`
    SelfBracket { i: usize, ladder: Ladder },
    /// `a_i^- |0> = 0`
    VacuumAnnihilated { i: usize },
    /// `H_i |0> = p |0>`
    VacuumWeight { i: usize },
    /// `[[a_i^-, a_j^+]] |0> = 0`, `i != j`
    VacuumMixed { i: usize, j: usize },
    /// `L_i Lbar_i = 1` (`l_first`) or `Lbar_i L_i = 1`
    LInverse { i: usize, l_first: bool },
    /// `L_i L_j = L_j L_i`
    LCommute { i: usize, j: usize },
    /// `L_i a_j^+- = q^{-+(1 + (-1)^theta_i delta_ij)} a_j^+- L_i`
    LConjugation { i: usize, j: usize, ladder: Ladder },
    /// The general triple relation for `xi (j - i) > 0`.
    Triple { i: usize, j: usize, k: usize, eta: Ladder, form: TripleForm },
}

/// A relation among the reconstructed Chevalley generators at a sample `q0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChevRelation {
    /// `[h_i, h_j] = 0`
    HCommute { i: usize, j: usize },
    /// `[h_i, e_j] = alpha_ij e_j`, `[h_i, f_j] = -alpha_ij f_j`
    Weight { i: usize, j: usize, family: ChevalleyFamily },
    /// `[[e_i, f_j]] = delta_ij (k_i - kbar_i) / (q - 1/q)`
    EF { i: usize, j: usize },
    /// `[x_i, x_j] = 0` for `|i - j| >= 2`
    Commute { i: usize, j: usize, family: ChevalleyFamily },
    /// `x_{n+1}^2 = 0`
    Square { i: usize, family: ChevalleyFamily },
    /// `[x_i, [x_i, x_j]_{q^-k}]_{q^k} = 0`, `j = i +- 1`, `i != n+1`
    QSerre { i: usize, j: usize, k: i64, family: ChevalleyFamily },
    /// `{x_{n+1}, [[x_n, x_{n+1}]_{q^k}, x_{n+2}]_{q^-k}} = 0`
    OddSerre { k: i64, family: ChevalleyFamily },
    /// `a_i^- = [a_{i-1}^-, e_i]_{1/q_{i-1}}`, `a_i^+ = [f_i, a_{i-1}^+]_{q_{i-1}}`
    /// (and `a_1^- = e_1`, `a_1^+ = f_1`)
    RoundTripA { i: usize, ladder: Ladder },
    /// `H_i = h_1 + (-1)^theta_1 h_2 + ... + (-1)^theta_{i-1} h_i`
    RoundTripH { i: usize },
}

/// A catalog slot: either a checkable relation or an inapplicable one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry<T> {
    Check(T),
    Skipped { id: RelationId, reason: String },
}

fn theta(params: &FockParams, i: usize) -> i64 {
    params.theta(i).expect("index checked by catalog") as i64
}

fn parity(params: &FockParams, i: usize) -> i64 {
    if theta(params, i) == 0 {
        1
    } else {
        -1
    }
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

fn family_sign(f: ChevalleyFamily) -> i64 {
    match f {
        ChevalleyFamily::E => 1,
        ChevalleyFamily::F => -1,
    }
}

/// `[H_i, a_j^ladder] = coeff * a_j^ladder`
fn h_action_coeff(params: &FockParams, i: usize, j: usize, ladder: Ladder) -> i64 {
    -ladder.sign() * (1 + parity(params, i) * delta(i, j))
}

/// Deformation exponent `xi (1 + (-1)^theta_i delta_ik)`.
fn triple_exponent(params: &FockParams, i: usize, k: usize, xi: i64) -> i64 {
    xi * (1 + parity(params, i) * delta(i, k))
}

/// `eta^theta`: `-1` only for `eta = -` and odd `theta`.
fn eta_power(eta: Ladder, th: i64) -> i64 {
    if eta == Ladder::Minus && th == 1 {
        -1
    } else {
        1
    }
}

impl CagRelation {
    pub fn id(&self) -> RelationId {
        let s = |l: Ladder| l.sign();
        match *self {
            Self::HCommute { i, j } => RelationId::new("6a", vec![i as i64, j as i64]),
            Self::HAction { i, j, ladder } => RelationId::new("6b", vec![i as i64, j as i64, s(ladder)]),
            Self::LadderBracket { tag, i } => RelationId::new(tag, vec![i as i64]),
            Self::AdjacentTriple { i, xi, eta, k } => RelationId::new("6d", vec![i as i64, k as i64, xi, s(eta)]),
            Self::QCommute { tag, i, j, ladder } => RelationId::new(tag, vec![i as i64, j as i64, s(ladder)]),
            Self::SelfBracket { i, ladder } => RelationId::new("6e", vec![i as i64, i as i64, s(ladder)]),
            Self::VacuumAnnihilated { i } => RelationId::new("7a", vec![i as i64]),
            Self::VacuumWeight { i } => RelationId::new("7b", vec![i as i64]),
            Self::VacuumMixed { i, j } => RelationId::new("7c", vec![i as i64, j as i64]),
            Self::LInverse { i, l_first } => RelationId::new(if l_first { "11a" } else { "11b" }, vec![i as i64]),
            Self::LCommute { i, j } => RelationId::new("11c", vec![i as i64, j as i64]),
            Self::LConjugation { i, j, ladder } => RelationId::new("11d", vec![i as i64, j as i64, s(ladder)]),
            Self::Triple { i, j, k, eta, form } => {
                let xi = if j > i { 1 } else { -1 };
                let tag = match form {
                    TripleForm::Middle => "13m",
                    TripleForm::Right => "13r",
                };
                RelationId::new(tag, vec![i as i64, j as i64, k as i64, xi, s(eta)])
            }
        }
    }

    /// Both sides of the relation, computed from generator matrices.
    pub fn sides<R: Realization>(
        &self,
        real: &R,
        gens: &Generators<R::S>,
    ) -> Result<(OperatorMatrix<R::S>, OperatorMatrix<R::S>)> {
        let params = *gens.params();
        let basis = gens.basis().clone();
        let zero = || OperatorMatrix::<R::S>::zero(basis.clone());
        let int = |v: i64| R::S::from_i64(v);
        let one = R::S::one();
        let q_diff = real.q_pow(1)?.sub(&real.q_pow(-1)?);
        let sc = BracketKind::Supercommutator;
        Ok(match *self {
            Self::HCommute { i, j } => (bracket(gens.h(i)?, gens.h(j)?, BracketKind::Commutator, &one)?, zero()),
            Self::HAction { i, j, ladder } => {
                let a = gens.a(j, ladder)?;
                (
                    bracket(gens.h(i)?, a, BracketKind::Commutator, &one)?,
                    a.scale(&int(h_action_coeff(&params, i, j, ladder))),
                )
            }
            Self::LadderBracket { i, .. } => (
                bracket(gens.a_minus(i)?, gens.a_plus(i)?, sc, &one)?,
                q_div_diff(real, gens.l(i, 1)?, gens.l(i, -1)?)?,
            ),
            Self::AdjacentTriple { i, xi, eta, k } => {
                let target = (i as i64 + xi) as usize;
                let inner = bracket(gens.a(i, eta)?, gens.a(target, eta.flip())?, sc, &one)?;
                let lhs = bracket_q(real, &inner, gens.a(k, eta)?, sc, triple_exponent(&params, i, k, xi))?;
                let rhs = if k == target {
                    let l = gens.l(k, -xi * eta.sign())?;
                    l.mul(gens.a(i, eta)?)?.scale(&int(eta_power(eta, theta(&params, k))))
                } else {
                    zero()
                };
                (lhs, rhs)
            }
            Self::QCommute { i, j, ladder, .. } => (bracket_q(real, gens.a(i, ladder)?, gens.a(j, ladder)?, sc, 1)?, zero()),
            Self::SelfBracket { i, ladder } => (bracket(gens.a(i, ladder)?, gens.a(i, ladder)?, sc, &one)?, zero()),
            Self::VacuumAnnihilated { i } => (gens.a_minus(i)?.on_vacuum(), zero()),
            Self::VacuumWeight { i } => (
                gens.h(i)?.on_vacuum(),
                OperatorMatrix::identity(basis.clone()).scale(&int(params.p as i64)).on_vacuum(),
            ),
            Self::VacuumMixed { i, j } => (bracket(gens.a_minus(i)?, gens.a_plus(j)?, sc, &one)?.on_vacuum(), zero()),
            Self::LInverse { i, l_first } => {
                let (a, b) = if l_first { (gens.l(i, 1)?, gens.l(i, -1)?) } else { (gens.l(i, -1)?, gens.l(i, 1)?) };
                (a.mul(b)?, OperatorMatrix::identity(basis.clone()))
            }
            Self::LCommute { i, j } => (gens.l(i, 1)?.mul(gens.l(j, 1)?)?, gens.l(j, 1)?.mul(gens.l(i, 1)?)?),
            Self::LConjugation { i, j, ladder } => {
                let a = gens.a(j, ladder)?;
                let l = gens.l(i, 1)?;
                (l.mul(a)?, a.mul(l)?.scale(&real.q_pow(h_action_coeff(&params, i, j, ladder))?))
            }
            Self::Triple { i, j, k, eta, form } => {
                let xi = if j > i { 1 } else { -1 };
                let ai = gens.a(i, eta)?;
                let inner = bracket(ai, gens.a(j, eta.flip())?, sc, &one)?;
                let lhs = bracket_q(real, &inner, gens.a(k, eta)?, sc, triple_exponent(&params, i, k, xi))?;
                let base = if j == k {
                    gens.l(k, -xi * eta.sign())?.mul(ai)?.scale(&int(eta_power(eta, theta(&params, j))))
                } else {
                    zero()
                };
                let eps = epsilon(j as i64, k as i64, i as i64);
                let kj = bracket(gens.a(k, eta)?, gens.a(j, eta.flip())?, sc, &one)?;
                let correction = match form {
                    TripleForm::Middle => kj.mul(ai)?.scale(&int(parity(&params, k) * eps).mul(&q_diff)),
                    TripleForm::Right => {
                        let sign = if theta(&params, k) * theta(&params, j) == 1 { -1 } else { 1 };
                        ai.mul(&kj)?.scale(&int(sign * eps).mul(&real.q_pow(xi)?).mul(&q_diff))
                    }
                };
                (lhs, base.add(&correction)?)
            }
        })
    }

    /// The relation as an identity in the expression language.
    pub fn to_dsl(&self, params: &FockParams) -> String {
        match *self {
            Self::HCommute { i, j } => format!("comm(H({i}), H({j})) == 0"),
            Self::HAction { i, j, ladder } => format!(
                "comm(H({i}), {a}) == {}",
                scaled(h_action_coeff(params, i, j, ladder), &a_atom(j, ladder)),
                a = a_atom(j, ladder)
            ),
            Self::LadderBracket { i, .. } => format!("scomm(Am({i}), Ap({i})) == qdivdiff(L({i}), Linv({i}))"),
            Self::AdjacentTriple { i, xi, eta, k } => {
                let target = (i as i64 + xi) as usize;
                let lhs = format!(
                    "scomm(scomm({}, {}), {}, {})",
                    a_atom(i, eta),
                    a_atom(target, eta.flip()),
                    a_atom(k, eta),
                    triple_exponent(params, i, k, xi)
                );
                let rhs = if k == target {
                    scaled(
                        eta_power(eta, theta(params, k)),
                        &format!("{} * {}", l_atom(k, -xi * eta.sign()), a_atom(i, eta)),
                    )
                } else {
                    "0".to_string()
                };
                format!("{lhs} == {rhs}")
            }
            Self::QCommute { i, j, ladder, .. } => {
                format!("scomm({}, {}, 1) == 0", a_atom(i, ladder), a_atom(j, ladder))
            }
            Self::SelfBracket { i, ladder } => format!("scomm({a}, {a}) == 0", a = a_atom(i, ladder)),
            Self::VacuumAnnihilated { i } => format!("Am({i}) * Vac == 0"),
            Self::VacuumWeight { i } => format!("H({i}) * Vac == {} * Vac", params.p),
            Self::VacuumMixed { i, j } => format!("scomm(Am({i}), Ap({j})) * Vac == 0"),
            Self::LInverse { i, l_first } => {
                if l_first {
                    format!("L({i}) * Linv({i}) == 1")
                } else {
                    format!("Linv({i}) * L({i}) == 1")
                }
            }
            Self::LCommute { i, j } => format!("L({i}) * L({j}) == L({j}) * L({i})"),
            Self::LConjugation { i, j, ladder } => format!(
                "L({i}) * {a} == q^{} * {a} * L({i})",
                h_action_coeff(params, i, j, ladder),
                a = a_atom(j, ladder)
            ),
            Self::Triple { i, j, k, eta, form } => {
                let xi: i64 = if j > i { 1 } else { -1 };
                let lhs = format!(
                    "scomm(scomm({}, {}), {}, {})",
                    a_atom(i, eta),
                    a_atom(j, eta.flip()),
                    a_atom(k, eta),
                    triple_exponent(params, i, k, xi)
                );
                let base = if j == k {
                    scaled(
                        eta_power(eta, theta(params, j)),
                        &format!("{} * {}", l_atom(k, -xi * eta.sign()), a_atom(i, eta)),
                    )
                } else {
                    "0".to_string()
                };
                let eps = epsilon(j as i64, k as i64, i as i64);
                let kj = format!("scomm({}, {})", a_atom(k, eta), a_atom(j, eta.flip()));
                let correction = match form {
                    TripleForm::Middle => {
                        format!("{} * (q - q^-1) * {kj} * {}", parity(params, k) * eps, a_atom(i, eta))
                    }
                    TripleForm::Right => {
                        let sign = if theta(params, k) * theta(params, j) == 1 { -1 } else { 1 };
                        format!("{} * q^{xi} * (q - q^-1) * {} * {kj}", sign * eps, a_atom(i, eta))
                    }
                };
                format!("{lhs} == {base} + {correction}")
            }
        }
    }
}

impl ChevRelation {
    pub fn id(&self) -> RelationId {
        let fs = |f: ChevalleyFamily| family_sign(f);
        match *self {
            Self::HCommute { i, j } => RelationId::new("1a", vec![i as i64, j as i64]),
            Self::Weight { i, j, family } => RelationId::new("1b", vec![i as i64, j as i64, fs(family)]),
            Self::EF { i, j } => RelationId::new("1c", vec![i as i64, j as i64]),
            Self::Commute { i, j, family } => RelationId::new("2a", vec![i as i64, j as i64, fs(family)]),
            Self::Square { i, family } => RelationId::new("2a", vec![i as i64, i as i64, fs(family)]),
            Self::QSerre { i, j, k, family } => RelationId::new("2b", vec![i as i64, j as i64, k, fs(family)]),
            Self::OddSerre { k, family } => RelationId::new("2c", vec![k, fs(family)]),
            Self::RoundTripA { i, ladder } => RelationId::new("4a", vec![i as i64, ladder.sign()]),
            Self::RoundTripH { i } => RelationId::new("4h", vec![i as i64]),
        }
    }

    pub fn sides(&self, set: &ChevalleySet) -> Result<(OperatorMatrix<Rational>, OperatorMatrix<Rational>)> {
        let params = *set.params();
        let real = set.sample();
        let gens = set.gens();
        let basis = gens.basis().clone();
        let zero = || OperatorMatrix::<Rational>::zero(basis.clone());
        let one = Rational::one();
        let comm = BracketKind::Commutator;
        Ok(match *self {
            Self::HCommute { i, j } => (bracket(set.h(i)?, set.h(j)?, comm, &one)?, zero()),
            Self::Weight { i, j, family } => {
                let x = set.family(family, j)?;
                let alpha = cartan_entry(&params, i, j)?;
                (
                    bracket(set.h(i)?, x, comm, &one)?,
                    x.scale(&Rational::from_i64(family_sign(family) * alpha)),
                )
            }
            Self::EF { i, j } => {
                let lhs = bracket(set.e(i)?, set.f(j)?, BracketKind::Supercommutator, &one)?;
                let rhs = if i == j { q_div_diff(real, set.k(i, 1)?, set.k(i, -1)?)? } else { zero() };
                (lhs, rhs)
            }
            Self::Commute { i, j, family } => (bracket(set.family(family, i)?, set.family(family, j)?, comm, &one)?, zero()),
            Self::Square { i, family } => {
                let x = set.family(family, i)?;
                (x.mul(x)?, zero())
            }
            Self::QSerre { i, j, k, family } => {
                let xi = set.family(family, i)?;
                let inner = bracket_q(real, xi, set.family(family, j)?, comm, -k)?;
                (bracket_q(real, xi, &inner, comm, k)?, zero())
            }
            Self::OddSerre { k, family } => {
                let n = params.n;
                let x = |i| set.family(family, i);
                let inner = bracket_q(real, x(n)?, x(n + 1)?, comm, k)?;
                let middle = bracket_q(real, &inner, x(n + 2)?, comm, -k)?;
                (bracket(x(n + 1)?, &middle, BracketKind::Anticommutator, &one)?, zero())
            }
            Self::RoundTripA { i, ladder } => {
                let target = gens.a(i, ladder)?.clone();
                let rebuilt = if i == 1 {
                    match ladder {
                        Ladder::Minus => set.e(1)?.clone(),
                        Ladder::Plus => set.f(1)?.clone(),
                    }
                } else {
                    let qi = q_index_exponent(&params, i - 1)?;
                    match ladder {
                        Ladder::Minus => bracket_q(real, gens.a_minus(i - 1)?, set.e(i)?, comm, -qi)?,
                        Ladder::Plus => bracket_q(real, set.f(i)?, gens.a_plus(i - 1)?, comm, qi)?,
                    }
                };
                (target, rebuilt)
            }
            Self::RoundTripH { i } => {
                let mut sum = zero();
                for j in 1..=i {
                    sum = sum.add(&set.h(j)?.scale(&Rational::from_i64(parity(&params, j - 1))))?;
                }
                (gens.h(i)?.clone(), sum)
            }
        })
    }

    pub fn to_dsl(&self, params: &FockParams) -> String {
        let x = |f: ChevalleyFamily, i: usize| match f {
            ChevalleyFamily::E => format!("E({i})"),
            ChevalleyFamily::F => format!("F({i})"),
        };
        match *self {
            Self::HCommute { i, j } => format!("comm(Hch({i}), Hch({j})) == 0"),
            Self::Weight { i, j, family } => {
                let alpha = cartan_entry(params, i, j).expect("catalog index");
                format!("comm(Hch({i}), {a}) == {}", scaled(family_sign(family) * alpha, &x(family, j)), a = x(family, j))
            }
            Self::EF { i, j } => {
                let rhs = if i == j { format!("qdivdiff(K({i}), Kinv({i}))") } else { "0".into() };
                format!("scomm(E({i}), F({j})) == {rhs}")
            }
            Self::Commute { i, j, family } => format!("comm({}, {}) == 0", x(family, i), x(family, j)),
            Self::Square { i, family } => format!("{}^2 == 0", x(family, i)),
            Self::QSerre { i, j, k, family } => format!(
                "comm({a}, comm({a}, {b}, {}), {k}) == 0",
                -k,
                a = x(family, i),
                b = x(family, j)
            ),
            Self::OddSerre { k, family } => {
                let n = params.n;
                format!(
                    "acomm({b}, comm(comm({a}, {b}, {k}), {c}, {})) == 0",
                    -k,
                    a = x(family, n),
                    b = x(family, n + 1),
                    c = x(family, n + 2)
                )
            }
            Self::RoundTripA { i, ladder } => {
                if i == 1 {
                    return match ladder {
                        Ladder::Minus => "Am(1) == E(1)".into(),
                        Ladder::Plus => "Ap(1) == F(1)".into(),
                    };
                }
                let qi = q_index_exponent(params, i - 1).expect("catalog index");
                match ladder {
                    Ladder::Minus => format!("Am({i}) == comm(Am({}), E({i}), {})", i - 1, -qi),
                    Ladder::Plus => format!("Ap({i}) == comm(F({i}), Ap({}), {qi})", i - 1),
                }
            }
            Self::RoundTripH { i } => {
                let mut rhs = String::new();
                for j in 1..=i {
                    let sign = parity(params, j - 1);
                    if j == 1 {
                        rhs.push_str("Hch(1)");
                    } else {
                        rhs.push_str(if sign > 0 { " + " } else { " - " });
                        rhs.push_str(&format!("Hch({j})"));
                    }
                }
                format!("H({i}) == {rhs}")
            }
        }
    }
}

fn a_atom(i: usize, ladder: Ladder) -> String {
    match ladder {
        Ladder::Plus => format!("Ap({i})"),
        Ladder::Minus => format!("Am({i})"),
    }
}

fn l_atom(i: usize, power: i64) -> String {
    if power > 0 {
        format!("L({i})")
    } else {
        format!("Linv({i})")
    }
}

fn scaled(c: i64, expr: &str) -> String {
    match c {
        0 => "0".into(),
        1 => expr.to_string(),
        -1 => format!("-({expr})"),
        c => format!("{c} * ({expr})"),
    }
}

const LADDERS: [Ladder; 2] = [Ladder::Plus, Ladder::Minus];

/// The defining relations of the creation/annihilation presentation.
pub fn defining_catalog(params: &FockParams) -> Vec<Entry<CagRelation>> {
    let r = params.rank();
    let mut out = Vec::new();
    for i in 1..=r {
        for j in 1..=r {
            out.push(Entry::Check(CagRelation::HCommute { i, j }));
        }
    }
    for i in 1..=r {
        for j in 1..=r {
            for ladder in LADDERS {
                out.push(Entry::Check(CagRelation::HAction { i, j, ladder }));
            }
        }
    }
    for i in 1..=r {
        out.push(Entry::Check(CagRelation::LadderBracket { tag: "6c", i }));
    }
    let before = out.len();
    for i in 1..=r {
        for xi in [1i64, -1] {
            let target = i as i64 + xi;
            if target < 1 || target > r as i64 {
                continue;
            }
            for eta in LADDERS {
                for k in 1..=r {
                    out.push(Entry::Check(CagRelation::AdjacentTriple { i, xi, eta, k }));
                }
            }
        }
    }
    if out.len() == before {
        out.push(Entry::Skipped {
            id: RelationId::new("6d", vec![]),
            reason: "needs n + m >= 2".into(),
        });
    }
    for ladder in LADDERS {
        if r >= 2 {
            out.push(Entry::Check(CagRelation::QCommute { tag: "6e", i: 1, j: 2, ladder }));
        } else {
            out.push(Entry::Skipped {
                id: RelationId::new("6e", vec![1, 2, ladder.sign()]),
                reason: "needs n + m >= 2".into(),
            });
        }
        out.push(Entry::Check(CagRelation::SelfBracket { i: 1, ladder }));
    }
    out
}

/// The vacuum conditions.
pub fn vacuum_catalog(params: &FockParams) -> Vec<Entry<CagRelation>> {
    let r = params.rank();
    let mut out = Vec::new();
    for i in 1..=r {
        out.push(Entry::Check(CagRelation::VacuumAnnihilated { i }));
    }
    for i in 1..=r {
        out.push(Entry::Check(CagRelation::VacuumWeight { i }));
    }
    for i in 1..=r {
        for j in 1..=r {
            if i != j {
                out.push(Entry::Check(CagRelation::VacuumMixed { i, j }));
            }
        }
    }
    if r < 2 {
        out.push(Entry::Skipped {
            id: RelationId::new("7c", vec![]),
            reason: "needs n + m >= 2".into(),
        });
    }
    out
}

/// Relations derived from the defining ones.
pub fn derived_catalog(params: &FockParams) -> Vec<Entry<CagRelation>> {
    let r = params.rank();
    let mut out = Vec::new();
    let pairs: Vec<(usize, usize)> = (1..=r).flat_map(|i| (i + 1..=r).map(move |j| (i, j))).collect();
    let skip = |tag: &'static str| Entry::Skipped {
        id: RelationId::new(tag, vec![]),
        reason: "needs n + m >= 2".into(),
    };
    for &(i, j) in &pairs {
        for ladder in LADDERS {
            out.push(Entry::Check(CagRelation::QCommute { tag: "8", i, j, ladder }));
        }
    }
    if pairs.is_empty() {
        out.push(skip("8"));
    }
    for i in 1..=r {
        out.push(Entry::Check(CagRelation::LInverse { i, l_first: true }));
        out.push(Entry::Check(CagRelation::LInverse { i, l_first: false }));
    }
    for &(i, j) in &pairs {
        out.push(Entry::Check(CagRelation::LCommute { i, j }));
    }
    if pairs.is_empty() {
        out.push(skip("11c"));
    }
    for i in 1..=r {
        for j in 1..=r {
            for ladder in LADDERS {
                out.push(Entry::Check(CagRelation::LConjugation { i, j, ladder }));
            }
        }
    }
    for i in 1..=r {
        out.push(Entry::Check(CagRelation::LadderBracket { tag: "12a", i }));
    }
    for &(i, j) in &pairs {
        for ladder in LADDERS {
            out.push(Entry::Check(CagRelation::QCommute { tag: "12b", i, j, ladder }));
        }
    }
    if pairs.is_empty() {
        out.push(skip("12b"));
    }
    for form in [TripleForm::Middle, TripleForm::Right] {
        let before = out.len();
        for i in 1..=r {
            for j in 1..=r {
                if i == j {
                    continue;
                }
                for eta in LADDERS {
                    for k in 1..=r {
                        out.push(Entry::Check(CagRelation::Triple { i, j, k, eta, form }));
                    }
                }
            }
        }
        if out.len() == before {
            out.push(skip(if form == TripleForm::Middle { "13m" } else { "13r" }));
        }
    }
    out
}

/// Cartan-Kac and Serre relations plus the round trip back to the
/// creation/annihilation generators.
pub fn chevalley_catalog(params: &FockParams) -> Vec<Entry<ChevRelation>> {
    use ChevalleyFamily::{E, F};
    let r = params.rank();
    let n = params.n;
    let mut out = Vec::new();
    for i in 1..=r {
        for j in 1..=r {
            out.push(Entry::Check(ChevRelation::HCommute { i, j }));
        }
    }
    for family in [E, F] {
        for i in 1..=r {
            for j in 1..=r {
                out.push(Entry::Check(ChevRelation::Weight { i, j, family }));
            }
        }
    }
    for i in 1..=r {
        for j in 1..=r {
            out.push(Entry::Check(ChevRelation::EF { i, j }));
        }
    }
    for family in [E, F] {
        let fs = family_sign(family);
        for i in 1..=r {
            for j in i + 2..=r {
                out.push(Entry::Check(ChevRelation::Commute { i, j, family }));
            }
        }
        if params.m >= 1 {
            out.push(Entry::Check(ChevRelation::Square { i: n + 1, family }));
        } else {
            out.push(Entry::Skipped {
                id: RelationId::new("2a", vec![n as i64 + 1, n as i64 + 1, fs]),
                reason: "no odd simple root (m = 0)".into(),
            });
        }
        let before = out.len();
        for i in 1..=r {
            if i == n + 1 {
                continue;
            }
            for j in [i.wrapping_sub(1), i + 1] {
                if j < 1 || j > r {
                    continue;
                }
                for k in [1i64, -1] {
                    out.push(Entry::Check(ChevRelation::QSerre { i, j, k, family }));
                }
            }
        }
        if out.len() == before {
            out.push(Entry::Skipped {
                id: RelationId::new("2b", vec![fs]),
                reason: "no even simple root with a neighbour".into(),
            });
        }
        for k in [1i64, -1] {
            if n >= 1 && params.m >= 2 {
                out.push(Entry::Check(ChevRelation::OddSerre { k, family }));
            } else {
                out.push(Entry::Skipped {
                    id: RelationId::new("2c", vec![k, fs]),
                    reason: "needs generators n, n+1, n+2 (n >= 1, m >= 2)".into(),
                });
            }
        }
    }
    for i in 1..=r {
        for ladder in [Ladder::Minus, Ladder::Plus] {
            out.push(Entry::Check(ChevRelation::RoundTripA { i, ladder }));
        }
    }
    for i in 1..=r {
        out.push(Entry::Check(ChevRelation::RoundTripH { i }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(entries: &[Entry<CagRelation>], tag: &str) -> usize {
        entries
            .iter()
            .filter(|e| matches!(e, Entry::Check(r) if r.id().tag == tag))
            .count()
    }

    #[test]
    fn adjacent_triple_cardinality() {
        for (n, m) in [(1, 1), (2, 1), (2, 2), (1, 0), (0, 3)] {
            let params = FockParams::new(n, m, 2).unwrap();
            let r = params.rank() as i64;
            let pairs = (1..=r)
                .flat_map(|i| [1i64, -1].into_iter().map(move |xi| i + xi))
                .filter(|t| (1..=r).contains(t))
                .count();
            assert_eq!(count(&defining_catalog(&params), "6d"), pairs * r as usize * 2);
        }
    }

    #[test]
    fn triple_catalog_covers_all_epsilon_values() {
        let params = FockParams::new(2, 1, 2).unwrap();
        let eps: Vec<i64> = derived_catalog(&params)
            .iter()
            .filter_map(|e| match e {
                Entry::Check(CagRelation::Triple { i, j, k, .. }) => Some(epsilon(*j as i64, *k as i64, *i as i64)),
                _ => None,
            })
            .collect();
        for v in [-1, 0, 1] {
            assert!(eps.contains(&v));
        }
    }

    #[test]
    fn rank_one_skips_pair_relations() {
        let params = FockParams::new(0, 1, 2).unwrap();
        let skipped: Vec<&str> = defining_catalog(&params)
            .iter()
            .chain(derived_catalog(&params).iter())
            .filter_map(|e| match e {
                Entry::Skipped { id, .. } => Some(id.tag),
                _ => None,
            })
            .collect();
        for tag in ["6d", "6e", "8", "13m", "13r"] {
            assert!(skipped.contains(&tag), "{tag}");
        }
    }

    #[test]
    fn dsl_rendering_examples() {
        let params = FockParams::new(2, 1, 2).unwrap();
        assert_eq!(
            CagRelation::LadderBracket { tag: "6c", i: 1 }.to_dsl(&params),
            "scomm(Am(1), Ap(1)) == qdivdiff(L(1), Linv(1))"
        );
        assert_eq!(
            CagRelation::QCommute { tag: "8", i: 1, j: 3, ladder: Ladder::Plus }.to_dsl(&params),
            "scomm(Ap(1), Ap(3), 1) == 0"
        );
        assert_eq!(
            CagRelation::HAction { i: 3, j: 3, ladder: Ladder::Plus }.to_dsl(&params),
            "comm(H(3), Ap(3)) == 0"
        );
        assert_eq!(ChevRelation::Square { i: 3, family: ChevalleyFamily::E }.to_dsl(&params), "E(3)^2 == 0");
        assert_eq!(ChevRelation::RoundTripH { i: 3 }.to_dsl(&params), "H(3) == Hch(1) + Hch(2) + Hch(3)");
        let p12 = FockParams::new(1, 2, 2).unwrap();
        assert_eq!(ChevRelation::RoundTripH { i: 3 }.to_dsl(&p12), "H(3) == Hch(1) + Hch(2) - Hch(3)");
    }
}
