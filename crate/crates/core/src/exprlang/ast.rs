use std::fmt;

use num_traits::Signed;

use crate::operators::BracketKind;
use crate::qarith::Rational;

/// Generator symbols. The last five need a reconstructed Chevalley set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    Ap,
    Am,
    H,
    L,
    Linv,
    E,
    F,
    Hch,
    K,
    Kinv,
}

impl Atom {
    pub const ALL: [Atom; 10] = [
        Atom::Ap,
        Atom::Am,
        Atom::H,
        Atom::L,
        Atom::Linv,
        Atom::E,
        Atom::F,
        Atom::Hch,
        Atom::K,
        Atom::Kinv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Atom::Ap => "Ap",
            Atom::Am => "Am",
            Atom::H => "H",
            Atom::L => "L",
            Atom::Linv => "Linv",
            Atom::E => "E",
            Atom::F => "F",
            Atom::Hch => "Hch",
            Atom::K => "K",
            Atom::Kinv => "Kinv",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == name)
    }

    pub fn is_chevalley(self) -> bool {
        matches!(self, Atom::E | Atom::F | Atom::Hch | Atom::K | Atom::Kinv)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Gen(Atom, usize),
    /// Projector onto the vacuum: `X * Vac` keeps only the vacuum column of `X`.
    Vac,
    /// Non-negative rational literal.
    Num(Rational),
    /// The deformation parameter.
    Q,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    /// Bracket deformed by `q^k`.
    Bracket(BracketKind, Box<Expr>, Box<Expr>, i64),
    /// `(a - b) / (q - q^-1)`
    QDivDiff(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Identity {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Expr {
    pub fn gen(atom: Atom, i: usize) -> Self {
        Expr::Gen(atom, i)
    }

    pub fn int(v: i64) -> Self {
        if v < 0 {
            Expr::Neg(Box::new(Expr::Num(Rational::from_integer((-v).into()))))
        } else {
            Expr::Num(Rational::from_integer(v.into()))
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Whether the expression mentions a Chevalley atom.
    pub fn uses_chevalley(&self) -> bool {
        match self {
            Expr::Gen(a, _) => a.is_chevalley(),
            Expr::Vac | Expr::Num(_) | Expr::Q => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.uses_chevalley(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Bracket(_, a, b, _) | Expr::QDivDiff(a, b) => {
                a.uses_chevalley() || b.uses_chevalley()
            }
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.precedence() < min;
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Expr::Gen(a, i) => write!(f, "{}({i})", a.name())?,
            Expr::Vac => f.write_str("Vac")?,
            Expr::Num(r) => write!(f, "{r}")?,
            Expr::Q => f.write_str("q")?,
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write(f, 3)?;
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.write(f, 2)?;
                f.write_str(" * ")?;
                b.write(f, 3)?;
            }
            Expr::Pow(a, k) => {
                match a.as_ref() {
                    Expr::Num(r) if !r.is_integer() => write!(f, "({r})")?,
                    _ => a.write(f, 4)?,
                }
                write!(f, "^{k}")?;
            }
            Expr::Bracket(kind, a, b, k) => {
                write!(f, "{}({a}, {b}", kind.keyword())?;
                if *k != 0 {
                    write!(f, ", {k}")?;
                }
                f.write_str(")")?;
            }
            Expr::QDivDiff(a, b) => write!(f, "qdivdiff({a}, {b})")?,
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Canonical text with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}

/// Integer value of a literal such as `3` or `-2`.
pub(crate) fn as_int(e: &Expr) -> Option<i64> {
    use num_traits::ToPrimitive;
    match e {
        Expr::Num(r) if r.is_integer() && !r.is_negative() => r.to_integer().to_i64(),
        Expr::Neg(inner) => as_int(inner).map(|v| -v),
        _ => None,
    }
}
