use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{rational_powi, rational_to_f64, Rational};
use crate::error::{Error, Result};

/// A Laurent polynomial in `q` with exact rational coefficients.
///
/// Terms are kept in a map from exponent to coefficient; zero coefficients are
/// never stored, so the zero polynomial is the empty map and structural
/// equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// `c * q^exp`
    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `q^exp`
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// `q - q^-1`
    pub fn q_diff() -> Self {
        &Self::q_pow(1) - &Self::q_pow(-1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// A single nonzero term, i.e. a unit of the Laurent ring.
    pub fn as_monomial(&self) -> Option<(i64, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Integer power. Negative exponents are only defined for monomials.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            let (e, c) = self
                .as_monomial()
                .ok_or_else(|| Error::NonUnit(self.to_string()))?;
            return Ok(Self::monomial(rational_powi(c, exp)?, e * exp));
        }
        if let Some((e, c)) = self.as_monomial() {
            return Ok(Self::monomial(rational_powi(c, exp)?, e * exp));
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = exp as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Inverse in the Laurent ring; only monomials are units.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.powi(-1)
    }

    /// Exact quotient `self / divisor`, failing with `NonDivisible` when the
    /// divisor does not divide `self` in the Laurent ring.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Factor out the lowest powers of q, then long-divide ordinary
        // polynomials from the top; the divisor has a nonzero constant term,
        // so divisibility in Q[q, 1/q] and Q[q] coincide.
        let a_lo = self.min_exp().unwrap();
        let b_lo = divisor.min_exp().unwrap();
        let mut rem: BTreeMap<i64, Rational> =
            self.terms.iter().map(|(e, c)| (e - a_lo, c.clone())).collect();
        let b: Vec<(i64, Rational)> = divisor
            .terms
            .iter()
            .map(|(e, c)| (e - b_lo, c.clone()))
            .collect();
        let (b_deg, b_lead) = b.last().cloned().unwrap();
        let mut quotient = Self::zero();
        while let Some((&top, lead)) = rem.iter().next_back() {
            if top < b_deg {
                break;
            }
            let factor = lead / &b_lead;
            let shift = top - b_deg;
            for (e, c) in &b {
                let slot = rem.entry(e + shift).or_insert_with(Rational::zero);
                *slot -= c * &factor;
                if slot.is_zero() {
                    rem.remove(&(e + shift));
                }
            }
            quotient.add_term(shift, factor);
        }
        if !rem.is_empty() {
            return Err(Error::NonDivisible {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            });
        }
        Ok(quotient.shift(a_lo - b_lo))
    }

    /// Substitutes a nonzero rational for `q`.
    pub fn evaluate(&self, q0: &Rational) -> Result<Rational> {
        if q0.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            acc += c * rational_powi(q0, *e)?;
        }
        Ok(acc)
    }

    /// Substitutes a nonzero float for `q`.
    pub fn evaluate_f64(&self, q0: f64) -> Result<f64> {
        if q0 == 0.0 {
            return Err(Error::ZeroPoint);
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| rational_to_f64(c) * q0.powi(*e as i32))
            .sum())
    }

    /// The image under `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }
}

/// The q-number `[x] = (q^x - q^-x) / (q - q^-1)` as a Laurent polynomial.
pub fn q_number(x: i64) -> LaurentPoly {
    let sign = if x < 0 { -1 } else { 1 };
    let n = x.abs();
    LaurentPoly::from_terms(
        (0..n).map(|j| (n - 1 - 2 * j, Rational::from_integer(BigInt::from(sign)))),
    )
}

/// `[x]! = [1][2]...[x]`, with `[0]! = 1`.
pub fn q_factorial(x: u32) -> LaurentPoly {
    (1..=x as i64).fold(LaurentPoly::one(), |acc, k| &acc * &q_number(k))
}

impl<'a> Add for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical form: decreasing exponents, e.g. `-2*q^3 + 1 + 3/2*q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let power = match *e {
                0 => None,
                1 => Some("q".to_string()),
                e => Some(format!("q^{e}")),
            };
            match power {
                None => write!(f, "{mag}")?,
                Some(p) if mag.is_one() => f.write_str(&p)?,
                Some(p) => write!(f, "{mag}*{p}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TermParser { src: s.as_bytes(), pos: 0 }.parse()
    }
}

/// Parser for the Laurent string grammar: signed terms `c`, `c*q^k`, `q^k`,
/// `q`, joined by `+`/`-`.
struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, expected: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            expected: expected.to_string(),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
    }

    fn exponent(&mut self) -> Result<i64> {
        // after 'q'
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let d = self.digits().ok_or_else(|| self.err("integer exponent"))?;
        let v: i64 = i64::try_from(d).map_err(|_| self.err("exponent within i64"))?;
        Ok(if negative { -v } else { v })
    }

    fn term(&mut self) -> Result<(i64, Rational)> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok((self.exponent()?, Rational::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().unwrap();
                let coeff = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.digits().ok_or_else(|| self.err("denominator"))?;
                    if den.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(b'q') {
                        return Err(self.err("'q' after '*'"));
                    }
                    self.pos += 1;
                    Ok((self.exponent()?, coeff))
                } else {
                    Ok((0, coeff))
                }
            }
            _ => Err(self.err("coefficient or 'q'")),
        }
    }

    fn parse(mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (e, c) = self.term()?;
            out.add_term(e, if sign < 0 { -c } else { c });
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return Err(self.err("'+', '-' or end of input")),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// Convolution of dense coefficient vectors, independent of the map-based
    /// multiplication.
    fn convolve(a: &[(i64, i64)], b: &[(i64, i64)]) -> Vec<(i64, i64)> {
        let mut acc = std::collections::HashMap::new();
        for &(ea, ca) in a {
            for &(eb, cb) in b {
                *acc.entry(ea + eb).or_insert(0) += ca * cb;
            }
        }
        let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort();
        v
    }

    #[test]
    fn ring_examples() {
        assert!((&lp("q") * &lp("q^-1")).is_one());
        assert!((&lp("q - q^-1") + &lp("q^-1 - q")).is_zero());
        let sq = lp("q + q^-1").powi(2).unwrap();
        let oracle = convolve(&[(1, 1), (-1, 1)], &[(1, 1), (-1, 1)]);
        assert_eq!(oracle, vec![(-2, 1), (0, 2), (2, 1)]);
        assert_eq!(sq, lp("q^2 + 2 + q^-2"));
    }

    #[test]
    fn negative_power_only_for_units() {
        assert_eq!(lp("2*q^3").powi(-2).unwrap(), lp("1/4*q^-6"));
        assert!(matches!(lp("q + 1").powi(-1), Err(Error::NonUnit(_))));
        assert_eq!(LaurentPoly::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn exact_division_examples() {
        let d = LaurentPoly::q_diff();
        assert_eq!(lp("q^2 - q^-2").div_exact(&d).unwrap(), lp("q + q^-1"));
        assert!(LaurentPoly::zero().div_exact(&d).unwrap().is_zero());
        // long-division oracle: (q^2 + 1 + q^-2)(q - q^-1) = q^3 - q^-3
        let prod = convolve(&[(2, 1), (0, 1), (-2, 1)], &[(1, 1), (-1, -1)]);
        assert_eq!(prod, vec![(-3, -1), (3, 1)]);
        assert_eq!(lp("q^3 - q^-3").div_exact(&d).unwrap(), lp("q^2 + 1 + q^-2"));
        assert!(matches!(lp("q").div_exact(&d), Err(Error::NonDivisible { .. })));
        assert_eq!(lp("q").div_exact(&LaurentPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn q_number_examples() {
        assert!(q_number(0).is_zero());
        assert!(q_number(1).is_one());
        assert_eq!(q_number(2), lp("q + q^-1"));
        assert_eq!(q_number(-3), lp("-q^2 - 1 - q^-2"));
        // definition check: [x](q - q^-1) = q^x - q^-x
        for x in -8..=8 {
            let lhs = &q_number(x) * &LaurentPoly::q_diff();
            assert_eq!(lhs, &LaurentPoly::q_pow(x) - &LaurentPoly::q_pow(-x));
        }
        assert_eq!(q_factorial(0), LaurentPoly::one());
        assert_eq!(q_factorial(3), &q_number(2) * &q_number(3));
    }

    #[test]
    fn q_number_symmetries() {
        let one = Rational::one();
        for x in -20..=20 {
            assert_eq!(q_number(-x), -q_number(x));
            assert_eq!(q_number(x).evaluate(&one).unwrap(), Rational::from_integer(x.into()));
        }
    }

    #[test]
    fn evaluation_examples() {
        let one = Rational::one();
        assert_eq!(lp("q + q^-1").evaluate(&one).unwrap(), r(2, 1));
        for x in 0..=6 {
            assert_eq!(q_number(x).evaluate(&one).unwrap(), r(x, 1));
        }
        assert_eq!(q_number(2).evaluate(&r(2, 1)).unwrap(), r(5, 2));
        assert_eq!(lp("q").evaluate(&r(0, 1)), Err(Error::ZeroPoint));
        assert_eq!(lp("q").evaluate_f64(0.0), Err(Error::ZeroPoint));
        assert!((q_number(2).evaluate_f64(2.0).unwrap() - 2.5).abs() < 1e-15);
    }

    #[test]
    fn canonical_text_form() {
        let p = LaurentPoly::from_terms([(3, r(-2, 1)), (0, r(1, 1)), (-1, r(3, 2))]);
        assert_eq!(p.to_string(), "-2*q^3 + 1 + 3/2*q^-1");
        assert_eq!(lp("-2*q^3 + 1 + 3/2*q^-1"), p);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(lp("q").to_string(), "q");
        assert_eq!(lp("-q").to_string(), "-q");
        assert_eq!(lp("1/2*q - 1/3*q^-1").to_string(), "1/2*q - 1/3*q^-1");
        // non-canonical input is normalised
        assert_eq!(lp("q + q - 2*q"), LaurentPoly::zero());
        assert!("2q".parse::<LaurentPoly>().is_err());
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..=4, -6i64..=6, 1i64..=4), 0..5).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(e, n, d)| (e, r(n, d))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn exact_division_inverts_product(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            let text = a.to_string();
            prop_assert_eq!(text.parse::<LaurentPoly>().unwrap(), a.clone());
            prop_assert_eq!(text.parse::<LaurentPoly>().unwrap().to_string(), text);
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), n in 1i64..7, d in 1i64..7) {
            let q0 = r(n, d);
            let ea = a.evaluate(&q0).unwrap();
            let eb = b.evaluate(&q0).unwrap();
            prop_assert_eq!((&a * &b).evaluate(&q0).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).evaluate(&q0).unwrap(), ea + eb);
        }
    }
}
