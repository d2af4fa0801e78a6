//! Exact rational functions in the fixed symbol set.
//!
//! A [`ParamExpr`] is stored as `numerator / denominator` with the two
//! polynomials coprime and the denominator's lex-leading coefficient equal to
//! one. That representation is unique, so structural equality is equality of
//! rational functions and `is_zero` decides identical vanishing.

mod mpoly;
mod symbol;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use mpoly::{gcd, MPoly, Monomial};
pub use symbol::{Symbol, NUM_SYMBOLS};

use crate::error::{QesError, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamExpr {
    num: MPoly,
    den: MPoly,
}

impl ParamExpr {
    pub fn symbol(s: Symbol) -> Self {
        ParamExpr {
            num: MPoly::var(s),
            den: MPoly::one(),
        }
    }

    pub fn constant(q: Rational) -> Self {
        ParamExpr {
            num: MPoly::constant(q),
            den: MPoly::one(),
        }
    }

    pub fn from_polys(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "ParamExpr denominator is identically zero");
        Self::normalized(num, den)
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return ParamExpr {
                num,
                den: MPoly::one(),
            };
        }
        if let Some(c) = den.as_constant() {
            return ParamExpr {
                num: num.scale(&c.recip()),
                den: MPoly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient();
        let inv = lc.recip();
        ParamExpr {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        self.as_rational()
            .ok_or_else(|| QesError::NotConstant(self.to_string()))
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.num.contains(s) || self.den.contains(s)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.num.is_zero(), "reciprocal of zero ParamExpr");
        Self::normalized(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        ParamExpr {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Replaces every symbol for which `value` returns `Some` by that rational.
    pub fn evaluate_partial(&self, value: &dyn Fn(Symbol) -> Option<Rational>) -> Self {
        let den = self.den.evaluate_partial(value);
        assert!(!den.is_zero(), "denominator vanishes at evaluation point");
        Self::normalized(self.num.evaluate_partial(value), den)
    }

    /// Replaces the symbol `s` by the expression `value`.
    pub fn substitute(&self, s: Symbol, value: &ParamExpr) -> Self {
        let num = substitute_poly(&self.num, s, value);
        let den = substitute_poly(&self.den, s, value);
        num / den
    }

    /// If `self` (as a numerator, the denominator free of `s`) is of degree one
    /// in `s`, returns the root `s = -p/q` of `q*s + p`.
    pub fn solve_linear(&self, s: Symbol) -> Option<ParamExpr> {
        if self.den.contains(s) || self.num.degree_in(s) != 1 {
            return None;
        }
        let coeffs = self.num.coefficients_in(s);
        let p = ParamExpr::from_polys(coeffs[0].clone(), MPoly::one());
        let q = ParamExpr::from_polys(coeffs[1].clone(), MPoly::one());
        Some(-(p / q))
    }
}

fn substitute_poly(p: &MPoly, s: Symbol, value: &ParamExpr) -> ParamExpr {
    let mut acc = ParamExpr::zero();
    let mut power = ParamExpr::one();
    for coeff in p.coefficients_in(s) {
        if !coeff.is_zero() {
            acc = acc + ParamExpr::from_polys(coeff, MPoly::one()) * power.clone();
        }
        power = power * value.clone();
    }
    acc
}

impl From<Symbol> for ParamExpr {
    fn from(s: Symbol) -> Self {
        ParamExpr::symbol(s)
    }
}

impl From<Rational> for ParamExpr {
    fn from(q: Rational) -> Self {
        ParamExpr::constant(q)
    }
}

impl From<i64> for ParamExpr {
    fn from(n: i64) -> Self {
        ParamExpr::from_int(n)
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return self.num.fmt_terms(f);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamExpr({self})")
    }
}

impl Zero for ParamExpr {
    fn zero() -> Self {
        ParamExpr::constant(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for ParamExpr {
    fn one() -> Self {
        ParamExpr::constant(Rational::one())
    }
}

impl Scalar for ParamExpr {
    fn from_rational(q: &Rational) -> Self {
        ParamExpr::constant(q.clone())
    }

    fn needs_parens(&self) -> bool {
        !self.den.is_one() || self.num.term_count() > 1 || self.num.as_constant().is_some_and(|c| !c.is_integer())
    }
}

impl<'a> Add<&'a ParamExpr> for &'a ParamExpr {
    type Output = ParamExpr;
    fn add(self, rhs: &ParamExpr) -> ParamExpr {
        if self.den == rhs.den {
            return ParamExpr::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        ParamExpr::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl<'a> Sub<&'a ParamExpr> for &'a ParamExpr {
    type Output = ParamExpr;
    fn sub(self, rhs: &ParamExpr) -> ParamExpr {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ParamExpr> for &'a ParamExpr {
    type Output = ParamExpr;
    fn mul(self, rhs: &ParamExpr) -> ParamExpr {
        if self.num.is_zero() || rhs.num.is_zero() {
            return ParamExpr::zero();
        }
        ParamExpr::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl<'a> Div<&'a ParamExpr> for &'a ParamExpr {
    type Output = ParamExpr;
    fn div(self, rhs: &ParamExpr) -> ParamExpr {
        assert!(!rhs.num.is_zero(), "division by identically zero ParamExpr");
        ParamExpr::normalized(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
}

impl Neg for &ParamExpr {
    type Output = ParamExpr;
    fn neg(self) -> ParamExpr {
        ParamExpr {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<ParamExpr> for ParamExpr {
            type Output = ParamExpr;
            fn $m(self, rhs: ParamExpr) -> ParamExpr {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ParamExpr> for ParamExpr {
            type Output = ParamExpr;
            fn $m(self, rhs: &'a ParamExpr) -> ParamExpr {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for ParamExpr {
    type Output = ParamExpr;
    fn neg(self) -> ParamExpr {
        -&self
    }
}

/// Shorthand for a symbol as an expression.
pub fn sym(s: Symbol) -> ParamExpr {
    ParamExpr::symbol(s)
}

/// Shorthand for a rational constant `p/q`.
pub fn rat(p: i64, q: i64) -> ParamExpr {
    ParamExpr::constant(crate::scalar::ratio(p, q))
}
