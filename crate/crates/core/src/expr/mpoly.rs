//! Sparse multivariate polynomials over the rationals in a fixed, small set of
//! indeterminates, with an exact gcd (recursive primitive remainder sequence).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::symbol::{Symbol, NUM_SYMBOLS};
use crate::scalar::Rational;

/// Exponent vector; lexicographic order with the first symbol most significant.
pub type Monomial = [u16; NUM_SYMBOLS];

const ONE_MONOMIAL: Monomial = [0; NUM_SYMBOLS];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(ONE_MONOMIAL, c);
        }
        p
    }

    pub fn var(s: Symbol) -> Self {
        MPoly::term(Rational::one(), monomial_of(s, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == ONE_MONOMIAL)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.get(&ONE_MONOMIAL).cloned()
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&ONE_MONOMIAL).is_some_and(|c| c.is_one())
    }

    /// Leading term in lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, s: Symbol) -> usize {
        let i = s.index();
        self.terms.keys().map(|m| m[i] as usize).max().unwrap_or(0)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.degree_in(s) > 0
    }

    /// First symbol (in the fixed order) that occurs in `self`.
    fn first_symbol(&self) -> Option<Symbol> {
        Symbol::ALL.iter().copied().find(|&s| self.contains(s))
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mul_monomials(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, lc)) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        let (lm, lc) = divisor.leading()?;
        if divisor.is_constant() {
            return Some(self.scale(&lc.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = div_monomials(rm, lm)?;
            let qc = rc / lc;
            let t = MPoly::term(qc.clone(), qm);
            rem = rem.sub(&t.mul(divisor));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to `s`: entry `k` multiplies `s^k`.
    pub fn coefficients_in(&self, s: Symbol) -> Vec<MPoly> {
        let i = s.index();
        let mut out = vec![MPoly::zero(); self.degree_in(s) + 1];
        for (m, c) in &self.terms {
            let k = m[i] as usize;
            let mut rest = *m;
            rest[i] = 0;
            out[k].add_term(rest, c.clone());
        }
        out
    }

    fn leading_coefficient_in(&self, s: Symbol) -> MPoly {
        self.coefficients_in(s).pop().unwrap_or_default()
    }

    fn shift(&self, s: Symbol, k: u16) -> MPoly {
        let i = s.index();
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut m = *m;
                    m[i] += k;
                    (m, c.clone())
                })
                .collect(),
        }
    }

    /// Gcd of the coefficients with respect to `s`.
    fn content_in(&self, s: Symbol) -> MPoly {
        self.coefficients_in(s)
            .iter()
            .fold(MPoly::zero(), |g, c| gcd(&g, c))
    }

    fn primitive_part_in(&self, s: Symbol) -> MPoly {
        let c = self.content_in(s);
        if c.is_zero() {
            return MPoly::zero();
        }
        self.div_exact(&c).expect("content divides its polynomial")
    }

    /// Evaluates every symbol for which `value` returns `Some`.
    pub fn evaluate_partial(&self, value: &dyn Fn(Symbol) -> Option<Rational>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = *m;
            for s in Symbol::ALL {
                let e = m[s.index()];
                if e == 0 {
                    continue;
                }
                if let Some(v) = value(s) {
                    coeff *= num_traits::pow(v, e as usize);
                    rest[s.index()] = 0;
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    pub(crate) fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars = format_monomial(m);
            if vars.is_empty() {
                write!(f, "{}", crate::scalar::format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{}*{vars}", crate::scalar::format_rational(&abs))?;
            }
        }
        Ok(())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

fn monomial_of(s: Symbol, e: u16) -> Monomial {
    let mut m = ONE_MONOMIAL;
    m[s.index()] = e;
    m
}

fn mul_monomials(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m = *a;
    for (x, y) in m.iter_mut().zip(b) {
        *x += y;
    }
    m
}

fn div_monomials(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    let mut m = *a;
    for (x, y) in m.iter_mut().zip(b) {
        *x = x.checked_sub(*y)?;
    }
    Some(m)
}

fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for s in Symbol::ALL {
        match m[s.index()] {
            0 => {}
            1 => parts.push(s.name().to_string()),
            e => parts.push(format!("{}^{e}", s.name())),
        }
    }
    parts.join("*")
}

/// Pseudo-remainder of `f` by `g` with respect to `s`.
fn pseudo_remainder(f: &MPoly, g: &MPoly, s: Symbol) -> MPoly {
    let dg = g.degree_in(s);
    let lcg = g.leading_coefficient_in(s);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(s) >= dg {
        let dr = r.degree_in(s);
        let lcr = r.leading_coefficient_in(s);
        let sub = lcr.shift(s, (dr - dg) as u16).mul(g);
        r = r.mul(&lcg).sub(&sub);
    }
    r
}

/// Greatest common divisor, normalized to leading coefficient 1 (lex order).
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let s = match (a.first_symbol(), b.first_symbol()) {
        (Some(x), Some(y)) => {
            if x.index() <= y.index() {
                x
            } else {
                y
            }
        }
        _ => unreachable!("non-constant polynomials contain a symbol"),
    };
    if !a.contains(s) {
        return gcd(a, &b.content_in(s));
    }
    if !b.contains(s) {
        return gcd(&a.content_in(s), b);
    }
    let ca = a.content_in(s);
    let cb = b.content_in(s);
    let content = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let (mut f, mut g) = if pa.degree_in(s) >= pb.degree_in(s) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = pseudo_remainder(&f, &g, s);
        if r.is_zero() {
            break;
        }
        if !r.contains(s) {
            g = MPoly::one();
            break;
        }
        f = g;
        g = r.primitive_part_in(s).monic();
    }
    content.mul(&g.primitive_part_in(s)).monic()
}
