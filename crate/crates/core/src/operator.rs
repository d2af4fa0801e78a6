//! Second-order linear differential operators with polynomial coefficients:
//! application, composition, the quadratic change of variable `x² = −a²z`
//! and conjugation by a gauge factor.

use std::fmt;

use num_traits::Zero;

use crate::error::{QesError, Result};
use crate::poly::{Poly, RationalFunction};
use crate::scalar::{Rational, Scalar};

/// `d2(x)·d²/dx² + d1(x)·d/dx + d0(x)`
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOperator2<C: Scalar> {
    pub d2: Poly<C>,
    pub d1: Poly<C>,
    pub d0: Poly<C>,
}

impl<C: Scalar> DiffOperator2<C> {
    pub fn new(d2: Poly<C>, d1: Poly<C>, d0: Poly<C>) -> Self {
        DiffOperator2 { d2, d1, d0 }
    }

    pub fn zero() -> Self {
        DiffOperator2::new(Poly::zero(), Poly::zero(), Poly::zero())
    }

    pub fn identity() -> Self {
        DiffOperator2::multiplication(Poly::one())
    }

    pub fn multiplication(p: Poly<C>) -> Self {
        DiffOperator2::new(Poly::zero(), Poly::zero(), p)
    }

    /// `q1·d/dx + q0`
    pub fn first_order(q1: Poly<C>, q0: Poly<C>) -> Self {
        DiffOperator2::new(Poly::zero(), q1, q0)
    }

    pub fn derivative() -> Self {
        DiffOperator2::first_order(Poly::one(), Poly::zero())
    }

    pub fn second_derivative() -> Self {
        DiffOperator2::new(Poly::one(), Poly::zero(), Poly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.d2.is_zero() && self.d1.is_zero() && self.d0.is_zero()
    }

    /// Highest derivative with a nonzero coefficient; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        if !self.d2.is_zero() {
            Some(2)
        } else if !self.d1.is_zero() {
            Some(1)
        } else if !self.d0.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn apply(&self, p: &Poly<C>) -> Poly<C> {
        let dp = p.derivative();
        let ddp = dp.derivative();
        &(&(&self.d2 * &ddp) + &(&self.d1 * &dp)) + &(&self.d0 * p)
    }

    pub fn scale(&self, c: &C) -> Self {
        DiffOperator2::new(self.d2.scale(c), self.d1.scale(c), self.d0.scale(c))
    }

    /// Left multiplication by a polynomial.
    pub fn premultiply(&self, p: &Poly<C>) -> Self {
        DiffOperator2::new(p * &self.d2, p * &self.d1, p * &self.d0)
    }

    pub fn add(&self, other: &Self) -> Self {
        DiffOperator2::new(
            &self.d2 + &other.d2,
            &self.d1 + &other.d1,
            &self.d0 + &other.d0,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        DiffOperator2::new(
            &self.d2 - &other.d2,
            &self.d1 - &other.d1,
            &self.d0 - &other.d0,
        )
    }

    /// `self ∘ other`. Fails when the product has order above two.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let (a2, a1, a0) = (&self.d2, &self.d1, &self.d0);
        let (b2, b1, b0) = (&other.d2, &other.d1, &other.d0);
        let b2p = b2.derivative();
        let b1p = b1.derivative();
        let b0p = b0.derivative();
        let order4 = a2 * b2;
        let order3 = &(a2 * &(&b2p.scale(&C::from_int(2)) + b1)) + &(a1 * b2);
        if !order4.is_zero() {
            return Err(QesError::OrderTooHigh(4));
        }
        if !order3.is_zero() {
            return Err(QesError::OrderTooHigh(3));
        }
        let d2 = &(&(a2 * &(&(&b2p.derivative() + &b1p.scale(&C::from_int(2))) + b0))
            + &(a1 * &(&b2p + b1)))
            + &(a0 * b2);
        let d1 = &(&(a2 * &(&b1p.derivative() + &b0p.scale(&C::from_int(2))))
            + &(a1 * &(&b1p + b0)))
            + &(a0 * b1);
        let d0 = &(&(a2 * &b0p.derivative()) + &(a1 * &b0p)) + &(a0 * b0);
        Ok(DiffOperator2::new(d2, d1, d0))
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D + Copy) -> DiffOperator2<D> {
        DiffOperator2::new(self.d2.map(f), self.d1.map(f), self.d0.map(f))
    }

    /// Rewrites an operator in `x` as an operator in `z = −x²/a²`.
    ///
    /// Requires `d2` and `d0` even and `d1` odd in `x`, which is exactly the
    /// condition for the operator to map functions of `x²` to functions of `x²`.
    pub fn substitute_quadratic(&self, a: &Rational) -> Result<DiffOperator2<C>> {
        if !crate::scalar::is_positive(a) {
            return Err(QesError::InvalidParameter(format!(
                "length scale a must be positive, got {a}"
            )));
        }
        check_parity(&self.d2, 2, true)?;
        check_parity(&self.d1, 1, false)?;
        check_parity(&self.d0, 0, true)?;
        let a2 = C::from_rational(&(a * a));
        let inv_a2 = C::one() / a2.clone();
        let d2_z = even_to_z(&self.d2, &a2);
        let x_d1_z = even_to_z(&(&Poly::x() * &self.d1), &a2);
        let minus_two_over_a2 = -(C::from_int(2) * inv_a2.clone());
        // d/dx = (−2x/a²) d/dz,  d²/dx² = (−4z/a²) d²/dz² + (−2/a²) d/dz
        let new_d2 = d2_z.shift_up(1).scale(&(-(C::from_int(4) * inv_a2)));
        let new_d1 = (&d2_z + &x_d1_z).scale(&minus_two_over_a2);
        let new_d0 = even_to_z(&self.d0, &a2);
        Ok(DiffOperator2::new(new_d2, new_d1, new_d0))
    }

    pub fn format_in(&self, var: &str) -> String {
        let mut parts = Vec::new();
        for (coeff, suffix) in [
            (&self.d2, format!("d^2/d{var}^2")),
            (&self.d1, format!("d/d{var}")),
            (&self.d0, String::new()),
        ] {
            if coeff.is_zero() {
                continue;
            }
            let c = coeff.format_in(var);
            if suffix.is_empty() {
                parts.push(format!("({c})"));
            } else {
                parts.push(format!("({c})*{suffix}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn check_parity<C: Scalar>(p: &Poly<C>, order: usize, even: bool) -> Result<()> {
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() && (k % 2 == 0) != even {
            return Err(QesError::OddCoefficient { order, degree: k });
        }
    }
    Ok(())
}

/// `Σ c_{2j} x^{2j}` with `x² = −a²z` becomes `Σ c_{2j} (−a²)^j z^j`.
fn even_to_z<C: Scalar>(p: &Poly<C>, a2: &C) -> Poly<C> {
    let minus_a2 = -a2.clone();
    let mut factor = C::one();
    let mut out = Vec::new();
    for c in p.coeffs().iter().step_by(2) {
        out.push(c.clone() * factor.clone());
        factor = factor * minus_a2.clone();
    }
    Poly::new(out)
}

impl<C: Scalar> fmt::Display for DiffOperator2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("x"))
    }
}

impl<C: Scalar> fmt::Debug for DiffOperator2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOperator2[{self}]")
    }
}

/// `(1/den)·op`: a second-order operator with rational-function coefficients
/// kept over a common polynomial denominator.
#[derive(Clone, Debug)]
pub struct RationalOperator<C: Scalar> {
    pub op: DiffOperator2<C>,
    pub den: Poly<C>,
}

impl<C: Scalar> RationalOperator<C> {
    pub fn new(op: DiffOperator2<C>, den: Poly<C>) -> Self {
        assert!(!den.is_zero(), "operator denominator is zero");
        RationalOperator { op, den }
    }

    pub fn polynomial(op: DiffOperator2<C>) -> Self {
        RationalOperator::new(op, Poly::one())
    }

    /// Cancels the common polynomial factor and makes the denominator monic.
    pub fn reduce(&self) -> Self {
        let g = [&self.op.d2, &self.op.d1, &self.op.d0]
            .into_iter()
            .fold(self.den.clone(), |g, p| g.gcd(p));
        let div = |p: &Poly<C>| p.div_exact(&g).expect("gcd divides");
        let den = div(&self.den);
        let lc = den.leading().cloned().expect("nonzero denominator");
        let inv = C::one() / lc;
        RationalOperator {
            op: DiffOperator2::new(
                div(&self.op.d2).scale(&inv),
                div(&self.op.d1).scale(&inv),
                div(&self.op.d0).scale(&inv),
            ),
            den: den.scale(&inv),
        }
    }

    /// Equality as operators with rational coefficients.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.op.premultiply(&other.den) == other.op.premultiply(&self.den)
    }

    /// The polynomial operator, if the denominator divides every coefficient.
    pub fn to_polynomial(&self) -> Option<DiffOperator2<C>> {
        Some(DiffOperator2::new(
            self.op.d2.div_exact(&self.den)?,
            self.op.d1.div_exact(&self.den)?,
            self.op.d0.div_exact(&self.den)?,
        ))
    }

    /// Change of variable `x² = −a²z`; the denominator must be even in `x`.
    pub fn substitute_quadratic(&self, a: &Rational) -> Result<Self> {
        check_parity(&self.den, 0, true)?;
        let op = self.op.substitute_quadratic(a)?;
        let a2 = C::from_rational(&(a * a));
        Ok(RationalOperator::new(op, even_to_z(&self.den, &a2)))
    }
}

/// `G⁻¹·op·G` for a gauge factor with logarithmic derivative `G'/G = N/D`:
/// `d ↦ d + N/D`, `d² ↦ d² + 2(N/D)d + (N/D)² + (N/D)'`, returned over the
/// common denominator `D²` and reduced.
pub fn gauge_similarity<C: Scalar>(
    op: &DiffOperator2<C>,
    logderiv: &RationalFunction<C>,
) -> RationalOperator<C> {
    let n = &logderiv.num;
    let d = &logderiv.den;
    let two = C::from_int(2);
    let d_sq = d * d;
    let nd = n * d;
    // (N/D)² + (N/D)' = (N² + N'D − ND') / D²
    let shift = &(&(n * n) + &(&n.derivative() * d)) - &(n * &d.derivative());
    let new_d2 = &d_sq * &op.d2;
    let new_d1 = &(&nd.scale(&two) * &op.d2) + &(&d_sq * &op.d1);
    let new_d0 = &(&(&op.d2 * &shift) + &(&op.d1 * &nd)) + &(&op.d0 * &d_sq);
    RationalOperator::new(DiffOperator2::new(new_d2, new_d1, new_d0), d_sq).reduce()
}

/// True when `op` annihilates `p`.
pub fn annihilates<C: Scalar>(op: &DiffOperator2<C>, p: &Poly<C>) -> bool {
    op.apply(p).coeffs().iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{rat, sym, Symbol};
    use crate::poly::{ParamPoly, RationalPoly};
    use crate::scalar::int;
    use proptest::prelude::*;

    fn q(c: &[i64]) -> RationalPoly {
        Poly::from_ints(c)
    }

    #[test]
    fn second_derivative_of_square() {
        let op = DiffOperator2::<Rational>::second_derivative();
        assert_eq!(op.apply(&q(&[0, 0, 1])), q(&[2]));
    }

    #[test]
    fn zero_operator_kills_everything() {
        let op = DiffOperator2::<Rational>::zero();
        assert!(op.apply(&q(&[3, 1, 4, 1, 5])).is_zero());
        assert_eq!(op.order(), None);
    }

    #[test]
    fn model_operator_on_linear_ansatz() {
        // (z²−z³)d² + [(α2−α3)z² + (α1+α3)z]d + (α4 z + α5) applied to b0 + b1 z,
        // with (b0, b1) = (2, 3); hand collection:
        //   z²: b1(α2−α3+α4),  z: b1(α1+α3+α5) + α4 b0,  1: α5 b0
        let a = |s| sym(s);
        use Symbol::*;
        let op: DiffOperator2<_> = DiffOperator2::new(
            ParamPoly::new(vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(-1, 1)]),
            ParamPoly::new(vec![rat(0, 1), a(Alpha1) + a(Alpha3), a(Alpha2) - a(Alpha3)]),
            ParamPoly::new(vec![a(Alpha5), a(Alpha4)]),
        );
        let (b0, b1) = (rat(2, 1), rat(3, 1));
        let p = ParamPoly::new(vec![b0.clone(), b1.clone()]);
        let got = op.apply(&p);
        let expected = ParamPoly::new(vec![
            a(Alpha5) * b0.clone(),
            b1.clone() * (a(Alpha1) + a(Alpha3) + a(Alpha5)) + a(Alpha4) * b0,
            b1 * (a(Alpha2) - a(Alpha3) + a(Alpha4)),
        ]);
        assert_eq!(got, expected);
    }

    #[test]
    fn quadratic_substitution_of_second_derivative() {
        let op = DiffOperator2::<Rational>::second_derivative();
        let z_op = op.substitute_quadratic(&int(1)).unwrap();
        assert_eq!(z_op, DiffOperator2::new(q(&[0, -4]), q(&[-2]), q(&[])));
    }

    #[test]
    fn quadratic_substitution_of_multiplication() {
        let op = DiffOperator2::multiplication(q(&[0, 0, 1]));
        let z_op = op.substitute_quadratic(&int(2)).unwrap();
        assert_eq!(z_op, DiffOperator2::multiplication(q(&[0, -4])));
        let zero = DiffOperator2::<Rational>::zero();
        assert_eq!(zero.substitute_quadratic(&int(3)).unwrap(), zero);
    }

    #[test]
    fn quadratic_substitution_rejects_wrong_parity() {
        let op = DiffOperator2::multiplication(q(&[0, 1]));
        assert_eq!(
            op.substitute_quadratic(&int(1)),
            Err(QesError::OddCoefficient { order: 0, degree: 1 })
        );
        let op = DiffOperator2::first_order(q(&[1]), q(&[]));
        assert!(matches!(
            op.substitute_quadratic(&int(1)),
            Err(QesError::OddCoefficient { order: 1, degree: 0 })
        ));
        assert!(DiffOperator2::<Rational>::identity()
            .substitute_quadratic(&int(0))
            .is_err());
    }

    #[test]
    fn gauge_with_zero_logderiv_is_identity() {
        let op = DiffOperator2::new(q(&[1, 2]), q(&[0, 3]), q(&[5]));
        let g = gauge_similarity(&op, &RationalFunction::zero());
        assert_eq!(g.to_polynomial().unwrap(), op);
    }

    #[test]
    fn gauge_first_order_constant_shift() {
        // G = e^{cx}: d ↦ d + c
        let c = int(7);
        let g = gauge_similarity(
            &DiffOperator2::derivative(),
            &RationalFunction::polynomial(Poly::constant(c.clone())),
        );
        assert_eq!(
            g.to_polynomial().unwrap(),
            DiffOperator2::first_order(q(&[1]), Poly::constant(c))
        );
    }

    #[test]
    fn gauge_second_derivative_by_x() {
        // G = x: d² ↦ d² + (2/x) d, the zeroth-order term (1/x)² + (1/x)' cancels
        let g = gauge_similarity(
            &DiffOperator2::second_derivative(),
            &RationalFunction::new(q(&[1]), q(&[0, 1])),
        );
        let expected = RationalOperator::new(
            DiffOperator2::new(q(&[0, 1]), q(&[2]), q(&[])),
            q(&[0, 1]),
        );
        assert!(g.equivalent(&expected));
        assert_eq!(g.den, q(&[0, 1]));
        assert!(g.op.d0.is_zero());
    }

    #[test]
    fn composition_of_first_order_operators() {
        // (x²d − x)(d) = x² d² − x d at n = 1
        let jp = DiffOperator2::first_order(q(&[0, 0, 1]), q(&[0, -1]));
        let jm = DiffOperator2::derivative();
        let prod = jp.compose(&jm).unwrap();
        assert_eq!(prod, DiffOperator2::new(q(&[0, 0, 1]), q(&[0, -1]), q(&[])));
        assert_eq!(
            DiffOperator2::<Rational>::second_derivative().compose(&DiffOperator2::derivative()),
            Err(QesError::OrderTooHigh(3))
        );
    }

    fn arb_poly(max_len: usize) -> impl Strategy<Value = RationalPoly> {
        prop::collection::vec(-6i64..7, 0..max_len).prop_map(|c| Poly::from_ints(&c))
    }

    fn arb_even(max_half: usize) -> impl Strategy<Value = RationalPoly> {
        prop::collection::vec(-6i64..7, 0..max_half).prop_map(|c| {
            let mut full = Vec::new();
            for v in c {
                full.push(v);
                full.push(0);
            }
            Poly::from_ints(&full)
        })
    }

    proptest! {
        #[test]
        fn application_is_linear(
            d2 in arb_poly(4), d1 in arb_poly(4), d0 in arb_poly(4),
            p in arb_poly(7), r in arb_poly(7),
        ) {
            let op = DiffOperator2::new(d2, d1, d0);
            prop_assert_eq!(op.apply(&(&p + &r)), &op.apply(&p) + &op.apply(&r));
        }

        #[test]
        fn substitution_commutes_with_application(
            d2 in arb_even(3), d1_half in arb_even(3), d0 in arb_even(3),
            zq in prop::collection::vec(-6i64..7, 0..7),
            a_num in 1i64..4, a_den in 1i64..3,
        ) {
            let a = crate::scalar::ratio(a_num, a_den);
            let d1 = &Poly::x() * &d1_half;
            let op = DiffOperator2::new(d2, d1, d0);
            let zpoly: RationalPoly = Poly::from_ints(&zq);
            // p(x) = q(−x²/a²)
            let minus_inv_a2 = -(a.clone() * a.clone()).recip();
            let mut xc = vec![Rational::zero(); 2 * zpoly.coeffs().len()];
            let mut factor = Rational::from_integer(1.into());
            for (j, c) in zpoly.coeffs().iter().enumerate() {
                xc[2 * j] = c * &factor;
                factor *= &minus_inv_a2;
            }
            let px = Poly::new(xc);
            let lhs = op.apply(&px);
            let z_op = op.substitute_quadratic(&a).unwrap();
            let rhs = z_op.apply(&zpoly);
            // express lhs (even in x) in z and compare
            prop_assert!(lhs.is_even());
            let a2 = &a * &a;
            let lhs_z = even_to_z(&lhs, &a2);
            prop_assert_eq!(lhs_z, rhs);
        }
    }
}
