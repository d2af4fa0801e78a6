//! One-dimensional Dunkl calculus: reflection, parity decomposition, the Dunkl
//! derivative `D = d/dx + (μ/x)(1 − R)` on polynomials and on symmetric grids,
//! and the exact action of the Dunkl Hamiltonian with the mass profile
//! `m(x) = a²m₀/(a² + x²)` on polynomials of definite parity.

use std::fmt;
use std::str::FromStr;

use crate::error::{QesError, Result};
use crate::operator::{DiffOperator2, RationalOperator};
use crate::poly::{Poly, RationalPoly};
use crate::scalar::{ratio, to_f64, Rational, Scalar};

/// The Dunkl parameter, `μ > −1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DunklParam {
    mu: Rational,
}

impl DunklParam {
    pub fn new(mu: Rational) -> Result<Self> {
        if mu <= ratio(-1, 2) {
            return Err(QesError::InvalidParameter(format!(
                "Dunkl parameter mu must satisfy mu > -1/2, got {mu}"
            )));
        }
        Ok(DunklParam { mu })
    }

    pub fn value(&self) -> &Rational {
        &self.mu
    }

    pub fn as_f64(&self) -> f64 {
        to_f64(&self.mu)
    }
}

/// Eigenspace of the reflection `R f(x) = f(−x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParitySector {
    Even,
    Odd,
}

impl ParitySector {
    pub const BOTH: [ParitySector; 2] = [ParitySector::Even, ParitySector::Odd];

    /// Reflection eigenvalue `s`.
    pub fn eigenvalue(self) -> i64 {
        match self {
            ParitySector::Even => 1,
            ParitySector::Odd => -1,
        }
    }

    pub fn from_eigenvalue(s: i64) -> Option<Self> {
        match s {
            1 => Some(ParitySector::Even),
            -1 => Some(ParitySector::Odd),
            _ => None,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            ParitySector::Even => ParitySector::Odd,
            ParitySector::Odd => ParitySector::Even,
        }
    }

    /// `(1 − s)/2`: the power of `x` carried by a function of `x²` in this sector.
    pub fn x_power(self) -> usize {
        match self {
            ParitySector::Even => 0,
            ParitySector::Odd => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ParitySector::Even => "even",
            ParitySector::Odd => "odd",
        }
    }
}

impl fmt::Display for ParitySector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ParitySector {
    type Err = QesError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" | "+1" | "1" => Ok(ParitySector::Even),
            "odd" | "-1" => Ok(ParitySector::Odd),
            other => Err(QesError::InvalidParameter(format!(
                "sector must be 'even' or 'odd', got {other:?}"
            ))),
        }
    }
}

/// Values on the symmetric grid `x = ±(j − 1/2)h`, `j = 1..=N`, stored in
/// ascending order of `x`. The origin is never a node and the spacing is
/// uniform across it.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    h: f64,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(h: f64, values: Vec<f64>) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(QesError::InvalidGrid(format!("spacing must be positive, got {h}")));
        }
        if values.is_empty() || values.len() % 2 != 0 {
            return Err(QesError::InvalidGrid(format!(
                "symmetric grid needs an even, nonzero number of nodes, got {}",
                values.len()
            )));
        }
        Ok(GridFunction { h, values })
    }

    /// Samples `f` on `2·half_nodes` nodes with spacing `h`.
    pub fn sample(half_nodes: usize, h: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        let xs = symmetric_nodes(half_nodes, h);
        GridFunction::new(h, xs.iter().map(|&x| f(x)).collect())
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn half_nodes(&self) -> usize {
        self.values.len() / 2
    }

    pub fn nodes(&self) -> Vec<f64> {
        symmetric_nodes(self.half_nodes(), self.h)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Values at the positive nodes, ascending.
    pub fn positive_half(&self) -> &[f64] {
        &self.values[self.half_nodes()..]
    }

    fn with_values(&self, values: Vec<f64>) -> Self {
        GridFunction { h: self.h, values }
    }
}

fn symmetric_nodes(half_nodes: usize, h: f64) -> Vec<f64> {
    let n = half_nodes as i64;
    (-n..n).map(|j| (j as f64 + 0.5) * h).collect()
}

/// Reflection `f(x) ↦ f(−x)`.
pub trait Reflect: Sized {
    fn reflect(&self) -> Self;

    /// `((f + Rf)/2, (f − Rf)/2)`
    fn parity_decompose(&self) -> (Self, Self);
}

impl<C: Scalar> Reflect for Poly<C> {
    fn reflect(&self) -> Self {
        Poly::new(
            self.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    fn parity_decompose(&self) -> (Self, Self) {
        let r = self.reflect();
        let half = C::from_rational(&ratio(1, 2));
        ((self + &r).scale(&half), (self - &r).scale(&half))
    }
}

impl Reflect for GridFunction {
    fn reflect(&self) -> Self {
        self.with_values(self.values.iter().rev().copied().collect())
    }

    fn parity_decompose(&self) -> (Self, Self) {
        let r = self.reflect();
        let combine = |sign: f64| {
            self.with_values(
                self.values
                    .iter()
                    .zip(&r.values)
                    .map(|(a, b)| 0.5 * (a + sign * b))
                    .collect(),
            )
        };
        (combine(1.0), combine(-1.0))
    }
}

/// `D x^k = (k + 2μ·[k odd]) x^{k−1}`, extended linearly.
pub fn dunkl_apply_poly<C: Scalar>(p: &Poly<C>, mu: &C) -> Poly<C> {
    let two_mu = C::from_int(2) * mu.clone();
    Poly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                let mut factor = C::from_int(k as i64);
                if k % 2 == 1 {
                    factor = factor + two_mu.clone();
                }
                c.clone() * factor
            })
            .collect(),
    )
}

/// Dunkl derivative of an exact rational polynomial.
pub fn dunkl_derivative(p: &RationalPoly, mu: &DunklParam) -> RationalPoly {
    dunkl_apply_poly(p, mu.value())
}

/// Result of the grid Dunkl derivative. The two outermost nodes use one-sided
/// first-order differences and are marked in `low_accuracy`.
#[derive(Clone, Debug)]
pub struct GridDerivative {
    pub values: GridFunction,
    pub low_accuracy: Vec<bool>,
}

/// Central differences plus the exact reflection term `(μ/x)(f(x) − f(−x))`.
pub fn dunkl_apply_grid(f: &GridFunction, mu: &DunklParam) -> GridDerivative {
    let m = mu.as_f64();
    let h = f.h;
    let v = &f.values;
    let n = v.len();
    let xs = f.nodes();
    let mut out = Vec::with_capacity(n);
    let mut flags = vec![false; n];
    for i in 0..n {
        let diff = if i == 0 {
            flags[i] = true;
            (v[1] - v[0]) / h
        } else if i == n - 1 {
            flags[i] = true;
            (v[n - 1] - v[n - 2]) / h
        } else {
            (v[i + 1] - v[i - 1]) / (2.0 * h)
        };
        let reflected = v[n - 1 - i];
        out.push(diff + m / xs[i] * (v[i] - reflected));
    }
    GridDerivative {
        values: f.with_values(out),
        low_accuracy: flags,
    }
}

/// The Dunkl derivative of a function of definite parity, computed from its
/// values at the positive nodes only: the node at `−h/2` is recovered as
/// `s·f(h/2)` and the reflection term becomes `(μ(1 − s)/x) f(x)`.
pub fn dunkl_apply_sector(
    positive_values: &[f64],
    h: f64,
    mu: &DunklParam,
    sector: ParitySector,
) -> Vec<f64> {
    let n = positive_values.len();
    let s = sector.eigenvalue() as f64;
    let tail = mu.as_f64() * (1.0 - s);
    (0..n)
        .map(|i| {
            let x = (i as f64 + 0.5) * h;
            let left = if i == 0 { s * positive_values[0] } else { positive_values[i - 1] };
            let diff = if i == n - 1 {
                (positive_values[i] - positive_values[i - 1]) / h
            } else {
                (positive_values[i + 1] - left) / (2.0 * h)
            };
            diff + tail / x * positive_values[i]
        })
        .collect()
}

/// The Dunkl Hamiltonian `H = −½ D (m^{-1/2} D (m^{-1/2} ·))` with
/// `m = a²m₀/(a² + x²)`, restricted to parity sector `s`, as an operator with
/// rational coefficients.
///
/// Since `1/m = (a² + x²)/(a²m₀)` and `D` acts on a parity-`s` function as
/// `d + γ/x` with `γ = μ(1 − s)`, one gets
/// `−2a²m₀·x²·H = (x d + δ − 1)∘[(a² + x²)(x d + γ) + x²]`, `δ = μ(1 + s)`.
pub fn pdm_hamiltonian_operator<C: Scalar>(
    a: &C,
    m0: &C,
    mu: &C,
    sector: ParitySector,
) -> RationalOperator<C> {
    let s = C::from_int(sector.eigenvalue());
    let gamma = mu.clone() * (C::one() - s.clone());
    let delta = mu.clone() * (C::one() + s);
    let a2 = a.clone() * a.clone();
    let x = Poly::<C>::x();
    let x2 = &x * &x;
    let a2_plus_x2 = &Poly::constant(a2.clone()) + &x2;
    let inner = DiffOperator2::first_order(x.clone(), Poly::constant(gamma))
        .premultiply(&a2_plus_x2)
        .add(&DiffOperator2::multiplication(x2.clone()));
    let outer = DiffOperator2::first_order(x, Poly::constant(delta - C::one()));
    let k = outer
        .compose(&inner)
        .expect("product of two first-order operators has order two");
    let factor = -(C::one() / (C::from_int(2) * a2 * m0.clone()));
    RationalOperator::new(k.scale(&factor), x2)
}

/// `H f` for a polynomial `f` of the given parity. The result is again a
/// polynomial; `None` if `f` does not have that parity.
pub fn pdm_hamiltonian_apply<C: Scalar>(
    f: &Poly<C>,
    a: &C,
    m0: &C,
    mu: &C,
    sector: ParitySector,
) -> Option<Poly<C>> {
    let right_parity = match sector {
        ParitySector::Even => f.is_even(),
        ParitySector::Odd => f.is_odd(),
    };
    if !right_parity {
        return None;
    }
    let h = pdm_hamiltonian_operator(a, m0, mu, sector);
    h.op.apply(f).div_exact(&h.den)
}

/// `1/√m(x)` for the profile `m = a²m₀/(a² + x²)`.
pub fn inverse_sqrt_mass(x: f64, a: f64, m0: f64) -> f64 {
    ((a * a + x * x) / (a * a * m0)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn mu(p: i64, q: i64) -> DunklParam {
        DunklParam::new(ratio(p, q)).unwrap()
    }

    fn monomial(k: usize) -> RationalPoly {
        Poly::monomial(int(1), k)
    }

    #[test]
    fn rejects_mu_at_or_below_minus_half() {
        assert!(DunklParam::new(ratio(-1, 2)).is_err());
        assert!(DunklParam::new(int(-1)).is_err());
        assert!(DunklParam::new(ratio(-49, 100)).is_ok());
    }

    #[test]
    fn reflection_of_polynomials() {
        assert_eq!(monomial(3).reflect(), -monomial(3));
        let p: RationalPoly = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(p.reflect(), p);
    }

    #[test]
    fn reflection_on_grid_is_pointwise() {
        let f = GridFunction::sample(5, 0.1, |x| x + x * x).unwrap();
        let r = f.reflect();
        for (x, v) in f.nodes().iter().zip(r.values()) {
            assert!((v - (-x + x * x)).abs() < 1e-15);
        }
    }

    #[test]
    fn parity_decomposition() {
        let (e, o) = Poly::<Rational>::from_ints(&[1, 1]).parity_decompose();
        assert_eq!(e, Poly::from_ints(&[1]));
        assert_eq!(o, Poly::from_ints(&[0, 1]));
        let (e, o) = monomial(4).parity_decompose();
        assert_eq!(e, monomial(4));
        assert!(o.is_zero());

        let g = GridFunction::sample(8, 0.05, |x| x.powi(3) + x * x).unwrap();
        let (e, o) = g.parity_decompose();
        for (i, x) in g.nodes().iter().enumerate() {
            assert!((e.values()[i] - x * x).abs() < 1e-15);
            assert!((o.values()[i] - x.powi(3)).abs() < 1e-15);
        }
    }

    #[test]
    fn dunkl_on_monomials() {
        assert_eq!(dunkl_derivative(&monomial(3), &mu(1, 2)), Poly::from_ints(&[0, 0, 4]));
        assert_eq!(dunkl_derivative(&monomial(2), &mu(7, 3)), Poly::from_ints(&[0, 2]));
        assert!(dunkl_derivative(&monomial(0), &mu(5, 1)).is_zero());
    }

    #[test]
    fn dunkl_maps_parity_to_opposite_parity() {
        let m = mu(3, 4);
        for k in 1..=20 {
            let d = dunkl_derivative(&monomial(k), &m);
            assert_eq!(d.degree(), Some(k - 1));
            if k % 2 == 0 {
                assert!(d.is_odd());
            } else {
                assert!(d.is_even());
            }
        }
    }

    #[test]
    fn grid_dunkl_of_linear_function_is_exact() {
        let m = mu(7, 10);
        let f = GridFunction::sample(20, 0.1, |x| x).unwrap();
        let d = dunkl_apply_grid(&f, &m);
        for v in d.values.values() {
            assert!((v - (1.0 + 2.0 * 0.7)).abs() < 1e-12, "{v}");
        }
        assert!(d.low_accuracy[0] && d.low_accuracy[39]);
        assert!(!d.low_accuracy[1..39].iter().any(|&b| b));
    }

    #[test]
    fn grid_dunkl_of_constant_is_zero() {
        let f = GridFunction::sample(10, 0.2, |_| 3.0).unwrap();
        let d = dunkl_apply_grid(&f, &mu(2, 1));
        assert!(d.values.values().iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn grid_dunkl_of_square_converges_quadratically() {
        // D x² = 2x, central differences are exact on quadratics
        let f = GridFunction::sample(30, 0.05, |x| x * x).unwrap();
        let d = dunkl_apply_grid(&f, &mu(7, 10));
        for (i, x) in f.nodes().iter().enumerate().skip(1).take(58) {
            assert!((d.values.values()[i] - 2.0 * x).abs() < 1e-12);
        }
    }

    #[test]
    fn sector_reduction_matches_full_grid() {
        let m = mu(3, 5);
        for (sector, g) in [
            (ParitySector::Even, (|x: f64| x.powi(4) - 2.0 * x * x + 1.0) as fn(f64) -> f64),
            (ParitySector::Odd, |x: f64| x.powi(3) + x),
        ] {
            let f = GridFunction::sample(25, 0.04, g).unwrap();
            let full = dunkl_apply_grid(&f, &m);
            let reduced = dunkl_apply_sector(f.positive_half(), 0.04, &m, sector);
            let full_pos = full.values.positive_half();
            for i in 0..24 {
                assert!((full_pos[i] - reduced[i]).abs() < 1e-12, "{sector} node {i}");
            }
        }
    }

    #[test]
    fn hamiltonian_operator_matches_dunkl_route() {
        // H f = −1/(2a²m₀) · D[(a² + x²) D f + x f], built from the Dunkl derivative
        let (a, m0) = (ratio(3, 2), ratio(2, 1));
        for (mu_val, sector, coeffs) in [
            (ratio(1, 3), ParitySector::Even, vec![2, 0, -1, 0, 5]),
            (ratio(3, 4), ParitySector::Odd, vec![0, 1, 0, 4, 0, -2]),
            (ratio(0, 1), ParitySector::Even, vec![1, 0, 1]),
        ] {
            let f: RationalPoly = Poly::from_ints(&coeffs);
            let a2x2: RationalPoly = Poly::new(vec![&a * &a, int(0), int(1)]);
            let inner = &(&a2x2 * &dunkl_apply_poly(&f, &mu_val)) + &(&Poly::x() * &f);
            let expected = dunkl_apply_poly(&inner, &mu_val)
                .scale(&-(int(2) * &a * &a * &m0).recip());
            let got = pdm_hamiltonian_apply(&f, &a, &m0, &mu_val, sector).unwrap();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn hamiltonian_rejects_wrong_parity() {
        let f: RationalPoly = Poly::from_ints(&[1, 1]);
        assert!(pdm_hamiltonian_apply(&f, &int(1), &int(1), &int(0), ParitySector::Even).is_none());
    }

    proptest! {
        #[test]
        fn zero_mu_is_ordinary_derivative(c in prop::collection::vec(-9i64..10, 0..12)) {
            let p: RationalPoly = Poly::from_ints(&c);
            prop_assert_eq!(dunkl_derivative(&p, &mu(0, 1)), p.derivative());
        }

        #[test]
        fn parity_parts_sum_back(c in prop::collection::vec(-9i64..10, 0..12)) {
            let p: RationalPoly = Poly::from_ints(&c);
            let (e, o) = p.parity_decompose();
            prop_assert!(e.is_even() && o.is_odd());
            prop_assert_eq!(&e + &o, p);
        }
    }
}
