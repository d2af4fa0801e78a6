//! The sl(2) generators `J⁺ = z²d − nz`, `J⁰ = zd − n/2`, `J⁻ = d` acting on
//! polynomials of degree at most `n`, quadratic combinations of them, and the
//! finite matrix problem of the model operator on that invariant subspace.

use std::fmt;

use crate::error::{QesError, Result};
use crate::expr::ParamExpr;
use crate::matrix::Matrix;
use crate::model::AlphaParams;
use crate::operator::DiffOperator2;
use crate::poly::Poly;
use crate::scalar::{ratio, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Plus,
    Zero,
    Minus,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::Plus, Generator::Zero, Generator::Minus];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Plus => "J+",
            Generator::Zero => "J0",
            Generator::Minus => "J-",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// First-order differential operator of a generator at spin `n/2`.
pub fn generator_operator<C: Scalar>(g: Generator, n: usize) -> DiffOperator2<C> {
    let n = C::from_int(n as i64);
    match g {
        Generator::Plus => DiffOperator2::first_order(
            Poly::monomial(C::one(), 2),
            Poly::monomial(-n, 1),
        ),
        Generator::Zero => DiffOperator2::first_order(
            Poly::x(),
            Poly::constant(-(n / C::from_int(2))),
        ),
        Generator::Minus => DiffOperator2::derivative(),
    }
}

/// Matrix of an operator on the basis `1, z, …, zⁿ` (column `k` holds the
/// image of `z^k`), together with the coefficients that land above degree
/// `n`: `overflow[d][k]` is the coefficient of `z^{n+1+d}` in the image of `z^k`.
pub fn operator_matrix<C: Scalar>(op: &DiffOperator2<C>, n: usize) -> (Matrix<C>, Vec<Vec<C>>) {
    let images: Vec<Poly<C>> = (0..=n)
        .map(|k| op.apply(&Poly::monomial(C::one(), k)))
        .collect();
    let top = images.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let matrix = Matrix::from_fn(n + 1, n + 1, |i, j| images[j].coeff(i));
    let overflow = (n + 1..=top.max(n))
        .map(|d| images.iter().map(|p| p.coeff(d)).collect())
        .collect();
    (matrix, overflow)
}

/// Exact matrix of a generator on the `(n+1)`-dimensional representation.
pub fn generator_matrix(g: Generator, n: usize) -> Matrix<Rational> {
    let (m, overflow) = operator_matrix(&generator_operator::<Rational>(g, n), n);
    debug_assert!(overflow.iter().flatten().all(|c| c == &ratio(0, 1)));
    m
}

/// `AB − BA`
pub fn commutator<C: Scalar>(a: &Matrix<C>, b: &Matrix<C>) -> Result<Matrix<C>> {
    a.commutator(b)
}

/// Coefficients of `Σ C_ab J^a J^b + Σ C_a J^a + C` over the products
/// `J⁺J⁺, J⁺J⁰, J⁺J⁻, J⁰J⁻, J⁻J⁻`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Coefficients<C> {
    pub c_pp: C,
    pub c_p0: C,
    pub c_pm: C,
    pub c_0m: C,
    pub c_mm: C,
    pub c_p: C,
    pub c_0: C,
    pub c_m: C,
    pub c: C,
}

impl<C: Scalar> Sl2Coefficients<C> {
    pub fn zero() -> Self {
        Sl2Coefficients {
            c_pp: C::zero(),
            c_p0: C::zero(),
            c_pm: C::zero(),
            c_0m: C::zero(),
            c_mm: C::zero(),
            c_p: C::zero(),
            c_0: C::zero(),
            c_m: C::zero(),
            c: C::zero(),
        }
    }

    /// Builds from the nine values in field order.
    pub fn from_array(v: [C; 9]) -> Self {
        let [c_pp, c_p0, c_pm, c_0m, c_mm, c_p, c_0, c_m, c] = v;
        Sl2Coefficients { c_pp, c_p0, c_pm, c_0m, c_mm, c_p, c_0, c_m, c }
    }

    pub fn to_array(&self) -> [C; 9] {
        [
            self.c_pp.clone(),
            self.c_p0.clone(),
            self.c_pm.clone(),
            self.c_0m.clone(),
            self.c_mm.clone(),
            self.c_p.clone(),
            self.c_0.clone(),
            self.c_m.clone(),
            self.c.clone(),
        ]
    }

    pub const NAMES: [&'static str; 9] =
        ["C++", "C+0", "C+-", "C0-", "C--", "C+", "C0", "C-", "C"];
}

/// The quadratic combination, obtained by composing the generator operators.
pub fn build_qes_operator<C: Scalar>(c: &Sl2Coefficients<C>, n: usize) -> DiffOperator2<C> {
    use Generator::*;
    let g = |x| generator_operator::<C>(x, n);
    let product = |a, b| {
        g(a).compose(&g(b))
            .expect("product of two first-order operators has order two")
    };
    let terms = [
        (&c.c_pp, product(Plus, Plus)),
        (&c.c_p0, product(Plus, Zero)),
        (&c.c_pm, product(Plus, Minus)),
        (&c.c_0m, product(Zero, Minus)),
        (&c.c_mm, product(Minus, Minus)),
        (&c.c_p, g(Plus)),
        (&c.c_0, g(Zero)),
        (&c.c_m, g(Minus)),
        (&c.c, DiffOperator2::identity()),
    ];
    terms
        .iter()
        .fold(DiffOperator2::zero(), |acc, (coef, op)| acc.add(&op.scale(coef)))
}

/// The same operator written out from closed-form coefficient polynomials
/// `P₄, P₃, P₂` in the variable `z`. Kept separate from
/// [`build_qes_operator`] so the two can be compared.
pub fn expanded_qes_operator<C: Scalar>(c: &Sl2Coefficients<C>, n: usize) -> DiffOperator2<C> {
    let n = C::from_int(n as i64);
    let int = |k: i64| C::from_int(k);
    let half = C::from_rational(&ratio(1, 2));
    let p4 = Poly::new(vec![
        c.c_mm.clone(),
        c.c_0m.clone(),
        c.c_pm.clone(),
        c.c_p0.clone(),
        c.c_pp.clone(),
    ]);
    let p3 = Poly::new(vec![
        c.c_m.clone() - half.clone() * n.clone() * c.c_0m.clone(),
        c.c_0.clone() - n.clone() * c.c_pm.clone(),
        c.c_p.clone() + c.c_p0.clone() * (C::one() - int(3) * half.clone() * n.clone()),
        c.c_pp.clone() * (int(2) - int(2) * n.clone()),
    ]);
    let p2 = Poly::new(vec![
        c.c.clone() - half.clone() * n.clone() * c.c_0.clone(),
        half * n.clone() * n.clone() * c.c_p0.clone() - n.clone() * c.c_p.clone(),
        c.c_pp.clone() * n.clone() * (n - C::one()),
    ]);
    DiffOperator2::new(p4, p3, p2)
}

/// Coefficients matching the model operator at level `n`, and the
/// quantization constraint `(−n²/2 − n·C₊) − α₄`, which must vanish.
pub fn match_model_coefficients(
    alpha: &AlphaParams,
    n: usize,
) -> (Sl2Coefficients<ParamExpr>, ParamExpr) {
    let nn = ParamExpr::from(n as i64);
    let half = ParamExpr::constant(ratio(1, 2));
    let c_0 = &nn + &(&alpha.a1 + &alpha.a3);
    let c = &alpha.a5 + &(&(&half * &nn) * &c_0);
    let c_p = &(&(&alpha.a2 - &alpha.a3) + &ParamExpr::from(1))
        - &ParamExpr::constant(ratio(3 * n as i64, 2));
    let constraint = &(&(-(&(&half * &nn) * &nn)) - &(&nn * &c_p)) - &alpha.a4;
    let coeffs = Sl2Coefficients {
        c_pp: ParamExpr::from(0),
        c_p0: ParamExpr::from(-1),
        c_pm: ParamExpr::from(1),
        c_0m: ParamExpr::from(0),
        c_mm: ParamExpr::from(0),
        c_p,
        c_0,
        c_m: ParamExpr::from(0),
        c,
    };
    (coeffs, constraint)
}

/// The model operator restricted to polynomials of degree `≤ n`.
#[derive(Clone, Debug, PartialEq)]
pub struct QesMatrix {
    pub level: usize,
    pub matrix: Matrix<ParamExpr>,
    /// Coefficient of `z^{n+1}` in the image of each basis monomial.
    pub overflow: Vec<ParamExpr>,
}

impl QesMatrix {
    /// True when nothing leaks out of the invariant subspace.
    pub fn is_closed(&self) -> bool {
        self.overflow.iter().all(|c| c == &ParamExpr::from(0))
    }

    /// Converts to an exact rational matrix when every entry is a constant.
    pub fn to_rational(&self) -> Result<Matrix<Rational>> {
        let rows = (0..self.matrix.rows())
            .map(|i| {
                self.matrix
                    .row(i)
                    .iter()
                    .map(ParamExpr::to_rational)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_rows(rows))
    }
}

/// Collects the coefficients of the model operator applied to `Σ b_j z^j`.
/// With `strict`, a nonzero overflow row is an error.
pub fn qes_matrix(alpha: &AlphaParams, n: usize, strict: bool) -> Result<QesMatrix> {
    let (matrix, overflow) = operator_matrix(&alpha.z_operator(), n);
    let overflow = overflow.into_iter().next().unwrap_or_else(|| vec![ParamExpr::from(0); n + 1]);
    let m = QesMatrix { level: n, matrix, overflow };
    if strict && !m.is_closed() {
        let residual = m
            .overflow
            .iter()
            .find(|c| *c != &ParamExpr::from(0))
            .map(|c| c.to_string())
            .unwrap_or_default();
        return Err(QesError::ConstraintViolated { level: n, residual });
    }
    Ok(m)
}

/// Exact determinant; its vanishing is necessary for a nontrivial solution.
pub fn determinant_condition(m: &QesMatrix) -> ParamExpr {
    m.matrix
        .determinant()
        .expect("QES matrices are square")
}
