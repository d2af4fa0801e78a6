//! The Dunkl oscillator-free model with mass `m(x) = a²m₀/(a² + x²)`: the
//! parameter map to the five `α` coefficients of the operator in
//! `z = −x²/a²`, its quasi-exactly-solvable levels, the coefficient
//! recursion of the polynomial eigenfunctions and their evaluation.
//!
//! Units are fixed by `ħ = 1`.

use num_complex::Complex64;
use num_traits::Zero;

use crate::dunkl::{DunklParam, ParitySector};
use crate::error::{QesError, Result};
use crate::expr::{ParamExpr, Symbol};
use crate::grid::MassProfile;
use crate::operator::DiffOperator2;
use crate::poly::{Poly, RationalPoly};
use crate::scalar::{format_rational, is_positive, ratio, to_f64, Rational};
use crate::sl2::{match_model_coefficients, qes_matrix};

/// Physical parameters: length scale `a > 0`, mass scale `m₀ > 0` and the
/// Dunkl parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdmModel {
    a: Rational,
    m0: Rational,
    mu: DunklParam,
}

impl PdmModel {
    pub fn new(mu: Rational, a: Rational, m0: Rational) -> Result<Self> {
        if !is_positive(&a) {
            return Err(QesError::InvalidParameter(format!(
                "length scale a must satisfy a > 0, got {}",
                format_rational(&a)
            )));
        }
        if !is_positive(&m0) {
            return Err(QesError::InvalidParameter(format!(
                "mass scale m0 must satisfy m0 > 0, got {}",
                format_rational(&m0)
            )));
        }
        Ok(PdmModel {
            a,
            m0,
            mu: DunklParam::new(mu)?,
        })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn m0(&self) -> &Rational {
        &self.m0
    }

    pub fn mu(&self) -> &DunklParam {
        &self.mu
    }

    pub fn params(&self) -> ModelParams {
        ModelParams {
            mu: ParamExpr::constant(self.mu.value().clone()),
            a: ParamExpr::constant(self.a.clone()),
            m0: ParamExpr::constant(self.m0.clone()),
        }
    }

    pub fn mass(&self) -> MassProfile {
        MassProfile::Quadratic {
            a: to_f64(&self.a),
            m0: to_f64(&self.m0),
        }
    }
}

/// `m(x) = a²m₀/(a² + x²)`
pub fn mass_profile(x: f64, model: &PdmModel) -> f64 {
    model.mass().mass(x)
}

/// Model parameters as expressions, so that any of them may stay symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    pub mu: ParamExpr,
    pub a: ParamExpr,
    pub m0: ParamExpr,
}

impl ModelParams {
    /// `μ`, `a` and `m₀` all left as indeterminates.
    pub fn symbolic() -> Self {
        ModelParams {
            mu: Symbol::Mu.into(),
            a: Symbol::A.into(),
            m0: Symbol::M0.into(),
        }
    }
}

/// Coefficients of the operator
/// `(z² − z³)d² + [(α₂ − α₃)z² + (α₁ + α₃)z]d + α₄z + α₅`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlphaParams {
    pub a1: ParamExpr,
    pub a2: ParamExpr,
    pub a3: ParamExpr,
    pub a4: ParamExpr,
    pub a5: ParamExpr,
    pub sector: Option<ParitySector>,
}

impl AlphaParams {
    /// All five coefficients free.
    pub fn symbolic() -> Self {
        AlphaParams {
            a1: Symbol::Alpha1.into(),
            a2: Symbol::Alpha2.into(),
            a3: Symbol::Alpha3.into(),
            a4: Symbol::Alpha4.into(),
            a5: Symbol::Alpha5.into(),
            sector: None,
        }
    }

    pub fn z_operator(&self) -> DiffOperator2<ParamExpr> {
        let zero = ParamExpr::from(0);
        DiffOperator2::new(
            Poly::new(vec![zero.clone(), zero.clone(), ParamExpr::from(1), ParamExpr::from(-1)]),
            Poly::new(vec![zero, &self.a1 + &self.a3, &self.a2 - &self.a3]),
            Poly::new(vec![self.a5.clone(), self.a4.clone()]),
        )
    }

    /// `α₄` replaced by the value `−n²/2 − n·C₊` that closes level `n`.
    pub fn with_constraint(&self, n: usize) -> Self {
        let (_, constraint) = match_model_coefficients(self, n);
        AlphaParams {
            a4: &self.a4 + &constraint,
            ..self.clone()
        }
    }

    pub fn values(&self) -> [&ParamExpr; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a5]
    }

    /// Exact values, when none of the coefficients contains a symbol.
    pub fn to_rationals(&self) -> Result<[Rational; 5]> {
        let v = self.values();
        Ok([
            v[0].to_rational()?,
            v[1].to_rational()?,
            v[2].to_rational()?,
            v[3].to_rational()?,
            v[4].to_rational()?,
        ])
    }
}

/// `α₁ = −(m₀ + 1/a²)/2`, `α₂ = 1`, `α₃ = −μ`, `α₄ = (1 + 2μ)/4 + E·m₀a²/2`,
/// `α₅ = (μ/4)(1 − s)`.
pub fn alpha_from_params(p: &ModelParams, energy: &ParamExpr, sector: ParitySector) -> AlphaParams {
    let half = ParamExpr::constant(ratio(1, 2));
    let quarter = ParamExpr::constant(ratio(1, 4));
    let a2 = &p.a * &p.a;
    let one = ParamExpr::from(1);
    let s = ParamExpr::from(sector.eigenvalue());
    AlphaParams {
        a1: -(&half * &(&p.m0 + &a2.recip())),
        a2: one.clone(),
        a3: -p.mu.clone(),
        a4: &(&quarter * &(&one + &(&ParamExpr::from(2) * &p.mu)))
            + &(&(&half * energy) * &(&p.m0 * &a2)),
        a5: &(&quarter * &p.mu) * &(&one - &s),
        sector: Some(sector),
    }
}

pub fn alpha_from_model(model: &PdmModel, energy: &ParamExpr, sector: ParitySector) -> AlphaParams {
    alpha_from_params(&model.params(), energy, sector)
}

/// `E_n = (2/(m₀a²))·(n² − n(2 + μ) − (1 + 2μ)/4)`
pub fn energy_level_expr(n: usize, p: &ModelParams) -> ParamExpr {
    let nn = ParamExpr::from(n as i64);
    let inner = &(&(&nn * &nn) - &(&nn * &(&ParamExpr::from(2) + &p.mu)))
        - &(&ParamExpr::constant(ratio(1, 4)) * &(&ParamExpr::from(1) + &(&ParamExpr::from(2) * &p.mu)));
    &(&ParamExpr::from(2) / &(&p.m0 * &(&p.a * &p.a))) * &inner
}

pub fn energy_level(n: usize, model: &PdmModel) -> Rational {
    energy_level_expr(n, &model.params())
        .to_rational()
        .expect("numeric parameters give a numeric energy")
}

/// The energy obtained by solving the level-`n` quantization constraint for
/// `E`; `None` if the constraint is not linear in `E`.
pub fn constraint_energy(n: usize, p: &ModelParams, sector: ParitySector) -> Option<ParamExpr> {
    let alpha = alpha_from_params(p, &Symbol::E.into(), sector);
    let (_, constraint) = match_model_coefficients(&alpha, n);
    constraint.solve_linear(Symbol::E)
}

/// Handling of vanishing recursion denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegeneratePolicy {
    /// `b₀ = 1`; any zero denominator below the top level is an error.
    Abort,
    /// Follow the exact null space: `0/0` leaves a free coefficient (set to
    /// zero), `c/0` with `c ≠ 0` forces every earlier coefficient to vanish.
    NullSpace,
}

/// Output of the coefficient recursion.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientRecursion {
    /// `b₀ … b_n`
    pub b: Vec<Rational>,
    /// `b_{n+1}` from continuing the recursion one step; `None` when that
    /// step divides a nonzero value by zero.
    pub b_next: Option<Rational>,
    /// Coefficient of `z^{n+1}` in the operator image, zero on a closed level.
    pub overflow: Rational,
    /// `α₅·b₀`, the equation of the constant term.
    pub row0_residual: Rational,
    /// Set when the null space forced `b₀ = 0`.
    pub b0_forced_zero: bool,
    /// Printed minus derived recursion numerator at `k = 0 … n`.
    pub numerator_discrepancy: Vec<Rational>,
}

impl CoefficientRecursion {
    pub fn z_polynomial(&self) -> RationalPoly {
        Poly::new(self.b.clone())
    }
}

/// Diagonal and subdiagonal of the model operator on `1, z, …, z^{n+1}`,
/// read off the collected matrix.
fn collected_rows(alpha: &AlphaParams, n: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let m = qes_matrix(alpha, n + 1, false)?;
    let diag = (0..=n + 1)
        .map(|k| m.matrix.get(k, k).to_rational())
        .collect::<Result<Vec<_>>>()?;
    let sub = (0..=n + 1)
        .map(|k| {
            if k == 0 {
                Ok(Rational::zero())
            } else {
                m.matrix.get(k, k - 1).to_rational()
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((diag, sub))
}

/// The numerator of the recursion as printed, so that
/// `b_{k+1} = N_k / ((k + 1)(k + α₁ + α₃) + α₅) · b_k`.
pub fn printed_recursion_numerator(alpha: &AlphaParams, k: usize) -> ParamExpr {
    let kk = ParamExpr::from(k as i64);
    let d = &alpha.a2 - &alpha.a3;
    let half_k = ParamExpr::constant(ratio(k as i64, 2));
    let inner = &(&(&kk - &ParamExpr::from(1)) - &d) + &half_k;
    &(&(&kk * &inner) + &d) - &(&half_k * &kk)
}

/// Pairs `(printed, derived)` of recursion numerators for `k = 0 … n`, the
/// derived one being minus the collected subdiagonal entry of row `k + 1`.
pub fn recursion_numerators(alpha: &AlphaParams, n: usize) -> Result<Vec<(ParamExpr, ParamExpr)>> {
    let m = qes_matrix(alpha, n + 1, false)?;
    Ok((0..=n)
        .map(|k| {
            let derived = -m.matrix.get(k + 1, k).clone();
            (printed_recursion_numerator(alpha, k), derived)
        })
        .collect())
}

/// Coefficients `b_k` of `Σ b_k z^k` at level `n` from the two-term recursion
/// `b_{k+1} = −sub_{k+1}·b_k / diag_{k+1}`. All `α` must be numeric.
pub fn coefficient_recursion(
    alpha: &AlphaParams,
    n: usize,
    policy: DegeneratePolicy,
) -> Result<CoefficientRecursion> {
    let (diag, sub) = collected_rows(alpha, n)?;
    let zero = Rational::zero();
    let mut b = vec![zero.clone(); n + 1];
    let mut b0_forced_zero = false;

    match policy {
        DegeneratePolicy::Abort => {
            b[0] = Rational::from_integer(1.into());
            for k in 0..n {
                if diag[k + 1].is_zero() {
                    let [a1, _, a3, _, a5] = alpha.to_rationals()?;
                    return Err(QesError::SingularDenominator {
                        k,
                        denominator: format!(
                            "({}+1)({} + alpha1 + alpha3) + alpha5 with alpha1 + alpha3 = {}, alpha5 = {}",
                            k,
                            k,
                            format_rational(&(a1 + a3)),
                            format_rational(&a5)
                        ),
                    });
                }
                b[k + 1] = -(&sub[k + 1] * &b[k]) / &diag[k + 1];
            }
        }
        DegeneratePolicy::NullSpace => {
            let start = (0..=n).find(|&k| diag[k].is_zero()).unwrap_or(0);
            b[start] = Rational::from_integer(1.into());
            b0_forced_zero = start > 0;
            for k in start..n {
                let push = -(&sub[k + 1] * &b[k]);
                if !diag[k + 1].is_zero() {
                    b[k + 1] = push / &diag[k + 1];
                } else if push.is_zero() {
                    b[k + 1] = zero.clone();
                } else {
                    for c in b.iter_mut().take(k + 1) {
                        *c = zero.clone();
                    }
                    b[k + 1] = Rational::from_integer(1.into());
                    b0_forced_zero = true;
                }
            }
        }
    }

    let push = -(&sub[n + 1] * &b[n]);
    let b_next = if !diag[n + 1].is_zero() {
        Some(push / &diag[n + 1])
    } else if push.is_zero() {
        Some(zero.clone())
    } else {
        None
    };
    let numerator_discrepancy = recursion_numerators(alpha, n)?
        .into_iter()
        .map(|(printed, derived)| (&printed - &derived).to_rational())
        .collect::<Result<Vec<_>>>()?;
    Ok(CoefficientRecursion {
        overflow: &sub[n + 1] * &b[n],
        row0_residual: &diag[0] * &b[0],
        b,
        b_next,
        b0_forced_zero,
        numerator_discrepancy,
    })
}

/// A polynomial eigenfunction at level `n`, with everything needed to
/// evaluate it.
#[derive(Clone, Debug, PartialEq)]
pub struct WavefunctionPoly {
    pub level: usize,
    pub sector: ParitySector,
    pub energy: Rational,
    pub a: Rational,
    pub recursion: CoefficientRecursion,
}

impl WavefunctionPoly {
    pub fn b(&self) -> &[Rational] {
        &self.recursion.b
    }

    /// `x^{(1−s)/2}·Σ b_k x^{2k}` scaled by `−1/a²`, as an exact polynomial in `x`.
    pub fn x_polynomial(&self) -> RationalPoly {
        let mut coeffs = vec![Rational::zero(); 2 * self.b().len() + 1];
        let shift = self.sector.x_power();
        let scale = -(&self.a * &self.a).recip();
        for (k, c) in self.b().iter().enumerate() {
            coeffs[2 * k + shift] = c * &scale;
        }
        Poly::new(coeffs)
    }

    /// `x^{(1−s)/2}·Σ b_k (−x²/a²)^k`: the `z`-space polynomial pulled back
    /// through `z = −x²/a²`.
    pub fn x_polynomial_substituted(&self) -> RationalPoly {
        let mut coeffs = vec![Rational::zero(); 2 * self.b().len() + 1];
        let shift = self.sector.x_power();
        let step = -(&self.a * &self.a).recip();
        let mut factor = Rational::from_integer(1.into());
        for (k, c) in self.b().iter().enumerate() {
            coeffs[2 * k + shift] = c * &factor;
            factor = &factor * &step;
        }
        Poly::new(coeffs)
    }

    pub fn eval(&self, x: f64) -> f64 {
        eval_f64(&self.x_polynomial(), x)
    }

    pub fn eval_substituted(&self, x: f64) -> f64 {
        eval_f64(&self.x_polynomial_substituted(), x)
    }
}

pub(crate) fn eval_f64(p: &RationalPoly, x: f64) -> f64 {
    p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
}

/// The level-`n` eigenfunction of `model` in `sector` at `E = E_n`.
pub fn wavefunction(
    model: &PdmModel,
    n: usize,
    sector: ParitySector,
    policy: DegeneratePolicy,
) -> Result<WavefunctionPoly> {
    let energy = energy_level(n, model);
    let alpha = alpha_from_model(model, &ParamExpr::constant(energy.clone()), sector);
    let recursion = coefficient_recursion(&alpha, n, policy)?;
    Ok(WavefunctionPoly {
        level: n,
        sector,
        energy,
        a: model.a().clone(),
        recursion,
    })
}

/// `ψ(x, t) = e^{−iEt}·ψ̃(x)`
pub fn assemble_wavefunction(w: &WavefunctionPoly, x: f64, t: f64) -> Complex64 {
    let phase = Complex64::from_polar(1.0, -to_f64(&w.energy) * t);
    phase * w.eval(x)
}

/// Determinant of the level-`n` matrix at `E = E_n`, and whether it vanishes.
pub fn qes_solvability_expr(n: usize, p: &ModelParams, sector: ParitySector) -> (bool, ParamExpr) {
    let energy = energy_level_expr(n, p);
    let alpha = alpha_from_params(p, &energy, sector);
    let m = qes_matrix(&alpha, n, false).expect("model matrices are square");
    let det = crate::sl2::determinant_condition(&m);
    (det.is_zero(), det)
}

pub fn qes_solvability(n: usize, model: &PdmModel, sector: ParitySector) -> (bool, ParamExpr) {
    qes_solvability_expr(n, &model.params(), sector)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumLevel {
    pub n: usize,
    pub energy: Rational,
    pub sector: ParitySector,
    pub solvable: bool,
    pub solvability_residual: Rational,
    pub constraint_residual: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumResult {
    pub levels: Vec<SpectrumLevel>,
}

/// Levels `0 … n_max`; levels failing the solvability test are kept and flagged.
pub fn spectrum(model: &PdmModel, n_max: usize, sector: ParitySector) -> SpectrumResult {
    let p = model.params();
    let levels = (0..=n_max)
        .map(|n| {
            let energy = energy_level(n, model);
            let alpha = alpha_from_params(&p, &ParamExpr::constant(energy.clone()), sector);
            let (_, constraint) = match_model_coefficients(&alpha, n);
            let (solvable, det) = qes_solvability(n, model, sector);
            SpectrumLevel {
                n,
                energy,
                sector,
                solvable,
                solvability_residual: det.to_rational().expect("numeric determinant"),
                constraint_residual: constraint.to_rational().expect("numeric constraint"),
            }
        })
        .collect();
    SpectrumResult { levels }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{rat, sym};
    use crate::scalar::int;
    use crate::sl2::determinant_condition;
    use proptest::prelude::*;

    fn model(mu: Rational, a: i64, m0: i64) -> PdmModel {
        PdmModel::new(mu, int(a), int(m0)).unwrap()
    }

    fn unit() -> PdmModel {
        model(int(0), 1, 1)
    }

    #[test]
    fn parameter_validation() {
        assert!(PdmModel::new(int(0), int(0), int(1)).is_err());
        assert!(PdmModel::new(int(0), int(1), int(-1)).is_err());
        assert!(PdmModel::new(int(-1), int(1), int(1)).is_err());
    }

    #[test]
    fn mass_profile_values() {
        let m = model(int(0), 2, 3);
        assert_eq!(mass_profile(0.0, &m), 3.0);
        assert_eq!(mass_profile(2.0, &m), 1.5);
        assert_eq!(mass_profile(-1.3, &m), mass_profile(1.3, &m));
        assert!(mass_profile(1e3, &m) < mass_profile(1e2, &m));
    }

    #[test]
    fn alpha_map() {
        let e = sym(Symbol::E);
        let alpha = alpha_from_model(&unit(), &e, ParitySector::Even);
        assert_eq!(alpha.a1, rat(-1, 1));
        assert_eq!(alpha.a2, rat(1, 1));
        assert_eq!(alpha.a3, rat(0, 1));
        assert_eq!(alpha.a4, rat(1, 4) + rat(1, 2) * e);
        assert_eq!(alpha.a5, rat(0, 1));
        let odd = alpha_from_model(&model(ratio(1, 2), 1, 1), &rat(0, 1), ParitySector::Odd);
        assert_eq!(odd.a5, rat(1, 4));
    }

    #[test]
    fn energies() {
        assert_eq!(energy_level(0, &unit()), ratio(-1, 2));
        assert_eq!(energy_level(1, &unit()), ratio(-5, 2));
        assert_eq!(energy_level(2, &unit()), ratio(-1, 2));
        let m = model(int(1), 1, 1);
        assert_eq!(energy_level(0, &m), ratio(-3, 2));
        assert_eq!(energy_level(1, &m), ratio(-11, 2));
    }

    #[test]
    fn constraint_root_is_the_energy_formula() {
        let p = ModelParams::symbolic();
        for n in 0..=10 {
            for sector in ParitySector::BOTH {
                assert_eq!(constraint_energy(n, &p, sector).unwrap(), energy_level_expr(n, &p));
            }
        }
    }

    #[test]
    fn first_excited_state_coefficients() {
        let w = wavefunction(&unit(), 1, ParitySector::Even, DegeneratePolicy::Abort).unwrap();
        assert_eq!(w.b(), &[int(1), int(-1)]);
        assert_eq!(w.recursion.overflow, int(0));
        assert_eq!(w.recursion.row0_residual, int(0));
        // the recursion would divide by zero at k = 1 but the numerator vanishes too
        assert_eq!(w.recursion.b_next, Some(int(0)));
        assert_eq!(w.recursion.numerator_discrepancy, vec![int(0), int(0)]);
    }

    #[test]
    fn ground_state() {
        let w = wavefunction(&unit(), 0, ParitySector::Even, DegeneratePolicy::Abort).unwrap();
        assert_eq!(w.b(), &[int(1)]);
        assert_eq!(w.recursion.row0_residual, int(0));
        assert_eq!(assemble_wavefunction(&w, 0.7, 0.0), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn abort_reports_the_singular_step() {
        let err = wavefunction(&unit(), 2, ParitySector::Even, DegeneratePolicy::Abort).unwrap_err();
        assert!(matches!(err, QesError::SingularDenominator { k: 1, .. }), "{err:?}");
    }

    #[test]
    fn null_space_policy_handles_degenerate_levels() {
        for n in 0..=6 {
            let w = wavefunction(&unit(), n, ParitySector::Even, DegeneratePolicy::NullSpace).unwrap();
            assert_eq!(w.recursion.b_next, Some(int(0)), "n={n}");
            assert_eq!(w.recursion.overflow, int(0));
            assert_eq!(w.recursion.row0_residual, int(0));
            assert!(w.b().iter().any(|c| !c.is_zero()));
        }
    }

    #[test]
    fn wavefunction_evaluation() {
        let w = wavefunction(&unit(), 1, ParitySector::Even, DegeneratePolicy::Abort).unwrap();
        assert_eq!(assemble_wavefunction(&w, 2.0, 0.0), Complex64::new(3.0, 0.0));
        assert_eq!(w.eval_substituted(2.0), 5.0);
        for t in [0.3, 1.7, -4.0] {
            let z = assemble_wavefunction(&w, 1.1, t);
            assert!((z.norm() - w.eval(1.1).abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn parity_of_wavefunctions() {
        let m = model(ratio(1, 4), 2, 1);
        for sector in ParitySector::BOTH {
            for n in 0..=3 {
                let w = wavefunction(&m, n, sector, DegeneratePolicy::NullSpace).unwrap();
                let p = w.x_polynomial();
                match sector {
                    ParitySector::Even => assert!(p.is_even()),
                    ParitySector::Odd => assert!(p.is_odd()),
                }
            }
        }
    }

    #[test]
    fn solvability() {
        for n in 0..=5 {
            let (ok, det) = qes_solvability(n, &model(ratio(1, 4), 2, 1), ParitySector::Even);
            assert!(ok && det.is_zero());
        }
        assert!(qes_solvability(1, &unit(), ParitySector::Odd).0);

        let p = ModelParams {
            mu: rat(1, 2),
            ..ModelParams::symbolic()
        };
        let (ok, det) = qes_solvability_expr(1, &p, ParitySector::Odd);
        assert!(!ok);
        let mu = rat(1, 2);
        let alpha = alpha_from_params(&p, &rat(0, 1), ParitySector::Odd);
        let half_mu = &mu * &rat(1, 2);
        let expected = &half_mu * &(&(&alpha.a1 + &alpha.a3) + &half_mu);
        assert_eq!(det, expected);
    }

    #[test]
    fn spectrum_rows() {
        let s = spectrum(&unit(), 2, ParitySector::Even);
        let e: Vec<_> = s.levels.iter().map(|l| l.energy.clone()).collect();
        assert_eq!(e, vec![ratio(-1, 2), ratio(-5, 2), ratio(-1, 2)]);
        assert!(s.levels.iter().all(|l| l.solvable && l.constraint_residual.is_zero()));
        let single = spectrum(&unit(), 0, ParitySector::Even);
        assert_eq!(single.levels.len(), 1);
        assert_eq!(single.levels[0].energy, energy_level(0, &unit()));
    }

    #[test]
    fn printed_numerator_agrees_only_at_level_one() {
        let alpha = AlphaParams::symbolic();
        for n in 0..=5 {
            let constrained = alpha.with_constraint(n);
            let pairs = recursion_numerators(&constrained, n).unwrap();
            let all_equal = pairs.iter().all(|(p, d)| p == d);
            assert_eq!(all_equal, n == 1, "n={n}");
        }
    }

    fn grid_models() -> Vec<PdmModel> {
        let mut out = Vec::new();
        for mu in [int(0), ratio(1, 4), ratio(1, 2)] {
            for a in [1, 2] {
                for m0 in [1, 2] {
                    out.push(model(mu.clone(), a, m0));
                }
            }
        }
        out
    }

    #[test]
    fn recursion_is_a_null_vector() {
        for m in grid_models() {
            for n in 0..=8 {
                let w = wavefunction(&m, n, ParitySector::Even, DegeneratePolicy::NullSpace).unwrap();
                assert_eq!(w.recursion.b_next, Some(int(0)));
                let alpha = alpha_from_model(&m, &ParamExpr::constant(w.energy.clone()), ParitySector::Even);
                let qm = qes_matrix(&alpha, n, true).unwrap().to_rational().unwrap();
                assert!(qm.mul_vec(w.b()).unwrap().iter().all(Zero::is_zero));
                if !w.recursion.b0_forced_zero {
                    assert_eq!(qm.null_vector().unwrap(), w.b().to_vec(), "{m:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn determinant_of_first_level_matrix() {
        let alpha = AlphaParams::symbolic().with_constraint(1);
        let m = qes_matrix(&alpha, 1, true).unwrap();
        let a5 = sym(Symbol::Alpha5);
        assert_eq!(
            determinant_condition(&m),
            &a5 * &(&(sym(Symbol::Alpha1) + sym(Symbol::Alpha3)) + &a5)
        );
    }

    proptest! {
        #[test]
        fn odd_wavefunction_is_odd_for_any_model(mu_num in 0i64..8, a in 1i64..4, m0 in 1i64..4) {
            let m = model(ratio(mu_num, 4), a, m0);
            let w = wavefunction(&m, 2, ParitySector::Odd, DegeneratePolicy::NullSpace).unwrap();
            prop_assert!(w.x_polynomial().is_odd());
            prop_assert!(w.x_polynomial_substituted().is_odd());
        }
    }
}
