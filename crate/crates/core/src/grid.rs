//! Sector-reduced discretization of the position-dependent-mass Dunkl
//! Hamiltonian on the half line, and a Sturm-sequence eigensolver for the
//! resulting tridiagonal matrices.
//!
//! Nodes are staggered, `x_i = (i − 1/2)h` for `i = 1..=N`, with a Dirichlet
//! wall at `L = (N + 1/2)h`. On parity sector `s` the Dunkl derivative acts as
//! `x^{−γ} d/dx x^{γ}` with `γ = μ(1 − s)`, so with `w = 1/√m`
//!
//! ```text
//! H f = −½ x^{−δ} d/dx [ x^{δ−γ} w d/dx (x^{γ} w f) ],   δ = μ(1 + s)
//! ```
//!
//! which is discretized in flux form over cells `[(i − 1)h, ih]` with their
//! exact `x^δ`-weighted measure. The flux through the origin vanishes in the
//! even sector and equals `w(0)²(1 + 2μ) f'(0)` in the odd one.

use nalgebra::DMatrix;

use crate::dunkl::{DunklParam, ParitySector};
use crate::error::{QesError, Result};

/// Minimum number of half-grid nodes accepted by the assemblers.
pub const MIN_NODES: usize = 8;

/// Half-line grid: `N` nodes in `(0, L)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub half_width: f64,
    pub nodes: usize,
}

impl GridSpec {
    pub fn new(half_width: f64, nodes: usize) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(QesError::InvalidGrid(format!(
                "box half-width must be positive, got {half_width}"
            )));
        }
        if nodes < MIN_NODES {
            return Err(QesError::InvalidGrid(format!(
                "need at least {MIN_NODES} nodes, got {nodes}"
            )));
        }
        Ok(GridSpec { half_width, nodes })
    }

    pub fn spacing(&self) -> f64 {
        self.half_width / (self.nodes as f64 + 0.5)
    }

    pub fn node(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.spacing()
    }

    /// Positive nodes in ascending order.
    pub fn positions(&self) -> Vec<f64> {
        (0..self.nodes).map(|i| self.node(i)).collect()
    }

    pub fn refined(&self) -> Self {
        GridSpec {
            half_width: self.half_width,
            nodes: 2 * self.nodes + 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MassProfile {
    /// `m(x) = a²m₀/(a² + x²)`
    Quadratic { a: f64, m0: f64 },
    Constant { m0: f64 },
}

impl MassProfile {
    pub fn mass(&self, x: f64) -> f64 {
        match *self {
            MassProfile::Quadratic { a, m0 } => a * a * m0 / (a * a + x * x),
            MassProfile::Constant { m0 } => m0,
        }
    }

    /// `1/√m(x)`
    pub fn inverse_sqrt(&self, x: f64) -> f64 {
        self.mass(x).recip().sqrt()
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            MassProfile::Quadratic { a, m0 } => a > 0.0 && m0 > 0.0,
            MassProfile::Constant { m0 } => m0 > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(QesError::InvalidParameter(format!(
                "mass parameters must be positive: {self:?}"
            )))
        }
    }
}

/// `∫_a^b x^s dx` for `s > −1`.
fn power_integral(a: f64, b: f64, s: f64) -> f64 {
    (b.powf(s + 1.0) - a.powf(s + 1.0)) / (s + 1.0)
}

/// Exponents `(γ, δ)` of the sector-reduced Dunkl derivatives: `D = d + γ/x`
/// on the sector itself and `d + δ/x` on its image.
pub fn sector_tail_exponents(mu: f64, sector: ParitySector) -> (f64, f64) {
    let s = sector.eigenvalue() as f64;
    (mu * (1.0 - s), mu * (1.0 + s))
}

/// Real tridiagonal matrix. `upper[i]` is entry `(i, i+1)`, `lower[i]` is `(i+1, i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

impl Tridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc += self.lower[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.upper[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.diag[i];
            if i + 1 < n {
                m[(i, i + 1)] = self.upper[i];
                m[(i + 1, i)] = self.lower[i];
            }
        }
        m
    }

    /// Squared off-diagonal of the similar symmetric matrix, or `None` when some
    /// product `upper·lower` is negative.
    fn symmetric_offdiag_sq(&self) -> Option<Vec<f64>> {
        let b2: Vec<f64> = self
            .upper
            .iter()
            .zip(&self.lower)
            .map(|(u, l)| u * l)
            .collect();
        b2.iter().all(|&b| b >= 0.0).then_some(b2)
    }
}

/// Assembles the tridiagonal sector Hamiltonian.
pub fn hamiltonian_tridiagonal(
    mass: MassProfile,
    mu: &DunklParam,
    sector: ParitySector,
    grid: GridSpec,
) -> Result<Tridiagonal> {
    mass.validate()?;
    GridSpec::new(grid.half_width, grid.nodes)?;
    let n = grid.nodes;
    let h = grid.spacing();
    let m = mu.as_f64();
    let (gamma, delta) = sector_tail_exponents(m, sector);

    // u_i = x_i^γ w_i f_i; flux through the face at (j+1)h is c_j (u_{j+1} − u_j)
    let scale: Vec<f64> = (0..n)
        .map(|i| {
            let x = grid.node(i);
            x.powf(gamma) * mass.inverse_sqrt(x)
        })
        .collect();
    let conductance: Vec<f64> = (0..n)
        .map(|j| {
            let face = (j + 1) as f64 * h;
            match sector {
                // u is smooth: sample the coefficient at the face
                ParitySector::Even => face.powf(delta - gamma) * mass.inverse_sqrt(face) / h,
                // the flux is smooth and u is not: integrate 1/p between nodes
                ParitySector::Odd => {
                    let right = if j + 1 < n { grid.node(j + 1) } else { grid.half_width };
                    mass.inverse_sqrt(face) / power_integral(grid.node(j), right, gamma - delta)
                }
            }
        })
        .collect();
    // −1/(2V_i) with V_i the x^δ-weighted measure of cell i
    let prefactor: Vec<f64> = (0..n)
        .map(|i| -0.5 / power_integral(i as f64 * h, (i + 1) as f64 * h, delta))
        .collect();

    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n - 1];
    let mut lower = vec![0.0; n - 1];
    for i in 0..n {
        // right face; the wall value u_N is zero
        diag[i] -= prefactor[i] * conductance[i] * scale[i];
        if i + 1 < n {
            upper[i] = prefactor[i] * conductance[i] * scale[i + 1];
        }
        if i > 0 {
            diag[i] -= prefactor[i] * conductance[i - 1] * scale[i];
            lower[i - 1] = prefactor[i] * conductance[i - 1] * scale[i - 1];
        }
    }
    if sector == ParitySector::Odd {
        let w0 = mass.inverse_sqrt(0.0);
        diag[0] -= prefactor[0] * w0 * w0 * (1.0 + 2.0 * m) / grid.node(0);
    }
    Ok(Tridiagonal { diag, upper, lower })
}

/// Dense matrix of the sector Hamiltonian on the half grid.
pub fn dunkl_hamiltonian_grid(
    mass: MassProfile,
    mu: &DunklParam,
    sector: ParitySector,
    grid: GridSpec,
) -> Result<DMatrix<f64>> {
    hamiltonian_tridiagonal(mass, mu, sector, grid).map(|t| t.to_dense())
}

/// Absolute tolerance on eigenvalue brackets.
pub const EIGEN_TOLERANCE: f64 = 1e-10;
const MAX_BISECTIONS: usize = 200;

/// Number of eigenvalues strictly below `lambda`, by the Sturm sequence of
/// the symmetric tridiagonal with diagonal `d` and squared off-diagonal `b2`.
fn count_below(d: &[f64], b2: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        let prev = if q == 0.0 { f64::EPSILON * (1.0 + lambda.abs()) } else { q };
        q = d[i] - lambda - b2[i - 1] / prev;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `count` smallest eigenvalues in ascending order, each bracketed to
/// within [`EIGEN_TOLERANCE`].
pub fn tridiagonal_lowest(t: &Tridiagonal, count: usize) -> Result<Vec<f64>> {
    let n = t.len();
    if count > n {
        return Err(QesError::InvalidGrid(format!(
            "requested {count} eigenvalues of a {n}x{n} matrix"
        )));
    }
    let b2 = t.symmetric_offdiag_sq().ok_or_else(|| {
        QesError::InvalidGrid("tridiagonal matrix is not symmetrizable".to_string())
    })?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut radius = 0.0;
        if i > 0 {
            radius += b2[i - 1].sqrt();
        }
        if i + 1 < n {
            radius += b2[i].sqrt();
        }
        lo = lo.min(t.diag[i] - radius);
        hi = hi.max(t.diag[i] + radius);
    }
    let mut out = Vec::with_capacity(count);
    for index in 0..count {
        let mut a = out.last().copied().unwrap_or(lo).max(lo) - EIGEN_TOLERANCE;
        let mut b = hi + EIGEN_TOLERANCE;
        let mut iterations = 0;
        while b - a > EIGEN_TOLERANCE * (1.0 + a.abs().max(b.abs())) {
            if iterations == MAX_BISECTIONS {
                return Err(QesError::ConvergenceFailure {
                    index,
                    iterations,
                    width: b - a,
                });
            }
            let mid = 0.5 * (a + b);
            if count_below(&t.diag, &b2, mid) > index {
                b = mid;
            } else {
                a = mid;
            }
            iterations += 1;
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Lowest `count` eigenvalues of the sector Hamiltonian with Dirichlet walls
/// at `±L`. Requires `count ≤ N/4`.
pub fn grid_eigen(
    mass: MassProfile,
    mu: &DunklParam,
    sector: ParitySector,
    grid: GridSpec,
    count: usize,
) -> Result<Vec<f64>> {
    if count > grid.nodes / 4 {
        return Err(QesError::InvalidGrid(format!(
            "at most N/4 = {} eigenvalues may be requested, got {count}",
            grid.nodes / 4
        )));
    }
    let t = hamiltonian_tridiagonal(mass, mu, sector, grid)?;
    tridiagonal_lowest(&t, count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dunkl::pdm_hamiltonian_apply;
    use crate::poly::RationalPoly;
    use crate::scalar::{ratio, to_f64};
    use std::f64::consts::PI;

    fn mu(v: f64) -> DunklParam {
        DunklParam::new(crate::scalar::parse_rational(&v.to_string()).unwrap()).unwrap()
    }

    #[test]
    fn rejects_small_or_degenerate_grids() {
        assert!(GridSpec::new(1.0, 7).is_err());
        assert!(GridSpec::new(0.0, 100).is_err());
        assert!(GridSpec::new(-1.0, 100).is_err());
        assert!(GridSpec::new(1.0, 8).is_ok());
    }

    #[test]
    fn constant_mass_without_dunkl_is_the_laplacian() {
        let grid = GridSpec::new(2.0, 12).unwrap();
        let h = grid.spacing();
        let m0 = 1.5;
        let t = hamiltonian_tridiagonal(
            MassProfile::Constant { m0 },
            &mu(0.0),
            ParitySector::Even,
            grid,
        )
        .unwrap();
        let k = 1.0 / (2.0 * m0 * h * h);
        // even reflection ghost at −h/2 folds into the first diagonal entry
        assert!((t.diag[0] - k).abs() < 1e-9);
        for i in 1..12 {
            assert!((t.diag[i] - 2.0 * k).abs() < 1e-9);
        }
        for i in 0..11 {
            assert!((t.upper[i] + k).abs() < 1e-9);
            assert!((t.lower[i] + k).abs() < 1e-9);
        }
    }

    #[test]
    fn even_sector_has_no_dunkl_tail() {
        for m in [0.0, 0.3, 2.0] {
            assert_eq!(sector_tail_exponents(m, ParitySector::Even).0, 0.0);
        }
        assert_eq!(sector_tail_exponents(0.5, ParitySector::Odd), (1.0, 0.0));
    }

    fn apply_error(mu_q: crate::scalar::Rational, sector: ParitySector, nodes: usize) -> f64 {
        apply_error_on(mu_q, sector, nodes, |x| (0.5..=1.5).contains(&x))
    }

    fn apply_error_on(
        mu_q: crate::scalar::Rational,
        sector: ParitySector,
        nodes: usize,
        keep: impl Fn(f64) -> bool,
    ) -> f64 {
        let (a, m0) = (ratio(1, 1), ratio(2, 1));
        let coeffs = match sector {
            ParitySector::Even => vec![1, 0, -2, 0, 1],
            ParitySector::Odd => vec![0, 1, 0, -1, 0, 1],
        };
        let f = RationalPoly::from_ints(&coeffs);
        let hf = pdm_hamiltonian_apply(&f, &a, &m0, &mu_q, sector).unwrap();
        let grid = GridSpec::new(2.0, nodes).unwrap();
        let t = hamiltonian_tridiagonal(
            MassProfile::Quadratic { a: 1.0, m0: 2.0 },
            &DunklParam::new(mu_q).unwrap(),
            sector,
            grid,
        )
        .unwrap();
        let eval = |p: &RationalPoly, x: f64| {
            p.coeffs().iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
        };
        let xs = grid.positions();
        let sampled: Vec<f64> = xs.iter().map(|&x| eval(&f, x)).collect();
        let got = t.apply(&sampled);
        xs.iter()
            .zip(&got)
            .filter(|(x, _)| keep(**x))
            .map(|(&x, g)| (g - eval(&hf, x)).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn matrix_action_matches_exact_hamiltonian_at_second_order() {
        for (m, sector) in [
            (ratio(0, 1), ParitySector::Even),
            (ratio(1, 3), ParitySector::Even),
            (ratio(1, 2), ParitySector::Odd),
        ] {
            let e1 = apply_error(m.clone(), sector, 100);
            let e2 = apply_error(m.clone(), sector, 201);
            let ratio = e1 / e2;
            assert!(e1 < 5e-2, "{e1}");
            assert!((3.5..4.5).contains(&ratio), "mu={m} {sector}: ratio {ratio}");
        }
    }

    #[test]
    fn second_order_up_to_the_origin() {
        for (m, sector) in [
            (ratio(1, 3), ParitySector::Even),
            (ratio(-1, 4), ParitySector::Even),
            (ratio(1, 2), ParitySector::Odd),
            (ratio(-1, 3), ParitySector::Odd),
        ] {
            let e1 = apply_error_on(m.clone(), sector, 100, |x| x < 1.5);
            let e2 = apply_error_on(m.clone(), sector, 201, |x| x < 1.5);
            let ratio = e1 / e2;
            assert!((3.0..5.0).contains(&ratio), "mu={m} {sector}: {e1} {e2}");
        }
    }

    #[test]
    fn box_ground_state() {
        let grid = GridSpec::new(PI / 2.0, 400).unwrap();
        let ev = grid_eigen(MassProfile::Constant { m0: 1.0 }, &mu(0.0), ParitySector::Even, grid, 3)
            .unwrap();
        // cos x, cos 3x, cos 5x
        for (e, k) in ev.iter().zip([1.0, 3.0, 5.0]) {
            assert!((e - k * k / 2.0).abs() < 1e-3 * k * k, "{e}");
        }
        assert!(ev.windows(2).all(|w| w[0] < w[1]));
        let odd = grid_eigen(MassProfile::Constant { m0: 1.0 }, &mu(0.0), ParitySector::Odd, grid, 2)
            .unwrap();
        // sin 2x, sin 4x
        assert!((odd[0] - 2.0).abs() < 1e-3);
        assert!((odd[1] - 8.0).abs() < 1e-2);
    }

    #[test]
    fn bisection_matches_dense_solver() {
        let grid = GridSpec::new(3.0, 40).unwrap();
        let t = hamiltonian_tridiagonal(
            MassProfile::Quadratic { a: 1.0, m0: 1.0 },
            &mu(0.25),
            ParitySector::Odd,
            grid,
        )
        .unwrap();
        let ev = tridiagonal_lowest(&t, 10).unwrap();
        let mut reference: Vec<f64> = t.to_dense().complex_eigenvalues().iter().map(|c| c.re).collect();
        reference.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in ev.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-7 * (1.0 + b.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn eigen_count_limited_to_quarter_grid() {
        let grid = GridSpec::new(1.0, 16).unwrap();
        let r = grid_eigen(MassProfile::Constant { m0: 1.0 }, &mu(0.0), ParitySector::Even, grid, 5);
        assert!(matches!(r, Err(QesError::InvalidGrid(_))));
    }
}
