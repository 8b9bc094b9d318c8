//! Derivative weights by four schemes, plus the Gauss-quadrature oracle.
//!
//! Conventions used throughout:
//!
//! * `g_nm(eps) = sum_mu Gamma_{n mu} Gamma_{m mu} / (eps_mu - eps)`, the
//!   matrix elements of `(Hbar - eps)^{-1}`;
//! * `G_00^(+)` is the resolvent element of the full problem on the upper
//!   rim, so `Im G_00^(+) >= 0` and its phase lies in `[0, pi]`;
//! * `Delta_N^+ = 1 + g_{N-1,N-1} J_{N-1,N} R_N^+`.

use crate::error::{Error, Result};
use crate::models::{ModelKind, ModelProblem};
use crate::rational_fit::{KnotSet, RationalFit};
use crate::tridiag::{interlace_check, EigenSystem, SymTridiag};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Relative distance below which an energy is taken to sit on an eigenvalue.
const POLE_GAP: f64 = 1e-12;
/// Smallest `|Delta_N^+|` accepted when assembling `G_00`.
const DELTA_TINY: f64 = 1e-14;
/// Grid steps used to unwrap the phase of `zeta^{-1}` from an eigenvalue.
const UNWRAP_STEPS: usize = 64;
/// Largest accepted change of the wrapped phase between grid points.
const UNWRAP_MAX_STEP: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Heller,
    Broad,
    JmatrixInterp,
    JmatrixExact,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Heller,
        Method::Broad,
        Method::JmatrixInterp,
        Method::JmatrixExact,
        Method::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Heller => "heller",
            Method::Broad => "broad",
            Method::JmatrixInterp => "jmatrix-interp",
            Method::JmatrixExact => "jmatrix-exact",
            Method::Oracle => "oracle",
        }
    }

    /// Whether the method can run on `model`.
    pub fn supports(self, model: &ModelProblem) -> bool {
        !matches!(
            (self, model.kind()),
            (Method::Broad, ModelKind::PartialWave { .. })
        )
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown method '{s}'")))
    }
}

/// Which of the `N - 1` fractional-index knots enter the extended fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExtraKnots {
    /// Omit the knot at the largest submatrix eigenvalue, leaving `2N - 2`
    /// points (a fraction with `2N - 3` coefficients). This reproduces the
    /// published interpolation columns.
    #[default]
    SkipLast,
    /// All `2N - 1` points.
    All,
}

impl FromStr for ExtraKnots {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "published" | "skip-last" => Ok(ExtraKnots::SkipLast),
            "all" => Ok(ExtraKnots::All),
            _ => Err(Error::Precondition(format!("unknown knot policy '{s}'"))),
        }
    }
}

/// Finite Green's function pieces at one energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenPieces {
    pub g00: f64,
    /// `g_{0,N-1}`, equal to `g_{N-1,0}`.
    pub g0n1: f64,
    pub gn1n1: f64,
    pub rplus: Complex64,
    pub delta: Complex64,
}

/// One row per eigenvalue, one column per method.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    methods: Vec<Method>,
    energies: Vec<f64>,
    columns: Vec<Vec<f64>>,
}

impl WeightTable {
    pub fn new(energies: Vec<f64>) -> Self {
        Self {
            methods: Vec::new(),
            energies,
            columns: Vec::new(),
        }
    }

    /// Appends a column after checking it has one positive weight per row.
    pub fn push(&mut self, method: Method, column: Vec<f64>) -> Result<()> {
        if column.len() != self.energies.len() {
            return Err(Error::Precondition(format!(
                "{method} column has {} rows, table has {}",
                column.len(),
                self.energies.len()
            )));
        }
        if let Some(mu) = column.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::Degenerate(format!(
                "{method} weight {mu} is {}",
                column[mu]
            )));
        }
        self.methods.push(method);
        self.columns.push(column);
        Ok(())
    }

    pub fn methods(&self) -> &[Method] {
        &self.methods
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn column(&self, method: Method) -> Option<&[f64]> {
        self.methods
            .iter()
            .position(|&m| m == method)
            .map(|i| self.columns[i].as_slice())
    }

    /// `(mu, eps_mu, weights in method order)`.
    pub fn rows(&self) -> impl Iterator<Item = (usize, f64, Vec<f64>)> + '_ {
        self.energies
            .iter()
            .enumerate()
            .map(|(mu, &e)| (mu, e, self.columns.iter().map(|c| c[mu]).collect()))
    }
}

/// `g_nm(eps)` from the spectral sum.
pub fn g_matrix_element(es: &EigenSystem, n: usize, m: usize, energy: f64) -> Result<f64> {
    let values = es.values();
    let scale = values
        .iter()
        .fold(energy.abs(), |acc, v| acc.max(v.abs()))
        .max(1.0);
    let mut sum = 0.0;
    for (mu, &ev) in values.iter().enumerate() {
        let gap = ev - energy;
        if gap.abs() <= POLE_GAP * scale {
            return Err(Error::SpectralPole { energy, index: mu });
        }
        sum += es.component(n, mu) * es.component(m, mu) / gap;
    }
    Ok(sum)
}

/// Heller's rule: slope at `x = mu` of the continued fraction through
/// `(mu, eps_mu)`.
pub fn heller_weights(eigenvalues: &[f64]) -> Result<Vec<f64>> {
    if eigenvalues.len() < 3 {
        return Err(Error::Precondition(format!(
            "Heller's rule needs at least 3 eigenvalues, got {}",
            eigenvalues.len()
        )));
    }
    let knots = KnotSet::new(
        eigenvalues
            .iter()
            .enumerate()
            .map(|(mu, &e)| (mu as f64, e)),
    )?;
    slopes_at_integers(&knots, eigenvalues.len())
}

/// `sum_mu w_mu F(eps_mu)`.
pub fn integrate(weights: &[f64], samples: &[f64]) -> Result<f64> {
    if weights.len() != samples.len() {
        return Err(Error::Precondition(format!(
            "{} weights but {} integrand samples",
            weights.len(),
            samples.len()
        )));
    }
    Ok(weights.iter().zip(samples).map(|(w, f)| w * f).sum())
}

fn slopes_at_integers(knots: &KnotSet, n: usize) -> Result<Vec<f64>> {
    let fit = RationalFit::fit(knots)?;
    (0..n)
        .map(|mu| fit.eval_deriv(mu as f64).map(|(_, slope)| slope))
        .collect()
}

/// Phase of `z` mapped into `[0, pi]`.
fn upper_phase(z: Complex64) -> Result<f64> {
    let mut arg = z.im.atan2(z.re);
    if arg < 0.0 {
        arg += PI;
    }
    if (0.0..=PI).contains(&arg) {
        Ok(arg)
    } else {
        Err(Error::Branch { arg })
    }
}

/// A model truncated to `N` basis states, with its spectrum.
#[derive(Debug, Clone)]
pub struct Discretized {
    model: ModelProblem,
    n: usize,
    hamiltonian: SymTridiag,
    eigen: EigenSystem,
}

impl Discretized {
    pub fn new(model: &ModelProblem, n: usize) -> Result<Self> {
        let hamiltonian = model.build_hamiltonian(n)?;
        let eigen = hamiltonian.eigh()?;
        Ok(Self {
            model: model.clone(),
            n,
            hamiltonian,
            eigen,
        })
    }

    pub fn model(&self) -> &ModelProblem {
        &self.model
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn hamiltonian(&self) -> &SymTridiag {
        &self.hamiltonian
    }

    pub fn eigen(&self) -> &EigenSystem {
        &self.eigen
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.eigen.values()
    }

    /// Eigenvalues with the first row and column removed: the zeros of `g_00`.
    pub fn hat_values(&self) -> Result<Vec<f64>> {
        Ok(self.hamiltonian.drop_first()?.eigh()?.values().to_vec())
    }

    /// Eigenvalues with the last row and column removed: the zeros of
    /// `g_{N-1,N-1}`.
    pub fn tilde_values(&self) -> Result<Vec<f64>> {
        Ok(self.hamiltonian.drop_last()?.eigh()?.values().to_vec())
    }

    pub fn green_pieces(&self, energy: f64) -> Result<GreenPieces> {
        let last = self.n - 1;
        let g00 = g_matrix_element(&self.eigen, 0, 0, energy)?;
        let g0n1 = g_matrix_element(&self.eigen, 0, last, energy)?;
        let gn1n1 = g_matrix_element(&self.eigen, last, last, energy)?;
        let rplus = self.model.r_plus(self.n, energy)?;
        let delta = 1.0 + gn1n1 * self.model.j_coupling(self.n)? * rplus;
        Ok(GreenPieces {
            g00,
            g0n1,
            gn1n1,
            rplus,
            delta,
        })
    }

    /// `G_00^(+) = g_00 - g_{0,N-1} J_{N-1,N} (R_N^+ / Delta_N^+) g_{N-1,0}`.
    pub fn assemble_green00(&self, energy: f64) -> Result<Complex64> {
        let p = self.green_pieces(energy)?;
        if p.delta.norm() < DELTA_TINY {
            return Err(Error::Degenerate(format!("Delta_N^+ vanishes at {energy}")));
        }
        let j = self.model.j_coupling(self.n)?;
        Ok(p.g00 - p.g0n1 * j * (p.rplus / p.delta) * p.g0n1)
    }

    fn require_interpolation_size(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::Precondition(format!(
                "interpolation schemes need N >= 3, got {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Merges `(mu, eps_mu)` with fractional-index knots `(k + phase_k / pi,
    /// energy_k)` and checks that the two sets interleave.
    fn extended_knots(
        &self,
        inner: &[f64],
        phase: impl Fn(f64) -> Result<f64>,
        policy: ExtraKnots,
    ) -> Result<KnotSet> {
        if !interlace_check(self.eigenvalues(), inner)? {
            return Err(Error::Interleave(
                "submatrix eigenvalues do not interlace the spectrum".into(),
            ));
        }
        let keep = match policy {
            ExtraKnots::SkipLast => inner.len() - 1,
            ExtraKnots::All => inner.len(),
        };
        let mut points: Vec<(f64, f64)> = self
            .eigenvalues()
            .iter()
            .enumerate()
            .map(|(mu, &e)| (mu as f64, e))
            .collect();
        for (k, &e) in inner.iter().take(keep).enumerate() {
            points.push((k as f64 + phase(e)? / PI, e));
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        KnotSet::new(points)
    }

    /// Knots of Broad's extension: `nu + arg G_00^(+)(eps_hat_nu) / pi`.
    pub fn broad_knots(&self, policy: ExtraKnots) -> Result<KnotSet> {
        if !Method::Broad.supports(&self.model) {
            return Err(Error::Unsupported {
                method: "Broad's extension",
                model: self.model.kind().name(),
            });
        }
        let hat = self.hat_values()?;
        self.extended_knots(&hat, |e| upper_phase(self.model.green00_exact(e)?), policy)
    }

    /// Knots of the J-matrix extension: `sigma + arg R_N^+(eps_tilde_sigma) / pi`.
    /// `Delta_N^+ = 1` at these energies.
    pub fn jmatrix_knots(&self, policy: ExtraKnots) -> Result<KnotSet> {
        let tilde = self.tilde_values()?;
        self.extended_knots(
            &tilde,
            |e| upper_phase(self.model.r_plus(self.n, e)?),
            policy,
        )
    }

    /// All `N - 1` fractional-index knots of the J-matrix extension, whether
    /// or not a policy uses them.
    pub fn jmatrix_extra_knots(&self) -> Result<Vec<(f64, f64)>> {
        self.tilde_values()?
            .into_iter()
            .enumerate()
            .map(|(k, e)| {
                Ok((
                    k as f64 + upper_phase(self.model.r_plus(self.n, e)?)? / PI,
                    e,
                ))
            })
            .collect()
    }

    pub fn heller(&self) -> Result<Vec<f64>> {
        heller_weights(self.eigenvalues())
    }

    pub fn broad(&self, policy: ExtraKnots) -> Result<Vec<f64>> {
        self.require_interpolation_size()?;
        slopes_at_integers(&self.broad_knots(policy)?, self.n)
    }

    pub fn jmatrix_interp(&self, policy: ExtraKnots) -> Result<Vec<f64>> {
        self.require_interpolation_size()?;
        slopes_at_integers(&self.jmatrix_knots(policy)?, self.n)
    }

    /// `w_mu = pi Gamma_{N-1,mu}^2 J_{N-1,N} / Im[1 / R_N^+(eps_mu)]`.
    pub fn jmatrix_exact(&self) -> Result<Vec<f64>> {
        let j = self.model.j_coupling(self.n)?;
        self.eigenvalues()
            .iter()
            .zip(self.eigen.last_row_sq())
            .map(|(&e, gamma2)| {
                let im = self.model.r_plus(self.n, e)?.inv().im;
                if im.is_nan() || im <= 0.0 {
                    return Err(Error::Convention(format!(
                        "Im[1/R_N^+] = {im} is not positive at {e}"
                    )));
                }
                Ok(PI * gamma2 * j / im)
            })
            .collect()
    }

    /// Gauss abscissas and weights, `w_mu = mu_0 Gamma_{0 mu}^2`.
    pub fn quadrature(&self) -> Vec<(f64, f64)> {
        let mu0 = self.model.zeroth_moment();
        self.eigenvalues()
            .iter()
            .zip(self.eigen.first_row_sq())
            .map(|(&e, g2)| (e, mu0 * g2))
            .collect()
    }

    /// `w_mu / rho(eps_mu)`.
    pub fn oracle(&self) -> Result<Vec<f64>> {
        self.quadrature()
            .into_iter()
            .map(|(e, w)| {
                let rho = self.model.density(e)?;
                if rho <= 0.0 {
                    return Err(Error::Density { energy: e });
                }
                Ok(w / rho)
            })
            .collect()
    }

    pub fn weights(&self, method: Method, policy: ExtraKnots) -> Result<Vec<f64>> {
        match method {
            Method::Heller => self.heller(),
            Method::Broad => self.broad(policy),
            Method::JmatrixInterp => self.jmatrix_interp(policy),
            Method::JmatrixExact => self.jmatrix_exact(),
            Method::Oracle => self.oracle(),
        }
    }

    pub fn table(&self, methods: &[Method], policy: ExtraKnots) -> Result<WeightTable> {
        let mut table = WeightTable::new(self.eigenvalues().to_vec());
        for &m in methods {
            table.push(m, self.weights(m, policy)?)?;
        }
        Ok(table)
    }

    /// `zeta^{-1}(eps) mod 1` from
    /// `tan(pi x) = Im R / Re[R + g_{N-1,N-1} J |R|^2]`.
    fn phase_fraction(&self, energy: f64) -> Result<f64> {
        let g = g_matrix_element(&self.eigen, self.n - 1, self.n - 1, energy)?;
        let r = self.model.r_plus(self.n, energy)?;
        let j = self.model.j_coupling(self.n)?;
        let x = r.im.atan2(r.re + g * j * r.norm_sqr()) / PI;
        Ok(x.rem_euclid(1.0))
    }

    /// `x = zeta^{-1}(eps)`, evaluated directly without interpolation.
    ///
    /// The phase only fixes `x mod 1`; it is unwrapped along a grid from the
    /// nearest eigenvalue `eps_mu`, where `x = mu` exactly.
    pub fn zeta_inverse(&self, energy: f64) -> Result<f64> {
        let (lo, hi) = self.model.continuum();
        if !(energy > lo && energy < hi) {
            return Err(Error::Domain { energy, lo, hi });
        }
        let values = self.eigenvalues();
        let scale = values
            .iter()
            .fold(energy.abs(), |acc, v| acc.max(v.abs()))
            .max(1.0);
        let (anchor, anchor_e) = values
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| (a.1 - energy).abs().total_cmp(&(b.1 - energy).abs()))
            .expect("spectrum is non-empty");
        if (anchor_e - energy).abs() <= POLE_GAP * scale {
            return Ok(anchor as f64);
        }
        let mut x = anchor as f64;
        let mut prev = 0.0;
        for i in 1..=UNWRAP_STEPS {
            let e = anchor_e + (energy - anchor_e) * i as f64 / UNWRAP_STEPS as f64;
            // the phase vanishes at the anchor; points inside the pole guard
            // of g carry no information
            if i < UNWRAP_STEPS && (e - anchor_e).abs() <= 2.0 * POLE_GAP * scale {
                continue;
            }
            let frac = self.phase_fraction(e)?;
            let step = (frac - prev + 0.5).rem_euclid(1.0) - 0.5;
            if step.abs() > UNWRAP_MAX_STEP {
                return Err(Error::Resolution { energy: e });
            }
            x += step;
            prev = frac;
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn model1() -> Discretized {
        Discretized::new(
            &ModelProblem::chebyshev_modified(1.0 / 3.0, 1.0 / 3.0).unwrap(),
            10,
        )
        .unwrap()
    }

    fn theta(mu: usize, n: usize) -> f64 {
        (mu as f64 + 1.0) * PI / (n as f64 + 1.0)
    }

    #[test]
    fn single_term_spectral_sum() {
        let t = SymTridiag::new(vec![0.7], vec![]).unwrap();
        let es = t.eigh().unwrap();
        assert_abs_diff_eq!(
            g_matrix_element(&es, 0, 0, 3.0).unwrap(),
            1.0 / (0.7 - 3.0),
            epsilon = 1e-15
        );
        assert!(matches!(
            g_matrix_element(&es, 0, 0, 0.7),
            Err(Error::SpectralPole { index: 0, .. })
        ));
    }

    #[test]
    fn zeros_of_diagonal_elements() {
        let d = model1();
        for e in d.tilde_values().unwrap() {
            assert!(g_matrix_element(d.eigen(), 9, 9, e).unwrap().abs() < 1e-10);
        }
        for e in d.hat_values().unwrap() {
            assert!(g_matrix_element(d.eigen(), 0, 0, e).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn g00_is_ratio_of_characteristic_polynomials() {
        let d = model1();
        let hat = d.hat_values().unwrap();
        let ratio = |e: f64| {
            hat.iter().map(|h| e - h).product::<f64>()
                / d.eigenvalues().iter().map(|v| e - v).product::<f64>()
        };
        // the spectral sum is the negative of the monic ratio
        for k in 0..50 {
            let e = -1.3 + 2.6 * (k as f64 + 0.37) / 50.0;
            let g = g_matrix_element(d.eigen(), 0, 0, e).unwrap();
            assert_relative_eq!(g, -ratio(e), max_relative = 1e-9);
        }
    }

    #[test]
    fn green_pieces_symmetry() {
        let d = model1();
        let p = d.green_pieces(0.123).unwrap();
        let g_n0 = g_matrix_element(d.eigen(), 9, 0, 0.123).unwrap();
        assert_eq!(p.g0n1, g_n0);
    }

    #[test]
    fn assembled_green_function() {
        let d = model1();
        let exact = d.model().green00_exact(0.3).unwrap();
        let assembled = d.assemble_green00(0.3).unwrap();
        assert!((exact - assembled).norm() < 1e-10);

        let pure =
            Discretized::new(&ModelProblem::chebyshev_modified(0.0, 0.5).unwrap(), 6).unwrap();
        let g = pure.assemble_green00(0.0).unwrap();
        assert_abs_diff_eq!(g.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g.im, 2.0, epsilon = 1e-12);

        for k in 0..99 {
            let e = -0.95 + 1.9 * (k as f64 + 0.5) / 99.0;
            assert!(d.assemble_green00(e).unwrap().im > 0.0);
        }
    }

    #[test]
    fn heller_chebyshev() {
        let pure = Discretized::new(&ModelProblem::pure_chebyshev(), 10).unwrap();
        let w = pure.heller().unwrap();
        for (mu, wi) in w.iter().enumerate() {
            let expected = PI / 11.0 * theta(mu, 10).sin();
            assert!((wi - expected).abs() < 1e-3, "mu={mu}");
        }
        assert!(heller_weights(&[0.0, 1.0]).is_err());
    }

    #[test]
    fn table_one_spot_values() {
        let d = model1();
        assert_abs_diff_eq!(d.heller().unwrap()[0], 0.090485, epsilon = 1e-5);
        let broad = d.broad(ExtraKnots::SkipLast).unwrap();
        assert_abs_diff_eq!(broad[0], 0.093250, epsilon = 1e-5);
        assert_abs_diff_eq!(broad[9], 0.085524, epsilon = 1e-5);
        let interp = d.jmatrix_interp(ExtraKnots::SkipLast).unwrap();
        assert_abs_diff_eq!(interp[9], 0.085916, epsilon = 1e-5);
        for mu in 0..6 {
            assert!((interp[mu] - broad[mu]).abs() <= 1e-5);
        }
        assert_abs_diff_eq!(d.jmatrix_exact().unwrap()[9], 0.087189, epsilon = 1e-6);
        assert_abs_diff_eq!(d.oracle().unwrap()[0], 0.093250, epsilon = 1e-6);
    }

    #[test]
    fn knot_sets() {
        let d = model1();
        let all = d.broad_knots(ExtraKnots::All).unwrap();
        assert_eq!(all.len(), 19);
        assert!(all.xs().iter().all(|&x| x > -1.0 && x < 10.0));
        assert_eq!(d.broad_knots(ExtraKnots::SkipLast).unwrap().len(), 18);
        assert_eq!(d.jmatrix_knots(ExtraKnots::All).unwrap().len(), 19);

        let pure = Discretized::new(&ModelProblem::pure_chebyshev(), 8).unwrap();
        let knots = pure.jmatrix_knots(ExtraKnots::All).unwrap();
        for (x, _) in knots.points().filter(|(x, _)| x.fract() != 0.0) {
            assert!(x.fract() > 0.0 && x.fract() < 1.0);
        }
    }

    #[test]
    fn broad_needs_exact_green_function() {
        let d = Discretized::new(&ModelProblem::partial_wave(1, 1.3).unwrap(), 5).unwrap();
        assert!(matches!(
            d.broad(ExtraKnots::SkipLast),
            Err(Error::Unsupported { .. })
        ));
        assert!(!Method::Broad.supports(d.model()));
    }

    #[test]
    fn chebyshev_exact_forms() {
        for n in [2, 3, 7, 10] {
            let d = Discretized::new(&ModelProblem::pure_chebyshev(), n).unwrap();
            let exact = d.jmatrix_exact().unwrap();
            let oracle = d.oracle().unwrap();
            for mu in 0..n {
                let expected = PI / (n as f64 + 1.0) * theta(mu, n).sin();
                assert_abs_diff_eq!(exact[mu], expected, epsilon = 1e-12);
                assert_abs_diff_eq!(oracle[mu], expected, epsilon = 1e-12);
                let gamma2 = d.eigen().last_row_sq()[mu];
                assert_abs_diff_eq!(
                    gamma2,
                    2.0 / (n as f64 + 1.0) * theta(mu, n).sin().powi(2),
                    epsilon = 1e-14
                );
            }
            for (mu, (_, w)) in d.quadrature().into_iter().enumerate() {
                let expected = PI / (n as f64 + 1.0) * theta(mu, n).sin().powi(2);
                assert_abs_diff_eq!(w, expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn interpolation_needs_three_states() {
        let d = Discretized::new(&ModelProblem::pure_chebyshev(), 2).unwrap();
        assert!(d.jmatrix_interp(ExtraKnots::All).is_err());
        assert!(d.jmatrix_exact().is_ok());
    }

    #[test]
    fn quadrature_normalization() {
        let d = model1();
        let total: f64 = d.quadrature().iter().map(|(_, w)| w).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn integrate_rules() {
        let d = model1();
        let oracle = d.oracle().unwrap();
        let rho: Vec<f64> = d
            .eigenvalues()
            .iter()
            .map(|&e| d.model().density(e).unwrap())
            .collect();
        assert_abs_diff_eq!(integrate(&oracle, &rho).unwrap(), 1.0, epsilon = 1e-10);
        assert!(integrate(&oracle, &rho[1..]).is_err());

        let pure = Discretized::new(&ModelProblem::pure_chebyshev(), 10).unwrap();
        let odd: Vec<f64> = pure
            .eigenvalues()
            .iter()
            .map(|&e| e * pure.model().density(e).unwrap())
            .collect();
        assert_abs_diff_eq!(
            integrate(&pure.oracle().unwrap(), &odd).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn zeta_inverse_hits_integers_and_tilde_knots() {
        let d = model1();
        for (mu, &e) in d.eigenvalues().iter().enumerate() {
            assert_abs_diff_eq!(d.zeta_inverse(e).unwrap(), mu as f64, epsilon = 1e-8);
            assert_abs_diff_eq!(d.zeta_inverse(e + 1e-9).unwrap(), mu as f64, epsilon = 1e-6);
        }
        for (sigma, e) in d.tilde_values().unwrap().into_iter().enumerate() {
            let expected =
                sigma as f64 + upper_phase(d.model().r_plus(10, e).unwrap()).unwrap() / PI;
            assert_abs_diff_eq!(d.zeta_inverse(e).unwrap(), expected, epsilon = 1e-8);
        }
        assert!(d.zeta_inverse(1.0).is_err());
    }

    #[test]
    fn zeta_inverse_slope_matches_closed_form() {
        let d = model1();
        let exact = d.jmatrix_exact().unwrap();
        let h = 1e-6;
        for (mu, &e) in d.eigenvalues().iter().enumerate() {
            let slope =
                (d.zeta_inverse(e + h).unwrap() - d.zeta_inverse(e - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(slope, 1.0 / exact[mu], max_relative = 1e-5);
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("simpson".parse::<Method>().is_err());
        assert_eq!(
            "published".parse::<ExtraKnots>().unwrap(),
            ExtraKnots::SkipLast
        );
        assert_eq!("all".parse::<ExtraKnots>().unwrap(), ExtraKnots::All);
    }

    #[test]
    fn table_rejects_non_positive_columns() {
        let mut t = WeightTable::new(vec![0.0, 1.0]);
        assert!(t.push(Method::Heller, vec![1.0, -1.0]).is_err());
        assert!(t.push(Method::Heller, vec![1.0]).is_err());
        t.push(Method::Oracle, vec![1.0, 2.0]).unwrap();
        assert_eq!(t.column(Method::Oracle).unwrap(), &[1.0, 2.0]);
        assert!(t.column(Method::Broad).is_none());
    }
}
