//! The two reference problems.
//!
//! * [`ModelKind::ChebyshevModified`]: the Chebyshev chain (`diag 0`,
//!   `off 1/2`) with its first diagonal entry replaced by `A` and its first
//!   off-diagonal entry by `B`. The reference Hamiltonian is the unmodified
//!   chain, so the potential lives in the leading 2x2 block and the
//!   continuum is `[-1, 1]`.
//! * [`ModelKind::PartialWave`]: the `l`-th partial-wave kinetic energy in
//!   the orthonormal Laguerre basis with scale `lambda`. Here the reference
//!   Hamiltonian is the whole operator and the continuum is `[0, inf)`.

use crate::error::{Error, Result};
use crate::special::{factorial_over_gamma, gamma_half, hyp1f1, laguerre};
use crate::tridiag::SymTridiag;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelKind {
    ChebyshevModified { a: f64, b: f64 },
    PartialWave { ell: u32, lambda: f64 },
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::ChebyshevModified { .. } => "chebyshev-mod",
            ModelKind::PartialWave { .. } => "pwke",
        }
    }
}

/// `s_n(eps)` and `c_n(eps)` of the reference problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceWave {
    pub s: f64,
    pub c: f64,
}

/// A model instance with its density normalization and cached zeroth moment.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelProblem {
    kind: ModelKind,
    density_scale: f64,
    mu0: f64,
}

impl ModelProblem {
    /// Modified Chebyshev chain; the density is normalized as a probability
    /// density when the model has no bound states.
    pub fn chebyshev_modified(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::ModelParameter("A and B must be finite".into()));
        }
        if b == 0.0 {
            return Err(Error::ModelParameter("B must be nonzero".into()));
        }
        Self::with_scale(ModelKind::ChebyshevModified { a, b }, 1.0)
    }

    /// The unmodified chain (`A = 0`, `B = 1/2`) with the classical density
    /// `sqrt(1 - x^2)`, whose zeroth moment is `pi / 2`.
    pub fn pure_chebyshev() -> Self {
        Self::with_scale(ModelKind::ChebyshevModified { a: 0.0, b: 0.5 }, PI / 2.0)
            .expect("pure Chebyshev density integrates")
    }

    pub fn partial_wave(ell: u32, lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::ModelParameter("lambda must be positive".into()));
        }
        Self::with_scale(ModelKind::PartialWave { ell, lambda }, 1.0)
    }

    fn with_scale(kind: ModelKind, density_scale: f64) -> Result<Self> {
        let mut model = Self {
            kind,
            density_scale,
            mu0: f64::NAN,
        };
        model.mu0 = model.continuum_weight()?;
        Ok(model)
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    /// `integral rho(e) de` over the continuum.
    pub fn zeroth_moment(&self) -> f64 {
        self.mu0
    }

    /// Open continuum interval.
    pub fn continuum(&self) -> (f64, f64) {
        match self.kind {
            ModelKind::ChebyshevModified { .. } => (-1.0, 1.0),
            ModelKind::PartialWave { .. } => (0.0, f64::INFINITY),
        }
    }

    fn check_continuum(&self, energy: f64) -> Result<()> {
        let (lo, hi) = self.continuum();
        if energy > lo && energy < hi {
            Ok(())
        } else {
            Err(Error::Domain { energy, lo, hi })
        }
    }

    fn check_size(n: usize) -> Result<()> {
        if n < 2 {
            return Err(Error::Precondition(format!(
                "basis size N = {n}, need N >= 2"
            )));
        }
        Ok(())
    }

    /// Diagonal and off-diagonal of the Laguerre-basis kinetic energy.
    fn pw_elements(ell: u32, lambda: f64, n: usize) -> (f64, f64) {
        let half_l2 = 0.5 * lambda * lambda;
        let nf = n as f64;
        let l = ell as f64;
        (
            half_l2 * (2.0 * nf + l + 1.5),
            half_l2 * ((nf + 1.0) * (nf + l + 1.5)).sqrt(),
        )
    }

    /// The `N x N` truncation of the model Hamiltonian.
    pub fn build_hamiltonian(&self, n: usize) -> Result<SymTridiag> {
        Self::check_size(n)?;
        match self.kind {
            ModelKind::ChebyshevModified { a, b } => {
                let mut diag = vec![0.0; n];
                diag[0] = a;
                let mut off = vec![0.5; n - 1];
                off[0] = b;
                SymTridiag::new(diag, off)
            }
            ModelKind::PartialWave { ell, lambda } => {
                let (diag, off): (Vec<f64>, Vec<f64>) =
                    (0..n).map(|k| Self::pw_elements(ell, lambda, k)).unzip();
                SymTridiag::new(diag, off[..n - 1].to_vec())
            }
        }
    }

    /// `J_{N-1,N}`, the reference coupling across the truncation edge.
    pub fn j_coupling(&self, n: usize) -> Result<f64> {
        Self::check_size(n)?;
        Ok(self.reference_coupling(n - 1))
    }

    /// `J_{n,n+1} = H0_{n,n+1}`; the basis is orthonormal, so no energy term.
    pub fn reference_coupling(&self, n: usize) -> f64 {
        match self.kind {
            ModelKind::ChebyshevModified { .. } => 0.5,
            ModelKind::PartialWave { ell, lambda } => Self::pw_elements(ell, lambda, n).1,
        }
    }

    /// `R_N^+(eps) = (c_N + i s_N) / (c_{N-1} + i s_{N-1})`.
    pub fn r_plus(&self, n: usize, energy: f64) -> Result<Complex64> {
        Self::check_size(n)?;
        self.check_continuum(energy)?;
        match self.kind {
            ModelKind::ChebyshevModified { .. } => {
                Ok(Complex64::new(energy, (1.0 - energy * energy).sqrt()).inv())
            }
            ModelKind::PartialWave { .. } => {
                let top = self.wave_coefficients(n, energy)?;
                let below = self.wave_coefficients(n - 1, energy)?;
                let den = Complex64::new(below.c, below.s);
                if den.norm() < f64::MIN_POSITIVE {
                    return Err(Error::Degenerate(format!(
                        "c_(N-1) + i s_(N-1) vanishes at energy {energy}"
                    )));
                }
                Ok(Complex64::new(top.c, top.s) / den)
            }
        }
    }

    /// Sine- and cosine-like expansion coefficients of the free partial
    /// wave, with `y = 2 eps / lambda^2`:
    ///
    /// ```text
    /// s_n = (-1)^n sqrt(pi/lambda) sqrt(n!/Gamma(n+l+3/2)) y^((l+1)/2) e^(-y/2) L_n^(l+1/2)(y)
    /// c_n = (-1)^n sqrt(pi/lambda) sqrt(n!/Gamma(n+l+3/2)) (Gamma(l+1/2)/pi)
    ///       y^(-l/2) e^(-y/2) 1F1(-n-l-1/2; 1/2-l; y)
    /// ```
    ///
    /// Both obey the three-term recurrence of the Hamiltonian for `n >= 1`,
    /// and `J_{n,n+1} (s_n c_{n+1} - s_{n+1} c_n) = sqrt(2 eps) / 2`.
    pub fn wave_coefficients(&self, n: usize, energy: f64) -> Result<ReferenceWave> {
        let ModelKind::PartialWave { ell, lambda } = self.kind else {
            return Err(Error::Unsupported {
                method: "wave_coefficients",
                model: self.kind.name(),
            });
        };
        self.check_continuum(energy)?;
        let alpha = ell as f64 + 0.5;
        let l = ell as f64;
        let y = 2.0 * energy / (lambda * lambda);
        let norm = (PI / lambda).sqrt()
            * factorial_over_gamma(n, alpha, gamma_half(ell + 1)).sqrt()
            * if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let damp = (-0.5 * y).exp();
        let s = norm * y.powf(0.5 * (l + 1.0)) * damp * laguerre(n, alpha, y);
        let c = norm * gamma_half(ell) / PI
            * y.powf(-0.5 * l)
            * damp
            * hyp1f1(-(n as f64) - alpha, 0.5 - l, y)?;
        if !s.is_finite() || !c.is_finite() {
            return Err(Error::Range(format!(
                "wave coefficients overflow at n = {n}, energy {energy}"
            )));
        }
        Ok(ReferenceWave { s, c })
    }

    /// Closed-form `G_00^(+)(eps)` of the modified Chebyshev chain, on the
    /// upper rim where `sqrt(eps^2 - 1) = +i sqrt(1 - eps^2)`.
    pub fn green00_exact(&self, energy: f64) -> Result<Complex64> {
        let ModelKind::ChebyshevModified { a, b } = self.kind else {
            return Err(Error::Unsupported {
                method: "exact Green's function",
                model: self.kind.name(),
            });
        };
        self.check_continuum(energy)?;
        let b2 = b * b;
        let den = Complex64::new(
            a + (2.0 * b2 - 1.0) * energy,
            -2.0 * b2 * (1.0 - energy * energy).sqrt(),
        );
        Ok(den.inv())
    }

    /// Continuum density `rho(eps)`.
    pub fn density(&self, energy: f64) -> Result<f64> {
        self.check_continuum(energy)?;
        let rho = match self.kind {
            ModelKind::ChebyshevModified { a, b } => {
                let b2 = b * b;
                let den = 4.0 * b2 * b2 + (a - energy) * (a + (4.0 * b2 - 1.0) * energy);
                if den <= 0.0 {
                    return Err(Error::ModelParameter(format!(
                        "density denominator {den} is not positive at {energy}"
                    )));
                }
                (2.0 * b2 / PI) * (1.0 - energy * energy).sqrt() / den
            }
            ModelKind::PartialWave { ell, lambda } => {
                let alpha = ell as f64 + 0.5;
                let y = 2.0 * energy / (lambda * lambda);
                2.0 / (lambda * lambda) * y.powf(alpha) * (-y).exp() / gamma_half(ell + 1)
            }
        };
        Ok(self.density_scale * rho)
    }

    /// Continuum weight `integral rho`: the total weight 1 of the
    /// orthonormal basis vector minus the weight of any bound states.
    fn continuum_weight(&self) -> Result<f64> {
        let continuum = match self.kind {
            ModelKind::ChebyshevModified { a, b } => {
                1.0 - Self::bound_states(a, b)
                    .into_iter()
                    .map(|(_, w)| w)
                    .sum::<f64>()
            }
            // the Laguerre-basis continuum carries no bound states
            ModelKind::PartialWave { .. } => 1.0,
        };
        Ok(self.density_scale * continuum)
    }

    /// Energies and weights of the bound states of the modified chain.
    ///
    /// With `eps = (t + 1/t) / 2`, `|t| < 1`, poles of `G_00` solve
    /// `(4B^2 - 1) t^2 + 2 A t - 1 = 0`; the weight of each is
    /// `(1 - t^2) / (2 (1 - A t))`.
    pub fn bound_states(a: f64, b: f64) -> Vec<(f64, f64)> {
        let q = 4.0 * b * b - 1.0;
        let roots = if q.abs() < 1e-15 {
            if a == 0.0 {
                vec![]
            } else {
                vec![0.5 / a]
            }
        } else {
            let disc = a * a + q;
            if disc < 0.0 {
                vec![]
            } else {
                // stable pair of roots of q t^2 + 2 a t - 1
                let sign = if a >= 0.0 { 1.0 } else { -1.0 };
                let s = -(a + sign * disc.sqrt());
                let r1 = s / q;
                let r2 = if s == 0.0 { -r1 } else { -1.0 / s };
                vec![r1, r2]
            }
        };
        roots
            .into_iter()
            .filter(|t| t.is_finite() && t.abs() < 1.0 && *t != 0.0)
            .map(|t| (0.5 * (t + 1.0 / t), (1.0 - t * t) / (2.0 * (1.0 - a * t))))
            .collect()
    }
}
