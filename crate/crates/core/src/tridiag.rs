//! Real symmetric tridiagonal matrices and their eigen-decomposition.
//!
//! Eigenvalues come from implicit-shift QL. Eigenvectors are then built one
//! at a time from a twisted factorization of `T - eps I`, which gives every
//! component to high *relative* accuracy. Gauss weights and the closed-form
//! derivative weights depend on squared first/last components that can be as
//! small as 1e-27, so Givens accumulation (absolute accuracy only) is not
//! enough here. Vectors of tightly clustered eigenvalues are
//! re-orthogonalized against each other.

use crate::error::{Error, Result};

/// Sweep budget per eigenvalue in the QL iteration.
pub const MAX_SWEEPS: usize = 30;
/// Eigenvalues closer than this fraction of `||T||` form a cluster whose
/// vectors are re-orthogonalized.
const CLUSTER_GAP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiag {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Precondition(
                "tridiagonal matrix needs n >= 1".into(),
            ));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::Precondition(format!(
                "off-diagonal has {} entries, expected {}",
                off.len(),
                diag.len() - 1
            )));
        }
        if diag.iter().chain(off.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Precondition("matrix entries must be finite".into()));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Principal submatrix without the first row and column.
    pub fn drop_first(&self) -> Result<Self> {
        if self.dim() < 2 {
            return Err(Error::Precondition("drop_first needs n >= 2".into()));
        }
        Ok(Self {
            diag: self.diag[1..].to_vec(),
            off: self.off[1..].to_vec(),
        })
    }

    /// Leading principal submatrix without the last row and column.
    pub fn drop_last(&self) -> Result<Self> {
        let n = self.dim();
        if n < 2 {
            return Err(Error::Precondition("drop_last needs n >= 2".into()));
        }
        Ok(Self {
            diag: self.diag[..n - 1].to_vec(),
            off: self.off[..n - 2].to_vec(),
        })
    }

    /// Maximum absolute row sum (equals the 1-norm for a symmetric matrix).
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim())
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let right = self.off.get(i).map_or(0.0, |v| v.abs());
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    /// `T v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(v.len(), n, "vector length must match matrix dimension");
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * v[i];
                if i > 0 {
                    acc += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.off[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Full eigen-decomposition with ascending eigenvalues.
    ///
    /// Every off-diagonal entry must be nonzero, which makes the spectrum
    /// simple. Eigenvectors are normalized with a positive first component.
    pub fn eigh(&self) -> Result<EigenSystem> {
        if let Some(i) = self.off.iter().position(|&b| b == 0.0) {
            return Err(Error::Precondition(format!(
                "off-diagonal entry {i} is zero; spectrum may be degenerate"
            )));
        }
        let values = self.eigenvalues()?;
        for (k, w) in values.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::Degenerate(format!(
                    "eigenvalues {k} and {} are not separated",
                    k + 1
                )));
            }
        }
        let mut vectors: Vec<Vec<f64>> = values.iter().map(|&ev| self.twisted_vector(ev)).collect();
        // Vectors of close eigenvalues are only orthogonal to about
        // eps ||T|| / gap; re-orthogonalize inside such clusters.
        let cluster_gap = CLUSTER_GAP * self.norm_inf();
        let mut first = 0;
        for b in 1..values.len() {
            if values[b] - values[b - 1] >= cluster_gap {
                first = b;
                continue;
            }
            for _ in 0..2 {
                for a in first..b {
                    let (done, rest) = vectors.split_at_mut(b);
                    let dot: f64 = done[a].iter().zip(&rest[0]).map(|(x, y)| x * y).sum();
                    rest[0]
                        .iter_mut()
                        .zip(&done[a])
                        .for_each(|(y, x)| *y -= dot * x);
                }
            }
            let v = &mut vectors[b];
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let sign = if v[0] < 0.0 { -1.0 } else { 1.0 };
            v.iter_mut().for_each(|x| *x *= sign / norm);
        }
        Ok(EigenSystem { values, vectors })
    }

    /// Implicit-shift QL on a copy of the matrix, eigenvalues only.
    fn eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.dim();
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);

        for l in 0..n {
            let mut iter = 0;
            loop {
                let mut m = l;
                while m + 1 < n {
                    let dd = d[m].abs() + d[m + 1].abs();
                    if e[m].abs() <= f64::EPSILON * dd {
                        break;
                    }
                    m += 1;
                }
                if m == l {
                    break;
                }
                if iter == MAX_SWEEPS {
                    return Err(Error::NoConvergence {
                        index: l,
                        iterations: iter,
                    });
                }
                iter += 1;

                let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                let mut r = g.hypot(1.0);
                g = d[m] - d[l] + e[l] / (g + r.copysign(g));
                let (mut s, mut c, mut p) = (1.0_f64, 1.0_f64, 0.0_f64);
                let mut underflow = false;
                for i in (l..m).rev() {
                    let f = s * e[i];
                    let b = c * e[i];
                    r = f.hypot(g);
                    e[i + 1] = r;
                    if r == 0.0 {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if underflow {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
        d.sort_by(|a, b| a.total_cmp(b));
        Ok(d)
    }

    /// Eigenvector for the (accurate) eigenvalue `ev` from the twisted
    /// factorization `T - ev I = N_k D_k N_k^T`, twisted at the index with the
    /// smallest pivot `gamma_k`.
    fn twisted_vector(&self, ev: f64) -> Vec<f64> {
        let n = self.dim();
        if n == 1 {
            return vec![1.0];
        }
        let tiny = f64::MIN_POSITIVE.sqrt() * self.norm_inf().max(f64::MIN_POSITIVE);
        let guard = |v: f64| if v.abs() < tiny { tiny.copysign(v) } else { v };

        // forward pivots D+_i and backward pivots D-_i of T - ev I
        let mut fwd = vec![0.0; n];
        fwd[0] = guard(self.diag[0] - ev);
        for i in 1..n {
            fwd[i] = guard(self.diag[i] - ev - self.off[i - 1] * self.off[i - 1] / fwd[i - 1]);
        }
        let mut bwd = vec![0.0; n];
        bwd[n - 1] = guard(self.diag[n - 1] - ev);
        for i in (0..n - 1).rev() {
            bwd[i] = guard(self.diag[i] - ev - self.off[i] * self.off[i] / bwd[i + 1]);
        }
        let twist = (0..n)
            .min_by(|&a, &b| {
                let ga = (fwd[a] + bwd[a] - (self.diag[a] - ev)).abs();
                let gb = (fwd[b] + bwd[b] - (self.diag[b] - ev)).abs();
                ga.total_cmp(&gb)
            })
            .unwrap_or(0);

        let mut z = vec![0.0; n];
        z[twist] = 1.0;
        for i in (0..twist).rev() {
            z[i] = -self.off[i] * z[i + 1] / fwd[i];
        }
        for i in twist + 1..n {
            z[i] = -self.off[i - 1] * z[i - 1] / bwd[i];
        }
        let norm = z.iter().map(|v| v * v).sum::<f64>().sqrt();
        let sign = if z[0] < 0.0 { -1.0 } else { 1.0 };
        z.iter_mut().for_each(|v| *v *= sign / norm);
        z
    }
}

/// Sorted eigenvalues with normalized eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    values: Vec<f64>,
    /// `vectors[mu][n]` is the component `Gamma_{n mu}`.
    vectors: Vec<Vec<f64>>,
}

impl EigenSystem {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vector(&self, mu: usize) -> &[f64] {
        &self.vectors[mu]
    }

    /// `Gamma_{n mu}`: component `n` of eigenvector `mu`.
    pub fn component(&self, n: usize, mu: usize) -> f64 {
        self.vectors[mu][n]
    }

    /// `Gamma_{0 mu}^2` for every `mu`.
    pub fn first_row_sq(&self) -> Vec<f64> {
        self.vectors.iter().map(|v| v[0] * v[0]).collect()
    }

    /// `Gamma_{N-1, mu}^2` for every `mu`.
    pub fn last_row_sq(&self) -> Vec<f64> {
        self.vectors
            .iter()
            .map(|v| v[v.len() - 1] * v[v.len() - 1])
            .collect()
    }

    /// Largest `||T v - eps v||` over all eigenpairs.
    pub fn max_residual(&self, t: &SymTridiag) -> f64 {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&ev, v)| {
                t.mul_vec(v)
                    .iter()
                    .zip(v)
                    .map(|(tv, vi)| (tv - ev * vi).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

/// Strict Cauchy interlacing: `outer[k] < inner[k] < outer[k+1]` for all `k`.
pub fn interlace_check(outer: &[f64], inner: &[f64]) -> Result<bool> {
    if outer.is_empty() || inner.len() + 1 != outer.len() {
        return Err(Error::Precondition(format!(
            "interlacing needs |inner| = |outer| - 1, got {} and {}",
            inner.len(),
            outer.len()
        )));
    }
    Ok(inner
        .iter()
        .enumerate()
        .all(|(k, &v)| outer[k] < v && v < outer[k + 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn chebyshev(n: usize) -> SymTridiag {
        SymTridiag::new(vec![0.0; n], vec![0.5; n - 1]).unwrap()
    }

    fn model1(n: usize) -> SymTridiag {
        let mut diag = vec![0.0; n];
        diag[0] = 1.0 / 3.0;
        let mut off = vec![0.5; n - 1];
        off[0] = 1.0 / 3.0;
        SymTridiag::new(diag, off).unwrap()
    }

    #[test]
    fn two_by_two_closed_form() {
        let es = chebyshev(2).eigh().unwrap();
        assert_abs_diff_eq!(es.values()[0], -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(es.values()[1], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(es.component(0, 0), FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(es.component(1, 0), -FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(es.component(0, 1), FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(es.component(1, 1), FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn chebyshev_three() {
        let es = chebyshev(3).eigh().unwrap();
        for (mu, &v) in es.values().iter().enumerate() {
            assert_abs_diff_eq!(v, -((mu as f64 + 1.0) * PI / 4.0).cos(), epsilon = 1e-15);
        }
        assert_abs_diff_eq!(es.values()[1], 0.0, epsilon = 1e-15);
        let sub = chebyshev(3).drop_last().unwrap().eigh().unwrap();
        assert_abs_diff_eq!(sub.values()[0], -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(sub.values()[1], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn model1_spectrum_edges() {
        let es = model1(10).eigh().unwrap();
        assert_abs_diff_eq!(es.values()[0], -0.952972, epsilon = 1e-6);
        assert_abs_diff_eq!(es.values()[9], 0.955819, epsilon = 1e-6);
    }

    #[test]
    fn truncations() {
        let t = SymTridiag::new(vec![0.3, 0.0, 0.0], vec![0.7, 0.5]).unwrap();
        let first = t.drop_first().unwrap();
        assert_eq!(first.diag(), &[0.0, 0.0]);
        assert_eq!(first.off(), &[0.5]);
        let last = t.drop_last().unwrap();
        assert_eq!(last.diag(), &[0.3, 0.0]);
        assert_eq!(last.off(), &[0.7]);

        let two = SymTridiag::new(vec![1.0, 2.0], vec![3.0]).unwrap();
        let one = two.drop_first().unwrap();
        assert_eq!(one.diag(), &[2.0]);
        assert!(one.off().is_empty());
        assert!(one.drop_first().is_err());
        assert!(one.drop_last().is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SymTridiag::new(vec![], vec![]).is_err());
        assert!(SymTridiag::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymTridiag::new(vec![1.0, f64::NAN], vec![1.0]).is_err());
        let zero = SymTridiag::new(vec![1.0, 2.0, 3.0], vec![1.0, 0.0]).unwrap();
        assert!(matches!(zero.eigh(), Err(Error::Precondition(_))));
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlace_check(&[-0.5, 0.5], &[0.0]).unwrap());
        assert!(!interlace_check(&[0.0, 1.0], &[2.0]).unwrap());
        assert!(interlace_check(&[0.0, 1.0], &[0.5, 0.6]).is_err());

        let t = model1(10);
        let es = t.eigh().unwrap();
        let hat = t.drop_first().unwrap().eigh().unwrap();
        let tilde = t.drop_last().unwrap().eigh().unwrap();
        assert!(interlace_check(es.values(), hat.values()).unwrap());
        assert!(interlace_check(es.values(), tilde.values()).unwrap());
    }

    #[test]
    fn one_by_one() {
        let t = SymTridiag::new(vec![4.2], vec![]).unwrap();
        let es = t.eigh().unwrap();
        assert_eq!(es.values(), &[4.2]);
        assert_eq!(es.vector(0), &[1.0]);
    }

    #[test]
    fn deterministic_bits() {
        let t = model1(17);
        assert_eq!(t.eigh().unwrap(), t.eigh().unwrap());
    }
}
