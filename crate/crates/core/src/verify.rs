//! Reference checks against the published tables and the closed forms.
//!
//! Every check returns one or more [`CheckOutcome`] lines; `heller verify`
//! and the acceptance test suite both print them. Tolerances are fixed here.

use crate::error::Result;
use crate::models::ModelProblem;
use crate::rational_fit::RationalFit;
use crate::tridiag::interlace_check;
use crate::weights::{Discretized, ExtraKnots};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

/// Published derivative weights for the modified Chebyshev chain,
/// `A = B = 1/3`, `N = 10`: `eps, Heller, Broad, J-matrix interpolation,
/// J-matrix closed form, exact`.
pub const TABLE1: [[f64; 6]; 10] = [
    [-0.952972, 0.090485, 0.093250, 0.093250, 0.093250, 0.093250],
    [-0.816684, 0.177423, 0.176970, 0.176970, 0.176970, 0.176970],
    [-0.605168, 0.242124, 0.242319, 0.242319, 0.242319, 0.242319],
    [-0.340783, 0.281642, 0.281475, 0.281475, 0.281475, 0.281475],
    [-0.053421, 0.286715, 0.286976, 0.286976, 0.286976, 0.286976],
    [0.219605, 0.253290, 0.252617, 0.252617, 0.252616, 0.252616],
    [0.447418, 0.205993, 0.207850, 0.207848, 0.207845, 0.207845],
    [0.648931, 0.199704, 0.196699, 0.196695, 0.196688, 0.196688],
    [0.830589, 0.155402, 0.159295, 0.159300, 0.159273, 0.159273],
    [0.955819, 0.096834, 0.085524, 0.085916, 0.087189, 0.087189],
];

/// Published weights for the `l = 1` partial wave, `N = 5`: `eps, Heller,
/// J-matrix closed form, exact`. Kept as printed so the number of printed
/// decimals is known per cell.
pub const TABLE2: [[&str; 4]; 5] = [
    ["0.69089884", "0.97639588", "1.02527960", "1.02527960"],
    ["2.08912217", "1.80175781", "1.78939724", "1.78939724"],
    ["4.32302517", "2.70709413", "2.71682237", "2.71682237"],
    ["7.64230380", "4.03613269", "4.01574624", "4.01574624"],
    ["12.7171500", "6.36638", "6.50593564", "6.50593564"],
];

pub const TABLE1_A: f64 = 1.0 / 3.0;
pub const TABLE1_B: f64 = 1.0 / 3.0;
pub const TABLE1_N: usize = 10;
pub const TABLE2_ELL: u32 = 1;
/// Basis scale that reproduces the published spectrum.
pub const TABLE2_LAMBDA: f64 = 1.3;
pub const TABLE2_N: usize = 5;

pub const TOL_TABLE1_CLOSED: f64 = 1e-6;
pub const TOL_TABLE1_INTERP: f64 = 1e-5;
pub const TOL_TABLE1_INTERP_EDGE: f64 = 5e-4;
pub const TOL_TABLE2_EIGEN: f64 = 1e-8;
pub const TOL_TABLE2_CLOSED: f64 = 1e-7;
pub const TOL_TABLE2_HELLER: f64 = 1e-4;
pub const TOL_ORACLE_REL: f64 = 1e-10;
pub const TOL_CHEBYSHEV: f64 = 1e-12;
pub const TOL_GREEN: f64 = 1e-10;
pub const TOL_ZETA_INTEGER: f64 = 1e-8;
pub const TOL_FD_REL: f64 = 1e-5;
pub const TOL_CASORATIAN_REL: f64 = 1e-10;

pub const BUDGET_TABLE: Duration = Duration::from_secs(1);
pub const BUDGET_ORACLE: Duration = Duration::from_secs(5);

const SEED: u64 = 0x5EED_4E11;

pub const CHECKS: [&str; 7] = [
    "table1",
    "table2",
    "oracle-equivalence",
    "chebyshev-closed-form",
    "green-equivalence",
    "properties",
    "accuracy-ordering",
];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, result: Result<CheckOutcome>) -> Self {
        result.unwrap_or_else(|e| CheckOutcome::new(name, false, format!("error: {e}")))
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{}: {verdict} ({})", self.name, self.detail)
    }
}

/// Runs one named check, or `None` for an unknown name.
pub fn run_check(name: &str) -> Option<Vec<CheckOutcome>> {
    let outcomes = match name {
        "table1" => vec![CheckOutcome::from_result(name, table1())],
        "table2" => vec![CheckOutcome::from_result(name, table2())],
        "oracle-equivalence" => oracle_equivalence(),
        "chebyshev-closed-form" => {
            vec![CheckOutcome::from_result(name, chebyshev_closed_form())]
        }
        "green-equivalence" => vec![CheckOutcome::from_result(name, green_equivalence())],
        "properties" => properties(),
        "accuracy-ordering" => vec![CheckOutcome::from_result(name, accuracy_ordering())],
        _ => return None,
    };
    Some(outcomes)
}

pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .flat_map(|name| run_check(name).expect("registered check"))
        .collect()
}

/// Tally of cell comparisons.
#[derive(Default)]
struct Cells {
    total: usize,
    failures: Vec<String>,
    worst: f64,
}

impl Cells {
    fn compare(&mut self, label: String, got: f64, want: f64, tol: f64) {
        self.total += 1;
        let diff = (got - want).abs();
        self.worst = self.worst.max(diff);
        // NaN counts as a failure
        if diff.is_nan() || diff > tol {
            self.failures.push(format!(
                "{label}: got {got:.9} want {want} (|diff| {diff:.1e} > {tol:.0e})"
            ));
        }
    }

    fn summary(&self) -> String {
        let ok = self.total - self.failures.len();
        let mut s = format!("{ok}/{} cells within tolerance", self.total);
        if !self.failures.is_empty() {
            s.push_str("; ");
            s.push_str(&self.failures.join("; "));
        }
        s
    }
}

/// Model 1 at the published parameters.
pub fn table1_setup() -> Result<Discretized> {
    Discretized::new(
        &ModelProblem::chebyshev_modified(TABLE1_A, TABLE1_B)?,
        TABLE1_N,
    )
}

/// Model 2 at the published parameters.
pub fn table2_setup() -> Result<Discretized> {
    Discretized::new(
        &ModelProblem::partial_wave(TABLE2_ELL, TABLE2_LAMBDA)?,
        TABLE2_N,
    )
}

fn table1() -> Result<CheckOutcome> {
    let start = Instant::now();
    let d = table1_setup()?;
    let cols = [
        d.eigenvalues().to_vec(),
        d.heller()?,
        d.broad(ExtraKnots::SkipLast)?,
        d.jmatrix_interp(ExtraKnots::SkipLast)?,
        d.jmatrix_exact()?,
        d.oracle()?,
    ];
    let elapsed = start.elapsed();
    let names = [
        "eps",
        "heller",
        "broad",
        "jmatrix-interp",
        "jmatrix-exact",
        "exact",
    ];
    let mut cells = Cells::default();
    for (mu, row) in TABLE1.iter().enumerate() {
        for (c, col) in cols.iter().enumerate() {
            let tol = match c {
                1..=3 if mu >= 8 => TOL_TABLE1_INTERP_EDGE,
                1..=3 => TOL_TABLE1_INTERP,
                _ => TOL_TABLE1_CLOSED,
            };
            cells.compare(format!("mu={mu} {}", names[c]), col[mu], row[c], tol);
        }
    }
    // The all-knots variant is reported next to the gated edge rows.
    let broad_all = d.broad(ExtraKnots::All)?;
    let interp_all = d.jmatrix_interp(ExtraKnots::All)?;
    let edges = (8..10)
        .map(|mu| {
            format!(
                "mu={mu} broad {:.6}/{:.6} interp {:.6}/{:.6}",
                cols[2][mu], broad_all[mu], cols[3][mu], interp_all[mu]
            )
        })
        .collect::<Vec<_>>()
        .join(", ");
    let fast = elapsed < BUDGET_TABLE;
    Ok(CheckOutcome::new(
        "table1",
        cells.failures.is_empty() && fast,
        format!(
            "{}; worst |diff| {:.1e}; edge rows published-knots/all-knots: {edges}; {:.1} ms",
            cells.summary(),
            cells.worst,
            elapsed.as_secs_f64() * 1e3
        ),
    ))
}

/// Half a unit in the last printed place of `printed`.
fn printed_half_unit(printed: &str) -> f64 {
    let decimals = printed.split_once('.').map_or(0, |(_, frac)| frac.len());
    0.5 * 10f64.powi(-(decimals as i32))
}

fn table2() -> Result<CheckOutcome> {
    let start = Instant::now();
    let d = table2_setup()?;
    let cols = [
        d.eigenvalues().to_vec(),
        d.heller()?,
        d.jmatrix_exact()?,
        d.oracle()?,
    ];
    let elapsed = start.elapsed();
    let names = ["eps", "heller", "jmatrix-exact", "exact"];
    let mut cells = Cells::default();
    let mut within_printed = 0;
    for (mu, row) in TABLE2.iter().enumerate() {
        for (c, col) in cols.iter().enumerate() {
            let want: f64 = row[c].parse().expect("golden value parses");
            let tol = match c {
                0 => TOL_TABLE2_EIGEN,
                1 => TOL_TABLE2_HELLER,
                _ => TOL_TABLE2_CLOSED,
            };
            if (col[mu] - want).abs() <= printed_half_unit(row[c]).max(tol) {
                within_printed += 1;
            }
            cells.compare(format!("mu={mu} {}", names[c]), col[mu], want, tol);
        }
    }
    // The unit basis scale does not reproduce the printed spectrum.
    let unit = Discretized::new(&ModelProblem::partial_wave(TABLE2_ELL, 1.0)?, TABLE2_N)?;
    let unit_worst = unit
        .eigenvalues()
        .iter()
        .zip(TABLE2.iter())
        .map(|(e, row)| (e - row[0].parse::<f64>().expect("golden value parses")).abs())
        .fold(0.0, f64::max);
    let fast = elapsed < BUDGET_TABLE;
    Ok(CheckOutcome::new(
        "table2",
        cells.failures.is_empty() && fast,
        format!(
            "lambda={TABLE2_LAMBDA}; {}; {within_printed}/20 cells agree to the printed \
             resolution; lambda=1 eigenvalues off by up to {unit_worst:.2}; {:.1} ms",
            cells.summary(),
            elapsed.as_secs_f64() * 1e3
        ),
    ))
}

fn max_relative_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / y.abs())
        .fold(0.0, f64::max)
}

fn oracle_equivalence() -> Vec<CheckOutcome> {
    let cases: [(&str, Result<ModelProblem>); 2] = [
        (
            "oracle-equivalence model1 N=2..20",
            ModelProblem::chebyshev_modified(TABLE1_A, TABLE1_B),
        ),
        (
            "oracle-equivalence model2 N=2..20",
            ModelProblem::partial_wave(TABLE2_ELL, TABLE2_LAMBDA),
        ),
    ];
    cases
        .into_iter()
        .map(|(name, model)| {
            let run = || -> Result<CheckOutcome> {
                let model = model?;
                let start = Instant::now();
                let mut worst: f64 = 0.0;
                let mut worst_n = 0;
                for n in 2..=20 {
                    let d = Discretized::new(&model, n)?;
                    let gap = max_relative_gap(&d.jmatrix_exact()?, &d.oracle()?);
                    if gap.is_nan() || gap > worst {
                        worst = gap;
                        worst_n = n;
                    }
                }
                let elapsed = start.elapsed();
                Ok(CheckOutcome::new(
                    name,
                    worst <= TOL_ORACLE_REL && elapsed < BUDGET_ORACLE,
                    format!(
                        "max relative gap {worst:.2e} at N={worst_n}; {:.1} ms",
                        elapsed.as_secs_f64() * 1e3
                    ),
                ))
            };
            CheckOutcome::from_result(name, run())
        })
        .collect()
}

fn chebyshev_closed_form() -> Result<CheckOutcome> {
    let model = ModelProblem::pure_chebyshev();
    let mut worst: f64 = 0.0;
    for n in [3, 10, 25] {
        let d = Discretized::new(&model, n)?;
        let h = PI / (n as f64 + 1.0);
        let exact = d.jmatrix_exact()?;
        for (mu, (e, w)) in d.quadrature().into_iter().enumerate() {
            let theta = (mu as f64 + 1.0) * h;
            worst = worst
                .max((e + theta.cos()).abs())
                .max((w - h * theta.sin().powi(2)).abs())
                .max((exact[mu] - h * theta.sin()).abs());
        }
    }
    Ok(CheckOutcome::new(
        "chebyshev-closed-form",
        worst <= TOL_CHEBYSHEV,
        format!("N in {{3, 10, 25}}: eigenvalues, Gauss and closed-form weights, max |diff| {worst:.1e}"),
    ))
}

fn green_equivalence() -> Result<CheckOutcome> {
    let model = ModelProblem::chebyshev_modified(TABLE1_A, TABLE1_B)?;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in [2, 5, 10] {
        let d = Discretized::new(&model, n)?;
        for k in 0..99 {
            let e = -0.95 + 1.9 * (k as f64 + 0.5) / 99.0;
            let diff = (d.assemble_green00(e)? - model.green00_exact(e)?).norm();
            worst = worst.max(diff);
            count += 1;
        }
    }
    Ok(CheckOutcome::new(
        "green-equivalence",
        worst <= TOL_GREEN,
        format!("{count} energies, N in {{2, 5, 10}}, max |diff| {worst:.1e}"),
    ))
}

fn properties() -> Vec<CheckOutcome> {
    vec![
        CheckOutcome::from_result("properties interlacing", prop_interlacing()),
        CheckOutcome::from_result("properties zeta-integers", prop_zeta_integers()),
        CheckOutcome::from_result("properties zeta-monotone", prop_zeta_monotone()),
        CheckOutcome::from_result("properties fd-derivative", prop_fd_derivative()),
        CheckOutcome::from_result("properties casoratian", prop_casoratian()),
    ]
}

fn prop_interlacing() -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let mut case = 0;
    while case < 50 {
        let a = rng.gen_range(-1.5..1.5);
        let b = rng.gen_range(0.05..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let n = rng.gen_range(2..=40);
        // A bound state localized at site 0 is shared with the last-deleted
        // submatrix up to a gap far below rounding, so strict interlacing is
        // only decidable in double precision for chains without one.
        if !ModelProblem::bound_states(a, b).is_empty() {
            continue;
        }
        case += 1;
        let h = ModelProblem::chebyshev_modified(a, b)?.build_hamiltonian(n)?;
        let full = h.eigh()?;
        let hat = h.drop_first()?.eigh()?;
        let tilde = h.drop_last()?.eigh()?;
        if !(interlace_check(full.values(), hat.values())?
            && interlace_check(full.values(), tilde.values())?)
        {
            failures.push(format!("case {case}: A={a:.3} B={b:.3} N={n}"));
        }
    }
    Ok(CheckOutcome::new(
        "properties interlacing",
        failures.is_empty(),
        if failures.is_empty() {
            "50 random bound-state-free (A, B, N), first- and last-deleted submatrices".to_string()
        } else {
            failures.join("; ")
        },
    ))
}

fn prop_zeta_integers() -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for d in [table1_setup()?, table2_setup()?] {
        for (mu, &e) in d.eigenvalues().iter().enumerate() {
            // the eigenvalue itself and its immediate neighbours, where the
            // phase has to be unwrapped
            let delta = 1e-10 * e.abs().max(1.0);
            for probe in [e - delta, e, e + delta] {
                worst = worst.max((d.zeta_inverse(probe)? - mu as f64).abs());
            }
        }
    }
    Ok(CheckOutcome::new(
        "properties zeta-integers",
        worst <= TOL_ZETA_INTEGER,
        format!(
            "zeta^-1 at eps_mu and eps_mu +- 1e-10 on both models, max |diff| from mu {worst:.1e}"
        ),
    ))
}

fn prop_zeta_monotone() -> Result<CheckOutcome> {
    let mut detail = Vec::new();
    let mut passed = true;
    for d in [table1_setup()?, table2_setup()?] {
        let ev = d.eigenvalues();
        let (lo, hi) = (ev[0], ev[ev.len() - 1]);
        let xs = (1..=1000)
            .map(|i| d.zeta_inverse(lo + (hi - lo) * i as f64 / 1001.0))
            .collect::<Result<Vec<f64>>>()?;
        let min_step = xs
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        passed &= min_step > 0.0;
        detail.push(format!(
            "{} min step {min_step:.2e}",
            d.model().kind().name()
        ));
    }
    Ok(CheckOutcome::new(
        "properties zeta-monotone",
        passed,
        format!("1000-point grids: {}", detail.join(", ")),
    ))
}

fn prop_fd_derivative() -> Result<CheckOutcome> {
    let d = table1_setup()?;
    let fits = [
        RationalFit::fit(&d.jmatrix_knots(ExtraKnots::SkipLast)?)?,
        RationalFit::fit(&d.broad_knots(ExtraKnots::SkipLast)?)?,
        RationalFit::fit(&crate::rational_fit::KnotSet::new(
            d.eigenvalues()
                .iter()
                .enumerate()
                .map(|(mu, &e)| (mu as f64, e)),
        )?)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xFD);
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for fit in &fits {
        for _ in 0..100 {
            let x = rng.gen_range(0.0..(TABLE1_N - 1) as f64);
            let (_, slope) = fit.eval_deriv(x)?;
            let fd = (fit.eval(x + h)? - fit.eval(x - h)?) / (2.0 * h);
            worst = worst.max((slope - fd).abs() / slope.abs());
        }
    }
    Ok(CheckOutcome::new(
        "properties fd-derivative",
        worst <= TOL_FD_REL,
        format!("3 fits x 100 random abscissas, max relative gap {worst:.1e}"),
    ))
}

fn prop_casoratian() -> Result<CheckOutcome> {
    let model = ModelProblem::partial_wave(TABLE2_ELL, TABLE2_LAMBDA)?;
    let mut worst: f64 = 0.0;
    for e in [0.1, 0.69, 2.0, 7.5, 15.0] {
        let mut values = Vec::with_capacity(7);
        for n in 0..=6 {
            let w0 = model.wave_coefficients(n, e)?;
            let w1 = model.wave_coefficients(n + 1, e)?;
            values.push(model.reference_coupling(n) * (w0.s * w1.c - w1.s * w0.c));
        }
        for v in &values {
            worst = worst.max((v - values[0]).abs() / values[0].abs());
        }
    }
    Ok(CheckOutcome::new(
        "properties casoratian",
        worst <= TOL_CASORATIAN_REL,
        format!("n = 0..6 at 5 energies, max relative spread {worst:.1e}"),
    ))
}

fn accuracy_ordering() -> Result<CheckOutcome> {
    let d = table1_setup()?;
    let mu = TABLE1_N - 1;
    let exact = d.oracle()?[mu];
    let err = |w: Vec<f64>| (w[mu] - exact).abs();
    let heller = err(d.heller()?);
    let broad = err(d.broad(ExtraKnots::SkipLast)?);
    let interp = err(d.jmatrix_interp(ExtraKnots::SkipLast)?);
    let closed = err(d.jmatrix_exact()?);
    Ok(CheckOutcome::new(
        "accuracy-ordering",
        heller > broad && broad > interp && interp > closed,
        format!(
            "mu={mu}: |heller-exact| {heller:.2e} > |broad-exact| {broad:.2e} > \
             |interp-exact| {interp:.2e} > |closed-exact| {closed:.2e}"
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_resolution() {
        assert_eq!(printed_half_unit("12.7171500"), 5e-8);
        assert_eq!(printed_half_unit("0.69089884"), 5e-9);
        assert_eq!(printed_half_unit("3"), 0.5);
    }

    #[test]
    fn unknown_check() {
        assert!(run_check("table3").is_none());
    }

    #[test]
    fn table1_has_sixty_cells() {
        let out = run_check("table1").unwrap();
        assert!(out[0].detail.contains("/60 cells"), "{}", out[0].detail);
    }
}
