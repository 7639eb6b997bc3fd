//! Brute-force convex-roof minimization.
//!
//! Every `N`-member decomposition of a rank-`r` state is `K = conj(V) B`,
//! with `V` an `N x r` isometry and `B` the rows `sqrt(lambda_i) e_i^T` of the
//! eigen-support. The search acts on the rows of `K` by `2 x 2` unitary
//! rotations, which keeps `K^dagger K` fixed and therefore stays on the set of
//! decompositions of the input state.
//!
//! Restart `k` is seeded with `splitmix64(seed ^ k * 0x9E3779B97F4A7C15)`, so
//! results do not depend on how restarts are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::entanglement::weighted_entanglement;
use crate::error::{Error, Result};
use crate::numlin::{c, isometry_error, random_isometry, BipartiteDims, CMatrix, CVector, C64, EIGEN_FLOOR};
use crate::states::{BipartiteDensity, WeightedEnsemble};

/// Largest rank accepted without `allow_large`.
pub const MAX_RANK: usize = 6;
/// Largest total dimension `dA * dB` accepted without `allow_large`.
pub const MAX_TOTAL_DIM: usize = 16;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const SAMPLE_SALT: u64 = 0xD1B5_4A32_D192_ED03;
const INITIAL_STEP: f64 = 0.5;
const MAX_STEP: f64 = std::f64::consts::PI;
const IMPROVE_EPS: f64 = 1e-15;

/// How restarts are scheduled. Results are identical either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    /// Uses rayon when the `parallel` feature is enabled, serial otherwise.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Serial
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    /// Ensemble size `N`; `None` means `min(r^2, r + 4)`.
    pub ensemble_size: Option<usize>,
    pub restarts: usize,
    /// Maximum number of sweeps per restart.
    pub max_iters: usize,
    /// Restarts stop once the rotation step falls below this.
    pub step_tol: f64,
    /// Slack allowed below a claimed value in [`certify_not_below`].
    pub value_tolerance: f64,
    pub seed: u64,
    /// Random decompositions evaluated by [`certify_not_below`] besides the search.
    pub samples: usize,
    /// Lifts the rank and dimension guard.
    pub allow_large: bool,
    pub execution: Execution,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            ensemble_size: None,
            restarts: 50,
            max_iters: 10_000,
            step_tol: 1e-7,
            value_tolerance: 1e-6,
            seed: 0,
            samples: 256,
            allow_large: false,
            execution: Execution::default(),
        }
    }
}

impl OracleConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_ensemble_size(mut self, n: usize) -> Self {
        self.ensemble_size = Some(n);
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.value_tolerance = tol;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Parameter("restarts must be >= 1".into()));
        }
        if !(self.step_tol > 0.0) {
            return Err(Error::Parameter(format!("step tolerance {} must be > 0", self.step_tol)));
        }
        if !(self.value_tolerance >= 0.0) {
            return Err(Error::Parameter(format!("value tolerance {} must be >= 0", self.value_tolerance)));
        }
        Ok(())
    }
}

/// Best decomposition found by [`eof_bruteforce`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Upper bound on the EOF, in ebits.
    pub min_value: f64,
    pub argmin: WeightedEnsemble,
    pub per_restart_values: Vec<f64>,
    /// Fraction of restarts that stopped on the step tolerance rather than `max_iters`.
    pub converged_fraction: f64,
    pub best_restart: usize,
    pub ensemble_size: usize,
    pub rank: usize,
    /// Objective evaluations across all restarts.
    pub evaluations: u64,
}

/// Outcome of a one-sided check of a claimed EOF.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub claim: f64,
    pub min_found: f64,
    /// `min_found - claim`; negative values mean the oracle beat the claim.
    pub gap: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub restarts: usize,
    pub samples: usize,
    pub ensemble_size: usize,
    pub evaluations: u64,
}

/// Trajectory of a single local search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    /// Final kets as rows (`N x dA dB`).
    pub kets: CMatrix,
    pub value: f64,
    /// Objective after each sweep, starting with the initial value.
    pub trajectory: Vec<f64>,
    pub converged: bool,
    pub evaluations: u64,
}

/// splitmix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of restart `k`.
pub fn restart_seed(seed: u64, k: u64) -> u64 {
    splitmix64(seed ^ k.wrapping_mul(GOLDEN))
}

/// Eigen-support rows `sqrt(lambda_i) e_i^T` for eigenvalues above the floor.
struct Support {
    dims: BipartiteDims,
    rows: CMatrix,
}

impl Support {
    fn new(values: &[f64], vectors: &CMatrix, dims: BipartiteDims) -> Result<Self> {
        if vectors.nrows() != dims.total() || values.len() != vectors.ncols() {
            return Err(Error::Shape("eigen-data does not match the state dims".into()));
        }
        let keep: Vec<usize> = (0..values.len()).filter(|&i| values[i] > EIGEN_FLOOR).collect();
        if keep.is_empty() {
            return Err(Error::Parameter("state has no eigenvalue above the floor".into()));
        }
        let rows = CMatrix::from_fn(keep.len(), dims.total(), |i, x| vectors[(x, keep[i])] * values[keep[i]].sqrt());
        Ok(Self { dims, rows })
    }

    fn of(rho: &BipartiteDensity) -> Result<Self> {
        let (values, vectors) = rho.eig();
        Self::new(&values, &vectors, rho.dims())
    }

    fn rank(&self) -> usize {
        self.rows.nrows()
    }

    fn kets(&self, v: &CMatrix) -> CMatrix {
        v.map(|z| z.conj()) * &self.rows
    }
}

fn check_isometry(v: &CMatrix, r: usize) -> Result<()> {
    if v.ncols() != r || v.nrows() < r {
        return Err(Error::Shape(format!("isometry is {} x {}, expected N x {r} with N >= {r}", v.nrows(), v.ncols())));
    }
    let err = isometry_error(v);
    if err > 1e-10 {
        return Err(Error::Parameter(format!("V is not an isometry: ||V^dagger V - I|| = {err:e}")));
    }
    Ok(())
}

fn ensemble_from_rows(kets: &CMatrix, dims: BipartiteDims) -> Result<WeightedEnsemble> {
    let vectors = (0..kets.nrows()).map(|j| kets.row(j).transpose()).collect::<Vec<CVector>>();
    WeightedEnsemble::from_unnormalized(vectors, dims, 0.0)
}

/// Decomposition with unnormalized kets `sum_i conj(V_ji) sqrt(lambda_i) |e_i>`.
///
/// `values`/`vectors` are the eigen-data of the state; only eigenvalues above
/// `1e-12` are used, and `V` must have that many columns.
pub fn decomposition_from_isometry(
    values: &[f64],
    vectors: &CMatrix,
    v: &CMatrix,
    dims: BipartiteDims,
) -> Result<WeightedEnsemble> {
    let support = Support::new(values, vectors, dims)?;
    check_isometry(v, support.rank())?;
    ensemble_from_rows(&support.kets(v), dims)
}

fn resolve_size(cfg: &OracleConfig, r: usize) -> Result<usize> {
    let n = cfg.ensemble_size.unwrap_or((r * r).min(r + 4));
    if n < r {
        return Err(Error::Parameter(format!("ensemble size {n} is below the rank {r}")));
    }
    Ok(n)
}

fn random_rows(support: &Support, n: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    support.kets(&random_isometry(n, support.rank(), &mut rng))
}

/// Decomposition from a seeded Haar-random `N x r` isometry.
pub fn random_decomposition(rho: &BipartiteDensity, n: usize, seed: u64) -> Result<WeightedEnsemble> {
    let support = Support::of(rho)?;
    if n < support.rank() {
        return Err(Error::Parameter(format!("ensemble size {n} is below the rank {}", support.rank())));
    }
    ensemble_from_rows(&random_rows(&support, n, seed), rho.dims())
}

fn objective(kets: &CMatrix, dims: BipartiteDims) -> f64 {
    let d = dims.total();
    let mut row = vec![C64::default(); d];
    (0..kets.nrows())
        .map(|j| {
            for (x, z) in row.iter_mut().enumerate() {
                *z = kets[(j, x)];
            }
            weighted_entanglement(&row, dims)
        })
        .sum()
}

/// Derivative-free descent over rotations of ket pairs.
///
/// Each sweep tries, for every pair `(j, k)`, a real rotation and a rotation
/// generated by `i sigma_x`, in both signs, growing the angle while it keeps
/// improving. The step halves after a sweep without progress. The objective
/// never increases.
pub fn local_search(kets: &CMatrix, dims: BipartiteDims, max_iters: usize, step_tol: f64) -> SearchOutcome {
    let n = kets.nrows();
    let d = dims.total();
    assert_eq!(kets.ncols(), d, "ket rows must have length dA * dB");
    // Row-major copy so each ket is contiguous.
    let mut rows: Vec<C64> = (0..n).flat_map(|j| (0..d).map(move |x| (j, x))).map(|(j, x)| kets[(j, x)]).collect();
    let mut vals: Vec<f64> = rows.chunks(d).map(|r| weighted_entanglement(r, dims)).collect();
    let mut value: f64 = vals.iter().sum();
    let mut trajectory = vec![value];
    let mut evaluations = n as u64;
    let (mut a, mut b) = (vec![C64::default(); d], vec![C64::default(); d]);
    let mut step = INITIAL_STEP;
    let mut sweeps = 0;

    let rotate = |rows: &[C64], j: usize, k: usize, angle: f64, imag: bool, a: &mut [C64], b: &mut [C64]| {
        let (cs, sn) = (angle.cos(), angle.sin());
        let (off_a, off_b) = if imag { (c(0.0, -sn), c(0.0, -sn)) } else { (c(-sn, 0.0), c(sn, 0.0)) };
        for x in 0..d {
            let (u, v) = (rows[j * d + x], rows[k * d + x]);
            a[x] = u * cs + v * off_a;
            b[x] = u * off_b + v * cs;
        }
    };

    while step >= step_tol && sweeps < max_iters {
        sweeps += 1;
        let mut improved = false;
        for j in 0..n {
            for k in j + 1..n {
                for imag in [false, true] {
                    for sign in [1.0, -1.0] {
                        let mut angle = sign * step;
                        let mut moved = false;
                        loop {
                            rotate(&rows, j, k, angle, imag, &mut a, &mut b);
                            let (ea, eb) = (weighted_entanglement(&a, dims), weighted_entanglement(&b, dims));
                            evaluations += 2;
                            let candidate = value - vals[j] - vals[k] + ea + eb;
                            if candidate < value - IMPROVE_EPS {
                                rows[j * d..(j + 1) * d].copy_from_slice(&a);
                                rows[k * d..(k + 1) * d].copy_from_slice(&b);
                                vals[j] = ea;
                                vals[k] = eb;
                                value = candidate;
                                moved = true;
                                if angle.abs() * 2.0 > MAX_STEP {
                                    break;
                                }
                                angle *= 2.0;
                            } else {
                                break;
                            }
                        }
                        if moved {
                            improved = true;
                            break;
                        }
                    }
                }
            }
        }
        // Resum to keep the running value from drifting.
        let fresh: f64 = vals.iter().sum();
        value = fresh.min(value);
        trajectory.push(value);
        if !improved {
            step *= 0.5;
        }
    }
    let kets = CMatrix::from_fn(n, d, |j, x| rows[j * d + x]);
    SearchOutcome { value, trajectory, converged: step < step_tol, evaluations, kets }
}

struct Restart {
    value: f64,
    kets: CMatrix,
    converged: bool,
    evaluations: u64,
}

fn run_restart(support: &Support, n: usize, cfg: &OracleConfig, k: usize) -> Restart {
    let start = random_rows(support, n, restart_seed(cfg.seed, k as u64));
    let out = local_search(&start, support.dims, cfg.max_iters, cfg.step_tol);
    Restart {
        value: objective(&out.kets, support.dims),
        kets: out.kets,
        converged: out.converged,
        evaluations: out.evaluations,
    }
}

fn run_all<T: Send>(count: usize, execution: Execution, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
        _ => (0..count).map(f).collect(),
    }
}

fn check_scale(rho: &BipartiteDensity, r: usize, cfg: &OracleConfig) -> Result<()> {
    if cfg.allow_large {
        return Ok(());
    }
    let total = rho.dims().total();
    if r > MAX_RANK || total > MAX_TOTAL_DIM {
        return Err(Error::Scale(format!(
            "rank {r} and dA*dB = {total} exceed the limits {MAX_RANK} and {MAX_TOTAL_DIM}"
        )));
    }
    Ok(())
}

/// Multi-restart minimization of the average entanglement over decompositions.
/// `min_value` is an upper bound on the EOF.
pub fn eof_bruteforce(rho: &BipartiteDensity, cfg: &OracleConfig) -> Result<OracleResult> {
    cfg.validate()?;
    let support = Support::of(rho)?;
    let r = support.rank();
    check_scale(rho, r, cfg)?;
    let n = resolve_size(cfg, r)?;
    let runs = run_all(cfg.restarts, cfg.execution, |k| run_restart(&support, n, cfg, k));

    // Strict comparison keeps the lowest index on ties.
    let mut best = 0;
    for (k, run) in runs.iter().enumerate() {
        if run.value < runs[best].value {
            best = k;
        }
    }
    let argmin = ensemble_from_rows(&runs[best].kets, rho.dims())?;
    let converged = runs.iter().filter(|r| r.converged).count();
    Ok(OracleResult {
        min_value: runs[best].value,
        argmin,
        per_restart_values: runs.iter().map(|r| r.value).collect(),
        converged_fraction: converged as f64 / runs.len() as f64,
        best_restart: best,
        ensemble_size: n,
        rank: r,
        evaluations: runs.iter().map(|r| r.evaluations).sum(),
    })
}

/// Runs [`eof_bruteforce`] and `cfg.samples` random decompositions; passes
/// when nothing found lies below `claim - cfg.value_tolerance`.
pub fn certify_not_below(rho: &BipartiteDensity, claim: f64, cfg: &OracleConfig) -> Result<CertificationReport> {
    let result = eof_bruteforce(rho, cfg)?;
    let support = Support::of(rho)?;
    let sampled = run_all(cfg.samples, cfg.execution, |i| {
        objective(
            &random_rows(&support, result.ensemble_size, restart_seed(cfg.seed ^ SAMPLE_SALT, i as u64)),
            rho.dims(),
        )
    });
    let min_found = sampled.into_iter().fold(result.min_value, f64::min);
    Ok(CertificationReport {
        claim,
        min_found,
        gap: min_found - claim,
        tolerance: cfg.value_tolerance,
        passed: min_found >= claim - cfg.value_tolerance,
        restarts: cfg.restarts,
        samples: cfg.samples,
        ensemble_size: result.ensemble_size,
        evaluations: result.evaluations + (cfg.samples * result.ensemble_size) as u64,
    })
}
