//! State families, channels and ensemble/density conversion.

use std::f64::consts::FRAC_PI_2;

use crate::entanglement;
use crate::error::{Error, Result};
use crate::numlin::{
    self, basis, c, eigvalsh, hermitian_part, hermiticity_error, kron, outer, trace, BipartiteDims, CMatrix, CVector,
    Subsystem, C64, HERMITIAN_TOL,
};

const NORM_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-10;
/// Slack allowed on closed parameter ranges.
const RANGE_SLACK: f64 = 1e-12;

/// Unit vector on a bipartite space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureKet {
    vector: CVector,
    dims: BipartiteDims,
}

impl PureKet {
    pub fn new(vector: CVector, dims: BipartiteDims) -> Result<Self> {
        if vector.len() != dims.total() {
            return Err(Error::Shape(format!("ket of length {} on dims ({}, {})", vector.len(), dims.a(), dims.b())));
        }
        let norm = vector.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization(format!("ket norm is {norm}, expected 1")));
        }
        Ok(Self { vector, dims })
    }

    /// Normalizes `vector` first; fails on the zero vector.
    pub fn normalized(vector: CVector, dims: BipartiteDims) -> Result<Self> {
        let norm = vector.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Normalization("cannot normalize a zero vector".into()));
        }
        Self::new(vector / c(norm, 0.0), dims)
    }

    /// Product ket `|a> (x) |b>` with `a` on side A and `b` on side B.
    pub fn product(a: &CVector, b: &CVector) -> Result<Self> {
        let dims = BipartiteDims::new(a.len(), b.len())?;
        Self::normalized(numlin::kron_vec(a, b), dims)
    }

    pub fn vector(&self) -> &CVector {
        &self.vector
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn schmidt_coefficients(&self) -> Vec<f64> {
        numlin::schmidt_coefficients(&self.vector, self.dims).expect("validated ket")
    }

    pub fn entanglement(&self) -> f64 {
        entanglement::pure_entanglement(self)
    }

    pub fn projector(&self) -> CMatrix {
        outer(&self.vector)
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &PureKet) -> f64 {
        self.vector.dotc(&other.vector).norm_sqr()
    }
}

/// Density matrix with a bipartite factorization of its index space.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteDensity {
    matrix: CMatrix,
    dims: BipartiteDims,
}

impl BipartiteDensity {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: CMatrix, dims: BipartiteDims) -> Result<Self> {
        let n = dims.total();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::Shape(format!(
                "density must be {n}x{n} for dims ({}, {}), got {}x{}",
                dims.a(),
                dims.b(),
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = hermiticity_error(&matrix);
        if herm > HERMITIAN_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let matrix = hermitian_part(&matrix);
        let tr = trace(&matrix).re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::Normalization(format!("density trace is {tr}, expected 1")));
        }
        let min_eig = eigvalsh(&matrix).last().copied().unwrap_or(0.0);
        if min_eig < -PSD_TOL {
            return Err(Error::NotPsd(min_eig));
        }
        Ok(Self { matrix, dims })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    /// Eigenvalues (descending) and eigenvectors.
    pub fn eig(&self) -> (Vec<f64>, CMatrix) {
        numlin::eigh(&self.matrix)
    }

    /// Number of eigenvalues above the probability floor.
    pub fn rank(&self) -> usize {
        eigvalsh(&self.matrix).into_iter().filter(|&l| l > numlin::EIGEN_FLOOR).count()
    }

    pub fn partial_trace(&self, keep: Subsystem) -> CMatrix {
        numlin::partial_trace(&self.matrix, self.dims, keep).expect("dims checked on construction")
    }

    pub fn partial_transpose(&self, side: Subsystem) -> CMatrix {
        numlin::partial_transpose(&self.matrix, self.dims, side).expect("dims checked on construction")
    }

    /// `<k| rho |k>`.
    pub fn expectation(&self, k: &CVector) -> f64 {
        k.dotc(&(&self.matrix * k)).re
    }

    /// Largest modulus among entries outside the `|ii><jj|` pattern.
    /// Infinite when `dA != dB`.
    pub fn mc_pattern_error(&self) -> f64 {
        mc_pattern_error(&self.matrix, self.dims)
    }

    pub fn distance(&self, other: &BipartiteDensity) -> Result<f64> {
        numlin::frob_dist(&self.matrix, &other.matrix)
    }
}

pub(crate) fn mc_pattern_error(m: &CMatrix, dims: BipartiteDims) -> f64 {
    if dims.a() != dims.b() {
        return f64::INFINITY;
    }
    let d = dims.a();
    let mut worst = 0.0f64;
    for r in 0..m.nrows() {
        for col in 0..m.ncols() {
            let on_pattern = r / d == r % d && col / d == col % d;
            if !on_pattern {
                worst = worst.max(m[(r, col)].norm());
            }
        }
    }
    worst
}

/// Finite list of `(weight, ket)` pairs realizing a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedEnsemble {
    members: Vec<(f64, PureKet)>,
}

impl WeightedEnsemble {
    pub fn new(members: Vec<(f64, PureKet)>) -> Result<Self> {
        let Some((_, first)) = members.first() else {
            return Err(Error::Parameter("ensemble has no members".into()));
        };
        let dims = first.dims();
        if let Some((w, _)) = members.iter().find(|(w, _)| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::Parameter(format!("ensemble weight {w} is not a probability")));
        }
        if members.iter().any(|(_, k)| k.dims() != dims) {
            return Err(Error::Shape("ensemble kets do not share dims".into()));
        }
        let total: f64 = members.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > TRACE_TOL {
            return Err(Error::Normalization(format!("ensemble weights sum to {total}")));
        }
        Ok(Self { members })
    }

    /// Builds an ensemble from unnormalized kets: weights are squared norms.
    /// Kets with squared norm at or below `drop_below` are discarded.
    pub fn from_unnormalized(kets: Vec<CVector>, dims: BipartiteDims, drop_below: f64) -> Result<Self> {
        let mut members = Vec::with_capacity(kets.len());
        for k in kets {
            let w = k.norm_squared();
            if w > drop_below {
                members.push((w, PureKet::normalized(k, dims)?));
            }
        }
        Self::new(members)
    }

    pub fn members(&self) -> &[(f64, PureKet)] {
        &self.members
    }

    pub fn weights(&self) -> Vec<f64> {
        self.members.iter().map(|(w, _)| *w).collect()
    }

    pub fn kets(&self) -> impl Iterator<Item = &PureKet> {
        self.members.iter().map(|(_, k)| k)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn dims(&self) -> BipartiteDims {
        self.members[0].1.dims()
    }

    /// Unvalidated `sum_i w_i |k_i><k_i|`.
    pub fn mixed_matrix(&self) -> CMatrix {
        let n = self.dims().total();
        let mut m = CMatrix::zeros(n, n);
        for (w, k) in &self.members {
            m += k.projector() * c(*w, 0.0);
        }
        m
    }

    /// `sum_i w_i E(k_i)`.
    pub fn average_entanglement(&self) -> f64 {
        self.members.iter().map(|(w, k)| w * k.entanglement()).sum()
    }
}

/// `sum_i w_i |k_i><k_i|` as a validated density.
pub fn ensemble_mix(e: &WeightedEnsemble) -> Result<BipartiteDensity> {
    BipartiteDensity::new(e.mixed_matrix(), e.dims())
}

fn check_unit(name: &str, x: f64) -> Result<f64> {
    if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&x) || x.is_nan() {
        return Err(Error::Parameter(format!("{name} = {x} is outside [0, 1]")));
    }
    Ok(x.clamp(0.0, 1.0))
}

fn check_angle(name: &str, t: f64) -> Result<f64> {
    if !(-RANGE_SLACK..=FRAC_PI_2 + RANGE_SLACK).contains(&t) || t.is_nan() {
        return Err(Error::Parameter(format!("{name} = {t} is outside [0, pi/2]")));
    }
    Ok(t.clamp(0.0, FRAC_PI_2))
}

/// `cos t |00> + sin t |11>`.
pub fn mc_ket(theta: f64) -> CVector {
    let mut v = CVector::zeros(4);
    v[0] = c(theta.cos(), 0.0);
    v[3] = c(theta.sin(), 0.0);
    v
}

fn qubits() -> BipartiteDims {
    BipartiteDims::square(2).expect("2x2")
}

/// `p |psi_t><psi_t| + (1-p) |psi_{pi/2-t}><psi_{pi/2-t}|`.
pub fn mc_two_qubit(p: f64, theta: f64) -> Result<BipartiteDensity> {
    let p = check_unit("p", p)?;
    let theta = check_angle("theta", theta)?;
    let m = outer(&mc_ket(theta)) * c(p, 0.0) + outer(&mc_ket(FRAC_PI_2 - theta)) * c(1.0 - p, 0.0);
    BipartiteDensity::new(m, qubits())
}

/// Mixing angle of the sigma family from the principal arctan branch.
pub fn sigma_theta(p: f64, x: f64) -> Result<f64> {
    if p <= 0.0 || p >= 1.0 || x == 0.0 {
        return Err(Error::Degenerate(format!("tan(theta) has zero denominator 2x*sqrt(p - p^2) at p = {p}, x = {x}")));
    }
    let radicand = (1.0 + 4.0 * (1.0 - p).powi(2) * (x.powi(4) - x * x)).max(0.0);
    let num = -1.0 + 2.0 * (1.0 - p) * x * x - radicand.sqrt();
    let den = 2.0 * x * (p - p * p).sqrt();
    Ok((num / den).atan())
}

/// The two normalized sigma-family kets and the mixing angle.
pub(crate) fn sigma_kets(p: f64, x: f64, y: f64, z: f64) -> Result<(PureKet, PureKet, f64)> {
    let p = check_unit("p", p)?;
    for (name, v) in [("x", x), ("y", y), ("z", z)] {
        check_unit(name, v)?;
    }
    let norm2 = x * x + y * y + z * z;
    if (norm2 - 1.0).abs() > NORM_TOL {
        return Err(Error::Parameter(format!("x^2 + y^2 + z^2 = {norm2}, expected 1")));
    }
    let theta = sigma_theta(p, x)?;
    let e00 = basis(4, 0);
    let chi = CVector::from_vec(vec![c(x, 0.0), c(y, 0.0), c(0.0, 0.0), c(z, 0.0)]);
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    let alpha = &e00 * c(sp * theta.cos(), 0.0) + &chi * c(sq * theta.sin(), 0.0);
    let beta = &e00 * c(sp * theta.sin(), 0.0) - &chi * c(sq * theta.cos(), 0.0);
    Ok((PureKet::normalized(alpha, qubits())?, PureKet::normalized(beta, qubits())?, theta))
}

/// `q |alpha><alpha| + (1-q) |beta><beta|` over the normalized sigma-family
/// kets, together with the mixing angle.
pub fn sigma_family_state(q: f64, p: f64, x: f64, y: f64, z: f64) -> Result<(BipartiteDensity, f64)> {
    let q = check_unit("q", q)?;
    let (alpha, beta, theta) = sigma_kets(p, x, y, z)?;
    let m = alpha.projector() * c(q, 0.0) + beta.projector() * c(1.0 - q, 0.0);
    Ok((BipartiteDensity::new(m, qubits())?, theta))
}

/// Kets of the rank-2 maximally correlated family: `psi = sum_i c_i |ii>`,
/// `phi` its renormalized restriction to indices `< f`, and `cos(theta)`.
#[derive(Debug, Clone)]
pub struct Lemma3Kets {
    pub psi: CVector,
    pub phi: CVector,
    pub cos_theta: f64,
    pub dims: BipartiteDims,
}

impl Lemma3Kets {
    pub fn theta(&self) -> f64 {
        self.cos_theta.clamp(0.0, 1.0).acos()
    }
}

pub(crate) fn validate_lemma3(p: f64, coeffs: &[f64], f: usize) -> Result<f64> {
    let p = check_unit("p", p)?;
    let d = coeffs.len();
    if d < 2 {
        return Err(Error::Parameter(format!("need at least two coefficients, got {d}")));
    }
    if let Some(bad) = coeffs.iter().find(|&&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::Parameter(format!("coefficient {bad} is not strictly positive")));
    }
    let norm2: f64 = coeffs.iter().map(|x| x * x).sum();
    if (norm2 - 1.0).abs() > NORM_TOL {
        return Err(Error::Parameter(format!("sum of squared coefficients is {norm2}, expected 1")));
    }
    if f == 0 || f >= d {
        return Err(Error::Parameter(format!("cut f = {f} must satisfy 1 <= f < d = {d}")));
    }
    Ok(p)
}

pub fn lemma3_kets(coeffs: &[f64], f: usize) -> Result<Lemma3Kets> {
    validate_lemma3(0.5, coeffs, f)?;
    let d = coeffs.len();
    let dims = BipartiteDims::square(d)?;
    let cos_theta = coeffs[..f].iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut psi = CVector::zeros(d * d);
    let mut phi = CVector::zeros(d * d);
    for (i, &ci) in coeffs.iter().enumerate() {
        psi[dims.index(i, i)] = c(ci, 0.0);
        if i < f {
            phi[dims.index(i, i)] = c(ci / cos_theta, 0.0);
        }
    }
    Ok(Lemma3Kets { psi, phi, cos_theta, dims })
}

/// `p |psi><psi| + (1-p) |phi><phi|` for the rank-2 maximally correlated family.
pub fn lemma3_mc(p: f64, coeffs: &[f64], f: usize) -> Result<BipartiteDensity> {
    let p = validate_lemma3(p, coeffs, f)?;
    let k = lemma3_kets(coeffs, f)?;
    let m = outer(&k.psi) * c(p, 0.0) + outer(&k.phi) * c(1.0 - p, 0.0);
    BipartiteDensity::new(m, k.dims)
}

/// `(1/sqrt d) sum_i |ii>`.
pub fn max_entangled(d: usize) -> Result<PureKet> {
    if d < 2 {
        return Err(Error::Parameter(format!("maximally entangled ket needs d >= 2, got {d}")));
    }
    let dims = BipartiteDims::square(d)?;
    let amp = c(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = CVector::zeros(d * d);
    for i in 0..d {
        v[dims.index(i, i)] = amp;
    }
    PureKet::new(v, dims)
}

/// Isotropic state with fidelity `F` to the maximally entangled ket.
pub fn isotropic(d: usize, fidelity: f64) -> Result<BipartiteDensity> {
    let plus = max_entangled(d)?;
    let f = check_unit("F", fidelity)?;
    let n = (d * d) as f64;
    let m = CMatrix::identity(d * d, d * d) * c((1.0 - f) / (n - 1.0), 0.0)
        + plus.projector() * c((f * n - 1.0) / (n - 1.0), 0.0);
    BipartiteDensity::new(m, plus.dims())
}

/// `sum_ij |ij><ji|` on `d x d`.
pub fn swap_operator(d: usize) -> CMatrix {
    let n = d * d;
    let mut s = CMatrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            s[(i * d + j, j * d + i)] = c(1.0, 0.0);
        }
    }
    s
}

/// Werner state with swap expectation `F`.
pub fn werner(d: usize, fidelity: f64) -> Result<BipartiteDensity> {
    if d < 2 {
        return Err(Error::Parameter(format!("Werner state needs d >= 2, got {d}")));
    }
    if !(-1.0 - RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&fidelity) || fidelity.is_nan() {
        return Err(Error::Parameter(format!("F = {fidelity} is outside [-1, 1]")));
    }
    let f = fidelity.clamp(-1.0, 1.0);
    let df = d as f64;
    let norm = df.powi(3) - df;
    let m =
        CMatrix::identity(d * d, d * d) * c((df - f) / norm, 0.0) + swap_operator(d) * c((df * f - 1.0) / norm, 0.0);
    BipartiteDensity::new(m, BipartiteDims::square(d)?)
}

/// `Tr(rho SWAP)` for a `d x d` state.
pub fn swap_expectation(rho: &BipartiteDensity) -> Result<f64> {
    let dims = rho.dims();
    if dims.a() != dims.b() {
        return Err(Error::Shape("swap expectation needs dA = dB".into()));
    }
    Ok(trace(&(rho.matrix() * swap_operator(dims.a()))).re)
}

/// Projects onto the isotropic family: returns `isotropic(d, <psi+|rho|psi+>)`.
pub fn isotropic_twirl(rho: &BipartiteDensity) -> Result<BipartiteDensity> {
    let dims = rho.dims();
    if dims.a() != dims.b() {
        return Err(Error::Shape(format!("isotropic twirl needs dA = dB, got ({}, {})", dims.a(), dims.b())));
    }
    let plus = max_entangled(dims.a())?;
    let f = rho.expectation(plus.vector()).clamp(0.0, 1.0);
    isotropic(dims.a(), f)
}

/// `d x 2` isometry sending `|0> -> |i>` and `|1> -> |j>`.
pub fn level_embedding(d: usize, i: usize, j: usize) -> CMatrix {
    let mut v = CMatrix::zeros(d, 2);
    v[(i, 0)] = c(1.0, 0.0);
    v[(j, 1)] = c(1.0, 0.0);
    v
}

/// `Lambda(rho) = 2/(d^2-d) sum_{i>j} (v_ij (x) v_ij) rho (v_ij (x) v_ij)^dagger`
/// with `v_ij` the level embedding onto `{|i>, |j>}`.
pub fn werner_mixing_channel(rho: &BipartiteDensity, d: usize) -> Result<BipartiteDensity> {
    if rho.dims() != qubits() {
        return Err(Error::Shape(format!(
            "mixing channel takes a 2x2 state, got ({}, {})",
            rho.dims().a(),
            rho.dims().b()
        )));
    }
    if d < 3 {
        return Err(Error::Parameter(format!("mixing channel needs d >= 3, got {d}")));
    }
    let n = d * d;
    let mut out = CMatrix::zeros(n, n);
    for i in 0..d {
        for j in 0..i {
            let v = level_embedding(d, i, j);
            let k = kron(&v, &v);
            out += &k * rho.matrix() * k.adjoint();
        }
    }
    out *= c(2.0 / (n - d) as f64, 0.0);
    BipartiteDensity::new(out, BipartiteDims::square(d)?)
}

/// Parameters naming one of the supported state families.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilyParams {
    /// Rank-2 two-qubit maximally correlated state.
    McTwoQubit {
        p: f64,
        theta: f64,
    },
    /// Two-qubit family with one product ket and one general ket in its support.
    Sigma {
        q: f64,
        p: f64,
        x: f64,
        y: f64,
        z: f64,
    },
    /// Rank-2 maximally correlated `d x d` state.
    Lemma3Mc {
        p: f64,
        coeffs: Vec<f64>,
        f: usize,
    },
    /// Isotropic state in the range where its twirled OD exists.
    Isotropic {
        d: usize,
        fidelity: f64,
        m: u64,
    },
    Werner {
        d: usize,
        fidelity: f64,
    },
    /// Separable tags `|00>` and `|++>` on `d x d` (uniform mixture).
    SeparableTags {
        d: usize,
    },
}

impl FamilyParams {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyParams::McTwoQubit { .. } => "mc2",
            FamilyParams::Sigma { .. } => "sigma",
            FamilyParams::Lemma3Mc { .. } => "lemma3",
            FamilyParams::Isotropic { .. } => "isotropic",
            FamilyParams::Werner { .. } => "werner",
            FamilyParams::SeparableTags { .. } => "sep-tags",
        }
    }

    /// Checks every per-variant range constraint.
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilyParams::McTwoQubit { p, theta } => {
                check_unit("p", *p)?;
                check_angle("theta", *theta)?;
            }
            FamilyParams::Sigma { q, p, x, y, z } => {
                check_unit("q", *q)?;
                sigma_kets(*p, *x, *y, *z)?;
            }
            FamilyParams::Lemma3Mc { p, coeffs, f } => {
                validate_lemma3(*p, coeffs, *f)?;
            }
            FamilyParams::Isotropic { d, fidelity, m } => {
                crate::odfam::check_isotropic_od_range(*d, *fidelity)?;
                if *m < 2 {
                    return Err(Error::Parameter(format!("m = {m} must be > 1")));
                }
            }
            FamilyParams::Werner { d, fidelity } => {
                werner(*d, *fidelity)?;
            }
            FamilyParams::SeparableTags { d } => {
                if *d < 2 {
                    return Err(Error::Parameter(format!("tag dimension must be >= 2, got {d}")));
                }
            }
        }
        Ok(())
    }

    /// The named state.
    pub fn state(&self) -> Result<BipartiteDensity> {
        self.validate()?;
        match self {
            FamilyParams::McTwoQubit { p, theta } => mc_two_qubit(*p, *theta),
            FamilyParams::Sigma { q, p, x, y, z } => sigma_family_state(*q, *p, *x, *y, *z).map(|(s, _)| s),
            FamilyParams::Lemma3Mc { p, coeffs, f } => lemma3_mc(*p, coeffs, *f),
            FamilyParams::Isotropic { d, fidelity, .. } => isotropic(*d, *fidelity),
            FamilyParams::Werner { d, fidelity } => werner(*d, *fidelity),
            FamilyParams::SeparableTags { d } => {
                let tags = separable_tags(*d)?;
                let n = tags.len() as f64;
                ensemble_mix(&WeightedEnsemble::new(tags.into_iter().map(|k| (1.0 / n, k)).collect())?)
            }
        }
    }

    /// Whether the state is supported on the `|ii><jj|` pattern.
    pub fn is_maximally_correlated(&self) -> bool {
        matches!(self, FamilyParams::McTwoQubit { .. } | FamilyParams::Lemma3Mc { .. })
    }
}

/// `G G^dagger / tr` for a seeded complex Gaussian `G` of shape `dA dB x rank`.
/// Generic for the chosen rank.
pub fn random_density<R: rand::Rng + ?Sized>(
    dims: BipartiteDims,
    rank: usize,
    rng: &mut R,
) -> Result<BipartiteDensity> {
    if rank == 0 || rank > dims.total() {
        return Err(Error::Parameter(format!("rank {rank} must lie in 1..={}", dims.total())));
    }
    let g = numlin::gaussian_matrix(dims.total(), rank, rng);
    let m = &g * g.adjoint();
    let tr = trace(&m);
    BipartiteDensity::new(m / tr, dims)
}

/// Product tags `|00>` and `|++>` with `|+> = (1/sqrt d) sum_i |i>`.
pub fn separable_tags(d: usize) -> Result<Vec<PureKet>> {
    let zero = basis(d, 0);
    let plus = CVector::from_element(d, c(1.0 / (d as f64).sqrt(), 0.0));
    Ok(vec![PureKet::product(&zero, &zero)?, PureKet::product(&plus, &plus)?])
}

/// Uniform complex phase `e^{i t}`.
pub(crate) fn phase(t: f64) -> C64 {
    C64::from_polar(1.0, t)
}
