//! Dense complex linear algebra on bipartite index spaces.
//!
//! Composite indices are A-major: basis ket `|a, b>` sits at `a * dB + b`.
//! Hermitian eigensystems and singular values are delegated to `nalgebra`;
//! this module owns the bipartite bookkeeping around them.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Tolerance on `max |M - M^dagger|` for inputs declared Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues below this are treated as zero when used as probabilities.
pub const EIGEN_FLOOR: f64 = 1e-12;

pub const fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// Factorization `dA x dB` of a bipartite index space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BipartiteDims {
    a: usize,
    b: usize,
}

impl BipartiteDims {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::Shape(format!("subsystem dimensions must be positive, got ({a}, {b})")));
        }
        Ok(Self { a, b })
    }

    /// Square `d x d` factorization.
    pub fn square(d: usize) -> Result<Self> {
        Self::new(d, d)
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn total(&self) -> usize {
        self.a * self.b
    }

    pub fn min(&self) -> usize {
        self.a.min(self.b)
    }

    #[inline]
    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.b + b
    }

    fn check_square(&self, m: &CMatrix) -> Result<()> {
        let n = self.total();
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::Shape(format!(
                "expected {n}x{n} matrix for dims ({}, {}), got {}x{}",
                self.a,
                self.b,
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(())
    }
}

/// One side of a bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

/// `max |M - M^dagger|` over all entries.
pub fn hermiticity_error(m: &CMatrix) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `(M + M^dagger) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

fn check_hermitian(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::Shape(format!("expected a square matrix, got {}x{}", m.nrows(), m.ncols())));
    }
    let err = hermiticity_error(m);
    if err > HERMITIAN_TOL {
        return Err(Error::NotHermitian(err));
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Returns eigenvalues in descending order and the matching orthonormal
/// eigenvectors as the columns of the second component.
pub fn eig_hermitian(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    check_hermitian(m)?;
    Ok(eigh(m))
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn eigvals_hermitian(m: &CMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    Ok(eigvalsh(m))
}

/// Symmetrizes and decomposes without validating Hermiticity.
pub(crate) fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
    (values, vectors)
}

pub(crate) fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    let mut values: Vec<f64> = hermitian_part(m).symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

/// Amplitude matrix `Psi[a, b] = <a b | v>` of a bipartite vector.
pub fn amplitude_matrix(v: &CVector, dims: BipartiteDims) -> Result<CMatrix> {
    if v.len() != dims.total() {
        return Err(Error::Shape(format!("vector of length {} does not factor as ({}, {})", v.len(), dims.a, dims.b)));
    }
    Ok(CMatrix::from_fn(dims.a, dims.b, |a, b| v[dims.index(a, b)]))
}

/// Schmidt coefficients of a unit vector, descending, length `min(dA, dB)`.
pub fn schmidt_coefficients(v: &CVector, dims: BipartiteDims) -> Result<Vec<f64>> {
    let norm = v.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Normalization(format!("Schmidt decomposition needs a unit vector, norm is {norm}")));
    }
    let psi = amplitude_matrix(v, dims)?;
    let mut s: Vec<f64> = psi.singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s.truncate(dims.min());
    Ok(s)
}

/// Partial trace, keeping the named subsystem.
pub fn partial_trace(rho: &CMatrix, dims: BipartiteDims, keep: Subsystem) -> Result<CMatrix> {
    dims.check_square(rho)?;
    let (da, db) = (dims.a, dims.b);
    let out = match keep {
        Subsystem::A => {
            CMatrix::from_fn(da, da, |a, a2| (0..db).map(|b| rho[(dims.index(a, b), dims.index(a2, b))]).sum())
        }
        Subsystem::B => {
            CMatrix::from_fn(db, db, |b, b2| (0..da).map(|a| rho[(dims.index(a, b), dims.index(a, b2))]).sum())
        }
    };
    Ok(out)
}

/// Partial transpose on the named subsystem.
pub fn partial_transpose(rho: &CMatrix, dims: BipartiteDims, side: Subsystem) -> Result<CMatrix> {
    dims.check_square(rho)?;
    let n = dims.total();
    let (da, db) = (dims.a, dims.b);
    Ok(CMatrix::from_fn(n, n, |r, col| {
        let (a, b) = (r / db, r % db);
        let (a2, b2) = (col / db, col % db);
        debug_assert!(a < da && a2 < da);
        match side {
            Subsystem::A => rho[(dims.index(a2, b), dims.index(a, b2))],
            Subsystem::B => rho[(dims.index(a, b2), dims.index(a2, b))],
        }
    }))
}

/// Kronecker product `A (x) B`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Kronecker product of two vectors.
pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    a.kronecker(b)
}

/// Frobenius distance `||A - B||_F`.
pub fn frob_dist(a: &CMatrix, b: &CMatrix) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::Shape(format!("cannot compare {:?} with {:?}", a.shape(), b.shape())));
    }
    Ok((a - b).norm())
}

/// `|v><v|`.
pub fn outer(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().sum()
}

/// Computational basis vector of length `n`.
pub fn basis(n: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[i] = c(1.0, 0.0);
    v
}

/// Draws a matrix with i.i.d. standard complex Gaussian entries.
pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-distributed `rows x cols` isometry (`V^dagger V = I`), `rows >= cols`.
pub fn random_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = gaussian_matrix(rows, cols, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for k in 0..cols {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..rows {
            q[(i, k)] *= phase;
        }
    }
    q
}

/// Haar-distributed `d x d` unitary.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    random_isometry(d, d, rng)
}

/// `||V^dagger V - I||_F`.
pub fn isometry_error(v: &CMatrix) -> f64 {
    let g = v.adjoint() * v;
    (g - CMatrix::identity(v.ncols(), v.ncols())).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn dims(a: usize, b: usize) -> BipartiteDims {
        BipartiteDims::new(a, b).unwrap()
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let g = gaussian_matrix(n, n, rng);
        &g + g.adjoint()
    }

    fn random_density(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let g = gaussian_matrix(n, n, rng);
        let m = &g * g.adjoint();
        let t = trace(&m);
        m / t
    }

    fn bell() -> CVector {
        let mut v = CVector::zeros(4);
        v[0] = c(FRAC_1_SQRT_2, 0.0);
        v[3] = c(FRAC_1_SQRT_2, 0.0);
        v
    }

    #[test]
    fn eig_of_diagonal() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]));
        let (vals, vecs) = eig_hermitian(&m).unwrap();
        assert_eq!(vals, vec![1.0, 0.0]);
        assert!((vecs[(1, 0)].norm() - 1.0).abs() < 1e-14);
        assert!((vecs[(0, 1)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_of_pauli_x() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let (vals, vecs) = eig_hermitian(&m).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] + 1.0).abs() < 1e-14);
        let plus = CVector::from_vec(vec![c(FRAC_1_SQRT_2, 0.), c(FRAC_1_SQRT_2, 0.)]);
        let overlap = (plus.adjoint() * vecs.column(0))[(0, 0)].norm();
        assert!((overlap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let h = random_hermitian(6, &mut rng);
        let (vals, v) = eig_hermitian(&h).unwrap();
        let lam = CMatrix::from_diagonal(&CVector::from_iterator(6, vals.iter().map(|&x| c(x, 0.))));
        let rebuilt = &v * lam * v.adjoint();
        assert!(frob_dist(&rebuilt, &h).unwrap() <= 1e-10);
        assert!(isometry_error(&v) <= 1e-10);
        assert!(vals.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn eig_rejects_bad_input() {
        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(eig_hermitian(&rect), Err(Error::Shape(_))));
        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn eigen_reconstruction_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(200);
        for k in 0..200 {
            let n = 1 + k % 16;
            let h = random_hermitian(n, &mut rng);
            let (vals, v) = eig_hermitian(&h).unwrap();
            let lam = CMatrix::from_diagonal(&CVector::from_iterator(n, vals.iter().map(|&x| c(x, 0.))));
            assert!(frob_dist(&(&v * lam * v.adjoint()), &h).unwrap() <= 1e-10, "n = {n}");
        }
    }

    #[test]
    fn schmidt_examples() {
        let s = schmidt_coefficients(&bell(), dims(2, 2)).unwrap();
        assert!((s[0] - FRAC_1_SQRT_2).abs() < 1e-14 && (s[1] - FRAC_1_SQRT_2).abs() < 1e-14);

        let s = schmidt_coefficients(&basis(4, 1), dims(2, 2)).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-14 && s[1].abs() < 1e-14);

        let t = 0.3f64;
        let mut v = CVector::zeros(4);
        v[0] = c(t.cos(), 0.);
        v[3] = c(t.sin(), 0.);
        let s = schmidt_coefficients(&v, dims(2, 2)).unwrap();
        assert!((s[0] - t.cos()).abs() < 1e-14 && (s[1] - t.sin()).abs() < 1e-14);

        let s = schmidt_coefficients(&basis(6, 4), dims(2, 3)).unwrap();
        assert_eq!(s.len(), 2);

        let bad = bell() * c(2.0, 0.0);
        assert!(matches!(schmidt_coefficients(&bad, dims(2, 2)), Err(Error::Normalization(_))));
    }

    #[test]
    fn schmidt_matches_marginal_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (da, db) in [(2, 2), (2, 3), (3, 3), (4, 2), (3, 5)] {
            let d = dims(da, db);
            let g = gaussian_matrix(d.total(), 1, &mut rng);
            let v: CVector = g.column(0).into_owned();
            let v = &v / c(v.norm(), 0.0);
            let s = schmidt_coefficients(&v, d).unwrap();
            let marginal = partial_trace(&outer(&v), d, Subsystem::A).unwrap();
            let ev = eigvals_hermitian(&hermitian_part(&marginal)).unwrap();
            let sq: f64 = s.iter().map(|x| x * x).sum();
            assert!((sq - 1.0).abs() < 1e-10);
            for (i, x) in s.iter().enumerate() {
                assert!((x * x - ev[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn partial_trace_examples() {
        let p = outer(&bell());
        let ra = partial_trace(&p, dims(2, 2), Subsystem::A).unwrap();
        assert!(frob_dist(&ra, &(CMatrix::identity(2, 2) * c(0.5, 0.))).unwrap() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_density(2, &mut rng);
        let t = gaussian_matrix(3, 3, &mut rng);
        let pt = partial_trace(&kron(&s, &t), dims(2, 3), Subsystem::A).unwrap();
        assert!(frob_dist(&pt, &(&s * trace(&t))).unwrap() < 1e-12);

        // Expanded entrywise: rho_B is diagonal in the computational basis.
        let (pp, th) = (0.3f64, 0.7f64);
        let k = |t: f64| {
            let mut v = CVector::zeros(4);
            v[0] = c(t.cos(), 0.);
            v[3] = c(t.sin(), 0.);
            v
        };
        let rho = outer(&k(th)) * c(pp, 0.) + outer(&k(std::f64::consts::FRAC_PI_2 - th)) * c(1. - pp, 0.);
        let rb = partial_trace(&rho, dims(2, 2), Subsystem::B).unwrap();
        let (c2, s2) = (th.cos().powi(2), th.sin().powi(2));
        assert!((rb[(0, 0)].re - (pp * c2 + (1. - pp) * s2)).abs() < 1e-15);
        assert!((rb[(1, 1)].re - (pp * s2 + (1. - pp) * c2)).abs() < 1e-15);
        assert!(rb[(0, 1)].norm() < 1e-15);

        assert!(matches!(partial_trace(&p, dims(2, 3), Subsystem::A), Err(Error::Shape(_))));
    }

    #[test]
    fn partial_trace_sides_have_equal_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rho = random_density(6, &mut rng);
        let d = dims(2, 3);
        let ta = trace(&partial_trace(&rho, d, Subsystem::A).unwrap());
        let tb = trace(&partial_trace(&rho, d, Subsystem::B).unwrap());
        assert!((ta - tb).norm() < 1e-12);
        assert!((ta - trace(&rho)).norm() < 1e-12);
    }

    #[test]
    fn partial_transpose_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = gaussian_matrix(2, 2, &mut rng);
        let t = gaussian_matrix(3, 3, &mut rng);
        let pt = partial_transpose(&kron(&s, &t), dims(2, 3), Subsystem::B).unwrap();
        assert!(frob_dist(&pt, &kron(&s, &t.transpose())).unwrap() < 1e-15);
        let pa = partial_transpose(&kron(&s, &t), dims(2, 3), Subsystem::A).unwrap();
        assert!(frob_dist(&pa, &kron(&s.transpose(), &t)).unwrap() < 1e-15);

        let ev = eigvals_hermitian(&partial_transpose(&outer(&bell()), dims(2, 2), Subsystem::B).unwrap()).unwrap();
        assert!((ev[3] + 0.5).abs() < 1e-12);

        let rho = random_density(6, &mut rng);
        for side in [Subsystem::A, Subsystem::B] {
            let once = partial_transpose(&rho, dims(3, 2), side).unwrap();
            assert_eq!(partial_transpose(&once, dims(3, 2), side).unwrap(), rho);
            assert!((trace(&once) - trace(&rho)).norm() < 1e-15);
            assert!(hermiticity_error(&once) < 1e-15);
        }
    }

    #[test]
    fn kron_examples() {
        let i2 = CMatrix::identity(2, 2);
        assert_eq!(kron(&i2, &i2), CMatrix::identity(4, 4));
        assert_eq!(kron_vec(&basis(2, 0), &basis(2, 1)), basis(4, 1));

        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..5 {
            let a = gaussian_matrix(3, 3, &mut rng);
            let b = gaussian_matrix(3, 3, &mut rng);
            assert!((trace(&kron(&a, &b)) - trace(&a) * trace(&b)).norm() < 1e-12);
            let c2 = gaussian_matrix(3, 3, &mut rng);
            let d2 = gaussian_matrix(3, 3, &mut rng);
            let lhs = kron(&a, &b) * kron(&c2, &d2);
            let rhs = kron(&(&a * &c2), &(&b * &d2));
            assert!(frob_dist(&lhs, &rhs).unwrap() < 1e-11);
        }
    }

    #[test]
    fn frob_dist_examples() {
        let m = CMatrix::identity(2, 2);
        assert_eq!(frob_dist(&m, &m).unwrap(), 0.0);
        assert!((frob_dist(&CMatrix::zeros(2, 2), &m).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = gaussian_matrix(3, 2, &mut rng);
        let b = gaussian_matrix(3, 2, &mut rng);
        let direct: f64 = a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
        assert!((frob_dist(&a, &b).unwrap() - direct).abs() < 1e-14);
        assert!(frob_dist(&a, &CMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn random_isometry_is_isometric() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (n, r) in [(4, 2), (6, 4), (13, 9), (3, 3)] {
            assert!(isometry_error(&random_isometry(n, r, &mut rng)) < 1e-12);
        }
    }
}
