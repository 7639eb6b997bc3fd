//! Scalar entanglement functionals. All logarithms are base 2.

use crate::error::{Error, Result};
use crate::numlin::{self, c, eigh, BipartiteDims, CMatrix, Subsystem, C64, EIGEN_FLOOR};
use crate::odfam;
use crate::states::{self, BipartiteDensity, FamilyParams, PureKet};

const DOMAIN_SLACK: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-8;
/// Off-pattern tolerance for maximally correlated inputs.
pub const MC_PATTERN_TOL: f64 = 1e-10;

#[inline]
fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Binary entropy with the argument clamped to `[0, 1]`.
#[inline]
pub(crate) fn h(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    // `+ 0.0` turns a negative zero at the endpoints into `0`.
    0.0 - xlog2x(x) - xlog2x(1.0 - x) + 0.0
}

/// `h(x) = -x log x - (1-x) log(1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&x) || x.is_nan() {
        return Err(Error::Domain(format!("binary entropy argument {x} is outside [0, 1]")));
    }
    Ok(h(x))
}

/// Shannon entropy of a probability vector; entries below the floor count as zero.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    // Probabilities a rounding step above 1 would otherwise give a tiny negative value.
    (-probs.iter().filter(|&&p| p > EIGEN_FLOOR).map(|&p| xlog2x(p)).sum::<f64>()).max(0.0)
}

/// `S(rho) = -Tr rho log rho`, renormalizing the trace.
pub fn von_neumann_entropy(rho: &CMatrix) -> Result<f64> {
    let eig = numlin::eigvals_hermitian(rho)?;
    let min = eig.last().copied().unwrap_or(0.0);
    if min < -PSD_TOL {
        return Err(Error::NotPsd(min));
    }
    let tr: f64 = eig.iter().sum();
    if (tr - 1.0).abs() > TRACE_TOL {
        return Err(Error::Normalization(format!("entropy input has trace {tr}")));
    }
    let probs: Vec<f64> = eig.iter().map(|l| l.max(0.0) / tr).collect();
    Ok(shannon_entropy(&probs))
}

/// Entropy of the marginal of a pure state.
pub fn pure_entanglement(k: &PureKet) -> f64 {
    let probs: Vec<f64> = k.schmidt_coefficients().iter().map(|s| s * s).collect();
    shannon_entropy(&probs)
}

/// `||v||^2 * E(v / ||v||)` for an unnormalized bipartite vector.
///
/// Works from the reduced matrix on the smaller side; `2 x 2` marginals use a
/// closed form with the small eigenvalue recovered from the determinant.
pub(crate) fn weighted_entanglement(v: &[C64], dims: BipartiteDims) -> f64 {
    let (da, db) = (dims.a(), dims.b());
    let m = da.min(db);
    if m == 1 {
        return 0.0;
    }
    let amp = |a: usize, b: usize| v[a * db + b];
    let entry = |i: usize, j: usize| -> C64 {
        if da <= db {
            (0..db).map(|b| amp(i, b) * amp(j, b).conj()).sum()
        } else {
            (0..da).map(|a| amp(a, i) * amp(a, j).conj()).sum()
        }
    };
    let w: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if w <= 0.0 {
        return 0.0;
    }
    let mut acc = xlog2x(w);
    if m == 2 {
        let a = entry(0, 0).re;
        let d = entry(1, 1).re;
        let b2 = entry(0, 1).norm_sqr();
        let disc = ((a - d) * (a - d) + 4.0 * b2).max(0.0).sqrt();
        let l1 = 0.5 * (a + d + disc);
        let l2 = if l1 > 0.0 { ((a * d - b2) / l1).max(0.0) } else { 0.0 };
        acc -= xlog2x(l1) + xlog2x(l2);
    } else {
        let reduced = CMatrix::from_fn(m, m, entry);
        for l in reduced.symmetric_eigenvalues().iter() {
            acc -= xlog2x(l.max(0.0));
        }
    }
    acc.max(0.0)
}

/// Wootters concurrence of a two-qubit state.
pub fn concurrence(rho: &BipartiteDensity) -> Result<f64> {
    let dims = rho.dims();
    if dims.a() != 2 || dims.b() != 2 {
        return Err(Error::Shape(format!("Wootters formula needs a 2x2 state, got ({}, {})", dims.a(), dims.b())));
    }
    // sigma_y (x) sigma_y is real: anti-diagonal (-1, 1, 1, -1).
    let mut yy = CMatrix::zeros(4, 4);
    for (i, s) in [-1.0, 1.0, 1.0, -1.0].into_iter().enumerate() {
        yy[(i, 3 - i)] = c(s, 0.0);
    }
    // With X = [sqrt(l_i) e_i] on the support, the singular values of
    // X^T (Y (x) Y) X are the square roots of the eigenvalues of rho rho~.
    let (vals, vecs) = eigh(rho.matrix());
    let support: Vec<usize> = (0..4).filter(|&i| vals[i] > EIGEN_FLOOR).collect();
    let x = CMatrix::from_fn(4, support.len(), |r, k| vecs[(r, support[k])] * vals[support[k]].sqrt());
    let tau = x.transpose() * yy * &x;
    let mut lam: Vec<f64> = tau.singular_values().iter().copied().collect();
    lam.sort_by(|a, b| b.total_cmp(a));
    lam.resize(4, 0.0);
    Ok((lam[0] - lam[1] - lam[2] - lam[3]).max(0.0))
}

/// Two-qubit EOF `h(1/2 + 1/2 sqrt(1 - C^2))`.
pub fn wootters_eof(rho: &BipartiteDensity) -> Result<f64> {
    let conc = concurrence(rho)?;
    Ok(eof_from_concurrence(conc))
}

pub fn eof_from_concurrence(conc: f64) -> f64 {
    h(0.5 + 0.5 * (1.0 - conc * conc).max(0.0).sqrt())
}

fn check_angle(theta: f64) -> Result<f64> {
    if !(-DOMAIN_SLACK..=std::f64::consts::FRAC_PI_2 + DOMAIN_SLACK).contains(&theta) || theta.is_nan() {
        return Err(Error::Domain(format!("theta = {theta} is outside [0, pi/2]")));
    }
    Ok(theta)
}

fn check_unit(name: &str, x: f64) -> Result<f64> {
    if !(-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&x) || x.is_nan() {
        return Err(Error::Domain(format!("{name} = {x} is outside [0, 1]")));
    }
    Ok(x.clamp(0.0, 1.0))
}

/// EOF of every state in the two-qubit MC family: `h(cos^2 theta)`.
pub fn eof_mc_two_qubit(theta: f64) -> Result<f64> {
    let t = check_angle(theta)?;
    Ok(h(t.cos().powi(2)))
}

/// EOF of the sigma family, `h(1/2 + 1/2 sqrt(1 - 4(1-p)^2 x^2 z^2))`.
pub fn eof_sigma(p: f64, x: f64, z: f64) -> Result<f64> {
    let p = check_unit("p", p)?;
    let x = check_unit("x", x)?;
    let z = check_unit("z", z)?;
    if x * x + z * z > 1.0 + DOMAIN_SLACK {
        return Err(Error::Domain(format!("x^2 + z^2 = {} exceeds 1", x * x + z * z)));
    }
    let conc = 2.0 * (1.0 - p) * x * z;
    Ok(eof_from_concurrence(conc))
}

/// Closed-form EOF of the rank-2 maximally correlated family.
pub fn eof_lemma3(p: f64, coeffs: &[f64], f: usize) -> Result<f64> {
    let p = states::validate_lemma3(p, coeffs, f)?;
    let cos2: f64 = coeffs[..f].iter().map(|x| x * x).sum();
    let theta = cos2.sqrt().acos();
    let psi_term: f64 = coeffs.iter().map(|x| xlog2x(x * x)).sum();
    let phi_term: f64 = coeffs[..f].iter().map(|x| xlog2x(x * x / cos2)).sum();
    let s2 = (2.0 * theta).sin().powi(2);
    Ok(-p * psi_term - (1.0 - p) * phi_term + h(0.5 + 0.5 * (1.0 - p * p * s2).max(0.0).sqrt()) - p * h(cos2))
}

/// Entanglement of each twirled member of the isotropic OD:
/// `((2-d)/d) log(d-1) + log d`.
pub fn eof_isotropic_member(d: usize) -> Result<f64> {
    if d < 3 {
        return Err(Error::Domain(format!("isotropic member needs d >= 3, got {d}")));
    }
    let df = d as f64;
    Ok((2.0 - df) / df * (df - 1.0).log2() + df.log2())
}

/// EOF of `isotropic(d, F)` for odd `d` and `F > (4d-4)/d^2`, from its OD weights.
pub fn eof_isotropic(d: usize, fidelity: f64) -> Result<f64> {
    odfam::check_isotropic_od_range(d, fidelity)?;
    let member = eof_isotropic_member(d)?;
    let w_plus = odfam::isotropic_plus_weight(d, fidelity);
    Ok(w_plus * (d as f64).log2() + (1.0 - w_plus) * member)
}

/// EOF of an entangled Werner state, `h(1/2 + 1/2 sqrt(1 - F^2))` for `F in [-1, 0)`.
pub fn eof_werner(fidelity: f64) -> Result<f64> {
    if !(-1.0 - DOMAIN_SLACK..0.0).contains(&fidelity) {
        return Err(Error::Domain(format!(
            "Werner EOF formula covers the entangled range F in [-1, 0), got {fidelity}"
        )));
    }
    let f = fidelity.max(-1.0);
    Ok(h(0.5 + 0.5 * (1.0 - f * f).max(0.0).sqrt()))
}

fn check_mc(rho: &BipartiteDensity) -> Result<()> {
    let err = rho.mc_pattern_error();
    if err > MC_PATTERN_TOL {
        return Err(Error::NotMaximallyCorrelated(err));
    }
    Ok(())
}

/// `S(Tr_traced rho) - S(rho)` for a maximally correlated state, floored at 0.
pub fn distillable_mc(rho: &BipartiteDensity, traced: Subsystem) -> Result<f64> {
    check_mc(rho)?;
    let marginal = rho.partial_trace(traced.other());
    let value = von_neumann_entropy(&numlin::hermitian_part(&marginal))? - von_neumann_entropy(rho.matrix())?;
    Ok(value.max(0.0))
}

/// `sum_i h(cos^2 theta_i) - S(Tr_A rho) + S(rho)` over a member of a composed
/// two-qubit MC family.
pub fn gap_tensor_mc(thetas: &[f64], rho: &BipartiteDensity) -> Result<f64> {
    if thetas.is_empty() {
        return Err(Error::Parameter("need at least one angle".into()));
    }
    let side = 1usize.checked_shl(thetas.len() as u32).ok_or_else(|| Error::Parameter("too many angles".into()))?;
    let dims = rho.dims();
    if dims.a() != side || dims.b() != side {
        return Err(Error::Shape(format!(
            "{} angles need a {side}x{side} state, got ({}, {})",
            thetas.len(),
            dims.a(),
            dims.b()
        )));
    }
    check_mc(rho)?;
    let cost: f64 = thetas.iter().map(|&t| eof_mc_two_qubit(t)).sum::<Result<f64>>()?;
    let marginal = numlin::hermitian_part(&rho.partial_trace(Subsystem::B));
    Ok(cost - von_neumann_entropy(&marginal)? + von_neumann_entropy(rho.matrix())?)
}

/// Cost minus distillable entanglement for the rank-2 MC family at angle `theta`.
pub fn gap_lemma3(p: f64, theta: f64) -> Result<f64> {
    let p = check_unit("p", p)?;
    if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain(format!("theta = {theta} is outside (0, pi/2)")));
    }
    let s2 = theta.sin().powi(2);
    let s2t = (2.0 * theta).sin().powi(2);
    Ok(h(0.5 + 0.5 * (1.0 - p * p * s2t).max(0.0).sqrt()) - h(p * s2)
        + h(0.5 + 0.5 * (1.0 - 4.0 * p * s2 + 4.0 * p * p * s2).max(0.0).sqrt()))
}

/// EOF with, where known, entanglement cost, distillable entanglement and their gap.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub eof: f64,
    pub cost: Option<f64>,
    pub distillable: Option<f64>,
    pub gap: Option<f64>,
    pub family: String,
}

impl EntanglementReport {
    fn with_cost(family: &FamilyParams, eof: f64, rho: Option<&BipartiteDensity>) -> Result<Self> {
        let distillable = rho.map(|r| distillable_mc(r, Subsystem::A)).transpose()?;
        Ok(Self {
            eof,
            cost: Some(eof),
            distillable,
            gap: distillable.map(|d| eof - d),
            family: family.name().to_string(),
        })
    }
}

/// Analytic entanglement report for a named family.
pub fn family_report(params: &FamilyParams) -> Result<EntanglementReport> {
    params.validate()?;
    match params {
        FamilyParams::McTwoQubit { theta, .. } => {
            let rho = params.state()?;
            EntanglementReport::with_cost(params, eof_mc_two_qubit(*theta)?, Some(&rho))
        }
        FamilyParams::Sigma { p, x, z, .. } => EntanglementReport::with_cost(params, eof_sigma(*p, *x, *z)?, None),
        FamilyParams::Lemma3Mc { p, coeffs, f } => {
            let rho = params.state()?;
            EntanglementReport::with_cost(params, eof_lemma3(*p, coeffs, *f)?, Some(&rho))
        }
        FamilyParams::SeparableTags { .. } => EntanglementReport::with_cost(params, 0.0, None),
        FamilyParams::Isotropic { d, fidelity, .. } => Ok(EntanglementReport {
            eof: eof_isotropic(*d, *fidelity)?,
            cost: None,
            distillable: None,
            gap: None,
            family: params.name().into(),
        }),
        FamilyParams::Werner { fidelity, .. } => Ok(EntanglementReport {
            // F >= 0 Werner states are separable.
            eof: if *fidelity < 0.0 { eof_werner(*fidelity)? } else { 0.0 },
            cost: None,
            distillable: None,
            gap: None,
            family: params.name().into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::{basis, CVector};
    use crate::states::{lemma3_mc, max_entangled, mc_two_qubit, sigma_family_state, werner};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn q2() -> BipartiteDims {
        BipartiteDims::square(2).unwrap()
    }

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        let direct = -0.11 * 0.11f64.ln() / 2f64.ln() - 0.89 * 0.89f64.ln() / 2f64.ln();
        assert!((binary_entropy(0.11).unwrap() - direct).abs() < 1e-15);
        assert!((binary_entropy(0.3).unwrap() - binary_entropy(0.7).unwrap()).abs() < 1e-15);
        assert_eq!(binary_entropy(-1e-13).unwrap(), 0.0);
        assert!(matches!(binary_entropy(1.1), Err(Error::Domain(_))));
        assert!(binary_entropy(f64::NAN).is_err());
    }

    #[test]
    fn von_neumann_examples() {
        let mixed = CMatrix::identity(4, 4) / c(4.0, 0.0);
        assert!((von_neumann_entropy(&mixed).unwrap() - 2.0).abs() < 1e-14);
        assert!(von_neumann_entropy(&max_entangled(3).unwrap().projector()).unwrap().abs() < 1e-12);

        let (p, t) = (0.3, 0.7f64);
        let rho = mc_two_qubit(p, t).unwrap();
        // Spectrum of the rank-2 Gram matrix [[p, sqrt(p(1-p)) sin 2t], [.., 1-p]].
        let off2 = p * (1.0 - p) * (2.0 * t).sin().powi(2);
        let l = 0.5 + 0.5 * (1.0 - 4.0 * (p * (1.0 - p) - off2)).sqrt();
        assert!((von_neumann_entropy(rho.matrix()).unwrap() - h(l)).abs() < 1e-12);

        let mut neg = CMatrix::identity(2, 2);
        neg[(1, 1)] = c(-0.5, 0.0);
        neg[(0, 0)] = c(1.5, 0.0);
        assert!(matches!(von_neumann_entropy(&neg), Err(Error::NotPsd(_))));
    }

    #[test]
    fn pure_entanglement_examples() {
        assert!((max_entangled(2).unwrap().entanglement() - 1.0).abs() < 1e-14);
        let product = PureKet::new(basis(4, 1), q2()).unwrap();
        assert_eq!(pure_entanglement(&product), 0.0);
        assert!((pure_entanglement(&max_entangled(3).unwrap()) - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn weighted_entanglement_matches_normalized_path() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for (da, db) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 4), (1, 3)] {
            let dims = BipartiteDims::new(da, db).unwrap();
            let g = numlin::gaussian_matrix(da * db, 1, &mut rng);
            let v: CVector = g.column(0).into_owned() * c(0.37, 0.0);
            let w = v.norm_squared();
            let k = PureKet::normalized(v.clone(), dims).unwrap();
            let fast = weighted_entanglement(v.as_slice(), dims);
            assert!((fast - w * k.entanglement()).abs() < 1e-12, "({da},{db})");
        }
    }

    #[test]
    fn wootters_examples() {
        let bell = max_entangled(2).unwrap();
        let rho = BipartiteDensity::new(bell.projector(), q2()).unwrap();
        assert!((wootters_eof(&rho).unwrap() - 1.0).abs() < 1e-12);

        let plus = CVector::from_element(2, c(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        let prod = PureKet::product(&basis(2, 0), &plus).unwrap();
        let rho = BipartiteDensity::new(prod.projector(), q2()).unwrap();
        assert!(wootters_eof(&rho).unwrap() < 1e-12);

        let target = h(0.7f64.cos().powi(2));
        for p in [0.0, 0.3, 0.5, 1.0] {
            let rho = mc_two_qubit(p, 0.7).unwrap();
            let w = wootters_eof(&rho).unwrap();
            assert!((w - target).abs() < 1e-10, "p = {p}: {w} vs {target}");
        }

        let bad = werner(3, -0.5).unwrap();
        assert!(matches!(wootters_eof(&bad), Err(Error::Shape(_))));
    }

    #[test]
    fn eof_mc_examples() {
        assert!((eof_mc_two_qubit(FRAC_PI_4).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(eof_mc_two_qubit(0.0).unwrap(), 0.0);
        for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let w = wootters_eof(&mc_two_qubit(p, 0.7).unwrap()).unwrap();
            assert!((w - eof_mc_two_qubit(0.7).unwrap()).abs() < 1e-10);
        }
        assert!(eof_mc_two_qubit(2.0).is_err());
    }

    #[test]
    fn eof_sigma_examples() {
        assert_eq!(eof_sigma(0.5, 0.6, 0.0).unwrap(), 0.0);
        assert_eq!(eof_sigma(1.0, 0.6, 0.8).unwrap(), 0.0);
        let e = eof_sigma(0.5, 0.6, 0.8).unwrap();
        assert!((e - h(0.5 + 0.5 * (1.0f64 - 4.0 * 0.25 * 0.36 * 0.64).sqrt())).abs() < 1e-15);
        for q in [0.2, 0.5, 0.9] {
            let (rho, _) = sigma_family_state(q, 0.5, 0.6, 0.0, 0.8).unwrap();
            assert!((wootters_eof(&rho).unwrap() - e).abs() < 1e-9);
        }
        assert!(eof_sigma(0.5, 0.9, 0.9).is_err());
    }

    #[test]
    fn eof_lemma3_pure_limits() {
        let c3 = [0.5, 0.5, 0.5f64.sqrt()];
        let k = states::lemma3_kets(&c3, 2).unwrap();
        let psi = PureKet::new(k.psi.clone(), k.dims).unwrap();
        let phi = PureKet::new(k.phi.clone(), k.dims).unwrap();
        assert!((eof_lemma3(1.0, &c3, 2).unwrap() - psi.entanglement()).abs() < 1e-12);
        assert!((eof_lemma3(0.0, &c3, 2).unwrap() - phi.entanglement()).abs() < 1e-12);
        assert!(eof_lemma3(0.5, &c3, 3).is_err());
    }

    #[test]
    fn isotropic_member_value() {
        let e = eof_isotropic_member(3).unwrap();
        assert!((e - (-1.0 / 3.0 + 3f64.log2())).abs() < 1e-12);
        assert!((e - 1.251629167).abs() < 1e-9);
        assert!(eof_isotropic_member(2).is_err());
        // Mixing weight w on psi+ gives w log d + (1-w) member.
        let f = 0.95;
        let w = odfam::isotropic_plus_weight(3, f);
        assert!((eof_isotropic(3, f).unwrap() - (w * 3f64.log2() + (1.0 - w) * e)).abs() < 1e-15);
        assert!((eof_isotropic(3, 1.0).unwrap() - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn eof_werner_examples() {
        assert!((eof_werner(-1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(eof_werner(-1e-9).unwrap() < 1e-15);
        assert!(eof_werner(0.0).is_err());
        assert!(eof_werner(0.5).is_err());
    }

    #[test]
    fn distillable_examples() {
        let t = 0.6f64;
        let rho = mc_two_qubit(1.0, t).unwrap();
        assert!((distillable_mc(&rho, Subsystem::A).unwrap() - h(t.cos().powi(2))).abs() < 1e-12);

        let rho = mc_two_qubit(0.5, 0.0).unwrap();
        assert!(distillable_mc(&rho, Subsystem::A).unwrap().abs() < 1e-12);

        let rho = lemma3_mc(0.5, &[1.0 / 3f64.sqrt(); 3], 2).unwrap();
        let direct = von_neumann_entropy(&numlin::hermitian_part(&rho.partial_trace(Subsystem::B))).unwrap()
            - von_neumann_entropy(rho.matrix()).unwrap();
        let ed = distillable_mc(&rho, Subsystem::A).unwrap();
        assert!((ed - direct).abs() < 1e-12);
        assert!((distillable_mc(&rho, Subsystem::B).unwrap() - ed).abs() < 1e-12);

        assert!(matches!(
            distillable_mc(&werner(2, -0.5).unwrap(), Subsystem::A),
            Err(Error::NotMaximallyCorrelated(_))
        ));
    }

    #[test]
    fn gap_tensor_mc_examples() {
        for p in [0.0, 1.0] {
            let rho = mc_two_qubit(p, 0.5).unwrap();
            assert!(gap_tensor_mc(&[0.5], &rho).unwrap().abs() < 1e-12);
        }
        let bell = mc_two_qubit(1.0, FRAC_PI_4).unwrap();
        assert!(gap_tensor_mc(&[FRAC_PI_4], &bell).unwrap().abs() < 1e-12);
        assert!(gap_tensor_mc(&[0.5, 0.4], &bell).is_err());
    }

    #[test]
    fn gap_lemma3_examples() {
        for t in [0.2, 0.7, 1.3] {
            assert!(gap_lemma3(0.0, t).unwrap().abs() < 1e-15);
            assert!(gap_lemma3(1.0, t).unwrap().abs() < 1e-12);
        }
        for i in 1..8 {
            for j in 1..8 {
                let p = i as f64 / 8.0;
                let t = FRAC_PI_2 * j as f64 / 8.0;
                assert!(gap_lemma3(p, t).unwrap() > 1e-6);
            }
        }
        assert!(gap_lemma3(0.5, 0.0).is_err());
        assert!(gap_lemma3(1.5, 0.3).is_err());
    }

    #[test]
    fn reports_carry_cost_and_gap() {
        let r = family_report(&FamilyParams::McTwoQubit { p: 0.3, theta: 0.7 }).unwrap();
        assert_eq!(r.cost, Some(r.eof));
        let gap = r.gap.unwrap();
        assert!((gap - (r.cost.unwrap() - r.distillable.unwrap())).abs() < 1e-12);
        assert!(gap >= -1e-9);

        let r = family_report(&FamilyParams::Werner { d: 3, fidelity: -0.5 }).unwrap();
        assert!(r.cost.is_none());
        assert!((r.eof - h(0.5 + 0.5 * 0.75f64.sqrt())).abs() < 1e-15);
        let r = family_report(&FamilyParams::Werner { d: 3, fidelity: 0.2 }).unwrap();
        assert_eq!(r.eof, 0.0);
    }
}
