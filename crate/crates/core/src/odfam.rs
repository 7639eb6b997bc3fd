//! Optimal decompositions (ODs) for each supported family, OD-family
//! composition under tensor products, and verification of claimed ODs.
//!
//! An OD family is a fixed list of kets; every re-weighting of those kets is
//! a state whose EOF is the weighted sum of the per-ket entanglements.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::entanglement;
use crate::error::{Error, Result};
use crate::numlin::{c, BipartiteDims, CMatrix, CVector};
use crate::oracle::{self, CertificationReport, OracleConfig};
use crate::states::{
    self, lemma3_kets, max_entangled, mc_ket, phase, sigma_kets, BipartiteDensity, FamilyParams, PureKet,
    WeightedEnsemble,
};

/// Reconstruction tolerance (Frobenius) used by [`verify_od`].
pub const RECONSTRUCTION_TOL: f64 = 1e-9;
/// Tolerance on `|average entanglement - claimed EOF|` used by [`verify_od`].
pub const ENTANGLEMENT_TOL: f64 = 1e-9;

/// How an [`ODFamily`] was obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Family(FamilyParams),
    Composition(Box<Provenance>, Box<Provenance>),
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Family(p) => write!(f, "{}", p.name()),
            Provenance::Composition(a, b) => write!(f, "({a} x {b})"),
        }
    }
}

/// Fixed decomposition kets whose re-weightings all have computable EOF.
#[derive(Debug, Clone, PartialEq)]
pub struct ODFamily {
    kets: Vec<PureKet>,
    per_ket_entanglement: Vec<f64>,
    additive: bool,
    provenance: Provenance,
}

impl ODFamily {
    pub fn new(kets: Vec<PureKet>, additive: bool, provenance: Provenance) -> Result<Self> {
        let Some(first) = kets.first() else {
            return Err(Error::Parameter("OD family has no kets".into()));
        };
        let dims = first.dims();
        if kets.iter().any(|k| k.dims() != dims) {
            return Err(Error::Shape("OD family kets do not share dims".into()));
        }
        let per_ket_entanglement = kets.iter().map(PureKet::entanglement).collect();
        Ok(Self { kets, per_ket_entanglement, additive, provenance })
    }

    /// The OD family of a named state. `additive` is set for the two-qubit
    /// MC, sigma and separable families.
    pub fn from_params(params: &FamilyParams) -> Result<Self> {
        params.validate()?;
        let additive = matches!(
            params,
            FamilyParams::McTwoQubit { .. } | FamilyParams::Sigma { .. } | FamilyParams::SeparableTags { .. }
        );
        let kets = match params {
            FamilyParams::McTwoQubit { theta, .. } => {
                let q = BipartiteDims::square(2)?;
                vec![PureKet::new(mc_ket(*theta), q)?, PureKet::new(mc_ket(FRAC_PI_2 - theta), q)?]
            }
            FamilyParams::Sigma { p, x, y, z, .. } => {
                let (a, b, _) = sigma_kets(*p, *x, *y, *z)?;
                vec![a, b]
            }
            FamilyParams::SeparableTags { d } => states::separable_tags(*d)?,
            FamilyParams::Lemma3Mc { p, coeffs, f } => {
                lemma3_unnormalized(*p, coeffs, *f)?.1.into_iter().filter(|(w, _)| *w > 0.0).map(|(_, k)| k).collect()
            }
            FamilyParams::Isotropic { d, m, .. } => {
                let cm = coeff_matrix(*d, *m, None)?;
                let mut kets = isotropic_twirled_kets(&cm)?;
                kets.push(max_entangled(*d)?);
                kets
            }
            FamilyParams::Werner { d, fidelity } => werner_kets(*d, *fidelity)?,
        };
        Self::new(kets, additive, Provenance::Family(params.clone()))
    }

    pub fn kets(&self) -> &[PureKet] {
        &self.kets
    }

    pub fn per_ket_entanglement(&self) -> &[f64] {
        &self.per_ket_entanglement
    }

    pub fn additive(&self) -> bool {
        self.additive
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.kets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kets.is_empty()
    }

    pub fn dims(&self) -> BipartiteDims {
        self.kets[0].dims()
    }

    /// The member state with the given weights, as an ensemble.
    pub fn ensemble(&self, weights: &[f64]) -> Result<WeightedEnsemble> {
        self.check_weights(weights)?;
        WeightedEnsemble::new(weights.iter().copied().zip(self.kets.iter().cloned()).collect())
    }

    /// The member state with the given weights.
    pub fn member(&self, weights: &[f64]) -> Result<BipartiteDensity> {
        states::ensemble_mix(&self.ensemble(weights)?)
    }

    fn check_weights(&self, weights: &[f64]) -> Result<()> {
        if weights.len() != self.kets.len() {
            return Err(Error::Parameter(format!(
                "{} weights for a family of {} kets",
                weights.len(),
                self.kets.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0)) {
            return Err(Error::Parameter(format!("weight {w} is negative")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Parameter(format!("weights sum to {total}, expected 1")));
        }
        Ok(())
    }
}

/// EOF of the family member with the given weights.
pub fn family_eof(fam: &ODFamily, weights: &[f64]) -> Result<f64> {
    fam.check_weights(weights)?;
    Ok(weights.iter().zip(&fam.per_ket_entanglement).map(|(w, e)| w * e).sum())
}

/// `|a> (x) |b>` regrouped onto the bipartition `A1 A2 | B1 B2`.
pub fn tensor_ket(a: &PureKet, b: &PureKet) -> Result<PureKet> {
    let (da, db) = (a.dims(), b.dims());
    let dims = BipartiteDims::new(da.a() * db.a(), da.b() * db.b())?;
    let mut v = CVector::zeros(dims.total());
    for a1 in 0..da.a() {
        for b1 in 0..da.b() {
            let x = a.vector()[da.index(a1, b1)];
            if x.norm_sqr() == 0.0 {
                continue;
            }
            for a2 in 0..db.a() {
                for b2 in 0..db.b() {
                    let joined_a = a1 * db.a() + a2;
                    let joined_b = b1 * db.b() + b2;
                    v[dims.index(joined_a, joined_b)] = x * b.vector()[db.index(a2, b2)];
                }
            }
        }
    }
    PureKet::new(v, dims)
}

/// Tensor-product OD family; requires at least one additive factor.
pub fn compose(a: &ODFamily, b: &ODFamily) -> Result<ODFamily> {
    if !a.additive && !b.additive {
        return Err(Error::Hypothesis(format!(
            "neither {} nor {} has additive EOF; at least one factor must",
            a.provenance, b.provenance
        )));
    }
    let mut kets = Vec::with_capacity(a.len() * b.len());
    let mut ent = Vec::with_capacity(a.len() * b.len());
    for (ka, ea) in a.kets.iter().zip(&a.per_ket_entanglement) {
        for (kb, eb) in b.kets.iter().zip(&b.per_ket_entanglement) {
            kets.push(tensor_ket(ka, kb)?);
            ent.push(ea + eb);
        }
    }
    Ok(ODFamily {
        kets,
        per_ket_entanglement: ent,
        additive: a.additive && b.additive,
        provenance: Provenance::Composition(Box::new(a.provenance.clone()), Box::new(b.provenance.clone())),
    })
}

/// `{p, 1-p; |psi_theta>, |psi_{pi/2-theta}>}`.
pub fn od_mc_two_qubit(p: f64, theta: f64) -> Result<WeightedEnsemble> {
    FamilyParams::McTwoQubit { p, theta }.validate()?;
    let q = BipartiteDims::square(2)?;
    let members = [(p, mc_ket(theta)), (1.0 - p, mc_ket(FRAC_PI_2 - theta))]
        .into_iter()
        .filter(|(w, _)| *w > 0.0)
        .map(|(w, v)| Ok((w, PureKet::new(v, q)?)))
        .collect::<Result<Vec<_>>>()?;
    WeightedEnsemble::new(members)
}

/// The two normalized sigma-family kets with weights `q`, `1-q`.
pub fn od_sigma(q: f64, p: f64, x: f64, y: f64, z: f64) -> Result<WeightedEnsemble> {
    FamilyParams::Sigma { q, p, x, y, z }.validate()?;
    let (alpha, beta, _) = sigma_kets(p, x, y, z)?;
    let members: Vec<_> = [(q, alpha), (1.0 - q, beta)].into_iter().filter(|(w, _)| *w > 0.0).collect();
    WeightedEnsemble::new(members)
}

/// Mixing matrix `u` of the rank-2 MC OD: `u00 = -u11`, `u01 = u10`.
pub fn lemma3_u(p: f64, theta: f64) -> Result<[[f64; 2]; 2]> {
    let root = (1.0 - p * p * (2.0 * theta).sin().powi(2)).max(0.0).sqrt();
    let t = if root > 0.0 { (-1.0 + p + p * (2.0 * theta).cos()) / (2.0 * root) } else { 0.0 };
    let radicand = |x: f64| -> Result<f64> {
        if x < -1e-12 {
            return Err(Error::Construction(format!("negative radicand {x} in the u matrix")));
        }
        Ok(x.max(0.0).sqrt())
    };
    let u00 = radicand(0.5 + t)?;
    let u01 = radicand(0.5 - t)?;
    Ok([[u00, u01], [u01, -u00]])
}

/// Unnormalized OD kets `u_i0 sqrt(p) |psi> + u_i1 sqrt(1-p) |phi>` as
/// `(squared norm, normalized ket)` pairs; zero kets get weight 0 and `|psi>`.
fn lemma3_unnormalized(p: f64, coeffs: &[f64], f: usize) -> Result<(BipartiteDims, Vec<(f64, PureKet)>)> {
    let p = states::validate_lemma3(p, coeffs, f)?;
    let k = lemma3_kets(coeffs, f)?;
    if p == 1.0 {
        return Ok((k.dims, vec![(1.0, PureKet::new(k.psi, k.dims)?)]));
    }
    if p == 0.0 {
        return Ok((k.dims, vec![(1.0, PureKet::new(k.phi, k.dims)?)]));
    }
    let u = lemma3_u(p, k.theta())?;
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    let mut out = Vec::with_capacity(2);
    for row in u {
        let v = &k.psi * c(row[0] * sp, 0.0) + &k.phi * c(row[1] * sq, 0.0);
        let w = v.norm_squared();
        if w > 0.0 {
            out.push((w, PureKet::normalized(v, k.dims)?));
        } else {
            out.push((0.0, PureKet::new(k.psi.clone(), k.dims)?));
        }
    }
    Ok((k.dims, out))
}

/// Two-member OD of the rank-2 MC state; weights are the squared norms of
/// the unnormalized kets.
pub fn od_lemma3(p: f64, coeffs: &[f64], f: usize) -> Result<WeightedEnsemble> {
    let (_, members) = lemma3_unnormalized(p, coeffs, f)?;
    WeightedEnsemble::new(members.into_iter().filter(|(w, _)| *w > 0.0).collect())
}

/// `L x d` coefficient matrix behind the isotropic OD (odd `d` only).
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffMatrix {
    pub d: usize,
    pub m: u64,
    pub n: u64,
    /// Phase exponents `f_j = m^j`, `j = 1..=d`.
    pub f: Vec<u64>,
    /// Row `l` is `a_l`; `L = n * binom(d, (d+1)/2)` rows.
    pub rows: CMatrix,
}

impl CoeffMatrix {
    pub fn len(&self) -> usize {
        self.rows.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.nrows() == 0
    }

    /// Quadruples `(i, j, k, l)` where `n | f_i + f_j - f_k - f_l` disagrees
    /// with `{i, j} = {k, l}`. Exhaustive over all `d^4` index choices.
    pub fn divisibility_violations(&self) -> Vec<[usize; 4]> {
        divisibility_violations(&self.f, self.n)
    }
}

fn divisibility_violations(f: &[u64], n: u64) -> Vec<[usize; 4]> {
    let d = f.len();
    let n = n as i128;
    let mut bad = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let s = f[i] as i128 + f[j] as i128 - f[k] as i128 - f[l] as i128;
                    let divides = s.rem_euclid(n) == 0;
                    let same = (i == k && j == l) || (i == l && j == k);
                    if divides != same {
                        bad.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    bad
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

/// Builds the coefficient matrix with `f_j = m^j` and, by default,
/// `n = 2 m^d - 3`.
pub fn coeff_matrix(d: usize, m: u64, n: Option<u64>) -> Result<CoeffMatrix> {
    if d < 3 {
        return Err(Error::Parameter(format!("coefficient matrix needs d >= 3, got {d}")));
    }
    if d.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("coefficient matrix is only constructed for odd d, got {d}")));
    }
    if m < 2 {
        return Err(Error::Parameter(format!("m = {m} must be > 1")));
    }
    let overflow = || Error::Parameter(format!("m^d overflows for m = {m}, d = {d}"));
    let f: Vec<u64> = (1..=d as u32).map(|i| m.checked_pow(i).ok_or_else(overflow)).collect::<Result<_>>()?;
    let bound = f[d - 1].checked_mul(2).ok_or_else(overflow)? - 4;
    let n = n.unwrap_or(bound + 1);
    if n <= bound {
        return Err(Error::Parameter(format!("n = {n} must exceed 2 m^d - 4 = {bound}")));
    }
    let bad = divisibility_violations(&f, n);
    if let Some(q) = bad.first() {
        return Err(Error::Construction(format!(
            "divisibility law fails for (i, j, k, l) = ({}, {}, {}, {}) with n = {n}",
            q[0] + 1,
            q[1] + 1,
            q[2] + 1,
            q[3] + 1
        )));
    }
    let support = d.div_ceil(2);
    let patterns = combinations(d, support);
    let amp = (2.0 / (d as f64 + 1.0)).sqrt();
    let rows_total = patterns.len() * n as usize;
    let mut rows = CMatrix::zeros(rows_total, d);
    for (pi, pat) in patterns.iter().enumerate() {
        for k in 0..n {
            let r = pi * n as usize + k as usize;
            for &j in pat {
                let e = ((f[j] % n) * k) % n;
                rows[(r, j)] = phase(2.0 * PI * e as f64 / n as f64) * amp;
            }
        }
    }
    Ok(CoeffMatrix { d, m, n, f, rows })
}

/// Validity range of the isotropic OD: odd `d >= 3` and `F in ((4d-4)/d^2, 1]`.
pub fn check_isotropic_od_range(d: usize, fidelity: f64) -> Result<()> {
    if d < 3 {
        return Err(Error::Parameter(format!("isotropic OD needs d >= 3, got {d}")));
    }
    if d.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("isotropic OD is only constructed for odd d, got {d}")));
    }
    let df = d as f64;
    let lower = (4.0 * df - 4.0) / (df * df);
    if !(fidelity > lower && fidelity <= 1.0 + 1e-12) {
        return Err(Error::Parameter(format!(
            "isotropic OD needs F > (4d-4)/d^2 = {lower} and F <= 1, got {fidelity}"
        )));
    }
    Ok(())
}

/// Weight of `|psi+>` in the isotropic OD: `(4 - 4d + F d^2) / (d-2)^2`.
pub fn isotropic_plus_weight(d: usize, fidelity: f64) -> f64 {
    let df = d as f64;
    (4.0 - 4.0 * df + fidelity * df * df) / (df - 2.0).powi(2)
}

fn isotropic_twirled_kets(cm: &CoeffMatrix) -> Result<Vec<PureKet>> {
    let d = cm.d;
    let df = d as f64;
    let dims = BipartiteDims::square(d)?;
    let scale = 1.0 / (df * df - df).sqrt();
    let mut diag = CVector::zeros(d * d);
    for i in 0..d {
        diag[dims.index(i, i)] = c(scale, 0.0);
    }
    (0..cm.len())
        .map(|l| {
            let a: CVector = cm.rows.row(l).transpose();
            let a_conj = a.map(|z| z.conj());
            let v = a.kronecker(&a_conj) * c((df - 2.0) * scale, 0.0) + &diag;
            PureKet::new(v, dims)
        })
        .collect()
}

/// OD of the isotropic state: `L` twirled kets plus `|psi+>`.
///
/// Members with zero weight (the twirled kets at `F = 1`) are omitted.
pub fn od_isotropic(d: usize, fidelity: f64, m: u64) -> Result<WeightedEnsemble> {
    check_isotropic_od_range(d, fidelity)?;
    let fidelity = fidelity.min(1.0);
    let cm = coeff_matrix(d, m, None)?;
    let df = d as f64;
    let twirled_weight = df * df * (1.0 - fidelity) / ((df - 2.0).powi(2) * cm.len() as f64);
    let mut members = Vec::with_capacity(cm.len() + 1);
    if twirled_weight > 0.0 {
        members.extend(isotropic_twirled_kets(&cm)?.into_iter().map(|k| (twirled_weight, k)));
    }
    let w_plus = isotropic_plus_weight(d, fidelity);
    if w_plus > 0.0 {
        members.push((w_plus, max_entangled(d)?));
    }
    WeightedEnsemble::new(members)
}

/// Fixed mixing matrix of the Werner OD.
pub fn werner_u() -> [[crate::numlin::C64; 4]; 4] {
    let (h, n) = (c(0.5, 0.0), c(-0.5, 0.0));
    let i = c(0.0, 0.5);
    [[n, h, h, h], [h, n, h, h], [i, i, n, h], [i, i, h, n]]
}

fn werner_kets(d: usize, fidelity: f64) -> Result<Vec<PureKet>> {
    states::werner(d, fidelity)?;
    let f = fidelity.clamp(-1.0, 1.0);
    let df = d as f64;
    let dims = BipartiteDims::square(d)?;
    let u = werner_u();
    let coef = [
        ((f + 1.0) / (2.0 * df + 2.0)).sqrt(),
        ((f + 1.0) / (2.0 * df + 2.0)).sqrt(),
        ((df - 1.0) * (f + 1.0) / (2.0 * df + 2.0)).sqrt(),
        ((1.0 - f) / 2.0).sqrt(),
    ];
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut kets = Vec::with_capacity(2 * d * (d - 1));
    for i in 0..d {
        for j in 0..i {
            // |ii>, |jj>, (|ij> + |ji>)/sqrt2, (|ij> - |ji>)/sqrt2
            let mut basis_kets =
                [CVector::zeros(d * d), CVector::zeros(d * d), CVector::zeros(d * d), CVector::zeros(d * d)];
            basis_kets[0][dims.index(i, i)] = c(1.0, 0.0);
            basis_kets[1][dims.index(j, j)] = c(1.0, 0.0);
            basis_kets[2][dims.index(i, j)] = c(r2, 0.0);
            basis_kets[2][dims.index(j, i)] = c(r2, 0.0);
            basis_kets[3][dims.index(i, j)] = c(r2, 0.0);
            basis_kets[3][dims.index(j, i)] = c(-r2, 0.0);
            for row in &u {
                let mut v = CVector::zeros(d * d);
                for a in 0..4 {
                    v += &basis_kets[a] * (row[a] * c(2.0 * coef[a], 0.0));
                }
                kets.push(PureKet::new(v, dims)?);
            }
        }
    }
    Ok(kets)
}

/// OD of the Werner state: `2d(d-1)` equally weighted kets.
pub fn od_werner(d: usize, fidelity: f64) -> Result<WeightedEnsemble> {
    let kets = werner_kets(d, fidelity)?;
    let w = 1.0 / kets.len() as f64;
    WeightedEnsemble::new(kets.into_iter().map(|k| (w, k)).collect())
}

/// The OD claimed for a named family.
pub fn od_for(params: &FamilyParams) -> Result<WeightedEnsemble> {
    params.validate()?;
    match params {
        FamilyParams::McTwoQubit { p, theta } => od_mc_two_qubit(*p, *theta),
        FamilyParams::Sigma { q, p, x, y, z } => od_sigma(*q, *p, *x, *y, *z),
        FamilyParams::Lemma3Mc { p, coeffs, f } => od_lemma3(*p, coeffs, *f),
        FamilyParams::Isotropic { d, fidelity, m } => od_isotropic(*d, *fidelity, *m),
        FamilyParams::Werner { d, fidelity } => od_werner(*d, *fidelity),
        FamilyParams::SeparableTags { d } => {
            let tags = states::separable_tags(*d)?;
            let w = 1.0 / tags.len() as f64;
            WeightedEnsemble::new(tags.into_iter().map(|k| (w, k)).collect())
        }
    }
}

/// Outcome of checking a claimed OD against its target state.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// `||mix(e) - target||_F`.
    pub reconstruction_error: f64,
    pub average_entanglement: f64,
    pub claimed_eof: f64,
    /// `|average entanglement - claimed EOF|`.
    pub entanglement_error: f64,
    pub oracle: CertificationReport,
}

impl VerificationReport {
    pub fn reconstruction_ok(&self) -> bool {
        self.reconstruction_error <= RECONSTRUCTION_TOL
    }

    pub fn entanglement_ok(&self) -> bool {
        self.entanglement_error <= ENTANGLEMENT_TOL
    }

    pub fn passed(&self) -> bool {
        self.reconstruction_ok() && self.entanglement_ok() && self.oracle.passed
    }

    /// The oracle only produces upper bounds on the EOF: it can refute an
    /// optimality claim but never prove one.
    pub fn note(&self) -> &'static str {
        "oracle certification is one-sided: it refutes claims it can beat, it does not prove optimality"
    }
}

/// Checks reconstruction, average entanglement and oracle refutation for a
/// claimed OD.
pub fn verify_od(
    e: &WeightedEnsemble,
    target: &BipartiteDensity,
    claimed_eof: f64,
    cfg: &OracleConfig,
) -> Result<VerificationReport> {
    if e.dims() != target.dims() {
        return Err(Error::Shape(format!(
            "ensemble dims ({}, {}) differ from target dims ({}, {})",
            e.dims().a(),
            e.dims().b(),
            target.dims().a(),
            target.dims().b()
        )));
    }
    let reconstruction_error = crate::numlin::frob_dist(&e.mixed_matrix(), target.matrix())?;
    let average_entanglement = e.average_entanglement();
    let oracle = oracle::certify_not_below(target, claimed_eof, cfg)?;
    Ok(VerificationReport {
        reconstruction_error,
        average_entanglement,
        claimed_eof,
        entanglement_error: (average_entanglement - claimed_eof).abs(),
        oracle,
    })
}

/// Analytic EOF attached to a family's OD (delegates to [`entanglement`]).
pub fn claimed_eof(params: &FamilyParams) -> Result<f64> {
    entanglement::family_report(params).map(|r| r.eof)
}
