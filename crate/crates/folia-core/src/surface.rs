//! Combinatorial foliated-surface layer: Q-divisor intersection theory with
//! orbifold orders, index-theorem verification, Zariski decomposition,
//! contraction to nef models, numerical Kodaira dimension, and the component
//! classifier.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::rat::Rat;

/// Coarse curve topology; consumed, never derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Rational,
    Elliptic,
    Other,
}

impl CurveKind {
    /// Topological Euler characteristic, when determined by the flag.
    fn chi_top(self) -> Option<Rat> {
        match self {
            CurveKind::Rational => Some(Rat::from_int(2)),
            CurveKind::Elliptic => Some(Rat::zero()),
            CurveKind::Other => None,
        }
    }
}

/// Index data of one foliation singularity lying on a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityRecord {
    /// Point id, shared between the curves through the point.
    pub point: usize,
    pub z: Option<i64>,
    pub cs: Option<Rat>,
    pub tang: Option<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveData {
    pub id: usize,
    pub kind: CurveKind,
    pub invariant: bool,
    /// Orders of the orbifold points on the curve, each >= 2.
    pub orbifold_orders: Vec<u64>,
    pub singularities: Vec<SingularityRecord>,
    /// Ambient K_X degree, when known (enables the adjunction route).
    pub kx_degree: Option<Rat>,
}

impl CurveData {
    pub fn new(id: usize, kind: CurveKind, invariant: bool) -> Self {
        CurveData {
            id,
            kind,
            invariant,
            orbifold_orders: Vec::new(),
            singularities: Vec::new(),
            kx_degree: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    UnknownCurve(usize),
    DuplicateCurve(usize),
    MatrixSizeMismatch,
    MatrixNotSymmetric(usize, usize),
    NegativeOffDiagonal(usize, usize),
    BadOrbifoldOrder(usize),
    /// Neither route to the requested quantity has enough data.
    InsufficientData,
    /// Direct and adjunction chi_orb disagree.
    Inconsistent { direct: Rat, adjunction: Rat },
    MissingIndices(usize),
    NotInvariant(usize),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::UnknownCurve(id) => write!(f, "unknown curve id {id}"),
            ModelError::DuplicateCurve(id) => write!(f, "duplicate curve id {id}"),
            ModelError::MatrixSizeMismatch => write!(f, "intersection matrix size mismatch"),
            ModelError::MatrixNotSymmetric(i, j) => {
                write!(f, "intersection matrix not symmetric at ({i}, {j})")
            }
            ModelError::NegativeOffDiagonal(i, j) => {
                write!(f, "negative off-diagonal intersection at ({i}, {j})")
            }
            ModelError::BadOrbifoldOrder(id) => {
                write!(f, "orbifold order below 2 on curve {id}")
            }
            ModelError::InsufficientData => write!(f, "insufficient data"),
            ModelError::Inconsistent { direct, adjunction } => write!(
                f,
                "model inconsistency: direct chi_orb {direct} vs adjunction {adjunction}"
            ),
            ModelError::MissingIndices(id) => write!(f, "missing index records on curve {id}"),
            ModelError::NotInvariant(id) => write!(f, "curve {id} is not invariant"),
        }
    }
}

/// A configuration of curves with its rational intersection matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    curves: Vec<CurveData>,
    /// Symmetric matrix indexed by curve position.
    matrix: Vec<Vec<Rat>>,
}

impl SurfaceModel {
    pub fn new(curves: Vec<CurveData>, matrix: Vec<Vec<Rat>>) -> Result<Self, ModelError> {
        let n = curves.len();
        let mut seen = BTreeSet::new();
        for c in &curves {
            if !seen.insert(c.id) {
                return Err(ModelError::DuplicateCurve(c.id));
            }
            if c.orbifold_orders.iter().any(|&k| k < 2) {
                return Err(ModelError::BadOrbifoldOrder(c.id));
            }
        }
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(ModelError::MatrixSizeMismatch);
        }
        for i in 0..n {
            for j in 0..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(ModelError::MatrixNotSymmetric(curves[i].id, curves[j].id));
                }
                if i != j && matrix[i][j].is_negative() {
                    return Err(ModelError::NegativeOffDiagonal(curves[i].id, curves[j].id));
                }
            }
        }
        Ok(SurfaceModel { curves, matrix })
    }

    pub fn curves(&self) -> &[CurveData] {
        &self.curves
    }

    pub fn curve(&self, id: usize) -> Result<&CurveData, ModelError> {
        self.curves
            .iter()
            .find(|c| c.id == id)
            .ok_or(ModelError::UnknownCurve(id))
    }

    fn pos(&self, id: usize) -> Result<usize, ModelError> {
        self.curves
            .iter()
            .position(|c| c.id == id)
            .ok_or(ModelError::UnknownCurve(id))
    }

    pub fn pairing(&self, a: usize, b: usize) -> Result<Rat, ModelError> {
        let (i, j) = (self.pos(a)?, self.pos(b)?);
        Ok(self.matrix[i][j].clone())
    }

    pub fn self_intersection(&self, id: usize) -> Result<Rat, ModelError> {
        self.pairing(id, id)
    }

    /// Curve ids adjacent to `id` (positive pairing).
    pub fn neighbors(&self, id: usize) -> Result<Vec<usize>, ModelError> {
        let i = self.pos(id)?;
        Ok(self
            .curves
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && self.matrix[i][j].is_positive())
            .map(|(_, c)| c.id)
            .collect())
    }
}

/// A Q-divisor supported on model curves; zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QDivisor {
    coeffs: BTreeMap<usize, Rat>,
}

impl QDivisor {
    pub fn zero() -> Self {
        QDivisor::default()
    }

    pub fn curve(id: usize) -> Self {
        Self::from_coeffs([(id, Rat::one())])
    }

    pub fn from_coeffs<I: IntoIterator<Item = (usize, Rat)>>(it: I) -> Self {
        let mut d = QDivisor::default();
        for (id, c) in it {
            d.set(id, c);
        }
        d
    }

    pub fn set(&mut self, id: usize, c: Rat) {
        if c.is_zero() {
            self.coeffs.remove(&id);
        } else {
            self.coeffs.insert(id, c);
        }
    }

    pub fn coeff(&self, id: usize) -> Rat {
        self.coeffs.get(&id).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().map(|(&id, c)| (id, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| c.is_positive())
    }

    pub fn add(&self, other: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (id, c) in other.iter() {
            out.set(id, &out.coeff(id) + c);
        }
        out
    }

    pub fn sub(&self, other: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (id, c) in other.iter() {
            out.set(id, &out.coeff(id) - c);
        }
        out
    }
}

/// Bilinear intersection pairing of two Q-divisors.
pub fn intersect(d1: &QDivisor, d2: &QDivisor, model: &SurfaceModel) -> Result<Rat, ModelError> {
    let mut acc = Rat::zero();
    for (a, ca) in d1.iter() {
        for (b, cb) in d2.iter() {
            acc += &(ca * cb) * &model.pairing(a, b)?;
        }
    }
    Ok(acc)
}

/// Both routes to the orbifold Euler characteristic of a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiOrbReport {
    /// chi_top + sum (1 - k)/k, when the curve topology is flagged.
    pub direct: Option<Rat>,
    /// -K_X.C - C.C, when the ambient degree is recorded.
    pub adjunction: Option<Rat>,
}

pub fn chi_orb_report(model: &SurfaceModel, id: usize) -> Result<ChiOrbReport, ModelError> {
    let c = model.curve(id)?;
    let direct = c.kind.chi_top().map(|chi| {
        c.orbifold_orders.iter().fold(chi, |acc, &k| {
            &acc + &Rat::new(1 - k as i64, k as i64)
        })
    });
    let adjunction = match &c.kx_degree {
        Some(kx) => Some(-&(kx + &model.self_intersection(id)?)),
        None => None,
    };
    Ok(ChiOrbReport { direct, adjunction })
}

/// Orbifold Euler characteristic; errors on a direct/adjunction mismatch.
pub fn chi_orb(model: &SurfaceModel, id: usize) -> Result<Rat, ModelError> {
    let r = chi_orb_report(model, id)?;
    match (r.direct, r.adjunction) {
        (Some(d), Some(a)) if d != a => Err(ModelError::Inconsistent {
            direct: d,
            adjunction: a,
        }),
        (Some(d), _) => Ok(d),
        (None, Some(a)) => Ok(a),
        (None, None) => Err(ModelError::InsufficientData),
    }
}

/// K_F degree on a curve plus the transversality report for non-invariant
/// curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KfDegreeReport {
    pub value: Rat,
    /// `(K_F + C).C` for non-invariant curves; always >= 0, zero exactly in
    /// the everywhere-transverse case.
    pub positivity: Option<Rat>,
}

pub fn kf_degree_report(model: &SurfaceModel, id: usize) -> Result<KfDegreeReport, ModelError> {
    let c = model.curve(id)?;
    if c.invariant {
        let chi = chi_orb(model, id)?;
        let mut zsum = Rat::zero();
        for s in &c.singularities {
            let z = s.z.ok_or(ModelError::MissingIndices(id))?;
            zsum += Rat::from_int(z);
        }
        Ok(KfDegreeReport {
            value: &zsum - &chi,
            positivity: None,
        })
    } else {
        let mut tsum = Rat::zero();
        for s in &c.singularities {
            let t = s.tang.clone().ok_or(ModelError::MissingIndices(id))?;
            tsum += t;
        }
        let cc = model.self_intersection(id)?;
        Ok(KfDegreeReport {
            value: &tsum - &cc,
            // (K_F + C).C = tang sum; equality with 0 iff transverse.
            positivity: Some(tsum),
        })
    }
}

pub fn kf_degree(model: &SurfaceModel, id: usize) -> Result<Rat, ModelError> {
    Ok(kf_degree_report(model, id)?.value)
}

/// Exact verdict of the index-sum check `C.C = sum CS` on an invariant
/// curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsVerdict {
    pub self_intersection: Rat,
    pub cs_sum: Rat,
    /// `cs_sum - self_intersection`; zero exactly on pass.
    pub residual: Rat,
}

impl CsVerdict {
    pub fn pass(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn verify_camacho_sad(model: &SurfaceModel, id: usize) -> Result<CsVerdict, ModelError> {
    let c = model.curve(id)?;
    if !c.invariant {
        return Err(ModelError::NotInvariant(id));
    }
    let mut sum = Rat::zero();
    for s in &c.singularities {
        let cs = s.cs.clone().ok_or(ModelError::MissingIndices(id))?;
        sum += cs;
    }
    let cc = model.self_intersection(id)?;
    Ok(CsVerdict {
        residual: &sum - &cc,
        self_intersection: cc,
        cs_sum: sum,
    })
}

/// Model-relative nefness: `L.C >= 0` for every curve of the model. A
/// failure carries a witness curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefVerdict {
    pub nef: bool,
    pub witness: Option<usize>,
}

pub fn is_nef(l: &QDivisor, model: &SurfaceModel) -> Result<NefVerdict, ModelError> {
    for c in model.curves() {
        if intersect(l, &QDivisor::curve(c.id), model)?.is_negative() {
            return Ok(NefVerdict {
                nef: false,
                witness: Some(c.id),
            });
        }
    }
    Ok(NefVerdict {
        nef: true,
        witness: None,
    })
}

/// Solved-system certificate attached to a Zariski decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiCertificate {
    /// Support of N, ascending curve ids.
    pub support: Vec<usize>,
    /// Gram matrix of the support.
    pub gram: Vec<Vec<Rat>>,
    /// Leading principal minors of the Gram matrix; signs alternate starting
    /// negative for a negative-definite matrix.
    pub leading_minors: Vec<Rat>,
    /// Orthogonality residuals `P.C_j`, all zero.
    pub residuals: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition {
    pub positive: QDivisor,
    pub negative: QDivisor,
    pub certificate: ZariskiCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZariskiError {
    /// The support solve produced a non-effective N or a Gram matrix that is
    /// not negative definite.
    NotDecomposable,
    Model(ModelError),
}

impl fmt::Display for ZariskiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZariskiError::NotDecomposable => {
                write!(f, "divisor is not pseudoeffective on the model")
            }
            ZariskiError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl From<ModelError> for ZariskiError {
    fn from(e: ModelError) -> Self {
        ZariskiError::Model(e)
    }
}

/// Zariski decomposition `L = P + N` by the standard support-growing
/// fixpoint.
pub fn zariski_decompose(
    l: &QDivisor,
    model: &SurfaceModel,
) -> Result<ZariskiDecomposition, ZariskiError> {
    let mut support: BTreeSet<usize> = BTreeSet::new();
    for c in model.curves() {
        if intersect(l, &QDivisor::curve(c.id), model)?.is_negative() {
            support.insert(c.id);
        }
    }
    loop {
        let ids: Vec<usize> = support.iter().copied().collect();
        let n = ids.len();
        let mut gram = alloc::vec![alloc::vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = model.pairing(ids[i], ids[j])?;
            }
        }
        let minors = leading_principal_minors(&gram);
        if !negative_definite(&minors) {
            return Err(ZariskiError::NotDecomposable);
        }
        // Solve N.C_j = L.C_j on the support.
        let mut rhs = Vec::with_capacity(n);
        for &id in &ids {
            rhs.push(intersect(l, &QDivisor::curve(id), model)?);
        }
        let x = solve_linear(&gram, &rhs).ok_or(ZariskiError::NotDecomposable)?;
        if x.iter().any(|c| c.is_negative()) {
            return Err(ZariskiError::NotDecomposable);
        }
        let negative = QDivisor::from_coeffs(ids.iter().copied().zip(x.iter().cloned()));
        let positive = l.sub(&negative);
        // Grow the support while P pairs negatively with some curve,
        // ascending id.
        let mut grew = false;
        for c in model.curves() {
            if support.contains(&c.id) {
                continue;
            }
            if intersect(&positive, &QDivisor::curve(c.id), model)?.is_negative() {
                support.insert(c.id);
                grew = true;
                break;
            }
        }
        if grew {
            continue;
        }
        let mut residuals = Vec::with_capacity(n);
        for &id in &ids {
            residuals.push(intersect(&positive, &QDivisor::curve(id), model)?);
        }
        debug_assert!(residuals.iter().all(Rat::is_zero));
        return Ok(ZariskiDecomposition {
            positive,
            negative,
            certificate: ZariskiCertificate {
                support: ids,
                gram,
                leading_minors: minors,
                residuals,
            },
        });
    }
}

/// Determinants of the leading principal submatrices.
pub fn leading_principal_minors(m: &[Vec<Rat>]) -> Vec<Rat> {
    (1..=m.len()).map(|k| determinant(m, k)).collect()
}

/// Negative definite iff the k-th leading minor has sign (-1)^k.
pub fn negative_definite(minors: &[Rat]) -> bool {
    minors.iter().enumerate().all(|(i, d)| {
        if i % 2 == 0 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}

fn determinant(m: &[Vec<Rat>], k: usize) -> Rat {
    let mut a: Vec<Vec<Rat>> = (0..k).map(|i| m[i][..k].to_vec()).collect();
    let mut det = Rat::one();
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -&det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].recip();
        for r in col + 1..k {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..k {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Solve `A x = b` over the rationals; `None` for singular `A`.
pub fn solve_linear(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.iter().cloned().collect();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        rhs.swap(p, col);
        let inv = m[col][col].recip();
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= t;
            }
            let t = &f * &rhs[col];
            rhs[r] -= t;
        }
    }
    Some(
        (0..n)
            .map(|i| &rhs[i] / &m[i][i])
            .collect(),
    )
}

/// First violated condition of the contraction profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileViolation {
    NotInvariant,
    NotRational,
    TooManyOrbifoldPoints,
    WrongSingularityCount(usize),
    SingularityNotZOne,
    KfDegreeNotNegative(Rat),
    SelfIntersectionNotMinusLOverK(Rat),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContractError {
    NotContractible(ProfileViolation),
    Model(ModelError),
}

impl From<ModelError> for ContractError {
    fn from(e: ModelError) -> Self {
        ContractError::Model(e)
    }
}

impl fmt::Display for ContractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContractError::NotContractible(v) => write!(f, "curve is not contractible: {v:?}"),
            ContractError::Model(e) => write!(f, "{e}"),
        }
    }
}

/// Contract a negative invariant curve matching the `k z dz - l w dw`
/// profile: one orbifold point of order k (or none, k = 1), one singularity
/// with Z = 1, K_F degree < 0, self-intersection -l/k with gcd(l, k) = 1.
/// Produces an orbifold point of order l (regular when l = 1) on the curves
/// that met it and applies the correction `D1.D2 += (D1.C)(D2.C) k/l`.
pub fn contract_negative_curve(
    model: &SurfaceModel,
    id: usize,
) -> Result<SurfaceModel, ContractError> {
    use ProfileViolation::*;
    let c = model.curve(id)?.clone();
    if !c.invariant {
        return Err(ContractError::NotContractible(NotInvariant));
    }
    if c.kind != CurveKind::Rational {
        return Err(ContractError::NotContractible(NotRational));
    }
    if c.orbifold_orders.len() > 1 {
        return Err(ContractError::NotContractible(TooManyOrbifoldPoints));
    }
    let k = c.orbifold_orders.first().copied().unwrap_or(1) as i64;
    if c.singularities.len() != 1 {
        return Err(ContractError::NotContractible(WrongSingularityCount(
            c.singularities.len(),
        )));
    }
    let sing = &c.singularities[0];
    if sing.z != Some(1) {
        return Err(ContractError::NotContractible(SingularityNotZOne));
    }
    let kf = kf_degree(model, id)?;
    if !kf.is_negative() {
        return Err(ContractError::NotContractible(KfDegreeNotNegative(kf)));
    }
    let cc = model.self_intersection(id)?;
    // C.C = -l/k exactly, with l a positive integer prime to k.
    let l = match (-&(&cc * &Rat::from_int(k))).to_integer() {
        Some(l) if l > 0 && gcd_i64(l, k) == 1 => l,
        _ => {
            return Err(ContractError::NotContractible(
                SelfIntersectionNotMinusLOverK(cc),
            ))
        }
    };

    let ci = model.pos(id)?;
    let factor = Rat::new(k, l);
    let mut curves = Vec::new();
    let mut keep = Vec::new();
    for (j, d) in model.curves.iter().enumerate() {
        if j == ci {
            continue;
        }
        keep.push(j);
        let mut d = d.clone();
        if model.matrix[j][ci].is_positive() {
            // D passes through the image point.
            if l > 1 {
                d.orbifold_orders.push(l as u64);
                d.orbifold_orders.sort();
            }
            // The contracted singularity disappears from the foliation when
            // the image point is regular.
            if l == 1 {
                d.singularities.retain(|s| s.point != sing.point);
            }
        }
        curves.push(d);
    }
    let mut matrix = alloc::vec![alloc::vec![Rat::zero(); keep.len()]; keep.len()];
    for (a, &ja) in keep.iter().enumerate() {
        for (b, &jb) in keep.iter().enumerate() {
            matrix[a][b] = &model.matrix[ja][jb]
                + &(&(&model.matrix[ja][ci] * &model.matrix[jb][ci]) * &factor);
        }
    }
    SurfaceModel::new(curves, matrix).map_err(ContractError::Model)
}

/// Insert an exceptional curve meeting the listed curves with the given
/// multiplicities: the inverse of contracting a (k, l) = (1, 1) curve.
pub fn blow_up_point(
    model: &SurfaceModel,
    incidences: &[(usize, Rat)],
    new_curve: CurveData,
) -> Result<SurfaceModel, ModelError> {
    let n = model.curves.len();
    let mut mult = alloc::vec![Rat::zero(); n];
    for (id, m) in incidences {
        mult[model.pos(*id)?] = m.clone();
    }
    let mut curves = model.curves.clone();
    let mut matrix = alloc::vec![alloc::vec![Rat::zero(); n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            matrix[i][j] = &model.matrix[i][j] - &(&mult[i] * &mult[j]);
        }
    }
    for (i, m) in mult.iter().enumerate() {
        matrix[i][n] = m.clone();
        matrix[n][i] = m.clone();
    }
    matrix[n][n] = Rat::from_int(-1);
    curves.push(new_curve);
    SurfaceModel::new(curves, matrix)
}

/// Outcome of driving the model to its nef fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefModelOutcome {
    pub model: SurfaceModel,
    pub contracted: Vec<usize>,
    /// Curves with negative K_F degree that violate the contraction profile
    /// (a model inconsistency).
    pub inconsistencies: Vec<(usize, ProfileViolation)>,
}

/// Repeatedly contract eligible curves of negative K_F degree, ascending
/// id, until none remain.
pub fn nef_model(model: &SurfaceModel) -> Result<NefModelOutcome, ModelError> {
    let mut current = model.clone();
    let mut contracted = Vec::new();
    let mut inconsistencies: Vec<(usize, ProfileViolation)> = Vec::new();
    'outer: loop {
        let skip: BTreeSet<usize> = inconsistencies.iter().map(|(id, _)| *id).collect();
        for c in current.curves().to_vec() {
            if skip.contains(&c.id) || !kf_degree(&current, c.id)?.is_negative() {
                continue;
            }
            match contract_negative_curve(&current, c.id) {
                Ok(next) => {
                    current = next;
                    contracted.push(c.id);
                    continue 'outer;
                }
                Err(ContractError::NotContractible(v)) => {
                    inconsistencies.push((c.id, v));
                    continue 'outer;
                }
                Err(ContractError::Model(e)) => return Err(e),
            }
        }
        return Ok(NefModelOutcome {
            model: current,
            contracted,
            inconsistencies,
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KodairaError {
    NotNef(Option<usize>),
    Model(ModelError),
}

impl From<ModelError> for KodairaError {
    fn from(e: ModelError) -> Self {
        KodairaError::Model(e)
    }
}

/// Numerical Kodaira dimension of a nef divisor: 2 when its square is
/// positive, 1 when the square vanishes but some pairing is positive, 0 when
/// numerically trivial.
pub fn numerical_kodaira(kf: &QDivisor, model: &SurfaceModel) -> Result<u8, KodairaError> {
    let v = is_nef(kf, model)?;
    if !v.nef {
        return Err(KodairaError::NotNef(v.witness));
    }
    let square = intersect(kf, kf, model)?;
    if square.is_positive() {
        return Ok(2);
    }
    if square.is_negative() {
        // Cannot happen for a divisor nef against its own support curves
        // unless coefficients leave the modeled cone.
        return Err(KodairaError::NotNef(None));
    }
    for c in model.curves() {
        if intersect(kf, &QDivisor::curve(c.id), model)?.is_positive() {
            return Ok(1);
        }
    }
    Ok(0)
}

/// The five structural component profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentCase {
    /// A smooth elliptic curve, disjoint from Sing(F), no orbifold points.
    A,
    /// A cycle of smooth rational curves with the singularities exactly at
    /// the nodes.
    B,
    /// One rational curve with three orbifold points of orders (k1, k2, k3),
    /// 1/k1 + 1/k2 + 1/k3 = 1.
    C,
    /// One rational curve with four orbifold points of order 2.
    D,
    /// A chain of rational curves whose two extreme curves carry two
    /// orbifold points of order 2 each.
    E,
}

/// Match a connected component of invariant curves against the five
/// structural profiles.
pub fn classify_component(
    component: &[usize],
    model: &SurfaceModel,
) -> Result<Option<ComponentCase>, ModelError> {
    let ids: BTreeSet<usize> = component.iter().copied().collect();
    if ids.is_empty() {
        return Ok(None);
    }
    for &id in &ids {
        model.curve(id)?;
    }
    if !is_connected(&ids, model)? {
        return Ok(None);
    }
    let all_invariant = ids.iter().all(|&id| model.curve(id).unwrap().invariant);
    if !all_invariant {
        return Ok(None);
    }

    if ids.len() == 1 {
        let id = *ids.first().unwrap();
        let c = model.curve(id)?;
        let clean = c.singularities.is_empty();
        match c.kind {
            CurveKind::Elliptic => {
                if c.orbifold_orders.is_empty() && clean {
                    return Ok(Some(ComponentCase::A));
                }
            }
            CurveKind::Rational => {
                let mut orders = c.orbifold_orders.clone();
                orders.sort();
                if orders.len() == 3 {
                    let sum: Rat = orders
                        .iter()
                        .map(|&k| Rat::new(1, k as i64))
                        .sum();
                    if sum == Rat::one() {
                        return Ok(Some(ComponentCase::C));
                    }
                } else if orders == [2, 2, 2, 2] {
                    return Ok(Some(ComponentCase::D));
                }
            }
            CurveKind::Other => {}
        }
        return Ok(None);
    }

    // Multi-curve shapes require every member rational.
    if ids
        .iter()
        .any(|&id| model.curve(id).unwrap().kind != CurveKind::Rational)
    {
        return Ok(None);
    }

    // Total intersection with the other component members, and neighbor
    // count, per curve.
    let mut degree: BTreeMap<usize, Rat> = BTreeMap::new();
    for &id in &ids {
        let mut d = Rat::zero();
        for &other in &ids {
            if other != id {
                d += model.pairing(id, other)?;
            }
        }
        degree.insert(id, d);
    }

    let two = Rat::from_int(2);
    let is_cycle = degree.values().all(|d| *d == two);
    if is_cycle {
        // Case (b): singularities exactly at the nodes — each curve carries
        // as many singularity records as intersections with its neighbors,
        // no orbifold points.
        let ok = ids.iter().all(|&id| {
            let c = model.curve(id).unwrap();
            c.orbifold_orders.is_empty()
                && Rat::from_int(c.singularities.len() as i64) == degree[&id]
        });
        return Ok(if ok { Some(ComponentCase::B) } else { None });
    }

    // Chain: exactly two extremes with degree 1, the rest degree 2.
    let ones = degree.values().filter(|d| **d == Rat::one()).count();
    let twos = degree.values().filter(|d| **d == two).count();
    if ones == 2 && ones + twos == ids.len() {
        let ok = ids.iter().all(|&id| {
            let c = model.curve(id).unwrap();
            if degree[&id] == Rat::one() {
                c.orbifold_orders == [2, 2]
            } else {
                c.orbifold_orders.is_empty()
            }
        });
        return Ok(if ok { Some(ComponentCase::E) } else { None });
    }
    Ok(None)
}

fn is_connected(ids: &BTreeSet<usize>, model: &SurfaceModel) -> Result<bool, ModelError> {
    let start = *ids.first().unwrap();
    let mut seen = BTreeSet::new();
    let mut stack = alloc::vec![start];
    while let Some(id) = stack.pop() {
        if !seen.insert(id) {
            continue;
        }
        for n in model.neighbors(id)? {
            if ids.contains(&n) && !seen.contains(&n) {
                stack.push(n);
            }
        }
    }
    Ok(seen.len() == ids.len())
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
