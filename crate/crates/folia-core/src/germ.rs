//! Local foliation germs: the vector field / 1-form pair, singular locus,
//! classification of singularities, and the tang, Z and Camacho–Sad indices.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::branch::{Branch, BranchAxis, BranchError};
use crate::algebra::multiplicity::{local_intersection_multiplicity, Multiplicity};
use crate::algebra::rat::Rat;
use crate::algebra::series::{eval_bipoly, series_residue, SeriesError, TruncSeries};
use crate::algebra::unipoly::UniPoly;

/// Default hard cap on adaptive series truncation.
pub const DEFAULT_TRUNCATION_CAP: usize = 128;

/// A foliation germ given by the vector field `v = P d/dz + Q d/dw`, with
/// dual 1-form `omega = A dz + B dw`, `(A, B) = (-Q, P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoliationGerm {
    p: BiPoly,
    q: BiPoly,
    base: (Rat, Rat),
    removed_factor: BiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermError {
    /// Both components are identically zero.
    ZeroVectorField,
    /// The germ does not vanish at its base point.
    NotSingularHere,
}

impl fmt::Display for GermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GermError::ZeroVectorField => write!(f, "vector field is identically zero"),
            GermError::NotSingularHere => write!(f, "germ is not singular at its base point"),
        }
    }
}

impl FoliationGerm {
    /// Germ based at the origin. Any common polynomial factor of `P` and `Q`
    /// is divided out (isolated zeroes) and recorded.
    pub fn new(p: BiPoly, q: BiPoly) -> Result<Self, GermError> {
        Self::with_base(p, q, (Rat::zero(), Rat::zero()))
    }

    pub fn with_base(p: BiPoly, q: BiPoly, base: (Rat, Rat)) -> Result<Self, GermError> {
        if p.is_zero() && q.is_zero() {
            return Err(GermError::ZeroVectorField);
        }
        let g = p.gcd(&q);
        let (p, q, removed) = if g.is_constant() {
            (p, q, BiPoly::one())
        } else {
            (
                p.div_exact(&g).expect("gcd divides"),
                q.div_exact(&g).expect("gcd divides"),
                g,
            )
        };
        Ok(FoliationGerm {
            p,
            q,
            base,
            removed_factor: removed,
        })
    }

    pub fn p(&self) -> &BiPoly {
        &self.p
    }

    pub fn q(&self) -> &BiPoly {
        &self.q
    }

    pub fn base(&self) -> &(Rat, Rat) {
        &self.base
    }

    /// The common factor divided out at construction (1 if none).
    pub fn removed_factor(&self) -> &BiPoly {
        &self.removed_factor
    }

    /// Dual 1-form coefficients `(A, B) = (-Q, P)`.
    pub fn one_form(&self) -> (BiPoly, BiPoly) {
        (-&self.q, self.p.clone())
    }

    /// The same germ with the base point moved into the coordinates
    /// (components recentred, base = origin).
    pub fn recentred(&self) -> FoliationGerm {
        FoliationGerm {
            p: self.p.translate(&self.base.0, &self.base.1),
            q: self.q.translate(&self.base.0, &self.base.1),
            base: (Rat::zero(), Rat::zero()),
            removed_factor: self.removed_factor.clone(),
        }
    }

    /// The germ of the same foliation based at another point of the chart.
    pub fn at_point(&self, pt: (Rat, Rat)) -> FoliationGerm {
        FoliationGerm {
            p: self.p.clone(),
            q: self.q.clone(),
            base: pt,
            removed_factor: self.removed_factor.clone(),
        }
    }

    pub fn vanishes_at(&self, pt: &(Rat, Rat)) -> bool {
        self.p.eval(&pt.0, &pt.1).is_zero() && self.q.eval(&pt.0, &pt.1).is_zero()
    }

    pub fn is_singular_at_base(&self) -> bool {
        self.vanishes_at(&self.base.clone())
    }

    /// Jacobian of `(P, Q)` at the base point, rows `(Pz, Pw)`, `(Qz, Qw)`.
    pub fn linear_part(&self) -> [[Rat; 2]; 2] {
        let (z, w) = (&self.base.0, &self.base.1);
        [
            [self.p.partial_z().eval(z, w), self.p.partial_w().eval(z, w)],
            [self.q.partial_z().eval(z, w), self.q.partial_w().eval(z, w)],
        ]
    }

    /// Lie derivative `v(f) = P df/dz + Q df/dw`.
    pub fn lie_derivative(&self, f: &BiPoly) -> BiPoly {
        &(&self.p * &f.partial_z()) + &(&self.q * &f.partial_w())
    }
}

impl fmt::Display for FoliationGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*d/dz + ({})*d/dw", self.p, self.q)
    }
}

/// Eigenvalue-ratio description of a nondegenerate reduced singularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EigenRatio {
    /// Rational ratio, represented by the root of modulus >= 1 of the pair
    /// `{lambda, 1/lambda}`.
    Rational(Rat),
    /// Ratio not rational; certified by `t^2/d` whose associated discriminant
    /// `s(s-4)` is not a rational square.
    Irrational { trace_sq_over_det: Rat },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonReducedReason {
    /// Eigenvalue ratio a positive rational (represented with modulus >= 1).
    PositiveRationalRatio(Rat),
    /// Nonzero nilpotent linear part.
    Nilpotent,
    ZeroLinearPart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingClass {
    NonSingular,
    ReducedNonDegenerate(EigenRatio),
    ReducedSaddleNode { multiplicity: usize },
    NonReduced(NonReducedReason),
}

impl SingClass {
    pub fn is_reduced(&self) -> bool {
        matches!(
            self,
            SingClass::ReducedNonDegenerate(_) | SingClass::ReducedSaddleNode { .. }
        )
    }
}

impl fmt::Display for SingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingClass::NonSingular => write!(f, "nonsingular"),
            SingClass::ReducedNonDegenerate(EigenRatio::Rational(l)) => {
                write!(f, "reduced nondegenerate (ratio {l})")
            }
            SingClass::ReducedNonDegenerate(EigenRatio::Irrational { trace_sq_over_det }) => {
                write!(
                    f,
                    "reduced nondegenerate (irrational ratio, t^2/d = {trace_sq_over_det})"
                )
            }
            SingClass::ReducedSaddleNode { multiplicity } => {
                write!(f, "saddle-node (multiplicity {multiplicity})")
            }
            SingClass::NonReduced(NonReducedReason::PositiveRationalRatio(l)) => {
                write!(f, "non-reduced (ratio {l} is a positive rational)")
            }
            SingClass::NonReduced(NonReducedReason::Nilpotent) => {
                write!(f, "non-reduced (nilpotent linear part)")
            }
            SingClass::NonReduced(NonReducedReason::ZeroLinearPart) => {
                write!(f, "non-reduced (zero linear part)")
            }
        }
    }
}

/// Classify the point `germ.base()`; `NonSingular` when the germ does not
/// vanish there.
pub fn classify_at(germ: &FoliationGerm) -> SingClass {
    if !germ.is_singular_at_base() {
        return SingClass::NonSingular;
    }
    let j = germ.linear_part();
    let t = &j[0][0] + &j[1][1];
    let d = &(&j[0][0] * &j[1][1]) - &(&j[0][1] * &j[1][0]);
    if !d.is_zero() {
        let s = &(&t * &t) / &d;
        let disc = &s * &(&s - &Rat::from_int(4));
        match disc.sqrt_exact() {
            Some(r) => {
                let half = Rat::new(1, 2);
                let sm2 = &s - &Rat::from_int(2);
                let l1 = &(&sm2 + &r) * &half;
                let l2 = &(&sm2 - &r) * &half;
                let rep = if l1.abs() >= l2.abs() { l1 } else { l2 };
                if rep.is_positive() {
                    SingClass::NonReduced(NonReducedReason::PositiveRationalRatio(rep))
                } else {
                    SingClass::ReducedNonDegenerate(EigenRatio::Rational(rep))
                }
            }
            None => SingClass::ReducedNonDegenerate(EigenRatio::Irrational {
                trace_sq_over_det: s,
            }),
        }
    } else if !t.is_zero() {
        let mu = local_intersection_multiplicity(&germ.p, &germ.q, germ.base());
        match mu {
            Multiplicity::Finite(m) if m >= 2 => SingClass::ReducedSaddleNode {
                multiplicity: m - 1,
            },
            // Milnor number 1 with a zero determinant cannot occur; treat
            // defensively as nonreduced rather than panic.
            _ => SingClass::NonReduced(NonReducedReason::Nilpotent),
        }
    } else if j.iter().flatten().all(Rat::is_zero) {
        SingClass::NonReduced(NonReducedReason::ZeroLinearPart)
    } else {
        SingClass::NonReduced(NonReducedReason::Nilpotent)
    }
}

/// Classification of a singular germ; errors when the base point is not
/// singular.
pub fn classify_singularity(germ: &FoliationGerm) -> Result<SingClass, GermError> {
    if !germ.is_singular_at_base() {
        return Err(GermError::NotSingularHere);
    }
    Ok(classify_at(germ))
}

/// Residual eliminant factor whose roots are not rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidualFactor {
    /// Factor of the z-eliminant.
    InZ(UniPoly),
    /// Factor in w over a fixed rational abscissa.
    InWAt(Rat, UniPoly),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SingularLocus {
    /// Common zeroes with both coordinates rational, lexicographically sorted.
    pub points: Vec<(Rat, Rat)>,
    /// Eliminant factors accounting for zeroes in non-rational residue fields.
    pub residual: Vec<ResidualFactor>,
}

/// All singular points of the polynomial foliation on the chart.
pub fn singular_locus(germ: &FoliationGerm) -> SingularLocus {
    let mut out = SingularLocus::default();
    let p = &germ.p;
    let q = &germ.q;
    if p.is_constant() && q.is_constant() {
        return out;
    }
    let r = p.resultant_w(q);
    if r.is_zero() {
        // Coprime generators cannot share a curve; report the degenerate
        // eliminant rather than guessing.
        out.residual.push(ResidualFactor::InZ(UniPoly::zero()));
        return out;
    }
    let (mut zroots, zrest) = r.rational_roots();
    zroots.dedup();
    if !zrest.is_constant() {
        out.residual.push(ResidualFactor::InZ(zrest));
    }
    for z0 in zroots {
        let pu = restrict_at_z(p, &z0);
        let qu = restrict_at_z(q, &z0);
        let g = if pu.is_zero() {
            qu
        } else if qu.is_zero() {
            pu
        } else {
            pu.gcd(&qu)
        };
        if g.is_zero() {
            continue;
        }
        let (mut wroots, wrest) = g.rational_roots();
        wroots.dedup();
        if !wrest.is_constant() {
            out.residual.push(ResidualFactor::InWAt(z0.clone(), wrest));
        }
        for w0 in wroots {
            out.points.push((z0.clone(), w0));
        }
    }
    out.points.sort();
    out.points.dedup();
    out
}

/// `f(z0, w)` as a univariate polynomial in `w`.
fn restrict_at_z(f: &BiPoly, z0: &Rat) -> UniPoly {
    let rows = f.as_uni_in_w();
    UniPoly::from_coeffs(rows.iter().map(|c| c.eval(z0)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TangError {
    /// A component of the curve through the point is invariant; carries the
    /// offending factor.
    CurveIsInvariant(BiPoly),
    /// Orbifold order must be positive.
    ZeroOrbifoldOrder,
}

impl fmt::Display for TangError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangError::CurveIsInvariant(g) => write!(f, "curve has an invariant factor: {g}"),
            TangError::ZeroOrbifoldOrder => write!(f, "orbifold order must be positive"),
        }
    }
}

/// Tangency index of the foliation with the non-invariant curve `{f = 0}`
/// at `p`, divided by the orbifold order `k`.
pub fn tang_index(
    germ: &FoliationGerm,
    f: &BiPoly,
    p: &(Rat, Rat),
    orbifold_order: u64,
) -> Result<Rat, TangError> {
    if orbifold_order == 0 {
        return Err(TangError::ZeroOrbifoldOrder);
    }
    let vf = germ.lie_derivative(f);
    match local_intersection_multiplicity(f, &vf, p) {
        Multiplicity::Finite(m) => {
            Ok(Rat::from_int(m as i64) / Rat::from_int(orbifold_order as i64))
        }
        Multiplicity::Infinite => {
            let g = f.gcd(&vf);
            Err(TangError::CurveIsInvariant(g))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexError {
    /// The branch is not invariant by the germ.
    BranchNotInvariant,
    /// Adaptive re-expansion hit the hard truncation cap.
    InsufficientTruncation,
    /// The branch base point differs from the germ base point.
    MismatchedBasePoint,
    Branch(BranchError),
}

impl fmt::Display for IndexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexError::BranchNotInvariant => write!(f, "branch is not invariant"),
            IndexError::InsufficientTruncation => {
                write!(f, "truncation cap reached before the result was certified")
            }
            IndexError::MismatchedBasePoint => {
                write!(f, "branch and germ are based at different points")
            }
            IndexError::Branch(e) => write!(f, "branch error: {e}"),
        }
    }
}

impl From<BranchError> for IndexError {
    fn from(e: BranchError) -> Self {
        IndexError::Branch(e)
    }
}

/// Pullback of the dual 1-form along the branch parametrization, in the
/// recentred coordinates: identically zero iff the branch is invariant.
fn omega_pullback(germ: &FoliationGerm, branch: &Branch) -> TruncSeries {
    let g = germ.recentred();
    let (a, b) = g.one_form();
    let phi = branch.series().clone();
    let dphi = phi.derivative();
    let id = TruncSeries::from_unipoly(&UniPoly::identity());
    match branch.axis() {
        BranchAxis::WOfZ => {
            // (A(z, phi) + B(z, phi) phi'(z)) dz
            let av = eval_bipoly(&a, &id, &phi);
            let bv = eval_bipoly(&b, &id, &phi);
            av.add(&bv.mul(&dphi))
        }
        BranchAxis::ZOfW => {
            // (A(psi, w) psi'(w) + B(psi, w)) dw
            let av = eval_bipoly(&a, &phi, &id);
            let bv = eval_bipoly(&b, &phi, &id);
            av.mul(&dphi).add(&bv)
        }
    }
}

fn check_same_base(germ: &FoliationGerm, branch: &Branch) -> Result<(), IndexError> {
    if germ.base() != branch.base() {
        return Err(IndexError::MismatchedBasePoint);
    }
    Ok(())
}

/// Truncation order at which a vanishing pullback is accepted as invariance.
fn invariance_order(germ: &FoliationGerm) -> usize {
    let d = germ
        .p
        .degree()
        .unwrap_or(0)
        .max(germ.q.degree().unwrap_or(0)) as usize;
    (2 * d + 8).max(16)
}

/// Whether the branch is invariant: the pullback of the 1-form vanishes to
/// the invariance truncation order.
pub fn branch_is_invariant(germ: &FoliationGerm, branch: &Branch) -> Result<bool, IndexError> {
    check_same_base(germ, branch)?;
    let b = branch.refined(invariance_order(germ))?;
    Ok(omega_pullback(germ, &b).is_zero_to_order())
}

/// Z index along a smooth invariant branch: the vanishing order of the
/// tangential component of the vector field.
pub fn z_index(germ: &FoliationGerm, branch: &Branch) -> Result<i64, IndexError> {
    z_index_capped(germ, branch, DEFAULT_TRUNCATION_CAP)
}

pub fn z_index_capped(
    germ: &FoliationGerm,
    branch: &Branch,
    cap: usize,
) -> Result<i64, IndexError> {
    check_same_base(germ, branch)?;
    if !branch_is_invariant(germ, branch)? {
        return Err(IndexError::BranchNotInvariant);
    }
    let g = germ.recentred();
    let mut order = invariance_order(germ).max(branch.series().order());
    loop {
        let b = branch.refined(order)?;
        let phi = b.series().clone();
        let id = TruncSeries::from_unipoly(&UniPoly::identity());
        let tangential = match b.axis() {
            BranchAxis::WOfZ => eval_bipoly(&g.p, &id, &phi),
            BranchAxis::ZOfW => eval_bipoly(&g.q, &phi, &id),
        };
        if let Some(v) = tangential.valuation() {
            return Ok(v as i64);
        }
        if tangential.is_zero_exact() || order >= cap {
            return Err(IndexError::InsufficientTruncation);
        }
        order = (order * 2).min(cap);
    }
}

/// Camacho–Sad index along a smooth invariant branch.
pub fn cs_index(germ: &FoliationGerm, branch: &Branch) -> Result<Rat, IndexError> {
    cs_index_capped(germ, branch, DEFAULT_TRUNCATION_CAP)
}

pub fn cs_index_capped(
    germ: &FoliationGerm,
    branch: &Branch,
    cap: usize,
) -> Result<Rat, IndexError> {
    check_same_base(germ, branch)?;
    if !branch_is_invariant(germ, branch)? {
        return Err(IndexError::BranchNotInvariant);
    }
    let g = germ.recentred();
    let (a, b) = g.one_form();
    let mut order = invariance_order(germ).max(branch.series().order());
    loop {
        let br = branch.refined(order)?;
        let phi = br.series().clone();
        let dphi = phi.derivative();
        let id = TruncSeries::from_unipoly(&UniPoly::identity());
        // Shear the branch to a coordinate axis; the transversal derivative
        // of the sheared 1-form coefficient gives the residue numerator.
        let (num, den) = match br.axis() {
            BranchAxis::WOfZ => {
                let aw = eval_bipoly(&a.partial_w(), &id, &phi);
                let bw = eval_bipoly(&b.partial_w(), &id, &phi);
                let den = eval_bipoly(&b, &id, &phi);
                (aw.add(&bw.mul(&dphi)), den)
            }
            BranchAxis::ZOfW => {
                let bz = eval_bipoly(&b.partial_z(), &phi, &id);
                let az = eval_bipoly(&a.partial_z(), &phi, &id);
                let den = eval_bipoly(&a, &phi, &id);
                (bz.add(&az.mul(&dphi)), den)
            }
        };
        match series_residue(&num.scale(&Rat::from_int(-1)), &den) {
            Ok(r) => return Ok(r),
            Err(SeriesError::InsufficientTruncation) if order < cap => {
                order = (order * 2).min(cap);
            }
            Err(_) => return Err(IndexError::InsufficientTruncation),
        }
    }
}

/// Which index family a record belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexKind {
    Tang,
    Z,
    Cs,
}

/// One computed index value at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexRecord {
    pub kind: IndexKind,
    pub value: Rat,
    pub point: (Rat, Rat),
    pub curve: Option<String>,
    /// Orbifold order used (1 at a smooth surface point).
    pub orbifold_order: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineError {
    MismatchedPoints,
    MismatchedKinds,
    /// Only Z and CS combine at a node.
    UnsupportedKind,
}

/// Combine per-branch indices at a normal crossing: `Z1 + Z2 - 2` for Z,
/// `CS1 + CS2 + 2` for CS.
pub fn combine_at_node(
    kind: IndexKind,
    left: &IndexRecord,
    right: &IndexRecord,
) -> Result<IndexRecord, CombineError> {
    if left.point != right.point {
        return Err(CombineError::MismatchedPoints);
    }
    if left.kind != kind || right.kind != kind {
        return Err(CombineError::MismatchedKinds);
    }
    let correction = match kind {
        IndexKind::Z => Rat::from_int(-2),
        IndexKind::Cs => Rat::from_int(2),
        IndexKind::Tang => return Err(CombineError::UnsupportedKind),
    };
    Ok(IndexRecord {
        kind,
        value: &(&left.value + &right.value) + &correction,
        point: left.point.clone(),
        curve: None,
        orbifold_order: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::branch::solve_smooth_branch;
    use crate::poly;

    fn germ(p: &str, q: &str) -> FoliationGerm {
        FoliationGerm::new(poly(p), poly(q)).unwrap()
    }

    fn origin() -> (Rat, Rat) {
        (Rat::zero(), Rat::zero())
    }

    fn w_axis() -> Branch {
        solve_smooth_branch(&poly("w"), &origin(), 16).unwrap()
    }

    fn z_axis() -> Branch {
        solve_smooth_branch(&poly("z"), &origin(), 16).unwrap()
    }

    #[test]
    fn construction_removes_common_factor() {
        let g = FoliationGerm::new(poly("z*w"), poly("z*z")).unwrap();
        assert_eq!(g.removed_factor(), &poly("z"));
        assert_eq!(g.p(), &poly("w"));
        // omega(v) = A P + B Q = -QP + PQ = 0 identically, by construction.
        let (a, b) = g.one_form();
        assert!((&(&a * g.p()) + &(&b * g.q())).is_zero());
    }

    #[test]
    fn singular_locus_linear() {
        let g = germ("z", "-3*w");
        let loc = singular_locus(&g);
        assert_eq!(loc.points, alloc::vec![origin()]);
        assert!(loc.residual.is_empty());
    }

    #[test]
    fn singular_locus_resultant_split() {
        let g = germ("z^2 - 1", "w");
        let loc = singular_locus(&g);
        assert_eq!(
            loc.points,
            alloc::vec![
                (Rat::from_int(-1), Rat::zero()),
                (Rat::one(), Rat::zero())
            ]
        );
        assert!(loc.residual.is_empty());
    }

    #[test]
    fn singular_locus_residual() {
        let g = germ("z^2 - 2", "w");
        let loc = singular_locus(&g);
        assert!(loc.points.is_empty());
        assert_eq!(loc.residual, alloc::vec![ResidualFactor::InZ(poly("z^2 - 2").restrict_w0())]);
    }

    #[test]
    fn classify_linear_negative_ratio() {
        let c = classify_singularity(&germ("z", "-w")).unwrap();
        assert_eq!(
            c,
            SingClass::ReducedNonDegenerate(EigenRatio::Rational(Rat::from_int(-1)))
        );
        let c2 = classify_singularity(&germ("z", "-2*w")).unwrap();
        assert_eq!(
            c2,
            SingClass::ReducedNonDegenerate(EigenRatio::Rational(Rat::from_int(-2)))
        );
    }

    #[test]
    fn classify_positive_ratio_rejected() {
        let c = classify_singularity(&germ("z", "5*w")).unwrap();
        assert_eq!(
            c,
            SingClass::NonReduced(NonReducedReason::PositiveRationalRatio(Rat::from_int(5)))
        );
        // Radial: ratio 1.
        let c2 = classify_singularity(&germ("z", "w")).unwrap();
        assert_eq!(
            c2,
            SingClass::NonReduced(NonReducedReason::PositiveRationalRatio(Rat::one()))
        );
    }

    #[test]
    fn classify_irrational_certificate() {
        // Linear part rows (2,1),(1,1): t = 3, d = 1, s = 9, s-2 = 7,
        // discriminant 45 is not a square.
        let c = classify_singularity(&germ("2*z + w", "z + w")).unwrap();
        assert_eq!(
            c,
            SingClass::ReducedNonDegenerate(EigenRatio::Irrational {
                trace_sq_over_det: Rat::from_int(9)
            })
        );
    }

    #[test]
    fn classify_saddle_node() {
        let c = classify_singularity(&germ("z", "w^2")).unwrap();
        assert_eq!(c, SingClass::ReducedSaddleNode { multiplicity: 1 });
        for k in 1..=3u32 {
            for nu in 0..=1i64 {
                // z(1 + nu w^k) d/dz + w^(k+1) d/dw
                let p = &poly("z")
                    + &BiPoly::monomial(1, k, Rat::from_int(nu));
                let q = BiPoly::monomial(0, k + 1, Rat::one());
                let g = FoliationGerm::new(p, q).unwrap();
                assert_eq!(
                    classify_singularity(&g).unwrap(),
                    SingClass::ReducedSaddleNode {
                        multiplicity: k as usize
                    }
                );
            }
        }
    }

    #[test]
    fn classify_nonreduced_degenerate() {
        // Rotation: eigenvalues +-i, whose ratio is the rational -1.
        assert_eq!(
            classify_singularity(&germ("w", "-z")).unwrap(),
            SingClass::ReducedNonDegenerate(EigenRatio::Rational(Rat::from_int(-1)))
        );
        assert_eq!(
            classify_singularity(&germ("w", "z^2")).unwrap(),
            SingClass::NonReduced(NonReducedReason::Nilpotent)
        );
        assert_eq!(
            classify_singularity(&germ("z^2", "w^2")).unwrap(),
            SingClass::NonReduced(NonReducedReason::ZeroLinearPart)
        );
        assert_eq!(
            classify_singularity(&germ("1", "w")).unwrap_err(),
            GermError::NotSingularHere
        );
    }

    #[test]
    fn tang_examples() {
        // v = d/dz, f = w - z^2.
        let g = germ("1", "0");
        assert_eq!(
            tang_index(&g, &poly("w - z^2"), &origin(), 1),
            Ok(Rat::one())
        );
        // v = z dz + 2w dw, f = w - z.
        let g2 = germ("z", "2*w");
        assert_eq!(tang_index(&g2, &poly("w - z"), &origin(), 1), Ok(Rat::one()));
        // Orbifold division rule.
        let g3 = germ("1", "0");
        assert_eq!(
            tang_index(&g3, &poly("w - z^3"), &origin(), 3),
            Ok(Rat::new(2, 3))
        );
        // Invariant curve detected.
        let g4 = germ("z", "-w");
        assert!(matches!(
            tang_index(&g4, &poly("w"), &origin(), 1),
            Err(TangError::CurveIsInvariant(_))
        ));
    }

    #[test]
    fn tang_transversality_zero() {
        let g = germ("1", "0");
        assert_eq!(tang_index(&g, &poly("z"), &origin(), 1), Ok(Rat::zero()));
    }

    #[test]
    fn z_index_linear_model() {
        let g = germ("z", "-2*w");
        assert_eq!(z_index(&g, &w_axis()), Ok(1));
        assert_eq!(z_index(&g, &z_axis()), Ok(1));
    }

    #[test]
    fn z_index_saddle_node() {
        let g = germ("z", "w^2");
        // Strong separatrix {w=0}: Z = 1; weak separatrix {z=0}: Z = k+1 = 2.
        assert_eq!(z_index(&g, &w_axis()), Ok(1));
        assert_eq!(z_index(&g, &z_axis()), Ok(2));
    }

    #[test]
    fn z_index_rejects_transverse_branch() {
        let g = germ("z", "-w");
        let diag = solve_smooth_branch(&poly("w - z"), &origin(), 16).unwrap();
        assert_eq!(z_index(&g, &diag), Err(IndexError::BranchNotInvariant));
    }

    #[test]
    fn cs_linear_model() {
        for l in [Rat::from_int(-1), Rat::from_int(-2), Rat::new(-2, 3)] {
            let q = BiPoly::monomial(0, 1, l.clone());
            let g = FoliationGerm::new(poly("z"), q).unwrap();
            assert_eq!(cs_index(&g, &w_axis()), Ok(l.clone()));
            assert_eq!(cs_index(&g, &z_axis()), Ok(l.recip()));
        }
    }

    #[test]
    fn cs_saddle_node() {
        let g = germ("z", "w^2");
        assert_eq!(cs_index(&g, &w_axis()), Ok(Rat::zero()));
        // Weak separatrix CS = nu for z(1 + nu w) d/dz + w^2 d/dw.
        let gnu = germ("z + z*w", "w^2");
        assert_eq!(cs_index(&gnu, &z_axis()), Ok(Rat::one()));
    }

    #[test]
    fn cs_chart_transition_line_at_infinity() {
        // v = -u du + (lambda - 1) t dt, branch {t=0} -> 1 - lambda.
        let l = Rat::new(-3, 2);
        let q = BiPoly::monomial(0, 1, &l - &Rat::one());
        let g = FoliationGerm::new(-&poly("z"), q).unwrap();
        assert_eq!(cs_index(&g, &w_axis()), Ok(&Rat::one() - &l));
    }

    #[test]
    fn combine_rules() {
        let rec = |kind, v: Rat| IndexRecord {
            kind,
            value: v,
            point: origin(),
            curve: None,
            orbifold_order: 1,
        };
        let z = combine_at_node(
            IndexKind::Z,
            &rec(IndexKind::Z, Rat::one()),
            &rec(IndexKind::Z, Rat::one()),
        )
        .unwrap();
        assert_eq!(z.value, Rat::zero());
        let l = Rat::from_int(-2);
        let cs = combine_at_node(
            IndexKind::Cs,
            &rec(IndexKind::Cs, l.clone()),
            &rec(IndexKind::Cs, l.recip()),
        )
        .unwrap();
        assert_eq!(cs.value, &(&l + &l.recip()) + &Rat::from_int(2));
        let z2 = combine_at_node(
            IndexKind::Z,
            &rec(IndexKind::Z, Rat::one()),
            &rec(IndexKind::Z, Rat::from_int(2)),
        )
        .unwrap();
        assert_eq!(z2.value, Rat::one());
        let mut far = rec(IndexKind::Z, Rat::one());
        far.point = (Rat::one(), Rat::zero());
        assert_eq!(
            combine_at_node(IndexKind::Z, &far, &rec(IndexKind::Z, Rat::one())),
            Err(CombineError::MismatchedPoints)
        );
    }

    #[test]
    fn separatrix_products_and_units() {
        // For rational lambda not in Q+, CS on the two separatrices multiply
        // to 1 and each Z index equals 1.
        for l in [Rat::from_int(-3), Rat::new(-1, 4), Rat::new(-7, 5)] {
            let q = BiPoly::monomial(0, 1, l.clone());
            let g = FoliationGerm::new(poly("z"), q).unwrap();
            let c1 = cs_index(&g, &w_axis()).unwrap();
            let c2 = cs_index(&g, &z_axis()).unwrap();
            assert_eq!(&c1 * &c2, Rat::one());
            assert_eq!(z_index(&g, &w_axis()), Ok(1));
            assert_eq!(z_index(&g, &z_axis()), Ok(1));
        }
    }
}
