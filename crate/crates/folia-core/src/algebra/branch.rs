//! Local branches of plane curves: smooth graph parametrizations and the
//! two transverse branches at a rational node.

use core::fmt;

use super::bipoly::BiPoly;
use super::rat::Rat;
use super::series::{SeriesError, TruncSeries};
use super::unipoly::UniPoly;

/// Which variable parametrizes the branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchAxis {
    /// Graph `w = phi(z)`.
    WOfZ,
    /// Graph `z = psi(w)`.
    ZOfW,
}

/// Why the branch is known to be smooth at its base point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothnessCertificate {
    /// `df/dw` nonzero at the base point.
    PartialWNonzero,
    /// `df/dz` nonzero at the base point.
    PartialZNonzero,
    /// One of the two transverse branches of a rational node.
    NodeBranch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchError {
    /// Both first partials vanish at the point.
    NotSmoothHere,
    /// `f` does not vanish at the requested base point.
    NotOnCurve,
    /// Newton refinement failed to certify the parametrization.
    Series(SeriesError),
}

impl fmt::Display for BranchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchError::NotSmoothHere => write!(f, "both first partials vanish at the point"),
            BranchError::NotOnCurve => write!(f, "the point does not lie on the curve"),
            BranchError::Series(e) => write!(f, "series expansion failed: {e}"),
        }
    }
}

impl From<SeriesError> for BranchError {
    fn from(e: SeriesError) -> Self {
        BranchError::Series(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeError {
    /// The quadratic part at the point is degenerate (or the vanishing order
    /// is not 2), so this is not a rational node.
    NotANode,
    /// The tangent directions are not rational; reported, never approximated.
    IrrationalTangents,
    /// `f` does not vanish at the requested base point.
    NotOnCurve,
    /// A first partial is nonzero: the curve is smooth here, not nodal.
    SmoothHere,
    Series(SeriesError),
}

impl fmt::Display for NodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeError::NotANode => write!(f, "quadratic part is degenerate"),
            NodeError::IrrationalTangents => write!(f, "tangent directions are not rational"),
            NodeError::NotOnCurve => write!(f, "the point does not lie on the curve"),
            NodeError::SmoothHere => write!(f, "the curve is smooth at the point"),
            NodeError::Series(e) => write!(f, "series expansion failed: {e}"),
        }
    }
}

impl From<SeriesError> for NodeError {
    fn from(e: SeriesError) -> Self {
        NodeError::Series(e)
    }
}

impl From<BranchError> for NodeError {
    fn from(e: BranchError) -> Self {
        match e {
            BranchError::NotOnCurve => NodeError::NotOnCurve,
            BranchError::NotSmoothHere => NodeError::NotANode,
            BranchError::Series(s) => NodeError::Series(s),
        }
    }
}

/// A local branch of `{source = 0}` at `base`, smooth, parametrized as a
/// graph over one of the coordinates. The parametrization is expressed in
/// coordinates recentred at the base point and has zero constant term.
#[derive(Debug, Clone)]
pub struct Branch {
    base: (Rat, Rat),
    axis: BranchAxis,
    certificate: SmoothnessCertificate,
    series: TruncSeries,
    source: BiPoly,
}

impl Branch {
    pub fn base(&self) -> &(Rat, Rat) {
        &self.base
    }

    pub fn axis(&self) -> BranchAxis {
        self.axis
    }

    pub fn certificate(&self) -> SmoothnessCertificate {
        self.certificate
    }

    /// The graph series in recentred coordinates.
    pub fn series(&self) -> &TruncSeries {
        &self.series
    }

    /// The defining equation, in the original coordinates.
    pub fn source(&self) -> &BiPoly {
        &self.source
    }

    /// The defining equation recentred at the base point.
    pub fn source_translated(&self) -> BiPoly {
        self.source.translate(&self.base.0, &self.base.1)
    }

    /// Same branch re-expanded to (at least) the requested order.
    pub fn refined(&self, order: usize) -> Result<Branch, BranchError> {
        if self.series.is_exact() || self.series.order() >= order {
            return Ok(self.clone());
        }
        let f = self.source_translated();
        let f_graph = match self.axis {
            BranchAxis::WOfZ => f,
            BranchAxis::ZOfW => f.swap_vars(),
        };
        let phi = newton_graph(&f_graph, series_poly(&self.series), order)?;
        Ok(Branch {
            series: phi,
            ..self.clone()
        })
    }
}

fn series_poly(s: &TruncSeries) -> UniPoly {
    let mut coeffs = alloc::vec::Vec::new();
    for k in 0..=s.order() {
        match s.coeff(k) {
            Ok(c) => coeffs.push(c),
            Err(_) => break,
        }
    }
    UniPoly::from_coeffs(coeffs)
}

/// Newton iteration for a graph `w = phi(z)` of `{f = 0}` through the origin,
/// starting from an initial segment whose tangent is already correct.
fn newton_graph(f: &BiPoly, phi0: UniPoly, order: usize) -> Result<TruncSeries, BranchError> {
    let fw = f.partial_w();
    let mut phi = phi0;
    let mut exact = false;
    for _ in 0..order + 2 {
        let phi_b = BiPoly::from_uni_z(&phi);
        let r = f.substitute(&BiPoly::var_z(), &phi_b);
        debug_assert!(r.degree_w().unwrap_or(0) == 0);
        let r_uni = r.restrict_w0();
        if r_uni.is_zero() {
            exact = true;
            break;
        }
        if r_uni.order_at_zero().is_some_and(|v| v > order) {
            break;
        }
        let d_uni = fw
            .substitute(&BiPoly::var_z(), &phi_b)
            .restrict_w0();
        let num = TruncSeries::from_unipoly(&r_uni);
        let den = TruncSeries::from_unipoly(&d_uni);
        let delta = num.div(&den)?.truncated(order);
        let next = &phi - &series_poly(&delta);
        // Truncate to the working degree.
        let coeffs: alloc::vec::Vec<Rat> = (0..=order).map(|k| next.coeff(k)).collect();
        phi = UniPoly::from_coeffs(coeffs);
    }
    // Certify the result.
    let phi_b = BiPoly::from_uni_z(&phi);
    let r = f.substitute(&BiPoly::var_z(), &phi_b).restrict_w0();
    if !r.is_zero() && r.order_at_zero().is_some_and(|v| v <= order) {
        return Err(BranchError::Series(SeriesError::InsufficientTruncation));
    }
    Ok(TruncSeries::from_coeffs(
        phi.coeffs().to_vec(),
        order,
        exact && r.is_zero(),
    ))
}

/// Graph parametrization of `{f = 0}` at a smooth point, to the given order.
pub fn solve_smooth_branch(f: &BiPoly, p: &(Rat, Rat), order: usize) -> Result<Branch, BranchError> {
    let ft = f.translate(&p.0, &p.1);
    if !ft.coeff(0, 0).is_zero() {
        return Err(BranchError::NotOnCurve);
    }
    let fz0 = ft.coeff(1, 0);
    let fw0 = ft.coeff(0, 1);
    if !fw0.is_zero() {
        let phi = newton_graph(&ft, UniPoly::zero(), order)?;
        Ok(Branch {
            base: p.clone(),
            axis: BranchAxis::WOfZ,
            certificate: SmoothnessCertificate::PartialWNonzero,
            series: phi,
            source: f.clone(),
        })
    } else if !fz0.is_zero() {
        let psi = newton_graph(&ft.swap_vars(), UniPoly::zero(), order)?;
        Ok(Branch {
            base: p.clone(),
            axis: BranchAxis::ZOfW,
            certificate: SmoothnessCertificate::PartialZNonzero,
            series: psi,
            source: f.clone(),
        })
    } else {
        Err(BranchError::NotSmoothHere)
    }
}

/// The two transverse smooth branches of `{f = 0}` at a rational node.
pub fn factor_at_node(
    f: &BiPoly,
    p: &(Rat, Rat),
    order: usize,
) -> Result<(Branch, Branch), NodeError> {
    let ft = f.translate(&p.0, &p.1);
    if !ft.coeff(0, 0).is_zero() {
        return Err(NodeError::NotOnCurve);
    }
    match ft.order_at_origin() {
        Some(2) => {}
        Some(0) => return Err(NodeError::NotOnCurve),
        Some(1) => return Err(NodeError::SmoothHere),
        _ => return Err(NodeError::NotANode),
    }
    let a = ft.coeff(2, 0);
    let b = ft.coeff(1, 1);
    let c = ft.coeff(0, 2);
    let mk = |axis, phi| Branch {
        base: p.clone(),
        axis,
        certificate: SmoothnessCertificate::NodeBranch,
        series: phi,
        source: f.clone(),
    };
    if !c.is_zero() {
        // Tangents w = t z with c t^2 + b t + a = 0.
        let disc = &(&b * &b) - &(Rat::from_int(4) * &a * &c);
        if disc.is_zero() {
            return Err(NodeError::NotANode);
        }
        let sq = disc.sqrt_exact().ok_or(NodeError::IrrationalTangents)?;
        let two_c = Rat::from_int(2) * c;
        let t1 = &(-&b + &sq) / &two_c;
        let t2 = &(-&b - &sq) / &two_c;
        let seed = |t: &Rat| UniPoly::from_coeffs(alloc::vec![Rat::zero(), t.clone()]);
        let phi1 = newton_graph(&ft, seed(&t1), order)?;
        let phi2 = newton_graph(&ft, seed(&t2), order)?;
        Ok((mk(BranchAxis::WOfZ, phi1), mk(BranchAxis::WOfZ, phi2)))
    } else if !b.is_zero() {
        // Factors z and (a z + b w): one vertical tangent, one graph.
        let gt = ft.swap_vars();
        let psi = newton_graph(&gt, UniPoly::zero(), order)?;
        let t = -&(&a / &b);
        let phi = newton_graph(
            &ft,
            UniPoly::from_coeffs(alloc::vec![Rat::zero(), t]),
            order,
        )?;
        Ok((mk(BranchAxis::ZOfW, psi), mk(BranchAxis::WOfZ, phi)))
    } else {
        Err(NodeError::NotANode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly;

    fn origin() -> (Rat, Rat) {
        (Rat::zero(), Rat::zero())
    }

    #[test]
    fn already_a_graph() {
        let b = solve_smooth_branch(&poly("w - z^2"), &origin(), 4).unwrap();
        assert_eq!(b.axis(), BranchAxis::WOfZ);
        assert!(b.series().is_exact());
        assert_eq!(b.series().coeff(2), Ok(Rat::one()));
        assert_eq!(b.series().coeff(1), Ok(Rat::zero()));
    }

    #[test]
    fn iterated_substitution() {
        // w + z + zw = 0  =>  w = -z + z^2 - z^3 + ...
        let b = solve_smooth_branch(&poly("w + z + z*w"), &origin(), 3).unwrap();
        assert_eq!(b.series().coeff(1), Ok(Rat::from_int(-1)));
        assert_eq!(b.series().coeff(2), Ok(Rat::one()));
        assert_eq!(b.series().coeff(3), Ok(Rat::from_int(-1)));
    }

    #[test]
    fn not_smooth_here() {
        assert_eq!(
            solve_smooth_branch(&poly("z^2 + w^2"), &origin(), 2).unwrap_err(),
            BranchError::NotSmoothHere
        );
    }

    #[test]
    fn back_substitution_vanishes() {
        let f = poly("w - z^2 - z*w^2");
        let b = solve_smooth_branch(&f, &origin(), 8).unwrap();
        let phi = BiPoly::from_uni_z(&super::series_poly(b.series()));
        let r = f.substitute(&BiPoly::var_z(), &phi).restrict_w0();
        assert!(r.order_at_zero().is_none_or(|v| v > 8));
    }

    #[test]
    fn off_origin_base_point() {
        // Circle z^2 + w^2 = 1 at (1, 0): vertical tangent, graph z = psi(w).
        let f = poly("z^2 + w^2 - 1");
        let b = solve_smooth_branch(&f, &(Rat::one(), Rat::zero()), 4).unwrap();
        assert_eq!(b.axis(), BranchAxis::ZOfW);
        // z = 1 - w^2/2 + ...  =>  recentred psi(w) = -w^2/2 - w^4/8 + ...
        assert_eq!(b.series().coeff(2), Ok(Rat::new(-1, 2)));
        assert_eq!(b.series().coeff(4), Ok(Rat::new(-1, 8)));
    }

    #[test]
    fn node_coordinate_axes() {
        let (b1, b2) = factor_at_node(&poly("z*w"), &origin(), 4).unwrap();
        assert_eq!(b1.axis(), BranchAxis::ZOfW);
        assert!(b1.series().is_zero_to_order());
        assert_eq!(b2.axis(), BranchAxis::WOfZ);
        assert!(b2.series().is_zero_to_order());
    }

    #[test]
    fn node_split_quadratic() {
        let (b1, b2) = factor_at_node(&poly("w^2 - z^2"), &origin(), 4).unwrap();
        let t1 = b1.series().coeff(1).unwrap();
        let t2 = b2.series().coeff(1).unwrap();
        let mut ts = alloc::vec![t1, t2];
        ts.sort();
        assert_eq!(ts, alloc::vec![Rat::from_int(-1), Rat::one()]);
    }

    #[test]
    fn node_irrational_tangents() {
        assert_eq!(
            factor_at_node(&poly("w^2 - 2*z^2"), &origin(), 4).unwrap_err(),
            NodeError::IrrationalTangents
        );
    }

    #[test]
    fn node_perturbed() {
        // Nodal cubic w^2 - z^2 - z^3: branches w = ±z sqrt(1+z).
        let f = poly("w^2 - z^2 - z^3");
        let (b1, _) = factor_at_node(&f, &origin(), 6).unwrap();
        let phi = BiPoly::from_uni_z(&super::series_poly(b1.series()));
        let r = f.substitute(&BiPoly::var_z(), &phi).restrict_w0();
        assert!(r.order_at_zero().is_none_or(|v| v > 6));
    }

    #[test]
    fn refine_extends_order() {
        let f = poly("w + z + z*w");
        let b = solve_smooth_branch(&f, &origin(), 2).unwrap();
        assert!(b.series().coeff(5).is_err());
        let b2 = b.refined(5).unwrap();
        assert_eq!(b2.series().coeff(5), Ok(Rat::from_int(-1)));
        // Lower-order coefficients are unchanged.
        assert_eq!(b2.series().coeff(1), b.series().coeff(1));
    }
}
