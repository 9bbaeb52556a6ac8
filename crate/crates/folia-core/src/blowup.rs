//! Point blow-ups of foliation germs, dicritical detection, the reduction
//! driver, and the exceptional-divisor ledger.
//!
//! The blow-up of the origin is covered by two affine charts,
//! `(x, y) -> (x, xy)` with `E = {x = 0}` and `(x, y) -> (xy, y)` with
//! `E = {y = 0}`. The pulled-back 1-form is divided by the maximal power of
//! the exceptional coordinate; the extra division in the dicritical case
//! makes the exceptional curve non-invariant.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::branch::BranchError;
use crate::algebra::rat::Rat;
use crate::algebra::unipoly::UniPoly;
use crate::germ::{classify_at, FoliationGerm, GermError, IndexError, SingClass, TangError};
use crate::surface::{CurveData, CurveKind, ModelError, SingularityRecord, SurfaceModel};

pub type ChartId = usize;
pub type CurveId = usize;

/// Which of the two blow-up charts a point is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChartSide {
    /// `(x, y) -> (x, xy)`; E is `{x = 0}`, `y` is the slope `w/z`.
    First,
    /// `(x, y) -> (xy, y)`; E is `{y = 0}`, the origin is the slope at
    /// infinity.
    Second,
}

/// A singular point of the transformed foliation on the exceptional curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalPoint {
    pub side: ChartSide,
    pub point: (Rat, Rat),
    pub class: SingClass,
}

/// One point blow-up: the center data and the two transformed chart germs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupEvent {
    pub center: (Rat, Rat),
    /// Minimal vanishing order of the 1-form coefficients at the center.
    pub multiplicity: u32,
    pub dicritical: bool,
    /// Transformed germs on the first and second chart, based at the origin.
    pub germs: [FoliationGerm; 2],
    /// Singular points on E: first-chart points `(0, t)` with `t` rational,
    /// plus the second-chart origin when singular there. No duplicates.
    pub on_curve: Vec<ExceptionalPoint>,
    /// Slope factors whose roots are singular points of E in a non-rational
    /// residue field.
    pub residual: Vec<UniPoly>,
}

impl BlowupEvent {
    pub fn exceptional_invariant(&self) -> bool {
        !self.dicritical
    }
}

/// Blow up the base point of a germ singular there.
pub fn blow_up(germ: &FoliationGerm) -> Result<BlowupEvent, GermError> {
    if !germ.is_singular_at_base() {
        return Err(GermError::NotSingularHere);
    }
    let center = germ.base().clone();
    let g = germ.recentred();
    let (a, b) = g.one_form();
    let nu = match (a.order_at_origin(), b.order_at_origin()) {
        (Some(p), Some(q)) => p.min(q),
        (Some(p), None) => p,
        (None, Some(q)) => q,
        (None, None) => unreachable!("germ is nonzero"),
    };
    // Tangency form z*A_nu + w*B_nu; identically zero exactly in the
    // dicritical case.
    let tangency = &(&BiPoly::var_z() * &a.homogeneous_part(nu))
        + &(&BiPoly::var_w() * &b.homogeneous_part(nu));
    let dicritical = tangency.is_zero();
    let drop = if dicritical { nu + 1 } else { nu };

    let x = BiPoly::var_z();
    let y = BiPoly::var_w();
    let xy = &x * &y;

    // First chart: omega~ = [A(x,xy) + y B(x,xy)] dx + x B(x,xy) dy.
    let a_s = a.substitute(&x, &xy);
    let b_s = b.substitute(&x, &xy);
    let a1 = (&a_s + &(&y * &b_s)).div_zpow(drop).expect("x^drop divides");
    let b1 = (&x * &b_s).div_zpow(drop).expect("x^drop divides");
    let germ1 = FoliationGerm::new(b1, -&a1)?;

    // Second chart: omega~ = y A(xy,y) dx + [x A(xy,y) + B(xy,y)] dy.
    let a_t = a.substitute(&xy, &y);
    let b_t = b.substitute(&xy, &y);
    let a2 = (&y * &a_t).div_wpow(drop).expect("y^drop divides");
    let b2 = (&(&x * &a_t) + &b_t).div_wpow(drop).expect("y^drop divides");
    let germ2 = FoliationGerm::new(b2, -&a2)?;

    // Singular points on E: rational slopes from the first chart, slope at
    // infinity from the second chart origin.
    let mut on_curve = Vec::new();
    let mut residual = Vec::new();
    let (slopes, rest) = common_roots(&germ1.p().restrict_z0(), &germ1.q().restrict_z0());
    if let Some(rest) = rest {
        residual.push(rest);
    }
    for t in slopes {
        let pt = (Rat::zero(), t);
        let class = classify_at(&germ1.at_point(pt.clone()));
        on_curve.push(ExceptionalPoint {
            side: ChartSide::First,
            point: pt,
            class,
        });
    }
    if germ2.vanishes_at(&(Rat::zero(), Rat::zero())) {
        let class = classify_at(&germ2.at_point((Rat::zero(), Rat::zero())));
        on_curve.push(ExceptionalPoint {
            side: ChartSide::Second,
            point: (Rat::zero(), Rat::zero()),
            class,
        });
    }

    Ok(BlowupEvent {
        center,
        multiplicity: nu,
        dicritical,
        germs: [germ1, germ2],
        on_curve,
        residual,
    })
}

/// Common rational roots of two univariate polynomials (not both zero),
/// plus the non-rational cofactor of their gcd if nonconstant.
fn common_roots(u: &UniPoly, v: &UniPoly) -> (Vec<Rat>, Option<UniPoly>) {
    let g = if u.is_zero() {
        v.clone()
    } else if v.is_zero() {
        u.clone()
    } else {
        u.gcd(v)
    };
    if g.is_zero() {
        // Both restrictions vanish identically: impossible for a saturated
        // germ; treat as no certified roots with the zero residual.
        return (Vec::new(), Some(UniPoly::zero()));
    }
    let (mut roots, rest) = g.rational_roots();
    roots.dedup();
    let rest = if rest.is_constant() { None } else { Some(rest) };
    (roots, rest)
}

/// A coordinate chart of the blown-up surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub id: ChartId,
    /// Number of blow-ups between the root chart and this one.
    pub depth: usize,
    pub germ: FoliationGerm,
    /// Equations in this chart of the exceptional curves meeting it.
    pub exceptional_lines: Vec<(CurveId, BiPoly)>,
    pub parent: Option<(ChartId, ChartSide)>,
}

/// A blow-up performed by the reduction driver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEvent {
    pub chart: ChartId,
    pub center: (Rat, Rat),
    pub multiplicity: u32,
    pub dicritical: bool,
    /// Ids of the two child charts, first and second.
    pub children: [ChartId; 2],
    pub curve: CurveId,
}

/// A singular point of the final reduced foliation, in chart coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPointRecord {
    pub chart: ChartId,
    pub point: (Rat, Rat),
    pub class: SingClass,
}

/// Per-exceptional-curve bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub id: CurveId,
    pub self_intersection: Rat,
    pub invariant: bool,
    pub singular_points: Vec<SingularPointRecord>,
    pub adjacent: BTreeSet<CurveId>,
}

/// A reduction branch stopped because the next center is not rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonRationalCenter {
    /// First chart of the blow-up whose exceptional curve carries the points.
    pub chart: ChartId,
    /// Slope polynomial with no rational roots.
    pub residual: UniPoly,
}

/// The full reduction tree with its exceptional-divisor ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupTree {
    pub root: FoliationGerm,
    pub charts: Vec<Chart>,
    pub events: Vec<TreeEvent>,
    pub ledger: Vec<LedgerEntry>,
    pub reports: Vec<NonRationalCenter>,
}

impl BlowupTree {
    /// Complete: every branch terminated in reduced points (no branch was
    /// cut short by a non-rational center).
    pub fn is_complete(&self) -> bool {
        self.reports.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReduceError {
    /// The depth cap was reached; carries the cap.
    DepthExceeded(usize),
    Germ(GermError),
}

impl fmt::Display for ReduceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReduceError::DepthExceeded(d) => {
                write!(f, "reduction did not terminate within depth {d}")
            }
            ReduceError::Germ(e) => write!(f, "{e}"),
        }
    }
}

pub const DEFAULT_MAX_DEPTH: usize = 32;

/// Seidenberg reduction of the singularity at the germ's base point: blow up
/// every non-reduced singular point on the exceptional set, in lexicographic
/// order of (depth, chart id, point), until only reduced singularities
/// remain.
pub fn reduce_seidenberg(germ: &FoliationGerm, max_depth: usize) -> Result<BlowupTree, ReduceError> {
    let root = germ.recentred();
    let mut charts = alloc::vec![Chart {
        id: 0,
        depth: 0,
        germ: root.clone(),
        exceptional_lines: Vec::new(),
        parent: None,
    }];
    let mut events = Vec::new();
    let mut ledger: Vec<LedgerEntry> = Vec::new();
    let mut reports = Vec::new();
    // Reduced singular points discovered on the exceptional set, attached to
    // curves at the end.
    let mut final_points: Vec<SingularPointRecord> = Vec::new();

    let mut pending: BTreeSet<(usize, ChartId, (Rat, Rat))> = BTreeSet::new();
    let origin = (Rat::zero(), Rat::zero());
    if !classify_at(&root.at_point(origin.clone())).is_reduced()
        && root.vanishes_at(&origin)
    {
        pending.insert((0, 0, origin));
    }

    while let Some(task) = pending.pop_first() {
        let (depth, chart_id, center) = task;
        if depth >= max_depth {
            return Err(ReduceError::DepthExceeded(max_depth));
        }
        let chart = charts[chart_id].clone();
        let ev = blow_up(&chart.germ.at_point(center.clone())).map_err(ReduceError::Germ)?;

        let curve = ledger.len();
        let c1 = charts.len();
        let c2 = c1 + 1;

        // Ledger updates for the curves through the center.
        let through: Vec<CurveId> = chart
            .exceptional_lines
            .iter()
            .filter(|(_, eq)| eq.eval(&center.0, &center.1).is_zero())
            .map(|(cid, _)| *cid)
            .collect();
        for &cid in &through {
            ledger[cid].self_intersection -= Rat::one();
            // The blow-up separates curves that crossed at the center.
            for &other in &through {
                if other != cid {
                    ledger[cid].adjacent.remove(&other);
                }
            }
        }
        for &cid in &through {
            ledger[cid].adjacent.insert(curve);
        }
        ledger.push(LedgerEntry {
            id: curve,
            self_intersection: Rat::from_int(-1),
            invariant: !ev.dicritical,
            singular_points: Vec::new(),
            adjacent: through.iter().copied().collect(),
        });

        // Child charts carry the new exceptional line and the strict
        // transforms of the old curves through the center.
        let mut lines1 = alloc::vec![(curve, BiPoly::var_z())];
        let mut lines2 = alloc::vec![(curve, BiPoly::var_w())];
        for (cid, eq) in &chart.exceptional_lines {
            if !through.contains(cid) {
                continue;
            }
            lines1.push((*cid, strict_transform(eq, &center, ChartSide::First)));
            lines2.push((*cid, strict_transform(eq, &center, ChartSide::Second)));
        }
        charts.push(Chart {
            id: c1,
            depth: depth + 1,
            germ: ev.germs[0].clone(),
            exceptional_lines: lines1,
            parent: Some((chart_id, ChartSide::First)),
        });
        charts.push(Chart {
            id: c2,
            depth: depth + 1,
            germ: ev.germs[1].clone(),
            exceptional_lines: lines2,
            parent: Some((chart_id, ChartSide::Second)),
        });
        events.push(TreeEvent {
            chart: chart_id,
            center,
            multiplicity: ev.multiplicity,
            dicritical: ev.dicritical,
            children: [c1, c2],
            curve,
        });

        for rest in &ev.residual {
            reports.push(NonRationalCenter {
                chart: c1,
                residual: rest.clone(),
            });
        }
        for ep in &ev.on_curve {
            let host = match ep.side {
                ChartSide::First => c1,
                ChartSide::Second => c2,
            };
            if ep.class.is_reduced() {
                final_points.push(SingularPointRecord {
                    chart: host,
                    point: ep.point.clone(),
                    class: ep.class.clone(),
                });
            } else if !matches!(ep.class, SingClass::NonSingular) {
                pending.insert((depth + 1, host, ep.point.clone()));
            }
        }
    }

    // Attach each final singular point to every curve passing through it.
    for rec in final_points {
        for (cid, eq) in &charts[rec.chart].exceptional_lines {
            if eq.eval(&rec.point.0, &rec.point.1).is_zero() {
                ledger[*cid].singular_points.push(rec.clone());
            }
        }
    }
    for entry in &mut ledger {
        entry
            .singular_points
            .sort_by(|a, b| (a.chart, &a.point).cmp(&(b.chart, &b.point)));
        entry.singular_points.dedup();
    }

    Ok(BlowupTree {
        root,
        charts,
        events,
        ledger,
        reports,
    })
}

/// Strict transform in a child chart of a curve through the blow-up center.
fn strict_transform(eq: &BiPoly, center: &(Rat, Rat), side: ChartSide) -> BiPoly {
    let t = eq.translate(&center.0, &center.1);
    let (x, y) = (BiPoly::var_z(), BiPoly::var_w());
    match side {
        ChartSide::First => {
            let s = t.substitute(&x, &(&x * &y));
            let m = min_exp_z(&s);
            s.div_zpow(m).expect("divides")
        }
        ChartSide::Second => {
            let s = t.substitute(&(&x * &y), &y);
            let m = min_exp_w(&s);
            s.div_wpow(m).expect("divides")
        }
    }
}

fn min_exp_z(f: &BiPoly) -> u32 {
    f.terms().map(|((i, _), _)| *i).min().unwrap_or(0)
}

fn min_exp_w(f: &BiPoly) -> u32 {
    f.terms().map(|((_, j), _)| *j).min().unwrap_or(0)
}

/// The slope coordinate of a first-chart point on E, or `None` for points
/// off E; the second-chart origin is the slope at infinity.
pub fn slope_of(side: ChartSide, point: &(Rat, Rat)) -> Option<Option<Rat>> {
    match side {
        ChartSide::First => point.0.is_zero().then(|| Some(point.1.clone())),
        ChartSide::Second => {
            if point.1.is_zero() {
                if point.0.is_zero() {
                    Some(None)
                } else {
                    Some(Some(point.0.recip()))
                }
            } else {
                None
            }
        }
    }
}

/// Transition between the two charts on the overlap: first-chart `(x, y)`
/// with `y != 0` corresponds to second-chart `(xy, 1/y)`.
pub fn first_to_second(p: &(Rat, Rat)) -> Option<(Rat, Rat)> {
    if p.1.is_zero() {
        return None;
    }
    Some((&p.0 * &p.1, p.1.recip()))
}

/// Count of singular points of the final foliation on each curve, by id.
pub fn ledger_point_counts(tree: &BlowupTree) -> BTreeMap<CurveId, usize> {
    tree.ledger
        .iter()
        .map(|e| (e.id, e.singular_points.len()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceFromTreeError {
    /// The tree has unresolved non-rational centers.
    TreeIncomplete,
    /// Z/CS/tang computation failed at a recorded point.
    Index(IndexError),
    Branch(BranchError),
    Tang(TangError),
    Model(ModelError),
}

impl fmt::Display for SurfaceFromTreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceFromTreeError::TreeIncomplete => {
                write!(f, "reduction tree has unresolved non-rational centers")
            }
            SurfaceFromTreeError::Index(e) => write!(f, "index computation failed: {e}"),
            SurfaceFromTreeError::Branch(e) => write!(f, "branch expansion failed: {e}"),
            SurfaceFromTreeError::Tang(e) => write!(f, "tangency computation failed: {e}"),
            SurfaceFromTreeError::Model(e) => write!(f, "{e}"),
        }
    }
}

/// Turn a complete reduction tree's ledger into a surface model: one
/// rational curve per exceptional divisor, dual-graph intersections, and
/// per-curve singularity records with Z/CS (invariant curves) or tang
/// (non-invariant curves) computed from the chart germs.
pub fn ledger_to_surface(tree: &BlowupTree) -> Result<SurfaceModel, SurfaceFromTreeError> {
    if !tree.is_complete() {
        return Err(SurfaceFromTreeError::TreeIncomplete);
    }
    // Global point ids shared between the curves through a point.
    let mut point_ids: BTreeMap<(ChartId, (Rat, Rat)), usize> = BTreeMap::new();
    for e in &tree.ledger {
        for sp in &e.singular_points {
            let next = point_ids.len();
            point_ids
                .entry((sp.chart, sp.point.clone()))
                .or_insert(next);
        }
    }

    let mut curves = Vec::with_capacity(tree.ledger.len());
    for e in &tree.ledger {
        let mut data = CurveData::new(e.id, CurveKind::Rational, e.invariant);
        for sp in &e.singular_points {
            let chart = &tree.charts[sp.chart];
            let eq = chart
                .exceptional_lines
                .iter()
                .find(|(cid, _)| *cid == e.id)
                .map(|(_, eq)| eq.clone())
                .expect("curve equation present in the recording chart");
            let germ = chart.germ.at_point(sp.point.clone());
            let point = point_ids[&(sp.chart, sp.point.clone())];
            let rec = if e.invariant {
                let branch = crate::algebra::branch::solve_smooth_branch(&eq, &sp.point, 16)
                    .map_err(SurfaceFromTreeError::Branch)?;
                SingularityRecord {
                    point,
                    z: Some(
                        crate::germ::z_index(&germ, &branch)
                            .map_err(SurfaceFromTreeError::Index)?,
                    ),
                    cs: Some(
                        crate::germ::cs_index(&germ, &branch)
                            .map_err(SurfaceFromTreeError::Index)?,
                    ),
                    tang: None,
                }
            } else {
                SingularityRecord {
                    point,
                    z: None,
                    cs: None,
                    tang: Some(
                        crate::germ::tang_index(&germ, &eq, &sp.point, 1)
                            .map_err(SurfaceFromTreeError::Tang)?,
                    ),
                }
            };
            data.singularities.push(rec);
        }
        curves.push(data);
    }

    let n = tree.ledger.len();
    let mut matrix = alloc::vec![alloc::vec![Rat::zero(); n]; n];
    for (i, e) in tree.ledger.iter().enumerate() {
        matrix[i][i] = e.self_intersection.clone();
        for &other in &e.adjacent {
            matrix[i][other] = Rat::one();
            matrix[other][i] = Rat::one();
        }
    }
    SurfaceModel::new(curves, matrix).map_err(SurfaceFromTreeError::Model)
}
