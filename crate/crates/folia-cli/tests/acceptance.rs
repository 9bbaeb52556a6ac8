//! End-to-end acceptance suite: one test per guaranteed property of the
//! toolkit, all exact (rational arithmetic, zero tolerance).

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use folia_core::algebra::branch::solve_smooth_branch;
use folia_core::algebra::multiplicity::{local_intersection_multiplicity, quotient_dim_stable};
use folia_core::algebra::rat::Rat;
use folia_core::blowup::{blow_up, ledger_to_surface, reduce_seidenberg, ChartSide};
use folia_core::germ::{
    classify_at, combine_at_node, cs_index, z_index, IndexKind, IndexRecord,
};
use folia_core::models::{
    base_chi_orb, kodaira_from_degree, pushforward_degree, Kodaira, RiccatiModel,
};
use folia_core::surface::{
    blow_up_point, classify_component, contract_negative_curve, intersect, is_nef, kf_degree,
    negative_definite, verify_camacho_sad, zariski_decompose, ComponentCase, CurveData, CurveKind,
    QDivisor, SingularityRecord, SurfaceModel,
};
use folia_core::{BiPoly, Branch, FoliationGerm};

fn p(s: &str) -> BiPoly {
    s.parse().unwrap()
}

fn germ(ps: &str, qs: &str) -> FoliationGerm {
    FoliationGerm::new(p(ps), p(qs)).unwrap()
}

/// The linear germ z d/dz + lambda w d/dw.
fn linear(lambda: &Rat) -> FoliationGerm {
    FoliationGerm::new(BiPoly::var_z(), BiPoly::var_w().scale(lambda)).unwrap()
}

/// Smooth branch of an axis (or any smooth curve) through a point.
fn branch(f: &str, at: &(Rat, Rat)) -> Branch {
    solve_smooth_branch(&p(f), at, 16).unwrap()
}

fn origin() -> (Rat, Rat) {
    (Rat::zero(), Rat::zero())
}

fn rec(kind: IndexKind, value: Rat) -> IndexRecord {
    IndexRecord {
        kind,
        value,
        point: origin(),
        curve: None,
        orbifold_order: 1,
    }
}

/// Seeded rational in (0, bound] with denominator at most `bound`.
fn random_positive_rat(rng: &mut ChaCha8Rng, bound: i64) -> Rat {
    Rat::new(rng.random_range(1..=bound), rng.random_range(1..=bound))
}

/// 1. Index tables of the reduced local models, exact: both separatrices of
/// the nondegenerate linear germ carry Z = 1 and CS = lambda, 1/lambda; the
/// node-combined values are 0 and lambda + 1/lambda + 2; saddle-nodes give
/// (1, 0) on the strong separatrix and Z = k + 1 on the weak one.
#[test]
fn index_tables_linear_and_saddle_node() {
    let t0 = Instant::now();
    let lambdas = [
        Rat::from_int(-1),
        Rat::from_int(-2),
        Rat::new(-2, 3),
        Rat::from_int(5),
    ];
    for lam in &lambdas {
        let g = linear(lam);
        let w0 = branch("w", &origin());
        let z0 = branch("z", &origin());
        assert_eq!(z_index(&g, &w0), Ok(1), "Z on {{w=0}} for lambda={lam}");
        assert_eq!(z_index(&g, &z0), Ok(1), "Z on {{z=0}} for lambda={lam}");
        assert_eq!(cs_index(&g, &w0), Ok(lam.clone()));
        assert_eq!(cs_index(&g, &z0), Ok(lam.recip()));

        let z_node = combine_at_node(
            IndexKind::Z,
            &rec(IndexKind::Z, Rat::one()),
            &rec(IndexKind::Z, Rat::one()),
        )
        .unwrap();
        assert_eq!(z_node.value, Rat::zero());
        let cs_node = combine_at_node(
            IndexKind::Cs,
            &rec(IndexKind::Cs, lam.clone()),
            &rec(IndexKind::Cs, lam.recip()),
        )
        .unwrap();
        assert_eq!(cs_node.value, &(lam + &lam.recip()) + &Rat::from_int(2));

        // Positive rational ratios are rejected from the reduced classes.
        assert_eq!(classify_at(&g).is_reduced(), !lam.is_positive());
    }
    for k in 1..=3u32 {
        let g = FoliationGerm::new(BiPoly::var_z(), BiPoly::monomial(0, k + 1, Rat::one()))
            .unwrap();
        let strong = branch("w", &origin());
        let weak = branch("z", &origin());
        assert_eq!(z_index(&g, &strong), Ok(1), "saddle-node k={k} strong Z");
        assert_eq!(cs_index(&g, &strong), Ok(Rat::zero()), "saddle-node k={k} strong CS");
        assert_eq!(z_index(&g, &weak), Ok(k as i64 + 1), "saddle-node k={k} weak Z");
    }
    assert!(t0.elapsed() < Duration::from_secs(1), "index tables too slow");
}

/// 2. Index-sum closure on the compactified linear model: each of the three
/// invariant lines (self-intersection 1) has CS sum exactly 1, for 20 seeded
/// random rational lambda that are neither zero nor positive.
#[test]
fn camacho_sad_closure_on_compactified_linear_model() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0f01_1a01);
    for trial in 0..20 {
        let lam = -&random_positive_rat(&mut rng, 30);
        // Affine chart and the two charts at infinity of the linear model:
        // the coordinates are renamed to (z, w) in each chart.
        let g0 = linear(&lam);
        let g1 = FoliationGerm::new(
            BiPoly::var_z().scale(&Rat::from_int(-1)),
            BiPoly::var_w().scale(&(&lam - &Rat::one())),
        )
        .unwrap();
        let g2 = FoliationGerm::new(
            BiPoly::var_z().scale(&-&lam),
            BiPoly::var_w().scale(&(&Rat::one() - &lam)),
        )
        .unwrap();
        let w0 = branch("w", &origin());
        let z0 = branch("z", &origin());

        // First axis: seen in charts 0 and 1.
        let l1 = &cs_index(&g0, &w0).unwrap() + &cs_index(&g1, &w0).unwrap();
        // Second axis: seen in charts 0 and 2.
        let l2 = &cs_index(&g0, &z0).unwrap() + &cs_index(&g2, &w0).unwrap();
        // Line at infinity: seen in charts 1 and 2.
        let li = &cs_index(&g1, &z0).unwrap() + &cs_index(&g2, &z0).unwrap();
        for (name, sum) in [("axis1", &l1), ("axis2", &l2), ("infinity", &li)] {
            assert_eq!(*sum, Rat::one(), "trial {trial}, line {name}, lambda {lam}");
        }

        // The same data assembled as a surface model passes the verifier and
        // has K_F degree 0 on every line.
        let pairs = [
            (cs_index(&g0, &w0).unwrap(), cs_index(&g1, &w0).unwrap()),
            (cs_index(&g0, &z0).unwrap(), cs_index(&g2, &w0).unwrap()),
            (cs_index(&g1, &z0).unwrap(), cs_index(&g2, &z0).unwrap()),
        ];
        let mut curves = Vec::new();
        for (i, (a, b)) in pairs.iter().enumerate() {
            let mut c = CurveData::new(i, CurveKind::Rational, true);
            for (pt, cs) in [(2 * i, a), (2 * i + 1, b)] {
                c.singularities.push(SingularityRecord {
                    point: pt,
                    z: Some(1),
                    cs: Some(cs.clone()),
                    tang: None,
                });
            }
            curves.push(c);
        }
        let matrix = vec![vec![Rat::one(); 3]; 3];
        let m = SurfaceModel::new(curves, matrix).unwrap();
        for i in 0..3 {
            assert!(verify_camacho_sad(&m, i).unwrap().pass());
            assert_eq!(kf_degree(&m, i), Ok(Rat::zero()));
        }
    }
    assert!(t0.elapsed() < Duration::from_secs(5), "closure check too slow");
}

/// Germ corpus: linear saddles, the cusp, saddle-nodes, the homogeneous
/// quadratic germ, and seeded quadratic perturbations of the linear model.
fn corpus() -> Vec<FoliationGerm> {
    let mut v = vec![
        linear(&Rat::from_int(-1)),
        linear(&Rat::from_int(-2)),
        linear(&Rat::new(-2, 3)),
        linear(&Rat::new(-5, 3)),
        germ("2*w", "3*z^2"),
        germ("z", "w^2"),
        germ("z", "w^3"),
        germ("z^2", "w^2"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0_0d_ba5e);
    for _ in 0..4 {
        let lam = -&random_positive_rat(&mut rng, 9);
        let a = random_positive_rat(&mut rng, 5);
        let b = random_positive_rat(&mut rng, 5);
        // z(1 + a z) d/dz + w(lambda + b w) d/dw: diagonal linear part, so
        // every blow-up center stays rational.
        let pp = &BiPoly::var_z() + &BiPoly::monomial(2, 0, a);
        let qq = &BiPoly::var_w().scale(&lam) + &BiPoly::monomial(0, 2, b);
        v.push(FoliationGerm::new(pp, qq).unwrap());
    }
    v
}

/// CS value of the exceptional curve branch at one singular point of a
/// blow-up event.
fn cs_on_exceptional(event: &folia_core::blowup::BlowupEvent, side: ChartSide, pt: &(Rat, Rat)) -> Rat {
    let (germ, eq) = match side {
        ChartSide::First => (&event.germs[0], "z"),
        ChartSide::Second => (&event.germs[1], "w"),
    };
    let local = germ.at_point(pt.clone());
    let b = solve_smooth_branch(&p(eq), pt, 16).unwrap();
    cs_index(&local, &b).unwrap()
}

/// 3. Index sums on exceptional divisors: one non-dicritical blow-up gives
/// CS sum -1 on E; after full reduction every exceptional curve's CS sum
/// equals its ledger self-intersection.
#[test]
fn camacho_sad_on_exceptional_divisors() {
    let t0 = Instant::now();
    let germs = corpus();
    assert!(germs.len() >= 10);
    for (i, g) in germs.iter().enumerate() {
        // Single blow-up at the origin.
        let event = blow_up(g).unwrap();
        assert!(!event.dicritical, "corpus germ {i} must be non-dicritical");
        assert!(event.residual.is_empty(), "corpus germ {i} has irrational slopes");
        let mut sum = Rat::zero();
        for ep in &event.on_curve {
            sum += cs_on_exceptional(&event, ep.side, &ep.point);
        }
        assert_eq!(sum, Rat::from_int(-1), "CS sum on E for corpus germ {i}");

        // Full reduction: the ledger self-intersections certify the sums.
        let tree = reduce_seidenberg(g, 16).unwrap();
        assert!(tree.is_complete());
        if tree.ledger.is_empty() {
            continue; // already reduced at the origin
        }
        let model = ledger_to_surface(&tree).unwrap();
        for entry in &tree.ledger {
            if !entry.invariant {
                continue;
            }
            let verdict = verify_camacho_sad(&model, entry.id).unwrap();
            assert!(
                verdict.pass(),
                "corpus germ {i}, curve {}: CS sum {} vs {}",
                entry.id,
                verdict.cs_sum,
                verdict.self_intersection
            );
            assert_eq!(verdict.self_intersection, entry.self_intersection);
        }
    }
    assert!(t0.elapsed() < Duration::from_secs(30), "divisor sums too slow");
}

/// 4. Stability of the reduced classes: blowing up a reduced germ produces
/// only reduced singular points on the exceptional curve, no exceptions.
#[test]
fn reduced_singularities_are_stable_under_blow_up() {
    let mut checked = 0;
    for (i, g) in corpus().iter().enumerate() {
        if !classify_at(g).is_reduced() {
            continue;
        }
        let event = blow_up(g).unwrap();
        assert!(event.residual.is_empty(), "corpus germ {i}");
        for ep in &event.on_curve {
            assert!(
                ep.class.is_reduced(),
                "corpus germ {i} produced a non-reduced point {:?} at {:?}",
                ep.class,
                ep.point
            );
        }
        checked += 1;
    }
    assert!(checked >= 7, "too few reduced corpus germs ({checked})");
}

/// 5. Reduction terminates within depth 16 on every corpus germ (all of
/// multiplicity at most 3) and the tree is byte-deterministic.
#[test]
fn reduction_terminates_and_is_deterministic() {
    let extended = {
        let mut v = corpus();
        v.push(germ("z^3", "w^3"));
        v
    };
    for (i, g) in extended.iter().enumerate() {
        let mult = g
            .p()
            .order_at_origin()
            .into_iter()
            .chain(g.q().order_at_origin())
            .min()
            .unwrap();
        assert!(mult <= 3, "corpus germ {i} multiplicity {mult}");
        let a = reduce_seidenberg(g, 16).unwrap();
        assert!(a.is_complete(), "corpus germ {i} incomplete at depth 16");
        assert!(a.charts.iter().all(|c| c.depth <= 16));
        let b = reduce_seidenberg(g, 16).unwrap();
        assert_eq!(a, b, "corpus germ {i} not deterministic");
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }
}

/// 6. The recursive intersection-multiplicity procedure agrees with the
/// truncated-monomial linear-algebra oracle on all corpus curve pairs.
#[test]
fn multiplicity_oracles_agree() {
    let curves = [
        "z",
        "w",
        "z+w",
        "w-z^2",
        "w^2-z^3",
        "w-z^3",
        "w^2-z^5",
        "w^3-z^2",
        "z^2+w^3-z*w",
    ];
    let o = origin();
    let mut pairs = 0;
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            let f = p(curves[i]);
            let g = p(curves[j]);
            if !f.gcd(&g).is_constant() {
                continue;
            }
            let rec = local_intersection_multiplicity(&f, &g, &o)
                .finite()
                .unwrap_or_else(|| panic!("({}, {}) not finite", curves[i], curves[j]));
            assert!(rec <= 12, "({}, {}) multiplicity {rec} too big", curves[i], curves[j]);
            let oracle = quotient_dim_stable(&f, &g, 256).unwrap();
            assert_eq!(
                rec, oracle,
                "oracle mismatch on ({}, {})",
                curves[i], curves[j]
            );
            pairs += 1;
        }
    }
    assert!(pairs >= 30, "too few comparable pairs ({pairs})");
}

/// Model with prescribed rational self-intersections, pairing 1 on edges.
fn config(diag: &[Rat], edges: &[(usize, usize)]) -> SurfaceModel {
    let n = diag.len();
    let mut matrix = vec![vec![Rat::zero(); n]; n];
    for (i, d) in diag.iter().enumerate() {
        matrix[i][i] = d.clone();
    }
    for &(i, j) in edges {
        matrix[i][j] = Rat::one();
        matrix[j][i] = Rat::one();
    }
    let curves = (0..n)
        .map(|i| CurveData::new(i, CurveKind::Rational, true))
        .collect();
    SurfaceModel::new(curves, matrix).unwrap()
}

fn int_diag(values: &[i64]) -> Vec<Rat> {
    values.iter().map(|&v| Rat::from_int(v)).collect()
}

/// 7. Zariski decomposition on generated negative-definite chains and
/// cycles: N effective, Gram negative-definite, P orthogonal to the support,
/// and decomposition of P is (P, 0).
#[test]
fn zariski_decomposition_certificates() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x2a41_51c1);
    let mut configs: Vec<(SurfaceModel, QDivisor)> = Vec::new();

    // Chains of length 2..=6, all (-2)-curves and randomized diagonals.
    for n in 2..=6usize {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        for variant in 0..3 {
            let diag: Vec<i64> = (0..n)
                .map(|_| match variant {
                    0 => -2,
                    1 => -3,
                    _ => -rng.random_range(2..=4),
                })
                .collect();
            let l = QDivisor::from_coeffs(
                (0..n).map(|i| (i, Rat::from_int(rng.random_range(0..=3)))),
            );
            configs.push((config(&int_diag(&diag), &edges), l));
        }
    }
    // Cycles of length 3..=6 with diagonals at most -3 (strictly
    // diagonally dominant, hence negative definite).
    for n in 3..=6usize {
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        let diag: Vec<i64> = (0..n).map(|_| -rng.random_range(3..=5)).collect();
        let l = QDivisor::from_coeffs(
            (0..n).map(|i| (i, Rat::from_int(rng.random_range(0..=3)))),
        );
        configs.push((config(&int_diag(&diag), &edges), l));
    }
    // Mixed: a negative-definite chain plus a disjoint positive curve that
    // survives into P.
    for n in 2..=4usize {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let mut diag = int_diag(&vec![-2; n]);
        diag.push(Rat::one());
        let m = config(&diag, &edges);
        let mut l = QDivisor::from_coeffs((0..n).map(|i| (i, Rat::one())));
        l.set(n, Rat::from_int(2));
        configs.push((m, l));
    }
    assert!(configs.len() >= 20, "only {} configurations", configs.len());

    for (idx, (m, l)) in configs.iter().enumerate() {
        let d = zariski_decompose(l, m).unwrap_or_else(|e| panic!("config {idx}: {e:?}"));
        assert!(d.negative.is_effective(), "config {idx}: N not effective");
        assert!(
            negative_definite(&d.certificate.leading_minors),
            "config {idx}: Gram not negative definite"
        );
        for r in &d.certificate.residuals {
            assert!(r.is_zero(), "config {idx}: P not orthogonal to Supp N");
        }
        for j in d.certificate.support.iter() {
            assert!(intersect(&d.positive, &QDivisor::curve(*j), m).unwrap().is_zero());
        }
        assert_eq!(d.positive.add(&d.negative), *l, "config {idx}: P + N != L");
        assert!(is_nef(&d.positive, m).unwrap().nef, "config {idx}: P not nef");
        let again = zariski_decompose(&d.positive, m).unwrap();
        assert!(again.negative.is_zero(), "config {idx}: not idempotent");
        assert_eq!(again.positive, d.positive);
    }
    assert!(t0.elapsed() < Duration::from_secs(5), "decomposition too slow");
}

/// Contractible-curve model: curve 0 with the (k, l) profile meeting a
/// (-2)-curve once.
fn contraction_model(k: i64, l: i64) -> SurfaceModel {
    let mut m = config(
        &[Rat::new(-l, k), Rat::from_int(-2)],
        &[(0, 1)],
    );
    let mut curves = m.curves().to_vec();
    if k > 1 {
        curves[0].orbifold_orders = vec![k as u64];
    }
    curves[0].singularities.push(SingularityRecord {
        point: 0,
        z: Some(1),
        cs: None,
        tang: None,
    });
    curves[1].singularities.push(SingularityRecord {
        point: 0,
        z: Some(1),
        cs: None,
        tang: None,
    });
    let matrix: Vec<Vec<Rat>> = (0..2)
        .map(|i| (0..2).map(|j| m.pairing(i, j).unwrap()).collect())
        .collect();
    m = SurfaceModel::new(curves, matrix).unwrap();
    m
}

/// 8. Contraction calculus: the four (k, l) profiles produce the stated
/// orbifold order and intersection correction, and the (1, 1) case
/// round-trips with the blow-up bookkeeping.
#[test]
fn contraction_profiles_and_round_trip() {
    // (k, l, expected D^2 after, expected orbifold orders on D).
    let cases: [(i64, i64, Rat, Vec<u64>); 4] = [
        (1, 1, Rat::from_int(-1), vec![]),
        (1, 2, Rat::new(-3, 2), vec![2]),
        (2, 1, Rat::zero(), vec![]),
        (3, 2, Rat::new(-1, 2), vec![2]),
    ];
    for (k, l, dd, orders) in &cases {
        let m = contraction_model(*k, *l);
        let out = contract_negative_curve(&m, 0)
            .unwrap_or_else(|e| panic!("(k, l) = ({k}, {l}): {e}"));
        assert_eq!(out.curves().len(), 1);
        assert_eq!(out.self_intersection(1), Ok(dd.clone()), "(k, l) = ({k}, {l})");
        assert_eq!(out.curves()[0].orbifold_orders, *orders, "(k, l) = ({k}, {l})");
        // Correction formula on the only remaining pair: D.D gained
        // (D.C)^2 k / l = k / l.
        assert_eq!(dd, &(&m.self_intersection(1).unwrap() + &Rat::new(*k, *l)));
    }

    // Round trip for (k, l) = (1, 1) on a three-curve chain.
    let mut curves: Vec<CurveData> = (0..3)
        .map(|i| CurveData::new(i, CurveKind::Rational, true))
        .collect();
    curves[0].singularities.push(SingularityRecord {
        point: 0,
        z: Some(1),
        cs: Some(Rat::from_int(-1)),
        tang: None,
    });
    let mut matrix = vec![vec![Rat::zero(); 3]; 3];
    for (i, d) in [-1i64, -2, -3].iter().enumerate() {
        matrix[i][i] = Rat::from_int(*d);
    }
    for (i, j) in [(0usize, 1usize), (1, 2)] {
        matrix[i][j] = Rat::one();
        matrix[j][i] = Rat::one();
    }
    let m = SurfaceModel::new(curves, matrix).unwrap();
    let contracted = contract_negative_curve(&m, 0).unwrap();
    let back = blow_up_point(
        &contracted,
        &[(1, Rat::one())],
        CurveData::new(0, CurveKind::Rational, true),
    )
    .unwrap();
    for a in 0..3 {
        for b in 0..3 {
            assert_eq!(back.pairing(a, b), m.pairing(a, b), "entry ({a}, {b})");
        }
    }
}

/// 9. Riccati calculator: anchor values and monotonicity of the
/// direct-image degree in every fiber parameter.
#[test]
fn riccati_degree_and_kodaira() {
    // Genus 0, no special fibers: degree -2, Kodaira -infinity.
    let plain = RiccatiModel {
        chi_top: 2,
        ..Default::default()
    };
    assert_eq!(pushforward_degree(&plain), Rat::from_int(-2));
    assert_eq!(kodaira_from_degree(&pushforward_degree(&plain)), Kodaira::MinusInfinity);

    // Elliptic base with one invariant saddle-node fiber: degree 1.
    let elliptic = RiccatiModel {
        chi_top: 0,
        c_count: 1,
        ..Default::default()
    };
    assert_eq!(pushforward_degree(&elliptic), Rat::one());
    assert_eq!(kodaira_from_degree(&pushforward_degree(&elliptic)), Kodaira::One);

    // Two order-2 fibers balanced by one multiplicity-1 fiber: degree 0.
    let balanced = RiccatiModel {
        chi_top: 2,
        b_orders: vec![2, 2],
        d_multiplicities: vec![1],
        ..Default::default()
    };
    assert_eq!(base_chi_orb(&balanced), Rat::one());
    assert_eq!(pushforward_degree(&balanced), Rat::zero());
    assert_eq!(kodaira_from_degree(&pushforward_degree(&balanced)), Kodaira::Zero);

    // Monotonicity grid: the degree never drops when any parameter grows.
    for k in 2..=6u64 {
        for m in 1..=6u64 {
            for l in 1..=6u64 {
                let base = RiccatiModel {
                    chi_top: 2,
                    b_orders: vec![k],
                    c_count: 1,
                    d_multiplicities: vec![m],
                    e_multiplicities: vec![l],
                };
                base.validate().unwrap();
                let d = pushforward_degree(&base);
                for (bump_k, bump_m, bump_l, bump_c) in
                    [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
                {
                    let up = RiccatiModel {
                        chi_top: 2,
                        b_orders: vec![k + bump_k],
                        c_count: 1 + bump_c,
                        d_multiplicities: vec![m + bump_m],
                        e_multiplicities: vec![l + bump_l],
                    };
                    assert!(
                        pushforward_degree(&up) >= d,
                        "degree dropped from (k, m, l) = ({k}, {m}, {l})"
                    );
                }
            }
        }
    }
}

/// The five archetype components, rebuilt through the public constructors.
fn archetypes() -> Vec<(ComponentCase, Vec<usize>, SurfaceModel)> {
    let mut out = Vec::new();

    // (a) an isolated smooth elliptic curve.
    let mut a = CurveData::new(0, CurveKind::Elliptic, true);
    a.kx_degree = None;
    let ma = SurfaceModel::new(vec![a], vec![vec![Rat::zero()]]).unwrap();
    out.push((ComponentCase::A, vec![0], ma));

    // (b) a triangle of (-2)-curves with one singularity per node.
    let mut curves: Vec<CurveData> = (0..3)
        .map(|i| CurveData::new(i, CurveKind::Rational, true))
        .collect();
    let mut pid = 0;
    for (i, j) in [(0usize, 1usize), (1, 2), (2, 0)] {
        for c in [i, j] {
            curves[c].singularities.push(SingularityRecord {
                point: pid,
                z: Some(1),
                cs: Some(Rat::from_int(-1)),
                tang: None,
            });
        }
        pid += 1;
    }
    let mut matrix = vec![vec![Rat::zero(); 3]; 3];
    for i in 0..3 {
        matrix[i][i] = Rat::from_int(-2);
    }
    for (i, j) in [(0usize, 1usize), (1, 2), (2, 0)] {
        matrix[i][j] = Rat::one();
        matrix[j][i] = Rat::one();
    }
    let mb = SurfaceModel::new(curves, matrix).unwrap();
    out.push((ComponentCase::B, vec![0, 1, 2], mb));

    // (c) one rational curve with orbifold orders (2, 3, 6).
    let mut c = CurveData::new(0, CurveKind::Rational, true);
    c.orbifold_orders = vec![2, 3, 6];
    let mc = SurfaceModel::new(vec![c], vec![vec![Rat::zero()]]).unwrap();
    out.push((ComponentCase::C, vec![0], mc));

    // (d) one rational curve with four order-2 points.
    let mut d = CurveData::new(0, CurveKind::Rational, true);
    d.orbifold_orders = vec![2, 2, 2, 2];
    let md = SurfaceModel::new(vec![d], vec![vec![Rat::zero()]]).unwrap();
    out.push((ComponentCase::D, vec![0], md));

    // (e) a chain of three (-2)-curves, extremes with two order-2 points.
    let mut curves: Vec<CurveData> = (0..3)
        .map(|i| CurveData::new(i, CurveKind::Rational, true))
        .collect();
    curves[0].orbifold_orders = vec![2, 2];
    curves[2].orbifold_orders = vec![2, 2];
    let mut matrix = vec![vec![Rat::zero(); 3]; 3];
    for i in 0..3 {
        matrix[i][i] = Rat::from_int(-2);
    }
    for (i, j) in [(0usize, 1usize), (1, 2)] {
        matrix[i][j] = Rat::one();
        matrix[j][i] = Rat::one();
    }
    let me = SurfaceModel::new(curves, matrix).unwrap();
    out.push((ComponentCase::E, vec![0, 1, 2], me));

    out
}

/// One structural edit of a model: returns the corrupted variants.
fn corruptions(case: ComponentCase, model: &SurfaceModel) -> Vec<SurfaceModel> {
    let rebuild = |curves: Vec<CurveData>, matrix: Vec<Vec<Rat>>| {
        SurfaceModel::new(curves, matrix).unwrap()
    };
    let matrix_of = |m: &SurfaceModel| -> Vec<Vec<Rat>> {
        let n = m.curves().len();
        (0..n)
            .map(|i| (0..n).map(|j| m.pairing(i, j).unwrap()).collect())
            .collect()
    };
    let mut variants = Vec::new();
    match case {
        ComponentCase::A => {
            let mut c = model.curves().to_vec();
            c[0].orbifold_orders = vec![2];
            variants.push(rebuild(c, matrix_of(model)));
            let mut c = model.curves().to_vec();
            c[0].singularities.push(SingularityRecord {
                point: 0,
                z: Some(1),
                cs: Some(Rat::from_int(-1)),
                tang: None,
            });
            variants.push(rebuild(c, matrix_of(model)));
            let mut c = model.curves().to_vec();
            c[0].kind = CurveKind::Rational;
            variants.push(rebuild(c, matrix_of(model)));
            let mut c = model.curves().to_vec();
            c[0].invariant = false;
            variants.push(rebuild(c, matrix_of(model)));
        }
        ComponentCase::B => {
            let mut c = model.curves().to_vec();
            c[0].singularities.pop();
            variants.push(rebuild(c, matrix_of(model)));
            let mut c = model.curves().to_vec();
            c[1].kind = CurveKind::Elliptic;
            variants.push(rebuild(c, matrix_of(model)));
            let mut m = matrix_of(model);
            m[0][2] = Rat::zero();
            m[2][0] = Rat::zero();
            variants.push(rebuild(model.curves().to_vec(), m));
            let mut c = model.curves().to_vec();
            c[0].singularities.push(SingularityRecord {
                point: 99,
                z: Some(1),
                cs: Some(Rat::from_int(-1)),
                tang: None,
            });
            variants.push(rebuild(c, matrix_of(model)));
        }
        ComponentCase::C => {
            for orders in [vec![2, 3, 5], vec![2, 3], vec![2, 3, 6, 2]] {
                let mut c = model.curves().to_vec();
                c[0].orbifold_orders = orders;
                variants.push(rebuild(c, matrix_of(model)));
            }
            let mut c = model.curves().to_vec();
            c[0].kind = CurveKind::Elliptic;
            variants.push(rebuild(c, matrix_of(model)));
        }
        ComponentCase::D => {
            for orders in [
                vec![2, 2, 2],
                vec![2, 2, 2, 3],
                vec![2, 2, 2, 2, 2],
            ] {
                let mut c = model.curves().to_vec();
                c[0].orbifold_orders = orders;
                variants.push(rebuild(c, matrix_of(model)));
            }
            let mut c = model.curves().to_vec();
            c[0].kind = CurveKind::Elliptic;
            variants.push(rebuild(c, matrix_of(model)));
        }
        ComponentCase::E => {
            let mut c = model.curves().to_vec();
            c[0].orbifold_orders = vec![2];
            variants.push(rebuild(c, matrix_of(model)));
            let mut c = model.curves().to_vec();
            c[2].orbifold_orders = vec![];
            variants.push(rebuild(c, matrix_of(model)));
            let mut c = model.curves().to_vec();
            c[1].orbifold_orders = vec![2, 2];
            variants.push(rebuild(c, matrix_of(model)));
            let mut m = matrix_of(model);
            m[0][2] = Rat::one();
            m[2][0] = Rat::one();
            variants.push(rebuild(model.curves().to_vec(), m));
        }
    }
    variants
}

/// 10. Component classifier: the five archetypes classify to their case and
/// each of the twenty one-edit corruptions returns none or a different case.
#[test]
fn component_classifier_archetypes_and_corruptions() {
    let archetypes = archetypes();
    assert_eq!(archetypes.len(), 5);
    let mut corrupted_total = 0;
    for (case, component, model) in &archetypes {
        assert_eq!(
            classify_component(component, model),
            Ok(Some(*case)),
            "archetype {case:?} misclassified"
        );
        let variants = corruptions(*case, model);
        assert_eq!(variants.len(), 4);
        for (i, v) in variants.iter().enumerate() {
            let got = classify_component(component, v).unwrap();
            assert_ne!(
                got,
                Some(*case),
                "corruption {i} of {case:?} still classifies as {case:?}"
            );
        }
        corrupted_total += variants.len();
    }
    assert_eq!(corrupted_total, 20);
}
