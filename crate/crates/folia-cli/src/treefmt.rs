//! Deterministic serialization of reduction trees: JSON and DOT (dual
//! graph). Exceptional curves are named E1, E2, ... in creation order.

use serde::Serialize;
use serde_json::Value;

use folia_core::blowup::{BlowupTree, ChartSide};
use folia_core::germ::SingClass;

use crate::expr::print_foliation;

#[derive(Serialize)]
struct EventJson {
    chart: usize,
    center: [String; 2],
    multiplicity: u32,
    dicritical: bool,
    children: [usize; 2],
    curve: String,
}

#[derive(Serialize)]
struct ChartJson {
    id: usize,
    depth: usize,
    germ: String,
    parent: Option<(usize, String)>,
    exceptional_lines: Vec<(String, String)>,
}

#[derive(Serialize)]
struct SingularPointJson {
    chart: usize,
    point: [String; 2],
    class: String,
}

#[derive(Serialize)]
struct LedgerJson {
    curve: String,
    self_intersection: String,
    invariant: bool,
    singular_points: Vec<SingularPointJson>,
    adjacent: Vec<String>,
}

#[derive(Serialize)]
struct ReportJson {
    chart: usize,
    residual: String,
}

#[derive(Serialize)]
struct TreeJson {
    version: u64,
    root: String,
    complete: bool,
    events: Vec<EventJson>,
    charts: Vec<ChartJson>,
    ledger: Vec<LedgerJson>,
    reports: Vec<ReportJson>,
}

pub fn curve_name(id: usize) -> String {
    format!("E{}", id + 1)
}

fn side_name(side: ChartSide) -> String {
    match side {
        ChartSide::First => "first".to_string(),
        ChartSide::Second => "second".to_string(),
    }
}

fn class_name(c: &SingClass) -> String {
    format!("{c}")
}

pub fn tree_to_json(tree: &BlowupTree) -> Value {
    let t = TreeJson {
        version: crate::scene::FORMAT_VERSION,
        root: print_foliation(&tree.root),
        complete: tree.is_complete(),
        events: tree
            .events
            .iter()
            .map(|e| EventJson {
                chart: e.chart,
                center: [format!("{}", e.center.0), format!("{}", e.center.1)],
                multiplicity: e.multiplicity,
                dicritical: e.dicritical,
                children: e.children,
                curve: curve_name(e.curve),
            })
            .collect(),
        charts: tree
            .charts
            .iter()
            .map(|c| ChartJson {
                id: c.id,
                depth: c.depth,
                germ: print_foliation(&c.germ),
                parent: c.parent.map(|(id, s)| (id, side_name(s))),
                exceptional_lines: c
                    .exceptional_lines
                    .iter()
                    .map(|(cid, eq)| (curve_name(*cid), format!("{eq}")))
                    .collect(),
            })
            .collect(),
        ledger: tree
            .ledger
            .iter()
            .map(|e| LedgerJson {
                curve: curve_name(e.id),
                self_intersection: format!("{}", e.self_intersection),
                invariant: e.invariant,
                singular_points: e
                    .singular_points
                    .iter()
                    .map(|sp| SingularPointJson {
                        chart: sp.chart,
                        point: [format!("{}", sp.point.0), format!("{}", sp.point.1)],
                        class: class_name(&sp.class),
                    })
                    .collect(),
                adjacent: e.adjacent.iter().map(|&id| curve_name(id)).collect(),
            })
            .collect(),
        reports: tree
            .reports
            .iter()
            .map(|r| ReportJson {
                chart: r.chart,
                residual: format!("{:?}", r.residual),
            })
            .collect(),
    };
    serde_json::to_value(t).unwrap()
}

/// Dual graph of the exceptional divisor in DOT form; nodes labelled with
/// self-intersection and invariance.
pub fn tree_to_dot(tree: &BlowupTree) -> String {
    let mut out = String::from("graph reduction {\n");
    for e in &tree.ledger {
        let inv = if e.invariant { "invariant" } else { "not invariant" };
        out.push_str(&format!(
            "  {} [label=\"{} ({}) {}\"];\n",
            curve_name(e.id),
            curve_name(e.id),
            e.self_intersection,
            inv
        ));
    }
    for e in &tree.ledger {
        for &other in &e.adjacent {
            if other > e.id {
                out.push_str(&format!(
                    "  {} -- {};\n",
                    curve_name(e.id),
                    curve_name(other)
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}
