//! Scene and model file formats: versioned JSON for surface models, divisor
//! inputs, and Riccati models, with an optional strict mode that rejects
//! unknown fields.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use folia_core::algebra::rat::Rat;
use folia_core::models::RiccatiModel;
use folia_core::surface::{
    CurveData, CurveKind, ModelError, QDivisor, SingularityRecord, SurfaceModel,
};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug)]
pub enum SceneError {
    Json(serde_json::Error),
    UnsupportedVersion(u64),
    UnknownField(String),
    BadRational(String),
    Model(ModelError),
    MatrixShape,
}

impl fmt::Display for SceneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SceneError::Json(e) => write!(f, "invalid JSON: {e}"),
            SceneError::UnsupportedVersion(v) => write!(f, "unsupported format version {v}"),
            SceneError::UnknownField(k) => write!(f, "unknown field \"{k}\""),
            SceneError::BadRational(s) => write!(f, "invalid rational literal \"{s}\""),
            SceneError::Model(e) => write!(f, "invalid model: {e}"),
            SceneError::MatrixShape => {
                write!(f, "matrix must be the lower triangle, row i of length i+1")
            }
        }
    }
}

impl std::error::Error for SceneError {}

impl From<serde_json::Error> for SceneError {
    fn from(e: serde_json::Error) -> Self {
        SceneError::Json(e)
    }
}

impl From<ModelError> for SceneError {
    fn from(e: ModelError) -> Self {
        SceneError::Model(e)
    }
}

fn rat_to_string(r: &Rat) -> String {
    format!("{r}")
}

fn rat_from_string(s: &str) -> Result<Rat, SceneError> {
    s.parse().map_err(|_| SceneError::BadRational(s.to_string()))
}

#[derive(Debug, Serialize, Deserialize)]
struct SingularityJson {
    point: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    z: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tang: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CurveJson {
    id: usize,
    kind: String,
    invariant: bool,
    #[serde(default)]
    orbifold_orders: Vec<u64>,
    #[serde(default)]
    singularities: Vec<SingularityJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kx_degree: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SceneJson {
    version: u64,
    curves: Vec<CurveJson>,
    /// Lower triangle of the symmetric intersection matrix: row i holds the
    /// pairings with curves 0..=i, as exact rationals.
    matrix: Vec<Vec<String>>,
    /// Optional divisor (curve id -> coefficient) for divisor subcommands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    divisor: Option<BTreeMap<String, String>>,
}

/// Expected object keys per scene schema path, for strict mode.
fn scene_schema() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("", vec!["version", "curves", "matrix", "divisor"]),
        (
            "curves[]",
            vec![
                "id",
                "kind",
                "invariant",
                "orbifold_orders",
                "singularities",
                "kx_degree",
            ],
        ),
        ("curves[].singularities[]", vec!["point", "z", "cs", "tang"]),
    ]
}

/// Reject any object key not in the documented schema.
fn check_strict(
    value: &Value,
    path: &str,
    schema: &[(&str, Vec<&str>)],
) -> Result<(), SceneError> {
    match value {
        Value::Object(map) => {
            if let Some((_, keys)) = schema.iter().find(|(p, _)| *p == path) {
                for k in map.keys() {
                    if !keys.contains(&k.as_str()) {
                        return Err(SceneError::UnknownField(format!("{path}/{k}")));
                    }
                    // Divisor maps have free-form keys.
                    let sub = format!("{path}/{k}");
                    let sub_path = match (path, k.as_str()) {
                        ("", "curves") => "curves[]".to_string(),
                        ("curves[]", "singularities") => "curves[].singularities[]".to_string(),
                        _ => sub,
                    };
                    check_strict(&map[k], &sub_path, schema)?;
                }
            }
            Ok(())
        }
        Value::Array(items) => {
            for it in items {
                check_strict(it, path, schema)?;
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

/// Parse a scene file into a surface model plus its optional divisor.
pub fn parse_scene(text: &str, strict: bool) -> Result<(SurfaceModel, Option<QDivisor>), SceneError> {
    let value: Value = serde_json::from_str(text)?;
    if strict {
        check_strict(&value, "", &scene_schema())?;
    }
    let scene: SceneJson = serde_json::from_value(value)?;
    if scene.version != FORMAT_VERSION {
        return Err(SceneError::UnsupportedVersion(scene.version));
    }
    let n = scene.curves.len();
    if scene.matrix.len() != n || scene.matrix.iter().enumerate().any(|(i, r)| r.len() != i + 1) {
        return Err(SceneError::MatrixShape);
    }
    let mut matrix = vec![vec![Rat::zero(); n]; n];
    for (i, row) in scene.matrix.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            let r = rat_from_string(s)?;
            matrix[i][j] = r.clone();
            matrix[j][i] = r;
        }
    }
    let mut curves = Vec::with_capacity(n);
    for c in &scene.curves {
        let kind = match c.kind.as_str() {
            "rational" => CurveKind::Rational,
            "elliptic" => CurveKind::Elliptic,
            _ => CurveKind::Other,
        };
        let mut data = CurveData::new(c.id, kind, c.invariant);
        data.orbifold_orders = c.orbifold_orders.clone();
        for s in &c.singularities {
            data.singularities.push(SingularityRecord {
                point: s.point,
                z: s.z,
                cs: s.cs.as_deref().map(rat_from_string).transpose()?,
                tang: s.tang.as_deref().map(rat_from_string).transpose()?,
            });
        }
        data.kx_degree = c.kx_degree.as_deref().map(rat_from_string).transpose()?;
        curves.push(data);
    }
    let model = SurfaceModel::new(curves, matrix)?;
    let divisor = match &scene.divisor {
        None => None,
        Some(map) => {
            let mut d = QDivisor::zero();
            for (k, v) in map {
                let id: usize = k
                    .parse()
                    .map_err(|_| SceneError::BadRational(k.clone()))?;
                d.set(id, rat_from_string(v)?);
            }
            Some(d)
        }
    };
    Ok((model, divisor))
}

/// Emit a model (plus optional divisor) in the scene format, deterministic
/// key and row ordering.
pub fn scene_to_json(model: &SurfaceModel, divisor: Option<&QDivisor>) -> Value {
    let curves: Vec<CurveJson> = model
        .curves()
        .iter()
        .map(|c| CurveJson {
            id: c.id,
            kind: match c.kind {
                CurveKind::Rational => "rational".to_string(),
                CurveKind::Elliptic => "elliptic".to_string(),
                CurveKind::Other => "other".to_string(),
            },
            invariant: c.invariant,
            orbifold_orders: c.orbifold_orders.clone(),
            singularities: c
                .singularities
                .iter()
                .map(|s| SingularityJson {
                    point: s.point,
                    z: s.z,
                    cs: s.cs.as_ref().map(rat_to_string),
                    tang: s.tang.as_ref().map(rat_to_string),
                })
                .collect(),
            kx_degree: c.kx_degree.as_ref().map(rat_to_string),
        })
        .collect();
    let ids: Vec<usize> = model.curves().iter().map(|c| c.id).collect();
    let matrix: Vec<Vec<String>> = ids
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            ids[..=i]
                .iter()
                .map(|&b| rat_to_string(&model.pairing(a, b).unwrap()))
                .collect()
        })
        .collect();
    let scene = SceneJson {
        version: FORMAT_VERSION,
        curves,
        matrix,
        divisor: divisor.map(|d| {
            d.iter()
                .map(|(id, c)| (id.to_string(), rat_to_string(c)))
                .collect()
        }),
    };
    serde_json::to_value(scene).unwrap()
}

#[derive(Debug, Serialize, Deserialize)]
struct RiccatiJson {
    #[serde(default)]
    version: Option<u64>,
    chi_top: i64,
    #[serde(default)]
    b_orders: Vec<u64>,
    #[serde(default)]
    c_count: u64,
    #[serde(default)]
    d_multiplicities: Vec<u64>,
    #[serde(default)]
    e_multiplicities: Vec<u64>,
}

fn riccati_schema() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![(
        "",
        vec![
            "version",
            "chi_top",
            "b_orders",
            "c_count",
            "d_multiplicities",
            "e_multiplicities",
        ],
    )]
}

pub fn parse_riccati(text: &str, strict: bool) -> Result<RiccatiModel, SceneError> {
    let value: Value = serde_json::from_str(text)?;
    if strict {
        check_strict(&value, "", &riccati_schema())?;
    }
    let r: RiccatiJson = serde_json::from_value(value)?;
    if let Some(v) = r.version {
        if v != FORMAT_VERSION {
            return Err(SceneError::UnsupportedVersion(v));
        }
    }
    Ok(RiccatiModel {
        chi_top: r.chi_top,
        b_orders: r.b_orders,
        c_count: r.c_count,
        d_multiplicities: r.d_multiplicities,
        e_multiplicities: r.e_multiplicities,
    })
}
