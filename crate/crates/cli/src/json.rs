//! JSON encodings of the core types.
//!
//! Field elements are `"p/q"` strings over `Q` and integers over `F_p`;
//! multi-indices are comma-joined and 1-based; big integers are decimal
//! strings.

use fanokit_core::bounds::{BoundCertificate, WitnessValue};
use fanokit_core::grassmann::{DualHyperplane, MultiIndex, PlaneFrame, PluckerPoint, SempleChartPoint};
use fanokit_core::{Error, ExactMatrix, FieldElement, FieldSpec, Poly, Result};
use serde_json::{json, Map, Value};

pub(crate) fn bad(message: impl Into<String>) -> Error {
    Error::Parse { position: 0, message: message.into() }
}

pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        position: e.column(),
        message: format!("invalid JSON at line {} column {}: {e}", e.line(), e.column()),
    })
}

pub fn field_to_json(field: FieldSpec) -> Value {
    match field {
        FieldSpec::Rationals => json!("Q"),
        FieldSpec::Prime(p) => json!({ "p": p }),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldSpec> {
    match v {
        Value::String(s) => s.parse(),
        Value::Object(m) => match m.get("p").and_then(Value::as_u64) {
            Some(p) => FieldSpec::prime(p),
            None => Err(bad("field object needs an integer `p`")),
        },
        _ => Err(bad("field must be \"Q\" or {\"p\": <prime>}")),
    }
}

/// The field named inside `doc`, or `default`.
pub fn field_of(doc: &Value, default: FieldSpec) -> Result<FieldSpec> {
    match doc.get("field") {
        Some(f) => field_from_json(f),
        None => Ok(default),
    }
}

pub fn element_to_json(e: &FieldElement) -> Value {
    match e {
        FieldElement::Rational(r) => json!(r.to_string()),
        FieldElement::Residue { value, .. } => json!(value),
    }
}

pub fn element_from_json(v: &Value, field: FieldSpec) -> Result<FieldElement> {
    match v {
        Value::String(s) => field.parse_element(s),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => Ok(field.from_i64(i)),
            (None, Some(u)) => Ok(field.from_u64(u)),
            _ => Err(bad(format!("`{n}` is not an exact number; write fractions as \"p/q\""))),
        },
        _ => Err(bad(format!("expected a number or \"p/q\" string, got {v}"))),
    }
}

pub fn elements_to_json(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(element_to_json).collect())
}

pub fn elements_from_json(v: &Value, field: FieldSpec) -> Result<Vec<FieldElement>> {
    v.as_array().ok_or_else(|| bad("expected an array"))?.iter().map(|x| element_from_json(x, field)).collect()
}

pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows()).map(|i| elements_to_json(m.row(i))).collect();
    json!({
        "field": field_to_json(m.field()),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": entries,
    })
}

/// Accepts `{"rows", "cols", "entries"}` (optionally with `"field"`) or a
/// bare array of rows.
pub fn matrix_from_json(v: &Value, default: FieldSpec) -> Result<ExactMatrix> {
    let (field, rows) = match v {
        Value::Array(_) => (default, v),
        Value::Object(m) => (field_of(v, default)?, m.get("entries").ok_or_else(|| bad("matrix needs `entries`"))?),
        _ => return Err(bad("expected a matrix")),
    };
    let rows: Vec<Vec<FieldElement>> = rows
        .as_array()
        .ok_or_else(|| bad("`entries` must be an array of rows"))?
        .iter()
        .map(|r| elements_from_json(r, field))
        .collect::<Result<_>>()?;
    let m = if rows.is_empty() { ExactMatrix::zeros(field, 0, 0) } else { ExactMatrix::from_rows(field, rows)? };
    for (key, got) in [("rows", m.rows()), ("cols", m.cols())] {
        if let Some(want) = v.get(key).and_then(Value::as_u64) {
            if want as usize != got {
                return Err(bad(format!("`{key}` says {want} but the entries have {got}")));
            }
        }
    }
    Ok(m)
}

fn coords_object(k: usize, n: usize, coords: &[FieldElement]) -> Value {
    let mut map = Map::new();
    for (idx, c) in MultiIndex::all(k + 1, n).iter().zip(coords) {
        map.insert(idx.to_string(), element_to_json(c));
    }
    Value::Object(map)
}

fn coords_from_object(v: &Value, k: usize, n: usize, field: FieldSpec) -> Result<Vec<FieldElement>> {
    let obj = v.get("coords").and_then(Value::as_object).ok_or_else(|| bad("missing `coords` object"))?;
    let all = MultiIndex::all(k + 1, n);
    for key in obj.keys() {
        let idx = MultiIndex::parse(key, n)?;
        if idx.len() != k + 1 {
            return Err(bad(format!("coordinate `{key}` is not a {}-index", k + 1)));
        }
    }
    all.iter()
        .map(|idx| match obj.get(&idx.to_string()) {
            Some(x) => element_from_json(x, field),
            None => Ok(field.zero()),
        })
        .collect()
}

fn k_n(v: &Value) -> Result<(usize, usize)> {
    let get = |key| v.get(key).and_then(Value::as_u64).ok_or_else(|| bad(format!("missing integer `{key}`")));
    Ok((get("k")? as usize, get("n")? as usize))
}

pub fn plucker_to_json(p: &PluckerPoint) -> Value {
    json!({
        "field": field_to_json(p.field()),
        "k": p.k(),
        "n": p.n(),
        "coords": coords_object(p.k(), p.n(), p.coords()),
    })
}

pub fn plucker_from_json(v: &Value, default: FieldSpec) -> Result<PluckerPoint> {
    let field = field_of(v, default)?;
    let (k, n) = k_n(v)?;
    PluckerPoint::from_coords(k, n, coords_from_object(v, k, n, field)?)
}

/// A plane given either as Plücker JSON or as a frame matrix.
pub fn plane_from_json(v: &Value, default: FieldSpec) -> Result<PluckerPoint> {
    if v.get("coords").is_some() {
        plucker_from_json(v, default)
    } else {
        fanokit_core::grassmann::plucker_from_matrix(&PlaneFrame::new(matrix_from_json(v, default)?)?)
    }
}

pub fn dual_to_json(h: &DualHyperplane, field: FieldSpec) -> Value {
    json!({
        "field": field_to_json(field),
        "k": h.k(),
        "n": h.n(),
        "coords": coords_object(h.k(), h.n(), h.coeffs()),
    })
}

pub fn dual_from_json(v: &Value, default: FieldSpec) -> Result<DualHyperplane> {
    let field = field_of(v, default)?;
    let (k, n) = k_n(v)?;
    DualHyperplane::new(k, n, coords_from_object(v, k, n, field)?)
}

pub fn chart_point_to_json(c: &SempleChartPoint) -> Value {
    json!({
        "field": field_to_json(c.field()),
        "y": element_to_json(c.y()),
        "x": matrix_to_json(c.x()),
    })
}

pub fn chart_point_from_json(v: &Value, default: FieldSpec) -> Result<SempleChartPoint> {
    let field = field_of(v, default)?;
    let y = element_from_json(v.get("y").ok_or_else(|| bad("missing `y`"))?, field)?;
    let x = matrix_from_json(v.get("x").ok_or_else(|| bad("missing `x`"))?, field)?;
    SempleChartPoint::new(y, x)
}

pub fn polys_to_json(polys: &[Poly]) -> Value {
    Value::Array(polys.iter().map(|p| json!(p.to_string())).collect())
}

fn witness_to_json(w: &WitnessValue) -> Value {
    match w {
        WitnessValue::Int(i) => json!(i.to_string()),
        WitnessValue::Rational(r) => json!(r.to_string()),
        WitnessValue::Flag(b) => json!(b),
        WitnessValue::Text(t) => json!(t),
    }
}

pub fn certificate_to_json(c: &BoundCertificate) -> Value {
    let inputs: Map<String, Value> = c.inputs.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect();
    let witness: Map<String, Value> = c.witness.iter().map(|(k, v)| (k.clone(), witness_to_json(v))).collect();
    json!({
        "name": c.name,
        "inputs": inputs,
        "threshold": c.threshold.to_string(),
        "rounding": c.rounding.name(),
        "minimal_n": c.minimal_n.to_string(),
        "satisfied": c.satisfied,
        "witness": witness,
        "formula": c.formula,
    })
}
