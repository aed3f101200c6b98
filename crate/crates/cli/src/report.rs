//! JSON rendering of library results and a plain-text view of the same data.
//!
//! Sets are label arrays in carrier order, partitions list their classes by
//! least member, and object keys are sorted, so equal results render to
//! identical bytes.

use hyperkernel::groups::{self, GroupTable};
use hyperkernel::hyper::StructureReport;
use hyperkernel::{ElementSet, HyperTable, Partition};
use serde_json::{json, Map, Value};

pub fn set(h: &HyperTable, s: ElementSet) -> Value {
    json!(h.labels_of(s))
}

pub fn partition(h: &HyperTable, p: &Partition) -> Value {
    Value::Array(p.classes().iter().map(|&c| set(h, c)).collect())
}

pub fn table(h: &HyperTable) -> Value {
    json!({
        "elements": h.names(),
        "table": (0..h.n())
            .map(|x| (0..h.n()).map(|y| set(h, h.cell(x, y))).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn group(g: &GroupTable) -> Value {
    json!({
        "order": g.n(),
        "abelian": g.is_abelian(),
        "elements": g.names(),
        "table": (0..g.n())
            .map(|x| (0..g.n()).map(|y| g.name(g.mul(x, y))).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "identified_as": identify(g),
    })
}

/// Names a small group up to isomorphism, when it is in the catalogue.
pub fn identify(g: &GroupTable) -> Value {
    use groups::fixtures::{cyclic, s3, v4};
    let prod = |a: &GroupTable, b: &GroupTable| GroupTable::direct_product(a, b).expect("small");
    let n = g.n();
    let mut candidates: Vec<(String, GroupTable)> = vec![(format!("Z{n}"), cyclic(n))];
    match n {
        4 => candidates.push(("V4".into(), v4())),
        6 => candidates.push(("S3".into(), s3())),
        8 => {
            candidates.push(("Z2xZ4".into(), prod(&cyclic(2), &cyclic(4))));
            candidates.push(("Z2xZ2xZ2".into(), prod(&v4(), &cyclic(2))));
        }
        9 => candidates.push(("Z3xZ3".into(), prod(&cyclic(3), &cyclic(3)))),
        12 => {
            candidates.push(("Z2xZ6".into(), prod(&cyclic(2), &cyclic(6))));
            candidates.push(("S3xZ2".into(), prod(&s3(), &cyclic(2))));
        }
        16 => {
            candidates.push(("Z4xZ4".into(), prod(&cyclic(4), &cyclic(4))));
            candidates.push(("Z2xZ8".into(), prod(&cyclic(2), &cyclic(8))));
            candidates.push(("Z2xZ2xZ4".into(), prod(&v4(), &cyclic(4))));
            candidates.push(("Z2^4".into(), prod(&v4(), &v4())));
        }
        _ => {}
    }
    candidates
        .into_iter()
        .find(|(_, c)| groups::isomorphic(g, c).unwrap_or(false))
        .map_or(Value::Null, |(name, _)| json!(name))
}

pub fn structure(h: &HyperTable, r: &StructureReport) -> Value {
    let mut flags = Map::new();
    for (p, v) in r.flags() {
        flags.insert(p.as_str().to_string(), json!(v));
    }
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            json!({
                "property": f.property.as_str(),
                "witness": f.witness.kind(),
                "elements": f.witness.elements().iter().map(|&x| h.name(x)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "size": h.n(),
        "properties": flags,
        "identities": set(h, r.identities),
        "failures": failures,
    })
}

/// Plain-text rendering: nested keys indented, label arrays as `{a, b}`.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| x.is_string()) => Some(format!(
            "{{{}}}",
            a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(a) if a.iter().all(|x| scalar(x).is_some() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(a) if a.iter().all(|x| x.as_array().is_some_and(|r| r.iter().all(Value::is_string))) => {
            Some(a.iter().filter_map(scalar).collect::<Vec<_>>().join(" "))
        }
        _ => None,
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
