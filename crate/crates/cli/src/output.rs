use std::fmt::Write;

use catlift::setval::{DiagramMap, SetDiagram};
use serde_json::{json, Map, Value};

/// Compact JSON with sorted keys, or a two-column table with `pretty`.
pub fn render(v: &Value, pretty: bool) -> String {
    match v {
        Value::Object(map) if pretty => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            let mut out = String::new();
            for (k, v) in map {
                let cell = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                writeln!(out, "{k:<width$}  {cell}").unwrap();
            }
            out
        }
        _ => format!("{v}\n"),
    }
}

/// Elements per object and the action of every non-identity morphism.
pub fn diagram(x: &SetDiagram) -> Value {
    let shape = x.shape();
    let mut sets = Map::new();
    for c in 0..shape.num_objects() {
        sets.insert(shape.object_name(c).to_string(), json!(x.sets()[c]));
    }
    let mut maps = Map::new();
    for m in (0..shape.num_morphisms()).filter(|&m| !shape.is_identity(m)) {
        let (a, b) = (shape.src(m), shape.tgt(m));
        let table: Map<String, Value> =
            (0..x.size(a)).map(|e| (x.sets()[a][e].clone(), json!(x.sets()[b][x.apply(m, e)]))).collect();
        maps.insert(shape.morphism_name(m).to_string(), Value::Object(table));
    }
    json!({"sets": sets, "maps": maps})
}

pub fn diagram_map(f: &DiagramMap) -> Value {
    let (s, t) = (f.source(), f.target());
    let shape = f.shape();
    let comps: Map<String, Value> = (0..shape.num_objects())
        .map(|c| {
            let table: Map<String, Value> =
                (0..s.size(c)).map(|e| (s.sets()[c][e].clone(), json!(t.sets()[c][f.apply(c, e)]))).collect();
            (shape.object_name(c).to_string(), Value::Object(table))
        })
        .collect();
    Value::Object(comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_come_out_sorted() {
        let v = json!({"b": 1, "a": [true]});
        assert_eq!(render(&v, false), "{\"a\":[true],\"b\":1}\n");
        assert_eq!(render(&v, true), "a  [true]\nb  1\n");
        assert_eq!(render(&json!(6), false), "6\n");
    }
}
