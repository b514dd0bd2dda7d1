//! JSON input and output. Vertices are 1-based on the wire.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::{parse_rat, Space};
use crate::logderiv::{AuditReport, Derivation, FreenessCertificate};
use crate::multiarr::MultiCertificate;
use crate::wgraph::{IntWeightedGraph, Obstruction, SetGraph, WeightSet, WeightedGraph};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<VertexEntry>,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexEntry {
    id: usize,
    psi: Value,
}

fn parse_graph<W: Clone>(text: &str, weight: impl Fn(&Value) -> Result<W>) -> Result<WeightedGraph<W>> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let n = file.vertices.len();
    let mut psi: Vec<Option<W>> = (0..n).map(|_| None).collect();
    for v in &file.vertices {
        if v.id == 0 || v.id > n {
            return Err(Error::Parse(format!("vertex ids must be 1..={n}, got {}", v.id)));
        }
        if psi[v.id - 1].is_some() {
            return Err(Error::Parse(format!("duplicate vertex id {}", v.id)));
        }
        psi[v.id - 1] = Some(weight(&v.psi)?);
    }
    let psi: Vec<W> = psi.into_iter().map(|w| w.expect("every id seen")).collect();
    let edges = file
        .edges
        .iter()
        .map(|&[u, v]| {
            if u == 0 || v == 0 {
                Err(Error::Parse("edge endpoints are 1-based".into()))
            } else {
                Ok((u - 1, v - 1))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    WeightedGraph::new(psi, &edges)
}

fn weight_set(v: &Value) -> Result<WeightSet> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("psi must be an array of rationals, got {v}")))?;
    items
        .iter()
        .map(|x| match x {
            Value::String(s) => parse_rat(s),
            Value::Number(n) if n.is_i64() => parse_rat(&n.to_string()),
            other => Err(Error::Parse(format!("invalid weight {other}"))),
        })
        .collect::<Result<Vec<_>>>()
        .map(WeightSet::new)
}

fn weight_int(v: &Value) -> Result<u32> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| Error::Parse(format!("psi must be a nonnegative integer, got {v}")))
}

/// `{"vertices":[{"id":1,"psi":["0","1/2"]}],"edges":[[1,2]]}`
pub fn parse_set_graph(text: &str) -> Result<SetGraph> {
    parse_graph(text, weight_set)
}

/// `{"vertices":[{"id":1,"psi":2}],"edges":[[1,2]]}`
pub fn parse_int_graph(text: &str) -> Result<IntWeightedGraph> {
    parse_graph(text, weight_int)
}

fn graph_json<W: Clone>(g: &WeightedGraph<W>, weight: impl Fn(&W) -> Value) -> Value {
    let vertices: Vec<Value> = (0..g.num_vertices())
        .map(|v| json!({"id": v + 1, "psi": weight(g.psi(v))}))
        .collect();
    let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u + 1, v + 1]).collect();
    json!({"vertices": vertices, "edges": edges})
}

pub fn set_graph_to_json(g: &SetGraph) -> Value {
    graph_json(g, |w| json!(w.iter().map(|a| a.to_string()).collect::<Vec<_>>()))
}

pub fn int_graph_to_json(g: &IntWeightedGraph) -> Value {
    graph_json(g, |&w| json!(w))
}

pub fn obstruction_to_json(o: &Obstruction) -> Value {
    match o.one_based() {
        Obstruction::ChordlessCycle(c) => json!({"kind": o.kind(), "cycle": c}),
        Obstruction::IncomparableEdge(u, v) => json!({"kind": o.kind(), "edge": [u, v]}),
        Obstruction::ValleyPath(p) => json!({"kind": o.kind(), "path": p}),
    }
}

pub fn audit_to_json(r: &AuditReport) -> Value {
    json!({
        "edge": [r.edge.0 + 1, r.edge.1 + 1],
        "exp_deleted": r.exp_deleted,
        "exp_restricted": r.exp_restricted,
        "subset_holds": r.subset_holds,
    })
}

fn basis_json(basis: &[Derivation], space: &Space) -> Value {
    Value::Array(basis.iter().map(|d| d.to_json(space)).collect())
}

pub fn certificate_to_json(cert: &FreenessCertificate, ell: usize) -> Value {
    match cert {
        FreenessCertificate::Free {
            ordering,
            basis,
            exponents,
            saito_scalar,
        } => json!({
            "verdict": "free",
            "ordering": ordering.one_based(),
            "exponents": exponents,
            "saito_scalar": saito_scalar.to_string(),
            "basis": basis_json(basis, &Space::standard(ell)),
        }),
        FreenessCertificate::NotFree { obstruction, audit } => {
            let mut m = Map::new();
            m.insert("verdict".into(), json!("not_free"));
            m.insert("obstruction".into(), obstruction_to_json(obstruction));
            if let Some(a) = audit {
                m.insert("audit".into(), audit_to_json(a));
            }
            Value::Object(m)
        }
    }
}

pub fn multi_certificate_to_json(cert: &MultiCertificate) -> Value {
    let multiplicities: Vec<Value> = cert
        .multi()
        .displayed()
        .into_iter()
        .map(|(form, m)| json!({"form": form, "m": m}))
        .collect();
    match cert {
        MultiCertificate::Free {
            ordering,
            multi,
            basis,
            exponents,
            saito_scalar,
        } => json!({
            "verdict": "free",
            "ordering": ordering.one_based(),
            "exponents": exponents,
            "saito_scalar": saito_scalar.to_string(),
            "basis": basis_json(basis, multi.space()),
            "multiplicities": multiplicities,
        }),
        MultiCertificate::NotFree { obstruction, .. } => json!({
            "verdict": "not_free",
            "obstruction": obstruction_to_json(obstruction),
            "multiplicities": multiplicities,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logderiv::decide_freeness;
    use crate::multiarr::decide_multi_freeness;

    const TWO_VERTEX: &str =
        r#"{"vertices":[{"id":1,"psi":["0"]},{"id":2,"psi":["0","1"]}],"edges":[[1,2]]}"#;

    #[test]
    fn parses_and_round_trips() {
        let g = parse_set_graph(TWO_VERTEX).unwrap();
        assert_eq!(g.psi(1), &WeightSet::ints(&[0, 1]));
        let again = parse_set_graph(&set_graph_to_json(&g).to_string()).unwrap();
        assert_eq!(again, g);

        let g = parse_set_graph(r#"{"vertices":[{"id":2,"psi":["1/2"]},{"id":1,"psi":[]}],"edges":[]}"#).unwrap();
        assert_eq!(g.psi(1).iter().next().unwrap().to_string(), "1/2");

        let h = parse_int_graph(r#"{"vertices":[{"id":1,"psi":1},{"id":2,"psi":2}],"edges":[[1,2]]}"#).unwrap();
        assert_eq!(h.weights(), &[1, 2]);
        assert_eq!(parse_int_graph(&int_graph_to_json(&h).to_string()).unwrap(), h);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "not json",
            r#"{"vertices":[{"id":1,"psi":["0.5"]}],"edges":[]}"#,
            r#"{"vertices":[{"id":2,"psi":[]}],"edges":[]}"#,
            r#"{"vertices":[{"id":1,"psi":[]},{"id":1,"psi":[]}],"edges":[]}"#,
            r#"{"vertices":[{"id":1,"psi":[]}],"edges":[[1,1]]}"#,
            r#"{"vertices":[{"id":1,"psi":[]}],"edges":[[0,1]]}"#,
            r#"{"vertices":[{"id":1,"psi":"0"}],"edges":[]}"#,
            r#"{"vertices":[],"edges":[]}"#,
        ] {
            assert!(parse_set_graph(bad).is_err(), "{bad}");
        }
        assert!(parse_int_graph(r#"{"vertices":[{"id":1,"psi":-1}],"edges":[]}"#).is_err());
    }

    #[test]
    fn certificate_shapes() {
        let g = parse_set_graph(TWO_VERTEX).unwrap();
        let v = certificate_to_json(&decide_freeness(&g).unwrap(), 2);
        assert_eq!(v["verdict"], "free");
        assert_eq!(v["ordering"], json!([2, 1]));
        assert_eq!(v["exponents"], json!([1, 2, 2]));
        assert_eq!(v["saito_scalar"], "-1");
        assert_eq!(v["basis"][0], json!({"dz": "z", "dx1": "x1", "dx2": "x2"}));
        assert_eq!(v["basis"][2]["dx1"], "-x1^2 + x1*x2");

        let valley = parse_set_graph(
            r#"{"vertices":[{"id":1,"psi":["0","1"]},{"id":2,"psi":["0"]},{"id":3,"psi":["0","1"]}],"edges":[[1,2],[2,3]]}"#,
        )
        .unwrap();
        let v = certificate_to_json(&decide_freeness(&valley).unwrap(), 3);
        assert_eq!(v["verdict"], "not_free");
        assert_eq!(v["obstruction"], json!({"kind": "valley_path", "path": [1, 2, 3]}));

        let h = parse_int_graph(r#"{"vertices":[{"id":1,"psi":1},{"id":2,"psi":2}],"edges":[[1,2]]}"#).unwrap();
        let v = multi_certificate_to_json(&decide_multi_freeness(&h).unwrap());
        assert_eq!(v["exponents"], json!([2, 2]));
        assert_eq!(v["multiplicities"][2], json!({"form": "x2", "m": 2}));
    }
}
