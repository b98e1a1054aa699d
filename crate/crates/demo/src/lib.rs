//! Browser bindings: paste a graph, pick a level, and get weights, the
//! cohomology summary, or an external edge cocycle back as JSON.

use std::sync::Arc;

use qcg_core::cohomology::cohomology_group_order;
use qcg_core::external::{construct_external_cocycle, ExternalReport};
use qcg_core::graph::{parse_graph, GraphFile};
use qcg_core::io::cycle_ids;
use qcg_core::{Level, WeightSpace};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
pub struct Weights {
    pub edges: Vec<String>,
    pub rows: Vec<Vec<u32>>,
}

#[derive(Serialize)]
pub struct OrbitSummary {
    pub representative: Vec<u32>,
    pub size: usize,
    pub stabilizer: Vec<String>,
}

#[derive(Serialize)]
pub struct Cohomology {
    pub genus: usize,
    pub weights: usize,
    /// Decimal, since the order can exceed 2^53.
    pub order: String,
    pub orbits: Vec<OrbitSummary>,
}

#[derive(Serialize)]
pub struct Entry {
    pub cycle: String,
    pub row: usize,
    pub value: String,
}

#[derive(Serialize)]
pub struct External {
    pub report: String,
    /// Entries other than 1.
    pub nontrivial: Vec<Entry>,
    pub coboundary: bool,
}

fn space(graph: &str, level: u32) -> Result<Arc<WeightSpace>, qcg_core::Error> {
    let GraphFile { graph, boundary } = parse_graph(graph)?;
    WeightSpace::shared(graph, Level::new(level)?, boundary)
}

pub fn weights(graph: &str, level: u32) -> Result<Weights, qcg_core::Error> {
    let s = space(graph, level)?;
    Ok(Weights {
        edges: (0..s.graph().edge_count())
            .map(|e| s.graph().edge_id(e).to_owned())
            .collect(),
        rows: s.weights().iter().map(|w| w.doubled().to_vec()).collect(),
    })
}

pub fn cohomology(graph: &str, level: u32) -> Result<Cohomology, qcg_core::Error> {
    let s = space(graph, level)?;
    let orbits = (0..s.orbit_count())
        .map(|o| OrbitSummary {
            representative: s.weight(s.representative(o)).doubled().to_vec(),
            size: s.orbit_members(o).len(),
            stabilizer: s.stabilizer(o).iter().map(|c| cycle_ids(&s, &s.cycle(c))).collect(),
        })
        .collect();
    Ok(Cohomology {
        genus: s.genus(),
        weights: s.len(),
        order: cohomology_group_order(&s).to_string(),
        orbits,
    })
}

pub fn external(graph: &str, level: u32) -> Result<External, qcg_core::Error> {
    let s = space(graph, level)?;
    let report = ExternalReport::new(&s)?.to_string();
    let t = construct_external_cocycle(s.clone())?;
    let names: Vec<String> = s.homology().basis().iter().map(|c| cycle_ids(&s, c)).collect();
    let nontrivial = t
        .entries()
        .filter(|(_, _, v)| !v.is_one())
        .map(|(b, row, v)| Entry {
            cycle: names[b].clone(),
            row,
            value: v.to_string(),
        })
        .collect();
    Ok(External {
        report,
        nontrivial,
        coboundary: t.is_coboundary()?,
    })
}

fn json<T: Serialize>(r: Result<T, qcg_core::Error>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = enumerateWeights)]
pub fn enumerate_weights_js(graph: &str, level: u32) -> Result<String, JsError> {
    json(weights(graph, level))
}

#[wasm_bindgen(js_name = cohomologySummary)]
pub fn cohomology_js(graph: &str, level: u32) -> Result<String, JsError> {
    json(cohomology(graph, level))
}

#[wasm_bindgen(js_name = externalCocycle)]
pub fn external_js(graph: &str, level: u32) -> Result<String, JsError> {
    json(external(graph, level))
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: &str = "edge e1 u v\nedge e2 u v\nedge e3 u v\n";
    const DUMBBELL: &str = "edge a u u\nedge b v v\nedge c u v\n";

    #[test]
    fn theta_level_two() {
        assert_eq!(weights(THETA, 2).unwrap().rows.len(), 10);
        let c = cohomology(THETA, 2).unwrap();
        assert_eq!(c.order, "8");
        assert_eq!(c.orbits.iter().map(|o| o.size).sum::<usize>(), 10);
    }

    #[test]
    fn dumbbell_external_cocycle_is_nontrivial() {
        let e = external(DUMBBELL, 4).unwrap();
        assert!(!e.coboundary);
        assert!(e.nontrivial.iter().all(|x| x.value == "1/2"));
        let text = serde_json::to_string(&e).unwrap();
        assert!(text.contains("\"coboundary\":false"));
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(weights("edge a u\n", 2).is_err());
        assert!(cohomology(THETA, 0).is_err());
    }
}
