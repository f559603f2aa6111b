use ampc_cuts_demo::{decomposition, gen_graph, min_cut, singleton_cut};
use serde_json::Value;

fn parse(s: &str) -> Value {
    let v: Value = serde_json::from_str(s).expect("binding output is JSON");
    assert!(v.get("error").is_none(), "unexpected error: {v}");
    v
}

#[test]
fn generate_and_cut_bridge() {
    let g = parse(&gen_graph("two_cliques_bridge", 3, 0.0, 1));
    assert_eq!(g["n"], 6);
    assert_eq!(g["edges"].as_array().unwrap().len(), 7);

    let cut = parse(&min_cut(&g.to_string(), 0.5, 8, 3));
    assert_eq!(cut["value"], 1);
    assert_eq!(cut["side"].as_array().unwrap().len(), 3);
    assert!(cut["rounds"].as_u64().unwrap() >= 1);
}

#[test]
fn decomposition_is_valid_and_sized() {
    let g = parse(&gen_graph("gnp", 24, 0.3, 5));
    let d = parse(&decomposition(&g.to_string(), 2));
    assert_eq!(d["valid"], true);
    assert_eq!(d["levels"].as_array().unwrap().len(), 24);
    assert_eq!(d["mst_edges"].as_array().unwrap().len(), 23);
}

#[test]
fn singleton_reports_witness() {
    let g = parse(&gen_graph("star", 8, 0.0, 0));
    let s = parse(&singleton_cut(&g.to_string(), 4));
    assert_eq!(s["value"], 1);
    assert_eq!(s["side"].as_array().unwrap().len(), 1);
}

#[test]
fn errors_are_reported_in_band() {
    let e: Value = serde_json::from_str(&gen_graph("nope", 4, 0.0, 0)).unwrap();
    assert!(e.get("error").is_some());
    let e: Value = serde_json::from_str(&min_cut("{\"n\":2,\"edges\":[]}", 0.5, 1, 0)).unwrap();
    assert!(e.get("error").is_some());
}
