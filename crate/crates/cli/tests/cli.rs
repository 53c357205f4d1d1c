use gradmf::hom::general_window;
use gradmf::mf::build_f_i;
use gradmf::oracle::dense_hom_dim;
use gradmf::{DeformationParams, SubsetIndex};
use gradmf_cli::main_with_args;
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gradmf").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.push("--json");
    full.push(&p);
    let (code, _, _) = run(&full);
    let body = std::fs::read_to_string(&path).unwrap();
    (code, serde_json::from_str(&body).unwrap())
}

#[test]
fn check_generic_examples() {
    let (code, out, _) = run(&["check-generic", "--s", "1,0,-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("f = x^3 - x*q^2"), "{out}");
    assert!(out.contains("t = [-1, 0]"));
    assert!(out.contains("generic: true"));

    let (code, out, _) = run(&["check-generic", "--s", "1,1,-2"]);
    assert_eq!(code, 1);
    assert!(out.contains("generic: false"));
    assert!(out.contains("certificate: x + q = 0"), "{out}");

    let (code, _, err) = run(&["check-generic", "--s", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("two roots"));
}

#[test]
fn rational_roots_and_t_cross_check() {
    let (code, out, _) = run(&["check-generic", "--s", "1/2,-1/2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("t = [-1/4]"), "{out}");
    assert_eq!(run(&["check-generic", "--s", "1,0,-1", "--t", "-1,0"]).0, 0);
    assert_eq!(run(&["check-generic", "--s", "1,0,-1", "--t", "-1,1"]).0, 2);
    assert_eq!(run(&["check-generic", "--s", "1,0,-1", "--mu", "3"]).0, 2);
    assert_eq!(run(&["check-generic", "--s", "1,2"]).0, 2);
    assert_eq!(run(&["check-generic", "--s", "1,2", "--relax-sum"]).0, 0);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["verify-collection"]).0, 2);
    assert_eq!(run(&["verify-collection", "--s", "1,0,-1", "--order", "1,1"]).0, 2);
    assert_eq!(run(&["verify-collection", "--s", "1,0,-1", "--order-override", "1,2"]).0, 2);
    assert_eq!(run(&["spectrum", "--s", "1,0,-1", "--I", "1,2,3", "--J", "1"]).0, 2);
    assert_eq!(run(&["spectrum", "--s", "1,0,-1", "--I", "1", "--J", "1", "--window", "3"]).0, 2);
    assert_eq!(run(&["cone", "--s", "1,0,-1", "--I", "1", "--J", "2"]).0, 2);
    assert_eq!(run(&["serre", "--s", "1,0,-1", "--i", "5"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    // repeated roots are a mathematical failure
    assert_eq!(run(&["verify-collection", "--s", "1,1,-2"]).0, 1);
}

#[test]
fn collections() {
    let (code, out, _) = run(&["verify-collection", "--s", "1,0,-1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("strongly exceptional collection of length 4"));

    let (code, v) = run_json(&["verify-collection", "--s", "3,1,-1,-3", "--order", "2,3,1"]);
    assert_eq!(code, 0);
    let gram = v["report"]["gram"].as_array().unwrap();
    assert_eq!(gram.len(), 6);
    for (i, row) in gram.iter().enumerate() {
        assert_eq!(row[i], 1);
    }

    let (code, out, _) = run(&["verify-collection", "--s", "1,0,-1", "--order-override", "4,3,2,1"]);
    assert_eq!(code, 1);
    assert!(out.contains("first failure: Hom("), "{out}");
}

#[test]
fn spectrum_of_nested_pair() {
    let (code, out, _) = run(&["spectrum", "--s", "1,0,-1", "--I", "1", "--J", "1,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("spectrum: [1]"), "{out}");
    // dense solver over a wide window: only twist 0 carries a map
    let p = DeformationParams::from_ints(&[1, 0, -1]).unwrap();
    let f = build_f_i(&p, &SubsetIndex::new(vec![1], 3).unwrap(), 0).unwrap();
    let g = build_f_i(&p, &SubsetIndex::new(vec![1, 2], 3).unwrap(), 0).unwrap();
    let w = general_window(&f, &g);
    let dims: Vec<(i64, usize)> = (w.lo - 2..=w.hi + 2)
        .map(|n| (n, dense_hom_dim(&f, &g, n).unwrap()))
        .filter(|(_, d)| *d > 0)
        .collect();
    assert_eq!(dims, vec![(0, 1)]);

    let (_, out, _) = run(&["spectrum", "--s", "1,0,-1", "--I", "1", "--J", "1", "--window", "-3:6"]);
    assert!(out.contains("spectrum: [0, 2]"), "{out}");
}

#[test]
fn serre_generation_stab_cone_mutate() {
    let (code, out, _) = run(&["serre", "--s", "1,0,-1", "--i", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("iso: tau^1 E4"), "{out}");

    let (code, out, _) = run(&["generation", "--s", "1,0,-1"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.matches(": pass").count(), 6, "{out}");

    assert_eq!(run(&["stab", "--s", "1,0,-1", "--k", "2"]).0, 0);

    let (code, out, _) = run(&["cone", "--s", "1,0,-1", "--I", "1", "--J", "1,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("predicted: tau F_{2}"), "{out}");

    let (code, out, _) = run(&["mutate", "--s", "1,0,-1", "--I", "1", "--J", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("L_E X = 0"), "{out}");
}

#[test]
fn json_is_deterministic() {
    let args = ["generation", "--s", "1,0,-1", "--seed", "7"];
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for (k, par) in ["1", "3"].iter().enumerate() {
        let path = dir.path().join(format!("r{k}.json"));
        let p = path.to_str().unwrap().to_string();
        let mut full = args.to_vec();
        full.extend(["--json", &p, "--parallel", par]);
        assert_eq!(run(&full).0, 0);
        bodies.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(bodies[0], bodies[1]);
    let v: Value = serde_json::from_slice(&bodies[0]).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["provenance"]["seed"], 7);
    assert_eq!(v["provenance"]["s"], serde_json::json!(["1", "0", "-1"]));
    assert_eq!(v["ok"], true);
}

#[test]
fn json_to_stdout() {
    let (code, out, _) = run(&["check-generic", "--s", "3,1,-1,-3", "--json", "-"]);
    assert_eq!(code, 0);
    let start = out.find('{').unwrap();
    let v: Value = serde_json::from_str(&out[start..]).unwrap();
    assert_eq!(v["genericity"]["generic"], true);
    assert_eq!(v["mu"], 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn check_generic_matches_distinctness(vals in prop::collection::vec(-5i64..=5, 2..5)) {
        let s: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
        let joined = s.join(",");
        let (code, _, _) = run(&["check-generic", "--relax-sum", "--s", &joined]);
        let mut d = vals.clone();
        d.sort_unstable();
        d.dedup();
        prop_assert_eq!(code, if d.len() == vals.len() { 0 } else { 1 });
    }
}
