use p2degen::cli::run_with;
use p2degen::report::{Report, Status};
use p2degen::surfcat::{parse_surface, surface_to_json};

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("p2degen").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_report(args: &[&str]) -> (i32, Report) {
    let (code, out, _) = run(args);
    (code, serde_json::from_str(&out).expect("report json"))
}

#[test]
fn markov_enumerate_lists_five_triples() {
    let (code, out, _) = run(&["markov", "enumerate", "--max", "29"]);
    assert_eq!(code, 0);
    for t in ["(1, 1, 1)", "(1, 1, 2)", "(1, 2, 5)", "(1, 5, 13)", "(2, 5, 29)"] {
        assert!(out.contains(t), "missing {t} in\n{out}");
    }
}

#[test]
fn markov_check_rejects_non_solution() {
    assert_eq!(run(&["markov", "check", "1", "2", "5"]).0, 0);
    assert_eq!(run(&["markov", "check", "1", "2", "6"]).0, 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["curve", "test"]).0, 2);
    let (code, _, err) = run(&["sing", "hj", "seven", "2"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn domain_errors_exit_one() {
    let (code, _, err) = run(&["sing", "invariants", "4", "2"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"), "{err}");
    assert_eq!(run(&["catalog", "verify", "--degree", "7"]).0, 1);
}

#[test]
fn sing_invariants_of_wahl_point() {
    let (code, out, _) = run(&["sing", "invariants", "4", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("chain [-4]"));
    assert!(out.contains("Z_K^2 -1"));
}

#[test]
fn degree_five_catalog_passes_as_json() {
    let (code, report) = json_report(&["catalog", "verify", "--degree", "5", "--json"]);
    assert_eq!(code, 0);
    assert!(report.all_passed());
    assert!(report.summary.total > 20);
    assert_eq!(report.summary.passed, report.checks.len());
}

#[test]
fn quintic_a12_germ_fails_with_witness() {
    let file = data("quintic_a12.json");
    let (code, report) = json_report(&["curve", "test", "--degree", "5", "--germ", &file, "--json"]);
    assert_eq!(code, 1);
    let c = &report.checks[0];
    assert_eq!(c.status, Status::Fail);
    let w = c.witness.as_ref().unwrap();
    assert_eq!((w["m"].as_u64(), w["n"].as_u64()), (Some(2), Some(13)));
    assert_eq!(w["weight"].as_u64(), Some(26));
}

#[test]
fn curve_expression_passes_below_bound() {
    let (code, out, _) = run(&["curve", "test", "--degree", "5", "--expr", "y^2 + x^5"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn surface_files_match_expectations() {
    let cases = [
        ("p112_union.json", 0),
        ("p114.json", 0),
        ("p115_p145.json", 0),
        ("x26.json", 0),
        ("p113.json", 1),
        ("p115_p145_rho22.json", 1),
        ("elliptic_cone.json", 1),
    ];
    for (file, expected) in cases {
        let path = data(file);
        let (code, out, _) = run(&["surface", "check", &path, "--degree", "5"]);
        assert_eq!(code, expected, "{file}\n{out}");
    }
    let cone = data("elliptic_cone.json");
    assert_eq!(run(&["surface", "check", &cone, "--degree", "6"]).0, 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["catalog", "verify", "--degree", "4", "--json"][..],
        &["markov", "enumerate", "--max", "1000", "--json"][..],
    ] {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn surface_descriptors_round_trip() {
    for file in ["p112_union.json", "p115_p145.json", "x26.json", "elliptic_cone.json"] {
        let text = std::fs::read_to_string(data(file)).unwrap();
        let g = parse_surface(&text).unwrap();
        let again = parse_surface(&surface_to_json(&g)).unwrap();
        assert_eq!(surface_to_json(&again), surface_to_json(&g), "{file}");
    }
}

#[test]
fn emitted_json_reads_back() {
    use num_bigint::BigUint;
    use p2degen::markov::is_markov;
    use p2degen::quotsing::CyclicQuotient;

    let (_, out, _) = run(&["markov", "enumerate", "--max", "200", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let triples: Vec<[u64; 3]> = serde_json::from_value(v["triples"].clone()).unwrap();
    let edges: Vec<[usize; 2]> = serde_json::from_value(v["edges"].clone()).unwrap();
    assert_eq!(edges.len() + 1, triples.len());
    assert!(triples.iter().all(|t| {
        let [a, b, c] = t.map(BigUint::from);
        is_markov(&a, &b, &c)
    }));

    let (_, out, _) = run(&["sing", "resolve", "7", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let s: CyclicQuotient = serde_json::from_value(v["singularity"].clone()).unwrap();
    assert_eq!(s, CyclicQuotient::new(7, 3).unwrap());
}

#[test]
fn cycle_accepts_negative_entries_before_flags() {
    // K^2 = -(1 + 1 + 2) and mu_- = 10 h1 + K^2 + 3 - 1.
    let (code, out, _) = run(&["sing", "cycle", "-3,-3,-4", "--h1", "1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("K^2: -4") && out.contains("mu_- = 8"), "{out}");
    assert_eq!(run(&["sing", "cycle", "-2,x,-3"]).0, 2);
}
