use mpbt_cli::{run, EXIT_OK, EXIT_RESOURCE_CAP, EXIT_USAGE};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["mpbt"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn fidelity_of_the_smallest_instance() {
    let (code, out, _) = invoke(&["fidelity", "--ports", "2", "--k", "1", "--dim", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("F = 0.466506350946\n"), "{out}");
    assert!(out.contains("(1)\t0.466506350946"));
}

#[test]
fn invalid_instances_are_usage_errors() {
    let (code, _, err) = invoke(&["fidelity", "--ports", "2", "--k", "2", "--dim", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("usage error"));
    assert_eq!(invoke(&["probability", "--ports", "2"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["teleport"]).0, EXIT_USAGE);
    assert_eq!(invoke(&["--help"]).0, EXIT_OK);
}

#[test]
fn probability_is_exact() {
    let (code, out, _) = invoke(&["probability", "--ports", "2", "--k", "1", "--dim", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("p = 1/3 = 0.333333333333\n"), "{out}");
    assert!(out.contains("(1)\t(2)\t"));
}

#[test]
fn fidelity_with_two_teleported_qubits_is_a_probability() {
    let (code, out, _) = invoke(&["fidelity", "--ports", "4", "--k", "2", "--dim", "2"]);
    assert_eq!(code, EXIT_OK);
    let f: f64 = out.lines().next().unwrap().trim_start_matches("F = ").parse().unwrap();
    assert!(f > 0.0 && f < 1.0);
}

fn sweep_rows(out: &str) -> Vec<Vec<String>> {
    out.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn sweep_over_qubits() {
    let args = ["sweep", "--ports", "2..8", "--k", "1,2", "--dim", "2"];
    let (code, out, err) = invoke(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().next().unwrap(), "N,k,d,F,p_num,p_den,num_eigs,trace_residual");
    let rows = sweep_rows(&out);
    assert_eq!(rows.len(), 12);
    assert_eq!(err.lines().count(), 2);
    for r in &rows {
        let f: f64 = r[3].parse().unwrap();
        assert!(f > 0.0 && f <= 1.0);
        assert_eq!(r[7], "0");
    }
    let keys: Vec<(usize, usize)> = rows.iter().map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(invoke(&args).1, out);
}

#[test]
fn two_qubits_beat_one_ququart_in_the_sweep() {
    let (_, out, _) = invoke(&["sweep", "--ports", "4..8", "--k", "1,2", "--dim", "2,4"]);
    let rows = sweep_rows(&out);
    let f = |n: &str, k: &str, d: &str| -> f64 {
        rows.iter().find(|r| r[0] == n && r[1] == k && r[2] == d).unwrap()[3].parse().unwrap()
    };
    for n in ["4", "5", "6", "7", "8"] {
        assert!(f(n, "2", "2") > f(n, "1", "4"), "N = {n}");
    }
}

#[test]
fn sweep_as_json_to_a_file() {
    let path = std::env::temp_dir().join(format!("mpbt-sweep-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = invoke(&["sweep", "--ports", "2,3", "--k", "1", "--dim", "2", "--format", "json", "--out", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 2);
    assert_eq!(doc[0]["params"], serde_json::json!({"N": 2, "k": 1, "d": 2}));
    assert_eq!(doc[0]["probability"], serde_json::json!({"num": 1, "den": 3}));
    assert_eq!(doc[0]["spectrum"][1]["mu"], serde_json::json!([1, 1]));
}

#[test]
fn unwritable_output_is_an_error() {
    let (code, _, err) = invoke(&["sweep", "--ports", "2", "--k", "1", "--dim", "2", "--out", "/nonexistent/dir/x.csv"]);
    assert_ne!(code, EXIT_OK);
    assert!(err.contains("error"));
}

#[test]
fn compare_reports_both_schemes() {
    let (code, out, _) = invoke(&["compare", "--ports", "4", "--k", "2", "--dim", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("mpbt(N=4, k=2, d=2)"));
    assert!(out.contains("pbt(N=4, d=4)"));
}

#[test]
fn verify_under_a_small_cap() {
    let args = ["verify", "--max-dim", "64", "--seed", "3"];
    let (code, out, _) = invoke(&args);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().all(|l| !l.starts_with("FAIL")));
    assert!(out.contains("(N=4, k=2, d=2)"));
    assert!(!out.contains("(N=6, k=1, d=2)"));
    assert_eq!(invoke(&args).1, out);
}

#[test]
fn verify_reports_the_cap() {
    let (code, _, err) = invoke(&["verify", "--max-dim", "16"]);
    assert_eq!(code, EXIT_RESOURCE_CAP);
    assert!(err.contains("exceeds the dimension cap"));
}
