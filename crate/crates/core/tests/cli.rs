use arfkit::cli::run;
use arfkit::DecompositionResult;

fn arfkit(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("arfkit").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn check_reports_witness() {
    let (code, out, _) = arfkit(&["check", "4,6,7"]);
    assert_eq!(code, 1);
    assert!(out.contains("not Arf; witness x=7 y=6 z=4, x+y−z=9 ∉ S"), "{out}");

    let (code, out, _) = arfkit(&["check", "3,11,13"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("⟨3,11,13⟩ is Arf"));
}

#[test]
fn check_json() {
    let (code, out, _) = arfkit(&["check", "4,6,7", "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["arf"], false);
    assert_eq!(v["pattern_witness"]["kind"], "pattern_triple");
    assert_eq!(v["stability_witness"]["a"], 4);
}

#[test]
fn decompose_worked_example() {
    let (code, out, _) = arfkit(&["decompose", "3,11,13", "--value", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("q = 1"));
    assert!(out.contains("B = I : I = ⟨3,5,7⟩"));
    assert!(out.contains("verified: true"));

    let (code, out, _) = arfkit(&["--json", "decompose", "3,11,13", "--value", "6"]);
    assert_eq!(code, 0);
    let r: DecompositionResult = serde_json::from_str(&out).unwrap();
    assert_eq!(r.q, 1);
    assert!(r.verified);
    assert_eq!(r.endpoint_b.to_string(), "⟨3,5,7⟩");

    // Byte-identical across runs.
    let (_, again, _) = arfkit(&["--json", "decompose", "3,11,13", "--value", "6"]);
    assert_eq!(out, again);
}

#[test]
fn decompose_from_multiplicity_sequence() {
    let (code, out, _) = arfkit(&["decompose", "--mult-seq", "3,3,3,2", "--value", "9"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("q = 2"));
}

#[test]
fn input_errors_exit_2() {
    let (code, _, err) = arfkit(&["decompose", "3,11,13", "--value", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("5 ∉ ⟨3,11,13⟩"), "{err}");

    assert_eq!(arfkit(&["stats", "4,6"]).0, 2);
    assert_eq!(arfkit(&["stats", "3,x"]).0, 2);
    assert_eq!(arfkit(&["stats", "0,3"]).0, 2);
    assert_eq!(arfkit(&["stats", "--mult-seq", "2,3"]).0, 2);
    assert_eq!(arfkit(&["stats", "3,5", "--mult-seq", "2"]).0, 2);
    assert_eq!(arfkit(&["decompose", "3,11,13"]).0, 2);
    assert_eq!(arfkit(&["frobnicate"]).0, 2);

    let (code, _, err) = arfkit(&["stats", "1000,1001", "--max-bound", "1000"]);
    assert_eq!(code, 2);
    assert!(err.contains("exceeds"));
}

#[test]
fn non_arf_input_to_arf_only_verbs() {
    for verb in ["tower", "enumerate"] {
        let (code, out, err) = arfkit(&[verb, "4,6,7"]);
        assert_eq!(code, 1, "{verb}");
        assert!(out.is_empty());
        assert!(err.contains("is not Arf"));
    }
    assert_eq!(arfkit(&["decompose", "4,6,7", "--value", "4"]).0, 1);
}

#[test]
fn closure_and_tower() {
    let (code, out, _) = arfkit(&["closure", "4,6,7"]);
    assert_eq!(code, 0);
    assert!(out.contains("⟨4,6,7,9⟩"));

    let (code, out, _) = arfkit(&["tower", "3,11,13", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["multiplicity_sequence"], serde_json::json!([3, 3, 3, 2]));
    assert_eq!(v["rings"].as_array().unwrap().len(), 5);
}

#[test]
fn stats_and_enumerate() {
    let (code, out, _) = arfkit(&["stats", "3,11,13"]);
    assert_eq!(code, 0);
    assert!(out.contains("conductor 11"));
    assert!(out.contains("genus 7"));

    let (code, out, _) = arfkit(&["enumerate", "3,11,13", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let a: Vec<i64> = v["ideals"].as_array().unwrap().iter().map(|i| i["a"].as_i64().unwrap()).collect();
    assert_eq!(a, [0, 3, 6, 9]);
}

#[test]
fn verify_family() {
    let (code, out, _) = arfkit(&["verify", "--exhaustive-conductor", "8", "--random", "5", "--seed", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));

    let (code, out, _) = arfkit(&["verify", "3,11,13", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], true);

    let (code, out, _) = arfkit(&["verify", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS dvr_powers_of_maximal_ideal"));

    assert_eq!(arfkit(&["verify"]).0, 2);
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, err) = arfkit(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("decompose"));
    assert!(err.is_empty());
}
