use std::process::Command;

fn hfkit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hfkit"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out) = hfkit(args);
    assert_eq!(code, 0, "{args:?}: {out}");
    out.trim().to_string()
}

#[test]
fn encode_and_decode() {
    assert_eq!(ok(&["encode", "{{},{{}}}"]), "3");
    assert_eq!(ok(&["encode", "{{},{}}"]), "1");
    assert_eq!(ok(&["encode", "{{{}}}"]), "2");
    assert_eq!(ok(&["decode", "#11"]), "{{},{{}},{{},{{}}}}");
    assert_eq!(ok(&["decode", "0"]), "{}");
}

#[test]
fn operations() {
    assert_eq!(ok(&["op", "eps", "#1", "#3"]), "true");
    assert_eq!(ok(&["op", "binunion", "#5", "#3"]), "7");
    assert_eq!(ok(&["op", "v", "3"]), "11");
    assert_eq!(ok(&["op", "is-von-neumann", "#11"]), "3");
    assert_eq!(ok(&["op", "add", "#3", "#1"]), "11");
    assert_eq!(ok(&["op", "mul", "{{}}", "#3"]), "3");
}

#[test]
fn classify_example() {
    assert_eq!(ok(&["classify", "--sig", "arith", "forall x. exists y. x = y"]), "E=3 U=2");
}

#[test]
fn translate_reports_levels() {
    let out = ok(&["--json", "translate", "--interp", "a", "x in y"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["source_level"]["e"], 0);
    assert_eq!(v["target_level"]["e"], 0);
    assert!(!v["obligations"].as_array().unwrap().is_empty());
    let composed = ok(&["translate", "--interp", "b", "--compose", "a", "x in y"]);
    assert!(composed.contains("in"), "{composed}");
}

#[test]
fn eval_with_assignments() {
    assert_eq!(ok(&["eval", "--sig", "set", "x in y", "x=#0", "y={{}}"]), "true");
    assert_eq!(ok(&["eval", "--sig", "arith", "x + y = S(S(0))", "x=1", "y=1"]), "true");
    assert_eq!(ok(&["eval", "--sig", "arith", "exists z. x + z = y", "x=3", "y=1", "--budget", "16"]), "false");
}

#[test]
fn checks_emit_reports() {
    let out = ok(&["roundtrip", "ba_membership", "--range", "64", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"], "pass");
    assert_eq!(v["subject"], "ba_membership");
    assert!(ok(&["stage", "--n", "3"]).contains("Pass"));
    let v: serde_json::Value = serde_json::from_str(&ok(&["axiom-check", "union", "--n", "2", "--json"])).unwrap();
    assert_eq!(v["result"], "pass");
    assert_eq!(v["bump"], 1);
}

#[test]
fn selftest_subset() {
    let out = ok(&["selftest", "2", "4"]);
    assert_eq!(out.lines().count(), 2, "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(hfkit(&["encode", "{"]).0, 2);
    assert_eq!(hfkit(&["encode", "{}", "--range", "3"]).0, 2);
    assert_eq!(hfkit(&["frobnicate"]).0, 2);
    assert_eq!(hfkit(&["axiom-check", "choice", "--n", "2"]).0, 2);
    assert_eq!(hfkit(&["stage", "--n", "6"]).0, 3);
    assert_eq!(hfkit(&["roundtrip", "ab_add", "--range", "1000"]).0, 3);
    assert_eq!(hfkit(&["op", "v", "9"]).0, 3);
}
