use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ordermono"));
    cmd.env_remove("ORDERMONO_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn put(&self, name: &str, text: &str) -> String {
        let path = self.0.path().join(name);
        std::fs::write(&path, text).unwrap();
        path.display().to_string()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }
}

const CHAIN3: &str = r#"{"n":3,"pairs":[[0,1],[1,2]]}"#;
const ANTI2: &str = r#"{"n":2,"pairs":[]}"#;
// a ≺ c, b incomparable to both
const ACB: &str = r#"{"n":3,"pairs":[[0,2]]}"#;

fn s(v: &Value) -> &str {
    v.as_str().unwrap()
}

#[test]
fn classify_chain_identity_is_utility() {
    let f = Files::new();
    let p = f.put("p.json", CHAIN3);
    let u = f.put("f.json", r#"{"values":["0","1","2"]}"#);
    let r = ok_json(&["classify", "--preorder", &p, "--function", &u]);
    assert_eq!(s(&r["class"]), "Utility");
    assert_eq!(r["represents"], true);
    assert_eq!(r["injectively_represents"], true);
}

#[test]
fn classify_constant_on_antichain_is_strict_only() {
    let f = Files::new();
    let p = f.put("p.json", ANTI2);
    let u = f.put("f.json", r#"{"values":["1/2","1/2"]}"#);
    let r = ok_json(&["classify", "--preorder", &p, "--function", &u]);
    assert_eq!(s(&r["class"]), "StrictMonotone");
    assert_eq!(r["injectively_represents"], false);
}

#[test]
fn classify_error_codes() {
    let f = Files::new();
    let p = f.put("p.json", CHAIN3);
    let bad = f.put("bad.json", "{not json");
    let short = f.put("short.json", r#"{"values":["0","1"]}"#);
    assert_eq!(
        code(&["classify", "--preorder", &bad, "--function", &short]),
        2
    );
    assert_eq!(
        code(&["classify", "--preorder", &p, "--function", &short]),
        3
    );
    assert_eq!(code(&["classify", "--preorder", &p]), 2);
    let missing = f.path("missing.json").display().to_string();
    assert_eq!(
        code(&["classify", "--preorder", &missing, "--function", &short]),
        1
    );
}

#[test]
fn build_injective_from_lorenz_utilities() {
    let f = Files::new();
    let (p, m) = (f.path("p.json"), f.path("m.json"));
    let (ps, ms) = (p.display().to_string(), m.display().to_string());
    let r = ok_json(&[
        "lorenz",
        "--preorder-out",
        &ps,
        "--multi-out",
        &ms,
        "1,0,0",
        "0.6,0.2,0.2",
        "0.5,0.4,0.1",
        "1/3,1/3,1/3",
    ]);
    assert_eq!(r["n"], 4);
    assert_eq!(r["functions"], 2);
    let out = f.path("c.json").display().to_string();
    let r = ok_json(&[
        "build-injective",
        "--preorder",
        &ps,
        "--multi",
        &ms,
        "--out",
        &out,
    ]);
    assert_eq!(s(&r["class"]), "InjectiveMonotone");
    let c: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c["values"].as_array().unwrap().len(), 4);
    let check = ok_json(&["classify", "--preorder", &ps, "--function", &out]);
    assert_eq!(s(&check["class"]), "InjectiveMonotone");
}

#[test]
fn build_injective_rejects_non_multi_utility() {
    let f = Files::new();
    let p = f.put("p.json", ANTI2);
    let m = f.put("m.json", r#"[{"values":["0","1"]}]"#);
    let out = run(&["build-injective", "--preorder", &p, "--multi", &m]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0, 1)"));
}

#[test]
fn ratio_must_be_below_half() {
    let f = Files::new();
    let p = f.put("p.json", CHAIN3);
    let m = f.put("m.json", r#"[{"values":["0","1","2"]}]"#);
    assert_eq!(
        code(&[
            "build-injective",
            "--preorder",
            &p,
            "--multi",
            &m,
            "--r",
            "1/2"
        ]),
        2
    );
    assert_eq!(
        code(&[
            "build-injective",
            "--preorder",
            &p,
            "--multi",
            &m,
            "--r",
            "0"
        ]),
        2
    );
    let r = ok_json(&[
        "build-injective",
        "--preorder",
        &p,
        "--multi",
        &m,
        "--r",
        "0.25",
    ]);
    assert_eq!(s(&r["r"]), "1/4");
    assert_eq!(
        r["function"]["values"],
        serde_json::json!(["0/1", "1/1", "5/4"])
    );
}

#[test]
fn build_multi_methods() {
    let f = Files::new();
    let p = f.put("p.json", ACB);
    let m = f.put(
        "m.json",
        r#"[{"values":["1","0","2"]},{"values":["0","2","1"]}]"#,
    );
    let c = f.put("c.json", r#"{"values":["0","1","2"]}"#);
    let strict = f.put("s.json", r#"{"values":["0","0","1"]}"#);
    let swap = ok_json(&[
        "build-multi",
        "--preorder",
        &p,
        "--method",
        "swap",
        "--multi",
        &m,
    ]);
    assert_eq!(swap["is_multi_utility"], true);
    assert_eq!(swap["all_injective"], true);
    let from = ok_json(&[
        "build-multi",
        "--preorder",
        &p,
        "--method",
        "from-injective",
        "--function",
        &c,
    ]);
    assert_eq!(from["all_injective"], true);
    let dense = ok_json(&["build-multi", "--preorder", &p, "--method", "dense"]);
    assert_eq!(dense["functions"], 6);
    let sd = ok_json(&[
        "build-multi",
        "--preorder",
        &p,
        "--method",
        "strict-dense",
        "--function",
        &strict,
    ]);
    assert_eq!(sd["is_multi_utility"], true);
    let up = ok_json(&["build-multi", "--preorder", &p, "--method", "up-sets"]);
    assert_eq!(up["functions"], 3);
    assert_eq!(
        code(&["build-multi", "--preorder", &p, "--method", "swap"]),
        2
    );
    assert_eq!(
        code(&[
            "build-multi",
            "--preorder",
            &p,
            "--method",
            "from-injective",
            "--function",
            &strict
        ]),
        6
    );
}

#[test]
fn eliminate_hand_trace() {
    let f = Files::new();
    let p = f.put("p.json", ACB);
    let u = f.put("f.json", r#"{"values":["0","0","1"]}"#);
    let r = ok_json(&["eliminate", "--preorder", &p, "--function", &u]);
    assert_eq!(r["non_injective_set"], serde_json::json!([0, 1]));
    assert_eq!(
        r["function"]["values"],
        serde_json::json!(["0/1", "1/1", "5/2"])
    );
    assert_eq!(s(&r["class"]), "InjectiveMonotone");
    let not_strict = f.put("g.json", r#"{"values":["0","0","0"]}"#);
    assert_eq!(
        code(&["eliminate", "--preorder", &p, "--function", &not_strict]),
        6
    );
}

#[test]
fn density_reports() {
    let f = Files::new();
    let p = f.put("p.json", CHAIN3);
    let r = ok_json(&["density", "--preorder", &p, "--set", "1"]);
    assert_eq!(r["report"]["debreu_dense"], true);
    assert_eq!(r["report"]["order_dense"], false);
    let g = ok_json(&["density", "--preorder", &p, "--greedy", "debreu-dense"]);
    assert_eq!(s(&g["greedy"]["kind"]), "debreu_dense");
    assert_eq!(code(&["density", "--preorder", &p, "--set", "7"]), 2);
    assert_eq!(
        code(&["density", "--preorder", &p, "--greedy", "nonsense"]),
        2
    );
}

#[test]
fn maxent_audit_reproduces_the_missed_maximal_element() {
    let f = Files::new();
    let csv = f.path("grid.csv").display().to_string();
    let r = ok_json(&[
        "maxent-audit",
        "--energy",
        "1,-1,0",
        "--level",
        "1/4",
        "--step",
        "1/1000",
        "--out",
        &csv,
        "--full",
    ]);
    assert_eq!(r["grid_size"], 376);
    let p = serde_json::json!({"probs": ["1/2", "1/4", "1/4"]});
    assert!(r["missed"].as_array().unwrap().contains(&p));
    assert!(r["maximal_set"].as_array().unwrap().contains(&p));
    assert!(!r["entropy_argmax"].as_array().unwrap().contains(&p));
    assert!(r["max_entropy"].as_f64().unwrap() - 1.039_720_771 >= 0.0088);
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,p1,p2,p3,entropy,is_maximal,is_entropy_argmax");
    assert_eq!(lines.len(), 377);
    assert!(lines.contains(&"1/4,1/2,1/4,1/4,1.039720770840,true,false"));
}

#[test]
fn maxent_audit_boundary_and_infeasible() {
    let r = ok_json(&["maxent-audit", "--energy", "1,-1,0", "--level", "1"]);
    assert_eq!(r["grid_size"], 1);
    assert_eq!(r["missed_count"], 0);
    assert_eq!(r["maximal_count"], 1);
    assert_eq!(
        code(&["maxent-audit", "--energy", "1,-1,0", "--level", "2"]),
        5
    );
    assert_eq!(
        code(&["maxent-audit", "--energy", "1,-1", "--level", "0"]),
        3
    );
    assert_eq!(
        code(&["maxent-audit", "--energy", "1,x,0", "--level", "0"]),
        2
    );
}

#[test]
fn witnesses() {
    let r = ok_json(&["witness", "upper-dense", "0.6,0.2,0.2", "0.5,0.4,0.1"]);
    assert_eq!(r["verified"], true);
    assert_eq!(s(&r["z_vs_y"]["relation"]), "StrictlyLess");
    let r = ok_json(&["witness", "order-dense2", "9/10,1/10", "3/5,2/5"]);
    assert_eq!(r["r"], serde_json::json!({"probs": ["3/4", "1/4"]}));
    let r = ok_json(&[
        "witness",
        "trumping",
        "0.4,0.4,0.1,0.1",
        "0.5,0.25,0.25,0",
        "0.6,0.4",
    ]);
    assert_eq!(s(&r["base_relation"]["relation"]), "Incomparable");
    assert_eq!(r["catalyzed"], true);
    let r = ok_json(&["witness", "equal-entropy", "--c", "0.8", "--n", "3"]);
    assert_eq!(s(&r["relation"]["relation"]), "Incomparable");
    assert!((r["entropy_p"].as_f64().unwrap() - 0.8).abs() <= 1e-9);
    assert_eq!(code(&["witness", "upper-dense", "1,0,0", "1/3,1/3,1/3"]), 6);
    assert_eq!(
        code(&["witness", "equal-entropy", "--c", "2", "--n", "3"]),
        2
    );
    assert_eq!(
        code(&["witness", "equal-entropy", "--c", "0.8", "--tol", "1e-30"]),
        8
    );
    assert_eq!(code(&["witness", "trumping", "0.5,0.5", "1,0,0", "1"]), 3);
}

#[test]
fn relate_commands() {
    let r = ok_json(&["relate", "interval", "1/2", "5/2"]);
    assert_eq!(s(&r["relation"]), "Incomparable");
    let r = ok_json(&["relate", "interval", "1/2", "2.7"]);
    assert_eq!(s(&r["relation"]), "StrictlyLess");
    assert_eq!(code(&["relate", "interval", "1/2", "3/2"]), 2);
    let r = ok_json(&[
        "relate",
        "uncertainty",
        "0.6,0.2,0.2",
        "0.5,0.4,0.1",
        "--classical",
    ]);
    assert_eq!(s(&r["relation"]), "Incomparable");
    assert_eq!(s(&r["majorization"]["relation"]), "Incomparable");
    let r = ok_json(&[
        "--bits",
        "relate",
        "uncertainty",
        "1,0,0,0",
        "1/4,1/4,1/4,1/4",
    ]);
    assert_eq!(s(&r["relation"]), "StrictlyLess");
    assert!((r["entropy_q"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    let f = Files::new();
    let p = f.put(
        "p.json",
        r#"{"n":2,"labels":["low","high"],"pairs":[[0,1]]}"#,
    );
    let r = ok_json(&["relate", "preorder", "--preorder", &p, "1", "0"]);
    assert_eq!(s(&r["relation"]), "StrictlyGreater");
    assert_eq!(s(&r["x"]), "high");
    assert_eq!(code(&["relate", "preorder", "--preorder", &p, "0", "5"]), 2);
}

fn stdout_of(cmd: &mut Command) -> Vec<u8> {
    let out = cmd.output().unwrap();
    assert!(out.status.success());
    out.stdout
}

#[test]
fn seeded_output_is_deterministic() {
    let a = stdout_of(bin().args(["--seed", "7", "random-pair", "--n", "5"]));
    let b = stdout_of(bin().args(["random-pair", "--n", "5", "--seed", "7"]));
    assert_eq!(a, b);
    let c = stdout_of(bin().args(["--seed", "8", "random-pair", "--n", "5"]));
    assert_ne!(a, c);
    let env = stdout_of(bin().env("ORDERMONO_SEED", "7").args([
        "--seed",
        "8",
        "random-pair",
        "--n",
        "5",
    ]));
    assert_eq!(a, env);
    let r: Value = serde_json::from_slice(&a).unwrap();
    assert!(r["entropy_p"].as_f64().unwrap() < r["entropy_q"].as_f64().unwrap());
    let bad = bin()
        .env("ORDERMONO_SEED", "abc")
        .args(["random-pair"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn repeated_audits_are_byte_identical() {
    let args = [
        "maxent-audit",
        "--energy",
        "1,-1,0",
        "--level",
        "1/4",
        "--step",
        "1/100",
        "--full",
    ];
    assert_eq!(stdout_of(bin().args(args)), stdout_of(bin().args(args)));
}
