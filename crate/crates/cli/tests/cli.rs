use std::process::{Command, Output};

use serde_json::Value;

fn c2kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_c2kit"))
        .args(args)
        .env_remove("C2KIT_POINT_BUDGET")
        .env_remove("C2KIT_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn values(doc: &Value, key: &str) -> Vec<u64> {
    doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[key].as_u64().unwrap())
        .collect()
}

#[test]
fn k4_all_routes_give_one() {
    let out = c2kit(&["c2", "--graph", "circulant-decompleted:5:1,2", "-p", "2", "--route", "all"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let methods: Vec<&str> = doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["method"].as_str().unwrap())
        .collect();
    assert_eq!(methods, ["direct", "dodgson1", "dodgson2", "five", "coeff", "denom"]);
    assert!(values(&doc, "value").iter().all(|&v| v == 1));
    assert_eq!(doc["records"][0]["graph"], "circulant-decompleted:5:1,2");
}

#[test]
fn c8_13_direct_is_zero() {
    let out = c2kit(&["c2", "--graph", "circulant-decompleted:8:1,3", "--route", "direct"]);
    assert_eq!(code(&out), 0);
    assert_eq!(values(&json(&out), "value"), [0]);
}

#[test]
fn over_budget_exits_3() {
    let out = c2kit(&["c2", "--graph", "circulant-decompleted:30:1,3", "--route", "direct"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn budget_flag_applies() {
    let out = c2kit(&["--budget", "1000", "c2", "--graph", "circulant-decompleted:7:1,2"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&c2kit(&["c2", "--graph", "nonsense:1"])), 2);
    assert_eq!(code(&c2kit(&["c2", "--graph", "circulant-decompleted:7:1,2", "-p", "4"])), 2);
    assert_eq!(code(&c2kit(&["c2"])), 2);
    let out = c2kit(&["family", "--kind", "2,3", "-p", "3", "--range", "7:9", "--route", "transfer"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("transfer is not available for family 2,3 at p = 3"));
}

#[test]
fn c13_parity_with_closed_form() {
    let out = c2kit(&["family", "--kind", "1,3", "-p", "2", "--range", "7:12", "--verify-paper"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["extra"]["verify_paper"], "PASS");
    assert_eq!(values(&doc, "c2"), [1, 0, 1, 0, 1, 0]);
}

#[test]
fn two_k_plus_2_all_zero() {
    let out = c2kit(&["family", "--kind", "2k2", "--range", "3:5", "--verify-paper"]);
    assert_eq!(code(&out), 0);
    assert_eq!(values(&json(&out), "c2"), [0, 0, 0]);
}

#[test]
fn c23_transfer_matches_direct() {
    let out = c2kit(&[
        "family", "--kind", "2,3", "--range", "7:11", "--route", "transfer", "--compare", "direct",
    ]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let recs = doc["records"].as_array().unwrap();
    assert_eq!(recs.len(), 10);
    // sorted by n, then route
    assert_eq!(recs[0]["route"], "direct");
    assert_eq!(recs[1]["route"], "transfer");
    for pair in recs.chunks(2) {
        assert_eq!(pair[0]["n"], pair[1]["n"]);
        assert_eq!(pair[0]["c2"], pair[1]["c2"]);
    }
}

#[test]
fn closed_form_missing_is_usage() {
    let out = c2kit(&["family", "--kind", "2,3", "--range", "7:8", "--verify-paper"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn presets_pass() {
    for preset in ["zigzag-p2", "c13-p2", "c23-table", "2k2-p2"] {
        let out = c2kit(&["--no-meta", "family", "--preset", preset]);
        assert_eq!(code(&out), 0, "{preset}: {}", String::from_utf8_lossy(&out.stderr));
        let doc = json(&out);
        if preset != "c23-table" {
            assert_eq!(doc["extra"]["verify_paper"], "PASS", "{preset}");
        }
    }
}

#[test]
fn c13_preset_fit_divides_x6_x4_x2_1() {
    let doc = json(&c2kit(&["family", "--preset", "c13-p2"]));
    let transfer = doc["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["route"] == "transfer")
        .count();
    assert_eq!(transfer, 45);
    for fit in doc["extra"]["fit"].as_array().unwrap() {
        let ch: Vec<u64> = fit["characteristic"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c.as_u64().unwrap())
            .collect();
        // in x^2: 1, 1 + y, both divide y^3 + y^2 + y + 1 = (1 + y)^3 over GF(2)
        assert!(ch == [1] || ch == [1, 0, 1], "{ch:?}");
    }
}

#[test]
fn csv_columns() {
    let out = c2kit(&["--format", "csv", "--no-meta", "family", "--kind", "zigzag", "--range", "5:6"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,n,p,route,c2,elapsed_ms"));
    assert_eq!(lines.next(), Some("zigzag,5,2,direct,1,0.000"));
    assert_eq!(lines.next(), Some("zigzag,6,2,direct,1,0.000"));
}

#[test]
fn no_meta_is_byte_stable() {
    let args = [
        "--no-meta", "family", "--kind", "1,3", "--range", "7:10", "--compare", "transfer", "--fit",
    ];
    let a = c2kit(&args);
    let b = c2kit(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert!(doc.get("meta").is_none());
    for r in doc["records"].as_array().unwrap() {
        assert_eq!(r["elapsed_ms"].as_f64(), Some(0.0));
    }
}

#[test]
fn meta_present_by_default() {
    let out = c2kit(&["--workers", "2", "c2", "--graph", "circulant-decompleted:5:1,2"]);
    let doc = json(&out);
    assert_eq!(doc["meta"]["workers"], 2);
}

#[test]
fn reduce_zigzag_completes() {
    let out = c2kit(&["--no-meta", "reduce", "--graph", "circulant-decompleted:6:1,2"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["extra"]["stop"], "factored to end");
    assert_eq!(doc["extra"]["c2"], 1);
    assert_eq!(doc["records"][0]["step"], 5);
}

#[test]
fn reduce_reports_unfactorable_step() {
    let out = c2kit(&["reduce", "--graph", "circulant-decompleted:9:2,3"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["extra"]["stop"], "cannot be factored");
    assert_eq!(doc["extra"]["stop_step"], 5);
}

#[test]
fn reduce_needs_five_edges() {
    let dir = std::env::temp_dir().join(format!("c2kit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("square.json");
    std::fs::write(&path, r#"{"vertex_count":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}"#).unwrap();
    let out = c2kit(&["reduce", "--graph", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least 5 edges"));
}

#[test]
fn poly_dumps() {
    let doc = json(&c2kit(&["poly", "kirchhoff", "--graph", "circulant-decompleted:5:1,2"]));
    assert_eq!(doc["records"][0]["terms"], 16);
    let doc = json(&c2kit(&[
        "poly", "dodgson", "--graph", "circulant-decompleted:5:1,2", "--rows", "0", "--cols", "1", "--zeroed", "2",
    ]));
    assert_eq!(doc["records"][0]["terms"], 2);
    let doc = json(&c2kit(&[
        "poly", "forest", "--graph", "circulant-decompleted:5:1,2", "--partition", "{0,1}{2}",
    ]));
    assert_eq!(doc["records"][0]["terms"], 4);
    let out = c2kit(&["poly", "forest", "--graph", "circulant-decompleted:5:1,2", "--partition", "{0}{9}"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn transfer_build_then_run() {
    let dir = std::env::temp_dir().join(format!("c2kit-cli-t-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c13.json");
    let p = path.to_str().unwrap();
    let out = c2kit(&["transfer", "build", "--kind", "1,3", "--out", p]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["records"][0]["states"], 317);
    let out = c2kit(&["transfer", "run", "--kind", "1,3", "--range", "7:20", "--system", p]);
    assert_eq!(code(&out), 0);
    let got = values(&json(&out), "c2");
    let want: Vec<u64> = (7..=20).map(|n| n % 2).collect();
    assert_eq!(got, want);
    let out = c2kit(&["transfer", "run", "--kind", "2,3", "--range", "7:9", "--system", p]);
    assert_eq!(code(&out), 2);
}
