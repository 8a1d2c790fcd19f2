//! Exit-code contract and report shape of the binary.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_hypersc")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("hypersc-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn delta_on_tree_exits_zero() {
    let file = write_temp(
        "tree.json",
        r#"{"vertices": ["a","b","c"], "edges": [["a","b","1"],["b","c","1/2"]]}"#,
    );
    let out = Command::new(bin()).arg("delta").arg(&file).output().unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["delta_four_point"], serde_json::json!(0));
    assert_eq!(report["schema_version"], "1");
}

#[test]
fn failed_check_exits_one_with_witness() {
    let file = write_temp("sc.txt", "ab\naaabbb\n");
    let out = Command::new(bin())
        .args(["sc-check"])
        .arg(&file)
        .args(["--lambda", "1/6"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["check"]["holds"], serde_json::json!(false));
    assert!(!report["results"]["check"]["violations"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn malformed_input_exits_two() {
    let file = write_temp("bad.json", "{ not json");
    let out = Command::new(bin()).arg("delta").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin()).arg("nonsense-subcommand").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn disconnected_space_exits_two() {
    let file = write_temp(
        "disc.json",
        r#"{"vertices": ["a","b"], "edges": []}"#,
    );
    let out = Command::new(bin()).arg("delta").arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("disconnected"), "stderr: {err}");
}

#[test]
fn exact_flag_rejects_float_spaces() {
    let file = write_temp(
        "float.json",
        r#"{"vertices": ["a","b"], "edges": [["a","b",1.5]]}"#,
    );
    let out = Command::new(bin())
        .args(["delta"])
        .arg(&file)
        .arg("--exact")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn qc_subset_file_form() {
    let space = write_temp(
        "p5.json",
        r#"{"vertices": ["a","b","c","d","e"],
            "edges": [["a","b",1],["b","c",1],["c","d",1],["d","e",1]]}"#,
    );
    let subset = write_temp("subset.json", r#"{"subset": ["a","e"]}"#);
    let out = Command::new(bin())
        .args(["qc"])
        .arg(&space)
        .args(["--subset-file"])
        .arg(&subset)
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["alpha"], serde_json::json!(2));
}

#[test]
fn coneoff_query_and_sandwich() {
    let file = write_temp(
        "co.json",
        r#"{"base": {"vertices": ["a","b","c","d"],
                     "edges": [["a","b",1],["b","c",1],["c","d",1],["d","a",1]]},
            "rho": 1.0,
            "attachments": [{"subset": ["a","b","c","d"]}]}"#,
    );
    let out = Command::new(bin())
        .args(["coneoff"])
        .arg(&file)
        .args(["--query", "a", "c", "--sandwich-check", "--delta"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let d = report["results"]["query"]["dot_dist"].as_f64().unwrap();
    assert!(d <= 2.0 + 1e-9);
}

#[test]
fn rotation_family_file_with_embedded_coneoff() {
    // two cones over a 12-cycle with the half-rotation as rotation group;
    // sigma = 2 rho; note pi sinh(0.6) < 6 so the rotation hypothesis holds
    let n = 12;
    let rho = 0.6;
    let vertices: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let edges: Vec<serde_json::Value> = (0..n)
        .map(|i| serde_json::json!([format!("c{i}"), format!("c{}", (i + 1) % n), 1]))
        .collect();
    let perm: serde_json::Map<String, serde_json::Value> = {
        let mut m = serde_json::Map::new();
        for i in 0..n {
            m.insert(format!("c{i}"), serde_json::json!(format!("c{}", (i + n / 2) % n)));
        }
        m.insert("apex0".into(), serde_json::json!("apex0"));
        m.insert("apex1".into(), serde_json::json!("apex1"));
        for ring in 1..=1 {
            for att in 0..2 {
                for i in 0..n {
                    m.insert(
                        format!("c{i}@{att}r{ring}"),
                        serde_json::json!(format!("c{}@{att}r{ring}", (i + n / 2) % n)),
                    );
                }
            }
        }
        m
    };
    let doc = serde_json::json!({
        "space": {
            "base": {"vertices": vertices, "edges": edges},
            "rho": rho,
            "attachments": [{"subset": (0..n).map(|i| format!("c{i}")).collect::<Vec<_>>()},
                            {"subset": (0..n).map(|i| format!("c{i}")).collect::<Vec<_>>()}]
        },
        "sigma": 2.0 * rho,
        "pairs": [
            {"apex": "apex0", "subgroup": [perm.clone()]},
            {"apex": "apex1", "subgroup": [perm.clone()]}
        ],
        "conjugators": [perm]
    });
    let file = write_temp("rotation.json", &doc.to_string());
    let out = Command::new(bin())
        .args(["rotation"])
        .arg(&file)
        .args(["--rings", "1"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stdout: {} stderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"]["axioms"]["r1_holds"], serde_json::json!(true));
    assert_eq!(report["results"]["k_ball"]["complete"], serde_json::json!(true));
    assert_eq!(report["certified"], serde_json::json!(true));
}
