//! End-to-end tests of the qrec binary: exit codes, golden output,
//! determinism, and the JSON round trip.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use qrec_core::subcat::Subcat;
use qrec_core::{Quiver, Universe};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qrec"))
        .args(args)
        .env_remove("QREC_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn a2_universe() -> Universe {
    let q = Quiver::new(
        vec!["4".to_string(), "1".to_string()],
        vec![("a".to_string(), "4".to_string(), "1".to_string())],
    )
    .unwrap();
    Universe::new(Arc::new(q), 2, 30, 42).unwrap()
}

#[test]
fn indec_counts_match_the_universes() {
    for (file, expect) in [("a2.json", 3), ("b2.json", 3), ("a4_split.json", 10)] {
        let out = run(&["indec", fixture(file).to_str().unwrap()]);
        assert!(out.status.success(), "{file}: {}", stderr(&out));
        assert_eq!(stdout(&out).lines().count(), expect, "{file}");
    }
    let out = run(&["indec", fixture("a4_split.json").to_str().unwrap()]);
    assert_eq!(stdout(&out), golden("indec_a4.txt"));
}

#[test]
fn single_vertex_has_one_indecomposable() {
    let out = run(&["indec", fixture("single_vertex.json").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "s  (1)\n");
}

#[test]
fn ice_listings_match_the_goldens() {
    let out = run(&[
        "subcats",
        fixture("a2.json").to_str().unwrap(),
        "--kind",
        "ice",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("subcats_a2_ice.txt"));

    let out = run(&[
        "subcats",
        fixture("b2.json").to_str().unwrap(),
        "--kind",
        "ice",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("subcats_b2_ice.txt"));
}

#[test]
fn reproduce_matches_the_golden_tables() {
    let out = run(&[
        "reproduce",
        fixture("a4_split.json").to_str().unwrap(),
        "--example",
        "tables",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), golden("reproduce_tables.txt"));
}

#[test]
fn output_is_byte_deterministic() {
    let a4_path = fixture("a4_split.json");
    let a4 = a4_path.to_str().unwrap();
    let args = ["reproduce", a4, "--example", "tables"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);

    let verify_args = ["verify", a4, "--suite", "bijection", "--format", "json"];
    let first = run(&verify_args);
    let second = run(&verify_args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn transfer_reproduces_the_worked_rows() {
    // Extension by zero fixes the i-side subcategory.
    let out = run(&[
        "transfer",
        fixture("a4_split.json").to_str().unwrap(),
        fixture("subcat_add_4_41.json").to_str().unwrap(),
        "--map",
        "from_i_side",
        "--kind",
        "ice",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("output (ambient): add{4, 4/1}"), "{text}");
    assert!(text.contains("certificate [pass]"), "{text}");

    // The preimage of the zero subcategory under restriction.
    let out = run(&[
        "transfer",
        fixture("a4_split.json").to_str().unwrap(),
        fixture("subcat_empty.json").to_str().unwrap(),
        "--map",
        "preimage_j",
        "--kind",
        "ice",
    ]);
    let text = stdout(&out);
    assert!(text.contains("output (ambient): add{1, 4, 4/1}"), "{text}");

    // The exact extension from the quotient part is the identity on names.
    let out = run(&[
        "transfer",
        fixture("a4_split.json").to_str().unwrap(),
        fixture("subcat_add_2.json").to_str().unwrap(),
        "--map",
        "from_j_side_star",
        "--kind",
        "ice",
    ]);
    let text = stdout(&out);
    assert!(text.contains("output (ambient): add{2}"), "{text}");
}

#[test]
fn failed_hypotheses_exit_5_with_a_witness() {
    let out = run(&[
        "transfer",
        fixture("a4_split.json").to_str().unwrap(),
        fixture("subcat_empty.json").to_str().unwrap(),
        "--map",
        "preimage_i_upper",
        "--kind",
        "ice",
    ]);
    assert_eq!(out.status.code(), Some(5));
    let err = stderr(&out);
    assert!(err.contains("i^* is exact"), "{err}");

    let out = run(&[
        "transfer",
        fixture("a4_split.json").to_str().unwrap(),
        fixture("subcat_add_12.json").to_str().unwrap(),
        "--map",
        "restrict_i_shriek",
        "--kind",
        "ice",
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stderr(&out).contains("witness"), "{}", stderr(&out));
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let a4_path = fixture("a4_split.json");
    let a4 = a4_path.to_str().unwrap();
    let a2_path = fixture("a2.json");
    let a2 = a2_path.to_str().unwrap();
    let sub_path = fixture("subcat_empty.json");
    let sub = sub_path.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["indec", "no_such_file.json"],
        vec!["transfer", a4, sub, "--map", "sideways", "--kind", "ice"],
        vec!["transfer", a4, sub, "--map", "preimage_j", "--kind", "icy"],
        vec!["transfer", a2, sub, "--map", "preimage_j", "--kind", "ice"],
        vec!["verify", a4, "--suite", "vibes"],
        vec!["reproduce", a4, "--example", "figures"],
        vec!["nonsense"],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}: {}", stderr(&out));
    }
}

#[test]
fn exceeded_bounds_exit_3() {
    // 21 indecomposables put the six-vertex chain past the enumeration cap.
    let out = run(&[
        "subcats",
        fixture("a6.json").to_str().unwrap(),
        "--kind",
        "ice",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));

    // A dimension bound of 1 cannot hold the interval modules.
    let out = run(&["indec", fixture("a4_tight_bound.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn verify_suites_pass_on_the_example_split() {
    for suite in ["axioms", "bijection", "subrecollement", "bricks"] {
        let out = run(&[
            "verify",
            fixture("a4_split.json").to_str().unwrap(),
            "--suite",
            suite,
            "--samples",
            "10",
        ]);
        assert!(out.status.success(), "{suite}: {}", stderr(&out));
        let text = stdout(&out);
        assert!(text.contains("result: pass"), "{suite}: {text}");
        assert!(text.contains("report {"), "{suite}: {text}");
    }
}

#[test]
fn dot_output_draws_the_inclusion_order() {
    let dot_path = std::env::temp_dir().join(format!("qrec_dot_{}.dot", std::process::id()));
    let out = run(&[
        "subcats",
        fixture("a2.json").to_str().unwrap(),
        "--kind",
        "ice",
        "--dot",
        dot_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let dot = std::fs::read_to_string(&dot_path).expect("dot file written");
    std::fs::remove_file(&dot_path).ok();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("label=").count(), 6);
    // The two maximal proper subcategories both sit under the full one.
    assert!(dot.contains("n4 -> n5;"));
}

#[test]
fn json_listings_round_trip() {
    let out = run(&[
        "subcats",
        fixture("a2.json").to_str().unwrap(),
        "--kind",
        "ice",
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["count"], 6);
    let uni = a2_universe();
    let expected: Vec<Vec<&str>> = vec![
        vec![],
        vec!["1"],
        vec!["4"],
        vec!["4/1"],
        vec!["4", "4/1"],
        vec!["1", "4", "4/1"],
    ];
    let listed = doc["subcategories"].as_array().expect("array");
    assert_eq!(listed.len(), expected.len());
    for (entry, names) in listed.iter().zip(&expected) {
        let members: Vec<usize> = entry["members"]
            .as_array()
            .expect("members array")
            .iter()
            .map(|v| {
                uni.index_of_name(v.as_str().expect("name"))
                    .expect("member resolves")
            })
            .collect();
        let want: Subcat = Subcat::new(
            names
                .iter()
                .map(|n| uni.index_of_name(n).expect("known name")),
        );
        assert_eq!(Subcat::new(members), want);
    }

    let out = run(&[
        "indec",
        fixture("a2.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    for obj in doc["objects"].as_array().expect("objects") {
        let name = obj["name"].as_str().expect("name");
        let dims: Vec<usize> = obj["dims"]
            .as_array()
            .expect("dims")
            .iter()
            .map(|d| d.as_u64().expect("dim") as usize)
            .collect();
        let idx = uni.index_of_name(name).expect("name resolves");
        assert_eq!(uni.object(idx).dims(), dims.as_slice());
    }
}

#[test]
fn csv_output_quotes_multi_member_rows() {
    let out = run(&[
        "subcats",
        fixture("a2.json").to_str().unwrap(),
        "--kind",
        "ice",
        "--format",
        "csv",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("size,subcategory\n"));
    assert!(text.contains("2,\"add{4, 4/1}\""), "{text}");
}
