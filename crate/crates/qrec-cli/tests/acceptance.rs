//! Acceptance suite: one test per release criterion, each ending in a
//! single pass line. Expected values are frozen here as data; the golden
//! files under tests/golden pin the exact bytes on top of that.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;
use std::time::Instant;

use qrec_core::ext::euler_pairing;
use qrec_core::recollement::{AxiomConfig, Functor, Recollement};
use qrec_core::sample::Sampler;
use qrec_core::split::VertexSplit;
use qrec_core::subcat::{Subcat, SubcatEngine, SubcatKind};
use qrec_core::transfer::{GlueVia, TransferCtx};
use qrec_core::{Quiver, Universe};

const ALL_TEN: [&str; 10] = [
    "3", "2", "1", "4", "2/3", "1/2", "4/1", "1/2/3", "4/1/2", "4/1/2/3",
];

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
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

fn chain(labels: &[&str]) -> Arc<Quiver> {
    let vertices: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    let arrows: Vec<(String, String, String)> = labels
        .windows(2)
        .enumerate()
        .map(|(i, w)| (format!("a{i}"), w[0].to_string(), w[1].to_string()))
        .collect();
    Arc::new(Quiver::new(vertices, arrows).expect("valid chain"))
}

struct Workspace {
    rec: Recollement,
    ambient: Universe,
    i_side: Universe,
    j_side: Universe,
}

fn a4_workspace() -> Workspace {
    let quiver = chain(&["4", "1", "2", "3"]);
    let labels = vec!["2".to_string(), "3".to_string()];
    let split = VertexSplit::new(&quiver, &labels).expect("valid split");
    let rec = Recollement::new(split, 2).expect("valid recollement");
    let ambient = Universe::new(rec.ambient_quiver().clone(), 2, 30, 42).unwrap();
    let i_side = Universe::new(rec.i_quiver().clone(), 2, 30, 42).unwrap();
    let j_side = Universe::new(rec.j_quiver().clone(), 2, 30, 42).unwrap();
    Workspace {
        rec,
        ambient,
        i_side,
        j_side,
    }
}

fn name_set(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Parses "add{a, b}" into its name set; "add{0}" is empty.
fn parse_add(display: &str) -> BTreeSet<String> {
    let inner = display
        .strip_prefix("add{")
        .and_then(|t| t.strip_suffix('}'))
        .unwrap_or_else(|| panic!("not an add display: {display}"));
    if inner == "0" {
        BTreeSet::new()
    } else {
        inner.split(", ").map(|t| t.to_string()).collect()
    }
}

#[test]
fn criterion_1_universes_have_the_right_sizes() {
    let start = Instant::now();
    for (file, expect) in [("a2.json", 3), ("b2.json", 3), ("a4_split.json", 10)] {
        let out = run(&["indec", fixture(file).to_str().unwrap()]);
        assert!(out.status.success(), "{file}");
        assert_eq!(stdout(&out).lines().count(), expect, "{file}");
    }
    let a2 = Universe::new(chain(&["4", "1"]), 2, 30, 42).unwrap();
    assert_eq!(name_set(&["4", "1", "4/1"]), name_set(&a2.names().iter().map(|s| s.as_str()).collect::<Vec<_>>()));
    let b2 = Universe::new(chain(&["2", "3"]), 2, 30, 42).unwrap();
    assert_eq!(name_set(&["2", "3", "2/3"]), name_set(&b2.names().iter().map(|s| s.as_str()).collect::<Vec<_>>()));
    let a4 = Universe::new(chain(&["4", "1", "2", "3"]), 2, 30, 42).unwrap();
    assert_eq!(a4.len(), 10);
    assert_eq!(name_set(&ALL_TEN), name_set(&a4.names().iter().map(|s| s.as_str()).collect::<Vec<_>>()));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 1: pass - universes of sizes 3, 3, 10 in {elapsed:?}");
}

#[test]
fn criterion_2_ice_enumeration_matches_the_lists() {
    let expected_i: Vec<BTreeSet<String>> = [
        &[][..],
        &["1"],
        &["4"],
        &["4/1"],
        &["4", "4/1"],
        &["1", "4", "4/1"],
    ]
    .iter()
    .map(|names| name_set(names))
    .collect();
    let expected_j: Vec<BTreeSet<String>> = [
        &[][..],
        &["3"],
        &["2"],
        &["2/3"],
        &["2", "2/3"],
        &["2", "3", "2/3"],
    ]
    .iter()
    .map(|names| name_set(names))
    .collect();

    for (file, expected) in [("a2.json", &expected_i), ("b2.json", &expected_j)] {
        let out = run(&["subcats", fixture(file).to_str().unwrap(), "--kind", "ice"]);
        assert!(out.status.success(), "{file}");
        let listed: BTreeSet<BTreeSet<String>> =
            stdout(&out).lines().map(parse_add).collect();
        assert_eq!(listed.len(), 6, "{file}");
        let want: BTreeSet<BTreeSet<String>> = expected.iter().cloned().collect();
        assert_eq!(listed, want, "{file}");
    }
    println!("criterion 2: pass - 6 ice subcategories on each corner, matching the lists");
}

#[test]
fn criterion_3_reproduce_matches_the_goldens() {
    let start = Instant::now();
    let out = run(&[
        "reproduce",
        fixture("a4_split.json").to_str().unwrap(),
        "--example",
        "tables",
    ]);
    let elapsed = start.elapsed();
    assert!(out.status.success());
    let text = stdout(&out);

    let golden_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/reproduce_tables.txt");
    let golden = std::fs::read_to_string(golden_path).expect("golden exists");
    assert_eq!(text, golden, "reproduce output drifted from the golden file");

    // Independent of the golden bytes, the rows must carry the expected
    // member sets.
    let blocks: Vec<&str> = text.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 4);
    assert!(blocks[0].starts_with("table 1: from_i_side"));
    assert!(blocks[1].starts_with("table 2: preimage_i_shriek"));
    assert!(blocks[2].starts_with("table 3: from_j_side_star"));
    assert!(blocks[3].starts_with("table 4: preimage_j"));

    let parse_block = |block: &str| -> Vec<(BTreeSet<String>, BTreeSet<String>)> {
        block
            .lines()
            .skip(1)
            .map(|line| {
                let (l, r) = line.split_once("  ->  ").expect("row separator");
                (parse_add(l.trim_end()), parse_add(r))
            })
            .collect()
    };

    for identity_block in [blocks[0], blocks[2]] {
        for (l, r) in parse_block(identity_block) {
            assert_eq!(l, r, "identity table row changed members");
        }
    }

    let table2: &[(&[&str], &[&str])] = &[
        (&[], &["3", "2", "2/3"]),
        (&["1"], &["3", "2", "1", "2/3", "1/2", "1/2/3"]),
        (&["4"], &["3", "2", "4", "2/3"]),
        (&["4/1"], &["3", "2", "2/3", "4/1", "4/1/2", "4/1/2/3"]),
        (&["4", "4/1"], &["3", "2", "4", "2/3", "4/1", "4/1/2", "4/1/2/3"]),
        (&["1", "4", "4/1"], &ALL_TEN),
    ];
    let rows2 = parse_block(blocks[1]);
    assert_eq!(rows2.len(), table2.len());
    for ((l, r), (want_l, want_r)) in rows2.iter().zip(table2) {
        assert_eq!(*l, name_set(want_l));
        assert_eq!(*r, name_set(want_r), "table 2 row for {want_l:?}");
    }

    let table4: &[(&[&str], &[&str])] = &[
        (&[], &["1", "4", "4/1"]),
        (&["3"], &["3", "1", "4", "4/1"]),
        (&["2"], &["2", "1", "4", "1/2", "4/1", "4/1/2"]),
        (&["2/3"], &["1", "4", "2/3", "4/1", "1/2/3", "4/1/2/3"]),
        (
            &["2", "2/3"],
            &["2", "1", "4", "2/3", "1/2", "4/1", "1/2/3", "4/1/2", "4/1/2/3"],
        ),
        (&["3", "2", "2/3"], &ALL_TEN),
    ];
    let rows4 = parse_block(blocks[3]);
    assert_eq!(rows4.len(), table4.len());
    for ((l, r), (want_l, want_r)) in rows4.iter().zip(table4) {
        assert_eq!(*l, name_set(want_l));
        assert_eq!(*r, name_set(want_r), "table 4 row for {want_l:?}");
    }

    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!("criterion 3: pass - four tables regenerated byte-identically in {elapsed:?}");
}

#[test]
fn criterion_4_bijection_with_inverse_round_trips() {
    let ws = a4_workspace();
    let mut ctx = TransferCtx::new(&ws.rec, &ws.ambient, &ws.i_side, &ws.j_side, 2).unwrap();
    let report = ctx.verify_bijection(SubcatKind::Ice, true).unwrap();
    assert_eq!(report.ambient_list.len(), 6);
    assert_eq!(report.j_list.len(), 6);
    assert!(report.injective);
    assert!(report.surjective);
    assert!(report.round_trips);
    assert!(report.passed());

    // Negative control: dropping the extension filter breaks injectivity.
    let unfiltered = ctx.verify_bijection(SubcatKind::Ice, false).unwrap();
    assert!(!unfiltered.injective);
    assert!(unfiltered.collision.is_some());

    let out = run(&[
        "verify",
        fixture("a4_split.json").to_str().unwrap(),
        "--suite",
        "bijection",
    ]);
    assert!(out.status.success());
    println!("criterion 4: pass - 6 candidates map bijectively onto 6 quotient-side subcategories");
}

#[test]
fn criterion_5_axiom_suite_with_sampled_splits() {
    let start = Instant::now();
    let cfg = AxiomConfig {
        samples: 100,
        max_dim: 4,
        seed: 42,
    };
    let ws = a4_workspace();
    let report = ws.rec.verify_axioms(&cfg).unwrap();
    assert!(report.passed(), "base split failed: {:?}", failing(&report));
    let mut splits = 1;

    let mut sampler = Sampler::new(42);
    for round in 0..3 {
        let quiver = sampler.quiver();
        let split = sampler.split(&quiver);
        let rec = Recollement::new(split, 2).unwrap();
        let cfg = AxiomConfig {
            samples: 100,
            max_dim: 4,
            seed: 42 + round,
        };
        let report = rec.verify_axioms(&cfg).unwrap();
        assert!(
            report.passed(),
            "sampled split {round} failed: {:?}",
            failing(&report)
        );
        splits += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!(
        "criterion 5: pass - axiom suite over {splits} splits, 100 samples each, in {elapsed:?}"
    );
}

fn failing(report: &qrec_core::recollement::AxiomReport) -> Vec<String> {
    report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect()
}

#[test]
fn criterion_6_euler_pairing_matches_hom_minus_ext() {
    let universes = [
        Universe::new(chain(&["4", "1", "2", "3"]), 2, 30, 42).unwrap(),
        Universe::new(chain(&["4", "1"]), 2, 30, 42).unwrap(),
        Universe::new(chain(&["2", "3"]), 2, 30, 42).unwrap(),
        Universe::new(chain(&["1", "2", "3", "4", "5", "6"]), 2, 30, 42).unwrap(),
    ];
    let mut pairs = 0usize;
    for uni in &universes {
        let quiver = uni.quiver();
        for i in 0..uni.len() {
            for j in 0..uni.len() {
                let hom = uni.hom_dim(i, j) as i64;
                let ext = uni.ext_dim(i, j) as i64;
                let pairing = euler_pairing(quiver, uni.object(i).dims(), uni.object(j).dims());
                assert_eq!(
                    hom - ext,
                    pairing,
                    "pair ({}, {})",
                    uni.name(i),
                    uni.name(j)
                );
                pairs += 1;
            }
        }
    }
    println!("criterion 6: pass - Euler pairing matches on {pairs} ordered pairs");
}

#[test]
fn criterion_7_brick_gluing_and_corner_vanishing() {
    let ws = a4_workspace();
    let mut ctx = TransferCtx::new(&ws.rec, &ws.ambient, &ws.i_side, &ws.j_side, 2).unwrap();

    let mut glued = 0usize;
    for kind in [SubcatKind::Epibrick, SubcatKind::Monobrick] {
        let i_list = SubcatEngine::new(&ws.i_side, 2).enumerate(kind).unwrap();
        let j_list = SubcatEngine::new(&ws.j_side, 2).enumerate(kind).unwrap();
        assert_eq!(i_list.len(), 6, "{} families on the i-side", kind.label());
        assert_eq!(j_list.len(), 6, "{} families on the j-side", kind.label());
        for via in [GlueVia::Star, GlueVia::Intermediate] {
            for si in &i_list {
                for sj in &j_list {
                    let out = ctx.glue_bricks(si, sj, kind, via).unwrap_or_else(|e| {
                        panic!(
                            "glue {} + {} via {} errored: {e}",
                            si.display(&ws.i_side),
                            sj.display(&ws.j_side),
                            via.label()
                        )
                    });
                    assert!(
                        out.certificate.holds,
                        "glue {} + {} via {} fails its certificate",
                        si.display(&ws.i_side),
                        sj.display(&ws.j_side),
                        via.label()
                    );
                    glued += 1;
                }
            }
        }
    }
    assert_eq!(glued, 144, "36 pairs x 2 kinds x 2 vias");

    for y in 0..ws.j_side.len() {
        let mid = ws.rec.intermediate_extension(ws.j_side.object(y)).unwrap();
        for f in [Functor::IUpperStar, Functor::IShriek] {
            assert!(
                ws.rec.apply(f, &mid).unwrap().is_zero(),
                "corner functor does not kill the intermediate extension of {}",
                ws.j_side.name(y)
            );
        }
    }
    println!("criterion 7: pass - 144 gluings certified, corner functors kill all intermediate extensions");
}

#[test]
fn criterion_8_negative_controls() {
    let ws = a4_workspace();
    let swapped = ws.rec.with_swapped_corner_adjoints();
    let cfg = AxiomConfig {
        samples: 25,
        max_dim: 3,
        seed: 42,
    };
    let report = swapped.verify_axioms(&cfg).unwrap();
    assert!(
        !report.passed(),
        "swapping the corner adjoints must break the axiom suite"
    );

    let mut engine = SubcatEngine::new(&ws.i_side, 2);
    let one = ws.i_side.index_of_name("1").unwrap();
    let four_one = ws.i_side.index_of_name("4/1").unwrap();
    let candidate = Subcat::new([one, four_one]);
    let outcome = engine.check_kind(&candidate, SubcatKind::Ice).unwrap();
    assert!(!outcome.holds);
    let escape = outcome.witness.expect("a witness is produced");
    assert_eq!(ws.i_side.name(escape.object), "4");
    assert_eq!(escape.operation, "cokernels");
    println!("criterion 8: pass - swapped adjoints fail the axioms; add{{1, 4/1}} rejected with cokernel witness 4");
}
