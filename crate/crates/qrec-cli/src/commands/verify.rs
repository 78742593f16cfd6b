//! `verify`: run one verification suite over a split quiver file.
//!
//! Every suite prints a human summary (text mode) with a machine-readable
//! report line at the end, or the full JSON report (`--format json`), or
//! one CSV row per check (`--format csv`). Exit code 0 means every check
//! passed; 1 means at least one failed (the report is still emitted).

use std::path::Path;

use serde_json::{json, Value};

use qrec_core::recollement::{AxiomConfig, Functor};
use qrec_core::subcat::{SubcatEngine, SubcatKind};
use qrec_core::transfer::{surface_name, GlueVia, TransferCtx};

use crate::files::{load_quiver_file, SplitWorkspace};
use crate::render::{csv_row, Format};
use crate::CmdError;

/// External display order for the six functors.
const FUNCTOR_ORDER: [Functor; 6] = [
    Functor::IShriek,
    Functor::ILowerStar,
    Functor::IUpperStar,
    Functor::JLowerStar,
    Functor::JUpperStar,
    Functor::JLowerShriek,
];

struct Suite {
    name: &'static str,
    passed: bool,
    lines: Vec<String>,
    checks: Vec<(String, bool, String)>,
    extra: Value,
}

pub fn run(
    path: &Path,
    suite: &str,
    samples: usize,
    format: Format,
    seed: u64,
) -> Result<i32, CmdError> {
    let file = load_quiver_file(path)?;
    let ws = SplitWorkspace::build(&file, seed)?;
    let report = match suite {
        "axioms" => axioms(&ws, samples, seed)?,
        "bijection" => bijection(&ws)?,
        "subrecollement" => subrecollement(&ws)?,
        "bricks" => bricks(&ws)?,
        other => {
            return Err(CmdError::parse(format!(
                "unknown suite {other}; expected axioms, bijection, subrecollement, or bricks"
            )))
        }
    };

    let checks_json: Vec<Value> = report
        .checks
        .iter()
        .map(|(n, p, d)| json!({ "name": n, "passed": p, "detail": d }))
        .collect();
    let mut doc = json!({
        "suite": report.name,
        "passed": report.passed,
        "checks": checks_json,
    });
    if let (Value::Object(base), Value::Object(extra)) = (&mut doc, report.extra) {
        for (k, v) in extra {
            base.insert(k, v);
        }
    }

    match format {
        Format::Text => {
            println!("suite: {}", report.name);
            for line in &report.lines {
                println!("{line}");
            }
            for (name, passed, _) in &report.checks {
                let verdict = if *passed { "pass" } else { "fail" };
                println!("check [{verdict}] {name}");
            }
            println!("result: {}", if report.passed { "pass" } else { "fail" });
            println!(
                "report {}",
                serde_json::to_string(&doc).expect("serializable")
            );
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Csv => {
            println!("{}", csv_row(&["check", "passed", "detail"]));
            for (name, passed, detail) in &report.checks {
                let p = if *passed { "true" } else { "false" };
                println!("{}", csv_row(&[name, p, detail]));
            }
        }
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn axioms(ws: &SplitWorkspace, samples: usize, seed: u64) -> Result<Suite, CmdError> {
    let cfg = AxiomConfig {
        samples,
        max_dim: 3,
        seed,
    };
    let report = ws.rec.verify_axioms(&cfg)?;
    let exactness = ws.rec.exactness();

    let mut lines = vec![
        format!("orientation: {}", exactness.orientation.label()),
        format!(
            "objects sampled: {}, morphisms sampled: {}",
            report.objects_sampled, report.morphisms_sampled
        ),
    ];
    let flags: Vec<String> = FUNCTOR_ORDER
        .iter()
        .map(|&f| {
            let tag = if exactness.is_exact(f) { "exact" } else { "not exact" };
            format!("{} {tag}", surface_name(f))
        })
        .collect();
    lines.push(format!("exactness: {}", flags.join(", ")));

    let checks: Vec<(String, bool, String)> = report
        .checks
        .iter()
        .map(|c| (c.name.to_string(), c.passed, c.detail.clone()))
        .collect();
    let exact_json: Vec<Value> = FUNCTOR_ORDER
        .iter()
        .map(|&f| json!({ "functor": surface_name(f), "exact": exactness.is_exact(f) }))
        .collect();
    Ok(Suite {
        name: "axioms",
        passed: report.passed(),
        lines,
        checks,
        extra: json!({
            "orientation": exactness.orientation.label(),
            "objects_sampled": report.objects_sampled,
            "morphisms_sampled": report.morphisms_sampled,
            "exactness": exact_json,
        }),
    })
}

fn bijection(ws: &SplitWorkspace) -> Result<Suite, CmdError> {
    let mut ctx = TransferCtx::new(&ws.rec, &ws.ambient, &ws.i_side, &ws.j_side, ws.mult_cap)?;
    let rep = ctx.verify_bijection(SubcatKind::Ice, true)?;

    let mut lines = vec![
        format!("ambient candidates: {}", rep.ambient_list.len()),
        format!("j-side ice subcategories: {}", rep.j_list.len()),
    ];
    let pairs: Vec<(String, String)> = rep
        .ambient_list
        .iter()
        .zip(&rep.forward)
        .map(|(c, w)| {
            let right = match w {
                Some(wi) => rep.j_list[*wi].display(&ws.j_side),
                None => String::from("(no image)"),
            };
            (c.display(&ws.ambient), right)
        })
        .collect();
    let width = pairs.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    for (l, r) in &pairs {
        lines.push(format!("{l:<width$}  ->  {r}"));
    }

    let counts_match = rep.ambient_list.len() == rep.j_list.len();
    let collision_detail = rep
        .collision
        .as_ref()
        .map(|(a, b)| {
            format!(
                "{} and {} restrict to the same image",
                a.display(&ws.ambient),
                b.display(&ws.ambient)
            )
        })
        .unwrap_or_default();
    let checks = vec![
        (
            String::from("candidate-count-matches-j-side"),
            counts_match,
            format!("{} vs {}", rep.ambient_list.len(), rep.j_list.len()),
        ),
        (String::from("restriction-is-injective"), rep.injective, collision_detail),
        (String::from("restriction-is-surjective"), rep.surjective, String::new()),
        (
            String::from("round-trips-are-identities"),
            rep.round_trips,
            String::new(),
        ),
    ];
    let passed = rep.passed() && counts_match;

    let ambient_json: Vec<Value> = rep
        .ambient_list
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.members().iter().map(|&i| ws.ambient.name(i)).collect();
            json!({ "members": names })
        })
        .collect();
    let j_json: Vec<Value> = rep
        .j_list
        .iter()
        .map(|c| {
            let names: Vec<&str> = c.members().iter().map(|&i| ws.j_side.name(i)).collect();
            json!({ "members": names })
        })
        .collect();
    Ok(Suite {
        name: "bijection",
        passed,
        lines,
        checks,
        extra: json!({
            "filtered": rep.filtered,
            "ambient": ambient_json,
            "j_side": j_json,
            "forward": rep.forward,
        }),
    })
}

fn subrecollement(ws: &SplitWorkspace) -> Result<Suite, CmdError> {
    let mut ctx = TransferCtx::new(&ws.rec, &ws.ambient, &ws.i_side, &ws.j_side, ws.mult_cap)?;
    let rep = ctx.verify_bijection(SubcatKind::Ice, true)?;

    let mut lines = vec![format!("candidates: {}", rep.ambient_list.len())];
    let mut checks = Vec::new();
    let mut passed = true;
    let mut candidates_json = Vec::new();
    for c in &rep.ambient_list {
        let sr = ctx.verify_sub_recollement(c)?;
        let all = sr.passed();
        passed &= all;
        lines.push(format!(
            "candidate {}: {} (quotient part {})",
            c.display(&ws.ambient),
            if all { "pass" } else { "fail" },
            sr.quotient_part.display(&ws.j_side)
        ));
        for check in &sr.checks {
            checks.push((
                format!("{}: {}", c.display(&ws.ambient), check.name),
                check.passed,
                check.detail.clone(),
            ));
        }
        let names: Vec<&str> = c.members().iter().map(|&i| ws.ambient.name(i)).collect();
        candidates_json.push(json!({ "members": names, "passed": all }));
    }

    Ok(Suite {
        name: "subrecollement",
        passed,
        lines,
        checks,
        extra: json!({ "candidates": candidates_json }),
    })
}

fn bricks(ws: &SplitWorkspace) -> Result<Suite, CmdError> {
    let exactness = ws.rec.exactness();
    let mut vias = vec![GlueVia::Intermediate];
    if exactness.is_exact(Functor::IUpperStar) {
        vias.push(GlueVia::Star);
    }
    if exactness.is_exact(Functor::IShriek) {
        vias.push(GlueVia::Shriek);
    }

    let mut ctx = TransferCtx::new(&ws.rec, &ws.ambient, &ws.i_side, &ws.j_side, ws.mult_cap)?;
    let mut lines = Vec::new();
    let via_labels: Vec<&str> = vias.iter().map(|v| v.label()).collect();
    lines.push(format!("vias: {}", via_labels.join(", ")));

    let mut checks = Vec::new();
    let mut passed = true;
    for kind in [SubcatKind::Epibrick, SubcatKind::Monobrick] {
        let mut i_list = SubcatEngine::new(&ws.i_side, ws.mult_cap).enumerate(kind)?;
        let mut j_list = SubcatEngine::new(&ws.j_side, ws.mult_cap).enumerate(kind)?;
        crate::render::canonical_sort(&mut i_list);
        crate::render::canonical_sort(&mut j_list);
        lines.push(format!(
            "{} pairs: {} ({} i-side x {} j-side)",
            kind.label(),
            i_list.len() * j_list.len(),
            i_list.len(),
            j_list.len()
        ));
        for &via in &vias {
            let mut ok = 0usize;
            let mut first_failure = String::new();
            for si in &i_list {
                for sj in &j_list {
                    let out = ctx.glue_bricks(si, sj, kind, via)?;
                    if out.certificate.holds {
                        ok += 1;
                    } else if first_failure.is_empty() {
                        first_failure = format!(
                            "{} + {} glues to {} which fails the certificate",
                            si.display(&ws.i_side),
                            sj.display(&ws.j_side),
                            out.output.display(&ws.ambient)
                        );
                    }
                }
            }
            let total = i_list.len() * j_list.len();
            let all_ok = ok == total;
            passed &= all_ok;
            checks.push((
                format!("glue-{}-via-{}", kind.label(), via.label()),
                all_ok,
                if all_ok {
                    format!("{total} pairs, all certificates pass")
                } else {
                    first_failure.clone()
                },
            ));
        }
    }

    // The two corner functors must kill every intermediate extension of a
    // quotient-part object.
    let mut vanish_ok = true;
    let mut vanish_detail = format!("{} quotient-part objects", ws.j_side.len());
    for y in 0..ws.j_side.len() {
        let mid = ws.rec.intermediate_extension(ws.j_side.object(y))?;
        for f in [Functor::IUpperStar, Functor::IShriek] {
            if !ws.rec.apply(f, &mid)?.is_zero() {
                vanish_ok = false;
                vanish_detail = format!(
                    "{} of the intermediate extension of {} is nonzero",
                    surface_name(f),
                    ws.j_side.name(y)
                );
            }
        }
    }
    passed &= vanish_ok;
    checks.push((
        String::from("corner-functors-kill-intermediate-extensions"),
        vanish_ok,
        vanish_detail,
    ));

    Ok(Suite {
        name: "bricks",
        passed,
        lines,
        checks,
        extra: json!({ "vias": via_labels }),
    })
}
