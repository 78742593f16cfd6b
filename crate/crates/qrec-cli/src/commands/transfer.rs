//! `transfer`: move a subcategory through the vertex split along one
//! named direction, printing the input, the output, and the certificate.

use std::path::Path;

use serde_json::json;

use qrec_core::subcat::Subcat;
use qrec_core::transfer::{Direction, TransferCtx, TransferOutcome};
use qrec_core::Universe;

use crate::commands::{parse_kind, side_label};
use crate::files::{load_quiver_file, load_subcat_file, resolve_members, SplitWorkspace};
use crate::render::{csv_row, Format};
use crate::CmdError;

fn member_names<'u>(uni: &'u Universe, s: &Subcat) -> Vec<&'u str> {
    s.members().iter().map(|&i| uni.name(i)).collect()
}

pub fn run(
    quiver_path: &Path,
    subcat_path: &Path,
    map: &str,
    kind_str: &str,
    format: Format,
    seed: u64,
) -> Result<i32, CmdError> {
    let file = load_quiver_file(quiver_path)?;
    let direction = Direction::parse(map).ok_or_else(|| {
        let known: Vec<&str> = Direction::ALL.iter().map(|d| d.label()).collect();
        CmdError::parse(format!(
            "unknown direction {map}; expected one of {}",
            known.join(", ")
        ))
    })?;
    let kind = parse_kind(kind_str)?;
    let ws = SplitWorkspace::build(&file, seed)?;
    let mut ctx = TransferCtx::new(&ws.rec, &ws.ambient, &ws.i_side, &ws.j_side, ws.mult_cap)?;

    let source = ctx.side_universe(direction.source_side());
    let target = ctx.side_universe(direction.target_side());
    let subcat_file = load_subcat_file(subcat_path)?;
    let input = resolve_members(source, &subcat_file)?;

    let outcome: TransferOutcome = ctx.transfer(kind, direction, &input)?;

    let cert_ok = outcome.certificate.holds;
    let witness_text = outcome
        .certificate
        .witness
        .as_ref()
        .map(|w| format!("{} via {}: {}", target.name(w.object), w.operation, w.detail));

    match format {
        Format::Text => {
            println!("direction: {}", direction.label());
            println!("kind: {}", kind.label());
            println!(
                "input ({}): {}",
                side_label(direction.source_side()),
                outcome.input.display(source)
            );
            println!(
                "output ({}): {}",
                side_label(direction.target_side()),
                outcome.output.display(target)
            );
            for h in &outcome.hypotheses {
                let verdict = if h.holds { "holds" } else { "fails" };
                println!("hypothesis [{verdict}]: {}", h.name);
            }
            match &witness_text {
                None => println!(
                    "certificate [pass]: the output is {} on the {} side",
                    kind.label(),
                    side_label(direction.target_side())
                ),
                Some(w) => println!("certificate [fail]: {w}"),
            }
        }
        Format::Json => {
            let hypotheses: Vec<_> = outcome
                .hypotheses
                .iter()
                .map(|h| json!({ "name": h.name, "holds": h.holds, "detail": h.detail }))
                .collect();
            let doc = json!({
                "direction": direction.label(),
                "kind": kind.label(),
                "source_side": side_label(direction.source_side()),
                "target_side": side_label(direction.target_side()),
                "input": { "members": member_names(source, &outcome.input) },
                "output": { "members": member_names(target, &outcome.output) },
                "input_display": outcome.input.display(source),
                "output_display": outcome.output.display(target),
                "hypotheses": hypotheses,
                "certificate": { "holds": cert_ok, "witness": witness_text },
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Csv => {
            println!(
                "{}",
                csv_row(&["direction", "kind", "input", "output", "certificate"])
            );
            let input_display = outcome.input.display(source);
            let output_display = outcome.output.display(target);
            let verdict = if cert_ok { "pass" } else { "fail" };
            println!(
                "{}",
                csv_row(&[
                    direction.label(),
                    kind.label(),
                    &input_display,
                    &output_display,
                    verdict,
                ])
            );
        }
    }
    Ok(if cert_ok { 0 } else { 1 })
}
