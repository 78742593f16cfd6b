//! `subcats`: enumerate subcategories of one kind in canonical order.

use std::path::Path;

use serde_json::json;

use qrec_core::subcat::SubcatEngine;

use crate::commands::parse_kind;
use crate::files::{build_universe, load_quiver_file};
use crate::render::{canonical_sort, csv_row, hasse_dot, Format};
use crate::CmdError;

pub fn run(
    path: &Path,
    kind_str: &str,
    format: Format,
    dot: Option<&Path>,
    seed: u64,
) -> Result<i32, CmdError> {
    let file = load_quiver_file(path)?;
    let kind = parse_kind(kind_str)?;
    let uni = build_universe(&file, seed)?;
    let mut engine = SubcatEngine::new(&uni, file.mult_cap);
    let mut rows = engine.enumerate(kind)?;
    canonical_sort(&mut rows);

    if let Some(dot_path) = dot {
        std::fs::write(dot_path, hasse_dot(&rows, &uni))
            .map_err(|e| CmdError::io(format!("{}: {e}", dot_path.display())))?;
    }

    match format {
        Format::Text => {
            for s in &rows {
                println!("{}", s.display(&uni));
            }
        }
        Format::Json => {
            let subcats: Vec<_> = rows
                .iter()
                .map(|s| {
                    let members: Vec<&str> =
                        s.members().iter().map(|&i| uni.name(i)).collect();
                    json!({ "members": members })
                })
                .collect();
            let doc = json!({
                "kind": kind.label(),
                "p": uni.p(),
                "count": rows.len(),
                "subcategories": subcats,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Csv => {
            println!("{}", csv_row(&["size", "subcategory"]));
            for s in &rows {
                let size = s.len().to_string();
                let display = s.display(&uni);
                println!("{}", csv_row(&[&size, &display]));
            }
        }
    }
    Ok(0)
}
