//! `indec`: list the indecomposable representations of a quiver file.

use std::path::Path;

use serde_json::json;

use crate::files::{build_universe, load_quiver_file};
use crate::render::{csv_row, dims_text, Format};
use crate::CmdError;

pub fn run(path: &Path, format: Format, seed: u64) -> Result<i32, CmdError> {
    let file = load_quiver_file(path)?;
    let uni = build_universe(&file, seed)?;
    match format {
        Format::Text => {
            let width = (0..uni.len()).map(|i| uni.name(i).len()).max().unwrap_or(0);
            for i in 0..uni.len() {
                let name = uni.name(i);
                println!("{name:<width$}  {}", dims_text(uni.object(i).dims()));
            }
        }
        Format::Json => {
            let objects: Vec<_> = (0..uni.len())
                .map(|i| {
                    json!({
                        "name": uni.name(i),
                        "dims": uni.object(i).dims(),
                    })
                })
                .collect();
            let doc = json!({
                "p": uni.p(),
                "dim_bound": file.dim_bound,
                "vertices": file.vertices,
                "count": uni.len(),
                "objects": objects,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        Format::Csv => {
            let mut header: Vec<&str> = vec!["name"];
            header.extend(file.vertices.iter().map(|s| s.as_str()));
            println!("{}", csv_row(&header));
            for i in 0..uni.len() {
                let mut fields: Vec<String> = vec![uni.name(i).to_string()];
                fields.extend(uni.object(i).dims().iter().map(|d| d.to_string()));
                let refs: Vec<&str> = fields.iter().map(|s| s.as_str()).collect();
                println!("{}", csv_row(&refs));
            }
        }
    }
    Ok(0)
}
