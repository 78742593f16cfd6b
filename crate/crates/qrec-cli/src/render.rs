//! Output shaping: text tables, CSV rows, and DOT posets.
//!
//! All rendering is deterministic: rows arrive in canonical order and are
//! emitted as-is, so identical inputs and flags produce byte-identical
//! output.

use clap::ValueEnum;

use qrec_core::subcat::Subcat;
use qrec_core::Universe;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Quotes a CSV field when it contains a delimiter, quote, or newline.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(fields: &[&str]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

/// "(1, 0, 2)" for a dimension vector.
pub fn dims_text(dims: &[usize]) -> String {
    let parts: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Two left-aligned columns with an arrow separator; the left column is
/// padded to its widest entry.
pub fn arrow_table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (l, r) in rows {
        out.push_str(&format!("{l:<width$}  ->  {r}\n"));
    }
    out
}

/// Sorts subcategories canonically: by size, then lexicographically on the
/// member index vector.
pub fn canonical_sort(rows: &mut [Subcat]) {
    rows.sort_by_key(|s| {
        let members: Vec<usize> = s.members().iter().copied().collect();
        (s.len(), members)
    });
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The Hasse diagram of the inclusion order on a family of subcategories,
/// in DOT. Node order follows the row order; edges point from a
/// subcategory to each of its covers.
pub fn hasse_dot(rows: &[Subcat], uni: &Universe) -> String {
    let mut out = String::new();
    out.push_str("digraph subcats {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, s) in rows.iter().enumerate() {
        out.push_str(&format!(
            "  n{i} [label=\"{}\"];\n",
            dot_escape(&s.display(uni))
        ));
    }
    for (i, s) in rows.iter().enumerate() {
        for (k, t) in rows.iter().enumerate() {
            if i == k || !s.is_subset(t) {
                continue;
            }
            let covered = rows.iter().enumerate().any(|(m, u)| {
                m != i && m != k && s.is_subset(u) && u.is_subset(t) && !u.is_subset(s) && !t.is_subset(u)
            });
            if !covered {
                out.push_str(&format!("  n{i} -> n{k};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_fields_quote_separators_and_quotes() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
        assert_eq!(csv_row(&["a,b", "c"]), "\"a,b\",c");
    }

    #[test]
    fn arrow_tables_pad_the_left_column() {
        let rows = vec![
            ("add{0}".to_string(), "add{1}".to_string()),
            ("add{1, 2}".to_string(), "add{2}".to_string()),
        ];
        let t = arrow_table(&rows);
        assert_eq!(t, "add{0}     ->  add{1}\nadd{1, 2}  ->  add{2}\n");
    }

    #[test]
    fn canonical_order_is_size_then_index() {
        let mut rows = vec![
            Subcat::new([0usize, 1]),
            Subcat::new([2usize]),
            Subcat::empty(),
            Subcat::new([0usize]),
        ];
        canonical_sort(&mut rows);
        let sizes: Vec<usize> = rows.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![0, 1, 1, 2]);
        assert!(rows[1].contains(0) && rows[2].contains(2));
    }
}
