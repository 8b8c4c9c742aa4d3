//! Canonical output: problem-file emission, Hilbert-table rendering in
//! table, JSON, and CSV form.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::grading::{Grading, MultiDegree};
use crate::io::{ProblemFile, Query, QuotientBy};
use crate::Result;

/// Renders a problem back into the file format.  The output parses to an
/// equal [`ProblemFile`]; the cone section is always written explicitly.
pub fn problem(p: &ProblemFile) -> String {
    let mut out = String::new();
    out.push_str("vars:");
    for name in p.grading.var_names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    out.push_str("grading:\n");
    for row in p.grading.a_matrix() {
        out.push_str("  ");
        out.push_str(&join_ints(row));
        out.push('\n');
    }
    out.push_str("cone:\n");
    for row in p.grading.b_matrix() {
        out.push_str("  ");
        out.push_str(&join_ints(row));
        out.push('\n');
    }
    for (name, gens) in &p.ideals {
        out.push_str(&format!("ideal {name}:\n"));
        for g in gens {
            out.push_str(&format!("  {g}\n"));
        }
    }
    if !p.queries.is_empty() {
        out.push_str("query:\n");
        for q in &p.queries {
            out.push_str("  ");
            out.push_str(&query_text(q));
            out.push('\n');
        }
    }
    out
}

fn join_ints(row: &[i64]) -> String {
    row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn query_text(q: &Query) -> String {
    match q {
        Query::Hilbert { ideal, below } => format!("hilbert {ideal} {below}"),
        Query::Member { ideal, poly } => format!("member {ideal} {poly}"),
        Query::Quotient { ideal, by, max_degree } => {
            let divisor = match by {
                QuotientBy::Ideal(name) => name.clone(),
                QuotientBy::Poly(p) => p.to_string(),
            };
            format!("quotient {ideal} by {divisor} max {max_degree}")
        }
        Query::Saturate { ideal, by, window } => {
            format!("saturate {ideal} by {by} window {window}")
        }
        Query::Multiplicity { ideal, bound } => format!("multiplicity {ideal} bound {bound}"),
    }
}

/// A rectangular view of a rank-2 Hilbert table: rows are the second degree
/// coordinate in descending order, columns the first in ascending order.
/// `None` marks a degree outside the region below `bound`.
pub struct Grid {
    pub col_labels: Vec<i64>,
    pub row_labels: Vec<i64>,
    pub cells: Vec<Vec<Option<usize>>>,
}

/// Builds the rank-2 grid over the bounding box of the degrees below
/// `bound`.
pub fn table_grid(
    grading: &Grading,
    values: &BTreeMap<MultiDegree, usize>,
    bound: &MultiDegree,
) -> Result<Grid> {
    assert_eq!(grading.k(), 2, "grids render rank-2 gradings only");
    let region = grading.lattice_points_below(bound)?;
    let min_i = region.iter().map(|d| d.coord(0)).min().unwrap_or(0);
    let max_i = region.iter().map(|d| d.coord(0)).max().unwrap_or(0);
    let min_j = region.iter().map(|d| d.coord(1)).min().unwrap_or(0);
    let max_j = region.iter().map(|d| d.coord(1)).max().unwrap_or(0);
    let col_labels: Vec<i64> = (min_i..=max_i).collect();
    let row_labels: Vec<i64> = (min_j..=max_j).rev().collect();
    let mut cells = Vec::with_capacity(row_labels.len());
    for &j in &row_labels {
        let mut row = Vec::with_capacity(col_labels.len());
        for &i in &col_labels {
            let d = MultiDegree::new(vec![i, j]);
            if grading.weight_leq(&d, bound) {
                row.push(values.get(&d).copied());
            } else {
                row.push(None);
            }
        }
        cells.push(row);
    }
    Ok(Grid { col_labels, row_labels, cells })
}

/// Renders a Hilbert table as text.
///
/// Rank 1 prints two aligned rows (`degree` and `dim`) with zeros shown.
/// Rank 2 prints the grid from [`table_grid`], with `-` for degrees outside
/// the region and for zero values.  Higher ranks fall back to one
/// `degree  dim` line per entry.
pub fn render_hilbert_table(
    grading: &Grading,
    values: &BTreeMap<MultiDegree, usize>,
    bound: &MultiDegree,
) -> Result<String> {
    match grading.k() {
        1 => Ok(render_rank1(values)),
        2 => Ok(render_grid(&table_grid(grading, values, bound)?)),
        _ => Ok(render_list(values)),
    }
}

fn render_rank1(values: &BTreeMap<MultiDegree, usize>) -> String {
    let mut labels = vec!["degree".to_string()];
    let mut dims = vec!["dim".to_string()];
    for (d, v) in values {
        labels.push(d.to_string());
        dims.push(v.to_string());
    }
    let widths: Vec<usize> = labels
        .iter()
        .zip(&dims)
        .map(|(a, b)| a.len().max(b.len()))
        .collect();
    let mut out = String::new();
    for row in [&labels, &dims] {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i == 0 {
                line.push_str(&format!("{:<width$}", cell, width = widths[i]));
            } else {
                line.push_str("  ");
                line.push_str(&format!("{:>width$}", cell, width = widths[i]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn render_grid(grid: &Grid) -> String {
    let label_width = grid
        .row_labels
        .iter()
        .map(|j| j.to_string().len())
        .max()
        .unwrap_or(1);
    let col_strings: Vec<String> = grid.col_labels.iter().map(|i| i.to_string()).collect();
    let mut col_widths: Vec<usize> = col_strings.iter().map(|s| s.len()).collect();
    for row in &grid.cells {
        for (c, cell) in row.iter().enumerate() {
            let len = match cell {
                Some(v) if *v > 0 => v.to_string().len(),
                _ => 1,
            };
            col_widths[c] = col_widths[c].max(len);
        }
    }
    let mut out = String::new();
    let mut header = format!("{:>label_width$}", "");
    for (c, s) in col_strings.iter().enumerate() {
        header.push_str("  ");
        header.push_str(&format!("{:>width$}", s, width = col_widths[c]));
    }
    out.push_str(header.trim_end());
    out.push('\n');
    for (r, &j) in grid.row_labels.iter().enumerate() {
        let mut line = format!("{:>label_width$}", j);
        for (c, cell) in grid.cells[r].iter().enumerate() {
            let text = match cell {
                Some(v) if *v > 0 => v.to_string(),
                _ => "-".to_string(),
            };
            line.push_str("  ");
            line.push_str(&format!("{:>width$}", text, width = col_widths[c]));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn render_list(values: &BTreeMap<MultiDegree, usize>) -> String {
    let degree_width = values
        .keys()
        .map(|d| d.to_string().len())
        .max()
        .unwrap_or(6)
        .max("degree".len());
    let mut out = format!("{:<degree_width$}  dim\n", "degree");
    for (d, v) in values {
        out.push_str(&format!("{:<degree_width$}  {v}\n", d.to_string()));
    }
    out
}

/// The JSON envelope shared by every subcommand: the grading, a list of
/// `{degree, dim}` values, and a `meta` object for anything else.
pub fn json_envelope(grading: &Grading, values: &BTreeMap<MultiDegree, usize>, meta: Value) -> Value {
    json!({
        "grading": {
            "k": grading.k(),
            "vars": grading.var_names(),
            "matrix": grading.a_matrix(),
            "cone": grading.b_matrix(),
        },
        "values": values
            .iter()
            .map(|(d, dim)| json!({"degree": d.coords(), "dim": dim}))
            .collect::<Vec<_>>(),
        "meta": meta,
    })
}

/// Values as CSV with a `degree,dim` header.  Rank-1 degrees are written
/// bare; higher ranks are quoted tuples like `"(1,0)"`.
pub fn csv_output(grading: &Grading, values: &BTreeMap<MultiDegree, usize>) -> String {
    let mut out = String::from("degree,dim\n");
    for (d, v) in values {
        if grading.k() == 1 {
            out.push_str(&format!("{d},{v}\n"));
        } else {
            out.push_str(&format!("\"{d}\",{v}\n"));
        }
    }
    out
}
