//! One result rendered three ways.

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Every command fills all three renderings; `--format` picks one.
pub struct Output {
    pub text: String,
    pub csv: String,
    pub json: Value,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Csv => self.csv.clone(),
            // serde_json maps are BTreeMaps here, so keys come out sorted
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Comma-joined cells, no quoting; every cell is an integer, a rational or `?`.
pub fn csv_line<I, T>(cells: I) -> String
where
    I: IntoIterator<Item = T>,
    T: ToString,
{
    let mut line = cells
        .into_iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}

/// Right-aligned columns separated by two spaces.
pub fn text_table(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].chars().count())
                .chain(std::iter::once(header[c].chars().count()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let fmt_row = |cells: &[String]| {
        let mut line = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        line.push('\n');
        line
    };
    let mut out = fmt_row(header);
    for r in rows {
        out.push_str(&fmt_row(r));
    }
    out
}
