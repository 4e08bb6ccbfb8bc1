use serde_json::Value;

use crate::Format;

/// One command result in every format, plus lines appended by `--check`.
#[derive(Debug, Default)]
pub struct Output {
    pub json: Vec<Value>,
    pub csv: String,
    pub pretty: String,
    pub appendix: Vec<(Value, String)>,
}

impl Output {
    pub fn new(json: Value, csv: String, pretty: String) -> Self {
        Output {
            json: vec![json],
            csv,
            pretty,
            appendix: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = match format {
            Format::Json => self.json.iter().map(|v| format!("{v}\n")).collect(),
            Format::Csv => self.csv.clone(),
            Format::Pretty => self.pretty.clone(),
        };
        for (value, text) in &self.appendix {
            match format {
                Format::Pretty => out.push_str(text),
                _ => out.push_str(&format!("{value}\n")),
            }
        }
        out
    }
}

pub fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

pub fn facet_lines(facets: &[Vec<usize>]) -> String {
    facets.iter().map(|f| join(f, ",") + "\n").collect()
}
