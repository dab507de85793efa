//! Output documents rendered as tab-separated blocks or JSON lines.

use std::fmt::Write;

use bettibound::Rational;
use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    JsonLines,
}

/// `a/b` in lowest terms, or plain `a` for integers.
pub fn rational(q: &Rational) -> Value {
    Value::String(q.to_string())
}

/// Comma-separated items, or null when there are none.
pub fn joined<T: ToString>(items: &[T]) -> Value {
    if items.is_empty() {
        return Value::Null;
    }
    Value::String(
        items
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(","),
    )
}

#[derive(Clone, Debug)]
pub enum Block {
    Table {
        section: &'static str,
        columns: Vec<&'static str>,
        rows: Vec<Vec<Value>>,
    },
    Fields {
        section: &'static str,
        fields: Vec<(&'static str, Value)>,
    },
}

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub blocks: Vec<Block>,
}

impl Document {
    pub fn push(&mut self, block: Block) {
        self.blocks.push(block);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.tsv(),
            Format::JsonLines => self.json_lines(),
        }
    }

    fn tsv(&self) -> String {
        let mut out = String::new();
        for block in &self.blocks {
            match block {
                Block::Table {
                    section,
                    columns,
                    rows,
                } => {
                    writeln!(out, "# {section}").unwrap();
                    writeln!(out, "{}", columns.join("\t")).unwrap();
                    for row in rows {
                        let cells: Vec<String> = row.iter().map(cell).collect();
                        writeln!(out, "{}", cells.join("\t")).unwrap();
                    }
                }
                Block::Fields { section, fields } => {
                    writeln!(out, "# {section}").unwrap();
                    for (key, value) in fields {
                        writeln!(out, "{key}\t{}", cell(value)).unwrap();
                    }
                }
            }
        }
        out
    }

    fn json_lines(&self) -> String {
        let mut out = String::new();
        let mut emit = |section: &str, pairs: &mut dyn Iterator<Item = (&str, &Value)>| {
            let mut object = Map::new();
            object.insert("section".into(), Value::String(section.into()));
            for (k, v) in pairs {
                object.insert(k.into(), v.clone());
            }
            writeln!(out, "{}", Value::Object(object)).unwrap();
        };
        for block in &self.blocks {
            match block {
                Block::Table {
                    section,
                    columns,
                    rows,
                } => {
                    for row in rows {
                        emit(section, &mut columns.iter().copied().zip(row));
                    }
                }
                Block::Fields { section, fields } => {
                    emit(section, &mut fields.iter().map(|(k, v)| (*k, v)));
                }
            }
        }
        out
    }
}

fn cell(value: &Value) -> String {
    match value {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
