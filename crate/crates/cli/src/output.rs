use std::io::Write;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

/// One command's result in all three renderings. `meta` holds timings
/// and cache bookkeeping and only appears in JSON.
pub struct Output {
    pub data: Value,
    pub meta: Option<Value>,
    pub tsv: Vec<Vec<String>>,
    pub pretty: String,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut data = self.data.clone();
                if let (Some(meta), Value::Object(map)) = (&self.meta, &mut data) {
                    map.insert("meta".into(), meta.clone());
                }
                let mut s = serde_json::to_string_pretty(&data).expect("serializable");
                s.push('\n');
                s
            }
            Format::Tsv => self.tsv.iter().map(|row| row.join("\t") + "\n").collect(),
            Format::Pretty => {
                let mut s = self.pretty.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        }
    }

    pub fn emit(&self, format: Format) {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(self.render(format).as_bytes());
        let _ = out.flush();
    }
}

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}
