//! Output documents and their JSON, CSV and plain-text renderings.

use std::io::Write;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::tiltchar::{Basis, Decomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// Weight → multiplicity, serialized as a JSON object with decimal-string
/// keys in the stored order (highest weight first by convention).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightMap(pub Vec<(i64, i128)>);

impl WeightMap {
    pub fn from_decomposition(d: &Decomposition) -> Self {
        WeightMap(d.iter_desc().map(|(m, c)| (m as i64, c)).collect())
    }
}

impl Serialize for WeightMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (w, c) in &self.0 {
            map.serialize_entry(&w.to_string(), c)?;
        }
        map.end()
    }
}

/// One result object. Field order is fixed; `extra` holds kind-specific
/// fields and is emitted between `verdict` and `provenance`.
#[derive(Debug, Clone, Serialize)]
pub struct Document {
    pub kind: &'static str,
    pub r: u64,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Basis>,
    pub entries: WeightMap,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
    pub provenance: &'static str,
    /// CSV rendering of the rows, if the document is a table of partitions.
    #[serde(skip)]
    pub table: Option<CsvTable>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Document {
    pub fn new(kind: &'static str, r: u64, p: u64, provenance: &'static str) -> Self {
        Document {
            kind,
            r,
            p,
            basis: None,
            entries: WeightMap::default(),
            verdict: None,
            extra: Map::new(),
            provenance,
            table: None,
        }
    }

    pub fn with_extra(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.to_string(), value.into());
        self
    }

    fn csv_table(&self) -> CsvTable {
        self.table.clone().unwrap_or_else(|| CsvTable {
            header: vec!["weight", "multiplicity"],
            rows: self
                .entries
                .0
                .iter()
                .map(|(w, c)| vec![w.to_string(), c.to_string()])
                .collect(),
        })
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidArgument(format!("output error: {e}"))
}

/// Writes one document, or an array when `docs.len() != 1`.
pub fn render(docs: &[Document], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            let text = if docs.len() == 1 {
                serde_json::to_string(&docs[0])
            } else {
                serde_json::to_string(docs)
            }
            .map_err(io_err)?;
            writeln!(out, "{text}").map_err(io_err)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let multi = docs.len() != 1;
            let mut header_done = false;
            for doc in docs {
                let table = doc.csv_table();
                if !header_done {
                    let mut header: Vec<&str> = Vec::new();
                    if multi {
                        header.push("r");
                    }
                    header.extend(&table.header);
                    w.write_record(&header).map_err(io_err)?;
                    header_done = true;
                }
                for row in table.rows {
                    let mut rec = Vec::new();
                    if multi {
                        rec.push(doc.r.to_string());
                    }
                    rec.extend(row);
                    w.write_record(&rec).map_err(io_err)?;
                }
            }
            w.flush().map_err(io_err)
        }
        Format::Pretty => {
            for doc in docs {
                render_pretty(doc, out).map_err(io_err)?;
            }
            Ok(())
        }
    }
}

fn render_pretty(doc: &Document, out: &mut dyn Write) -> std::io::Result<()> {
    write!(out, "{} r={} p={}", doc.kind, doc.r, doc.p)?;
    if let Some(b) = doc.basis {
        write!(out, " basis={b}")?;
    }
    if let Some(v) = &doc.verdict {
        write!(out, " verdict={v}")?;
    }
    writeln!(out)?;
    for (k, v) in &doc.extra {
        if !v.is_array() {
            writeln!(out, "  {k}: {v}")?;
        }
    }
    let table = doc.csv_table();
    writeln!(out, "  {}", table.header.join("\t"))?;
    for row in table.rows {
        writeln!(out, "  {}", row.join("\t"))?;
    }
    writeln!(out, "  [{}]", doc.provenance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Document {
        let mut d = Document::new("tensor-power", 3, 2, "test");
        d.basis = Some(Basis::Tilting);
        d.entries = WeightMap(vec![(3, 1), (1, 2)]);
        d
    }

    fn rendered(docs: &[Document], f: Format) -> String {
        let mut buf = Vec::new();
        render(docs, f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn json_keeps_weight_order() {
        assert_eq!(
            rendered(&[sample()], Format::Json),
            "{\"kind\":\"tensor-power\",\"r\":3,\"p\":2,\"basis\":\"tilting\",\"entries\":{\"3\":1,\"1\":2},\"provenance\":\"test\"}\n"
        );
    }

    #[test]
    fn csv_single_and_multi() {
        assert_eq!(
            rendered(&[sample()], Format::Csv),
            "weight,multiplicity\n3,1\n1,2\n"
        );
        let two = [sample(), sample()];
        assert_eq!(
            rendered(&two, Format::Csv),
            "r,weight,multiplicity\n3,3,1\n3,1,2\n3,3,1\n3,1,2\n"
        );
        assert!(rendered(&two, Format::Json).starts_with('['));
    }

    #[test]
    fn big_multiplicities_stay_exact() {
        let mut d = sample();
        d.entries = WeightMap(vec![(0, i128::MAX)]);
        assert!(rendered(&[d], Format::Json).contains(&i128::MAX.to_string()));
    }

    #[test]
    fn pretty_mentions_everything() {
        let text = rendered(&[sample().with_extra("dim", 6)], Format::Pretty);
        assert!(text.contains("tensor-power r=3 p=2 basis=tilting"));
        assert!(text.contains("dim: 6"));
        assert!(text.contains("3\t1"));
    }
}
