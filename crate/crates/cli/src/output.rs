//! Record emission: JSON, CSV or an aligned text table.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Run metadata; omitted entirely under `--no-meta`.
#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub workers: usize,
    pub point_budget: String,
    pub unix_time: u64,
}

impl Meta {
    pub fn now(workers: usize, budget: u128) -> Self {
        Meta {
            version: env!("CARGO_PKG_VERSION"),
            workers,
            point_budget: budget.to_string(),
            unix_time: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        }
    }
}

/// One row of a family sequence.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SequenceRow {
    pub family: String,
    pub n: usize,
    pub p: u32,
    pub route: String,
    pub c2: u32,
    pub elapsed_ms: f64,
}

#[derive(Serialize)]
struct Document<'a, R: Serialize, X: Serialize> {
    #[serde(skip_serializing_if = "Option::is_none")]
    meta: Option<&'a Meta>,
    records: &'a [R],
    #[serde(skip_serializing_if = "Option::is_none")]
    extra: Option<&'a X>,
}

pub trait Tabular {
    fn header() -> Vec<&'static str>;
    fn cells(&self) -> Vec<String>;
}

impl Tabular for SequenceRow {
    fn header() -> Vec<&'static str> {
        vec!["family", "n", "p", "route", "c2", "elapsed_ms"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.n.to_string(),
            self.p.to_string(),
            self.route.clone(),
            self.c2.to_string(),
            format!("{:.3}", self.elapsed_ms),
        ]
    }
}

impl Tabular for c2kit::c2::C2Result {
    fn header() -> Vec<&'static str> {
        vec!["graph", "p", "method", "c2", "edges", "elapsed_ms"]
    }
    fn cells(&self) -> Vec<String> {
        let edges = self.edges.as_ref().map_or(String::new(), |e| {
            e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        });
        vec![
            self.graph.clone(),
            self.p.to_string(),
            self.method.name().to_string(),
            self.value.to_string(),
            edges,
            format!("{:.3}", self.elapsed_ms),
        ]
    }
}

/// Write records with optional metadata and a trailing extra object
/// (JSON only; other formats print it as `# key: value` lines).
pub fn emit<R: Serialize + Tabular, X: Serialize>(
    format: Format,
    meta: Option<&Meta>,
    records: &[R],
    extra: Option<&X>,
) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => {
            let doc = Document {
                meta,
                records,
                extra,
            };
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(R::header())?;
            for r in records {
                w.write_record(r.cells())?;
            }
            w.flush()?;
            drop(w);
            write_extra(&mut out, extra)?;
        }
        Format::Table => {
            let header: Vec<String> = R::header().into_iter().map(String::from).collect();
            let rows: Vec<Vec<String>> = records.iter().map(Tabular::cells).collect();
            let mut widths: Vec<usize> = header.iter().map(String::len).collect();
            for row in &rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            for row in std::iter::once(&header).chain(&rows) {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                writeln!(out, "{}", line.join("  ").trim_end())?;
            }
            write_extra(&mut out, extra)?;
        }
    }
    Ok(())
}

fn write_extra<X: Serialize>(out: &mut impl Write, extra: Option<&X>) -> io::Result<()> {
    let Some(extra) = extra else { return Ok(()) };
    if let serde_json::Value::Object(map) = serde_json::to_value(extra)? {
        for (k, v) in map {
            writeln!(out, "# {k}: {v}")?;
        }
    }
    Ok(())
}
