//! Tabular views of observations: CSV export and static SVG charts.
//!
//! Charts are 640×400 with a fixed palette indexed by metric column. Every
//! plotted value is written to a `data-value` attribute using the same
//! number formatting as the CSV export.

mod svg;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::analytics::{latest, observations};
use crate::rdf::{NamedNode, QuadDataset};
use crate::vocab::TBox;

pub use svg::{render_svg, HEIGHT, PALETTE, WIDTH};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartKind {
    HorizontalBar,
    VerticalBar,
    Radar,
    Lines,
}

impl FromStr for ChartKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hbar" => Ok(ChartKind::HorizontalBar),
            "vbar" => Ok(ChartKind::VerticalBar),
            "radar" => Ok(ChartKind::Radar),
            "lines" => Ok(ChartKind::Lines),
            other => Err(format!("unknown chart kind {other:?} (expected hbar, vbar, radar or lines)")),
        }
    }
}

impl fmt::Display for ChartKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChartKind::HorizontalBar => "hbar",
            ChartKind::VerticalBar => "vbar",
            ChartKind::Radar => "radar",
            ChartKind::Lines => "lines",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub kind: ChartKind,
    /// Datasets or versions.
    pub rows: Vec<NamedNode>,
    /// Metric classes.
    pub columns: Vec<NamedNode>,
    pub column_labels: Vec<String>,
    /// `values[row][column]`; `None` is drawn as a gap.
    pub values: Vec<Vec<Option<f64>>>,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("radar charts need at least 3 metrics (got {0}); use a bar chart instead")]
    RadarNeedsThreeMetrics(usize),
    #[error("value matrix is not {rows} x {columns}")]
    Shape { rows: usize, columns: usize },
    #[error("{0} column labels for {1} columns")]
    Labels(usize, usize),
}

impl ChartSpec {
    /// Fills the matrix from the latest observation per (row, column).
    /// Column labels default to the TBox label or the class's local name.
    pub fn from_observations(
        kind: ChartKind,
        data: &QuadDataset,
        rows: Vec<NamedNode>,
        columns: Vec<NamedNode>,
        tbox: &TBox,
    ) -> Self {
        let records = observations(data);
        let values = rows
            .iter()
            .map(|r| {
                columns
                    .iter()
                    .map(|c| latest(&records, c, r, tbox).and_then(|o| o.numeric_value()))
                    .collect()
            })
            .collect();
        let column_labels = columns
            .iter()
            .map(|c| tbox.labels.get(c).cloned().unwrap_or_else(|| c.local_name().to_owned()))
            .collect();
        ChartSpec {
            kind,
            rows,
            columns,
            column_labels,
            values,
            title: "Dataset quality".to_owned(),
            x_label: "dataset".to_owned(),
            y_label: "value".to_owned(),
        }
    }

    pub fn check(&self) -> Result<(), ChartError> {
        let shape = ChartError::Shape {
            rows: self.rows.len(),
            columns: self.columns.len(),
        };
        if self.values.len() != self.rows.len() || self.values.iter().any(|r| r.len() != self.columns.len()) {
            return Err(shape);
        }
        if self.column_labels.len() != self.columns.len() {
            return Err(ChartError::Labels(self.column_labels.len(), self.columns.len()));
        }
        Ok(())
    }

    pub fn present_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().flatten().flatten().copied()
    }
}

/// Shortest round-trip decimal form, shared by CSV and SVG output.
pub fn format_value(v: f64) -> String {
    format!("{v}")
}

/// Header `computedOn,<column labels…>`, then one row per dataset; missing
/// cells are empty.
pub fn export_csv(spec: &ChartSpec) -> Result<Vec<u8>, ChartError> {
    spec.check()?;
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    let header = std::iter::once("computedOn").chain(spec.column_labels.iter().map(String::as_str));
    w.write_record(header).expect("in-memory write");
    for (row, values) in spec.rows.iter().zip(&spec.values) {
        let cells = std::iter::once(row.as_str().to_owned())
            .chain(values.iter().map(|v| v.map(format_value).unwrap_or_default()));
        w.write_record(cells).expect("in-memory write");
    }
    Ok(w.into_inner().expect("in-memory flush"))
}
