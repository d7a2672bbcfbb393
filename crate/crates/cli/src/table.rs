//! Plot-ready tables of constants, bounds and bound gaps.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use thiserror::Error;

use ramanujan_core::analysis::{delta_estimate, DEFAULT_ROOT_TOL};
use ramanujan_core::bounds::{bound, BoundMethod};
use ramanujan_core::ramanujan::r_eval;
use ramanujan_core::EvalMethod;

use crate::format::{fmt_f64, json_f64};
use crate::ledger::constants_ledger;
use crate::verify::bound_methods;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Constants,
    Bounds,
    Errors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

macro_rules! named_enum {
    ($ty:ty, $what:literal, $($variant:ident => $name:literal),+) => {
        impl $ty {
            pub fn name(self) -> &'static str {
                match self { $(Self::$variant => $name),+ }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(Self::$variant),)+
                    _ => Err(format!(concat!("unknown ", $what, " `{}`"), s)),
                }
            }
        }
    };
}

named_enum!(TableKind, "table", Constants => "constants", Bounds => "bounds", Errors => "errors");
named_enum!(TableFormat, "format", Csv => "csv", Json => "json");

#[derive(Debug, Error)]
pub enum TableError {
    #[error("invalid range [{from}, {to}]: need 0 < from <= to <= 1/2")]
    Range { from: f64, to: f64 },
    #[error("need at least one point, got {0}")]
    Points(usize),
    #[error(transparent)]
    Numeric(#[from] ramanujan_core::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// `points` equally spaced abscissae from `from` to `to` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), TableError> {
        if !(self.from > 0.0 && self.from <= self.to && self.to <= 0.5) {
            return Err(TableError::Range {
                from: self.from,
                to: self.to,
            });
        }
        if self.points == 0 {
            return Err(TableError::Points(0));
        }
        Ok(())
    }

    pub fn abscissae(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.from];
        }
        let step = (self.to - self.from) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.to
                } else {
                    self.from + step * i as f64
                }
            })
            .collect()
    }
}

enum Cell {
    Text(String),
    Num(f64),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Self::Text(s) => s.clone(),
            Self::Num(v) => fmt_f64(*v),
        }
    }

    fn json(&self) -> Value {
        match self {
            Self::Text(s) => Value::String(s.clone()),
            Self::Num(v) => json_f64(*v),
        }
    }
}

struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

fn column_name(method: BoundMethod) -> String {
    match method {
        BoundMethod::OriginPoly(n) => format!("origin_poly_{n}"),
        BoundMethod::CenterPoly(n) => format!("center_poly_{n}"),
        BoundMethod::Envelope(n) => format!("envelope_{n}"),
        other => other.name(),
    }
}

fn build(kind: TableKind, grid: &GridSpec) -> Result<Table, TableError> {
    if kind == TableKind::Constants {
        let rows = constants_ledger()?
            .into_iter()
            .map(|e| {
                vec![
                    Cell::Text(e.name.to_string()),
                    Cell::Num(e.computed),
                    Cell::Text(e.reference.to_string()),
                ]
            })
            .collect();
        return Ok(Table {
            columns: vec!["name".into(), "computed".into(), "reference".into()],
            rows,
        });
    }

    grid.validate()?;
    let delta = delta_estimate(DEFAULT_ROOT_TOL)?.delta;
    let methods = bound_methods();
    let mut columns = vec!["x".to_string()];
    match kind {
        TableKind::Bounds => {
            columns.push("R".into());
            for &m in &methods {
                columns.push(format!("{}_lower", column_name(m)));
                columns.push(format!("{}_upper", column_name(m)));
            }
        }
        _ => columns.extend(methods.iter().map(|&m| format!("{}_gap", column_name(m)))),
    }
    let mut rows = Vec::with_capacity(grid.points);
    for x in grid.abscissae() {
        let mut row = vec![Cell::Num(x)];
        if kind == TableKind::Bounds {
            row.push(Cell::Num(r_eval(x, EvalMethod::Auto)?.value));
        }
        for &m in &methods {
            let pair = bound(m, x, delta)?;
            if kind == TableKind::Bounds {
                row.push(Cell::Num(pair.lower));
                row.push(Cell::Num(pair.upper));
            } else {
                row.push(Cell::Num(pair.gap()));
            }
        }
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

fn to_csv(table: &Table) -> Result<String, TableError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(&table.columns)?;
    for row in &table.rows {
        writer.write_record(row.iter().map(Cell::csv))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn to_json(table: &Table, kind: TableKind, grid: &GridSpec) -> String {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let map: Map<String, Value> = table
                .columns
                .iter()
                .cloned()
                .zip(row.iter().map(Cell::json))
                .collect();
            Value::Object(map)
        })
        .collect();
    let meta = json!({
        "what": kind.name(),
        "from": json_f64(grid.from),
        "to": json_f64(grid.to),
        "points": grid.points,
        "columns": table.columns,
    });
    let mut text = serde_json::to_string_pretty(&json!({ "meta": meta, "rows": rows }))
        .expect("table serializes");
    text.push('\n');
    text
}

/// The table as text. The constants table ignores `grid`.
pub fn render_table(
    kind: TableKind,
    grid: &GridSpec,
    format: TableFormat,
) -> Result<String, TableError> {
    let table = build(kind, grid)?;
    match format {
        TableFormat::Csv => to_csv(&table),
        TableFormat::Json => Ok(to_json(&table, kind, grid)),
    }
}

pub fn emit_table(
    kind: TableKind,
    grid: &GridSpec,
    format: TableFormat,
    out: &Path,
) -> Result<(), TableError> {
    let text = render_table(kind, grid, format)?;
    fs::write(out, text).map_err(|source| TableError::Io {
        path: out.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(from: f64, to: f64, points: usize) -> GridSpec {
        GridSpec { from, to, points }
    }

    #[test]
    fn grid_validation() {
        assert!(grid(0.0, 0.5, 3).validate().is_err());
        assert!(grid(0.3, 0.2, 3).validate().is_err());
        assert!(grid(0.1, 0.6, 3).validate().is_err());
        assert!(grid(0.1, 0.5, 0).validate().is_err());
        assert_eq!(
            grid(0.1, 0.5, 3).abscissae(),
            vec![0.1, 0.30000000000000004, 0.5]
        );
    }

    #[test]
    fn csv_layout() {
        let text = render_table(TableKind::Errors, &grid(0.25, 0.5, 3), TableFormat::Csv).unwrap();
        assert!(!text.contains('\r'));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("x,sine_poly_gap,origin_poly_1_gap"));
        assert!(lines[3].starts_with("5.0000000000000000e-1,"));
    }

    #[test]
    fn json_layout() {
        let text =
            render_table(TableKind::Constants, &grid(0.1, 0.5, 1), TableFormat::Json).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["meta"]["what"], "constants");
        let b0 = v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["name"] == "b0")
            .unwrap();
        assert_eq!(b0["reference"], "0.324143");
    }

    #[test]
    fn names_round_trip() {
        for kind in [TableKind::Constants, TableKind::Bounds, TableKind::Errors] {
            assert_eq!(kind.name().parse::<TableKind>().unwrap(), kind);
        }
        assert!("xml".parse::<TableFormat>().is_err());
    }
}
