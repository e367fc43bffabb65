//! Bundled specialization rows (parameters and argument z per row id).

use num_rational::BigRational;
use serde::Deserialize;

use crate::data::{big_ratio_serde::parse_big_rational, HypergeometricData};
use crate::error::CoreError;

const TABLE1_JSON: &str = include_str!("../../../data/table1_rows.json");

#[derive(Debug, Clone, Deserialize)]
pub struct Table1Row {
    pub id: u32,
    pub alpha: Vec<String>,
    pub z: Option<String>,
    #[serde(default)]
    pub source: String,
}

#[derive(Debug, Deserialize)]
struct Table1File {
    rows: Vec<Table1Row>,
}

impl Table1Row {
    pub fn data(&self) -> Result<HypergeometricData, CoreError> {
        let alpha = self.alpha.join(",");
        let beta = vec!["1"; self.alpha.len()].join(",");
        HypergeometricData::parse_strs(&alpha, &beta)
    }

    /// The rational specialization argument; None for the quadratic-irrational row.
    pub fn z_rational(&self) -> Option<BigRational> {
        self.z.as_ref().and_then(|s| parse_big_rational(s).ok())
    }
}

/// All bundled rows (the quadratic-irrational row has z = None).
pub fn table1_rows() -> Vec<Table1Row> {
    let file: Table1File = serde_json::from_str(TABLE1_JSON).expect("bundled table1 fixture parses");
    file.rows
}

pub fn table1_row(id: u32) -> Result<Table1Row, CoreError> {
    table1_rows()
        .into_iter()
        .find(|r| r.id == id)
        .ok_or_else(|| CoreError::Fixture(format!("no bundled row {id}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_load() {
        let rows = table1_rows();
        assert_eq!(rows.len(), 16);
        let r9 = table1_row(9).unwrap();
        assert_eq!(r9.z.as_deref(), Some("-1/48"));
        assert!(table1_row(16).unwrap().z.is_none());
        for r in rows.iter().filter(|r| r.z.is_some()) {
            assert!(r.z_rational().is_some(), "row {}", r.id);
        }
    }
}
