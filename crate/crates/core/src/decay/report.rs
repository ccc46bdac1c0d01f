//! CSV rendering of scenario results. Output is byte-stable for equal inputs.

use crate::decay::fit::SeriesPoint;
use crate::decay::scenarios::ScenarioOutcome;
use crate::error::{Error, Result};

pub const SERIES_HEADER: [&str; 6] = ["t", "norm", "quantity", "zone", "symbol", "n"];
pub const SUMMARY_HEADER: [&str; 5] = ["scenario", "slope", "expected", "tolerance", "pass"];

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidParameter(format!("csv: {e}")))
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidParameter(format!("csv: {e}"))
}

/// Rows `t,norm,quantity,zone,symbol,n` for one scenario.
pub fn series_csv(outcome: &ScenarioOutcome) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SERIES_HEADER).map_err(csv_err)?;
    for row in &outcome.rows {
        w.write_record([
            row.t.to_string(),
            row.norm.to_string(),
            row.quantity.clone(),
            row.zone.clone(),
            outcome.symbol.clone(),
            outcome.n.to_string(),
        ])
        .map_err(csv_err)?;
    }
    finish(w)
}

/// Series CSV for ad-hoc runs outside the scenario suite.
pub fn points_csv(points: &[SeriesPoint], quantity: &str, zone: &str, symbol: &str, n: u32) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SERIES_HEADER).map_err(csv_err)?;
    for p in points {
        w.write_record([p.t.to_string(), p.norm.to_string(), quantity.into(), zone.into(), symbol.into(), n.to_string()])
            .map_err(csv_err)?;
    }
    finish(w)
}

/// One `scenario,slope,expected,tolerance,pass` line per outcome.
pub fn summary_csv(outcomes: &[ScenarioOutcome]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SUMMARY_HEADER).map_err(csv_err)?;
    for o in outcomes {
        w.write_record([o.name.clone(), o.slope.to_string(), o.expected.clone(), o.tolerance.to_string(), o.pass.to_string()])
            .map_err(csv_err)?;
    }
    finish(w)
}
