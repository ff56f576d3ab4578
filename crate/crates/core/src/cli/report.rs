//! CSV writers. Floats use 17 significant digits so every value round-trips.

use std::io::Write;

use crate::diagnostics::{RateReport, UniquenessReport};
use crate::solvers::IterationTrace;

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Columns `iter,residual,step_len`, then `x_0..x_{n-1}` when points were
/// recorded.
pub fn write_trace<W: Write>(out: W, trace: &IterationTrace, dim: usize) -> csv::Result<()> {
    let with_points = trace.records.iter().any(|r| r.point.is_some());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["iter".to_string(), "residual".into(), "step_len".into()];
    if with_points {
        header.extend((0..dim).map(|i| format!("x_{i}")));
    }
    w.write_record(&header)?;
    for r in &trace.records {
        let mut row = vec![r.iter.to_string(), float(r.residual), float(r.step_len)];
        if let Some(p) = &r.point {
            row.extend(p.as_slice().iter().map(|&c| float(c)));
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Columns `index,x_0..x_{n-1}` over the sorted limits.
pub fn write_uniqueness<W: Write>(out: W, report: &UniquenessReport) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let dim = report.limits.first().map_or(0, |u| u.dim());
    let mut header = vec!["index".to_string()];
    header.extend((0..dim).map(|i| format!("x_{i}")));
    w.write_record(&header)?;
    for (i, u) in report.limits.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(u.as_slice().iter().map(|&c| float(c)));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_rates<W: Write>(out: W, reports: &[RateReport]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "s",
        "theoretical_q",
        "empirical_q",
        "margin",
        "iterations",
        "converged",
    ])?;
    for r in reports {
        w.write_record([
            float(r.s),
            float(r.theoretical_q),
            float(r.empirical_q),
            float(r.margin),
            r.iterations.to_string(),
            r.converged.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
