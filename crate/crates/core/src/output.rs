//! Rendering of reports as CSV, JSON or plain text.
//!
//! Fixed-point values are written with Rust's float formatting, which rounds
//! the exact binary value and breaks exact ties to even.

use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::Trajectory;
use crate::montecarlo::ValidationReport;
use crate::scenario::{ScenarioTable, TableId};
use crate::sensitivity::{Band, SweepSurface};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" | "structured-text" => Ok(Format::Json),
            _ => Err(Error::Domain(format!("unknown format `{s}` (text, csv, json)"))),
        }
    }
}

/// Where and how a command writes its artifact.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub format: Format,
    pub precision: usize,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self { format: Format::Text, precision: 3 }
    }
}

pub fn fixed(x: f64, precision: usize) -> String {
    format!("{x:.precision$}")
}

fn csv_err(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

fn write_csv(out: &mut dyn Write, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

pub fn write_table(out: &mut dyn Write, table: &ScenarioTable, spec: &OutputSpec) -> std::io::Result<()> {
    let prec = spec.precision;
    let cells = |r: &crate::scenario::TableRow| -> Vec<String> {
        let s = &r.summary;
        let mut v = vec![r.label.clone(), fixed(s.r10, prec), fixed(s.p10, prec)];
        match table.id {
            // Percentages are shown as whole numbers; the summary keeps full precision.
            TableId::Table4 => v.extend([fixed(s.delta_r_pct, 0), fixed(s.delta_p_pct, 0)]),
            TableId::Table5 => v.push(fixed(s.epsilon_r, prec)),
        }
        v
    };
    match spec.format {
        Format::Json => write_json(out, table),
        Format::Csv => write_csv(out, table.columns(), table.rows.iter().map(cells)),
        Format::Text => {
            let header = table.columns();
            writeln!(out, "{:<36}{}", header[0], header[1..].iter().map(|h| format!("{h:>14}")).collect::<String>())?;
            for r in &table.rows {
                let c = cells(r);
                writeln!(out, "{:<36}{}", c[0], c[1..].iter().map(|h| format!("{h:>14}")).collect::<String>())?;
            }
            Ok(())
        }
    }
}

pub fn write_sweep(out: &mut dyn Write, surface: &SweepSurface, spec: &OutputSpec) -> std::io::Result<()> {
    match spec.format {
        Format::Json => write_json(out, surface),
        Format::Csv | Format::Text => write_csv(
            out,
            &["parameter", "value", "regime", "r10"],
            surface.points().map(|p| {
                vec![p.parameter.to_string(), p.value.to_string(), p.regime.to_string(), fixed(p.r10, spec.precision)]
            }),
        ),
    }
}

pub fn write_trajectory(out: &mut dyn Write, tr: &Trajectory, spec: &OutputSpec) -> std::io::Result<()> {
    if spec.format == Format::Json {
        return write_json(out, tr);
    }
    let f = |x: f64| fixed(x, spec.precision.max(6));
    write_csv(
        out,
        &["t", "p", "d", "rai", "pr_detect", "hazard", "integrand", "cumulative_risk"],
        (0..tr.len()).map(|i| {
            vec![
                f(tr.t[i]),
                f(tr.p[i]),
                f(tr.d[i]),
                f(tr.rai[i]),
                f(tr.pr_detect[i]),
                f(tr.hazard[i]),
                f(tr.integrand[i]),
                f(tr.cumulative_risk[i]),
            ]
        }),
    )
}

pub fn write_band(out: &mut dyn Write, band: &Band, spec: &OutputSpec) -> std::io::Result<()> {
    if spec.format == Format::Json {
        return write_json(out, band);
    }
    let f = |x: f64| fixed(x, spec.precision.max(6));
    let mut header = vec!["t".to_string()];
    for name in ["p", "d", "rai", "r"] {
        for side in ["lower", "nominal", "upper"] {
            header.push(format!("{name}_{side}"));
        }
    }
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv(
        out,
        &header,
        (0..band.t.len()).map(|i| {
            let mut row = vec![f(band.t[i])];
            for env in [&band.p, &band.d, &band.rai, &band.r] {
                row.extend([f(env.lower[i]), f(env.nominal[i]), f(env.upper[i])]);
            }
            row
        }),
    )
}

pub fn write_validation(out: &mut dyn Write, reports: &[ValidationReport], spec: &OutputSpec) -> std::io::Result<()> {
    let prec = spec.precision.max(4);
    match spec.format {
        Format::Json => write_json(out, &reports),
        Format::Csv => write_csv(
            out,
            &[
                "scenario",
                "trials",
                "seed",
                "analytic_r",
                "mc_r",
                "mc_r_ci99",
                "analytic_p",
                "mc_p",
                "mc_p_ci99",
                "pass",
            ],
            reports.iter().map(|r| {
                vec![
                    r.scenario.clone(),
                    r.trials.to_string(),
                    r.seed.to_string(),
                    fixed(r.analytic_r, prec),
                    fixed(r.mc.mean_undetected, prec),
                    fixed(r.mc.mean_ci99_half_width, prec),
                    fixed(r.analytic_p, prec),
                    fixed(r.mc.p_at_least_one, prec),
                    fixed(r.mc.p_ci99_half_width, prec),
                    r.pass.to_string(),
                ]
            }),
        ),
        Format::Text => {
            for r in reports {
                let status = if r.inconclusive {
                    "INCONCLUSIVE"
                } else if r.pass {
                    "PASS"
                } else {
                    "FAIL"
                };
                writeln!(
                    out,
                    "{status:<13}{:<30} R analytic {} vs MC {} ± {}   P analytic {} vs MC {} ± {}",
                    r.scenario,
                    fixed(r.analytic_r, prec),
                    fixed(r.mc.mean_undetected, prec),
                    fixed(r.mc.mean_ci99_half_width, prec),
                    fixed(r.analytic_p, prec),
                    fixed(r.mc.p_at_least_one, prec),
                    fixed(r.mc.p_ci99_half_width, prec),
                )?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_round_to_even() {
        assert_eq!(fixed(0.125, 2), "0.12");
        assert_eq!(fixed(0.375, 2), "0.38");
        assert_eq!(fixed(2.5, 0), "2");
        assert_eq!(fixed(-97.6, 0), "-98");
    }

    #[test]
    fn format_names() {
        assert_eq!("structured-text".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
