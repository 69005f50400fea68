use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

use super::config::Format;
use super::run::{TableRow, Threshold};

/// Plain decimal with six significant digits; `0.03888` renders as
/// `0.0388800`. Zero renders as `0.00000` and non-finite values as
/// `inf`, `-inf` or `NaN`.
pub fn format_sig6(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0.00000".into();
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp <= 5 {
        format!("{:.*}", (5 - exp) as usize, v)
    } else {
        let neg = mantissa.starts_with('-');
        let mut digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
        digits.extend(std::iter::repeat_n('0', exp as usize - 5));
        if neg {
            format!("-{digits}")
        } else {
            digits
        }
    }
}

fn threshold_cells(t: Threshold) -> String {
    match t {
        Threshold::Single(z) => format!("{z}"),
        Threshold::Pair(x, y) => format!("{x},{y}"),
    }
}

pub fn render(rows: &[TableRow], format: Format) -> Result<String> {
    let first = rows.first().ok_or_else(|| Error::Config("no rows to emit".into()))?;
    let pair = matches!(first.threshold, Threshold::Pair(..));
    if rows.iter().any(|r| matches!(r.threshold, Threshold::Pair(..)) != pair) {
        return Err(Error::Config("rows mix single and paired thresholds".into()));
    }
    let indicators = rows.iter().all(|r| r.indicators.is_some());
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(if pair { "x,y" } else { "threshold" });
            out.push_str(",sim,sim_stderr,asy1,asy2,ratio1,ratio2");
            if indicators {
                out.push_str(",ind_asy1,ind_asy1_stderr,ind_asy2,ind_asy2_stderr");
            }
            out.push('\n');
            for r in rows {
                out.push_str(&threshold_cells(r.threshold));
                for v in [r.sim, r.sim_stderr, r.asy1, r.asy2, r.ratio1, r.ratio2] {
                    out.push(',');
                    out.push_str(&format_sig6(v));
                }
                if let (true, Some(p)) = (indicators, r.indicators) {
                    for v in [p.asy1, p.asy1_stderr, p.asy2, p.asy2_stderr] {
                        out.push(',');
                        out.push_str(&format_sig6(v));
                    }
                }
                out.push('\n');
            }
        }
        Format::Markdown => {
            let (t, s, a1, a2) = if pair {
                ("(x,y)", "Sim(x,y)", "Asy1(x,y)", "Asy2(x,y)")
            } else {
                ("z", "Sim(z)", "Asy1(z)", "Asy2(z)")
            };
            let _ = writeln!(out, "| {t} | {s} | {a1} | {a2} | Asy1/Sim | Asy2/Sim |");
            out.push_str("|---|---|---|---|---|---|\n");
            for r in rows {
                let t = match r.threshold {
                    Threshold::Single(z) => format!("{z}"),
                    Threshold::Pair(x, y) => format!("({x},{y})"),
                };
                let cells: Vec<String> =
                    [r.sim, r.asy1, r.asy2, r.ratio1, r.ratio2].iter().map(|&v| format_sig6(v)).collect();
                let _ = writeln!(out, "| {t} | {} |", cells.join(" | "));
            }
        }
    }
    Ok(out)
}

/// Writes the rendered rows to `path`.
pub fn emit(rows: &[TableRow], format: Format, path: &Path) -> Result<()> {
    let text = render(rows, format)?;
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_owned(), source })
}

/// Header and numeric cells of an emitted CSV document.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = text.lines();
    let header: Vec<String> =
        lines.next().ok_or_else(|| Error::Parse("empty CSV".into()))?.split(',').map(str::to_owned).collect();
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells = line
            .split(',')
            .map(|c| c.parse::<f64>().map_err(|e| Error::Parse(format!("row {}: '{c}': {e}", i + 1))))
            .collect::<Result<Vec<f64>>>()?;
        if cells.len() != header.len() {
            return Err(Error::Parse(format!("row {} has {} cells, header has {}", i + 1, cells.len(), header.len())));
        }
        rows.push(cells);
    }
    Ok((header, rows))
}
