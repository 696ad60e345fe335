//! CSV and plot-script emission for sampled solutions.

use fraccauchy::grid::SamplePoint;
use std::io::Write;
use std::path::Path;

use crate::CliError;

/// Writes `x,y_series,y_exp,abs_diff` rows, LF endings, shortest
/// round-trip number formatting (re-parsing reproduces the doubles bit for
/// bit).
pub fn write_csv(path: &Path, rows: &[SamplePoint]) -> Result<(), CliError> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    write!(out, "{}", render_csv(rows))?;
    out.flush()?;
    Ok(())
}

pub fn render_csv(rows: &[SamplePoint]) -> String {
    let mut s = String::from("x,y_series,y_exp,abs_diff\n");
    for r in rows {
        s.push_str(&format!("{},{},{},{}\n", r.x, r.y_series, r.y_exp, r.abs_diff));
    }
    s
}

/// Parses what `render_csv` produced.
#[cfg(test)]
pub fn parse_csv(text: &str) -> Result<Vec<SamplePoint>, CliError> {
    let mut lines = text.lines();
    match lines.next() {
        Some("x,y_series,y_exp,abs_diff") => {}
        other => {
            return Err(CliError::InvalidProblem(format!(
                "unexpected CSV header: {other:?}"
            )))
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let mut fields = line.split(',').map(str::parse::<f64>);
        let mut next = |name: &str| {
            fields
                .next()
                .and_then(Result::ok)
                .ok_or_else(|| CliError::InvalidProblem(format!("row {}: bad {name}", i + 1)))
        };
        rows.push(SamplePoint {
            x: next("x")?,
            y_series: next("y_series")?,
            y_exp: next("y_exp")?,
            abs_diff: next("abs_diff")?,
        });
    }
    Ok(rows)
}

/// A self-contained gnuplot script that renders both solution routes from
/// the CSV; no image dependency in the tool itself.
pub fn write_plot_script(path: &Path, csv_path: &Path) -> Result<(), CliError> {
    let csv = csv_path.display();
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "# usage: gnuplot -persist {}", path.display())?;
    writeln!(out, "set datafile separator ','")?;
    writeln!(out, "set key autotitle columnhead")?;
    writeln!(out, "set xlabel 'x'")?;
    writeln!(out, "set ylabel 'y'")?;
    writeln!(out, "set grid")?;
    writeln!(
        out,
        "plot '{csv}' using 1:2 with lines lw 2 title 'series', \\\n     '{csv}' using 1:3 with points pt 7 ps 0.5 title 'exponential form'"
    )?;
    Ok(())
}
