//! Report emitters: JSON Lines for machines, an aligned table for people.

use std::io::{self, Write};

use super::suites::{CheckRecord, Status};

/// One JSON object per line, in record order.
pub fn write_jsonl(records: &[CheckRecord], out: &mut impl Write) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

fn cases(r: &CheckRecord) -> String {
    match (r.certificate.get("cases"), r.certificate.get("failures")) {
        (Some(c), Some(f)) => format!("{f}/{c}"),
        _ => "-".into(),
    }
}

pub fn write_table(records: &[CheckRecord], out: &mut impl Write) -> io::Result<()> {
    let header = ["suite", "check", "status", "failed", "inputs"];
    let rows: Vec<[String; 5]> = records
        .iter()
        .map(|r| {
            [
                r.suite.clone(),
                r.check.clone(),
                match r.status {
                    Status::Pass => "pass".into(),
                    Status::Fail => "FAIL".into(),
                },
                cases(r),
                r.inputs.clone(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[&str]| -> String {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(&header))?;
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        writeln!(out, "{}", line(&cells))?;
    }
    Ok(())
}

pub fn all_passed(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.status == Status::Pass)
}
