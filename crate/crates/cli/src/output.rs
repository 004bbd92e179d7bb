//! JSON lines, CSV and plain-text renderings of command results.

use std::io::{self, Write};

use cosmetic_core::classifier::{CaseTag, KnotExpr};
use cosmetic_core::laurent::LaurentPoly;
use cosmetic_core::manifold::ManifoldDescriptor;
use cosmetic_core::pipeline::{Criterion, FitResult, Outcome, ScanRecord, Unavailable};
use cosmetic_core::slope::Slope;
use serde::{Deserialize, Serialize};

use crate::Format;

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub knot: KnotExpr,
    pub slope: Slope,
    pub case: CaseTag,
    pub descriptor: ManifoldDescriptor,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct InvariantsRecord {
    pub knot: String,
    pub alexander: String,
    pub delta2: String,
    pub jones: Option<String>,
    pub v3: Option<String>,
    pub jones_unavailable: Option<String>,
}

impl InvariantsRecord {
    pub fn new(
        k: &KnotExpr,
        alexander: LaurentPoly,
        delta2: impl ToString,
        jones: &Result<LaurentPoly, Unavailable>,
    ) -> Self {
        InvariantsRecord {
            knot: k.to_string(),
            alexander: alexander.to_string(),
            delta2: delta2.to_string(),
            jones: jones.as_ref().ok().map(|v| v.to_string()),
            v3: jones.as_ref().ok().map(|v| v.derivative_at_one(3).to_string()),
            jones_unavailable: jones.as_ref().err().map(|u| u.to_string()),
        }
    }
}

#[derive(Serialize)]
struct ReportRow {
    line: Option<usize>,
    knot: String,
    r: String,
    s: String,
    verdict: String,
    excluded_by: String,
    error: String,
}

#[derive(Serialize)]
struct ClassifyRow<'a> {
    knot: String,
    slope: String,
    case: String,
    descriptor: &'a str,
}

#[derive(Serialize)]
struct FitRowOut {
    q: i64,
    epsilon: i64,
    a: String,
    b: String,
    c: String,
    d: String,
    e: String,
    residual: String,
    jones_rows_left_out: String,
}

fn excluding(checks: &[cosmetic_core::pipeline::Check]) -> Vec<Criterion> {
    checks.iter().filter(|c| c.outcome == Outcome::Excludes).map(|c| c.criterion).collect()
}

fn left_out(fit: &FitResult) -> Vec<String> {
    fit.rows.iter().filter_map(|r| r.jones.as_ref().err().map(|u| format!("{} ({u})", r.knot))).collect()
}

pub struct Sink {
    format: Format,
    out: Box<dyn Write>,
    csv_header: bool,
}

impl Sink {
    pub fn new(format: Format, out: impl Write + 'static) -> Self {
        Sink { format, out: Box::new(out), csv_header: false }
    }

    fn json<T: Serialize>(&mut self, value: &T) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, value)?;
        writeln!(self.out)
    }

    /// Header on the first row, then rows, flushed through to the output.
    fn csv_row<T: Serialize>(&mut self, row: &T) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(!self.csv_header).from_writer(Vec::new());
        w.serialize(row).map_err(io::Error::other)?;
        self.csv_header = true;
        let buf = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
        self.out.write_all(&buf)
    }

    pub fn classify(&mut self, rec: &ClassifyRecord) -> io::Result<()> {
        match self.format {
            Format::Json => self.json(rec),
            Format::Csv => {
                let descriptor = rec.descriptor.to_string();
                self.csv_row(&ClassifyRow {
                    knot: rec.knot.to_string(),
                    slope: rec.slope.to_string(),
                    case: rec.case.to_string(),
                    descriptor: &descriptor,
                })
            }
            Format::Text => writeln!(self.out, "{} at {}: {}\n  {}", rec.knot, rec.slope, rec.case, rec.descriptor),
        }
    }

    pub fn invariants(&mut self, rec: &InvariantsRecord) -> io::Result<()> {
        match self.format {
            Format::Json => self.json(rec),
            Format::Csv => self.csv_row(rec),
            Format::Text => {
                writeln!(self.out, "{}", rec.knot)?;
                writeln!(self.out, "  Alexander: {}", rec.alexander)?;
                writeln!(self.out, "  Delta''(1): {}", rec.delta2)?;
                match (&rec.jones, &rec.v3, &rec.jones_unavailable) {
                    (Some(v), Some(v3), _) => {
                        writeln!(self.out, "  Jones: {v}")?;
                        writeln!(self.out, "  V'''(1): {v3}")
                    }
                    (_, _, Some(u)) => writeln!(self.out, "  Jones: unavailable, {u}"),
                    _ => Ok(()),
                }
            }
        }
    }

    pub fn record(&mut self, rec: &ScanRecord) -> io::Result<()> {
        match self.format {
            Format::Json => self.json(rec),
            Format::Csv => {
                let row = match rec {
                    ScanRecord::Report(rep) => ReportRow {
                        line: None,
                        knot: rep.knot.to_string(),
                        r: rep.pair.0.to_string(),
                        s: rep.pair.1.to_string(),
                        verdict: format!("{:?}", rep.verdict),
                        excluded_by: excluding(&rep.checks).iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join(";"),
                        error: String::new(),
                    },
                    ScanRecord::Diagnostic(d) => ReportRow {
                        line: Some(d.line),
                        knot: d.name.clone(),
                        r: String::new(),
                        s: String::new(),
                        verdict: String::new(),
                        excluded_by: String::new(),
                        error: d.error.clone(),
                    },
                };
                self.csv_row(&row)
            }
            Format::Text => match rec {
                ScanRecord::Report(rep) => {
                    writeln!(self.out, "{} ({}, {}): {:?}", rep.knot, rep.pair.0, rep.pair.1, rep.verdict)?;
                    for c in &rep.checks {
                        writeln!(self.out, "  {:?} {:?}: {}", c.criterion, c.outcome, c.detail)?;
                        if let Some(ev) = &c.evidence {
                            writeln!(self.out, "    {}: {}", ev.case_r, ev.descriptor_r)?;
                            writeln!(self.out, "    {}: {}", ev.case_neg, ev.descriptor_neg)?;
                            writeln!(self.out, "    {:?}", ev.verdict)?;
                        }
                    }
                    Ok(())
                }
                ScanRecord::Diagnostic(d) => writeln!(self.out, "line {} ({}): {}", d.line, d.name, d.error),
            },
        }
    }

    pub fn fit(&mut self, fit: &FitResult) -> io::Result<()> {
        match self.format {
            Format::Json => self.json(fit),
            Format::Csv => self.csv_row(&FitRowOut {
                q: fit.q,
                epsilon: fit.epsilon,
                a: fit.a.to_string(),
                b: fit.b.to_string(),
                c: fit.c.to_string(),
                d: fit.d.to_string(),
                e: fit.e.to_string(),
                residual: fit.residual.to_string(),
                jones_rows_left_out: left_out(fit).join(";"),
            }),
            Format::Text => {
                writeln!(self.out, "C({},{}; K)", fit.epsilon, fit.q)?;
                writeln!(self.out, "  Delta''_C(1)  = {} Delta''_K(1) + {}", fit.a, fit.b)?;
                writeln!(self.out, "  V'''_C(1) = {} V'''_K(1) + {} Delta''_K(1) + {}", fit.c, fit.d, fit.e)?;
                writeln!(self.out, "  residual {}", fit.residual)?;
                for r in left_out(fit) {
                    writeln!(self.out, "  V''' row left out: {r}")?;
                }
                Ok(())
            }
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}
