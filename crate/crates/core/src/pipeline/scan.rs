//! Knot tables and batch scans over slope grids.
//!
//! Table CSV columns: `name, kind, payload, declared_class, tau`, with
//! `kind` one of `expr`, `pd`, `braid`. A header row is expected.

use std::io::Read;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::report::{report_with, KnotInvariants, ObstructionReport};
use crate::classifier::{parse_knot_expr_with, KnotExpr, KnotTable, Leaf, LeafClass};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::slope::Slope;

#[derive(Clone, Debug)]
pub struct TableRow {
    pub line: usize,
    pub name: String,
    pub knot: KnotExpr,
    pub tau: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub line: usize,
    pub name: String,
    pub error: String,
}

/// Rows in file order; a row that fails to parse becomes a [`Diagnostic`].
#[derive(Clone, Debug, Default)]
pub struct LoadedTable {
    pub rows: Vec<std::result::Result<TableRow, Diagnostic>>,
    pub names: KnotTable,
}

#[derive(Deserialize)]
struct RawRow {
    name: String,
    kind: String,
    payload: String,
    #[serde(default)]
    declared_class: String,
    #[serde(default)]
    tau: String,
}

fn parse_row(raw: &RawRow, names: &KnotTable) -> Result<(KnotExpr, Option<i64>)> {
    let class: LeafClass = raw.declared_class.parse()?;
    let tau = match raw.tau.trim() {
        "" => None,
        t => Some(t.parse::<i64>().map_err(|_| Error::parse("table", format!("tau `{t}` is not an integer")))?),
    };
    let knot = match raw.kind.trim() {
        "expr" => {
            let mut k = parse_knot_expr_with(&raw.payload, names)?;
            if let KnotExpr::Leaf(leaf) = &mut k {
                if class != LeafClass::Unknown {
                    leaf.class = class;
                }
            }
            k
        }
        "pd" | "braid" => {
            let d = Diagram::parse(&raw.payload)?;
            let kind_ok = matches!((raw.kind.trim(), &d), ("pd", Diagram::Pd(_)) | ("braid", Diagram::Braid(_)));
            if !kind_ok {
                return Err(Error::parse("table", format!("payload does not match kind `{}`", raw.kind.trim())));
            }
            KnotExpr::Leaf(Leaf { name: raw.name.trim().to_string(), diagram: Some(d), class, tau })
        }
        other => return Err(Error::parse("table", format!("unknown kind `{other}`"))),
    };
    Ok((knot, tau))
}

/// Reads a knot table. Later rows may refer to earlier ones as `K(name)`.
pub fn load_table<R: Read>(reader: R) -> Result<LoadedTable> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(true).from_reader(reader);
    let mut table = LoadedTable::default();
    for (i, rec) in rdr.deserialize::<RawRow>().enumerate() {
        let line = i + 2;
        let raw = match rec {
            Ok(r) => r,
            Err(e) => {
                table.rows.push(Err(Diagnostic { line, name: String::new(), error: e.to_string() }));
                continue;
            }
        };
        match parse_row(&raw, &table.names) {
            Ok((knot, tau)) => {
                let name = raw.name.trim().to_string();
                table.names.insert(name.clone(), knot.clone());
                table.rows.push(Ok(TableRow { line, name, knot, tau }));
            }
            Err(e) => table.rows.push(Err(Diagnostic { line, name: raw.name.trim().to_string(), error: e.to_string() })),
        }
    }
    Ok(table)
}

/// Reduced slopes `m/n` with `1 <= m <= max_m`, `1 <= n <= max_n`, `m` outer.
pub fn slope_grid(max_m: u32, max_n: u32) -> Vec<Slope> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for n in 1..=max_n {
            if m.gcd(&n) == 1 {
                out.push(Slope::new(m, n).expect("nonzero"));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum ScanRecord {
    Report(Box<ObstructionReport>),
    Diagnostic(Diagnostic),
}

/// Reports for `(r, -r)` over the grid, row by row in table order.
pub fn scan(table: &LoadedTable, max_m: u32, max_n: u32, cap: usize) -> impl Iterator<Item = ScanRecord> + '_ {
    let grid = slope_grid(max_m, max_n);
    table.rows.iter().flat_map(move |row| -> Vec<ScanRecord> {
        let row = match row {
            Ok(r) => r,
            Err(d) => return vec![ScanRecord::Diagnostic(d.clone())],
        };
        let diag = |e: Error| ScanRecord::Diagnostic(Diagnostic { line: row.line, name: row.name.clone(), error: e.to_string() });
        let inv = match KnotInvariants::compute(&row.knot, cap) {
            Ok(inv) => inv,
            Err(e) => return vec![diag(e)],
        };
        grid.iter()
            .map(|r| match report_with(&row.knot, &inv, r, &r.negate(), row.tau) {
                Ok(rep) => ScanRecord::Report(Box::new(rep)),
                Err(e) => diag(e),
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::report::Verdict;

    const TABLE: &str = "name,kind,payload,declared_class,tau
tref,braid,\"BR[2; 1,1,1]\",,
eight,pd,\"PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]\",hyperbolic,0
c,expr,\"C(3,2; K(eight))\",,
bad,expr,\"C(4,2; U)\",,
link,braid,\"BR[2; 1,1]\",,
";

    #[test]
    fn loads_rows_and_diagnostics() {
        let t = load_table(TABLE.as_bytes()).unwrap();
        assert_eq!(t.rows.len(), 5);
        assert!(t.rows[0].is_ok() && t.rows[1].is_ok() && t.rows[2].is_ok());
        assert!(t.rows[3].is_err() && t.rows[4].is_err());
        let Ok(c) = &t.rows[2] else { panic!() };
        assert_eq!(c.knot.as_proper_cable().unwrap().0.p(), 3);
        let Ok(e) = &t.rows[1] else { panic!() };
        assert_eq!(e.tau, Some(0));
    }

    #[test]
    fn grid_order() {
        let g: Vec<String> = slope_grid(3, 2).iter().map(|s| s.to_string()).collect();
        assert_eq!(g, ["1/1", "1/2", "2/1", "3/1", "3/2"]);
    }

    #[test]
    fn empty_table_gives_nothing() {
        let t = load_table("name,kind,payload,declared_class,tau\n".as_bytes()).unwrap();
        assert_eq!(scan(&t, 5, 5, 26).count(), 0);
    }

    #[test]
    fn torus_rows_are_always_excluded() {
        let t = load_table("name,kind,payload,declared_class,tau\nt,expr,\"T(2,5)\",,\n".as_bytes()).unwrap();
        let records: Vec<_> = scan(&t, 3, 1, 26).collect();
        assert_eq!(records.len(), 3);
        for r in records {
            let ScanRecord::Report(rep) = r else { panic!() };
            assert_eq!(rep.verdict, Verdict::CosmeticExcluded);
        }
    }

    #[test]
    fn scan_continues_past_bad_rows() {
        let t = load_table(TABLE.as_bytes()).unwrap();
        let records: Vec<_> = scan(&t, 2, 1, 26).collect();
        // 3 good rows x 2 slopes + 2 diagnostics
        assert_eq!(records.len(), 8);
        assert_eq!(records.iter().filter(|r| matches!(r, ScanRecord::Diagnostic(_))).count(), 2);
    }
}
