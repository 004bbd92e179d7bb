//! Knot expressions: `U`, `T(a,b)`, `C(p,q; expr)`, `K(name)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// What the user declared about a leaf knot's exterior.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum LeafClass {
    Hyperbolic,
    /// Satellite (not a cable) whose exterior has this many JSJ tori.
    Satellite { jsj_tori: u32 },
    #[default]
    Unknown,
}

impl FromStr for LeafClass {
    type Err = Error;

    /// `hyperbolic`, `unknown` (or blank), `satellite:N` with `N >= 1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "" | "unknown" => Ok(LeafClass::Unknown),
            "hyperbolic" => Ok(LeafClass::Hyperbolic),
            _ => {
                let n = s
                    .strip_prefix("satellite:")
                    .and_then(|n| n.trim().parse::<u32>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::parse("leaf class", format!("expected hyperbolic, unknown or satellite:N, got `{s}`")))?;
                Ok(LeafClass::Satellite { jsj_tori: n })
            }
        }
    }
}

impl fmt::Display for LeafClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeafClass::Hyperbolic => write!(f, "hyperbolic"),
            LeafClass::Satellite { jsj_tori } => write!(f, "satellite:{jsj_tori}"),
            LeafClass::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaf {
    pub name: String,
    pub diagram: Option<Diagram>,
    pub class: LeafClass,
    pub tau: Option<i64>,
}

impl Leaf {
    pub fn named(name: impl Into<String>) -> Self {
        Leaf { name: name.into(), diagram: None, class: LeafClass::Unknown, tau: None }
    }

    pub fn with_class(mut self, class: LeafClass) -> Self {
        self.class = class;
        self
    }

    pub fn with_diagram(mut self, diagram: Diagram) -> Self {
        self.diagram = Some(diagram);
        self
    }
}

/// Cable parameters `(p,q)` with `q >= 2` and `gcd(p,q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CableParams {
    p: i64,
    q: i64,
}

impl CableParams {
    /// `q <= -2` is flipped to `(-p,-q)`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let (p, q) = if q <= -2 { (-p, -q) } else { (p, q) };
        if q < 2 {
            return Err(Error::InvalidCable { p: p.to_string(), q: q.to_string(), msg: "|q| must be at least 2" });
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidCable { p: p.to_string(), q: q.to_string(), msg: "gcd(p,q) must be 1" });
        }
        Ok(CableParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotExpr {
    Unknot,
    /// `T(a,b)` with `|a|, |b| >= 2`, coprime, stored with `b > 0`.
    Torus { a: i64, b: i64 },
    Cable { params: CableParams, companion: Box<KnotExpr> },
    Leaf(Leaf),
}

impl KnotExpr {
    pub fn torus(a: i64, b: i64) -> Result<Self> {
        if a.abs() < 2 || b.abs() < 2 {
            return Err(Error::TorusUnitParameter(a.to_string(), b.to_string()));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::InvalidCable { p: a.to_string(), q: b.to_string(), msg: "gcd(a,b) must be 1" });
        }
        Ok(if b < 0 { KnotExpr::Torus { a: -a, b: -b } } else { KnotExpr::Torus { a, b } })
    }

    /// `C(p,q; U)` with `|p| = 1` is the unknot and is refused.
    pub fn cable(p: i64, q: i64, companion: KnotExpr) -> Result<Self> {
        let params = CableParams::new(p, q)?;
        if companion == KnotExpr::Unknot && params.p.abs() < 2 {
            return Err(Error::TorusUnitParameter(params.p.to_string(), params.q.to_string()));
        }
        Ok(KnotExpr::Cable { params, companion: Box::new(companion) })
    }

    pub fn leaf(leaf: Leaf) -> Self {
        KnotExpr::Leaf(leaf)
    }

    /// `T(a,b)` or `C(a,b; U)`, as `(a,b)` with `b >= 2`.
    pub fn as_torus(&self) -> Option<(i64, i64)> {
        match self {
            KnotExpr::Torus { a, b } => Some((*a, *b)),
            KnotExpr::Cable { params, companion } if **companion == KnotExpr::Unknot => Some((params.p, params.q)),
            _ => None,
        }
    }

    /// A cable whose companion is nontrivial.
    pub fn as_proper_cable(&self) -> Option<(CableParams, &KnotExpr)> {
        match self {
            KnotExpr::Cable { params, companion } if **companion != KnotExpr::Unknot => Some((*params, companion)),
            _ => None,
        }
    }

    /// `τ` as declared on a leaf; other nodes carry none.
    pub fn tau(&self) -> Option<i64> {
        match self {
            KnotExpr::Leaf(l) => l.tau,
            _ => None,
        }
    }

    /// Number of cable nodes above the innermost knot.
    pub fn cable_height(&self) -> usize {
        match self {
            KnotExpr::Cable { companion, .. } if **companion != KnotExpr::Unknot => 1 + companion.cable_height(),
            _ => 0,
        }
    }

    /// Mirror image; leaf diagrams are mirrored and leaf names get a `*`.
    pub fn mirror(&self) -> KnotExpr {
        match self {
            KnotExpr::Unknot => KnotExpr::Unknot,
            KnotExpr::Torus { a, b } => KnotExpr::Torus { a: -a, b: *b },
            KnotExpr::Cable { params, companion } => KnotExpr::Cable {
                params: CableParams { p: -params.p, q: params.q },
                companion: Box::new(companion.mirror()),
            },
            KnotExpr::Leaf(l) => {
                let name = match l.name.strip_suffix('*') {
                    Some(n) => n.to_string(),
                    None => format!("{}*", l.name),
                };
                KnotExpr::Leaf(Leaf {
                    name,
                    diagram: l.diagram.as_ref().map(Diagram::mirror),
                    class: l.class,
                    tau: l.tau.map(|t| -t),
                })
            }
        }
    }

    /// Sets the declared class of every leaf called `name`.
    pub fn declare(&mut self, name: &str, class: LeafClass) {
        match self {
            KnotExpr::Cable { companion, .. } => companion.declare(name, class),
            KnotExpr::Leaf(l) if l.name == name => l.class = class,
            _ => {}
        }
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "U"),
            KnotExpr::Torus { a, b } => write!(f, "T({a},{b})"),
            KnotExpr::Cable { params, companion } => write!(f, "C({},{}; {companion})", params.p, params.q),
            KnotExpr::Leaf(l) => write!(f, "K({})", l.name),
        }
    }
}

impl Serialize for KnotExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Deserialization has no table to resolve `K(name)` against; leaves come back bare.
impl<'de> Deserialize<'de> for KnotExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_knot_expr(&s).map_err(serde::de::Error::custom)
    }
}

/// Named knots that `K(name)` resolves against.
#[derive(Clone, Debug, Default)]
pub struct KnotTable {
    entries: BTreeMap<String, KnotExpr>,
}

impl KnotTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, knot: KnotExpr) {
        self.entries.insert(name.into(), knot);
    }

    pub fn get(&self, name: &str) -> Option<&KnotExpr> {
        self.entries.get(name)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Parses without a table: every `K(name)` becomes a bare leaf of unknown class.
pub fn parse_knot_expr(text: &str) -> Result<KnotExpr> {
    parse_knot_expr_with(text, &KnotTable::new())
}

/// Parses, resolving `K(name)` against `table` when the name is present.
/// A bare `BR[...]` or `PD[...]` is accepted as an anonymous leaf.
pub fn parse_knot_expr_with(text: &str, table: &KnotTable) -> Result<KnotExpr> {
    let mut p = Parser { src: text, pos: 0, table };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

impl FromStr for KnotExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_knot_expr(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    table: &'a KnotTable,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::parse("knot expression", format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let r = self.rest();
        let len = r
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
            .count();
        let v = r[..len].parse().map_err(|_| self.error("expected an integer"))?;
        self.pos += len;
        Ok(v)
    }

    fn expr(&mut self) -> Result<KnotExpr> {
        self.skip_ws();
        if self.rest().starts_with("BR[") || self.rest().starts_with("PD[") {
            return self.diagram_leaf();
        }
        if self.eat("U") {
            return Ok(KnotExpr::Unknot);
        }
        if self.eat("T(") {
            let a = self.int()?;
            self.expect(",")?;
            let b = self.int()?;
            self.expect(")")?;
            return KnotExpr::torus(a, b);
        }
        if self.eat("C(") {
            let p = self.int()?;
            self.expect(",")?;
            let q = self.int()?;
            self.expect(";")?;
            let companion = self.expr()?;
            self.expect(")")?;
            return KnotExpr::cable(p, q, companion);
        }
        if self.eat("K(") {
            self.skip_ws();
            if self.rest().starts_with("BR[") || self.rest().starts_with("PD[") {
                // the printed form of an inline leaf
                let leaf = self.diagram_leaf()?;
                self.expect(")")?;
                return Ok(leaf);
            }
            let r = self.rest();
            let end = r.find(')').ok_or_else(|| self.error("unclosed K("))?;
            let name = r[..end].trim().to_string();
            if name.is_empty() {
                return Err(self.error("empty knot name"));
            }
            self.pos += end + 1;
            return Ok(match self.table.get(&name) {
                Some(k) => k.clone(),
                None => KnotExpr::Leaf(Leaf::named(name)),
            });
        }
        Err(self.error("expected U, T(a,b), C(p,q; expr), K(name), BR[...] or PD[...]"))
    }

    fn diagram_leaf(&mut self) -> Result<KnotExpr> {
        let r = self.rest();
        let mut depth = 0usize;
        let mut end = None;
        for (i, c) in r.char_indices() {
            match c {
                '[' => depth += 1,
                ']' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(i + 1);
                        break;
                    }
                }
                _ => {}
            }
        }
        let end = end.ok_or_else(|| self.error("unbalanced brackets"))?;
        let text = r[..end].to_string();
        let diagram = Diagram::parse(&text)?;
        self.pos += end;
        Ok(KnotExpr::Leaf(Leaf::named(text).with_diagram(diagram)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let e = parse_knot_expr("C(3,2; U)").unwrap();
        assert_eq!(e, KnotExpr::Cable { params: CableParams::new(3, 2).unwrap(), companion: Box::new(KnotExpr::Unknot) });
        assert_eq!(e.as_torus(), Some((3, 2)));
        let e = parse_knot_expr("C(1,2; T(2,3))").unwrap();
        assert_eq!(e.to_string(), "C(1,2; T(2,3))");
        assert_eq!(e.cable_height(), 1);
        assert!(matches!(parse_knot_expr("C(4,2; U)"), Err(Error::InvalidCable { .. })));
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(matches!(parse_knot_expr("T(1,5)"), Err(Error::TorusUnitParameter(..))));
        assert!(matches!(parse_knot_expr("C(1,2; U)"), Err(Error::TorusUnitParameter(..))));
        assert!(matches!(parse_knot_expr("C(1,1; T(2,3))"), Err(Error::InvalidCable { .. })));
        assert!(matches!(parse_knot_expr("C(1,2; T(2,3)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_knot_expr("T(2,3) x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_knot_expr("K()"), Err(Error::Parse { .. })));
        assert!(matches!(parse_knot_expr("BR[2; 1,1]"), Err(Error::MultiComponent(2))));
    }

    #[test]
    fn negative_q_is_flipped() {
        let e = parse_knot_expr("C(3,-2; K(a))").unwrap();
        assert_eq!(e.as_proper_cable().unwrap().0, CableParams::new(-3, 2).unwrap());
        assert_eq!(parse_knot_expr("T(-2,-3)").unwrap(), KnotExpr::Torus { a: 2, b: 3 });
    }

    #[test]
    fn names_resolve_against_the_table() {
        let mut table = KnotTable::new();
        let leaf = Leaf::named("k1").with_class(LeafClass::Hyperbolic);
        table.insert("k1", KnotExpr::Leaf(leaf.clone()));
        table.insert("tref", parse_knot_expr("T(2,3)").unwrap());
        let e = parse_knot_expr_with("C(1,2; C(1,3; K(k1)))", &table).unwrap();
        assert_eq!(e.cable_height(), 2);
        assert_eq!(parse_knot_expr_with("K(tref)", &table).unwrap().as_torus(), Some((2, 3)));
        assert_eq!(parse_knot_expr("K(k1)").unwrap(), KnotExpr::Leaf(Leaf::named("k1")));
    }

    #[test]
    fn inline_diagrams_and_round_trip() {
        let e = parse_knot_expr("C(1,2; BR[3; 1,-2,1,-2])").unwrap();
        let (_, companion) = e.as_proper_cable().unwrap();
        assert!(matches!(companion, KnotExpr::Leaf(Leaf { diagram: Some(_), .. })));
        for s in ["U", "T(2,3)", "C(-1,2; C(3,2; K(x)))", "T(-3,4)"] {
            assert_eq!(parse_knot_expr(s).unwrap().to_string(), s);
        }
        for s in ["C(1,2; BR[3; 1,-2,1,-2])", "PD[X(1,5,2,4), X(3,1,4,6), X(5,3,6,2)]"] {
            let e = parse_knot_expr(s).unwrap();
            assert_eq!(parse_knot_expr(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn leaf_classes() {
        assert_eq!("hyperbolic".parse::<LeafClass>().unwrap(), LeafClass::Hyperbolic);
        assert_eq!("".parse::<LeafClass>().unwrap(), LeafClass::Unknown);
        assert_eq!("satellite:2".parse::<LeafClass>().unwrap(), LeafClass::Satellite { jsj_tori: 2 });
        assert!("satellite:0".parse::<LeafClass>().is_err());
        assert!("composite".parse::<LeafClass>().is_err());
    }

    #[test]
    fn mirror_is_an_involution() {
        let e = parse_knot_expr("C(3,2; C(1,3; BR[2; 1,1,1]))").unwrap();
        assert_eq!(e.mirror().mirror(), e);
        assert_eq!(parse_knot_expr("T(2,3)").unwrap().mirror().to_string(), "T(-2,3)");
    }
}
