//! `Δ`, `Δ''(1)`, `V` and `V'''(1)` for knot expressions.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::classifier::KnotExpr;
use crate::diagram::{alexander_fox, jones, BraidWord, Diagram, PDCode};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Normalized Alexander polynomial of `T(a,b)`:
/// `(t^{ab} - 1)(t - 1) / ((t^a - 1)(t^b - 1))`.
pub fn torus_alexander(a: i64, b: i64) -> Result<LaurentPoly> {
    let (a, b) = (a.abs(), b.abs());
    if a <= 1 || b <= 1 {
        return Ok(LaurentPoly::one());
    }
    let one = LaurentPoly::one();
    let tm = |k: i64| &LaurentPoly::monomial(1, k) - &one;
    let num = &tm(a * b) * &tm(1);
    let den = &tm(a) * &tm(b);
    num.div_exact(&den)?.normalize_alexander()
}

/// `(a²-1)(b²-1)/12`.
pub fn torus_delta2(a: i64, b: i64) -> BigInt {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    let one = BigInt::from(1);
    (&a * &a - &one) * (&b * &b - &one) / 12
}

/// Normalized Alexander polynomial: Fox calculus at diagram leaves, the closed
/// torus formula at torus nodes, `Δ_K(t^q)·Δ_{T(p,q)}(t)` at cable nodes.
pub fn alexander(k: &KnotExpr) -> Result<LaurentPoly> {
    if let Some((a, b)) = k.as_torus() {
        return torus_alexander(a, b);
    }
    match k {
        KnotExpr::Unknot => Ok(LaurentPoly::one()),
        KnotExpr::Cable { params, companion } => {
            let inner = alexander(companion)?.substitute_power(params.q())?;
            Ok(&inner * &torus_alexander(params.p(), params.q())?)
        }
        KnotExpr::Leaf(leaf) => match &leaf.diagram {
            Some(d) => alexander_fox(&d.to_pd()?),
            None => Err(Error::MissingAttribute { name: leaf.name.clone(), attribute: "diagram" }),
        },
        KnotExpr::Torus { .. } => unreachable!("handled by as_torus"),
    }
}

/// `Δ''_K(1)`.
pub fn delta2(k: &KnotExpr) -> Result<BigInt> {
    if let Some((a, b)) = k.as_torus() {
        return Ok(torus_delta2(a, b));
    }
    Ok(alexander(k)?.derivative_at_one(2))
}

/// A braid whose closure is `k`, when one can be built.
pub fn braid_of(k: &KnotExpr) -> Option<Result<BraidWord>> {
    if let Some((a, b)) = k.as_torus() {
        return Some(BraidWord::torus(a, b));
    }
    match k {
        KnotExpr::Unknot => Some(Ok(BraidWord::trivial())),
        KnotExpr::Cable { params, companion } => {
            braid_of(companion).map(|b| b.and_then(|b| b.cable(params.p(), params.q())))
        }
        KnotExpr::Leaf(leaf) => leaf.diagram.as_ref().and_then(Diagram::braid).cloned().map(Ok),
        KnotExpr::Torus { .. } => None,
    }
}

/// A diagram of `k`: a braid closure if possible, else a leaf's PD code.
pub fn diagram_of(k: &KnotExpr) -> Option<Result<PDCode>> {
    if let Some(b) = braid_of(k) {
        return Some(b.and_then(|b| b.to_pd()));
    }
    match k {
        KnotExpr::Leaf(leaf) => leaf.diagram.as_ref().map(Diagram::to_pd),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Unavailable {
    CrossingCap { crossings: usize, cap: usize },
    NoDiagram,
}

impl std::fmt::Display for Unavailable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Unavailable::CrossingCap { crossings, cap } => write!(f, "{crossings} crossings exceed the cap of {cap}"),
            Unavailable::NoDiagram => write!(f, "no diagram available"),
        }
    }
}

/// Jones polynomial of `k` from its diagram, if the diagram fits under `cap`.
pub fn jones_of(k: &KnotExpr, cap: usize) -> Result<std::result::Result<LaurentPoly, Unavailable>> {
    if let Some(b) = braid_of(k) {
        // the crossing count of a braid closure is the word length; check before building it
        let b = b?;
        if b.len() > cap {
            return Ok(Err(Unavailable::CrossingCap { crossings: b.len(), cap }));
        }
    }
    let Some(pd) = diagram_of(k) else {
        return Ok(Err(Unavailable::NoDiagram));
    };
    match jones(&pd?, cap) {
        Ok(v) => Ok(Ok(v)),
        Err(Error::ResourceLimit { crossings, cap }) => Ok(Err(Unavailable::CrossingCap { crossings, cap })),
        Err(e) => Err(e),
    }
}

/// `V'''_K(1)`, or why it could not be computed.
pub fn v3_check(k: &KnotExpr, cap: usize) -> Result<std::result::Result<BigInt, Unavailable>> {
    Ok(jones_of(k, cap)?.map(|v| v.derivative_at_one(3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::{parse_knot_expr, Leaf};
    use crate::diagram::DEFAULT_MAX_CROSSINGS;

    fn expr(s: &str) -> KnotExpr {
        parse_knot_expr(s).unwrap()
    }

    #[test]
    fn delta2_examples() {
        assert_eq!(delta2(&expr("T(2,3)")).unwrap(), BigInt::from(2));
        assert_eq!(delta2(&KnotExpr::Unknot).unwrap(), BigInt::from(0));
        let c = expr("C(1,2; T(2,3))");
        assert_eq!(alexander(&c).unwrap(), LaurentPoly::from_terms([(2, 1), (0, -1), (-2, 1)]));
        assert_eq!(delta2(&c).unwrap(), BigInt::from(8));
        // the same cable through braid cabling and Fox calculus
        let pd = braid_of(&c).unwrap().unwrap().to_pd().unwrap();
        assert_eq!(alexander_fox(&pd).unwrap().derivative_at_one(2), BigInt::from(8));
    }

    #[test]
    fn torus_formula_agrees_with_polynomial() {
        for (a, b) in [(2, 3), (2, 5), (3, 4), (-2, 7), (3, 5)] {
            assert_eq!(torus_alexander(a, b).unwrap().derivative_at_one(2), torus_delta2(a, b));
            let pd = BraidWord::torus(a, b).unwrap().to_pd().unwrap();
            assert_eq!(alexander_fox(&pd).unwrap(), torus_alexander(a, b).unwrap());
        }
    }

    #[test]
    fn v3_examples() {
        let cap = DEFAULT_MAX_CROSSINGS;
        assert_eq!(v3_check(&KnotExpr::Unknot, cap).unwrap(), Ok(BigInt::from(0)));
        // V = t + t^3 - t^4: V'''(1) = 0 + 6 - 24
        assert_eq!(v3_check(&expr("T(2,3)"), cap).unwrap(), Ok(BigInt::from(-18)));
        // V = t^-1 + t^-3 - t^-4: -6 - 60 + 120
        assert_eq!(v3_check(&expr("T(-2,3)"), cap).unwrap(), Ok(BigInt::from(54)));
        let big = expr("C(1,2; C(1,2; T(2,5)))");
        assert!(matches!(v3_check(&big, cap).unwrap(), Err(Unavailable::CrossingCap { .. })));
        assert_eq!(v3_check(&KnotExpr::Leaf(Leaf::named("x")), cap).unwrap(), Err(Unavailable::NoDiagram));
    }

    #[test]
    fn missing_leaf_data_is_an_error() {
        assert!(matches!(delta2(&expr("K(x)")), Err(Error::MissingAttribute { .. })));
    }
}
