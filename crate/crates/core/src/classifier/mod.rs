//! Surgeries on cable knots.
//!
//! For `C = C(p,q; K)` with `q >= 2` and `r = m/n`, `S^3_r(C)` is
//!
//! 1. `S^3_{p/q}(K) # L(q,p)` when `r = pq`,
//! 2. `S^3_{m/(nq^2)}(K)` when `|m - npq| = 1`,
//! 3. `E(K)` glued to a Seifert piece with fibers of multiplicity `q` and
//!    `|npq - m|` otherwise.
//!
//! The descriptors built here carry the JSJ annotations that
//! [`crate::manifold::distinguish`] needs.

mod expr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use std::fmt;

pub use expr::{parse_knot_expr, parse_knot_expr_with, CableParams, KnotExpr, KnotTable, Leaf, LeafClass};

use crate::error::{Error, Result};
use crate::manifold::{distinguish, DistinguishVerdict, ExteriorClass, FiberSide, GluingTorus, ManifoldDescriptor};
use crate::slope::Slope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "Case1_ReducibleLens")]
    Case1ReducibleLens,
    #[serde(rename = "Case2_ReSurgery")]
    Case2ReSurgery,
    #[serde(rename = "Case3_GraphManifold")]
    Case3GraphManifold,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::Case1ReducibleLens => "Case1_ReducibleLens",
            CaseTag::Case2ReSurgery => "Case2_ReSurgery",
            CaseTag::Case3GraphManifold => "Case3_GraphManifold",
        })
    }
}

/// Which case of the classification `r` falls in for cable parameters `params`.
pub fn case_tag(params: CableParams, r: &Slope) -> Result<CaseTag> {
    if r.is_infinite() {
        return Err(Error::InfiniteSlope);
    }
    let (m, n) = (r.numerator(), r.denominator());
    let npq = n * BigInt::from(params.p()) * BigInt::from(params.q());
    Ok(if n.is_one() && *m == npq {
        CaseTag::Case1ReducibleLens
    } else if (m - &npq).abs().is_one() {
        CaseTag::Case2ReSurgery
    } else {
        CaseTag::Case3GraphManifold
    })
}

/// False iff both sides are Seifert fibered with the same fiber slope.
pub fn is_gluing_torus_jsj(inner: &FiberSide, outer: &FiberSide) -> bool {
    use FiberSide::*;
    match (inner, outer) {
        (Fibered { slope: s }, Fibered { slope: t }) => s != t,
        (AtoroidalOrMeridional, Fibered { slope }) | (Fibered { slope }, AtoroidalOrMeridional) => !slope.is_infinite(),
        _ => true,
    }
}

/// JSJ pieces of a knot exterior, the tori between them, and how the
/// outermost piece meets `∂N(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exterior {
    pub pieces: Vec<ManifoldDescriptor>,
    pub tori: Vec<GluingTorus>,
    /// `None` for the unknot, whose exterior is a solid torus.
    pub boundary: Option<FiberSide>,
}

fn slope_of(a: i64, b: i64) -> Slope {
    Slope::new(a, b).unwrap_or_else(|_| Slope::infinity())
}

/// Full exterior decomposition, with every internal torus annotated.
pub fn exterior(k: &KnotExpr) -> Result<Exterior> {
    if let Some((a, b)) = k.as_torus() {
        return Ok(Exterior {
            pieces: vec![ManifoldDescriptor::TorusExterior { a: a.into(), b: b.into() }],
            tori: Vec::new(),
            boundary: Some(FiberSide::Fibered { slope: Slope::integer(a * b) }),
        });
    }
    match k {
        KnotExpr::Unknot => Ok(Exterior { pieces: Vec::new(), tori: Vec::new(), boundary: None }),
        KnotExpr::Leaf(leaf) => {
            let (class, side) = match leaf.class {
                LeafClass::Hyperbolic => (ExteriorClass::Hyperbolic, FiberSide::Atoroidal),
                LeafClass::Satellite { jsj_tori } => (ExteriorClass::Satellite { jsj_tori }, FiberSide::AtoroidalOrMeridional),
                LeafClass::Unknown => {
                    return Err(Error::MissingAttribute { name: leaf.name.clone(), attribute: "declared_class" })
                }
            };
            Ok(Exterior {
                pieces: vec![ManifoldDescriptor::ExteriorAtom { knot: leaf.name.clone(), exterior: class }],
                tori: Vec::new(),
                boundary: Some(side),
            })
        }
        KnotExpr::Cable { params, companion } => {
            let mut inner = exterior(companion)?;
            let (p, q) = (params.p(), params.q());
            // cable-space fibers: p/q on the companion's boundary, pq/1 on the cable's
            let inner_side = inner.boundary.take().unwrap_or(FiberSide::Atoroidal);
            let outer_side = FiberSide::Fibered { slope: slope_of(p, q) };
            let jsj = is_gluing_torus_jsj(&inner_side, &outer_side);
            inner.tori.push(GluingTorus { sides: [inner_side, outer_side], jsj });
            inner.pieces.push(ManifoldDescriptor::CableSpace { p: p.into(), q: q.into() });
            inner.boundary = Some(FiberSide::Fibered { slope: Slope::integer(p * q) });
            Ok(inner)
        }
        KnotExpr::Torus { .. } => unreachable!("handled by as_torus"),
    }
}

/// The JSJ pieces of `E(k)`, sorted.
pub fn exterior_jsj(k: &KnotExpr) -> Result<Vec<ManifoldDescriptor>> {
    let mut pieces = exterior(k)?.pieces;
    pieces.sort();
    Ok(pieces)
}

/// Descriptor of `S^3_s(k)` for any knot expression.
///
/// With `strict`, a leaf of unknown class is an error; otherwise it becomes
/// a surgery atom without a JSJ count. Only the case-1 summand is built
/// non-strictly, since nothing downstream reads its JSJ count.
fn surgery_descriptor(k: &KnotExpr, s: &Slope, strict: bool) -> Result<ManifoldDescriptor> {
    if s.is_infinite() {
        return Err(Error::InfiniteSlope);
    }
    if let Some((a, b)) = k.as_torus() {
        let params = CableParams::new(a, b)?;
        return Ok(classify_cable_surgery(params, s, &KnotExpr::Unknot)?.1);
    }
    match k {
        // S^3_{m/n}(U) = L(m,n)
        KnotExpr::Unknot => ManifoldDescriptor::lens(s.numerator().clone(), s.denominator().clone()),
        KnotExpr::Cable { params, companion } => Ok(classify_cable_surgery(*params, s, companion)?.1),
        KnotExpr::Leaf(leaf) => {
            let n = s.denominator();
            let atoroidal = *n > BigInt::from(2);
            let jsj_tori = match leaf.class {
                LeafClass::Hyperbolic => atoroidal.then_some(0),
                LeafClass::Satellite { jsj_tori } => atoroidal.then_some(jsj_tori),
                LeafClass::Unknown if strict => {
                    return Err(Error::MissingAttribute { name: leaf.name.clone(), attribute: "declared_class" })
                }
                LeafClass::Unknown => None,
            };
            Ok(ManifoldDescriptor::SurgeryAtom { knot: leaf.name.clone(), slope: s.clone(), jsj_tori })
        }
        KnotExpr::Torus { .. } => unreachable!("handled by as_torus"),
    }
}

/// Three-case classification of `S^3_r(C(p,q; companion))`.
///
/// An unknot companion makes this a torus knot: case 2 gives a lens space,
/// and case 3 is kept as an opaque Seifert fibered surgery atom.
pub fn classify_cable_surgery(params: CableParams, r: &Slope, companion: &KnotExpr) -> Result<(CaseTag, ManifoldDescriptor)> {
    let tag = case_tag(params, r)?;
    let (p, q) = (BigInt::from(params.p()), BigInt::from(params.q()));
    let (m, n) = (r.numerator(), r.denominator());
    let descriptor = match tag {
        CaseTag::Case1ReducibleLens => {
            let inner = surgery_descriptor(companion, &Slope::new(p.clone(), q.clone())?, false)?;
            ManifoldDescriptor::connected_sum([inner, ManifoldDescriptor::lens(q.clone(), p.clone())?])
        }
        CaseTag::Case2ReSurgery => {
            let nq2 = n * &q * &q;
            assert!(m.gcd(&nq2).is_one(), "m/(nq^2) must already be reduced");
            surgery_descriptor(companion, &Slope::new(m.clone(), nq2)?, true)?
        }
        CaseTag::Case3GraphManifold => {
            let k = (n * &p * &q - m).abs();
            assert!(k > BigInt::one(), "|npq - m| <= 1 is not case 3");
            if *companion == KnotExpr::Unknot {
                let knot = KnotExpr::torus(params.p(), params.q())?.to_string();
                return Ok((tag, ManifoldDescriptor::SurgeryAtom { knot, slope: r.clone(), jsj_tori: Some(0) }));
            }
            let ext = exterior(companion)?;
            let sfs = ManifoldDescriptor::sfs([q.clone(), k], 1);
            // SFS_r fibers meet ∂N(companion) in the slope p/q
            let inner_side = ext.boundary.unwrap_or(FiberSide::Atoroidal);
            let outer_side = FiberSide::Fibered { slope: Slope::new(p, q)? };
            let jsj = is_gluing_torus_jsj(&inner_side, &outer_side);
            let torus = GluingTorus { sides: [inner_side, outer_side], jsj };
            ManifoldDescriptor::graph(ext.pieces.into_iter().chain([sfs]), ext.tori.into_iter().chain([torus]))
        }
    };
    Ok((tag, descriptor))
}

/// Annotated descriptor of `S^3_r(k)` for a cable `k` with nontrivial companion.
pub fn surgered_jsj(k: &KnotExpr, r: &Slope) -> Result<(CaseTag, ManifoldDescriptor)> {
    let (params, companion) = k.as_proper_cable().ok_or_else(|| Error::NotACable(k.to_string()))?;
    classify_cable_surgery(params, r, companion)
}

/// `S^3_r(k)` against `S^3_{-r}(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub r: Slope,
    pub case_r: CaseTag,
    pub case_neg: CaseTag,
    pub descriptor_r: ManifoldDescriptor,
    pub descriptor_neg: ManifoldDescriptor,
    pub verdict: DistinguishVerdict,
}

pub fn cosmetic_pair_verdict(k: &KnotExpr, r: &Slope) -> Result<PairVerdict> {
    if r.is_infinite() {
        return Err(Error::InfiniteSlope);
    }
    if r.is_zero() {
        return Err(Error::SlopesEqual);
    }
    if k.as_torus().is_some() {
        return Err(Error::TorusKnot(k.to_string()));
    }
    let neg = r.negate();
    let (case_r, descriptor_r) = surgered_jsj(k, r)?;
    let (case_neg, descriptor_neg) = surgered_jsj(k, &neg)?;
    let verdict = distinguish(&descriptor_r, &descriptor_neg);
    Ok(PairVerdict { r: r.clone(), case_r, case_neg, descriptor_r, descriptor_neg, verdict })
}
