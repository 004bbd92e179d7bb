//! Symbolic descriptors for surgered manifolds and the pieces of their JSJ
//! decompositions, with sound but incomplete distinguishability verdicts.
//!
//! Nothing here decides homeomorphism. [`distinguish`] only answers
//! `Distinct` when an invariant it can read off both descriptors differs:
//! reducibility, the number of JSJ tori, the multiset of JSJ pieces up to
//! Seifert data, or lens-space invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_str;
use crate::slope::Slope;

/// Geometry of the exterior of a declared leaf knot.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ExteriorClass {
    Hyperbolic,
    /// A satellite whose exterior has `jsj_tori` JSJ tori; its pieces are not modelled.
    Satellite { jsj_tori: u32 },
}

/// What one side of a gluing torus looks like near the torus.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "side", rename_all = "snake_case")]
pub enum FiberSide {
    /// Hyperbolic piece.
    Atoroidal,
    /// Seifert fibered piece whose regular fiber has this slope on the torus.
    Fibered { slope: Slope },
    /// Outermost piece of a declared satellite leaf: either hyperbolic or a
    /// planar-base Seifert piece with meridional fibers.
    AtoroidalOrMeridional,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GluingTorus {
    /// Inner side (the companion exterior) first, outer side second.
    pub sides: [FiberSide; 2],
    pub jsj: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ManifoldDescriptor {
    /// `L(p,q)`, with `0 <= q < p`.
    LensSpace {
        #[serde(with = "serde_str::bigint")]
        p: BigInt,
        #[serde(with = "serde_str::bigint")]
        q: BigInt,
    },
    ConnectedSum { summands: Vec<ManifoldDescriptor> },
    /// Seifert fibered piece: exceptional fiber multiplicities (all `>= 2`,
    /// sorted) and number of boundary tori.
    SfsPiece {
        #[serde(with = "serde_str::bigint_vec")]
        multiplicities: Vec<BigInt>,
        boundary_count: u32,
    },
    /// Exterior `E(K)` of a declared leaf knot.
    ExteriorAtom { knot: String, exterior: ExteriorClass },
    /// `S^3_s(K)` kept opaque. `jsj_tori` is `None` when the surgery could be toroidal.
    SurgeryAtom { knot: String, slope: Slope, jsj_tori: Option<u32> },
    /// Complement of a `(p,q)`-curve in a solid torus.
    CableSpace {
        #[serde(with = "serde_str::bigint")]
        p: BigInt,
        #[serde(with = "serde_str::bigint")]
        q: BigInt,
    },
    /// Exterior of the torus knot `T(a,b)`: a Seifert piece with fibers `|a|, |b|`.
    TorusExterior {
        #[serde(with = "serde_str::bigint")]
        a: BigInt,
        #[serde(with = "serde_str::bigint")]
        b: BigInt,
    },
    /// Pieces glued along tori; the gluing maps themselves are not recorded.
    GraphManifold { pieces: Vec<ManifoldDescriptor>, tori: Vec<GluingTorus> },
}

impl ManifoldDescriptor {
    /// `L(p,q)` with `q` reduced mod `p`. `p` is taken in absolute value and must be nonzero.
    pub fn lens(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() {
            return Err(Error::InvalidQuery("L(0,q) is not a lens space".into()));
        }
        let (p, q) = if p.is_negative() { (-p, -q) } else { (p, q) };
        let q = q.mod_floor(&p);
        Ok(ManifoldDescriptor::LensSpace { p, q })
    }

    /// Multiplicity-one entries are dropped; the rest are stored as sorted absolute values.
    pub fn sfs(multiplicities: impl IntoIterator<Item = BigInt>, boundary_count: u32) -> Self {
        let mut m: Vec<BigInt> = multiplicities.into_iter().map(|x| x.abs()).filter(|x| *x > BigInt::one()).collect();
        m.sort();
        ManifoldDescriptor::SfsPiece { multiplicities: m, boundary_count }
    }

    /// Flattens nested sums and sorts the summands.
    pub fn connected_sum(summands: impl IntoIterator<Item = ManifoldDescriptor>) -> Self {
        let mut out = Vec::new();
        for s in summands {
            match s {
                ManifoldDescriptor::ConnectedSum { summands } => out.extend(summands),
                other => out.push(other),
            }
        }
        out.sort();
        ManifoldDescriptor::ConnectedSum { summands: out }
    }

    /// Flattens nested graph manifolds (keeping their tori) and sorts pieces and tori.
    pub fn graph(pieces: impl IntoIterator<Item = ManifoldDescriptor>, tori: impl IntoIterator<Item = GluingTorus>) -> Self {
        let mut out = Vec::new();
        let mut all_tori: Vec<GluingTorus> = tori.into_iter().collect();
        for p in pieces {
            match p {
                ManifoldDescriptor::GraphManifold { pieces, tori } => {
                    out.extend(pieces);
                    all_tori.extend(tori);
                }
                other => out.push(other),
            }
        }
        out.sort();
        all_tori.sort();
        ManifoldDescriptor::GraphManifold { pieces: out, tori: all_tori }
    }

    /// `Some(true)` if certainly reducible, `Some(false)` if certainly
    /// irreducible, `None` if this descriptor does not say.
    pub fn reducible(&self) -> Option<bool> {
        use ManifoldDescriptor::*;
        match self {
            ConnectedSum { summands } => Some(summands.len() >= 2),
            // Reducible surgeries on nontrivial knots have integral slopes.
            SurgeryAtom { slope, .. } => (!slope.is_integral()).then_some(false),
            _ => Some(false),
        }
    }
}

/// Why two descriptors were told apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    Reducibility,
    JsjTorusCount,
    FiberMultiplicities,
    LensInvariants,
    AtomMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "reason", rename_all = "snake_case")]
pub enum DistinguishVerdict {
    Distinct(Reason),
    NotDistinguished,
}

impl DistinguishVerdict {
    pub fn is_distinct(&self) -> bool {
        matches!(self, DistinguishVerdict::Distinct(_))
    }

    pub fn reason(&self) -> Option<Reason> {
        match self {
            DistinguishVerdict::Distinct(r) => Some(*r),
            DistinguishVerdict::NotDistinguished => None,
        }
    }
}

/// Oriented lens-space criterion: `p1 = p2` and `q1 ≡ q2` or `q1·q2 ≡ 1 (mod p)`.
///
/// Non-lens descriptors give `false`.
pub fn lens_oriented_homeo(l1: &ManifoldDescriptor, l2: &ManifoldDescriptor) -> bool {
    match (l1, l2) {
        (ManifoldDescriptor::LensSpace { p: p1, q: q1 }, ManifoldDescriptor::LensSpace { p: p2, q: q2 }) => {
            p1 == p2 && ((q1 - q2).mod_floor(p1).is_zero() || (q1 * q2 - BigInt::one()).mod_floor(p1).is_zero())
        }
        _ => false,
    }
}

/// Homeomorphism up to either orientation: `q1 ≡ ±q2^{±1} (mod p)`.
fn lens_unoriented_homeo(p: &BigInt, q1: &BigInt, q2: &BigInt) -> bool {
    let zero = |x: BigInt| x.mod_floor(p).is_zero();
    zero(q1 - q2) || zero(q1 + q2) || zero(q1 * q2 - BigInt::one()) || zero(q1 * q2 + BigInt::one())
}

/// Number of JSJ tori recorded in a closed-manifold descriptor.
pub fn jsj_torus_count(d: &ManifoldDescriptor) -> Result<u32> {
    use ManifoldDescriptor::*;
    Ok(match d {
        LensSpace { .. } | SfsPiece { .. } | CableSpace { .. } | TorusExterior { .. } => 0,
        ExteriorAtom { exterior: ExteriorClass::Hyperbolic, .. } => 0,
        ExteriorAtom { exterior: ExteriorClass::Satellite { jsj_tori }, .. } => *jsj_tori,
        SurgeryAtom { jsj_tori: Some(k), .. } => *k,
        SurgeryAtom { knot, slope, jsj_tori: None } => {
            return Err(Error::UnannotatedDescriptor(format!("S^3_{slope}({knot}) may be toroidal")))
        }
        ConnectedSum { summands } => summands.iter().map(jsj_torus_count).sum::<Result<u32>>()?,
        GraphManifold { pieces, tori } => {
            pieces.iter().map(jsj_torus_count).sum::<Result<u32>>()? + tori.iter().filter(|t| t.jsj).count() as u32
        }
    })
}

// Equivalence class of a JSJ piece under "could be homeomorphic".
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum PieceKey {
    Seifert(Vec<BigInt>, u32),
    Hyperbolic,
}

fn piece_key(d: &ManifoldDescriptor) -> Option<PieceKey> {
    use ManifoldDescriptor::*;
    match d {
        SfsPiece { multiplicities, boundary_count } => Some(PieceKey::Seifert(multiplicities.clone(), *boundary_count)),
        CableSpace { q, .. } => Some(PieceKey::Seifert(vec![q.abs()], 2)),
        TorusExterior { a, b } => {
            let mut m = vec![a.abs(), b.abs()];
            m.sort();
            Some(PieceKey::Seifert(m, 1))
        }
        ExteriorAtom { exterior: ExteriorClass::Hyperbolic, .. } => Some(PieceKey::Hyperbolic),
        _ => None,
    }
}

fn compare_pieces(a: &[ManifoldDescriptor], b: &[ManifoldDescriptor]) -> DistinguishVerdict {
    let (Some(mut ka), Some(mut kb)) = (
        a.iter().map(piece_key).collect::<Option<Vec<_>>>(),
        b.iter().map(piece_key).collect::<Option<Vec<_>>>(),
    ) else {
        return DistinguishVerdict::NotDistinguished;
    };
    ka.sort();
    kb.sort();
    if ka == kb {
        return DistinguishVerdict::NotDistinguished;
    }
    // multiset difference, both ways
    let (mut i, mut j) = (0, 0);
    let mut residual = Vec::new();
    while i < ka.len() || j < kb.len() {
        match (ka.get(i), kb.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                residual.push(x);
                i += 1;
            }
            (Some(_), Some(y)) => {
                residual.push(y);
                j += 1;
            }
            (Some(x), None) => {
                residual.push(x);
                i += 1;
            }
            (None, Some(y)) => {
                residual.push(y);
                j += 1;
            }
            (None, None) => break,
        }
    }
    if residual.iter().all(|k| matches!(k, PieceKey::Seifert(..))) {
        DistinguishVerdict::Distinct(Reason::FiberMultiplicities)
    } else {
        DistinguishVerdict::Distinct(Reason::AtomMismatch)
    }
}

fn all_jsj(d: &ManifoldDescriptor) -> bool {
    matches!(d, ManifoldDescriptor::GraphManifold { tori, .. } if tori.iter().all(|t| t.jsj))
}

fn compare_summands(a: &[ManifoldDescriptor], b: &[ManifoldDescriptor]) -> DistinguishVerdict {
    // Prime decompositions are unique, but only if every summand is known prime.
    let prime = |d: &ManifoldDescriptor| d.reducible() == Some(false);
    if a.len() != b.len() || !a.iter().chain(b).all(prime) {
        return DistinguishVerdict::NotDistinguished;
    }
    let verdicts: Vec<Vec<DistinguishVerdict>> = a.iter().map(|x| b.iter().map(|y| distinguish(x, y)).collect()).collect();
    let mut matched_b = vec![None; b.len()];
    for i in 0..a.len() {
        let mut seen = vec![false; b.len()];
        if !augment(i, &verdicts, &mut seen, &mut matched_b) {
            let reason = verdicts.iter().flatten().filter_map(|v| v.reason()).min().unwrap_or(Reason::AtomMismatch);
            return DistinguishVerdict::Distinct(reason);
        }
    }
    DistinguishVerdict::NotDistinguished
}

// Kuhn's augmenting path step for the "not distinguished" relation.
fn augment(i: usize, verdicts: &[Vec<DistinguishVerdict>], seen: &mut [bool], matched_b: &mut [Option<usize>]) -> bool {
    for j in 0..matched_b.len() {
        if verdicts[i][j].is_distinct() || seen[j] {
            continue;
        }
        seen[j] = true;
        if matched_b[j].is_none_or(|k| augment(k, verdicts, seen, matched_b)) {
            matched_b[j] = Some(i);
            return true;
        }
    }
    false
}

/// Sound comparison: `Distinct` only when an invariant visible in both
/// descriptors differs. Symmetric, and `NotDistinguished` on equal inputs.
pub fn distinguish(d1: &ManifoldDescriptor, d2: &ManifoldDescriptor) -> DistinguishVerdict {
    use ManifoldDescriptor::*;
    if d1 == d2 {
        return DistinguishVerdict::NotDistinguished;
    }
    if let (Some(r1), Some(r2)) = (d1.reducible(), d2.reducible()) {
        if r1 != r2 {
            return DistinguishVerdict::Distinct(Reason::Reducibility);
        }
    }
    if let (Ok(c1), Ok(c2)) = (jsj_torus_count(d1), jsj_torus_count(d2)) {
        if c1 != c2 {
            return DistinguishVerdict::Distinct(Reason::JsjTorusCount);
        }
    }
    match (d1, d2) {
        (GraphManifold { pieces: a, .. }, GraphManifold { pieces: b, .. }) if all_jsj(d1) && all_jsj(d2) => {
            compare_pieces(a, b)
        }
        (LensSpace { p: p1, q: q1 }, LensSpace { p: p2, q: q2 }) => {
            if p1 != p2 || !lens_unoriented_homeo(p1, q1, q2) {
                DistinguishVerdict::Distinct(Reason::LensInvariants)
            } else {
                DistinguishVerdict::NotDistinguished
            }
        }
        (ConnectedSum { summands: a }, ConnectedSum { summands: b }) => compare_summands(a, b),
        _ if piece_key(d1).is_some() && piece_key(d2).is_some() => compare_pieces(std::slice::from_ref(d1), std::slice::from_ref(d2)),
        _ => DistinguishVerdict::NotDistinguished,
    }
}

impl fmt::Display for ManifoldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ManifoldDescriptor::*;
        let join = |xs: &[ManifoldDescriptor], sep: &str| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep);
        match self {
            LensSpace { p, q } => write!(f, "L({p},{q})"),
            ConnectedSum { summands } => write!(f, "{}", join(summands, " # ")),
            SfsPiece { multiplicities, boundary_count } => {
                let m: Vec<String> = multiplicities.iter().map(|x| x.to_string()).collect();
                write!(f, "SFS{{{}; {} boundary}}", m.join(","), boundary_count)
            }
            ExteriorAtom { knot, exterior: ExteriorClass::Hyperbolic } => write!(f, "E({knot})[hyperbolic]"),
            ExteriorAtom { knot, exterior: ExteriorClass::Satellite { jsj_tori } } => {
                write!(f, "E({knot})[satellite, {jsj_tori} tori]")
            }
            SurgeryAtom { knot, slope, .. } => write!(f, "S^3_{{{slope}}}({knot})"),
            CableSpace { p, q } => write!(f, "CS({p},{q})"),
            TorusExterior { a, b } => write!(f, "E(T({a},{b}))"),
            GraphManifold { pieces, tori } => {
                let jsj = tori.iter().filter(|t| t.jsj).count();
                write!(f, "Graph[{}; {}/{} tori JSJ]", join(pieces, " | "), jsj, tori.len())
            }
        }
    }
}
