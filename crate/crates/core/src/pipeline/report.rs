//! Obstruction reports for a pair of slopes on one knot.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::invariants::{alexander, delta2, jones_of, Unavailable};
use crate::classifier::{cosmetic_pair_verdict, KnotExpr, LeafClass, PairVerdict};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::slope::Slope;

pub const JONES_CONVENTION: &str = "V(t) = (-A^3)^(-w) <D> with t = A^-4; positive trefoil V = t + t^3 - t^4";
pub const CONGRUENCE_CONVENTION: &str = "n^2 = -1 is read mod |m|; m = +-1 satisfies it vacuously";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Criterion {
    KnotComplement,
    NiWuOpposite,
    NiWuCongruence,
    NiWuTau,
    BoyerLines,
    IchiharaWu,
    TorusKnotTheorem,
    CableMainTheorem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Excludes,
    Passes,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub criterion: Criterion,
    pub outcome: Outcome,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub evidence: Option<PairVerdict>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    CosmeticExcluded,
    Unresolved,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub jones: String,
    pub congruence: String,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { jones: JONES_CONVENTION.into(), congruence: CONGRUENCE_CONVENTION.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub knot: KnotExpr,
    pub pair: (Slope, Slope),
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    pub conventions: Conventions,
}

/// Invariants of one knot, computed once and shared across slope pairs.
#[derive(Clone, Debug)]
pub struct KnotInvariants {
    pub alexander: std::result::Result<LaurentPoly, Error>,
    pub delta2: std::result::Result<BigInt, Error>,
    pub jones: std::result::Result<LaurentPoly, Unavailable>,
}

impl KnotInvariants {
    /// Fails only on malformed data; missing data is recorded in the fields.
    pub fn compute(k: &KnotExpr, cap: usize) -> Result<Self> {
        let alexander = alexander(k);
        let delta2 = delta2(k);
        let jones = jones_of(k, cap)?;
        Ok(KnotInvariants { alexander, delta2, jones })
    }

    pub fn v3(&self) -> std::result::Result<BigInt, Unavailable> {
        self.jones.as_ref().map(|v| v.derivative_at_one(3)).map_err(Clone::clone)
    }
}

/// Whether `k` is certainly not the unknot.
fn certainly_nontrivial(k: &KnotExpr, inv: &KnotInvariants) -> bool {
    match k {
        KnotExpr::Unknot => false,
        KnotExpr::Torus { .. } | KnotExpr::Cable { .. } => true,
        KnotExpr::Leaf(leaf) => {
            !matches!(leaf.class, LeafClass::Unknown)
                || inv.alexander.as_ref().is_ok_and(|a| !a.is_one())
                || inv.jones.as_ref().is_ok_and(|v| !v.is_one())
        }
    }
}

/// `n² ≡ -1 (mod |m|)` for `r = m/n`.
pub fn ni_wu_congruence(r: &Slope) -> bool {
    let (m, n) = (r.numerator().abs(), r.denominator());
    if m.is_one() {
        return true;
    }
    if m.is_zero() {
        return false;
    }
    (n * n + BigInt::one()).mod_floor(&m).is_zero()
}

fn check(criterion: Criterion, outcome: Outcome, detail: impl Into<String>) -> Check {
    Check { criterion, outcome, detail: detail.into(), evidence: None }
}

/// Runs every criterion on `S^3_r(k)` versus `S^3_s(k)`.
pub fn obstruction_report(k: &KnotExpr, r: &Slope, s: &Slope, tau: Option<i64>, cap: usize) -> Result<ObstructionReport> {
    let inv = KnotInvariants::compute(k, cap)?;
    report_with(k, &inv, r, s, tau)
}

/// [`obstruction_report`] with precomputed invariants.
pub fn report_with(k: &KnotExpr, inv: &KnotInvariants, r: &Slope, s: &Slope, tau: Option<i64>) -> Result<ObstructionReport> {
    use Outcome::*;
    if r == s {
        return Err(Error::InvalidQuery(format!("r = s = {r}")));
    }
    let tau = tau.or_else(|| k.tau());
    let nontrivial = certainly_nontrivial(k, inv);
    let gate = "needs a knot known to be nontrivial";
    let mut checks = Vec::with_capacity(8);

    checks.push(if !nontrivial {
        check(Criterion::KnotComplement, NotApplicable, gate)
    } else if r.is_infinite() || s.is_infinite() {
        check(Criterion::KnotComplement, Excludes, "S^3_inf = S^3 and no other surgery on a nontrivial knot gives S^3")
    } else {
        check(Criterion::KnotComplement, Passes, "both slopes finite")
    });

    checks.push(if !nontrivial {
        check(Criterion::NiWuOpposite, NotApplicable, gate)
    } else if *s != r.negate() {
        check(Criterion::NiWuOpposite, Excludes, format!("{s} != -({r})"))
    } else {
        check(Criterion::NiWuOpposite, Passes, format!("{s} = -({r})"))
    });

    let finite: Vec<&Slope> = [r, s].into_iter().filter(|x| !x.is_infinite()).collect();
    checks.push(if !nontrivial {
        check(Criterion::NiWuCongruence, NotApplicable, gate)
    } else if finite.is_empty() {
        check(Criterion::NiWuCongruence, NotApplicable, "no finite slope")
    } else {
        let failing: Vec<String> = finite.iter().filter(|x| !ni_wu_congruence(x)).map(|x| x.to_string()).collect();
        if failing.is_empty() {
            check(Criterion::NiWuCongruence, Passes, "n^2 = -1 mod |m| holds")
        } else {
            check(Criterion::NiWuCongruence, Excludes, format!("n^2 != -1 mod |m| for {}", failing.join(", ")))
        }
    });

    checks.push(match (nontrivial, tau) {
        (false, _) => check(Criterion::NiWuTau, NotApplicable, gate),
        (true, None) => check(Criterion::NiWuTau, NotApplicable, "tau not supplied"),
        (true, Some(0)) => check(Criterion::NiWuTau, Passes, "tau = 0"),
        (true, Some(t)) => check(Criterion::NiWuTau, Excludes, format!("tau = {t} != 0")),
    });

    checks.push(match &inv.delta2 {
        Ok(d) if !d.is_zero() => check(Criterion::BoyerLines, Excludes, format!("Delta''(1) = {d}")),
        Ok(d) => check(Criterion::BoyerLines, Passes, format!("Delta''(1) = {d}")),
        Err(e) => check(Criterion::BoyerLines, NotApplicable, e.to_string()),
    });

    checks.push(match inv.v3() {
        Ok(v) if !v.is_zero() => check(Criterion::IchiharaWu, Excludes, format!("V'''(1) = {v}")),
        Ok(v) => check(Criterion::IchiharaWu, Passes, format!("V'''(1) = {v}")),
        Err(u) => check(Criterion::IchiharaWu, NotApplicable, format!("V'''(1) unavailable: {u}")),
    });

    checks.push(match k.as_torus() {
        Some((a, b)) => check(Criterion::TorusKnotTheorem, Excludes, format!("T({a},{b}) is a torus knot")),
        None => check(Criterion::TorusKnotTheorem, NotApplicable, "not a torus knot"),
    });

    checks.push(match k.as_proper_cable() {
        Some((params, _)) => {
            let mut c = check(
                Criterion::CableMainTheorem,
                Excludes,
                format!("cable with winding number {} >= 2", params.q()),
            );
            // constructive evidence for the opposite-slope pair
            if *s == r.negate() {
                match cosmetic_pair_verdict(k, r) {
                    Ok(pv) => c.evidence = Some(pv),
                    Err(e) => c.detail.push_str(&format!("; no descriptor evidence: {e}")),
                }
            }
            c
        }
        None => check(Criterion::CableMainTheorem, NotApplicable, "not a cable of a nontrivial knot"),
    });

    let verdict = if checks.iter().any(|c| c.outcome == Excludes) { Verdict::CosmeticExcluded } else { Verdict::Unresolved };
    Ok(ObstructionReport {
        knot: k.clone(),
        pair: (r.clone(), s.clone()),
        checks,
        verdict,
        conventions: Conventions::default(),
    })
}
