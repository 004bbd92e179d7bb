//! Acceptance run: one PASS/FAIL line per criterion, with wall time.
//!
//! Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use cosmetic_core::classifier::{case_tag, cosmetic_pair_verdict, parse_knot_expr, CableParams, CaseTag, KnotExpr, Leaf, LeafClass};
use cosmetic_core::diagram::{alexander_fox, jones, BraidWord, DEFAULT_MAX_CROSSINGS};
use cosmetic_core::manifold::{DistinguishVerdict, Reason};
use cosmetic_core::pipeline::{fit_cabling_constants, ni_wu_congruence, torus_alexander, torus_delta2, Unavailable};
use cosmetic_core::slope::Slope;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

const GRID_PARAMS: [(i64, i64); 8] = [(1, 2), (-1, 2), (1, 3), (-1, 3), (3, 2), (2, 3), (5, 2), (-3, 2)];

fn grid_slopes() -> Vec<Slope> {
    let mut out = Vec::new();
    for m in -40i64..=40 {
        for n in 1i64..=6 {
            if m.gcd(&n) == 1 {
                out.push(Slope::new(m, n).unwrap());
            }
        }
    }
    out
}

fn torus_formula() -> Outcome {
    for (p, q) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5)] {
        let closed = BigInt::from((p * p - 1) * (q * q - 1) / 12);
        let formula = torus_delta2(p, q);
        let fox = alexander_fox(&BraidWord::torus(p, q).map_err(|e| e.to_string())?.to_pd().map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .derivative_at_one(2);
        if formula != closed || fox != closed {
            return Err(format!("T({p},{q}): expected {closed}, formula {formula}, Fox {fox}"));
        }
    }
    Ok("5 torus knots, formula = Fox".into())
}

fn classification_grid() -> Outcome {
    let slopes = grid_slopes();
    let mut cells = 0;
    for (p, q) in GRID_PARAMS {
        let params = CableParams::new(p, q).map_err(|e| e.to_string())?;
        for r in &slopes {
            let (m, n) = (r.numerator(), r.denominator());
            let npq = n * BigInt::from(p * q);
            let c1 = n == &BigInt::from(1) && m == &BigInt::from(p * q);
            let c2 = (m - &npq).abs() == BigInt::from(1);
            let expected = match (c1, c2) {
                (true, false) => CaseTag::Case1ReducibleLens,
                (false, true) => CaseTag::Case2ReSurgery,
                (false, false) => CaseTag::Case3GraphManifold,
                (true, true) => return Err(format!("({p},{q}) {r}: two cases fire")),
            };
            let got = case_tag(params, r).map_err(|e| e.to_string())?;
            if got != expected {
                return Err(format!("({p},{q}) {r}: {got} but expected {expected}"));
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells"))
}

fn opposite_slope_grid() -> Outcome {
    let hyp = KnotExpr::Leaf(Leaf::named("h").with_class(LeafClass::Hyperbolic));
    let companions = [hyp.clone(), KnotExpr::torus(2, 3).unwrap(), KnotExpr::cable(1, 2, hyp).unwrap()];
    let slopes: Vec<Slope> = grid_slopes().into_iter().filter(|s| !s.is_zero()).collect();
    let mut cells = 0;
    for companion in &companions {
        for (p, q) in GRID_PARAMS {
            let k = KnotExpr::cable(p, q, companion.clone()).map_err(|e| e.to_string())?;
            for r in &slopes {
                let v = cosmetic_pair_verdict(&k, r).map_err(|e| format!("{k} at {r}: {e}"))?;
                let cases = [v.case_r, v.case_neg];
                let has = |c| cases.contains(&c);
                let expected = if has(CaseTag::Case1ReducibleLens) {
                    Reason::Reducibility
                } else if has(CaseTag::Case2ReSurgery) {
                    Reason::JsjTorusCount
                } else {
                    Reason::FiberMultiplicities
                };
                if v.verdict != DistinguishVerdict::Distinct(expected) {
                    return Err(format!("{k} at {r}: {:?}, cases {cases:?}", v.verdict));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells, all Distinct with the case-pair reason"))
}

fn congruence() -> Outcome {
    let mut checked = 0;
    for m in 1u64..=50 {
        // every residue x with x^2 = -1 mod m
        let roots: Vec<u64> = (0..m).filter(|x| (x * x + 1) % m == 0).collect();
        for n in 1u64..=2 * m + 1 {
            if m.gcd(&n) != 1 {
                continue;
            }
            let brute = roots.contains(&(n % m));
            for sign in [1i64, -1] {
                let r = Slope::new(sign * m as i64, n).unwrap();
                if ni_wu_congruence(&r) != brute {
                    return Err(format!("{r}: check {} but brute force {brute}", ni_wu_congruence(&r)));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} slopes"))
}

fn identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut done = 0;
    while done < 200 {
        let strands = rng.gen_range(2..=4usize);
        let len = rng.gen_range(1..=12usize);
        let letters = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let b = BraidWord::new(strands, letters).map_err(|e| e.to_string())?;
        if b.components() != 1 {
            continue;
        }
        let pd = b.to_pd().map_err(|e| e.to_string())?;
        let v = jones(&pd, DEFAULT_MAX_CROSSINGS).map_err(|e| e.to_string())?;
        let d2 = alexander_fox(&pd).map_err(|e| e.to_string())?.derivative_at_one(2);
        let (v0, v1, v2) = (v.eval_at_one(), v.derivative_at_one(1), v.derivative_at_one(2));
        if v0 != BigInt::from(1) || !v1.is_zero() || v2 != BigInt::from(-3) * &d2 {
            return Err(format!("{:?}: V(1)={v0} V'(1)={v1} V''(1)={v2} Δ''(1)={d2}", b.letters()));
        }
        done += 1;
    }
    Ok("200 closures".into())
}

fn cabling_fit() -> Outcome {
    let sample: Vec<KnotExpr> = ["U", "T(2,3)", "BR[3; 1,-2,1,-2]", "T(2,5)", "BR[3; -1,2,2,-1,-1,2]"]
        .iter()
        .map(|s| parse_knot_expr(s).unwrap())
        .collect();
    let mut parts = Vec::new();
    for eps in [1, -1] {
        let f = fit_cabling_constants(2, &sample, eps, DEFAULT_MAX_CROSSINGS).map_err(|e| format!("ε={eps}: {e}"))?;
        if !(f.residual.is_zero() && f.b.is_zero() && f.e.is_zero()) {
            return Err(format!("ε={eps}: b={} e={} residual={}", f.b, f.e, f.residual));
        }
        let skipped: Vec<String> = f
            .rows
            .iter()
            .filter_map(|r| match &r.jones {
                Err(u @ Unavailable::CrossingCap { .. }) => Some(format!("{} ({u})", r.knot)),
                _ => None,
            })
            .collect();
        let mut s = format!("ε={eps}: a={} c={} d={}", f.a, f.c, f.d);
        if !skipped.is_empty() {
            s.push_str(&format!(", V''' row left out for {}", skipped.join(", ")));
        }
        parts.push(s);
    }
    Ok(format!("b = e = 0, residual 0; {}", parts.join("; ")))
}

fn cabling_oracle() -> Outcome {
    let companions = [
        BraidWord::trivial(),
        BraidWord::new(2, vec![1, 1, 1]).unwrap(),
        BraidWord::new(2, vec![-1, -1, -1]).unwrap(),
        BraidWord::new(3, vec![1, -2, 1, -2]).unwrap(),
    ];
    for b in &companions {
        for (p, q) in [(1, 2), (-1, 2), (3, 2), (1, 3)] {
            let run = || -> cosmetic_core::error::Result<bool> {
                let lhs = alexander_fox(&b.cable(p, q)?.to_pd()?)?;
                let rhs = &alexander_fox(&b.to_pd()?)?.substitute_power(q)? * &torus_alexander(p, q)?;
                Ok(lhs == rhs)
            };
            match run() {
                Ok(true) => {}
                Ok(false) => return Err(format!("{:?} cabled ({p},{q}) disagrees", b.letters())),
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok("16 companion/parameter pairs".into())
}

fn intersection_anchor() -> Outcome {
    let inf = Slope::infinity();
    let mut n = 0;
    for p in -30i64..=30 {
        for q in 1i64..=30 {
            if p.gcd(&q) != 1 {
                continue;
            }
            let s = Slope::new(p, q).unwrap();
            if inf.intersection_number(&s) != BigInt::from(q) || s.intersection_number(&inf) != BigInt::from(q) {
                return Err(format!("Δ(∞,{s}) = {}", inf.intersection_number(&s)));
            }
            n += 1;
        }
    }
    Ok(format!("{n} slopes"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "torus-knot Δ''(1) formula", Duration::from_secs(5), torus_formula),
        (2, "classification grid", Duration::from_secs(10), classification_grid),
        (3, "opposite-slope distinguish grid", Duration::from_secs(30), opposite_slope_grid),
        (4, "congruence oracle", Duration::from_secs(1), congruence),
        (5, "cross-engine identities", Duration::from_secs(120), identities),
        (6, "cabling-constant fit", Duration::from_secs(300), cabling_fit),
        (7, "cabling oracle", Duration::from_secs(120), cabling_oracle),
        (8, "intersection-number anchor", Duration::from_secs(1), intersection_anchor),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (tag, detail) = match outcome {
            Ok(d) if elapsed <= budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {budget:?} budget")),
            Err(e) => ("FAIL", e),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} criterion {id} ({name}) [{:.3}s]: {detail}", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
