//! Jones polynomial via the Kauffman bracket state sum.
//!
//! All `2^c` smoothings are enumerated depth-first over an undo-able
//! union-find, so each state costs a couple of unions rather than a fresh
//! loop count. The tally `(#A-smoothings, #loops) -> states` is turned into
//! the bracket at the end.

use num_bigint::BigInt;

use super::pd::PDCode;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

pub const DEFAULT_MAX_CROSSINGS: usize = 26;

/// Kauffman bracket `<D>` in the variable `A`, normalized so `<O> = 1`.
///
/// No crossing cap is applied here; callers go through [`jones`].
pub fn kauffman_bracket(pd: &PDCode) -> LaurentPoly {
    let c = pd.crossing_count();
    if c == 0 {
        return LaurentPoly::one();
    }
    let tally = StateTally::run(pd);
    // δ = -A^2 - A^-2
    let delta = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    let mut delta_pows = vec![LaurentPoly::one()];
    for _ in 1..=2 * c {
        let next = &delta_pows[delta_pows.len() - 1] * &delta;
        delta_pows.push(next);
    }
    let mut bracket = LaurentPoly::zero();
    for a in 0..=c {
        for loops in 1..=2 * c {
            let n = tally.count(a, loops);
            if n == 0 {
                continue;
            }
            let b = c - a;
            let term = delta_pows[loops - 1].shift(a as i64 - b as i64).scale(&BigInt::from(n));
            bracket += &term;
        }
    }
    bracket
}

/// Jones polynomial in `t = A^-4`, with `V(unknot) = 1`.
///
/// Diagrams above `max_crossings` are refused with a resource-limit error.
pub fn jones(pd: &PDCode, max_crossings: usize) -> Result<LaurentPoly> {
    let c = pd.crossing_count();
    if c > max_crossings {
        return Err(Error::ResourceLimit { crossings: c, cap: max_crossings });
    }
    let bracket = kauffman_bracket(pd);
    // (-A^3)^-w
    let w = pd.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let framed = bracket.shift(-3 * w).scale(&BigInt::from(sign));
    let mut v = LaurentPoly::zero();
    for (e, coeff) in framed.terms() {
        if e % 4 != 0 {
            return Err(Error::InvalidDiagram(format!("bracket exponent {e} is not a multiple of 4")));
        }
        v.add_term(-e / 4, coeff.clone());
    }
    Ok(v)
}

struct StateTally {
    nodes: usize,
    counts: Vec<u64>,
}

impl StateTally {
    fn run(pd: &PDCode) -> Self {
        // edge labels -> 0..2c
        let mut ids = std::collections::HashMap::new();
        let mut smoothings = Vec::with_capacity(pd.crossing_count());
        for &[a, b, c, d] in pd.crossings() {
            let mut id = |l: u32| {
                let n = ids.len() as u16;
                *ids.entry(l).or_insert(n)
            };
            let (a, b, c, d) = (id(a), id(b), id(c), id(d));
            // A joins (a,b)(c,d); B joins (a,d)(b,c)
            smoothings.push([[(a, b), (c, d)], [(a, d), (b, c)]]);
        }
        let nodes = ids.len();
        let crossings = smoothings.len();
        let mut search = Search {
            smoothings,
            uf: UndoUnionFind::new(nodes),
            counts: vec![0; (crossings + 1) * (nodes + 1)],
            nodes,
        };
        search.visit(0, 0, 0);
        StateTally { nodes, counts: search.counts }
    }

    fn count(&self, a: usize, loops: usize) -> u64 {
        self.counts[a * (self.nodes + 1) + loops]
    }
}

struct Search {
    smoothings: Vec<[[(u16, u16); 2]; 2]>,
    uf: UndoUnionFind,
    counts: Vec<u64>,
    nodes: usize,
}

impl Search {
    fn visit(&mut self, k: usize, a_count: usize, merges: usize) {
        if k == self.smoothings.len() {
            let loops = self.nodes - merges;
            self.counts[a_count * (self.nodes + 1) + loops] += 1;
            return;
        }
        for choice in 0..2 {
            let [(x1, y1), (x2, y2)] = self.smoothings[k][choice];
            let mark = self.uf.mark();
            let m = self.uf.union(x1 as usize, y1 as usize) as usize + self.uf.union(x2 as usize, y2 as usize) as usize;
            self.visit(k + 1, a_count + (choice == 0) as usize, merges + m);
            self.uf.rollback(mark);
        }
    }
}

struct UndoUnionFind {
    parent: Vec<u16>,
    rank: Vec<u8>,
    history: Vec<(u16, u16, bool)>,
}

impl UndoUnionFind {
    fn new(n: usize) -> Self {
        UndoUnionFind { parent: (0..n as u16).collect(), rank: vec![0; n], history: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        if self.rank[rx] < self.rank[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        let bumped = self.rank[rx] == self.rank[ry];
        if bumped {
            self.rank[rx] += 1;
        }
        self.parent[ry] = rx as u16;
        self.history.push((ry as u16, rx as u16, bumped));
        true
    }

    fn mark(&self) -> usize {
        self.history.len()
    }

    fn rollback(&mut self, mark: usize) {
        while self.history.len() > mark {
            let (child, root, bumped) = self.history.pop().unwrap_or((0, 0, false));
            self.parent[child as usize] = child;
            if bumped {
                self.rank[root as usize] -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::braid::BraidWord;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn braid_jones(s: &str) -> LaurentPoly {
        jones(&s.parse::<BraidWord>().unwrap().to_pd().unwrap(), DEFAULT_MAX_CROSSINGS).unwrap()
    }

    /// Literal state sum: one fresh loop count per state, bracket summed term by term.
    fn oracle_bracket(pd: &PDCode) -> LaurentPoly {
        let c = pd.crossing_count();
        let delta = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
        let mut total = LaurentPoly::zero();
        for state in 0u32..(1 << c) {
            let mut adj: std::collections::HashMap<u32, Vec<u32>> = Default::default();
            let mut a_count = 0i64;
            for (i, &[a, b, cc, d]) in pd.crossings().iter().enumerate() {
                let pairs = if state >> i & 1 == 0 {
                    a_count += 1;
                    [(a, b), (cc, d)]
                } else {
                    [(a, d), (b, cc)]
                };
                for (x, y) in pairs {
                    adj.entry(x).or_default().push(y);
                    adj.entry(y).or_default().push(x);
                }
            }
            let mut seen = std::collections::HashSet::new();
            let mut loops = 0u32;
            for &start in adj.keys() {
                if !seen.insert(start) {
                    continue;
                }
                loops += 1;
                let mut stack = vec![start];
                while let Some(x) = stack.pop() {
                    for &y in &adj[&x] {
                        if seen.insert(y) {
                            stack.push(y);
                        }
                    }
                }
            }
            let term = delta.pow(loops - 1).shift(a_count - (c as i64 - a_count));
            total += &term;
        }
        total
    }

    #[test]
    fn unknot_and_kinks() {
        assert_eq!(jones(&PDCode::unknot(), 26).unwrap(), LaurentPoly::one());
        assert_eq!(jones(&"PD[X(1,1,2,2)]".parse().unwrap(), 26).unwrap(), LaurentPoly::one());
        assert_eq!(jones(&"PD[X(1,2,2,1)]".parse().unwrap(), 26).unwrap(), LaurentPoly::one());
        assert_eq!(braid_jones("BR[3; 1,-2]"), LaurentPoly::one());
    }

    #[test]
    fn trefoils() {
        // positive crossings: V = t + t^3 - t^4
        let right = braid_jones("BR[2; 1,1,1]");
        assert_eq!(right, poly(&[(1, 1), (3, 1), (4, -1)]));
        assert_eq!(right.derivative_at_one(2), BigInt::from(-6));
        let left: PDCode = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]".parse().unwrap();
        assert_eq!(jones(&left, 26).unwrap(), poly(&[(-1, 1), (-3, 1), (-4, -1)]));
        assert_eq!(braid_jones("BR[2; -1,-1,-1]"), right.mirror());
    }

    #[test]
    fn figure_eight() {
        let expected = poly(&[(2, 1), (1, -1), (0, 1), (-1, -1), (-2, 1)]);
        let atlas: PDCode = "PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]".parse().unwrap();
        assert_eq!(jones(&atlas, 26).unwrap(), expected);
        assert_eq!(braid_jones("BR[3; 1,-2,1,-2]"), expected);
        assert_eq!(expected.eval_at_one(), BigInt::from(1));
        assert_eq!(expected.derivative_at_one(2), BigInt::from(6));
    }

    #[test]
    fn matches_literal_state_sum() {
        for s in ["BR[2; 1,1,1]", "BR[3; 1,-2,1,-2]", "BR[3; 1,1,2,-1,2]", "BR[4; 1,2,-3,2,1,3,-2]", "BR[3; -1,2,2,-1,-1,2]"] {
            let b: BraidWord = s.parse().unwrap();
            let Ok(pd) = b.to_pd() else { continue };
            assert_eq!(kauffman_bracket(&pd), oracle_bracket(&pd), "{s}");
        }
        let kink: PDCode = "PD[X(1,1,2,2)]".parse().unwrap();
        assert_eq!(kauffman_bracket(&kink), oracle_bracket(&kink));
    }

    #[test]
    fn cap_is_enforced() {
        let pd = BraidWord::torus(2, 7).unwrap().to_pd().unwrap();
        assert_eq!(jones(&pd, 6), Err(Error::ResourceLimit { crossings: 7, cap: 6 }));
        assert!(jones(&pd, 7).is_ok());
    }
}
