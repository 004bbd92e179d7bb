//! Planar diagram codes.
//!
//! `X(a,b,c,d)` lists the four edge labels at a crossing counterclockwise,
//! starting from the incoming under-strand, so the under-strand runs `a -> c`.
//! The over-strand direction is recovered by walking the knot.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Crossing = [u32; 4];

/// A validated single-component knot diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PDCode {
    crossings: Vec<Crossing>,
    signs: Vec<i8>,
}

impl PDCode {
    pub fn unknot() -> Self {
        PDCode { crossings: Vec::new(), signs: Vec::new() }
    }

    pub fn new(crossings: Vec<Crossing>) -> Result<Self> {
        let signs = orient(&crossings)?;
        Ok(PDCode { crossings, signs })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Crossing signs, `+1` or `-1`, aligned with [`PDCode::crossings`].
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| i64::from(s)).sum()
    }

    /// Swaps over and under at every crossing.
    pub fn mirror(&self) -> PDCode {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(&[a, b, c, d], &s)| if s > 0 { [d, a, b, c] } else { [b, c, d, a] })
            .collect();
        let signs = self.signs.iter().map(|s| -s).collect();
        PDCode { crossings, signs }
    }
}

/// Walks the diagram once, checking the labelling, planarity, and that it is
/// one component; returns the crossing signs.
fn orient(crossings: &[Crossing]) -> Result<Vec<i8>> {
    let n = crossings.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut occurrences: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (ci, x) in crossings.iter().enumerate() {
        for (pos, &label) in x.iter().enumerate() {
            if label == 0 {
                return Err(Error::InvalidDiagram("edge labels must be positive".into()));
            }
            occurrences.entry(label).or_default().push((ci, pos));
        }
    }
    if let Some((label, occ)) = occurrences.iter().find(|(_, o)| o.len() != 2) {
        return Err(Error::InvalidDiagram(format!("label {label} appears {} times, expected 2", occ.len())));
    }
    let partner = |ci: usize, pos: usize| -> (usize, usize) {
        let occ = &occurrences[&crossings[ci][pos]];
        if occ[0] == (ci, pos) {
            occ[1]
        } else {
            occ[0]
        }
    };

    // Faces of the 4-valent map: V - E + F = 2 forces F = n + 2.
    let mut seen = vec![[false; 4]; n];
    let mut faces = 0;
    for ci in 0..n {
        for pos in 0..4 {
            if seen[ci][pos] {
                continue;
            }
            faces += 1;
            let (mut c, mut p) = (ci, pos);
            while !seen[c][p] {
                seen[c][p] = true;
                let (c2, p2) = partner(c, p);
                c = c2;
                p = (p2 + 1) % 4;
            }
        }
    }
    if faces != n + 2 {
        return Err(Error::InvalidDiagram(format!("not planar: {faces} faces for {n} crossings")));
    }

    let mut over_dir: Vec<Option<i8>> = vec![None; n];
    let mut under_seen = vec![false; n];
    let (mut ci, mut pos) = (0usize, 2usize);
    under_seen[0] = true;
    let mut steps = 0;
    loop {
        let (cj, pj) = partner(ci, pos);
        steps += 1;
        let exit = match pj {
            0 => {
                if under_seen[cj] {
                    break;
                }
                under_seen[cj] = true;
                2
            }
            1 | 3 => {
                if over_dir[cj].is_some() {
                    return Err(Error::InvalidDiagram(format!("over-strand of crossing {} traversed twice", cj + 1)));
                }
                // over-strand d -> b is a positive crossing
                over_dir[cj] = Some(if pj == 3 { 1 } else { -1 });
                pj ^ 2
            }
            _ => {
                return Err(Error::InvalidDiagram(format!(
                    "crossing {} is entered against its under-strand orientation",
                    cj + 1
                )))
            }
        };
        ci = cj;
        pos = exit;
        if (ci, pos) == (0, 2) {
            break;
        }
    }
    if steps != 2 * n || under_seen.iter().any(|s| !s) || over_dir.iter().any(|d| d.is_none()) {
        return Err(Error::MultiComponent(count_components(crossings, &partner)));
    }
    Ok(over_dir.into_iter().map(|d| d.unwrap_or(1)).collect())
}

fn count_components(crossings: &[Crossing], partner: &dyn Fn(usize, usize) -> (usize, usize)) -> usize {
    let mut seen = vec![[false; 4]; crossings.len()];
    let mut count = 0;
    for ci in 0..crossings.len() {
        for pos in 0..4 {
            if seen[ci][pos] {
                continue;
            }
            count += 1;
            let (mut c, mut p) = (ci, pos);
            while !seen[c][p] {
                seen[c][p] = true;
                seen[c][p ^ 2] = true;
                let (c2, p2) = partner(c, p ^ 2);
                c = c2;
                p = p2;
            }
        }
    }
    count
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PD[")?;
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "X({a},{b},{c},{d})")?;
        }
        write!(f, "]")
    }
}

impl FromStr for PDCode {
    type Err = Error;

    /// `PD[X(a,b,c,d), ...]`; square brackets are accepted around each crossing too.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::parse("PD code", format!("{m} in `{text}`"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("PD[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| bad("expected PD[...]"))?;
        let mut crossings = Vec::new();
        let mut rest = body;
        while !rest.is_empty() {
            let inner = rest.strip_prefix("X").ok_or_else(|| bad("expected X(...)"))?;
            let (open, close) = match inner.chars().next() {
                Some('(') => ('(', ')'),
                Some('[') => ('[', ']'),
                _ => return Err(bad("expected ( after X")),
            };
            let end = inner.find(close).ok_or_else(|| bad("unclosed crossing"))?;
            let nums = &inner[open.len_utf8()..end];
            let labels: Vec<u32> = nums
                .split(',')
                .map(|t| t.parse::<u32>().map_err(|_| bad("labels must be positive integers")))
                .collect::<Result<_>>()?;
            let x: Crossing = labels.try_into().map_err(|_| bad("a crossing needs four labels"))?;
            crossings.push(x);
            rest = &inner[end + 1..];
            if let Some(r) = rest.strip_prefix(',') {
                if r.is_empty() {
                    return Err(bad("trailing comma"));
                }
                rest = r;
            } else if !rest.is_empty() {
                return Err(bad("expected , between crossings"));
            }
        }
        PDCode::new(crossings)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Knot Atlas diagrams.
    pub(crate) const LEFT_TREFOIL: &str = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]";
    pub(crate) const FIGURE_EIGHT: &str = "PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]";

    #[test]
    fn parses_and_orients() {
        let t: PDCode = LEFT_TREFOIL.parse().unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.writhe(), -3);
        assert_eq!(t.mirror().writhe(), 3);
        assert_eq!(PDCode::new(t.mirror().crossings().to_vec()).unwrap().signs(), t.mirror().signs());
        let e: PDCode = FIGURE_EIGHT.parse().unwrap();
        assert_eq!(e.writhe(), 0);
        assert_eq!(t.to_string().parse::<PDCode>().unwrap(), t);
    }

    #[test]
    fn empty_diagram_is_the_unknot() {
        let u: PDCode = "PD[]".parse().unwrap();
        assert_eq!(u, PDCode::unknot());
        assert_eq!(u.writhe(), 0);
    }

    #[test]
    fn kinks() {
        let k: PDCode = "PD[X(1,1,2,2)]".parse().unwrap();
        assert_eq!(k.writhe(), 1);
        let k: PDCode = "PD[X(1,2,2,1)]".parse().unwrap();
        assert_eq!(k.writhe(), -1);
    }

    #[test]
    fn rejects_links_and_bad_labels() {
        // Hopf-link style diagram: two components.
        let err = "PD[X(1,4,2,3), X(3,2,4,1)]".parse::<PDCode>().unwrap_err();
        assert_eq!(err, Error::MultiComponent(2));
        assert!(matches!("PD[X(1,2,3,4)]".parse::<PDCode>(), Err(Error::InvalidDiagram(_))));
        assert!(matches!("PD[X(0,1,1,0)]".parse::<PDCode>(), Err(Error::InvalidDiagram(_))));
        assert!(matches!("PD[X(1,2,3)]".parse::<PDCode>(), Err(Error::Parse { .. })));
        assert!(matches!("X(1,2,3,4)".parse::<PDCode>(), Err(Error::Parse { .. })));
        assert!(matches!("PD[X(1,1,2,2),]".parse::<PDCode>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn rejects_non_planar_gluing() {
        // Labels pair up but the rotation system has the wrong Euler characteristic.
        let err = "PD[X(1,2,1,2)]".parse::<PDCode>().unwrap_err();
        assert!(matches!(err, Error::InvalidDiagram(_)), "{err:?}");
    }
}
