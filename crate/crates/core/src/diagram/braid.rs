//! Braid words, their closures, torus-knot braids, and braid cabling.
//!
//! Letter `i > 0` is the positive generator `σ_i`, which closes to a positive
//! crossing; `-i` is its inverse.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::pd::{Crossing, PDCode};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidDiagram("a braid needs at least one strand".into()));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::InvalidDiagram(format!("generator {bad} is out of range for {strands} strands")));
        }
        Ok(BraidWord { strands, letters })
    }

    /// The empty braid on one strand; closes to the unknot.
    pub fn trivial() -> Self {
        BraidWord { strands: 1, letters: Vec::new() }
    }

    /// `(σ_1 ... σ_{b-1})^a` on `b` strands, with the strand count taken as the
    /// smaller of `|a|, |b|`.
    pub fn torus(a: i64, b: i64) -> Result<Self> {
        if a.gcd(&b) != 1 {
            return Err(Error::InvalidCable { p: a.to_string(), q: b.to_string(), msg: "gcd must be 1" });
        }
        let sign = (a * b).signum();
        let (strands, twists) = if a.abs() < b.abs() { (a.abs(), b.abs()) } else { (b.abs(), a.abs()) };
        let mut letters = Vec::new();
        for _ in 0..twists {
            push_rotation(&mut letters, 0, strands as usize, sign as i32);
        }
        BraidWord::new(strands.max(1) as usize, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| i64::from(l.signum())).sum()
    }

    pub fn mirror(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }

    /// Number of components of the closure (cycles of the underlying permutation).
    pub fn components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        count
    }

    pub fn require_knot(&self) -> Result<()> {
        match self.components() {
            1 => Ok(()),
            k => Err(Error::MultiComponent(k)),
        }
    }

    // position at the bottom -> position at the top
    fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let g = l.unsigned_abs() as usize - 1;
            at.swap(g, g + 1);
        }
        let mut perm = vec![0; self.strands];
        for (top, &bottom) in at.iter().enumerate() {
            perm[bottom] = top;
        }
        perm
    }

    /// PD code of the closure.
    pub fn to_pd(&self) -> Result<PDCode> {
        self.require_knot()?;
        if self.letters.is_empty() {
            return Ok(PDCode::unknot());
        }
        let mut next = self.strands as u32 + 1;
        let mut current: Vec<u32> = (1..=self.strands as u32).collect();
        let mut crossings: Vec<Crossing> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let g = l.unsigned_abs() as usize - 1;
            let (in_left, in_right) = (current[g], current[g + 1]);
            // the left strand moves right, the right strand moves left
            let (out_ne, out_nw) = (next, next + 1);
            next += 2;
            crossings.push(if l > 0 {
                [in_right, out_ne, out_nw, in_left]
            } else {
                [in_left, in_right, out_ne, out_nw]
            });
            current[g] = out_nw;
            current[g + 1] = out_ne;
        }
        // close up: the top label at each position is the bottom label there
        let mut rename: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        for (pos, &top) in current.iter().enumerate() {
            rename.insert(top, pos as u32 + 1);
        }
        for x in &mut crossings {
            for label in x.iter_mut() {
                if let Some(&r) = rename.get(label) {
                    *label = r;
                }
            }
        }
        PDCode::new(compact_labels(crossings))
    }

    /// Braid whose closure is the `(p,q)`-cable of this braid's closure.
    ///
    /// Every letter becomes a `q`-strand block crossing. The blackboard
    /// `q`-parallel carries framing equal to the writhe, so the first block
    /// receives `p - q·writhe` twists of `σ_1 ... σ_{q-1}` to make the
    /// meridional winding exactly `p` relative to the Seifert framing.
    pub fn cable(&self, p: i64, q: i64) -> Result<BraidWord> {
        if q < 2 {
            return Err(Error::InvalidCable { p: p.to_string(), q: q.to_string(), msg: "q must be at least 2" });
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidCable { p: p.to_string(), q: q.to_string(), msg: "gcd must be 1" });
        }
        self.require_knot()?;
        let q = q as usize;
        let mut letters = Vec::with_capacity(self.letters.len() * q * q);
        for &l in &self.letters {
            let block = (l.unsigned_abs() as usize - 1) * q;
            let sign = l.signum();
            for a in (0..q).rev() {
                for b in 0..q {
                    letters.push(sign * (block + a + b + 1) as i32);
                }
            }
        }
        let correction = p - q as i64 * self.writhe();
        for _ in 0..correction.unsigned_abs() {
            push_rotation(&mut letters, 0, q, correction.signum() as i32);
        }
        BraidWord::new(self.strands * q, letters)
    }
}

// σ_{s+1} ... σ_{s+k-1} for sign +1, and its inverse for sign -1.
fn push_rotation(letters: &mut Vec<i32>, start: usize, k: usize, sign: i32) {
    if sign > 0 {
        letters.extend((start + 1..start + k).map(|g| g as i32));
    } else {
        letters.extend((start + 1..start + k).rev().map(|g| -(g as i32)));
    }
}

fn compact_labels(mut crossings: Vec<Crossing>) -> Vec<Crossing> {
    let mut map = std::collections::HashMap::new();
    for x in &mut crossings {
        for label in x.iter_mut() {
            let n = map.len() as u32 + 1;
            *label = *map.entry(*label).or_insert(n);
        }
    }
    crossings
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BR[{}; ", self.strands)?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// `BR[s; i1,i2,...]`. Closure components are not checked here.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::parse("braid word", format!("{m} in `{text}`"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("BR[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| bad("expected BR[s; ...]"))?;
        let (s, word) = body.split_once(';').ok_or_else(|| bad("missing `;` after the strand count"))?;
        let strands: usize = s.parse().map_err(|_| bad("bad strand count"))?;
        let letters = if word.is_empty() {
            Vec::new()
        } else {
            word.split(',')
                .map(|t| t.parse::<i32>().map_err(|_| bad("letters must be nonzero integers")))
                .collect::<Result<_>>()?
        };
        BraidWord::new(strands, letters)
    }
}
