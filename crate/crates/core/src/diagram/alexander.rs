//! Alexander polynomial from Fox derivatives of the Wirtinger presentation.

use std::collections::HashMap;

use super::pd::PDCode;
use crate::error::Result;
use crate::laurent::LaurentPoly;

/// Abelianized Fox Jacobian of the Wirtinger presentation: one row per
/// crossing (relator), one column per over-arc (generator).
pub fn alexander_matrix(pd: &PDCode) -> Vec<Vec<LaurentPoly>> {
    let n = pd.crossing_count();
    let arcs = over_arcs(pd);
    let one = LaurentPoly::one();
    let t = LaurentPoly::monomial(1, 1);
    let mut m = vec![vec![LaurentPoly::zero(); n]; n];
    for (row, (&[a, b, c, _], &sign)) in pd.crossings().iter().zip(pd.signs()).enumerate() {
        let (over, inc, out) = (arcs[&b], arcs[&a], arcs[&c]);
        // positive: x_out = x_over x_in x_over^-1 ; negative: x_out = x_over^-1 x_in x_over
        let (e_over, e_in, e_out) = if sign > 0 {
            (&one - &t, t.clone(), -&one)
        } else {
            (&t - &one, one.clone(), -&t)
        };
        m[row][over] += &e_over;
        m[row][inc] += &e_in;
        m[row][out] += &e_out;
    }
    m
}

/// Normalized Alexander polynomial: determinant of the Jacobian with the last
/// row and column removed, then fixed up to `Δ(t) = Δ(1/t)`, `Δ(1) = 1`.
pub fn alexander_fox(pd: &PDCode) -> Result<LaurentPoly> {
    if pd.crossing_count() == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut m = alexander_matrix(pd);
    m.pop();
    for row in &mut m {
        row.pop();
    }
    determinant(m)?.normalize_alexander()
}

// over-arc index for every edge label; edges merge through over-crossings
fn over_arcs(pd: &PDCode) -> HashMap<u32, usize> {
    let mut parent: HashMap<u32, u32> = HashMap::new();
    fn find(parent: &mut HashMap<u32, u32>, x: u32) -> u32 {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let r = find(parent, p);
        parent.insert(x, r);
        r
    }
    for &[a, b, c, d] in pd.crossings() {
        for l in [a, c] {
            find(&mut parent, l);
        }
        let (rb, rd) = (find(&mut parent, b), find(&mut parent, d));
        if rb != rd {
            parent.insert(rb, rd);
        }
    }
    let mut labels: Vec<u32> = parent.keys().copied().collect();
    labels.sort_unstable();
    let mut index: HashMap<u32, usize> = HashMap::new();
    let mut out = HashMap::new();
    for l in labels {
        let r = find(&mut parent, l);
        let n = index.len();
        let i = *index.entry(r).or_insert(n);
        out.insert(l, i);
    }
    out
}

/// Fraction-free (Bareiss) determinant over `Z[t, 1/t]`.
pub fn determinant(mut m: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(LaurentPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev)?;
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}
