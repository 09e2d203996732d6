//! Seifert form of the band surface of a homogeneous braid closure.
//!
//! The surface is one disk per strand and one half-twisted band per
//! letter. Basis: for generator `i` with letters at word positions
//! `p_1 < … < p_c`, the cycle `a_{i,r}` runs up band `r` and back down
//! band `r + 1`. Ordering is by `(i, r)`. With `ε` the sign of the bands:
//!
//! * `V(a_{i,r}, a_{i,r}) = −ε`;
//! * `V(a_{i,r}, a_{i,r+1}) = 1` when `ε = +1`, `V(a_{i,r+1}, a_{i,r}) = −1`
//!   when `ε = −1`;
//! * for `a = a_{i,r}` on `(p, p')` and `b = a_{i+1,s}` on `(q, q')`,
//!   `V(a, b) = −1` if `p < q < p' < q'` and `+1` if `q < p < q' < p'`.
//!
//! All other entries vanish.

use serde::{Deserialize, Serialize};

use super::braid::BraidWord;
use super::closure::ClosureDiagram;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandCycle {
    pub generator: usize,
    /// Word positions of the two bands.
    pub bands: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub matrix: Vec<Vec<i64>>,
    pub basis: Vec<BandCycle>,
    /// Class of each boundary component in the basis.
    pub boundary_classes: Vec<Vec<i64>>,
    /// Whether every generator occurs.
    pub connected: bool,
}

impl SeifertData {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    /// `V(x, y)`.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, row) in self.matrix.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            for (j, &v) in row.iter().enumerate() {
                s += x[i] * v * y[j];
            }
        }
        s
    }

    /// Algebraic intersection number, `V(x, y) − V(y, x)`.
    pub fn intersection(&self, x: &[i64], y: &[i64]) -> i64 {
        self.pairing(x, y) - self.pairing(y, x)
    }

    /// Index of the cycle through the bands at positions `p` and `q`.
    pub fn cycle_index(&self, p: usize, q: usize) -> Option<usize> {
        self.basis.iter().position(|b| b.bands == (p.min(q), p.max(q)))
    }
}

pub fn seifert_matrix(b: &BraidWord) -> Result<SeifertData> {
    if !b.is_homogeneous() {
        return Err(Error::Precondition(format!("{b} is not homogeneous")));
    }
    let d = ClosureDiagram::new(b.clone());
    let n = b.strands();
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &l) in b.letters().iter().enumerate() {
        occ[l.unsigned_abs() as usize].push(k);
    }
    let sign = |i: usize| b.letters()[occ[i][0]].signum() as i64;
    let mut basis = Vec::new();
    let mut first = vec![0usize; n];
    for i in 1..n {
        first[i] = basis.len();
        for r in 0..occ[i].len().saturating_sub(1) {
            basis.push(BandCycle { generator: i, bands: (occ[i][r], occ[i][r + 1]) });
        }
    }
    let m = basis.len();
    let mut v = vec![vec![0i64; m]; m];
    for i in 1..n {
        let c = occ[i].len();
        if c < 2 {
            continue;
        }
        let e = sign(i);
        for r in 0..c - 1 {
            let a = first[i] + r;
            v[a][a] = -e;
            if r + 1 < c - 1 {
                if e > 0 {
                    v[a][a + 1] = 1;
                } else {
                    v[a + 1][a] = -1;
                }
            }
        }
        if i + 1 < n {
            for r in 0..c - 1 {
                let (p, p2) = (occ[i][r], occ[i][r + 1]);
                for s in 0..occ[i + 1].len().saturating_sub(1) {
                    let (q, q2) = (occ[i + 1][s], occ[i + 1][s + 1]);
                    let a = first[i] + r;
                    let bb = first[i + 1] + s;
                    if p < q && q < p2 && p2 < q2 {
                        v[a][bb] = -1;
                    } else if q < p && p < q2 && q2 < p2 {
                        v[a][bb] = 1;
                    }
                }
            }
        }
    }

    // Boundary classes: band chain +1 for a pass from disk i to i+1.
    let strands = d.crossing_strands();
    let mut boundary_classes = vec![vec![0i64; m]; d.num_components];
    for (comp, class) in boundary_classes.iter_mut().enumerate() {
        for i in 1..n {
            let mut partial = 0i64;
            for r in 0..occ[i].len().saturating_sub(1) {
                let (lo, hi) = strands[occ[i][r]];
                partial += (d.strand_component[lo] == comp) as i64 - (d.strand_component[hi] == comp) as i64;
                class[first[i] + r] = partial;
            }
        }
    }
    Ok(SeifertData { matrix: v, basis, boundary_classes, connected: b.uses_all_generators() })
}

/// Integer polynomial, coefficient `k` of `t^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alexander {
    pub coeffs: Vec<i64>,
    pub monic: bool,
}

impl Alexander {
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Normalize by `±t^j`: positive leading coefficient and nonzero
    /// constant term.
    pub fn normalized(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|&c| c != 0).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        if coeffs.last().is_some_and(|&c| c < 0) {
            for c in coeffs.iter_mut() {
                *c = -*c;
            }
        }
        let monic = coeffs.last() == Some(&1);
        Alexander { coeffs, monic }
    }
}

impl std::fmt::Display for Alexander {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let abs = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (k, abs) {
                (0, a) => write!(f, "{a}")?,
                (_, 1) => {}
                (_, a) => write!(f, "{a}")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

type Poly = Vec<i128>;

fn overflow() -> Error {
    Error::Construction("coefficient overflow in determinant".into())
}

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn mul(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut r = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let p = x.checked_mul(y).ok_or_else(overflow)?;
            r[i + j] = r[i + j].checked_add(p).ok_or_else(overflow)?;
        }
    }
    Ok(trim(r))
}

fn sub(a: &Poly, b: &Poly) -> Result<Poly> {
    let mut r = vec![0i128; a.len().max(b.len())];
    for (i, x) in r.iter_mut().enumerate() {
        let u = a.get(i).copied().unwrap_or(0);
        let v = b.get(i).copied().unwrap_or(0);
        *x = u.checked_sub(v).ok_or_else(overflow)?;
    }
    Ok(trim(r))
}

fn div_exact(a: &Poly, b: &Poly) -> Result<Poly> {
    let mut rem = a.clone();
    if rem.is_empty() {
        return Ok(Vec::new());
    }
    let db = b.len() - 1;
    let lb = b[db];
    if rem.len() < b.len() {
        return Err(Error::Construction("inexact division in determinant".into()));
    }
    let mut q = vec![0i128; rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db];
        if c % lb != 0 {
            return Err(Error::Construction("inexact division in determinant".into()));
        }
        let f = c / lb;
        q[k] = f;
        for (j, &y) in b.iter().enumerate() {
            rem[k + j] = rem[k + j].checked_sub(f.checked_mul(y).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
    }
    if rem.iter().any(|&x| x != 0) {
        return Err(Error::Construction("inexact division in determinant".into()));
    }
    Ok(trim(q))
}

/// Fraction-free Gaussian elimination over `Z[t]`.
fn det(mut m: Vec<Vec<Poly>>) -> Result<Poly> {
    let n = m.len();
    if n == 0 {
        return Ok(vec![1]);
    }
    let mut sign = 1i128;
    let mut prev: Poly = vec![1];
    for k in 0..n - 1 {
        if m[k][k].is_empty() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_empty()) else {
                return Ok(Vec::new());
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = sub(&mul(&m[i][j], &m[k][k])?, &mul(&m[i][k], &m[k][j])?)?;
                m[i][j] = div_exact(&x, &prev)?;
            }
            m[i][k] = Vec::new();
        }
        prev = m[k][k].clone();
    }
    Ok(m[n - 1][n - 1].iter().map(|&c| c * sign).collect())
}

/// `det(V − t·Vᵀ)` normalized; the zero polynomial for a split surface.
pub fn alexander_polynomial(s: &SeifertData) -> Result<Alexander> {
    if !s.connected {
        return Ok(Alexander { coeffs: Vec::new(), monic: false });
    }
    let n = s.size();
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| trim(vec![s.matrix[i][j] as i128, -(s.matrix[j][i] as i128)])).collect())
        .collect();
    let d = det(m)?;
    let coeffs = d
        .into_iter()
        .map(|c| i64::try_from(c).map_err(|_| overflow()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Alexander::normalized(coeffs))
}
