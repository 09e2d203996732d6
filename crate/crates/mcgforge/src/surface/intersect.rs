//! Intersection numbers and Dehn twists from linked pairs of walks.
//!
//! Two reduced closed walks that share a maximal common path either enter and
//! leave it on the same side of each other (no crossing) or switch sides
//! (one crossing). Counting switches gives the geometric intersection number.
//! A twist inserts copies of the twisting walk at each switch.

use std::collections::HashMap;

use super::curve::{same_triangulation, MultiCurve, OrientedCurve};
use super::triangulation::{side_of, Triangulation};
use super::walk::{self, Walk};
use crate::error::{Error, Result};

/// A maximal common path of `x` and `y'`, where `y'` is `y` or its reverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    /// First shared dart in `x`.
    pub i: usize,
    /// First shared dart in `y'`.
    pub j: usize,
    pub len: usize,
    pub y_reversed: bool,
    /// `x` arrives from the left of `y'`.
    pub left_in: bool,
    /// `x` leaves to the left of `y'`.
    pub left_out: bool,
}

impl Segment {
    pub fn crossing(&self) -> bool {
        self.left_in != self.left_out
    }
}

fn positions(y: &[usize]) -> HashMap<usize, Vec<usize>> {
    let mut m: HashMap<usize, Vec<usize>> = HashMap::new();
    for (j, &d) in y.iter().enumerate() {
        m.entry(d).or_default().push(j);
    }
    m
}

fn segments_oriented(t: &Triangulation, x: &[usize], y: &[usize], rev: bool, out: &mut Vec<Segment>) {
    let (lx, ly) = (x.len(), y.len());
    if lx == 0 || ly == 0 {
        return;
    }
    let pos = positions(y);
    let cap = lx + ly;
    for i in 0..lx {
        let Some(js) = pos.get(&x[i]) else { continue };
        let xp = x[(i + lx - 1) % lx];
        for &j in js {
            let yp = y[(j + ly - 1) % ly];
            if xp == yp {
                continue;
            }
            let mut k = 1;
            while k < cap && x[(i + k) % lx] == y[(j + k) % ly] {
                k += 1;
            }
            if k >= cap {
                continue;
            }
            let s1 = side_of(x[i]);
            let left_in = side_of(t.partner(xp)) == (s1 + 1) % 3;
            let last = x[(i + k - 1) % lx];
            let sk = side_of(t.partner(last));
            let left_out = side_of(x[(i + k) % lx]) == (sk + 2) % 3;
            out.push(Segment { i, j, len: k, y_reversed: rev, left_in, left_out });
        }
    }
}

/// All maximal common paths of `x` with `y` in both directions.
pub fn segments(t: &Triangulation, x: &[usize], y: &[usize]) -> Vec<Segment> {
    let mut out = Vec::new();
    segments_oriented(t, x, y, false, &mut out);
    let ry = walk::reverse(t, y);
    segments_oriented(t, x, &ry, true, &mut out);
    out
}

/// Crossings between two closed walks in minimal position.
pub fn walk_intersection(t: &Triangulation, x: &[usize], y: &[usize]) -> u64 {
    segments(t, x, y).iter().filter(|s| s.crossing()).count() as u64
}

/// Signed crossing count: positive when `y` crosses `x` from the right of `x`
/// to its left, i.e. when (tangent of x, tangent of y) is positively oriented.
pub fn walk_algebraic(t: &Triangulation, x: &[usize], y: &[usize]) -> i64 {
    segments(t, y, x)
        .iter()
        .filter(|s| s.crossing())
        .map(|s| {
            let o = if s.y_reversed { -1 } else { 1 };
            let r2l = !s.left_in && s.left_out;
            o * if r2l { 1 } else { -1 }
        })
        .sum()
}

fn check_same(a: &MultiCurve, b: &MultiCurve) -> Result<()> {
    if same_triangulation(a.triangulation(), b.triangulation()) {
        Ok(())
    } else {
        Err(Error::TriangulationMismatch)
    }
}

/// Geometric intersection number of two multicurves.
pub fn intersection(a: &MultiCurve, b: &MultiCurve) -> Result<u64> {
    check_same(a, b)?;
    let t = a.triangulation();
    let ca = a.components();
    let cb = b.components();
    let mut total = 0;
    for (x, mx) in &ca {
        let wx = x.walk()?;
        for (y, my) in &cb {
            let wy = y.walk()?;
            total += mx * my * walk_intersection(t, &wx, &wy);
        }
    }
    Ok(total)
}

/// Algebraic intersection of two oriented curves.
pub fn algebraic_intersection(a: &OrientedCurve, b: &OrientedCurve) -> Result<i64> {
    check_same(&a.base, &b.base)?;
    Ok(walk_algebraic(a.base.triangulation(), &a.walk(), &b.walk()))
}

/// Compare two forward rays that start with the same dart: `Less` when the
/// first one turns off to the left.
fn cmp_rays(t: &Triangulation, r1: &[usize], s1: usize, r2: &[usize], s2: usize, bound: usize) -> std::cmp::Ordering {
    let (l1, l2) = (r1.len(), r2.len());
    for k in 1..bound {
        let d1 = r1[(s1 + k) % l1];
        let d2 = r2[(s2 + k) % l2];
        if d1 != d2 {
            let prev = r1[(s1 + k - 1) % l1];
            let sin = side_of(t.partner(prev));
            return if side_of(d1) == (sin + 2) % 3 {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            };
        }
    }
    std::cmp::Ordering::Equal
}

/// Walk of the right-handed twist `tau_a^n(b)` for closed walks `a` (simple) and `b`.
pub fn twist_walk(t: &Triangulation, a: &[usize], b: &[usize], n: i64) -> Walk {
    if n == 0 || a.is_empty() || b.is_empty() {
        return b.to_vec();
    }
    let ra = walk::reverse(t, a);
    let la = a.len();
    let segs: Vec<Segment> = segments(t, b, a).into_iter().filter(|s| s.crossing()).collect();
    let mut groups: HashMap<usize, Vec<Segment>> = HashMap::new();
    for s in segs {
        groups.entry(s.i).or_default().push(s);
    }
    let bound = a.len() + b.len() + 2;
    let mut inserts: HashMap<usize, Walk> = HashMap::new();
    for (i, mut g) in groups {
        let src = |s: &Segment| if s.y_reversed { &ra } else { a };
        g.sort_by(|p, q| cmp_rays(t, src(p), p.j, src(q), q.j, bound));
        // b lies on one side of every strand in the group; cross the far ones first.
        if g[0].left_out {
            g.reverse();
        }
        let mut ins = Vec::new();
        for s in &g {
            let ap = src(s);
            let m = if s.left_in { -n } else { n };
            if m > 0 {
                for _ in 0..m {
                    for k in 0..la {
                        ins.push(ap[(s.j + k) % la]);
                    }
                }
            } else {
                let rap = walk::reverse(t, ap);
                let start = (la - s.j) % la;
                for _ in 0..(-m) {
                    for k in 0..la {
                        ins.push(rap[(start + k) % la]);
                    }
                }
            }
        }
        inserts.insert(i, ins);
    }
    let mut out = Vec::with_capacity(b.len() + inserts.values().map(|v| v.len()).sum::<usize>());
    for (idx, &d) in b.iter().enumerate() {
        if let Some(ins) = inserts.get(&idx) {
            out.extend_from_slice(ins);
        }
        out.push(d);
    }
    walk::reduce_cyclic(t, &out)
}

/// `tau_a^n(b)` for a single curve `a` and any multicurve `b`.
pub fn twist(a: &MultiCurve, b: &MultiCurve, n: i64) -> Result<MultiCurve> {
    check_same(a, b)?;
    let t = a.triangulation();
    let wa = a.walk()?;
    let mut outs = Vec::new();
    for wb in b.walks() {
        outs.push(twist_walk(t, &wa, &wb, n));
    }
    let weights = walk::weights_of(t, &outs);
    Ok(MultiCurve::from_weights_unchecked(t.clone(), weights))
}
