//! Closed walks in the dual ribbon graph.
//!
//! A walk is a cyclic sequence of exit half-edges: after leaving through `d`
//! the walk enters triangle `tri_of(partner(d))` and must leave through a
//! different side. Normal curves trace out exactly the cyclically reduced
//! walks, and the number of times a walk crosses an edge is its normal
//! coordinate on that edge.

use std::collections::HashMap;

use super::triangulation::{side_of, tri_of, Triangulation};

pub type Walk = Vec<usize>;

/// Corner counts of a triangle with side weights `w`; entry `j` counts arcs
/// cutting off the vertex between sides `j-1` and `j`.
fn corners(w: [u64; 3]) -> [u64; 3] {
    let mut n = [0; 3];
    for j in 0..3 {
        n[j] = (w[(j + 2) % 3] + w[j] - w[(j + 1) % 3]) / 2;
    }
    n
}

/// Follow the normal arc entering side `h` at point `p`; returns the side it
/// leaves through and the point on that side.
#[inline]
fn through(t: &Triangulation, weights: &[u64], h: usize, p: u64) -> (usize, u64) {
    let base = 3 * tri_of(h);
    let j = side_of(h);
    let w = [
        weights[t.edge_of(base)],
        weights[t.edge_of(base + 1)],
        weights[t.edge_of(base + 2)],
    ];
    let n = corners(w);
    if p < n[j] {
        let k = (j + 2) % 3;
        (base + k, w[k] - 1 - p)
    } else {
        (base + (j + 1) % 3, w[j] - 1 - p)
    }
}

/// Trace every component of an admissible weight vector. Components come out
/// in order of the first edge point they cross; each starts by leaving through
/// the lower half-edge of that edge.
pub fn trace(t: &Triangulation, weights: &[u64]) -> Vec<Walk> {
    trace_impl(t, weights, |_, _, _| {})
}

/// Innermost strand at a corner: component and index of the dart leaving
/// the corner's triangle.
pub type CornerOwner = (usize, usize);

/// Trace, and record for every corner `(t, s)` (between sides `s` and
/// `s + 1`) which strand cuts it closest to the vertex.
pub fn trace_innermost(
    t: &Triangulation,
    weights: &[u64],
) -> (Vec<Walk>, HashMap<(usize, usize), CornerOwner>) {
    let mut owners = HashMap::new();
    let walks = trace_impl(t, weights, |key, comp, idx| {
        owners.insert(key, (comp, idx));
    });
    let owners = owners
        .into_iter()
        .map(|(k, (c, i)): ((usize, usize), (usize, usize))| (k, (c, i % walks[c].len())))
        .collect();
    (walks, owners)
}

fn trace_impl(
    t: &Triangulation,
    weights: &[u64],
    mut innermost: impl FnMut((usize, usize), usize, usize),
) -> Vec<Walk> {
    let ne = t.num_edges();
    let mut offset = vec![0usize; ne + 1];
    for e in 0..ne {
        offset[e + 1] = offset[e] + weights[e] as usize;
    }
    let mut seen = vec![false; offset[ne]];
    let mut out = Vec::new();
    for e in 0..ne {
        let [lo, _] = t.halves(e);
        for cp in 0..weights[e] {
            if seen[offset[e] + cp as usize] {
                continue;
            }
            let comp = out.len();
            let mut walk = Vec::new();
            let (mut h, mut p) = (lo, cp);
            loop {
                let edge = t.edge_of(h);
                let w = weights[edge];
                let canon = if t.halves(edge)[0] == h { p } else { w - 1 - p };
                seen[offset[edge] + canon as usize] = true;
                walk.push(h);
                let hin = t.partner(h);
                let pin = w - 1 - p;
                let (hn, pn) = through(t, weights, hin, pin);
                let j = side_of(hin);
                let tr = tri_of(hin);
                if side_of(hn) == (j + 2) % 3 {
                    if pin == 0 {
                        innermost((tr, (j + 2) % 3), comp, walk.len());
                    }
                } else if pn == 0 {
                    innermost((tr, j), comp, walk.len());
                }
                h = hn;
                p = pn;
                if h == lo && p == cp {
                    break;
                }
            }
            out.push(walk);
        }
    }
    out
}

/// Edge-crossing counts of a collection of walks.
pub fn weights_of(t: &Triangulation, walks: &[Walk]) -> Vec<u64> {
    let mut w = vec![0u64; t.num_edges()];
    for walk in walks {
        for &d in walk {
            w[t.edge_of(d)] += 1;
        }
    }
    w
}

pub fn is_closed_walk(t: &Triangulation, walk: &[usize]) -> bool {
    let n = walk.len();
    n > 0
        && (0..n).all(|i| {
            let d = walk[i];
            let nx = walk[(i + 1) % n];
            tri_of(nx) == tri_of(t.partner(d))
        })
}

pub fn is_reduced(t: &Triangulation, walk: &[usize]) -> bool {
    let n = walk.len();
    is_closed_walk(t, walk) && (0..n).all(|i| walk[(i + 1) % n] != t.partner(walk[i]))
}

/// The same walk traversed backwards.
pub fn reverse(t: &Triangulation, walk: &[usize]) -> Walk {
    walk.iter().rev().map(|&d| t.partner(d)).collect()
}

/// Cancel backtracks, including across the cyclic seam.
pub fn reduce_cyclic(t: &Triangulation, walk: &[usize]) -> Walk {
    let mut st: Vec<usize> = Vec::with_capacity(walk.len());
    for &d in walk {
        if let Some(&top) = st.last() {
            if d == t.partner(top) {
                st.pop();
                continue;
            }
        }
        st.push(d);
    }
    let mut lo = 0;
    let mut hi = st.len();
    while hi - lo >= 2 && st[lo] == t.partner(st[hi - 1]) {
        lo += 1;
        hi -= 1;
    }
    st[lo..hi].to_vec()
}

/// Whether `b` is a cyclic rotation of `a`.
pub fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    rotation_offset(a, b).is_some()
}

/// Offset `r` with `a[(i + r) % n] == b[i]` for all `i`, by prefix-function search.
pub fn rotation_offset(a: &[usize], b: &[usize]) -> Option<usize> {
    let n = b.len();
    if a.len() != n {
        return None;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && b[i] != b[k] {
            k = fail[k - 1];
        }
        if b[i] == b[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut k = 0;
    for i in 0..2 * n - 1 {
        let c = a[i % n];
        while k > 0 && c != b[k] {
            k = fail[k - 1];
        }
        if c == b[k] {
            k += 1;
        }
        if k == n {
            return Some(i + 1 - n);
        }
    }
    None
}

/// Whether the weights trace to exactly this curve (so the walk is simple).
pub fn walk_is_simple(t: &Triangulation, walk: &[usize]) -> bool {
    if !is_reduced(t, walk) {
        return false;
    }
    let w = weights_of(t, &[walk.to_vec()]);
    let comps = trace(t, &w);
    if comps.len() != 1 {
        return false;
    }
    cyclic_eq(&comps[0], walk) || cyclic_eq(&comps[0], &reverse(t, walk))
}
