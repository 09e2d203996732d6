use std::sync::Arc;

use super::curve::{same_triangulation, MultiCurve};
use super::triangulation::{side_of, tri_of, Triangulation};
use crate::error::{Error, Result};

/// Flip edge `e` and carry the curves along. With triangles `(e, a, b)` and
/// `(e, c, d)` the square reads `c, d, a, b` and the new diagonal `e'` gets
/// weight `max(a + c, b + d) - e`; `e'` keeps the label of `e`.
pub fn flip(
    t: &Arc<Triangulation>,
    curves: &[MultiCurve],
    e: usize,
) -> Result<(Arc<Triangulation>, Vec<MultiCurve>)> {
    if !t.is_flippable(e) {
        return Err(Error::NotFlippable(e));
    }
    for c in curves {
        if !same_triangulation(c.triangulation(), t) {
            return Err(Error::TriangulationMismatch);
        }
    }
    let [h1, h2] = t.halves(e);
    let (t1, t2) = (tri_of(h1), tri_of(h2));
    let (s1, s2) = (side_of(h1), side_of(h2));
    let tris = t.triangles();
    let a = tris[t1][(s1 + 1) % 3];
    let b = tris[t1][(s1 + 2) % 3];
    let c = tris[t2][(s2 + 1) % 3];
    let d = tris[t2][(s2 + 2) % 3];
    let mut new_tris = tris.to_vec();
    new_tris[t1] = [e, d, a];
    new_tris[t2] = [e, b, c];
    let nt = Arc::new(Triangulation::from_triangles(new_tris)?);
    let out = curves
        .iter()
        .map(|cv| {
            let w = cv.weights();
            let mut nw = w.to_vec();
            nw[e] = (w[a] + w[c]).max(w[b] + w[d]) - w[e];
            MultiCurve::from_weights_unchecked(nt.clone(), nw)
        })
        .collect();
    Ok((nt, out))
}
