use super::curve::OrientedCurve;
use super::intersect::walk_algebraic;
use super::triangulation::Triangulation;
use crate::error::Result;

/// Edges outside the dual spanning tree, in increasing order. Each carries
/// one cocycle coordinate of the homology basis.
pub fn cocycle_edges(t: &Triangulation) -> Vec<usize> {
    let tree = t.dual_tree();
    (0..t.num_edges()).filter(|&e| !tree[e]).collect()
}

/// Signed crossing counts of a closed walk with the non-tree edges.
pub fn walk_class(t: &Triangulation, walk: &[usize]) -> Vec<i64> {
    let edges = cocycle_edges(t);
    let mut idx = vec![usize::MAX; t.num_edges()];
    for (i, &e) in edges.iter().enumerate() {
        idx[e] = i;
    }
    let mut v = vec![0i64; edges.len()];
    for &d in walk {
        let e = t.edge_of(d);
        if idx[e] != usize::MAX {
            v[idx[e]] += if t.halves(e)[0] == d { 1 } else { -1 };
        }
    }
    v
}

/// Class in the first homology of the punctured surface, length `2g + n - 1`.
pub fn homology_class(c: &OrientedCurve) -> Vec<i64> {
    walk_class(c.base.triangulation(), &c.walk())
}

/// Algebraic intersections with a list of oriented reference curves.
pub fn pairing_vector(c: &OrientedCurve, basis: &[OrientedCurve]) -> Result<Vec<i64>> {
    let t = c.base.triangulation();
    let w = c.walk();
    basis
        .iter()
        .map(|b| {
            if !super::curve::same_triangulation(b.base.triangulation(), t) {
                return Err(crate::error::Error::TriangulationMismatch);
            }
            Ok(walk_algebraic(t, &b.walk(), &w))
        })
        .collect()
}
