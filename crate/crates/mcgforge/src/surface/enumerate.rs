use std::collections::BTreeSet;
use std::sync::Arc;

use super::curve::MultiCurve;
use super::triangulation::Triangulation;
use super::walk;

/// All essential, non-peripheral simple closed curves with total weight at
/// most `max_total_weight`, ordered by total weight then weight vector.
pub fn enumerate_curves(t: &Arc<Triangulation>, max_total_weight: u64) -> BTreeSet<MultiCurve> {
    let ne = t.num_edges();
    let mut out = BTreeSet::new();
    if max_total_weight == 0 {
        return out;
    }
    // Edges in order of first appearance so partial triangles can be pruned.
    let mut w = vec![0u64; ne];
    let mut check_after: Vec<Vec<usize>> = vec![Vec::new(); ne];
    for (ti, tri) in t.triangles().iter().enumerate() {
        let last = *tri.iter().max().unwrap();
        check_after[last].push(ti);
    }
    fn rec(
        t: &Arc<Triangulation>,
        e: usize,
        left: u64,
        w: &mut Vec<u64>,
        check_after: &[Vec<usize>],
        out: &mut BTreeSet<MultiCurve>,
    ) {
        if e == w.len() {
            if w.iter().all(|&x| x == 0) {
                return;
            }
            let comps = walk::trace(t, w);
            if comps.len() != 1 {
                return;
            }
            let c = MultiCurve::from_weights_unchecked(t.clone(), w.clone());
            if !c.is_peripheral() {
                out.insert(c);
            }
            return;
        }
        for x in 0..=left {
            w[e] = x;
            let ok = check_after[e].iter().all(|&ti| {
                let tri = t.triangles()[ti];
                let (a, b, c) = (w[tri[0]], w[tri[1]], w[tri[2]]);
                (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b
            });
            if ok {
                rec(t, e + 1, left - x, w, check_after, out);
            }
        }
        w[e] = 0;
    }
    rec(t, 0, max_total_weight, &mut w, &check_after, &mut out);
    out
}
