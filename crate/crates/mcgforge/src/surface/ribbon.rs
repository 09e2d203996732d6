//! Band attachment on triangle lists.
//!
//! Attaching a band between two boundary gaps subdivides the two dual edges
//! with new trivalent vertices and joins them by a new edge. A gap is named by
//! a half-edge `p`: the boundary stretch running from `p` to `phi(p)`.

use super::walk::Walk;

/// Triangle list with an edge-label allocator; need not be connected.
#[derive(Clone, Debug)]
pub struct Ribbon {
    pub tris: Vec<[usize; 3]>,
}

/// Result of one band attachment.
#[derive(Clone, Debug)]
pub struct Band {
    /// Images of the old half-edges as dart paths.
    pub dart_map: Vec<Vec<usize>>,
    /// Triangle inserted at the first gap.
    pub w1: usize,
    /// Triangle inserted at the second gap.
    pub w2: usize,
    /// Label of the new band edge.
    pub label: usize,
}

impl Ribbon {
    pub fn new(tris: Vec<[usize; 3]>) -> Self {
        Ribbon { tris }
    }

    fn next_label(&self) -> usize {
        self.tris.iter().flatten().copied().max().map_or(0, |m| m + 1)
    }

    pub fn label(&self, h: usize) -> usize {
        self.tris[h / 3][h % 3]
    }

    pub fn partner(&self, h: usize) -> usize {
        let e = self.label(h);
        for (t, tri) in self.tris.iter().enumerate() {
            for (j, &x) in tri.iter().enumerate() {
                if x == e && 3 * t + j != h {
                    return 3 * t + j;
                }
            }
        }
        panic!("half-edge {h} has no partner");
    }

    /// Disjoint union with another triangle list; returns the triangle offset.
    pub fn append(&mut self, other: &[[usize; 3]]) -> usize {
        let shift = self.next_label();
        let off = self.tris.len();
        for t in other {
            self.tris.push([t[0] + shift, t[1] + shift, t[2] + shift]);
        }
        off
    }

    /// Insert a vertex on the dual edge of gap `p`, with a free third side
    /// labelled `band`. Returns the new triangle and the dart map.
    fn subdivide(&mut self, p: usize, band: usize) -> (usize, Vec<Vec<usize>>) {
        let q = self.partner(p);
        let e = self.label(p);
        let f = self.next_label().max(band + 1);
        self.tris[p / 3][p % 3] = f;
        let w = self.tris.len();
        self.tris.push([e, f, band]);
        let nh = 3 * w;
        let mut map: Vec<Vec<usize>> = (0..nh).map(|d| vec![d]).collect();
        map[p] = vec![p, 3 * w];
        map[q] = vec![q, 3 * w + 1];
        (w, map)
    }

    /// Attach a band joining gaps `p1` and `p2`.
    pub fn attach_band(&mut self, p1: usize, p2: usize) -> Band {
        let band = self.next_label();
        let old = 3 * self.tris.len();
        let (w1, m1) = self.subdivide(p1, band);
        let (w2, m2) = self.subdivide(p2, band);
        let dart_map = (0..old)
            .map(|d| m1[d].iter().flat_map(|&x| m2[x].iter().copied()).collect())
            .collect();
        Band { dart_map, w1, w2, label: band }
    }
}

/// Push a walk through a dart map.
pub fn map_walk(map: &[Vec<usize>], w: &[usize]) -> Walk {
    w.iter().flat_map(|&d| map[d].iter().copied()).collect()
}
