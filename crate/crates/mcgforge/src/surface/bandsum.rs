//! Band sums of disjoint curves along arcs that hug a puncture.
//!
//! Near a puncture every curve is absent, so an arc running around the
//! puncture, deeper than all strands, meets nothing. It leaves a summand at a
//! corner where that summand is the innermost strand. Such an arc is named by
//! the interval of corners of the boundary cycle it passes.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::curve::{same_triangulation, MultiCurve};
use super::triangulation::Triangulation;
use super::walk::{self, Walk};
use crate::error::{Error, Result};

/// Corners `start, start + 1, ..., end` (cyclically) of boundary cycle `cycle`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HuggingArc {
    pub cycle: usize,
    pub start: usize,
    pub end: usize,
}

impl HuggingArc {
    pub fn len(&self, cycle_len: usize) -> usize {
        (self.end + cycle_len - self.start) % cycle_len + 1
    }

    fn contains(&self, k: usize, cycle_len: usize) -> bool {
        (k + cycle_len - self.start) % cycle_len < self.len(cycle_len)
    }

    /// Whether two arcs can be drawn disjointly: their corner intervals are
    /// disjoint or nested.
    pub fn compatible(&self, other: &HuggingArc, cycle_len: usize) -> bool {
        if self.cycle != other.cycle {
            return true;
        }
        let a_in_b = self.contains(other.start, cycle_len) as u8 + self.contains(other.end, cycle_len) as u8;
        let b_in_a = other.contains(self.start, cycle_len) as u8 + other.contains(self.end, cycle_len) as u8;
        matches!((a_in_b, b_in_a), (0, 0) | (2, 0) | (0, 2))
    }

    /// Whether the arcs cross exactly once (interleaved endpoints).
    pub fn crosses_once(&self, other: &HuggingArc, cycle_len: usize) -> bool {
        self.cycle == other.cycle
            && self.contains(other.start, cycle_len) != self.contains(other.end, cycle_len)
    }
}

/// Innermost strands along each boundary cycle of a disjoint system.
#[derive(Clone, Debug)]
pub struct BoundaryProfile {
    tri: Arc<Triangulation>,
    /// Walk of each system curve, as traced from the union.
    pub walks: Vec<Walk>,
    /// Per cycle, per corner: owning curve and index of its exit dart there.
    pub owners: Vec<Vec<Option<(usize, usize)>>>,
}

impl BoundaryProfile {
    /// Profile of pairwise disjoint simple curves.
    pub fn new(system: &[MultiCurve]) -> Result<Self> {
        let Some(first) = system.first() else {
            return Err(Error::Invalid("empty curve system".into()));
        };
        let t = first.triangulation().clone();
        let mut total = MultiCurve::empty(t.clone());
        for c in system {
            if !same_triangulation(c.triangulation(), &t) {
                return Err(Error::TriangulationMismatch);
            }
            total = total.union(c)?;
        }
        let (traced, corner_owner) = walk::trace_innermost(&t, total.weights());
        // Match traced components to the input curves.
        let mut which = vec![usize::MAX; traced.len()];
        let mut walks = vec![Vec::new(); system.len()];
        for (ci, c) in system.iter().enumerate() {
            let w = c.walk()?;
            let rw = walk::reverse(&t, &w);
            let pos = traced
                .iter()
                .enumerate()
                .position(|(k, u)| which[k] == usize::MAX && (walk::cyclic_eq(u, &w) || walk::cyclic_eq(u, &rw)))
                .ok_or_else(|| Error::Precondition("curves of the system must be disjoint".into()))?;
            which[pos] = ci;
            walks[ci] = traced[pos].clone();
        }
        if which.contains(&usize::MAX) {
            return Err(Error::Precondition("curves of the system must be disjoint".into()));
        }
        let cycles = t.boundary_cycles();
        let owners = cycles
            .iter()
            .map(|cyc| {
                cyc.iter()
                    .map(|&h| {
                        let corner = (h / 3, (h % 3 + 2) % 3);
                        corner_owner.get(&corner).map(|&(c, i)| (which[c], i))
                    })
                    .collect()
            })
            .collect();
        Ok(BoundaryProfile { tri: t, walks, owners })
    }

    pub fn cycle_len(&self, cycle: usize) -> usize {
        self.owners[cycle].len()
    }

    /// Arcs from a corner of `x` to a corner of `y` or back, shortest first.
    pub fn arcs_between(&self, x: usize, y: usize) -> Vec<HuggingArc> {
        let mut out = Vec::new();
        for (ci, row) in self.owners.iter().enumerate() {
            for (s, os) in row.iter().enumerate() {
                for (e, oe) in row.iter().enumerate() {
                    let (Some((cs, _)), Some((ce, _))) = (os, oe) else { continue };
                    if (*cs == x && *ce == y) || (*cs == y && *ce == x) {
                        out.push(HuggingArc { cycle: ci, start: s, end: e });
                    }
                }
            }
        }
        out.sort_by_key(|a| (a.len(self.cycle_len(a.cycle)), *a));
        out
    }

    /// Band sums of curves `x` and `y` along `arc`: the simple results among
    /// the two relative orientations.
    pub fn band_sums(&self, x: usize, y: usize, arc: &HuggingArc) -> Result<Vec<MultiCurve>> {
        let t = &self.tri;
        let row = &self.owners[arc.cycle];
        let (Some(os), Some(oe)) = (row[arc.start], row[arc.end]) else {
            return Err(Error::Invalid("arc endpoints are not on curves".into()));
        };
        let ((_, ix), (_, iy)) = if os.0 == x && oe.0 == y {
            (os, oe)
        } else if os.0 == y && oe.0 == x {
            (oe, os)
        } else {
            return Err(Error::Invalid("arc does not join the two curves".into()));
        };
        let cyc = &t.boundary_cycles()[arc.cycle];
        let l = cyc.len();
        // Dart path from the corner of x to the corner of y.
        let path: Walk = if os.0 == x {
            (0..arc.len(l) - 1).map(|k| cyc[(arc.start + k) % l]).collect()
        } else {
            (0..arc.len(l) - 1)
                .map(|k| t.partner(cyc[(arc.end + l - 1 - k) % l]))
                .collect()
        };
        let wx = &self.walks[x];
        let wy = &self.walks[y];
        let mut out = Vec::new();
        for rev in [false, true] {
            let mut w: Walk = Vec::new();
            w.extend((0..wx.len()).map(|k| wx[(ix + k) % wx.len()]));
            w.extend_from_slice(&path);
            let ly = wy.len();
            if rev {
                let ry = walk::reverse(t, wy);
                let st = (ly - iy) % ly;
                w.extend((0..ly).map(|k| ry[(st + k) % ly]));
            } else {
                w.extend((0..ly).map(|k| wy[(iy + k) % ly]));
            }
            w.extend(walk::reverse(t, &path));
            let r = walk::reduce_cyclic(t, &w);
            if !r.is_empty() && walk::walk_is_simple(t, &r) {
                let c = MultiCurve::from_walk(t.clone(), &r)?;
                if !c.is_peripheral() {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }
}
