//! Overlay of a curve system and its complementary regions.
//!
//! Strands in every band are ordered by where their forward rays turn off,
//! which puts the curves in minimal position with all crossings inside the
//! junction disks. Each junction is then a disk cut by straight chords. The
//! complement is assembled from band slots and junction faces; the Euler
//! characteristic and the punctures met by each region identify disks and
//! once-punctured disks.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::curve::{same_triangulation, MultiCurve};
use super::triangulation::{side_of, tri_of, Triangulation};
use super::walk::Walk;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RegionKind {
    Disk,
    PuncturedDisk,
    Other { euler: i64, punctures: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complement {
    pub regions: Vec<RegionKind>,
    pub crossings: u64,
}

impl Complement {
    pub fn describe(&self) -> String {
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        for r in &self.regions {
            let k = match r {
                RegionKind::Disk => "disk".to_string(),
                RegionKind::PuncturedDisk => "punctured disk".to_string(),
                RegionKind::Other { euler, punctures } => {
                    format!("region(chi={euler}, punctures={punctures})")
                }
            };
            *counts.entry(k).or_default() += 1;
        }
        counts
            .iter()
            .map(|(k, v)| format!("{v} x {k}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

struct Uf(Vec<usize>);

impl Uf {
    fn new(n: usize) -> Self {
        Uf((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Ray of a strand seen in the canonical direction of its band.
struct Ray<'a> {
    w: &'a [usize],
    i: usize,
    forward: bool,
}

impl Ray<'_> {
    fn at(&self, t: &Triangulation, k: usize) -> usize {
        let l = self.w.len();
        if self.forward {
            self.w[(self.i + k) % l]
        } else {
            t.partner(self.w[(self.i + l - k % l) % l])
        }
    }
}

/// Which ray turns off to the left first, and after how many darts.
fn cmp_ray(t: &Triangulation, r1: &Ray, r2: &Ray, bound: usize) -> (Ordering, usize) {
    for k in 1..bound {
        let (d1, d2) = (r1.at(t, k), r2.at(t, k));
        if d1 != d2 {
            let sin = side_of(t.partner(r1.at(t, k - 1)));
            let o = if side_of(d1) == (sin + 2) % 3 { Ordering::Less } else { Ordering::Greater };
            return (o, k);
        }
    }
    (Ordering::Equal, bound)
}

/// Overlay the components of all curves and classify the complement.
pub fn complement(system: &[MultiCurve]) -> Result<Complement> {
    let Some(first) = system.first() else {
        return Err(Error::Invalid("empty curve system".into()));
    };
    let t = first.triangulation().clone();
    for c in system {
        if !same_triangulation(c.triangulation(), &t) {
            return Err(Error::TriangulationMismatch);
        }
    }
    let walks: Vec<Walk> = system.iter().flat_map(|c| c.walks()).collect();
    let ne = t.num_edges();
    let nt = t.num_triangles();

    // Strands of each band, sorted left to right in canonical direction.
    let mut bands: Vec<Vec<(usize, usize)>> = vec![Vec::new(); ne];
    for (c, w) in walks.iter().enumerate() {
        for (i, &d) in w.iter().enumerate() {
            bands[t.edge_of(d)].push((c, i));
        }
    }
    for e in 0..ne {
        let h = t.halves(e)[0];
        let mut v = std::mem::take(&mut bands[e]);
        v.sort_by(|&(c1, i1), &(c2, i2)| {
            let (w1, w2) = (&walks[c1], &walks[c2]);
            let bound = w1.len() + w2.len() + 2;
            let f1 = Ray { w: w1, i: i1, forward: w1[i1] == h };
            let f2 = Ray { w: w2, i: i2, forward: w2[i2] == h };
            let (of, kf) = cmp_ray(&t, &f1, &f2, bound);
            let b1 = Ray { w: w1, i: i1, forward: !f1.forward };
            let b2 = Ray { w: w2, i: i2, forward: !f2.forward };
            let (ob, kb) = cmp_ray(&t, &b1, &b2, bound);
            let ob = ob.reverse();
            if of == Ordering::Equal && ob == Ordering::Equal {
                // Parallel copies: the lower-indexed one runs on its own left.
                let lower_left = if (c1, i1) < (c2, i2) { f1.forward } else { !f2.forward };
                return if lower_left == ((c1, i1) < (c2, i2)) { Ordering::Less } else { Ordering::Greater };
            }
            if of == ob || ob == Ordering::Equal {
                return of;
            }
            if of == Ordering::Equal {
                return ob;
            }
            // The strands cross somewhere along their common run; decide at the
            // end ahead of a reference strand so every band of the run agrees.
            let run_start = |i: usize, fwd: bool, l: usize| {
                if fwd { (i + l * bound - kb + 1) % l } else { (i + l * bound - kf + 1) % l }
            };
            let first_is_ref = if c1 != c2 {
                c1 < c2
            } else {
                run_start(i1, f1.forward, w1.len()) < run_start(i2, f2.forward, w2.len())
            };
            let ref_forward = if first_is_ref { f1.forward } else { f2.forward };
            if ref_forward { of } else { ob }
        });
        bands[e] = v;
    }

    // Circle positions of strand endpoints in each junction.
    let mut slot_gaps: Vec<[Vec<usize>; 2]> = vec![[Vec::new(), Vec::new()]; ne];
    let mut gap_offset = vec![0usize; nt + 1];
    let mut point_pos: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut mouth_start = vec![[0usize; 3]; nt];
    let mut npoints = vec![0usize; nt];
    for tr in 0..nt {
        let mut pos = 0;
        for j in 0..3 {
            let h = 3 * tr + j;
            let e = t.edge_of(h);
            mouth_start[tr][j] = pos;
            let ccw: Vec<(usize, usize)> = if t.halves(e)[0] == h {
                bands[e].iter().rev().copied().collect()
            } else {
                bands[e].clone()
            };
            for s in ccw {
                point_pos.insert((h, s.0, s.1), pos);
                pos += 1;
            }
        }
        npoints[tr] = pos;
        gap_offset[tr + 1] = gap_offset[tr] + pos.max(1);
    }
    let gap_id = |tr: usize, k: isize| -> usize {
        let m = npoints[tr].max(1) as isize;
        gap_offset[tr] + k.rem_euclid(m) as usize
    };
    for tr in 0..nt {
        for j in 0..3 {
            let h = 3 * tr + j;
            let e = t.edge_of(h);
            let m = bands[e].len();
            let st = mouth_start[tr][j] as isize;
            let ccw_gaps: Vec<usize> = (0..=m as isize).map(|q| gap_id(tr, st - 1 + q)).collect();
            let canonical_out = t.halves(e)[0] == h;
            let lr: Vec<usize> = if canonical_out {
                ccw_gaps.iter().rev().copied().collect()
            } else {
                ccw_gaps
            };
            slot_gaps[e][if canonical_out { 0 } else { 1 }] = lr;
        }
    }

    // Chords per junction.
    let mut chords: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nt];
    for (c, w) in walks.iter().enumerate() {
        let l = w.len();
        for i in 0..l {
            let prev = w[(i + l - 1) % l];
            let hin = t.partner(prev);
            let tr = tri_of(w[i]);
            let a = point_pos[&(hin, c, (i + l - 1) % l)];
            let b = point_pos[&(w[i], c, i)];
            chords[tr].push((a.min(b), a.max(b)));
        }
    }

    let ngaps = gap_offset[nt];
    let mut uf = Uf::new(ngaps);
    let mut crossings = 0u64;
    let mut internal_faces = 0i64;
    let mut classes_per_junction: Vec<Vec<usize>> = vec![Vec::new(); nt];
    for tr in 0..nt {
        let m = npoints[tr];
        let ch = &chords[tr];
        let mut x = 0u64;
        for p in 0..ch.len() {
            for q in p + 1..ch.len() {
                let (a, b) = ch[p];
                let (c, d) = ch[q];
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    x += 1;
                }
            }
        }
        crossings += x;
        let mut sig_class: HashMap<Vec<bool>, usize> = HashMap::new();
        let ng = m.max(1);
        let mut cls = Vec::with_capacity(ng);
        for k in 0..ng {
            let sig: Vec<bool> = ch.iter().map(|&(a, b)| a <= k && k < b).collect();
            let n = sig_class.len();
            let id = *sig_class.entry(sig).or_insert(n);
            cls.push(id);
        }
        let nclasses = sig_class.len();
        let mut rep = vec![usize::MAX; nclasses];
        for (k, &id) in cls.iter().enumerate() {
            if rep[id] == usize::MAX {
                rep[id] = gap_offset[tr] + k;
            } else {
                uf.union(rep[id], gap_offset[tr] + k);
            }
        }
        internal_faces += 1 + ch.len() as i64 + x as i64 - nclasses as i64;
        classes_per_junction[tr] = rep;
    }
    for e in 0..ne {
        let [l0, l1] = &slot_gaps[e];
        for q in 0..l0.len() {
            uf.union(l0[q], l1[q]);
        }
    }

    // Tally faces, slots and punctures per region.
    let bidx = t.boundary_index();
    let mut faces: BTreeMap<usize, i64> = BTreeMap::new();
    let mut slots: BTreeMap<usize, i64> = BTreeMap::new();
    let mut punct: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for tr in 0..nt {
        for &g in &classes_per_junction[tr] {
            *faces.entry(uf.find(g)).or_default() += 1;
        }
        for j in 0..3 {
            let last = mouth_start[tr][j] as isize + bands[t.edge_of(3 * tr + j)].len() as isize - 1;
            let g = uf.find(gap_id(tr, last));
            let cyc = bidx[3 * tr + (j + 1) % 3];
            let v = punct.entry(g).or_default();
            if !v.contains(&cyc) {
                v.push(cyc);
            }
        }
    }
    for e in 0..ne {
        for &g in &slot_gaps[e][0] {
            *slots.entry(uf.find(g)).or_default() += 1;
        }
    }
    let mut regions: Vec<RegionKind> = faces
        .iter()
        .map(|(r, f)| {
            let euler = f - slots.get(r).copied().unwrap_or(0);
            let punctures = punct.get(r).map_or(0, |v| v.len());
            match (euler, punctures) {
                (1, 0) => RegionKind::Disk,
                (0, 1) => RegionKind::PuncturedDisk,
                _ => RegionKind::Other { euler, punctures },
            }
        })
        .collect();
    for _ in 0..internal_faces {
        regions.push(RegionKind::Disk);
    }
    regions.sort();
    Ok(Complement { regions, crossings })
}

/// Whether the system fills: every complementary region is a disk or a
/// once-punctured disk.
pub fn filling_check(system: &[MultiCurve]) -> Result<(bool, Complement)> {
    let comp = complement(system)?;
    let nonempty = system.iter().any(|c| !c.is_empty());
    let fills = nonempty
        && comp
            .regions
            .iter()
            .all(|r| matches!(r, RegionKind::Disk | RegionKind::PuncturedDisk));
    Ok((fills, comp))
}
