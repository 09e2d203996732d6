//! Deterministic standard triangulations with named curves.
//!
//! For genus `g >= 1` the surface is a chain of once-holed tori joined by
//! bands: start from the two-triangle torus, add `n - 1` punctures, then glue
//! on one torus at a time. Torus pieces are triangles `(e0, e1, e2)` and
//! `(e2, e0, e1)`; the curve of slope `(p, q)` crosses `e0, e1, e2` in
//! `|q|, |p|, |p - q|` points. Extra tori are always attached across an `e2`
//! edge, so each piece keeps its own `e0` and `e1`. Genus zero starts from
//! two triangles glued along all three sides.
//!
//! The triangulation for `(g + 1, n)` is obtained from the one for `(g, n)`
//! by one more torus attachment whenever `g >= 1`.

use std::sync::Arc;

use super::ribbon::{map_walk, Band, Ribbon};
use super::triangulation::{SurfaceSig, Triangulation};
use super::walk::{self, Walk};
use crate::error::{Error, Result};

pub const TORUS: [[usize; 3]; 2] = [[0, 1, 2], [2, 0, 1]];
pub const PANTS: [[usize; 3]; 2] = [[0, 1, 2], [0, 2, 1]];

/// Torus piece weights for a slope in local edge order `(e0, e1, e2)`.
pub fn slope_weights(p: i64, q: i64) -> [u64; 3] {
    [q.unsigned_abs(), p.unsigned_abs(), (p - q).unsigned_abs()]
}

/// Standard page together with the walks of its distinguished curves.
#[derive(Clone, Debug)]
pub struct StandardPage {
    pub tri: Arc<Triangulation>,
    /// First triangle of each torus piece.
    pub torus_base: Vec<usize>,
    /// Slope `(1, 0)` of each torus piece.
    pub a: Vec<Walk>,
    /// Slope `(0, 1)` of each torus piece.
    pub b: Vec<Walk>,
}

impl StandardPage {
    /// Half-edges of the local edge `k` (0, 1 or 2) of torus piece `i`,
    /// in the order (side in first triangle, side in second triangle).
    pub fn torus_edge(&self, i: usize, k: usize) -> [usize; 2] {
        let t0 = self.torus_base[i];
        let first = TORUS[0].iter().position(|&x| x == k).unwrap();
        let second = TORUS[1].iter().position(|&x| x == k).unwrap();
        [3 * t0 + first, 3 * (t0 + 1) + second]
    }
}

fn all_maps(band: &Band, a: &mut [Walk], b: &mut [Walk]) {
    for w in a.iter_mut().chain(b.iter_mut()) {
        *w = map_walk(&band.dart_map, w);
    }
}

fn torus_curve(base: usize, p: i64, q: i64) -> Walk {
    let t = Triangulation::from_triangles(TORUS.to_vec()).expect("torus");
    let w = slope_weights(p, q);
    let mut ws = walk::trace(&t, &w);
    ws.pop().unwrap().into_iter().map(|d| d + 3 * base).collect()
}

pub fn standard_page(sig: SurfaceSig) -> Result<StandardPage> {
    if sig.euler() >= 0 {
        return Err(Error::Precondition(format!("{sig} has non-negative Euler characteristic")));
    }
    if sig.boundary == 0 {
        return Err(Error::Precondition("surfaces need at least one puncture".into()));
    }
    let mut rib;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut torus_base = Vec::new();
    let extra_punctures;
    if sig.genus == 0 {
        rib = Ribbon::new(PANTS.to_vec());
        extra_punctures = sig.boundary - 3;
    } else {
        rib = Ribbon::new(TORUS.to_vec());
        torus_base.push(0);
        a.push(torus_curve(0, 1, 0));
        b.push(torus_curve(0, 0, 1));
        extra_punctures = sig.boundary - 1;
    }
    for _ in 0..extra_punctures {
        // Two consecutive gaps of one boundary cycle.
        let p1 = if sig.genus == 0 { 0 } else { 2 };
        let p2 = {
            let q = rib.partner(p1);
            3 * (q / 3) + (q % 3 + 1) % 3
        };
        let band = rib.attach_band(p1, p2);
        all_maps(&band, &mut a, &mut b);
    }
    // Cursor gap for the next torus: side e2 of the newest piece.
    let mut cursor = if sig.genus >= 1 { 2 } else { 0 };
    for _ in 1..sig.genus {
        let off = rib.append(&TORUS);
        let gap_new = 3 * off + 2;
        let band = rib.attach_band(cursor, gap_new);
        all_maps(&band, &mut a, &mut b);
        torus_base.push(off);
        a.push(map_walk(&band.dart_map, &torus_curve(off, 1, 0)));
        b.push(map_walk(&band.dart_map, &torus_curve(off, 0, 1)));
        cursor = gap_new;
    }
    let tri = Triangulation::from_triangles(rib.tris).expect("band attachment keeps validity");
    debug_assert_eq!(tri.sig(), sig);
    if tri.sig() != sig {
        return Err(Error::Construction(format!("built {} instead of {sig}", tri.sig())));
    }
    Ok(StandardPage { tri: Arc::new(tri), torus_base, a, b })
}

pub fn standard_triangulation(sig: SurfaceSig) -> Result<Triangulation> {
    Ok((*standard_page(sig)?.tri).clone())
}
