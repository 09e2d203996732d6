//! Triangulated punctured surfaces and curves in normal coordinates.

mod bandsum;
mod chain;
mod curve;
mod enumerate;
mod fill;
mod flip;
mod homology;
mod intersect;
pub mod ribbon;
mod standard;
mod triangulation;
pub mod walk;

use std::sync::Arc;

pub use bandsum::{BoundaryProfile, HuggingArc};
pub use chain::{chain_system, chain_system_on, ChainSystem};
pub use curve::{is_admissible, same_triangulation, MultiCurve, OrientedCurve};
pub use enumerate::enumerate_curves;
pub use fill::{complement, filling_check, Complement, RegionKind};
pub use flip::flip;
pub use homology::{cocycle_edges, homology_class, pairing_vector, walk_class};
pub use intersect::{
    algebraic_intersection, intersection, segments, twist, twist_walk, walk_algebraic,
    walk_intersection, Segment,
};
pub use standard::{slope_weights, standard_page, standard_triangulation, StandardPage, PANTS, TORUS};
pub use triangulation::{rot, side_of, tri_of, SurfaceSig, Triangulation};
pub use walk::Walk;

use crate::error::{Error, Result};

pub fn components(c: &MultiCurve) -> Vec<(MultiCurve, u64)> {
    c.components()
}

pub fn is_peripheral(c: &MultiCurve) -> bool {
    c.is_peripheral()
}

/// The two-triangle once-punctured torus.
pub fn torus() -> Arc<Triangulation> {
    Arc::new(Triangulation::from_triangles(TORUS.to_vec()).expect("torus"))
}

/// Curve of slope `p/q` on the once-punctured torus; `(p, q)` must be primitive.
pub fn slope_curve(t: &Arc<Triangulation>, p: i64, q: i64) -> Result<MultiCurve> {
    if t.sig() != SurfaceSig::new(1, 1) || t.num_edges() != 3 {
        return Err(Error::SurfaceMismatch("slope curves live on the torus".into()));
    }
    if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
        return Err(Error::Invalid(format!("slope ({p},{q}) is not primitive")));
    }
    let w = slope_weights(p, q);
    let mut out = vec![0; 3];
    for (k, lbl) in TORUS[0].iter().enumerate() {
        out[*lbl] = w[k];
    }
    MultiCurve::new(t.clone(), out)
}

/// Inverse of `slope_curve` up to sign: for torus weights returns `(p, q)`
/// with `q >= 0` (and `p > 0` when `q = 0`).
pub fn slope_of(c: &MultiCurve) -> Option<(i64, i64)> {
    let w = c.weights();
    if w.len() != 3 {
        return None;
    }
    let (q, p) = (w[0] as i64, w[1] as i64);
    let d = w[2] as i64;
    if (p - q).abs() == d {
        Some((p, q))
    } else if p + q == d {
        Some((-p, q))
    } else {
        None
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}
