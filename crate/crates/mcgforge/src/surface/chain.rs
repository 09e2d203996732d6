//! Chain of curves `a_1, b_1, c_1, b_2, ..., c_{g-1}, b_g` on a standard page.
//!
//! `c_k` is a band sum of `a_k` and `a_{k+1}` that is disjoint from every
//! `a_j`, meets `b_k` and `b_{k+1}` once and misses the other `b_j`.

use super::bandsum::BoundaryProfile;
use super::curve::MultiCurve;
use super::intersect::intersection;
use super::standard::{standard_page, StandardPage};
use super::triangulation::SurfaceSig;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ChainSystem {
    pub page: StandardPage,
    pub a: Vec<MultiCurve>,
    pub b: Vec<MultiCurve>,
    pub c: Vec<MultiCurve>,
}

impl ChainSystem {
    /// `a_1` and the `c_k`: pairwise disjoint.
    pub fn positive(&self) -> Vec<MultiCurve> {
        let mut v = vec![self.a[0].clone()];
        v.extend(self.c.iter().cloned());
        v
    }

    /// The `b_j`: pairwise disjoint.
    pub fn negative(&self) -> Vec<MultiCurve> {
        self.b.clone()
    }

    /// Curves in chain order.
    pub fn sequence(&self) -> Vec<MultiCurve> {
        let mut v = vec![self.a[0].clone()];
        for (k, b) in self.b.iter().enumerate() {
            v.push(b.clone());
            if let Some(c) = self.c.get(k) {
                v.push(c.clone());
            }
        }
        v
    }
}

pub fn chain_system_on(page: &StandardPage) -> Result<ChainSystem> {
    let t = page.tri.clone();
    let a: Vec<MultiCurve> = page.a.iter().map(|w| MultiCurve::from_walk(t.clone(), w)).collect::<Result<_>>()?;
    let b: Vec<MultiCurve> = page.b.iter().map(|w| MultiCurve::from_walk(t.clone(), w)).collect::<Result<_>>()?;
    let g = a.len();
    let mut c: Vec<MultiCurve> = Vec::new();
    if g >= 2 {
        let prof = BoundaryProfile::new(&a)?;
        for k in 0..g - 1 {
            let mut found = None;
            'arcs: for arc in prof.arcs_between(k, k + 1) {
                for cand in prof.band_sums(k, k + 1, &arc)? {
                    if chain_ok(&cand, k, &a, &b, &c)? {
                        found = Some(cand);
                        break 'arcs;
                    }
                }
            }
            c.push(found.ok_or_else(|| Error::Construction(format!("no chain curve c_{}", k + 1)))?);
        }
    }
    Ok(ChainSystem { page: page.clone(), a, b, c })
}

fn chain_ok(x: &MultiCurve, k: usize, a: &[MultiCurve], b: &[MultiCurve], earlier: &[MultiCurve]) -> Result<bool> {
    for j in 0..a.len() {
        if intersection(x, &a[j])? != 0 || intersection(x, &b[j])? != u64::from(j == k || j == k + 1) {
            return Ok(false);
        }
    }
    for e in earlier {
        if intersection(x, e)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Chain system on the standard `Σ_{g,1}`.
pub fn chain_system(genus: u32) -> Result<ChainSystem> {
    if genus == 0 {
        return Err(Error::Precondition("chains need genus at least 1".into()));
    }
    chain_system_on(&standard_page(SurfaceSig::new(genus, 1))?)
}
