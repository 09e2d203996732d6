use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::triangulation::Triangulation;
use super::walk::{self, Walk};
use crate::error::{Error, Result};

/// Parity and triangle inequalities in every triangle.
pub fn is_admissible(t: &Triangulation, w: &[u64]) -> Result<bool> {
    if w.len() != t.num_edges() {
        return Err(Error::Invalid(format!(
            "weight vector has {} entries, triangulation has {} edges",
            w.len(),
            t.num_edges()
        )));
    }
    Ok(t.triangles().iter().all(|tri| {
        let (a, b, c) = (w[tri[0]], w[tri[1]], w[tri[2]]);
        (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b
    }))
}

/// A multicurve in normal coordinates on a fixed triangulation.
#[derive(Clone, Debug)]
pub struct MultiCurve {
    tri: Arc<Triangulation>,
    weights: Vec<u64>,
}

impl PartialEq for MultiCurve {
    fn eq(&self, other: &Self) -> bool {
        self.weights == other.weights && same_triangulation(&self.tri, &other.tri)
    }
}

impl Eq for MultiCurve {}

impl Hash for MultiCurve {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.weights.hash(state);
    }
}

impl PartialOrd for MultiCurve {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiCurve {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let sa: u64 = self.weights.iter().sum();
        let sb: u64 = other.weights.iter().sum();
        sa.cmp(&sb).then_with(|| self.weights.cmp(&other.weights))
    }
}

pub fn same_triangulation(a: &Arc<Triangulation>, b: &Arc<Triangulation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl MultiCurve {
    pub fn new(tri: Arc<Triangulation>, weights: Vec<u64>) -> Result<Self> {
        if !is_admissible(&tri, &weights)? {
            return Err(Error::Invalid(format!("weights {weights:?} are not admissible")));
        }
        Ok(MultiCurve { tri, weights })
    }

    pub fn empty(tri: Arc<Triangulation>) -> Self {
        let n = tri.num_edges();
        MultiCurve { tri, weights: vec![0; n] }
    }

    /// Curve carried by a closed walk; the walk is reduced first.
    pub fn from_walk(tri: Arc<Triangulation>, w: &[usize]) -> Result<Self> {
        if !walk::is_closed_walk(&tri, w) {
            return Err(Error::Invalid("not a closed walk".into()));
        }
        let r = walk::reduce_cyclic(&tri, w);
        let weights = walk::weights_of(&tri, &[r]);
        Ok(MultiCurve { tri, weights })
    }

    pub(crate) fn from_weights_unchecked(tri: Arc<Triangulation>, weights: Vec<u64>) -> Self {
        MultiCurve { tri, weights }
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn is_empty(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    pub fn walks(&self) -> Vec<Walk> {
        walk::trace(&self.tri, &self.weights)
    }

    /// Connected components with multiplicities, in order of first crossing.
    pub fn components(&self) -> Vec<(MultiCurve, u64)> {
        let mut out: Vec<(Walk, u64)> = Vec::new();
        for w in self.walks() {
            if let Some(slot) = out.iter_mut().find(|(u, _)| walk::cyclic_eq(u, &w)) {
                slot.1 += 1;
            } else {
                out.push((w, 1));
            }
        }
        out.into_iter()
            .map(|(w, m)| {
                let weights = walk::weights_of(&self.tri, &[w]);
                (MultiCurve { tri: self.tri.clone(), weights }, m)
            })
            .collect()
    }

    /// Exactly one component of multiplicity one.
    pub fn is_simple_curve(&self) -> bool {
        self.walks().len() == 1
    }

    /// The traced walk of a single curve.
    pub fn walk(&self) -> Result<Walk> {
        let mut ws = self.walks();
        if ws.len() != 1 {
            return Err(Error::Invalid(format!(
                "expected a single curve, found {} components",
                ws.len()
            )));
        }
        Ok(ws.pop().unwrap())
    }

    pub fn scaled(&self, k: u64) -> MultiCurve {
        MultiCurve {
            tri: self.tri.clone(),
            weights: self.weights.iter().map(|w| w * k).collect(),
        }
    }

    pub fn union(&self, other: &MultiCurve) -> Result<MultiCurve> {
        if !same_triangulation(&self.tri, &other.tri) {
            return Err(Error::TriangulationMismatch);
        }
        Ok(MultiCurve {
            tri: self.tri.clone(),
            weights: self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn to_text(&self) -> String {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        format!("C {}", ws.join(","))
    }

    pub fn from_text(tri: Arc<Triangulation>, s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('C')
            .ok_or_else(|| Error::Parse("curve record must start with C".into()))?;
        let weights: Vec<u64> = body
            .split(',')
            .map(|x| {
                x.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad weight {x:?}")))
            })
            .collect::<Result<_>>()?;
        MultiCurve::new(tri, weights)
    }

    /// Whether this single curve runs around one puncture.
    pub fn is_peripheral(&self) -> bool {
        let ws = self.walks();
        if ws.len() != 1 {
            return false;
        }
        let w = &ws[0];
        self.tri.boundary_cycles().iter().any(|cyc| {
            walk::cyclic_eq(cyc, w) || walk::cyclic_eq(&walk::reverse(&self.tri, cyc), w)
        })
    }
}

/// A single curve together with a direction of travel.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedCurve {
    pub base: MultiCurve,
    pub reversed: bool,
}

impl OrientedCurve {
    pub fn new(base: MultiCurve, reversed: bool) -> Result<Self> {
        if !base.is_simple_curve() {
            return Err(Error::Invalid("oriented curve needs exactly one component".into()));
        }
        Ok(OrientedCurve { base, reversed })
    }

    /// Orientation matching a given closed walk of the same curve.
    pub fn from_walk(tri: Arc<Triangulation>, w: &[usize]) -> Result<Self> {
        let base = MultiCurve::from_walk(tri.clone(), w)?;
        let canon = base.walk()?;
        let r = walk::reduce_cyclic(&tri, w);
        if walk::cyclic_eq(&canon, &r) {
            Ok(OrientedCurve { base, reversed: false })
        } else if walk::cyclic_eq(&walk::reverse(&tri, &canon), &r) {
            Ok(OrientedCurve { base, reversed: true })
        } else {
            Err(Error::Invalid("walk is not a simple closed curve".into()))
        }
    }

    pub fn walk(&self) -> Walk {
        let w = self.base.walk().expect("single component");
        if self.reversed {
            walk::reverse(self.base.triangulation(), &w)
        } else {
            w
        }
    }

    pub fn reversed(&self) -> OrientedCurve {
        OrientedCurve { base: self.base.clone(), reversed: !self.reversed }
    }
}
