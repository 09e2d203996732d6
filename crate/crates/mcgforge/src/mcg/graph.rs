//! Curve graph search over bounded enumerations.
//!
//! A search inside the curves of bounded total weight only sees a subgraph,
//! so its distances are upper bounds. Lower bounds come from intersection
//! data: distinct curves are at distance at least 1, intersecting curves at
//! least 2, and a filling pair at least 3.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::word::{act, TwistWord};
use crate::error::{Error, Result};
use crate::surface::{enumerate_curves, filling_check, intersection, MultiCurve, SurfaceSig, Triangulation};

/// Intersection number that counts as adjacency: 1 on the once-punctured
/// torus, 2 on the four-punctured sphere, 0 elsewhere.
pub fn adjacency_value(sig: SurfaceSig) -> Result<u64> {
    if !sig.is_non_sporadic() {
        return Err(Error::Precondition(format!("{sig} has no curve graph")));
    }
    Ok(match (sig.genus, sig.boundary) {
        (1, 1) => 1,
        (0, 4) => 2,
        _ => 0,
    })
}

fn complexity_one(sig: SurfaceSig) -> bool {
    3 * sig.genus as i64 - 3 + sig.boundary as i64 == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceEstimate {
    pub lower: u32,
    /// Distance inside the bounded graph, when found within the cap.
    pub upper: Option<u32>,
}

impl DistanceEstimate {
    pub fn exact(&self) -> Option<u32> {
        self.upper.filter(|&u| u == self.lower)
    }
}

/// Vertices are the enumerated curves; edges per `adjacency_value`.
pub struct CurveGraph {
    tri: Arc<Triangulation>,
    adjacency: u64,
    pub nodes: Vec<MultiCurve>,
    index: HashMap<MultiCurve, usize>,
    adj: Vec<Vec<usize>>,
}

impl CurveGraph {
    pub fn build(tri: &Arc<Triangulation>, weight_bound: u64) -> Result<Self> {
        let adjacency = adjacency_value(tri.sig())?;
        let nodes: Vec<MultiCurve> = enumerate_curves(tri, weight_bound).into_iter().collect();
        let index = nodes.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();
        let mut adj = vec![Vec::new(); nodes.len()];
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if intersection(&nodes[i], &nodes[j])? == adjacency {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        Ok(CurveGraph { tri: tri.clone(), adjacency, nodes, index, adj })
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }

    pub fn contains(&self, c: &MultiCurve) -> bool {
        self.index.contains_key(c)
    }

    fn neighbours_of(&self, c: &MultiCurve) -> Result<Vec<usize>> {
        if let Some(&k) = self.index.get(c) {
            return Ok(self.adj[k].clone());
        }
        let mut out = Vec::new();
        for (k, n) in self.nodes.iter().enumerate() {
            if intersection(c, n)? == self.adjacency {
                out.push(k);
            }
        }
        Ok(out)
    }

    /// Breadth-first distance inside the graph (with `a` and `b` added when
    /// they exceed the weight bound); `None` past `cap`.
    pub fn bfs_distance(&self, a: &MultiCurve, b: &MultiCurve, cap: u32) -> Result<Option<u32>> {
        if a == b {
            return Ok(Some(0));
        }
        if intersection(a, b)? == self.adjacency {
            return Ok((cap >= 1).then_some(1));
        }
        let target: Vec<bool> = {
            let nb = self.neighbours_of(b)?;
            let mut t = vec![false; self.nodes.len()];
            for k in nb {
                t[k] = true;
            }
            t
        };
        let mut dist = vec![u32::MAX; self.nodes.len()];
        let mut q = VecDeque::new();
        for k in self.neighbours_of(a)? {
            dist[k] = 1;
            q.push_back(k);
        }
        while let Some(u) = q.pop_front() {
            let d = dist[u];
            if target[u] {
                let total = d + 1;
                return Ok(Some(total).filter(|&t| t <= cap));
            }
            if d + 1 >= cap {
                continue;
            }
            for &v in &self.adj[u] {
                if dist[v] == u32::MAX {
                    dist[v] = d + 1;
                    q.push_back(v);
                }
            }
        }
        Ok(None)
    }

    /// All-pairs distances between graph vertices (`u32::MAX` if unreachable).
    pub fn all_pairs(&self) -> Vec<Vec<u32>> {
        let n = self.nodes.len();
        (0..n)
            .map(|s| {
                let mut dist = vec![u32::MAX; n];
                dist[s] = 0;
                let mut q = VecDeque::from([s]);
                while let Some(u) = q.pop_front() {
                    for &v in &self.adj[u] {
                        if dist[v] == u32::MAX {
                            dist[v] = dist[u] + 1;
                            q.push_back(v);
                        }
                    }
                }
                dist
            })
            .collect()
    }

    pub fn estimate(&self, a: &MultiCurve, b: &MultiCurve, cap: u32) -> Result<DistanceEstimate> {
        let lower = distance_lower_bound(a, b)?;
        let upper = self.bfs_distance(a, b, cap)?;
        Ok(DistanceEstimate { lower, upper })
    }
}

/// Lower bound on the curve graph distance from intersection data.
pub fn distance_lower_bound(a: &MultiCurve, b: &MultiCurve) -> Result<u32> {
    let sig = a.triangulation().sig();
    let adjacency = adjacency_value(sig)?;
    if a == b {
        return Ok(0);
    }
    let i = intersection(a, b)?;
    if i == adjacency {
        return Ok(1);
    }
    if complexity_one(sig) {
        return Ok(2);
    }
    if i == 0 {
        return Ok(1);
    }
    Ok(if filling_check(&[a.clone(), b.clone()])?.0 { 3 } else { 2 })
}

fn check_curve(c: &MultiCurve) -> Result<()> {
    if !c.is_simple_curve() || c.is_peripheral() {
        return Err(Error::Precondition("curve graph vertices are essential simple curves".into()));
    }
    Ok(())
}

pub fn estimate_distance(a: &MultiCurve, b: &MultiCurve, cap: u32, weight_bound: u64) -> Result<DistanceEstimate> {
    check_curve(a)?;
    check_curve(b)?;
    let g = CurveGraph::build(a.triangulation(), weight_bound)?;
    g.estimate(a, b, cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphDistance {
    /// Distance in the bounded graph; exact when `certified`.
    Found { distance: u32, certified: bool },
    /// Not reached within the cap; `lower` still holds.
    ExceedsCap { lower: u32 },
}

pub fn curve_graph_distance(a: &MultiCurve, b: &MultiCurve, cap: u32, weight_bound: u64) -> Result<GraphDistance> {
    let est = estimate_distance(a, b, cap, weight_bound)?;
    Ok(match est.upper {
        Some(d) => GraphDistance::Found { distance: d, certified: d == est.lower },
        None => GraphDistance::ExceedsCap { lower: est.lower },
    })
}

/// `d(a, b) <= 2 i(a, b) + 1`, with `d` the bounded-graph distance.
pub fn distance_bound_check(a: &MultiCurve, b: &MultiCurve, cap: u32, weight_bound: u64) -> Result<bool> {
    let i = intersection(a, b)?;
    let est = estimate_distance(a, b, cap, weight_bound)?;
    Ok(match est.upper {
        Some(d) => u64::from(d) <= 2 * i + 1,
        None => u64::from(cap) < 2 * i + 1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillBound {
    pub bound: i64,
    /// A positive bound rules out `h(a) = b`.
    pub distinct: bool,
}

/// Lower bound `N0 - (2 i(a, b) + 1)` on `d(b, h(a))`.
pub fn lemma_fill_bound(n0: i64, i_ab: i64) -> Result<FillBound> {
    if n0 < 0 || i_ab < 0 {
        return Err(Error::Precondition("N0 and i(a,b) must be non-negative".into()));
    }
    let bound = n0 - (2 * i_ab + 1);
    Ok(FillBound { bound, distinct: bound > 0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub weight_bound: u64,
    pub cap: u32,
    pub max_candidates: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchStatus {
    Exact,
    LowerBounded,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub best: Option<(String, DistanceEstimate)>,
    pub met_target: bool,
    pub status: SearchStatus,
    pub examined: usize,
    pub budget_exhausted: bool,
}

/// Look for a curve `c` with `d(c, h(c)) >= target`, scoring by the
/// certified lower bound first and the bounded-graph distance second.
pub fn large_distance_search(h: &TwistWord, target: u32, budget: SearchBudget) -> Result<(Option<MultiCurve>, SearchOutcome)> {
    let g = CurveGraph::build(h.triangulation(), budget.weight_bound)?;
    let total = g.nodes.len();
    let mut best: Option<(MultiCurve, DistanceEstimate)> = None;
    let mut examined = 0;
    for c in g.nodes.iter().take(budget.max_candidates) {
        examined += 1;
        let hc = act(h, c)?;
        let est = g.estimate(c, &hc, budget.cap)?;
        let better = match &best {
            None => true,
            Some((_, b)) => (est.lower, est.upper.unwrap_or(0)) > (b.lower, b.upper.unwrap_or(0)),
        };
        if better {
            best = Some((c.clone(), est));
        }
        if est.lower >= target && est.exact().is_some() {
            break;
        }
    }
    let met = best.as_ref().is_some_and(|(_, e)| e.lower >= target);
    let status = match &best {
        Some((_, e)) if met && e.exact().is_some() => SearchStatus::Exact,
        Some(_) if met => SearchStatus::LowerBounded,
        _ => SearchStatus::Inconclusive,
    };
    let outcome = SearchOutcome {
        best: best.as_ref().map(|(c, e)| (c.to_text(), *e)),
        met_target: met,
        status,
        examined,
        budget_exhausted: !met && examined < total,
    };
    Ok((best.map(|(c, _)| c), outcome))
}
