//! Planar structure of a closed braid diagram.
//!
//! The strip between positions `i` and `i + 1` is cut by the `σ_i`
//! crossings into faces. The face between two cyclically consecutive
//! `σ_i` crossings is a bigon iff no `σ_{i±1}` letter lies between them.
//! The inner face has the `σ_1` crossings as corners and the outer face
//! the `σ_{n−1}` crossings.

use serde::{Deserialize, Serialize};

use super::closure::ClosureDiagram;

struct Uf(Vec<usize>);

impl Uf {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra.max(rb)] = ra.min(rb);
    }
}

/// Pairs of crossings that bound a common bigon face.
pub fn bigons(d: &ClosureDiagram) -> Vec<(usize, usize)> {
    let w = d.braid.letters();
    let n = d.braid.strands();
    let mut occ: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (t, &l) in w.iter().enumerate() {
        occ[l.unsigned_abs() as usize].push(t);
    }
    let mut out = Vec::new();
    for i in 1..n {
        let ts = &occ[i];
        if ts.len() < 2 {
            continue;
        }
        let neighbours: Vec<usize> = occ[i - 1].iter().chain(occ.get(i + 1).into_iter().flatten()).copied().collect();
        for j in 0..ts.len() {
            let (a, b) = (ts[j], ts[(j + 1) % ts.len()]);
            let between = neighbours.iter().any(|&t| if b > a { a < t && t < b } else { t > a || t < b });
            if !between {
                out.push((a, b));
            }
        }
    }
    for &i in &[1, n - 1] {
        if occ[i].len() == 2 {
            out.push((occ[i][0], occ[i][1]));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRegions {
    pub count: usize,
    /// Crossing indices of each region, in word order.
    pub regions: Vec<Vec<usize>>,
    /// Number of regions met by each component.
    pub visits: Vec<usize>,
}

/// Twist regions as classes of crossings joined by bigons.
pub fn twist_regions(d: &ClosureDiagram) -> TwistRegions {
    let c = d.crossings.len();
    let mut uf = Uf((0..c).collect());
    for (a, b) in bigons(d) {
        uf.union(a, b);
    }
    let mut root_id = vec![usize::MAX; c];
    let mut regions: Vec<Vec<usize>> = Vec::new();
    for x in 0..c {
        let r = uf.find(x);
        if root_id[r] == usize::MAX {
            root_id[r] = regions.len();
            regions.push(Vec::new());
        }
        regions[root_id[r]].push(x);
    }
    let visits = (0..d.num_components)
        .map(|k| {
            regions
                .iter()
                .filter(|reg| {
                    reg.iter().any(|&x| {
                        let (a, b) = d.crossings[x].components;
                        a == k || b == k
                    })
                })
                .count()
        })
        .collect();
    TwistRegions { count: regions.len(), regions, visits }
}

/// Edges of the 4-valent diagram graph: consecutive crossings along each
/// position, closed up cyclically.
pub fn diagram_edges(d: &ClosureDiagram) -> Vec<(usize, usize)> {
    let n = d.braid.strands();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![usize::MAX; n];
    let mut e = Vec::new();
    for (t, &l) in d.braid.letters().iter().enumerate() {
        let i = l.unsigned_abs() as usize - 1;
        for p in [i, i + 1] {
            if last[p] == usize::MAX {
                first[p] = t;
            } else {
                e.push((last[p], t));
            }
            last[p] = t;
        }
    }
    for p in 0..n {
        if last[p] != usize::MAX {
            e.push((last[p], first[p]));
        }
    }
    e
}

fn connected_without(c: usize, edges: &[(usize, usize)], skip: &[usize]) -> bool {
    if c == 0 {
        return true;
    }
    let mut adj = vec![Vec::new(); c];
    for (k, &(a, b)) in edges.iter().enumerate() {
        if !skip.contains(&k) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; c];
    let mut stack = vec![0];
    seen[0] = true;
    let mut cnt = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                cnt += 1;
                stack.push(y);
            }
        }
    }
    cnt == c
}

/// Connected as a plane diagram (no split circle).
pub fn is_connected(d: &ClosureDiagram) -> bool {
    d.braid.uses_all_generators() && connected_without(d.crossings.len(), &diagram_edges(d), &[])
}

/// No two edges form a cut with crossings on both sides.
pub fn is_prime(d: &ClosureDiagram) -> bool {
    let c = d.crossings.len();
    let e = diagram_edges(d);
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            if !connected_without(c, &e, &[i, j]) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MenascoCertificate {
    pub braid: String,
    pub crossings: usize,
    pub twist_number: usize,
    pub alternating: bool,
    pub connected: bool,
    pub prime: bool,
    pub torus_two_q: bool,
}

/// Hyperbolicity from an alternating, connected, prime diagram that is not
/// a standard `(2, q)` torus diagram (a single twist region).
pub fn menasco_check(d: &ClosureDiagram) -> Option<MenascoCertificate> {
    let alternating = d.braid.is_alternating();
    let connected = is_connected(d);
    if !alternating || !connected {
        return None;
    }
    let tw = twist_regions(d);
    let torus_two_q = tw.count <= 1;
    if torus_two_q {
        return None;
    }
    if !is_prime(d) {
        return None;
    }
    Some(MenascoCertificate {
        braid: d.braid.to_string(),
        crossings: d.crossings.len(),
        twist_number: tw.count,
        alternating,
        connected,
        prime: true,
        torus_two_q,
    })
}
