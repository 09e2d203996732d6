//! Ideal triangulations of punctured surfaces.
//!
//! A triangulation is stored as a list of triangles, each an ordered triple
//! of edge labels in counter-clockwise order. Side `j` of triangle `t` is the
//! half-edge `3t + j`. Every label occurs exactly twice and the two sides
//! carrying it are glued orientation-reversingly, so the triples determine
//! the surface. The dual graph is a trivalent ribbon graph whose vertices are
//! triangles; closed curves are walks in it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: u32,
    pub boundary: u32,
}

impl SurfaceSig {
    pub fn new(genus: u32, boundary: u32) -> Self {
        SurfaceSig { genus, boundary }
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    pub fn is_non_sporadic(&self) -> bool {
        3 * self.genus as i64 - 3 + self.boundary as i64 > 0
    }

    pub fn edge_count(&self) -> usize {
        (-3 * self.euler()) as usize
    }

    pub fn triangle_count(&self) -> usize {
        (-2 * self.euler()) as usize
    }

    /// Rank of the first homology of the punctured surface.
    pub fn homology_rank(&self) -> usize {
        (2 * self.genus + self.boundary - 1) as usize
    }
}

impl std::fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.boundary)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    sig: SurfaceSig,
    tris: Vec<[usize; 3]>,
    partner: Vec<usize>,
    halves: Vec<[usize; 2]>,
}

/// Triangle owning a half-edge.
#[inline]
pub fn tri_of(h: usize) -> usize {
    h / 3
}

/// Side index of a half-edge within its triangle.
#[inline]
pub fn side_of(h: usize) -> usize {
    h % 3
}

/// Next half-edge counter-clockwise in the same triangle.
#[inline]
pub fn rot(h: usize) -> usize {
    3 * (h / 3) + (h % 3 + 1) % 3
}

impl Triangulation {
    pub fn from_triangles(tris: Vec<[usize; 3]>) -> Result<Self> {
        if tris.is_empty() {
            return Err(Error::Invalid("triangulation has no triangles".into()));
        }
        let nedges = tris.iter().flatten().copied().max().unwrap() + 1;
        let mut seen: Vec<Vec<usize>> = vec![Vec::new(); nedges];
        for (t, tri) in tris.iter().enumerate() {
            for (j, &e) in tri.iter().enumerate() {
                seen[e].push(3 * t + j);
            }
        }
        let mut partner = vec![usize::MAX; 3 * tris.len()];
        let mut halves = Vec::with_capacity(nedges);
        for (e, hs) in seen.iter().enumerate() {
            if hs.len() != 2 {
                return Err(Error::Invalid(format!(
                    "edge {e} appears {} times, expected 2",
                    hs.len()
                )));
            }
            partner[hs[0]] = hs[1];
            partner[hs[1]] = hs[0];
            halves.push([hs[0], hs[1]]);
        }
        let f = tris.len() as i64;
        let e = nedges as i64;
        if 3 * f != 2 * e {
            return Err(Error::Invalid("3F != 2E".into()));
        }
        let mut t = Triangulation {
            sig: SurfaceSig::new(0, 0),
            tris,
            partner,
            halves,
        };
        if !t.is_connected() {
            return Err(Error::Invalid("triangulation is disconnected".into()));
        }
        let n = t.boundary_cycles().len() as i64;
        let chi = f - e;
        let two_g = 2 - n - chi;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(Error::Invalid("inconsistent Euler characteristic".into()));
        }
        t.sig = SurfaceSig::new((two_g / 2) as u32, n as u32);
        Ok(t)
    }

    pub fn sig(&self) -> SurfaceSig {
        self.sig
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.tris
    }

    pub fn num_triangles(&self) -> usize {
        self.tris.len()
    }

    pub fn num_edges(&self) -> usize {
        self.halves.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.partner.len()
    }

    #[inline]
    pub fn partner(&self, h: usize) -> usize {
        self.partner[h]
    }

    #[inline]
    pub fn edge_of(&self, h: usize) -> usize {
        self.tris[h / 3][h % 3]
    }

    /// The two half-edges of an edge, lower index first.
    pub fn halves(&self, e: usize) -> [usize; 2] {
        self.halves[e]
    }

    /// Boundary walk successor: cross the edge, then turn to the next side.
    #[inline]
    pub fn phi(&self, h: usize) -> usize {
        rot(self.partner[h])
    }

    /// Orbits of `phi`; each is one puncture (boundary component).
    pub fn boundary_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.partner.len()];
        let mut out = Vec::new();
        for h0 in 0..self.partner.len() {
            if seen[h0] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut h = h0;
            while !seen[h] {
                seen[h] = true;
                cyc.push(h);
                h = self.phi(h);
            }
            out.push(cyc);
        }
        out
    }

    /// Index of the boundary cycle containing each half-edge.
    pub fn boundary_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.partner.len()];
        for (i, cyc) in self.boundary_cycles().iter().enumerate() {
            for &h in cyc {
                idx[h] = i;
            }
        }
        idx
    }

    fn is_connected(&self) -> bool {
        let nt = self.tris.len();
        let mut seen = vec![false; nt];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(t) = stack.pop() {
            for j in 0..3 {
                let u = tri_of(self.partner[3 * t + j]);
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Whether the edge can be flipped: its sides lie in distinct triangles.
    pub fn is_flippable(&self, e: usize) -> bool {
        e < self.halves.len() && tri_of(self.halves[e][0]) != tri_of(self.halves[e][1])
    }

    /// Text form `T g n | a b c ; a b c ; ...`.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self
            .tris
            .iter()
            .map(|t| format!("{} {} {}", t[0], t[1], t[2]))
            .collect();
        format!("T {} {} | {}", self.sig.genus, self.sig.boundary, body.join(" ; "))
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix('T')
            .ok_or_else(|| Error::Parse("triangulation record must start with T".into()))?;
        let (head, body) = rest
            .split_once('|')
            .ok_or_else(|| Error::Parse("missing '|'".into()))?;
        let hv: Vec<u32> = head
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad integer {x:?}"))))
            .collect::<Result<_>>()?;
        if hv.len() != 2 {
            return Err(Error::Parse("expected `T g n`".into()));
        }
        let mut tris = Vec::new();
        for chunk in body.split(';') {
            let v: Vec<usize> = chunk
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad edge {x:?}"))))
                .collect::<Result<_>>()?;
            if v.len() != 3 {
                return Err(Error::Parse("each triangle needs three edges".into()));
            }
            tris.push([v[0], v[1], v[2]]);
        }
        let t = Triangulation::from_triangles(tris)?;
        if t.sig != SurfaceSig::new(hv[0], hv[1]) {
            return Err(Error::Parse(format!(
                "header says S_{{{},{}}} but triangles give {}",
                hv[0], hv[1], t.sig
            )));
        }
        Ok(t)
    }

    /// Spanning tree of the dual graph by breadth-first search from triangle 0.
    /// Returns, per edge, whether it belongs to the tree.
    pub fn dual_tree(&self) -> Vec<bool> {
        let nt = self.tris.len();
        let mut in_tree = vec![false; self.halves.len()];
        let mut seen = vec![false; nt];
        let mut queue = std::collections::VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(t) = queue.pop_front() {
            for j in 0..3 {
                let h = 3 * t + j;
                let u = tri_of(self.partner[h]);
                if !seen[u] {
                    seen[u] = true;
                    in_tree[self.edge_of(h)] = true;
                    queue.push_back(u);
                }
            }
        }
        in_tree
    }
}
