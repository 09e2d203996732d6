//! Open books as a page with a twist-word monodromy, Hopf stabilization
//! and the cosets generated by Stallings twists.
//!
//! The page carries its own triangulation. A Hopf band is attached across
//! an ideal edge; that edge is the plumbing arc and the band core crosses
//! it once. Earlier curves are carried into the new triangulation through
//! the band's dart map, so the standard edge labels of the base page stay
//! valid after any number of stabilizations.

mod coset;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use coset::{
    abelian_coset, coset_element, free_coset, stallings_curves, AbelianCoset, CosetKind, CosetSpec, CosetWord,
    monodromy_certificate, FreeCoset, StallingsCurve, DISK_NOTE, MANIFOLD_NOTE,
};

use crate::error::{Error, Result};
use crate::mcg::{penner_certify, Certificate, TwistWord};
use crate::surface::ribbon::{map_walk, Ribbon};
use crate::surface::{chain_system, flip, MultiCurve, SurfaceSig, Triangulation};

/// Page framings `lk(c, c+)` of distinguished curves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramingLedger {
    pub entries: BTreeMap<String, i64>,
}

impl FramingLedger {
    pub fn get(&self, id: &str) -> Option<i64> {
        self.entries.get(id).copied()
    }

    pub fn record(&mut self, id: &str, framing: i64) {
        self.entries.insert(id.to_string(), framing);
    }

    /// Entry for a band sum of two curves with zero mutual linking.
    pub fn record_band_sum(&mut self, id: &str, x: &str, y: &str) -> Result<i64> {
        let (fx, fy) = match (self.get(x), self.get(y)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Invalid(format!("no framing recorded for {x} or {y}"))),
        };
        self.record(id, fx + fy);
        Ok(fx + fy)
    }
}

/// A plumbing arc: the ideal edge through gap `gap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcSpec {
    pub gap: usize,
}

#[derive(Clone, Debug)]
pub struct OpenBook {
    tri: Arc<Triangulation>,
    pub monodromy: TwistWord,
    pub ledger: FramingLedger,
    /// Named curves carried through every stabilization.
    pub curves: BTreeMap<String, MultiCurve>,
    /// Plumbing arcs by name, for instance `alpha1` and `beta1`.
    pub catalog: BTreeMap<String, ArcSpec>,
    /// `(arc, core id, sign)` in the order performed.
    pub stabilizations: Vec<(String, String, i64)>,
    /// Genus of the page before any stabilization.
    pub base_genus: u32,
}

impl OpenBook {
    /// Page `Σ_{g,1}` with the chain system named `a1, b1..bg, c1..c(g-1)`
    /// and plumbing arcs `alpha_i`, `beta_i`. `beta_i` is the `e1` edge of
    /// torus `i`; it crosses `a_i` once and misses every `b_j`. `alpha_i`
    /// crosses `b_i` once and misses `a_i`, `a_1`, the `c`'s and the other
    /// `b_j`; where the `e0` edge does not qualify, edges are flipped until
    /// one does. A monodromy given on the standard triangulation is carried
    /// through the same flips.
    pub fn standard(genus: u32, monodromy: Option<TwistWord>) -> Result<Self> {
        let ch = chain_system(genus)?;
        let g = genus as usize;
        let std_tri = ch.page.tri.clone();
        let mut named: Vec<(String, MultiCurve)> = Vec::new();
        for (i, c) in ch.a.iter().enumerate() {
            named.push((format!("a{}", i + 1), c.clone()));
        }
        for (i, c) in ch.b.iter().enumerate() {
            named.push((format!("b{}", i + 1), c.clone()));
        }
        for (i, c) in ch.c.iter().enumerate() {
            named.push((format!("c{}", i + 1), c.clone()));
        }
        let word_curves: Vec<(String, MultiCurve)> = match &monodromy {
            Some(w) => {
                if w.triangulation().triangles() != std_tri.triangles() {
                    return Err(Error::SurfaceMismatch("monodromy must live on the standard page".into()));
                }
                w.curves().iter().map(|(k, c)| (k.clone(), c.clone())).collect()
            }
            None => Vec::new(),
        };
        let betas: Vec<usize> = (0..g).map(|i| std_tri.edge_of(ch.page.torus_edge(i, 1)[0])).collect();
        let idx = |id: &str| named.iter().position(|(k, _)| k == id).unwrap();
        let avoid: Vec<usize> = std::iter::once(idx("a1")).chain((1..g).map(|k| idx(&format!("c{k}")))).collect();
        let b_idx: Vec<usize> = (1..=g).map(|k| idx(&format!("b{k}"))).collect();
        let a_idx: Vec<usize> = (1..=g).map(|k| idx(&format!("a{k}"))).collect();
        let good = |cs: &[MultiCurve], e: usize, i: usize| {
            avoid.iter().all(|&k| cs[k].weights()[e] == 0)
                && cs[a_idx[i]].weights()[e] == 0
                && (0..g).all(|j| cs[b_idx[j]].weights()[e] == u64::from(i == j))
        };

        let mut tri = std_tri.clone();
        let mut all: Vec<MultiCurve> = named.iter().chain(&word_curves).map(|(_, c)| c.clone()).collect();
        let mut alphas: Vec<usize> = Vec::new();
        for i in 0..g {
            let protected = |e: usize, alphas: &[usize]| betas.contains(&e) || alphas.contains(&e);
            let e0 = tri.edge_of(ch.page.torus_edge(i, 0)[0]);
            let direct = std::iter::once(e0)
                .chain(0..tri.num_edges())
                .find(|&e| !protected(e, &alphas) && good(&all, e, i));
            if let Some(e) = direct {
                alphas.push(e);
                continue;
            }
            let mut done = false;
            for f in 0..tri.num_edges() {
                if protected(f, &alphas) || !tri.is_flippable(f) {
                    continue;
                }
                let (nt, ncs) = flip(&tri, &all, f)?;
                if good(&ncs, f, i) {
                    tri = nt;
                    all = ncs;
                    alphas.push(f);
                    done = true;
                    break;
                }
            }
            if !done {
                return Err(Error::Construction(format!("no plumbing arc alpha{} found", i + 1)));
            }
        }

        let n_named = named.len();
        let curves: BTreeMap<String, MultiCurve> =
            named.iter().map(|(k, _)| k.clone()).zip(all[..n_named].iter().cloned()).collect();
        let mut catalog = BTreeMap::new();
        for i in 0..g {
            catalog.insert(format!("alpha{}", i + 1), ArcSpec { gap: tri.halves(alphas[i])[0] });
            catalog.insert(format!("beta{}", i + 1), ArcSpec { gap: tri.halves(betas[i])[0] });
        }
        let monodromy = match monodromy {
            Some(w) => {
                let carried: BTreeMap<String, MultiCurve> =
                    word_curves.iter().map(|(k, _)| k.clone()).zip(all[n_named..].iter().cloned()).collect();
                let t2 = tri.clone();
                w.map_curves(tri.clone(), |c| {
                    let id = w.curves().iter().find(|(_, x)| *x == c).map(|(k, _)| k.clone()).unwrap();
                    MultiCurve::new(t2.clone(), carried[&id].weights().to_vec())
                })?
            }
            None => TwistWord::identity(tri.clone()),
        };
        Ok(OpenBook {
            tri,
            monodromy,
            ledger: FramingLedger::default(),
            curves,
            catalog,
            stabilizations: Vec::new(),
            base_genus: genus,
        })
    }

    /// Standard page with the chain Penner word: positive twists on `a1` and
    /// the `c`'s, then negative twists on the `b`'s (rightmost first).
    pub fn penner_base(genus: u32) -> Result<Self> {
        let mut ob = OpenBook::standard(genus, None)?;
        let mut w = TwistWord::identity(ob.tri.clone());
        for id in ob.positive_ids() {
            w = w.then_twist(&id, ob.curves[&id].clone(), 1)?;
        }
        for id in ob.negative_ids() {
            w = w.then_twist(&id, ob.curves[&id].clone(), -1)?;
        }
        ob.monodromy = w;
        Ok(ob)
    }

    fn positive_ids(&self) -> Vec<String> {
        let g = self.base_genus;
        std::iter::once("a1".to_string()).chain((1..g).map(|k| format!("c{k}"))).collect()
    }

    fn negative_ids(&self) -> Vec<String> {
        (1..=self.base_genus).map(|k| format!("b{k}")).collect()
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }

    pub fn page(&self) -> SurfaceSig {
        self.tri.sig()
    }

    pub fn binding_components(&self) -> u32 {
        self.page().boundary
    }

    pub fn curve(&self, id: &str) -> Result<&MultiCurve> {
        self.curves.get(id).ok_or_else(|| Error::Invalid(format!("no curve named {id}")))
    }

    /// Penner certificate for the monodromy with the base system plus the
    /// cores: positive cores join `A`, negative cores join `B`.
    pub fn penner_certificate(&self) -> Result<Option<Certificate>> {
        let mut pos = self.positive_ids();
        let mut neg = self.negative_ids();
        for (_, core, sign) in &self.stabilizations {
            if *sign > 0 { pos.push(core.clone()) } else { neg.push(core.clone()) }
        }
        let get = |ids: &[String]| -> Result<Vec<MultiCurve>> { ids.iter().map(|i| self.curve(i).cloned()).collect() };
        penner_certify(&self.monodromy, &get(&pos)?, &get(&neg)?)
    }
}

fn carry(c: &MultiCurve, map: &[Vec<usize>], tri: &Arc<Triangulation>) -> Result<MultiCurve> {
    let mut w = vec![0u64; tri.num_edges()];
    for walk in c.walks() {
        for d in map_walk(map, &walk) {
            w[tri.edge_of(d)] += 1;
        }
    }
    MultiCurve::new(tri.clone(), w)
}

/// Plumb a Hopf band along a catalog arc; the monodromy gains
/// `tau_core^sign` on the right and the core is recorded with framing
/// `-sign`. The core is named `core_id`.
pub fn hopf_stabilize(ob: &OpenBook, arc: &str, sign: i64, core_id: &str) -> Result<OpenBook> {
    if sign != 1 && sign != -1 {
        return Err(Error::Invalid(format!("stabilization sign must be +1 or -1, got {sign}")));
    }
    let spec = *ob.catalog.get(arc).ok_or_else(|| Error::Invalid(format!("arc {arc} is not in the catalog")))?;
    if ob.stabilizations.iter().any(|(a, _, _)| a == arc) {
        return Err(Error::Invalid(format!("arc {arc} was already used")));
    }
    if ob.curves.contains_key(core_id) || ob.monodromy.curve(core_id).is_some() {
        return Err(Error::Invalid(format!("curve id {core_id} is taken")));
    }
    let old = ob.page();
    let p1 = spec.gap;
    let p2 = ob.tri.partner(p1);
    let bidx = ob.tri.boundary_index();
    let same_component = bidx[p1] == bidx[p2];

    let mut rib = Ribbon::new(ob.tri.triangles().to_vec());
    let band = rib.attach_band(p1, p2);
    let tri = Arc::new(Triangulation::from_triangles(rib.tris)?);
    let new = tri.sig();
    let expect = if same_component {
        SurfaceSig::new(old.genus, old.boundary + 1)
    } else {
        SurfaceSig::new(old.genus + 1, old.boundary - 1)
    };
    if new != expect || new.euler() != old.euler() - 1 {
        return Err(Error::Construction(format!("stabilizing {old} along {arc} gave {new}")));
    }
    let core = MultiCurve::from_walk(tri.clone(), &[3 * band.w1 + 2, 3 * band.w2])?;
    if !core.is_simple_curve() || core.is_peripheral() {
        return Err(Error::Construction(format!("core of {arc} is not essential")));
    }
    let map = &band.dart_map;
    let mut curves = BTreeMap::new();
    for (id, c) in &ob.curves {
        curves.insert(id.clone(), carry(c, map, &tri)?);
    }
    curves.insert(core_id.to_string(), core.clone());
    let monodromy = ob
        .monodromy
        .map_curves(tri.clone(), |c| carry(c, map, &tri))?
        .then_twist(core_id, core, sign)?;
    let mut ledger = ob.ledger.clone();
    ledger.record(core_id, -sign);
    let mut stabilizations = ob.stabilizations.clone();
    stabilizations.push((arc.to_string(), core_id.to_string(), sign));
    Ok(OpenBook {
        tri,
        monodromy,
        ledger,
        curves,
        catalog: ob.catalog.clone(),
        stabilizations,
        base_genus: ob.base_genus,
    })
}

/// Positive stabilizations along `alpha_i` and negative ones along
/// `beta_i` for `i = 1..=k`, alternating. Cores are `a'i` and `b'i`.
pub fn penner_stabilize(ob: &OpenBook, k: u32) -> Result<OpenBook> {
    let sig = ob.page();
    if sig.boundary != 1 || !ob.stabilizations.is_empty() {
        return Err(Error::Precondition("penner_stabilize starts from an unstabilized Σ_{g,1}".into()));
    }
    if k < 1 || k > sig.genus {
        return Err(Error::Invalid(format!("k = {k} outside 1..={}", sig.genus)));
    }
    let mut cur = ob.clone();
    for i in 1..=k {
        cur = hopf_stabilize(&cur, &format!("alpha{i}"), 1, &format!("a'{i}"))?;
        cur = hopf_stabilize(&cur, &format!("beta{i}"), -1, &format!("b'{i}"))?;
    }
    Ok(cur)
}
