//! Stallings curves on a stabilized page and the cosets they generate.

use serde::{Deserialize, Serialize};

use super::OpenBook;
use crate::error::{Error, Result};
use crate::mcg::{growth_certify, hamidi_tehrani, long_morton_check, Certificate, LongMortonFailure, TwistWord, DEFAULT_DELTA};
use crate::surface::{intersection, walk_class, BoundaryProfile, HuggingArc, MultiCurve};

pub const DISK_NOTE: &str =
    "the Stallings disks are made disjoint by placing the curves on distinct level fibers of the mapping torus";
pub const MANIFOLD_NOTE: &str =
    "every element is the monodromy of an open book of the same 3-manifold (Stallings twists on framing-0 curves); recorded, not verified";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetKind {
    Abelian { rank: usize },
    Free,
}

/// `base * <generators>`: each generator is `tau_c^n` on a named curve.
#[derive(Clone, Debug)]
pub struct CosetSpec {
    pub base: TwistWord,
    pub generators: Vec<(String, MultiCurve, i64)>,
    pub kind: CosetKind,
    pub notes: Vec<String>,
}

/// An element in terms of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CosetWord {
    /// Power of each generator, in generator order.
    Abelian(Vec<i64>),
    /// Reduced word: `(generator index, exponent)`, no zero exponents and
    /// no two neighbours on the same generator.
    Free(Vec<(usize, i64)>),
}

#[derive(Clone, Debug)]
pub struct StallingsCurve {
    pub id: String,
    pub curve: MultiCurve,
    pub summands: (String, String),
    pub arc: HuggingArc,
    pub homology: Vec<i64>,
    pub framing: i64,
}

fn core_ids(ob: &OpenBook, k: usize) -> Result<Vec<String>> {
    let st = &ob.stabilizations;
    let expected: Vec<(String, String, i64)> = (1..=k)
        .flat_map(|i| {
            [(format!("alpha{i}"), format!("a'{i}"), 1), (format!("beta{i}"), format!("b'{i}"), -1)]
        })
        .collect();
    if *st != expected || ob.page().boundary != 1 {
        return Err(Error::Precondition("open book is not the output of penner_stabilize".into()));
    }
    Ok(expected.into_iter().map(|(_, c, _)| c).collect())
}

fn stabilized_k(ob: &OpenBook) -> usize {
    ob.stabilizations.len() / 2
}

fn essential(c: &MultiCurve) -> bool {
    c.is_simple_curve() && !c.is_peripheral()
}

fn class_of(c: &MultiCurve) -> Result<Vec<i64>> {
    Ok(walk_class(c.triangulation(), &c.walk()?))
}

/// `t_i = a'_i # b'_{i+1}` (`t_k` uses `b'_1`) along disjoint arcs around
/// the binding. Checks disjointness, homology and framing 0; the framings
/// are written to the returned open book's ledger.
pub fn stallings_curves(ob_k: &OpenBook) -> Result<(OpenBook, Vec<StallingsCurve>)> {
    let k = stabilized_k(ob_k);
    let ids = core_ids(ob_k, k)?;
    let system: Vec<MultiCurve> = ids.iter().map(|i| ob_k.curve(i).cloned()).collect::<Result<_>>()?;
    let prof = BoundaryProfile::new(&system)?;
    let pairs: Vec<(usize, usize)> = (0..k).map(|i| (2 * i, 2 * ((i + 1) % k) + 1)).collect();

    struct Pick {
        arc: HuggingArc,
        curve: MultiCurve,
        class: Vec<i64>,
    }
    fn search(prof: &BoundaryProfile, pairs: &[(usize, usize)], chosen: &mut Vec<Pick>) -> Result<bool> {
        let Some(&(x, y)) = pairs.get(chosen.len()) else {
            return Ok(true);
        };
        for arc in prof.arcs_between(x, y) {
            let len = prof.cycle_len(arc.cycle);
            if !chosen.iter().all(|p| p.arc.compatible(&arc, len)) {
                continue;
            }
            for c in prof.band_sums(x, y, &arc)? {
                if !essential(&c) {
                    continue;
                }
                let class = class_of(&c)?;
                let neg: Vec<i64> = class.iter().map(|v| -v).collect();
                if class.iter().all(|&v| v == 0) || chosen.iter().any(|p| p.class == class || p.class == neg) {
                    continue;
                }
                let mut disjoint = true;
                for p in chosen.iter() {
                    if intersection(&p.curve, &c)? != 0 {
                        disjoint = false;
                        break;
                    }
                }
                if !disjoint {
                    continue;
                }
                chosen.push(Pick { arc, curve: c, class });
                if search(prof, pairs, chosen)? {
                    return Ok(true);
                }
                chosen.pop();
            }
        }
        Ok(false)
    }
    let mut chosen = Vec::new();
    if !search(&prof, &pairs, &mut chosen)? {
        return Err(Error::Construction("no disjoint system of Stallings band sums".into()));
    }
    let mut out_ob = ob_k.clone();
    let mut out = Vec::new();
    for (i, (p, &(x, y))) in chosen.into_iter().zip(&pairs).enumerate() {
        let id = format!("t{}", i + 1);
        let framing = out_ob.ledger.record_band_sum(&id, &ids[x], &ids[y])?;
        if framing != 0 {
            return Err(Error::Construction(format!("{id} has page framing {framing}")));
        }
        out_ob.curves.insert(id.clone(), p.curve.clone());
        out.push(StallingsCurve {
            id,
            curve: p.curve,
            summands: (ids[x].clone(), ids[y].clone()),
            arc: p.arc,
            homology: p.class,
            framing,
        });
    }
    Ok((out_ob, out))
}

/// Pseudo-Anosov certificate for the monodromy: Penner if the word has
/// Penner form on the base system plus cores, else the growth heuristic.
pub fn monodromy_certificate(ob: &OpenBook) -> Result<Option<Certificate>> {
    if let Some(c) = ob.penner_certificate()? {
        return Ok(Some(c));
    }
    match growth_certify(&ob.monodromy, ob.curve("b1")?, 8, DEFAULT_DELTA) {
        Ok(c) => Ok(c),
        Err(Error::Precondition(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug)]
pub struct AbelianCoset {
    pub open_book: OpenBook,
    pub spec: CosetSpec,
    pub stallings: Vec<StallingsCurve>,
    /// Base word followed by one twist per generator.
    pub word: TwistWord,
    pub base_certificate: Option<Certificate>,
    pub long_morton: std::result::Result<Certificate, LongMortonFailure>,
}

impl AbelianCoset {
    pub fn rank(&self) -> usize {
        self.stallings.len()
    }
}

pub fn abelian_coset(ob_k: &OpenBook, exponents: &[i64]) -> Result<AbelianCoset> {
    let k = stabilized_k(ob_k);
    if exponents.len() != k {
        return Err(Error::Invalid(format!("expected {k} exponents, got {}", exponents.len())));
    }
    if exponents.contains(&0) {
        return Err(Error::Invalid("coset exponents must be nonzero".into()));
    }
    let (ob, st) = stallings_curves(ob_k)?;
    let generators: Vec<(String, MultiCurve, i64)> =
        st.iter().zip(exponents).map(|(s, &n)| (s.id.clone(), s.curve.clone(), n)).collect();
    let spec = CosetSpec {
        base: ob.monodromy.clone(),
        generators,
        kind: CosetKind::Abelian { rank: k },
        notes: vec![DISK_NOTE.to_string(), MANIFOLD_NOTE.to_string()],
    };
    let word = coset_element(&spec, &CosetWord::Abelian(vec![1; k]))?;
    let base_certificate = monodromy_certificate(&ob)?;
    let gammas: Vec<MultiCurve> = st.iter().map(|s| s.curve.clone()).collect();
    let long_morton = match &base_certificate {
        Some(c) => long_morton_check(&ob.monodromy, c, &gammas)?,
        None => Err(LongMortonFailure::BaseCertificate("no pseudo-Anosov certificate for the monodromy".into())),
    };
    Ok(AbelianCoset { open_book: ob, spec, stallings: st, word, base_certificate, long_morton })
}

#[derive(Clone, Debug)]
pub struct FreeCoset {
    pub open_book: OpenBook,
    pub spec: CosetSpec,
    pub a: MultiCurve,
    pub b: MultiCurve,
    pub arcs: (HuggingArc, HuggingArc),
    pub intersection: u64,
    pub certificate: Certificate,
}

/// `a = a'_1 # b'_3` and `b = a'_2 # b'_4` along arcs crossing once.
pub fn free_coset(ob4: &OpenBook) -> Result<FreeCoset> {
    if stabilized_k(ob4) != 4 {
        return Err(Error::Precondition("free_coset needs penner_stabilize with k = 4".into()));
    }
    let ids = core_ids(ob4, 4)?;
    let system: Vec<MultiCurve> = ids.iter().map(|i| ob4.curve(i).cloned()).collect::<Result<_>>()?;
    let prof = BoundaryProfile::new(&system)?;
    let (xa, ya, xb, yb) = (0, 5, 2, 7);
    let mut found = None;
    'search: for ga in prof.arcs_between(xa, ya) {
        let len = prof.cycle_len(ga.cycle);
        for gb in prof.arcs_between(xb, yb) {
            if !ga.crosses_once(&gb, len) {
                continue;
            }
            for a in prof.band_sums(xa, ya, &ga)? {
                if !essential(&a) {
                    continue;
                }
                for b in prof.band_sums(xb, yb, &gb)? {
                    if essential(&b) && intersection(&a, &b)? == 4 {
                        found = Some((ga, gb, a, b));
                        break 'search;
                    }
                }
            }
        }
    }
    let (ga, gb, a, b) = found.ok_or_else(|| Error::Construction("no band sums with i(a, b) = 4".into()))?;
    let i = intersection(&a, &b)?;
    if i != 4 {
        return Err(Error::Construction(format!("i(a, b) = {i}, expected 4")));
    }
    let mut ob = ob4.clone();
    ob.ledger.record_band_sum("a", &ids[xa], &ids[ya])?;
    ob.ledger.record_band_sum("b", &ids[xb], &ids[yb])?;
    ob.curves.insert("a".into(), a.clone());
    ob.curves.insert("b".into(), b.clone());
    let certificate = hamidi_tehrani(&a, &b)?.ok_or_else(|| Error::Construction("FreeRank2 check failed".into()))?;
    let spec = CosetSpec {
        base: ob.monodromy.clone(),
        generators: vec![("a".into(), a.clone(), 1), ("b".into(), b.clone(), 1)],
        kind: CosetKind::Free,
        notes: vec![MANIFOLD_NOTE.to_string()],
    };
    Ok(FreeCoset { open_book: ob, spec, a, b, arcs: (ga, gb), intersection: i, certificate })
}

/// Full monodromy word of a coset element.
pub fn coset_element(spec: &CosetSpec, w: &CosetWord) -> Result<TwistWord> {
    let mut out = spec.base.clone();
    let gens = &spec.generators;
    match (w, &spec.kind) {
        (CosetWord::Abelian(m), CosetKind::Abelian { .. }) => {
            if m.len() != gens.len() {
                return Err(Error::Parse(format!("expected {} exponents, got {}", gens.len(), m.len())));
            }
            for ((id, c, n), &e) in gens.iter().zip(m) {
                if e != 0 {
                    out = out.then_twist(id, c.clone(), n * e)?;
                }
            }
        }
        (CosetWord::Free(letters), CosetKind::Free) => {
            for (k, &(g, e)) in letters.iter().enumerate() {
                if g >= gens.len() || e == 0 {
                    return Err(Error::Parse(format!("bad letter {k} in free word")));
                }
                if k > 0 && letters[k - 1].0 == g {
                    return Err(Error::Parse("free word is not reduced".into()));
                }
                let (id, c, n) = &gens[g];
                out = out.then_twist(id, c.clone(), n * e)?;
            }
        }
        _ => return Err(Error::Parse("word does not match the coset kind".into())),
    }
    Ok(out)
}
