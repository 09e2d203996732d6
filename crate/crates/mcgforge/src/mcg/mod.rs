//! Mapping classes as products of Dehn twists.
//!
//! Words act on normal coordinates; certificates record the checks behind a
//! pseudo-Anosov or freeness verdict so they can be replayed later.

mod cert;
mod graph;
mod growth;
mod word;

use serde::{Deserialize, Serialize};
use serde_json::json;

pub use cert::{CertBuilder, CertKind, Certificate, Fact, Premise};
pub use graph::{
    adjacency_value, curve_graph_distance, distance_bound_check, distance_lower_bound, estimate_distance,
    large_distance_search, lemma_fill_bound, CurveGraph, DistanceEstimate, FillBound, GraphDistance, SearchBudget,
    SearchOutcome, SearchStatus,
};
pub use growth::{classify, growth_estimate, intersection_sequence, GrowthReport, GrowthVerdict, DEFAULT_DELTA, MAX_TOTAL_WEIGHT};
pub use word::{act, act_bounded, Letter, TwistWord};

use crate::error::{Error, Result};
use crate::surface::{filling_check, intersection, same_triangulation, twist, MultiCurve};

fn single(c: &MultiCurve) -> Result<()> {
    if !c.is_simple_curve() {
        return Err(Error::Precondition("expected a single simple closed curve".into()));
    }
    Ok(())
}

fn essential(c: &MultiCurve) -> bool {
    c.is_simple_curve() && !c.is_peripheral()
}

/// `i(tau_a^n(b), b) == |n| i(a, b)^2`.
pub fn twist_law_check(a: &MultiCurve, b: &MultiCurve, n: i64) -> Result<bool> {
    single(a)?;
    single(b)?;
    let i = intersection(a, b)?;
    let lhs = intersection(&twist(a, b, n)?, b)?;
    Ok(lhs == n.unsigned_abs() * i * i)
}

/// Whether `w` fixes every curve of a filling system. On surfaces whose
/// boundary is fixed this is the only periodic class reported.
pub fn acts_trivially(w: &TwistWord, system: &[MultiCurve]) -> Result<bool> {
    if !filling_check(system)?.0 {
        return Err(Error::Precondition("the test system must fill".into()));
    }
    for c in system {
        if act(w, c)? != *c {
            return Ok(false);
        }
    }
    Ok(true)
}

fn word_id_of(w: &TwistWord, c: &MultiCurve) -> Option<String> {
    w.curves().iter().find(|(_, x)| *x == c).map(|(id, _)| id.clone())
}

/// Penner criterion: `A` and `B` are multicurves that together fill and the
/// word uses only positive twists on `A` and negative twists on `B`,
/// covering every curve. Returns `None` when a hypothesis fails.
pub fn penner_certify(w: &TwistWord, a: &[MultiCurve], b: &[MultiCurve]) -> Result<Option<Certificate>> {
    for c in a.iter().chain(b) {
        if !same_triangulation(c.triangulation(), w.triangulation()) {
            return Err(Error::TriangulationMismatch);
        }
        if !essential(c) {
            return Err(Error::Precondition("Penner system curves must be essential".into()));
        }
    }
    for set in [a, b] {
        for (x, cx) in set.iter().enumerate() {
            for cy in &set[x + 1..] {
                if intersection(cx, cy)? != 0 {
                    return Err(Error::Precondition("each side of a Penner system must be disjoint".into()));
                }
            }
        }
    }
    let ids = |set: &[MultiCurve]| -> Option<Vec<String>> { set.iter().map(|c| word_id_of(w, c)).collect() };
    let (Some(pos), Some(neg)) = (ids(a), ids(b)) else {
        return Ok(None);
    };
    if !cert::penner_form(w, &pos, &neg) {
        return Ok(None);
    }
    let system: Vec<MultiCurve> = a.iter().chain(b).cloned().collect();
    if !filling_check(&system)?.0 {
        return Ok(None);
    }

    let mut cb = CertBuilder::new(CertKind::PennerPA, w.triangulation());
    cb.word("w", w);
    for set in [&pos, &neg] {
        for (x, p) in set.iter().enumerate() {
            cb.premise(format!("{p} is essential"), Fact::Essential { curve: p.clone() });
            for q in &set[x + 1..] {
                cb.premise(
                    format!("{p} and {q} are disjoint"),
                    Fact::Intersection { a: p.clone(), b: q.clone(), value: 0 },
                );
            }
        }
    }
    let all: Vec<String> = pos.iter().chain(&neg).cloned().collect();
    cb.premise("the system fills", Fact::Fills { curves: all, value: true });
    cb.premise(
        "positive twists on A, negative twists on B, every curve used",
        Fact::PennerForm { word: "w".into(), positive: pos.clone(), negative: neg.clone() },
    );
    cb.payload("A", json!(pos)).payload("B", json!(neg)).payload("letters", json!(w.len()));
    Ok(Some(cb.finish()))
}

/// Heuristic pseudo-Anosov certificate from intersection growth. Not a proof.
pub fn growth_certify(w: &TwistWord, seed: &MultiCurve, iterations: usize, delta: f64) -> Result<Option<Certificate>> {
    let rep = growth_estimate(w, seed, iterations, delta)?;
    if rep.verdict != GrowthVerdict::HeuristicPA {
        return Ok(None);
    }
    let mut cb = CertBuilder::new(CertKind::GrowthPA, w.triangulation());
    cb.word("w", w).curve("seed", seed);
    cb.premise(
        "intersection sequence i(w^n(seed), seed)",
        Fact::GrowthSequence {
            word: "w".into(),
            seed: "seed".into(),
            values: rep.values.iter().map(|v| v.to_string()).collect(),
        },
    );
    cb.payload("estimate", json!(rep.estimate))
        .payload("delta", json!(delta))
        .payload("heuristic", json!(true));
    Ok(Some(cb.finish()))
}

/// Free rank-two certificate for twists on `a` and `b` when `i(a, b) >= 2`.
pub fn hamidi_tehrani(a: &MultiCurve, b: &MultiCurve) -> Result<Option<Certificate>> {
    single(a)?;
    single(b)?;
    if !essential(a) || !essential(b) {
        return Err(Error::Precondition("curves must be essential".into()));
    }
    let i = intersection(a, b)?;
    if i < 2 {
        return Ok(None);
    }
    let mut cb = CertBuilder::new(CertKind::FreeRank2, a.triangulation());
    cb.curve("a", a).curve("b", b);
    cb.premise("a is essential", Fact::Essential { curve: "a".into() });
    cb.premise("b is essential", Fact::Essential { curve: "b".into() });
    cb.premise("i(a, b) >= 2", Fact::Intersection { a: "a".into(), b: "b".into(), value: i });
    cb.payload("intersection", json!(i))
        .payload("conclusion", json!("the twists about a and b generate a free group of rank two"));
    Ok(Some(cb.finish()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LongMortonFailure {
    BaseCertificate(String),
    NotEssential(usize),
    Intersecting(usize, usize),
    Parallel(usize, usize),
    ImageDisjoint(usize, usize),
}

impl std::fmt::Display for LongMortonFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LongMortonFailure::BaseCertificate(s) => write!(f, "pseudo-Anosov certificate rejected: {s}"),
            LongMortonFailure::NotEssential(i) => write!(f, "curve {i} is not essential"),
            LongMortonFailure::Intersecting(i, j) => write!(f, "curves {i} and {j} intersect"),
            LongMortonFailure::Parallel(i, j) => write!(f, "curves {i} and {j} are parallel"),
            LongMortonFailure::ImageDisjoint(i, j) => write!(f, "i(f(gamma_{i}), gamma_{j}) = 0"),
        }
    }
}

/// Hypotheses for `f` composed with large twists about disjoint curves to
/// be pseudo-Anosov. The threshold on the exponents is not computed.
pub fn long_morton_check(
    f: &TwistWord,
    f_pa: &Certificate,
    gammas: &[MultiCurve],
) -> Result<std::result::Result<Certificate, LongMortonFailure>> {
    use LongMortonFailure as F;
    let heuristic = match f_pa.kind {
        CertKind::PennerPA => false,
        CertKind::GrowthPA => true,
        k => return Ok(Err(F::BaseCertificate(format!("{k:?} does not certify a pseudo-Anosov")))),
    };
    if f_pa.triangulation != f.triangulation().to_text() {
        return Ok(Err(F::BaseCertificate("different triangulation".into())));
    }
    let text = f.to_text();
    let names_f = f_pa.words.values().any(|t| *t == text)
        && f.curves().iter().all(|(id, c)| f_pa.curves.get(id) == Some(&c.to_text()));
    if !names_f {
        return Ok(Err(F::BaseCertificate("certificate is about a different word".into())));
    }
    if let Err(e) = f_pa.replay() {
        return Ok(Err(F::BaseCertificate(e.to_string())));
    }
    for g in gammas {
        if !same_triangulation(g.triangulation(), f.triangulation()) {
            return Err(Error::TriangulationMismatch);
        }
    }
    if let Some(k) = gammas.iter().position(|g| !essential(g)) {
        return Ok(Err(F::NotEssential(k)));
    }
    for i in 0..gammas.len() {
        for j in i + 1..gammas.len() {
            if intersection(&gammas[i], &gammas[j])? != 0 {
                return Ok(Err(F::Intersecting(i, j)));
            }
        }
    }
    for i in 0..gammas.len() {
        for j in i + 1..gammas.len() {
            if gammas[i] == gammas[j] {
                return Ok(Err(F::Parallel(i, j)));
            }
        }
    }
    let images: Vec<MultiCurve> = gammas.iter().map(|g| act(f, g)).collect::<Result<_>>()?;
    let mut values = vec![vec![0u64; gammas.len()]; gammas.len()];
    for (i, img) in images.iter().enumerate() {
        for (j, g) in gammas.iter().enumerate() {
            let v = intersection(img, g)?;
            if v == 0 {
                return Ok(Err(F::ImageDisjoint(i, j)));
            }
            values[i][j] = v;
        }
    }

    let mut cb = CertBuilder::new(CertKind::LongMortonOK, f.triangulation());
    cb.word("f", f);
    let names: Vec<String> = (0..gammas.len()).map(|k| format!("gamma{}", k + 1)).collect();
    for (n, g) in names.iter().zip(gammas) {
        cb.curve(n, g);
        cb.premise(format!("{n} is essential"), Fact::Essential { curve: n.clone() });
    }
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let (p, q) = (&names[i], &names[j]);
            cb.premise(format!("{p} and {q} are disjoint"), Fact::Intersection { a: p.clone(), b: q.clone(), value: 0 });
            cb.premise(format!("{p} and {q} are not parallel"), Fact::Distinct { a: p.clone(), b: q.clone() });
        }
    }
    for i in 0..names.len() {
        for j in 0..names.len() {
            cb.premise(
                format!("i(f({}), {}) != 0", names[i], names[j]),
                Fact::ImageIntersection { word: "f".into(), a: names[i].clone(), b: names[j].clone(), value: values[i][j] },
            );
        }
    }
    cb.payload("base_certificate", serde_json::to_value(f_pa).expect("certificate serializes"))
        .payload("heuristic_base", json!(heuristic))
        .payload(
            "conclusion",
            json!("there is some n such that f composed with twists of exponents n_i about the gammas is pseudo-Anosov whenever every |n_i| > n; n is not computed"),
        );
    Ok(Ok(cb.finish()))
}
