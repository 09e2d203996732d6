//! Certificates whose premises are re-checked by recomputation.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::word::{act, TwistWord};
use crate::error::{Error, Result};
use crate::surface::{filling_check, intersection, MultiCurve, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CertKind {
    PennerPA,
    GrowthPA,
    FreeRank2,
    LongMortonOK,
    DistanceBound,
}

/// A checkable statement about named curves and words.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "fact", rename_all = "snake_case")]
pub enum Fact {
    Intersection { a: String, b: String, value: u64 },
    /// `i(word(a), b)`.
    ImageIntersection { word: String, a: String, b: String, value: u64 },
    Fills { curves: Vec<String>, value: bool },
    Essential { curve: String },
    Distinct { a: String, b: String },
    /// Every letter of the word is a positive twist on `positive` or a
    /// negative twist on `negative`, and each listed curve occurs.
    PennerForm { word: String, positive: Vec<String>, negative: Vec<String> },
    /// Intersection sequence of a growth experiment, decimal strings.
    GrowthSequence { word: String, seed: String, values: Vec<String> },
    /// Distance bounds from the curve graph search over curves of total
    /// weight at most `weight_bound`.
    Distance { a: String, b: String, lower: u32, upper: Option<u32>, weight_bound: u64, cap: u32 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Premise {
    pub claim: String,
    #[serde(flatten)]
    pub fact: Fact,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub triangulation: String,
    /// Curve table: id to normal coordinates.
    pub curves: BTreeMap<String, String>,
    /// Named words in text form over the curve table.
    pub words: BTreeMap<String, String>,
    pub premises: Vec<Premise>,
    pub payload: BTreeMap<String, serde_json::Value>,
}

/// Collects curves and premises for a certificate under construction.
pub struct CertBuilder {
    tri: Arc<Triangulation>,
    cert: Certificate,
}

impl CertBuilder {
    pub fn new(kind: CertKind, tri: &Arc<Triangulation>) -> Self {
        CertBuilder {
            tri: tri.clone(),
            cert: Certificate {
                kind,
                triangulation: tri.to_text(),
                curves: BTreeMap::new(),
                words: BTreeMap::new(),
                premises: Vec::new(),
                payload: BTreeMap::new(),
            },
        }
    }

    pub fn curve(&mut self, id: &str, c: &MultiCurve) -> &mut Self {
        self.cert.curves.insert(id.to_string(), c.to_text());
        self
    }

    pub fn word(&mut self, id: &str, w: &TwistWord) -> &mut Self {
        for (cid, c) in w.curves() {
            self.cert.curves.insert(cid.clone(), c.to_text());
        }
        self.cert.words.insert(id.to_string(), w.to_text());
        self
    }

    pub fn premise(&mut self, claim: impl Into<String>, fact: Fact) -> &mut Self {
        self.cert.premises.push(Premise { claim: claim.into(), fact });
        self
    }

    pub fn payload(&mut self, key: &str, v: serde_json::Value) -> &mut Self {
        self.cert.payload.insert(key.to_string(), v);
        self
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }

    pub fn finish(self) -> Certificate {
        self.cert
    }
}

struct Replay {
    curves: BTreeMap<String, MultiCurve>,
    words: BTreeMap<String, TwistWord>,
}

impl Replay {
    fn curve(&self, id: &str) -> Result<&MultiCurve> {
        self.curves.get(id).ok_or_else(|| Error::Parse(format!("certificate names unknown curve {id}")))
    }
    fn word(&self, id: &str) -> Result<&TwistWord> {
        self.words.get(id).ok_or_else(|| Error::Parse(format!("certificate names unknown word {id}")))
    }
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    fn replay_context(&self) -> Result<Replay> {
        let tri = Arc::new(Triangulation::from_text(&self.triangulation)?);
        let mut curves = BTreeMap::new();
        for (id, rec) in &self.curves {
            curves.insert(id.clone(), MultiCurve::from_text(tri.clone(), rec)?);
        }
        let mut words = BTreeMap::new();
        for (id, text) in &self.words {
            words.insert(id.clone(), TwistWord::parse(tri.clone(), &curves, text)?);
        }
        Ok(Replay { curves, words })
    }

    /// Recompute every premise; the first failing claim is reported.
    pub fn replay(&self) -> Result<()> {
        let ctx = self.replay_context()?;
        for p in &self.premises {
            if !check_fact(&ctx, &p.fact)? {
                return Err(Error::Precondition(format!("premise failed on replay: {}", p.claim)));
            }
        }
        if let Some(base) = self.payload.get("base_certificate") {
            let base: Certificate =
                serde_json::from_value(base.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            base.replay()?;
        }
        Ok(())
    }
}

fn check_fact(ctx: &Replay, f: &Fact) -> Result<bool> {
    Ok(match f {
        Fact::Intersection { a, b, value } => intersection(ctx.curve(a)?, ctx.curve(b)?)? == *value,
        Fact::ImageIntersection { word, a, b, value } => {
            let img = act(ctx.word(word)?, ctx.curve(a)?)?;
            intersection(&img, ctx.curve(b)?)? == *value
        }
        Fact::Fills { curves, value } => {
            let sys: Vec<MultiCurve> = curves.iter().map(|c| ctx.curve(c).cloned()).collect::<Result<_>>()?;
            filling_check(&sys)?.0 == *value
        }
        Fact::Essential { curve } => {
            let c = ctx.curve(curve)?;
            c.is_simple_curve() && !c.is_peripheral()
        }
        Fact::Distinct { a, b } => ctx.curve(a)? != ctx.curve(b)?,
        Fact::PennerForm { word, positive, negative } => {
            penner_form(ctx.word(word)?, positive, negative)
        }
        Fact::GrowthSequence { word, seed, values } => {
            let w = ctx.word(word)?;
            let s = ctx.curve(seed)?;
            let got = super::growth::intersection_sequence(w, s, values.len())?;
            got.iter().map(|v| v.to_string()).collect::<Vec<_>>() == *values
        }
        Fact::Distance { a, b, lower, upper, weight_bound, cap } => {
            let est = super::graph::estimate_distance(ctx.curve(a)?, ctx.curve(b)?, *cap, *weight_bound)?;
            est.lower == *lower && est.upper == *upper
        }
    })
}

/// Letter signs and coverage for the Penner criterion.
pub(crate) fn penner_form(w: &TwistWord, positive: &[String], negative: &[String]) -> bool {
    let signs_ok = w.letters().iter().all(|l| {
        (l.exp > 0 && positive.contains(&l.id)) || (l.exp < 0 && negative.contains(&l.id))
    });
    let covered = positive.iter().chain(negative).all(|id| w.letters().iter().any(|l| &l.id == id));
    signs_ok && covered
}
