use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::surface::{intersection, same_triangulation, twist, MultiCurve, SurfaceSig, Triangulation};

/// One Dehn twist `tau_c^exp`, naming its curve in the word's table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub id: String,
    pub exp: i64,
}

/// A product of Dehn twists; the rightmost letter acts first.
#[derive(Clone, Debug)]
pub struct TwistWord {
    tri: Arc<Triangulation>,
    curves: BTreeMap<String, MultiCurve>,
    letters: Vec<Letter>,
}

impl PartialEq for TwistWord {
    fn eq(&self, other: &Self) -> bool {
        same_triangulation(&self.tri, &other.tri) && self.curves == other.curves && self.letters == other.letters
    }
}

pub(crate) fn check_twist_curve(c: &MultiCurve) -> Result<()> {
    if !c.is_simple_curve() {
        return Err(Error::Invalid("twist curve must be a single simple closed curve".into()));
    }
    if c.is_peripheral() {
        return Err(Error::Invalid("twist curve is peripheral".into()));
    }
    Ok(())
}

impl TwistWord {
    pub fn identity(tri: Arc<Triangulation>) -> Self {
        TwistWord { tri, curves: BTreeMap::new(), letters: Vec::new() }
    }

    pub fn triangulation(&self) -> &Arc<Triangulation> {
        &self.tri
    }

    pub fn sig(&self) -> SurfaceSig {
        self.tri.sig()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn curves(&self) -> &BTreeMap<String, MultiCurve> {
        &self.curves
    }

    pub fn curve(&self, id: &str) -> Option<&MultiCurve> {
        self.curves.get(id)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Register a named curve without using it.
    pub fn define(&mut self, id: &str, c: MultiCurve) -> Result<()> {
        if !same_triangulation(c.triangulation(), &self.tri) {
            return Err(Error::SurfaceMismatch(format!("curve {id} lives on another surface")));
        }
        check_twist_curve(&c)?;
        match self.curves.get(id) {
            Some(old) if *old != c => Err(Error::Invalid(format!("curve id {id} already names another curve"))),
            _ => {
                self.curves.insert(id.to_string(), c);
                Ok(())
            }
        }
    }

    /// Append `tau_c^exp` on the right, so it acts before everything else.
    pub fn then_twist(mut self, id: &str, c: MultiCurve, exp: i64) -> Result<Self> {
        if exp == 0 {
            return Err(Error::Invalid("twist exponent must be nonzero".into()));
        }
        self.define(id, c)?;
        self.letters.push(Letter { id: id.to_string(), exp });
        Ok(self)
    }

    /// Append a twist on an already defined curve.
    pub fn then_letter(mut self, id: &str, exp: i64) -> Result<Self> {
        if exp == 0 {
            return Err(Error::Invalid("twist exponent must be nonzero".into()));
        }
        if !self.curves.contains_key(id) {
            return Err(Error::Invalid(format!("unknown curve id {id}")));
        }
        self.letters.push(Letter { id: id.to_string(), exp });
        Ok(self)
    }

    /// `self * other`: `other` acts first.
    pub fn compose(&self, other: &TwistWord) -> Result<TwistWord> {
        if !same_triangulation(&self.tri, &other.tri) {
            return Err(Error::SurfaceMismatch("words live on different surfaces".into()));
        }
        let mut out = self.clone();
        for (id, c) in &other.curves {
            out.define(id, c.clone())?;
        }
        out.letters.extend(other.letters.iter().cloned());
        Ok(out)
    }

    pub fn inverse(&self) -> TwistWord {
        let letters = self.letters.iter().rev().map(|l| Letter { id: l.id.clone(), exp: -l.exp }).collect();
        TwistWord { tri: self.tri.clone(), curves: self.curves.clone(), letters }
    }

    pub fn power(&self, n: u32) -> TwistWord {
        let mut out = TwistWord::identity(self.tri.clone());
        out.curves = self.curves.clone();
        for _ in 0..n {
            out.letters.extend(self.letters.iter().cloned());
        }
        out
    }

    /// Same word transported to another triangulation by a curve map.
    pub fn map_curves(
        &self,
        tri: Arc<Triangulation>,
        mut f: impl FnMut(&MultiCurve) -> Result<MultiCurve>,
    ) -> Result<TwistWord> {
        let mut out = TwistWord::identity(tri);
        for (id, c) in &self.curves {
            out.define(id, f(c)?)?;
        }
        out.letters = self.letters.clone();
        Ok(out)
    }

    /// Text form `[id^exp, ...]`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.letters.iter().map(|l| format!("{}^{}", l.id, l.exp)).collect();
        format!("[{}]", parts.join(", "))
    }

    /// Curve table, one `id: C w,...` record per line, sorted by id.
    pub fn table_text(&self) -> String {
        self.curves.iter().map(|(id, c)| format!("{id}: {}\n", c.to_text())).collect()
    }

    /// Parse a word against a curve table.
    pub fn parse(tri: Arc<Triangulation>, table: &BTreeMap<String, MultiCurve>, s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse("twist word must be bracketed".into()))?;
        let mut w = TwistWord::identity(tri);
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (id, exp) = part.split_once('^').unwrap_or((part, "1"));
            let exp: i64 = exp.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?;
            let c = table
                .get(id.trim())
                .ok_or_else(|| Error::Parse(format!("curve {id:?} not in table")))?;
            w = w.then_twist(id.trim(), c.clone(), exp)?;
        }
        Ok(w)
    }

    /// Parse a curve table written by `table_text`.
    pub fn parse_table(tri: &Arc<Triangulation>, s: &str) -> Result<BTreeMap<String, MultiCurve>> {
        let mut out = BTreeMap::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (id, rec) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad table line {line:?}")))?;
            out.insert(id.trim().to_string(), MultiCurve::from_text(tri.clone(), rec)?);
        }
        Ok(out)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Image of a multicurve under the word.
pub fn act(w: &TwistWord, c: &MultiCurve) -> Result<MultiCurve> {
    if !same_triangulation(w.triangulation(), c.triangulation()) {
        return Err(Error::SurfaceMismatch("curve and word live on different surfaces".into()));
    }
    let mut cur = c.clone();
    for l in w.letters.iter().rev() {
        cur = twist(&w.curves[&l.id], &cur, l.exp)?;
    }
    Ok(cur)
}

/// `act` that refuses to build a curve of total weight above `max_weight`.
/// Each twist is bounded beforehand by `w(c) + |n| i(a, c) w(a)`.
pub fn act_bounded(w: &TwistWord, c: &MultiCurve, max_weight: u64) -> Result<MultiCurve> {
    if !same_triangulation(w.triangulation(), c.triangulation()) {
        return Err(Error::SurfaceMismatch("curve and word live on different surfaces".into()));
    }
    let mut cur = c.clone();
    for l in w.letters.iter().rev() {
        let a = &w.curves[&l.id];
        let i = intersection(a, &cur)?;
        let bound = l.exp.unsigned_abs().saturating_mul(i).saturating_mul(a.total_weight());
        if cur.total_weight().saturating_add(bound) > max_weight {
            return Err(Error::Precondition(format!("curve weight would exceed the budget {max_weight}")));
        }
        cur = twist(a, &cur, l.exp)?;
    }
    Ok(cur)
}
