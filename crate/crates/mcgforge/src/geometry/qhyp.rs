//! Closure rules for q-hyperbolicity over structured manifold descriptions.
//!
//! Rules, by id:
//! 1. the figure-eight and Borromean rings complements;
//! 2. integral surgery `4_1(p)` with `|p| ≥ 5`;
//! 3. fundamental shadow-link complements, loaded as opaque base facts;
//! 4. parallel or `(2n+1, 2)`-cable satellites of a component of an `S³` link;
//! 5. drilling solid tori;
//! 6. link complements;
//! 7. doubles along a nonempty toroidal boundary.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FIGURE_EIGHT: &str = "4_1";
pub const BORROMEAN: &str = "borromean";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub fn integral(p: i64) -> Self {
        Slope { p, q: 1 }
    }

    pub fn is_integral(self) -> bool {
        self.q == 1
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SatellitePattern {
    /// `n ≥ 1` parallel copies.
    Parallel(u32),
    /// The `(2n+1, 2)`-cable.
    Cable(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Manifold {
    Base(String),
    Filled { base: Box<Manifold>, slopes: Vec<Slope> },
    Drilled { base: Box<Manifold>, tori: u32 },
    Double(Box<Manifold>),
    LinkComplement { base: Box<Manifold>, link: String },
    Satellite { base: Box<Manifold>, component: usize, pattern: SatellitePattern },
}

impl Manifold {
    pub fn base(name: &str) -> Self {
        Manifold::Base(name.to_string())
    }

    pub fn filled(base: Manifold, slopes: &[i64]) -> Self {
        Manifold::Filled { base: Box::new(base), slopes: slopes.iter().map(|&p| Slope::integral(p)).collect() }
    }

    pub fn drilled(base: Manifold, tori: u32) -> Self {
        Manifold::Drilled { base: Box::new(base), tori }
    }

    pub fn double(base: Manifold) -> Self {
        Manifold::Double(Box::new(base))
    }

    pub fn link_complement(base: Manifold, link: &str) -> Self {
        Manifold::LinkComplement { base: Box::new(base), link: link.to_string() }
    }

    pub fn satellite(base: Manifold, component: usize, pattern: SatellitePattern) -> Self {
        Manifold::Satellite { base: Box::new(base), component, pattern }
    }

    /// Immediate sub-description, if any.
    pub fn premise(&self) -> Option<&Manifold> {
        match self {
            Manifold::Base(_) => None,
            Manifold::Filled { base, .. }
            | Manifold::Drilled { base, .. }
            | Manifold::Double(base)
            | Manifold::LinkComplement { base, .. }
            | Manifold::Satellite { base, .. } => Some(base),
        }
    }

    /// Number of torus boundary components, when determined by the
    /// description. Link complements count at least one extra torus per
    /// link but their exact count is unknown.
    pub fn cusps(&self, shadow: &BTreeMap<String, usize>) -> Option<usize> {
        match self {
            Manifold::Base(n) if n == FIGURE_EIGHT => Some(1),
            Manifold::Base(n) if n == BORROMEAN => Some(3),
            Manifold::Base(n) => shadow.get(n).copied(),
            Manifold::Filled { base, slopes } => base.cusps(shadow).and_then(|c| c.checked_sub(slopes.len())),
            Manifold::Drilled { base, tori } => base.cusps(shadow).map(|c| c + *tori as usize),
            Manifold::Double(_) => Some(0),
            Manifold::LinkComplement { .. } => None,
            Manifold::Satellite { base, pattern, .. } => base.cusps(shadow).map(|c| match pattern {
                SatellitePattern::Parallel(n) => c + *n as usize - 1,
                SatellitePattern::Cable(_) => c,
            }),
        }
    }

    fn has_boundary(&self, shadow: &BTreeMap<String, usize>) -> bool {
        match self {
            Manifold::LinkComplement { .. } => true,
            Manifold::Drilled { base, tori } => *tori > 0 || base.has_boundary(shadow),
            _ => self.cusps(shadow).is_some_and(|c| c > 0),
        }
    }

    /// Complement of a link in `S³`.
    pub fn is_s3_link_complement(&self) -> bool {
        match self {
            Manifold::Base(n) => n == FIGURE_EIGHT || n == BORROMEAN,
            Manifold::Satellite { base, .. } => base.is_s3_link_complement(),
            _ => false,
        }
    }

    /// Structural checks that do not depend on any rule.
    pub fn validate(&self, shadow: &BTreeMap<String, usize>) -> Result<()> {
        if let Some(b) = self.premise() {
            b.validate(shadow)?;
        }
        match self {
            Manifold::Base(n) if n.is_empty() => Err(Error::Invalid("empty manifold name".into())),
            Manifold::Filled { base, slopes } => {
                if slopes.is_empty() {
                    return Err(Error::Invalid("filling needs at least one slope".into()));
                }
                if let Some(s) = slopes.iter().find(|s| s.q <= 0 || gcd(s.p, s.q) != 1) {
                    return Err(Error::Invalid(format!("slope {s} is not reduced with positive denominator")));
                }
                match base.cusps(shadow) {
                    Some(c) if slopes.len() > c => {
                        Err(Error::Invalid(format!("{} slopes for {c} cusps of {base}", slopes.len())))
                    }
                    _ => Ok(()),
                }
            }
            Manifold::Drilled { tori: 0, .. } => Err(Error::Invalid("drilling needs at least one torus".into())),
            Manifold::LinkComplement { link, .. } if link.is_empty() => Err(Error::Invalid("empty link name".into())),
            Manifold::Satellite { base, component, pattern } => {
                if *pattern == SatellitePattern::Parallel(0) {
                    return Err(Error::Invalid("zero parallel copies".into()));
                }
                match base.cusps(shadow) {
                    Some(c) if *component >= c => {
                        Err(Error::Invalid(format!("component {component} out of range for {base}")))
                    }
                    _ => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &[Slope]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            Manifold::Base(n) => write!(f, "{n}"),
            Manifold::Filled { base, slopes } => match base.as_ref() {
                Manifold::Base(n) => write!(f, "{n}({})", list(slopes)),
                b => write!(f, "filled({b},{})", list(slopes)),
            },
            Manifold::Drilled { base, tori } => write!(f, "drilled({base},{tori})"),
            Manifold::Double(b) => write!(f, "double({b})"),
            Manifold::LinkComplement { base, link } => write!(f, "link_complement({base},{link})"),
            Manifold::Satellite { base, component, pattern } => match pattern {
                SatellitePattern::Parallel(n) => write!(f, "parallel({base},{component},{n})"),
                SatellitePattern::Cable(n) => write!(f, "cable({base},{component},{n})"),
            },
        }
    }
}

const KEYWORDS: [&str; 6] = ["filled", "drilled", "double", "link_complement", "cable", "parallel"];

struct Parser<'a> {
    s: &'a [char],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.i))
    }

    fn ws(&mut self) {
        while self.s.get(self.i).is_some_and(|c| c.is_whitespace()) {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.ws();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn name(&mut self) -> Result<String> {
        self.ws();
        let start = self.i;
        while self.s.get(self.i).is_some_and(|&c| c.is_alphanumeric() || "_'.#^".contains(c)) {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected a name"));
        }
        Ok(self.s[start..self.i].iter().collect())
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let neg = if self.s.get(self.i).is_some_and(|&c| c == '-' || c == '−') {
            self.i += 1;
            true
        } else {
            false
        };
        let start = self.i;
        while self.s.get(self.i).is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        let t: String = self.s[start..self.i].iter().collect();
        let v: i64 = t.parse().map_err(|_| self.err("expected an integer"))?;
        Ok(if neg { -v } else { v })
    }

    fn slope(&mut self) -> Result<Slope> {
        let p = self.int()?;
        let q = if self.eat('/') { self.int()? } else { 1 };
        Ok(Slope { p, q })
    }

    fn slopes(&mut self) -> Result<Vec<Slope>> {
        let mut v = vec![self.slope()?];
        while self.eat(',') {
            v.push(self.slope()?);
        }
        Ok(v)
    }

    fn count<T: TryFrom<i64>>(&mut self) -> Result<T> {
        let v = self.int()?;
        T::try_from(v).map_err(|_| self.err("count out of range"))
    }

    fn term(&mut self) -> Result<Manifold> {
        let n = self.name()?;
        if !self.eat('(') {
            return Ok(Manifold::Base(n));
        }
        let m = match n.as_str() {
            "filled" => {
                let b = self.term()?;
                self.expect(',')?;
                Manifold::Filled { base: Box::new(b), slopes: self.slopes()? }
            }
            "drilled" => {
                let b = self.term()?;
                self.expect(',')?;
                Manifold::drilled(b, self.count()?)
            }
            "double" => Manifold::double(self.term()?),
            "link_complement" => {
                let b = self.term()?;
                self.expect(',')?;
                let l = self.name()?;
                Manifold::link_complement(b, &l)
            }
            "cable" | "parallel" => {
                let b = self.term()?;
                self.expect(',')?;
                let c: usize = self.count()?;
                self.expect(',')?;
                let pattern = if n == "cable" {
                    SatellitePattern::Cable(self.int()?)
                } else {
                    SatellitePattern::Parallel(self.count()?)
                };
                Manifold::satellite(b, c, pattern)
            }
            _ => Manifold::Filled { base: Box::new(Manifold::Base(n)), slopes: self.slopes()? },
        };
        self.expect(')')?;
        Ok(m)
    }
}

impl FromStr for Manifold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().collect();
        let mut p = Parser { s: &chars, i: 0 };
        let m = p.term()?;
        p.ws();
        if p.i != chars.len() {
            return Err(p.err("trailing input"));
        }
        if let Manifold::Base(n) = &m {
            if KEYWORDS.contains(&n.as_str()) {
                return Err(Error::Parse(format!("'{n}' needs arguments")));
            }
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Rule {
    FigureEightOrBorromean,
    FigureEightSurgery,
    ShadowLink,
    Satellite,
    Drilling,
    LinkComplement,
    Double,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::FigureEightOrBorromean,
        Rule::FigureEightSurgery,
        Rule::ShadowLink,
        Rule::Satellite,
        Rule::Drilling,
        Rule::LinkComplement,
        Rule::Double,
    ];

    pub fn id(self) -> u8 {
        Rule::ALL.iter().position(|&r| r == self).expect("listed") as u8 + 1
    }

    pub fn description(self) -> &'static str {
        match self {
            Rule::FigureEightOrBorromean => "figure-eight or Borromean rings complement",
            Rule::FigureEightSurgery => "integral surgery on the figure-eight knot with |p| >= 5",
            Rule::ShadowLink => "fundamental shadow-link complement (base fact)",
            Rule::Satellite => "parallel copies or (2n+1,2)-cable of an S^3 link component",
            Rule::Drilling => "drilling solid tori",
            Rule::LinkComplement => "link complement",
            Rule::Double => "double along a toroidal boundary",
        }
    }

    /// Side conditions of the rule for the conclusion `m`. When
    /// [`Rule::needs_premise`] holds, `m.premise()` must also be a fact.
    pub fn concludes(self, m: &Manifold, shadow: &BTreeMap<String, usize>) -> bool {
        if m.validate(shadow).is_err() {
            return false;
        }
        match (self, m) {
            (Rule::FigureEightOrBorromean, Manifold::Base(n)) => n == FIGURE_EIGHT || n == BORROMEAN,
            (Rule::ShadowLink, Manifold::Base(n)) => shadow.contains_key(n),
            (Rule::FigureEightSurgery, Manifold::Filled { base, slopes }) => {
                **base == Manifold::base(FIGURE_EIGHT)
                    && matches!(slopes.as_slice(), [s] if s.is_integral() && s.p.unsigned_abs() >= 5)
            }
            (Rule::Satellite, Manifold::Satellite { base, .. }) => base.is_s3_link_complement(),
            (Rule::Drilling, Manifold::Drilled { .. }) => true,
            (Rule::LinkComplement, Manifold::LinkComplement { .. }) => true,
            (Rule::Double, Manifold::Double(b)) => b.has_boundary(shadow),
            _ => false,
        }
    }

    /// Rules whose conclusion needs a q-hyperbolic premise.
    pub fn needs_premise(self) -> bool {
        matches!(self, Rule::Satellite | Rule::Drilling | Rule::LinkComplement | Rule::Double)
    }
}

impl From<Rule> for u8 {
    fn from(r: Rule) -> u8 {
        r.id()
    }
}

impl TryFrom<u8> for Rule {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        Rule::ALL.get((v as usize).wrapping_sub(1)).copied().ok_or_else(|| format!("unknown rule {v}"))
    }
}

/// An opaque shadow-link complement, named, with its cusp count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowFact {
    pub name: String,
    pub cusps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QHypFact {
    pub id: usize,
    pub manifold: Manifold,
    pub rule: Rule,
    pub premises: Vec<usize>,
}

/// Append-only store; premises always precede their conclusions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactStore {
    pub shadow: Vec<ShadowFact>,
    pub facts: Vec<QHypFact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub goal: Manifold,
    pub goal_text: String,
    /// Premises first, goal last.
    pub chain: Vec<QHypFact>,
    pub shadow: Vec<ShadowFact>,
}

impl Derivation {
    /// Re-runs every rule in the chain.
    pub fn replay(&self) -> Result<()> {
        let shadow = shadow_map(&self.shadow)?;
        replay_facts(&self.chain, &shadow)?;
        match self.chain.last() {
            Some(f) if f.manifold == self.goal => Ok(()),
            _ => Err(Error::Construction("derivation does not end at its goal".into())),
        }
    }

    pub fn rules(&self) -> Vec<u8> {
        self.chain.iter().map(|f| f.rule.id()).collect()
    }
}

fn shadow_map(s: &[ShadowFact]) -> Result<BTreeMap<String, usize>> {
    let mut m = BTreeMap::new();
    for f in s {
        if f.cusps == 0 || f.name.is_empty() {
            return Err(Error::Invalid(format!("shadow fact '{}' needs a name and at least one cusp", f.name)));
        }
        if KEYWORDS.contains(&f.name.as_str()) || f.name == FIGURE_EIGHT || f.name == BORROMEAN {
            return Err(Error::Invalid(format!("reserved name '{}'", f.name)));
        }
        if m.insert(f.name.clone(), f.cusps).is_some_and(|c| c != f.cusps) {
            return Err(Error::Invalid(format!("conflicting cusp counts for '{}'", f.name)));
        }
    }
    Ok(m)
}

/// Facts may be listed in any id order but each premise must be listed
/// (and checked) before it is used.
fn replay_facts(chain: &[QHypFact], shadow: &BTreeMap<String, usize>) -> Result<()> {
    let mut seen: BTreeMap<usize, &Manifold> = BTreeMap::new();
    for f in chain {
        let premise = match f.premises.as_slice() {
            [] => None,
            [p] => Some(*seen.get(p).ok_or_else(|| {
                Error::Construction(format!("fact {} uses premise {p} before it is established", f.id))
            })?),
            _ => return Err(Error::Construction(format!("fact {} has several premises", f.id))),
        };
        let linked = match premise {
            Some(p) => f.rule.needs_premise() && f.manifold.premise() == Some(p),
            None => !f.rule.needs_premise(),
        };
        if !linked || !f.rule.concludes(&f.manifold, shadow) {
            return Err(Error::Construction(format!("rule {} does not yield fact {} ({})", f.rule.id(), f.id, f.manifold)));
        }
        if seen.insert(f.id, &f.manifold).is_some() {
            return Err(Error::Construction(format!("duplicate fact id {}", f.id)));
        }
    }
    Ok(())
}

impl FactStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Shadow-link base facts: a JSON array or one JSON object per line.
    pub fn load_shadow_facts(&mut self, text: &str) -> Result<usize> {
        let t = text.trim();
        let facts: Vec<ShadowFact> = if t.starts_with('[') {
            serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?
        } else {
            t.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(|l| serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?
        };
        let mut all = self.shadow.clone();
        all.extend(facts.iter().cloned());
        shadow_map(&all)?;
        let n = facts.len();
        for f in facts {
            if !self.shadow.contains(&f) {
                self.shadow.push(f);
            }
        }
        Ok(n)
    }

    pub fn shadow_map(&self) -> Result<BTreeMap<String, usize>> {
        shadow_map(&self.shadow)
    }

    pub fn find(&self, m: &Manifold) -> Option<&QHypFact> {
        self.facts.iter().find(|f| &f.manifold == m)
    }

    pub fn replay(&self) -> Result<()> {
        let shadow = self.shadow_map()?;
        for (i, f) in self.facts.iter().enumerate() {
            if f.id != i {
                return Err(Error::Construction(format!("fact at position {i} has id {}", f.id)));
            }
        }
        replay_facts(&self.facts, &shadow)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fact store serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let st: FactStore = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        st.replay()?;
        Ok(st)
    }

    fn derivation(&self, goal: &Manifold) -> Option<Derivation> {
        let mut chain = Vec::new();
        let mut cur = self.find(goal);
        while let Some(f) = cur {
            chain.push(f.clone());
            cur = f.premises.first().map(|&p| &self.facts[p]);
        }
        if chain.is_empty() {
            return None;
        }
        chain.reverse();
        Some(Derivation { goal: goal.clone(), goal_text: goal.to_string(), chain, shadow: self.shadow.clone() })
    }
}

/// Forward chaining over the sub-descriptions of `goal`: repeatedly fire
/// any rule whose premise is already a fact until nothing changes. New
/// facts are appended to `store`. `Ok(None)` means no rule reaches the goal.
pub fn qhyp_derive(store: &mut FactStore, goal: &Manifold) -> Result<Option<Derivation>> {
    let shadow = store.shadow_map()?;
    goal.validate(&shadow)?;
    let mut terms: Vec<&Manifold> = Vec::new();
    let mut cur = Some(goal);
    while let Some(m) = cur {
        terms.push(m);
        cur = m.premise();
    }
    loop {
        let mut changed = false;
        for &m in &terms {
            if store.find(m).is_some() {
                continue;
            }
            let premise = m.premise().and_then(|p| store.find(p)).map(|f| f.id);
            let fired = Rule::ALL
                .iter()
                .copied()
                .find(|r| r.concludes(m, &shadow) && (!r.needs_premise() || premise.is_some()));
            if let Some(rule) = fired {
                let premises = if rule.needs_premise() { vec![premise.expect("checked")] } else { vec![] };
                let id = store.facts.len();
                store.facts.push(QHypFact { id, manifold: m.clone(), rule, premises });
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(store.derivation(goal))
}
