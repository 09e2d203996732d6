use serde::{Deserialize, Serialize};

use super::braid::BraidWord;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    /// Index of the letter in the word.
    pub index: usize,
    /// Generator `i` of `σ_i`, 1-based.
    pub generator: usize,
    pub sign: i32,
    /// Component entering at position `i` and at `i + 1`.
    pub components: (usize, usize),
}

/// Word positions of one stacked block `σ_a² σ_b^{-2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpan {
    pub positive: [usize; 2],
    pub negative: [usize; 2],
}

/// Closed braid diagram. Components are numbered by their smallest
/// starting position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureDiagram {
    pub braid: BraidWord,
    /// Component of the strand starting at each position.
    pub strand_component: Vec<usize>,
    pub num_components: usize,
    pub crossings: Vec<Crossing>,
    /// Stallings blocks, present for the link family only.
    pub blocks: Vec<BlockSpan>,
}

impl ClosureDiagram {
    pub fn new(braid: BraidWord) -> Self {
        let n = braid.strands();
        let perm = braid.permutation();
        let mut comp = vec![usize::MAX; n];
        let mut k = 0;
        for s in 0..n {
            if comp[s] == usize::MAX {
                let mut x = s;
                while comp[x] == usize::MAX {
                    comp[x] = k;
                    x = perm[x];
                }
                k += 1;
            }
        }
        let mut at: Vec<usize> = (0..n).collect();
        let mut crossings = Vec::with_capacity(braid.len());
        for (index, &l) in braid.letters().iter().enumerate() {
            let i = l.unsigned_abs() as usize - 1;
            crossings.push(Crossing {
                index,
                generator: i + 1,
                sign: l.signum(),
                components: (comp[at[i]], comp[at[i + 1]]),
            });
            at.swap(i, i + 1);
        }
        ClosureDiagram { braid, strand_component: comp, num_components: k, crossings, blocks: Vec::new() }
    }

    pub fn check_component(&self, c: usize) -> Result<()> {
        if c >= self.num_components {
            return Err(Error::Invalid(format!(
                "component {c} does not exist ({} components)",
                self.num_components
            )));
        }
        Ok(())
    }

    /// For each letter, the strand ids (starting positions) at positions
    /// `i` and `i + 1` just before the crossing.
    pub fn crossing_strands(&self) -> Vec<(usize, usize)> {
        let n = self.braid.strands();
        let mut at: Vec<usize> = (0..n).collect();
        self.braid
            .letters()
            .iter()
            .map(|&l| {
                let i = l.unsigned_abs() as usize - 1;
                let r = (at[i], at[i + 1]);
                at.swap(i, i + 1);
                r
            })
            .collect()
    }

    /// Sum of crossing signs with both strands on `c`.
    pub fn self_writhe(&self, c: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|x| x.components == (c, c))
            .map(|x| x.sign as i64)
            .sum()
    }

    /// Braid on the strands of the kept components, generators renumbered.
    pub fn sublink(&self, keep: &[usize]) -> Result<BraidWord> {
        for &c in keep {
            self.check_component(c)?;
        }
        let n = self.braid.strands();
        let kept = |s: usize| keep.contains(&self.strand_component[s]);
        let m = (0..n).filter(|&s| kept(s)).count();
        let mut at: Vec<usize> = (0..n).collect();
        let mut letters = Vec::new();
        for &l in self.braid.letters() {
            let i = l.unsigned_abs() as usize - 1;
            if kept(at[i]) && kept(at[i + 1]) {
                let r = (0..i).filter(|&p| kept(at[p])).count() + 1;
                letters.push(l.signum() * r as i32);
            }
            at.swap(i, i + 1);
        }
        if m < 2 {
            return Err(Error::Invalid("sublink has fewer than 2 strands".into()));
        }
        BraidWord::new(m, letters)
    }
}

/// `(χ, genus)` of the band surface: `χ = strands − crossings` and
/// `χ = 2 − 2g − μ`.
pub fn euler_and_genus(d: &ClosureDiagram) -> Result<(i64, i64)> {
    if !d.braid.uses_all_generators() {
        return Err(Error::Precondition("band surface is disconnected".into()));
    }
    let chi = d.braid.strands() as i64 - d.braid.len() as i64;
    let twice = 2 - chi - d.num_components as i64;
    if twice < 0 || twice % 2 != 0 {
        return Err(Error::Construction(format!("χ = {chi} with {} components", d.num_components)));
    }
    Ok((chi, twice / 2))
}

/// Half the signed count of crossings between two distinct components.
pub fn linking_number(d: &ClosureDiagram, a: usize, b: usize) -> Result<i64> {
    d.check_component(a)?;
    d.check_component(b)?;
    if a == b {
        return Err(Error::Invalid("linking number needs two distinct components".into()));
    }
    let s: i64 = d
        .crossings
        .iter()
        .filter(|x| x.components == (a, b) || x.components == (b, a))
        .map(|x| x.sign as i64)
        .sum();
    if s % 2 != 0 {
        return Err(Error::Construction("odd inter-component crossing sum".into()));
    }
    Ok(s / 2)
}
