use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Artin word; letter `±i` is `σ_i^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Invalid(format!("a braid needs at least 2 strands, got {strands}")));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::Invalid(format!("letter {l} is not a generator of B_{strands}")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sign used by each generator, `None` for unused ones and `Some(0)`
    /// for generators used with both signs. Index 0 is `σ_1`.
    pub fn generator_signs(&self) -> Vec<Option<i32>> {
        let mut s = vec![None; self.strands - 1];
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            let e = l.signum();
            s[i] = match s[i] {
                None => Some(e),
                Some(x) if x == e => Some(e),
                _ => Some(0),
            };
        }
        s
    }

    /// Each generator appears with a single sign.
    pub fn is_homogeneous(&self) -> bool {
        self.generator_signs().iter().all(|s| *s != Some(0))
    }

    /// Homogeneous with neighbouring generators of opposite sign; the
    /// closure diagram is then alternating.
    pub fn is_alternating(&self) -> bool {
        let s = self.generator_signs();
        if s.contains(&Some(0)) {
            return false;
        }
        s.windows(2).all(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) => a == -b,
            _ => true,
        })
    }

    /// Every generator is used, so the closure and its band surface are
    /// connected.
    pub fn uses_all_generators(&self) -> bool {
        self.generator_signs().iter().all(|s| s.is_some())
    }

    /// Final position of the strand starting at each position.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut end = vec![0; self.strands];
        for (p, &s) in at.iter().enumerate() {
            end[s] = p;
        }
        end
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for &l in &self.letters {
            if l < 0 {
                write!(f, " -s{}", -l)?;
            } else {
                write!(f, " s{l}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// `B<strands>: s1 -s2 s1 ...`
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected 'B<n>: ...', got '{s}'")))?;
        let n: usize = head
            .trim()
            .strip_prefix('B')
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad strand count '{head}'")))?;
        let mut letters = Vec::new();
        for tok in body.split_whitespace() {
            let (neg, rest) = match tok.strip_prefix('-') {
                Some(r) => (true, r),
                None => (false, tok),
            };
            let i: i32 = rest
                .strip_prefix('s')
                .and_then(|x| x.parse().ok())
                .filter(|&i: &i32| i > 0)
                .ok_or_else(|| Error::Parse(format!("bad letter '{tok}'")))?;
            letters.push(if neg { -i } else { i });
        }
        BraidWord::new(n, letters).map_err(|e| match e {
            Error::Invalid(m) => Error::Parse(m),
            other => other,
        })
    }
}
