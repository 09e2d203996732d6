//! Heuristic growth test for pseudo-Anosov behaviour.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::word::{act_bounded, TwistWord};
use crate::error::{Error, Result};
use crate::surface::{intersection, MultiCurve};

/// Curves are stored as explicit walks, so iterates are capped by weight.
pub const MAX_TOTAL_WEIGHT: u64 = 10_000_000;

pub const DEFAULT_DELTA: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrowthVerdict {
    HeuristicPA,
    HeuristicReducibleOrPeriodic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    /// `i(w^n(seed), seed)` for `n = 1..=N`.
    pub values: Vec<BigUint>,
    /// Successive ratios of the sequence where defined.
    pub ratios: Vec<f64>,
    /// Last ratio, the dilatation estimate; absent when never defined.
    pub estimate: Option<f64>,
    pub verdict: GrowthVerdict,
    pub delta: f64,
}

/// `i(w^n(seed), seed)` for `n = 1..=count`.
pub fn intersection_sequence(w: &TwistWord, seed: &MultiCurve, count: usize) -> Result<Vec<BigUint>> {
    let mut cur = seed.clone();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        cur = act_bounded(w, &cur, MAX_TOTAL_WEIGHT)?;
        out.push(BigUint::from(intersection(&cur, seed)?));
    }
    Ok(out)
}

fn ratio(a: &BigUint, b: &BigUint) -> Option<f64> {
    if b.is_zero() {
        return None;
    }
    // Shift both to keep the quotient inside f64 range.
    let shift = a.bits().max(b.bits()).saturating_sub(60);
    let (a, b) = (a >> shift, b >> shift);
    Some(a.to_f64()? / b.to_f64()?.max(f64::MIN_POSITIVE))
}

/// Classify growth from the last four ratios: they must exceed `1 + delta`,
/// agree with each other to within `delta`, and grow faster than any
/// polynomial (for `n^d` the quantity `(r_n - 1) n` does not increase).
pub fn classify(values: &[BigUint], delta: f64) -> (Vec<f64>, Option<f64>, GrowthVerdict) {
    let ratios: Vec<f64> = values.windows(2).filter_map(|p| ratio(&p[1], &p[0])).collect();
    let estimate = ratios.last().copied();
    let defined = values.windows(2).all(|p| !p[0].is_zero());
    let verdict = if !defined || ratios.len() < 4 {
        GrowthVerdict::HeuristicReducibleOrPeriodic
    } else {
        let last = &ratios[ratios.len() - 4..];
        let above = last.iter().all(|&r| r > 1.0 + delta);
        let (lo, hi) = last.iter().fold((f64::MAX, f64::MIN), |(l, h), &r| (l.min(r), h.max(r)));
        let stable = hi / lo - 1.0 < delta;
        // Ratio r_k compares term k+2 with term k+1 (1-based n).
        let nk = |k: usize| (k + 1) as f64;
        let k1 = ratios.len() - 1;
        let k0 = ratios.len() - 4;
        let superpoly = (ratios[k1] - 1.0) * nk(k1) >= (1.0 + delta) * (ratios[k0] - 1.0) * nk(k0);
        if above && stable && superpoly {
            GrowthVerdict::HeuristicPA
        } else {
            GrowthVerdict::HeuristicReducibleOrPeriodic
        }
    };
    (ratios, estimate, verdict)
}

pub fn growth_estimate(w: &TwistWord, seed: &MultiCurve, iterations: usize, delta: f64) -> Result<GrowthReport> {
    if iterations < 4 {
        return Err(Error::Precondition("growth needs at least 4 iterations".into()));
    }
    if !seed.is_simple_curve() || seed.is_peripheral() {
        return Err(Error::Precondition("seed must be an essential simple curve".into()));
    }
    let values = intersection_sequence(w, seed, iterations)?;
    let (ratios, estimate, verdict) = classify(&values, delta);
    Ok(GrowthReport { values, ratios, estimate, verdict, delta })
}
