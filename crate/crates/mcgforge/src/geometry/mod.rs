//! Volume bounds from ingested data and the q-hyperbolicity rule engine.
//!
//! Volumes and slope lengths are never computed here. They come in as
//! records and every certificate carries its inputs.

mod qhyp;
mod real;

use serde::{Deserialize, Serialize};

pub use qhyp::{qhyp_derive, Derivation, FactStore, Manifold, QHypFact, Rule, SatellitePattern, ShadowFact};
pub use real::{Enclosure, Precision, DEFAULT_PRECISION, MAX_PRECISION};

use crate::error::{Error, Result};

pub const DEFAULT_EPSILON: f64 = 0.9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspSlope {
    pub slope: String,
    pub length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeRecord {
    pub manifold_id: String,
    pub volume: f64,
    #[serde(default)]
    pub cusps: Vec<CuspSlope>,
}

impl VolumeRecord {
    pub fn new(manifold_id: &str, volume: f64, cusps: Vec<CuspSlope>) -> Result<Self> {
        let r = VolumeRecord { manifold_id: manifold_id.to_string(), volume, cusps };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.volume.is_finite() && self.volume > 0.0) {
            return Err(Error::Invalid(format!("{}: volume must be positive", self.manifold_id)));
        }
        for c in &self.cusps {
            if !(c.length.is_finite() && c.length > 0.0) {
                return Err(Error::Invalid(format!("{}: slope {} has non-positive length", self.manifold_id, c.slope)));
            }
        }
        Ok(())
    }

    /// Length of the shortest listed slope.
    pub fn shortest_slope(&self) -> Option<f64> {
        self.cusps.iter().map(|c| c.length).reduce(f64::min)
    }
}

/// One JSON record per non-empty line.
pub fn parse_volume_records(text: &str) -> Result<Vec<VolumeRecord>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let r: VolumeRecord =
            serde_json::from_str(line).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        r.validate().map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        out.push(r);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FillingBounds {
    pub vol_n: f64,
    pub lambda: f64,
    /// Rounded down.
    pub lower: f64,
    /// Rounded up.
    pub upper: f64,
}

/// `(1 − (2π/λ)²)^{3/2}·vol(N) ≤ vol(N(n)) ≤ vol(N)`, valid for `λ > 2π`.
pub fn filling_volume_bounds(vol_n: f64, lambda: f64) -> Result<FillingBounds> {
    if !(vol_n.is_finite() && vol_n > 0.0) {
        return Err(Error::Invalid("vol(N) must be positive".into()));
    }
    let two_pi = Enclosure::two_pi();
    if lambda.is_nan() || lambda <= two_pi.hi {
        return Err(Error::Precondition(format!("slope length λ = {lambda} must exceed 2π")));
    }
    let lower = if lambda.is_infinite() {
        vol_n
    } else {
        let r = two_pi.div(Enclosure::exact(lambda));
        let f = Enclosure::exact(1.0).sub(r.mul(r));
        let f = Enclosure { lo: f.lo.max(0.0), hi: f.hi };
        let p = f.mul(f.sqrt());
        p.mul(Enclosure::exact(vol_n)).lo.max(0.0)
    };
    Ok(FillingBounds { vol_n, lambda, lower, upper: vol_n })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceCertificate {
    /// Ordered by id.
    pub ids: (String, String),
    pub volumes: (f64, f64),
    pub epsilon: f64,
    /// Upper bound on `|vol_a − vol_b|`.
    pub gap: f64,
    pub verdict: bool,
    pub reason: String,
}

/// Volumes differ and their gap is below `ε`.
pub fn independence_certificate(a: &VolumeRecord, b: &VolumeRecord, epsilon: f64) -> Result<IndependenceCertificate> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Invalid("ε must be positive".into()));
    }
    a.validate()?;
    b.validate()?;
    let (x, y) = if (a.manifold_id.as_str(), a.volume.to_bits()) <= (b.manifold_id.as_str(), b.volume.to_bits()) {
        (a, b)
    } else {
        (b, a)
    };
    let d = Enclosure::exact(x.volume).sub(Enclosure::exact(y.volume));
    let gap = d.lo.abs().max(d.hi.abs());
    let (verdict, reason) = if x.volume == y.volume {
        (false, "equal volumes".to_string())
    } else if gap < epsilon {
        (true, format!("volumes differ and gap < {epsilon}"))
    } else {
        (false, format!("gap is not below {epsilon}"))
    };
    Ok(IndependenceCertificate {
        ids: (x.manifold_id.clone(), y.manifold_id.clone()),
        volumes: (x.volume, y.volume),
        epsilon,
        gap,
        verdict,
        reason,
    })
}

/// Shortest slope length as a function of the twist exponent.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SlopeModel {
    /// `λ(n) = slope·n + intercept`, `slope > 0`.
    Linear { slope: f64, intercept: f64 },
    /// `λ(n) = sqrt((n·a)² + b²)`: a filling slope `μ + nℓ` on a cusp with
    /// `|ℓ| = a` and `μ ⟂ ℓ` of length `b`.
    Euclidean { longitude: f64, meridian: f64 },
}

impl SlopeModel {
    pub fn length(&self, n: u64) -> f64 {
        let n = n as f64;
        match *self {
            SlopeModel::Linear { slope, intercept } => slope * n + intercept,
            SlopeModel::Euclidean { longitude, meridian } => ((n * longitude).powi(2) + meridian.powi(2)).sqrt(),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            SlopeModel::Linear { slope, intercept } => slope > 0.0 && intercept.is_finite(),
            SlopeModel::Euclidean { longitude, meridian } => longitude > 0.0 && meridian.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid("slope model must be strictly increasing".into()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanStep {
    pub exponents: Vec<u64>,
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapPlan {
    pub vol_n: f64,
    pub epsilon: f64,
    pub steps: Vec<PlanStep>,
    /// Bounds alone never separate two fillings, so distinct volumes stay
    /// to be supplied by data.
    pub distinct_volumes_certified: bool,
}

pub const PLANNER_SEARCH_LIMIT: u64 = 1 << 40;

/// Exponent tuples `(n, …, n)` whose FKP intervals all lie within `ε` of
/// each other, in order of increasing lower bound.
pub fn gap_sequence_planner(
    vol_n: f64,
    epsilon: f64,
    model: SlopeModel,
    cusps: usize,
    count: usize,
) -> Result<GapPlan> {
    model.validate()?;
    if cusps == 0 || count == 0 {
        return Err(Error::Invalid("need at least one cusp and one step".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::Precondition("infeasible: ε must be positive".into()));
    }
    let qualifies = |n: u64| -> Result<Option<FillingBounds>> {
        let l = model.length(n);
        if l <= Enclosure::two_pi().hi {
            return Ok(None);
        }
        let b = filling_volume_bounds(vol_n, l)?;
        Ok(if b.upper - b.lower < epsilon { Some(b) } else { None })
    };
    // qualification is monotone in n: exponential then binary search
    let mut hi = 1u64;
    while qualifies(hi)?.is_none() {
        if hi >= PLANNER_SEARCH_LIMIT {
            return Err(Error::Precondition(format!(
                "infeasible: no exponent up to {PLANNER_SEARCH_LIMIT} brings the bound spread below ε = {epsilon}"
            )));
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if qualifies(mid)?.is_some() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut steps: Vec<PlanStep> = Vec::new();
    let mut n = hi;
    while steps.len() < count {
        let b = qualifies(n)?.ok_or_else(|| Error::Construction("non-monotone slope model".into()))?;
        if steps.last().is_none_or(|s| b.lower > s.lower) {
            steps.push(PlanStep { exponents: vec![n; cusps], lambda: b.lambda, lower: b.lower, upper: b.upper });
        }
        n = n.checked_add(1).ok_or_else(|| Error::Precondition("infeasible: exponent overflow".into()))?;
    }
    for s in &steps {
        for t in &steps {
            if !(s.upper < t.lower + epsilon) {
                return Err(Error::Construction("emitted plan violates the gap constraint".into()));
            }
        }
    }
    Ok(GapPlan { vol_n, epsilon, steps, distinct_volumes_certified: false })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CosetVolumeReport {
    pub norm_upper: f64,
    pub constant: f64,
    /// `B·‖S³∖J‖`, rounded up.
    pub bound: f64,
    pub genus_independent: bool,
    pub statement: String,
}

/// Upper bound on the volumes of all mapping tori in a coset; the
/// constant `B` is a parameter, not derived.
pub fn coset_volume_report(norm_upper: f64, constant: Option<f64>) -> Result<CosetVolumeReport> {
    let b = constant.ok_or_else(|| {
        Error::Precondition("the universal constant B is not effective; supply it explicitly".into())
    })?;
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::Invalid("B must be positive".into()));
    }
    if !(norm_upper.is_finite() && norm_upper >= 0.0) {
        return Err(Error::Invalid("norm bound must be non-negative".into()));
    }
    let bound = Enclosure::exact(b).mul(Enclosure::exact(norm_upper)).hi;
    let bound = if b * norm_upper == bound.next_down() { b * norm_upper } else { bound };
    Ok(CosetVolumeReport {
        norm_upper,
        constant: b,
        bound,
        genus_independent: true,
        statement: format!("every mapping torus in the coset has volume at most {bound}, for every page genus"),
    })
}
