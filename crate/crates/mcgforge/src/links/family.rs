//! The two-component family `L_{l,m,k}`.
//!
//! Fixed 6-strand alternating word (`σ_odd` positive, `σ_even` negative):
//!
//! ```text
//! σ1 σ2⁻¹ σ3^{2m} σ1 σ2⁻¹ σ3^{2l} σ4⁻¹ σ5 σ3 σ4⁻² σ3 (σ5² σ4⁻²)^k
//! ```
//!
//! Positions 1–3 carry the blue component, a figure-eight pattern
//! `(σ1σ2⁻¹)²`. The boxes `σ3^{2m}`, `σ3^{2l}` are the only crossings
//! that contribute to the linking number. The clasp `σ3 σ4⁻² σ3` takes a
//! blue strand through the black side with zero linking, `σ4⁻¹ σ5` closes
//! the black strands into one component, and each black block `σ5² σ4⁻²`
//! carries one Stallings curve.

use serde::{Deserialize, Serialize};

use super::braid::BraidWord;
use super::closure::{euler_and_genus, linking_number, BlockSpan, ClosureDiagram};
use super::diagram::{menasco_check, twist_regions};
use super::seifert::{alexander_polynomial, seifert_matrix, Alexander, SeifertData};
use crate::error::{Error, Result};

/// Component index of the figure-eight component.
pub const BLUE: usize = 0;
pub const BLACK: usize = 1;

fn check_params(l: i64, m: i64, k: i64) -> Result<()> {
    if l < 1 || m < 1 || k < 1 {
        return Err(Error::Invalid(format!("l, m, k must be at least 1, got ({l}, {m}, {k})")));
    }
    Ok(())
}

pub fn build_llmk(l: i64, m: i64, k: i64) -> Result<ClosureDiagram> {
    check_params(l, m, k)?;
    let mut w: Vec<i32> = vec![1, -2];
    w.extend(std::iter::repeat_n(3, 2 * m as usize));
    w.extend([1, -2]);
    w.extend(std::iter::repeat_n(3, 2 * l as usize));
    w.extend([-4, 5, 3, -4, -4, 3]);
    let mut blocks = Vec::new();
    for _ in 0..k {
        let p = w.len();
        w.extend([5, 5, -4, -4]);
        blocks.push(BlockSpan { positive: [p, p + 1], negative: [p + 2, p + 3] });
    }
    let mut d = ClosureDiagram::new(BraidWord::new(6, w)?);
    d.blocks = blocks;
    if d.num_components != 2 || !d.braid.is_alternating() {
        return Err(Error::Construction("family word lost its shape".into()));
    }
    Ok(d)
}

/// Framing of `component` pushed into the band surface.
///
/// First way, crossing by crossing: start from the blackboard self-linking
/// (the self-writhe), add `−ε` for each self-crossing and `−ε/2` for each
/// crossing with another component. Second way: `V(γ, γ)` for the boundary
/// class `γ`. The two must agree.
pub fn boundary_framing(d: &ClosureDiagram, component: usize) -> Result<i64> {
    d.check_component(component)?;
    let mut twice = 2 * d.self_writhe(component);
    for x in &d.crossings {
        let (a, b) = x.components;
        if a == component && b == component {
            twice -= 2 * x.sign as i64;
        } else if a == component || b == component {
            twice -= x.sign as i64;
        }
    }
    if twice % 2 != 0 {
        return Err(Error::Construction("odd crossing tally".into()));
    }
    let by_crossings = twice / 2;
    let s = seifert_matrix(&d.braid)?;
    let g = &s.boundary_classes[component];
    let by_pairing = s.pairing(g, g);
    if by_crossings != by_pairing {
        return Err(Error::Construction(format!(
            "framing disagreement: crossings give {by_crossings}, Seifert pairing gives {by_pairing}"
        )));
    }
    Ok(by_pairing)
}

/// Framings of the curves of one block under the Seifert pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockFraming {
    pub block: usize,
    /// Core through the two positive bands.
    pub positive_core: i64,
    /// Core through the two negative bands.
    pub negative_core: i64,
    /// Band sum of the two cores: the Stallings curve.
    pub band_sum: i64,
    pub class: Vec<i64>,
}

impl BlockFraming {
    pub fn triple(&self) -> (i64, i64, i64) {
        (self.positive_core, self.negative_core, self.band_sum)
    }
}

pub fn stallings_block_framings(d: &ClosureDiagram) -> Result<Vec<BlockFraming>> {
    if d.blocks.is_empty() {
        return Err(Error::Precondition("diagram has no Stallings blocks".into()));
    }
    let s = seifert_matrix(&d.braid)?;
    let unit = |i: usize| {
        let mut v = vec![0i64; s.size()];
        v[i] = 1;
        v
    };
    let mut out: Vec<BlockFraming> = Vec::new();
    for (bi, b) in d.blocks.iter().enumerate() {
        let find = |p: [usize; 2]| {
            s.cycle_index(p[0], p[1])
                .ok_or_else(|| Error::Construction(format!("block {bi} bands are not consecutive")))
        };
        let (cp, cn) = (unit(find(b.positive)?), unit(find(b.negative)?));
        if s.intersection(&cp, &cn) != 0 {
            return Err(Error::Construction(format!("block {bi} cores intersect")));
        }
        let class: Vec<i64> = cp.iter().zip(&cn).map(|(x, y)| x + y).collect();
        let f = BlockFraming {
            block: bi,
            positive_core: s.pairing(&cp, &cp),
            negative_core: s.pairing(&cn, &cn),
            band_sum: s.pairing(&class, &class),
            class,
        };
        for o in &out {
            if o.class == f.class || s.intersection(&o.class, &f.class) != 0 {
                return Err(Error::Construction(format!("blocks {} and {bi} are not disjoint", o.block)));
            }
        }
        out.push(f);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurgeryRecord {
    pub l: i64,
    pub m: i64,
    pub k: i64,
    /// Surgery slope on the figure-eight component.
    pub slope: i64,
    pub ambient: String,
    pub fiber_genus: i64,
    pub q_hyperbolic: bool,
    pub blue_visits: usize,
    pub futer_purcell_ok: bool,
}

/// Surgery along the blue push-off: `4_1(−l−m)` with the capped fiber.
pub fn surgery_description(l: i64, m: i64, k: i64) -> Result<SurgeryRecord> {
    let d = build_llmk(l, m, k)?;
    let slope = boundary_framing(&d, BLUE)?;
    let (_, genus) = euler_and_genus(&d)?;
    let tw = twist_regions(&d);
    let blue_visits = tw.visits[BLUE];
    Ok(SurgeryRecord {
        l,
        m,
        k,
        slope,
        ambient: format!("4_1({slope})"),
        fiber_genus: genus,
        q_hyperbolic: slope.abs() >= 5,
        blue_visits,
        futer_purcell_ok: blue_visits >= 7,
    })
}

/// Structured record of one family member.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub l: i64,
    pub m: i64,
    pub k: i64,
    pub braid: String,
    pub components: usize,
    pub crossings: usize,
    pub euler: i64,
    pub genus: i64,
    pub twist_number: usize,
    pub blue_visits: usize,
    pub linking: i64,
    pub blue_framing: i64,
    pub alexander: Alexander,
    pub blue_alexander: Alexander,
    pub menasco: bool,
    pub block_framings: Vec<(i64, i64, i64)>,
    pub surgery: SurgeryRecord,
}

pub fn family_record(l: i64, m: i64, k: i64) -> Result<FamilyRecord> {
    let d = build_llmk(l, m, k)?;
    let (euler, genus) = euler_and_genus(&d)?;
    let tw = twist_regions(&d);
    let s: SeifertData = seifert_matrix(&d.braid)?;
    let blue = seifert_matrix(&d.sublink(&[BLUE])?)?;
    Ok(FamilyRecord {
        l,
        m,
        k,
        braid: d.braid.to_string(),
        components: d.num_components,
        crossings: d.crossings.len(),
        euler,
        genus,
        twist_number: tw.count,
        blue_visits: tw.visits[BLUE],
        linking: linking_number(&d, BLUE, BLACK)?,
        blue_framing: boundary_framing(&d, BLUE)?,
        alexander: alexander_polynomial(&s)?,
        blue_alexander: alexander_polynomial(&blue)?,
        menasco: menasco_check(&d).is_some(),
        block_framings: stallings_block_framings(&d)?.iter().map(|b| b.triple()).collect(),
        surgery: surgery_description(l, m, k)?,
    })
}
