//! Both directions of the scalar-ring theorem for exponent-`p` groups.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::simple::{cover_simplicity, Classification, SimplicityMethod, PRINCIPAL_IDEAL_LIMIT};
use crate::cover::{enumerate_star_covers, validate_cover, CellClass};
use crate::error::{Error, Result};
use crate::funcring::{count_ring, parametrized_ring, CoverFrame, GroupFunction};
use crate::group::FiniteGroup;
use crate::subgroup::{Subgroup, SubgroupDescriptor};

/// Search nodes allowed for the independent count of the forward ring.
const FORWARD_COUNT_CAP: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Converse,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForwardEvidence {
    pub central: usize,
    pub cells: Vec<SubgroupDescriptor>,
    pub star: bool,
    pub graph_connected: bool,
    pub ring_order: u128,
    /// Order from the backtracking oracle, when it finished within its cap.
    pub oracle_order: Option<u128>,
    /// Every element is `x ↦ x^λ` for some `λ`.
    pub scalar_maps: bool,
    /// Every `<a, b>` cell meets at least three lines of other cells.
    pub ab_cells_c3: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverOutcome {
    pub index: usize,
    pub cells: usize,
    pub irredundant: bool,
    pub ring_order: u128,
    pub method: SimplicityMethod,
    pub is_simple: bool,
    pub classification: Classification,
    /// The cover has `<a>` or `C_G(a)` as a cell.
    pub contains_witness_subgroup: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseEvidence {
    pub witness: usize,
    pub cyclic: SubgroupDescriptor,
    pub centralizer: SubgroupDescriptor,
    pub budget: usize,
    pub covers_checked: usize,
    pub irredundant_checked: usize,
    /// The enumeration stopped before listing every star cover.
    pub truncated: bool,
    pub outcomes: Vec<CoverOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarTheoremReport {
    pub group_order: usize,
    pub p: usize,
    pub direction: Direction,
    pub forward: Option<ForwardEvidence>,
    pub converse: Option<ConverseEvidence>,
    pub verdict: bool,
}

/// The cells `<a, c_a>, <a, b>, <b, c_a>, <ab, c_a>` over all `a` outside
/// `<b>`, with `c_a` the smallest element of `C_G(a)` outside `<a, b>`.
pub fn forward_cover_cells(g: &FiniteGroup, b: usize) -> Result<Vec<Subgroup>> {
    let bb = g.cyclic_subgroup(b);
    let mut cells = BTreeSet::new();
    for a in g.elements().filter(|&a| !bb.contains(a)) {
        let ab = g.closure(&[a, b]);
        let c = g
            .centralizer(a)
            .elements()
            .find(|&c| !ab.contains(c))
            .ok_or_else(|| Error::HypothesisFailed(format!("C_G({a}) lies inside <{a}, {b}>")))?;
        cells.insert(g.closure(&[a, c]));
        cells.insert(ab);
        cells.insert(g.closure(&[b, c]));
        cells.insert(g.closure(&[g.mul(a, b), c]));
    }
    Ok(cells.into_iter().collect())
}

fn check_forward_hypotheses(g: &FiniteGroup, b: usize) -> Result<()> {
    let p = g.prime();
    if g.exponent() != p {
        return Err(Error::HypothesisFailed(format!("exponent is {}, not {p}", g.exponent())));
    }
    if g.order() < p.pow(3) {
        return Err(Error::HypothesisFailed(format!("|G| = {} < p^3", g.order())));
    }
    if let Some(a) = g.elements().find(|&a| g.centralizer(a).order() < p.pow(3)) {
        return Err(Error::HypothesisFailed(format!(
            "|C_G({a})| = {} < p^3",
            g.centralizer(a).order()
        )));
    }
    if b >= g.order() || b == g.identity() || !g.center().contains(b) {
        return Err(Error::HypothesisFailed(format!("{b} is not a nonidentity central element")));
    }
    Ok(())
}

/// Builds the cover of [`forward_cover_cells`] and checks that it is a connected (*)
/// cover whose ring consists of the `p` scalar maps.
pub fn forward_scalar_theorem(g: &Arc<FiniteGroup>, b: usize) -> Result<ScalarTheoremReport> {
    check_forward_hypotheses(g, b)?;
    let p = g.prime();
    let cells = forward_cover_cells(g, b)?;
    let cover = validate_cover(g.clone(), cells)?;
    let star = cover.is_star_cover();
    let mut ev = ForwardEvidence {
        central: b,
        cells: cover.cells().iter().map(|c| c.descriptor(g)).collect(),
        star,
        graph_connected: false,
        ring_order: 0,
        oracle_order: count_ring(&cover, FORWARD_COUNT_CAP).ok(),
        scalar_maps: false,
        ab_cells_c3: cover
            .cells()
            .iter()
            .zip(cover.classes())
            .filter(|(c, _)| c.contains(b))
            .all(|(_, &k)| k == CellClass::C3),
    };
    if star {
        let frame = CoverFrame::canonical(&cover)?;
        ev.graph_connected = frame.graph().is_connected();
        ev.ring_order = frame.assignment_count();
        if ev.ring_order <= p as u128 {
            let ring = parametrized_ring(&frame, p)?;
            let scalars: Vec<GroupFunction> = (0..p as i64).map(|k| GroupFunction::power_map(g, k)).collect();
            ev.scalar_maps = ring.elements().iter().all(|f| scalars.contains(f));
        }
    }
    let verdict = ev.star
        && ev.graph_connected
        && ev.ring_order == p as u128
        && ev.oracle_order.is_none_or(|n| n == p as u128)
        && ev.scalar_maps
        && ev.ab_cells_c3;
    Ok(ScalarTheoremReport {
        group_order: g.order(),
        p,
        direction: Direction::Forward,
        forward: Some(ev),
        converse: None,
        verdict,
    })
}

/// The smallest element whose centralizer has order `p^2`.
pub fn converse_witness(g: &FiniteGroup) -> Result<usize> {
    let p = g.prime();
    if g.order() < p.pow(3) {
        return Err(Error::HypothesisFailed(format!("|G| = {} < p^3", g.order())));
    }
    g.elements()
        .find(|&a| g.centralizer(a).order() == p * p)
        .ok_or_else(|| Error::HypothesisFailed("no element has a centralizer of order p^2".into()))
}

/// Enumerates up to `budget` star covers and checks that none gives a simple
/// ring, and that each contains `<a>` or `C_G(a)` for the witness `a`.
pub fn converse_scalar_theorem(g: &Arc<FiniteGroup>, budget: usize) -> Result<ScalarTheoremReport> {
    let a = converse_witness(g)?;
    let cyclic = g.cyclic_subgroup(a);
    let centralizer = g.centralizer(a);
    let en = enumerate_star_covers(g, budget)?;
    let mut outcomes = Vec::with_capacity(en.covers.len());
    for (index, cover) in en.covers.iter().enumerate() {
        let s = cover_simplicity(cover, PRINCIPAL_IDEAL_LIMIT)?;
        outcomes.push(CoverOutcome {
            index,
            cells: cover.len(),
            irredundant: index < en.irredundant,
            ring_order: s.order,
            method: s.method,
            is_simple: s.is_simple,
            classification: s.classification,
            contains_witness_subgroup: cover.position(&cyclic).is_some() || cover.position(&centralizer).is_some(),
        });
    }
    let verdict = !outcomes.is_empty() && outcomes.iter().all(|o| !o.is_simple && o.contains_witness_subgroup);
    Ok(ScalarTheoremReport {
        group_order: g.order(),
        p: g.prime(),
        direction: Direction::Converse,
        forward: None,
        converse: Some(ConverseEvidence {
            witness: a,
            cyclic: cyclic.descriptor(g),
            centralizer: centralizer.descriptor(g),
            budget,
            covers_checked: outcomes.len(),
            irredundant_checked: en.irredundant.min(outcomes.len()),
            truncated: en.truncated,
            outcomes,
        }),
        verdict,
    })
}
