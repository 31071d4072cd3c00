//! Splitting `R_C(G)` into `M_2(Z_p)` factors and subdirect block factors.
//!
//! Each component of the 3-intersecting graph that carries an invariant line
//! becomes one subdirect factor: a block ring `N^{m+n}` whose `ν`/`μ` columns
//! come from the noncyclic C1 cells hanging off that component, with lattice
//! tuples on the positions that are socles of cyclic cells of order above `p`.
//! Each noncyclic C0 cell becomes an `M_2(Z_p)` factor.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::block::{block_ring, BlockRing, BlockSpec};
use super::lattice::{lattice_of, lattice_ring, Lattice, LatticeRing, LatticeSummary};
use crate::cover::{CellClass, Cover};
use crate::error::{Error, Result};
use crate::funcring::{CellFrame, CoverFrame, GroupFunction, ParamAssignment};
use crate::ring::{FiniteRing, M2Ring};
use crate::subgroup::{Subgroup, SubgroupDescriptor};

/// The five basis sets, each sorted canonically without repeats.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisSets {
    /// Order-`p` intersections inside C3 cells.
    pub b3: Vec<Subgroup>,
    /// Both intersection lines of each C2 cell.
    pub b2: Vec<Subgroup>,
    /// The intersection line of each C1 cell.
    pub b1_1: Vec<Subgroup>,
    /// The `b1` line of each noncyclic C1 cell.
    pub b1_2: Vec<Subgroup>,
    /// Basis lines of noncyclic C0 cells and socles of cyclic C0 cells.
    pub b0: Vec<Subgroup>,
}

impl BasisSets {
    pub fn union(&self) -> BTreeSet<Subgroup> {
        [&self.b3, &self.b2, &self.b1_1, &self.b1_2, &self.b0]
            .into_iter()
            .flatten()
            .copied()
            .collect()
    }
}

pub fn build_basis_sets(frame: &CoverFrame) -> BasisSets {
    let cover = frame.cover();
    let g = cover.group();
    let line = |x: usize| g.cyclic_subgroup(x);
    let mut s = BasisSets::default();
    for (i, fr) in frame.cell_frames().iter().enumerate() {
        match (cover.class(i), *fr) {
            (CellClass::C3, _) => s.b3.extend(cover.intersection_profile(i)),
            (CellClass::C2, CellFrame::Diagonal { e, e_prime }) => s.b2.extend([line(e), line(e_prime)]),
            (CellClass::C1, CellFrame::Triangular { e1, b1 }) => {
                s.b1_1.push(line(e1));
                s.b1_2.push(line(b1));
            }
            (CellClass::C1, CellFrame::Cyclic { socle, .. }) => s.b1_1.push(line(socle)),
            (CellClass::C0, CellFrame::Full { b0, b0_prime }) => s.b0.extend([line(b0), line(b0_prime)]),
            (CellClass::C0, CellFrame::Cyclic { socle, .. }) if socle != 0 => s.b0.push(line(socle)),
            _ => {}
        }
    }
    for v in [&mut s.b3, &mut s.b2, &mut s.b1_1, &mut s.b1_2, &mut s.b0] {
        v.sort();
        v.dedup();
    }
    s
}

/// A column of the block: the `b1` line of a noncyclic C1 cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Satellite {
    pub cell: usize,
    pub line: Subgroup,
    /// Component of `line`, which holds the `μ` scalar.
    pub component: usize,
}

/// Lattice data on one scalar position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionLattice {
    pub lattice: Lattice,
    pub ring: LatticeRing,
    /// Cover cell of each maximal node, in node order.
    pub cells: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdirectFactor {
    component: usize,
    block: BlockRing,
    /// Scalar positions; the first `m` carry the attachments.
    positions: Vec<Subgroup>,
    satellites: Vec<Satellite>,
    lattices: Vec<Option<PositionLattice>>,
    moduli: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M2Factor {
    cell: usize,
    /// Lines of `b0` and `b0'`, in that order.
    basis: [Subgroup; 2],
    /// Components of the two basis lines.
    components: [usize; 2],
    ring: M2Ring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    M2(M2Factor),
    Subdirect(SubdirectFactor),
}

/// An element of a subdirect factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubdirectElement {
    /// `(λ, ν_1..ν_n, μ_1..μ_n)`.
    pub block: Vec<u64>,
    /// One tuple per diagonal position: `x_1..x_m`, then `(μ_1)..(μ_n)`,
    /// then the padding positions `x_{m+1}..x_k`.
    pub tuples: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum FactorElement {
    M2([u64; 4]),
    Subdirect(SubdirectElement),
}

impl SubdirectFactor {
    pub fn component(&self) -> usize {
        self.component
    }

    pub fn spec(&self) -> &BlockSpec {
        self.block.spec()
    }

    pub fn block_ring(&self) -> &BlockRing {
        &self.block
    }

    pub fn positions(&self) -> &[Subgroup] {
        &self.positions
    }

    pub fn satellites(&self) -> &[Satellite] {
        &self.satellites
    }

    /// Lattice data per position, `None` on positions without one.
    pub fn lattices(&self) -> &[Option<PositionLattice>] {
        &self.lattices
    }

    /// Scalar positions beyond the first `m`.
    pub fn padding(&self) -> usize {
        self.positions.len() - self.spec().m()
    }

    /// Side length of the block including padding.
    pub fn size(&self) -> usize {
        self.positions.len() + self.spec().n()
    }

    /// Diagonal subgroups in matrix order.
    pub fn diagonal(&self) -> Vec<Subgroup> {
        let m = self.spec().m();
        let mut out = self.positions[..m].to_vec();
        out.extend(self.satellites.iter().map(|s| s.line));
        out.extend_from_slice(&self.positions[m..]);
        out
    }

    /// Moduli of every tuple entry, in tuple order.
    fn tuple_moduli(&self) -> &[Vec<u64>] {
        &self.moduli
    }

    fn compute_moduli(&self) -> Vec<Vec<u64>> {
        let p = self.block.p();
        let pos = |i: usize| match &self.lattices[i] {
            Some(pl) => pl.ring.orders().to_vec(),
            None => vec![p],
        };
        let m = self.spec().m();
        let mut out: Vec<Vec<u64>> = (0..m).map(pos).collect();
        out.extend(self.satellites.iter().map(|_| vec![p]));
        out.extend((m..self.positions.len()).map(pos));
        out
    }

    /// Length of each tuple, in tuple order.
    pub fn tuple_lengths(&self) -> Vec<usize> {
        self.tuple_moduli().iter().map(Vec::len).collect()
    }

    /// Tuple slot of scalar position `i`.
    fn tuple_slot(&self, i: usize) -> usize {
        if i < self.spec().m() {
            i
        } else {
            i + self.spec().n()
        }
    }

    fn contains(&self, x: &SubdirectElement) -> bool {
        let n = self.spec().n();
        let p = self.block.p();
        if x.block.len() != 1 + 2 * n || x.block.iter().any(|&v| v >= p) {
            return false;
        }
        let moduli = self.tuple_moduli();
        if x.tuples.len() != moduli.len() {
            return false;
        }
        let lambda = x.block[0];
        let m = self.spec().m();
        for j in 0..n {
            if x.tuples[m + j] != [x.block[1 + n + j]] {
                return false;
            }
        }
        (0..self.positions.len()).all(|i| {
            let t = &x.tuples[self.tuple_slot(i)];
            match &self.lattices[i] {
                Some(pl) => pl.ring.contains(t) && pl.ring.reduce(t) == lambda,
                None => t == &[lambda],
            }
        })
    }

    fn order(&self) -> u128 {
        let p = self.block.p() as u128;
        self.block.order()
            * self
                .lattices
                .iter()
                .flatten()
                .map(|pl| pl.ring.order() / p)
                .product::<u128>()
    }

    fn elements(&self) -> Vec<SubdirectElement> {
        let mut out = Vec::new();
        for block in self.block.elements() {
            let lambda = block[0];
            let n = self.spec().n();
            let choices: Vec<Vec<Vec<u64>>> = (0..self.positions.len())
                .map(|i| match &self.lattices[i] {
                    Some(pl) => pl.ring.fiber(lambda),
                    None => vec![vec![lambda]],
                })
                .collect();
            let mut idx = vec![0; choices.len()];
            loop {
                let mut tuples: Vec<Vec<u64>> = Vec::new();
                for (i, c) in idx.iter().enumerate().take(self.spec().m()) {
                    tuples.push(choices[i][*c].clone());
                }
                tuples.extend((0..n).map(|j| vec![block[1 + n + j]]));
                for (i, c) in idx.iter().enumerate().skip(self.spec().m()) {
                    tuples.push(choices[i][*c].clone());
                }
                out.push(SubdirectElement {
                    block: block.clone(),
                    tuples,
                });
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
        out.sort();
        out
    }

    fn combine(&self, x: &SubdirectElement, y: &SubdirectElement, mul: bool) -> SubdirectElement {
        let block = if mul {
            self.block.mul(&x.block, &y.block)
        } else {
            self.block.add(&x.block, &y.block)
        };
        let tuples = self
            .tuple_moduli()
            .iter()
            .zip(x.tuples.iter().zip(&y.tuples))
            .map(|(ns, (a, b))| {
                ns.iter()
                    .zip(a.iter().zip(b))
                    .map(|(n, (u, v))| if mul { u * v % n } else { (u + v) % n })
                    .collect()
            })
            .collect();
        SubdirectElement { block, tuples }
    }
}

impl M2Factor {
    pub fn cell(&self) -> usize {
        self.cell
    }

    pub fn basis(&self) -> [Subgroup; 2] {
        self.basis
    }
}

impl Factor {
    pub fn p(&self) -> u64 {
        match self {
            Factor::M2(f) => f.ring.p,
            Factor::Subdirect(f) => f.block.p(),
        }
    }

    pub fn contains(&self, x: &FactorElement) -> bool {
        match (self, x) {
            (Factor::M2(f), FactorElement::M2(a)) => a.iter().all(|&v| v < f.ring.p),
            (Factor::Subdirect(f), FactorElement::Subdirect(s)) => f.contains(s),
            _ => false,
        }
    }

    /// Side length of the matrix block.
    pub fn size(&self) -> usize {
        match self {
            Factor::M2(_) => 2,
            Factor::Subdirect(f) => f.size(),
        }
    }

    pub fn tuple_lengths(&self) -> Vec<usize> {
        match self {
            Factor::M2(_) => Vec::new(),
            Factor::Subdirect(f) => f.tuple_lengths(),
        }
    }

    /// True when the factor is `Z_p`: no columns and no lattice data.
    pub fn is_prime_field(&self) -> bool {
        matches!(self, Factor::Subdirect(f) if f.spec().n() == 0 && f.lattices.iter().all(Option::is_none))
    }

    pub fn is_m2(&self) -> bool {
        matches!(self, Factor::M2(_))
    }

    pub fn report(&self) -> FactorReport {
        match self {
            Factor::M2(f) => FactorReport::M2 { p: f.ring.p },
            Factor::Subdirect(f) => FactorReport::Subdirect {
                m: f.spec().m(),
                n: f.spec().n(),
                attachments: f.spec().attachments().to_vec(),
                padding: f.padding(),
                order: f.order(),
                lattices: f
                    .lattices
                    .iter()
                    .enumerate()
                    .filter_map(|(i, pl)| {
                        pl.as_ref().map(|pl| PositionLatticeReport {
                            position: i,
                            summary: pl.lattice.summary(),
                        })
                    })
                    .collect(),
            },
        }
    }
}

impl FiniteRing for Factor {
    type Elem = FactorElement;

    fn order(&self) -> u128 {
        match self {
            Factor::M2(f) => f.ring.order(),
            Factor::Subdirect(f) => f.order(),
        }
    }

    fn elements(&self) -> Vec<FactorElement> {
        match self {
            Factor::M2(f) => f.ring.elements().into_iter().map(FactorElement::M2).collect(),
            Factor::Subdirect(f) => f.elements().into_iter().map(FactorElement::Subdirect).collect(),
        }
    }

    fn zero(&self) -> FactorElement {
        match self {
            Factor::M2(_) => FactorElement::M2([0; 4]),
            Factor::Subdirect(f) => FactorElement::Subdirect(SubdirectElement {
                block: f.block.zero(),
                tuples: f.tuple_moduli().iter().map(|t| vec![0; t.len()]).collect(),
            }),
        }
    }

    fn add(&self, x: &FactorElement, y: &FactorElement) -> FactorElement {
        match (self, x, y) {
            (Factor::M2(f), FactorElement::M2(a), FactorElement::M2(b)) => FactorElement::M2(f.ring.add(a, b)),
            (Factor::Subdirect(f), FactorElement::Subdirect(a), FactorElement::Subdirect(b)) => {
                FactorElement::Subdirect(f.combine(a, b, false))
            }
            _ => panic!("element of a different factor"),
        }
    }

    fn mul(&self, x: &FactorElement, y: &FactorElement) -> FactorElement {
        match (self, x, y) {
            (Factor::M2(f), FactorElement::M2(a), FactorElement::M2(b)) => FactorElement::M2(f.ring.mul(a, b)),
            (Factor::Subdirect(f), FactorElement::Subdirect(a), FactorElement::Subdirect(b)) => {
                FactorElement::Subdirect(f.combine(a, b, true))
            }
            _ => panic!("element of a different factor"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionLatticeReport {
    pub position: usize,
    #[serde(flatten)]
    pub summary: LatticeSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorReport {
    M2 {
        p: u64,
    },
    Subdirect {
        m: usize,
        n: usize,
        attachments: Vec<usize>,
        padding: usize,
        order: u128,
        lattices: Vec<PositionLatticeReport>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub factors: Vec<FactorReport>,
    pub order: u128,
    pub ordered_basis: Vec<SubgroupDescriptor>,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    frame: CoverFrame,
    sets: BasisSets,
    factors: Vec<Factor>,
    ordered_basis: Vec<Subgroup>,
    /// Cyclic cells of order at most `p` with their socle component. Their
    /// exponent is the scalar of that component.
    plain_cyclic: Vec<(usize, Option<usize>)>,
}

/// Builds the factors in basis-set order: components met in `B3`, then `B2`,
/// then `B1^1`, then the C0 cells. Ties go by canonical subgroup order.
pub fn decompose(frame: &CoverFrame) -> Result<Decomposition> {
    let cover = frame.cover();
    cover.require_star()?;
    let g = cover.group();
    let p = g.prime() as u64;
    let line = |x: usize| g.cyclic_subgroup(x);
    let comp = |s: &Subgroup| frame.graph().component_of(s);
    let sets = build_basis_sets(frame);

    // Candidate scalar positions and what hangs off each of them.
    let mut scalar_lines: BTreeSet<Subgroup> = BTreeSet::new();
    scalar_lines.extend(sets.b3.iter().chain(&sets.b2).chain(&sets.b1_1));
    let mut columns: BTreeMap<Subgroup, Vec<(Subgroup, usize)>> = BTreeMap::new();
    let mut cyclic_over: BTreeMap<Subgroup, Vec<usize>> = BTreeMap::new();
    for (i, fr) in frame.cell_frames().iter().enumerate() {
        match *fr {
            CellFrame::Triangular { e1, b1 } => columns.entry(line(e1)).or_default().push((line(b1), i)),
            CellFrame::Cyclic { socle, .. } if socle != 0 => {
                if cover.class(i) == CellClass::C0 {
                    scalar_lines.insert(line(socle));
                }
                if cover.cells()[i].order() as u64 > p {
                    cyclic_over.entry(line(socle)).or_default().push(i);
                }
            }
            _ => {}
        }
    }
    for v in columns.values_mut() {
        v.sort();
    }

    let build_subdirect = |k: usize| -> Result<SubdirectFactor> {
        let mine: Vec<Subgroup> = scalar_lines.iter().filter(|s| comp(s).ok() == Some(k)).copied().collect();
        let (mut positions, rest): (Vec<Subgroup>, Vec<Subgroup>) =
            mine.into_iter().partition(|s| columns.contains_key(s));
        let mut attachments = Vec::new();
        let mut satellites = Vec::new();
        for (i, y) in positions.iter().enumerate() {
            for &(b1_line, cell) in &columns[y] {
                attachments.push(i + 1);
                satellites.push(Satellite {
                    cell,
                    line: b1_line,
                    component: comp(&b1_line)?,
                });
            }
        }
        let m = positions.len().max(1);
        positions.extend(rest);
        let spec = BlockSpec::new(m, satellites.len(), attachments)?;
        let lattices = positions
            .iter()
            .map(|k_line| -> Result<Option<PositionLattice>> {
                if !cyclic_over.contains_key(k_line) {
                    return Ok(None);
                }
                let lattice = lattice_of(g, k_line)?;
                let cells = lattice
                    .maximal_nodes()
                    .into_iter()
                    .map(|node| {
                        cover.position(node).ok_or_else(|| {
                            Error::InconsistentFrame(format!(
                                "maximal cyclic subgroup {:?} is not a cell",
                                node.elements().collect::<Vec<_>>()
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Some(PositionLattice {
                    ring: lattice_ring(&lattice),
                    lattice,
                    cells,
                }))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut factor = SubdirectFactor {
            component: k,
            block: block_ring(spec, p)?,
            positions,
            satellites,
            lattices,
            moduli: Vec::new(),
        };
        factor.moduli = factor.compute_moduli();
        Ok(factor)
    };

    let mut factors = Vec::new();
    let mut done = BTreeSet::new();
    for list in [&sets.b3, &sets.b2, &sets.b1_1] {
        for s in list {
            let k = comp(s)?;
            if done.insert(k) {
                factors.push(Factor::Subdirect(build_subdirect(k)?));
            }
        }
    }
    let mut c0: Vec<usize> = (0..cover.len()).filter(|&i| cover.class(i) == CellClass::C0).collect();
    c0.sort_by_key(|&i| cover.cells()[i]);
    for i in c0 {
        match frame.cell_frames()[i] {
            CellFrame::Full { b0, b0_prime } => factors.push(Factor::M2(M2Factor {
                cell: i,
                basis: [line(b0), line(b0_prime)],
                components: [comp(&line(b0))?, comp(&line(b0_prime))?],
                ring: M2Ring { p },
            })),
            CellFrame::Cyclic { socle, .. } if socle != 0 => {
                let k = comp(&line(socle))?;
                if done.insert(k) {
                    factors.push(Factor::Subdirect(build_subdirect(k)?));
                }
            }
            _ => {}
        }
    }
    let ordered_basis = factors
        .iter()
        .flat_map(|f| match f {
            Factor::M2(m) => m.basis.to_vec(),
            Factor::Subdirect(s) => s.diagonal(),
        })
        .collect();
    let plain_cyclic = frame
        .cell_frames()
        .iter()
        .enumerate()
        .filter_map(|(i, fr)| match *fr {
            CellFrame::Cyclic { socle, .. } if cover.cells()[i].order() as u64 <= p => {
                Some((i, (socle != 0).then(|| frame.component_of_element(socle))))
            }
            _ => None,
        })
        .collect();
    Ok(Decomposition {
        frame: frame.clone(),
        sets,
        factors,
        ordered_basis,
        plain_cyclic,
    })
}

impl Decomposition {
    pub fn frame(&self) -> &CoverFrame {
        &self.frame
    }

    pub fn cover(&self) -> &Cover {
        self.frame.cover()
    }

    pub fn basis_sets(&self) -> &BasisSets {
        &self.sets
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// The ordered basis `A(C)`.
    pub fn ordered_basis(&self) -> &[Subgroup] {
        &self.ordered_basis
    }

    /// Product of the factor orders.
    pub fn order(&self) -> u128 {
        self.factors.iter().map(FiniteRing::order).product()
    }

    /// Block side lengths, in factor order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.factors.iter().map(Factor::size).collect()
    }

    /// Tuple lengths of all subdirect factors, concatenated in factor order.
    pub fn tuple_lengths(&self) -> Vec<usize> {
        self.factors.iter().flat_map(Factor::tuple_lengths).collect()
    }

    pub fn report(&self) -> DecompositionReport {
        let g = self.cover().group();
        DecompositionReport {
            factors: self.factors.iter().map(Factor::report).collect(),
            order: self.order(),
            ordered_basis: self.ordered_basis.iter().map(|s| s.descriptor(g)).collect(),
        }
    }

    pub fn contains(&self, x: &[FactorElement]) -> bool {
        x.len() == self.factors.len() && self.factors.iter().zip(x).all(|(f, e)| f.contains(e))
    }

    pub fn add(&self, x: &[FactorElement], y: &[FactorElement]) -> Vec<FactorElement> {
        self.factors.iter().zip(x.iter().zip(y)).map(|(f, (a, b))| f.add(a, b)).collect()
    }

    pub fn mul(&self, x: &[FactorElement], y: &[FactorElement]) -> Vec<FactorElement> {
        self.factors.iter().zip(x.iter().zip(y)).map(|(f, (a, b))| f.mul(a, b)).collect()
    }

    /// Image of `f` in the product of the factors.
    pub fn represent(&self, f: &GroupFunction) -> Result<Vec<FactorElement>> {
        let a = self.frame.read_assignment(f)?;
        Ok(self
            .factors
            .iter()
            .map(|factor| match factor {
                Factor::M2(m) => {
                    let [k0, k1] = m.components;
                    FactorElement::M2([a.f[&k0], a.b[&m.cell], a.a[&m.cell], a.f[&k1]])
                }
                Factor::Subdirect(s) => {
                    let lambda = a.f[&s.component];
                    let nu: Vec<u64> = s.satellites.iter().map(|t| a.h[&t.cell]).collect();
                    let mu: Vec<u64> = s.satellites.iter().map(|t| a.f[&t.component]).collect();
                    let pos = |i: usize| match &s.lattices[i] {
                        Some(pl) => pl.cells.iter().map(|c| a.lift[c]).collect(),
                        None => vec![lambda],
                    };
                    let m = s.spec().m();
                    let mut tuples: Vec<Vec<u64>> = (0..m).map(pos).collect();
                    tuples.extend(mu.iter().map(|&v| vec![v]));
                    tuples.extend((m..s.positions.len()).map(pos));
                    let mut block = vec![lambda];
                    block.extend(nu);
                    block.extend(mu);
                    FactorElement::Subdirect(SubdirectElement { block, tuples })
                }
            })
            .collect())
    }

    /// The ring element with the given image.
    pub fn reconstruct(&self, x: &[FactorElement]) -> Result<GroupFunction> {
        if !self.contains(x) {
            return Err(Error::InconsistentFrame("tuple is not in the factor product".into()));
        }
        let mut a = ParamAssignment::default();
        for (factor, e) in self.factors.iter().zip(x) {
            match (factor, e) {
                (Factor::M2(m), FactorElement::M2([fb0, b, aa, fb0p])) => {
                    a.f.insert(m.components[0], *fb0);
                    a.f.insert(m.components[1], *fb0p);
                    a.a.insert(m.cell, *aa);
                    a.b.insert(m.cell, *b);
                }
                (Factor::Subdirect(s), FactorElement::Subdirect(el)) => {
                    let n = s.spec().n();
                    a.f.insert(s.component, el.block[0]);
                    for (j, t) in s.satellites.iter().enumerate() {
                        a.h.insert(t.cell, el.block[1 + j]);
                        a.f.insert(t.component, el.block[1 + n + j]);
                    }
                    for (i, pl) in s.lattices.iter().enumerate() {
                        if let Some(pl) = pl {
                            for (&c, &v) in pl.cells.iter().zip(&el.tuples[s.tuple_slot(i)]) {
                                a.lift.insert(c, v);
                            }
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
        for &(i, k) in &self.plain_cyclic {
            a.lift.insert(i, k.map_or(0, |k| a.f[&k]));
        }
        self.frame.materialize(&a)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cover::validate_cover;
    use crate::group::FiniteGroup;

    fn q8_cover() -> Cover {
        let q = Arc::new(FiniteGroup::quaternion8());
        let cells = vec![q.cyclic_subgroup(1), q.cyclic_subgroup(4), q.cyclic_subgroup(5)];
        validate_cover(q, cells).unwrap()
    }

    #[test]
    fn q8_single_subdirect_factor() {
        let frame = CoverFrame::canonical(&q8_cover()).unwrap();
        let sets = build_basis_sets(&frame);
        assert_eq!(sets.b1_1.len(), 1);
        assert!(sets.b3.is_empty() && sets.b2.is_empty() && sets.b1_2.is_empty() && sets.b0.is_empty());
        let d = decompose(&frame).unwrap();
        assert_eq!(d.factors().len(), 1);
        assert_eq!(d.order(), 16);
        assert_eq!(d.tuple_lengths(), vec![3]);
        let Factor::Subdirect(s) = &d.factors()[0] else { panic!() };
        assert_eq!((s.spec().m(), s.spec().n()), (1, 0));
        assert_eq!(d.ordered_basis().len(), 1);
    }

    #[test]
    fn klein_single_m2() {
        let k = Arc::new(FiniteGroup::elementary(2, 2).unwrap());
        let cover = validate_cover(k.clone(), vec![k.whole()]).unwrap();
        let frame = CoverFrame::canonical(&cover).unwrap();
        let sets = build_basis_sets(&frame);
        assert_eq!(sets.b0.len(), 2);
        let d = decompose(&frame).unwrap();
        assert_eq!(d.factors().len(), 1);
        assert!(d.factors()[0].is_m2());
        assert_eq!(d.order(), 16);
        let json = serde_json::to_value(d.report()).unwrap();
        assert!(json["factors"][0]["m2"].is_object());
    }

    #[test]
    fn represent_identity_and_zero() {
        let cover = q8_cover();
        let frame = CoverFrame::canonical(&cover).unwrap();
        let d = decompose(&frame).unwrap();
        let one = d.represent(&GroupFunction::identity(8)).unwrap();
        let FactorElement::Subdirect(s) = &one[0] else { panic!() };
        assert_eq!(s.block, vec![1]);
        assert_eq!(s.tuples, vec![vec![1, 1, 1]]);
        let zero = d.represent(&GroupFunction::zero(8)).unwrap();
        assert_eq!(zero, vec![d.factors()[0].zero()]);
        assert_eq!(d.reconstruct(&one).unwrap(), GroupFunction::identity(8));
    }

    #[test]
    fn non_star_is_rejected() {
        let k = Arc::new(FiniteGroup::cyclic(2, 2).unwrap());
        let cover = validate_cover(k.clone(), vec![k.whole(), k.cyclic_subgroup(2)]).unwrap();
        assert!(matches!(CoverFrame::canonical(&cover), Err(Error::NotStarCover(_))));
    }
}
