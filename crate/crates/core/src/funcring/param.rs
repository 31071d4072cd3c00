//! Explicit parametrization of `R_C(G)` for (*) covers.
//!
//! Every ring element is determined by a scalar per used component of the
//! 3-intersecting graph, an off-diagonal entry per noncyclic C1 cell, two
//! off-diagonal entries per noncyclic C0 cell, and an exponent per cyclic cell.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{FunctionRing, GroupFunction};
use crate::cover::{CellClass, Cover};
use crate::error::{Error, Result};
use crate::graph::{build_graph, ThreeIntersectGraph};
use crate::group::FiniteGroup;

/// Basis data for one cell. Element indices, not subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CellFrame {
    /// Noncyclic C3 cell: acts as one scalar.
    Scalar,
    /// C2 cell: diagonal on the two intersection lines.
    Diagonal { e: usize, e_prime: usize },
    /// Noncyclic C1 cell: `e1` spans the intersection line.
    Triangular { e1: usize, b1: usize },
    /// Noncyclic C0 cell: full 2x2 action.
    Full { b0: usize, b0_prime: usize },
    /// Cyclic cell: generator and socle generator.
    Cyclic { generator: usize, socle: usize },
}

/// Where the scalar of a component is read off a ring element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Site {
    /// An invariant line spanned by this element.
    Line(usize),
    /// Lower-right entry of a triangular cell.
    B1(usize),
    /// Diagonal entries of a full cell.
    B0(usize),
    B0Prime(usize),
}

/// Parameter values. Scalars lie in `0..p`; lifts in `0..|cell|`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParamAssignment {
    /// Component id to scalar.
    pub f: BTreeMap<usize, u64>,
    /// Noncyclic C1 cell to off-diagonal entry.
    pub h: BTreeMap<usize, u64>,
    /// Noncyclic C0 cell to lower-left entry.
    pub a: BTreeMap<usize, u64>,
    /// Noncyclic C0 cell to upper-right entry.
    pub b: BTreeMap<usize, u64>,
    /// Cyclic cell to exponent.
    pub lift: BTreeMap<usize, u64>,
}

/// Matrix entry of a linear cell action, by parameter slot.
#[derive(Clone, Copy, Debug)]
enum Entry {
    Zero,
    F(usize),
    H(usize),
    A(usize),
    B(usize),
}

/// Precomputed action of one cell.
#[derive(Clone, Debug)]
enum CellAction {
    /// `grid[s * p + t] = u^s v^t`; `points` lists `(u^s v^t, s, t)`.
    Linear {
        grid: Vec<usize>,
        points: Vec<(usize, usize, usize)>,
        m: [[Entry; 2]; 2],
    },
    /// `by_exp[k] = gen^k`; the cell acts by a lift exponent.
    Power { by_exp: Vec<usize>, slot: usize },
}

/// Parameters indexed by slot rather than by component or cell.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Dense {
    f: Vec<u64>,
    h: Vec<u64>,
    a: Vec<u64>,
    b: Vec<u64>,
    lift: Vec<u64>,
}

/// Reads one parameter off a function: look up `f(at)` in `table`.
///
/// `Log` tables hold exponents; `Coord` tables hold `s * p + t` for
/// `u^s v^t` in the cell basis, and `second` selects `t`.
#[derive(Clone, Debug)]
enum Reader {
    Log { at: usize, table: Vec<u32> },
    Coord { at: usize, table: Vec<u32>, second: bool },
}

const NONE: u32 = u32::MAX;

/// A cover together with a basis choice for every cell.
#[derive(Clone, Debug)]
pub struct CoverFrame {
    cover: Cover,
    graph: ThreeIntersectGraph,
    cells: Vec<CellFrame>,
    sites: BTreeMap<usize, Site>,
    comps: Vec<usize>,
    tri: Vec<usize>,
    full: Vec<usize>,
    cyc: Vec<usize>,
    actions: Vec<CellAction>,
    kernel: Vec<Vec<u64>>,
    /// Orders of pairwise intersections of the cyclic cells.
    cyc_meet: Vec<Vec<u64>>,
    /// Slot of the socle component of each cyclic cell.
    socle_slot: Vec<Option<usize>>,
    readers: [Vec<Reader>; 5],
}

fn smallest_nonidentity(s: &crate::subgroup::Subgroup) -> usize {
    s.elements().find(|&x| x != 0).expect("nontrivial subgroup")
}

impl CoverFrame {
    /// The frame using the smallest admissible element indices.
    pub fn canonical(cover: &Cover) -> Result<Self> {
        cover.require_star()?;
        let g = cover.group();
        let cells = cover
            .cells()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_cyclic() {
                    let generator = c.generator(g).unwrap();
                    let socle = if c.order() > 1 {
                        g.pow(generator, (c.order() / g.prime()) as i64)
                    } else {
                        0
                    };
                    return CellFrame::Cyclic { generator, socle };
                }
                let profile = cover.intersection_profile(i);
                match cover.class(i) {
                    CellClass::C3 => CellFrame::Scalar,
                    CellClass::C2 => CellFrame::Diagonal {
                        e: smallest_nonidentity(&profile[0]),
                        e_prime: smallest_nonidentity(&profile[1]),
                    },
                    CellClass::C1 => {
                        let e1 = smallest_nonidentity(&profile[0]);
                        let b1 = c.elements().find(|&x| !profile[0].contains(x)).unwrap();
                        CellFrame::Triangular { e1, b1 }
                    }
                    CellClass::C0 => {
                        let b0 = smallest_nonidentity(c);
                        let line = g.cyclic_subgroup(b0);
                        let b0_prime = c.elements().find(|&x| !line.contains(x)).unwrap();
                        CellFrame::Full { b0, b0_prime }
                    }
                }
            })
            .collect();
        Self::new(cover, cells)
    }

    /// Validates a frame against the cell classes.
    pub fn new(cover: &Cover, cells: Vec<CellFrame>) -> Result<Self> {
        cover.require_star()?;
        let g = cover.group();
        if cells.len() != cover.len() {
            return Err(Error::InconsistentFrame(format!(
                "{} cell frames for {} cells",
                cells.len(),
                cover.len()
            )));
        }
        let bad = |i: usize, msg: &str| Error::InconsistentFrame(format!("cell {i}: {msg}"));
        for (i, (c, fr)) in cover.cells().iter().zip(&cells).enumerate() {
            let class = cover.class(i);
            let profile = cover.intersection_profile(i);
            let inside = |x: usize| c.contains(x) && x != 0;
            match *fr {
                CellFrame::Cyclic { generator, socle } => {
                    if !c.is_cyclic() || !c.contains(generator) || g.element_order(generator) != c.order() {
                        return Err(bad(i, "generator does not generate the cell"));
                    }
                    let expect = if c.order() > 1 {
                        g.pow(generator, (c.order() / g.prime()) as i64)
                    } else {
                        0
                    };
                    if socle != expect {
                        return Err(bad(i, "socle is not the order-p power of the generator"));
                    }
                }
                _ if c.is_cyclic() => return Err(bad(i, "cyclic cell needs a cyclic frame")),
                CellFrame::Scalar if class == CellClass::C3 => {}
                CellFrame::Diagonal { e, e_prime } if class == CellClass::C2 => {
                    if !inside(e) || !inside(e_prime) {
                        return Err(bad(i, "basis element outside the cell"));
                    }
                    let mut lines = vec![g.cyclic_subgroup(e), g.cyclic_subgroup(e_prime)];
                    lines.sort();
                    if lines != profile {
                        return Err(bad(i, "basis lines are not the two intersection lines"));
                    }
                }
                CellFrame::Triangular { e1, b1 } if class == CellClass::C1 => {
                    if !inside(e1) || !inside(b1) {
                        return Err(bad(i, "basis element outside the cell"));
                    }
                    if vec![g.cyclic_subgroup(e1)] != profile {
                        return Err(bad(i, "e1 does not span the intersection line"));
                    }
                    if g.cyclic_subgroup(e1).contains(b1) {
                        return Err(bad(i, "b1 lies on the e1 line"));
                    }
                }
                CellFrame::Full { b0, b0_prime } if class == CellClass::C0 => {
                    if !inside(b0) || !inside(b0_prime) || g.cyclic_subgroup(b0).contains(b0_prime) {
                        return Err(bad(i, "b0, b0' do not form a basis of the cell"));
                    }
                }
                _ => return Err(bad(i, &format!("frame kind does not match class {class}"))),
            }
        }
        let graph = build_graph(cover);
        let comp = |x: usize| graph.component_of(&g.cyclic_subgroup(x)).unwrap();
        let mut sites = BTreeMap::new();
        let mut lines = Vec::new();
        for (c, fr) in cover.cells().iter().zip(&cells) {
            match *fr {
                CellFrame::Scalar => lines.extend(
                    graph
                        .vertices()
                        .iter()
                        .filter(|v| v.is_subgroup_of(c))
                        .map(smallest_nonidentity),
                ),
                CellFrame::Diagonal { e, e_prime } => lines.extend([e, e_prime]),
                CellFrame::Triangular { e1, .. } => lines.push(e1),
                CellFrame::Cyclic { socle, .. } if socle != 0 => lines.push(socle),
                _ => {}
            }
        }
        for x in lines {
            sites.entry(comp(x)).or_insert(Site::Line(x));
        }
        for (i, fr) in cells.iter().enumerate() {
            match *fr {
                CellFrame::Triangular { b1, .. } => {
                    sites.entry(comp(b1)).or_insert(Site::B1(i));
                }
                CellFrame::Full { b0, b0_prime } => {
                    sites.entry(comp(b0)).or_insert(Site::B0(i));
                    sites.entry(comp(b0_prime)).or_insert(Site::B0Prime(i));
                }
                _ => {}
            }
        }
        let slot_list = |pred: fn(&CellFrame) -> bool| -> Vec<usize> {
            (0..cells.len()).filter(|&i| pred(&cells[i])).collect()
        };
        let mut frame = Self {
            cover: cover.clone(),
            comps: sites.keys().copied().collect(),
            tri: slot_list(|f| matches!(f, CellFrame::Triangular { .. })),
            full: slot_list(|f| matches!(f, CellFrame::Full { .. })),
            cyc: slot_list(|f| matches!(f, CellFrame::Cyclic { .. })),
            graph,
            cells,
            sites,
            actions: Vec::new(),
            kernel: Vec::new(),
            cyc_meet: Vec::new(),
            socle_slot: Vec::new(),
            readers: Default::default(),
        };
        frame.actions = (0..frame.cells.len()).map(|i| frame.action(i)).collect();
        let cells = frame.cover.cells();
        frame.cyc_meet = frame
            .cyc
            .iter()
            .map(|&i| frame.cyc.iter().map(|&j| g.intersect(&cells[i], &cells[j]).order() as u64).collect())
            .collect();
        frame.socle_slot = frame
            .cyc
            .iter()
            .map(|&i| frame.socle_component(i).map(|k| frame.comps.binary_search(&k).unwrap()))
            .collect();
        frame.kernel = frame.lift_kernel();
        frame.readers = frame.build_readers();
        Ok(frame)
    }

    fn build_readers(&self) -> [Vec<Reader>; 5] {
        let g = self.group();
        let n = g.order();
        let log_table = |by_exp: &[usize]| {
            let mut t = vec![NONE; n];
            for (k, &x) in by_exp.iter().enumerate() {
                t[x] = k as u32;
            }
            t
        };
        let coords = |i: usize, at: usize, second: bool| {
            let CellAction::Linear { grid, .. } = &self.actions[i] else { unreachable!() };
            let mut table = vec![NONE; n];
            for (k, &x) in grid.iter().enumerate() {
                table[x] = k as u32;
            }
            Reader::Coord { at, table, second }
        };
        let frame = |i: usize| self.cells[i];
        let f = self
            .sites
            .values()
            .map(|&site| match site {
                Site::Line(u) => {
                    let by_exp: Vec<usize> = (0..g.element_order(u)).map(|k| g.pow(u, k as i64)).collect();
                    Reader::Log {
                        at: u,
                        table: log_table(&by_exp),
                    }
                }
                Site::B1(i) => {
                    let CellFrame::Triangular { b1, .. } = frame(i) else { unreachable!() };
                    coords(i, b1, true)
                }
                Site::B0(i) => {
                    let CellFrame::Full { b0, .. } = frame(i) else { unreachable!() };
                    coords(i, b0, false)
                }
                Site::B0Prime(i) => {
                    let CellFrame::Full { b0_prime, .. } = frame(i) else { unreachable!() };
                    coords(i, b0_prime, true)
                }
            })
            .collect();
        let h = self
            .tri
            .iter()
            .map(|&i| {
                let CellFrame::Triangular { b1, .. } = frame(i) else { unreachable!() };
                coords(i, b1, false)
            })
            .collect();
        let a = self
            .full
            .iter()
            .map(|&i| {
                let CellFrame::Full { b0, .. } = frame(i) else { unreachable!() };
                coords(i, b0, true)
            })
            .collect();
        let b = self
            .full
            .iter()
            .map(|&i| {
                let CellFrame::Full { b0_prime, .. } = frame(i) else { unreachable!() };
                coords(i, b0_prime, false)
            })
            .collect();
        let lift = self
            .cyc
            .iter()
            .map(|&i| {
                let CellFrame::Cyclic { generator, .. } = frame(i) else { unreachable!() };
                let CellAction::Power { by_exp, .. } = &self.actions[i] else { unreachable!() };
                Reader::Log {
                    at: generator,
                    table: log_table(by_exp),
                }
            })
            .collect();
        [f, h, a, b, lift]
    }

    fn action(&self, i: usize) -> CellAction {
        let g = self.group();
        let p = g.prime();
        let c = &self.cover.cells()[i];
        let fslot = |x: usize| {
            let k = self.component_of_element(x);
            Entry::F(self.comps.binary_search(&k).unwrap())
        };
        let pos = |v: &[usize]| v.binary_search(&i).unwrap();
        let (u, v, m) = match self.cells[i] {
            CellFrame::Cyclic { generator, .. } => {
                let by_exp = (0..c.order()).map(|k| g.pow(generator, k as i64)).collect();
                return CellAction::Power {
                    by_exp,
                    slot: pos(&self.cyc),
                };
            }
            CellFrame::Scalar => {
                let u = smallest_nonidentity(c);
                let line = g.cyclic_subgroup(u);
                let v = c.elements().find(|&x| !line.contains(x)).unwrap();
                let s = Entry::F(self.comps.binary_search(&self.scalar_component(i)).unwrap());
                (u, v, [[s, Entry::Zero], [Entry::Zero, s]])
            }
            CellFrame::Diagonal { e, e_prime } => (e, e_prime, [[fslot(e), Entry::Zero], [Entry::Zero, fslot(e_prime)]]),
            CellFrame::Triangular { e1, b1 } => (e1, b1, [[fslot(e1), Entry::H(pos(&self.tri))], [Entry::Zero, fslot(b1)]]),
            CellFrame::Full { b0, b0_prime } => {
                let k = pos(&self.full);
                (b0, b0_prime, [[fslot(b0), Entry::B(k)], [Entry::A(k), fslot(b0_prime)]])
            }
        };
        let mut grid = vec![0; p * p];
        let mut points = Vec::with_capacity(p * p);
        for s in 0..p {
            for t in 0..p {
                let x = g.mul(g.pow(u, s as i64), g.pow(v, t as i64));
                grid[s * p + t] = x;
                points.push((x, s, t));
            }
        }
        CellAction::Linear { grid, points, m }
    }

    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn graph(&self) -> &ThreeIntersectGraph {
        &self.graph
    }

    pub fn cell_frames(&self) -> &[CellFrame] {
        &self.cells
    }

    fn group(&self) -> &FiniteGroup {
        self.cover.group()
    }

    /// Component of the line spanned by an element of order `p`.
    pub fn component_of_element(&self, x: usize) -> usize {
        self.graph
            .component_of(&self.group().cyclic_subgroup(x))
            .expect("element of order p")
    }

    /// Components carrying a scalar parameter, ascending.
    pub fn used_components(&self) -> Vec<usize> {
        self.comps.clone()
    }

    /// Noncyclic C1 cells, ascending.
    pub fn triangular_cells(&self) -> Vec<usize> {
        self.tri.clone()
    }

    /// Noncyclic C0 cells, ascending.
    pub fn full_cells(&self) -> Vec<usize> {
        self.full.clone()
    }

    pub fn cyclic_cells(&self) -> Vec<usize> {
        self.cyc.clone()
    }

    /// Component of the scalar acting on a noncyclic C3 cell.
    fn scalar_component(&self, cell: usize) -> usize {
        let c = &self.cover.cells()[cell];
        let v = self.graph.vertices().iter().find(|v| v.is_subgroup_of(c)).unwrap();
        self.graph.component_of(v).unwrap()
    }

    /// Socle component of a cyclic cell of order > 1.
    fn socle_component(&self, cell: usize) -> Option<usize> {
        match self.cells[cell] {
            CellFrame::Cyclic { socle, .. } if socle != 0 => Some(self.component_of_element(socle)),
            _ => None,
        }
    }

    /// Checks key sets, ranges, and the lift congruences.
    pub fn check_assignment(&self, a: &ParamAssignment) -> Result<()> {
        let p = self.group().prime() as u64;
        let keys = |m: &BTreeMap<usize, u64>| m.keys().copied().collect::<Vec<_>>();
        let mismatch = |what: &str| Error::InconsistentFrame(format!("assignment has wrong {what} keys"));
        if keys(&a.f) != self.used_components() {
            return Err(mismatch("F"));
        }
        if keys(&a.h) != self.triangular_cells() {
            return Err(mismatch("H"));
        }
        if keys(&a.a) != self.full_cells() || keys(&a.b) != self.full_cells() {
            return Err(mismatch("A/B"));
        }
        if keys(&a.lift) != self.cyclic_cells() {
            return Err(mismatch("lift"));
        }
        if let Some(v) = a.f.values().chain(a.h.values()).chain(a.a.values()).chain(a.b.values()).find(|&&v| v >= p) {
            return Err(Error::InconsistentFrame(format!("scalar {v} is not in Z_{p}")));
        }
        let cells = self.cover.cells();
        let lifts: Vec<u64> = a.lift.values().copied().collect();
        for (k, (&i, &l)) in a.lift.iter().enumerate() {
            let CellFrame::Cyclic { socle, .. } = self.cells[i] else { unreachable!() };
            if l >= cells[i].order() as u64 {
                return Err(Error::InconsistentFrame(format!("lift {l} too large for cell {i}")));
            }
            if let Some(s) = self.socle_slot[k] {
                if l % p != a.f[&self.comps[s]] {
                    return Err(Error::ParamConflict {
                        element: socle,
                        detail: format!("lift of cell {i} is not congruent to F mod p"),
                    });
                }
            }
            for (j, &lj) in lifts.iter().enumerate().take(k) {
                let t = self.cyc_meet[k][j];
                if t > 1 && l % t != lj % t {
                    return Err(Error::ParamConflict {
                        element: socle,
                        detail: format!("lifts of cells {} and {i} disagree mod {t}", self.cyc[j]),
                    });
                }
            }
        }
        Ok(())
    }

    /// The function described by `a`.
    pub fn materialize(&self, a: &ParamAssignment) -> Result<GroupFunction> {
        self.check_assignment(a)?;
        self.materialize_dense(&self.to_dense(a))
    }

    fn to_dense(&self, a: &ParamAssignment) -> Dense {
        Dense {
            f: a.f.values().copied().collect(),
            h: a.h.values().copied().collect(),
            a: a.a.values().copied().collect(),
            b: a.b.values().copied().collect(),
            lift: a.lift.values().copied().collect(),
        }
    }

    fn assignment_of(&self, d: &Dense) -> ParamAssignment {
        let zip = |keys: &[usize], vals: &[u64]| keys.iter().copied().zip(vals.iter().copied()).collect();
        ParamAssignment {
            f: zip(&self.comps, &d.f),
            h: zip(&self.tri, &d.h),
            a: zip(&self.full, &d.a),
            b: zip(&self.full, &d.b),
            lift: zip(&self.cyc, &d.lift),
        }
    }

    fn materialize_dense(&self, d: &Dense) -> Result<GroupFunction> {
        let g = self.group();
        let p = g.prime();
        const UNSET: usize = usize::MAX;
        let mut vals = vec![UNSET; g.order()];
        let entry = |e: Entry| match e {
            Entry::Zero => 0,
            Entry::F(k) => d.f[k] as usize,
            Entry::H(k) => d.h[k] as usize,
            Entry::A(k) => d.a[k] as usize,
            Entry::B(k) => d.b[k] as usize,
        };
        for (i, act) in self.actions.iter().enumerate() {
            let mut set = |x: usize, y: usize| -> Result<()> {
                if vals[x] != UNSET && vals[x] != y {
                    return Err(Error::ParamConflict {
                        element: x,
                        detail: format!("cell {i} sends it to {y}, an earlier cell to {}", vals[x]),
                    });
                }
                vals[x] = y;
                Ok(())
            };
            match act {
                CellAction::Linear { grid, points, m } => {
                    let [[m00, m01], [m10, m11]] = m.map(|row| row.map(entry));
                    for &(x, s, t) in points {
                        set(x, grid[(s * m00 + t * m01) % p * p + (s * m10 + t * m11) % p])?;
                    }
                }
                CellAction::Power { by_exp, slot } => {
                    let n = by_exp.len();
                    let l = d.lift[*slot] as usize;
                    for (k, &x) in by_exp.iter().enumerate() {
                        set(x, by_exp[k * l % n])?;
                    }
                }
            }
        }
        Ok(GroupFunction::from_values(vals))
    }

    /// Reads the parameters of a ring element; fails with `NotInRing` when
    /// `f` is not the function they describe.
    pub fn read_assignment(&self, f: &GroupFunction) -> Result<ParamAssignment> {
        let p = self.group().prime() as u32;
        let read = |r: &Reader| -> Result<u64> {
            let (at, table) = match r {
                Reader::Log { at, table } | Reader::Coord { at, table, .. } => (*at, table),
            };
            let y = f.get(at);
            let v = table[y];
            if v == NONE {
                let msg = match r {
                    Reader::Log { .. } => format!("f({at}) = {y} leaves the cyclic subgroup of {at}"),
                    Reader::Coord { .. } => format!("f({at}) = {y} leaves the cell of {at}"),
                };
                return Err(Error::NotInRing(msg));
            }
            Ok(match r {
                Reader::Log { .. } => v,
                Reader::Coord { second: false, .. } => v / p,
                Reader::Coord { second: true, .. } => v % p,
            } as u64)
        };
        let all = |rs: &[Reader]| rs.iter().map(read).collect::<Result<Vec<u64>>>();
        let [f_r, h_r, a_r, b_r, l_r] = &self.readers;
        let d = Dense {
            f: all(f_r)?,
            h: all(h_r)?,
            a: all(a_r)?,
            b: all(b_r)?,
            lift: all(l_r)?,
        };
        let back = self
            .materialize_dense(&d)
            .map_err(|e| Error::NotInRing(e.to_string()))?;
        if &back != f {
            return Err(Error::NotInRing(
                "parameters read off f describe a different function".into(),
            ));
        }
        Ok(self.assignment_of(&d))
    }

    /// Lift tuples that vanish mod `p`. Adding one to any valid lift tuple
    /// gives the lift tuples for the same scalars.
    fn lift_kernel(&self) -> Vec<Vec<u64>> {
        let g = self.group();
        let p = g.prime() as u64;
        let cells = self.cover.cells();
        let orders: Vec<u64> = self.cyc.iter().map(|&i| cells[i].order() as u64).collect();
        let meet = &self.cyc_meet;
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(d: usize, p: u64, orders: &[u64], meet: &[Vec<u64>], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if d == orders.len() {
                out.push(cur.clone());
                return;
            }
            let n = orders[d];
            let step = if n > 1 { p } else { 1 };
            let mut l = 0;
            while l < n {
                if (0..d).all(|j| meet[d][j] <= 1 || l % meet[d][j] == cur[j] % meet[d][j]) {
                    cur.push(l);
                    rec(d + 1, p, orders, meet, cur, out);
                    cur.pop();
                }
                l += step;
            }
        }
        rec(0, p, &orders, meet, &mut cur, &mut out);
        out
    }

    /// Number of parameter assignments, which is `|R_C(G)|`.
    pub fn assignment_count(&self) -> u128 {
        let p = self.group().prime() as u128;
        let free = self.comps.len() + self.tri.len() + 2 * self.full.len();
        p.pow(free as u32) * self.kernel.len() as u128
    }

    /// Calls `visit` on every valid assignment, in odometer order.
    fn for_each_dense(&self, mut visit: impl FnMut(&Dense) -> Result<()>) -> Result<()> {
        let p = self.group().prime() as u64;
        let cells = self.cover.cells();
        let socle_slot = &self.socle_slot;
        let (nf, nh, na) = (self.comps.len(), self.tri.len(), self.full.len());
        let slots = nf + nh + 2 * na;
        let mut digits = vec![0u64; slots];
        let mut d = Dense {
            lift: vec![0; self.cyc.len()],
            ..Dense::default()
        };
        loop {
            d.f = digits[..nf].to_vec();
            d.h = digits[nf..nf + nh].to_vec();
            d.a = digits[nf + nh..nf + nh + na].to_vec();
            d.b = digits[nf + nh + na..].to_vec();
            for ker in &self.kernel {
                for (k, &i) in self.cyc.iter().enumerate() {
                    let n = cells[i].order() as u64;
                    let base = socle_slot[k].map_or(0, |s| d.f[s]);
                    d.lift[k] = (base + ker[k]) % n;
                }
                visit(&d)?;
            }
            let mut k = 0;
            while k < slots {
                digits[k] += 1;
                if digits[k] < p {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == slots {
                return Ok(());
            }
        }
    }

    /// Every valid assignment, in odometer order.
    pub fn assignments(&self) -> Vec<ParamAssignment> {
        let mut out = Vec::new();
        self.for_each_dense(|d| {
            out.push(self.assignment_of(d));
            Ok(())
        })
        .unwrap();
        out
    }
}

/// `R_C(G)` materialized from all parameter assignments.
pub fn parametrized_ring(frame: &CoverFrame, element_budget: usize) -> Result<FunctionRing> {
    let count = frame.assignment_count();
    if count > element_budget as u128 {
        return Err(Error::SizeLimit {
            what: "parametrized ring elements".into(),
            estimate: count,
            budget: element_budget as u128,
        });
    }
    let mut elements = Vec::with_capacity(count as usize);
    frame.for_each_dense(|d| {
        elements.push(frame.materialize_dense(d)?);
        Ok(())
    })?;
    Ok(FunctionRing::new(frame.cover().clone(), elements))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cover::{enumerate_star_covers, validate_cover};
    use crate::funcring::{brute_force_ring, OracleLimits};

    fn q8_cover() -> Cover {
        let q = Arc::new(FiniteGroup::quaternion8());
        let cells = vec![q.cyclic_subgroup(1), q.cyclic_subgroup(4), q.cyclic_subgroup(5)];
        validate_cover(q, cells).unwrap()
    }

    #[test]
    fn q8_parametrization() {
        let cover = q8_cover();
        let frame = CoverFrame::canonical(&cover).unwrap();
        assert_eq!(frame.used_components().len(), 1);
        assert_eq!(frame.assignment_count(), 16);
        let r = parametrized_ring(&frame, 1000).unwrap();
        assert_eq!(r.order(), 16);
        for f in r.elements() {
            let a = frame.read_assignment(f).unwrap();
            assert_eq!(&frame.materialize(&a).unwrap(), f);
        }
    }

    #[test]
    fn klein_single_cell_full() {
        let k = Arc::new(FiniteGroup::elementary(2, 2).unwrap());
        let cover = validate_cover(k.clone(), vec![k.whole()]).unwrap();
        let frame = CoverFrame::canonical(&cover).unwrap();
        assert!(matches!(frame.cell_frames()[0], CellFrame::Full { .. }));
        assert_eq!(parametrized_ring(&frame, 100).unwrap().order(), 16);
    }

    #[test]
    fn matches_oracle_on_small_groups() {
        let groups = [
            FiniteGroup::elementary(2, 2).unwrap(),
            FiniteGroup::elementary(3, 2).unwrap(),
            FiniteGroup::dihedral8(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2, 3).unwrap(), &FiniteGroup::cyclic(2, 1).unwrap()),
        ];
        for g in groups {
            let g = Arc::new(g);
            for cover in enumerate_star_covers(&g, 40).unwrap().covers {
                let frame = CoverFrame::canonical(&cover).unwrap();
                let oracle = brute_force_ring(&cover, &OracleLimits::default()).unwrap();
                let param = parametrized_ring(&frame, 1 << 20).unwrap();
                assert_eq!(oracle.first_difference(&param), None, "{:?}", cover.cells());
                assert_eq!(frame.assignment_count(), oracle.order() as u128);
            }
        }
    }

    #[test]
    fn rejects_bad_frames_and_assignments() {
        let cover = q8_cover();
        assert!(matches!(
            CoverFrame::new(&cover, vec![CellFrame::Scalar; 3]),
            Err(Error::InconsistentFrame(_))
        ));
        assert!(matches!(
            CoverFrame::new(&cover, vec![CellFrame::Cyclic { generator: 2, socle: 0 }; 3]),
            Err(Error::InconsistentFrame(_))
        ));
        let frame = CoverFrame::canonical(&cover).unwrap();
        let mut a = frame.assignments()[0].clone();
        let cell = *a.lift.keys().next().unwrap();
        a.lift.insert(cell, (a.lift[&cell] + 1) % 4);
        assert!(matches!(frame.materialize(&a), Err(Error::ParamConflict { .. })));
        let mut b = frame.assignments()[0].clone();
        b.h.insert(0, 0);
        assert!(matches!(frame.materialize(&b), Err(Error::InconsistentFrame(_))));

        let k = Arc::new(FiniteGroup::cyclic(2, 2).unwrap());
        let not_star = validate_cover(k.clone(), vec![k.whole(), k.cyclic_subgroup(2)]).unwrap();
        assert!(matches!(CoverFrame::canonical(&not_star), Err(Error::NotStarCover(_))));
    }

    #[test]
    fn non_member_is_rejected() {
        let cover = q8_cover();
        let frame = CoverFrame::canonical(&cover).unwrap();
        let mut v: Vec<usize> = (0..8).collect();
        v.swap(1, 4);
        assert!(matches!(
            frame.read_assignment(&GroupFunction::from_values(v)),
            Err(Error::NotInRing(_))
        ));
    }
}
