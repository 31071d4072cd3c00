//! Brute-force construction: glue per-cell endomorphisms by backtracking.

use std::collections::HashMap;

use super::{FunctionRing, GroupFunction};
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::mask::Mask;
use crate::subgroup::Subgroup;

/// All endomorphisms of an abelian cell, as value lists aligned with
/// `elements`.
#[derive(Clone, Debug)]
pub struct CellEndomorphisms {
    pub elements: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

pub fn cell_endomorphisms(g: &FiniteGroup, cell: &Subgroup) -> Result<CellEndomorphisms> {
    if !cell.is_abelian() {
        return Err(Error::NonAbelianCell { cell: 0 });
    }
    let elements: Vec<usize> = cell.elements().collect();
    let pos = |x: usize| elements.binary_search(&x).unwrap();
    let gens = cell.generators(g);
    // BFS order: each element after the first is reached as `prev * gens[k]`.
    let mut route = vec![(0usize, 0usize); elements.len()];
    let mut seen = Mask::singleton(0);
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if seen.insert(y) {
                route[pos(y)] = (x, k);
                queue.push(y);
            }
        }
    }
    let choices: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            elements
                .iter()
                .copied()
                .filter(|&y| g.element_order(s).is_multiple_of(g.element_order(y)))
                .collect()
        })
        .collect();
    let mut maps = Vec::new();
    let mut pick = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<usize> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        let mut phi = vec![0usize; elements.len()];
        for &y in queue.iter().skip(1) {
            let (x, k) = route[pos(y)];
            phi[pos(y)] = g.mul(phi[pos(x)], images[k]);
        }
        let hom = elements.iter().all(|&x| {
            gens.iter()
                .zip(&images)
                .all(|(&s, &t)| phi[pos(g.mul(x, s))] == g.mul(phi[pos(x)], t))
        });
        if hom {
            maps.push(phi);
        }
        for k in 0..pick.len() {
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                continue 'outer;
            }
            pick[k] = 0;
        }
        break;
    }
    Ok(CellEndomorphisms { elements, maps })
}

/// Search limits for the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest ring that may be materialized.
    pub element_budget: usize,
    /// Largest number of interior search nodes.
    pub node_cap: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            element_budget: 1 << 21,
            node_cap: 1 << 28,
        }
    }
}

struct Step {
    overlap: Vec<usize>,
    fresh: Vec<usize>,
    buckets: HashMap<Vec<u8>, Vec<Vec<u8>>>,
}

/// Cells ordered for backtracking, with endomorphisms bucketed by their
/// values on the already assigned part of each cell.
struct Plan {
    steps: Vec<Step>,
}

impl Plan {
    fn new(cover: &Cover) -> Result<Self> {
        let g = cover.group();
        let cells = cover.cells();
        let meets = |i: usize| {
            (0..cells.len())
                .filter(|&j| j != i && !g.intersect(&cells[i], &cells[j]).is_trivial())
                .count()
        };
        let degree: Vec<usize> = (0..cells.len()).map(meets).collect();
        let mut order = Vec::new();
        let mut used = vec![false; cells.len()];
        let mut assigned = Mask::singleton(0);
        for _ in 0..cells.len() {
            let next = (0..cells.len())
                .filter(|&i| !used[i])
                .max_by_key(|&i| {
                    let overlap = cells[i].members().and(&assigned).len();
                    (overlap, degree[i], std::cmp::Reverse(i))
                })
                .unwrap();
            used[next] = true;
            assigned = assigned.or(&cells[next].members());
            order.push(next);
        }
        let mut steps = Vec::new();
        let mut assigned = Mask::EMPTY;
        for &i in &order {
            let cell = &cells[i];
            let ends = cell_endomorphisms(g, cell).map_err(|_| Error::NonAbelianCell { cell: i })?;
            let overlap: Vec<usize> = cell.members().and(&assigned).iter().collect();
            let fresh: Vec<usize> = cell.members().and_not(&assigned).iter().collect();
            let pos = |x: usize| ends.elements.binary_search(&x).unwrap();
            let mut buckets: HashMap<Vec<u8>, Vec<Vec<u8>>> = HashMap::new();
            for phi in &ends.maps {
                let key: Vec<u8> = overlap.iter().map(|&x| phi[pos(x)] as u8).collect();
                let vals: Vec<u8> = fresh.iter().map(|&x| phi[pos(x)] as u8).collect();
                buckets.entry(key).or_default().push(vals);
            }
            steps.push(Step {
                overlap,
                fresh,
                buckets,
            });
            assigned = assigned.or(&cell.members());
        }
        Ok(Self { steps })
    }

    /// Product of the largest bucket at each step: an upper bound on |R|.
    fn upper_bound(&self) -> u128 {
        self.steps
            .iter()
            .map(|s| s.buckets.values().map(Vec::len).max().unwrap_or(0) as u128)
            .fold(1u128, |a, b| a.saturating_mul(b))
    }
}

struct Walk<'a> {
    plan: &'a Plan,
    vals: Vec<u8>,
    key: Vec<u8>,
    nodes: u64,
    node_cap: u64,
}

impl Walk<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::SizeLimit {
                what: "oracle search nodes".into(),
                estimate: self.nodes as u128,
                budget: self.node_cap as u128,
            });
        }
        Ok(())
    }

    fn bucket(&mut self, d: usize) -> Option<&Vec<Vec<u8>>> {
        let step = &self.plan.steps[d];
        self.key.clear();
        self.key.extend(step.overlap.iter().map(|&x| self.vals[x]));
        step.buckets.get(self.key.as_slice())
    }

    fn collect(&mut self, d: usize, out: &mut Vec<GroupFunction>, budget: usize, bound: u128) -> Result<()> {
        if d == self.plan.steps.len() {
            if out.len() >= budget {
                return Err(Error::SizeLimit {
                    what: "ring elements".into(),
                    estimate: bound,
                    budget: budget as u128,
                });
            }
            out.push(GroupFunction::from_bytes(self.vals.clone()));
            return Ok(());
        }
        self.tick()?;
        let Some(options) = self.bucket(d).cloned() else {
            return Ok(());
        };
        let fresh = &self.plan.steps[d].fresh;
        for vals in &options {
            for (&x, &v) in fresh.iter().zip(vals) {
                self.vals[x] = v;
            }
            self.collect(d + 1, out, budget, bound)?;
        }
        Ok(())
    }

    fn count(&mut self, d: usize) -> Result<u128> {
        self.tick()?;
        let last = d + 1 == self.plan.steps.len();
        let Some(options) = self.bucket(d) else {
            return Ok(0);
        };
        if last {
            return Ok(options.len() as u128);
        }
        let options = options.clone();
        let fresh = &self.plan.steps[d].fresh;
        let mut total = 0;
        for vals in &options {
            for (&x, &v) in fresh.iter().zip(vals) {
                self.vals[x] = v;
            }
            total += self.count(d + 1)?;
        }
        Ok(total)
    }
}

/// Every function on `G` that restricts to an endomorphism on each cell.
///
/// Works for any abelian cover. Fails with `SizeLimit` when the ring exceeds
/// the element budget or the search exceeds the node cap.
pub fn brute_force_ring(cover: &Cover, limits: &OracleLimits) -> Result<FunctionRing> {
    let plan = Plan::new(cover)?;
    let bound = plan.upper_bound();
    let mut walk = Walk {
        plan: &plan,
        vals: vec![0; cover.group().order()],
        key: Vec::new(),
        nodes: 0,
        node_cap: limits.node_cap,
    };
    let mut out = Vec::with_capacity(bound.min(limits.element_budget as u128) as usize);
    walk.collect(0, &mut out, limits.element_budget, bound)?;
    Ok(FunctionRing::new(cover.clone(), out))
}

/// Order of `R_C(G)` by the same search, without storing elements.
pub fn count_ring(cover: &Cover, node_cap: u64) -> Result<u128> {
    let plan = Plan::new(cover)?;
    if plan.steps.is_empty() {
        return Ok(1);
    }
    let mut walk = Walk {
        plan: &plan,
        vals: vec![0; cover.group().order()],
        key: Vec::new(),
        nodes: 0,
        node_cap,
    };
    walk.count(0)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cover::validate_cover;

    fn single_cell(g: FiniteGroup) -> Cover {
        let g = Arc::new(g);
        let w = g.whole();
        validate_cover(g, vec![w]).unwrap()
    }

    #[test]
    fn endomorphism_counts() {
        let z4 = FiniteGroup::cyclic(2, 2).unwrap();
        assert_eq!(cell_endomorphisms(&z4, &z4.whole()).unwrap().maps.len(), 4);
        let k = FiniteGroup::elementary(2, 2).unwrap();
        assert_eq!(cell_endomorphisms(&k, &k.whole()).unwrap().maps.len(), 16);
        let z3 = FiniteGroup::cyclic(3, 1).unwrap();
        assert_eq!(cell_endomorphisms(&z3, &z3.whole()).unwrap().maps.len(), 3);
        let e9 = FiniteGroup::elementary(3, 2).unwrap();
        assert_eq!(cell_endomorphisms(&e9, &e9.whole()).unwrap().maps.len(), 81);
        // |End(Z4 x Z2)| = |Hom(Z4,Z4)||Hom(Z2,Z4)||Hom(Z4,Z2)||Hom(Z2,Z2)| = 4*2*2*2.
        let z4z2 = FiniteGroup::direct_product(&z4, &FiniteGroup::cyclic(2, 1).unwrap());
        assert_eq!(cell_endomorphisms(&z4z2, &z4z2.whole()).unwrap().maps.len(), 32);
        let q = FiniteGroup::quaternion8();
        assert!(matches!(cell_endomorphisms(&q, &q.whole()), Err(Error::NonAbelianCell { .. })));
    }

    #[test]
    fn single_cell_rings() {
        let lim = OracleLimits::default();
        let r = brute_force_ring(&single_cell(FiniteGroup::cyclic(2, 3).unwrap()), &lim).unwrap();
        assert_eq!(r.order(), 8);
        let r = brute_force_ring(&single_cell(FiniteGroup::elementary(2, 2).unwrap()), &lim).unwrap();
        assert_eq!(r.order(), 16);
        let r = brute_force_ring(&single_cell(FiniteGroup::cyclic(2, 0).unwrap()), &lim).unwrap();
        assert_eq!(r.order(), 1);
    }

    #[test]
    fn q8_order_sixteen() {
        let q = Arc::new(FiniteGroup::quaternion8());
        let cells = vec![q.cyclic_subgroup(1), q.cyclic_subgroup(4), q.cyclic_subgroup(5)];
        let cover = validate_cover(q, cells).unwrap();
        assert_eq!(brute_force_ring(&cover, &OracleLimits::default()).unwrap().order(), 16);
        assert_eq!(count_ring(&cover, 1 << 20).unwrap(), 16);
    }

    /// Oracle for the oracle: filter all maps G -> G on a tiny group.
    #[test]
    fn agrees_with_exhaustive_filter() {
        let k = Arc::new(FiniteGroup::elementary(2, 2).unwrap());
        let lines: Vec<_> = k.subgroups_of_order_p();
        let cover = validate_cover(k.clone(), lines).unwrap();
        let ring = brute_force_ring(&cover, &OracleLimits::default()).unwrap();
        let mut expected = Vec::new();
        for code in 0..4usize.pow(4) {
            let v: Vec<usize> = (0..4).map(|i| code / 4usize.pow(i) % 4).collect();
            let f = GroupFunction::from_values(v);
            if super::super::check_membership(&cover, &f).is_ok() {
                expected.push(f);
            }
        }
        expected.sort();
        assert_eq!(ring.elements(), expected.as_slice());
        assert_eq!(ring.order(), 8);
    }

    #[test]
    fn limits_are_enforced() {
        let cover = single_cell(FiniteGroup::elementary(2, 2).unwrap());
        let tight = OracleLimits {
            element_budget: 10,
            node_cap: 1 << 20,
        };
        assert!(matches!(brute_force_ring(&cover, &tight), Err(Error::SizeLimit { .. })));
        assert!(matches!(count_ring(&cover, 0), Err(Error::SizeLimit { .. })));
    }
}
