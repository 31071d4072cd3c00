//! The lattice `Λ(K)` of cyclic subgroups above an order-`p` subgroup and its
//! tuple ring.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::ring::FiniteRing;
use crate::subgroup::Subgroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    p: u64,
    base: Subgroup,
    /// Sorted by order, then canonically.
    nodes: Vec<Subgroup>,
    /// Hasse edges `(lower, upper)` as node indices.
    edges: Vec<(usize, usize)>,
    maximal: Vec<usize>,
    /// Orders of pairwise intersections of maximal nodes.
    meet: Vec<Vec<u64>>,
}

/// All cyclic subgroups containing `k`, ordered by inclusion.
pub fn lattice_of(g: &FiniteGroup, k: &Subgroup) -> Result<Lattice> {
    if k.order() != g.prime() {
        return Err(Error::HypothesisFailed(format!(
            "lattice base has order {}, not {}",
            k.order(),
            g.prime()
        )));
    }
    let mut nodes: Vec<Subgroup> = g.cyclic_subgroups().into_iter().filter(|c| k.is_subgroup_of(c)).collect();
    nodes.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    let below = |a: usize, b: usize| a != b && nodes[a].is_subgroup_of(&nodes[b]);
    let mut edges = Vec::new();
    for a in 0..nodes.len() {
        for b in 0..nodes.len() {
            // Cyclic p-groups form chains, so a cover is an index-p inclusion.
            if below(a, b) && nodes[b].order() == nodes[a].order() * g.prime() {
                edges.push((a, b));
            }
        }
    }
    let maximal: Vec<usize> = (0..nodes.len()).filter(|&a| !(0..nodes.len()).any(|b| below(a, b))).collect();
    let meet = maximal
        .iter()
        .map(|&a| maximal.iter().map(|&b| g.intersect(&nodes[a], &nodes[b]).order() as u64).collect())
        .collect();
    Ok(Lattice {
        p: g.prime() as u64,
        base: *k,
        nodes,
        edges,
        maximal,
        meet,
    })
}

impl Lattice {
    pub fn base(&self) -> &Subgroup {
        &self.base
    }

    pub fn nodes(&self) -> &[Subgroup] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn maximal_nodes(&self) -> Vec<&Subgroup> {
        self.maximal.iter().map(|&i| &self.nodes[i]).collect()
    }

    pub fn maximal_orders(&self) -> Vec<u64> {
        self.maximal.iter().map(|&i| self.nodes[i].order() as u64).collect()
    }

    /// Number of maximal nodes.
    pub fn phi(&self) -> usize {
        self.maximal.len()
    }

    pub fn is_singleton(&self) -> bool {
        self.nodes.len() == 1
    }

    pub fn summary(&self) -> LatticeSummary {
        LatticeSummary {
            phi: self.phi(),
            orders: self.maximal_orders(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub phi: usize,
    pub orders: Vec<u64>,
}

/// Tuples over the maximal nodes that agree modulo each pairwise intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeRing {
    p: u64,
    orders: Vec<u64>,
    meet: Vec<Vec<u64>>,
}

pub fn lattice_ring(lattice: &Lattice) -> LatticeRing {
    LatticeRing {
        p: lattice.p,
        orders: lattice.maximal_orders(),
        meet: lattice.meet.clone(),
    }
}

impl LatticeRing {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        x.len() == self.orders.len()
            && x.iter().zip(&self.orders).all(|(v, n)| v < n)
            && (0..x.len()).all(|i| (0..i).all(|j| x[i] % self.meet[i][j] == x[j] % self.meet[i][j]))
    }

    /// The common residue mod `p`. This is a ring map onto `Z_p`.
    pub fn reduce(&self, x: &[u64]) -> u64 {
        x[0] % self.p
    }

    /// The constant tuple `(λ, ..., λ)`.
    pub fn constant(&self, lambda: u64) -> Vec<u64> {
        self.orders.iter().map(|n| lambda % n).collect()
    }

    /// Tuples reducing to `lambda`.
    pub fn fiber(&self, lambda: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.fill(lambda % self.p, &mut cur, &mut out);
        out
    }

    fn fill(&self, lambda: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let d = cur.len();
        if d == self.orders.len() {
            out.push(cur.clone());
            return;
        }
        let mut v = lambda;
        while v < self.orders[d] {
            if (0..d).all(|j| v % self.meet[d][j] == cur[j] % self.meet[d][j]) {
                cur.push(v);
                self.fill(lambda, cur, out);
                cur.pop();
            }
            v += self.p;
        }
    }
}

impl FiniteRing for LatticeRing {
    type Elem = Vec<u64>;

    fn order(&self) -> u128 {
        self.fiber(0).len() as u128 * self.p as u128
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = (0..self.p).flat_map(|l| self.fiber(l)).collect();
        out.sort();
        out
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.orders.len()]
    }

    fn add(&self, x: &Vec<u64>, y: &Vec<u64>) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), n)| (a + b) % n).collect()
    }

    fn mul(&self, x: &Vec<u64>, y: &Vec<u64>) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((a, b), n)| a * b % n).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z8xz2() -> FiniteGroup {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2, 3).unwrap(), &FiniteGroup::cyclic(2, 1).unwrap())
    }

    #[test]
    fn q8_lattice() {
        let q = FiniteGroup::quaternion8();
        let l = lattice_of(&q, &q.cyclic_subgroup(2)).unwrap();
        assert_eq!(l.phi(), 3);
        assert_eq!(l.maximal_orders(), vec![4, 4, 4]);
        assert_eq!(l.edges().len(), 3);
        let r = lattice_ring(&l);
        assert_eq!(r.order(), 16);
        // Oracle: filter all of Z4^3 by 2a = 2b = 2c.
        let mut expect = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    if 2 * a % 4 == 2 * b % 4 && 2 * b % 4 == 2 * c % 4 {
                        expect.push(vec![a, b, c]);
                    }
                }
            }
        }
        assert_eq!(r.elements(), expect);
    }

    #[test]
    fn elementary_lattice_is_singleton() {
        let e = FiniteGroup::elementary(3, 2).unwrap();
        for k in e.subgroups_of_order_p() {
            let l = lattice_of(&e, &k).unwrap();
            assert!(l.is_singleton());
            assert_eq!(l.phi(), 1);
            assert_eq!(lattice_ring(&l).order(), 3);
        }
        assert!(lattice_of(&e, &e.whole()).is_err());
    }

    #[test]
    fn z8xz2_lattice_above_socle() {
        let g = z8xz2();
        // (1, 0) generates the first Z8; its socle is (4, 0).
        let x = FiniteGroup::product_index(1, 0, 2);
        let k = g.cyclic_subgroup(g.pow(x, 4));
        let l = lattice_of(&g, &k).unwrap();
        assert_eq!(l.phi(), 3);
        assert_eq!(l.maximal_orders(), vec![4, 8, 8]);
        let eights: Vec<_> = l.maximal_nodes().into_iter().filter(|c| c.order() == 8).cloned().collect();
        assert_eq!(g.intersect(&eights[0], &eights[1]).order(), 4);
        let r = lattice_ring(&l);
        // Oracle count: (a, b, c) in Z4 x Z8 x Z8 with b = c mod 4 and a = b = c mod 2.
        let mut count = 0;
        for a in 0..4u64 {
            for b in 0..8u64 {
                for c in 0..8u64 {
                    if b % 4 == c % 4 && a % 2 == b % 2 {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(r.order(), count);
        assert_eq!(r.order(), 32);
        // The order-8 nodes alone give {(a, b) in Z8^2 : a = b mod 4}.
        let pair: Vec<_> = r.elements().into_iter().map(|t| (t[1], t[2])).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        assert_eq!(pair.len(), 16);
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let q = FiniteGroup::quaternion8();
        let r = lattice_ring(&lattice_of(&q, &q.cyclic_subgroup(2)).unwrap());
        let els = r.elements();
        for x in &els {
            assert!(r.contains(x));
            for y in &els {
                assert_eq!(r.reduce(&r.add(x, y)), (r.reduce(x) + r.reduce(y)) % 2);
                assert_eq!(r.reduce(&r.mul(x, y)), r.reduce(x) * r.reduce(y) % 2);
            }
        }
        assert!(!r.contains(&[1, 2, 1]));
    }
}
