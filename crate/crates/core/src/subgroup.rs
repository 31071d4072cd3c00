//! Subgroups as canonical bitmasks, and the subgroup queries the cover
//! machinery relies on.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::mask::Mask;

/// A subgroup of a [`FiniteGroup`], identified by its member mask.
///
/// Subgroups carry no reference to the parent group; every query that needs
/// the multiplication takes the group explicitly. Equality and ordering are
/// those of the mask.
#[derive(Clone, Copy, Debug)]
pub struct Subgroup {
    members: Mask,
    order: usize,
    is_cyclic: bool,
    is_elementary_p2: bool,
    is_abelian: bool,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
impl Eq for Subgroup {}
impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state)
    }
}
impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members.cmp(&other.members)
    }
}

/// Serializable summary of a subgroup: its smallest generating element when
/// cyclic, otherwise a greedy generating set, plus the member list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDescriptor {
    pub order: usize,
    pub generators: Vec<usize>,
    pub members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> Mask {
        self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_cyclic(&self) -> bool {
        self.is_cyclic
    }

    pub fn is_elementary_p2(&self) -> bool {
        self.is_elementary_p2
    }

    pub fn is_abelian(&self) -> bool {
        self.is_abelian
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        self.members.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Smallest element generating the subgroup, if cyclic.
    pub fn generator(&self, g: &FiniteGroup) -> Option<usize> {
        self.members.iter().find(|&x| g.element_order(x) == self.order)
    }

    /// Greedy generating set: repeatedly take the smallest member outside the
    /// span of the ones taken so far.
    pub fn generators(&self, g: &FiniteGroup) -> Vec<usize> {
        if let Some(x) = self.generator(g) {
            return if self.order == 1 { vec![] } else { vec![x] };
        }
        let mut gens = Vec::new();
        let mut span = Mask::singleton(0);
        for x in self.members.iter() {
            if !span.contains(x) {
                gens.push(x);
                span = g.closure(&gens).members;
            }
        }
        gens
    }

    pub fn descriptor(&self, g: &FiniteGroup) -> SubgroupDescriptor {
        SubgroupDescriptor {
            order: self.order,
            generators: self.generators(g),
            members: self.members.iter().collect(),
        }
    }
}

impl FiniteGroup {
    /// Wraps a mask known to be closed under multiplication.
    fn wrap(&self, members: Mask) -> Subgroup {
        let order = members.len();
        let is_cyclic = members.iter().any(|x| self.element_order(x) == order);
        let p = self.prime();
        let is_elementary_p2 =
            order == p * p && members.iter().all(|x| x == 0 || self.element_order(x) == p);
        let elems: Vec<usize> = members.iter().collect();
        let is_abelian = is_cyclic
            || elems
                .iter()
                .enumerate()
                .all(|(i, &a)| elems[i + 1..].iter().all(|&b| self.commute(a, b)));
        Subgroup {
            members,
            order,
            is_cyclic,
            is_elementary_p2,
            is_abelian,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.wrap(Mask::singleton(0))
    }

    pub fn whole(&self) -> Subgroup {
        self.wrap(Mask::full(self.order()))
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        self.wrap(self.close_mask(Mask::singleton(0), gens))
    }

    /// Smallest subgroup containing `base` (assumed a subgroup) and `gens`.
    fn close_mask(&self, base: Mask, gens: &[usize]) -> Mask {
        let mut members = base;
        let all_gens: Vec<usize> = base.iter().chain(gens.iter().copied()).collect();
        let mut queue: Vec<usize> = members.iter().collect();
        for &x in gens {
            if members.insert(x) {
                queue.push(x);
            }
        }
        // Finite group: closure under multiplication by generators suffices.
        while let Some(x) = queue.pop() {
            for &s in &all_gens {
                let y = self.mul(x, s);
                if members.insert(y) {
                    queue.push(y);
                }
            }
        }
        members
    }

    /// Checks that `members` is a subgroup and wraps it.
    pub fn subgroup_from_mask(&self, members: Mask) -> Result<Subgroup> {
        if !members.contains(0) {
            return Err(Error::NotASubgroup {
                cell: 0,
                reason: "does not contain the identity".into(),
            });
        }
        if let Some(x) = members.iter().find(|&x| x >= self.order()) {
            return Err(Error::NotASubgroup {
                cell: 0,
                reason: format!("element {x} out of range"),
            });
        }
        for a in members.iter() {
            for b in members.iter() {
                if !members.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup {
                        cell: 0,
                        reason: format!("{a} * {b} leaves the set"),
                    });
                }
            }
        }
        Ok(self.wrap(members))
    }

    pub fn cyclic_subgroup(&self, g: usize) -> Subgroup {
        let mut members = Mask::EMPTY;
        let mut x = 0;
        loop {
            members.insert(x);
            x = self.mul(x, g);
            if x == 0 {
                break;
            }
        }
        self.wrap(members)
    }

    /// All cyclic subgroups, sorted and duplicate-free.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let set: BTreeSet<Subgroup> = self.elements().map(|g| self.cyclic_subgroup(g)).collect();
        set.into_iter().collect()
    }

    /// `T_p(G)`: all subgroups of order `p`, in canonical order.
    pub fn subgroups_of_order_p(&self) -> Vec<Subgroup> {
        let p = self.prime();
        self.cyclic_subgroups().into_iter().filter(|s| s.order() == p).collect()
    }

    /// Cyclic subgroups contained in no strictly larger cyclic subgroup.
    pub fn maximal_cyclic_subgroups(&self) -> Vec<Subgroup> {
        let cyclic = self.cyclic_subgroups();
        cyclic
            .iter()
            .filter(|c| {
                !cyclic
                    .iter()
                    .any(|d| d.order() > c.order() && c.is_subgroup_of(d))
            })
            .copied()
            .collect()
    }

    /// Subgroups isomorphic to `Z_p x Z_p`.
    pub fn elementary_p2_subgroups(&self) -> Vec<Subgroup> {
        let order_p = self.subgroups_of_order_p();
        let gens: Vec<usize> = order_p.iter().map(|s| s.generator(self).unwrap()).collect();
        let mut set = BTreeSet::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if self.commute(gens[i], gens[j]) {
                    set.insert(self.closure(&[gens[i], gens[j]]));
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn centralizer(&self, a: usize) -> Subgroup {
        self.wrap(Mask::from_indices(self.elements().filter(|&g| self.commute(g, a))))
    }

    pub fn center(&self) -> Subgroup {
        self.wrap(Mask::from_indices(
            self.elements().filter(|&g| self.elements().all(|h| self.commute(g, h))),
        ))
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        self.wrap(a.members.and(&b.members))
    }

    /// The unique subgroup of order `p` of a nontrivial cyclic subgroup.
    pub fn socle(&self, c: &Subgroup) -> Option<Subgroup> {
        if !c.is_cyclic() || c.is_trivial() {
            return None;
        }
        let gen = c.generator(self)?;
        Some(self.cyclic_subgroup(self.pow(gen, (c.order() / self.prime()) as i64)))
    }

    /// Every subgroup of the group, by repeated joins with single elements.
    ///
    /// Fails with `SizeLimit` once more than `limit` subgroups are found.
    pub fn all_subgroups(&self, limit: usize) -> Result<Vec<Subgroup>> {
        let mut seen: BTreeSet<Mask> = BTreeSet::new();
        let start = Mask::singleton(0);
        seen.insert(start);
        let mut queue = vec![start];
        while let Some(h) = queue.pop() {
            for g in self.elements() {
                if h.contains(g) {
                    continue;
                }
                let joined = self.close_mask(h, &[g]);
                if seen.insert(joined) {
                    if seen.len() > limit {
                        return Err(Error::SizeLimit {
                            what: "subgroup enumeration".into(),
                            estimate: seen.len() as u128,
                            budget: limit as u128,
                        });
                    }
                    queue.push(joined);
                }
            }
        }
        Ok(seen.into_iter().map(|m| self.wrap(m)).collect())
    }
}
