//! The ring `R_C(G)` of functions that restrict to an endomorphism on every
//! cell, built by a brute-force oracle and by explicit parametrization.

mod axioms;
mod oracle;
mod param;

pub use axioms::{verify_ring_axioms, AxiomReport, EXHAUSTIVE_AXIOM_LIMIT, AXIOM_SAMPLE_SIZE};
pub use oracle::{brute_force_ring, cell_endomorphisms, count_ring, CellEndomorphisms, OracleLimits};
pub use param::{parametrized_ring, CellFrame, CoverFrame, ParamAssignment};

use serde::{Deserialize, Serialize};

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A total map on the group, stored as its value table.
///
/// Functions order lexicographically by value table; that is the canonical
/// order of ring elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupFunction(Vec<u8>);

impl std::fmt::Debug for GroupFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl GroupFunction {
    pub fn from_values(values: Vec<usize>) -> Self {
        Self(values.into_iter().map(|v| v as u8).collect())
    }

    pub(crate) fn from_bytes(values: Vec<u8>) -> Self {
        Self(values)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).map(|x| x as u8).collect())
    }

    /// `x -> x^k` on the whole group.
    pub fn power_map(g: &FiniteGroup, k: i64) -> Self {
        Self(g.elements().map(|x| g.pow(x, k) as u8).collect())
    }

    #[inline]
    pub fn get(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v as usize).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }
}

fn same_domain(f: &GroupFunction, h: &GroupFunction) -> Result<()> {
    if f.len() != h.len() {
        return Err(Error::DomainMismatch {
            left: f.len(),
            right: h.len(),
        });
    }
    Ok(())
}

/// `(f + h)(x) = f(x) h(x)`.
pub fn ring_add(g: &FiniteGroup, f: &GroupFunction, h: &GroupFunction) -> Result<GroupFunction> {
    same_domain(f, h)?;
    if f.len() != g.order() {
        return Err(Error::DomainMismatch {
            left: f.len(),
            right: g.order(),
        });
    }
    Ok(GroupFunction(
        f.0.iter().zip(&h.0).map(|(&a, &b)| g.mul(a as usize, b as usize) as u8).collect(),
    ))
}

/// `(f o h)(x) = f(h(x))`.
pub fn ring_compose(f: &GroupFunction, h: &GroupFunction) -> Result<GroupFunction> {
    same_domain(f, h)?;
    Ok(GroupFunction(h.0.iter().map(|&y| f.0[y as usize]).collect()))
}

/// Additive inverse: `x -> f(x)^{-1}`.
pub fn ring_neg(g: &FiniteGroup, f: &GroupFunction) -> GroupFunction {
    GroupFunction(f.0.iter().map(|&a| g.inv(a as usize) as u8).collect())
}

/// Checks that `f` restricts to an endomorphism on every cell.
pub fn check_membership(cover: &Cover, f: &GroupFunction) -> Result<()> {
    let g = cover.group();
    if f.len() != g.order() {
        return Err(Error::DomainMismatch {
            left: f.len(),
            right: g.order(),
        });
    }
    for (i, c) in cover.cells().iter().enumerate() {
        for x in c.elements() {
            if !c.contains(f.get(x)) {
                return Err(Error::NotInRing(format!("f({x}) leaves cell {i}")));
            }
            for y in c.elements() {
                if f.get(g.mul(x, y)) != g.mul(f.get(x), f.get(y)) {
                    return Err(Error::NotInRing(format!(
                        "f({x} * {y}) != f({x}) * f({y}) on cell {i}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// A materialized `R_C(G)`: canonical sorted, duplicate-free element list.
#[derive(Clone, Debug)]
pub struct FunctionRing {
    cover: Cover,
    elements: Vec<GroupFunction>,
}

impl PartialEq for FunctionRing {
    fn eq(&self, other: &Self) -> bool {
        self.cover == other.cover && self.elements == other.elements
    }
}

impl FunctionRing {
    pub fn new(cover: Cover, mut elements: Vec<GroupFunction>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self { cover, elements }
    }

    pub fn cover(&self) -> &Cover {
        &self.cover
    }

    pub fn group(&self) -> &FiniteGroup {
        self.cover.group()
    }

    pub fn elements(&self) -> &[GroupFunction] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, f: &GroupFunction) -> Option<usize> {
        self.elements.binary_search(f).ok()
    }

    pub fn contains(&self, f: &GroupFunction) -> bool {
        self.index_of(f).is_some()
    }

    pub fn zero(&self) -> GroupFunction {
        GroupFunction::zero(self.group().order())
    }

    pub fn one(&self) -> GroupFunction {
        GroupFunction::identity(self.group().order())
    }

    pub fn add(&self, f: &GroupFunction, h: &GroupFunction) -> Result<GroupFunction> {
        ring_add(self.group(), f, h)
    }

    pub fn mul(&self, f: &GroupFunction, h: &GroupFunction) -> Result<GroupFunction> {
        ring_compose(f, h)
    }

    pub fn neg(&self, f: &GroupFunction) -> GroupFunction {
        ring_neg(self.group(), f)
    }

    /// First element present in exactly one of the two rings, if any.
    pub fn first_difference(&self, other: &FunctionRing) -> Option<GroupFunction> {
        let (a, b) = (&self.elements, &other.elements);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                std::cmp::Ordering::Less => return Some(a[i].clone()),
                std::cmp::Ordering::Greater => return Some(b[j].clone()),
            }
        }
        a.get(i).or_else(|| b.get(j)).cloned()
    }

    pub fn dump(&self) -> RingDump {
        RingDump {
            order: self.order(),
            elements: self.elements.iter().map(GroupFunction::values).collect(),
        }
    }
}

/// JSON ring dump: elements sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDump {
    pub order: usize,
    pub elements: Vec<Vec<usize>>,
}
