//! Finite rings given by explicit operations, plus the ideal computations
//! shared by the abstract block rings and the function rings.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use crate::funcring::{FunctionRing, GroupFunction};

pub trait FiniteRing {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn order(&self) -> u128;
    /// All elements. Only called on rings small enough to list.
    fn elements(&self) -> Vec<Self::Elem>;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// A generating set of the additive group.
    fn additive_generators(&self) -> Vec<Self::Elem> {
        let mut gens = Vec::new();
        let mut span: HashSet<Self::Elem> = [self.zero()].into();
        for x in self.elements() {
            if !span.contains(&x) {
                span = extend_span(self, &span, &x);
                gens.push(x);
            }
        }
        gens
    }
}

/// `span + <g>` in the additive group.
fn extend_span<R: FiniteRing + ?Sized>(ring: &R, span: &HashSet<R::Elem>, g: &R::Elem) -> HashSet<R::Elem> {
    let mut out = span.clone();
    for x in span {
        let mut y = ring.add(x, g);
        while out.insert(y.clone()) {
            y = ring.add(&y, g);
        }
    }
    out
}

/// Additive subgroup generated by `gens`; stops growing past `cap` elements.
pub fn additive_span<R: FiniteRing + ?Sized>(ring: &R, gens: &[R::Elem], cap: u128) -> HashSet<R::Elem> {
    let mut span: HashSet<R::Elem> = [ring.zero()].into();
    for g in gens {
        if !span.contains(g) {
            span = extend_span(ring, &span, g);
            if span.len() as u128 >= cap {
                break;
            }
        }
    }
    span
}

/// Two-sided ideal generated by `a`, as the additive span of
/// `a, ra, as, ras` with `r, s` running over additive generators of the ring.
pub fn principal_ideal<R: FiniteRing + ?Sized>(ring: &R, a: &R::Elem, ring_gens: &[R::Elem]) -> HashSet<R::Elem> {
    let mut gens = vec![a.clone()];
    for r in ring_gens {
        let ra = ring.mul(r, a);
        gens.push(ring.mul(a, r));
        for s in ring_gens {
            gens.push(ring.mul(&ra, s));
        }
        gens.push(ra);
    }
    gens.sort();
    gens.dedup();
    additive_span(ring, &gens, ring.order())
}

/// Checks that `subset` is an additive subgroup closed under multiplication
/// by ring elements on both sides. Returns a witness on failure.
pub fn check_two_sided_ideal<R: FiniteRing + ?Sized>(
    ring: &R,
    subset: &HashSet<R::Elem>,
    ring_gens: &[R::Elem],
) -> Result<(), String> {
    if !subset.contains(&ring.zero()) {
        return Err("zero is missing".into());
    }
    let mut sorted: Vec<&R::Elem> = subset.iter().collect();
    sorted.sort();
    for x in &sorted {
        for y in &sorted {
            let s = ring.add(x, y);
            if !subset.contains(&s) {
                return Err(format!("{x:?} + {y:?} = {s:?} leaves the set"));
            }
        }
        for r in ring_gens {
            let left = ring.mul(r, x);
            if !subset.contains(&left) {
                return Err(format!("{r:?} * {x:?} = {left:?} leaves the set (not a left ideal)"));
            }
            let right = ring.mul(x, r);
            if !subset.contains(&right) {
                return Err(format!("{x:?} * {r:?} = {right:?} leaves the set (not a right ideal)"));
            }
        }
    }
    Ok(())
}

/// `M_2(Z_p)`; elements are `[a, b, c, d]` for the matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct M2Ring {
    pub p: u64,
}

impl FiniteRing for M2Ring {
    type Elem = [u64; 4];

    fn order(&self) -> u128 {
        (self.p as u128).pow(4)
    }

    fn elements(&self) -> Vec<[u64; 4]> {
        let p = self.p;
        (0..p.pow(4))
            .map(|c| [c % p, c / p % p, c / p / p % p, c / p / p / p])
            .collect()
    }

    fn zero(&self) -> [u64; 4] {
        [0; 4]
    }

    fn add(&self, x: &[u64; 4], y: &[u64; 4]) -> [u64; 4] {
        std::array::from_fn(|i| (x[i] + y[i]) % self.p)
    }

    fn mul(&self, x: &[u64; 4], y: &[u64; 4]) -> [u64; 4] {
        let p = self.p;
        [
            (x[0] * y[0] + x[1] * y[2]) % p,
            (x[0] * y[1] + x[1] * y[3]) % p,
            (x[2] * y[0] + x[3] * y[2]) % p,
            (x[2] * y[1] + x[3] * y[3]) % p,
        ]
    }

    fn additive_generators(&self) -> Vec<[u64; 4]> {
        (0..4).map(|i| std::array::from_fn(|j| u64::from(i == j))).collect()
    }
}

/// `Z_n` under the usual operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZnRing {
    pub n: u64,
}

impl FiniteRing for ZnRing {
    type Elem = u64;

    fn order(&self) -> u128 {
        self.n as u128
    }

    fn elements(&self) -> Vec<u64> {
        (0..self.n).collect()
    }

    fn zero(&self) -> u64 {
        0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.n
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.n
    }

    fn additive_generators(&self) -> Vec<u64> {
        if self.n > 1 {
            vec![1]
        } else {
            vec![]
        }
    }
}

impl FiniteRing for FunctionRing {
    type Elem = GroupFunction;

    fn order(&self) -> u128 {
        FunctionRing::order(self) as u128
    }

    fn elements(&self) -> Vec<GroupFunction> {
        FunctionRing::elements(self).to_vec()
    }

    fn zero(&self) -> GroupFunction {
        FunctionRing::zero(self)
    }

    fn add(&self, a: &GroupFunction, b: &GroupFunction) -> GroupFunction {
        FunctionRing::add(self, a, b).expect("same domain")
    }

    fn mul(&self, a: &GroupFunction, b: &GroupFunction) -> GroupFunction {
        FunctionRing::mul(self, a, b).expect("same domain")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m2_generators_span() {
        let r = M2Ring { p: 3 };
        let span = additive_span(&r, &r.additive_generators(), r.order());
        assert_eq!(span.len(), 81);
        let greedy = FiniteRing::additive_generators(&ZnRing { n: 9 });
        assert_eq!(greedy, vec![1]);
    }

    #[test]
    fn principal_ideals_in_z8() {
        let r = ZnRing { n: 8 };
        let gens = r.additive_generators();
        assert_eq!(principal_ideal(&r, &2, &gens).len(), 4);
        assert_eq!(principal_ideal(&r, &4, &gens).len(), 2);
        assert_eq!(principal_ideal(&r, &3, &gens).len(), 8);
    }

    #[test]
    fn ideal_check_reports_side() {
        let r = M2Ring { p: 2 };
        let gens = r.additive_generators();
        // First-column matrices form a left ideal only.
        let col: HashSet<[u64; 4]> = r.elements().into_iter().filter(|m| m[1] == 0 && m[3] == 0).collect();
        let err = check_two_sided_ideal(&r, &col, &gens).unwrap_err();
        assert!(err.contains("right ideal"), "{err}");
        let zero: HashSet<[u64; 4]> = [[0; 4]].into();
        assert!(check_two_sided_ideal(&r, &zero, &gens).is_ok());
    }
}
