//! Finite p-groups given by multiplication tables.

mod builders;
mod cay;
mod spec;

pub use cay::{parse_cay, write_cay};
pub use spec::GroupSpec;

use crate::error::{Error, Result};
use crate::mask::{Mask, MAX_ORDER};

/// A finite p-group on the dense index set `0..order`, identity at 0.
///
/// Construction validates the group axioms and the prime-power order, so a
/// `FiniteGroup` value is always a genuine p-group.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u8>,
    inverse: Vec<usize>,
    prime: usize,
    element_order: Vec<usize>,
    exponent: usize,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("prime", &self.prime)
            .field("exponent", &self.exponent)
            .finish()
    }
}

/// Returns `(p, k)` with `n = p^k`, or `None` when `n` is not a prime power.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn is_prime(n: usize) -> bool {
    matches!(prime_power(n), Some((_, 1)))
}

impl FiniteGroup {
    /// Validates a row-major multiplication table, `table[g * n + h] = g * h`.
    ///
    /// A table of order 1 is given the nominal prime 2.
    pub fn from_table(n: usize, table: Vec<usize>) -> Result<Self> {
        Self::from_table_with_prime(n, table, 2)
    }

    /// As [`FiniteGroup::from_table`], with the prime to record for the trivial group.
    pub(crate) fn from_table_with_prime(n: usize, table: Vec<usize>, trivial_prime: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::SizeLimit {
                what: "group order".into(),
                estimate: n as u128,
                budget: MAX_ORDER as u128,
            });
        }
        if table.len() != n * n {
            return Err(Error::NotAGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(pos) = table.iter().position(|&v| v >= n) {
            return Err(Error::NotAGroup(format!(
                "entry ({}, {}) = {} out of range",
                pos / n,
                pos % n,
                table[pos]
            )));
        }
        for g in 0..n {
            if table[g] != g || table[g * n] != g {
                return Err(Error::NotAGroup(format!(
                    "element 0 is not the identity (fails at {g})"
                )));
            }
        }
        for g in 0..n {
            let mut row = Mask::EMPTY;
            let mut col = Mask::EMPTY;
            for h in 0..n {
                row.insert(table[g * n + h]);
                col.insert(table[h * n + g]);
            }
            if row.len() != n || col.len() != n {
                return Err(Error::NotAGroup(format!(
                    "row or column {g} is not a permutation"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inverse: Vec<usize> = (0..n)
            .map(|g| (0..n).find(|&h| table[g * n + h] == 0).unwrap())
            .collect();

        let prime = if n == 1 {
            trivial_prime
        } else {
            match prime_power(n) {
                Some((p, _)) => p,
                None => return Err(Error::NotAPGroup(format!("order {n} is not a prime power"))),
            }
        };
        let mut element_order = vec![1; n];
        for g in 1..n {
            let mut x = g;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + g];
                k += 1;
            }
            element_order[g] = k;
            if prime_power(k).map(|(q, _)| q) != Some(prime) {
                return Err(Error::NotAPGroup(format!(
                    "element {g} has order {k}, not a power of {prime}"
                )));
            }
        }
        let exponent = element_order.iter().copied().max().unwrap_or(1);
        Ok(Self {
            order: n,
            table: table.into_iter().map(|v| v as u8).collect(),
            inverse,
            prime,
            element_order,
            exponent,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn prime(&self) -> usize {
        self.prime
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_order[a]
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let ord = self.element_order[a] as i64;
        let k = k.rem_euclid(ord);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Row-major table as plain indices.
    pub fn table(&self) -> Vec<usize> {
        self.table.iter().map(|&v| v as usize).collect()
    }

    /// Index of `(a, b)` in `A x B`, as laid out by [`FiniteGroup::direct_product`].
    pub fn product_index(a: usize, b: usize, right_order: usize) -> usize {
        a * right_order + b
    }
}
