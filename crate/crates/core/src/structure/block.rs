//! The block-triangular rings `N^{m+n}`.
//!
//! An element is `[[λ I_m, J(ν)], [0, D(μ)]]` where `J(ν)` has `ν_j` at row
//! `i_j`, column `j` and zeros elsewhere. It is stored as the flat vector
//! `(λ, ν_1..ν_n, μ_1..μ_n)`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::FiniteRing;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockSpec {
    m: usize,
    n: usize,
    /// 1-based rows of the `ν` entries.
    attachments: Vec<usize>,
}

impl BlockSpec {
    pub fn new(m: usize, n: usize, attachments: Vec<usize>) -> Result<Self> {
        if m == 0 {
            return Err(Error::BadSpec("block needs m >= 1".into()));
        }
        if attachments.len() != n {
            return Err(Error::BadSpec(format!("{} attachments for n = {n}", attachments.len())));
        }
        if let Some(&i) = attachments.iter().find(|&&i| i == 0 || i > m) {
            return Err(Error::BadSpec(format!("attachment {i} outside 1..={m}")));
        }
        Ok(Self { m, n, attachments })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn attachments(&self) -> &[usize] {
        &self.attachments
    }

    /// Side length of the matrix.
    pub fn size(&self) -> usize {
        self.m + self.n
    }

    /// Every attachment sequence for the given `m` and `n`.
    pub fn all(m: usize, n: usize) -> Vec<BlockSpec> {
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v: Vec<usize>| {
                    (1..=m).map(move |i| {
                        let mut w = v.clone();
                        w.push(i);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(|a| BlockSpec { m, n, attachments: a }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRing {
    p: u64,
    spec: BlockSpec,
}

pub fn block_ring(spec: BlockSpec, p: u64) -> Result<BlockRing> {
    if !crate::group::is_prime(p as usize) {
        return Err(Error::BadSpec(format!("{p} is not prime")));
    }
    Ok(BlockRing { p, spec })
}

impl BlockRing {
    pub fn spec(&self) -> &BlockSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn element(&self, lambda: u64, nu: &[u64], mu: &[u64]) -> Vec<u64> {
        assert_eq!(nu.len(), self.spec.n);
        assert_eq!(mu.len(), self.spec.n);
        let mut v = vec![lambda % self.p];
        v.extend(nu.iter().chain(mu).map(|x| x % self.p));
        v
    }

    pub fn one(&self) -> Vec<u64> {
        let n = self.spec.n;
        self.element(1, &vec![0; n], &vec![1; n])
    }

    /// The dense `(m+n) x (m+n)` matrix, row-major.
    pub fn to_matrix(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let (m, n) = (self.spec.m, self.spec.n);
        let mut a = vec![vec![0; m + n]; m + n];
        for (i, row) in a.iter_mut().enumerate().take(m) {
            row[i] = x[0];
        }
        for j in 0..n {
            a[self.spec.attachments[j] - 1][m + j] = x[1 + j];
            a[m + j][m + j] = x[1 + n + j];
        }
        a
    }

    /// Inverse of `to_matrix`; `None` when the matrix is outside the ring.
    pub fn from_matrix(&self, a: &[Vec<u64>]) -> Option<Vec<u64>> {
        let (m, n) = (self.spec.m, self.spec.n);
        let lambda = a[0][0];
        let mut nu = vec![0; n];
        let mut mu = vec![0; n];
        for j in 0..n {
            nu[j] = a[self.spec.attachments[j] - 1][m + j];
            mu[j] = a[m + j][m + j];
        }
        let x = self.element(lambda, &nu, &mu);
        (self.to_matrix(&x) == a).then_some(x)
    }

    /// `I_m^{m+n}`: the elements with `ν = 0` and `μ = 0`.
    pub fn scalar_part(&self) -> HashSet<Vec<u64>> {
        let n = self.spec.n;
        (0..self.p).map(|l| self.element(l, &vec![0; n], &vec![0; n])).collect()
    }

    /// Elements with `μ = 0`; a two-sided ideal.
    pub fn upper_part(&self) -> HashSet<Vec<u64>> {
        self.elements().into_iter().filter(|x| x[1 + self.spec.n..].iter().all(|&v| v == 0)).collect()
    }

    /// Elements with only `ν` nonzero; a two-sided ideal, nonzero when `n > 0`.
    pub fn coupling_part(&self) -> HashSet<Vec<u64>> {
        self.upper_part().into_iter().filter(|x| x[0] == 0).collect()
    }
}

impl FiniteRing for BlockRing {
    type Elem = Vec<u64>;

    fn order(&self) -> u128 {
        (self.p as u128).pow(1 + 2 * self.spec.n as u32)
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        let len = 1 + 2 * self.spec.n;
        let p = self.p;
        (0..p.pow(len as u32))
            .map(|mut c| {
                (0..len)
                    .map(|_| {
                        let d = c % p;
                        c /= p;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; 1 + 2 * self.spec.n]
    }

    fn add(&self, x: &Vec<u64>, y: &Vec<u64>) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.p).collect()
    }

    /// `(λ, ν, μ)(λ', ν', μ') = (λλ', λν' + νμ', μμ')`.
    fn mul(&self, x: &Vec<u64>, y: &Vec<u64>) -> Vec<u64> {
        let n = self.spec.n;
        let p = self.p;
        let mut out = vec![x[0] * y[0] % p];
        out.extend((0..n).map(|j| (x[0] * y[1 + j] + x[1 + j] * y[1 + n + j]) % p));
        out.extend((0..n).map(|j| x[1 + n + j] * y[1 + n + j] % p));
        out
    }

    fn additive_generators(&self) -> Vec<Vec<u64>> {
        let len = 1 + 2 * self.spec.n;
        (0..len).map(|i| (0..len).map(|j| u64::from(i == j)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{check_two_sided_ideal, principal_ideal};

    fn dense_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
        let k = a.len();
        (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum::<u64>() % p).collect())
            .collect()
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(BlockSpec::new(0, 0, vec![]).is_err());
        assert!(BlockSpec::new(1, 2, vec![1]).is_err());
        assert!(BlockSpec::new(2, 1, vec![3]).is_err());
        assert!(block_ring(BlockSpec::new(1, 0, vec![]).unwrap(), 4).is_err());
    }

    #[test]
    fn orders() {
        let r = block_ring(BlockSpec::new(1, 0, vec![]).unwrap(), 3).unwrap();
        assert_eq!(r.order(), 3);
        let r = block_ring(BlockSpec::new(1, 1, vec![1]).unwrap(), 2).unwrap();
        assert_eq!(r.order(), 8);
        assert_eq!(r.elements().len(), 8);
        assert_eq!(BlockSpec::all(3, 2).len(), 9);
    }

    #[test]
    fn multiplication_matches_dense_matrices() {
        for p in [2, 3] {
            for spec in BlockSpec::all(2, 1).into_iter().chain(BlockSpec::all(2, 2)) {
                let r = block_ring(spec, p).unwrap();
                let els = r.elements();
                for x in &els {
                    assert_eq!(r.from_matrix(&r.to_matrix(x)).as_ref(), Some(x));
                    for y in &els {
                        let dense = dense_mul(&r.to_matrix(x), &r.to_matrix(y), p);
                        assert_eq!(r.from_matrix(&dense), Some(r.mul(x, y)));
                    }
                }
            }
        }
    }

    #[test]
    fn strictly_upper_products() {
        let r = block_ring(BlockSpec::new(2, 1, vec![2]).unwrap(), 3).unwrap();
        let x = r.element(0, &[2], &[0]);
        let y = r.element(0, &[1], &[1]);
        assert_eq!(r.mul(&x, &y), r.element(0, &[2], &[0]));
        assert_eq!(r.mul(&x, &x), r.zero());
    }

    #[test]
    fn scalar_part_is_only_a_left_ideal() {
        let r = block_ring(BlockSpec::new(1, 1, vec![1]).unwrap(), 2).unwrap();
        let gens = r.additive_generators();
        let err = check_two_sided_ideal(&r, &r.scalar_part(), &gens).unwrap_err();
        assert!(err.contains("right ideal"), "{err}");
        assert!(check_two_sided_ideal(&r, &r.upper_part(), &gens).is_ok());
        assert!(check_two_sided_ideal(&r, &r.coupling_part(), &gens).is_ok());
        let generated = principal_ideal(&r, &r.element(0, &[1], &[0]), &gens);
        assert_eq!(generated.len(), 2);
    }
}
