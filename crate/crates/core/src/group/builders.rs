use super::{is_prime, FiniteGroup};
use crate::error::{Error, Result};
use crate::mask::MAX_ORDER;

fn check_prime(p: usize) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::BadSpec(format!("{p} is not prime")))
    }
}

fn check_size(n: u128) -> Result<usize> {
    if n > MAX_ORDER as u128 {
        Err(Error::SizeLimit {
            what: "group order".into(),
            estimate: n,
            budget: MAX_ORDER as u128,
        })
    } else {
        Ok(n as usize)
    }
}

impl FiniteGroup {
    /// The cyclic group of order `p^n`, with element `k` standing for `g^k`.
    pub fn cyclic(p: usize, n: u32) -> Result<Self> {
        check_prime(p)?;
        let m = check_size((p as u128).pow(n))?;
        let table = (0..m * m).map(|i| (i / m + i % m) % m).collect();
        Self::from_table_with_prime(m, table, p)
    }

    /// `(Z_p)^k`.
    pub fn elementary(p: usize, k: u32) -> Result<Self> {
        check_prime(p)?;
        check_size((p as u128).pow(k))?;
        let zp = Self::cyclic(p, 1)?;
        let mut g = Self::cyclic(p, 0)?;
        for _ in 0..k {
            g = Self::direct_product(&g, &zp);
        }
        Ok(g)
    }

    /// Q8 on the normal forms `x^a y^b` (index `a + 4b`), with `x^4 = 1`,
    /// `y^2 = x^2` and `y x y^-1 = x^-1`.
    pub fn quaternion8() -> Self {
        Self::metacyclic8(2)
    }

    /// D8 on the normal forms `x^a y^b` (index `a + 4b`), with `x^4 = 1`,
    /// `y^2 = 1` and `y x y^-1 = x^-1`.
    pub fn dihedral8() -> Self {
        Self::metacyclic8(0)
    }

    fn metacyclic8(y_squared: usize) -> Self {
        let table = (0..64)
            .map(|i| {
                let (g, h) = (i / 8, i % 8);
                let (a, b) = (g % 4, g / 4);
                let (c, d) = (h % 4, h / 4);
                // x^a y^b x^c y^d = x^(a + (-1)^b c) y^(b + d)
                let e = if b == 0 { a + c } else { a + 4 - c };
                let (e, f) = if b + d == 2 { (e + y_squared, 0) } else { (e, b + d) };
                e % 4 + 4 * f
            })
            .collect();
        Self::from_table(8, table).expect("metacyclic table is a 2-group")
    }

    /// Upper unitriangular 3x3 matrices over `Z_p`; `[[1,a,c],[0,1,b],[0,0,1]]`
    /// has index `a + p b + p^2 c`.
    pub fn heisenberg(p: usize) -> Result<Self> {
        check_prime(p)?;
        let m = check_size((p as u128).pow(3))?;
        let split = |g: usize| (g % p, (g / p) % p, g / (p * p));
        let table = (0..m * m)
            .map(|i| {
                let (a, b, c) = split(i / m);
                let (a2, b2, c2) = split(i % m);
                let (x, y, z) = ((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                x + p * y + p * p * z
            })
            .collect();
        Self::from_table_with_prime(m, table, p)
    }

    /// `A x B` with `(a, b)` at index `a * |B| + b`.
    ///
    /// # Panics
    /// If the factors have different primes or the product exceeds 256 elements.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        Self::try_direct_product(a, b).expect("direct product of p-groups")
    }

    pub fn try_direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let (na, nb) = (a.order(), b.order());
        let m = check_size(na as u128 * nb as u128)?;
        if na > 1 && nb > 1 && a.prime() != b.prime() {
            return Err(Error::NotAPGroup(format!(
                "product of a {}-group and a {}-group",
                a.prime(),
                b.prime()
            )));
        }
        let prime = if na > 1 { a.prime() } else { b.prime() };
        let table = (0..m * m)
            .map(|i| {
                let (g, h) = (i / m, i % m);
                a.mul(g / nb, h / nb) * nb + b.mul(g % nb, h % nb)
            })
            .collect();
        Self::from_table_with_prime(m, table, prime)
    }
}
