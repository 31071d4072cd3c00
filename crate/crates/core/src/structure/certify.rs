//! Checks that `represent` is a ring isomorphism onto the factor product.

use std::borrow::Cow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::decompose::{Decomposition, FactorElement};
use crate::funcring::FunctionRing;

/// Rings up to this order are checked on all pairs.
pub const CERT_EXHAUSTIVE_LIMIT: usize = 1024;
/// Pairs drawn above the exhaustive limit.
pub const CERT_SAMPLE_PAIRS: usize = 20_000;
const CERT_SEED: u64 = 0x5eed_0002;
/// Images are kept in memory up to this ring order.
const CERT_CACHE_LIMIT: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub passed: bool,
    pub ring_order: u128,
    pub product_order: u128,
    /// `reconstruct(represent(f)) = f` for every `f`, hence injective.
    pub injective: bool,
    pub lands_in_product: bool,
    /// Injective with equal orders.
    pub surjective: bool,
    pub homomorphism: bool,
    pub exhaustive: bool,
    pub pairs_checked: u64,
    pub seed: Option<u64>,
    pub failure: Option<String>,
}

pub fn certify_isomorphism(ring: &FunctionRing, dec: &Decomposition) -> Certificate {
    let n = ring.order();
    let exhaustive = n <= CERT_EXHAUSTIVE_LIMIT;
    let mut cert = Certificate {
        passed: false,
        ring_order: n as u128,
        product_order: dec.order(),
        injective: false,
        lands_in_product: false,
        surjective: false,
        homomorphism: false,
        exhaustive,
        pairs_checked: 0,
        seed: (!exhaustive).then_some(CERT_SEED),
        failure: None,
    };
    if let Err(msg) = run(ring, dec, &mut cert) {
        cert.failure = Some(msg);
    } else {
        cert.passed = true;
    }
    cert
}

fn run(ring: &FunctionRing, dec: &Decomposition, cert: &mut Certificate) -> Result<(), String> {
    if ring.cover() != dec.cover() {
        return Err("ring and decomposition use different covers".into());
    }
    let els = ring.elements();
    let n = els.len();
    let cached = n <= CERT_CACHE_LIMIT;
    let mut cache: Vec<Vec<FactorElement>> = Vec::with_capacity(if cached { n } else { 0 });
    for f in els {
        let rep = dec.represent(f).map_err(|e| format!("represent({f:?}): {e}"))?;
        if !dec.contains(&rep) {
            return Err(format!("represent({f:?}) = {rep:?} is outside the product"));
        }
        let back = dec.reconstruct(&rep).map_err(|e| format!("reconstruct({rep:?}): {e}"))?;
        if &back != f {
            return Err(format!("represent is not injective: {f:?} and {back:?} share the image {rep:?}"));
        }
        if cached {
            cache.push(rep);
        }
    }
    cert.lands_in_product = true;
    cert.injective = true;
    if cert.ring_order != cert.product_order {
        return Err(format!(
            "|R| = {} but the factor orders multiply to {}",
            cert.ring_order, cert.product_order
        ));
    }
    cert.surjective = true;

    let rep_of = |i: usize| -> Result<Cow<'_, [FactorElement]>, String> {
        if cached {
            Ok(Cow::Borrowed(&cache[i]))
        } else {
            dec.represent(&els[i]).map(Cow::Owned).map_err(|e| e.to_string())
        }
    };
    let check = |i: usize, j: usize| -> Result<(), String> {
        let (f, h) = (&els[i], &els[j]);
        let (rf, rh) = (rep_of(i)?, rep_of(j)?);
        for (what, value, image) in [
            ("sum", ring.add(f, h), dec.add(&rf, &rh)),
            ("composite", ring.mul(f, h), dec.mul(&rf, &rh)),
        ] {
            let value = value.map_err(|e| e.to_string())?;
            let k = ring
                .index_of(&value)
                .ok_or_else(|| format!("{what} of {f:?} and {h:?} leaves the ring"))?;
            if *rep_of(k)? != image[..] {
                return Err(format!("represent does not preserve the {what} of {f:?} and {h:?}"));
            }
        }
        Ok(())
    };
    if cert.exhaustive {
        for i in 0..n {
            for j in 0..n {
                check(i, j)?;
                cert.pairs_checked += 1;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(CERT_SEED);
        for _ in 0..CERT_SAMPLE_PAIRS {
            check(rng.gen_range(0..n), rng.gen_range(0..n))?;
            cert.pairs_checked += 1;
        }
    }
    cert.homomorphism = true;
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cover::validate_cover;
    use crate::funcring::{brute_force_ring, CoverFrame, OracleLimits};
    use crate::group::FiniteGroup;
    use crate::structure::decompose;

    #[test]
    fn cyclic_group_is_zpn() {
        let g = Arc::new(FiniteGroup::cyclic(2, 3).unwrap());
        let cover = validate_cover(g.clone(), vec![g.whole()]).unwrap();
        let ring = brute_force_ring(&cover, &OracleLimits::default()).unwrap();
        let d = decompose(&CoverFrame::canonical(&cover).unwrap()).unwrap();
        let cert = certify_isomorphism(&ring, &d);
        assert!(cert.passed, "{cert:?}");
        assert_eq!((cert.ring_order, cert.product_order), (8, 8));
        assert!(cert.exhaustive);
        assert_eq!(cert.pairs_checked, 64);
    }

    #[test]
    fn wrong_cover_fails() {
        let g = Arc::new(FiniteGroup::elementary(2, 2).unwrap());
        let whole = validate_cover(g.clone(), vec![g.whole()]).unwrap();
        let lines = validate_cover(g.clone(), g.subgroups_of_order_p()).unwrap();
        let ring = brute_force_ring(&whole, &OracleLimits::default()).unwrap();
        let d = decompose(&CoverFrame::canonical(&lines).unwrap()).unwrap();
        let cert = certify_isomorphism(&ring, &d);
        assert!(!cert.passed);
        assert!(cert.failure.unwrap().contains("different covers"));
    }
}
