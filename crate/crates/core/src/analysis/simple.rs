//! Simplicity by principal-ideal saturation, and by decomposition shape.

use serde::{Deserialize, Serialize};

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::funcring::{parametrized_ring, CoverFrame};
use crate::group::prime_power;
use crate::ring::{principal_ideal, FiniteRing};
use crate::structure::{decompose, Decomposition, Factor, FactorElement, SubdirectElement};

/// Rings up to this order get the principal-ideal test by default.
pub const PRINCIPAL_IDEAL_LIMIT: u128 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    #[serde(rename = "Zp")]
    Zp,
    M2,
    #[serde(rename = "non-simple")]
    NonSimple,
    #[serde(rename = "other-simple")]
    OtherSimple,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Zp => "Z_p",
            Classification::M2 => "M_2(Z_p)",
            Classification::NonSimple => "non-simple",
            Classification::OtherSimple => "simple, neither Z_p nor M_2(Z_p)",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplicityMethod {
    PrincipalIdeal,
    Decomposition,
}

/// A proper nonzero two-sided ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealWitness {
    /// Debug rendering of a generator; empty for the zero-multiplication case.
    pub generator: String,
    pub ideal_order: u128,
    pub description: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicityReport {
    pub ring: String,
    pub order: u128,
    pub method: SimplicityMethod,
    pub is_simple: bool,
    pub classification: Classification,
    pub witness: Option<IdealWitness>,
}

/// Decides simplicity from the two-sided ideals generated by single elements.
///
/// A ring is simple when its multiplication is not identically zero and every
/// nonzero element generates the whole ring.
pub fn is_simple<R: FiniteRing>(ring: &R, id: &str, limit: u128) -> Result<SimplicityReport> {
    let order = ring.order();
    if order > limit {
        return Err(Error::SizeLimit {
            what: format!("principal-ideal test on {id}"),
            estimate: order,
            budget: limit,
        });
    }
    let mut report = SimplicityReport {
        ring: id.to_string(),
        order,
        method: SimplicityMethod::PrincipalIdeal,
        is_simple: false,
        classification: Classification::NonSimple,
        witness: None,
    };
    let gens = ring.additive_generators();
    let zero = ring.zero();
    if gens.iter().all(|a| gens.iter().all(|b| ring.mul(a, b) == zero)) {
        if order > 1 {
            report.witness = Some(IdealWitness {
                generator: String::new(),
                ideal_order: order,
                description: "multiplication is identically zero".into(),
            });
        }
        return Ok(report);
    }
    for a in ring.elements() {
        if a == zero {
            continue;
        }
        let ideal = principal_ideal(ring, &a, &gens);
        if (ideal.len() as u128) < order {
            report.witness = Some(IdealWitness {
                generator: format!("{a:?}"),
                ideal_order: ideal.len() as u128,
                description: "two-sided ideal generated by one element".into(),
            });
            return Ok(report);
        }
    }
    report.is_simple = true;
    let commutative = gens.iter().all(|a| gens.iter().all(|b| ring.mul(a, b) == ring.mul(b, a)));
    report.classification = match prime_power(order as usize) {
        Some((_, 1)) => Classification::Zp,
        Some((_, 4)) if !commutative => Classification::M2,
        _ => Classification::OtherSimple,
    };
    Ok(report)
}

/// Shape of the decomposition: `Z_p` or `M_2(Z_p)` exactly when it has a
/// single factor of that kind.
pub fn classify_decomposition(dec: &Decomposition) -> Classification {
    match dec.factors() {
        [f] if f.is_m2() => Classification::M2,
        [f] if f.is_prime_field() => Classification::Zp,
        _ => Classification::NonSimple,
    }
}

fn one_of(f: &Factor) -> FactorElement {
    match f {
        Factor::M2(_) => FactorElement::M2([1, 0, 0, 1]),
        Factor::Subdirect(s) => {
            let n = s.spec().n();
            let mut block = vec![1];
            block.extend(std::iter::repeat_n(0, n));
            block.extend(std::iter::repeat_n(1, n));
            let FactorElement::Subdirect(z) = f.zero() else { unreachable!() };
            FactorElement::Subdirect(SubdirectElement {
                block,
                tuples: z.tuples.iter().map(|t| vec![1; t.len()]).collect(),
            })
        }
    }
}

/// A proper nonzero ideal read off the decomposition, when there is one.
fn decomposition_witness(dec: &Decomposition) -> Result<Option<IdealWitness>> {
    let order = dec.order();
    let factors = dec.factors();
    let render = |x: &[FactorElement]| -> Result<String> { Ok(format!("{:?}", dec.reconstruct(x)?)) };
    if factors.len() >= 2 {
        let mut x: Vec<FactorElement> = factors.iter().map(one_of).collect();
        x[0] = factors[0].zero();
        return Ok(Some(IdealWitness {
            generator: render(&x)?,
            ideal_order: order / factors[0].order(),
            description: "kernel of the projection onto the first factor".into(),
        }));
    }
    match factors.first() {
        Some(Factor::Subdirect(s)) if !factors[0].is_prime_field() => {
            let p = s.block_ring().p();
            let FactorElement::Subdirect(mut z) = factors[0].zero() else { unreachable!() };
            if s.spec().n() > 0 {
                z.block[1] = 1;
            } else {
                // Some lattice tuple reduces to 0 without being 0.
                let (i, pl) = s
                    .lattices()
                    .iter()
                    .enumerate()
                    .find_map(|(i, pl)| pl.as_ref().map(|pl| (i, pl)))
                    .expect("non-field factor has a lattice");
                let slot = if i < s.spec().m() { i } else { i + s.spec().n() };
                z.tuples[slot] = pl.ring.fiber(0).into_iter().find(|t| t.iter().any(|&v| v != 0)).unwrap();
            }
            Ok(Some(IdealWitness {
                generator: render(&[FactorElement::Subdirect(z)])?,
                ideal_order: order / p as u128,
                description: "kernel of the reduction to the diagonal scalar".into(),
            }))
        }
        _ => Ok(None),
    }
}

/// Simplicity of `R_C(G)`. Rings up to `limit` are materialized and get the
/// principal-ideal test; larger ones are classified by decomposition shape
/// with an explicit ideal as witness.
pub fn cover_simplicity(cover: &Cover, limit: u128) -> Result<SimplicityReport> {
    let frame = CoverFrame::canonical(cover)?;
    let dec = decompose(&frame)?;
    let order = frame.assignment_count();
    let id = format!("R_C(G), |G| = {}, {} cells", cover.group().order(), cover.len());
    if order <= limit {
        let ring = parametrized_ring(&frame, limit as usize)?;
        return is_simple(&ring, &id, limit);
    }
    let classification = classify_decomposition(&dec);
    Ok(SimplicityReport {
        ring: id,
        order,
        method: SimplicityMethod::Decomposition,
        is_simple: classification != Classification::NonSimple,
        classification,
        witness: decomposition_witness(&dec)?,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cover::validate_cover;
    use crate::group::FiniteGroup;
    use crate::ring::{M2Ring, ZnRing};
    use crate::structure::{block_ring, BlockSpec};

    #[test]
    fn m2_is_simple() {
        for p in [2, 3] {
            let r = is_simple(&M2Ring { p }, "M2", 1000).unwrap();
            assert!(r.is_simple);
            assert_eq!(r.classification, Classification::M2);
        }
    }

    #[test]
    fn zn() {
        let r = is_simple(&ZnRing { n: 5 }, "Z5", 100).unwrap();
        assert_eq!(r.classification, Classification::Zp);
        let r = is_simple(&ZnRing { n: 9 }, "Z9", 100).unwrap();
        assert!(!r.is_simple);
        assert_eq!(r.witness.unwrap().ideal_order, 3);
        assert!(!is_simple(&ZnRing { n: 1 }, "zero", 100).unwrap().is_simple);
        assert!(is_simple(&ZnRing { n: 9 }, "Z9", 8).is_err());
    }

    #[test]
    fn block_rings_are_not_simple() {
        let r = block_ring(BlockSpec::new(1, 1, vec![1]).unwrap(), 2).unwrap();
        let rep = is_simple(&r, "N", 100).unwrap();
        assert!(!rep.is_simple);
    }

    #[test]
    fn q8_ring_not_simple_both_routes() {
        let q = Arc::new(FiniteGroup::quaternion8());
        let cells = vec![q.cyclic_subgroup(1), q.cyclic_subgroup(4), q.cyclic_subgroup(5)];
        let cover = validate_cover(q, cells).unwrap();
        let a = cover_simplicity(&cover, 1000).unwrap();
        assert_eq!(a.method, SimplicityMethod::PrincipalIdeal);
        assert!(!a.is_simple);
        let b = cover_simplicity(&cover, 4).unwrap();
        assert_eq!(b.method, SimplicityMethod::Decomposition);
        assert!(!b.is_simple);
        assert_eq!(b.witness.unwrap().ideal_order, 8);
    }

    #[test]
    fn klein_whole_is_m2() {
        let k = Arc::new(FiniteGroup::elementary(2, 2).unwrap());
        let cover = validate_cover(k.clone(), vec![k.whole()]).unwrap();
        let a = cover_simplicity(&cover, 1000).unwrap();
        assert_eq!(a.classification, Classification::M2);
        let b = cover_simplicity(&cover, 1).unwrap();
        assert_eq!(b.classification, Classification::M2);
        assert!(b.witness.is_none());
    }
}
