//! Property tests: ring axioms of the concrete rings, and the decomposition
//! map as a ring homomorphism.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use pcover_core::cover::{enumerate_star_covers, Cover};
use pcover_core::funcring::{parametrized_ring, CoverFrame, FunctionRing};
use pcover_core::group::GroupSpec;
use pcover_core::ring::{FiniteRing, M2Ring};
use pcover_core::structure::{block_ring, decompose, lattice_of, lattice_ring, BlockSpec, Decomposition};
use pcover_core::FiniteGroup;

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let k = a.len();
    (0..k)
        .map(|i| (0..k).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum::<u64>() % p).collect())
        .collect()
}

fn block_case() -> impl Strategy<Value = (BlockSpec, u64, Vec<u64>, Vec<u64>, Vec<u64>)> {
    (1usize..=3, 0usize..=3, prop_oneof![Just(2u64), Just(3u64)]).prop_flat_map(|(m, n, p)| {
        let att = proptest::collection::vec(1..=m, n);
        let el = move || proptest::collection::vec(0..p, 1 + 2 * n);
        (att, el(), el(), el()).prop_map(move |(att, x, y, z)| (BlockSpec::new(m, n, att).unwrap(), p, x, y, z))
    })
}

proptest! {
    #[test]
    fn block_ring_axioms((spec, p, x, y, z) in block_case()) {
        let r = block_ring(spec, p).unwrap();
        prop_assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
        prop_assert_eq!(r.mul(&x, &r.add(&y, &z)), r.add(&r.mul(&x, &y), &r.mul(&x, &z)));
        prop_assert_eq!(r.mul(&r.add(&x, &y), &z), r.add(&r.mul(&x, &z), &r.mul(&y, &z)));
        prop_assert_eq!(r.mul(&r.one(), &x), x.clone());
        prop_assert_eq!(r.mul(&x, &r.one()), x.clone());
    }

    #[test]
    fn block_product_is_matrix_product((spec, p, x, y, _z) in block_case()) {
        let r = block_ring(spec, p).unwrap();
        let dense = mat_mul(&r.to_matrix(&x), &r.to_matrix(&y), p);
        prop_assert_eq!(r.to_matrix(&r.mul(&x, &y)), dense.clone());
        prop_assert_eq!(r.from_matrix(&dense), Some(r.mul(&x, &y)));
    }

    #[test]
    fn m2_axioms(p in prop_oneof![Just(2u64), Just(3), Just(5)], s in any::<[u64; 12]>()) {
        let r = M2Ring { p };
        let e = |i: usize| -> [u64; 4] { std::array::from_fn(|j| s[4 * i + j] % p) };
        let (x, y, z) = (e(0), e(1), e(2));
        prop_assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
        prop_assert_eq!(r.mul(&x, &r.add(&y, &z)), r.add(&r.mul(&x, &y), &r.mul(&x, &z)));
    }

    #[test]
    fn group_spec_display_round_trip(spec in prop_oneof![
        Just("Q8"), Just("D8"), Just("C8"), Just("E9"), Just("Heis3"), Just("C4xC2"), Just("Q8xC2"), Just("D8xC2")
    ]) {
        let parsed: GroupSpec = spec.parse().unwrap();
        let again: GroupSpec = parsed.to_string().parse().unwrap();
        prop_assert_eq!(&again, &parsed);
        prop_assert_eq!(again.build().unwrap(), parsed.build().unwrap());
    }
}

struct Case {
    ring: FunctionRing,
    dec: Decomposition,
}

/// A spread of star covers: every cover of a few small groups.
fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut out = Vec::new();
        for spec in ["Q8", "D8", "C4xC2", "E8", "E9", "C8xC2"] {
            let g = Arc::new(spec.parse::<GroupSpec>().unwrap().build().unwrap());
            let covers: Vec<Cover> = enumerate_star_covers(&g, 12).unwrap().covers;
            for c in covers {
                let frame = CoverFrame::canonical(&c).unwrap();
                let ring = parametrized_ring(&frame, 1 << 14).unwrap();
                out.push(Case { ring, dec: decompose(&frame).unwrap() });
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn represent_is_a_homomorphism(c in any::<prop::sample::Index>(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let case = &cases()[c.index(cases().len())];
        let els = case.ring.elements();
        let (f, h) = (&els[i.index(els.len())], &els[j.index(els.len())]);
        let (rf, rh) = (case.dec.represent(f).unwrap(), case.dec.represent(h).unwrap());
        prop_assert!(case.dec.contains(&rf));
        prop_assert_eq!(&case.dec.reconstruct(&rf).unwrap(), f);
        let sum = case.ring.add(f, h).unwrap();
        let prod = case.ring.mul(f, h).unwrap();
        prop_assert_eq!(case.dec.represent(&sum).unwrap(), case.dec.add(&rf, &rh));
        prop_assert_eq!(case.dec.represent(&prod).unwrap(), case.dec.mul(&rf, &rh));
    }

    #[test]
    fn function_ring_axioms(c in any::<prop::sample::Index>(), ix in any::<[prop::sample::Index; 3]>()) {
        let ring = &cases()[c.index(cases().len())].ring;
        let els = ring.elements();
        let [x, y, z] = ix.map(|i| &els[i.index(els.len())]);
        let xy = ring.mul(x, y).unwrap();
        prop_assert!(ring.contains(&xy));
        prop_assert!(ring.contains(&ring.add(x, y).unwrap()));
        prop_assert_eq!(ring.mul(&xy, z).unwrap(), ring.mul(x, &ring.mul(y, z).unwrap()).unwrap());
        let left = ring.mul(&ring.add(x, y).unwrap(), z).unwrap();
        prop_assert_eq!(left, ring.add(&ring.mul(x, z).unwrap(), &ring.mul(y, z).unwrap()).unwrap());
    }
}

#[test]
fn lattice_ring_is_closed() {
    let q = FiniteGroup::quaternion8();
    let r = lattice_ring(&lattice_of(&q, &q.cyclic_subgroup(2)).unwrap());
    let els = r.elements();
    for x in &els {
        for y in &els {
            assert!(r.contains(&r.mul(x, y)));
            assert!(r.contains(&r.add(x, y)));
        }
    }
}
