//! Ring-axiom checks on a materialized function ring.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{FunctionRing, GroupFunction};

/// Rings up to this order are checked on all pairs and triples.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 64;
/// Pairs and triples drawn above the exhaustive limit.
pub const AXIOM_SAMPLE_SIZE: usize = 20_000;
const AXIOM_SEED: u64 = 0x5eed_0001;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub exhaustive: bool,
    pub pairs_checked: u64,
    pub triples_checked: u64,
    /// Seed of the sampler when not exhaustive.
    pub seed: Option<u64>,
    pub failure: Option<String>,
}

pub fn verify_ring_axioms(ring: &FunctionRing) -> AxiomReport {
    let n = ring.order();
    let exhaustive = n <= EXHAUSTIVE_AXIOM_LIMIT;
    let mut report = AxiomReport {
        passed: true,
        exhaustive,
        pairs_checked: 0,
        triples_checked: 0,
        seed: (!exhaustive).then_some(AXIOM_SEED),
        failure: None,
    };
    if let Err(msg) = run(ring, &mut report) {
        report.passed = false;
        report.failure = Some(msg);
    }
    report
}

fn run(ring: &FunctionRing, report: &mut AxiomReport) -> Result<(), String> {
    let els = ring.elements();
    let n = els.len();
    if !ring.contains(&ring.zero()) {
        return Err("additive group: zero map missing".into());
    }
    if !ring.contains(&ring.one()) {
        return Err("identity map missing".into());
    }
    let add = |f: &GroupFunction, h: &GroupFunction| ring.add(f, h).map_err(|e| e.to_string());
    let mul = |f: &GroupFunction, h: &GroupFunction| ring.mul(f, h).map_err(|e| e.to_string());
    let member = |f: &GroupFunction, what: &str| {
        if ring.contains(f) {
            Ok(())
        } else {
            Err(format!("{what}: result {f:?} not in the ring"))
        }
    };
    for f in els {
        member(&ring.neg(f), "additive group: inverse")?;
    }
    let check_pair = |f: &GroupFunction, h: &GroupFunction| -> Result<(), String> {
        let s = add(f, h)?;
        member(&s, "closure under +")?;
        member(&mul(f, h)?, "closure under composition")?;
        if s != add(h, f)? {
            return Err(format!("addition not commutative at {f:?}, {h:?}"));
        }
        Ok(())
    };
    let check_triple = |f: &GroupFunction, h: &GroupFunction, k: &GroupFunction| -> Result<(), String> {
        if add(&add(f, h)?, k)? != add(f, &add(h, k)?)? {
            return Err(format!("addition not associative at {f:?}, {h:?}, {k:?}"));
        }
        if mul(&mul(f, h)?, k)? != mul(f, &mul(h, k)?)? {
            return Err(format!("composition not associative at {f:?}, {h:?}, {k:?}"));
        }
        if mul(f, &add(h, k)?)? != add(&mul(f, h)?, &mul(f, k)?)? {
            return Err(format!("left distributivity fails at {f:?}, {h:?}, {k:?}"));
        }
        if mul(&add(f, h)?, k)? != add(&mul(f, k)?, &mul(h, k)?)? {
            return Err(format!("right distributivity fails at {f:?}, {h:?}, {k:?}"));
        }
        Ok(())
    };
    if report.exhaustive {
        for f in els {
            for h in els {
                check_pair(f, h)?;
                report.pairs_checked += 1;
                for k in els {
                    check_triple(f, h, k)?;
                    report.triples_checked += 1;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SEED);
        for _ in 0..AXIOM_SAMPLE_SIZE {
            let (f, h, k) = (&els[rng.gen_range(0..n)], &els[rng.gen_range(0..n)], &els[rng.gen_range(0..n)]);
            check_pair(f, h)?;
            check_triple(f, h, k)?;
            report.pairs_checked += 1;
            report.triples_checked += 1;
        }
    }
    Ok(())
}
