//! One function per subcommand. Each returns a report that renders as text
//! or JSON, plus an exit code.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use pcover_core::analysis::{
    cover_simplicity, is_simple, verify_paper_examples, CheckStatus, ExampleReport, SimplicityReport,
    PRINCIPAL_IDEAL_LIMIT,
};
use pcover_core::cover::{enumerate_star_covers, Cover, CoverFile};
use pcover_core::funcring::{
    brute_force_ring, parametrized_ring, verify_ring_axioms, AxiomReport, CoverFrame, FunctionRing, OracleLimits,
};
use pcover_core::group::GroupSpec;
use pcover_core::ring::{M2Ring, ZnRing};
use pcover_core::structure::{block_ring, certify_isomorphism, decompose, Certificate, DecompositionReport, FactorReport};
use pcover_core::subgroup::SubgroupDescriptor;
use pcover_core::FiniteGroup;

use crate::config::{Format, Method, RunConfig};
use crate::target::{parse_target, RingTarget};

pub struct Report<T> {
    pub data: T,
    pub text: String,
    pub code: u8,
}

impl<T: Serialize> Report<T> {
    pub fn emit(self, format: Format) -> anyhow::Result<u8> {
        match format {
            Format::Text => print!("{}", self.text),
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.data)?),
        }
        Ok(self.code)
    }
}

fn build_group(spec: &str) -> anyhow::Result<Arc<FiniteGroup>> {
    let parsed: GroupSpec = spec.parse()?;
    Ok(Arc::new(parsed.build().with_context(|| format!("building {spec}"))?))
}

/// `auto` picks the first enumerated (*) cover; anything else is a `.cov` path.
fn resolve_cover(g: &Arc<FiniteGroup>, cover: &str) -> anyhow::Result<Cover> {
    if cover == "auto" {
        let en = enumerate_star_covers(g, 1)?;
        return en.covers.into_iter().next().context("the group has no (*) cover");
    }
    let path = Path::new(cover);
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {cover}"))?;
    let file: CoverFile = serde_json::from_str(&text).with_context(|| format!("parsing {cover}"))?;
    let c = file.resolve(path.parent())?;
    if c.group() != g {
        bail!("{cover} is a cover of {}, which is a different group", file.group);
    }
    Ok(c)
}

fn cell_name(d: &SubgroupDescriptor) -> String {
    let gens: Vec<String> = d.generators.iter().map(ToString::to_string).collect();
    format!("<{}>", gens.join(","))
}

fn cells_of(cover: &Cover) -> Vec<SubgroupDescriptor> {
    cover.cells().iter().map(|c| c.descriptor(cover.group())).collect()
}

fn plural(n: usize, one: &str, many: &str) -> String {
    format!("{n} {}", if n == 1 { one } else { many })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub group: String,
    pub order: usize,
    pub p: usize,
    pub exponent: usize,
    pub abelian: bool,
    pub center: SubgroupDescriptor,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order_p_subgroups: Option<Vec<SubgroupDescriptor>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub maximal_cyclic: Option<Vec<SubgroupDescriptor>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elementary_p2: Option<Vec<SubgroupDescriptor>>,
}

pub fn group(spec: &str, describe: bool) -> anyhow::Result<Report<GroupReport>> {
    let g = build_group(spec)?;
    let list = |v: Vec<pcover_core::Subgroup>| v.iter().map(|s| s.descriptor(&g)).collect::<Vec<_>>();
    let data = GroupReport {
        group: spec.to_string(),
        order: g.order(),
        p: g.prime(),
        exponent: g.exponent(),
        abelian: g.is_abelian(),
        center: g.center().descriptor(&g),
        order_p_subgroups: describe.then(|| list(g.subgroups_of_order_p())),
        maximal_cyclic: describe.then(|| list(g.maximal_cyclic_subgroups())),
        elementary_p2: describe.then(|| list(g.elementary_p2_subgroups())),
    };
    let mut text = format!("{spec}: order {}, exponent {}\n", data.order, data.exponent);
    if let (Some(tp), Some(mc), Some(e2)) = (&data.order_p_subgroups, &data.maximal_cyclic, &data.elementary_p2) {
        let p = data.p;
        writeln!(
            text,
            "{}, {} maximal cyclic, {}",
            plural(tp.len(), &format!("subgroup of order {p}"), &format!("subgroups of order {p}")),
            mc.len(),
            plural(e2.len(), &format!("elementary subgroup of order {}", p * p), &format!("elementary subgroups of order {}", p * p)),
        )?;
        writeln!(text, "abelian: {}", if data.abelian { "yes" } else { "no" })?;
        writeln!(text, "center: {} (order {})", cell_name(&data.center), data.center.order)?;
        for (what, v) in [("order p", tp), ("maximal cyclic", mc), ("elementary p^2", e2)] {
            let names: Vec<String> = v.iter().map(cell_name).collect();
            writeln!(text, "{what}: {}", names.join(" "))?;
        }
    }
    Ok(Report { data, text, code: 0 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCell {
    pub generators: Vec<usize>,
    pub order: usize,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverEntry {
    pub index: usize,
    pub irredundant: bool,
    pub cells: Vec<CoverCell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoversReport {
    pub group: String,
    pub limit: usize,
    pub covers: Vec<CoverEntry>,
    pub irredundant: usize,
    pub truncated: bool,
}

pub fn covers(spec: &str, limit: usize, _cfg: &RunConfig) -> anyhow::Result<Report<CoversReport>> {
    let g = build_group(spec)?;
    let en = enumerate_star_covers(&g, limit)?;
    let entries: Vec<CoverEntry> = en
        .covers
        .iter()
        .enumerate()
        .map(|(index, c)| CoverEntry {
            index,
            irredundant: index < en.irredundant,
            cells: c
                .cells()
                .iter()
                .enumerate()
                .map(|(i, s)| CoverCell {
                    generators: s.generators(&g),
                    order: s.order(),
                    class: c.class(i).to_string(),
                })
                .collect(),
        })
        .collect();
    let data = CoversReport {
        group: spec.to_string(),
        limit,
        irredundant: en.irredundant,
        truncated: en.truncated,
        covers: entries,
    };
    let mut text = format!(
        "{spec}: {} ({} irredundant), {}\n",
        plural(data.covers.len(), "(*) cover", "(*) covers"),
        data.irredundant,
        if data.truncated { "truncated" } else { "complete" }
    );
    for e in &data.covers {
        let cells: Vec<String> = e
            .cells
            .iter()
            .map(|c| {
                let gens: Vec<String> = c.generators.iter().map(ToString::to_string).collect();
                format!("<{}> {}", gens.join(","), c.class)
            })
            .collect();
        let kind = if e.irredundant { "irredundant" } else { "redundant" };
        writeln!(text, "#{} {kind}: {}", e.index, cells.join(", "))?;
    }
    Ok(Report { data, text, code: 0 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub group: String,
    pub cells: Vec<SubgroupDescriptor>,
    pub star: bool,
    pub method: String,
    pub order: usize,
    /// Present when both methods ran.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub methods_agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_difference: Option<Vec<usize>>,
    pub axioms: AxiomReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dump: Option<String>,
}

fn param_ring(cover: &Cover, budget: usize) -> anyhow::Result<FunctionRing> {
    let frame = CoverFrame::canonical(cover)?;
    Ok(parametrized_ring(&frame, budget)?)
}

pub fn ring(
    spec: &str,
    cover: &str,
    method: Method,
    dump: Option<&Path>,
    cfg: &RunConfig,
) -> anyhow::Result<Report<RingReport>> {
    let g = build_group(spec)?;
    let cover = resolve_cover(&g, cover)?;
    let limits = OracleLimits {
        element_budget: cfg.element_budget,
        ..OracleLimits::default()
    };
    let (ring, agree, diff) = match method {
        Method::Oracle => (brute_force_ring(&cover, &limits)?, None, None),
        Method::Param => (param_ring(&cover, cfg.element_budget)?, None, None),
        Method::Both => {
            let oracle = brute_force_ring(&cover, &limits)?;
            let param = param_ring(&cover, cfg.element_budget)?;
            let diff = oracle.first_difference(&param);
            (oracle, Some(diff.is_none()), diff.map(|f| f.values()))
        }
    };
    let axioms = verify_ring_axioms(&ring);
    if let Some(path) = dump {
        let json = serde_json::to_string(&ring.dump())?;
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    let data = RingReport {
        group: spec.to_string(),
        cells: cells_of(&cover),
        star: cover.is_star_cover(),
        method: format!("{method:?}").to_lowercase(),
        order: ring.order(),
        methods_agree: agree,
        first_difference: diff,
        axioms,
        dump: dump.map(|p| p.display().to_string()),
    };
    let names: Vec<String> = data.cells.iter().map(cell_name).collect();
    let mut text = format!("{spec} with cells {}\n", names.join(" "));
    writeln!(text, "|R_C(G)| = {} ({})", data.order, data.method)?;
    match (&data.methods_agree, &data.first_difference) {
        (Some(true), _) => writeln!(text, "methods agree")?,
        (Some(false), Some(f)) => writeln!(text, "methods DISAGREE, first differing function {f:?}")?,
        _ => {}
    }
    let a = &data.axioms;
    writeln!(
        text,
        "ring axioms: {} ({}, {} pairs, {} triples)",
        if a.passed { "PASS" } else { "FAIL" },
        if a.exhaustive { "exhaustive" } else { "sampled" },
        a.pairs_checked,
        a.triples_checked
    )?;
    if let Some(msg) = &a.failure {
        writeln!(text, "  {msg}")?;
    }
    if let Some(p) = &data.dump {
        writeln!(text, "elements written to {p}")?;
    }
    let code = if data.axioms.passed && data.methods_agree != Some(false) { 0 } else { 2 };
    Ok(Report { data, text, code })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub group: String,
    pub cells: Vec<SubgroupDescriptor>,
    pub decomposition: DecompositionReport,
    pub certificate: Certificate,
}

pub fn decompose_cmd(spec: &str, cover: &str, cfg: &RunConfig) -> anyhow::Result<Report<DecomposeReport>> {
    let g = build_group(spec)?;
    let cover = resolve_cover(&g, cover)?;
    let frame = CoverFrame::canonical(&cover)?;
    let dec = decompose(&frame)?;
    let ring = parametrized_ring(&frame, cfg.element_budget)?;
    let certificate = certify_isomorphism(&ring, &dec);
    let data = DecomposeReport {
        group: spec.to_string(),
        cells: cells_of(&cover),
        decomposition: dec.report(),
        certificate,
    };
    let d = &data.decomposition;
    let mut text = format!("{spec}: |R_C(G)| = {}, {}\n", d.order, plural(d.factors.len(), "factor", "factors"));
    for (i, f) in d.factors.iter().enumerate() {
        match f {
            FactorReport::M2 { p } => writeln!(text, "factor {}: M_2(Z_{p}), order {}", i + 1, p.pow(4))?,
            FactorReport::Subdirect {
                m,
                n,
                attachments,
                padding,
                order,
                lattices,
            } => {
                writeln!(
                    text,
                    "factor {}: subdirect, m = {m}, n = {n}, attachments {attachments:?}, padding {padding}, order {order}",
                    i + 1
                )?;
                for l in lattices {
                    writeln!(
                        text,
                        "  lattice at position {}: phi = {}, node orders {:?}",
                        l.position + 1,
                        l.summary.phi,
                        l.summary.orders
                    )?;
                }
            }
        }
    }
    let c = &data.certificate;
    let how = if c.exhaustive {
        format!("exhaustive, {} pairs", c.pairs_checked)
    } else {
        format!("{} sampled pairs, seed {:#x}", c.pairs_checked, c.seed.unwrap_or_default())
    };
    writeln!(text, "certificate: {} ({how})", if c.passed { "PASS" } else { "FAIL" })?;
    if let Some(msg) = &c.failure {
        writeln!(text, "  {msg}")?;
    }
    let code = if c.passed { 0 } else { 2 };
    Ok(Report { data, text, code })
}

pub fn simple(target: &str, cover: &str, cfg: &RunConfig) -> anyhow::Result<Report<SimplicityReport>> {
    let limit = cfg.element_budget as u128;
    let data = match parse_target(target)? {
        Some(RingTarget::M2 { p }) => is_simple(&M2Ring { p }, target, limit)?,
        Some(RingTarget::Zn { n }) => is_simple(&ZnRing { n }, target, limit)?,
        Some(RingTarget::Block { spec, p }) => is_simple(&block_ring(spec, p)?, target, limit)?,
        None => {
            let g = build_group(target)?;
            let c = resolve_cover(&g, cover)?;
            cover_simplicity(&c, PRINCIPAL_IDEAL_LIMIT.min(limit))?
        }
    };
    let mut text = format!(
        "{}: {}, order {}",
        data.ring,
        if data.is_simple { "simple" } else { "not simple" },
        data.order
    );
    if data.is_simple {
        write!(text, ", {}", data.classification)?;
    }
    writeln!(text)?;
    if let Some(w) = &data.witness {
        writeln!(text, "witness: {}, order {}", w.description, w.ideal_order)?;
        if !w.generator.is_empty() {
            writeln!(text, "  generator {}", w.generator)?;
        }
    }
    Ok(Report { data, text, code: 0 })
}

pub fn verify_paper() -> Report<ExampleReport> {
    let data = verify_paper_examples();
    let mut text = String::new();
    for c in &data.checks {
        let tag = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Discrepancy => "DISCREPANCY",
        };
        let _ = writeln!(text, "Example {}: {tag}", c.example);
        let _ = writeln!(text, "  expected {}", c.expected);
        let _ = writeln!(text, "  observed {}", c.observed);
        let _ = writeln!(text, "  {}", c.interpretation);
    }
    let _ = writeln!(
        text,
        "{} checks, {} failed, {} discrepancies",
        data.checks.len(),
        data.failures,
        data.discrepancies.len()
    );
    let code = data.exit_code() as u8;
    Report { data, text, code }
}
