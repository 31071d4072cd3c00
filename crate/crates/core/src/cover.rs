//! Covers of a group by abelian subgroups: validation, enumeration of (*)
//! covers, and the C0-C3 cell classification.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupSpec};
use crate::mask::Mask;
use crate::subgroup::Subgroup;

/// Number of distinct order-`p` subgroups a cell meets other cells in:
/// none, one, two, or at least three.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CellClass {
    C0,
    C1,
    C2,
    C3,
}

impl std::fmt::Display for CellClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A validated abelian cover.
#[derive(Clone, Debug)]
pub struct Cover {
    group: Arc<FiniteGroup>,
    cells: Vec<Subgroup>,
    classes: Vec<CellClass>,
    star_violation: Option<String>,
}

impl PartialEq for Cover {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.cells == other.cells
    }
}
impl Eq for Cover {}

/// Checks that `cells` is an abelian cover of `group` and records whether it
/// is a (*) cover.
///
/// A (*) cover has only maximal cyclic or elementary `p^2` cells and contains
/// every maximal cyclic subgroup of order greater than `p`.
pub fn validate_cover(group: Arc<FiniteGroup>, cells: Vec<Subgroup>) -> Result<Cover> {
    for (i, c) in cells.iter().enumerate() {
        if let Some(j) = cells[..i].iter().position(|d| d == c) {
            return Err(Error::DuplicateCell { cell: i, other: j });
        }
    }
    let union = cells.iter().fold(Mask::EMPTY, |acc, c| acc.or(&c.members()));
    if let Some(uncovered) = Mask::full(group.order()).and_not(&union).first() {
        return Err(Error::NotACover { uncovered });
    }
    if let Some(cell) = cells.iter().position(|c| !c.is_abelian()) {
        return Err(Error::NonAbelianCell { cell });
    }
    let star_violation = star_violation(&group, &cells);
    let classes = (0..cells.len()).map(|i| class_of(&group, &cells, i)).collect();
    Ok(Cover {
        group,
        cells,
        classes,
        star_violation,
    })
}

fn star_violation(g: &FiniteGroup, cells: &[Subgroup]) -> Option<String> {
    let maximal = g.maximal_cyclic_subgroups();
    for (i, c) in cells.iter().enumerate() {
        if !(c.is_elementary_p2() || (c.is_cyclic() && maximal.contains(c))) {
            return Some(format!(
                "cell {i} (order {}) is neither maximal cyclic nor elementary of order p^2",
                c.order()
            ));
        }
    }
    let p = g.prime();
    for m in maximal.iter().filter(|m| m.order() > p) {
        if !cells.contains(m) {
            return Some(format!(
                "maximal cyclic subgroup generated by {} (order {}) is not a cell",
                m.generator(g).unwrap(),
                m.order()
            ));
        }
    }
    None
}

fn profile_of(g: &FiniteGroup, cells: &[Subgroup], i: usize) -> Vec<Subgroup> {
    let p = g.prime();
    let set: BTreeSet<Subgroup> = cells
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, d)| g.intersect(&cells[i], d))
        .filter(|k| k.order() == p)
        .collect();
    set.into_iter().collect()
}

fn class_of(g: &FiniteGroup, cells: &[Subgroup], i: usize) -> CellClass {
    let meets_trivially = cells
        .iter()
        .enumerate()
        .all(|(j, d)| j == i || g.intersect(&cells[i], d).is_trivial());
    if meets_trivially {
        return CellClass::C0;
    }
    match profile_of(g, cells, i).len() {
        0 | 1 => CellClass::C1,
        2 => CellClass::C2,
        _ => CellClass::C3,
    }
}

impl Cover {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn cells(&self) -> &[Subgroup] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Always true for a constructed cover; non-abelian cells are rejected.
    pub fn is_abelian_cover(&self) -> bool {
        true
    }

    pub fn is_star_cover(&self) -> bool {
        self.star_violation.is_none()
    }

    pub fn star_violation(&self) -> Option<&str> {
        self.star_violation.as_deref()
    }

    /// Fails with `NotStarCover` unless this is a (*) cover.
    pub fn require_star(&self) -> Result<()> {
        match &self.star_violation {
            None => Ok(()),
            Some(msg) => Err(Error::NotStarCover(msg.clone())),
        }
    }

    pub fn classes(&self) -> &[CellClass] {
        &self.classes
    }

    pub fn class(&self, cell: usize) -> CellClass {
        self.classes[cell]
    }

    /// Distinct order-`p` subgroups arising as `cell ∩ other cell`, sorted.
    pub fn intersection_profile(&self, cell: usize) -> Vec<Subgroup> {
        profile_of(&self.group, &self.cells, cell)
    }

    /// Index of the cell equal to `s`, if any.
    pub fn position(&self, s: &Subgroup) -> Option<usize> {
        self.cells.iter().position(|c| c == s)
    }

    /// Cells containing element `x`.
    pub fn cells_containing(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.contains(x))
            .map(|(i, _)| i)
    }

    /// A cover is irredundant when no cell can be dropped while still covering.
    pub fn is_irredundant(&self) -> bool {
        (0..self.cells.len()).all(|i| {
            let rest = self
                .cells
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Mask::EMPTY, |acc, (_, c)| acc.or(&c.members()));
            !self.cells[i].members().is_subset(&rest)
        })
    }

    pub fn to_file(&self, group: &str) -> CoverFile {
        CoverFile {
            group: group.to_string(),
            cells: self
                .cells
                .iter()
                .map(|c| CellSpec::Members(c.elements().collect()))
                .collect(),
        }
    }
}

pub fn classify_cells(cover: &Cover) -> &[CellClass] {
    cover.classes()
}

pub fn intersection_profile(cover: &Cover, cell: usize) -> Vec<Subgroup> {
    cover.intersection_profile(cell)
}

/// Result of a budgeted enumeration.
#[derive(Clone, Debug)]
pub struct CoverEnumeration {
    pub covers: Vec<Cover>,
    /// Number of leading entries of `covers` that are irredundant.
    pub irredundant: usize,
    /// True when the budget or the work cap stopped the search early.
    pub truncated: bool,
}

/// Irredundant covers collected before sorting, whatever the budget.
pub const MINIMAL_COVER_CAP: usize = 1 << 16;

/// Upper bound on subsets examined while listing redundant covers.
pub const ENUMERATION_WORK_CAP: u64 = 1 << 22;

/// Enumerates (*) covers: all forced cells plus a subset of the candidate
/// cells covering what the forced cells miss.
///
/// Irredundant covers come first, then redundant ones; each group is sorted by
/// cell count and then lexicographically by canonical cell order.
pub fn enumerate_star_covers(group: &Arc<FiniteGroup>, budget: usize) -> Result<CoverEnumeration> {
    if budget == 0 {
        return Err(Error::SizeLimit {
            what: "cover enumeration budget".into(),
            estimate: 1,
            budget: 0,
        });
    }
    let g = group.as_ref();
    let p = g.prime();
    let maximal = g.maximal_cyclic_subgroups();
    let forced: Vec<Subgroup> = maximal.iter().filter(|m| m.order() > p).copied().collect();
    let mut candidates: Vec<Subgroup> = maximal
        .iter()
        .filter(|m| m.order() == p)
        .copied()
        .chain(g.elementary_p2_subgroups())
        .collect();
    candidates.sort();
    if g.order() == 1 {
        // The trivial subgroup is the lone maximal cyclic subgroup.
        let cover = validate_cover(group.clone(), vec![g.trivial_subgroup()])?;
        return Ok(CoverEnumeration {
            covers: vec![cover],
            irredundant: 1,
            truncated: false,
        });
    }
    let covered = forced.iter().fold(Mask::EMPTY, |acc, c| acc.or(&c.members()));
    let remaining = Mask::full(g.order()).and_not(&covered);
    let restricted: Vec<Mask> = candidates.iter().map(|c| c.members().and(&remaining)).collect();

    // Collect past the budget so that a budgeted listing is a prefix of the
    // full one.
    let mut search = MinimalCovers {
        sets: &restricted,
        found: Vec::new(),
        budget: budget.max(MINIMAL_COVER_CAP),
        truncated: false,
    };
    search.run(remaining, &mut Vec::new(), &mut vec![false; restricted.len()]);
    let mut minimal = search.found;
    let mut truncated = search.truncated;
    minimal.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    if minimal.len() > budget {
        minimal.truncate(budget);
        truncated = true;
    }

    let minimal_set: BTreeSet<Vec<usize>> = minimal.iter().cloned().collect();
    let mut redundant = Vec::new();
    if !truncated && minimal.len() < budget {
        let min_size = minimal.first().map_or(0, Vec::len);
        let mut work = 0u64;
        'sizes: for k in min_size.max(1)..=restricted.len() {
            let mut combo: Vec<usize> = (0..k).collect();
            loop {
                work += 1;
                if work > ENUMERATION_WORK_CAP {
                    truncated = true;
                    break 'sizes;
                }
                let union = combo.iter().fold(Mask::EMPTY, |acc, &i| acc.or(&restricted[i]));
                if remaining.is_subset(&union) && !minimal_set.contains(&combo) {
                    if minimal.len() + redundant.len() >= budget {
                        truncated = true;
                        break 'sizes;
                    }
                    redundant.push(combo.clone());
                }
                if !next_combination(&mut combo, restricted.len()) {
                    break;
                }
            }
        }
    }

    let irredundant = minimal.len();
    let covers = minimal
        .into_iter()
        .chain(redundant)
        .map(|chosen| {
            let mut cells: Vec<Subgroup> = forced
                .iter()
                .copied()
                .chain(chosen.iter().map(|&i| candidates[i]))
                .collect();
            cells.sort();
            validate_cover(group.clone(), cells)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverEnumeration {
        covers,
        irredundant,
        truncated,
    })
}

/// Advances `combo` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Backtracking over minimal set covers: branch on the smallest uncovered
/// element, excluding earlier siblings from later branches.
struct MinimalCovers<'a> {
    sets: &'a [Mask],
    found: Vec<Vec<usize>>,
    budget: usize,
    truncated: bool,
}

impl MinimalCovers<'_> {
    fn run(&mut self, uncovered: Mask, chosen: &mut Vec<usize>, excluded: &mut Vec<bool>) {
        if self.truncated {
            return;
        }
        let Some(u) = uncovered.first() else {
            let mut sorted = chosen.clone();
            sorted.sort();
            if self.found.len() >= self.budget {
                self.truncated = true;
            } else {
                self.found.push(sorted);
            }
            return;
        };
        let options: Vec<usize> = (0..self.sets.len())
            .filter(|&i| !excluded[i] && self.sets[i].contains(u))
            .collect();
        let mut newly_excluded = Vec::new();
        for i in options {
            chosen.push(i);
            if self.all_have_private(chosen) {
                self.run(uncovered.and_not(&self.sets[i]), chosen, excluded);
            }
            chosen.pop();
            excluded[i] = true;
            newly_excluded.push(i);
        }
        for i in newly_excluded {
            excluded[i] = false;
        }
    }

    /// Every chosen set still covers an element no other chosen set covers.
    fn all_have_private(&self, chosen: &[usize]) -> bool {
        chosen.iter().enumerate().all(|(a, &i)| {
            let others = chosen
                .iter()
                .enumerate()
                .filter(|&(b, _)| b != a)
                .fold(Mask::EMPTY, |acc, (_, &j)| acc.or(&self.sets[j]));
            !self.sets[i].is_subset(&others)
        })
    }
}

/// One cell in a `.cov` file: an explicit member list or generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CellSpec {
    Members(Vec<usize>),
    Gens { gens: Vec<usize> },
}

/// On-disk cover description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFile {
    pub group: String,
    pub cells: Vec<CellSpec>,
}

impl CoverFile {
    /// Builds the group (resolving table paths against `base`) and the cover.
    pub fn resolve(&self, base: Option<&Path>) -> Result<Cover> {
        let mut spec: GroupSpec = self.group.parse()?;
        if let (GroupSpec::Table(path), Some(base)) = (&spec, base) {
            if path.is_relative() {
                spec = GroupSpec::Table(base.join(path));
            }
        }
        let group = Arc::new(spec.build()?);
        self.resolve_in(group)
    }

    /// Builds the cover against an already constructed group.
    pub fn resolve_in(&self, group: Arc<FiniteGroup>) -> Result<Cover> {
        let n = group.order();
        let mut cells = Vec::with_capacity(self.cells.len());
        for (i, spec) in self.cells.iter().enumerate() {
            let indices = match spec {
                CellSpec::Members(v) | CellSpec::Gens { gens: v } => v,
            };
            if let Some(&x) = indices.iter().find(|&&x| x >= n) {
                return Err(Error::NotASubgroup {
                    cell: i,
                    reason: format!("element {x} out of range for order {n}"),
                });
            }
            let cell = match spec {
                CellSpec::Gens { gens } => group.closure(gens),
                CellSpec::Members(members) => group
                    .subgroup_from_mask(Mask::from_indices(members.iter().copied()))
                    .map_err(|e| match e {
                        Error::NotASubgroup { reason, .. } => Error::NotASubgroup { cell: i, reason },
                        other => other,
                    })?,
            };
            cells.push(cell);
        }
        validate_cover(group, cells)
    }
}

/// Reads a `.cov` JSON file.
pub fn load_cover(path: &Path) -> Result<Cover> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: PathBuf::from(path),
        source,
    })?;
    let file: CoverFile = serde_json::from_str(&text)?;
    file.resolve(path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    fn q8_cover() -> Cover {
        let q = arc(FiniteGroup::quaternion8());
        let cells = vec![q.cyclic_subgroup(1), q.cyclic_subgroup(4), q.cyclic_subgroup(5)];
        validate_cover(q, cells).unwrap()
    }

    #[test]
    fn q8_cover_is_star_and_c1() {
        let c = q8_cover();
        assert!(c.is_star_cover());
        assert!(c.classes().iter().all(|&k| k == CellClass::C1));
        let center = c.group().cyclic_subgroup(2);
        for i in 0..3 {
            assert_eq!(c.intersection_profile(i), vec![center]);
        }
    }

    #[test]
    fn q8_missing_cell() {
        let q = arc(FiniteGroup::quaternion8());
        let cells = vec![q.cyclic_subgroup(1), q.cyclic_subgroup(4)];
        // k = xy has index 5; its inverse x^3 y has index 7.
        assert!(matches!(validate_cover(q, cells), Err(Error::NotACover { uncovered: 5 })));
    }

    #[test]
    fn rejects_nonabelian_and_duplicate() {
        let q = arc(FiniteGroup::quaternion8());
        let whole = q.whole();
        assert!(matches!(
            validate_cover(q.clone(), vec![whole]),
            Err(Error::NonAbelianCell { cell: 0 })
        ));
        let i = q.cyclic_subgroup(1);
        let cells = vec![i, q.cyclic_subgroup(4), q.cyclic_subgroup(5), i];
        assert!(matches!(
            validate_cover(q, cells),
            Err(Error::DuplicateCell { cell: 3, other: 0 })
        ));
    }

    #[test]
    fn z4_z2_star_cover() {
        let g = arc(FiniteGroup::direct_product(
            &FiniteGroup::cyclic(2, 2).unwrap(),
            &FiniteGroup::cyclic(2, 1).unwrap(),
        ));
        let e = |a, b| FiniteGroup::product_index(a, b, 2);
        let cells = vec![
            g.cyclic_subgroup(e(1, 0)),
            g.cyclic_subgroup(e(1, 1)),
            g.closure(&[e(2, 0), e(0, 1)]),
        ];
        let cover = validate_cover(g.clone(), cells.clone()).unwrap();
        assert!(cover.is_star_cover());
        // Union oracle: every one of the 8 elements lies in some cell.
        assert!((0..8).all(|x| cells.iter().any(|c| c.contains(x))));
        // Dropping a forced cell breaks the (*) property, not the cover.
        let mut extra = cells.clone();
        extra.push(g.cyclic_subgroup(e(0, 1)));
        let reordered = vec![g.cyclic_subgroup(e(1, 0)), g.closure(&[e(2, 0), e(0, 1)]), g.cyclic_subgroup(e(1, 1))];
        assert!(validate_cover(g.clone(), reordered).unwrap().is_star_cover());
        assert!(validate_cover(g.clone(), extra).unwrap().is_star_cover());
        let whole = vec![g.whole()];
        let c = validate_cover(g, whole).unwrap();
        assert!(!c.is_star_cover());
        assert!(c.require_star().is_err());
    }

    #[test]
    fn enumeration_counts() {
        let q = arc(FiniteGroup::quaternion8());
        let e = enumerate_star_covers(&q, 100).unwrap();
        assert_eq!(e.covers.len(), 1);
        assert_eq!(e.covers[0], {
            let mut v = q8_cover().cells().to_vec();
            v.sort();
            validate_cover(q.clone(), v).unwrap()
        });
        let c8 = arc(FiniteGroup::cyclic(2, 3).unwrap());
        let e = enumerate_star_covers(&c8, 100).unwrap();
        assert_eq!(e.covers.len(), 1);
        assert_eq!(e.covers[0].cells(), &[c8.whole()]);
        let z4z2 = arc(FiniteGroup::direct_product(
            &FiniteGroup::cyclic(2, 2).unwrap(),
            &FiniteGroup::cyclic(2, 1).unwrap(),
        ));
        let e = enumerate_star_covers(&z4z2, 100).unwrap();
        assert_eq!((e.covers.len(), e.irredundant, e.truncated), (5, 2, false));
        let d8 = arc(FiniteGroup::dihedral8());
        assert_eq!(enumerate_star_covers(&d8, 1000).unwrap().covers.len(), 25);
        let trivial = arc(FiniteGroup::cyclic(2, 0).unwrap());
        assert_eq!(enumerate_star_covers(&trivial, 1).unwrap().covers.len(), 1);
    }

    /// Oracle: all subsets of the candidates, filtered by covering.
    fn brute_force_count(g: &Arc<FiniteGroup>) -> (usize, usize) {
        let p = g.prime();
        let maximal = g.maximal_cyclic_subgroups();
        let forced: Vec<_> = maximal.iter().filter(|m| m.order() > p).copied().collect();
        let cands: Vec<_> = maximal
            .iter()
            .filter(|m| m.order() == p)
            .copied()
            .chain(g.elementary_p2_subgroups())
            .collect();
        let mut total = 0;
        let mut irredundant = 0;
        for bits in 0u32..(1 << cands.len()) {
            let cells: Vec<_> = forced
                .iter()
                .copied()
                .chain((0..cands.len()).filter(|i| bits >> i & 1 == 1).map(|i| cands[i]))
                .collect();
            if let Ok(c) = validate_cover(g.clone(), cells) {
                assert!(c.is_star_cover());
                total += 1;
                let removable = (0..cands.len()).filter(|i| bits >> i & 1 == 1).any(|i| {
                    let rest: Vec<_> = c.cells().iter().filter(|x| **x != cands[i]).copied().collect();
                    validate_cover(g.clone(), rest).is_ok()
                });
                if !removable {
                    irredundant += 1;
                }
            }
        }
        (total, irredundant)
    }

    #[test]
    fn enumeration_matches_subset_oracle() {
        let groups = [
            FiniteGroup::elementary(3, 2).unwrap(),
            FiniteGroup::elementary(2, 3).unwrap(),
            FiniteGroup::dihedral8(),
            FiniteGroup::direct_product(&FiniteGroup::quaternion8(), &FiniteGroup::cyclic(2, 1).unwrap()),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2, 3).unwrap(), &FiniteGroup::cyclic(2, 1).unwrap()),
        ];
        for g in groups {
            let g = arc(g);
            let e = enumerate_star_covers(&g, 1 << 20).unwrap();
            assert!(!e.truncated);
            assert_eq!((e.covers.len(), e.irredundant), brute_force_count(&g));
            let distinct: BTreeSet<Vec<Subgroup>> = e.covers.iter().map(|c| c.cells().to_vec()).collect();
            assert_eq!(distinct.len(), e.covers.len());
            assert!(e.covers.iter().all(|c| c.is_star_cover()));
            assert!(e.covers[..e.irredundant].iter().all(Cover::is_irredundant));
            assert!(e.covers[e.irredundant..].iter().all(|c| !c.is_irredundant()));
            for part in [&e.covers[..e.irredundant], &e.covers[e.irredundant..]] {
                for w in part.windows(2) {
                    let key = |c: &Cover| (c.len(), c.cells().to_vec());
                    assert!(key(&w[0]) < key(&w[1]));
                }
            }
        }
    }

    #[test]
    fn enumeration_budget_truncates() {
        let g = arc(FiniteGroup::elementary(2, 3).unwrap());
        let e = enumerate_star_covers(&g, 3).unwrap();
        assert!(e.truncated);
        assert_eq!(e.covers.len(), 3);
    }

    #[test]
    fn heisenberg_has_maximal_subgroup_cover() {
        let h = arc(FiniteGroup::heisenberg(3).unwrap());
        let e = enumerate_star_covers(&h, 64).unwrap();
        let maxes: Vec<Subgroup> = h.elementary_p2_subgroups().into_iter().filter(|s| h.center().is_subgroup_of(s)).collect();
        assert_eq!(maxes.len(), 4);
        let mut target = maxes.clone();
        target.sort();
        let found = e.covers.iter().find(|c| c.cells() == target.as_slice()).expect("4-cell cover");
        for i in 0..4 {
            assert_eq!(found.intersection_profile(i), vec![h.center()]);
        }
    }

    #[test]
    fn single_cell_is_c0() {
        let g = arc(FiniteGroup::elementary(2, 2).unwrap());
        let c = validate_cover(g.clone(), vec![g.whole()]).unwrap();
        assert_eq!(c.classes(), &[CellClass::C0]);
        assert!(c.intersection_profile(0).is_empty());
        assert!(c.is_star_cover());
    }

    #[test]
    fn cov_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q8.cov");
        let text = r#"{"group": "Q8", "cells": [{"gens": [1]}, [0, 2, 4, 6], {"gens": [5]}]}"#;
        std::fs::write(&path, text).unwrap();
        let c = load_cover(&path).unwrap();
        assert!(c.is_star_cover());
        assert_eq!(c.len(), 3);
        let back: CoverFile = serde_json::from_str(&serde_json::to_string(&c.to_file("Q8")).unwrap()).unwrap();
        assert_eq!(back.resolve(None).unwrap(), c);

        std::fs::write(&path, r#"{"group": "Q8", "cells": [[0, 1]]}"#).unwrap();
        assert!(matches!(load_cover(&path), Err(Error::NotASubgroup { cell: 0, .. })));
    }
}
