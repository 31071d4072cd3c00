//! The 3-intersecting graph on order-`p` subgroups and its components.

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::cover::{CellClass, Cover};
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;

/// Vertices are all subgroups of order `p`; two are adjacent when some C3
/// cell contains both.
#[derive(Clone, Debug)]
pub struct ThreeIntersectGraph {
    vertices: Vec<Subgroup>,
    adjacency: Vec<Vec<bool>>,
    component_of: Vec<usize>,
    components: Vec<Vec<usize>>,
}

pub fn build_graph(cover: &Cover) -> ThreeIntersectGraph {
    let g = cover.group();
    let vertices = g.subgroups_of_order_p();
    let n = vertices.len();
    let mut adjacency = vec![vec![false; n]; n];
    let mut uf = UnionFind::<usize>::new(n);
    for (cell, _) in cover
        .cells()
        .iter()
        .zip(cover.classes())
        .filter(|(_, &k)| k == CellClass::C3)
    {
        let inside: Vec<usize> = (0..n).filter(|&v| vertices[v].is_subgroup_of(cell)).collect();
        for (i, &a) in inside.iter().enumerate() {
            for &b in &inside[i + 1..] {
                adjacency[a][b] = true;
                adjacency[b][a] = true;
                uf.union(a, b);
            }
        }
    }
    // Number components in order of their smallest vertex.
    let mut root_id = vec![usize::MAX; n];
    let mut component_of = vec![0; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for (v, comp) in component_of.iter_mut().enumerate() {
        let r = uf.find(v);
        if root_id[r] == usize::MAX {
            root_id[r] = components.len();
            components.push(Vec::new());
        }
        *comp = root_id[r];
        components[root_id[r]].push(v);
    }
    ThreeIntersectGraph {
        vertices,
        adjacency,
        component_of,
        components,
    }
}

impl ThreeIntersectGraph {
    pub fn vertices(&self) -> &[Subgroup] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.adjacency[a][b])
            .collect()
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    pub fn vertex_index(&self, a: &Subgroup) -> Result<usize> {
        self.vertices.binary_search(a).map_err(|_| Error::UnknownVertex)
    }

    pub fn component_of(&self, a: &Subgroup) -> Result<usize> {
        Ok(self.component_of[self.vertex_index(a)?])
    }

    pub fn component_of_vertex(&self, v: usize) -> usize {
        self.component_of[v]
    }

    /// Vertices labelled by the smallest generating element.
    fn labels(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .map(|s| s.elements().find(|&x| x != 0).unwrap_or(0))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let labels = self.labels();
        let mut out = String::from("graph three_intersecting {\n");
        for (v, l) in labels.iter().enumerate() {
            out.push_str(&format!("  v{v} [label=\"<{l}>\"];\n"));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  v{a} -- v{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn report(&self) -> GraphReport {
        GraphReport {
            vertices: self.labels(),
            edges: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            components: self.components.clone(),
        }
    }
}

/// JSON form of the graph: vertex labels are generating elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    pub components: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cover::validate_cover;
    use crate::group::FiniteGroup;

    #[test]
    fn q8_single_vertex() {
        let q = Arc::new(FiniteGroup::quaternion8());
        let cells = vec![q.cyclic_subgroup(1), q.cyclic_subgroup(4), q.cyclic_subgroup(5)];
        let g = build_graph(&validate_cover(q, cells).unwrap());
        assert_eq!((g.vertex_count(), g.edges().len(), g.component_count()), (1, 0, 1));
    }

    #[test]
    fn klein_single_cell_isolated() {
        let k = Arc::new(FiniteGroup::elementary(2, 2).unwrap());
        let g = build_graph(&validate_cover(k.clone(), vec![k.whole()]).unwrap());
        assert_eq!((g.vertex_count(), g.edges().len(), g.component_count()), (3, 0, 3));
        assert_eq!(g.components(), &[vec![0], vec![1], vec![2]]);
        assert!(matches!(g.component_of(&k.whole()), Err(Error::UnknownVertex)));
    }

    #[test]
    fn c3_cell_joins_its_lines() {
        // Z2^3 covered by the 7 planes: every plane meets the others in its 3 lines.
        let e = Arc::new(FiniteGroup::elementary(2, 3).unwrap());
        let cells = e.elementary_p2_subgroups();
        let cover = validate_cover(e.clone(), cells).unwrap();
        assert!(cover.classes().iter().all(|&c| c == CellClass::C3));
        let g = build_graph(&cover);
        assert!(g.is_connected());
        assert_eq!(g.edges().len(), 21);
        for (a, b) in g.edges() {
            assert!(g.is_adjacent(b, a));
        }
        let dot = g.to_dot();
        assert!(dot.starts_with("graph three_intersecting {"));
        let r = g.report();
        let back: GraphReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
    }
}
