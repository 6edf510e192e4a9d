//! Braid graphs: one vertex per triangle, one edge per diagonal, the edge
//! of diagonal `d_i` carrying the label `i`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::SetPartition;
use crate::triangulation::MultiTriangulation;

/// A forest on vertices `1..=vertex_count` with labelled edges.
///
/// Graphs built by [`BraidGraph::of`] have `n` edges and `n + r` vertices,
/// component `j` occupying the consecutive block `blocks[j]`. Graphs
/// obtained with [`BraidGraph::restrict`] keep the vertex set and blocks of
/// the ambient graph and drop edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidGraph {
    #[serde(rename = "vertices")]
    vertex_count: usize,
    edges: BTreeMap<usize, (usize, usize)>,
    blocks: Vec<Vec<usize>>,
}

impl BraidGraph {
    /// The braid graph of a labelled triangulation. Within each component
    /// the triangles are numbered in lexicographic order of their vertex
    /// triples.
    pub fn of(mt: &MultiTriangulation) -> BraidGraph {
        let mut edges = BTreeMap::new();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (c, t) in mt.components().iter().enumerate() {
            let triangles = t.triangles();
            for d in t.diagonals() {
                let (a, b) = d.ends();
                let ends: Vec<usize> = triangles
                    .iter()
                    .enumerate()
                    .filter(|(_, tri)| tri.contains(&a) && tri.contains(&b))
                    .map(|(k, _)| offset + k + 1)
                    .collect();
                let label = mt.label_of(c, d).expect("labelled diagonal");
                edges.insert(label, (ends[0], ends[1]));
            }
            blocks.push((offset + 1..=offset + triangles.len()).collect());
            offset += triangles.len();
        }
        BraidGraph {
            vertex_count: offset,
            edges,
            blocks,
        }
    }

    /// Validated constructor for graphs read from elsewhere.
    pub fn new(
        vertex_count: usize,
        edges: BTreeMap<usize, (usize, usize)>,
        blocks: Vec<Vec<usize>>,
    ) -> Result<BraidGraph> {
        for (&label, &(x, y)) in &edges {
            if x == 0 || y == 0 || x > vertex_count || y > vertex_count || x == y {
                return Err(Error::Parse(format!("edge t{label} = {{{x}, {y}}} is invalid")));
            }
        }
        let mut seen = vec![false; vertex_count + 1];
        for &v in blocks.iter().flatten() {
            if v == 0 || v > vertex_count || std::mem::replace(&mut seen[v], true) {
                return Err(Error::Parse(format!("block vertex {v} is invalid")));
            }
        }
        if seen[1..].iter().any(|&s| !s) {
            return Err(Error::Parse("blocks do not cover the vertices".into()));
        }
        Ok(BraidGraph {
            vertex_count,
            edges: edges
                .into_iter()
                .map(|(l, (x, y))| (l, (x.min(y), x.max(y))))
                .collect(),
            blocks,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of the edge labelled `label`, smaller first.
    pub fn edge(&self, label: usize) -> Option<(usize, usize)> {
        self.edges.get(&label).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, (usize, usize))> + '_ {
        self.edges.iter().map(|(&l, &e)| (l, e))
    }

    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.keys().copied()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Valency of each vertex, index `v - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut degree = vec![0; self.vertex_count];
        for &(x, y) in self.edges.values() {
            degree[x - 1] += 1;
            degree[y - 1] += 1;
        }
        degree
    }

    /// The graph `Γ_I`: same vertices, only the edges labelled by `keep`.
    pub fn restrict(&self, keep: &[usize]) -> BraidGraph {
        BraidGraph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .filter(|(l, _)| keep.contains(l))
                .map(|(&l, &e)| (l, e))
                .collect(),
            blocks: self.blocks.clone(),
        }
    }

    /// Vertex sets of the connected components of this graph.
    pub fn components(&self) -> SetPartition {
        SetPartition::from_pairs(self.vertex_count, self.edges.values().copied())
    }

    /// `ρ_I`: the components of `Γ_I`.
    pub fn rho(&self, keep: &[usize]) -> SetPartition {
        SetPartition::from_pairs(
            self.vertex_count,
            self.edges
                .iter()
                .filter(|(l, _)| keep.contains(l))
                .map(|(_, &e)| e),
        )
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count + 1];
        for (&l, &(x, y)) in &self.edges {
            adj[x].push((y, l));
            adj[y].push((x, l));
        }
        adj
    }

    /// Edge labels along the path from `x` to `y`, or `None` when they are
    /// in different components. Paths in a forest are unique.
    pub fn tree_path(&self, x: usize, y: usize) -> Option<Vec<usize>> {
        if x == 0 || y == 0 || x > self.vertex_count || y > self.vertex_count {
            return None;
        }
        let adj = self.adjacency();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.vertex_count + 1];
        let mut seen = vec![false; self.vertex_count + 1];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(v) = queue.pop_front() {
            if v == y {
                break;
            }
            for &(w, l) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, l));
                    queue.push_back(w);
                }
            }
        }
        if !seen[y] {
            return None;
        }
        let mut labels = Vec::new();
        let mut v = y;
        while let Some((p, l)) = parent[v] {
            labels.push(l);
            v = p;
        }
        labels.reverse();
        Some(labels)
    }

    /// True if the graph has no cycles.
    pub fn is_forest(&self) -> bool {
        self.components().parts().len() + self.edges.len() == self.vertex_count
    }

    /// Renames edge labels by `map(old) = new`.
    pub fn relabel_edges(&self, map: impl Fn(usize) -> usize) -> BraidGraph {
        BraidGraph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|(&l, &e)| (map(l), e)).collect(),
            blocks: self.blocks.clone(),
        }
    }

    /// Renames vertex `v` to `perm[v - 1]`.
    pub fn relabel_vertices(&self, perm: &[usize]) -> BraidGraph {
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut b: Vec<usize> = b.iter().map(|&v| perm[v - 1]).collect();
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        BraidGraph {
            vertex_count: self.vertex_count,
            edges: self
                .edges
                .iter()
                .map(|(&l, &(x, y))| {
                    let (a, b) = (perm[x - 1], perm[y - 1]);
                    (l, (a.min(b), a.max(b)))
                })
                .collect(),
            blocks,
        }
    }

    /// A vertex bijection `f` (`f[v - 1]` the image of `v`) carrying every
    /// edge of `self` onto the edge of `other` with the same label, if one
    /// exists.
    ///
    /// In a forest with distinct edge labels a non-isolated vertex is
    /// determined by its set of incident labels, up to swapping the two
    /// ends of a single-edge component, so matching those sets suffices.
    pub fn labeled_isomorphism(&self, other: &BraidGraph) -> Option<Vec<usize>> {
        if self.vertex_count != other.vertex_count || self.labels().ne(other.labels()) {
            return None;
        }
        let incident = |g: &BraidGraph| {
            let mut sets: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count + 1];
            for (&l, &(x, y)) in &g.edges {
                sets[x].push(l);
                sets[y].push(l);
            }
            sets
        };
        let mine = incident(self);
        let theirs = incident(other);
        let mut by_set: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
        for v in (1..=other.vertex_count).rev() {
            by_set.entry(&theirs[v]).or_default().push(v);
        }
        let mut image = Vec::with_capacity(self.vertex_count);
        for set in &mine[1..] {
            image.push(by_set.get_mut(set.as_slice())?.pop()?);
        }
        let ok = self.edges.iter().all(|(l, &(x, y))| {
            let (a, b) = (image[x - 1], image[y - 1]);
            other.edges[l] == (a.min(b), a.max(b))
        });
        ok.then_some(image)
    }

    /// Graphviz graph with edge labels `t<i>`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph braid {\n");
        for v in 1..=self.vertex_count {
            out.push_str(&format!("  {v};\n"));
        }
        for (l, (x, y)) in self.edges() {
            out.push_str(&format!("  {x} -- {y} [label=\"t{l}\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}
