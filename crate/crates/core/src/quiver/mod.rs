//! Cluster quivers: finite directed multigraphs on `1..=n` with no loops and
//! no 2-cycles, together with mutation and the small amount of graph theory
//! the rest of the crate needs.

mod class;
mod iso;

pub(crate) use class::factorial;
pub use class::{mutation_class, mutation_class_to_depth, mutation_type_a, MutationTypeA};
pub use iso::{are_isomorphic, canonical_form};

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cluster quiver with vertices `1..=n`.
///
/// Arrows are stored as `(source, target) -> multiplicity`; the map never
/// holds a zero multiplicity and never holds both `(i, j)` and `(j, i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson", into = "QuiverJson")]
pub struct Quiver {
    n: usize,
    arrows: BTreeMap<(usize, usize), usize>,
}

impl Quiver {
    /// Builds a quiver from `(source, target, multiplicity)` triples.
    /// Repeated pairs have their multiplicities merged; zero multiplicities
    /// are dropped.
    pub fn new<I>(n: usize, arrows: I) -> Result<Quiver>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        let mut map = BTreeMap::new();
        for (s, t, m) in arrows {
            for v in [s, t] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if s == t {
                return Err(Error::LoopArrow(s));
            }
            if m > 0 {
                *map.entry((s, t)).or_insert(0) += m;
            }
        }
        for &(s, t) in map.keys() {
            if map.contains_key(&(t, s)) {
                return Err(Error::TwoCycle(s.min(t), s.max(t)));
            }
        }
        Ok(Quiver { n, arrows: map })
    }

    /// The quiver on `n` vertices with no arrows.
    pub fn empty(n: usize) -> Quiver {
        Quiver {
            n,
            arrows: BTreeMap::new(),
        }
    }

    /// The linear orientation `1 -> 2 -> ... -> n` of the path diagram.
    pub fn linear_a(n: usize) -> Quiver {
        Quiver {
            n,
            arrows: (1..n).map(|i| ((i, i + 1), 1)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arrows as `(source, target, multiplicity)` in lexicographic order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.arrows.iter().map(|(&(s, t), &m)| (s, t, m))
    }

    /// Number of distinct `(source, target)` pairs carrying arrows.
    pub fn arrow_pairs(&self) -> usize {
        self.arrows.len()
    }

    pub fn multiplicity(&self, source: usize, target: usize) -> usize {
        self.arrows.get(&(source, target)).copied().unwrap_or(0)
    }

    /// True if some arrow joins `a` and `b` in either direction.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.arrows.contains_key(&(a, b)) || self.arrows.contains_key(&(b, a))
    }

    /// True if every arrow has multiplicity one.
    pub fn is_simply_laced(&self) -> bool {
        self.arrows.values().all(|&m| m == 1)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Mutation at `v`: add `xy` arrows `u -> w` for every `u -> v -> w`,
    /// reverse the arrows at `v`, then cancel 2-cycles.
    pub fn mutate(&self, v: usize) -> Result<Quiver> {
        self.check_vertex(v)?;
        let incoming: Vec<(usize, usize)> = self
            .arrows()
            .filter(|&(_, t, _)| t == v)
            .map(|(s, _, m)| (s, m))
            .collect();
        let outgoing: Vec<(usize, usize)> = self
            .arrows()
            .filter(|&(s, _, _)| s == v)
            .map(|(_, t, m)| (t, m))
            .collect();

        let mut counts = self.arrows.clone();
        for &(u, x) in &incoming {
            for &(w, y) in &outgoing {
                *counts.entry((u, w)).or_insert(0) += x * y;
            }
        }

        counts.retain(|&(s, t), _| s != v && t != v);
        for &(u, x) in &incoming {
            counts.insert((v, u), x);
        }
        for &(w, y) in &outgoing {
            counts.insert((w, v), y);
        }

        let pairs: Vec<(usize, usize)> = counts
            .keys()
            .filter(|&&(s, t)| s < t && counts.contains_key(&(t, s)))
            .copied()
            .collect();
        for (s, t) in pairs {
            let forward = counts[&(s, t)];
            let backward = counts[&(t, s)];
            let cancel = forward.min(backward);
            for (key, left) in [((s, t), forward - cancel), ((t, s), backward - cancel)] {
                if left == 0 {
                    counts.remove(&key);
                } else {
                    counts.insert(key, left);
                }
            }
        }

        Ok(Quiver {
            n: self.n,
            arrows: counts,
        })
    }

    /// Applies mutations in sequence.
    pub fn mutate_sequence(&self, vertices: &[usize]) -> Result<Quiver> {
        vertices
            .iter()
            .try_fold(self.clone(), |q, &v| q.mutate(v))
    }

    /// Checks `mutate(mutate(q, v), v) == q`.
    pub fn mutate_is_involution_check(&self, v: usize) -> Result<bool> {
        Ok(self.mutate(v)?.mutate(v)? == *self)
    }

    /// Every chordless oriented cycle whose arrows are all simple, each
    /// reported once and rotated to start at its smallest vertex.
    pub fn chordless_oriented_simple_cycles(&self) -> Vec<Vec<usize>> {
        let mut out_simple: Vec<Vec<usize>> = vec![Vec::new(); self.n + 1];
        for (s, t, m) in self.arrows() {
            if m == 1 {
                out_simple[s].push(t);
            }
        }
        let mut cycles = Vec::new();
        let mut on_path = vec![false; self.n + 1];
        for start in 1..=self.n {
            let mut path = vec![start];
            on_path[start] = true;
            self.extend_cycle(&out_simple, &mut path, &mut on_path, &mut cycles);
            on_path[start] = false;
        }
        cycles
    }

    fn extend_cycle(
        &self,
        out_simple: &[Vec<usize>],
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        cycles: &mut Vec<Vec<usize>>,
    ) {
        let start = path[0];
        let last = *path.last().unwrap();
        for &w in &out_simple[last] {
            if w <= start || on_path[w] {
                continue;
            }
            if path.len() >= 2 {
                // w may only touch the previous vertex and, when closing, the start
                let inner = &path[1..path.len() - 1];
                if inner.iter().any(|&u| self.adjacent(u, w)) {
                    continue;
                }
                if self.adjacent(w, start) {
                    if self.multiplicity(w, start) == 1 {
                        let mut cycle = path.clone();
                        cycle.push(w);
                        cycles.push(cycle);
                    }
                    continue;
                }
            }
            path.push(w);
            on_path[w] = true;
            self.extend_cycle(out_simple, path, on_path, cycles);
            on_path[w] = false;
            path.pop();
        }
    }

    /// The full subquiver on `vertices`, relabelled `1..=k` in increasing
    /// order of the original labels. The returned map sends new vertex `i`
    /// to `map[i - 1]`.
    pub fn full_subquiver(&self, vertices: &[usize]) -> Result<(Quiver, Vec<usize>)> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            self.check_vertex(v)?;
        }
        let mut new_label = vec![0; self.n + 1];
        for (i, &v) in keep.iter().enumerate() {
            new_label[v] = i + 1;
        }
        let arrows = self
            .arrows
            .iter()
            .filter(|(&(s, t), _)| new_label[s] != 0 && new_label[t] != 0)
            .map(|(&(s, t), &m)| ((new_label[s], new_label[t]), m))
            .collect();
        Ok((
            Quiver {
                n: keep.len(),
                arrows,
            },
            keep,
        ))
    }

    /// Connected components of the underlying graph, each sorted, ordered
    /// by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut neighbours = vec![Vec::new(); self.n + 1];
        for &(s, t) in self.arrows.keys() {
            neighbours[s].push(t);
            neighbours[t].push(s);
        }
        let mut seen = vec![false; self.n + 1];
        let mut components = Vec::new();
        for root in 1..=self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut component = vec![root];
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &neighbours[v] {
                    if !seen[w] {
                        seen[w] = true;
                        component.push(w);
                        queue.push_back(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// Renames vertex `i` to `perm[i - 1]`; `perm` must be a permutation of
    /// `1..=n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Quiver> {
        let mut seen = vec![false; self.n + 1];
        if perm.len() != self.n
            || perm
                .iter()
                .any(|&v| v == 0 || v > self.n || std::mem::replace(&mut seen[v], true))
        {
            return Err(Error::InvalidPermutation(format!(
                "{perm:?} is not a permutation of 1..={}",
                self.n
            )));
        }
        Ok(Quiver {
            n: self.n,
            arrows: self
                .arrows
                .iter()
                .map(|(&(s, t), &m)| ((perm[s - 1], perm[t - 1]), m))
                .collect(),
        })
    }

    /// `self` followed by `other`, whose vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Quiver) -> Quiver {
        let shift = self.n;
        let mut arrows = self.arrows.clone();
        arrows.extend(
            other
                .arrows
                .iter()
                .map(|(&(s, t), &m)| ((s + shift, t + shift), m)),
        );
        Quiver {
            n: self.n + other.n,
            arrows,
        }
    }

    /// True if the quiver is an orientation of a disjoint union of path
    /// diagrams `A_k` (isolated vertices count as `A_1`).
    pub fn is_union_of_paths(&self) -> bool {
        if !self.is_simply_laced() {
            return false;
        }
        let mut degree = vec![0usize; self.n + 1];
        for &(s, t) in self.arrows.keys() {
            degree[s] += 1;
            degree[t] += 1;
        }
        if degree.iter().any(|&d| d > 2) {
            return false;
        }
        // a forest with max degree 2 is a union of paths
        self.connected_components()
            .iter()
            .all(|c| self.edges_within(c) + 1 == c.len())
    }

    fn edges_within(&self, component: &[usize]) -> usize {
        self.arrows
            .keys()
            .filter(|(s, _)| component.binary_search(s).is_ok())
            .count()
    }

    /// Plain-text form: first line `n`, then `source target multiplicity`
    /// per arrow.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (s, t, m) in self.arrows() {
            out.push_str(&format!("{s} {t} {m}\n"));
        }
        out
    }

    /// Parses the plain-text form. Blank lines and `#` comments are ignored;
    /// the multiplicity column may be omitted and defaults to 1.
    pub fn from_text(text: &str) -> Result<Quiver> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty quiver text".into()))?;
        let n = header
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("vertex count {header:?}: {e}")))?;
        let mut arrows = Vec::new();
        for line in lines {
            let fields: Vec<usize> = line
                .split_whitespace()
                .map(|f| f.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("arrow line {line:?}: {e}")))?;
            match fields[..] {
                [s, t] => arrows.push((s, t, 1)),
                [s, t, m] => arrows.push((s, t, m)),
                _ => return Err(Error::Parse(format!("arrow line {line:?}"))),
            }
        }
        Quiver::new(n, arrows)
    }

    /// Parses either the JSON or the plain-text form.
    pub fn parse(text: &str) -> Result<Quiver> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
        } else {
            Quiver::from_text(text)
        }
    }

    /// Graphviz digraph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for v in 1..=self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (s, t, m) in self.arrows() {
            if m == 1 {
                out.push_str(&format!("  {s} -> {t};\n"));
            } else {
                out.push_str(&format!("  {s} -> {t} [label=\"{m}\"];\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}{{", self.n)?;
        for (k, (s, t, m)) in self.arrows().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            if m == 1 {
                write!(f, "{s}->{t}")?;
            } else {
                write!(f, "{s}-{m}->{t}")?;
            }
        }
        write!(f, "}}")
    }
}

impl FromStr for Quiver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Quiver> {
        Quiver::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    n: usize,
    arrows: Vec<[usize; 3]>,
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = Error;

    fn try_from(json: QuiverJson) -> Result<Quiver> {
        Quiver::new(json.n, json.arrows.into_iter().map(|[s, t, m]| (s, t, m)))
    }
}

impl From<Quiver> for QuiverJson {
    fn from(q: Quiver) -> QuiverJson {
        QuiverJson {
            n: q.n,
            arrows: q.arrows().map(|(s, t, m)| [s, t, m]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, arrows: &[(usize, usize)]) -> Quiver {
        Quiver::new(n, arrows.iter().map(|&(s, t)| (s, t, 1))).unwrap()
    }

    fn example() -> Quiver {
        q(4, &[(2, 1), (3, 2), (1, 3), (4, 3)])
    }

    #[test]
    fn construction_validates() {
        assert_eq!(q(2, &[(1, 2)]).arrow_pairs(), 1);
        assert_eq!(Quiver::new(1, [(1, 1, 1)]), Err(Error::LoopArrow(1)));
        assert_eq!(
            Quiver::new(2, [(1, 2, 1), (2, 1, 1)]),
            Err(Error::TwoCycle(1, 2))
        );
        assert!(matches!(
            Quiver::new(2, [(1, 3, 1)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 2 })
        ));
        let merged = Quiver::new(2, [(1, 2, 1), (1, 2, 2)]).unwrap();
        assert_eq!(merged.multiplicity(1, 2), 3);
    }

    #[test]
    fn mutation_examples() {
        let linear = Quiver::linear_a(3);
        assert_eq!(linear.mutate(2).unwrap(), q(3, &[(2, 1), (3, 2), (1, 3)]));
        assert_eq!(q(2, &[(1, 2)]).mutate(2).unwrap(), q(2, &[(2, 1)]));
        let cycle = q(3, &[(1, 2), (2, 3), (3, 1)]);
        assert_eq!(cycle.mutate(1).unwrap(), q(3, &[(2, 1), (1, 3)]));
        assert!(matches!(
            cycle.mutate(4),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn mutation_multiplies_multiplicities() {
        // 1 =2=> 2 =3=> 3 gives six arrows 1 -> 3 before reversal
        let q = Quiver::new(3, [(1, 2, 2), (2, 3, 3)]).unwrap();
        let mu = q.mutate(2).unwrap();
        assert_eq!(mu.multiplicity(1, 3), 6);
        assert_eq!(mu.multiplicity(2, 1), 2);
        assert_eq!(mu.multiplicity(3, 2), 3);
        // partial cancellation against an existing 3 -> 1
        let q = Quiver::new(3, [(1, 2, 2), (2, 3, 1), (3, 1, 1)]).unwrap();
        assert_eq!(q.mutate(2).unwrap().multiplicity(1, 3), 1);
    }

    #[test]
    fn involution_examples() {
        assert!(Quiver::linear_a(3).mutate_is_involution_check(2).unwrap());
        assert!(Quiver::linear_a(2).mutate_is_involution_check(1).unwrap());
        let cycle = q(3, &[(1, 2), (2, 3), (3, 1)]);
        assert!(cycle.mutate_is_involution_check(1).unwrap());
    }

    #[test]
    fn cycles() {
        assert!(Quiver::linear_a(3)
            .chordless_oriented_simple_cycles()
            .is_empty());
        assert_eq!(
            example().chordless_oriented_simple_cycles(),
            vec![vec![1, 3, 2]]
        );
        // 4-cycle with chord 1 -> 3: triangle 1,2,3 is 1->2->3 but 1->3 is
        // not closed back, triangle 1,3,4 is 1->3->4->1 and directed
        let chorded = q(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)]);
        assert_eq!(chorded.chordless_oriented_simple_cycles(), vec![vec![1, 3, 4]]);
        let square = q(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]);
        assert_eq!(
            square.chordless_oriented_simple_cycles(),
            vec![vec![1, 2, 3, 4]]
        );
        let doubled = Quiver::new(3, [(1, 2, 2), (2, 3, 1), (3, 1, 1)]).unwrap();
        assert!(doubled.chordless_oriented_simple_cycles().is_empty());
    }

    #[test]
    fn subquivers() {
        let (sub, map) = example().full_subquiver(&[1, 2, 3]).unwrap();
        assert_eq!(sub, q(3, &[(2, 1), (3, 2), (1, 3)]));
        assert_eq!(map, vec![1, 2, 3]);
        let (sub, map) = example().full_subquiver(&[]).unwrap();
        assert_eq!(sub, Quiver::empty(0));
        assert!(map.is_empty());
        let (sub, map) = example().full_subquiver(&[1, 2, 3, 4]).unwrap();
        assert_eq!(sub, example());
        assert_eq!(map, vec![1, 2, 3, 4]);
        let (sub, map) = example().full_subquiver(&[4, 2]).unwrap();
        assert_eq!(sub, Quiver::empty(2));
        assert_eq!(map, vec![2, 4]);
    }

    #[test]
    fn components() {
        assert_eq!(
            q(4, &[(1, 2), (3, 4)]).connected_components(),
            vec![vec![1, 2], vec![3, 4]]
        );
        assert_eq!(
            q(3, &[(1, 2), (2, 3), (3, 1)]).connected_components(),
            vec![vec![1, 2, 3]]
        );
        assert_eq!(
            Quiver::empty(3).connected_components(),
            vec![vec![1], vec![2], vec![3]]
        );
    }

    #[test]
    fn path_detection() {
        assert!(Quiver::linear_a(4).is_union_of_paths());
        assert!(q(4, &[(2, 1), (2, 3)]).is_union_of_paths());
        assert!(!example().is_union_of_paths());
        assert!(!q(4, &[(1, 2), (1, 3), (1, 4)]).is_union_of_paths());
        assert!(!Quiver::new(2, [(1, 2, 2)]).unwrap().is_union_of_paths());
    }

    #[test]
    fn text_and_json_forms() {
        let text = "4\n2 1 1\n3 2 1\n1 3 1\n4 3 1\n";
        assert_eq!(Quiver::parse(text).unwrap(), example());
        assert_eq!(Quiver::parse(&example().to_text()).unwrap(), example());
        let json = serde_json::to_string(&example()).unwrap();
        assert_eq!(json, r#"{"n":4,"arrows":[[1,3,1],[2,1,1],[3,2,1],[4,3,1]]}"#);
        assert_eq!(Quiver::parse(&json).unwrap(), example());
        assert!(Quiver::parse(r#"{"n":2,"arrows":[[1,2,1],[2,1,1]]}"#).is_err());
        assert!(Quiver::parse("x").is_err());
        assert!(Quiver::parse("2\n1 2 3 4").is_err());
    }
}
