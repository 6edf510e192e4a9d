use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{enumerate_triangulations, Diagonal, Triangulation};
use crate::error::{Error, Result};
use crate::quiver::{are_isomorphic, mutation_type_a, Quiver};

/// A triangulation of a disjoint union of convex polygons whose diagonals
/// carry the global labels `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTriangulation {
    components: Vec<Triangulation>,
    labels: BTreeMap<usize, (usize, Diagonal)>,
    index: BTreeMap<(usize, Diagonal), usize>,
}

impl MultiTriangulation {
    /// `labels` must be a bijection from `1..=n` onto the diagonals of all
    /// components, `n` being their total number of diagonals.
    pub fn new(
        components: Vec<Triangulation>,
        labels: BTreeMap<usize, (usize, Diagonal)>,
    ) -> Result<MultiTriangulation> {
        let n: usize = components.iter().map(Triangulation::diagonal_count).sum();
        if labels.len() != n {
            return Err(Error::InvalidLabeling(format!(
                "{} labels for {n} diagonals",
                labels.len()
            )));
        }
        let mut index = BTreeMap::new();
        for (expected, (&label, &(c, d))) in (1..).zip(&labels) {
            if label != expected {
                return Err(Error::InvalidLabeling(format!(
                    "labels must be 1..={n}, found {label}"
                )));
            }
            if !components.get(c).is_some_and(|t| t.contains(d)) {
                return Err(Error::InvalidLabeling(format!(
                    "label {label} names {d}, not a diagonal of component {c}"
                )));
            }
            if index.insert((c, d), label).is_some() {
                return Err(Error::InvalidLabeling(format!("{d} labelled twice")));
            }
        }
        Ok(MultiTriangulation {
            components,
            labels,
            index,
        })
    }

    /// Labels diagonals consecutively, component by component, each
    /// component's diagonals in sorted order.
    pub fn with_default_labels(components: Vec<Triangulation>) -> MultiTriangulation {
        let labels = components
            .iter()
            .enumerate()
            .flat_map(|(c, t)| t.diagonals().map(move |d| (c, d)))
            .enumerate()
            .map(|(i, cd)| (i + 1, cd))
            .collect();
        MultiTriangulation::new(components, labels).expect("default labelling is a bijection")
    }

    pub fn single(t: Triangulation) -> MultiTriangulation {
        MultiTriangulation::with_default_labels(vec![t])
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn components(&self) -> &[Triangulation] {
        &self.components
    }

    /// The component index and diagonal carrying `label`.
    pub fn diagonal(&self, label: usize) -> Option<(usize, Diagonal)> {
        self.labels.get(&label).copied()
    }

    pub fn label_of(&self, component: usize, d: Diagonal) -> Option<usize> {
        self.index.get(&(component, d)).copied()
    }

    pub fn labels(&self) -> impl Iterator<Item = (usize, usize, Diagonal)> + '_ {
        self.labels.iter().map(|(&l, &(c, d))| (l, c, d))
    }

    /// The quiver of the triangulation: an arrow `i -> j` whenever `d_i`
    /// and `d_j` bound a common triangle and `d_j` immediately precedes
    /// `d_i` in the counterclockwise order of that triangle's sides.
    pub fn quiver_of(&self) -> Quiver {
        let mut arrows = Vec::new();
        for (c, t) in self.components.iter().enumerate() {
            for [a, b, x] in t.triangles() {
                let sides = [
                    self.label_of(c, Diagonal::new(a, b)),
                    self.label_of(c, Diagonal::new(b, x)),
                    self.label_of(c, Diagonal::new(x, a)),
                ];
                for k in 0..3 {
                    if let (Some(i), Some(j)) = (sides[k], sides[(k + 2) % 3]) {
                        arrows.push((i, j, 1));
                    }
                }
            }
        }
        Quiver::new(self.n(), arrows).expect("triangulation quivers are cluster quivers")
    }

    /// Flips the diagonal with the given label; the new diagonal inherits
    /// the label.
    pub fn flip(&self, label: usize) -> Result<MultiTriangulation> {
        let (c, d) = self.diagonal(label).ok_or(Error::LabelOutOfRange {
            label,
            n: self.n(),
        })?;
        let (t, new) = self.components[c].flip(d)?;
        let mut components = self.components.clone();
        components[c] = t;
        let mut labels = self.labels.clone();
        labels.insert(label, (c, new));
        MultiTriangulation::new(components, labels)
    }

    /// Cuts every component along the diagonals whose labels are in
    /// `removed`. Each cut splits a polygon into two, the cut diagonal
    /// becoming a side of both; the pieces are renumbered `0..m'`
    /// preserving cyclic order and the surviving diagonals are relabelled
    /// `1..=k` in increasing order of their old labels.
    pub fn cut_along(&self, removed: &[usize]) -> Result<Cut> {
        let n = self.n();
        let mut cut = vec![false; n + 1];
        for &label in removed {
            if label == 0 || label > n {
                return Err(Error::LabelOutOfRange { label, n });
            }
            cut[label] = true;
        }

        let mut components = Vec::new();
        let mut provenance = Vec::new();
        let mut old_labels = Vec::new();
        for (c, t) in self.components.iter().enumerate() {
            let mut pieces: Vec<Vec<usize>> = vec![(0..t.m()).collect()];
            for d in t.diagonals().filter(|&d| cut[self.label_of(c, d).unwrap()]) {
                let (a, b) = d.ends();
                let k = pieces
                    .iter()
                    .position(|p| p.contains(&a) && p.contains(&b))
                    .expect("a cut diagonal lies in exactly one piece");
                let piece = pieces.swap_remove(k);
                let pa = piece.binary_search(&a).unwrap();
                let pb = piece.binary_search(&b).unwrap();
                let inner = piece[pa..=pb].to_vec();
                let mut outer = piece[..=pa].to_vec();
                outer.extend_from_slice(&piece[pb..]);
                pieces.push(inner);
                pieces.push(outer);
            }
            pieces.sort();
            for piece in pieces {
                let rank = |v: usize| piece.binary_search(&v).ok();
                let mut kept = Vec::new();
                for d in t.diagonals() {
                    let label = self.label_of(c, d).unwrap();
                    if cut[label] {
                        continue;
                    }
                    let (a, b) = d.ends();
                    if let (Some(ra), Some(rb)) = (rank(a), rank(b)) {
                        kept.push((label, Diagonal::new(ra, rb)));
                    }
                }
                let piece_t = Triangulation::new(piece.len(), kept.iter().map(|&(_, d)| d))?;
                let index = components.len();
                for (label, d) in kept {
                    old_labels.push((label, index, d));
                }
                components.push(piece_t);
                provenance.push(piece.iter().map(|&v| (c, v)).collect());
            }
        }
        old_labels.sort_unstable();
        let label_map: Vec<usize> = old_labels.iter().map(|&(l, _, _)| l).collect();
        let labels = old_labels
            .into_iter()
            .enumerate()
            .map(|(i, (_, c, d))| (i + 1, (c, d)))
            .collect();
        Ok(Cut {
            triangulation: MultiTriangulation::new(components, labels)?,
            label_map,
            provenance,
        })
    }

    /// Parses a single labelled triangulation object or a list of them.
    /// Labels may be omitted everywhere, in which case the default
    /// labelling is used.
    pub fn parse(text: &str) -> Result<MultiTriangulation> {
        let parsed: std::result::Result<MultiTriangulation, _> = if text.trim_start().starts_with('[')
        {
            serde_json::from_str(text)
        } else {
            serde_json::from_str::<TriangulationJson>(text)
                .map_err(|e| e.to_string())
                .and_then(|one| from_json(vec![one]).map_err(|e| e.to_string()))
                .map_err(serde::de::Error::custom)
        };
        parsed.map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Result of [`MultiTriangulation::cut_along`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub triangulation: MultiTriangulation,
    /// New label `k` was label `label_map[k - 1]` before cutting.
    pub label_map: Vec<usize>,
    /// Vertex `v` of new component `c` was vertex `provenance[c][v].1` of
    /// original component `provenance[c][v].0`.
    pub provenance: Vec<Vec<(usize, usize)>>,
}

/// A labelled triangulation whose quiver is exactly `q`, one
/// `(n_i + 3)`-gon per connected component of `q`, components ordered by
/// smallest vertex.
pub fn triangulation_of_quiver(q: &Quiver, cap: usize) -> Result<MultiTriangulation> {
    if mutation_type_a(q, cap)?.is_none() {
        return Err(Error::NotMutationTypeA);
    }
    let mut components = Vec::new();
    let mut labels = BTreeMap::new();
    for (c, vertices) in q.connected_components().into_iter().enumerate() {
        let (sub, map) = q.full_subquiver(&vertices)?;
        let (t, matching) = enumerate_triangulations(sub.n() + 3)
            .into_iter()
            .find_map(|t| {
                let local = MultiTriangulation::single(t.clone());
                let qt = local.quiver_of();
                if qt.arrow_pairs() != sub.arrow_pairs() {
                    return None;
                }
                are_isomorphic(&sub, &qt).map(|f| {
                    let diagonals: Vec<Diagonal> =
                        f.iter().map(|&j| local.diagonal(j).unwrap().1).collect();
                    (t, diagonals)
                })
            })
            .ok_or(Error::SearchExhausted)?;
        for (v, d) in matching.into_iter().enumerate() {
            labels.insert(map[v], (c, d));
        }
        components.push(t);
    }
    let mt = MultiTriangulation::new(components, labels)?;
    debug_assert_eq!(mt.quiver_of(), *q);
    Ok(mt)
}

#[derive(Serialize, Deserialize)]
struct TriangulationJson {
    m: usize,
    diagonals: Vec<Diagonal>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<BTreeMap<usize, Diagonal>>,
}

impl Serialize for Triangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TriangulationJson {
            m: self.m,
            diagonals: self.diagonals().collect(),
            labels: None,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triangulation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = TriangulationJson::deserialize(d)?;
        Triangulation::new(json.m, json.diagonals).map_err(serde::de::Error::custom)
    }
}

impl Serialize for MultiTriangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<TriangulationJson> = self
            .components
            .iter()
            .enumerate()
            .map(|(c, t)| TriangulationJson {
                m: t.m(),
                diagonals: t.diagonals().collect(),
                labels: Some(
                    self.labels()
                        .filter(|&(_, cc, _)| cc == c)
                        .map(|(l, _, d)| (l, d))
                        .collect(),
                ),
            })
            .collect();
        list.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiTriangulation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<TriangulationJson>::deserialize(d)?;
        from_json(list).map_err(serde::de::Error::custom)
    }
}

fn from_json(list: Vec<TriangulationJson>) -> Result<MultiTriangulation> {
    let labelled = list.iter().filter(|t| t.labels.is_some()).count();
    if labelled != 0 && labelled != list.len() {
        return Err(Error::InvalidLabeling(
            "either every component or none carries labels".into(),
        ));
    }
    let mut components = Vec::new();
    let mut labels = BTreeMap::new();
    for (c, json) in list.into_iter().enumerate() {
        if let Some(map) = json.labels {
            for (l, d) in map {
                if labels.insert(l, (c, d)).is_some() {
                    return Err(Error::InvalidLabeling(format!("label {l} used twice")));
                }
            }
        }
        components.push(Triangulation::new(json.m, json.diagonals)?);
    }
    if labelled == 0 {
        Ok(MultiTriangulation::with_default_labels(components))
    } else {
        MultiTriangulation::new(components, labels)
    }
}
