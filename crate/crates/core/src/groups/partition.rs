use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A partition of `1..=degree` into disjoint non-empty parts, each sorted,
/// ordered by smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    degree: usize,
    parts: Vec<Vec<usize>>,
}

/// Weighted quick-union with path halving.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

impl SetPartition {
    pub fn new(degree: usize, parts: Vec<Vec<usize>>) -> Result<SetPartition> {
        let mut seen = vec![false; degree + 1];
        for part in &parts {
            if part.is_empty() {
                return Err(Error::InvalidPartition("empty part".into()));
            }
            for &v in part {
                if v == 0 || v > degree || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!(
                        "{v} is repeated or outside 1..={degree}"
                    )));
                }
            }
        }
        if let Some(v) = (1..=degree).find(|&v| !seen[v]) {
            return Err(Error::InvalidPartition(format!("{v} is not covered")));
        }
        Ok(SetPartition::normalised(degree, parts))
    }

    fn normalised(degree: usize, mut parts: Vec<Vec<usize>>) -> SetPartition {
        for part in &mut parts {
            part.sort_unstable();
        }
        parts.sort_unstable_by_key(|p| p[0]);
        SetPartition { degree, parts }
    }

    pub fn singletons(degree: usize) -> SetPartition {
        SetPartition {
            degree,
            parts: (1..=degree).map(|v| vec![v]).collect(),
        }
    }

    pub fn whole(degree: usize) -> SetPartition {
        if degree == 0 {
            return SetPartition::singletons(0);
        }
        SetPartition {
            degree,
            parts: vec![(1..=degree).collect()],
        }
    }

    /// The finest partition in which each pair lies in one part.
    pub fn from_pairs(degree: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> SetPartition {
        let mut uf = UnionFind::new(degree);
        for (a, b) in pairs {
            uf.union(a - 1, b - 1);
        }
        SetPartition::from_union_find(degree, &mut uf)
    }

    fn from_union_find(degree: usize, uf: &mut UnionFind) -> SetPartition {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..degree {
            groups.entry(uf.find(v)).or_default().push(v + 1);
        }
        SetPartition::normalised(degree, groups.into_values().collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Index of the part containing each point, `block[v - 1]`.
    pub fn block_index(&self) -> Vec<usize> {
        let mut block = vec![0; self.degree];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                block[v - 1] = i;
            }
        }
        block
    }

    fn same_degree(&self, other: &SetPartition) -> Result<()> {
        if self.degree == other.degree {
            Ok(())
        } else {
            Err(Error::DegreeMismatch(self.degree, other.degree))
        }
    }

    /// Common refinement: the non-empty pairwise intersections of parts.
    pub fn meet(&self, other: &SetPartition) -> Result<SetPartition> {
        self.same_degree(other)?;
        let mine = self.block_index();
        let theirs = other.block_index();
        let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for v in 1..=self.degree {
            groups.entry((mine[v - 1], theirs[v - 1])).or_default().push(v);
        }
        Ok(SetPartition::normalised(self.degree, groups.into_values().collect()))
    }

    /// Finest common coarsening: the transitive closure of both relations.
    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        self.same_degree(other)?;
        let mut uf = UnionFind::new(self.degree);
        for part in self.parts.iter().chain(&other.parts) {
            for w in part.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        Ok(SetPartition::from_union_find(self.degree, &mut uf))
    }

    /// True iff every part of `self` lies inside a part of `other`.
    pub fn refines(&self, other: &SetPartition) -> Result<bool> {
        self.same_degree(other)?;
        let theirs = other.block_index();
        Ok(self
            .parts
            .iter()
            .all(|part| part.iter().all(|&v| theirs[v - 1] == theirs[part[0] - 1])))
    }

    /// Parses `{1,2}{3}`. The degree is the number of points listed, which
    /// must be exactly `1..=degree`.
    pub fn parse(text: &str) -> Result<SetPartition> {
        let mut parts = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let (body, tail) = rest
                .strip_prefix('{')
                .and_then(|r| r.find('}').map(|end| (&r[..end], &r[end + 1..])))
                .ok_or_else(|| Error::Parse(format!("bad partition {text:?}")))?;
            let part: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("bad partition entry in {text:?}: {e}")))?;
            parts.push(part);
            rest = tail.trim_start();
        }
        let degree = parts.iter().map(Vec::len).sum();
        SetPartition::new(degree, parts)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for part in &self.parts {
            let body: Vec<String> = part.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", body.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str) -> SetPartition {
        SetPartition::parse(text).unwrap()
    }

    #[test]
    fn meets_and_joins() {
        assert_eq!(p("{1,2}{3}{4}").meet(&p("{1}{2,3}{4}")).unwrap(), p("{1}{2}{3}{4}"));
        assert_eq!(p("{1,2}{3}").meet(&p("{1,2}{3}")).unwrap(), p("{1,2}{3}"));
        assert_eq!(p("{1,2,3}{4}").meet(&p("{1,2}{3,4}")).unwrap(), p("{1,2}{3}{4}"));
        assert_eq!(p("{1,2}{3}{4}").join(&p("{1}{2,3}{4}")).unwrap(), p("{1,2,3}{4}"));
        assert_eq!(
            SetPartition::singletons(4).join(&p("{1,3}{2,4}")).unwrap(),
            p("{1,3}{2,4}")
        );
        assert_eq!(p("{1,3}{2}").join(&p("{1,3}{2}")).unwrap(), p("{1,3}{2}"));
        assert!(matches!(
            p("{1}").meet(&p("{1,2}")),
            Err(Error::DegreeMismatch(1, 2))
        ));
    }

    #[test]
    fn refinement() {
        assert!(SetPartition::singletons(3).refines(&p("{1,3}{2}")).unwrap());
        assert!(p("{1,3}{2}").refines(&p("{1,3}{2}")).unwrap());
        assert!(!p("{1,2}{3}").refines(&p("{1,3}{2}")).unwrap());
        assert!(p("{1,2}{3}").refines(&SetPartition::whole(3)).unwrap());
    }

    #[test]
    fn parsing() {
        assert_eq!(p("{3,1}{2}").to_string(), "{1,3}{2}");
        assert_eq!(p(" {1} {2 3} ").parts(), &[vec![1], vec![2, 3]]);
        assert!(SetPartition::parse("{1,2}{2}").is_err());
        assert!(SetPartition::parse("{1,3}").is_err());
        assert!(SetPartition::parse("{1,2").is_err());
        assert!(SetPartition::new(3, vec![vec![1, 2], vec![]]).is_err());
    }

    fn partition(degree: usize) -> impl Strategy<Value = SetPartition> {
        prop::collection::vec(0..degree, degree).prop_map(move |labels| {
            let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (v, l) in labels.into_iter().enumerate() {
                groups.entry(l).or_default().push(v + 1);
            }
            SetPartition::new(degree, groups.into_values().collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn lattice_laws(a in partition(7), b in partition(7), c in partition(7)) {
            prop_assert_eq!(a.meet(&b).unwrap(), b.meet(&a).unwrap());
            prop_assert_eq!(a.join(&b).unwrap(), b.join(&a).unwrap());
            prop_assert_eq!(a.meet(&b).unwrap().meet(&c).unwrap(), a.meet(&b.meet(&c).unwrap()).unwrap());
            prop_assert_eq!(a.join(&b).unwrap().join(&c).unwrap(), a.join(&b.join(&c).unwrap()).unwrap());
            prop_assert_eq!(a.meet(&a.join(&b).unwrap()).unwrap(), a.clone());
            prop_assert_eq!(a.join(&a.meet(&b).unwrap()).unwrap(), a.clone());
            prop_assert!(a.meet(&b).unwrap().refines(&a).unwrap());
            prop_assert!(a.refines(&a.join(&b).unwrap()).unwrap());
            prop_assert_eq!(a.refines(&b).unwrap(), a.meet(&b).unwrap() == a);
            prop_assert_eq!(a.refines(&b).unwrap(), a.join(&b).unwrap() == b);
        }

        #[test]
        fn display_round_trips(a in partition(6)) {
            prop_assert_eq!(SetPartition::parse(&a.to_string()).unwrap(), a);
        }
    }
}
