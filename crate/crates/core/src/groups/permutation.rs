use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `1..=degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // images[k] is the image of k + 1, minus one
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[k - 1]` is the
    /// image of `k`.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
        }
        Ok(Permutation {
            images: images.iter().map(|&v| (v - 1) as u32).collect(),
        })
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Permutation> {
        Permutation::from_cycles(degree, &[vec![a, b]])
    }

    /// Product of the given disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut images: Vec<usize> = (1..=degree).collect();
        let mut touched = vec![false; degree + 1];
        for cycle in cycles {
            for (i, &v) in cycle.iter().enumerate() {
                if v == 0 || v > degree || std::mem::replace(&mut touched[v], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on 1..={degree}"
                    )));
                }
                images[v - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    /// Parses cycle notation such as `(1 2)(3 4 5)` or `()`; commas may
    /// separate cycle entries.
    pub fn parse(degree: usize, text: &str) -> Result<Permutation> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .and_then(|r| r.find(')').map(|end| (&r[..end], &r[end + 1..])))
                .ok_or_else(|| Error::Parse(format!("bad cycle notation {text:?}")))?;
            let cycle: Vec<usize> = body
                .0
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Parse(format!("bad cycle entry in {text:?}: {e}")))?;
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
            rest = body.1.trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1] as usize + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&k| self.images[k as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Disjoint cycles of length at least two, each starting at its smallest
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.apply(start);
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.apply(v);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// `(a b)` if this permutation is a transposition.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        match self.cycles()[..] {
            [ref c] if c.len() == 2 => Some((c[0], c[1])),
            _ => None,
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            let body: Vec<String> = cycle.iter().map(ToString::to_string).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// The subgroup generated by a set of permutations.
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    pub degree: usize,
    pub elements: HashSet<Permutation>,
}

impl GeneratedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }
}

/// Closure of `gens` under composition by breadth-first search. Fails once
/// more than `cap` elements have been found.
pub fn generate(degree: usize, gens: &[Permutation], cap: usize) -> Result<GeneratedGroup> {
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(Error::DegreeMismatch(degree, g.degree()));
    }
    let identity = Permutation::identity(degree);
    let mut elements = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = g.compose_unchecked(x);
                if !elements.contains(&y) {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded {
                            what: "generated group",
                            cap,
                        });
                    }
                    elements.insert(y.clone());
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Ok(GeneratedGroup { degree, elements })
}
