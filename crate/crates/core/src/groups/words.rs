use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Permutation, YoungSubgroup};
use crate::braid::BraidGraph;
use crate::error::{Error, Result};

/// A word in the involutive generators `t_1, ..., t_n`, stored as the
/// sequence of generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: impl Into<Vec<usize>>) -> Word {
        Word(letters.into())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The inverse word; every generator is its own inverse.
    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Cancels adjacent equal letters until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<usize> = Vec::with_capacity(self.0.len());
        for &letter in &self.0 {
            if out.last() == Some(&letter) {
                out.pop();
            } else {
                out.push(letter);
            }
        }
        Word(out)
    }

    /// Space-separated generator indices.
    pub fn to_machine(&self) -> String {
        let letters: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        letters.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let letters: Vec<String> = self.0.iter().map(|i| format!("t{i}")).collect();
        write!(f, "{}", letters.join(" "))
    }
}

/// Images of the generators as transpositions of `1..=degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorImages {
    degree: usize,
    images: BTreeMap<usize, (usize, usize)>,
}

impl GeneratorImages {
    pub fn new(degree: usize, images: BTreeMap<usize, (usize, usize)>) -> Result<GeneratorImages> {
        for &(x, y) in images.values() {
            if x == y || x == 0 || y == 0 || x > degree || y > degree {
                return Err(Error::InvalidPermutation(format!(
                    "({x} {y}) is not a transposition of 1..={degree}"
                )));
            }
        }
        Ok(GeneratorImages { degree, images })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.keys().copied()
    }

    pub fn transposition(&self, generator: usize) -> Option<(usize, usize)> {
        self.images.get(&generator).copied()
    }

    pub fn image(&self, generator: usize) -> Result<Permutation> {
        let (x, y) = self
            .transposition(generator)
            .ok_or(Error::UnknownGenerator(generator))?;
        Permutation::transposition(self.degree, x, y)
    }

    /// Images of all generators, in generator order.
    pub fn permutations(&self) -> Vec<Permutation> {
        self.generators()
            .map(|i| self.image(i).expect("stored generator"))
            .collect()
    }

    /// Restriction to the generators in `keep`.
    pub fn restrict(&self, keep: &[usize]) -> GeneratorImages {
        GeneratorImages {
            degree: self.degree,
            images: self
                .images
                .iter()
                .filter(|(i, _)| keep.contains(i))
                .map(|(&i, &t)| (i, t))
                .collect(),
        }
    }

    /// Renames generators: generator `k` of the result is generator
    /// `map[k - 1]` of `self`.
    pub fn pull_back(&self, map: &[usize]) -> Result<GeneratorImages> {
        let images = map
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                self.transposition(i)
                    .map(|t| (k + 1, t))
                    .ok_or(Error::UnknownGenerator(i))
            })
            .collect::<Result<_>>()?;
        Ok(GeneratorImages {
            degree: self.degree,
            images,
        })
    }

    /// Conjugates every image by the point relabelling `perm`
    /// (`v ↦ perm[v - 1]`).
    pub fn conjugate(&self, perm: &[usize]) -> GeneratorImages {
        GeneratorImages {
            degree: self.degree,
            images: self
                .images
                .iter()
                .map(|(&i, &(x, y))| (i, (perm[x - 1], perm[y - 1])))
                .collect(),
        }
    }
}

/// `π_Q`: generator `t_i` goes to the transposition of the endpoints of
/// edge `E_i`.
pub fn pi_q(g: &BraidGraph) -> GeneratorImages {
    GeneratorImages {
        degree: g.vertex_count(),
        images: g.edges().collect(),
    }
}

/// The permutation of a word, its leftmost letter applied first.
pub fn evaluate_word(w: &Word, images: &GeneratorImages) -> Result<Permutation> {
    let mut result = Permutation::identity(images.degree());
    for &letter in w.letters() {
        result = images.image(letter)?.compose_unchecked(&result);
    }
    Ok(result)
}

/// The palindrome `t_{i_1} ... t_{i_{p-1}} t_{i_p} t_{i_{p-1}} ... t_{i_1}`
/// along the path `x = v_0, ..., v_p = y` of `g`; it evaluates to `(x y)`.
/// For `x == y` the word is empty.
pub fn transposition_to_word(g: &BraidGraph, x: usize, y: usize) -> Result<Word> {
    let path = g.tree_path(x, y).ok_or(Error::DisconnectedPair(x, y))?;
    let Some((&last, rest)) = path.split_last() else {
        return Ok(Word::default());
    };
    let mut letters = rest.to_vec();
    letters.push(last);
    letters.extend(rest.iter().rev());
    Ok(Word(letters))
}

/// A word in the edge labels of `g` evaluating to `p`, which must preserve
/// every component of `g`.
///
/// Each cycle `(c_1 ... c_k)` is written as `(c_{k-1} c_k)`, then
/// `(c_{k-2} c_{k-1})`, ..., then `(c_1 c_2)`, and each transposition is
/// expanded along its tree path.
pub fn permutation_to_word(g: &BraidGraph, p: &Permutation) -> Result<Word> {
    let young = YoungSubgroup::new(g.components());
    if !young.contains(p)? {
        return Err(Error::NotInSubgroup);
    }
    let mut letters = Vec::new();
    for cycle in p.cycles() {
        for j in (0..cycle.len() - 1).rev() {
            letters.extend(transposition_to_word(g, cycle[j], cycle[j + 1])?.0);
        }
    }
    Ok(Word(letters))
}
