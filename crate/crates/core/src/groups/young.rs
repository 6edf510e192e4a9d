use super::{Permutation, SetPartition};
use crate::error::{Error, Result};
use crate::quiver::factorial;

/// The Young subgroup `Σ_{α_1} × ... × Σ_{α_k}` of a set partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct YoungSubgroup {
    pub partition: SetPartition,
}

impl YoungSubgroup {
    pub fn new(partition: SetPartition) -> YoungSubgroup {
        YoungSubgroup { partition }
    }

    pub fn degree(&self) -> usize {
        self.partition.degree()
    }

    /// `Π |α_j|!`.
    pub fn order(&self) -> u128 {
        self.partition
            .parts()
            .iter()
            .map(|part| factorial(part.len()))
            .product()
    }

    /// True iff `p` maps every part onto itself.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree() {
            return Err(Error::DegreeMismatch(self.degree(), p.degree()));
        }
        let block = self.partition.block_index();
        Ok((1..=p.degree()).all(|k| block[p.apply(k) - 1] == block[k - 1]))
    }

    /// Every element, enumerated part by part.
    pub fn elements(&self) -> Vec<Permutation> {
        let degree = self.degree();
        let mut images: Vec<Vec<usize>> = vec![(1..=degree).collect()];
        for part in self.partition.parts() {
            if part.len() < 2 {
                continue;
            }
            let arrangements = arrangements(part);
            let mut next = Vec::with_capacity(images.len() * arrangements.len());
            for base in &images {
                for arrangement in &arrangements {
                    let mut img = base.clone();
                    for (&from, &to) in part.iter().zip(arrangement) {
                        img[from - 1] = to;
                    }
                    next.push(img);
                }
            }
            images = next;
        }
        images
            .iter()
            .map(|img| Permutation::from_images(img).expect("part-wise bijection"))
            .collect()
    }
}

/// All orderings of `items`.
fn arrangements(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in arrangements(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}
