use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{canonical_form, Quiver};
use crate::error::{Error, Result};

/// Mutation type `A_{n_1} ⊔ ... ⊔ A_{n_r}`, stored as the sorted parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MutationTypeA {
    pub parts: Vec<usize>,
}

impl MutationTypeA {
    pub fn new(mut parts: Vec<usize>) -> MutationTypeA {
        parts.sort_unstable();
        MutationTypeA { parts }
    }

    pub fn rank(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `Π (n_j + 1)!`, the order of the cluster group.
    pub fn group_order(&self) -> u128 {
        self.parts.iter().map(|&k| factorial(k + 1)).product()
    }
}

pub(crate) fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

impl fmt::Display for MutationTypeA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "empty");
        }
        let names: Vec<String> = self.parts.iter().map(|k| format!("A{k}")).collect();
        write!(f, "{}", names.join(" + "))
    }
}

/// Mutation class of `q` up to isomorphism, as canonical forms in BFS
/// discovery order. Fails if the class has more than `cap` members.
pub fn mutation_class(q: &Quiver, cap: usize) -> Result<Vec<Quiver>> {
    mutation_class_to_depth(q, cap, None)
}

/// As [`mutation_class`], but stops after `depth` rounds of mutation when a
/// depth is given.
pub fn mutation_class_to_depth(
    q: &Quiver,
    cap: usize,
    depth: Option<usize>,
) -> Result<Vec<Quiver>> {
    explore(q, cap, depth, |_| false).map(|(class, _)| class)
}

/// Breadth-first search of the mutation class; returns early with `true`
/// once `stop` accepts a member.
fn explore(
    q: &Quiver,
    cap: usize,
    depth: Option<usize>,
    mut stop: impl FnMut(&Quiver) -> bool,
) -> Result<(Vec<Quiver>, bool)> {
    let start = canonical_form(q);
    let mut seen = HashSet::from([start.clone()]);
    let mut class = vec![start.clone()];
    if stop(q) {
        return Ok((class, true));
    }
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((current, d)) = queue.pop_front() {
        if depth.is_some_and(|limit| d >= limit) {
            continue;
        }
        for v in 1..=current.n() {
            let next = current.mutate(v)?;
            let key = canonical_form(&next);
            if seen.contains(&key) {
                continue;
            }
            if class.len() >= cap {
                return Err(Error::CapExceeded {
                    what: "mutation class",
                    cap,
                });
            }
            seen.insert(key.clone());
            class.push(key.clone());
            if stop(&next) {
                return Ok((class, true));
            }
            queue.push_back((key, d + 1));
        }
    }
    Ok((class, false))
}

/// The mutation type of `q` if it is `A_{n_1} ⊔ ... ⊔ A_{n_r}`.
///
/// Mutation never joins or splits connected components, so each component
/// is explored on its own until an orientation of a path diagram turns up.
/// `None` means some component's whole class was explored without finding
/// one; a class larger than `cap` is an error.
pub fn mutation_type_a(q: &Quiver, cap: usize) -> Result<Option<MutationTypeA>> {
    let mut parts = Vec::new();
    for component in q.connected_components() {
        let (sub, _) = q.full_subquiver(&component)?;
        let (_, found) = explore(&sub, cap, None, Quiver::is_union_of_paths)?;
        if !found {
            return Ok(None);
        }
        parts.push(sub.n());
    }
    Ok(Some(MutationTypeA::new(parts)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::are_isomorphic;

    fn q(n: usize, arrows: &[(usize, usize)]) -> Quiver {
        Quiver::new(n, arrows.iter().map(|&(s, t)| (s, t, 1))).unwrap()
    }

    /// Labeled BFS with no isomorphism reduction, then grouped by brute
    /// force isomorphism.
    fn brute_class(q: &Quiver) -> Vec<Quiver> {
        let mut seen = vec![q.clone()];
        let mut i = 0;
        while i < seen.len() {
            for v in 1..=q.n() {
                let next = seen[i].mutate(v).unwrap();
                if !seen.contains(&next) {
                    seen.push(next);
                }
            }
            i += 1;
        }
        let mut reps: Vec<Quiver> = Vec::new();
        for member in seen {
            if !reps.iter().any(|r| are_isomorphic(r, &member).is_some()) {
                reps.push(member);
            }
        }
        reps
    }

    #[test]
    fn small_classes() {
        assert_eq!(mutation_class(&Quiver::linear_a(2), 10).unwrap().len(), 1);
        let a3 = mutation_class(&Quiver::linear_a(3), 10).unwrap();
        let cycle = canonical_form(&q(3, &[(1, 2), (2, 3), (3, 1)]));
        assert!(a3.contains(&cycle));
        assert!(a3.contains(&canonical_form(&Quiver::linear_a(3))));
        assert!(a3.contains(&canonical_form(&q(3, &[(2, 1), (2, 3)]))));
        assert!(a3.contains(&canonical_form(&q(3, &[(1, 2), (3, 2)]))));
        assert_eq!(a3.len(), brute_class(&Quiver::linear_a(3)).len());
        assert_eq!(a3.len(), 4);
        for n in 4..=5 {
            let class = mutation_class(&Quiver::linear_a(n), 1000).unwrap();
            assert_eq!(class.len(), brute_class(&Quiver::linear_a(n)).len());
        }
    }

    #[test]
    fn kronecker_class_is_itself() {
        let kronecker = Quiver::new(2, [(1, 2, 2)]).unwrap();
        assert_eq!(mutation_class(&kronecker, 1).unwrap().len(), 1);
        assert_eq!(mutation_type_a(&kronecker, 10).unwrap(), None);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            mutation_class(&Quiver::linear_a(3), 2),
            Err(Error::CapExceeded { .. })
        ));
        // multiplicities grow without bound along mutation sequences
        let wild = Quiver::new(3, [(1, 2, 3), (2, 3, 3), (3, 1, 3)]).unwrap();
        assert!(matches!(
            mutation_class(&wild, 50),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn type_detection() {
        let cycle = q(3, &[(1, 2), (2, 3), (3, 1)]);
        assert_eq!(
            mutation_type_a(&cycle, 100).unwrap(),
            Some(MutationTypeA::new(vec![3]))
        );
        let example = q(4, &[(2, 1), (3, 2), (1, 3), (4, 3)]);
        assert_eq!(
            mutation_type_a(&example, 100).unwrap(),
            Some(MutationTypeA::new(vec![4]))
        );
        let split = q(5, &[(1, 2), (4, 3), (3, 5)]);
        let ty = mutation_type_a(&split, 100).unwrap().unwrap();
        assert_eq!(ty.parts, vec![2, 3]);
        assert_eq!(ty.group_order(), 6 * 24);
        assert_eq!(ty.to_string(), "A2 + A3");
        // D4 is not type A
        let d4 = q(4, &[(1, 2), (1, 3), (1, 4)]);
        assert_eq!(mutation_type_a(&d4, 100).unwrap(), None);
    }

    #[test]
    fn type_is_constant_on_classes() {
        for n in 1..=5 {
            for member in mutation_class(&Quiver::linear_a(n), 1000).unwrap() {
                assert_eq!(
                    mutation_type_a(&member, 1000).unwrap(),
                    Some(MutationTypeA::new(vec![n]))
                );
            }
        }
    }
}
