//! Isomorphism testing and canonical forms for small quivers.
//!
//! Both work by backtracking over vertex bijections, restricted to
//! bijections that respect an isomorphism-invariant vertex colouring
//! obtained by iterated degree refinement.

use std::collections::BTreeMap;

use super::Quiver;

/// A vertex colour with its sorted `(neighbour colour, out, in)` list.
type Signature = (usize, Vec<(usize, usize, usize)>);

/// Colour of each vertex (index `v - 1`), as a rank that depends only on
/// the isomorphism type of `(q, v)`.
fn refine_colours(q: &Quiver) -> Vec<usize> {
    let n = q.n();
    let mut neighbours: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for (s, t, m) in q.arrows() {
        neighbours[s - 1].push((t - 1, m, 0));
        neighbours[t - 1].push((s - 1, 0, m));
    }
    let mut colours = vec![0usize; n];
    let mut classes = usize::from(n > 0);
    loop {
        let signatures: Vec<Signature> = (0..n)
            .map(|v| {
                let mut around: Vec<_> = neighbours[v]
                    .iter()
                    .map(|&(u, out, inc)| (colours[u], out, inc))
                    .collect();
                around.sort_unstable();
                (colours[v], around)
            })
            .collect();
        let mut distinct: Vec<_> = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = signatures
            .iter()
            .map(|sig| distinct.binary_search(sig).unwrap())
            .collect();
        let stable = distinct.len() == classes;
        colours = next;
        classes = distinct.len();
        if stable {
            return colours;
        }
    }
}

/// A bijection `f` with `f[i - 1]` the image in `p` of vertex `i` of `q`
/// preserving arrows and multiplicities, if one exists.
pub fn are_isomorphic(q: &Quiver, p: &Quiver) -> Option<Vec<usize>> {
    if q.n() != p.n() || q.arrow_pairs() != p.arrow_pairs() {
        return None;
    }
    let n = q.n();
    // refine on the disjoint union so colours are comparable
    let joint = refine_colours(&q.disjoint_union(p));
    let (qc, pc) = joint.split_at(n);
    let mut qs = qc.to_vec();
    let mut ps = pc.to_vec();
    qs.sort_unstable();
    ps.sort_unstable();
    if qs != ps {
        return None;
    }
    let mut order: Vec<usize> = (1..=n).collect();
    // most constrained colours first
    let mut class_size = BTreeMap::new();
    for &c in qc {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    order.sort_by_key(|&v| (class_size[&qc[v - 1]], qc[v - 1], v));

    let mut image = vec![0usize; n + 1];
    let mut used = vec![false; n + 1];
    if extend_iso(q, p, qc, pc, &order, 0, &mut image, &mut used) {
        Some(image[1..].to_vec())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_iso(
    q: &Quiver,
    p: &Quiver,
    qc: &[usize],
    pc: &[usize],
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 1..=p.n() {
        if used[w] || pc[w - 1] != qc[v - 1] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let fu = image[u];
            q.multiplicity(u, v) == p.multiplicity(fu, w)
                && q.multiplicity(v, u) == p.multiplicity(w, fu)
        });
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if extend_iso(q, p, qc, pc, order, depth + 1, image, used) {
            return true;
        }
        used[w] = false;
    }
    false
}

/// The relabelling of `q` whose sorted arrow list is lexicographically
/// smallest among relabellings that number vertices in colour order.
/// Two quivers have equal canonical forms iff they are isomorphic.
pub fn canonical_form(q: &Quiver) -> Quiver {
    let n = q.n();
    let colours = refine_colours(q);
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 1..=n {
        classes.entry(colours[v - 1]).or_default().push(v);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();

    let mut best: Option<Vec<(usize, usize, usize)>> = None;
    let mut ordering = Vec::with_capacity(n);
    let mut label = vec![0usize; n + 1];
    search_orderings(q, &classes, 0, &mut ordering, &mut label, &mut best);
    let arrows = best.unwrap_or_default();
    Quiver::new(n, arrows).expect("relabelling preserves validity")
}

fn search_orderings(
    q: &Quiver,
    classes: &[Vec<usize>],
    class: usize,
    ordering: &mut Vec<usize>,
    label: &mut [usize],
    best: &mut Option<Vec<(usize, usize, usize)>>,
) {
    if class == classes.len() {
        for (i, &v) in ordering.iter().enumerate() {
            label[v] = i + 1;
        }
        let mut key: Vec<(usize, usize, usize)> = q
            .arrows()
            .map(|(s, t, m)| (label[s], label[t], m))
            .collect();
        key.sort_unstable();
        if best.as_ref().is_none_or(|b| key < *b) {
            *best = Some(key);
        }
        return;
    }
    let members = &classes[class];
    permute(members.clone(), 0, &mut |perm| {
        let mark = ordering.len();
        ordering.extend_from_slice(perm);
        search_orderings(q, classes, class + 1, ordering, label, best);
        ordering.truncate(mark);
    });
}

fn permute(mut items: Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k + 1 >= items.len() {
        visit(&items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items.clone(), k + 1, visit);
        items.swap(k, i);
    }
}
