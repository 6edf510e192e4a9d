use cluster_groups::braid::BraidGraph;
use cluster_groups::groups::{evaluate_word, generate, pi_q, transposition_to_word, Permutation, Word};
use cluster_groups::presentation::{check_homomorphism, group_order, todd_coxeter};
use cluster_groups::quiver::{are_isomorphic, mutation_class, mutation_type_a};
use cluster_groups::theorems::{self, Caps};
use cluster_groups::triangulation::{enumerate_triangulations, triangulation_of_quiver, Diagonal};
use cluster_groups::{
    MultiTriangulation, MutationTypeA, Presentation, Quiver, SetPartition, Triangulation,
    YoungSubgroup,
};

const CAP: usize = 1_000_000;

fn q(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    Quiver::new(n, arrows.iter().map(|&(s, t)| (s, t, 1))).unwrap()
}

fn example_quiver() -> Quiver {
    q(4, &[(2, 1), (3, 2), (1, 3), (4, 3)])
}

fn example_heptagon() -> MultiTriangulation {
    let t = Triangulation::from_pairs(7, &[(0, 2), (0, 5), (2, 4), (2, 5)]).unwrap();
    let labels = [(1, (0, 5)), (2, (0, 2)), (3, (2, 5)), (4, (2, 4))]
        .into_iter()
        .map(|(l, (a, b))| (l, (0, Diagonal::new(a, b))))
        .collect();
    MultiTriangulation::new(vec![t], labels).unwrap()
}

#[test]
fn heptagon_pipeline() {
    let mt = example_heptagon();
    assert_eq!(mt.quiver_of(), example_quiver());
    let g = BraidGraph::of(&mt);
    assert_eq!(g.vertex_count(), 5);
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![1, 1, 1, 2, 3]);
    assert!(g.is_forest());

    let found = triangulation_of_quiver(&example_quiver(), CAP).unwrap();
    assert_eq!(found.quiver_of(), example_quiver());
    assert!(BraidGraph::of(&found).labeled_isomorphism(&g).is_some());

    let p = Presentation::from_quiver(&example_quiver());
    assert!(check_homomorphism(&p, &pi_q(&g)).unwrap());
    assert_eq!(group_order(&p, CAP).unwrap(), 120);
}

#[test]
fn mutation_type_of_the_example() {
    let kind = mutation_type_a(&example_quiver(), 1000).unwrap().unwrap();
    assert_eq!(kind, MutationTypeA::new(vec![4]));
    assert_eq!(kind.group_order(), 120);
    let linear = Quiver::linear_a(4);
    assert!(mutation_class(&linear, 1000)
        .unwrap()
        .iter()
        .any(|m| are_isomorphic(m, &example_quiver()).is_some()));
}

#[test]
fn triangle_quiver_star_and_parabolic() {
    let tri = q(3, &[(1, 2), (2, 3), (3, 1)]);
    let mt = triangulation_of_quiver(&tri, CAP).unwrap();
    let g = BraidGraph::of(&mt);
    let mut degrees = g.degrees();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![1, 1, 1, 3]);
    let rho = g.rho(&[1, 2]);
    assert_eq!(YoungSubgroup::new(rho.clone()).order(), 6);
    assert_eq!(rho.parts().iter().map(Vec::len).max(), Some(3));
    let report = theorems::verify_parabolic_presentation(&tri, &[1, 2], Caps::default()).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn presentation_orders_agree_with_permutation_closure() {
    // the oracle is the plain closure of the transpositions (k k+1)
    for n in 1..=5 {
        let gens: Vec<Permutation> = (1..=n)
            .map(|k| Permutation::transposition(n + 1, k, k + 1).unwrap())
            .collect();
        let closure = generate(n + 1, &gens, CAP).unwrap().order();
        let presented = group_order(&Presentation::from_quiver(&Quiver::linear_a(n)), CAP).unwrap();
        assert_eq!(presented, closure, "A{n}");
    }
}

#[test]
fn indices_of_parabolic_subgroups() {
    let p = Presentation::from_quiver(&Quiver::linear_a(3));
    let index = |gens: &[&[usize]]| {
        let words: Vec<Word> = gens.iter().map(|w| Word::new(*w)).collect();
        todd_coxeter(&p, &words, CAP).unwrap()
    };
    assert_eq!(index(&[]), 24);
    assert_eq!(index(&[&[1]]), 12);
    assert_eq!(index(&[&[1], &[2]]), 4);
    assert_eq!(index(&[&[1], &[3]]), 6);
    assert_eq!(index(&[&[1], &[2], &[3]]), 1);
}

#[test]
fn suite_counts() {
    assert_eq!(theorems::verify_flip_mutation(4).checked, 2);
    assert_eq!(theorems::verify_flip_mutation(5).checked, 10);
    assert_eq!(theorems::verify_flip_mutation(7).checked, 168);
    let braid = theorems::verify_braid_graph_well_defined(3);
    assert!(braid.passed());
    assert!(braid.notes[0].starts_with("14 triangulations"));
    let lattice = theorems::verify_partition_lattice(&example_quiver(), Caps::default()).unwrap();
    assert_eq!(lattice.checked, 2 * 256);
    for (a, b, order) in [(1, 1, 4u128), (2, 1, 12), (2, 2, 36)] {
        let r = theorems::verify_direct_product(&Quiver::linear_a(a), &Quiver::linear_a(b), Caps::default()).unwrap();
        assert!(r.passed());
        let union = Quiver::linear_a(a).disjoint_union(&Quiver::linear_a(b));
        assert_eq!(group_order(&Presentation::from_quiver(&union), CAP).unwrap() as u128, order);
    }
}

#[test]
fn incomparable_singletons_in_the_example() {
    let g = BraidGraph::of(&example_heptagon());
    let (r1, r2) = (g.rho(&[1]), g.rho(&[2]));
    assert!(!r1.refines(&r2).unwrap());
    assert!(!r2.refines(&r1).unwrap());
    assert_eq!(r1.meet(&r2).unwrap(), SetPartition::singletons(5));
}

#[test]
fn transposition_words_in_the_example() {
    let g = BraidGraph::of(&example_heptagon());
    let imgs = pi_q(&g);
    for x in 1..=5 {
        for y in x + 1..=5 {
            let w = transposition_to_word(&g, x, y).unwrap();
            assert_eq!(w.reversed(), w);
            assert_eq!(
                evaluate_word(&w, &imgs).unwrap(),
                Permutation::transposition(5, x, y).unwrap()
            );
        }
    }
}

#[test]
fn every_triangulation_gives_a_type_a_quiver() {
    for m in 4..=8 {
        for t in enumerate_triangulations(m) {
            let q = MultiTriangulation::single(t).quiver_of();
            let kind = mutation_type_a(&q, 10_000).unwrap();
            assert_eq!(kind, Some(MutationTypeA::new(vec![m - 3])));
        }
    }
}
