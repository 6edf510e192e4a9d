//! Exhaustive verification suites. Each suite returns a report listing
//! every failing instance; resource caps make an instance inconclusive,
//! never a failure.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::BraidGraph;
use crate::error::{Error, Result};
use crate::groups::{
    evaluate_word, generate, permutation_to_word, pi_q, GeneratorImages, Permutation,
    SetPartition, YoungSubgroup,
};
use crate::presentation::{check_homomorphism, group_order, Presentation};
use crate::quiver::{
    are_isomorphic, canonical_form, mutation_class_to_depth, mutation_type_a, MutationTypeA,
    Quiver,
};
use crate::triangulation::{enumerate_triangulations, triangulation_of_quiver, MultiTriangulation};

/// Resource limits shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Members of a mutation class.
    pub class: usize,
    /// Live cosets during coset enumeration.
    pub cosets: usize,
    /// Elements of a generated permutation group.
    pub elements: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            class: 100_000,
            cosets: 1_000_000,
            elements: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub statement: String,
    pub checked: usize,
    pub failures: Vec<Failure>,
    pub ms: u64,
    /// Instances abandoned because a cap was hit.
    #[serde(default)]
    pub inconclusive: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn verdict(&self) -> Verdict {
        if !self.failures.is_empty() {
            Verdict::Fail
        } else if !self.inconclusive.is_empty() {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict() == Verdict::Pass
    }

    /// Combines reports of the same statement.
    pub fn merge(statement: &str, reports: Vec<VerificationReport>) -> VerificationReport {
        let mut out = VerificationReport {
            statement: statement.to_string(),
            checked: 0,
            failures: Vec::new(),
            ms: 0,
            inconclusive: Vec::new(),
            notes: Vec::new(),
        };
        for r in reports {
            out.checked += r.checked;
            out.failures.extend(r.failures);
            out.inconclusive.extend(r.inconclusive);
            out.notes.extend(r.notes);
            out.ms += r.ms;
        }
        out
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.verdict() {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        writeln!(f, "{:<12} {}", verdict, self.statement)?;
        writeln!(f, "  checked       {}", self.checked)?;
        writeln!(f, "  failures      {}", self.failures.len())?;
        writeln!(f, "  inconclusive  {}", self.inconclusive.len())?;
        writeln!(f, "  ms            {}", self.ms)?;
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        for fail in self.failures.iter().take(20) {
            writeln!(
                f,
                "  - {}: expected {}, got {}",
                fail.instance, fail.expected, fail.actual
            )?;
        }
        if self.failures.len() > 20 {
            writeln!(f, "  ... {} more", self.failures.len() - 20)?;
        }
        for inst in self.inconclusive.iter().take(5) {
            writeln!(f, "  ? {inst}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<Failure>,
    inconclusive: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, instance: impl FnOnce() -> String, expected: impl fmt::Display, actual: impl fmt::Display) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure {
                instance: instance(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, instance: impl FnOnce() -> String, expected: T, actual: T) {
        let ok = expected == actual;
        self.check(ok, instance, expected, actual);
    }

    fn error(&mut self, instance: String, e: Error) {
        self.checked += 1;
        match e {
            Error::CapExceeded { .. } => self.inconclusive.push(format!("{instance}: {e}")),
            _ => self.failures.push(Failure {
                instance,
                expected: "no error".into(),
                actual: e.to_string(),
            }),
        }
    }

    fn absorb(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.inconclusive.extend(other.inconclusive);
        self.notes.extend(other.notes);
    }

    fn finish(self, statement: &str, started: Instant) -> VerificationReport {
        VerificationReport {
            statement: statement.to_string(),
            checked: self.checked,
            failures: self.failures,
            ms: started.elapsed().as_millis() as u64,
            inconclusive: self.inconclusive,
            notes: self.notes,
        }
    }
}

/// Runs `f` on every instance in parallel and merges the tallies in
/// instance order.
fn par_tally<T: Sync>(instances: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    let parts: Vec<Tally> = instances.par_iter().map(f).collect();
    let mut total = Tally::default();
    for part in parts {
        total.absorb(part);
    }
    total
}

/// One quiver per isomorphism class of type `A_n`, each with a
/// triangulation of the `(n + 3)`-gon realising it under the default
/// labelling. Exhaustive because every such quiver comes from a
/// triangulation.
pub fn type_a_representatives(n: usize) -> Vec<MultiTriangulation> {
    let mut seen = HashSet::new();
    enumerate_triangulations(n + 3)
        .into_iter()
        .map(MultiTriangulation::single)
        .filter(|mt| seen.insert(canonical_form(&mt.quiver_of())))
        .collect()
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .map(|mask| (1..=n).filter(|&i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

fn set_name(set: &[usize]) -> String {
    let body: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", body.join(","))
}

/// Everything the type-A suites derive from a quiver.
struct Realisation {
    quiver: Quiver,
    triangulation: MultiTriangulation,
    graph: BraidGraph,
    images: GeneratorImages,
    kind: MutationTypeA,
}

impl Realisation {
    fn of_quiver(q: &Quiver, caps: Caps) -> Result<Realisation> {
        Ok(Realisation::of_triangulation(triangulation_of_quiver(q, caps.class)?))
    }

    fn of_triangulation(mt: MultiTriangulation) -> Realisation {
        let graph = BraidGraph::of(&mt);
        let kind = MutationTypeA::new(mt.components().iter().map(|t| t.diagonal_count()).collect());
        Realisation {
            quiver: mt.quiver_of(),
            images: pi_q(&graph),
            triangulation: mt,
            graph,
            kind,
        }
    }

    fn n(&self) -> usize {
        self.quiver.n()
    }

    fn image_perms(&self, set: &[usize]) -> Vec<Permutation> {
        set.iter().map(|&i| self.images.image(i).expect("generator")).collect()
    }
}

/// Flipping diagonal `i` mutates the quiver at `i`, over every
/// triangulation of the `m`-gon.
pub fn verify_flip_mutation(m: usize) -> VerificationReport {
    let started = Instant::now();
    let triangulations: Vec<_> = enumerate_triangulations(m)
        .into_iter()
        .map(MultiTriangulation::single)
        .collect();
    let tally = par_tally(&triangulations, |mt| {
        let mut t = Tally::default();
        let q = mt.quiver_of();
        for i in 1..=mt.n() {
            let instance = || format!("{} flip t{i}", mt.components()[0]);
            match (mt.flip(i), q.mutate(i)) {
                (Ok(flipped), Ok(mutated)) => t.eq(instance, mutated, flipped.quiver_of()),
                (Err(e), _) | (_, Err(e)) => t.error(instance(), e),
            }
        }
        t
    });
    tally.finish(&format!("flip-mutation m={m}"), started)
}

/// Triangulations of the `(n + 3)`-gon with isomorphic quivers have
/// braid graphs isomorphic compatibly with the quiver isomorphism, and
/// form a single rotation orbit.
pub fn verify_braid_graph_well_defined(n: usize) -> VerificationReport {
    let started = Instant::now();
    let mut classes: HashMap<Quiver, Vec<MultiTriangulation>> = HashMap::new();
    let mut order = Vec::new();
    for t in enumerate_triangulations(n + 3) {
        let mt = MultiTriangulation::single(t);
        let key = canonical_form(&mt.quiver_of());
        let members = classes.entry(key.clone()).or_default();
        if members.is_empty() {
            order.push(key);
        }
        members.push(mt);
    }
    let grouped: Vec<&Vec<MultiTriangulation>> = order.iter().map(|k| &classes[k]).collect();
    let mut tally = par_tally(&grouped, |members| {
        let mut t = Tally::default();
        let rep = &members[0];
        let rep_quiver = rep.quiver_of();
        let rep_graph = BraidGraph::of(rep);
        let rep_t = &rep.components()[0];
        for mt in members.iter() {
            let instance = || format!("{} against {}", mt.components()[0], rep_t);
            match are_isomorphic(&mt.quiver_of(), &rep_quiver) {
                None => t.check(false, instance, "isomorphic quivers", "none"),
                Some(f) => {
                    let graph = BraidGraph::of(mt).relabel_edges(|l| f[l - 1]);
                    let iso = graph.labeled_isomorphism(&rep_graph).is_some();
                    t.check(iso, instance, "label-compatible braid graph isomorphism", "none");
                }
            }
            let rotated = rep_t.rotation_equivalent(&mt.components()[0]).is_some();
            t.check(rotated, instance, "rotation of the representative", "not a rotation");
        }
        t
    });
    let total: usize = grouped.iter().map(|m| m.len()).sum();
    tally.notes.push(format!("{total} triangulations in {} classes", grouped.len()));
    tally.finish(&format!("braid-graph n={n}"), started)
}

/// `π_Q` respects the relators, and the presented group, the generated
/// permutation group and `Π (n_j + 1)!` all have the same order.
pub fn verify_group_iso(q: &Quiver, caps: Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let r = Realisation::of_quiver(q, caps)?;
    Ok(group_iso(&r, caps).finish("group-iso", started))
}

/// [`verify_group_iso`] over every type-`A_n` isomorphism class.
pub fn verify_group_iso_all(n: usize, caps: Caps) -> VerificationReport {
    let started = Instant::now();
    let reps: Vec<_> = type_a_representatives(n)
        .into_iter()
        .map(Realisation::of_triangulation)
        .collect();
    par_tally(&reps, |r| group_iso(r, caps)).finish(&format!("group-iso n={n}"), started)
}

fn group_iso(r: &Realisation, caps: Caps) -> Tally {
    let mut t = Tally::default();
    let name = r.quiver.to_string();
    let p = Presentation::from_quiver(&r.quiver);
    let expected = r.kind.group_order();
    match check_homomorphism(&p, &r.images) {
        Ok(ok) => t.check(ok, || format!("{name}: relators under pi_Q"), "identity", "non-identity"),
        Err(e) => t.error(format!("{name}: relators under pi_Q"), e),
    }
    match generate(r.images.degree(), &r.image_perms(&(1..=r.n()).collect::<Vec<_>>()), caps.elements) {
        Ok(g) => t.eq(|| format!("{name}: generated group order"), expected, g.order() as u128),
        Err(e) => t.error(format!("{name}: generated group order"), e),
    }
    match group_order(&p, caps.cosets) {
        Ok(order) => t.eq(|| format!("{name}: presentation order"), expected, order as u128),
        Err(e) => t.error(format!("{name}: presentation order"), e),
    }
    t
}

fn partitions(r: &Realisation) -> Vec<SetPartition> {
    subsets(r.n()).iter().map(|set| r.graph.rho(set)).collect()
}

/// `ρ_{I∩J} = ρ_I ∧ ρ_J` and `ρ_{I∪J} = ρ_I ∨ ρ_J` for all pairs of
/// generator subsets.
pub fn verify_partition_lattice(q: &Quiver, caps: Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let r = Realisation::of_quiver(q, caps)?;
    Ok(partition_lattice(&r).finish("lattice", started))
}

pub fn verify_partition_lattice_all(n: usize) -> VerificationReport {
    over_representatives(n, "lattice", partition_lattice)
}

fn over_representatives(
    n: usize,
    name: &str,
    f: impl Fn(&Realisation) -> Tally + Sync + Send,
) -> VerificationReport {
    let started = Instant::now();
    let reps: Vec<_> = type_a_representatives(n)
        .into_iter()
        .map(Realisation::of_triangulation)
        .collect();
    par_tally(&reps, f).finish(&format!("{name} n={n}"), started)
}

fn partition_lattice(r: &Realisation) -> Tally {
    let rho = partitions(r);
    let sets = subsets(r.n());
    let masks: Vec<usize> = (0..rho.len()).collect();
    par_tally(&masks, |&i| {
        let mut t = Tally::default();
        for j in 0..rho.len() {
            let instance = |op: &'static str| {
                let sets = &sets;
                move || format!("{}: I={} J={} {op}", r.quiver, set_name(&sets[i]), set_name(&sets[j]))
            };
            match rho[i].meet(&rho[j]) {
                Ok(meet) => t.eq(instance("meet"), meet, rho[i & j].clone()),
                Err(e) => t.error(instance("meet")(), e),
            }
            match rho[i].join(&rho[j]) {
                Ok(join) => t.eq(instance("join"), join, rho[i | j].clone()),
                Err(e) => t.error(instance("join")(), e),
            }
        }
        t
    })
}

/// `I ⊆ J` iff `ρ_I ≤ ρ_J` iff every generator of `I` lies in `Y(ρ_J)`;
/// moreover `G_I ∩ G_J = G_{I∩J}` and `|G_{I∪J}| = |Y(ρ_I ∨ ρ_J)|` inside
/// the symmetric group.
pub fn verify_lattice_isomorphism(q: &Quiver, caps: Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let r = Realisation::of_quiver(q, caps)?;
    Ok(lattice_isomorphism(&r, caps).finish("lattice-iso", started))
}

pub fn verify_lattice_isomorphism_all(n: usize, caps: Caps) -> VerificationReport {
    over_representatives(n, "lattice-iso", |r| lattice_isomorphism(r, caps))
}

fn lattice_isomorphism(r: &Realisation, caps: Caps) -> Tally {
    let sets = subsets(r.n());
    let rho = partitions(r);
    let mut t = Tally::default();
    let groups: Vec<Option<HashSet<Permutation>>> = sets
        .iter()
        .map(|set| match generate(r.images.degree(), &r.image_perms(set), caps.elements) {
            Ok(g) => Some(g.elements),
            Err(e) => {
                t.error(format!("{}: G_{}", r.quiver, set_name(set)), e);
                None
            }
        })
        .collect();
    let indices: Vec<usize> = (0..sets.len()).collect();
    let pairs = par_tally(&indices, |&i| {
        let mut t = Tally::default();
        for j in 0..sets.len() {
            let instance = || format!("{}: I={} J={}", r.quiver, set_name(&sets[i]), set_name(&sets[j]));
            let subset = i & j == i;
            let refines = rho[i].refines(&rho[j]).expect("same degree");
            let young = YoungSubgroup::new(rho[j].clone());
            let contained = sets[i].iter().all(|&g| {
                young
                    .contains(&r.images.image(g).expect("generator"))
                    .expect("same degree")
            });
            t.eq(instance, subset, refines);
            t.eq(instance, subset, contained);
            if let (Some(gi), Some(gj), Some(gm)) = (&groups[i], &groups[j], &groups[i & j]) {
                let common = gi.iter().filter(|p| gj.contains(p)).count();
                t.eq(instance, gm.len(), common);
            }
            if let Some(gu) = &groups[i | j] {
                let join = rho[i].join(&rho[j]).expect("same degree");
                t.eq(instance, YoungSubgroup::new(join).order(), gu.len() as u128);
            }
        }
        t
    });
    t.absorb(pairs);
    t
}

/// No generator outside `I` lies in `Y(ρ_I)`, and every generator in `I`
/// does.
pub fn verify_generator_intersection(q: &Quiver, caps: Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let r = Realisation::of_quiver(q, caps)?;
    Ok(generator_intersection(&r).finish("generator-intersection", started))
}

pub fn verify_generator_intersection_all(n: usize) -> VerificationReport {
    over_representatives(n, "generator-intersection", generator_intersection)
}

fn generator_intersection(r: &Realisation) -> Tally {
    let mut t = Tally::default();
    for (set, rho) in subsets(r.n()).iter().zip(partitions(r)) {
        let young = YoungSubgroup::new(rho);
        for g in 1..=r.n() {
            let inside = young.contains(&r.images.image(g).expect("generator")).expect("same degree");
            t.eq(
                || format!("{}: I={} t{g}", r.quiver, set_name(set)),
                set.contains(&g),
                inside,
            );
        }
    }
    t
}

/// For the full subquiver `Q_I`: it is of type A, `t'_i ↦ π_Q(t_i)`
/// respects its relators, its presented group has order `|Y(ρ_I)|` =
/// `|⟨π_Q(I)⟩|`, and cutting a triangulation of `Q` along the
/// complement of `I` yields a braid graph equal to `Γ_I` with labels.
pub fn verify_parabolic_presentation(q: &Quiver, set: &[usize], caps: Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let r = Realisation::of_quiver(q, caps)?;
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&v) = set.iter().find(|&&v| v == 0 || v > r.n()) {
        return Err(Error::VertexOutOfRange { vertex: v, n: r.n() });
    }
    Ok(parabolic(&r, &set, caps).finish("parabolic", started))
}

/// [`verify_parabolic_presentation`] for every subset `I`.
pub fn verify_parabolic_all_subsets(q: &Quiver, caps: Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let r = Realisation::of_quiver(q, caps)?;
    let sets = subsets(r.n());
    Ok(par_tally(&sets, |set| parabolic(&r, set, caps)).finish("parabolic", started))
}

pub fn verify_parabolic_all(n: usize, caps: Caps) -> VerificationReport {
    over_representatives(n, "parabolic", |r| {
        let sets = subsets(r.n());
        par_tally(&sets, |set| parabolic(r, set, caps))
    })
}

fn parabolic(r: &Realisation, set: &[usize], caps: Caps) -> Tally {
    let mut t = Tally::default();
    let name = format!("{}: I={}", r.quiver, set_name(set));
    let (sub, map) = r.quiver.full_subquiver(set).expect("vertices in range");
    match mutation_type_a(&sub, caps.class) {
        Ok(kind) => t.check(kind.is_some(), || format!("{name} Q_I type"), "type A", "not type A"),
        Err(e) => t.error(format!("{name} Q_I type"), e),
    }
    let p = Presentation::from_quiver(&sub);
    let images = r.images.pull_back(&map).expect("generators exist");
    match check_homomorphism(&p, &images) {
        Ok(ok) => t.check(ok, || format!("{name} homomorphism"), "identity", "non-identity"),
        Err(e) => t.error(format!("{name} homomorphism"), e),
    }
    let young = YoungSubgroup::new(r.graph.rho(set)).order();
    match generate(images.degree(), &images.permutations(), caps.elements) {
        Ok(g) => t.eq(|| format!("{name} generated order"), young, g.order() as u128),
        Err(e) => t.error(format!("{name} generated order"), e),
    }
    match group_order(&p, caps.cosets) {
        Ok(order) => t.eq(|| format!("{name} presentation order"), young, order as u128),
        Err(e) => t.error(format!("{name} presentation order"), e),
    }
    let removed: Vec<usize> = (1..=r.n()).filter(|i| !set.contains(i)).collect();
    match r.triangulation.cut_along(&removed) {
        Ok(cut) => {
            t.eq(|| format!("{name} quiver of the cut"), sub.clone(), cut.triangulation.quiver_of());
            let cut_graph = BraidGraph::of(&cut.triangulation).relabel_edges(|k| cut.label_map[k - 1]);
            let iso = cut_graph.labeled_isomorphism(&r.graph.restrict(set)).is_some();
            t.check(iso, || format!("{name} braid graph of the cut"), "Gamma_I", "no labelled isomorphism");
        }
        Err(e) => t.error(format!("{name} cut"), e),
    }
    t
}

/// Every quiver in the mutation class of `q` (to `depth` rounds when
/// given) presents a group of order `Π (n_j + 1)!`.
pub fn verify_mutation_invariance(q: &Quiver, depth: Option<usize>, caps: Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let kind = mutation_type_a(q, caps.class)?.ok_or(Error::NotMutationTypeA)?;
    let expected = kind.group_order();
    let class = mutation_class_to_depth(q, caps.class, depth)?;
    let mut tally = par_tally(&class, |member| {
        let mut t = Tally::default();
        match group_order(&Presentation::from_quiver(member), caps.cosets) {
            Ok(order) => t.eq(|| member.to_string(), expected, order as u128),
            Err(e) => t.error(member.to_string(), e),
        }
        t
    });
    tally.notes.push(format!("{} class members, expected order {expected}", class.len()));
    Ok(tally.finish(&format!("order {kind}"), started))
}

/// [`verify_mutation_invariance`] on the whole class of the linear `A_n`.
pub fn verify_order(n: usize, caps: Caps) -> Result<VerificationReport> {
    verify_mutation_invariance(&Quiver::linear_a(n), None, caps)
}

/// The presented group of `q1 ⊔ q2` has order `|G_{q1}| · |G_{q2}|`.
pub fn verify_direct_product(q1: &Quiver, q2: &Quiver, caps: Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut kinds = Vec::new();
    for q in [q1, q2] {
        kinds.push(mutation_type_a(q, caps.class)?.ok_or(Error::NotMutationTypeA)?);
    }
    let mut t = Tally::default();
    let orders: Vec<Option<u128>> = [q1.clone(), q2.clone(), q1.disjoint_union(q2)]
        .iter()
        .map(|q| match group_order(&Presentation::from_quiver(q), caps.cosets) {
            Ok(o) => Some(o as u128),
            Err(e) => {
                t.error(format!("order of {q}"), e);
                None
            }
        })
        .collect();
    if let [Some(a), Some(b), Some(ab)] = orders[..] {
        t.eq(|| format!("G({q1}) x G({q2})"), a * b, ab);
        t.eq(|| format!("G({q1})"), kinds[0].group_order(), a);
        t.eq(|| format!("G({q2})"), kinds[1].group_order(), b);
    }
    Ok(t.finish(&format!("direct-product {} x {}", kinds[0], kinds[1]), started))
}

/// Every element of every `Y(ρ_I)` is reached by its word in `I`.
pub fn verify_word_round_trip(q: &Quiver, caps: Caps) -> Result<VerificationReport> {
    let started = Instant::now();
    let r = Realisation::of_quiver(q, caps)?;
    Ok(word_round_trip(&r).finish("round-trip", started))
}

pub fn verify_word_round_trip_all(n: usize) -> VerificationReport {
    over_representatives(n, "round-trip", word_round_trip)
}

fn word_round_trip(r: &Realisation) -> Tally {
    let sets = subsets(r.n());
    par_tally(&sets, |set| {
        let mut t = Tally::default();
        let graph = r.graph.restrict(set);
        for p in YoungSubgroup::new(graph.components()).elements() {
            let instance = || format!("{}: I={} {p}", r.quiver, set_name(set));
            match permutation_to_word(&graph, &p) {
                Ok(w) => {
                    let letters_ok = w.letters().iter().all(|l| set.contains(l));
                    t.check(letters_ok, instance, "letters in I", &w);
                    match evaluate_word(&w, &r.images) {
                        Ok(back) => t.eq(instance, p.clone(), back),
                        Err(e) => t.error(instance(), e),
                    }
                }
                Err(e) => t.error(instance(), e),
            }
        }
        t
    })
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

    fn triangle() -> Quiver {
        q(3, &[(1, 2), (2, 3), (3, 1)])
    }

    #[test]
    fn flip_mutation_counts() {
        for (m, checked) in [(4, 2), (5, 10), (7, 168)] {
            let r = verify_flip_mutation(m);
            assert!(r.passed(), "{r}");
            assert_eq!(r.checked, checked);
        }
    }

    #[test]
    fn braid_graphs_are_well_defined() {
        let r = verify_braid_graph_well_defined(2);
        assert!(r.passed(), "{r}");
        assert_eq!(r.notes, vec!["5 triangulations in 1 classes".to_string()]);
        for n in [3, 4] {
            let r = verify_braid_graph_well_defined(n);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn representatives() {
        let counts: Vec<usize> = (0..=4).map(|n| type_a_representatives(n).len()).collect();
        assert_eq!(counts[0], 1);
        assert_eq!(counts[1], 1);
        assert_eq!(counts[2], 1);
        // three orientations of the path up to isomorphism, and the 3-cycle
        assert_eq!(counts[3], 4);
    }

    #[test]
    fn group_iso() {
        let caps = Caps::default();
        assert!(verify_group_iso(&example(), caps).unwrap().passed());
        assert!(verify_group_iso(&Quiver::linear_a(1), caps).unwrap().passed());
        assert!(verify_group_iso(&Quiver::empty(2), caps).unwrap().passed());
        let kronecker = Quiver::new(2, [(1, 2, 2)]).unwrap();
        assert_eq!(verify_group_iso(&kronecker, caps), Err(Error::NotMutationTypeA));
    }

    #[test]
    fn lattices() {
        let caps = Caps::default();
        let one = verify_partition_lattice(&Quiver::linear_a(1), caps).unwrap();
        assert!(one.passed());
        assert_eq!(one.checked, 2 * 4);
        let ex = verify_partition_lattice(&example(), caps).unwrap();
        assert!(ex.passed());
        assert_eq!(ex.checked, 2 * 256);
        assert!(verify_lattice_isomorphism(&example(), caps).unwrap().passed());
        let gi = verify_generator_intersection(&example(), caps).unwrap();
        assert!(gi.passed());
        assert_eq!(gi.checked, 16 * 4);
    }

    #[test]
    fn parabolic_subgroups() {
        let caps = Caps::default();
        assert!(verify_parabolic_presentation(&triangle(), &[1, 2], caps).unwrap().passed());
        assert!(verify_parabolic_presentation(&triangle(), &[], caps).unwrap().passed());
        assert!(verify_parabolic_all_subsets(&example(), caps).unwrap().passed());
        assert_eq!(
            verify_parabolic_presentation(&triangle(), &[4], caps),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        );
    }

    #[test]
    fn invariance_and_products() {
        let caps = Caps::default();
        for n in 2..=4 {
            assert!(verify_order(n, caps).unwrap().passed());
        }
        assert!(verify_mutation_invariance(&triangle(), Some(1), caps).unwrap().passed());
        for (a, b) in [(1, 1), (2, 1), (2, 2)] {
            let r = verify_direct_product(&Quiver::linear_a(a), &Quiver::linear_a(b), caps).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn round_trip() {
        let r = verify_word_round_trip(&triangle(), Caps::default()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn caps_make_reports_inconclusive() {
        let caps = Caps {
            cosets: 10,
            ..Caps::default()
        };
        let r = verify_group_iso(&Quiver::linear_a(3), caps).unwrap();
        assert_eq!(r.verdict(), Verdict::Inconclusive);
        assert!(r.failures.is_empty());
    }

    #[test]
    fn report_json() {
        let r = verify_flip_mutation(4);
        let json = serde_json::to_value(&r).unwrap();
        for key in ["statement", "checked", "failures", "ms"] {
            assert!(json.get(key).is_some());
        }
        let back: VerificationReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
