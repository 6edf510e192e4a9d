//! Cluster group presentations and coset enumeration.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{evaluate_word, GeneratorImages, Word};
use crate::quiver::Quiver;

/// Generators `t_1, ..., t_n` and relators, each asserted equal to `e`.
///
/// The involution relator `t_i t_i` is always present, so words never need
/// inverse letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    #[serde(rename = "generators")]
    generator_count: usize,
    relators: Vec<Word>,
}

impl Presentation {
    /// Checks letters and prepends any missing involution relators.
    pub fn new(generator_count: usize, relators: Vec<Word>) -> Result<Presentation> {
        for w in &relators {
            if let Some(&bad) = w.letters().iter().find(|&&l| l == 0 || l > generator_count) {
                return Err(Error::UnknownGenerator(bad));
            }
        }
        let mut all: Vec<Word> = (1..=generator_count)
            .map(|i| Word::new([i, i]))
            .filter(|inv| !relators.contains(inv))
            .collect();
        all.extend(relators);
        Ok(Presentation {
            generator_count,
            relators: all,
        })
    }

    /// The cluster group presentation of `q`.
    ///
    /// Unjoined pairs commute, simply joined pairs braid, pairs joined by a
    /// multiple arrow contribute nothing. Each chordless oriented cycle
    /// `i_1 → ... → i_r → i_1` of simple arrows contributes the `r - 1`
    /// relators `u_k u_{k+1}^{-1}`, where `u_k` is the word of length
    /// `2r - 2` reading the cycle from `i_k`.
    pub fn from_quiver(q: &Quiver) -> Presentation {
        let n = q.n();
        let mut relators: Vec<Word> = (1..=n).map(|i| Word::new([i, i])).collect();
        for i in 1..=n {
            for j in i + 1..=n {
                let m = q.multiplicity(i, j) + q.multiplicity(j, i);
                let power = match m {
                    0 => 2,
                    1 => 3,
                    _ => continue,
                };
                relators.push(Word((0..power).flat_map(|_| [i, j]).collect()));
            }
        }
        for cycle in q.chordless_oriented_simple_cycles() {
            let r = cycle.len();
            let u = |k: usize| -> Word { Word((0..2 * r - 2).map(|s| cycle[(k + s) % r]).collect()) };
            for k in 0..r - 1 {
                relators.push(u(k).concat(&u(k + 1).reversed()));
            }
        }
        Presentation {
            generator_count: n,
            relators,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// One relator per line, letters as space-separated indices.
    pub fn to_text(&self) -> String {
        self.relators
            .iter()
            .map(|w| w.to_machine() + "\n")
            .collect()
    }

    /// Reads [`Presentation::to_text`] output; blank lines and `#` comments
    /// are skipped.
    pub fn from_text(generator_count: usize, text: &str) -> Result<Presentation> {
        let mut relators = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let letters = line
                .split_whitespace()
                .map(|tok| {
                    tok.trim_start_matches('t')
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad generator {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            relators.push(Word(letters));
        }
        Presentation::new(generator_count, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generator_count).map(|i| format!("t{i}")).collect();
        writeln!(f, "generators: {}", gens.join(" "))?;
        for w in &self.relators {
            writeln!(f, "{w} = e")?;
        }
        Ok(())
    }
}

pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

/// True iff every relator maps to the identity.
pub fn check_homomorphism(p: &Presentation, images: &GeneratorImages) -> Result<bool> {
    for i in 1..=p.generator_count {
        if images.transposition(i).is_none() {
            return Err(Error::UnknownGenerator(i));
        }
    }
    for w in &p.relators {
        if !evaluate_word(w, images)?.is_identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A complete coset table: `rows[c][g - 1]` is the coset `c · t_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    rows: Vec<Vec<usize>>,
    complete: bool,
    peak: usize,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Largest number of live cosets held at any point of the enumeration.
    pub fn peak_cosets(&self) -> usize {
        self.peak
    }

    /// Every column is a permutation of the cosets equal to its inverse.
    pub fn columns_are_involutions(&self) -> bool {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width).all(|g| self.rows.iter().enumerate().all(|(c, row)| self.rows[row[g]][g] == c))
    }
}

const UNDEF: u32 = u32::MAX;

struct Enumerator<'a> {
    gens: usize,
    relators: &'a [Vec<u32>],
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    peak: usize,
    cap: usize,
    queue: VecDeque<u32>,
}

impl<'a> Enumerator<'a> {
    fn new(gens: usize, relators: &'a [Vec<u32>], cap: usize) -> Self {
        Enumerator {
            gens,
            relators,
            table: vec![UNDEF; gens],
            parent: vec![0],
            live: 1,
            peak: 1,
            cap,
            queue: VecDeque::new(),
        }
    }

    fn allocated(&self) -> usize {
        self.parent.len()
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    #[inline]
    fn get(&self, c: u32, g: u32) -> u32 {
        self.table[c as usize * self.gens + g as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, g: u32, d: u32) {
        self.table[c as usize * self.gens + g as usize] = d;
    }

    fn define(&mut self, c: u32, g: u32) -> Result<()> {
        if self.live >= self.cap {
            return Err(Error::CapExceeded {
                what: "cosets",
                cap: self.cap,
            });
        }
        let d = self.allocated() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.gens));
        self.live += 1;
        self.peak = self.peak.max(self.live);
        self.set(c, g, d);
        self.set(d, g, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != root {
            let next = self.parent[c as usize];
            self.parent[c as usize] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop as usize] = keep;
        self.live -= 1;
        self.queue.push_back(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for g in 0..self.gens as u32 {
                let f = self.get(e, g);
                if f == UNDEF {
                    continue;
                }
                self.set(f, g, UNDEF);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let e1g = self.get(e1, g);
                if e1g != UNDEF {
                    self.merge(f1, e1g);
                    continue;
                }
                let f1g = self.get(f1, g);
                if f1g != UNDEF {
                    self.merge(e1, f1g);
                    continue;
                }
                self.set(e1, g, f1);
                self.set(f1, g, e1);
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[u32]) -> Result<()> {
        self.scan(c, w, true)
    }

    /// Scans `w` from `c`, recording deductions and coincidences, and
    /// defines new cosets to complete the scan only when `fill` is set.
    fn scan(&mut self, c: u32, w: &[u32], fill: bool) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() - 1);
        loop {
            while i <= j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i && self.get(b, w[j]) != UNDEF {
                b = self.get(b, w[j]);
                if j == 0 {
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                self.set(f, w[i], b);
                self.set(b, w[i], f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Scans all relators at `c` and defines its missing entries. Safe to
    /// repeat after an interruption.
    fn close(&mut self, c: u32) -> Result<()> {
        let relators = self.relators;
        for rel in relators {
            if !self.alive(c) {
                return Ok(());
            }
            self.scan_and_fill(c, rel)?;
        }
        for g in 0..self.gens as u32 {
            if !self.alive(c) {
                return Ok(());
            }
            if self.get(c, g) == UNDEF {
                self.define(c, g)?;
            }
        }
        Ok(())
    }

    /// Renumbers the live cosets consecutively and returns the new index
    /// of each old one (`UNDEF` for dead cosets).
    fn compact(&mut self) -> Vec<u32> {
        let mut map = vec![UNDEF; self.allocated()];
        let mut next = 0u32;
        for c in 0..self.allocated() as u32 {
            if self.alive(c) {
                map[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.gens);
        for c in 0..self.allocated() as u32 {
            if self.alive(c) {
                for g in 0..self.gens as u32 {
                    let d = self.get(c, g);
                    table.push(if d == UNDEF { UNDEF } else { map[d as usize] });
                }
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        map
    }

    /// Scans every relator at every live coset without defining any,
    /// returning true if some cosets collapsed.
    fn lookahead(&mut self) -> bool {
        let before = self.live;
        let relators = self.relators;
        for d in 0..self.allocated() as u32 {
            for rel in relators {
                if !self.alive(d) {
                    break;
                }
                self.scan(d, rel, false).expect("no definitions");
            }
        }
        self.live < before
    }

    fn run(&mut self, subgroup: &[Vec<u32>]) -> Result<()> {
        for w in subgroup {
            let c = self.rep(0);
            self.scan_and_fill(c, w)?;
        }
        let mut c = 0u32;
        while (c as usize) < self.allocated() {
            if self.allocated() - self.live > self.live.max(1024) {
                let map = self.compact();
                c = map[c as usize..]
                    .iter()
                    .copied()
                    .find(|&m| m != UNDEF)
                    .unwrap_or(self.allocated() as u32);
                continue;
            }
            match self.close(c) {
                Ok(()) => c += 1,
                Err(e @ Error::CapExceeded { .. }) => {
                    if !self.lookahead() {
                        return Err(e);
                    }
                }
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }
}

fn letters(p: &Presentation, w: &Word) -> Result<Vec<u32>> {
    w.letters()
        .iter()
        .map(|&l| {
            if l == 0 || l > p.generator_count {
                Err(Error::UnknownGenerator(l))
            } else {
                Ok((l - 1) as u32)
            }
        })
        .collect()
}

/// Enumerates the cosets of the subgroup generated by `subgroup`, using
/// at most `cap` live cosets.
pub fn enumerate_cosets(p: &Presentation, subgroup: &[Word], cap: usize) -> Result<CosetTable> {
    let relators = p
        .relators
        .iter()
        .map(|w| letters(p, w))
        .collect::<Result<Vec<_>>>()?;
    let subgroup = subgroup
        .iter()
        .map(|w| letters(p, w))
        .collect::<Result<Vec<_>>>()?;
    let mut e = Enumerator::new(p.generator_count, &relators, cap.max(1));
    e.run(&subgroup)?;
    e.compact();
    let rows = e
        .table
        .chunks(p.generator_count.max(1))
        .take(e.allocated())
        .map(|row| {
            if p.generator_count == 0 {
                Vec::new()
            } else {
                row.iter().map(|&d| d as usize).collect()
            }
        })
        .collect::<Vec<_>>();
    let rows = if p.generator_count == 0 { vec![Vec::new()] } else { rows };
    let complete = rows.iter().flatten().all(|&d| d != UNDEF as usize);
    Ok(CosetTable {
        rows,
        complete,
        peak: e.peak,
    })
}

/// The index of `⟨subgroup⟩` in the presented group.
pub fn todd_coxeter(p: &Presentation, subgroup: &[Word], cap: usize) -> Result<usize> {
    Ok(enumerate_cosets(p, subgroup, cap)?.coset_count())
}

pub fn group_order(p: &Presentation, cap: usize) -> Result<usize> {
    todd_coxeter(p, &[], cap)
}
