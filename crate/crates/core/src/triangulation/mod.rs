//! Triangulations of convex polygons.
//!
//! Polygon vertices are `0..m` in counterclockwise order. A triangle is
//! always written as its counterclockwise vertex triple `(a, b, c)` with
//! `a < b < c`, whose sides in cyclic order are `{a,b}`, `{b,c}`, `{c,a}`.

mod multi;

pub use multi::{triangulation_of_quiver, Cut, MultiTriangulation};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered pair of polygon vertices, stored with the smaller first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Diagonal(usize, usize);

impl Diagonal {
    pub fn new(a: usize, b: usize) -> Diagonal {
        Diagonal(a.min(b), a.max(b))
    }

    pub fn ends(self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn touches(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// True if the pair joins two distinct non-adjacent vertices of the
    /// `m`-gon.
    pub fn is_diagonal_of(self, m: usize) -> bool {
        let (a, b) = self.ends();
        b < m && b - a >= 2 && b - a <= m.saturating_sub(2)
    }

    fn check(self, m: usize) -> Result<()> {
        if self.is_diagonal_of(m) {
            Ok(())
        } else {
            Err(Error::InvalidDiagonal(self.0, self.1, m))
        }
    }

    fn rotate(self, k: usize, m: usize) -> Diagonal {
        Diagonal::new((self.0 + k) % m, (self.1 + k) % m)
    }
}

impl From<[usize; 2]> for Diagonal {
    fn from([a, b]: [usize; 2]) -> Diagonal {
        Diagonal::new(a, b)
    }
}

impl From<Diagonal> for [usize; 2] {
    fn from(d: Diagonal) -> [usize; 2] {
        [d.0, d.1]
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// True iff the two diagonals of the `m`-gon cross in the interior.
pub fn diagonals_cross(m: usize, d1: Diagonal, d2: Diagonal) -> Result<bool> {
    d1.check(m)?;
    d2.check(m)?;
    Ok(cross_unchecked(d1, d2))
}

fn cross_unchecked(d1: Diagonal, d2: Diagonal) -> bool {
    let (a, b) = d1.ends();
    let (c, d) = d2.ends();
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d)
}

/// A maximal set of pairwise non-crossing diagonals of a convex `m`-gon.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    m: usize,
    diagonals: BTreeSet<Diagonal>,
}

impl Triangulation {
    pub fn new<I>(m: usize, diagonals: I) -> Result<Triangulation>
    where
        I: IntoIterator<Item = Diagonal>,
    {
        if m < 3 {
            return Err(Error::PolygonTooSmall(m));
        }
        let given: Vec<Diagonal> = diagonals.into_iter().collect();
        for d in &given {
            d.check(m)?;
        }
        let set: BTreeSet<Diagonal> = given.iter().copied().collect();
        for (i, &d1) in given.iter().enumerate() {
            for &d2 in &given[i + 1..] {
                if cross_unchecked(d1, d2) {
                    return Err(Error::CrossingDiagonals(d1.0, d1.1, d2.0, d2.1));
                }
            }
        }
        if set.len() != m - 3 || given.len() != m - 3 {
            return Err(Error::WrongDiagonalCount {
                m,
                expected: m - 3,
                got: given.len(),
            });
        }
        Ok(Triangulation { m, diagonals: set })
    }

    /// Convenience constructor from vertex pairs.
    pub fn from_pairs(m: usize, pairs: &[(usize, usize)]) -> Result<Triangulation> {
        Triangulation::new(m, pairs.iter().map(|&(a, b)| Diagonal::new(a, b)))
    }

    /// The fan of diagonals from vertex 0.
    pub fn fan(m: usize) -> Result<Triangulation> {
        Triangulation::new(m, (2..m.saturating_sub(1)).map(|b| Diagonal::new(0, b)))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn diagonals(&self) -> impl Iterator<Item = Diagonal> + '_ {
        self.diagonals.iter().copied()
    }

    pub fn diagonal_count(&self) -> usize {
        self.diagonals.len()
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.contains(&d)
    }

    fn has_side(&self, a: usize, b: usize) -> bool {
        let d = Diagonal::new(a, b);
        let (x, y) = d.ends();
        y - x == 1 || (x == 0 && y == self.m - 1) || self.diagonals.contains(&d)
    }

    /// The `m - 2` triangles in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let m = self.m;
        let mut out = Vec::with_capacity(m - 2);
        // in a triangulated convex polygon every 3-clique is a face
        for a in 0..m {
            for b in a + 1..m {
                if !self.has_side(a, b) {
                    continue;
                }
                for c in b + 1..m {
                    if self.has_side(b, c) && self.has_side(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// The third vertices of the two triangles on either side of `d`.
    fn apexes(&self, d: Diagonal) -> (usize, usize) {
        let (x, y) = d.ends();
        let mut found = (0..self.m).filter(|&v| v != x && v != y && self.has_side(x, v) && self.has_side(y, v));
        let first = found.next().expect("a diagonal borders two triangles");
        let second = found.next().expect("a diagonal borders two triangles");
        (first, second)
    }

    /// Replaces `d` by the other diagonal of the quadrilateral formed by
    /// its two neighbouring triangles. Returns the new triangulation and
    /// the new diagonal.
    pub fn flip(&self, d: Diagonal) -> Result<(Triangulation, Diagonal)> {
        if !self.diagonals.contains(&d) {
            return Err(Error::NotADiagonal(d.0, d.1));
        }
        let (a, b) = self.apexes(d);
        let new = Diagonal::new(a, b);
        let mut diagonals = self.diagonals.clone();
        diagonals.remove(&d);
        diagonals.insert(new);
        Ok((
            Triangulation {
                m: self.m,
                diagonals,
            },
            new,
        ))
    }

    /// Adds `k` to every vertex index modulo `m`.
    pub fn rotate(&self, k: usize) -> Triangulation {
        Triangulation {
            m: self.m,
            diagonals: self.diagonals.iter().map(|d| d.rotate(k, self.m)).collect(),
        }
    }

    /// The rotation amount `k` with `self.rotate(k) == other`, if any.
    pub fn rotation_equivalent(&self, other: &Triangulation) -> Option<usize> {
        if self.m != other.m {
            return None;
        }
        (0..self.m).find(|&k| self.rotate(k) == *other)
    }

    /// The flip graph neighbours of this triangulation.
    pub fn flips(&self) -> impl Iterator<Item = Triangulation> + '_ {
        self.diagonals()
            .map(|d| self.flip(d).expect("own diagonal").0)
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}[", self.m)?;
        for (i, d) in self.diagonals.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// All triangulations of the convex `m`-gon, each exactly once, in a fixed
/// order. There are `Catalan(m - 2)` of them.
pub fn enumerate_triangulations(m: usize) -> Vec<Triangulation> {
    if m < 3 {
        return Vec::new();
    }
    let polygon: Vec<usize> = (0..m).collect();
    ear_decompositions(&polygon)
        .into_iter()
        .map(|diagonals| Triangulation {
            m,
            diagonals: diagonals.into_iter().collect(),
        })
        .collect()
}

/// Triangulations of the convex polygon with the given vertices in cyclic
/// order, obtained by choosing the triangle on the edge
/// `{polygon[0], polygon[1]}`.
fn ear_decompositions(polygon: &[usize]) -> Vec<Vec<Diagonal>> {
    let k = polygon.len();
    if k <= 3 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for apex in 2..k {
        let right: Vec<usize> = polygon[1..=apex].to_vec();
        let mut left: Vec<usize> = polygon[apex..].to_vec();
        left.push(polygon[0]);
        let mut base = Vec::new();
        if apex > 2 {
            base.push(Diagonal::new(polygon[1], polygon[apex]));
        }
        if apex < k - 1 {
            base.push(Diagonal::new(polygon[apex], polygon[0]));
        }
        let rights = ear_decompositions(&right);
        let lefts = ear_decompositions(&left);
        for r in &rights {
            for l in &lefts {
                let mut all = base.clone();
                all.extend_from_slice(r);
                all.extend_from_slice(l);
                out.push(all);
            }
        }
    }
    out
}
