//! Simple undirected graphs, vertex permutations and 3-colorings.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rng::Coins;

/// Largest vertex count accepted by [`are_isomorphic_bruteforce`].
pub const MAX_ISOMORPHISM_VERTICES: usize = 8;
/// Largest vertex count accepted by [`enumerate_3colorings`].
pub const MAX_COLORING_VERTICES: usize = 12;

/// Simple undirected graph on vertices `0..n`. Edges are stored as `(i, j)`
/// with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self { n, edges }
    }

    pub fn path(n: usize) -> Self {
        Self {
            n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return invalid("a cycle needs at least 3 vertices");
        }
        let mut g = Self::path(n);
        g.edges.insert((0, n - 1));
        Ok(g)
    }

    /// Star with center 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        Self {
            n,
            edges: (1..n).map(|i| (0, i)).collect(),
        }
    }

    /// Rejects self-loops and out-of-range endpoints; duplicates are rejected
    /// as well so that edge lists stay literal.
    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j {
            return invalid(format!("self-loop at vertex {i}"));
        }
        if i >= self.n || j >= self.n {
            return invalid(format!("edge {{{i}, {j}}} leaves the vertex range 0..{}", self.n));
        }
        if !self.edges.insert((i.min(j), i.max(j))) {
            return invalid(format!("duplicate edge {{{i}, {j}}}"));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(i, j) in &self.edges {
            d[i] += 1;
            d[j] += 1;
        }
        d
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for (i, j) in &self.edges {
            writeln!(f, "e {i} {j}")?;
        }
        Ok(())
    }
}

fn parse_usize(tok: Option<&str>, line: usize) -> Result<usize> {
    tok.ok_or_else(|| Error::Parse {
        line,
        message: "missing number".into(),
    })?
    .parse()
    .map_err(|e| Error::Parse {
        line,
        message: format!("{e}"),
    })
}

/// Parses the graph text format and any `c <v> <R|G|B>` coloring lines.
pub fn parse_graph_with_coloring(text: &str) -> Result<(Graph, Option<Coloring3>)> {
    let mut graph: Option<Graph> = None;
    let mut colors: Vec<(usize, usize, Color)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "#" => continue,
            "n" if graph.is_none() => graph = Some(Graph::empty(parse_usize(toks.next(), line)?)),
            "n" => {
                return Err(Error::Parse {
                    line,
                    message: "repeated `n` line".into(),
                })
            }
            "e" => {
                let g = graph.as_mut().ok_or_else(|| Error::Parse {
                    line,
                    message: "edge before `n` line".into(),
                })?;
                let (i, j) = (parse_usize(toks.next(), line)?, parse_usize(toks.next(), line)?);
                g.add_edge(i, j).map_err(|e| Error::Parse {
                    line,
                    message: e.to_string(),
                })?;
            }
            "c" => {
                let v = parse_usize(toks.next(), line)?;
                let c = toks
                    .next()
                    .and_then(|t| t.parse::<Color>().ok())
                    .ok_or_else(|| Error::Parse {
                        line,
                        message: "expected color R, G or B".into(),
                    })?;
                colors.push((line, v, c));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown line kind {other:?}"),
                })
            }
        }
        if toks.next().is_some() {
            return Err(Error::Parse {
                line,
                message: "trailing tokens".into(),
            });
        }
    }
    let graph = graph.ok_or_else(|| Error::Parse {
        line: 0,
        message: "missing `n` line".into(),
    })?;
    if colors.is_empty() {
        return Ok((graph, None));
    }
    let mut assignment = vec![None; graph.n];
    for (line, v, c) in colors {
        let slot = assignment.get_mut(v).ok_or_else(|| Error::Parse {
            line,
            message: format!("vertex {v} out of range"),
        })?;
        *slot = Some(c);
    }
    let assignment = assignment
        .into_iter()
        .enumerate()
        .map(|(v, c)| {
            c.ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("vertex {v} has no color"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((graph, Some(Coloring3(assignment))))
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph_with_coloring(s).map(|(g, _)| g)
    }
}

/// Bijection on `0..n`; `mapping[v]` is the image of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &v in &mapping {
            if v >= mapping.len() || std::mem::replace(&mut seen[v], true) {
                return invalid("mapping is not a bijection");
            }
        }
        Ok(Self(mapping))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        Self(inv)
    }

    /// Every permutation of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation(current.clone()));
                return;
            }
            for v in 0..n {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(n, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn apply_permutation(pi: &Permutation, g: &Graph) -> Result<Graph> {
    if pi.len() != g.n {
        return invalid(format!("permutation of {} points applied to a graph on {} vertices", pi.len(), g.n));
    }
    let edges = g
        .edges
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (pi.0[i], pi.0[j]);
            (a.min(b), a.max(b))
        })
        .collect();
    Ok(Graph { n: g.n, edges })
}

/// `outer ∘ inner`: applies `inner` first.
pub fn compose(outer: &Permutation, inner: &Permutation) -> Result<Permutation> {
    if outer.len() != inner.len() {
        return invalid("cannot compose permutations of different sizes");
    }
    Ok(Permutation(inner.0.iter().map(|&v| outer.0[v]).collect()))
}

/// Fisher–Yates shuffle of the identity.
pub fn random_permutation(n: usize, coins: &mut impl Coins) -> Result<Permutation> {
    if n == 0 {
        return invalid("permutation size must be positive");
    }
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = coins.below(i as u64 + 1) as usize;
        v.swap(i, j);
    }
    Ok(Permutation(v))
}

/// Exhaustive search over all `n!` bijections for one mapping `g1` onto `g2`.
pub fn are_isomorphic_bruteforce(g1: &Graph, g2: &Graph) -> Result<Option<Permutation>> {
    let n = g1.n.max(g2.n);
    if n > MAX_ISOMORPHISM_VERTICES {
        return Err(Error::ResourceLimit(format!(
            "isomorphism search limited to {MAX_ISOMORPHISM_VERTICES} vertices"
        )));
    }
    if g1.n != g2.n || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let mut d1 = g1.degrees();
    let mut d2 = g2.degrees();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(None);
    }
    Ok(Permutation::all(n)
        .into_iter()
        .find(|pi| g1.edges.iter().all(|&(i, j)| g2.has_edge(pi.0[i], pi.0[j]))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Red, Color::Green, Color::Blue];

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Green => 'G',
            Color::Blue => 'B',
        }
    }

    /// Digit `1..=3` used in certificate encodings.
    pub fn digit(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_digit(d: u8) -> Option<Self> {
        Self::ALL.get((d as usize).wrapping_sub(1)).copied()
    }
}

impl FromStr for Color {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" => Ok(Color::Red),
            "G" => Ok(Color::Green),
            "B" => Ok(Color::Blue),
            _ => invalid(format!("unknown color {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coloring3(pub Vec<Color>);

impl Coloring3 {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `c <v> <R|G|B>` lines of the text format.
    pub fn to_lines(&self) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(v, c)| format!("c {v} {}\n", c.letter()))
            .collect()
    }
}

pub fn is_legal_3coloring(g: &Graph, psi: &Coloring3) -> Result<bool> {
    if psi.len() != g.n {
        return invalid(format!("coloring has {} entries for {} vertices", psi.len(), g.n));
    }
    Ok(g.edges.iter().all(|&(i, j)| psi.0[i] != psi.0[j]))
}

/// All legal colorings, in lexicographic order of the assignment
/// (`RED < GREEN < BLUE`).
pub fn enumerate_3colorings(g: &Graph) -> Result<Vec<Coloring3>> {
    if g.n > MAX_COLORING_VERTICES {
        return Err(Error::ResourceLimit(format!(
            "coloring enumeration limited to {MAX_COLORING_VERTICES} vertices"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(g.n);
    fn rec(g: &Graph, current: &mut Vec<Color>, out: &mut Vec<Coloring3>) {
        let v = current.len();
        if v == g.n {
            out.push(Coloring3(current.clone()));
            return;
        }
        for c in Color::ALL {
            // only edges back to already-colored vertices need checking
            if (0..v).any(|u| current[u] == c && g.has_edge(u, v)) {
                continue;
            }
            current.push(c);
            rec(g, current, out);
            current.pop();
        }
    }
    rec(g, &mut current, &mut out);
    Ok(out)
}

/// Fixture for the eight-vertex graph whose 3-coloring has classes
/// `GREEN = {a, g}`, `RED = {c, f, h}`, `BLUE = {b, d, e}`. Vertices `a..h`
/// are `0..7`. The figure itself is only available as an image, so the edge
/// set is a reconstruction on which these classes are legal.
pub mod fixtures {
    use super::*;

    pub const LABELS: [char; 8] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];

    pub fn coloring_figure_graph() -> Graph {
        let idx = |c: char| LABELS.iter().position(|&l| l == c).unwrap();
        let edges = [
            ('a', 'b'),
            ('a', 'c'),
            ('b', 'c'),
            ('c', 'd'),
            ('d', 'g'),
            ('g', 'h'),
            ('h', 'e'),
            ('e', 'a'),
            ('f', 'g'),
            ('f', 'b'),
            ('d', 'h'),
        ];
        Graph::new(8, edges.iter().map(|&(x, y)| (idx(x), idx(y)))).expect("fixture is simple")
    }

    pub fn coloring_figure_psi() -> Coloring3 {
        use Color::*;
        // a b c d e f g h
        Coloring3(vec![Green, Blue, Red, Blue, Blue, Red, Green, Red])
    }
}
