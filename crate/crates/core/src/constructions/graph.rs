use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};

/// Simple graph on vertices `0..n`, edges stored as `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Edges are 0-based; loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > 64 {
            return Err(Error::Unsupported("graphs are limited to 64 vertices".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidSpec(format!("bad edge {{{}, {}}}", a + 1, b + 1)));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        Graph::new(n, edges).expect("valid edges")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidSpec("a cycle needs at least 3 vertices".into()));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Triangle on 4, 5, 6 with pendant edges 1-4, 2-5, 3-6 (1-based labels).
    pub fn whiskered_triangle() -> Self {
        Graph::new(6, [(0, 3), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5)]).expect("valid edges")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.edges.iter().fold(0u64, |m, &(a, b)| {
            if a == v {
                m | 1 << b
            } else if b == v {
                m | 1 << a
            } else {
                m
            }
        })
    }

    pub fn complement(&self) -> Graph {
        let edges = (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.has_edge(i, j));
        Graph::new(self.n, edges.collect::<Vec<_>>()).expect("valid edges")
    }
}

/// Outcome of the chordality test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChordalCheck {
    pub chordal: bool,
    /// Candidate perfect elimination ordering (reverse maximum-cardinality search order).
    pub elimination_order: Vec<usize>,
}

/// Maximum-cardinality search with lowest-index tie-break, then the fill-in check.
pub fn is_chordal(g: &Graph) -> ChordalCheck {
    let n = g.n;
    let nbrs: Vec<u64> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut numbered = 0u64;
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| numbered & 1 << v == 0)
            .max_by_key(|&v| ((nbrs[v] & numbered).count_ones(), std::cmp::Reverse(v)))
            .expect("unnumbered vertex remains");
        numbered |= 1 << v;
        visit.push(v);
    }
    let peo: Vec<usize> = visit.into_iter().rev().collect();
    let mut chordal = true;
    let mut eliminated = 0u64;
    for &v in &peo {
        eliminated |= 1 << v;
        // neighbors eliminated after v must form a clique
        let rest = nbrs[v] & !eliminated;
        let mut r = rest;
        while r != 0 {
            let u = r.trailing_zeros() as usize;
            r &= r - 1;
            if rest & !(1 << u) & !nbrs[u] != 0 {
                chordal = false;
            }
        }
    }
    ChordalCheck {
        chordal,
        elimination_order: peo,
    }
}

/// `I(G) = (x_i x_j : {i, j} ∈ E(G))` in variables `x1..xn`.
pub fn edge_ideal(g: &Graph) -> Result<MonomialIdeal> {
    if g.edges.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let vars = Arc::new(VariableSet::indexed("x", g.n));
    let gens = g
        .edges()
        .map(|(a, b)| Monomial::from_support(g.n, 1 << a | 1 << b));
    MonomialIdeal::new(vars, gens.collect::<Vec<_>>())
}

/// Parses `vertices: n` followed by `edge: i j` lines (1-based); `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            if n.is_some() {
                return Err(Error::parse(line_no, 1, "duplicate `vertices:` line"));
            }
            n = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| Error::parse(line_no, 10, "expected a vertex count"))?,
            );
        } else if let Some(rest) = line.strip_prefix("edge:") {
            let count = n.ok_or_else(|| Error::parse(line_no, 1, "`edge:` before `vertices:`"))?;
            let ends: Vec<usize> = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(line_no, 6, "expected two vertex numbers"))?;
            match ends[..] {
                [a, b] if (1..=count).contains(&a) && (1..=count).contains(&b) && a != b => {
                    edges.push((a - 1, b - 1))
                }
                _ => return Err(Error::parse(line_no, 6, "expected two distinct vertices in range")),
            }
        } else {
            return Err(Error::parse(line_no, 1, "expected `vertices:` or `edge:`"));
        }
    }
    let n = n.ok_or_else(|| Error::parse(1, 1, "missing `vertices:` line"))?;
    Graph::new(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("vertices: {}\n", g.n);
    for (a, b) in g.edges() {
        out.push_str(&format!("edge: {} {}\n", a + 1, b + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chordality() {
        assert!(!is_chordal(&Graph::cycle(4).unwrap()).chordal);
        assert!(is_chordal(&Graph::complete(5)).chordal);
        assert!(is_chordal(&Graph::whiskered_triangle().complement()).chordal);
        assert!(is_chordal(&Graph::cycle(3).unwrap()).chordal);
        assert!(!is_chordal(&Graph::cycle(5).unwrap()).chordal);
        assert!(is_chordal(&Graph::new(3, []).unwrap()).chordal);
    }

    #[test]
    fn edge_ideals() {
        let tri = edge_ideal(&Graph::complete(3)).unwrap();
        assert_eq!(tri.num_gens(), 3);
        assert_eq!(edge_ideal(&Graph::whiskered_triangle()).unwrap().num_gens(), 6);
        assert_eq!(edge_ideal(&Graph::new(2, [(0, 1)]).unwrap()).unwrap().num_gens(), 1);
        assert_eq!(edge_ideal(&Graph::new(2, []).unwrap()), Err(Error::EmptyIdeal));
    }

    #[test]
    fn graph_file_round_trip() {
        let g = Graph::whiskered_triangle();
        let text = write_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g);
        assert!(parse_graph("vertices: 2\nedge: 1 1\n").is_err());
        assert!(parse_graph("edge: 1 2\n").is_err());
    }

    #[test]
    fn complement_is_involutive() {
        let g = Graph::whiskered_triangle();
        assert_eq!(g.complement().complement(), g);
        assert_eq!(g.complement().num_edges(), 15 - 6);
    }
}
