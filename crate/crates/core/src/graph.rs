//! Edge-colored simple graphs and their color-degree quantities.
//!
//! A graph is immutable once built. Edges are normalized to `u < v` and kept in
//! lexicographic order; the color universe is the sorted set of colors that
//! actually appear on edges.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Opaque color identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u32);

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An undirected colored edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: Color,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A non-negative rational threshold `num / den`, compared exactly against
/// integer color degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Threshold {
    num: u64,
    den: u64,
}

impl Threshold {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter(
                "threshold denominator is zero".into(),
            ));
        }
        Ok(Threshold { num, den })
    }

    pub fn integer(value: u64) -> Self {
        Threshold { num: value, den: 1 }
    }

    /// `n / 2`.
    pub fn half(n: usize) -> Self {
        Threshold {
            num: n as u64,
            den: 2,
        }
    }

    /// `self + k` for a non-negative integer `k`.
    pub fn plus(self, k: u64) -> Self {
        Threshold {
            num: self.num + k * self.den,
            den: self.den,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// Smallest integer `d` with `d >= self`.
    pub fn ceil(&self) -> u64 {
        self.num.div_ceil(self.den)
    }

    pub fn admits(&self, degree: usize) -> bool {
        degree as u64 * self.den >= self.num
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse threshold {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.trim().parse().map_err(|_| bad())?;
                let q = q.trim().parse().map_err(|_| bad())?;
                Threshold::new(p, q)
            }
            None => Ok(Threshold::integer(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}

/// A simple edge-colored graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoredGraph {
    n: usize,
    edges: Vec<Edge>,
    colors: Vec<Color>,
    /// dense color index of each edge, into `colors`
    edge_color: Vec<usize>,
    /// per vertex: (neighbor, edge index), sorted by neighbor
    adj: Vec<Vec<(usize, usize)>>,
    color_degree: Vec<usize>,
}

impl EdgeColoredGraph {
    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// repeated vertex pairs.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Color)>,
    {
        let mut normalized = Vec::new();
        for (a, b, color) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            normalized.push(Edge { u, v, color });
        }
        normalized.sort();
        if let Some(w) = normalized
            .windows(2)
            .find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return Err(Error::DuplicateEdge(w[0].u, w[0].v));
        }
        Ok(Self::from_sorted(n, normalized))
    }

    /// `edges` must already be normalized, sorted and free of duplicates.
    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut colors: Vec<Color> = edges.iter().map(|e| e.color).collect();
        colors.sort_unstable();
        colors.dedup();
        let edge_color: Vec<usize> = edges
            .iter()
            .map(|e| colors.binary_search(&e.color).unwrap())
            .collect();
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut seen = vec![usize::MAX; colors.len()];
        let color_degree = adj
            .iter()
            .enumerate()
            .map(|(v, list)| {
                let mut count = 0;
                for &(_, e) in list {
                    let c = edge_color[e];
                    if seen[c] != v {
                        seen[c] = v;
                        count += 1;
                    }
                }
                count
            })
            .collect();
        EdgeColoredGraph {
            n,
            edges,
            colors,
            edge_color,
            adj,
            color_degree,
        }
    }

    /// Keeps the edges for which `keep(index, edge)` holds; vertex set is unchanged.
    pub fn retain_edges(&self, mut keep: impl FnMut(usize, &Edge) -> bool) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, e)| keep(*i, e))
            .map(|(_, e)| *e)
            .collect();
        Self::from_sorted(self.n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    /// The color universe, sorted ascending.
    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn num_colors(&self) -> usize {
        self.colors.len()
    }

    /// Position of `color` in [`colors`](Self::colors).
    pub fn color_index(&self, color: Color) -> Option<usize> {
        self.colors.binary_search(&color).ok()
    }

    /// Dense color index of edge `index`.
    pub fn edge_color_index(&self, index: usize) -> usize {
        self.edge_color[index]
    }

    /// Incident `(neighbor, edge index)` pairs of `v`, ascending by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Number of distinct colors on edges incident to `v`.
    pub fn color_degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.color_degree[v])
    }

    /// Color degree of every vertex, indexed by vertex.
    pub fn color_degrees(&self) -> &[usize] {
        &self.color_degree
    }

    /// δ^c(G): the minimum color degree.
    pub fn min_color_degree(&self) -> Result<usize> {
        self.color_degree
            .iter()
            .copied()
            .min()
            .ok_or(Error::EmptyGraph)
    }

    /// The spanning subgraph formed by all edges of `color`.
    pub fn color_class(&self, color: Color) -> Result<ColorClassView> {
        let idx = self.color_index(color).ok_or(Error::UnknownColor(color))?;
        Ok(self.color_class_by_index(idx))
    }

    pub(crate) fn color_class_by_index(&self, idx: usize) -> ColorClassView {
        let mut degrees = vec![0; self.n];
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .zip(&self.edge_color)
            .filter(|(_, &c)| c == idx)
            .map(|(e, _)| {
                degrees[e.u] += 1;
                degrees[e.v] += 1;
                (e.u, e.v)
            })
            .collect();
        ColorClassView {
            color: self.colors[idx],
            edges,
            degrees,
        }
    }

    /// All color classes in ascending color order.
    pub fn color_classes(&self) -> Vec<ColorClassView> {
        (0..self.colors.len())
            .map(|i| self.color_class_by_index(i))
            .collect()
    }

    /// Number of connected components of the spanning subgraph made of edges
    /// whose index passes `keep`.
    pub fn component_count_with(&self, mut keep: impl FnMut(usize) -> bool) -> usize {
        let mut dsu = DisjointSets::new(self.n);
        let mut components = self.n;
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i) && dsu.union(e.u, e.v) {
                components -= 1;
            }
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count_with(|_| true) == 1
    }
}

/// The subgraph `F_α` of a single color, with its per-vertex degree table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClassView {
    pub color: Color,
    pub edges: Vec<(usize, usize)>,
    pub degrees: Vec<usize>,
}

impl ColorClassView {
    /// Builds a view directly from an edge list over `n` vertices.
    pub fn from_edges(color: Color, n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut degrees = vec![0; n];
        for &(u, v) in &edges {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        ColorClassView {
            color,
            edges,
            degrees,
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    /// True iff every component is a star. Equivalent to: every edge has an
    /// endpoint of degree one in the class.
    pub fn is_star_forest(&self) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| self.degrees[u] == 1 || self.degrees[v] == 1)
    }
}

pub fn is_star_forest(view: &ColorClassView) -> bool {
    view.is_star_forest()
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when `a` and `b` were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> EdgeColoredGraph {
        EdgeColoredGraph::new(n, edges.iter().map(|&(u, v, c)| (u, v, Color(c)))).unwrap()
    }

    fn view(edges: &[(usize, usize)]) -> ColorClassView {
        ColorClassView::from_edges(Color(0), 6, edges.to_vec())
    }

    #[test]
    fn star_color_degrees() {
        let rainbow = graph(4, &[(0, 1, 0), (0, 2, 1), (0, 3, 2)]);
        assert_eq!(rainbow.color_degree(0).unwrap(), 3);
        let mono = graph(4, &[(0, 1, 0), (0, 2, 0), (0, 3, 0)]);
        assert_eq!(mono.color_degree(0).unwrap(), 1);
        assert_eq!(mono.color_degree(3).unwrap(), 1);
        assert!(matches!(
            mono.color_degree(4),
            Err(Error::VertexOutOfRange { vertex: 4, n: 4 })
        ));
    }

    #[test]
    fn min_color_degree_of_rainbow_k4_and_isolated() {
        let k4 = graph(
            4,
            &[
                (0, 1, 0),
                (0, 2, 1),
                (0, 3, 2),
                (1, 2, 3),
                (1, 3, 4),
                (2, 3, 5),
            ],
        );
        assert_eq!(k4.min_color_degree().unwrap(), 3);
        let with_isolated = graph(3, &[(0, 1, 7)]);
        assert_eq!(with_isolated.min_color_degree().unwrap(), 0);
        let empty = graph(0, &[]);
        assert_eq!(empty.min_color_degree(), Err(Error::EmptyGraph));
    }

    #[test]
    fn construction_rejects_bad_input() {
        let e = |u, v| (u, v, Color(0));
        assert_eq!(EdgeColoredGraph::new(3, [e(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            EdgeColoredGraph::new(3, [e(0, 1), e(1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            EdgeColoredGraph::new(3, [e(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, .. })
        ));
    }

    #[test]
    fn edges_are_normalized_and_sorted() {
        let g = graph(4, &[(3, 2, 1), (1, 0, 5), (2, 0, 1)]);
        let got: Vec<_> = g.edges().iter().map(|e| (e.u, e.v, e.color.0)).collect();
        assert_eq!(got, vec![(0, 1, 5), (0, 2, 1), (2, 3, 1)]);
        assert_eq!(g.colors(), &[Color(1), Color(5)]);
        assert_eq!(g.edge_between(3, 2), Some(2));
        assert_eq!(g.edge_between(1, 3), None);
    }

    #[test]
    fn color_class_extracts_edges() {
        let g = graph(4, &[(0, 1, 9), (2, 3, 9), (1, 2, 4)]);
        let class = g.color_class(Color(9)).unwrap();
        assert_eq!(class.edges, vec![(0, 1), (2, 3)]);
        assert_eq!(class.degrees.iter().sum::<usize>(), 4);
        assert_eq!(g.color_class(Color(3)), Err(Error::UnknownColor(Color(3))));
        let total: usize = g.color_classes().iter().map(|c| c.edges.len()).sum();
        assert_eq!(total, g.m());
    }

    #[test]
    fn star_forest_recognition() {
        assert!(view(&[(0, 1), (0, 2), (0, 3)]).is_star_forest());
        assert!(!view(&[(0, 1), (1, 2), (2, 3)]).is_star_forest());
        assert!(!view(&[(0, 1), (1, 2), (2, 0)]).is_star_forest());
        assert!(view(&[(0, 1), (2, 3), (2, 4)]).is_star_forest());
        assert!(view(&[]).is_star_forest());
    }

    #[test]
    fn threshold_parsing_and_comparison() {
        let t: Threshold = "11/2".parse().unwrap();
        assert!(!t.admits(5));
        assert!(t.admits(6));
        assert_eq!(t.ceil(), 6);
        assert_eq!(Threshold::half(40).plus(17).to_string(), "74/2");
        assert_eq!("7".parse::<Threshold>().unwrap(), Threshold::integer(7));
        assert!("3/0".parse::<Threshold>().is_err());
        assert!("x".parse::<Threshold>().is_err());
    }
}
