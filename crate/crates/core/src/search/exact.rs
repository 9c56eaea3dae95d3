//! Exact rainbow path search.
//!
//! Iterative deepening over the path length; at each length a depth-first
//! search over simple paths carries the set of used colors and prunes any
//! branch whose remaining budget is below the BFS distance to the target.
//! Neighbors are tried in ascending order, so the first hit is the
//! lexicographically least shortest path.

use super::{check_endpoints, distances_to, Flavor, PathCertificate};
use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoredGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PathCertificate),
    Absent,
    /// The node-expansion cap was hit before the search finished.
    Aborted,
}

impl SearchOutcome {
    pub fn found(self) -> Option<PathCertificate> {
        match self {
            SearchOutcome::Found(p) => Some(p),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowQuery {
    pub u: usize,
    pub v: usize,
    pub max_len: usize,
    pub forbidden_colors: Vec<Color>,
    pub forbidden_vertices: Vec<usize>,
    pub node_cap: Option<u64>,
}

impl RainbowQuery {
    pub fn new(u: usize, v: usize, max_len: usize) -> Self {
        RainbowQuery {
            u,
            v,
            max_len,
            forbidden_colors: Vec::new(),
            forbidden_vertices: Vec::new(),
            node_cap: None,
        }
    }

    pub fn forbid_colors(mut self, colors: impl IntoIterator<Item = Color>) -> Self {
        self.forbidden_colors.extend(colors);
        self
    }

    pub fn forbid_vertices(mut self, vertices: impl IntoIterator<Item = usize>) -> Self {
        self.forbidden_vertices.extend(vertices);
        self
    }

    pub fn node_cap(mut self, cap: u64) -> Self {
        self.node_cap = Some(cap);
        self
    }

    pub fn run(&self, g: &EdgeColoredGraph) -> Result<SearchOutcome> {
        check_endpoints(g, self.u, self.v)?;
        if self.max_len == 0 {
            return Err(Error::InvalidParameter("max_len must be at least 1".into()));
        }
        let mut blocked = vec![false; g.n()];
        for &x in &self.forbidden_vertices {
            g.check_vertex(x)?;
            if x == self.u || x == self.v {
                return Err(Error::InvalidParameter(format!(
                    "endpoint {x} cannot be forbidden"
                )));
            }
            blocked[x] = true;
        }
        let mut used = vec![false; g.num_colors()];
        for &c in &self.forbidden_colors {
            if let Some(i) = g.color_index(c) {
                used[i] = true;
            }
        }
        let dist = distances_to(g, self.v, &blocked, |e| !used[g.edge_color_index(e)]);
        let start = dist[self.u];
        if start == usize::MAX || start > self.max_len {
            return Ok(SearchOutcome::Absent);
        }
        let mut dfs = Dfs {
            g,
            target: self.v,
            dist,
            on_path: blocked,
            used,
            path: vec![self.u],
            edges: Vec::new(),
            nodes: 0,
            cap: self.node_cap.unwrap_or(u64::MAX),
        };
        dfs.on_path[self.u] = true;
        for len in start..=self.max_len {
            match dfs.extend(self.u, len) {
                Step::Found => {
                    return Ok(SearchOutcome::Found(PathCertificate {
                        vertices: dfs.path,
                        colors: dfs.edges.iter().map(|&e| g.edge(e).color).collect(),
                        flavor: Flavor::Rainbow,
                    }))
                }
                Step::Aborted => return Ok(SearchOutcome::Aborted),
                Step::Exhausted => {}
            }
        }
        Ok(SearchOutcome::Absent)
    }
}

/// Lexicographically least shortest rainbow `u,v`-path of length at most
/// `max_len` avoiding the forbidden colors and vertices; `None` only when no
/// such path exists.
pub fn find_rainbow_path_exact(
    g: &EdgeColoredGraph,
    u: usize,
    v: usize,
    max_len: usize,
    forbidden_colors: &[Color],
    forbidden_vertices: &[usize],
) -> Result<Option<PathCertificate>> {
    RainbowQuery::new(u, v, max_len)
        .forbid_colors(forbidden_colors.iter().copied())
        .forbid_vertices(forbidden_vertices.iter().copied())
        .run(g)
        .map(SearchOutcome::found)
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

struct Dfs<'g> {
    g: &'g EdgeColoredGraph,
    target: usize,
    dist: Vec<usize>,
    /// path vertices and forbidden vertices
    on_path: Vec<bool>,
    used: Vec<bool>,
    path: Vec<usize>,
    edges: Vec<usize>,
    nodes: u64,
    cap: u64,
}

impl Dfs<'_> {
    /// Extends the path ending at `x` by exactly `rem` more edges to the target.
    fn extend(&mut self, x: usize, rem: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Step::Aborted;
        }
        let g = self.g;
        for &(w, e) in g.neighbors(x) {
            let c = g.edge_color_index(e);
            if self.on_path[w] || self.used[c] {
                continue;
            }
            if w == self.target {
                if rem == 1 {
                    self.path.push(w);
                    self.edges.push(e);
                    return Step::Found;
                }
                continue;
            }
            if rem < 2 || self.dist[w] > rem - 1 {
                continue;
            }
            self.on_path[w] = true;
            self.used[c] = true;
            self.path.push(w);
            self.edges.push(e);
            match self.extend(w, rem - 1) {
                Step::Exhausted => {}
                other => return other,
            }
            self.on_path[w] = false;
            self.used[c] = false;
            self.path.pop();
            self.edges.pop();
        }
        Step::Exhausted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> EdgeColoredGraph {
        EdgeColoredGraph::new(n, edges.iter().map(|&(u, v, c)| (u, v, Color(c)))).unwrap()
    }

    #[test]
    fn direct_edge() {
        let g = graph(3, &[(0, 2, 5), (0, 1, 1), (1, 2, 2)]);
        let p = find_rainbow_path_exact(&g, 0, 2, 9, &[], &[])
            .unwrap()
            .unwrap();
        assert_eq!(p.vertices, vec![0, 2]);
        assert_eq!(p.colors, vec![Color(5)]);
    }

    #[test]
    fn monochromatic_p3_has_no_rainbow_path() {
        let g = graph(3, &[(0, 1, 4), (1, 2, 4)]);
        for max_len in 1..5 {
            assert_eq!(
                find_rainbow_path_exact(&g, 0, 2, max_len, &[], &[]).unwrap(),
                None
            );
        }
    }

    #[test]
    fn forbidden_sets_are_respected() {
        let g = graph(4, &[(0, 3, 0), (0, 1, 1), (1, 3, 2), (0, 2, 3), (2, 3, 4)]);
        let p = find_rainbow_path_exact(&g, 0, 3, 9, &[Color(0)], &[])
            .unwrap()
            .unwrap();
        assert_eq!(p.vertices, vec![0, 1, 3]);
        let p = find_rainbow_path_exact(&g, 0, 3, 9, &[Color(0)], &[1])
            .unwrap()
            .unwrap();
        assert_eq!(p.vertices, vec![0, 2, 3]);
        let p = find_rainbow_path_exact(&g, 0, 3, 9, &[Color(0), Color(4)], &[1]).unwrap();
        assert_eq!(p, None);
        // unknown colors are harmless
        assert!(find_rainbow_path_exact(&g, 0, 3, 1, &[Color(99)], &[])
            .unwrap()
            .is_some());
    }

    #[test]
    fn errors() {
        let g = graph(3, &[(0, 1, 0)]);
        assert_eq!(
            find_rainbow_path_exact(&g, 1, 1, 3, &[], &[]),
            Err(Error::SameEndpoints(1))
        );
        assert!(find_rainbow_path_exact(&g, 0, 1, 0, &[], &[]).is_err());
        assert!(find_rainbow_path_exact(&g, 0, 1, 2, &[], &[0]).is_err());
        assert!(find_rainbow_path_exact(&g, 0, 7, 2, &[], &[]).is_err());
    }

    #[test]
    fn respects_length_bound() {
        // path 0-1-2-3 rainbow, no shortcut
        let g = graph(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 2)]);
        assert_eq!(
            find_rainbow_path_exact(&g, 0, 3, 2, &[], &[]).unwrap(),
            None
        );
        assert_eq!(
            find_rainbow_path_exact(&g, 0, 3, 3, &[], &[])
                .unwrap()
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn node_cap_aborts() {
        let g = graph(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 2)]);
        let out = RainbowQuery::new(0, 3, 3).node_cap(1).run(&g).unwrap();
        assert_eq!(out, SearchOutcome::Aborted);
    }
}
