//! Exact bounded search for properly-colored paths (no two consecutive edges
//! share a color).

use super::{check_endpoints, distances_to, Flavor, PathCertificate, SearchOutcome};
use crate::error::{Error, Result};
use crate::graph::EdgeColoredGraph;

/// Lexicographically least shortest properly-colored `u,v`-path with at most
/// `max_len` edges. Pass `g.n() - 1` for the unbounded question.
pub fn find_proper_path(
    g: &EdgeColoredGraph,
    u: usize,
    v: usize,
    max_len: usize,
) -> Result<Option<PathCertificate>> {
    find_proper_path_capped(g, u, v, max_len, None).map(SearchOutcome::found)
}

pub fn find_proper_path_capped(
    g: &EdgeColoredGraph,
    u: usize,
    v: usize,
    max_len: usize,
    node_cap: Option<u64>,
) -> Result<SearchOutcome> {
    check_endpoints(g, u, v)?;
    if max_len == 0 {
        return Err(Error::InvalidParameter("max_len must be at least 1".into()));
    }
    let max_len = max_len.min(g.n() - 1);
    let dist = distances_to(g, v, &vec![false; g.n()], |_| true);
    if dist[u] == usize::MAX || dist[u] > max_len {
        return Ok(SearchOutcome::Absent);
    }
    let mut dfs = Dfs {
        g,
        target: v,
        dist,
        on_path: vec![false; g.n()],
        path: vec![u],
        edges: Vec::new(),
        nodes: 0,
        cap: node_cap.unwrap_or(u64::MAX),
    };
    dfs.on_path[u] = true;
    for len in dfs.dist[u]..=max_len {
        match dfs.extend(u, None, len) {
            Some(true) => {
                return Ok(SearchOutcome::Found(PathCertificate {
                    vertices: dfs.path,
                    colors: dfs.edges.iter().map(|&e| g.edge(e).color).collect(),
                    flavor: Flavor::Proper,
                }))
            }
            Some(false) => {}
            None => return Ok(SearchOutcome::Aborted),
        }
    }
    Ok(SearchOutcome::Absent)
}

struct Dfs<'g> {
    g: &'g EdgeColoredGraph,
    target: usize,
    dist: Vec<usize>,
    on_path: Vec<bool>,
    path: Vec<usize>,
    edges: Vec<usize>,
    nodes: u64,
    cap: u64,
}

impl Dfs<'_> {
    /// `Some(found)`, or `None` once the node cap is exceeded.
    fn extend(&mut self, x: usize, last_color: Option<usize>, rem: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return None;
        }
        let g = self.g;
        for &(w, e) in g.neighbors(x) {
            let c = g.edge_color_index(e);
            if self.on_path[w] || last_color == Some(c) {
                continue;
            }
            if w == self.target {
                if rem == 1 {
                    self.path.push(w);
                    self.edges.push(e);
                    return Some(true);
                }
                continue;
            }
            if rem < 2 || self.dist[w] > rem - 1 {
                continue;
            }
            self.on_path[w] = true;
            self.path.push(w);
            self.edges.push(e);
            match self.extend(w, Some(c), rem - 1) {
                Some(false) => {}
                other => return other,
            }
            self.on_path[w] = false;
            self.path.pop();
            self.edges.pop();
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> EdgeColoredGraph {
        EdgeColoredGraph::new(n, edges.iter().map(|&(u, v, c)| (u, v, Color(c)))).unwrap()
    }

    #[test]
    fn monochromatic_p3_is_not_proper() {
        let g = graph(3, &[(0, 1, 4), (1, 2, 4)]);
        assert_eq!(find_proper_path(&g, 0, 2, 2).unwrap(), None);
    }

    #[test]
    fn alternating_path_is_found() {
        // 0-1-2-3 alternating colors, with a monochromatic shortcut 0-4-3
        let g = graph(5, &[(0, 1, 0), (1, 2, 1), (2, 3, 0), (0, 4, 2), (4, 3, 2)]);
        let p = find_proper_path(&g, 0, 3, 4).unwrap().unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2, 3]);
        assert!(p.validate(&g).is_ok());
        assert_eq!(find_proper_path(&g, 0, 3, 2).unwrap(), None);
    }

    #[test]
    fn proper_but_not_rainbow() {
        let g = graph(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0)]);
        let p = find_proper_path(&g, 0, 3, 3).unwrap().unwrap();
        assert_eq!(p.colors, vec![Color(0), Color(1), Color(0)]);
    }

    #[test]
    fn same_endpoint_error() {
        let g = graph(2, &[(0, 1, 0)]);
        assert_eq!(find_proper_path(&g, 0, 0, 1), Err(Error::SameEndpoints(0)));
    }
}
