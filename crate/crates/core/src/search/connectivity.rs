//! All-pairs rainbow / proper connectivity and rainbow k-connections.

use rayon::prelude::*;

use super::{
    check_endpoints, distances_to, find_proper_path, find_rainbow_path_cc, Flavor,
    KConnectCertificate, PathCertificate, RainbowQuery, SearchOutcome,
};
use crate::error::{Error, Result};
use crate::graph::EdgeColoredGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Exact,
    ColorCoding {
        trials: usize,
        seed: u64,
    },
    /// Exact search with a node-expansion cap; pairs that hit the cap are
    /// retried with color coding.
    Auto {
        node_cap: u64,
        trials: usize,
        seed: u64,
    },
}

fn pair_seed(seed: u64, u: usize, v: usize) -> u64 {
    seed ^ (((u as u64) << 32) | v as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Searches one pair; the flag reports whether the exact search gave up and
/// color coding answered instead.
pub(crate) fn search_pair(
    g: &EdgeColoredGraph,
    u: usize,
    v: usize,
    max_len: usize,
    engine: Engine,
) -> Result<(Option<PathCertificate>, bool)> {
    match engine {
        Engine::Exact => Ok((RainbowQuery::new(u, v, max_len).run(g)?.found(), false)),
        Engine::ColorCoding { trials, seed } => Ok((
            find_rainbow_path_cc(g, u, v, max_len, trials, pair_seed(seed, u, v))?,
            false,
        )),
        Engine::Auto {
            node_cap,
            trials,
            seed,
        } => match RainbowQuery::new(u, v, max_len).node_cap(node_cap).run(g)? {
            SearchOutcome::Found(p) => Ok((Some(p), false)),
            SearchOutcome::Absent => Ok((None, false)),
            SearchOutcome::Aborted => Ok((
                find_rainbow_path_cc(g, u, v, max_len, trials, pair_seed(seed, u, v))?,
                true,
            )),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowConnectivity {
    pub connected: bool,
    /// The first pair without a path, or else the first pair attaining
    /// `worst_len`.
    pub worst_pair: Option<(usize, usize)>,
    /// Maximum over pairs of the path length found; `None` when disconnected.
    pub worst_len: Option<usize>,
    /// Pairs answered by color coding after the exact search hit its cap.
    pub fallbacks: usize,
}

/// Checks every unordered pair for a rainbow path of length at most
/// `max_len`. Exact with [`Engine::Exact`]; with color coding a missing pair
/// may be a miss and lengths are upper bounds.
pub fn is_rainbow_connected(
    g: &EdgeColoredGraph,
    max_len: usize,
    engine: Engine,
) -> Result<RainbowConnectivity> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let results: Vec<(Option<usize>, bool)> = pairs
        .par_iter()
        .map(|&(u, v)| {
            search_pair(g, u, v, max_len, engine).map(|(p, fb)| (p.map(|p| p.len()), fb))
        })
        .collect::<Result<_>>()?;

    let fallbacks = results.iter().filter(|r| r.1).count();
    if let Some(i) = results.iter().position(|r| r.0.is_none()) {
        return Ok(RainbowConnectivity {
            connected: false,
            worst_pair: Some(pairs[i]),
            worst_len: None,
            fallbacks,
        });
    }
    let (i, len) = results
        .iter()
        .enumerate()
        .map(|(i, r)| (i, r.0.unwrap()))
        .fold((0, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
    Ok(RainbowConnectivity {
        connected: true,
        worst_pair: Some(pairs[i]),
        worst_len: Some(len),
        fallbacks,
    })
}

/// The iterative procedure: find a shortest rainbow `u,v`-path, delete its
/// internal vertices and every edge carrying one of its colors, and repeat
/// `k` times. Sufficient but not complete: `None` means one round failed.
pub fn rainbow_k_connect(
    g: &EdgeColoredGraph,
    u: usize,
    v: usize,
    k: usize,
    max_len: usize,
) -> Result<Option<KConnectCertificate>> {
    check_endpoints(g, u, v)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let mut query = RainbowQuery::new(u, v, max_len);
    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        match query.run(g)?.found() {
            Some(p) => {
                query = query
                    .forbid_colors(p.colors.iter().copied())
                    .forbid_vertices(p.internal_vertices().iter().copied());
                paths.push(p);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(KConnectCertificate { u, v, paths }))
}

/// Exhaustive search for `k` internally disjoint `u,v`-paths (each of
/// length at most `max_len`) with rainbow union. Tries every rainbow path as
/// the first path, so it is exponential; meant for small instances.
pub fn exhaustive_k_connect(
    g: &EdgeColoredGraph,
    u: usize,
    v: usize,
    k: usize,
    max_len: usize,
) -> Result<Option<KConnectCertificate>> {
    check_endpoints(g, u, v)?;
    if k == 0 || max_len == 0 {
        return Err(Error::InvalidParameter(
            "k and max_len must be at least 1".into(),
        ));
    }
    let mut state = Exhaustive {
        g,
        u,
        v,
        max_len,
        color_used: vec![false; g.num_colors()],
        vertex_used: vec![false; g.n()],
        paths: Vec::new(),
    };
    Ok(state.search(k)?.then_some(KConnectCertificate {
        u,
        v,
        paths: state.paths,
    }))
}

struct Exhaustive<'g> {
    g: &'g EdgeColoredGraph,
    u: usize,
    v: usize,
    max_len: usize,
    color_used: Vec<bool>,
    vertex_used: Vec<bool>,
    paths: Vec<PathCertificate>,
}

impl Exhaustive<'_> {
    fn search(&mut self, k: usize) -> Result<bool> {
        if k == 1 {
            let g = self.g;
            let query = RainbowQuery::new(self.u, self.v, self.max_len)
                .forbid_colors(
                    (0..g.num_colors())
                        .filter(|&c| self.color_used[c])
                        .map(|c| g.colors()[c]),
                )
                .forbid_vertices((0..g.n()).filter(|&x| self.vertex_used[x]));
            return Ok(match query.run(g)?.found() {
                Some(p) => {
                    self.paths.push(p);
                    true
                }
                None => false,
            });
        }
        let dist = distances_to(self.g, self.v, &self.vertex_used, |e| {
            !self.color_used[self.g.edge_color_index(e)]
        });
        if dist[self.u] > self.max_len {
            return Ok(false);
        }
        let mut path = vec![self.u];
        let mut edges = Vec::new();
        self.vertex_used[self.u] = true;
        let found = self.each_path(&dist, &mut path, &mut edges, k);
        self.vertex_used[self.u] = false;
        found
    }

    /// Enumerates rainbow paths extending `path`; for each complete one,
    /// reserves it and recurses for the remaining `k - 1` paths.
    fn each_path(
        &mut self,
        dist: &[usize],
        path: &mut Vec<usize>,
        edges: &mut Vec<usize>,
        k: usize,
    ) -> Result<bool> {
        let g = self.g;
        let x = *path.last().unwrap();
        for &(w, e) in g.neighbors(x) {
            let c = g.edge_color_index(e);
            if self.vertex_used[w] || self.color_used[c] {
                continue;
            }
            let used_len = edges.len() + 1;
            if w == self.v {
                path.push(w);
                edges.push(e);
                self.color_used[c] = true;
                self.paths.push(PathCertificate {
                    vertices: path.clone(),
                    colors: edges.iter().map(|&f| g.edge(f).color).collect(),
                    flavor: Flavor::Rainbow,
                });
                // internal vertices stay reserved; the endpoints are shared
                self.vertex_used[self.u] = false;
                let found = self.search(k - 1)?;
                self.vertex_used[self.u] = true;
                if !found {
                    self.paths.pop();
                }
                self.color_used[c] = false;
                path.pop();
                edges.pop();
                if found {
                    return Ok(true);
                }
                continue;
            }
            if dist[w] == usize::MAX || used_len + dist[w] > self.max_len {
                continue;
            }
            self.vertex_used[w] = true;
            self.color_used[c] = true;
            path.push(w);
            edges.push(e);
            let found = self.each_path(dist, path, edges, k)?;
            path.pop();
            edges.pop();
            self.vertex_used[w] = false;
            self.color_used[c] = false;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// First pair (in lexicographic order) with no properly-colored path, if any.
pub fn proper_connectivity_witness(g: &EdgeColoredGraph) -> Result<Option<(usize, usize)>> {
    let n = g.n();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let missing: Vec<bool> = pairs
        .par_iter()
        .map(|&(u, v)| find_proper_path(g, u, v, n - 1).map(|p| p.is_none()))
        .collect::<Result<_>>()?;
    Ok(missing.iter().position(|&m| m).map(|i| pairs[i]))
}

pub fn is_properly_connected(g: &EdgeColoredGraph) -> Result<bool> {
    Ok(proper_connectivity_witness(g)?.is_none())
}
