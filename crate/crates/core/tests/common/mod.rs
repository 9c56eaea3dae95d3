//! Brute-force reference implementations. Deliberately naive: they work
//! from raw edge lists and enumerate everything.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rainbow_core::generators::gen_random_uniform;
use rainbow_core::{Color, EdgeColoredGraph};

pub fn graph(n: usize, edges: &[(usize, usize, u32)]) -> EdgeColoredGraph {
    EdgeColoredGraph::new(n, edges.iter().map(|&(u, v, c)| (u, v, Color(c)))).unwrap()
}

/// Color of edge `uv` by linear scan over the edge list.
pub fn color_of(g: &EdgeColoredGraph, u: usize, v: usize) -> Option<Color> {
    let (a, b) = (u.min(v), u.max(v));
    g.edges()
        .iter()
        .find(|e| e.u == a && e.v == b)
        .map(|e| e.color)
}

pub fn color_degree(g: &EdgeColoredGraph, v: usize) -> usize {
    g.edges()
        .iter()
        .filter(|e| e.u == v || e.v == v)
        .map(|e| e.color)
        .collect::<HashSet<_>>()
        .len()
}

/// Number of `color` edges at `v`.
pub fn class_degree(g: &EdgeColoredGraph, v: usize, color: Color) -> usize {
    g.edges()
        .iter()
        .filter(|e| e.color == color && (e.u == v || e.v == v))
        .count()
}

fn adjacency(g: &EdgeColoredGraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n()];
    for e in g.edges() {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

/// Every simple `u,v`-path with at most `max_len` edges, as vertex lists.
pub fn simple_paths(g: &EdgeColoredGraph, u: usize, v: usize, max_len: usize) -> Vec<Vec<usize>> {
    fn walk(
        adj: &[Vec<usize>],
        v: usize,
        max_len: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let x = *path.last().unwrap();
        if x == v {
            out.push(path.clone());
            return;
        }
        if path.len() > max_len {
            return;
        }
        for &w in &adj[x] {
            if !path.contains(&w) {
                path.push(w);
                walk(adj, v, max_len, path, out);
                path.pop();
            }
        }
    }
    let adj = adjacency(g);
    let mut out = Vec::new();
    walk(&adj, v, max_len, &mut vec![u], &mut out);
    out
}

pub fn path_colors(g: &EdgeColoredGraph, path: &[usize]) -> Vec<Color> {
    path.windows(2)
        .map(|w| color_of(g, w[0], w[1]).unwrap())
        .collect()
}

pub fn is_rainbow(colors: &[Color]) -> bool {
    colors.iter().collect::<HashSet<_>>().len() == colors.len()
}

pub fn is_proper(colors: &[Color]) -> bool {
    colors.windows(2).all(|w| w[0] != w[1])
}

/// Shortest rainbow path avoiding the given colors and internal vertices,
/// lexicographically least among the shortest.
pub fn brute_rainbow_path(
    g: &EdgeColoredGraph,
    u: usize,
    v: usize,
    max_len: usize,
    forbidden_colors: &[Color],
    forbidden_vertices: &[usize],
) -> Option<Vec<usize>> {
    simple_paths(g, u, v, max_len)
        .into_iter()
        .filter(|p| p.iter().all(|x| !forbidden_vertices.contains(x)))
        .filter(|p| {
            let cs = path_colors(g, p);
            is_rainbow(&cs) && cs.iter().all(|c| !forbidden_colors.contains(c))
        })
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
}

pub fn brute_proper_path(
    g: &EdgeColoredGraph,
    u: usize,
    v: usize,
    max_len: usize,
) -> Option<Vec<usize>> {
    simple_paths(g, u, v, max_len)
        .into_iter()
        .filter(|p| is_proper(&path_colors(g, p)))
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
}

pub fn brute_is_properly_connected(g: &EdgeColoredGraph) -> bool {
    let n = g.n();
    (0..n).all(|u| (u + 1..n).all(|v| brute_proper_path(g, u, v, n - 1).is_some()))
}

/// True iff some monochromatic triangle or monochromatic path with three
/// edges survives, found by scanning all vertex triples and quadruples.
pub fn has_mono_p4_or_triangle(g: &EdgeColoredGraph) -> bool {
    let n = g.n();
    let c = |a: usize, b: usize| color_of(g, a, b);
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                if a == b || b == d || a == d {
                    continue;
                }
                if let (Some(x), Some(y), Some(z)) = (c(a, b), c(b, d), c(d, a)) {
                    if x == y && y == z {
                        return true;
                    }
                }
                for e in 0..n {
                    if [a, b, d].contains(&e) {
                        continue;
                    }
                    if let (Some(x), Some(y), Some(z)) = (c(a, b), c(b, d), c(d, e)) {
                        if x == y && y == z {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Arcs of `D_G` recomputed from scratch: for each vertex and color whose
/// class degree `d` satisfies `1 <= d` and `d*d <= n`, one arc to the
/// smallest neighbor in that color.
pub fn brute_dg_arcs(g: &EdgeColoredGraph) -> BTreeSet<(usize, usize, Color)> {
    let n = g.n();
    let mut arcs = BTreeSet::new();
    for v in 0..n {
        let mut by_color: BTreeMap<Color, Vec<usize>> = BTreeMap::new();
        for e in g.edges() {
            if e.u == v {
                by_color.entry(e.color).or_default().push(e.v);
            } else if e.v == v {
                by_color.entry(e.color).or_default().push(e.u);
            }
        }
        for (color, nbrs) in by_color {
            if nbrs.len() * nbrs.len() <= n {
                arcs.insert((v, *nbrs.iter().min().unwrap(), color));
            }
        }
    }
    arcs
}

/// Whether deleting all edges with a color in `colors` leaves at most
/// `colors.len() + 1` components, for every color set of size `1..=n-2`.
pub fn brute_criterion(g: &EdgeColoredGraph) -> bool {
    let n = g.n();
    let palette: Vec<Color> = g
        .edges()
        .iter()
        .map(|e| e.color)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for mask in 1u32..(1 << palette.len()) {
        let r = mask.count_ones() as usize;
        if r > n.saturating_sub(2) {
            continue;
        }
        let removed: HashSet<Color> = (0..palette.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| palette[i])
            .collect();
        // components by repeated relabelling
        let mut label: Vec<usize> = (0..n).collect();
        loop {
            let mut changed = false;
            for e in g.edges().iter().filter(|e| !removed.contains(&e.color)) {
                let m = label[e.u].min(label[e.v]);
                if label[e.u] != m || label[e.v] != m {
                    label[e.u] = m;
                    label[e.v] = m;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let comps = label.iter().collect::<HashSet<_>>().len();
        if comps > r + 1 {
            return false;
        }
    }
    true
}

pub fn is_connected(g: &EdgeColoredGraph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let adj = adjacency(g);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &w in &adj[x] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Deterministic small random instance from a single seed.
pub fn small_instance(seed: u64, max_n: usize, max_palette: usize) -> EdgeColoredGraph {
    let n = 2 + (seed as usize * 7 + 3) % (max_n - 1);
    let palette = 1 + (seed as usize * 13 + 5) % max_palette;
    let p = 0.25 + 0.5 * ((seed * 37 % 100) as f64 / 100.0);
    gen_random_uniform(n, p, palette, seed).unwrap()
}
