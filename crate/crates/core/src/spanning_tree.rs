//! Rainbow spanning trees via matroid intersection, and the color-removal
//! criterion as an exhaustive cross-check.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Color, DisjointSets, Edge, EdgeColoredGraph};

/// Largest palette the exhaustive criterion check accepts.
pub const ORACLE_COLOR_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeCertificate {
    pub edges: Vec<Edge>,
}

impl TreeCertificate {
    /// Checks that the edges exist with their colors, are pairwise
    /// differently colored, and form a spanning tree of `g`.
    pub fn validate(&self, g: &EdgeColoredGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCertificate(msg));
        let n = g.n();
        if self.edges.len() + 1 != n.max(1) {
            return bad(format!("{} edges for {n} vertices", self.edges.len()));
        }
        let mut colors: Vec<Color> = self.edges.iter().map(|e| e.color).collect();
        colors.sort_unstable();
        if colors.windows(2).any(|w| w[0] == w[1]) {
            return bad("repeated color".into());
        }
        let mut dsu = DisjointSets::new(n);
        for e in &self.edges {
            match g.edge_between(e.u, e.v) {
                Some(i) if g.edge(i).color == e.color => {}
                _ => {
                    return bad(format!(
                        "{}-{} in color {} is not an edge",
                        e.u, e.v, e.color
                    ))
                }
            }
            if !dsu.union(e.u, e.v) {
                return bad(format!("edge {}-{} closes a cycle", e.u, e.v));
            }
        }
        Ok(())
    }
}

impl fmt::Display for TreeCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            writeln!(f, "{} {} {}", e.u, e.v, e.color)?;
        }
        Ok(())
    }
}

/// Maximum common independent set of the graphic matroid and the partition
/// matroid "at most one edge per color", grown one augmenting path at a time.
/// Returns the edge indices in increasing order.
pub fn max_rainbow_forest(g: &EdgeColoredGraph) -> Vec<usize> {
    let mut state = Intersection::new(g);
    while state.augment() {}
    let mut chosen: Vec<usize> = (0..g.m()).filter(|&e| state.in_set[e]).collect();
    chosen.sort_unstable();
    chosen
}

/// A rainbow spanning tree of `g` if one exists. Exact and polynomial;
/// disconnected graphs yield `None`.
pub fn find_rainbow_spanning_tree(g: &EdgeColoredGraph) -> Option<TreeCertificate> {
    let forest = max_rainbow_forest(g);
    (forest.len() + 1 == g.n().max(1)).then(|| TreeCertificate {
        edges: forest.iter().map(|&e| *g.edge(e)).collect(),
    })
}

struct Intersection<'g> {
    g: &'g EdgeColoredGraph,
    in_set: Vec<bool>,
    color_taken: Vec<bool>,
}

/// Rooted view of the current forest, used to find fundamental cycles.
struct Forest {
    comp: Vec<usize>,
    depth: Vec<usize>,
    /// (parent vertex, edge to parent)
    up: Vec<Option<(usize, usize)>>,
}

impl Forest {
    fn build(g: &EdgeColoredGraph, in_set: &[bool]) -> Self {
        let n = g.n();
        let mut forest = Forest {
            comp: vec![usize::MAX; n],
            depth: vec![0; n],
            up: vec![None; n],
        };
        for root in 0..n {
            if forest.comp[root] != usize::MAX {
                continue;
            }
            forest.comp[root] = root;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                for &(w, e) in g.neighbors(x) {
                    if in_set[e] && forest.comp[w] == usize::MAX {
                        forest.comp[w] = root;
                        forest.depth[w] = forest.depth[x] + 1;
                        forest.up[w] = Some((x, e));
                        queue.push_back(w);
                    }
                }
            }
        }
        forest
    }

    /// Forest edges on the path between `a` and `b` (same component).
    fn path_edges(&self, mut a: usize, mut b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while a != b {
            if self.depth[a] < self.depth[b] {
                std::mem::swap(&mut a, &mut b);
            }
            let (p, e) = self.up[a].expect("non-root vertex has a parent");
            out.push(e);
            a = p;
        }
        out
    }
}

impl<'g> Intersection<'g> {
    fn new(g: &'g EdgeColoredGraph) -> Self {
        Intersection {
            g,
            in_set: vec![false; g.m()],
            color_taken: vec![false; g.num_colors()],
        }
    }

    /// One round of shortest augmenting path search in the exchange graph.
    /// Arcs: `x -> y` when `I - x + y` is a forest, `y -> x` when
    /// `I - x + y` is rainbow. Sources are edges joining two trees of `I`,
    /// sinks are edges of an unused color. BFS visits edges by increasing
    /// index.
    fn augment(&mut self) -> bool {
        let g = self.g;
        let m = g.m();
        let forest = Forest::build(g, &self.in_set);

        // cycle[y]: forest edges whose removal lets y in (y outside I, not a source)
        let mut source = vec![false; m];
        let mut cycle: Vec<Vec<usize>> = vec![Vec::new(); m];
        for y in 0..m {
            if self.in_set[y] {
                continue;
            }
            let e = g.edge(y);
            if forest.comp[e.u] != forest.comp[e.v] {
                source[y] = true;
            } else {
                cycle[y] = forest.path_edges(e.u, e.v);
            }
        }
        // forward[x]: the y's reachable from x via the graphic arcs
        let mut forward: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (y, path) in cycle.iter().enumerate() {
            for &x in path {
                forward[x].push(y);
            }
        }
        // member of I in each color, for the partition arcs y -> x
        let mut holder = vec![usize::MAX; g.num_colors()];
        for x in (0..m).filter(|&x| self.in_set[x]) {
            holder[g.edge_color_index(x)] = x;
        }

        let mut parent = vec![usize::MAX; m];
        let mut seen = vec![false; m];
        let mut queue = VecDeque::new();
        for y in (0..m).filter(|&y| source[y]) {
            seen[y] = true;
            queue.push_back(y);
        }
        while let Some(a) = queue.pop_front() {
            if !self.in_set[a] {
                let c = g.edge_color_index(a);
                if !self.color_taken[c] {
                    self.flip_path(a, &parent);
                    return true;
                }
                let x = holder[c];
                if !seen[x] {
                    seen[x] = true;
                    parent[x] = a;
                    queue.push_back(x);
                }
            } else {
                for &y in &forward[a] {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = a;
                        queue.push_back(y);
                    }
                }
            }
        }
        false
    }

    fn flip_path(&mut self, sink: usize, parent: &[usize]) {
        let mut a = sink;
        loop {
            self.in_set[a] = !self.in_set[a];
            if parent[a] == usize::MAX {
                break;
            }
            a = parent[a];
        }
        self.color_taken.fill(false);
        for e in (0..self.g.m()).filter(|&e| self.in_set[e]) {
            self.color_taken[self.g.edge_color_index(e)] = true;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionVerdict {
    pub holds: bool,
    /// A color set whose removal leaves more than `|C| + 1` components.
    pub witness: Option<Vec<Color>>,
}

/// Checks, for every set `C` of `r` colors with `1 <= r <= n - 2`, that
/// deleting all edges with a color in `C` leaves at most `r + 1` components.
/// Exponential in the number of colors.
pub fn criterion_oracle(g: &EdgeColoredGraph) -> Result<CriterionVerdict> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let colors = g.num_colors();
    if colors > ORACLE_COLOR_LIMIT {
        return Err(Error::TooManyColors {
            colors,
            limit: ORACLE_COLOR_LIMIT,
        });
    }
    let n = g.n();
    let max_r = n.saturating_sub(2);
    for r in 1..=max_r.min(colors) {
        for mask in 1u32..(1 << colors) {
            if mask.count_ones() as usize != r {
                continue;
            }
            let components = g.component_count_with(|e| mask & (1 << g.edge_color_index(e)) == 0);
            if components > r + 1 {
                let witness = (0..colors)
                    .filter(|&c| mask & (1 << c) != 0)
                    .map(|c| g.colors()[c])
                    .collect();
                return Ok(CriterionVerdict {
                    holds: false,
                    witness: Some(witness),
                });
            }
        }
    }
    Ok(CriterionVerdict {
        holds: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_matching_union;

    fn graph(n: usize, edges: &[(usize, usize, u32)]) -> EdgeColoredGraph {
        EdgeColoredGraph::new(n, edges.iter().map(|&(u, v, c)| (u, v, Color(c)))).unwrap()
    }

    fn rainbow_k4() -> EdgeColoredGraph {
        graph(
            4,
            &[
                (0, 1, 0),
                (0, 2, 1),
                (0, 3, 2),
                (1, 2, 3),
                (1, 3, 4),
                (2, 3, 5),
            ],
        )
    }

    #[test]
    fn rainbow_k4_has_tree() {
        let g = rainbow_k4();
        let t = find_rainbow_spanning_tree(&g).unwrap();
        t.validate(&g).unwrap();
        assert!(criterion_oracle(&g).unwrap().holds);
    }

    #[test]
    fn matching_union_has_no_tree() {
        let g = gen_matching_union(6).unwrap();
        assert_eq!(find_rainbow_spanning_tree(&g), None);
        assert_eq!(max_rainbow_forest(&g).len(), 4);
        let verdict = criterion_oracle(&g).unwrap();
        assert!(!verdict.holds);
        assert!(verdict.witness.is_some());
    }

    #[test]
    fn single_color_fails_criterion() {
        let g = graph(3, &[(0, 1, 7), (1, 2, 7), (0, 2, 7)]);
        let verdict = criterion_oracle(&g).unwrap();
        assert_eq!(verdict.witness, Some(vec![Color(7)]));
        assert_eq!(find_rainbow_spanning_tree(&g), None);
    }

    #[test]
    fn augmentation_needs_an_exchange() {
        // Greedy by index takes 0-1 (a) and 1-2 (b), then is stuck: the only
        // edge reaching 3 has color b. Swapping 1-2 for 0-2 (c) frees b.
        let g = graph(4, &[(0, 1, 0), (0, 2, 2), (1, 2, 1), (2, 3, 1)]);
        let t = find_rainbow_spanning_tree(&g).unwrap();
        t.validate(&g).unwrap();
    }

    #[test]
    fn disconnected_graphs() {
        let g = graph(4, &[(0, 1, 0), (2, 3, 1)]);
        assert_eq!(find_rainbow_spanning_tree(&g), None);
        assert_eq!(criterion_oracle(&g), Err(Error::Disconnected));
    }

    #[test]
    fn trivial_orders() {
        let g = EdgeColoredGraph::new(1, std::iter::empty()).unwrap();
        let t = find_rainbow_spanning_tree(&g).unwrap();
        assert!(t.edges.is_empty());
        t.validate(&g).unwrap();
    }

    #[test]
    fn certificate_checks() {
        let g = rainbow_k4();
        let cycle = TreeCertificate {
            edges: vec![*g.edge(0), *g.edge(1), *g.edge(3)],
        };
        assert!(cycle.validate(&g).is_err());
        let short = TreeCertificate {
            edges: vec![*g.edge(0)],
        };
        assert!(short.validate(&g).is_err());
    }
}
