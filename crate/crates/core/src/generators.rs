//! Deterministic instance generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoredGraph, Threshold};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    FmExample,
    TwoCliqueMatchings,
    MatchingUnion,
    RandomColored,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::FmExample => "fm_example",
            Family::TwoCliqueMatchings => "two_clique_matchings",
            Family::MatchingUnion => "matching_union",
            Family::RandomColored => "random_colored",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('-', "_").as_str() {
            "fm_example" | "fm" => Ok(Family::FmExample),
            "two_clique_matchings" | "two_clique" => Ok(Family::TwoCliqueMatchings),
            "matching_union" => Ok(Family::MatchingUnion),
            "random_colored" | "random" => Ok(Family::RandomColored),
            _ => Err(Error::InvalidParameter(format!("unknown family {s:?}"))),
        }
    }
}

/// Everything needed to regenerate an instance byte-for-byte.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InstanceSpec {
    pub family: Family,
    pub n: usize,
    /// number of matchings plus one (two-clique family)
    pub k: usize,
    pub seed: u64,
    /// palette size (random family); defaults to `n`
    pub palette: Option<usize>,
    /// color-degree target (random family); defaults to `n/2`
    pub target: Option<Threshold>,
}

impl InstanceSpec {
    pub fn new(family: Family, n: usize) -> Self {
        InstanceSpec {
            family,
            n,
            k: 1,
            seed: 0,
            palette: None,
            target: None,
        }
    }

    pub fn target(&self) -> Threshold {
        self.target.unwrap_or(Threshold::half(self.n))
    }

    pub fn palette(&self) -> usize {
        self.palette.unwrap_or(self.n)
    }

    pub fn generate(&self) -> Result<EdgeColoredGraph> {
        match self.family {
            Family::FmExample => gen_fm_example(self.n),
            Family::TwoCliqueMatchings => gen_two_clique_matchings(self.n, self.k),
            Family::MatchingUnion => gen_matching_union(self.n),
            Family::RandomColored => {
                gen_random_colored(self.n, self.target(), self.palette(), self.seed)
            }
        }
    }
}

/// Vertex ids of the two extra vertices of [`gen_fm_example`].
pub fn fm_example_xy(n: usize) -> (usize, usize) {
    (n - 2, n - 1)
}

/// A circulant regular tournament on `0..n-2` (`i -> j` iff
/// `(j - i) mod (n-2)` lies in `1..=(n-3)/2`), plus `x = n-2` and `y = n-1`
/// sending arcs to every tournament vertex. Each edge is colored by its head:
/// color `v` for every arc into `v`. x and y are not adjacent.
pub fn gen_fm_example(n: usize) -> Result<EdgeColoredGraph> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "fm_example needs odd n >= 5, got {n}"
        )));
    }
    let core = n - 2;
    let reach = (core - 1) / 2;
    let mut edges = Vec::new();
    for i in 0..core {
        for j in i + 1..core {
            let head = if (j - i) % core <= reach { j } else { i };
            edges.push((i, j, Color(head as u32)));
        }
    }
    let (x, y) = fm_example_xy(n);
    for w in 0..core {
        edges.push((x, w, Color(w as u32)));
        edges.push((y, w, Color(w as u32)));
    }
    EdgeColoredGraph::new(n, edges)
}

/// Two rainbow cliques on `0..n/2` and `n/2..n` with disjoint palettes, joined
/// by `k - 1` shifted perfect matchings `i <-> n/2 + (i + j) mod n/2`, each in
/// its own fresh color.
pub fn gen_two_clique_matchings(n: usize, k: usize) -> Result<EdgeColoredGraph> {
    if n < 2 || n % 2 == 1 || k == 0 || k - 1 > n / 2 {
        return Err(Error::InvalidParameter(format!(
            "two_clique_matchings needs even n >= 2 and 1 <= k <= n/2 + 1, got n={n}, k={k}"
        )));
    }
    let h = n / 2;
    let mut edges = Vec::new();
    let mut next = 0u32;
    for base in [0, h] {
        for u in 0..h {
            for v in u + 1..h {
                edges.push((base + u, base + v, Color(next)));
                next += 1;
            }
        }
    }
    for j in 0..k - 1 {
        for i in 0..h {
            edges.push((i, h + (i + j) % h, Color(next)));
        }
        next += 1;
    }
    EdgeColoredGraph::new(n, edges)
}

/// Round `r` of the circle-method 1-factorization of `K_n` (`n` even).
pub fn round_robin_round(n: usize, r: usize) -> Vec<(usize, usize)> {
    let m = n - 1;
    let mut pairs = vec![(r, m)];
    for i in 1..n / 2 {
        pairs.push(((r + i) % m, (r + m - i) % m));
    }
    pairs
}

/// The first `n - 2` rounds of the round-robin 1-factorization of `K_n`,
/// round `r` in color `r`.
pub fn gen_matching_union(n: usize) -> Result<EdgeColoredGraph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "matching_union needs even n >= 4, got {n}"
        )));
    }
    let edges = (0..n - 2).flat_map(|r| {
        round_robin_round(n, r)
            .into_iter()
            .map(move |(u, v)| (u, v, Color(r as u32)))
    });
    EdgeColoredGraph::new(n, edges)
}

/// `G(n, p)` with colors drawn uniformly from `0..palette`.
pub fn gen_random_uniform(n: usize, p: f64, palette: usize, seed: u64) -> Result<EdgeColoredGraph> {
    if !(0.0..=1.0).contains(&p) || palette == 0 {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= p <= 1 and palette >= 1, got p={p}, palette={palette}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, Color(rng.gen_range(0..palette) as u32)));
            }
        }
    }
    EdgeColoredGraph::new(n, edges)
}

/// Random graph with random colors, then greedy repair until every color
/// degree reaches `target`.
///
/// A repair step takes the smallest deficient vertex `v` and either recolors
/// an edge `vw` whose color repeats at `v`, or adds an edge `vw`, using a
/// color absent at both `v` and `w`. Either way `v` gains a color and no
/// vertex loses one. When no such move exists, `v` still gains a color on a
/// random eligible edge and `w` may lose one. At most `50 n` steps are taken.
pub fn gen_random_colored(
    n: usize,
    target: Threshold,
    palette: usize,
    seed: u64,
) -> Result<EdgeColoredGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let need = target.ceil() as usize;
    if need > n - 1 {
        return Err(Error::Generation(format!(
            "target {target} exceeds the maximum color degree {} on {n} vertices",
            n - 1
        )));
    }
    if need > palette {
        return Err(Error::Generation(format!(
            "target {target} exceeds palette size {palette}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = if n > 1 {
        (need as f64 / (n - 1) as f64 + 0.15).min(1.0)
    } else {
        0.0
    };
    let mut state = RepairState::new(n, palette);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                let c = rng.gen_range(0..palette);
                state.set(u, v, Some(c));
            }
        }
    }

    for _ in 0..50 * n {
        let Some(v) = (0..n).find(|&v| state.color_degree[v] < need) else {
            return Ok(state.into_graph());
        };
        if !state.repair(v, &mut rng) {
            return Err(Error::Generation(format!(
                "no repair move available at vertex {v}"
            )));
        }
    }
    if (0..n).all(|v| state.color_degree[v] >= need) {
        Ok(state.into_graph())
    } else {
        Err(Error::Generation(format!(
            "color-degree target {target} not reached within {} repair steps",
            50 * n
        )))
    }
}

struct RepairState {
    n: usize,
    palette: usize,
    color: Vec<Option<usize>>,
    /// count[v * palette + c] = edges of color c at v
    count: Vec<u32>,
    color_degree: Vec<usize>,
}

impl RepairState {
    fn new(n: usize, palette: usize) -> Self {
        RepairState {
            n,
            palette,
            color: vec![None; n * n],
            count: vec![0; n * palette],
            color_degree: vec![0; n],
        }
    }

    fn bump(&mut self, v: usize, c: usize, up: bool) {
        let slot = &mut self.count[v * self.palette + c];
        if up {
            *slot += 1;
            if *slot == 1 {
                self.color_degree[v] += 1;
            }
        } else {
            *slot -= 1;
            if *slot == 0 {
                self.color_degree[v] -= 1;
            }
        }
    }

    fn set(&mut self, u: usize, v: usize, c: Option<usize>) {
        if let Some(old) = self.color[u * self.n + v] {
            self.bump(u, old, false);
            self.bump(v, old, false);
        }
        self.color[u * self.n + v] = c;
        self.color[v * self.n + u] = c;
        if let Some(c) = c {
            self.bump(u, c, true);
            self.bump(v, c, true);
        }
    }

    fn free_colors(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.palette)
            .filter(|&c| {
                self.count[a * self.palette + c] == 0 && self.count[b * self.palette + c] == 0
            })
            .collect()
    }

    fn repair(&mut self, v: usize, rng: &mut ChaCha8Rng) -> bool {
        let n = self.n;
        let mut duplicated: Vec<usize> = (0..n)
            .filter(|&w| {
                self.color[v * n + w].is_some_and(|c| self.count[v * self.palette + c] >= 2)
            })
            .collect();
        duplicated.shuffle(rng);
        for w in duplicated {
            let free = self.free_colors(v, w);
            if let Some(&c) = free.choose(rng) {
                self.set(v, w, Some(c));
                return true;
            }
        }
        let mut absent: Vec<usize> = (0..n)
            .filter(|&w| w != v && self.color[v * n + w].is_none())
            .collect();
        absent.shuffle(rng);
        for &w in &absent {
            let free = self.free_colors(v, w);
            if let Some(&c) = free.choose(rng) {
                self.set(v, w, Some(c));
                return true;
            }
        }
        // No move keeps every other vertex whole: give v a new color on a
        // duplicated or missing edge even if w loses one.
        let new_at_v: Vec<usize> = (0..self.palette)
            .filter(|&c| self.count[v * self.palette + c] == 0)
            .collect();
        let candidates: Vec<usize> = (0..n)
            .filter(|&w| {
                w != v
                    && self.color[v * n + w].is_none_or(|c| self.count[v * self.palette + c] >= 2)
            })
            .collect();
        match (candidates.choose(rng), new_at_v.choose(rng)) {
            (Some(&w), Some(&c)) => {
                self.set(v, w, Some(c));
                true
            }
            _ => false,
        }
    }

    fn into_graph(self) -> EdgeColoredGraph {
        let n = self.n;
        let edges = (0..n).flat_map(|u| {
            let color = &self.color;
            (u + 1..n).filter_map(move |v| color[u * n + v].map(|c| (u, v, Color(c as u32))))
        });
        EdgeColoredGraph::new(n, edges).expect("generator produces a simple graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::write_graph;

    #[test]
    fn fm_example_small() {
        let g = gen_fm_example(5).unwrap();
        assert_eq!(g.m(), 3 + 6);
        assert_eq!(g.min_color_degree().unwrap(), 2);
        // core vertices meet (n-1)/2 colors, x and y meet n-2
        assert_eq!(&g.color_degrees()[..3], &[2, 2, 2]);
        assert_eq!(&g.color_degrees()[3..], &[3, 3]);
        let (x, y) = fm_example_xy(5);
        assert!(g.edge_between(x, y).is_none());
    }

    #[test]
    fn fm_example_rejects_bad_n() {
        for n in [0, 3, 4, 6, 10] {
            assert!(gen_fm_example(n).is_err(), "n = {n}");
        }
    }

    #[test]
    fn two_clique_counts() {
        let g = gen_two_clique_matchings(12, 2).unwrap();
        assert_eq!(g.m(), 2 * 15 + 6);
        assert_eq!(g.num_colors(), 31);
        assert_eq!(g.min_color_degree().unwrap(), 6);
        let g = gen_two_clique_matchings(12, 4).unwrap();
        assert_eq!(g.min_color_degree().unwrap(), 8);
        assert!(gen_two_clique_matchings(12, 8).is_err());
        assert!(gen_two_clique_matchings(11, 2).is_err());
        assert!(gen_two_clique_matchings(12, 0).is_err());
    }

    #[test]
    fn matching_union_counts() {
        let g = gen_matching_union(6).unwrap();
        assert_eq!(g.m(), 12);
        assert_eq!(g.num_colors(), 4);
        assert!((0..6).all(|v| g.degree(v) == 4));
        assert_eq!(g.min_color_degree().unwrap(), 4);
        assert!(gen_matching_union(7).is_err());
        assert!(gen_matching_union(2).is_err());
    }

    #[test]
    fn round_robin_rounds_partition_kn() {
        let n = 8;
        let mut seen = std::collections::HashSet::new();
        for r in 0..n - 1 {
            let round = round_robin_round(n, r);
            let mut covered: Vec<usize> = round.iter().flat_map(|&(a, b)| [a, b]).collect();
            covered.sort_unstable();
            assert_eq!(covered, (0..n).collect::<Vec<_>>());
            for (a, b) in round {
                assert!(seen.insert((a.min(b), a.max(b))));
            }
        }
        assert_eq!(seen.len(), n * (n - 1) / 2);
    }

    #[test]
    fn random_colored_meets_target_and_is_deterministic() {
        let spec = |seed| gen_random_colored(20, Threshold::integer(10), 40, seed).unwrap();
        let g = spec(1);
        assert!(g.min_color_degree().unwrap() >= 10);
        assert_eq!(write_graph(&g), write_graph(&spec(1)));
        assert_ne!(write_graph(&g), write_graph(&spec(2)));
    }

    #[test]
    fn random_colored_infeasible() {
        assert!(matches!(
            gen_random_colored(20, Threshold::integer(21), 40, 1),
            Err(Error::Generation(_))
        ));
        assert!(matches!(
            gen_random_colored(20, Threshold::integer(10), 5, 1),
            Err(Error::Generation(_))
        ));
    }

    #[test]
    fn family_names_parse() {
        for f in [
            Family::FmExample,
            Family::TwoCliqueMatchings,
            Family::MatchingUnion,
            Family::RandomColored,
        ] {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!(
            "two-clique".parse::<Family>().unwrap(),
            Family::TwoCliqueMatchings
        );
    }
}
