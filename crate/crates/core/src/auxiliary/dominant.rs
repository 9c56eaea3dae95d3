//! High in-degree vertices, their dominant in-colors, and rainbow links.

use std::collections::BTreeMap;

use super::AuxDigraph;
use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoredGraph};

#[derive(Debug, Clone, PartialEq)]
pub struct DominantColorTable {
    pub beta: f64,
    pub gamma: f64,
    /// vertices with in-degree at least (1/2 - √β)n
    pub u_set: Vec<usize>,
    pub w_set: Vec<usize>,
    /// vertices of W with at least γn in-neighbors in U
    pub w_prime: Vec<usize>,
    /// per vertex; only set for members of U
    pub dominant: Vec<Option<Color>>,
    /// per vertex; only set for members of U
    pub rainbow_link: Vec<bool>,
}

impl DominantColorTable {
    pub fn to_text(&self) -> String {
        let join = |vs: &[usize]| {
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = format!(
            "gamma {}\nU {}\nW {}\nW' {}\n",
            self.gamma,
            join(&self.u_set),
            join(&self.w_set),
            join(&self.w_prime)
        );
        for &u in &self.u_set {
            let c = self.dominant[u].map_or("none".to_string(), |c| c.to_string());
            out.push_str(&format!("dominant {u} {c} link {}\n", self.rainbow_link[u]));
        }
        out
    }
}

/// Smallest `s` with `s >= 2√n`.
fn two_sqrt_ceil(n: usize) -> usize {
    let mut s = (2.0 * (n as f64).sqrt()) as usize;
    while s * s < 4 * n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= 4 * n {
        s -= 1;
    }
    s
}

/// Whether color groups of the given sizes can be split into two disjoint
/// families, each covering at least `target` arcs. Exact subset DP over
/// capped partial sums.
fn splits_into_two(groups: &[usize], target: usize) -> bool {
    let side = target + 1;
    let mut reach = vec![false; side * side];
    reach[0] = true;
    for &k in groups {
        let mut next = reach.clone();
        for a in 0..side {
            for b in 0..side {
                if reach[a * side + b] {
                    next[(a + k).min(target) * side + b] = true;
                    next[a * side + (b + k).min(target)] = true;
                }
            }
        }
        reach = next;
    }
    reach[target * side + target]
}

/// U/W/W′ partition of `D`, the dominant in-color of each `u ∈ U` (a color
/// carried by all but at most 2√n in-arcs from U), and whether `u` is a
/// rainbow link (two disjoint in-neighbor sets of size at least 2√n whose
/// arc colors are disjoint).
pub fn dominant_analysis(
    g: &EdgeColoredGraph,
    d: &AuxDigraph,
    beta: f64,
    gamma: f64,
) -> Result<DominantColorTable> {
    for (name, x) in [("beta", beta), ("gamma", gamma)] {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "{name} must lie in (0,1), got {x}"
            )));
        }
    }
    if g.n() != d.n() {
        return Err(Error::InvalidParameter(
            "graph and digraph sizes differ".into(),
        ));
    }
    let n = d.n();
    let u_floor = (0.5 - beta.sqrt()) * n as f64;
    let in_u: Vec<bool> = (0..n).map(|v| d.in_degree(v) as f64 >= u_floor).collect();
    let u_set: Vec<usize> = (0..n).filter(|&v| in_u[v]).collect();
    let w_set: Vec<usize> = (0..n).filter(|&v| !in_u[v]).collect();
    let w_prime = w_set
        .iter()
        .copied()
        .filter(|&w| d.in_arcs(w).filter(|a| in_u[a.from]).count() as f64 >= gamma * n as f64)
        .collect();

    let target = two_sqrt_ceil(n);
    let mut dominant = vec![None; n];
    let mut rainbow_link = vec![false; n];
    for &u in &u_set {
        let mut from_u: BTreeMap<Color, usize> = BTreeMap::new();
        let mut all: BTreeMap<Color, usize> = BTreeMap::new();
        for a in d.in_arcs(u) {
            *all.entry(a.color).or_insert(0) += 1;
            if in_u[a.from] {
                *from_u.entry(a.color).or_insert(0) += 1;
            }
        }
        let total: usize = from_u.values().sum();
        // BTreeMap iteration is ascending, so max_by_key with reversed ties
        // picks the smallest color among the most frequent.
        if let Some((&color, &count)) = from_u.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        {
            let others = total - count;
            if others * others <= 4 * n {
                dominant[u] = Some(color);
            }
        }
        let groups: Vec<usize> = all.into_values().collect();
        rainbow_link[u] = splits_into_two(&groups, target);
    }

    Ok(DominantColorTable {
        beta,
        gamma,
        u_set,
        w_set,
        w_prime,
        dominant,
        rainbow_link,
    })
}
