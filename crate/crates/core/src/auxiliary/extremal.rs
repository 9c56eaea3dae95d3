//! β-extremality of type 1 (near-bipartition with few crossing arcs) and
//! type 2 (few reciprocated pairs).

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{build_gstar, AuxDigraph};
use crate::error::{Error, Result};
use crate::graph::EdgeColoredGraph;

/// Hard cap on exhaustive enumeration (2^(n-1) bipartitions).
const MAX_EXHAUSTIVE: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Bipartitions are enumerated exhaustively up to this many vertices.
    pub exhaustive_limit: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            exhaustive_limit: 18,
            restarts: 20,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type1Witness {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    /// arcs with one endpoint on each side, both directions counted
    pub cross_arcs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalReport {
    pub beta: f64,
    pub n: usize,
    /// Best balanced bipartition found, whether or not it is a witness.
    pub best_partition: Option<Type1Witness>,
    /// True when `best_partition` is a true minimum (exhaustive search).
    pub type1_exhaustive: bool,
    pub gstar_edges: usize,
    /// βn²
    pub bound: f64,
}

impl ExtremalReport {
    /// A type-1 witness, if the best partition found satisfies the definition.
    pub fn type1(&self) -> Option<&Type1Witness> {
        self.best_partition
            .as_ref()
            .filter(|w| w.cross_arcs as f64 <= self.bound)
    }

    pub fn is_type1(&self) -> bool {
        self.type1().is_some()
    }

    /// Exact: |E(G*)| <= βn².
    pub fn is_type2(&self) -> bool {
        self.gstar_edges as f64 <= self.bound
    }

    pub fn is_extremal(&self) -> bool {
        self.is_type1() || self.is_type2()
    }

    /// `key value` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "beta {}\nn {}\nbound {:.4}\ngstar_edges {}\ntype2 {}\n",
            self.beta,
            self.n,
            self.bound,
            self.gstar_edges,
            self.is_type2()
        );
        match &self.best_partition {
            Some(w) => {
                out.push_str(&format!("best_cross_arcs {}\n", w.cross_arcs));
                out.push_str(&format!("best_v1 {}\n", join(&w.v1)));
                out.push_str(&format!("best_v2 {}\n", join(&w.v2)));
            }
            None => out.push_str("best_cross_arcs none\n"),
        }
        let type1 = match (self.is_type1(), self.type1_exhaustive) {
            (true, _) => "true",
            (false, true) => "false",
            (false, false) => "none_found",
        };
        out.push_str(&format!(
            "type1 {type1}\ntype1_exhaustive {}\n",
            self.type1_exhaustive
        ));
        out
    }
}

fn join(vs: &[usize]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn classify_extremal(
    g: &EdgeColoredGraph,
    d: &AuxDigraph,
    beta: f64,
) -> Result<ExtremalReport> {
    classify_extremal_with(g, d, beta, ClassifyOptions::default())
}

/// Type 2 is decided exactly. Type 1 is one-sided above
/// `opts.exhaustive_limit`: a reported witness is always valid, but its
/// absence only means local search did not find one.
pub fn classify_extremal_with(
    g: &EdgeColoredGraph,
    d: &AuxDigraph,
    beta: f64,
    opts: ClassifyOptions,
) -> Result<ExtremalReport> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "beta must lie in (0,1), got {beta}"
        )));
    }
    if g.n() != d.n() {
        return Err(Error::InvalidParameter(
            "graph and digraph sizes differ".into(),
        ));
    }
    let n = d.n();
    let gstar_edges = build_gstar(d)?.m();
    let min_side = (0.5 - beta) * n as f64;
    let weights = PairWeights::new(d);

    let exhaustive = n <= opts.exhaustive_limit.min(MAX_EXHAUSTIVE);
    let best = if n < 2 {
        None
    } else if exhaustive {
        exhaustive_min_cut(&weights, min_side)
    } else {
        local_search_min_cut(&weights, min_side, opts)
    };

    Ok(ExtremalReport {
        beta,
        n,
        best_partition: best.map(|(cross, side)| {
            let (v1, v2): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| !side[v]);
            Type1Witness {
                v1,
                v2,
                cross_arcs: cross,
            }
        }),
        type1_exhaustive: exhaustive,
        gstar_edges,
        bound: beta * (n * n) as f64,
    })
}

/// Number of arcs (0, 1 or 2) between each unordered pair.
struct PairWeights {
    n: usize,
    w: Vec<u8>,
}

impl PairWeights {
    fn new(d: &AuxDigraph) -> Self {
        let n = d.n();
        let mut w = vec![0u8; n * n];
        for a in d.arcs() {
            w[a.from * n + a.to] += 1;
            w[a.to * n + a.from] += 1;
        }
        PairWeights { n, w }
    }

    fn get(&self, u: usize, v: usize) -> usize {
        self.w[u * self.n + v] as usize
    }

    fn cross(&self, side: &[bool]) -> usize {
        let mut total = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if side[u] != side[v] {
                    total += self.get(u, v);
                }
            }
        }
        total
    }
}

fn side_ok(size: usize, min_side: f64) -> bool {
    size >= 1 && size as f64 >= min_side
}

/// Canonical form puts vertex 0 on side `false`.
fn canonical(mut side: Vec<bool>) -> Vec<bool> {
    if side[0] {
        side.iter_mut().for_each(|s| *s = !*s);
    }
    side
}

fn exhaustive_min_cut(weights: &PairWeights, min_side: f64) -> Option<(usize, Vec<bool>)> {
    let n = weights.n;
    let mut nbr = vec![0u64; n];
    let mut mutual = vec![0u64; n];
    for u in 0..n {
        for v in 0..n {
            match weights.get(u, v) {
                1 => nbr[u] |= 1 << v,
                2 => {
                    nbr[u] |= 1 << v;
                    mutual[u] |= 1 << v;
                }
                _ => {}
            }
        }
    }
    // bit v set = vertex v on side `true`; vertex 0 always on side `false`.
    // Ties go to the lexicographically least side vector, i.e. the smallest
    // bit-reversed mask.
    let mut best: Option<(usize, u64, u64)> = None;
    for mask in (0u64..1 << n).step_by(2) {
        let ones = mask.count_ones() as usize;
        if !side_ok(ones, min_side) || !side_ok(n - ones, min_side) {
            continue;
        }
        let mut cross = 0usize;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            cross +=
                (nbr[v] & !mask).count_ones() as usize + (mutual[v] & !mask).count_ones() as usize;
        }
        let key = mask.reverse_bits() >> (64 - n);
        if best.is_none_or(|(c, k, _)| (cross, key) < (c, k)) {
            best = Some((cross, key, mask));
        }
    }
    best.map(|(cross, _, mask)| (cross, (0..n).map(|v| mask >> v & 1 == 1).collect()))
}

fn local_search_min_cut(
    weights: &PairWeights,
    min_side: f64,
    opts: ClassifyOptions,
) -> Option<(usize, Vec<bool>)> {
    let n = weights.n;
    let half = n / 2;
    if !side_ok(half, min_side) || !side_ok(n - half, min_side) {
        return None;
    }
    (0..opts.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(r as u64));
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut side = vec![false; n];
            for &v in &order[..half] {
                side[v] = true;
            }
            improve(weights, &mut side, min_side);
            let side = canonical(side);
            (weights.cross(&side), side)
        })
        .min()
}

/// Kernighan–Lin style descent: repeatedly apply the best single move or
/// pair swap that lowers the cut while keeping both sides large enough.
fn improve(weights: &PairWeights, side: &mut [bool], min_side: f64) {
    let n = weights.n;
    loop {
        // gain[v] = cut decrease when v switches sides
        let gain: Vec<isize> = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| u != v)
                    .map(|u| {
                        let w = weights.get(u, v) as isize;
                        if side[u] != side[v] {
                            w
                        } else {
                            -w
                        }
                    })
                    .sum()
            })
            .collect();
        let ones = side.iter().filter(|&&s| s).count();
        let mut best: Option<(isize, usize, Option<usize>)> = None;
        let mut consider = |g: isize, u: usize, v: Option<usize>| {
            if g > 0 && best.is_none_or(|(bg, _, _)| g > bg) {
                best = Some((g, u, v));
            }
        };
        for v in 0..n {
            let new_ones = if side[v] { ones - 1 } else { ones + 1 };
            if side_ok(new_ones, min_side) && side_ok(n - new_ones, min_side) {
                consider(gain[v], v, None);
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                if side[u] != side[v] {
                    consider(
                        gain[u] + gain[v] - 2 * weights.get(u, v) as isize,
                        u,
                        Some(v),
                    );
                }
            }
        }
        match best {
            Some((_, u, v)) => {
                side[u] = !side[u];
                if let Some(v) = v {
                    side[v] = !side[v];
                }
            }
            None => return,
        }
    }
}
