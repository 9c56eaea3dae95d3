//! Auxiliary digraphs derived from an edge coloring.
//!
//! For a color α and vertex v, write `d_α(v)` for the number of α-edges at v.
//! `D_G` has one arc `v -> w` (with `w` an α-neighbor of v) for every pair
//! (α, v) with `1 <= d_α(v)` and `d_α(v)^2 <= n`; `D'` additionally covers the
//! pairs with `d_α(v)^2 > n`, preferring heads in a given vertex set `U`.
//! The neighbor chosen is always the smallest eligible vertex id.

mod dominant;
mod extremal;

pub use dominant::{dominant_analysis, DominantColorTable};
pub use extremal::{
    classify_extremal, classify_extremal_with, ClassifyOptions, ExtremalReport, Type1Witness,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoredGraph};

/// Default extremality parameter for diagnostics.
pub const DEFAULT_BETA: f64 = 0.01;
/// Default W′ in-neighbor fraction for diagnostics.
pub const DEFAULT_GAMMA: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AuxKind {
    DG,
    DStar,
    DPrime,
}

impl fmt::Display for AuxKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuxKind::DG => "D_G",
            AuxKind::DStar => "D*",
            AuxKind::DPrime => "D'",
        })
    }
}

/// A colored arc `from -> to`; the color is that of the underlying edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxDigraph {
    n: usize,
    kind: AuxKind,
    /// sorted by (from, to)
    arcs: Vec<Arc>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl AuxDigraph {
    /// Builds a digraph from arbitrary arcs, rejecting self-arcs, repeated
    /// arcs and out-of-range endpoints.
    pub fn new(n: usize, kind: AuxKind, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        for a in &arcs {
            for x in [a.from, a.to] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a.from == a.to {
                return Err(Error::SelfLoop(a.from));
            }
        }
        arcs.sort();
        if let Some(w) = arcs
            .windows(2)
            .find(|w| (w[0].from, w[0].to) == (w[1].from, w[1].to))
        {
            return Err(Error::DuplicateEdge(w[0].from, w[0].to));
        }
        Ok(Self::from_sorted(n, kind, arcs))
    }

    fn from_sorted(n: usize, kind: AuxKind, arcs: Vec<Arc>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (i, a) in arcs.iter().enumerate() {
            out_adj[a.from].push(i);
            in_adj[a.to].push(i);
        }
        AuxDigraph {
            n,
            kind,
            arcs,
            out_adj,
            in_adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> AuxKind {
        self.kind
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = &Arc> + '_ {
        self.out_adj[v].iter().map(|&i| &self.arcs[i])
    }

    pub fn in_arcs(&self, v: usize) -> impl Iterator<Item = &Arc> + '_ {
        self.in_adj[v].iter().map(|&i| &self.arcs[i])
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// δ⁺; zero for the empty vertex set.
    pub fn min_out_degree(&self) -> usize {
        (0..self.n).map(|v| self.out_degree(v)).min().unwrap_or(0)
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.arcs
            .binary_search_by_key(&(from, to), |a| (a.from, a.to))
            .is_ok()
    }

    /// True when no two arcs leaving the same vertex share a color.
    pub fn out_colors_distinct(&self) -> bool {
        (0..self.n).all(|v| {
            let mut colors: Vec<Color> = self.out_arcs(v).map(|a| a.color).collect();
            colors.sort_unstable();
            colors.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// True when the arc set never contains both `uv` and `vu`.
    pub fn is_oriented(&self) -> bool {
        self.arcs.iter().all(|a| !self.has_arc(a.to, a.from))
    }
}

/// The graph of reciprocated arcs of a `D_G` or `D'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutualGraph {
    pub n: usize,
    /// `(u, v, color)` with `u < v`, sorted
    pub edges: Vec<(usize, usize, Color)>,
}

impl MutualGraph {
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// No two edges sharing an endpoint have the same color.
    pub fn is_properly_colored(&self) -> bool {
        let mut at: Vec<Vec<Color>> = vec![Vec::new(); self.n];
        for &(u, v, c) in &self.edges {
            at[u].push(c);
            at[v].push(c);
        }
        at.iter_mut().all(|cs| {
            cs.sort_unstable();
            cs.windows(2).all(|w| w[0] != w[1])
        })
    }
}

/// For one vertex: per color, the number of incident edges, the smallest
/// neighbor, and the smallest neighbor inside the preferred set.
struct ColorSlot {
    color: Color,
    degree: usize,
    first: usize,
    first_preferred: Option<usize>,
}

fn color_slots(g: &EdgeColoredGraph, v: usize, preferred: Option<&[bool]>) -> Vec<ColorSlot> {
    let mut slots: BTreeMap<usize, ColorSlot> = BTreeMap::new();
    for &(w, e) in g.neighbors(v) {
        let in_pref = preferred.is_some_and(|p| p[w]);
        let slot = slots.entry(g.edge_color_index(e)).or_insert(ColorSlot {
            color: g.edge(e).color,
            degree: 0,
            first: w,
            first_preferred: None,
        });
        slot.degree += 1;
        if in_pref && slot.first_preferred.is_none() {
            slot.first_preferred = Some(w);
        }
    }
    slots.into_values().collect()
}

fn within_sqrt(d: usize, n: usize) -> bool {
    d * d <= n
}

fn build_arcs(g: &EdgeColoredGraph, preferred: Option<&[bool]>) -> Vec<Arc> {
    let n = g.n();
    let mut arcs = Vec::new();
    for v in 0..n {
        let mut from_v: Vec<Arc> = color_slots(g, v, preferred)
            .into_iter()
            .filter_map(|s| {
                let to = if within_sqrt(s.degree, n) {
                    s.first
                } else {
                    preferred?;
                    s.first_preferred.unwrap_or(s.first)
                };
                Some(Arc {
                    from: v,
                    to,
                    color: s.color,
                })
            })
            .collect();
        from_v.sort();
        arcs.extend(from_v);
    }
    arcs
}

/// `D_G`: one arc per (color, vertex) pair whose color degree `d` satisfies
/// `1 <= d` and `d^2 <= n`.
pub fn build_dg(g: &EdgeColoredGraph) -> AuxDigraph {
    AuxDigraph::from_sorted(g.n(), AuxKind::DG, build_arcs(g, None))
}

/// `D'`: `D_G` plus one arc for every (color, vertex) pair with `d^2 > n`,
/// whose head is taken from `u_set` when the color class allows it. The out
/// degree of every vertex equals its color degree.
pub fn build_dprime(g: &EdgeColoredGraph, u_set: &[usize]) -> Result<AuxDigraph> {
    let mut preferred = vec![false; g.n()];
    for &u in u_set {
        g.check_vertex(u)?;
        preferred[u] = true;
    }
    Ok(AuxDigraph::from_sorted(
        g.n(),
        AuxKind::DPrime,
        build_arcs(g, Some(&preferred)),
    ))
}

/// `G*`: pairs joined by arcs in both directions.
pub fn build_gstar(d: &AuxDigraph) -> Result<MutualGraph> {
    if d.kind == AuxKind::DStar {
        return Err(Error::InvalidParameter(
            "G* is defined for D_G or D' only".into(),
        ));
    }
    let edges = d
        .arcs
        .iter()
        .filter(|a| a.from < a.to && d.has_arc(a.to, a.from))
        .map(|a| (a.from, a.to, a.color))
        .collect();
    Ok(MutualGraph { n: d.n, edges })
}

/// `D*`: the arcs of `D_G` that are not reciprocated.
pub fn build_dstar(d: &AuxDigraph) -> Result<AuxDigraph> {
    if d.kind != AuxKind::DG {
        return Err(Error::InvalidParameter("D* is built from D_G only".into()));
    }
    let arcs = d
        .arcs
        .iter()
        .filter(|a| !d.has_arc(a.to, a.from))
        .copied()
        .collect();
    Ok(AuxDigraph::from_sorted(d.n, AuxKind::DStar, arcs))
}
