//! Edge deletions that keep every color degree at or above a threshold.
//!
//! Both reductions scan edges in lexicographic `(u, v, c)` order. Deleting an
//! edge only lowers per-color degrees and color degrees, so an edge that is not
//! deletable when scanned never becomes deletable later: one forward pass gives
//! the same result as restarting the scan after every deletion.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeColoredGraph, Threshold};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionMode {
    Structural,
    Minimal,
}

impl fmt::Display for ReductionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReductionMode::Structural => "structural",
            ReductionMode::Minimal => "minimal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    /// Deleted edges, in deletion order.
    pub removed_edges: Vec<Edge>,
    pub mode: ReductionMode,
    pub threshold: Threshold,
}

/// Per-vertex bookkeeping of how many edges of each color are still present.
struct ColorCounts {
    per_color: HashMap<(usize, usize), usize>,
    color_degree: Vec<usize>,
}

impl ColorCounts {
    fn new(g: &EdgeColoredGraph) -> Self {
        let mut per_color = HashMap::new();
        for (i, e) in g.edges().iter().enumerate() {
            let c = g.edge_color_index(i);
            *per_color.entry((e.u, c)).or_insert(0) += 1;
            *per_color.entry((e.v, c)).or_insert(0) += 1;
        }
        ColorCounts {
            per_color,
            color_degree: g.color_degrees().to_vec(),
        }
    }

    fn count(&self, v: usize, c: usize) -> usize {
        self.per_color.get(&(v, c)).copied().unwrap_or(0)
    }

    fn remove(&mut self, v: usize, c: usize) {
        let k = self.per_color.get_mut(&(v, c)).expect("edge color counted");
        *k -= 1;
        if *k == 0 {
            self.color_degree[v] -= 1;
        }
    }
}

fn check_threshold(g: &EdgeColoredGraph, t: Threshold) -> Result<()> {
    match g
        .color_degrees()
        .iter()
        .enumerate()
        .find(|(_, &d)| !t.admits(d))
    {
        Some((vertex, &degree)) => Err(Error::ThresholdViolated {
            vertex,
            degree,
            threshold: t,
        }),
        None => Ok(()),
    }
}

/// Removes edges lying in a monochromatic triangle or in the middle of a
/// monochromatic path with three edges, until no such edge remains.
///
/// An edge `ab` of color α is of one of those two kinds exactly when both `a`
/// and `b` have another α-edge, so no color degree changes and every color
/// class of the output is a star forest.
pub fn reduce_structural(
    g: &EdgeColoredGraph,
    t: Threshold,
) -> Result<(EdgeColoredGraph, ReductionReport)> {
    check_threshold(g, t)?;
    let mut counts = ColorCounts::new(g);
    let mut keep = vec![true; g.m()];
    let mut removed = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        let c = g.edge_color_index(i);
        if counts.count(e.u, c) >= 2 && counts.count(e.v, c) >= 2 {
            counts.remove(e.u, c);
            counts.remove(e.v, c);
            keep[i] = false;
            removed.push(*e);
        }
    }
    let out = g.retain_edges(|i, _| keep[i]);
    Ok((
        out,
        ReductionReport {
            removed_edges: removed,
            mode: ReductionMode::Structural,
            threshold: t,
        },
    ))
}

/// Structural reduction followed by greedy deletion of any edge whose removal
/// keeps every color degree at least `t`. The result is edge-minimal.
pub fn reduce_minimal(
    g: &EdgeColoredGraph,
    t: Threshold,
) -> Result<(EdgeColoredGraph, ReductionReport)> {
    let (g, mut report) = reduce_structural(g, t)?;
    let mut counts = ColorCounts::new(&g);
    let mut keep = vec![true; g.m()];
    let survives = |counts: &ColorCounts, v: usize, c: usize| {
        counts.count(v, c) >= 2 || t.admits(counts.color_degree[v] - 1)
    };
    for (i, e) in g.edges().iter().enumerate() {
        let c = g.edge_color_index(i);
        if survives(&counts, e.u, c) && survives(&counts, e.v, c) {
            counts.remove(e.u, c);
            counts.remove(e.v, c);
            keep[i] = false;
            report.removed_edges.push(*e);
        }
    }
    report.mode = ReductionMode::Minimal;
    Ok((g.retain_edges(|i, _| keep[i]), report))
}

pub fn reduce(
    g: &EdgeColoredGraph,
    t: Threshold,
    mode: ReductionMode,
) -> Result<(EdgeColoredGraph, ReductionReport)> {
    match mode {
        ReductionMode::Structural => reduce_structural(g, t),
        ReductionMode::Minimal => reduce_minimal(g, t),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Color;

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
    fn triangle_loses_one_edge() {
        let g = graph(3, &[(0, 1, 0), (1, 2, 0), (0, 2, 0)]);
        let (out, report) = reduce_structural(&g, Threshold::integer(1)).unwrap();
        assert_eq!(report.removed_edges.len(), 1);
        assert_eq!(
            (report.removed_edges[0].u, report.removed_edges[0].v),
            (0, 1)
        );
        assert!(out.color_class(Color(0)).unwrap().is_star_forest());
        assert_eq!(out.color_degrees(), g.color_degrees());
    }

    #[test]
    fn p4_loses_middle_edge() {
        let g = graph(4, &[(0, 1, 7), (1, 2, 7), (2, 3, 7)]);
        let (out, report) = reduce_structural(&g, Threshold::integer(1)).unwrap();
        assert_eq!(
            report.removed_edges,
            vec![Edge {
                u: 1,
                v: 2,
                color: Color(7)
            }]
        );
        assert_eq!(out.m(), 2);
    }

    #[test]
    fn star_forests_are_a_fixpoint() {
        let g = rainbow_k4();
        let (out, report) = reduce_structural(&g, Threshold::integer(3)).unwrap();
        assert!(report.removed_edges.is_empty());
        assert_eq!(out, g);
    }

    #[test]
    fn rainbow_k4_is_minimal_at_three() {
        let (out, report) = reduce_minimal(&rainbow_k4(), Threshold::integer(3)).unwrap();
        assert!(report.removed_edges.is_empty());
        assert_eq!(out.m(), 6);
    }

    #[test]
    fn slack_allows_deletion() {
        let (out, report) = reduce_minimal(&rainbow_k4(), Threshold::integer(1)).unwrap();
        assert!(!report.removed_edges.is_empty());
        assert!(out.min_color_degree().unwrap() >= 1);
        assert_eq!(report.mode, ReductionMode::Minimal);
    }

    #[test]
    fn threshold_violation_is_reported() {
        let err = reduce_minimal(&rainbow_k4(), "7/2".parse().unwrap()).unwrap_err();
        assert!(matches!(
            err,
            Error::ThresholdViolated {
                vertex: 0,
                degree: 3,
                ..
            }
        ));
    }
}
