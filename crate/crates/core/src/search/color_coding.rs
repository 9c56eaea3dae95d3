//! Randomized color-coding search for rainbow paths.
//!
//! Each trial maps every edge color to one of ℓ labels and runs a DP over
//! (label subset, vertex) for walks from `u` whose edge labels are pairwise
//! distinct. Distinct labels imply distinct colors, so such a walk is rainbow;
//! erasing its loops leaves a rainbow path no longer than the walk. A path of
//! length `k ≤ ℓ` survives a trial with probability at least `ℓ!/ℓ^ℓ`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_endpoints, Flavor, PathCertificate};
use crate::error::{Error, Result};
use crate::graph::EdgeColoredGraph;

const NONE: u32 = u32::MAX;
const START: u32 = u32::MAX - 1;
const DENSE_LIMIT: usize = 1 << 24;

/// `⌈e^ℓ · ln 100⌉`: enough trials to find a fixed path of length ℓ with
/// probability at least 99%.
pub fn color_coding_trials(len: usize) -> usize {
    ((len as f64).exp() * 100f64.ln()).ceil() as usize
}

/// One-sided: a returned certificate is always a valid rainbow path of
/// length at most `max_len`; `None` may be a miss. Deterministic in `seed`.
pub fn find_rainbow_path_cc(
    g: &EdgeColoredGraph,
    u: usize,
    v: usize,
    max_len: usize,
    trials: usize,
    seed: u64,
) -> Result<Option<PathCertificate>> {
    check_endpoints(g, u, v)?;
    if max_len == 0 || trials == 0 {
        return Err(Error::InvalidParameter(
            "max_len and trials must be at least 1".into(),
        ));
    }
    let labels = max_len.min(g.num_colors()).min(g.n() - 1);
    if labels == 0 {
        return Ok(None);
    }
    if labels > 20 {
        return Err(Error::InvalidParameter(format!(
            "color coding supports at most 20 labels, got {labels}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut label = vec![0usize; g.num_colors()];
    let mut table = Table::new(g.n(), labels);
    for _ in 0..trials {
        for l in label.iter_mut() {
            *l = rng.gen_range(0..labels);
        }
        if let Some(path) = table.trial(g, u, v, &label) {
            if path.validate(g).is_ok() {
                return Ok(Some(path));
            }
        }
    }
    Ok(None)
}

struct Table {
    n: usize,
    labels: usize,
    /// parent edge of (subset, vertex), or NONE / START
    parent: Parents,
}

/// Dense table for small state spaces, hash map otherwise; either way only
/// touched entries are reset between trials.
enum Parents {
    Dense {
        slots: Vec<u32>,
        touched: Vec<usize>,
    },
    Sparse(HashMap<usize, u32>),
}

impl Parents {
    fn new(states: usize) -> Self {
        if states <= DENSE_LIMIT {
            Parents::Dense {
                slots: vec![NONE; states],
                touched: Vec::new(),
            }
        } else {
            Parents::Sparse(HashMap::new())
        }
    }

    fn get(&self, idx: usize) -> u32 {
        match self {
            Parents::Dense { slots, .. } => slots[idx],
            Parents::Sparse(map) => map.get(&idx).copied().unwrap_or(NONE),
        }
    }

    /// Sets the entry if unset; reports whether it was.
    fn claim(&mut self, idx: usize, value: u32) -> bool {
        match self {
            Parents::Dense { slots, touched } => {
                if slots[idx] != NONE {
                    return false;
                }
                slots[idx] = value;
                touched.push(idx);
                true
            }
            Parents::Sparse(map) => match map.entry(idx) {
                Entry::Occupied(_) => false,
                Entry::Vacant(slot) => {
                    slot.insert(value);
                    true
                }
            },
        }
    }

    fn clear(&mut self) {
        match self {
            Parents::Dense { slots, touched } => {
                for idx in touched.drain(..) {
                    slots[idx] = NONE;
                }
            }
            Parents::Sparse(map) => map.clear(),
        }
    }
}

impl Table {
    fn new(n: usize, labels: usize) -> Self {
        Table {
            n,
            labels,
            parent: Parents::new(n << labels),
        }
    }

    /// Label-distinct walks from `u`, grown one edge per layer. Each layer is
    /// expanded in (subset, vertex) order and the first subset reaching `v`
    /// is kept, which picks the smallest subset among the fewest labels.
    fn trial(
        &mut self,
        g: &EdgeColoredGraph,
        u: usize,
        v: usize,
        label: &[usize],
    ) -> Option<PathCertificate> {
        let n = self.n;
        self.parent.clear();
        self.parent.claim(u, START);
        let mut layer = vec![(0usize, u)];
        for _ in 0..self.labels {
            let mut next = Vec::new();
            for &(set, x) in &layer {
                for &(w, e) in g.neighbors(x) {
                    let bit = 1 << label[g.edge_color_index(e)];
                    if set & bit != 0 || w == u {
                        continue;
                    }
                    if self.parent.claim((set | bit) * n + w, e as u32) {
                        next.push((set | bit, w));
                    }
                }
            }
            next.sort_unstable();
            if let Some(&(set, _)) = next.iter().find(|s| s.1 == v) {
                return Some(self.walk_to_path(g, set, v, label));
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        None
    }

    fn walk_to_path(
        &self,
        g: &EdgeColoredGraph,
        mut set: usize,
        v: usize,
        label: &[usize],
    ) -> PathCertificate {
        let n = self.n;
        let mut walk = vec![v];
        let mut walk_edges = Vec::new();
        let mut x = v;
        loop {
            let e = self.parent.get(set * n + x);
            if e == START {
                break;
            }
            let e = e as usize;
            walk_edges.push(e);
            set &= !(1 << label[g.edge_color_index(e)]);
            x = g.edge(e).other(x);
            walk.push(x);
        }
        walk.reverse();
        walk_edges.reverse();
        // loop erasure
        let mut pos = vec![usize::MAX; n];
        let mut vertices: Vec<usize> = Vec::new();
        let mut edges: Vec<usize> = Vec::new();
        for (i, &x) in walk.iter().enumerate() {
            if pos[x] != usize::MAX {
                let keep = pos[x] + 1;
                for &y in &vertices[keep..] {
                    pos[y] = usize::MAX;
                }
                vertices.truncate(keep);
                edges.truncate(keep - 1);
            } else {
                pos[x] = vertices.len();
                vertices.push(x);
                if i > 0 {
                    edges.push(walk_edges[i - 1]);
                }
            }
        }
        PathCertificate {
            vertices,
            colors: edges.iter().map(|&e| g.edge(e).color).collect(),
            flavor: Flavor::Rainbow,
        }
    }
}
