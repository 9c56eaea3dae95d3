//! Rainbow and properly-colored path search, and connectivity checks built
//! on top of it.

mod color_coding;
mod connectivity;
mod exact;
mod proper;

pub use color_coding::{color_coding_trials, find_rainbow_path_cc};
pub use connectivity::{
    exhaustive_k_connect, is_properly_connected, is_rainbow_connected, proper_connectivity_witness,
    rainbow_k_connect, Engine, RainbowConnectivity,
};
pub use exact::{find_rainbow_path_exact, RainbowQuery, SearchOutcome};
pub use proper::{find_proper_path, find_proper_path_capped};

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoredGraph};

/// Default path-length bound for rainbow searches.
pub const DEFAULT_MAX_LEN: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Rainbow,
    Proper,
}

/// A path `v_0 .. v_ℓ` with the colors of its ℓ edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathCertificate {
    pub vertices: Vec<usize>,
    pub colors: Vec<Color>,
    pub flavor: Flavor,
}

impl PathCertificate {
    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn internal_vertices(&self) -> &[usize] {
        let k = self.vertices.len();
        if k <= 2 {
            &[]
        } else {
            &self.vertices[1..k - 1]
        }
    }

    /// Checks the certificate against `g` from scratch: distinct vertices,
    /// every consecutive pair an edge of the stated color, and the color
    /// condition of its flavor.
    pub fn validate(&self, g: &EdgeColoredGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCertificate(msg));
        if self.vertices.len() != self.colors.len() + 1 || self.colors.is_empty() {
            return bad(format!(
                "{} vertices for {} colors",
                self.vertices.len(),
                self.colors.len()
            ));
        }
        let mut seen = vec![false; g.n()];
        for &x in &self.vertices {
            if x >= g.n() {
                return bad(format!("vertex {x} out of range"));
            }
            if std::mem::replace(&mut seen[x], true) {
                return bad(format!("vertex {x} repeated"));
            }
        }
        for (i, w) in self.vertices.windows(2).enumerate() {
            match g.edge_between(w[0], w[1]) {
                Some(e) if g.edge(e).color == self.colors[i] => {}
                Some(e) => {
                    return bad(format!(
                        "edge {{{},{}}} has color {}, certificate says {}",
                        w[0],
                        w[1],
                        g.edge(e).color,
                        self.colors[i]
                    ))
                }
                None => return bad(format!("no edge {{{},{}}}", w[0], w[1])),
            }
        }
        match self.flavor {
            Flavor::Rainbow => {
                let mut cs = self.colors.clone();
                cs.sort_unstable();
                if cs.windows(2).any(|w| w[0] == w[1]) {
                    return bad("repeated color on rainbow path".into());
                }
            }
            Flavor::Proper => {
                if self.colors.windows(2).any(|w| w[0] == w[1]) {
                    return bad("consecutive equal colors on proper path".into());
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for PathCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices[0])?;
        for (c, v) in self.colors.iter().zip(&self.vertices[1..]) {
            write!(f, " -{c}-> {v}")?;
        }
        Ok(())
    }
}

/// `k` internally disjoint `u,v`-paths whose union is rainbow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KConnectCertificate {
    pub u: usize,
    pub v: usize,
    pub paths: Vec<PathCertificate>,
}

impl KConnectCertificate {
    pub fn validate(&self, g: &EdgeColoredGraph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCertificate(msg));
        let mut internal = vec![false; g.n()];
        let mut colors: Vec<Color> = Vec::new();
        for p in &self.paths {
            p.validate(g)?;
            if p.flavor != Flavor::Rainbow {
                return bad("k-connection paths must be rainbow".into());
            }
            if (p.first(), p.last()) != (self.u, self.v) {
                return bad(format!("path {p} does not join {} and {}", self.u, self.v));
            }
            for &x in p.internal_vertices() {
                if std::mem::replace(&mut internal[x], true) {
                    return bad(format!("internal vertex {x} shared between paths"));
                }
            }
            colors.extend_from_slice(&p.colors);
        }
        colors.sort_unstable();
        if colors.windows(2).any(|w| w[0] == w[1]) {
            return bad("union of paths is not rainbow".into());
        }
        Ok(())
    }
}

pub(crate) fn check_endpoints(g: &EdgeColoredGraph, u: usize, v: usize) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::SameEndpoints(u));
    }
    Ok(())
}

/// Unweighted BFS distances to `target` over the edges passing `allowed`
/// and vertices not `blocked`; `usize::MAX` when unreachable.
pub(crate) fn distances_to(
    g: &EdgeColoredGraph,
    target: usize,
    blocked: &[bool],
    mut allowed: impl FnMut(usize) -> bool,
) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[target] = 0;
    let mut queue = std::collections::VecDeque::from([target]);
    while let Some(x) = queue.pop_front() {
        for &(w, e) in g.neighbors(x) {
            if dist[w] == usize::MAX && !blocked[w] && allowed(e) {
                dist[w] = dist[x] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}
