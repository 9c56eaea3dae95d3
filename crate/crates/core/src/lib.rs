//! Edge-colored graphs under color-degree conditions: edge-minimal reduction,
//! auxiliary digraphs, rainbow and properly-colored path search, rainbow
//! k-connections, extremal instance generators and rainbow spanning trees.

pub mod auxiliary;
pub mod error;
pub mod experiment;
pub mod format;
pub mod generators;
pub mod graph;
pub mod reduction;
pub mod search;
pub mod spanning_tree;

pub use error::{Error, ParseError, Result};
pub use format::{parse_graph, read_graph_file, write_graph};
pub use graph::{is_star_forest, Color, ColorClassView, Edge, EdgeColoredGraph, Threshold};
pub use reduction::{reduce, reduce_minimal, reduce_structural, ReductionMode, ReductionReport};
pub use search::{Engine, PathCertificate, RainbowQuery, SearchOutcome, DEFAULT_MAX_LEN};
