use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a p-group: {0}")]
    NotAPGroup(String),
    #[error("{path}:{line}:{column}: {message}")]
    BadFile {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bad spec: {0}")]
    BadSpec(String),
    #[error("size limit exceeded: {what} (estimate {estimate}, budget {budget})")]
    SizeLimit {
        what: String,
        estimate: u128,
        budget: u128,
    },
    #[error("not a cover: element {uncovered} lies in no cell")]
    NotACover { uncovered: usize },
    #[error("cell {cell} is not abelian")]
    NonAbelianCell { cell: usize },
    #[error("cell {cell} duplicates cell {other}")]
    DuplicateCell { cell: usize, other: usize },
    #[error("cell {cell} is not a subgroup: {reason}")]
    NotASubgroup { cell: usize, reason: String },
    #[error("cover is not a (*)-cover: {0}")]
    NotStarCover(String),
    #[error("inconsistent frame: {0}")]
    InconsistentFrame(String),
    #[error("parametrization conflict at element {element}: {detail}")]
    ParamConflict { element: usize, detail: String },
    #[error("functions belong to different groups (lengths {left} and {right})")]
    DomainMismatch { left: usize, right: usize },
    #[error("function is not in R_C(G): {0}")]
    NotInRing(String),
    #[error("vertex is not an order-p subgroup of the graph")]
    UnknownVertex,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
