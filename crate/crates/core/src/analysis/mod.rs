//! Simplicity, the scalar-ring theorem and the worked examples.

mod worked;
mod simple;
mod theorem;

pub use worked::{
    d8xc2_example_cover, q8_example_cover, q8xc2_example_covers, verify_paper_examples, CheckStatus, ExampleCheck,
    ExampleReport,
};
pub use simple::{
    classify_decomposition, cover_simplicity, is_simple, Classification, IdealWitness, SimplicityMethod,
    SimplicityReport, PRINCIPAL_IDEAL_LIMIT,
};
pub use theorem::{
    converse_scalar_theorem, converse_witness, forward_cover_cells, forward_scalar_theorem, ConverseEvidence,
    CoverOutcome, Direction, ForwardEvidence, ScalarTheoremReport,
};
