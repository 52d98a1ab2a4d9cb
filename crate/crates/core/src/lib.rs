//! Conjugacy in closed orientable surface groups of genus at least two.

pub mod conjugacy;
pub mod cyclic;
pub mod error;
pub mod llfr;
pub mod oracle;
pub mod presentation;
pub mod rewrite;
pub mod sampling;
pub mod selfcheck;
pub mod survey;

pub use conjugacy::{
    abelianization, conjugator_bound, lower_bound_witness, parity_check, ConjugacyCertificate,
    ReductionTelemetry,
};
pub use cyclic::{align_rotation, rotations, CyclicReductionResult};
pub use error::{Error, Result};
pub use llfr::{ConjugationForm, Elimination, EliminationCase, Llfr, PreparedForm};
pub use oracle::{dehn_equal, exact_cl, ClOutcome};
pub use presentation::{
    compare_lenlex, format_word, letter_rank, parse_word, relator_cyclic_words, Genus, Letter,
    RelatorFamily, RelatorId, SurfaceGroup, Word, WordStyle,
};
pub use rewrite::{RewriteRule, RewriteStep, RuleKind, Trace};
