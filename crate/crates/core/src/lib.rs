//! Exact q-deformed Markoff matrices over binary words.
//!
//! Words over `{a, b}` map to 2x2 matrices of Laurent polynomials in `q`
//! through two monoid morphisms, `m_q` and `mu_q`. The crate evaluates them
//! exactly, specializes them at roots of unity, enumerates Christoffel words
//! and Markoff triples, and searches for words whose 12-entries coincide.

pub mod cyclotomic;
pub mod error;
pub mod identities;
pub mod laurent;
pub mod markoff;
pub mod qmatrix;
pub mod search;
pub mod words;

pub use cyclotomic::{
    closed_form_mu_zeta6, cone_of, entry12_zeta6, monoid_closure, recover_counts, residue_relation_check,
    ClosureResult, ConeIndex, CycInt, CycMatrix, Order, ResidueReport, DEFAULT_CLOSURE_CAP,
};
pub use error::{Error, Result};
pub use identities::{
    delta, run_random_suite, verify_identity1_m, verify_identity1_mu, verify_identity2_m, verify_identity2_mu, Family,
    IdentityCheck, Morphism, SuiteBounds, SuiteReport,
};
pub use laurent::LaurentPoly;
pub use markoff::{markoff_numbers, markoff_numbers_up_to, triple_children, MarkoffTriple};
pub use qmatrix::{m_q, mu_q, CharPoly, QMatrix};
pub use search::{
    christoffel_injectivity, classify_pair, collide, CollisionReport, MapKind, PairClass, DEFAULT_SAFETY_BOUND,
};
pub use words::{christoffel_words, stern_brocot_fraction, Alphabet, Fraction, Letter, Word};
