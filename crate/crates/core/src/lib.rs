//! Analysis of finitely presented groups with machine-checkable largeness
//! certificates.
//!
//! The toolkit covers free-group words and Nielsen reduction, presentations
//! and Tietze moves, exact integer linear algebra, Laurent polynomials and Fox
//! calculus for Alexander polynomials, Todd–Coxeter coset enumeration with
//! low-index subgroup search and Reidemeister–Schreier rewriting, height-1
//! machinery for two-generator one-relator groups, and free-by-cyclic
//! mapping-torus constructions.

pub mod error;
pub mod word;
pub mod nielsen;
pub mod text;
pub mod presentation;
pub mod intmat;
pub mod intpoly;
pub mod laurent;
pub mod coset;
pub mod lowindex;
pub mod fox;
pub mod verdict;
pub mod perm;
pub mod onerelator;
pub mod pv;
pub mod freebycyclic;
pub mod certify;
pub mod analyze;

pub use error::{Error, Result};
pub use presentation::{Chi, Presentation};
pub use word::Word;
