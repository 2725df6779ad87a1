//! Morphic primitivity of finite words.
//!
//! A word `w` is morphically imprimitive when some morphism other than the
//! identity satisfies `f(w) = w`. [`run`] decides this for a word of length
//! `n` in `O(|E| n)` time, where `E` is the set of letters the returned
//! morphism does not erase, and the returned morphism is idempotent with the
//! smallest possible `E`. [`oracle`] holds an exhaustive reference search
//! used to cross-check results on small words.
//!
//! ```
//! use morphic_core::{run, verify, Word};
//!
//! let w = Word::from_chars("abaaba");
//! let res = run(&w);
//! assert!(!res.primitive);
//! assert_eq!(res.morphism.render(&w), "a↦ε, b↦aba");
//! assert!(verify(&w, &res.morphism));
//! ```

pub mod factorizer;
pub mod forest;
pub mod gen;
pub mod morphism;
pub mod oracle;
pub mod trace;
pub mod word;

pub use factorizer::{run, Counters, Engine, FactorizationResult, RoundRecord};
pub use forest::{Side, SyncForest};
pub use morphism::{left_right_cut_check, verify, Morphism};
pub use oracle::{all_words, Oracle, OracleVerdict};
pub use trace::TraceDocument;
pub use word::{alpha_naive, neighborhood, Letter, Neighborhood, PosIndex, Surface, Word};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("letter {0} does not occur in the word")]
    UnknownLetter(u32),
    #[error("letter {0} is already expanding")]
    AlreadyExpanding(u32),
    #[error("letter {0} is not expanding")]
    NotExpanding(u32),
    #[error("cut {cut} outside 0..={len}")]
    CutOutOfRange { cut: usize, len: usize },
    #[error("no positions between cuts {i} and {j}")]
    EmptyInterval { i: usize, j: usize },
    #[error("expanding set must be nonempty")]
    EmptyExpandingSet,
    #[error("word of length {len} exceeds the oracle limit of {limit}")]
    TooLarge { len: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
