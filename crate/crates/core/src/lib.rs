//! Descent statistics on conjugacy classes of the symmetric group.
//!
//! Every class other than the identity has a member with exactly one descent
//! ([`partition::min_des_representative`]), and every value between one and
//! the class maximum is attained ([`realization::realize`]). The
//! [`oracle`] module checks these facts and the lemmas behind them
//! exhaustively for small degrees.

pub mod enumerate;
pub mod error;
pub mod oracle;
pub mod partition;
pub mod perm;
pub mod realization;
pub mod stats;

pub use error::{Error, Result};
pub use partition::{min_des_representative, partitions_of, young_column_fill, FilledDiagram, Partition};
pub use perm::{AdjacentCase, CaseKind, DescentSet, Permutation};
pub use realization::{
    close_gap, conjugation_path, conjugator, coxeter_word, max_des_element, realize, MaxSearchResult, Realization,
    RealizationTrace, SearchBudget, Step,
};
pub use stats::{eulerian_row, lyndon_count, mobius, EulerianRow};
