//! Symbolic dynamics of the first Grigorchuk group.
//!
//! * [`words`], [`group_word`], [`language`]: letters, alternating words, the
//!   palindromes `w_n`, κ and τ, and the language of the subshift they generate.
//! * [`tree`]: the action on vertices of the binary tree.
//! * [`jump`]: the jump action on (circular) starred words and the relator table.
//! * [`gray`]: the Gray-code conjugacy between the two actions and the factor
//!   map from windows onto tree vertices.
//! * [`full_group`]: windows, the topological-full-group mechanics on them and
//!   Schreier graphs.
//! * [`sft`]: one-dimensional subshifts of finite type.
//! * [`verify`]: batch invariant checks.

pub mod error;
pub mod full_group;
pub mod gray;
pub mod group_word;
pub mod jump;
pub mod language;
pub mod sft;
pub mod tree;
pub mod verify;
pub mod window;
pub mod words;

pub use error::{Error, Result};
pub use full_group::Window;
pub use group_word::{Generator, GroupWord};
pub use language::{alpha_choice, build_w, language_contains, language_words};
pub use tree::BitString;
pub use words::{AlternatingWord, CircularStarredWord, Letter, StarredWord};
