//! Parameterized pattern matching over a set of strings.
//!
//! Strings mix static symbols, which must match exactly, with parameter
//! symbols, which match under any consistent one-to-one renaming. The index
//! is built in three layers:
//!
//! 1. [`InputTrie`], the common-suffix trie of the input strings;
//! 2. [`Pcst`], the same trie with nodes merged when their strings p-match;
//! 3. [`Heap`], the parameterized position heap over the merged nodes, with
//!    reversed suffix links and maximal reach pointers.
//!
//! [`Index`] ties them together and answers queries.
//!
//! ```
//! use pph::{Alphabet, Index};
//!
//! let alphabet = Alphabet::new("a", "xyz")?;
//! let strings: Vec<_> = ["xaxxx", "yaxx", "zaxx", "zyx", "yyy", "yayy", "xayy", "xzy", "yayxz", "xaxz"]
//!     .iter()
//!     .map(|w| alphabet.parse(w))
//!     .collect::<Result<_, _>>()?;
//! let index = Index::from_strings(alphabet, &strings)?;
//! assert_eq!(index.pcst().len(), 15);
//!
//! // `azy` occurs wherever a string reads a, then two distinct parameters.
//! let hits = index.query_str("azy", true)?;
//! assert_eq!(hits.pocc(), 2);
//! let expanded: Vec<_> = hits.expanded.unwrap().iter().map(|(s, off)| (s.get(), *off)).collect();
//! assert_eq!(expanded, [(10, 2), (9, 2)]);
//! # Ok::<(), pph::Error>(())
//! ```

pub mod dot;
pub mod error;
pub mod fixtures;
pub mod heap;
pub mod ids;
pub mod index;
pub mod invariants;
pub mod io;
pub mod matcher;
pub mod oracle;
pub mod pcst;
pub mod pstring;
pub mod stats;
pub mod trie;

pub use dot::{export_dot, DotTarget};
pub use error::{Error, Result};
pub use heap::{BuildStats, Heap, HeapNode, LinkKey};
pub use ids::{HeapNodeId, PcstNodeId, StringId, TrieNodeId};
pub use index::{Builder, Index};
pub use matcher::{MatchResult, Pattern};
pub use pcst::{Pcst, PcstNode};
pub use pstring::{canonicalize, p_match, prepend_shift, Alphabet, NameAssignment, PString, ShiftMode, Symbol};
pub use stats::Stats;
pub use trie::{InputTrie, TrieNode};
