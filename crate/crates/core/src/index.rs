//! The complete index: input trie, pCST and position heap.

use crate::error::Result;
use crate::heap::{BuildStats, Heap};
use crate::matcher::{self, MatchResult};
use crate::pcst::Pcst;
use crate::pstring::{Alphabet, PString};
use crate::trie::InputTrie;

/// Which heap construction to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Builder {
    /// Construction through reversed suffix links.
    #[default]
    Fast,
    /// Construction straight from the definition.
    Naive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Index {
    pub(crate) trie: InputTrie,
    pub(crate) pcst: Pcst,
    pub(crate) heap: Heap,
}

impl Index {
    /// Builds the pCST and the heap over `trie`. Operation counters are
    /// returned for the fast builder.
    pub fn build(trie: InputTrie, builder: Builder) -> Result<(Index, Option<BuildStats>)> {
        let pcst = Pcst::build(&trie);
        let pi = trie.alphabet().pi_len();
        let (heap, stats) = match builder {
            Builder::Fast => {
                let (heap, stats) = Heap::build_fast(&pcst, pi)?;
                (heap, Some(stats))
            }
            Builder::Naive => (Heap::build_naive(&pcst, pi)?, None),
        };
        Ok((Index { trie, pcst, heap }, stats))
    }

    /// Convenience wrapper: the index of a set of strings, fast builder.
    pub fn from_strings(alphabet: Alphabet, strings: &[PString]) -> Result<Index> {
        let trie = InputTrie::from_strings(alphabet, strings)?;
        Ok(Index::build(trie, Builder::Fast)?.0)
    }

    pub fn trie(&self) -> &InputTrie {
        &self.trie
    }

    pub fn pcst(&self) -> &Pcst {
        &self.pcst
    }

    pub fn heap(&self) -> &Heap {
        &self.heap
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.trie.alphabet()
    }

    /// Reports every input-trie node whose string starts with a p-match of
    /// `pattern`. See [`matcher::query`].
    pub fn query(&self, pattern: &[crate::pstring::Symbol], expand: bool) -> Result<MatchResult> {
        matcher::query(self, pattern, expand)
    }

    /// Parses `pattern` with the index alphabet, then queries.
    pub fn query_str(&self, pattern: &str, expand: bool) -> Result<MatchResult> {
        let p = self.alphabet().parse(pattern)?;
        self.query(&p, expand)
    }
}
