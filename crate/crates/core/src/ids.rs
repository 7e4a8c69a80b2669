use std::fmt;

macro_rules! node_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(u32);

        impl $name {
            pub const ROOT: $name = $name(1);

            /// Wraps a 1-based id.
            pub fn new(id: u32) -> Self {
                debug_assert!(id >= 1);
                $name(id)
            }

            pub fn get(self) -> u32 {
                self.0
            }

            pub(crate) fn from_index(index: usize) -> Self {
                $name(index as u32 + 1)
            }

            #[allow(dead_code)]
            pub(crate) fn index(self) -> usize {
                self.0 as usize - 1
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }
    };
}

node_id!(
    /// Node of the input trie; the root is 1.
    TrieNodeId
);
node_id!(
    /// Node of the parameterized common-suffix trie, numbered in BFS order.
    PcstNodeId
);
node_id!(
    /// Node of the position heap. Node `i` was inserted for pCST node `i`.
    HeapNodeId
);
node_id!(
    /// An input string, numbered from 1 in input order.
    StringId
);

impl From<PcstNodeId> for HeapNodeId {
    fn from(id: PcstNodeId) -> Self {
        HeapNodeId(id.0)
    }
}

impl From<HeapNodeId> for PcstNodeId {
    fn from(id: HeapNodeId) -> Self {
        PcstNodeId(id.0)
    }
}
