//! The parameterized common-suffix trie (pCST).
//!
//! Input nodes whose strings p-match are merged. Each merged node stands for
//! the *right-canonical* form of its strings: reverse, canonicalize, reverse
//! back, so parameters are named by first occurrence counted from the root
//! end. Reading a string from the root end is exactly the order in which a
//! BFS over the input trie extends it, which makes the quotient computable
//! in one pass with a streaming name assignment per input node.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::ids::{HeapNodeId, PcstNodeId, TrieNodeId};
use crate::pstring::{PString, Symbol};
use crate::trie::InputTrie;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcstNode {
    pub(crate) parent: Option<PcstNodeId>,
    pub(crate) label: Option<Symbol>,
    pub(crate) depth: u32,
    pub(crate) children: Vec<(Symbol, PcstNodeId)>,
    pub(crate) origins: Vec<TrieNodeId>,
}

impl PcstNode {
    pub fn parent(&self) -> Option<PcstNodeId> {
        self.parent
    }

    pub fn label(&self) -> Option<Symbol> {
        self.label
    }

    pub fn depth(&self) -> usize {
        self.depth as usize
    }

    pub fn children(&self) -> &[(Symbol, PcstNodeId)] {
        &self.children
    }

    /// Input-trie nodes merged into this node, ascending.
    pub fn origins(&self) -> &[TrieNodeId] {
        &self.origins
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pcst {
    nodes: Vec<PcstNode>,
    /// pCST node of every input-trie node, by trie index.
    class_of: Vec<PcstNodeId>,
}

/// One link of a persistent right-assignment chain.
struct ChainEntry {
    source: Symbol,
    rank: u16,
    prev: Option<u32>,
}

impl Pcst {
    /// Builds the quotient of `trie` in one pass over its nodes.
    pub fn build(trie: &InputTrie) -> Pcst {
        // Right-assignments are stored as chains: a node adds at most one
        // entry (its label, if it is a parameter new on the path to the
        // root) on top of its parent's chain.
        let mut entries: Vec<ChainEntry> = Vec::new();
        let mut chain_of: Vec<Option<u32>> = vec![None; trie.len()];

        // Scratch pCST in creation order, renumbered in BFS order below.
        let mut parent: Vec<usize> = vec![usize::MAX];
        let mut label: Vec<Option<Symbol>> = vec![None];
        let mut children: Vec<Vec<(Symbol, usize)>> = vec![Vec::new()];
        let mut class_of: Vec<usize> = vec![0; trie.len()];

        for u in trie.ids().skip(1) {
            let node = trie.get(u);
            let p = node.parent.expect("non-root node has a parent");
            let a = node.label.expect("non-root node has a label");
            let parent_chain = chain_of[p.index()];
            let (name, chain) = match a {
                Symbol::Static(_) => (a, parent_chain),
                Symbol::Param(_) => {
                    let mut cur = parent_chain;
                    let mut found = None;
                    while let Some(k) = cur {
                        let e = &entries[k as usize];
                        if e.source == a {
                            found = Some(e.rank);
                            break;
                        }
                        cur = e.prev;
                    }
                    match found {
                        Some(rank) => (Symbol::Param(rank), parent_chain),
                        None => {
                            let rank = parent_chain.map_or(0, |k| entries[k as usize].rank) + 1;
                            entries.push(ChainEntry { source: a, rank, prev: parent_chain });
                            (Symbol::Param(rank), Some(entries.len() as u32 - 1))
                        }
                    }
                }
            };
            chain_of[u.index()] = chain;

            let pc = class_of[p.index()];
            let target = match children[pc].binary_search_by_key(&name, |&(s, _)| s) {
                Ok(k) => children[pc][k].1,
                Err(k) => {
                    let fresh = parent.len();
                    parent.push(pc);
                    label.push(Some(name));
                    children.push(Vec::new());
                    children[pc].insert(k, (name, fresh));
                    fresh
                }
            };
            class_of[u.index()] = target;
        }

        let mut new_id = vec![PcstNodeId::ROOT; parent.len()];
        let mut nodes: Vec<PcstNode> = Vec::with_capacity(parent.len());
        let mut queue = VecDeque::from([0usize]);
        while let Some(old) = queue.pop_front() {
            let id = PcstNodeId::from_index(nodes.len());
            new_id[old] = id;
            let (parent, depth) = if old == 0 {
                (None, 0)
            } else {
                let p = new_id[parent[old]];
                nodes[p.index()].children.push((label[old].unwrap(), id));
                (Some(p), nodes[p.index()].depth + 1)
            };
            nodes.push(PcstNode { parent, label: label[old], depth, children: Vec::new(), origins: Vec::new() });
            queue.extend(children[old].iter().map(|&(_, c)| c));
        }
        let class_of: Vec<PcstNodeId> = class_of.into_iter().map(|c| new_id[c]).collect();
        for (k, c) in class_of.iter().enumerate() {
            nodes[c.index()].origins.push(TrieNodeId::from_index(k));
        }
        Pcst { nodes, class_of }
    }

    /// Reassembles a pCST from serialized `(id, parent, label, origins)`
    /// records of non-root nodes. The root's origin is the trie root.
    pub(crate) fn from_located(
        trie_len: usize,
        records: Vec<(usize, (u32, u32, Symbol, Vec<u32>))>,
    ) -> Result<Pcst> {
        let root = PcstNode {
            parent: None,
            label: None,
            depth: 0,
            children: Vec::new(),
            origins: vec![TrieNodeId::ROOT],
        };
        let mut nodes = vec![root];
        let mut class_of: Vec<Option<PcstNodeId>> = vec![None; trie_len];
        class_of[0] = Some(PcstNodeId::ROOT);
        for (line, (id, parent, label, origins)) in records {
            let err = |msg: String| Error::parse(line, msg);
            if id as usize != nodes.len() + 1 {
                return Err(err(format!("expected pcst node {}, found {id}", nodes.len() + 1)));
            }
            if parent == 0 || parent >= id {
                return Err(err(format!("invalid parent {parent} for pcst node {id}")));
            }
            let me = PcstNodeId::new(id);
            let pid = PcstNodeId::new(parent);
            let siblings = &mut nodes[pid.index()].children;
            match siblings.binary_search_by_key(&label, |&(s, _)| s) {
                Ok(_) => return Err(err(format!("duplicate child label under pcst node {parent}"))),
                Err(k) => siblings.insert(k, (label, me)),
            }
            let mut list = Vec::with_capacity(origins.len());
            for o in origins {
                if o <= 1 || o as usize > trie_len {
                    return Err(err(format!("origin {o} is not a non-root trie node")));
                }
                let slot = &mut class_of[o as usize - 1];
                if slot.is_some() {
                    return Err(err(format!("trie node {o} belongs to two pcst nodes")));
                }
                *slot = Some(me);
                list.push(TrieNodeId::new(o));
            }
            if list.is_empty() {
                return Err(err(format!("pcst node {id} has no origins")));
            }
            list.sort_unstable();
            let depth = nodes[pid.index()].depth + 1;
            nodes.push(PcstNode { parent: Some(pid), label: Some(label), depth, children: Vec::new(), origins: list });
        }
        let class_of = class_of
            .into_iter()
            .enumerate()
            .map(|(k, c)| c.ok_or_else(|| Error::Validation { line: None, msg: format!("trie node {} has no pcst node", k + 1) }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Pcst { nodes, class_of })
    }

    /// Number of nodes, root included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> PcstNodeId {
        PcstNodeId::ROOT
    }

    /// Node ids in BFS order; depths along it never decrease.
    pub fn bfs_order(&self) -> impl Iterator<Item = PcstNodeId> {
        (0..self.nodes.len()).map(PcstNodeId::from_index)
    }

    pub fn node(&self, id: PcstNodeId) -> Result<&PcstNode> {
        self.nodes.get(id.index()).ok_or(Error::InvalidNode(id.get()))
    }

    pub(crate) fn get(&self, id: PcstNodeId) -> &PcstNode {
        &self.nodes[id.index()]
    }

    pub fn parent(&self, id: PcstNodeId) -> Option<PcstNodeId> {
        self.get(id).parent
    }

    pub fn depth(&self, id: PcstNodeId) -> usize {
        self.get(id).depth as usize
    }

    pub fn child(&self, id: PcstNodeId, label: Symbol) -> Option<PcstNodeId> {
        let children = &self.get(id).children;
        children.binary_search_by_key(&label, |&(s, _)| s).ok().map(|k| children[k].1)
    }

    /// The pCST node an input-trie node was merged into.
    pub fn class_of(&self, v: TrieNodeId) -> PcstNodeId {
        self.class_of[v.index()]
    }

    /// The heap node created for this pCST node.
    pub fn heap_node(&self, id: PcstNodeId) -> HeapNodeId {
        id.into()
    }

    /// Symbols of the node's string from position 1 on, one ancestor at a time.
    pub fn chars(&self, id: PcstNodeId) -> PcstChars<'_> {
        PcstChars { pcst: self, cur: Some(id) }
    }

    /// The symbol at 1-based position `pos` of the node's string.
    pub fn char_at(&self, id: PcstNodeId, pos: usize) -> Result<Symbol> {
        let len = self.node(id)?.depth as usize;
        if pos == 0 || pos > len {
            return Err(Error::PositionOutOfRange { pos, len });
        }
        Ok(self.chars(id).nth(pos - 1).expect("position within depth"))
    }

    /// The ancestor at distance `k` (0 is the node itself).
    pub fn ancestor(&self, id: PcstNodeId, k: usize) -> Option<PcstNodeId> {
        let mut cur = id;
        for _ in 0..k {
            cur = self.get(cur).parent?;
        }
        Some(cur)
    }

    pub fn node_string(&self, id: PcstNodeId) -> PString {
        self.chars(id).collect()
    }
}

/// Iterator over the symbols of a pCST node's string.
pub struct PcstChars<'a> {
    pcst: &'a Pcst,
    cur: Option<PcstNodeId>,
}

impl PcstChars<'_> {
    /// Skips `n` symbols by walking parents.
    pub fn skip_symbols(mut self, n: usize) -> Self {
        for _ in 0..n {
            self.cur = self.cur.and_then(|c| self.pcst.get(c).parent);
        }
        self
    }
}

impl Iterator for PcstChars<'_> {
    type Item = Symbol;

    fn next(&mut self) -> Option<Symbol> {
        let node = self.pcst.get(self.cur?);
        self.cur = node.parent;
        node.label
    }
}
