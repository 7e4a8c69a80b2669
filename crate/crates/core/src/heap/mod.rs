//! The parameterized position heap.
//!
//! The heap is the sequence hash tree of the canonical forms of the pCST
//! node strings, inserted in BFS order: each string adds one node, its
//! shortest prefix not yet present. So the heap has exactly one node per
//! pCST node and node `i` belongs to pCST node `i`.
//!
//! Two constructions are provided. [`Heap::build_naive`] follows the
//! definition directly and serves as the oracle. [`Heap::build_fast`]
//! finds each insertion point through reversed suffix links: the link from
//! `v` under key `k` points to the node for the canonical form of `k·v`.
//! A single [`LinkKey::Fresh`] slot stands for every parameter absent from
//! `v`, since all of them canonicalize `k·v` identically.

mod fast;
mod mrp;
mod naive;

use crate::error::{Error, Result};
use crate::ids::HeapNodeId;
use crate::pstring::{PString, Symbol};

pub use fast::BuildStats;

/// Key of a reversed suffix link, relative to the link's source node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinkKey {
    /// A static symbol, or the canonical name of a parameter occurring in
    /// the source node's string.
    Sym(Symbol),
    /// Any parameter that does not occur in the source node's string.
    Fresh,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeapNode {
    pub(crate) parent: Option<HeapNodeId>,
    pub(crate) label: Option<Symbol>,
    pub(crate) depth: u32,
    /// Distinct parameters in the node's string.
    pub(crate) params: u16,
    pub(crate) children: Vec<(Symbol, HeapNodeId)>,
    pub(crate) rsl_out: Vec<(LinkKey, HeapNodeId)>,
    pub(crate) rsl_in: Option<(HeapNodeId, LinkKey)>,
    pub(crate) mrp: HeapNodeId,
    pub(crate) pre_in: u32,
    pub(crate) pre_out: u32,
}

impl HeapNode {
    pub fn parent(&self) -> Option<HeapNodeId> {
        self.parent
    }

    pub fn label(&self) -> Option<Symbol> {
        self.label
    }

    pub fn depth(&self) -> usize {
        self.depth as usize
    }

    pub fn param_count(&self) -> usize {
        self.params as usize
    }

    pub fn children(&self) -> &[(Symbol, HeapNodeId)] {
        &self.children
    }

    /// Outgoing reversed suffix links, sorted by key.
    pub fn links(&self) -> &[(LinkKey, HeapNodeId)] {
        &self.rsl_out
    }

    /// The unique incoming reversed suffix link, if any.
    pub fn incoming_link(&self) -> Option<(HeapNodeId, LinkKey)> {
        self.rsl_in
    }

    /// Maximal reach pointer: the deepest node spelling a prefix of this
    /// node's full canonical source string.
    pub fn mrp(&self) -> HeapNodeId {
        self.mrp
    }

    /// Preorder interval `[pre_in, pre_out]` of the node's subtree.
    pub fn preorder_interval(&self) -> (usize, usize) {
        (self.pre_in as usize, self.pre_out as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Heap {
    nodes: Vec<HeapNode>,
    preorder: Vec<HeapNodeId>,
    pi: usize,
}

impl Heap {
    pub(crate) fn with_root(pi: usize) -> Heap {
        let root = HeapNode {
            parent: None,
            label: None,
            depth: 0,
            params: 0,
            children: Vec::new(),
            rsl_out: Vec::new(),
            rsl_in: None,
            mrp: HeapNodeId::ROOT,
            pre_in: 0,
            pre_out: 0,
        };
        Heap { nodes: vec![root], preorder: Vec::new(), pi }
    }

    /// Number of nodes, root included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Size of the parameter alphabet the heap was built over.
    pub fn pi(&self) -> usize {
        self.pi
    }

    pub fn root(&self) -> HeapNodeId {
        HeapNodeId::ROOT
    }

    pub fn ids(&self) -> impl Iterator<Item = HeapNodeId> {
        (0..self.nodes.len()).map(HeapNodeId::from_index)
    }

    pub fn node(&self, id: HeapNodeId) -> Result<&HeapNode> {
        self.nodes.get(id.index()).ok_or(Error::InvalidNode(id.get()))
    }

    pub(crate) fn get(&self, id: HeapNodeId) -> &HeapNode {
        &self.nodes[id.index()]
    }

    pub(crate) fn get_mut(&mut self, id: HeapNodeId) -> &mut HeapNode {
        &mut self.nodes[id.index()]
    }

    pub fn depth(&self, id: HeapNodeId) -> usize {
        self.get(id).depth as usize
    }

    pub fn mrp(&self, id: HeapNodeId) -> HeapNodeId {
        self.get(id).mrp
    }

    pub fn child(&self, id: HeapNodeId, label: Symbol) -> Option<HeapNodeId> {
        let children = &self.get(id).children;
        children.binary_search_by_key(&label, |&(s, _)| s).ok().map(|k| children[k].1)
    }

    pub fn link(&self, id: HeapNodeId, key: LinkKey) -> Option<HeapNodeId> {
        let links = &self.get(id).rsl_out;
        links.binary_search_by_key(&key, |&(k, _)| k).ok().map(|k| links[k].1)
    }

    /// The string spelled from the root down to `id`.
    pub fn node_string(&self, id: HeapNodeId) -> PString {
        let mut out: Vec<Symbol> = Vec::with_capacity(self.depth(id));
        let mut cur = id;
        while let Some(p) = self.get(cur).parent {
            out.push(self.get(cur).label.unwrap());
            cur = p;
        }
        out.reverse();
        out.into()
    }

    /// Ancestors of `id` from the node itself up to the root.
    pub fn ancestors(&self, id: HeapNodeId) -> impl Iterator<Item = HeapNodeId> + '_ {
        std::iter::successors(Some(id), move |&v| self.get(v).parent)
    }

    /// Deepest node spelling a prefix of `s`, and its depth.
    pub fn locate(&self, s: &[Symbol]) -> (HeapNodeId, usize) {
        let mut cur = self.root();
        for (k, &c) in s.iter().enumerate() {
            match self.child(cur, c) {
                Some(next) => cur = next,
                None => return (cur, k),
            }
        }
        (cur, s.len())
    }

    /// Whether `u` is an ancestor of `v` or `v` itself. Needs a finalized heap.
    pub fn is_descendant(&self, u: HeapNodeId, v: HeapNodeId) -> bool {
        let (a, b) = (self.get(u), self.get(v));
        a.pre_in <= b.pre_in && b.pre_in <= a.pre_out
    }

    /// Nodes in preorder (children by label). Empty before finalization.
    pub fn preorder(&self) -> &[HeapNodeId] {
        &self.preorder
    }

    /// Nodes of the subtree rooted at `u`, in preorder.
    pub fn subtree(&self, u: HeapNodeId) -> &[HeapNodeId] {
        let (lo, hi) = self.get(u).preorder_interval();
        &self.preorder[lo..=hi]
    }

    pub(crate) fn add_child(&mut self, parent: HeapNodeId, label: Symbol) -> Result<HeapNodeId> {
        let id = HeapNodeId::from_index(self.nodes.len());
        let p = self.get(parent);
        let pos = match p.children.binary_search_by_key(&label, |&(s, _)| s) {
            Ok(_) => {
                return Err(Error::internal(format!(
                    "heap node {parent} already has a child labeled {label:?}"
                )))
            }
            Err(pos) => pos,
        };
        let params = p.params + u16::from(label == Symbol::Param(p.params + 1));
        let depth = p.depth + 1;
        self.get_mut(parent).children.insert(pos, (label, id));
        self.nodes.push(HeapNode {
            parent: Some(parent),
            label: Some(label),
            depth,
            params,
            children: Vec::new(),
            rsl_out: Vec::new(),
            rsl_in: None,
            mrp: id,
            pre_in: 0,
            pre_out: 0,
        });
        Ok(id)
    }

    pub(crate) fn set_link(&mut self, from: HeapNodeId, key: LinkKey, to: HeapNodeId) -> Result<()> {
        if let Some((src, k)) = self.get(to).rsl_in {
            return Err(Error::internal(format!(
                "heap node {to} already has an incoming link from {src} ({k:?})"
            )));
        }
        let links = &mut self.get_mut(from).rsl_out;
        match links.binary_search_by_key(&key, |&(k, _)| k) {
            Ok(_) => return Err(Error::internal(format!("link slot {key:?} at heap node {from} is occupied"))),
            Err(pos) => links.insert(pos, (key, to)),
        }
        self.get_mut(to).rsl_in = Some((from, key));
        Ok(())
    }

    pub(crate) fn set_mrp(&mut self, id: HeapNodeId, target: HeapNodeId) {
        self.get_mut(id).mrp = target;
    }

    /// Assigns preorder intervals.
    pub fn finalize(&mut self) {
        let n = self.nodes.len();
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![self.root()];
        while let Some(v) = stack.pop() {
            self.get_mut(v).pre_in = order.len() as u32;
            order.push(v);
            stack.extend(self.get(v).children.iter().rev().map(|&(_, c)| c));
        }
        let mut size = vec![1u32; n];
        for &v in order.iter().rev() {
            if let Some(p) = self.get(v).parent {
                size[p.index()] += size[v.index()];
            }
        }
        for v in 0..n {
            let node = &mut self.nodes[v];
            node.pre_out = node.pre_in + size[v] - 1;
        }
        self.preorder = order;
    }

    /// Reassembles a heap from line-tagged serialized parts. Only local
    /// consistency is checked here; the caller runs the invariant suite.
    pub(crate) fn from_located(
        pi: usize,
        root_interval: (u32, u32),
        records: &[(usize, HeapNodeId, Symbol, u32, u32)],
        links: &[(usize, HeapNodeId, LinkKey, HeapNodeId)],
        mrp: &[(usize, HeapNodeId)],
    ) -> Result<Heap> {
        let mut heap = Heap::with_root(pi);
        heap.get_mut(HeapNodeId::ROOT).pre_in = root_interval.0;
        heap.get_mut(HeapNodeId::ROOT).pre_out = root_interval.1;
        for &(line, parent, label, pre_in, pre_out) in records {
            let id = heap.add_child(parent, label).map_err(|e| Error::parse(line, e.to_string()))?;
            let node = heap.get_mut(id);
            node.pre_in = pre_in;
            node.pre_out = pre_out;
        }
        for &(line, from, key, to) in links {
            heap.set_link(from, key, to).map_err(|e| Error::parse(line, e.to_string()))?;
        }
        for (k, &(_, target)) in mrp.iter().enumerate() {
            heap.set_mrp(HeapNodeId::from_index(k), target);
        }
        let mut order = vec![HeapNodeId::ROOT; heap.len()];
        let mut seen = vec![false; heap.len()];
        for v in heap.ids() {
            let pre = heap.get(v).pre_in as usize;
            if pre >= heap.len() || std::mem::replace(&mut seen[pre], true) {
                let line = if v == HeapNodeId::ROOT { None } else { Some(records[v.index() - 1].0) };
                return Err(Error::Validation { line, msg: format!("bad preorder rank {pre} at heap node {v}") });
            }
            order[pre] = v;
        }
        heap.preorder = order;
        Ok(heap)
    }
}

/// The link key for prepending `a0` in the given shift mode.
pub(crate) fn key_for(a0: Symbol, mode: crate::pstring::ShiftMode) -> LinkKey {
    use crate::pstring::ShiftMode;
    match mode {
        ShiftMode::Static => LinkKey::Sym(a0),
        ShiftMode::Bound(t) => LinkKey::Sym(Symbol::Param(t)),
        ShiftMode::Fresh => LinkKey::Fresh,
    }
}

#[cfg(test)]
mod tests;
