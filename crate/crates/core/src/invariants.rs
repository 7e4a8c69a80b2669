//! Structural invariants of a built index, checked by direct recomputation.
//!
//! Every check reports [`Violation`]s instead of stopping at the first one,
//! and each violation names the record it concerns so the index loader can
//! point at a line.

use std::collections::VecDeque;
use std::fmt;

use crate::heap::{Heap, LinkKey};
use crate::ids::{HeapNodeId, PcstNodeId, TrieNodeId};
use crate::index::Index;
use crate::pcst::Pcst;
use crate::pstring::{canonicalize, is_canonical, reverse, PString, Symbol};
use crate::trie::InputTrie;

/// The record a violation is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Trie(TrieNodeId),
    Pcst(PcstNodeId),
    Heap(HeapNodeId),
    /// A reversed suffix link, by source and key.
    Link(HeapNodeId, LinkKey),
    Mrp(HeapNodeId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub location: Location,
    pub rule: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}: {}", self.rule, self.location, self.detail)
    }
}

struct Sink(Vec<Violation>);

impl Sink {
    fn push(&mut self, location: Location, rule: &'static str, detail: impl Into<String>) {
        self.0.push(Violation { location, rule, detail: detail.into() });
    }
}

/// Runs every check on the index.
pub fn check_index(index: &Index) -> Vec<Violation> {
    let mut out = check_pcst(&index.trie, &index.pcst);
    if out.is_empty() {
        out.extend(check_heap(&index.pcst, &index.heap));
    }
    out
}

fn right_canonical(x: &[Symbol]) -> PString {
    reverse(&canonicalize(&reverse(x)).0)
}

/// The pCST is the BFS-numbered quotient of the trie by p-match.
pub fn check_pcst(trie: &InputTrie, pcst: &Pcst) -> Vec<Violation> {
    let mut sink = Sink(Vec::new());
    let mut expected = VecDeque::from([pcst.root()]);
    let mut next = 0usize;
    while let Some(c) = expected.pop_front() {
        next += 1;
        if c.get() as usize != next {
            sink.push(Location::Pcst(c), "bfs-numbering", format!("node {c} is visited in BFS position {next}"));
        }
        expected.extend(pcst.get(c).children().iter().map(|&(_, k)| k));
    }

    let mut covered = 0usize;
    for c in pcst.bfs_order() {
        let w = pcst.node_string(c);
        if right_canonical(&w) != w {
            sink.push(Location::Pcst(c), "right-canonical", "node string is not right-canonical");
        }
        for &u in pcst.get(c).origins() {
            covered += 1;
            let x = trie.node_string(u).expect("origin within trie");
            if right_canonical(&x) != w {
                sink.push(Location::Pcst(c), "origin-class", format!("trie node {u} does not p-match the node string"));
            }
            if pcst.class_of(u) != c {
                sink.push(Location::Trie(u), "origin-class", format!("class of trie node {u} disagrees with origins"));
            }
        }
    }
    if covered != trie.len() {
        sink.push(Location::Pcst(pcst.root()), "partition", format!("{covered} origins for {} trie nodes", trie.len()));
    }
    sink.0
}

/// Heap invariants against its pCST.
pub fn check_heap(pcst: &Pcst, heap: &Heap) -> Vec<Violation> {
    let mut sink = Sink(Vec::new());
    if heap.len() != pcst.len() {
        sink.push(
            Location::Heap(heap.root()),
            "node-count",
            format!("{} heap nodes for {} pcst nodes", heap.len(), pcst.len()),
        );
        return sink.0;
    }
    let strings: Vec<PString> = heap.ids().map(|v| heap.node_string(v)).collect();
    let string = |v: HeapNodeId| &strings[v.index()];
    let pi = heap.pi();

    for v in heap.ids() {
        let node = heap.get(v);
        let s = string(v);
        if !is_canonical(s) {
            sink.push(Location::Heap(v), "canonical-string", "node string is not canonical");
        }
        if s.iter().any(|sym| sym.rank().is_some_and(|r| r as usize > pi)) {
            sink.push(Location::Heap(v), "canonical-string", "parameter rank exceeds the alphabet");
        }
        if let (Some(p), Some(Symbol::Param(r))) = (node.parent(), node.label()) {
            if r as usize > heap.get(p).param_count() + 1 {
                sink.push(Location::Heap(v), "edge-rank", format!("label rank {r} skips a parameter"));
            }
        }

        // Node v spells a prefix of its source and comes after its parent, so
        // it was the shortest absent prefix when pCST node v was inserted.
        let c = PcstNodeId::from(v);
        let (full, _) = canonicalize(&pcst.node_string(c));
        if !full.starts_with(s) {
            sink.push(Location::Heap(v), "node-source", "node string is not a prefix of its source string");
        } else if let Some(p) = node.parent() {
            if v < p {
                sink.push(Location::Heap(v), "insertion-order", "node precedes its parent");
            }
        }

        let m = heap.mrp(v);
        if !heap.is_descendant(v, m) {
            sink.push(Location::Mrp(v), "mrp-descendant", format!("pointer {m} is not in the subtree"));
        }
        let ms = string(m);
        if !full.starts_with(ms) {
            sink.push(Location::Mrp(v), "mrp-prefix", format!("pointer {m} does not spell a prefix of the source"));
        } else if ms.len() < full.len() && heap.child(m, full[ms.len()]).is_some() {
            sink.push(Location::Mrp(v), "mrp-maximal", format!("pointer {m} can be extended"));
        }
    }

    check_preorder(heap, &mut sink);
    check_links(heap, &strings, &mut sink);
    sink.0
}

fn check_preorder(heap: &Heap, sink: &mut Sink) {
    let mut fresh = heap.clone();
    fresh.finalize();
    for v in heap.ids() {
        if heap.get(v).preorder_interval() != fresh.get(v).preorder_interval() {
            sink.push(Location::Heap(v), "preorder", "preorder interval disagrees with a fresh traversal");
        }
    }
    if heap.preorder() != fresh.preorder() {
        sink.push(Location::Heap(heap.root()), "preorder", "preorder sequence disagrees with a fresh traversal");
    }
}

fn check_links(heap: &Heap, strings: &[PString], sink: &mut Sink) {
    let string = |v: HeapNodeId| &strings[v.index()];
    let mut incoming = vec![0u32; heap.len()];
    for v in heap.ids() {
        let node = heap.get(v);
        let params = node.param_count();
        for &(key, z) in node.links() {
            let loc = Location::Link(v, key);
            incoming[z.index()] += 1;
            if heap.get(z).incoming_link() != Some((v, key)) {
                sink.push(loc, "link-unique", format!("target {z} does not record this link"));
            }
            let witness = match key {
                LinkKey::Sym(s @ Symbol::Static(_)) => Some(s),
                LinkKey::Sym(s @ Symbol::Param(r)) => (r as usize <= params).then_some(s),
                LinkKey::Fresh => (params < heap.pi()).then_some(Symbol::Param(params as u16 + 1)),
            };
            let Some(k) = witness else {
                sink.push(loc, "link-key", "key is not valid at the source");
                continue;
            };
            let mut extended = vec![k];
            extended.extend_from_slice(string(v));
            if canonicalize(&extended).0 != *string(z) {
                sink.push(loc, "link-semantics", format!("target {z} does not spell the canonical extension"));
            }
        }
    }
    for z in heap.ids().skip(1) {
        let loc = Location::Heap(z);
        if incoming[z.index()] > 1 {
            sink.push(loc, "link-unique", format!("{} incoming links", incoming[z.index()]));
        }
        if let Some((v, key)) = heap.get(z).incoming_link() {
            if heap.link(v, key) != Some(z) {
                sink.push(loc, "link-unique", format!("recorded incoming link from {v} is not stored there"));
            }
        }
        // Every node whose one-shorter suffix is a node must be linked from it.
        let s = string(z);
        let (suffix, _) = canonicalize(&s[1..]);
        let (src, matched) = heap.locate(&suffix);
        if matched == suffix.len() && heap.get(z).incoming_link().map(|(v, _)| v) != Some(src) {
            sink.push(loc, "link-complete", format!("missing link from {src}"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running_example;
    use crate::index::Builder;

    fn example() -> Index {
        Index::build(running_example(), Builder::Fast).unwrap().0
    }

    #[test]
    fn example_is_clean() {
        assert_eq!(check_index(&example()), vec![]);
    }

    #[test]
    fn corrupted_mrp_is_caught() {
        let mut index = example();
        index.heap.set_mrp(HeapNodeId::new(6), HeapNodeId::new(8));
        let found = check_index(&index);
        assert!(found.iter().any(|v| v.location == Location::Mrp(HeapNodeId::new(6))), "{found:?}");
        index.heap.set_mrp(HeapNodeId::new(6), HeapNodeId::new(6));
        assert!(check_index(&index).iter().any(|v| v.rule == "mrp-maximal"));
    }

    #[test]
    fn dropped_link_is_caught() {
        let mut index = example();
        let z = HeapNodeId::new(10);
        let (v, key) = index.heap.get(z).incoming_link().unwrap();
        index.heap.get_mut(z).rsl_in = None;
        index.heap.get_mut(v).rsl_out.retain(|&(k, _)| k != key);
        let found = check_index(&index);
        assert!(found.iter().any(|x| x.rule == "link-complete" && x.location == Location::Heap(z)));
    }

    #[test]
    fn wrong_link_target_is_caught() {
        let mut index = example();
        let root = index.heap.root();
        let slot = index.heap.get_mut(root).rsl_out.iter_mut().find(|(k, _)| *k == LinkKey::Fresh).unwrap();
        slot.1 = HeapNodeId::new(3);
        let found = check_index(&index);
        assert!(found.iter().any(|x| x.rule == "link-semantics"));
    }
}
