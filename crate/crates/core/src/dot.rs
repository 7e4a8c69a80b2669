//! Graphviz export of the trie, the pCST and the heap.
//!
//! Trie and pCST edges point from child to parent, like their strings read
//! towards the root. Heap drawings add reversed suffix links as dashed edges
//! and maximal reach pointers as double-lined edges (self pointers omitted).

use std::fmt::Write as _;
use std::str::FromStr;

use crate::heap::LinkKey;
use crate::index::Index;

/// Which structure to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotTarget {
    Trie,
    Pcst,
    Heap,
}

impl FromStr for DotTarget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "trie" => Ok(DotTarget::Trie),
            "pcst" => Ok(DotTarget::Pcst),
            "heap" => Ok(DotTarget::Heap),
            other => Err(format!("unknown export target {other:?} (expected trie, pcst or heap)")),
        }
    }
}

pub fn export_dot(index: &Index, what: DotTarget) -> String {
    let a = index.alphabet();
    let mut out = String::new();
    match what {
        DotTarget::Trie => {
            let trie = index.trie();
            out.push_str("digraph trie {\n  rankdir=BT;\n");
            for v in trie.ids() {
                let _ = writeln!(out, "  {v} [label=\"{v}\"];");
            }
            for v in trie.ids().skip(1) {
                let node = trie.get(v);
                let _ = writeln!(out, "  {v} -> {} [label=\"{}\"];", node.parent().unwrap(), a.char_of(node.label().unwrap()));
            }
        }
        DotTarget::Pcst => {
            let pcst = index.pcst();
            out.push_str("digraph pcst {\n  rankdir=BT;\n");
            for c in pcst.bfs_order() {
                let origins: Vec<String> = pcst.get(c).origins().iter().map(|o| o.to_string()).collect();
                let _ = writeln!(out, "  {c} [label=\"{c}\\n({})\"];", origins.join(","));
            }
            for c in pcst.bfs_order().skip(1) {
                let node = pcst.get(c);
                let _ = writeln!(out, "  {c} -> {} [label=\"{}\"];", node.parent().unwrap(), a.char_of(node.label().unwrap()));
            }
        }
        DotTarget::Heap => {
            let heap = index.heap();
            out.push_str("digraph heap {\n");
            for v in heap.ids() {
                let _ = writeln!(out, "  {v} [label=\"{v}\"];");
            }
            for v in heap.ids().skip(1) {
                let node = heap.get(v);
                let _ = writeln!(out, "  {} -> {v} [label=\"{}\"];", node.parent().unwrap(), a.char_of(node.label().unwrap()));
            }
            for v in heap.ids() {
                for &(key, z) in heap.get(v).links() {
                    let key = match key {
                        LinkKey::Sym(s) => a.char_of(s),
                        LinkKey::Fresh => '*',
                    };
                    let _ = writeln!(out, "  {v} -> {z} [style=dashed, label=\"{key}\"];");
                }
            }
            for v in heap.ids().filter(|&v| heap.mrp(v) != v) {
                let _ = writeln!(
                    out,
                    "  {v} -> {} [color=\"black:invis:black\", arrowhead=normalnormal];",
                    heap.mrp(v)
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running_example;
    use crate::index::Builder;

    fn count(text: &str, pred: impl Fn(&str) -> bool) -> usize {
        text.lines().filter(|l| pred(l)).count()
    }

    #[test]
    fn example_exports() {
        let index = Index::build(running_example(), Builder::Fast).unwrap().0;
        let is_node = |l: &str| l.contains("[label=\"") && !l.contains("->");
        let heap = export_dot(&index, DotTarget::Heap);
        assert_eq!(count(&heap, is_node), 15);
        assert_eq!(count(&heap, |l| l.contains("arrowhead=normalnormal")), 4);
        assert!(heap.contains("  6 -> 9 [color"));
        assert!(heap.contains("  1 -> 2 [style=dashed, label=\"*\"];"));
        let pcst = export_dot(&index, DotTarget::Pcst);
        assert_eq!(count(&pcst, is_node), 15);
        assert!(pcst.contains("  2 [label=\"2\\n(2,3,4)\"];"));
        let trie = export_dot(&index, DotTarget::Trie);
        assert_eq!(count(&trie, is_node), 26);
        assert_eq!(trie, export_dot(&index, DotTarget::Trie));
    }

    #[test]
    fn parses_targets() {
        assert_eq!("heap".parse::<DotTarget>().unwrap(), DotTarget::Heap);
        assert!("graph".parse::<DotTarget>().is_err());
    }
}
