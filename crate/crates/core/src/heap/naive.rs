use super::{Heap, LinkKey};
use crate::error::{Error, Result};
use crate::ids::HeapNodeId;
use crate::pcst::Pcst;
use crate::pstring::{canonicalize, Symbol};

impl Heap {
    /// Builds the heap straight from its definition: insert the canonical
    /// form of every pCST string in BFS order, each adding its shortest
    /// absent prefix. Links and maximal reach pointers are also computed by
    /// definition, and the result is finalized.
    pub fn build_naive(pcst: &Pcst, pi: usize) -> Result<Heap> {
        let mut heap = Heap::with_root(pi);
        for c in pcst.bfs_order().skip(1) {
            let (s, _) = canonicalize(&pcst.node_string(c));
            let (v, matched) = heap.locate(&s);
            if matched == s.len() {
                return Err(Error::internal(format!("canonical string of pcst node {c} is already in the heap")));
            }
            heap.add_child(v, s[matched])?;
        }
        heap.link_by_definition()?;
        for c in pcst.bfs_order() {
            let i = HeapNodeId::from(c);
            let target = heap.mrp_oracle(pcst, i);
            heap.set_mrp(i, target);
        }
        heap.finalize();
        Ok(heap)
    }

    /// Adds every reversed suffix link: `z` gets a link from the node for the
    /// canonical form of its string minus the first symbol, when that node
    /// exists.
    fn link_by_definition(&mut self) -> Result<()> {
        for z in self.ids().skip(1) {
            let s = self.node_string(z);
            let (suffix, _) = canonicalize(&s[1..]);
            let (v, matched) = self.locate(&suffix);
            if matched < suffix.len() {
                continue;
            }
            let key = match s[0] {
                first @ Symbol::Static(_) => LinkKey::Sym(first),
                first => match s[1..].iter().position(|&c| c == first) {
                    Some(q) => LinkKey::Sym(suffix[q]),
                    None => LinkKey::Fresh,
                },
            };
            self.set_link(v, key, z)?;
        }
        Ok(())
    }
}
