use super::{BuildStats, Heap, LinkKey};
use crate::ids::HeapNodeId;
use crate::pcst::Pcst;
use crate::pstring::{canonicalize, NameAssignment, Symbol};

impl Heap {
    /// Computes every maximal reach pointer in one BFS pass.
    ///
    /// The pointer of node `i` is found from its pCST parent's pointer: climb
    /// to the lowest ancestor with a link under the key of `w_i[1]`, jump,
    /// then walk down while the next symbol of `w_i` still has a child.
    pub(crate) fn compute_mrp(&mut self, pcst: &Pcst, stats: &mut BuildStats) {
        // Renaming of w_i[1..depth(mrp(i))], only needed during the pass.
        let mut msubs: Vec<NameAssignment> = Vec::with_capacity(self.len());
        msubs.push(NameAssignment::new());
        self.set_mrp(self.root(), self.root());
        for c in pcst.bfs_order().skip(1) {
            let j = pcst.parent(c).expect("non-root pcst node");
            let a0 = pcst.get(c).label.expect("non-root pcst node");
            let start = self.mrp(HeapNodeId::from(j));
            let msub_j = &msubs[j.index()];
            let bound = match a0 {
                Symbol::Param(_) => msub_j.lookup(a0),
                Symbol::Static(_) => None,
            };
            let key_at = |depth: usize| match (a0, bound) {
                (Symbol::Static(_), _) => LinkKey::Sym(a0),
                (_, Some((rank, pos))) if pos <= depth => LinkKey::Sym(Symbol::Param(rank)),
                _ => LinkKey::Fresh,
            };

            let mut landing = None;
            for v in self.ancestors(start) {
                stats.mrp_climb_steps += 1;
                if let Some(z) = self.link(v, key_at(self.depth(v))) {
                    landing = Some((z, msub_j.prepended(a0, self.depth(v))));
                    break;
                }
            }
            let (mut cur, mut asg) = landing.unwrap_or((self.root(), NameAssignment::new()));
            for raw in pcst.chars(c).skip_symbols(self.depth(cur)) {
                match self.child(cur, asg.name_of(raw)) {
                    Some(next) => {
                        stats.mrp_descent_steps += 1;
                        asg.extend(raw);
                        cur = next;
                    }
                    None => break,
                }
            }
            self.set_mrp(HeapNodeId::from(c), cur);
            msubs.push(asg);
        }
    }

    /// Maximal reach pointer by definition: walk the canonical form of
    /// node `i`'s pCST string down from the root as far as it goes.
    pub fn mrp_oracle(&self, pcst: &Pcst, i: HeapNodeId) -> HeapNodeId {
        let (s, _) = canonicalize(&pcst.node_string(i.into()));
        self.locate(&s).0
    }
}
