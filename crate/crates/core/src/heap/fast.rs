use std::borrow::Cow;

use super::{key_for, Heap, LinkKey};
use crate::error::{Error, Result};
use crate::ids::{HeapNodeId, PcstNodeId};
use crate::pcst::Pcst;
use crate::pstring::{prepend_shift, NameAssignment, ShiftMode, Symbol};

/// Operation counters collected during fast construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    /// Ancestors visited while looking for a reversed suffix link.
    pub climb_steps: u64,
    /// Insertions whose link was found at the parent's own heap node.
    pub corner_cases: u64,
    /// Links added from a new node to an already existing node.
    pub completed_links: u64,
    /// Insertions whose link target already had the computed child.
    pub descents: u64,
    /// Child steps taken by those insertions.
    pub descent_steps: u64,
    /// Ancestors visited while computing maximal reach pointers.
    pub mrp_climb_steps: u64,
    /// Child steps taken while extending maximal reach pointers.
    pub mrp_descent_steps: u64,
}

struct FastBuilder<'a> {
    pcst: &'a Pcst,
    heap: Heap,
    /// For node `i`, the renaming of `w_i[1..depth(i)]` into node `i`'s string.
    subs: Vec<NameAssignment>,
    stats: BuildStats,
}

impl Heap {
    /// Builds the heap by following reversed suffix links, then computes
    /// maximal reach pointers and finalizes. The result equals
    /// [`Heap::build_naive`].
    pub fn build_fast(pcst: &Pcst, pi: usize) -> Result<(Heap, BuildStats)> {
        let mut builder = FastBuilder {
            pcst,
            heap: Heap::with_root(pi),
            subs: Vec::with_capacity(pcst.len()),
            stats: BuildStats::default(),
        };
        builder.subs.push(NameAssignment::new());
        for c in pcst.bfs_order().skip(1) {
            builder.insert(c)?;
        }
        let FastBuilder { mut heap, mut stats, .. } = builder;
        heap.compute_mrp(pcst, &mut stats);
        heap.finalize();
        Ok((heap, stats))
    }
}

impl FastBuilder<'_> {
    /// Inserts the node for pCST node `c`, whose parent `j` is already in.
    ///
    /// The new node hangs below the target of the link found at the lowest
    /// ancestor of `j`'s heap node that has one under the key of `c`'s first
    /// symbol.
    fn insert(&mut self, c: PcstNodeId) -> Result<()> {
        let pi = self.heap.pi;
        let j = self.pcst.parent(c).expect("non-root pcst node");
        let a0 = self.pcst.get(c).label.expect("non-root pcst node");
        let hj = HeapNodeId::from(j);
        let sub_j = &self.subs[hj.index()];
        let bound = match a0 {
            Symbol::Param(_) => sub_j.lookup(a0),
            Symbol::Static(_) => None,
        };
        let key_at = |depth: usize| match (a0, bound) {
            (Symbol::Static(_), _) => LinkKey::Sym(a0),
            (_, Some((rank, pos))) if pos <= depth => LinkKey::Sym(Symbol::Param(rank)),
            _ => LinkKey::Fresh,
        };

        let mut prev = None;
        let mut v = hj;
        let found = loop {
            self.stats.climb_steps += 1;
            if let Some(z) = self.heap.link(v, key_at(self.heap.depth(v))) {
                break Some(z);
            }
            match self.heap.get(v).parent {
                Some(p) => {
                    prev = Some(v);
                    v = p;
                }
                None => break None,
            }
        };

        // `parent` spells spe(w_c[1..d]); the new node adds spe(w_c)[d + 1],
        // whose raw symbol is w_j[d]. `suffix` is the node for spe(w_j[1..d]).
        let (parent, label, mode, sub, suffix) = match found {
            None => {
                let mode = ShiftMode::of(a0, sub_j, 0);
                let label = if a0.is_static() { a0 } else { Symbol::Param(1) };
                (self.heap.root(), label, mode, sub_j.prepended(a0, 0), Some(self.heap.root()))
            }
            Some(z) => {
                let d = self.heap.depth(z);
                let (e, source, suffix) = match prev {
                    // w_j[d] is the label of the path node just below v.
                    Some(below) => (self.heap.get(below).label.unwrap(), Cow::Borrowed(sub_j), Some(below)),
                    // The link sits at hj itself: w_j[d] lies past hj.
                    None => {
                        self.stats.corner_cases += 1;
                        let raw = self
                            .pcst
                            .chars(j)
                            .skip_symbols(d - 1)
                            .next()
                            .ok_or_else(|| Error::internal(format!("pcst node {c} is already represented")))?;
                        let mut extended = sub_j.clone();
                        let e = extended.extend(raw);
                        let suffix = self.heap.child(hj, e);
                        (e, Cow::Owned(extended), suffix)
                    }
                };
                let mode = ShiftMode::of(a0, &source, d);
                let label = prepend_shift(e, mode, pi)?;
                (z, label, mode, source.prepended(a0, d), suffix)
            }
        };

        // The corner case can land on a node whose one-longer extension was
        // added by an earlier sibling without a suffix link; keep descending.
        let (parent, label, mode, sub, suffix) = match self.heap.child(parent, label) {
            None => (parent, label, mode, sub, suffix),
            Some(existing) => {
                self.stats.descents += 1;
                let mut asg = sub;
                let mut cur = existing;
                let mut chars = self.pcst.chars(c).skip_symbols(self.heap.depth(cur));
                let raw = loop {
                    let raw = chars
                        .next()
                        .ok_or_else(|| Error::internal(format!("pcst node {c} is already represented")))?;
                    match self.heap.child(cur, asg.name_of(raw)) {
                        Some(next) => {
                            self.stats.descent_steps += 1;
                            asg.extend(raw);
                            cur = next;
                        }
                        None => break raw,
                    }
                };
                let label = asg.extend(raw);
                let depth = self.heap.depth(cur);
                let suffix = self.suffix_node(j, depth);
                let mode = match &suffix {
                    Some((_, a)) => ShiftMode::of(a0, a, depth),
                    None => ShiftMode::Fresh,
                };
                (cur, label, mode, asg, suffix.map(|(v, _)| v))
            }
        };

        let i = self.heap.add_child(parent, label)?;
        debug_assert_eq!(i, HeapNodeId::from(c));
        self.subs.push(sub);
        if let Some(s) = suffix {
            self.heap.set_link(s, key_for(a0, mode), i)?;
        }
        self.complete_links(i)
    }

    /// The node for `spe(w_j[1..depth])` with its assignment, found by
    /// walking down from `j`'s heap node, if it exists.
    fn suffix_node(&self, j: PcstNodeId, depth: usize) -> Option<(HeapNodeId, NameAssignment)> {
        let hj = HeapNodeId::from(j);
        let mut asg = self.subs[hj.index()].clone();
        let mut cur = hj;
        let mut chars = self.pcst.chars(j).skip_symbols(self.heap.depth(hj));
        while self.heap.depth(cur) < depth {
            let raw = chars.next()?;
            cur = self.heap.child(cur, asg.name_of(raw))?;
            asg.extend(raw);
        }
        Some((cur, asg))
    }

    /// Adds the links leaving the new node `i` towards nodes that already
    /// exist. Each is found below the target of a link of `i`'s parent.
    fn complete_links(&mut self, i: HeapNodeId) -> Result<()> {
        let pi = self.heap.pi;
        let node = self.heap.get(i);
        let (u, b) = (node.parent.unwrap(), node.label.unwrap());
        let parent_params = self.heap.get(u).params;
        let new_param = b == Symbol::Param(parent_params + 1);
        let links = self.heap.get(u).rsl_out.clone();
        for (key, z) in links {
            let variants = match key {
                LinkKey::Sym(s @ Symbol::Static(_)) => [Some((LinkKey::Sym(s), ShiftMode::Static)), None],
                LinkKey::Sym(Symbol::Param(t)) => [Some((LinkKey::Sym(Symbol::Param(t)), ShiftMode::Bound(t))), None],
                // A parameter absent from u is either b itself or still absent from u·b.
                LinkKey::Fresh if new_param => [
                    Some((LinkKey::Fresh, ShiftMode::Fresh)),
                    Some((LinkKey::Sym(b), ShiftMode::Bound(parent_params + 1))),
                ],
                LinkKey::Fresh => [Some((LinkKey::Fresh, ShiftMode::Fresh)), None],
            };
            for (k, mode) in variants.into_iter().flatten() {
                // No parameter is left for a fresh key once all are used.
                let Ok(shifted) = prepend_shift(b, mode, pi) else { continue };
                if let Some(y) = self.heap.child(z, shifted) {
                    self.heap.set_link(i, k, y)?;
                    self.stats.completed_links += 1;
                }
            }
        }
        Ok(())
    }
}
