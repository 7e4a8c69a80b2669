//! Parameterized pattern matching over a built index.
//!
//! A pattern `p` of length `m` occurs at pCST node `i` when `w_i[1..m]`
//! p-matches `p`. If the canonical pattern is a heap node `u`, the answer is
//! the subtree of `u` plus the ancestors of `u` whose maximal reach pointer
//! lands in that subtree. Otherwise the pattern is cut greedily into factors
//! that are each represented in the heap, and candidates on the path to the
//! first factor are screened by their reach pointers, then checked directly.

use crate::error::{Error, Result};
use crate::heap::Heap;
use crate::ids::{HeapNodeId, PcstNodeId, StringId, TrieNodeId};
use crate::index::Index;
use crate::pcst::Pcst;
use crate::pstring::{canonicalize, p_match, NameAssignment, PString, Symbol};

/// A query pattern with its canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    raw: PString,
    canonical: PString,
    assignment: NameAssignment,
}

impl Pattern {
    pub fn new(raw: &[Symbol]) -> Result<Pattern> {
        if raw.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let (canonical, assignment) = canonicalize(raw);
        Ok(Pattern { raw: raw.into(), canonical, assignment })
    }

    pub fn raw(&self) -> &PString {
        &self.raw
    }

    pub fn canonical(&self) -> &PString {
        &self.canonical
    }

    pub fn assignment(&self) -> &NameAssignment {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// One factor of a pattern: `p[start + 1..start + len]`, whose canonical
/// form is spelled by heap node `node`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub start: usize,
    pub len: usize,
    pub node: HeapNodeId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatchResult {
    /// Matching pCST nodes, ascending.
    pub pcst_hits: Vec<PcstNodeId>,
    /// Matching input-trie nodes, ascending.
    pub trie_hits: Vec<TrieNodeId>,
    /// `(string, 1-based offset)` pairs, grouped by trie hit, when requested.
    pub expanded: Option<Vec<(StringId, usize)>>,
    /// Number of factors; 1 when the canonical pattern is a heap node.
    pub factors: usize,
    /// Candidates that passed the reach-pointer screen but failed the
    /// direct check.
    pub verify_rejections: usize,
}

impl MatchResult {
    /// Number of input-trie nodes reported.
    pub fn pocc(&self) -> usize {
        self.trie_hits.len()
    }
}

/// Deepest heap node spelling a prefix of the canonical string `s`, and its
/// depth.
pub fn locate(heap: &Heap, s: &[Symbol]) -> (HeapNodeId, usize) {
    heap.locate(s)
}

/// Greedy factorization: repeatedly canonicalize the rest of the pattern and
/// take its longest prefix represented in the heap. `None` when some rest
/// has not even its first symbol represented.
pub fn factorize(heap: &Heap, p: &Pattern) -> Option<Vec<Factor>> {
    let mut factors = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (rest, _) = canonicalize(&p.raw[start..]);
        let (node, len) = heap.locate(&rest);
        if len == 0 {
            return None;
        }
        factors.push(Factor { start, len, node });
        start += len;
    }
    Some(factors)
}

/// Direct check that `w_i[1..m]` p-matches the pattern.
pub fn verify_candidate(pcst: &Pcst, i: PcstNodeId, p: &Pattern) -> bool {
    if pcst.depth(i) < p.len() {
        return false;
    }
    let prefix: Vec<Symbol> = pcst.chars(i).take(p.len()).collect();
    p_match(&prefix, &p.raw)
}

/// The reach-pointer screen for a factorized pattern at a candidate `c` of
/// depth at least `m`: for every factor but the last, the pointer of the
/// pCST ancestor where the factor starts is exactly the factor's node; for
/// the last factor, that pointer lies in the factor node's subtree.
pub fn passes_chain(heap: &Heap, pcst: &Pcst, factors: &[Factor], c: PcstNodeId) -> bool {
    let Some((last, chain)) = factors.split_last() else { return false };
    let reach = |f: &Factor| pcst.ancestor(c, f.start).map(|a| heap.mrp(HeapNodeId::from(a)));
    chain.iter().all(|f| reach(f) == Some(f.node)) && reach(last).is_some_and(|r| heap.is_descendant(last.node, r))
}

/// Answers a p-matching query. Fails on an empty pattern or a symbol
/// outside the index alphabet, and on expansion when the trie has no
/// string-end markers.
pub fn query(index: &Index, pattern: &[Symbol], expand: bool) -> Result<MatchResult> {
    let alphabet = index.alphabet();
    if let Some(&bad) = pattern.iter().find(|&&s| !alphabet.contains(s)) {
        return Err(Error::Validation { line: None, msg: format!("pattern symbol {bad:?} outside the alphabet") });
    }
    let p = Pattern::new(pattern)?;
    let (heap, pcst) = (&index.heap, &index.pcst);
    let mut result = MatchResult::default();
    let mut hits: Vec<HeapNodeId> = Vec::new();

    if let Some(factors) = factorize(heap, &p) {
        result.factors = factors.len();
        if factors.len() == 1 {
            let u = factors[0].node;
            hits.extend_from_slice(heap.subtree(u));
            hits.extend(heap.ancestors(u).skip(1).filter(|&v| heap.is_descendant(u, heap.mrp(v))));
        } else {
            for v in heap.ancestors(factors[0].node) {
                if v == heap.root() {
                    continue;
                }
                let c = PcstNodeId::from(v);
                if pcst.depth(c) < p.len() || !passes_chain(heap, pcst, &factors, c) {
                    continue;
                }
                if verify_candidate(pcst, c, &p) {
                    hits.push(v);
                } else {
                    result.verify_rejections += 1;
                }
            }
        }
    }

    let mut pcst_hits: Vec<PcstNodeId> = hits.into_iter().map(PcstNodeId::from).collect();
    pcst_hits.sort_unstable();
    let mut trie_hits: Vec<TrieNodeId> =
        pcst_hits.iter().flat_map(|&c| pcst.get(c).origins.iter().copied()).collect();
    trie_hits.sort_unstable();
    if expand {
        let mut pairs = Vec::new();
        for &v in &trie_hits {
            pairs.extend(index.trie.expand_occurrence(v)?);
        }
        result.expanded = Some(pairs);
    }
    result.pcst_hits = pcst_hits;
    result.trie_hits = trie_hits;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running_example;
    use crate::index::Builder;

    fn example() -> Index {
        Index::build(running_example(), Builder::Fast).unwrap().0
    }

    fn suffixes(index: &Index, r: &MatchResult) -> Vec<String> {
        let a = index.alphabet();
        let mut out: Vec<String> =
            r.trie_hits.iter().map(|&v| a.render(&index.trie().node_string(v).unwrap())).collect();
        out.sort();
        out
    }

    #[test]
    fn example_queries() {
        let index = example();
        let r = index.query_str("azy", true).unwrap();
        assert_eq!(suffixes(&index, &r), ["axz", "ayxz"]);
        assert_eq!(r.expanded.unwrap(), vec![(StringId::new(10), 2), (StringId::new(9), 2)]);
        let r = index.query_str("xax", false).unwrap();
        assert_eq!(suffixes(&index, &r), ["xaxxx", "xaxz", "yayxz", "yayy"]);
        let r = index.query_str("a", false).unwrap();
        assert_eq!(suffixes(&index, &r), ["axx", "axxx", "axz", "ayxz", "ayy"]);
        assert_eq!(r.factors, 1);
        assert!(index.query_str("yzy", false).unwrap().trie_hits.is_empty());
        assert!(index.query_str("xaxaxa", false).unwrap().trie_hits.is_empty());
    }

    #[test]
    fn locate_examples() {
        let index = example();
        let a = index.alphabet();
        let heap = index.heap();
        assert_eq!(locate(heap, &[]), (heap.root(), 0));
        assert_eq!(locate(heap, &a.parse("xaxy").unwrap()), (HeapNodeId::new(15), 4));
        let (x, d) = locate(heap, &a.parse("xz").unwrap());
        assert_eq!((a.render(&heap.node_string(x)), d), ("x".to_string(), 1));
    }

    #[test]
    fn factorization() {
        let index = example();
        let a = index.alphabet();
        let heap = index.heap();
        let p = Pattern::new(&a.parse("yzy").unwrap()).unwrap();
        assert_eq!(a.render(p.canonical()), "xyx");
        let f = factorize(heap, &p).unwrap();
        let spelled: Vec<String> = f.iter().map(|f| a.render(&heap.node_string(f.node))).collect();
        assert_eq!(spelled, ["xy", "x"]);
        assert_eq!((f[1].start, f[1].len), (2, 1));
        let p = Pattern::new(&a.parse("xaxx").unwrap()).unwrap();
        assert_eq!(factorize(heap, &p).unwrap().len(), 1);
    }

    #[test]
    fn factorization_of_absent_first_symbol() {
        let a = crate::pstring::Alphabet::new("ab", "x").unwrap();
        let index = Index::from_strings(a.clone(), &[a.parse("ax").unwrap()]).unwrap();
        let p = Pattern::new(&a.parse("b").unwrap()).unwrap();
        assert!(factorize(index.heap(), &p).is_none());
        assert_eq!(index.query_str("bx", false).unwrap().pocc(), 0);
    }

    #[test]
    fn rejects_bad_patterns() {
        let index = example();
        assert!(matches!(index.query(&[], false), Err(Error::EmptyPattern)));
        assert!(index.query(&[Symbol::Static(5)], false).is_err());
        assert!(index.query(&[Symbol::Param(4)], false).is_err());
        assert!(index.query_str("ab", false).is_err());
    }

    #[test]
    fn case_one_hits_verify_and_match_full_scan() {
        let index = example();
        let (heap, pcst) = (index.heap(), index.pcst());
        for u in heap.ids().skip(1) {
            let s = heap.node_string(u);
            let r = index.query(&s, false).unwrap();
            let p = Pattern::new(&s).unwrap();
            let scan: Vec<PcstNodeId> = heap
                .ids()
                .filter(|&i| heap.is_descendant(u, heap.mrp(i)) || heap.is_descendant(u, i))
                .map(PcstNodeId::from)
                .collect();
            assert_eq!(r.pcst_hits, scan);
            assert!(r.pcst_hits.iter().all(|&c| verify_candidate(pcst, c, &p)));
        }
    }
}
