use proptest::prelude::*;

use super::*;
use crate::fixtures::running_example;
use crate::ids::PcstNodeId;
use crate::pcst::Pcst;
use crate::pstring::{canonicalize, Alphabet, PString, Symbol};
use crate::trie::InputTrie;

fn build_both(trie: &InputTrie) -> (Pcst, Heap, Heap) {
    let pcst = Pcst::build(trie);
    let pi = trie.alphabet().pi_len();
    let (fast, _) = Heap::build_fast(&pcst, pi).unwrap();
    let naive = Heap::build_naive(&pcst, pi).unwrap();
    (pcst, fast, naive)
}

fn render(a: &Alphabet, heap: &Heap, id: u32) -> String {
    a.render(&heap.node_string(HeapNodeId::new(id)))
}

#[test]
fn running_example_heap() {
    let trie = running_example();
    let a = trie.alphabet();
    let (_, fast, naive) = build_both(&trie);
    assert_eq!(fast, naive);
    let strings: Vec<String> = fast.ids().map(|v| a.render(&fast.node_string(v))).collect();
    assert_eq!(
        strings,
        vec!["", "x", "xx", "xy", "xxx", "a", "xyz", "ax", "axx", "xa", "xay", "axy", "xax", "xaxx", "xaxy"]
    );
    let pointers: Vec<(u32, u32)> = fast
        .ids()
        .filter(|&v| fast.mrp(v) != v)
        .map(|v| (v.get(), fast.mrp(v).get()))
        .collect();
    assert_eq!(pointers, vec![(6, 9), (8, 12), (10, 14), (13, 15)]);
}

#[test]
fn running_example_links() {
    let trie = running_example();
    let a = trie.alphabet();
    let (_, heap, _) = build_both(&trie);
    let incoming = |id: u32| heap.get(HeapNodeId::new(id)).incoming_link().unwrap();
    assert_eq!(incoming(2), (heap.root(), LinkKey::Fresh));
    let (src, key) = incoming(10);
    assert_eq!((render(a, &heap, src.get()), key), ("a".to_string(), LinkKey::Fresh));
    let (src, key) = incoming(11);
    assert_eq!((render(a, &heap, src.get()), key), ("ax".to_string(), LinkKey::Fresh));
    let (src, key) = incoming(6);
    assert_eq!((src, key), (heap.root(), LinkKey::Sym(a.symbol('a').unwrap())));
}

#[test]
fn static_only_input() {
    let a = Alphabet::new("ab", "").unwrap();
    let strings: Vec<PString> = ["abba", "baab", "aaa"].iter().map(|s| a.parse(s).unwrap()).collect();
    let trie = InputTrie::from_strings(a, &strings).unwrap();
    let (pcst, fast, naive) = build_both(&trie);
    assert_eq!(fast, naive);
    assert_eq!(pcst.len(), trie.len());
    for v in fast.ids() {
        assert!(fast.node_string(v).iter().all(|s| s.is_static()));
    }
}

#[test]
fn preorder_intervals_agree_with_parents() {
    let trie = running_example();
    let (_, heap, _) = build_both(&trie);
    for u in heap.ids() {
        for v in heap.ids() {
            let by_walk = heap.ancestors(v).any(|w| w == u);
            assert_eq!(heap.is_descendant(u, v), by_walk, "{u} {v}");
        }
        let subtree = heap.subtree(u);
        assert_eq!(subtree[0], u);
        assert!(subtree.iter().all(|&v| heap.is_descendant(u, v)));
    }
}

/// Two pCST siblings whose first heap extension has no suffix link: the
/// second one sits three levels below its parent's heap node.
#[test]
fn sibling_extension_without_suffix_link() {
    let a = Alphabet::new("ab", "xyzu").unwrap();
    let edges = "2 1 y,3 2 z,4 3 b,5 1 z,6 5 y,7 6 b,8 3 z,9 7 b,10 8 b,11 9 z,12 7 x,13 12 y,\
                 14 12 a,15 1 u,16 9 x,17 10 y,18 6 a,19 2 u,20 7 y,21 10 u";
    let records: Vec<(u32, u32, Symbol)> = edges
        .split(',')
        .map(|e| {
            let f: Vec<&str> = e.split_whitespace().collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), a.symbol(f[2].chars().next().unwrap()).unwrap())
        })
        .collect();
    let trie = InputTrie::from_parts(a.clone(), &records, None).unwrap();
    let pcst = Pcst::build(&trie);
    let (fast, stats) = Heap::build_fast(&pcst, 4).unwrap();
    assert_eq!(fast, Heap::build_naive(&pcst, 4).unwrap());
    assert!(stats.descents >= 1);
    let (v11, v12) = (HeapNodeId::new(11), HeapNodeId::new(12));
    assert_eq!(render(&a, &fast, 11), "xbyy");
    assert_eq!(render(&a, &fast, 12), "xbyyz");
    assert_eq!(fast.get(v11).incoming_link(), None);
    let parent = HeapNodeId::from(pcst.parent(PcstNodeId::from(v12)).unwrap());
    assert_eq!(fast.depth(v12), fast.depth(parent) + 3);
}

fn instance() -> impl Strategy<Value = InputTrie> {
    (1usize..=2, 0usize..=3).prop_flat_map(|(sigma, pi)| {
        let letters: Vec<char> = "ab".chars().take(sigma).chain("xyz".chars().take(pi)).collect();
        let word = proptest::collection::vec(proptest::sample::select(letters), 1..=8)
            .prop_map(|cs| cs.into_iter().collect::<String>());
        proptest::collection::vec(word, 1..=8).prop_map(move |words| {
            let a = Alphabet::new(&"ab"[..sigma], &"xyz"[..pi]).unwrap();
            let strings: Vec<PString> = words.iter().map(|w| a.parse(w).unwrap()).collect();
            InputTrie::from_strings(a, &strings).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn fast_equals_naive(trie in instance()) {
        let (pcst, fast, naive) = build_both(&trie);
        prop_assert_eq!(&fast, &naive);
        for c in pcst.bfs_order() {
            let i = HeapNodeId::from(c);
            let (full, _) = canonicalize(&pcst.node_string(c));
            let own = fast.node_string(i);
            prop_assert_eq!(&full[..own.len()], &own[..]);
            prop_assert_eq!(fast.mrp(i), fast.mrp_oracle(&pcst, i));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fast_equals_naive_on_random_tries(n in 2usize..300, seed in any::<u64>(), sigma in 0usize..=2, pi in 1usize..=4) {
        let trie = crate::oracle::random_trie(n, sigma, pi, seed).unwrap();
        let (pcst, fast, naive) = build_both(&trie);
        prop_assert_eq!(&fast, &naive);
        for v in fast.ids() {
            prop_assert_eq!(fast.mrp(v), fast.mrp_oracle(&pcst, v));
        }
    }
}
