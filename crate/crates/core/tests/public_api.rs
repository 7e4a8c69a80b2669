//! Round trips and matching through the public API only.

use pph::oracle::{letters, oracle_match, random_trie};
use pph::{canonicalize, p_match, Alphabet, Builder, Error, Index, InputTrie, Symbol};
use proptest::prelude::*;

fn example() -> Index {
    let (index, _) = Index::build(pph::fixtures::running_example(), Builder::Fast).unwrap();
    index
}

#[test]
fn save_and_load_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("example.idx");
    let index = example();
    index.save(&path).unwrap();
    let loaded = Index::load(&path).unwrap();
    assert_eq!(loaded.to_text(), index.to_text());
    assert_eq!(loaded.query_str("azy", false).unwrap().pocc(), 2);
}

#[test]
fn load_reports_missing_and_truncated_files() {
    let dir = tempfile::tempdir().unwrap();
    assert!(matches!(Index::load(dir.path().join("absent.idx")), Err(Error::Io { .. })));

    let path = dir.path().join("cut.idx");
    let text = example().to_text();
    std::fs::write(&path, &text[..text.len() / 2]).unwrap();
    assert!(Index::load(&path).is_err());
}

#[test]
fn trie_text_round_trip_builds_the_same_index() {
    let trie = pph::fixtures::running_example();
    let again = InputTrie::from_text(&trie.to_text()).unwrap();
    let (a, _) = Index::build(trie, Builder::Fast).unwrap();
    let (b, _) = Index::build(again, Builder::Naive).unwrap();
    assert_eq!(a.to_text(), b.to_text());
}

#[test]
fn string_level_helpers() {
    let alphabet = Alphabet::new("ab", "xy").unwrap();
    assert!(alphabet.p_match("xaxy", "yayx").unwrap());
    assert!(!alphabet.p_match("xaxy", "yaxx").unwrap());
    assert_eq!(alphabet.canonical("yayx").unwrap(), alphabet.canonical("xaxy").unwrap());
    assert!(alphabet.parse("xq").is_err());
}

fn small_trie() -> impl Strategy<Value = (usize, usize, usize, u64)> {
    (1usize..120, 0usize..3, 1usize..4, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn queries_agree_with_brute_force((n, sigma, pi, seed) in small_trie(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..5)) {
        let trie = random_trie(n, sigma, pi, seed).unwrap();
        let symbols: Vec<Symbol> = letters(sigma, pi).symbols().collect();
        let pattern: Vec<Symbol> = picks.iter().map(|k| *k.get(&symbols)).collect();
        let expected = oracle_match(&trie, &pattern);
        let (index, _) = Index::build(trie, Builder::Fast).unwrap();
        let mut got = index.query(&pattern, false).unwrap().trie_hits;
        got.sort_unstable();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn saved_indexes_reload_identically((n, sigma, pi, seed) in small_trie()) {
        let trie = random_trie(n, sigma, pi, seed).unwrap();
        let (index, _) = Index::build(trie, Builder::Fast).unwrap();
        let text = index.to_text();
        prop_assert_eq!(Index::from_text(&text).unwrap().to_text(), text);
    }

    #[test]
    fn canonical_forms_decide_p_match(x in prop::collection::vec(0usize..4, 0..10), y in prop::collection::vec(0usize..4, 0..10)) {
        let symbols: Vec<Symbol> = letters(1, 3).symbols().collect();
        let x: Vec<Symbol> = x.into_iter().map(|k| symbols[k]).collect();
        let y: Vec<Symbol> = y.into_iter().map(|k| symbols[k]).collect();
        prop_assert_eq!(p_match(&x, &y), canonicalize(&x).0 == canonicalize(&y).0);
    }
}
