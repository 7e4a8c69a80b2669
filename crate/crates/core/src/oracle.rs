//! Brute-force reference answers and the randomized cross-check harness.
//!
//! The oracles only use p-strings and the input trie. The harness builds
//! random instances, runs both heap constructions and compares everything
//! against the oracles, shrinking any failing instance before reporting it.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::heap::Heap;
use crate::ids::{HeapNodeId, TrieNodeId};
use crate::index::{Builder, Index};
use crate::invariants;
use crate::matcher::{factorize, passes_chain, Pattern};
use crate::pcst::Pcst;
use crate::pstring::{canonicalize, p_match, reverse, Alphabet, PString, Symbol};
use crate::trie::InputTrie;

const SIGMA_LETTERS: &str = "abcdefghij";
const PI_LETTERS: &str = "xyzuvwtsrq";

/// Trie nodes whose string starts with a p-match of `p`, by full scan.
pub fn oracle_match(trie: &InputTrie, p: &[Symbol]) -> Vec<TrieNodeId> {
    scan(trie, p, p_match)
}

/// Trie nodes whose string starts with exactly `p`.
pub fn oracle_exact_match(trie: &InputTrie, p: &[Symbol]) -> Vec<TrieNodeId> {
    scan(trie, p, |x, y| x == y)
}

fn scan(trie: &InputTrie, p: &[Symbol], same: impl Fn(&[Symbol], &[Symbol]) -> bool) -> Vec<TrieNodeId> {
    let mut buf = Vec::with_capacity(p.len());
    trie.ids()
        .filter(|&v| {
            buf.clear();
            buf.extend(trie.path_symbols(v).take(p.len()));
            buf.len() == p.len() && same(&buf, p)
        })
        .collect()
}

/// Trie nodes grouped by the canonical form of their reversed string.
/// Groups are sorted, and ordered by their smallest member.
pub fn oracle_pcst(trie: &InputTrie) -> Vec<Vec<TrieNodeId>> {
    let mut groups: BTreeMap<PString, Vec<TrieNodeId>> = BTreeMap::new();
    for v in trie.ids() {
        let w = trie.node_string(v).expect("node in range");
        groups.entry(canonicalize(&reverse(&w)).0).or_default().push(v);
    }
    let mut out: Vec<Vec<TrieNodeId>> = groups.into_values().collect();
    out.sort();
    out
}

/// The origin partition of a built pCST, in the same shape as [`oracle_pcst`].
pub fn pcst_partition(pcst: &Pcst) -> Vec<Vec<TrieNodeId>> {
    let mut out: Vec<Vec<TrieNodeId>> = pcst.bfs_order().map(|c| pcst.get(c).origins().to_vec()).collect();
    out.sort();
    out
}

/// Size limits for random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InstanceLimits {
    pub sigma_max: usize,
    pub pi_max: usize,
    pub strings_max: usize,
    pub len_max: usize,
}

impl Default for InstanceLimits {
    fn default() -> Self {
        InstanceLimits { sigma_max: 1, pi_max: 2, strings_max: 6, len_max: 6 }
    }
}

/// The alphabet with the first `sigma` and `pi` letters of the fixed pools.
pub fn letters(sigma: usize, pi: usize) -> Alphabet {
    assert!(sigma <= SIGMA_LETTERS.len() && pi <= PI_LETTERS.len(), "alphabet too large");
    Alphabet::new(&SIGMA_LETTERS[..sigma], &PI_LETTERS[..pi]).expect("fixed letters are valid")
}

/// A random set of distinct strings. Alphabet sizes are drawn up to the
/// limits, with at least one symbol overall.
pub fn random_strings(rng: &mut impl Rng, limits: &InstanceLimits) -> (Alphabet, Vec<PString>) {
    assert!(limits.sigma_max + limits.pi_max > 0 && limits.strings_max > 0 && limits.len_max > 0);
    let pi = rng.gen_range(0..=limits.pi_max);
    let sigma = rng.gen_range(usize::from(pi == 0)..=limits.sigma_max.max(usize::from(pi == 0)));
    let alphabet = letters(sigma, pi);
    let symbols: Vec<Symbol> = alphabet.symbols().collect();
    let count = rng.gen_range(1..=limits.strings_max);
    let mut strings: Vec<PString> = Vec::with_capacity(count);
    for _ in 0..count {
        let len = rng.gen_range(1..=limits.len_max);
        let w: PString = (0..len).map(|_| *symbols.choose(rng).unwrap()).collect();
        // Duplicates add nothing to the trie.
        if !strings.contains(&w) {
            strings.push(w);
        }
    }
    (alphabet, strings)
}

/// A random trie with `n` nodes: each new node hangs below a uniformly
/// chosen earlier node under an unused label.
pub fn random_trie(n: usize, sigma: usize, pi: usize, seed: u64) -> Result<InputTrie> {
    let alphabet = letters(sigma, pi);
    let symbols: Vec<Symbol> = alphabet.symbols().collect();
    assert!(!symbols.is_empty() && symbols.len() <= 64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used: Vec<u64> = vec![0];
    let mut records = Vec::with_capacity(n.saturating_sub(1));
    while used.len() < n {
        let parent = rng.gen_range(0..used.len());
        let k = rng.gen_range(0..symbols.len());
        if used[parent] & (1 << k) != 0 {
            continue;
        }
        used[parent] |= 1 << k;
        used.push(0);
        records.push((used.len() as u32, parent as u32 + 1, symbols[k]));
    }
    InputTrie::from_parts(alphabet, &records, None)
}

/// Deliberate corruption, to show the harness catches real bugs.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Points the last node's maximal reach pointer at the root.
    CorruptMrp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub samples: usize,
    pub seed: u64,
    pub limits: InstanceLimits,
    /// Every pattern over the instance alphabet up to this length is queried.
    pub pattern_len_max: usize,
    /// Compare against exact matching instead of p-matching.
    pub exact: bool,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            samples: 100,
            seed: 1,
            limits: InstanceLimits::default(),
            pattern_len_max: 4,
            exact: false,
            fault: None,
        }
    }
}

/// A failing instance after shrinking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Index of the instance within the run.
    pub instance: usize,
    pub alphabet: Alphabet,
    pub strings: Vec<PString>,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub instances: usize,
    pub patterns: u64,
    /// Queries answered through the factorized path.
    pub factorized_queries: u64,
    /// Candidates that passed the reach-pointer screen but not the direct check.
    pub verify_rejections: u64,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {} instances, {} patterns, {} factorized, {} screen rejections, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.instances,
            self.patterns,
            self.factorized_queries,
            self.verify_rejections,
            self.failures.len()
        )?;
        for fail in &self.failures {
            let a = &fail.alphabet;
            let sigma: String = a.sigma().iter().collect();
            let pi: String = a.pi().iter().collect();
            let strings: Vec<String> = fail.strings.iter().map(|w| a.render(w)).collect();
            writeln!(f, "instance {}: {}", fail.instance, fail.reason)?;
            writeln!(f, "  sigma: {sigma}  pi: {pi}  strings: {}", strings.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Counts {
    patterns: u64,
    factorized: u64,
    rejections: u64,
}

/// Runs the randomized comparison. Instances are independent and checked
/// in parallel; the report does not depend on scheduling.
pub fn cross_check(config: &CheckConfig) -> Report {
    let outcomes: Vec<(usize, std::result::Result<Counts, (Alphabet, Vec<PString>, String)>)> = (0..config.samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(k as u64);
            let (alphabet, strings) = random_strings(&mut rng, &config.limits);
            let outcome = check_instance(&alphabet, &strings, config).map_err(|reason| {
                let (strings, reason) = shrink(&alphabet, strings, reason, config);
                (alphabet, strings, reason)
            });
            (k, outcome)
        })
        .collect();

    let mut report = Report { instances: config.samples, ..Report::default() };
    for (instance, outcome) in outcomes {
        match outcome {
            Ok(c) => {
                report.patterns += c.patterns;
                report.factorized_queries += c.factorized;
                report.verify_rejections += c.rejections;
            }
            Err((alphabet, strings, reason)) => report.failures.push(Failure { instance, alphabet, strings, reason }),
        }
    }
    report
}

/// Drops whole strings, then trailing symbols, while the instance still fails.
fn shrink(alphabet: &Alphabet, mut strings: Vec<PString>, mut reason: String, config: &CheckConfig) -> (Vec<PString>, String) {
    loop {
        let mut progress = false;
        let mut k = 0;
        while k < strings.len() && strings.len() > 1 {
            let mut fewer = strings.clone();
            fewer.remove(k);
            match check_instance(alphabet, &fewer, config) {
                Err(r) => {
                    strings = fewer;
                    reason = r;
                    progress = true;
                }
                Ok(_) => k += 1,
            }
        }
        for k in 0..strings.len() {
            while strings[k].len() > 1 {
                let mut shorter = strings.clone();
                shorter[k] = strings[k][..strings[k].len() - 1].into();
                match check_instance(alphabet, &shorter, config) {
                    Err(r) => {
                        strings = shorter;
                        reason = r;
                        progress = true;
                    }
                    Ok(_) => break,
                }
            }
        }
        if !progress {
            return (strings, reason);
        }
    }
}

fn check_instance(alphabet: &Alphabet, strings: &[PString], config: &CheckConfig) -> std::result::Result<Counts, String> {
    let err = |e: crate::error::Error| e.to_string();
    let trie = InputTrie::from_strings(alphabet.clone(), strings).map_err(err)?;
    let oracle_classes = oracle_pcst(&trie);
    let (mut index, _) = Index::build(trie.clone(), Builder::Fast).map_err(|e| format!("fast build: {e}"))?;
    let (naive, _) = Index::build(trie, Builder::Naive).map_err(|e| format!("naive build: {e}"))?;
    if let Some(Fault::CorruptMrp) = config.fault {
        let last = HeapNodeId::new(index.heap.len() as u32);
        index.heap.set_mrp(last, index.heap.root());
    }

    for v in index.heap.ids() {
        let expected = index.heap.mrp_oracle(&index.pcst, v);
        if index.heap.mrp(v) != expected {
            return Err(format!("mrp({v}) = {} but the oracle gives {expected}", index.heap.mrp(v)));
        }
    }
    if index.heap != naive.heap {
        let diff = index
            .heap
            .ids()
            .find(|&v| index.heap.get(v) != naive.heap.get(v))
            .map_or("the preorder".to_string(), |v| format!("node {v}"));
        return Err(format!("fast and naive heaps differ at {diff}"));
    }
    if pcst_partition(&index.pcst) != oracle_classes {
        return Err("pcst partition differs from the oracle".into());
    }
    if let Some(v) = invariants::check_index(&index).first() {
        return Err(format!("invariant violated: {v}"));
    }

    let symbols: Vec<Symbol> = alphabet.symbols().collect();
    let mut counts = Counts::default();
    let mut pattern = Vec::new();
    for len in 1..=config.pattern_len_max {
        let total = symbols.len().pow(len as u32);
        for mut code in 0..total {
            pattern.clear();
            for _ in 0..len {
                pattern.push(symbols[code % symbols.len()]);
                code /= symbols.len();
            }
            counts.patterns += 1;
            let got = index.query(&pattern, false).map_err(err)?;
            let expected = if config.exact {
                oracle_exact_match(&index.trie, &pattern)
            } else {
                oracle_match(&index.trie, &pattern)
            };
            if got.trie_hits != expected {
                return Err(format!(
                    "query {:?}: got {} nodes, oracle {}",
                    alphabet.render(&pattern),
                    got.trie_hits.len(),
                    expected.len()
                ));
            }
            counts.rejections += got.verify_rejections as u64;
            if got.factors > 1 {
                counts.factorized += 1;
                check_necessity(&index.heap, &index.pcst, &pattern, &got.pcst_hits)
                    .map_err(|v| format!("query {:?}: occurrence at pcst node {v} fails the screen", alphabet.render(&pattern)))?;
            }
        }
    }
    Ok(counts)
}

/// Every true occurrence of a factorized pattern passes the reach-pointer screen.
fn check_necessity(heap: &Heap, pcst: &Pcst, pattern: &[Symbol], hits: &[crate::ids::PcstNodeId]) -> std::result::Result<(), u32> {
    let p = Pattern::new(pattern).expect("non-empty");
    let factors = factorize(heap, &p).expect("factorized query");
    for &c in hits {
        if !passes_chain(heap, pcst, &factors, c) {
            return Err(c.get());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::running_example;

    fn render_hits(trie: &InputTrie, hits: &[TrieNodeId]) -> Vec<String> {
        let mut out: Vec<String> = hits.iter().map(|&v| trie.alphabet().render(&trie.node_string(v).unwrap())).collect();
        out.sort();
        out
    }

    #[test]
    fn oracle_examples() {
        let trie = running_example();
        let a = trie.alphabet();
        assert_eq!(render_hits(&trie, &oracle_match(&trie, &a.parse("azy").unwrap())), ["axz", "ayxz"]);
        assert_eq!(oracle_match(&trie, &a.parse("xax").unwrap()).len(), 4);
        assert!(oracle_match(&trie, &a.parse("xaxxxx").unwrap()).is_empty());
        assert_eq!(render_hits(&trie, &oracle_exact_match(&trie, &a.parse("ax").unwrap())), ["axx", "axxx", "axz"]);
    }

    #[test]
    fn oracle_partition_examples() {
        let trie = running_example();
        let groups = oracle_pcst(&trie);
        assert_eq!(groups.len(), 15);
        let a = trie.alphabet();
        let yaxx = groups
            .iter()
            .find(|g| g.iter().any(|&v| a.render(&trie.node_string(v).unwrap()) == "zaxx"))
            .unwrap();
        assert_eq!(render_hits(&trie, yaxx), ["xayy", "yaxx", "zaxx"]);

        let b = letters(2, 0);
        let single = InputTrie::from_strings(b.clone(), &[b.parse("abba").unwrap()]).unwrap();
        assert!(oracle_pcst(&single).iter().all(|g| g.len() == 1));
    }

    #[test]
    fn random_trie_shape() {
        let t = random_trie(500, 2, 2, 7).unwrap();
        assert_eq!(t.len(), 500);
        assert_eq!(t, random_trie(500, 2, 2, 7).unwrap());
    }

    #[test]
    fn small_default_run_passes() {
        let report = cross_check(&CheckConfig { samples: 20, ..CheckConfig::default() });
        assert!(report.passed(), "{report}");
        assert_eq!(report.instances, 20);
        assert!(report.patterns > 0);
    }

    #[test]
    fn deterministic_reports() {
        let config = CheckConfig { samples: 10, seed: 42, ..CheckConfig::default() };
        assert_eq!(cross_check(&config), cross_check(&config));
    }

    #[test]
    fn injected_fault_is_reported_and_shrunk() {
        let config = CheckConfig { samples: 5, fault: Some(Fault::CorruptMrp), ..CheckConfig::default() };
        let report = cross_check(&config);
        assert_eq!(report.failures.len(), 5);
        for f in &report.failures {
            assert_eq!(f.strings.len(), 1, "{report}");
            assert!(f.reason.contains("mrp") || f.reason.contains("invariant"), "{}", f.reason);
        }
    }
}
