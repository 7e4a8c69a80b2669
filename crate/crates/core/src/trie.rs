//! The input common-suffix trie.
//!
//! Edges point towards the root and every node stands for the string read
//! from the node up to the root, so strings sharing a suffix share a path.
//! Nodes are numbered from 1 (the root) with every parent numbered before
//! its children; tries built from strings use BFS order with children
//! sorted by [`Symbol`] order.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::ids::{StringId, TrieNodeId};
use crate::pstring::{Alphabet, PString, Symbol};

pub const TRIE_HEADER: &str = "PPH-TRIE v1";
pub const STRINGS_HEADER: &str = "PPH-STRINGS v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrieNode {
    pub(crate) parent: Option<TrieNodeId>,
    pub(crate) label: Option<Symbol>,
    pub(crate) depth: u32,
    pub(crate) children: Vec<(Symbol, TrieNodeId)>,
}

impl TrieNode {
    pub fn parent(&self) -> Option<TrieNodeId> {
        self.parent
    }

    /// Label of the edge towards the parent: the first symbol of the node's string.
    pub fn label(&self) -> Option<Symbol> {
        self.label
    }

    pub fn depth(&self) -> usize {
        self.depth as usize
    }

    /// Children sorted by label.
    pub fn children(&self) -> &[(Symbol, TrieNodeId)] {
        &self.children
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputTrie {
    alphabet: Alphabet,
    nodes: Vec<TrieNode>,
    string_ends: Option<BTreeMap<TrieNodeId, Vec<StringId>>>,
}

impl InputTrie {
    /// Builds the trie of every suffix of the given strings.
    ///
    /// Duplicate strings are dropped with a warning; their string ids are
    /// simply never reported.
    pub fn from_strings(alphabet: Alphabet, strings: &[PString]) -> Result<Self> {
        // Scratch trie in insertion order, renumbered below.
        let mut scratch: Vec<BTreeMap<Symbol, usize>> = vec![BTreeMap::new()];
        let mut labels: Vec<Option<Symbol>> = vec![None];
        let mut ends: BTreeMap<usize, Vec<StringId>> = BTreeMap::new();
        for (k, w) in strings.iter().enumerate() {
            if w.is_empty() {
                return Err(Error::EmptyString);
            }
            if let Some(&bad) = w.iter().find(|&&s| !alphabet.contains(s)) {
                return Err(Error::Validation { line: None, msg: format!("symbol {bad:?} outside the alphabet") });
            }
            let mut cur = 0;
            for &c in w.iter().rev() {
                cur = match scratch[cur].get(&c) {
                    Some(&next) => next,
                    None => {
                        scratch.push(BTreeMap::new());
                        labels.push(Some(c));
                        let next = scratch.len() - 1;
                        scratch[cur].insert(c, next);
                        next
                    }
                };
            }
            let sid = StringId::from_index(k);
            let slot = ends.entry(cur).or_default();
            if slot.is_empty() {
                slot.push(sid);
            } else {
                log::warn!("string {} duplicates string {}; ignoring it", sid, slot[0]);
            }
        }

        let mut new_id = vec![0usize; scratch.len()];
        let mut nodes = Vec::with_capacity(scratch.len());
        let mut queue = VecDeque::from([(0usize, None::<TrieNodeId>, 0u32)]);
        while let Some((old, parent, depth)) = queue.pop_front() {
            let id = TrieNodeId::from_index(nodes.len());
            new_id[old] = nodes.len();
            nodes.push(TrieNode { parent, label: labels[old], depth, children: Vec::new() });
            if let Some(p) = parent {
                nodes[p.index()].children.push((labels[old].unwrap(), id));
            }
            for &child in scratch[old].values() {
                queue.push_back((child, Some(id), depth + 1));
            }
        }
        let string_ends = ends
            .into_iter()
            .map(|(old, sids)| (TrieNodeId::from_index(new_id[old]), sids))
            .collect();
        Ok(InputTrie { alphabet, nodes, string_ends: Some(string_ends) })
    }

    /// Builds a trie from `(id, parent, label)` records of non-root nodes,
    /// validating the trie properties. `ends` maps nodes to the strings that
    /// end there; `None` means no string-end information is available.
    pub fn from_parts(
        alphabet: Alphabet,
        records: &[(u32, u32, Symbol)],
        ends: Option<Vec<(u32, u32)>>,
    ) -> Result<Self> {
        let located = records.iter().enumerate().map(|(k, &r)| (k + 1, r));
        Self::from_located(alphabet, located, ends.map(|e| e.into_iter().map(|x| (0, x)).collect()))
    }

    /// Like [`InputTrie::from_parts`] with a line number attached to every
    /// record for error reporting.
    pub(crate) fn from_located(
        alphabet: Alphabet,
        records: impl IntoIterator<Item = (usize, (u32, u32, Symbol))>,
        ends: Option<Vec<(usize, (u32, u32))>>,
    ) -> Result<Self> {
        let mut nodes = vec![TrieNode { parent: None, label: None, depth: 0, children: Vec::new() }];
        for (line, (id, parent, label)) in records {
            if id as usize != nodes.len() + 1 {
                return Err(Error::parse(line, format!("expected node id {}, found {id}", nodes.len() + 1)));
            }
            if parent == id {
                return Err(Error::parse(line, format!("node {id} is its own parent (cycle)")));
            }
            if parent == 0 || parent > id {
                return Err(Error::parse(line, format!("dangling parent {parent} for node {id}")));
            }
            if !alphabet.contains(label) {
                return Err(Error::parse(line, format!("label of node {id} is outside the alphabet")));
            }
            let pid = TrieNodeId::new(parent);
            let me = TrieNodeId::new(id);
            let siblings = &mut nodes[pid.index()].children;
            match siblings.binary_search_by_key(&label, |&(s, _)| s) {
                Ok(_) => {
                    return Err(Error::parse(
                        line,
                        format!("duplicate label {:?} among children of node {parent}", alphabet.char_of(label)),
                    ))
                }
                Err(pos) => siblings.insert(pos, (label, me)),
            }
            let depth = nodes[pid.index()].depth + 1;
            nodes.push(TrieNode { parent: Some(pid), label: Some(label), depth, children: Vec::new() });
        }
        let string_ends = match ends {
            None => None,
            Some(ends) => {
                let mut map: BTreeMap<TrieNodeId, Vec<StringId>> = BTreeMap::new();
                let mut seen = std::collections::HashSet::new();
                for (line, (node, sid)) in ends {
                    if node == 0 || node as usize > nodes.len() {
                        return Err(Error::parse(line, format!("string end at unknown node {node}")));
                    }
                    if node == 1 {
                        return Err(Error::parse(line, "string end at the root"));
                    }
                    if sid == 0 || !seen.insert(sid) {
                        return Err(Error::parse(line, format!("invalid or repeated string id {sid}")));
                    }
                    map.entry(TrieNodeId::new(node)).or_default().push(StringId::new(sid));
                }
                map.values_mut().for_each(|v| v.sort());
                Some(map)
            }
        };
        Ok(InputTrie { alphabet, nodes, string_ends })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of nodes, root included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> TrieNodeId {
        TrieNodeId::ROOT
    }

    pub fn ids(&self) -> impl Iterator<Item = TrieNodeId> {
        (0..self.nodes.len()).map(TrieNodeId::from_index)
    }

    pub fn node(&self, id: TrieNodeId) -> Result<&TrieNode> {
        self.nodes.get(id.index()).ok_or(Error::InvalidNode(id.get()))
    }

    pub(crate) fn get(&self, id: TrieNodeId) -> &TrieNode {
        &self.nodes[id.index()]
    }

    pub fn child(&self, id: TrieNodeId, label: Symbol) -> Option<TrieNodeId> {
        let children = &self.get(id).children;
        children.binary_search_by_key(&label, |&(s, _)| s).ok().map(|k| children[k].1)
    }

    /// The node's string, read from the node towards the root.
    pub fn node_string(&self, id: TrieNodeId) -> Result<PString> {
        self.node(id)?;
        Ok(self.path_symbols(id).collect())
    }

    /// Labels from `id` up to the root.
    pub(crate) fn path_symbols(&self, id: TrieNodeId) -> impl Iterator<Item = Symbol> + '_ {
        let mut cur = Some(id);
        std::iter::from_fn(move || {
            let node = self.get(cur?);
            cur = node.parent;
            node.label
        })
    }

    pub fn has_string_ends(&self) -> bool {
        self.string_ends.is_some()
    }

    /// Nodes where input strings end, with their string ids.
    pub fn string_ends(&self) -> Option<&BTreeMap<TrieNodeId, Vec<StringId>>> {
        self.string_ends.as_ref()
    }

    /// Every `(string, offset)` whose suffix starting at 1-based `offset`
    /// is this node's string, sorted by string id. The root represents the
    /// empty string and expands to nothing.
    pub fn expand_occurrence(&self, id: TrieNodeId) -> Result<Vec<(StringId, usize)>> {
        let depth = self.node(id)?.depth as usize;
        let ends = self.string_ends.as_ref().ok_or(Error::ExpansionUnavailable)?;
        let mut out = Vec::new();
        if depth == 0 {
            return Ok(out);
        }
        let mut stack = vec![id];
        while let Some(v) = stack.pop() {
            if let Some(sids) = ends.get(&v) {
                let len = self.get(v).depth as usize;
                out.extend(sids.iter().map(|&s| (s, len - depth + 1)));
            }
            stack.extend(self.get(v).children.iter().map(|&(_, c)| c));
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(TRIE_HEADER);
        out.push('\n');
        write_alphabet(&mut out, &self.alphabet);
        self.write_records(&mut out);
        out
    }

    /// Node and string-end lines, shared with the index format.
    pub(crate) fn write_records(&self, out: &mut String) {
        for id in self.ids().skip(1) {
            let node = self.get(id);
            let _ = writeln!(out, "{} {} {}", id, node.parent.unwrap(), self.alphabet.char_of(node.label.unwrap()));
        }
        if let Some(ends) = &self.string_ends {
            let mut pairs: Vec<(StringId, TrieNodeId)> =
                ends.iter().flat_map(|(&v, sids)| sids.iter().map(move |&s| (s, v))).collect();
            pairs.sort_unstable();
            for (sid, v) in pairs {
                let _ = writeln!(out, "end {v} {sid}");
            }
        }
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
        expect_header(&mut lines, TRIE_HEADER)?;
        let alphabet = read_alphabet(&mut lines)?;
        let mut records = Vec::new();
        let mut ends = Vec::new();
        for (line, content) in lines {
            if content.trim().is_empty() {
                continue;
            }
            parse_trie_record(&alphabet, line, content, &mut records, &mut ends)?;
        }
        let ends = if ends.is_empty() { None } else { Some(ends) };
        Self::from_located(alphabet, records, ends)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }
}

/// One line of the trie section: `<id> <parent> <label>` or `end <node> <string>`.
pub(crate) fn parse_trie_record(
    alphabet: &Alphabet,
    line: usize,
    content: &str,
    records: &mut Vec<(usize, (u32, u32, Symbol))>,
    ends: &mut Vec<(usize, (u32, u32))>,
) -> Result<()> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    match fields.as_slice() {
        ["end", node, sid] => {
            ends.push((line, (parse_num(line, node)?, parse_num(line, sid)?)));
        }
        [id, parent, label] => {
            let label = parse_symbol(alphabet, line, label)?;
            records.push((line, (parse_num(line, id)?, parse_num(line, parent)?, label)));
        }
        _ => return Err(Error::parse(line, format!("malformed trie line {content:?}"))),
    }
    Ok(())
}

pub(crate) fn parse_num(line: usize, field: &str) -> Result<u32> {
    field.parse().map_err(|_| Error::parse(line, format!("expected a number, found {field:?}")))
}

pub(crate) fn parse_symbol(alphabet: &Alphabet, line: usize, field: &str) -> Result<Symbol> {
    let mut chars = field.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => alphabet.symbol(c).map_err(|e| Error::parse(line, e.to_string())),
        _ => Err(Error::parse(line, format!("expected a single symbol, found {field:?}"))),
    }
}

pub(crate) fn expect_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, header: &str) -> Result<()> {
    let (_, first) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let first = first.trim_end();
    if first == header {
        return Ok(());
    }
    let kind = header.split(' ').next().unwrap();
    if first.starts_with(kind) {
        Err(Error::Version(first.to_string()))
    } else {
        Err(Error::parse(1, format!("expected header {header:?}, found {first:?}")))
    }
}

pub(crate) fn write_alphabet(out: &mut String, alphabet: &Alphabet) {
    let _ = writeln!(out, "sigma: {}", alphabet.sigma().iter().collect::<String>());
    let _ = writeln!(out, "pi: {}", alphabet.pi().iter().collect::<String>());
}

pub(crate) fn read_alphabet<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<Alphabet> {
    let mut field = |name: &str| -> Result<(usize, String)> {
        let (line, content) = lines.next().ok_or_else(|| Error::parse(0, format!("missing {name}: line")))?;
        let rest = content
            .strip_prefix(name)
            .and_then(|r| r.strip_prefix(':'))
            .ok_or_else(|| Error::parse(line, format!("expected \"{name}:\" line")))?;
        Ok((line, rest.to_string()))
    };
    let (line, sigma) = field("sigma")?;
    let (_, pi) = field("pi")?;
    Alphabet::new(&sigma, &pi).map_err(|e| Error::parse(line, e.to_string()))
}

/// Parses a strings file: header, `sigma:`/`pi:` lines, then one string per
/// line. Blank lines are skipped.
pub fn parse_strings(text: &str) -> Result<(Alphabet, Vec<PString>)> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    expect_header(&mut lines, STRINGS_HEADER)?;
    let alphabet = read_alphabet(&mut lines)?;
    let mut strings = Vec::new();
    for (line, content) in lines {
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        strings.push(alphabet.parse(content).map_err(|e| Error::parse(line, e.to_string()))?);
    }
    Ok((alphabet, strings))
}

pub fn strings_to_text(alphabet: &Alphabet, strings: &[PString]) -> String {
    let mut out = String::from(STRINGS_HEADER);
    out.push('\n');
    write_alphabet(&mut out, alphabet);
    for w in strings {
        out.push_str(&alphabet.render(w));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{running_example, RUNNING_EXAMPLE};

    fn suffix_set(strings: &[&str]) -> std::collections::BTreeSet<String> {
        strings.iter().flat_map(|w| (0..w.len()).map(move |i| w[i..].to_string())).collect()
    }

    #[test]
    fn running_example_has_one_node_per_distinct_suffix() {
        let trie = running_example();
        assert_eq!(suffix_set(RUNNING_EXAMPLE).len() + 1, 26);
        assert_eq!(trie.len(), 26);
        let strings: std::collections::BTreeSet<String> =
            trie.ids().map(|v| trie.alphabet().render(&trie.node_string(v).unwrap())).collect();
        let mut expected = suffix_set(RUNNING_EXAMPLE);
        expected.insert(String::new());
        assert_eq!(strings, expected);
    }

    #[test]
    fn small_inputs() {
        let a = Alphabet::new("ab", "").unwrap();
        let trie = InputTrie::from_strings(a.clone(), &[a.parse("ab").unwrap()]).unwrap();
        let strings: Vec<String> = trie.ids().map(|v| a.render(&trie.node_string(v).unwrap())).collect();
        assert_eq!(strings, vec!["", "b", "ab"]);

        let a = Alphabet::new("", "xy").unwrap();
        let w = [a.parse("xy").unwrap(), a.parse("y").unwrap()];
        let trie = InputTrie::from_strings(a.clone(), &w).unwrap();
        assert_eq!(trie.len(), 3);
        let y = trie.child(trie.root(), a.symbol('y').unwrap()).unwrap();
        assert_eq!(trie.string_ends().unwrap()[&y], vec![StringId::new(2)]);
    }

    #[test]
    fn rejects_empty_strings() {
        let a = Alphabet::new("a", "x").unwrap();
        assert!(matches!(InputTrie::from_strings(a, &[PString::new()]), Err(Error::EmptyString)));
    }

    #[test]
    fn duplicates_are_dropped() {
        let a = Alphabet::new("a", "x").unwrap();
        let w = [a.parse("ax").unwrap(), a.parse("ax").unwrap()];
        let trie = InputTrie::from_strings(a, &w).unwrap();
        let ends: Vec<_> = trie.string_ends().unwrap().values().flatten().copied().collect();
        assert_eq!(ends, vec![StringId::new(1)]);
    }

    #[test]
    fn bfs_numbering_and_parent_suffix_property() {
        let trie = running_example();
        for v in trie.ids().skip(1) {
            let node = trie.node(v).unwrap();
            let p = node.parent().unwrap();
            assert!(p < v);
            assert_eq!(node.depth(), trie.node(p).unwrap().depth() + 1);
            assert_eq!(&trie.node_string(v).unwrap()[1..], &trie.node_string(p).unwrap()[..]);
        }
        let depths: Vec<usize> = trie.ids().map(|v| trie.node(v).unwrap().depth()).collect();
        assert!(depths.windows(2).all(|w| w[0] <= w[1]));
    }

    fn find(trie: &InputTrie, s: &str) -> TrieNodeId {
        let target = trie.alphabet().parse(s).unwrap();
        trie.ids().find(|&v| trie.node_string(v).unwrap() == target).unwrap()
    }

    #[test]
    fn node_string_of_a_full_string() {
        let trie = running_example();
        let v = find(&trie, "yayxz");
        assert_eq!(trie.alphabet().render(&trie.node_string(v).unwrap()), "yayxz");
        assert!(trie.node_string(trie.root()).unwrap().is_empty());
        assert!(matches!(trie.node_string(TrieNodeId::new(99)), Err(Error::InvalidNode(99))));
    }

    #[test]
    fn expansion() {
        let trie = running_example();
        let sid = |k| StringId::new(k);
        assert_eq!(trie.expand_occurrence(find(&trie, "axz")).unwrap(), vec![(sid(10), 2)]);
        // Every string ending in the parameter x.
        assert_eq!(
            trie.expand_occurrence(find(&trie, "x")).unwrap(),
            vec![(sid(1), 5), (sid(2), 4), (sid(3), 4), (sid(4), 3)]
        );
        assert!(trie.expand_occurrence(trie.root()).unwrap().is_empty());
        for v in trie.ids() {
            let s = trie.node_string(v).unwrap();
            for (w, beta) in trie.expand_occurrence(v).unwrap() {
                let full = trie.alphabet().parse(RUNNING_EXAMPLE[w.index()]).unwrap();
                assert_eq!(&full[beta - 1..], &s[..]);
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let trie = running_example();
        let text = trie.to_text();
        let back = InputTrie::from_text(&text).unwrap();
        assert_eq!(back, trie);
        assert_eq!(back.to_text(), text);

        let root_only = InputTrie::from_text("PPH-TRIE v1\nsigma: a\npi: x\n").unwrap();
        assert_eq!(root_only.len(), 1);
        assert!(!root_only.has_string_ends());
        assert!(matches!(root_only.expand_occurrence(root_only.root()), Err(Error::ExpansionUnavailable)));
    }

    #[test]
    fn text_errors() {
        let base = "PPH-TRIE v1\nsigma: a\npi: xy\n";
        let bad = |body: &str| InputTrie::from_text(&format!("{base}{body}")).unwrap_err();
        assert!(matches!(bad("2 1 x\n3 1 x\n"), Error::Parse { line: 5, .. }));
        assert!(matches!(bad("2 5 x\n"), Error::Parse { line: 4, .. }));
        assert!(matches!(bad("2 2 x\n"), Error::Parse { .. }));
        assert!(matches!(bad("2 1 q\n"), Error::Parse { .. }));
        assert!(matches!(bad("2 1\n"), Error::Parse { .. }));
        assert!(matches!(bad("3 1 x\n"), Error::Parse { .. }));
        assert!(matches!(bad("2 1 x\nend 7 1\n"), Error::Parse { .. }));
        assert!(matches!(InputTrie::from_text("PPH-TRIE v2\n"), Err(Error::Version(_))));
    }

    #[test]
    fn strings_file() {
        let text = "PPH-STRINGS v1\nsigma: a\npi: xyz\nxaxz\n\nyayxz\n";
        let (a, w) = parse_strings(text).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(parse_strings(&strings_to_text(&a, &w)).unwrap().1, w);
        assert!(matches!(parse_strings("PPH-STRINGS v1\nsigma: a\npi: x\nab\n"), Err(Error::Parse { line: 4, .. })));
    }
}
