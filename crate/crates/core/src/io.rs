//! The versioned text format of a complete index.
//!
//! ```text
//! PPH-INDEX v1
//! [alphabet]
//! sigma: a
//! pi: xyz
//! [trie]
//! <id> <parent> <label>          one per non-root node
//! end <node> <string>            one per input string, if known
//! [pcst]
//! <id> <parent> <label> <origin>...
//! [heap]
//! 1 - - <pre_in> <pre_out>
//! <id> <parent> <label> <pre_in> <pre_out>
//! [rsl]
//! <from> <key> <to>              key '*' stands for any absent parameter
//! [mrp]
//! <id> <mrp>
//! sha256: <hex digest of every preceding byte>
//! ```
//!
//! Loading checks the checksum, rebuilds every structure and runs the full
//! invariant suite, reporting the offending line.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::heap::{Heap, LinkKey};
use crate::ids::HeapNodeId;
use crate::index::Index;
use crate::invariants::{self, Location};
use crate::pcst::Pcst;
use crate::pstring::{Alphabet, Symbol};
use crate::trie::{self, InputTrie};

pub const INDEX_HEADER: &str = "PPH-INDEX v1";
const CHECKSUM_PREFIX: &str = "sha256: ";
const SECTIONS: [&str; 6] = ["[alphabet]", "[trie]", "[pcst]", "[heap]", "[rsl]", "[mrp]"];

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Index {
    /// Serializes the index. The output is a pure function of the index.
    pub fn to_text(&self) -> String {
        let a = self.alphabet();
        let sym = |s: Symbol| a.char_of(s);
        let mut out = String::new();
        let _ = writeln!(out, "{INDEX_HEADER}\n[alphabet]");
        trie::write_alphabet(&mut out, a);
        out.push_str("[trie]\n");
        self.trie.write_records(&mut out);

        out.push_str("[pcst]\n");
        for c in self.pcst.bfs_order().skip(1) {
            let node = self.pcst.get(c);
            let _ = write!(out, "{} {} {}", c, node.parent().unwrap(), sym(node.label().unwrap()));
            for o in node.origins() {
                let _ = write!(out, " {o}");
            }
            out.push('\n');
        }

        out.push_str("[heap]\n");
        let heap = &self.heap;
        for v in heap.ids() {
            let node = heap.get(v);
            let (lo, hi) = node.preorder_interval();
            match (node.parent(), node.label()) {
                (Some(p), Some(l)) => {
                    let _ = writeln!(out, "{v} {p} {} {lo} {hi}", sym(l));
                }
                _ => {
                    let _ = writeln!(out, "{v} - - {lo} {hi}");
                }
            }
        }
        out.push_str("[rsl]\n");
        for v in heap.ids() {
            for &(key, z) in heap.get(v).links() {
                let key = match key {
                    LinkKey::Sym(s) => sym(s),
                    LinkKey::Fresh => '*',
                };
                let _ = writeln!(out, "{v} {key} {z}");
            }
        }
        out.push_str("[mrp]\n");
        for v in heap.ids() {
            let _ = writeln!(out, "{v} {}", heap.mrp(v));
        }
        let sum = digest(out.as_bytes());
        let _ = writeln!(out, "{CHECKSUM_PREFIX}{sum}");
        out
    }

    /// Parses and fully re-validates an index.
    pub fn from_text(text: &str) -> Result<Index> {
        let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
        trie::expect_header(&mut lines, INDEX_HEADER)?;

        let body_end = text.trim_end_matches('\n').rfind('\n').map_or(0, |k| k + 1);
        let last = text[body_end..].trim_end();
        let stored = last
            .strip_prefix(CHECKSUM_PREFIX)
            .ok_or_else(|| Error::parse(text.lines().count(), "missing checksum line"))?;
        let computed = digest(&text.as_bytes()[..body_end]);
        if stored != computed {
            return Err(Error::Checksum { stored: stored.to_string(), computed });
        }
        let total = text[..body_end].lines().count();
        let body: Vec<(usize, &str)> = lines.take(total - 1).collect();
        let [alphabet_lines, trie_lines, pcst_lines, heap_lines, rsl_lines, mrp_lines] = split_sections(&body)?;

        let alphabet = trie::read_alphabet(&mut alphabet_lines.into_iter())?;
        let mut lines_of = LineMap::default();

        let mut records = Vec::new();
        let mut ends = Vec::new();
        for &(line, content) in &trie_lines {
            trie::parse_trie_record(&alphabet, line, content, &mut records, &mut ends)?;
        }
        for &(line, (id, _, _)) in &records {
            lines_of.trie.insert(id, line);
        }
        let ends = if ends.is_empty() { None } else { Some(ends) };
        let trie = InputTrie::from_located(alphabet.clone(), records, ends)?;

        let mut pcst_records = Vec::new();
        for &(line, content) in &pcst_lines {
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.len() < 4 {
                return Err(Error::parse(line, format!("malformed pcst line {content:?}")));
            }
            let id = trie::parse_num(line, fields[0])?;
            let parent = trie::parse_num(line, fields[1])?;
            let label = trie::parse_symbol(&alphabet, line, fields[2])?;
            let origins = fields[3..].iter().map(|f| trie::parse_num(line, f)).collect::<Result<Vec<_>>>()?;
            lines_of.pcst.insert(id, line);
            pcst_records.push((line, (id, parent, label, origins)));
        }
        let pcst = Pcst::from_located(trie.len(), pcst_records)?;

        let heap = parse_heap(&alphabet, &pcst, &heap_lines, &rsl_lines, &mrp_lines, &mut lines_of)?;
        let index = Index { trie, pcst, heap };
        if let Some(v) = invariants::check_index(&index).into_iter().next() {
            return Err(Error::Validation { line: lines_of.find(v.location), msg: v.to_string() });
        }
        Ok(index)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Index> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Index::from_text(&text)
    }
}

/// Splits the body into the six sections, in their fixed order, dropping
/// blank lines.
fn split_sections<'a>(body: &[(usize, &'a str)]) -> Result<[Vec<(usize, &'a str)>; 6]> {
    let mut out: [Vec<(usize, &str)>; 6] = Default::default();
    let mut current: Option<usize> = None;
    for &(line, content) in body {
        if let Some(k) = SECTIONS.iter().position(|s| *s == content.trim_end()) {
            if k != current.map_or(0, |c| c + 1) {
                return Err(Error::parse(line, format!("unexpected section {content}")));
            }
            current = Some(k);
        } else if !content.trim().is_empty() {
            let k = current.ok_or_else(|| Error::parse(line, "record before the first section"))?;
            out[k].push((line, content));
        }
    }
    if current != Some(SECTIONS.len() - 1) {
        let next = SECTIONS[current.map_or(0, |c| c + 1)];
        return Err(Error::parse(body.last().map_or(1, |l| l.0), format!("missing section {next}")));
    }
    Ok(out)
}

#[derive(Default)]
struct LineMap {
    trie: HashMap<u32, usize>,
    pcst: HashMap<u32, usize>,
    heap: HashMap<u32, usize>,
    rsl: HashMap<(u32, LinkKey), usize>,
    mrp: HashMap<u32, usize>,
}

impl LineMap {
    fn find(&self, location: Location) -> Option<usize> {
        match location {
            Location::Trie(v) => self.trie.get(&v.get()),
            Location::Pcst(c) => self.pcst.get(&c.get()),
            Location::Heap(v) => self.heap.get(&v.get()),
            Location::Link(v, k) => self.rsl.get(&(v.get(), k)),
            Location::Mrp(v) => self.mrp.get(&v.get()),
        }
        .copied()
    }
}

fn parse_heap(
    alphabet: &Alphabet,
    pcst: &Pcst,
    heap_lines: &[(usize, &str)],
    rsl_lines: &[(usize, &str)],
    mrp_lines: &[(usize, &str)],
    lines_of: &mut LineMap,
) -> Result<Heap> {
    let n = pcst.len();
    let node = |line: usize, field: &str| -> Result<HeapNodeId> {
        let id = trie::parse_num(line, field)?;
        if id == 0 || id as usize > n {
            return Err(Error::parse(line, format!("heap node {id} out of range 1..={n}")));
        }
        Ok(HeapNodeId::new(id))
    };

    let mut root = None;
    let mut records = Vec::new();
    for (k, &(line, content)) in heap_lines.iter().enumerate() {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [id, parent, label, lo, hi] = fields[..] else {
            return Err(Error::parse(line, format!("malformed heap line {content:?}")));
        };
        if trie::parse_num(line, id)? as usize != k + 1 {
            return Err(Error::parse(line, format!("expected heap node {}, found {id}", k + 1)));
        }
        let (lo, hi) = (trie::parse_num(line, lo)?, trie::parse_num(line, hi)?);
        lines_of.heap.insert(k as u32 + 1, line);
        if k == 0 {
            if parent != "-" || label != "-" {
                return Err(Error::parse(line, "the root has no parent or label"));
            }
            root = Some((lo, hi));
            continue;
        }
        let parent = node(line, parent)?;
        if parent.get() as usize > k {
            return Err(Error::parse(line, format!("parent {parent} does not precede node {}", k + 1)));
        }
        records.push((line, parent, trie::parse_symbol(alphabet, line, label)?, lo, hi));
    }
    let root = root.ok_or_else(|| Error::parse(heap_lines.first().map_or(0, |l| l.0), "heap section is empty"))?;
    if heap_lines.len() != n {
        return Err(Error::Validation {
            line: heap_lines.last().map(|l| l.0),
            msg: format!("{} heap nodes for {n} pcst nodes", heap_lines.len()),
        });
    }

    let mut links = Vec::new();
    for &(line, content) in rsl_lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [from, key, to] = fields[..] else {
            return Err(Error::parse(line, format!("malformed link line {content:?}")));
        };
        let key = if key == "*" { LinkKey::Fresh } else { LinkKey::Sym(trie::parse_symbol(alphabet, line, key)?) };
        let from = node(line, from)?;
        lines_of.rsl.insert((from.get(), key), line);
        links.push((line, from, key, node(line, to)?));
    }

    let mut mrp = Vec::new();
    for (k, &(line, content)) in mrp_lines.iter().enumerate() {
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [id, target] = fields[..] else {
            return Err(Error::parse(line, format!("malformed mrp line {content:?}")));
        };
        if trie::parse_num(line, id)? as usize != k + 1 {
            return Err(Error::parse(line, format!("expected mrp of node {}, found {id}", k + 1)));
        }
        lines_of.mrp.insert(k as u32 + 1, line);
        mrp.push((line, node(line, target)?));
    }
    if mrp.len() != n {
        return Err(Error::Validation { line: mrp_lines.last().map(|l| l.0), msg: format!("{} mrp records for {n} nodes", mrp.len()) });
    }
    Heap::from_located(alphabet.pi_len(), root, &records, &links, &mrp)
}
