//! Alphabets, p-strings and their canonical form.
//!
//! A p-string mixes *static* symbols, which must match literally, with
//! *parameter* symbols, which only need to match up to a consistent
//! renaming. Two p-strings p-match when a bijection on the parameters maps
//! one onto the other. Every p-match class has a canonical member: rename
//! parameters in order of first occurrence to the first, second, ...
//! parameter of the alphabet. [`canonicalize`] computes it in one scan, and
//! [`NameAssignment`] is the streaming state of that scan, which lets the
//! construction code extend canonical prefixes one symbol at a time.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A symbol of a p-string.
///
/// `Param(r)` is the parameter with 1-based rank `r`, i.e. the `r`-th
/// parameter in the alphabet's declared order. In canonical strings it is
/// also the canonical name of rank `r`. `Static(i)` is the static symbol at
/// 0-based position `i` of the static alphabet.
///
/// The derived order lists parameters before statics. All child lists in
/// this crate are sorted by it, which fixes every BFS numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Param(u16),
    Static(u16),
}

impl Symbol {
    pub fn is_param(self) -> bool {
        matches!(self, Symbol::Param(_))
    }

    pub fn is_static(self) -> bool {
        matches!(self, Symbol::Static(_))
    }

    /// Rank of a parameter symbol.
    pub fn rank(self) -> Option<u16> {
        match self {
            Symbol::Param(r) => Some(r),
            Symbol::Static(_) => None,
        }
    }
}

const RESERVED: &[char] = &['*', '-', '#', ':'];

/// The static alphabet Σ and the ordered parameter alphabet Π.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    sigma: Vec<char>,
    pi: Vec<char>,
    lookup: HashMap<char, Symbol>,
}

impl Alphabet {
    /// Declares an alphabet. Each argument lists its symbols in order;
    /// whitespace between symbols is ignored.
    ///
    /// ```
    /// let alphabet = pph::Alphabet::new("ab", "xyz").unwrap();
    /// assert_eq!(alphabet.pi_len(), 3);
    /// assert!(pph::Alphabet::new("ax", "xy").is_err());
    /// ```
    pub fn new(sigma: &str, pi: &str) -> Result<Self> {
        let sigma: Vec<char> = sigma.chars().filter(|c| !c.is_whitespace()).collect();
        let pi: Vec<char> = pi.chars().filter(|c| !c.is_whitespace()).collect();
        if sigma.len() >= u16::MAX as usize || pi.len() >= u16::MAX as usize {
            return Err(Error::InvalidAlphabet("too many symbols".into()));
        }
        let mut lookup = HashMap::new();
        let classified = sigma
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, Symbol::Static(i as u16)))
            .chain(pi.iter().enumerate().map(|(i, &c)| (c, Symbol::Param(i as u16 + 1))));
        for (c, sym) in classified {
            if RESERVED.contains(&c) || c.is_control() {
                return Err(Error::InvalidAlphabet(format!("reserved symbol {c:?}")));
            }
            if lookup.insert(c, sym).is_some() {
                return Err(Error::InvalidAlphabet(format!("symbol {c:?} declared twice")));
            }
        }
        Ok(Alphabet { sigma, pi, lookup })
    }

    pub fn sigma(&self) -> &[char] {
        &self.sigma
    }

    pub fn pi(&self) -> &[char] {
        &self.pi
    }

    pub fn sigma_len(&self) -> usize {
        self.sigma.len()
    }

    pub fn pi_len(&self) -> usize {
        self.pi.len()
    }

    pub fn symbol(&self, c: char) -> Result<Symbol> {
        self.lookup.get(&c).copied().ok_or(Error::UnknownSymbol(c))
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        match sym {
            Symbol::Static(i) => (i as usize) < self.sigma.len(),
            Symbol::Param(r) => r >= 1 && (r as usize) <= self.pi.len(),
        }
    }

    /// The character of a symbol. Panics if the symbol is not in this alphabet.
    pub fn char_of(&self, sym: Symbol) -> char {
        match sym {
            Symbol::Static(i) => self.sigma[i as usize],
            Symbol::Param(r) => self.pi[r as usize - 1],
        }
    }

    /// Every symbol, in symbol order (parameters first).
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (1..=self.pi.len() as u16)
            .map(Symbol::Param)
            .chain((0..self.sigma.len() as u16).map(Symbol::Static))
    }

    pub fn parse(&self, s: &str) -> Result<PString> {
        s.chars().map(|c| self.symbol(c)).collect()
    }

    pub fn render(&self, s: &[Symbol]) -> String {
        s.iter().map(|&sym| self.char_of(sym)).collect()
    }

    /// Parses both strings and tests them for a parameterized match.
    pub fn p_match(&self, x: &str, y: &str) -> Result<bool> {
        Ok(p_match(&self.parse(x)?, &self.parse(y)?))
    }

    /// Parses a string and returns its canonical form as text.
    pub fn canonical(&self, x: &str) -> Result<String> {
        Ok(self.render(&canonicalize(&self.parse(x)?).0))
    }
}

/// A sequence of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PString(Vec<Symbol>);

impl PString {
    pub fn new() -> Self {
        PString(Vec::new())
    }

    pub fn push(&mut self, sym: Symbol) {
        self.0.push(sym);
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    /// Number of distinct parameters.
    pub fn param_count(&self) -> usize {
        let mut seen: Vec<Symbol> = self.0.iter().copied().filter(|s| s.is_param()).collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

impl Deref for PString {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for PString {
    fn from(v: Vec<Symbol>) -> Self {
        PString(v)
    }
}

impl From<&[Symbol]> for PString {
    fn from(v: &[Symbol]) -> Self {
        PString(v.to_vec())
    }
}

impl FromIterator<Symbol> for PString {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        PString(iter.into_iter().collect())
    }
}

impl fmt::Display for PString {
    /// Alphabet-free rendering: statics as `s<i>`, parameters as `p<rank>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, sym) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            match sym {
                Symbol::Static(i) => write!(f, "s{i}")?,
                Symbol::Param(r) => write!(f, "p{r}")?,
            }
        }
        Ok(())
    }
}

/// Parameterized match: equal length and a bijection on parameters that maps
/// `x` onto `y` position by position, fixing statics.
pub fn p_match(x: &[Symbol], y: &[Symbol]) -> bool {
    if x.len() != y.len() {
        return false;
    }
    let width = x
        .iter()
        .chain(y)
        .filter_map(|s| s.rank())
        .max()
        .unwrap_or(0) as usize
        + 1;
    // forward[r] / backward[r] hold the partner rank, 0 when unmapped.
    let mut forward = vec![0u16; width];
    let mut backward = vec![0u16; width];
    for (&a, &b) in x.iter().zip(y) {
        match (a, b) {
            (Symbol::Static(s), Symbol::Static(t)) if s == t => {}
            (Symbol::Param(r), Symbol::Param(s)) => {
                let (f, g) = (&mut forward[r as usize], &mut backward[s as usize]);
                match (*f, *g) {
                    (0, 0) => {
                        *f = s;
                        *g = r;
                    }
                    (f, g) if f == s && g == r => {}
                    _ => return false,
                }
            }
            _ => return false,
        }
    }
    true
}

/// The canonical member of `x`'s p-match class together with the renaming
/// that produced it.
///
/// ```
/// let alphabet = pph::Alphabet::new("ab", "xyz").unwrap();
/// let x = alphabet.parse("axbzzayx").unwrap();
/// let (canon, assignment) = pph::canonicalize(&x);
/// assert_eq!(alphabet.render(&canon), "axbyyazx");
/// assert_eq!(assignment.len(), 3);
/// ```
pub fn canonicalize(x: &[Symbol]) -> (PString, NameAssignment) {
    let mut assignment = NameAssignment::new();
    let canon = x.iter().map(|&c| assignment.extend(c)).collect();
    (canon, assignment)
}

pub fn is_canonical(x: &[Symbol]) -> bool {
    let mut next = 1;
    for &c in x {
        if let Symbol::Param(r) = c {
            if r > next {
                return false;
            }
            if r == next {
                next += 1;
            }
        }
    }
    true
}

pub fn reverse(x: &[Symbol]) -> PString {
    x.iter().rev().copied().collect()
}

/// One entry of a [`NameAssignment`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NameEntry {
    /// The raw parameter symbol.
    pub source: Symbol,
    /// Its canonical rank.
    pub rank: u16,
    /// 1-based position of its first occurrence.
    pub first_pos: usize,
}

/// The renaming that canonicalizes a prefix of some p-string.
///
/// Entries are kept in first-occurrence order, so the rank of an entry is its
/// index plus one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameAssignment {
    entries: Vec<(Symbol, u32)>,
    coverage: u32,
}

impl NameAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Length of the prefix this assignment canonicalizes.
    pub fn coverage(&self) -> usize {
        self.coverage as usize
    }

    /// Number of parameters named so far.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = NameEntry> + '_ {
        self.entries.iter().enumerate().map(|(i, &(source, pos))| NameEntry {
            source,
            rank: i as u16 + 1,
            first_pos: pos as usize,
        })
    }

    /// Rank and first position of a raw parameter, if it has been named.
    pub fn lookup(&self, param: Symbol) -> Option<(u16, usize)> {
        self.entries
            .iter()
            .position(|&(s, _)| s == param)
            .map(|i| (i as u16 + 1, self.entries[i].1 as usize))
    }

    /// The canonical name `c` would receive as the next symbol, without
    /// recording it.
    pub fn name_of(&self, c: Symbol) -> Symbol {
        match c {
            Symbol::Static(_) => c,
            Symbol::Param(_) => match self.lookup(c) {
                Some((rank, _)) => Symbol::Param(rank),
                None => Symbol::Param(self.entries.len() as u16 + 1),
            },
        }
    }

    /// Canonically names `c` as the symbol at position `coverage + 1` and
    /// records it.
    pub fn extend(&mut self, c: Symbol) -> Symbol {
        self.coverage += 1;
        match c {
            Symbol::Static(_) => c,
            Symbol::Param(_) => match self.lookup(c) {
                Some((rank, _)) => Symbol::Param(rank),
                None => {
                    self.entries.push((c, self.coverage));
                    Symbol::Param(self.entries.len() as u16)
                }
            },
        }
    }

    /// Appends an entry with the next rank. Positions must be increasing.
    pub(crate) fn push_entry(&mut self, source: Symbol, first_pos: usize) {
        debug_assert!(self.entries.last().map_or(true, |&(_, p)| (p as usize) < first_pos));
        self.entries.push((source, first_pos as u32));
    }

    pub(crate) fn set_coverage(&mut self, coverage: usize) {
        self.coverage = coverage as u32;
    }

    /// The assignment for `a0 · x[1..keep]`, given that `self` covers at
    /// least `keep` symbols of `x`: `a0` takes rank 1 if it is a parameter,
    /// and every other entry first seen within `keep` moves one position
    /// right.
    pub(crate) fn prepended(&self, a0: Symbol, keep: usize) -> NameAssignment {
        debug_assert!(keep <= self.coverage());
        let mut out = NameAssignment::new();
        if a0.is_param() {
            out.push_entry(a0, 1);
        }
        for &(source, pos) in &self.entries {
            if pos as usize <= keep && source != a0 {
                out.push_entry(source, pos as usize + 1);
            }
        }
        out.set_coverage(keep + 1);
        out
    }
}

/// How prepending one raw symbol to a string changes canonical names.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftMode {
    /// The prepended symbol is static.
    Static,
    /// The prepended symbol is a parameter already named with this rank.
    Bound(u16),
    /// The prepended symbol is a parameter not occurring in the string.
    Fresh,
}

impl ShiftMode {
    /// Mode for prepending raw symbol `a0` to the prefix of length `len`
    /// of the string that `assignment` canonicalizes.
    pub fn of(a0: Symbol, assignment: &NameAssignment, len: usize) -> ShiftMode {
        match a0 {
            Symbol::Static(_) => ShiftMode::Static,
            Symbol::Param(_) => match assignment.lookup(a0) {
                Some((rank, pos)) if pos <= len => ShiftMode::Bound(rank),
                _ => ShiftMode::Fresh,
            },
        }
    }
}

/// Renames one symbol of a canonical string `v` to its name in the
/// canonical form of `a · v`, where `mode` describes `a`.
///
/// `pi` is the parameter alphabet size; exceeding it is an internal error.
///
/// ```
/// use pph::{prepend_shift, ShiftMode, Symbol};
/// // In a·v with a fresh, a takes rank 1 and every old rank moves up.
/// assert_eq!(prepend_shift(Symbol::Param(1), ShiftMode::Fresh, 3).unwrap(), Symbol::Param(2));
/// // With a bound to rank 2, rank 2 becomes 1 and rank 1 becomes 2.
/// assert_eq!(prepend_shift(Symbol::Param(2), ShiftMode::Bound(2), 3).unwrap(), Symbol::Param(1));
/// assert_eq!(prepend_shift(Symbol::Param(3), ShiftMode::Bound(2), 3).unwrap(), Symbol::Param(3));
/// ```
pub fn prepend_shift(e: Symbol, mode: ShiftMode, pi: usize) -> Result<Symbol> {
    let Symbol::Param(s) = e else {
        return Ok(e);
    };
    let shifted = match mode {
        ShiftMode::Static => s,
        ShiftMode::Fresh => s + 1,
        ShiftMode::Bound(t) if s == t => 1,
        ShiftMode::Bound(t) if s < t => s + 1,
        ShiftMode::Bound(_) => s,
    };
    if shifted as usize > pi {
        return Err(Error::internal(format!(
            "prepend shift produced rank {shifted} with only {pi} parameters"
        )));
    }
    Ok(Symbol::Param(shifted))
}
