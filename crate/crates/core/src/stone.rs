//! The clopen algebra of the Cantor space `K = {0,1}^ω`, the Stone space of
//! the free Boolean algebra on countably many generators.
//!
//! Clopen sets are finite unions of cells `[w]` (all sequences starting with
//! the word `w`). The only points the rest of the crate ever needs to name
//! individually are the eventually-constant addresses `w·b·b·b…`
//! ([`BranchPoint`]); every other point lies in the interior of some cell on
//! which tree functions are constant.

use std::fmt;

use crate::error::{Error, Result};

/// The cell `[w]` of all infinite words with prefix `w`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cell {
    word: Vec<bool>,
}

impl Cell {
    /// The whole space.
    pub fn root() -> Self {
        Cell { word: Vec::new() }
    }

    pub fn new(word: Vec<bool>) -> Self {
        Cell { word }
    }

    /// Parses a word of `0`/`1` characters; `"e"` and `""` are the root.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s == "e" {
            return Some(Cell::root());
        }
        s.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(Cell::new)
    }

    pub fn word(&self) -> &[bool] {
        &self.word
    }

    pub fn depth(&self) -> usize {
        self.word.len()
    }

    pub fn child(&self, bit: bool) -> Self {
        let mut word = self.word.clone();
        word.push(bit);
        Cell { word }
    }

    /// `[w·b^k]`.
    pub fn extend(&self, bit: bool, k: usize) -> Self {
        let mut word = self.word.clone();
        word.extend(std::iter::repeat_n(bit, k));
        Cell { word }
    }

    pub fn is_prefix_of(&self, other: &Cell) -> bool {
        other.word.starts_with(&self.word)
    }

    /// Whether the point lies in this cell.
    pub fn contains(&self, p: &BranchPoint) -> bool {
        self.word.iter().enumerate().all(|(i, &b)| p.bit(i) == b)
    }

    /// The canonical branch point `w·b^ω`.
    pub fn branch(&self, bit: bool) -> BranchPoint {
        BranchPoint::new(self.word.clone(), bit)
    }

    /// All cells of exactly the given depth, in lexicographic order.
    pub fn all_at_depth(depth: usize) -> impl Iterator<Item = Cell> {
        (0u64..(1u64 << depth)).map(move |n| Cell::new((0..depth).map(|i| (n >> (depth - 1 - i)) & 1 == 1).collect()))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for &b in &self.word {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// The eventually-constant address `prefix · tail^ω`.
///
/// Canonical: the prefix never ends with the tail bit.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BranchPoint {
    prefix: Vec<bool>,
    tail: bool,
}

impl BranchPoint {
    pub fn new(mut prefix: Vec<bool>, tail: bool) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        BranchPoint { prefix, tail }
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn tail(&self) -> bool {
        self.tail
    }

    /// The `i`-th bit of the infinite address.
    pub fn bit(&self, i: usize) -> bool {
        self.prefix.get(i).copied().unwrap_or(self.tail)
    }

    /// Parses `"01(1)^w"`; the prefix may be empty.
    pub fn parse(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = s.strip_suffix(")^w")?;
        let (prefix, tail) = body.split_once('(')?;
        let tail = match tail {
            "0" => false,
            "1" => true,
            _ => return None,
        };
        let prefix = if prefix.is_empty() { Cell::root() } else { Cell::parse(prefix)? };
        Some(BranchPoint::new(prefix.word, tail))
    }

    /// All canonical branch points with prefix length at most `depth`.
    pub fn all_up_to(depth: usize) -> Vec<BranchPoint> {
        let mut out = Vec::new();
        for d in 0..=depth {
            for c in Cell::all_at_depth(d) {
                for tail in [false, true] {
                    if c.word.last() != Some(&tail) {
                        out.push(BranchPoint { prefix: c.word.clone(), tail });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for BranchPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.prefix {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, "({})^w", if self.tail { 1 } else { 0 })
    }
}

/// `K` minus finitely many branch points; always open and dense.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OpenDense {
    excluded: Vec<BranchPoint>,
}

impl OpenDense {
    pub fn new(mut excluded: Vec<BranchPoint>) -> Self {
        excluded.sort();
        excluded.dedup();
        OpenDense { excluded }
    }

    pub fn excluded(&self) -> &[BranchPoint] {
        &self.excluded
    }

    pub fn contains(&self, p: &BranchPoint) -> bool {
        self.excluded.binary_search(p).is_err()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Trie {
    Empty,
    Full,
    Split(Box<Trie>, Box<Trie>),
}

impl Trie {
    fn split(a: Trie, b: Trie) -> Trie {
        match (&a, &b) {
            (Trie::Empty, Trie::Empty) => Trie::Empty,
            (Trie::Full, Trie::Full) => Trie::Full,
            _ => Trie::Split(Box::new(a), Box::new(b)),
        }
    }

    fn children(&self) -> (Trie, Trie) {
        match self {
            Trie::Split(a, b) => ((**a).clone(), (**b).clone()),
            leaf => (leaf.clone(), leaf.clone()),
        }
    }

    fn insert(self, word: &[bool]) -> Trie {
        match (self, word.split_first()) {
            (Trie::Full, _) => Trie::Full,
            (_, None) => Trie::Full,
            (t, Some((&bit, rest))) => {
                let (a, b) = t.children();
                if bit {
                    Trie::split(a, b.insert(rest))
                } else {
                    Trie::split(a.insert(rest), b)
                }
            }
        }
    }

    fn complement(&self) -> Trie {
        match self {
            Trie::Empty => Trie::Full,
            Trie::Full => Trie::Empty,
            Trie::Split(a, b) => Trie::split(a.complement(), b.complement()),
        }
    }

    fn meet(&self, other: &Trie) -> Trie {
        match (self, other) {
            (Trie::Empty, _) | (_, Trie::Empty) => Trie::Empty,
            (Trie::Full, t) | (t, Trie::Full) => t.clone(),
            (Trie::Split(a0, a1), Trie::Split(b0, b1)) => Trie::split(a0.meet(b0), a1.meet(b1)),
        }
    }

    fn cells(&self, word: &mut Vec<bool>, out: &mut Vec<Cell>) {
        match self {
            Trie::Empty => {}
            Trie::Full => out.push(Cell::new(word.clone())),
            Trie::Split(a, b) => {
                word.push(false);
                a.cells(word, out);
                word.pop();
                word.push(true);
                b.cells(word, out);
                word.pop();
            }
        }
    }
}

/// A clopen subset of `K`, held as a canonical finite union of cells: no cell
/// contains another and no two siblings are both present.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClopenSet {
    cells: Vec<Cell>,
}

impl ClopenSet {
    pub fn empty() -> Self {
        ClopenSet { cells: Vec::new() }
    }

    pub fn full() -> Self {
        ClopenSet { cells: vec![Cell::root()] }
    }

    pub fn cell(c: Cell) -> Self {
        ClopenSet { cells: vec![c] }
    }

    /// Canonical form of an arbitrary finite union of cells.
    pub fn normalize<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        let trie = cells.into_iter().fold(Trie::Empty, |t, c| t.insert(&c.word));
        Self::from_trie(&trie)
    }

    fn from_trie(trie: &Trie) -> Self {
        let mut out = Vec::new();
        trie.cells(&mut Vec::new(), &mut out);
        ClopenSet { cells: out }
    }

    fn trie(&self) -> Trie {
        self.cells.iter().fold(Trie::Empty, |t, c| t.insert(&c.word))
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.cells.len() == 1 && self.cells[0].depth() == 0
    }

    pub fn complement(&self) -> Self {
        Self::from_trie(&self.trie().complement())
    }

    pub fn meet(&self, other: &Self) -> Self {
        Self::from_trie(&self.trie().meet(&other.trie()))
    }

    pub fn join(&self, other: &Self) -> Self {
        Self::normalize(self.cells.iter().chain(&other.cells).cloned())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.meet(other) == *self
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.meet(other).is_empty()
    }

    pub fn contains_cell(&self, c: &Cell) -> bool {
        self.cells.iter().any(|d| d.is_prefix_of(c))
    }

    /// Whether some cell of the set is a prefix of `p`'s address.
    pub fn contains_point(&self, p: &BranchPoint) -> bool {
        self.cells.iter().any(|c| c.contains(p))
    }

    /// Parses `"{w1,w2,...}"`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let body = s.strip_prefix('{')?.strip_suffix('}')?;
        if body.trim().is_empty() {
            return Some(ClopenSet::empty());
        }
        body.split(',').map(Cell::parse).collect::<Option<Vec<_>>>().map(ClopenSet::normalize)
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

pub fn clopen_normalize<I: IntoIterator<Item = Cell>>(cells: I) -> ClopenSet {
    ClopenSet::normalize(cells)
}

pub fn clopen_complement(u: &ClopenSet) -> ClopenSet {
    u.complement()
}

pub fn clopen_meet(u: &ClopenSet, v: &ClopenSet) -> ClopenSet {
    u.meet(v)
}

pub fn clopen_join(u: &ClopenSet, v: &ClopenSet) -> ClopenSet {
    u.join(v)
}

pub fn branch_in_clopen(p: &BranchPoint, u: &ClopenSet) -> bool {
    u.contains_point(p)
}

fn check_partition(parts: &[ClopenSet]) -> Result<()> {
    let mut covered = ClopenSet::empty();
    for (i, part) in parts.iter().enumerate() {
        if !covered.is_disjoint(part) {
            return Err(Error::NotAPartition(format!("block {i} ({part}) overlaps earlier blocks")));
        }
        covered = covered.join(part);
    }
    if !covered.is_full() {
        return Err(Error::NotAPartition(format!("blocks miss {}", covered.complement())));
    }
    Ok(())
}

/// Coarsest common refinement of two partitions of `K`.
pub fn partition_meet(p: &[ClopenSet], q: &[ClopenSet]) -> Result<Vec<ClopenSet>> {
    check_partition(p)?;
    check_partition(q)?;
    Ok(p.iter().flat_map(|a| q.iter().map(move |b| a.meet(b))).filter(|m| !m.is_empty()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(s: &str) -> Cell {
        Cell::parse(s).unwrap()
    }

    fn set(s: &str) -> ClopenSet {
        ClopenSet::parse(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(clopen_normalize([c("0"), c("1")]), set("{e}"));
        assert_eq!(clopen_normalize([c("0"), c("01")]), set("{0}"));
        assert_eq!(clopen_normalize([c("00"), c("01"), c("10")]).to_string(), "{0,10}");
    }

    #[test]
    fn boolean_examples() {
        assert_eq!(clopen_complement(&set("{0}")).to_string(), "{1}");
        assert_eq!(clopen_complement(&set("{10}")).to_string(), "{0,11}");
        assert_eq!(clopen_meet(&set("{0}"), &set("{01,1}")).to_string(), "{01}");
        assert_eq!(clopen_complement(&ClopenSet::empty()), ClopenSet::full());
        assert_eq!(ClopenSet::full().to_string(), "{e}");
        assert_eq!(ClopenSet::empty().to_string(), "{}");
    }

    #[test]
    fn branch_membership_examples() {
        let p = BranchPoint::parse("(1)^w").unwrap();
        assert!(branch_in_clopen(&p, &set("{1}")));
        assert!(!branch_in_clopen(&p, &set("{10}")));
        let q = BranchPoint::parse("0(1)^w").unwrap();
        assert!(branch_in_clopen(&q, &set("{01}")));
    }

    #[test]
    fn branch_points_are_canonical() {
        let p = BranchPoint::new(vec![false, true, true], true);
        assert_eq!(p.to_string(), "0(1)^w");
        assert_eq!(BranchPoint::parse("011(1)^w").unwrap(), p);
        assert_eq!(BranchPoint::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn partition_meet_examples() {
        let p = vec![set("{0}"), set("{1}")];
        assert_eq!(partition_meet(&p, &[set("{e}")]).unwrap(), p);
        let q = vec![set("{00}"), set("{01}"), set("{1}")];
        assert_eq!(partition_meet(&p, &q).unwrap(), q);
        let r = vec![set("{0}"), set("{10}"), set("{11}")];
        assert_eq!(partition_meet(&p, &r).unwrap(), r);
    }

    #[test]
    fn partition_meet_rejects_overlap_and_gaps() {
        let p = vec![set("{0}"), set("{1}")];
        let overlap = vec![set("{0}"), set("{e}")];
        assert!(matches!(partition_meet(&p, &overlap), Err(Error::NotAPartition(_))));
        let gap = vec![set("{0}")];
        assert!(matches!(partition_meet(&gap, &p), Err(Error::NotAPartition(_))));
    }

    #[test]
    fn open_dense_excludes_only_listed_points() {
        let p = BranchPoint::parse("(1)^w").unwrap();
        let d = OpenDense::new(vec![p.clone(), p.clone()]);
        assert_eq!(d.excluded().len(), 1);
        assert!(!d.contains(&p));
        assert!(d.contains(&BranchPoint::parse("(0)^w").unwrap()));
    }

    fn arb_cell(max: usize) -> impl Strategy<Value = Cell> {
        prop::collection::vec(any::<bool>(), 0..=max).prop_map(Cell::new)
    }

    fn arb_set() -> impl Strategy<Value = ClopenSet> {
        prop::collection::vec(arb_cell(5), 0..6).prop_map(ClopenSet::normalize)
    }

    fn arb_point() -> impl Strategy<Value = BranchPoint> {
        (prop::collection::vec(any::<bool>(), 0..12), any::<bool>()).prop_map(|(w, b)| BranchPoint::new(w, b))
    }

    proptest! {
        #[test]
        fn boolean_algebra_axioms(a in arb_set(), b in arb_set(), c in arb_set()) {
            prop_assert_eq!(a.complement().complement(), a.clone());
            prop_assert_eq!(a.meet(&b), b.meet(&a));
            prop_assert_eq!(a.join(&b), b.join(&a));
            prop_assert_eq!(a.meet(&b.join(&c)), a.meet(&b).join(&a.meet(&c)));
            prop_assert_eq!(a.join(&b.meet(&c)), a.join(&b).meet(&a.join(&c)));
            prop_assert_eq!(a.meet(&a.complement()), ClopenSet::empty());
            prop_assert_eq!(a.join(&a.complement()), ClopenSet::full());
            prop_assert_eq!(a.join(&b).complement(), a.complement().meet(&b.complement()));
        }

        #[test]
        fn normalize_preserves_points(
            raw in prop::collection::vec(arb_cell(6), 0..8),
            probes in prop::collection::vec(arb_cell(12), 1..20),
            points in prop::collection::vec(arb_point(), 1..20),
        ) {
            let n = ClopenSet::normalize(raw.clone());
            prop_assert_eq!(ClopenSet::normalize(n.cells().to_vec()), n.clone());
            fn covered(raw: &[Cell], p: &Cell) -> bool {
                raw.iter().any(|c| c.is_prefix_of(p))
                    || (p.depth() < 6 && covered(raw, &p.child(false)) && covered(raw, &p.child(true)))
            }
            for p in &probes {
                let before = covered(&raw, p);
                prop_assert_eq!(n.contains_cell(p), before);
            }
            for p in &points {
                let before = raw.iter().any(|c| c.contains(p));
                prop_assert_eq!(n.contains_point(p), before);
            }
            for (i, x) in n.cells().iter().enumerate() {
                for (j, y) in n.cells().iter().enumerate() {
                    if i != j {
                        prop_assert!(!x.is_prefix_of(y));
                    }
                }
            }
        }

        #[test]
        fn text_roundtrip(a in arb_set(), p in arb_point()) {
            prop_assert_eq!(ClopenSet::parse(&a.to_string()).unwrap(), a);
            prop_assert_eq!(BranchPoint::parse(&p.to_string()).unwrap(), p);
        }
    }
}
