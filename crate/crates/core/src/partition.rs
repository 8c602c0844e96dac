//! Set partitions of two rows of points and the operations on them.
//!
//! A partition in `P(k, l)` has `k` upper points `u1..uk` and `l` lower points
//! `v1..vl`, both stored left to right. Text form is `<upper>:<lower>` with one
//! letter per point; equal letters mean the same block.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::Z2Word;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition text {0:?} must contain exactly one ':'")]
    MissingSeparator(String),
    #[error("invalid character {0:?} in partition text (expected a-z or A-Z)")]
    InvalidChar(char),
    #[error("unknown named partition {0:?}")]
    UnknownName(String),
    #[error("named partition {0:?} needs a parameter")]
    MissingParameter(String),
    #[error("parameter for {name:?} must be at least {min}, got {got}")]
    InvalidParameter { name: String, min: usize, got: usize },
    #[error("cannot compose: upper partition has {lower} lower points but lower partition has {upper} upper points")]
    RowMismatch { lower: usize, upper: usize },
    #[error("cannot rotate {side:?}/{direction:?}: the source row is empty")]
    EmptyRow { side: Side, direction: Direction },
    #[error("block {block} does not exist (partition has {blocks} blocks)")]
    UnknownBlock { block: usize, blocks: usize },
    #[error("expected a one-row partition (no upper points), got {0}")]
    NotOneRow(Partition),
    #[error("labelling has {got} entries but the partition has {blocks} blocks")]
    LabellingLength { got: usize, blocks: usize },
    #[error("index tuples have lengths {got_upper}/{got_lower}, expected {upper}/{lower}")]
    IndexLength {
        got_upper: usize,
        got_lower: usize,
        upper: usize,
        lower: usize,
    },
}

/// Which end of the rows a rotation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Whether a rotation moves a point from the upper to the lower row or back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Down,
    Up,
}

/// A point of a partition: upper points come first, then lower points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Upper(usize),
    Lower(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    upper: usize,
    lower: usize,
    /// Block id of every point (upper row then lower row), numbered by first occurrence.
    labels: Vec<u32>,
}

fn relabel<T: Copy + Eq>(raw: &[T]) -> Vec<u32> {
    let mut seen: Vec<T> = Vec::new();
    raw.iter()
        .map(|x| match seen.iter().position(|y| y == x) {
            Some(i) => i as u32,
            None => {
                seen.push(*x);
                (seen.len() - 1) as u32
            }
        })
        .collect()
}

fn letter(block: u32) -> Option<char> {
    match block {
        0..=25 => Some((b'a' + block as u8) as char),
        26..=51 => Some((b'A' + (block - 26) as u8) as char),
        _ => None,
    }
}

impl Partition {
    /// Builds a partition from arbitrary block tags, one per point.
    pub fn from_labels<T: Copy + Eq>(upper: &[T], lower: &[T]) -> Self {
        let raw: Vec<T> = upper.iter().chain(lower).copied().collect();
        Partition {
            upper: upper.len(),
            lower: lower.len(),
            labels: relabel(&raw),
        }
    }

    /// A partition with no upper points and the given lower row.
    pub fn one_row_from<T: Copy + Eq>(lower: &[T]) -> Self {
        Partition::from_labels::<T>(&[], lower)
    }

    pub fn empty() -> Self {
        Partition {
            upper: 0,
            lower: 0,
            labels: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let text = text.trim();
        let mut parts = text.split(':');
        let (Some(up), Some(low), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(PartitionError::MissingSeparator(text.to_string()));
        };
        let check = |s: &str| -> Result<Vec<char>, PartitionError> {
            s.chars()
                .map(|c| {
                    if c.is_ascii_alphabetic() {
                        Ok(c)
                    } else {
                        Err(PartitionError::InvalidChar(c))
                    }
                })
                .collect()
        };
        let up = check(up)?;
        let low = check(low)?;
        Ok(Partition::from_labels(&up, &low))
    }

    /// Accepts either partition text or a named partition such as `fourblock` or `h3`.
    pub fn parse_any(text: &str) -> Result<Self, PartitionError> {
        if text.contains(':') {
            Partition::parse(text)
        } else {
            Named::parse(text).map(|n| n.build())
        }
    }

    pub fn upper_len(&self) -> usize {
        self.upper
    }

    pub fn lower_len(&self) -> usize {
        self.lower
    }

    pub fn point_count(&self) -> usize {
        self.labels.len()
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| *m as usize + 1)
    }

    pub fn upper_labels(&self) -> &[u32] {
        &self.labels[..self.upper]
    }

    pub fn lower_labels(&self) -> &[u32] {
        &self.labels[self.upper..]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn block_of(&self, point: Point) -> u32 {
        match point {
            Point::Upper(i) => self.labels[i],
            Point::Lower(i) => self.labels[self.upper + i],
        }
    }

    /// Blocks as lists of points, in block-id order.
    pub fn blocks(&self) -> Vec<Vec<Point>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for i in 0..self.upper {
            out[self.labels[i] as usize].push(Point::Upper(i));
        }
        for i in 0..self.lower {
            out[self.labels[self.upper + i] as usize].push(Point::Lower(i));
        }
        out
    }

    /// Block ids read clockwise: upper row left to right, then lower row right to left.
    pub fn clockwise(&self) -> Vec<u32> {
        let mut out = self.upper_labels().to_vec();
        out.extend(self.lower_labels().iter().rev());
        out
    }

    pub fn is_one_row(&self) -> bool {
        self.upper == 0
    }

    pub fn tensor(&self, other: &Partition) -> Partition {
        let shift = self.block_count() as u32;
        let up: Vec<u32> = self
            .upper_labels()
            .iter()
            .copied()
            .chain(other.upper_labels().iter().map(|b| b + shift))
            .collect();
        let low: Vec<u32> = self
            .lower_labels()
            .iter()
            .copied()
            .chain(other.lower_labels().iter().map(|b| b + shift))
            .collect();
        Partition::from_labels(&up, &low)
    }

    /// Composes `above` (in `P(k, l)`) stacked on top of `self` (in `P(l, m)`).
    ///
    /// Returns the composite in `P(k, m)` and the number of closed loops, i.e.
    /// joined blocks that only touch the middle row.
    pub fn compose_below(&self, above: &Partition) -> Result<(Partition, usize), PartitionError> {
        let (k, l, m) = (above.upper, above.lower, self.lower);
        if self.upper != l {
            return Err(PartitionError::RowMismatch {
                lower: l,
                upper: self.upper,
            });
        }
        // Nodes: above's blocks, then self's blocks.
        let na = above.block_count();
        let mut uf = UnionFind::new(na + self.block_count());
        for j in 0..l {
            let a = above.labels[k + j] as usize;
            let b = na + self.labels[j] as usize;
            uf.union(a, b);
        }
        let up: Vec<usize> = above.labels[..k]
            .iter()
            .map(|&b| uf.find(b as usize))
            .collect();
        let low: Vec<usize> = self.labels[l..]
            .iter()
            .map(|&b| na + b as usize)
            .map(|x| uf.find(x))
            .collect();
        let mut outer: Vec<usize> = up.iter().chain(&low).copied().collect();
        outer.sort_unstable();
        outer.dedup();
        let mut middle: Vec<usize> = (0..l)
            .map(|j| uf.find(above.labels[k + j] as usize))
            .collect();
        middle.sort_unstable();
        middle.dedup();
        let loops = middle.iter().filter(|r| outer.binary_search(r).is_err()).count();
        debug_assert!(m == low.len());
        Ok((Partition::from_labels(&up, &low), loops))
    }

    /// The product `p q` where `q` sits on top of `p`.
    pub fn compose(p: &Partition, q: &Partition) -> Result<(Partition, usize), PartitionError> {
        p.compose_below(q)
    }

    /// Reflection at the horizontal axis.
    pub fn involution(&self) -> Partition {
        Partition::from_labels(self.lower_labels(), self.upper_labels())
    }

    /// One primitive rotation move; it preserves the clockwise cyclic order.
    pub fn rotate(&self, side: Side, direction: Direction) -> Result<Partition, PartitionError> {
        let mut up = self.upper_labels().to_vec();
        let mut low = self.lower_labels().to_vec();
        let err = PartitionError::EmptyRow { side, direction };
        match (side, direction) {
            (Side::Right, Direction::Down) => {
                let x = up.pop().ok_or(err)?;
                low.push(x);
            }
            (Side::Right, Direction::Up) => {
                let x = low.pop().ok_or(err)?;
                up.push(x);
            }
            (Side::Left, Direction::Down) => {
                if up.is_empty() {
                    return Err(err);
                }
                let x = up.remove(0);
                low.insert(0, x);
            }
            (Side::Left, Direction::Up) => {
                if low.is_empty() {
                    return Err(err);
                }
                let x = low.remove(0);
                up.insert(0, x);
            }
        }
        Ok(Partition::from_labels(&up, &low))
    }

    pub fn rotate_times(
        &self,
        side: Side,
        direction: Direction,
        times: usize,
    ) -> Result<Partition, PartitionError> {
        let mut p = self.clone();
        for _ in 0..times {
            p = p.rotate(side, direction)?;
        }
        Ok(p)
    }

    /// Moves all upper points down on the right; the lower row of the result is
    /// `v1..vl` followed by `uk..u1`.
    pub fn to_one_row(&self) -> Partition {
        let mut low = self.lower_labels().to_vec();
        low.extend(self.upper_labels().iter().rev());
        Partition::from_labels::<u32>(&[], &low)
    }

    /// Merges two blocks into one.
    pub fn connect_blocks(&self, b1: usize, b2: usize) -> Result<Partition, PartitionError> {
        let blocks = self.block_count();
        for b in [b1, b2] {
            if b >= blocks {
                return Err(PartitionError::UnknownBlock { block: b, blocks });
            }
        }
        let raw: Vec<u32> = self
            .labels
            .iter()
            .map(|&x| if x as usize == b2 { b1 as u32 } else { x })
            .collect();
        Ok(Partition::from_labels(&raw[..self.upper], &raw[self.upper..]))
    }

    /// The block word of a one-row partition, read left to right.
    pub fn block_word(&self) -> Result<BlockWord, PartitionError> {
        if !self.is_one_row() {
            return Err(PartitionError::NotOneRow(self.clone()));
        }
        Ok(BlockWord::from_letters(&self.labels))
    }

    /// Reads the partition clockwise and labels blocks by letters `a_i`.
    ///
    /// Without a labelling, blocks get pairwise different letters `a1, a2, ...`
    /// in order of first clockwise occurrence. A labelling maps block ids to
    /// letter indices (starting at 1).
    pub fn word_of(&self, labelling: Option<&[u32]>) -> Result<Z2Word, PartitionError> {
        let cw = self.clockwise();
        let letters: Vec<u32> = match labelling {
            None => relabel(&cw).into_iter().map(|x| x + 1).collect(),
            Some(l) => {
                if l.len() != self.block_count() {
                    return Err(PartitionError::LabellingLength {
                        got: l.len(),
                        blocks: self.block_count(),
                    });
                }
                cw.iter().map(|&b| l[b as usize]).collect()
            }
        };
        Ok(Z2Word::reduce(&letters))
    }

    /// One-row form with all repeated neighbours removed, as a canonical partition.
    pub fn simplify(&self) -> Partition {
        let mut w = self.to_one_row().block_word().expect("one-row form");
        while !w.is_single_leg() {
            w = w.reduce_once();
        }
        w.to_partition()
    }

    /// True for one-row partitions in which no two neighbouring points share a block.
    pub fn is_single_leg(&self) -> bool {
        self.is_one_row() && self.labels.windows(2).all(|w| w[0] != w[1])
    }

    pub fn equivalent(&self, other: &Partition) -> bool {
        self.simplify() == other.simplify()
    }

    /// No two blocks interleave in the clockwise order.
    pub fn is_noncrossing(&self) -> bool {
        let cw = self.clockwise();
        let blocks = self.block_count() as u32;
        for a in 0..blocks {
            for b in (a + 1)..blocks {
                let mut changes = 0;
                let mut last = None;
                for &x in cw.iter().filter(|&&x| x == a || x == b) {
                    if last != Some(x) {
                        changes += 1;
                        last = Some(x);
                    }
                }
                // a..b..a..b needs at least four runs
                if changes >= 4 {
                    return false;
                }
            }
        }
        true
    }

    /// `delta_p(i, j)`: 1 when the index tuples are constant on every block.
    pub fn delta(&self, upper: &[usize], lower: &[usize]) -> Result<bool, PartitionError> {
        if upper.len() != self.upper || lower.len() != self.lower {
            return Err(PartitionError::IndexLength {
                got_upper: upper.len(),
                got_lower: lower.len(),
                upper: self.upper,
                lower: self.lower,
            });
        }
        let mut value: Vec<Option<usize>> = vec![None; self.block_count()];
        for (i, &x) in upper.iter().chain(lower).enumerate() {
            let b = self.labels[i] as usize;
            match value[b] {
                None => value[b] = Some(x),
                Some(y) if y != x => return Ok(false),
                _ => {}
            }
        }
        Ok(true)
    }

    /// Text form with `?` for blocks beyond the 52 available letters.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let put = |f: &mut fmt::Formatter<'_>, b: u32| -> fmt::Result {
            match letter(b) {
                Some(c) => write!(f, "{c}"),
                None => write!(f, "[{b}]"),
            }
        };
        for &b in self.upper_labels() {
            put(f, b)?;
        }
        write!(f, ":")?;
        for &b in self.lower_labels() {
            put(f, b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl std::str::FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Partition::parse_any(s)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// A word of block letters with multiplicities, e.g. `a b^2 a c`.
///
/// Letters keep the block ids of the partition they came from, so one-step
/// reductions can be compared letter for letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockWord {
    syllables: Vec<(u32, usize)>,
}

impl BlockWord {
    pub fn from_letters(letters: &[u32]) -> Self {
        let mut syllables: Vec<(u32, usize)> = Vec::new();
        for &x in letters {
            push_syllable(&mut syllables, x, 1);
        }
        BlockWord { syllables }
    }

    pub fn syllables(&self) -> &[(u32, usize)] {
        &self.syllables
    }

    pub fn letters(&self) -> Vec<u32> {
        self.syllables
            .iter()
            .flat_map(|&(x, k)| std::iter::repeat_n(x, k))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.syllables.iter().map(|s| s.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// No letter is directly repeated.
    pub fn is_single_leg(&self) -> bool {
        self.syllables.iter().all(|s| s.1 == 1)
    }

    /// Replaces every power `x^k` by `x^(k mod 2)` and merges the neighbours that meet.
    pub fn reduce_once(&self) -> BlockWord {
        let mut syllables = Vec::new();
        for &(x, k) in &self.syllables {
            if k % 2 == 1 {
                push_syllable(&mut syllables, x, 1);
            }
        }
        BlockWord { syllables }
    }

    /// The one-row partition with these letters (canonically relabelled).
    pub fn to_partition(&self) -> Partition {
        Partition::one_row_from(&self.letters())
    }
}

fn push_syllable(s: &mut Vec<(u32, usize)>, x: u32, k: usize) {
    match s.last_mut() {
        Some((y, m)) if *y == x => *m += k,
        _ => s.push((x, k)),
    }
}

impl fmt::Display for BlockWord {
    /// Writes the expanded word with the source letters, as a one-row text.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, ":")?;
        for x in self.letters() {
            match letter(x) {
                Some(c) => write!(f, "{c}")?,
                None => write!(f, "[{x}]")?,
            }
        }
        Ok(())
    }
}

/// The partitions that have names of their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Named {
    Empty,
    Pair,
    Unit,
    Singleton,
    DoubleSingleton,
    FourBlock,
    Crossing,
    HalfLib,
    FatCrossing,
    /// Four block `{1, 2, 2', 3'}` plus the pair `{3, 1'}`.
    PairPositioner,
    /// `:abab...ab` with `2s` points.
    H(usize),
    /// Four block on `{1, 1', l+2, (l+2)'}` plus vertical pairs in between.
    K(usize),
}

impl Named {
    pub const ALL_FIXED: [Named; 10] = [
        Named::Empty,
        Named::Pair,
        Named::Unit,
        Named::Singleton,
        Named::DoubleSingleton,
        Named::FourBlock,
        Named::Crossing,
        Named::HalfLib,
        Named::FatCrossing,
        Named::PairPositioner,
    ];

    pub fn name(&self) -> String {
        match self {
            Named::Empty => "empty".into(),
            Named::Pair => "pair".into(),
            Named::Unit => "unit".into(),
            Named::Singleton => "singleton".into(),
            Named::DoubleSingleton => "doublesingleton".into(),
            Named::FourBlock => "fourblock".into(),
            Named::Crossing => "crossing".into(),
            Named::HalfLib => "halflib".into(),
            Named::FatCrossing => "fatcrossing".into(),
            Named::PairPositioner => "pairpositioner".into(),
            Named::H(s) => format!("h{s}"),
            Named::K(l) => format!("k{l}"),
        }
    }

    /// Parses names like `fourblock`, `h3`, `h 3` or `k2`.
    pub fn parse(text: &str) -> Result<Named, PartitionError> {
        let t: String = text
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '_' && *c != '-')
            .collect::<String>()
            .to_ascii_lowercase();
        let fixed = match t.as_str() {
            "empty" => Some(Named::Empty),
            "pair" => Some(Named::Pair),
            "unit" | "id" | "identity" => Some(Named::Unit),
            "singleton" => Some(Named::Singleton),
            "doublesingleton" => Some(Named::DoubleSingleton),
            "fourblock" => Some(Named::FourBlock),
            "crossing" => Some(Named::Crossing),
            "halflib" => Some(Named::HalfLib),
            "fatcrossing" | "fatcross" => Some(Named::FatCrossing),
            "pairpositioner" | "primary" => Some(Named::PairPositioner),
            _ => None,
        };
        if let Some(n) = fixed {
            return Ok(n);
        }
        for (prefix, min, ctor) in [
            ("h", 1usize, Named::H as fn(usize) -> Named),
            ("k", 1usize, Named::K as fn(usize) -> Named),
        ] {
            if let Some(rest) = t.strip_prefix(prefix) {
                if rest.is_empty() {
                    return Err(PartitionError::MissingParameter(text.to_string()));
                }
                if let Ok(v) = rest.parse::<usize>() {
                    if v < min {
                        return Err(PartitionError::InvalidParameter {
                            name: prefix.to_string(),
                            min,
                            got: v,
                        });
                    }
                    return Ok(ctor(v));
                }
            }
        }
        Err(PartitionError::UnknownName(text.to_string()))
    }

    pub fn build(&self) -> Partition {
        let p = |s: &str| Partition::parse(s).expect("fixed text");
        match *self {
            Named::Empty => Partition::empty(),
            Named::Pair => p(":aa"),
            Named::Unit => p("a:a"),
            Named::Singleton => p(":a"),
            Named::DoubleSingleton => p(":ab"),
            Named::FourBlock => p(":aaaa"),
            Named::Crossing => p("ab:ba"),
            Named::HalfLib => p("abc:cba"),
            Named::FatCrossing => p("aabb:bbaa"),
            Named::PairPositioner => p("aab:baa"),
            Named::H(s) => {
                let low: Vec<u32> = (0..2 * s).map(|i| (i % 2) as u32).collect();
                Partition::one_row_from(&low)
            }
            Named::K(l) => {
                let mut row = vec![0u32];
                row.extend(1..=l as u32);
                row.push(0);
                Partition::from_labels(&row, &row)
            }
        }
    }
}

/// All partitions in `P(k, l)`, in restricted-growth order.
pub fn all_partitions(upper: usize, lower: usize) -> Vec<Partition> {
    let n = upper + lower;
    let mut out = Vec::new();
    let mut word = vec![0u32; n];
    fn rec(i: usize, max: u32, word: &mut Vec<u32>, upper: usize, out: &mut Vec<Partition>) {
        if i == word.len() {
            out.push(Partition::from_labels(&word[..upper], &word[upper..]));
            return;
        }
        for b in 0..=max {
            word[i] = b;
            let next = if b == max { max + 1 } else { max };
            rec(i + 1, next, word, upper, out);
        }
    }
    if n == 0 {
        return vec![Partition::empty()];
    }
    rec(0, 0, &mut word, upper, &mut out);
    out
}
