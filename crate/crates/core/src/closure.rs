//! Bounded generation of partition categories.
//!
//! Rotations and the involution act bijectively inside any category, so members
//! are stored as one-row words up to rotation and reflection ("classes"). Tensor
//! products and compositions are both realised by gluing two one-row words and
//! contracting `t` nested pairs across the seam; with `t = 0` this is the tensor
//! product, otherwise it is the composition of the two suitably rotated
//! partitions.
//!
//! The work bound limits the size of every operand partition; stored members
//! never exceed the point bound.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::partition::{Direction, Named, Partition, PartitionError, Side};

pub const MAX_POINTS: usize = 32;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ClosureError {
    #[error("point bound {point} exceeds work bound {work}")]
    Bounds { point: usize, work: usize },
    #[error("work bound {0} exceeds the supported maximum of {MAX_POINTS} points")]
    TooLarge(usize),
    #[error("generator {partition} has {points} points, above the point bound {bound}")]
    GeneratorTooLarge {
        partition: Partition,
        points: usize,
        bound: usize,
    },
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("step {step} refers to step {reference}, which is not earlier")]
    ForwardReference { step: usize, reference: usize },
    #[error("step {step} uses generator {index}, but only {count} generators were given")]
    MissingGenerator { step: usize, index: usize, count: usize },
    #[error("step {step}: {source}")]
    Operation { step: usize, source: PartitionError },
    #[error("certificate has no steps")]
    Empty,
}

/// Reflect (reverse) first, then rotate left by `rot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Xform {
    pub reflect: bool,
    pub rot: u8,
}

impl Xform {
    fn apply(&self, w: &[u8]) -> Vec<u8> {
        let mut v = w.to_vec();
        if self.reflect {
            v.reverse();
        }
        if !v.is_empty() {
            let r = self.rot as usize % v.len();
            v.rotate_left(r);
        }
        relabel(&v)
    }
}

fn relabel(w: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    w.iter()
        .map(|&x| {
            if map[x as usize] == u8::MAX {
                map[x as usize] = next;
                next += 1;
            }
            map[x as usize]
        })
        .collect()
}

fn all_xforms(n: usize) -> impl Iterator<Item = Xform> {
    let rots = n.max(1);
    [false, true]
        .into_iter()
        .flat_map(move |reflect| (0..rots).map(move |r| Xform { reflect, rot: r as u8 }))
}

/// Smallest relabelled image under rotation and reflection, with the transform reaching it.
pub(crate) fn canonical(w: &[u8]) -> (Vec<u8>, Xform) {
    let mut best: Option<(Vec<u8>, Xform)> = None;
    for xf in all_xforms(w.len()) {
        let img = xf.apply(w);
        if best.as_ref().is_none_or(|b| img < b.0) {
            best = Some((img, xf));
        }
    }
    best.unwrap_or((Vec::new(), Xform::default()))
}

fn images(rep: &[u8]) -> Vec<(Xform, Vec<u8>)> {
    let mut out: Vec<(Xform, Vec<u8>)> = Vec::new();
    let mut seen = HashSet::new();
    for xf in all_xforms(rep.len()) {
        let img = xf.apply(rep);
        if seen.insert(img.clone()) {
            out.push((xf, img));
        }
    }
    out
}

/// Concatenates `a` and `b`, merging `a[n-1-j]` with `b[j]` for `j < t` and
/// deleting those `2t` points.
pub(crate) fn glue(a: &[u8], b: &[u8], t: usize) -> Vec<u8> {
    let ka = a.iter().max().map_or(0, |m| *m as usize + 1);
    let kb = b.iter().max().map_or(0, |m| *m as usize + 1);
    let mut parent = [0u8; 2 * MAX_POINTS];
    for (i, p) in parent.iter_mut().enumerate().take(ka + kb) {
        *p = i as u8;
    }
    fn find(parent: &mut [u8], mut x: usize) -> usize {
        while parent[x] as usize != x {
            x = parent[x] as usize;
        }
        x
    }
    let n = a.len();
    for j in 0..t {
        let x = find(&mut parent, a[n - 1 - j] as usize);
        let y = find(&mut parent, ka + b[j] as usize);
        if x != y {
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            parent[hi] = lo as u8;
        }
    }
    let mut raw = Vec::with_capacity(n + b.len() - 2 * t);
    for &x in &a[..n - t] {
        raw.push(find(&mut parent, x as usize) as u8);
    }
    for &y in &b[t..] {
        raw.push(find(&mut parent, ka + y as usize) as u8);
    }
    relabel(&raw)
}

fn one_row_word(p: &Partition) -> Vec<u8> {
    p.to_one_row().labels().iter().map(|&x| x as u8).collect()
}

#[derive(Clone, Debug)]
enum Derivation {
    Empty,
    Pair,
    Generator {
        index: usize,
        xf: Xform,
    },
    Glue {
        left: usize,
        left_xf: Xform,
        right: usize,
        right_xf: Xform,
        seam: usize,
        out_xf: Xform,
    },
}

#[derive(Clone, Debug)]
struct Class {
    rep: Vec<u8>,
    images: Vec<(Xform, Vec<u8>)>,
    derivation: Derivation,
    ops: usize,
    round: usize,
}

/// Three-valued answer for questions that are only decided at a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Membership {
    Yes(Certificate),
    Unknown,
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

/// One operation of a straight-line derivation; operands are earlier step indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    Empty,
    Pair,
    Generator(usize),
    Tensor(usize, usize),
    /// `upper` stacked on top of `lower`.
    Compose { upper: usize, lower: usize },
    Involution(usize),
    Rotate {
        of: usize,
        side: Side,
        direction: Direction,
        times: usize,
    },
}

/// A derivation of a partition from the generators by category operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub steps: Vec<Step>,
}

impl Certificate {
    /// Recomputes every step through the partition operations.
    pub fn replay(&self, generators: &[Partition]) -> Result<Partition, ReplayError> {
        let mut values: Vec<Partition> = Vec::with_capacity(self.steps.len());
        for (i, step) in self.steps.iter().enumerate() {
            let get = |r: usize| -> Result<&Partition, ReplayError> {
                if r >= i {
                    Err(ReplayError::ForwardReference {
                        step: i,
                        reference: r,
                    })
                } else {
                    Ok(&values[r])
                }
            };
            let op = |e: PartitionError| ReplayError::Operation { step: i, source: e };
            let v = match step {
                Step::Empty => Partition::empty(),
                Step::Pair => Named::Pair.build(),
                Step::Generator(g) => generators
                    .get(*g)
                    .cloned()
                    .ok_or(ReplayError::MissingGenerator {
                        step: i,
                        index: *g,
                        count: generators.len(),
                    })?,
                Step::Tensor(a, b) => get(*a)?.tensor(get(*b)?),
                Step::Compose { upper, lower } => {
                    Partition::compose(get(*lower)?, get(*upper)?).map_err(op)?.0
                }
                Step::Involution(a) => get(*a)?.involution(),
                Step::Rotate {
                    of,
                    side,
                    direction,
                    times,
                } => get(*of)?.rotate_times(*side, *direction, *times).map_err(op)?,
            };
            values.push(v);
        }
        values.pop().ok_or(ReplayError::Empty)
    }

    /// Number of tensor, compose and involution steps plus primitive rotations.
    pub fn op_count(&self) -> usize {
        self.steps
            .iter()
            .map(|s| match s {
                Step::Rotate { times, .. } => *times,
                Step::Tensor(..) | Step::Compose { .. } | Step::Involution(_) => 1,
                _ => 0,
            })
            .sum()
    }

    pub fn lines(&self) -> Vec<String> {
        self.steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let rhs = match s {
                    Step::Empty => "empty".to_string(),
                    Step::Pair => "pair".to_string(),
                    Step::Generator(g) => format!("generator {g}"),
                    Step::Tensor(a, b) => format!("s{a} (x) s{b}"),
                    Step::Compose { upper, lower } => format!("s{upper} on top of s{lower}"),
                    Step::Involution(a) => format!("s{a}*"),
                    Step::Rotate {
                        of,
                        side,
                        direction,
                        times,
                    } => format!("rotate s{of} {side:?}-{direction:?} x{times}").to_lowercase(),
                };
                format!("s{i} = {rhs}")
            })
            .collect()
    }
}

struct CertBuilder<'a> {
    cat: &'a CategoryApprox,
    steps: Vec<Step>,
    memo: HashMap<usize, usize>,
}

impl CertBuilder<'_> {
    fn push(&mut self, s: Step) -> usize {
        self.steps.push(s);
        self.steps.len() - 1
    }

    fn rotate(&mut self, of: usize, side: Side, direction: Direction, times: usize) -> usize {
        if times == 0 {
            return of;
        }
        self.push(Step::Rotate {
            of,
            side,
            direction,
            times,
        })
    }

    /// Applies `xf` to the one-row partition at step `s` with `n` points.
    fn xform(&mut self, mut s: usize, n: usize, xf: Xform) -> usize {
        if n == 0 {
            return s;
        }
        if xf.reflect {
            s = self.push(Step::Involution(s));
            s = self.rotate(s, Side::Right, Direction::Down, n);
        }
        let r = xf.rot as usize % n;
        s = self.rotate(s, Side::Left, Direction::Up, r);
        self.rotate(s, Side::Right, Direction::Down, r)
    }

    fn class(&mut self, id: usize) -> usize {
        if let Some(&s) = self.memo.get(&id) {
            return s;
        }
        let c = &self.cat.classes[id];
        let s = match c.derivation.clone() {
            Derivation::Empty => self.push(Step::Empty),
            Derivation::Pair => self.push(Step::Pair),
            Derivation::Generator { index, xf } => {
                let g = &self.cat.generators[index];
                let s = self.push(Step::Generator(index));
                let s = self.rotate(s, Side::Right, Direction::Down, g.upper_len());
                self.xform(s, g.point_count(), xf)
            }
            Derivation::Glue {
                left,
                left_xf,
                right,
                right_xf,
                seam,
                out_xf,
            } => {
                let n = self.cat.classes[left].rep.len();
                let m = self.cat.classes[right].rep.len();
                let a = self.class(left);
                let a = self.xform(a, n, left_xf);
                let b = self.class(right);
                let b = self.xform(b, m, right_xf);
                let s = if seam == 0 {
                    self.push(Step::Tensor(a, b))
                } else {
                    let q = self.rotate(a, Side::Left, Direction::Up, n - seam);
                    let p = self.rotate(b, Side::Left, Direction::Up, seam);
                    let c = self.push(Step::Compose { upper: q, lower: p });
                    self.rotate(c, Side::Left, Direction::Down, n - seam)
                };
                self.xform(s, n + m - 2 * seam, out_xf)
            }
        };
        self.memo.insert(id, s);
        s
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    raw: Vec<u8>,
    left: usize,
    left_img: usize,
    right: usize,
    right_img: usize,
    seam: usize,
}

/// The category generated by some partitions, computed up to a point bound.
#[derive(Clone, Debug)]
pub struct CategoryApprox {
    generators: Vec<Partition>,
    point_bound: usize,
    work_bound: usize,
    cap: usize,
    classes: Vec<Class>,
    index: HashMap<Vec<u8>, usize>,
    saturated: bool,
    rounds: usize,
}

/// How blocks may be chosen in [`CategoryApprox::connectability_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConnectMode {
    /// Blocks owning two neighbouring points (cyclically).
    Neighbouring,
    /// Any two blocks.
    Arbitrary,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectabilityReport {
    pub mode: ConnectMode,
    pub precondition_met: bool,
    pub checked: usize,
    pub violations: Vec<String>,
}

impl CategoryApprox {
    /// Generates the category of `generators` and the pair partition.
    ///
    /// Only members with at most `point_bound` points are stored and every
    /// operand has at most `work_bound` points. Stops unsaturated once `cap`
    /// classes are stored.
    pub fn closure(
        generators: &[Partition],
        point_bound: usize,
        work_bound: usize,
        cap: usize,
    ) -> Result<Self, ClosureError> {
        if point_bound > work_bound {
            return Err(ClosureError::Bounds {
                point: point_bound,
                work: work_bound,
            });
        }
        if work_bound > MAX_POINTS {
            return Err(ClosureError::TooLarge(work_bound));
        }
        for g in generators {
            if g.point_count() > point_bound {
                return Err(ClosureError::GeneratorTooLarge {
                    partition: g.clone(),
                    points: g.point_count(),
                    bound: point_bound,
                });
            }
        }
        let mut c = CategoryApprox {
            generators: generators.to_vec(),
            point_bound,
            work_bound,
            cap,
            classes: Vec::new(),
            index: HashMap::new(),
            saturated: false,
            rounds: 0,
        };
        let mut seen_raw: HashSet<Vec<u8>> = HashSet::new();
        c.add_class(Vec::new(), Derivation::Empty, 0, 0, &mut seen_raw);
        if point_bound >= 2 {
            c.add_class(vec![0, 0], Derivation::Pair, 0, 0, &mut seen_raw);
        }
        for (index, g) in generators.iter().enumerate() {
            let w = one_row_word(g);
            let (rep, xf) = canonical(&w);
            let ops = g.upper_len() + 1;
            c.add_class(rep, Derivation::Generator { index, xf }, ops, 0, &mut seen_raw);
        }
        c.run(&mut seen_raw);
        Ok(c)
    }

    fn add_class(
        &mut self,
        rep: Vec<u8>,
        derivation: Derivation,
        ops: usize,
        round: usize,
        seen_raw: &mut HashSet<Vec<u8>>,
    ) -> bool {
        if let Some(&id) = self.index.get(&rep) {
            let c = &mut self.classes[id];
            // a shorter derivation found in the same round replaces the first one
            if c.round == round && round > 0 && ops < c.ops {
                c.derivation = derivation;
                c.ops = ops;
            }
            return false;
        }
        let imgs = images(&rep);
        for (_, w) in &imgs {
            seen_raw.insert(w.clone());
        }
        self.index.insert(rep.clone(), self.classes.len());
        self.classes.push(Class {
            rep,
            images: imgs,
            derivation,
            ops,
            round,
        });
        true
    }

    fn pair_candidates(&self, i: usize, j: usize, seen_raw: &HashSet<Vec<u8>>) -> Vec<Candidate> {
        let (ci, cj) = (&self.classes[i], &self.classes[j]);
        let (n, m) = (ci.rep.len(), cj.rep.len());
        let mut local: HashSet<Vec<u8>> = HashSet::new();
        let mut out = Vec::new();
        if n == 0 || m == 0 {
            return out;
        }
        if n.max(m) > self.work_bound {
            return out;
        }
        let max_seam = n.min(m);
        for (li, (_, a)) in ci.images.iter().enumerate() {
            for (ri, (_, b)) in cj.images.iter().enumerate() {
                for t in 0..=max_seam {
                    let size = n + m - 2 * t;
                    if size > self.point_bound {
                        continue;
                    }
                    let r = glue(a, b, t);
                    if seen_raw.contains(&r) || local.contains(&r) {
                        continue;
                    }
                    local.insert(r.clone());
                    out.push(Candidate {
                        raw: r,
                        left: i,
                        left_img: li,
                        right: j,
                        right_img: ri,
                        seam: t,
                    });
                }
            }
        }
        out
    }

    fn run(&mut self, seen_raw: &mut HashSet<Vec<u8>>) {
        let mut first_new = 0;
        loop {
            let known = self.classes.len();
            if first_new == known {
                self.saturated = true;
                return;
            }
            self.rounds += 1;
            let round = self.rounds;
            let pairs: Vec<(usize, usize)> = (first_new..known)
                .flat_map(|j| (0..=j).map(move |i| (i, j)))
                .collect();
            let shared: &HashSet<Vec<u8>> = seen_raw;
            let batches: Vec<Vec<Candidate>> = pairs
                .par_iter()
                .map(|&(i, j)| self.pair_candidates(i, j, shared))
                .collect();
            let mut fresh: Vec<Candidate> = Vec::new();
            for c in batches.into_iter().flatten() {
                if seen_raw.insert(c.raw.clone()) {
                    fresh.push(c);
                }
            }
            let canon: Vec<(Vec<u8>, Xform)> = fresh.par_iter().map(|c| canonical(&c.raw)).collect();
            for (c, (rep, out_xf)) in fresh.into_iter().zip(canon) {
                let (l, r) = (&self.classes[c.left], &self.classes[c.right]);
                let derivation = Derivation::Glue {
                    left: c.left,
                    left_xf: l.images[c.left_img].0,
                    right: c.right,
                    right_xf: r.images[c.right_img].0,
                    seam: c.seam,
                    out_xf,
                };
                let ops = l.ops + r.ops + 1;
                if self.add_class(rep, derivation, ops, round, seen_raw)
                    && self.classes.len() >= self.cap
                {
                    self.saturated = false;
                    return;
                }
            }
            first_new = known;
        }
    }

    pub fn generators(&self) -> &[Partition] {
        &self.generators
    }

    pub fn point_bound(&self) -> usize {
        self.point_bound
    }

    pub fn work_bound(&self) -> usize {
        self.work_bound
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Class representatives as one-row partitions, in discovery order.
    pub fn class_representatives(&self) -> Vec<Partition> {
        self.classes
            .iter()
            .map(|c| Partition::one_row_from(&c.rep))
            .collect()
    }

    /// Every one-row member, sorted.
    pub fn one_row_members(&self) -> Vec<Partition> {
        let mut v: Vec<Partition> = self
            .classes
            .iter()
            .flat_map(|c| c.images.iter().map(|(_, w)| Partition::one_row_from(w)))
            .collect();
        v.sort();
        v
    }

    /// Number of members in all `P(k, l)` with `k + l` at most the point bound.
    pub fn member_count(&self) -> usize {
        self.classes
            .iter()
            .map(|c| c.images.len() * (c.rep.len() + 1))
            .sum()
    }

    fn class_of(&self, p: &Partition) -> Option<(usize, Vec<u8>)> {
        if p.point_count() > self.point_bound {
            return None;
        }
        let w = one_row_word(p);
        let (rep, _) = canonical(&w);
        self.index.get(&rep).map(|&id| (id, relabel(&w)))
    }

    /// Membership without building a certificate.
    pub fn contains_quick(&self, p: &Partition) -> bool {
        self.class_of(p).is_some()
    }

    /// `Yes` with a replayable derivation, or `Unknown` when `p` was not reached.
    pub fn contains(&self, p: &Partition) -> Membership {
        match self.certificate(p) {
            Some(c) => Membership::Yes(c),
            None => Membership::Unknown,
        }
    }

    pub fn certificate(&self, p: &Partition) -> Option<Certificate> {
        let (id, w) = self.class_of(p)?;
        let xf = self.classes[id]
            .images
            .iter()
            .find(|(_, img)| *img == w)
            .map(|(xf, _)| *xf)
            .expect("every relabelled rotation is a stored image");
        let mut b = CertBuilder {
            cat: self,
            steps: Vec::new(),
            memo: HashMap::new(),
        };
        let s = b.class(id);
        let s = b.xform(s, w.len(), xf);
        let last = b.rotate(s, Side::Right, Direction::Up, p.upper_len());
        if last + 1 != b.steps.len() {
            // the result is an earlier step; repeat it as a zero rotation
            b.steps.push(Step::Rotate {
                of: last,
                side: Side::Right,
                direction: Direction::Up,
                times: 0,
            });
        }
        Some(Certificate { steps: b.steps })
    }

    fn has_word(&self, w: &[u8]) -> bool {
        self.index.contains_key(&canonical(w).0)
    }

    /// `No` when the double singleton was reached; `Yes` when the four block was
    /// reached, the closure saturated and the double singleton is absent.
    pub fn is_hyperoctahedral(&self) -> Verdict {
        if self.has_word(&[0, 1]) {
            Verdict::No
        } else if self.saturated && self.has_word(&[0, 0, 0, 0]) {
            Verdict::Yes
        } else {
            Verdict::Unknown
        }
    }

    /// `Yes` when the pair positioner was reached.
    pub fn is_simplifiable(&self) -> Verdict {
        let pp = Named::PairPositioner.build();
        if self.is_hyperoctahedral() == Verdict::No {
            Verdict::No
        } else if self.contains_quick(&pp) {
            Verdict::Yes
        } else {
            Verdict::Unknown
        }
    }

    /// One-row members without neighbouring points in a common block.
    pub fn single_leg_members(&self) -> Vec<Partition> {
        self.one_row_members()
            .into_iter()
            .filter(|p| p.is_single_leg())
            .collect()
    }

    /// Connects blocks of every member and checks that the result stays inside.
    pub fn connectability_check(&self, mode: ConnectMode, max_violations: usize) -> ConnectabilityReport {
        let precondition_met = match mode {
            ConnectMode::Neighbouring => self.has_word(&[0, 0, 0, 0]),
            ConnectMode::Arbitrary => self.contains_quick(&Named::PairPositioner.build()),
        };
        let mut checked = 0;
        let mut violations = Vec::new();
        for c in &self.classes {
            let w = &c.rep;
            let n = w.len();
            let blocks = w.iter().max().map_or(0, |m| *m as usize + 1);
            for x in 0..blocks {
                for y in (x + 1)..blocks {
                    let allowed = match mode {
                        ConnectMode::Arbitrary => true,
                        ConnectMode::Neighbouring => (0..n).any(|i| {
                            let (a, b) = (w[i] as usize, w[(i + 1) % n] as usize);
                            (a == x && b == y) || (a == y && b == x)
                        }),
                    };
                    if !allowed {
                        continue;
                    }
                    checked += 1;
                    let merged: Vec<u8> = w.iter().map(|&z| if z as usize == y { x as u8 } else { z }).collect();
                    if !self.has_word(&merged) && violations.len() < max_violations {
                        violations.push(format!(
                            "{} with blocks {x},{y} connected gives {}",
                            Partition::one_row_from(w),
                            Partition::one_row_from(&merged)
                        ));
                    }
                }
            }
        }
        ConnectabilityReport {
            mode,
            precondition_met,
            checked,
            violations,
        }
    }

    /// Summary suitable for reports.
    pub fn summary(&self) -> ClosureSummary {
        ClosureSummary {
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
            point_bound: self.point_bound,
            work_bound: self.work_bound,
            cap: self.cap,
            saturated: self.saturated,
            rounds: self.rounds,
            classes: self.class_count(),
            one_row_members: self.classes.iter().map(|c| c.images.len()).sum(),
            members: self.member_count(),
            hyperoctahedral: self.is_hyperoctahedral(),
            simplifiable: self.is_simplifiable(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureSummary {
    pub generators: Vec<String>,
    pub point_bound: usize,
    pub work_bound: usize,
    pub cap: usize,
    pub saturated: bool,
    pub rounds: usize,
    pub classes: usize,
    pub one_row_members: usize,
    pub members: usize,
    pub hyperoctahedral: Verdict,
    pub simplifiable: Verdict,
}
