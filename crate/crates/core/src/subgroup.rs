//! Bounded closure of a set of words under products, inverses and an
//! endomorphism semigroup.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::words::GroupWord;

/// Witness chains are cut off after this many steps.
pub const WITNESS_DEPTH: usize = 64;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SubgroupError {
    #[error("generator {word} has length {len}, above the length bound {bound}")]
    GeneratorTooLong { word: String, len: usize, bound: usize },
    #[error("generator {word} uses letters beyond the alphabet bound {bound}")]
    GeneratorAlphabet { word: String, bound: u32 },
}

/// How an element was first obtained.
#[derive(Clone, Debug)]
pub enum Witness<E> {
    Identity,
    Generator(usize),
    Given,
    Product(usize, usize),
    Inverse(usize),
    Endo(usize, E),
}

#[derive(Clone, Debug)]
pub struct SubgroupApprox<W: GroupWord> {
    generators: Vec<W>,
    length_bound: usize,
    alphabet_bound: u32,
    invariant: bool,
    cap: usize,
    elements: Vec<W>,
    witnesses: Vec<Witness<W::Endo>>,
    index: HashMap<W, usize>,
    saturated: bool,
}

/// Elements that break closure at the bound.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ClosureDefects {
    pub products: Vec<String>,
    pub inverses: Vec<String>,
    pub endomorphisms: Vec<String>,
}

impl ClosureDefects {
    pub fn is_empty(&self) -> bool {
        self.products.is_empty() && self.inverses.is_empty() && self.endomorphisms.is_empty()
    }
}

impl<W: GroupWord> SubgroupApprox<W> {
    /// Closes `generators` within words of length at most `length_bound` over
    /// letters `1..=alphabet_bound`. With `invariant`, the semigroup generators
    /// are applied as well. Stops unsaturated once `cap` elements are stored.
    pub fn closure(
        generators: &[W],
        length_bound: usize,
        invariant: bool,
        alphabet_bound: u32,
        cap: usize,
    ) -> Result<Self, SubgroupError> {
        for g in generators {
            if g.len() > length_bound {
                return Err(SubgroupError::GeneratorTooLong {
                    word: g.to_string(),
                    len: g.len(),
                    bound: length_bound,
                });
            }
            if g.max_letter() > alphabet_bound {
                return Err(SubgroupError::GeneratorAlphabet {
                    word: g.to_string(),
                    bound: alphabet_bound,
                });
            }
        }
        let mut s = SubgroupApprox {
            generators: generators.to_vec(),
            length_bound,
            alphabet_bound,
            invariant,
            cap,
            elements: Vec::new(),
            witnesses: Vec::new(),
            index: HashMap::new(),
            saturated: false,
        };
        s.insert(W::identity(), Witness::Identity);
        for (i, g) in generators.iter().enumerate() {
            s.insert(g.clone(), Witness::Generator(i));
        }
        s.run();
        Ok(s)
    }

    /// Wraps a precomputed element set (for example words read off a category).
    pub fn from_elements(
        elements: impl IntoIterator<Item = W>,
        length_bound: usize,
        invariant: bool,
        alphabet_bound: u32,
    ) -> Self {
        let mut s = SubgroupApprox {
            generators: Vec::new(),
            length_bound,
            alphabet_bound,
            invariant,
            cap: usize::MAX,
            elements: Vec::new(),
            witnesses: Vec::new(),
            index: HashMap::new(),
            saturated: true,
        };
        let mut all: Vec<W> = elements.into_iter().collect();
        all.sort();
        all.dedup();
        for w in all {
            s.insert(w, Witness::Given);
        }
        s.saturated = s.closure_defects(0).is_empty();
        s
    }

    fn insert(&mut self, w: W, why: Witness<W::Endo>) -> bool {
        if self.index.contains_key(&w) {
            return false;
        }
        self.index.insert(w.clone(), self.elements.len());
        self.elements.push(w);
        self.witnesses.push(why);
        true
    }

    fn admissible(&self, w: &W) -> bool {
        w.len() <= self.length_bound && w.max_letter() <= self.alphabet_bound
    }

    fn run(&mut self) {
        let mut frontier = 0;
        loop {
            let start = frontier;
            let end = self.elements.len();
            if start == end {
                self.saturated = true;
                return;
            }
            frontier = end;
            let candidates: Vec<Vec<(W, Witness<W::Endo>)>> = (start..end)
                .into_par_iter()
                .map(|i| self.expand(i, end))
                .collect();
            for batch in candidates {
                for (w, why) in batch {
                    if self.elements.len() >= self.cap {
                        self.saturated = false;
                        return;
                    }
                    self.insert(w, why);
                }
            }
        }
    }

    /// New candidates from element `i` combined with the first `known` elements.
    fn expand(&self, i: usize, known: usize) -> Vec<(W, Witness<W::Endo>)> {
        let u = &self.elements[i];
        let mut out = Vec::new();
        let mut push = |w: W, why: Witness<W::Endo>| {
            if self.admissible(&w) && !self.index.contains_key(&w) {
                out.push((w, why));
            }
        };
        push(u.inverse(), Witness::Inverse(i));
        if self.invariant {
            for (g, w) in u.endo_images(self.alphabet_bound) {
                push(w, Witness::Endo(i, g));
            }
        }
        for j in 0..known {
            let v = &self.elements[j];
            push(u.mul(v), Witness::Product(i, j));
            push(v.mul(u), Witness::Product(j, i));
        }
        out
    }

    pub fn contains(&self, w: &W) -> bool {
        self.index.contains_key(w)
    }

    pub fn elements(&self) -> &[W] {
        &self.elements
    }

    /// Elements in shortlex order.
    pub fn sorted_elements(&self) -> Vec<W> {
        let mut v = self.elements.clone();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> &[W] {
        &self.generators
    }

    pub fn length_bound(&self) -> usize {
        self.length_bound
    }

    pub fn alphabet_bound(&self) -> u32 {
        self.alphabet_bound
    }

    pub fn is_invariant(&self) -> bool {
        self.invariant
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// The derivation of `w`, one line per step, at most `WITNESS_DEPTH` lines.
    pub fn witness_chain(&self, w: &W) -> Option<Vec<String>> {
        let &start = self.index.get(w)?;
        let mut lines = Vec::new();
        let mut stack = vec![start];
        let mut seen = std::collections::HashSet::new();
        while let Some(i) = stack.pop() {
            if !seen.insert(i) {
                continue;
            }
            if lines.len() == WITNESS_DEPTH {
                lines.push("...".to_string());
                break;
            }
            let e = &self.elements[i];
            let line = match &self.witnesses[i] {
                Witness::Identity => format!("{e} = identity"),
                Witness::Generator(g) => format!("{e} = generator {g}"),
                Witness::Given => format!("{e} = given"),
                Witness::Product(a, b) => {
                    stack.push(*b);
                    stack.push(*a);
                    format!("{e} = {} * {}", self.elements[*a], self.elements[*b])
                }
                Witness::Inverse(a) => {
                    stack.push(*a);
                    format!("{e} = inverse of {}", self.elements[*a])
                }
                Witness::Endo(a, g) => {
                    stack.push(*a);
                    format!("{e} = {g} applied to {}", self.elements[*a])
                }
            };
            lines.push(line);
        }
        Some(lines)
    }

    /// Elements whose letters are all at most `n`.
    pub fn restrict_to(&self, n: u32) -> Vec<W> {
        self.sorted_elements()
            .into_iter()
            .filter(|w| w.max_letter() <= n)
            .collect()
    }

    /// Checks closure at the bound; lists at most `limit` defects per kind (0 means no limit).
    pub fn closure_defects(&self, limit: usize) -> ClosureDefects {
        let limit = if limit == 0 { usize::MAX } else { limit };
        let n = self.elements.len();
        let per: Vec<ClosureDefects> = (0..n)
            .into_par_iter()
            .map(|i| {
                let u = &self.elements[i];
                let mut d = ClosureDefects::default();
                let inv = u.inverse();
                if !self.contains(&inv) {
                    d.inverses.push(format!("{u} -> {inv}"));
                }
                if self.invariant {
                    for (g, w) in u.endo_images(self.alphabet_bound) {
                        if self.admissible(&w) && !self.contains(&w) {
                            d.endomorphisms.push(format!("{g} maps {u} to {w}"));
                        }
                    }
                }
                for v in &self.elements {
                    let w = u.mul(v);
                    if self.admissible(&w) && !self.contains(&w) {
                        d.products.push(format!("{u} * {v} = {w}"));
                    }
                }
                d
            })
            .collect();
        let mut out = ClosureDefects::default();
        for d in per {
            for (dst, src) in [
                (&mut out.products, d.products),
                (&mut out.inverses, d.inverses),
                (&mut out.endomorphisms, d.endomorphisms),
            ] {
                for s in src {
                    if dst.len() < limit {
                        dst.push(s);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{FreeWord, Z2Word};

    fn z(s: &str) -> Z2Word {
        Z2Word::parse(s).unwrap()
    }

    #[test]
    fn odd_word_reaches_first_letter() {
        let h = SubgroupApprox::closure(&[z("a1.a2.a3")], 3, true, 3, 100_000).unwrap();
        assert!(h.contains(&z("a1")));
        assert!(h.contains(&z("a2")));
        assert!(h.contains(&z("a3")));
        let chain = h.witness_chain(&z("a1")).unwrap();
        assert!(!chain.is_empty() && chain.len() <= WITNESS_DEPTH + 1);
    }

    #[test]
    fn dihedral_relator_images() {
        let h = SubgroupApprox::closure(&[z("(a1.a2)^3")], 6, true, 3, 100_000).unwrap();
        assert!(h.is_saturated());
        assert!(h.contains(&z("(a2.a1)^3")));
        assert!(h.contains(&z("(a1.a3)^3")));
        assert!(!h.contains(&z("a1.a2")));
        assert!(h.closure_defects(5).is_empty());
    }

    #[test]
    fn s_closure_of_commutator() {
        let c = FreeWord::parse("x1.x2.x1^-1.x2^-1").unwrap();
        let h = SubgroupApprox::closure(&[c], 4, true, 3, 100_000).unwrap();
        assert!(h.contains(&FreeWord::parse("x1.x3.x1^-1.x3^-1").unwrap()));
        assert!(!h.contains(&FreeWord::parse("x1^2").unwrap()));
    }

    #[test]
    fn plain_subgroup_without_semigroup() {
        let h = SubgroupApprox::closure(&[z("a1.a2")], 6, false, 2, 1000).unwrap();
        assert_eq!(h.len(), 7);
        assert!(!h.contains(&z("a1.a3")));
    }

    #[test]
    fn cap_marks_unsaturated() {
        let h = SubgroupApprox::closure(&[z("a1.a2")], 20, true, 4, 10).unwrap();
        assert!(!h.is_saturated());
        assert!(h.len() <= 10);
    }

    #[test]
    fn rejects_long_generator() {
        assert!(SubgroupApprox::closure(&[z("a1.a2.a1")], 2, true, 2, 10).is_err());
    }
}
