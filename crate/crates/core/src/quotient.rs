//! Coset enumeration of `Z2^{*n} / H` by breadth-first search over words.

use serde::Serialize;
use thiserror::Error;

use crate::closure::Verdict;
use crate::correspondence::{restricted_closure, CorrespondenceError, MembershipOracle};
use crate::words::Z2Word;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("permutation {index} is not an involution of 0..{size}")]
    NotInvolution { index: usize, size: usize },
    #[error(transparent)]
    Correspondence(#[from] CorrespondenceError),
}

/// Kernel of a homomorphism sending `a_k` to the involution `perms[k-1]`.
/// Words using letters beyond `perms.len()` are outside.
#[derive(Clone, Debug)]
pub struct KernelOracle {
    perms: Vec<Vec<usize>>,
}

impl KernelOracle {
    pub fn new(perms: Vec<Vec<usize>>) -> Result<Self, QuotientError> {
        let size = perms.first().map_or(0, |p| p.len());
        for (index, p) in perms.iter().enumerate() {
            let ok = p.len() == size && (0..size).all(|x| p[x] < size && p[p[x]] == x);
            if !ok {
                return Err(QuotientError::NotInvolution { index, size });
            }
        }
        Ok(KernelOracle { perms })
    }

    /// The dihedral group of order `2s` acting on `Z_s x {0, 1}` (point `x + s * e`):
    /// `a1: (x, e) -> (-x, 1 - e)`, `a2: (x, e) -> (1 - x, 1 - e)`.
    pub fn dihedral(s: usize) -> Self {
        let act = |shift: usize| -> Vec<usize> {
            (0..2 * s)
                .map(|p| {
                    let (x, e) = (p % s, p / s);
                    (shift + s - x) % s + s * (1 - e)
                })
                .collect()
        };
        KernelOracle { perms: vec![act(0), act(1)] }
    }

    pub fn letters(&self) -> u32 {
        self.perms.len() as u32
    }

    /// The permutation of a word, acting letter by letter from the left.
    pub fn image(&self, w: &Z2Word) -> Option<Vec<usize>> {
        let size = self.perms.first().map_or(0, |p| p.len());
        let mut cur: Vec<usize> = (0..size).collect();
        for &x in w.letters() {
            let p = self.perms.get(x as usize - 1)?;
            cur = cur.iter().map(|&y| p[y]).collect();
        }
        Some(cur)
    }

    pub fn decide(&self, w: &Z2Word) -> Verdict {
        match self.image(w) {
            Some(img) if img.iter().enumerate().all(|(i, &y)| i == y) => Verdict::Yes,
            _ => Verdict::No,
        }
    }

    /// Order of the permutation group generated, by orbit search on permutations.
    pub fn group_order(&self) -> usize {
        let size = self.perms.first().map_or(0, |p| p.len());
        let id: Vec<usize> = (0..size).collect();
        let mut seen = std::collections::HashSet::new();
        seen.insert(id.clone());
        let mut queue = std::collections::VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for p in &self.perms {
                let h: Vec<usize> = g.iter().map(|&y| p[y]).collect();
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        seen.len()
    }
}

/// Anything that can decide word membership.
pub trait Decide: Sync {
    fn decide(&self, w: &Z2Word) -> Verdict;
}

impl Decide for MembershipOracle {
    fn decide(&self, w: &Z2Word) -> Verdict {
        MembershipOracle::decide(self, w)
    }
}

impl Decide for KernelOracle {
    fn decide(&self, w: &Z2Word) -> Verdict {
        KernelOracle::decide(self, w)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientTable {
    pub letters: u32,
    /// Shortlex-first representative of each coset.
    pub elements: Vec<Z2Word>,
    /// `right[i][k]` is the coset of `elements[i] * a_{k+1}`; `None` once the cap was hit.
    pub right: Vec<Vec<Option<usize>>>,
    /// No coset was dropped at the cap.
    pub complete: bool,
    /// Comparisons the oracle could not decide; those were taken as different.
    pub undecided: usize,
}

impl QuotientTable {
    pub fn order(&self) -> Option<usize> {
        self.complete.then_some(self.elements.len())
    }

    /// Coset of a word, by following the table.
    pub fn coset_of(&self, w: &Z2Word) -> Option<usize> {
        let mut cur = 0;
        for &x in w.letters() {
            cur = *self.right.get(cur)?.get(x as usize - 1)?.as_ref()?;
        }
        Some(cur)
    }

    /// Each letter acts as an involution on the cosets.
    pub fn letters_are_involutions(&self) -> bool {
        self.complete
            && (0..self.letters as usize).all(|k| {
                (0..self.elements.len()).all(|i| self.right[i][k].and_then(|j| self.right[j][k]) == Some(i))
            })
    }
}

/// Enumerates cosets of the subgroup decided by `oracle` in the group on `a1..a_letters`.
/// Two words lie in one coset when the oracle accepts `u^-1 v`.
pub fn quotient_enumerate(oracle: &dyn Decide, letters: u32, cap: usize) -> QuotientTable {
    let mut elements = vec![Z2Word::identity()];
    let mut right: Vec<Vec<Option<usize>>> = Vec::new();
    let mut complete = true;
    let mut undecided = 0;
    let mut i = 0;
    while i < elements.len() {
        let mut row = Vec::with_capacity(letters as usize);
        for k in 1..=letters {
            let v = elements[i].mul(&Z2Word::letter(k));
            let mut found = None;
            for (j, u) in elements.iter().enumerate() {
                match oracle.decide(&u.inverse().mul(&v)) {
                    Verdict::Yes => {
                        found = Some(j);
                        break;
                    }
                    Verdict::Unknown => undecided += 1,
                    Verdict::No => {}
                }
            }
            if found.is_none() {
                if elements.len() < cap {
                    elements.push(v);
                    found = Some(elements.len() - 1);
                } else {
                    complete = false;
                }
            }
            row.push(found);
        }
        right.push(row);
        i += 1;
    }
    QuotientTable {
        letters,
        elements,
        right,
        complete,
        undecided,
    }
}

/// Cosets of the subgroup generated by `relators` and their identifications,
/// decided by a bounded closure of length `length_bound`.
pub fn quotient_from_relators(
    relators: &[Z2Word],
    letters: u32,
    length_bound: usize,
    cap: usize,
    closure_cap: usize,
) -> Result<QuotientTable, QuotientError> {
    let h = restricted_closure(relators, letters, length_bound, closure_cap)?;
    let oracle = MembershipOracle::from_approx(&h);
    Ok(quotient_enumerate(&oracle, letters, cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_permutations() {
        for s in 1..8 {
            let k = KernelOracle::dihedral(s);
            assert!(KernelOracle::new(k.perms.clone()).is_ok());
            assert_eq!(k.group_order(), 2 * s, "s = {s}");
        }
    }

    #[test]
    fn quotient_by_kernel_matches_group() {
        for s in 1..7 {
            let k = KernelOracle::dihedral(s);
            let t = quotient_enumerate(&k, 2, 1000);
            assert_eq!(t.order(), Some(2 * s));
            assert!(t.letters_are_involutions());
        }
    }

    #[test]
    fn cap_marks_incomplete() {
        let t = quotient_enumerate(&MembershipOracle::Trivial, 2, 5);
        assert!(!t.complete);
        assert_eq!(t.order(), None);
    }

    #[test]
    fn rejects_non_involution() {
        assert!(KernelOracle::new(vec![vec![1, 2, 0]]).is_err());
    }
}
