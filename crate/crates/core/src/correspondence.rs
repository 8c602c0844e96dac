//! Passing between simplifiable hyperoctahedral categories and subgroups of
//! `Z2 * Z2 * ...` that are invariant under letter identifications and
//! conjugation.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::closure::{CategoryApprox, ClosureError, Verdict};
use crate::partition::{all_partitions, Partition};
use crate::subgroup::{SubgroupApprox, SubgroupError};
use crate::words::{identification_maps, Z2Word};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CorrespondenceError {
    #[error("the category is not known to contain the pair positioner at this bound")]
    NotSimplifiable,
    #[error(transparent)]
    Closure(#[from] ClosureError),
    #[error(transparent)]
    Subgroup(#[from] SubgroupError),
    #[error("exponent modulus must be at least 1")]
    ZeroModulus,
}

/// Decides membership of words in a subgroup.
#[derive(Clone, Debug)]
pub enum MembershipOracle {
    /// Only the identity.
    Trivial,
    /// Even words with all exponent sums zero (the commutator subgroup in `x`-letters).
    Parity,
    /// Even words whose exponent sums are all divisible by `s`.
    ExponentMod(u32),
    /// A finite word set; answers `Unknown` outside it.
    WordSet {
        words: HashSet<Z2Word>,
        length_bound: usize,
        alphabet_bound: u32,
    },
    /// The inner subgroup intersected with the words over `a1..an`.
    Restricted(Box<MembershipOracle>, u32),
}

impl MembershipOracle {
    pub fn exponent_mod(s: u32) -> Result<Self, CorrespondenceError> {
        if s == 0 {
            Err(CorrespondenceError::ZeroModulus)
        } else {
            Ok(MembershipOracle::ExponentMod(s))
        }
    }

    pub fn from_approx(h: &SubgroupApprox<Z2Word>) -> Self {
        MembershipOracle::WordSet {
            words: h.elements().iter().cloned().collect(),
            length_bound: h.length_bound(),
            alphabet_bound: h.alphabet_bound(),
        }
    }

    pub fn decide(&self, w: &Z2Word) -> Verdict {
        let yes_no = |b: bool| if b { Verdict::Yes } else { Verdict::No };
        match self {
            MembershipOracle::Trivial => yes_no(w.is_empty()),
            MembershipOracle::Parity => yes_no(
                w.is_even() && w.to_free().expect("even").abelianize().iter().all(|&e| e == 0),
            ),
            MembershipOracle::ExponentMod(s) => yes_no(
                w.is_even()
                    && w.to_free()
                        .expect("even")
                        .abelianize()
                        .iter()
                        .all(|&e| e % *s as i64 == 0),
            ),
            MembershipOracle::WordSet {
                words,
                alphabet_bound,
                ..
            } => {
                let found = words.contains(w)
                    || (w.max_letter() > *alphabet_bound && words.contains(&w.normalize_letters()));
                if found {
                    Verdict::Yes
                } else {
                    Verdict::Unknown
                }
            }
            MembershipOracle::Restricted(inner, n) => {
                if w.max_letter() > *n {
                    Verdict::No
                } else {
                    inner.decide(w)
                }
            }
        }
    }

    pub fn restrict_to(&self, n: u32) -> MembershipOracle {
        MembershipOracle::Restricted(Box::new(self.clone()), n)
    }
}

impl fmt::Display for MembershipOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipOracle::Trivial => write!(f, "trivial"),
            MembershipOracle::Parity => write!(f, "parity"),
            MembershipOracle::ExponentMod(s) => write!(f, "exponent-mod-{s}"),
            MembershipOracle::WordSet {
                words,
                length_bound,
                alphabet_bound,
            } => write!(
                f,
                "word-set({} words, length <= {length_bound}, {alphabet_bound} letters)",
                words.len()
            ),
            MembershipOracle::Restricted(inner, n) => write!(f, "{inner} on a1..a{n}"),
        }
    }
}

/// All reduced words of length at most `max_len` over `a1..a_alphabet`, shortlex order.
pub fn all_words(max_len: usize, alphabet: u32) -> Vec<Z2Word> {
    let mut out = vec![Z2Word::identity()];
    let mut layer = vec![Vec::<u32>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 1..=alphabet {
                if w.last() != Some(&x) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().map(|v| Z2Word::reduce(v)));
        layer = next;
    }
    out
}

/// Images of `w` under every identification of its letters into `a1..a_alphabet`,
/// keeping those of length at most `max_len`.
pub fn identification_images(w: &Z2Word, alphabet: u32, max_len: usize) -> Vec<Z2Word> {
    let letters = w.alphabet();
    identification_maps(&letters, alphabet)
        .into_iter()
        .map(|m| w.substitute(|x| m[&x]))
        .filter(|v| v.len() <= max_len)
        .collect()
}

/// Words of the given partitions under all labellings into `a1..a_alphabet`.
pub fn words_of_partitions(parts: &[Partition], length_bound: usize, alphabet: u32) -> BTreeSet<Z2Word> {
    let base: BTreeSet<Z2Word> = parts
        .iter()
        .map(|p| p.word_of(None).expect("default labelling"))
        .collect();
    let base: Vec<Z2Word> = base.into_iter().collect();
    base.par_iter()
        .map(|w| identification_images(w, alphabet, length_bound))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// The subgroup read off a simplifiable category at the given bounds.
pub fn f_of_category(
    c: &CategoryApprox,
    length_bound: usize,
    alphabet: u32,
) -> Result<SubgroupApprox<Z2Word>, CorrespondenceError> {
    if c.is_simplifiable() != Verdict::Yes {
        return Err(CorrespondenceError::NotSimplifiable);
    }
    let words = words_of_partitions(&c.one_row_members(), length_bound, alphabet);
    Ok(SubgroupApprox::from_elements(words, length_bound, true, alphabet))
}

/// Membership in the category attached to a subgroup: `p` belongs when its
/// word (pairwise different letters) lies in the subgroup.
pub fn category_of_subgroup_contains(h: &MembershipOracle, p: &Partition) -> Verdict {
    h.decide(&p.word_of(None).expect("default labelling"))
}

/// Looks a word up in a set that is closed under letter identifications.
fn set_contains(set: &HashSet<Z2Word>, w: &Z2Word) -> bool {
    set.contains(w) || set.contains(&w.normalize_letters())
}

/// Starting point of a round trip.
#[derive(Clone, Debug)]
pub enum Seed {
    Oracle(MembershipOracle),
    Category(Vec<Partition>),
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seed::Oracle(o) => write!(f, "subgroup {o}"),
            Seed::Category(g) => {
                write!(f, "category <")?;
                for (i, p) in g.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ">")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Bounds {
    pub point_bound: usize,
    pub work_bound: usize,
    pub length_bound: usize,
    pub alphabet: u32,
    pub cap: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            point_bound: 8,
            work_bound: 14,
            length_bound: 8,
            alphabet: 4,
            cap: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundtripReport {
    pub seed: String,
    pub bounds: Bounds,
    pub partitions_checked: usize,
    pub words_checked: usize,
    pub subgroup_size: usize,
    pub category_disagreements: usize,
    pub subgroup_disagreements: usize,
    /// First few disagreements of either kind.
    pub examples: Vec<String>,
    pub saturated: bool,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.category_disagreements == 0 && self.subgroup_disagreements == 0
    }
}

fn partitions_up_to(points: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for n in 0..=points {
        for k in 0..=n {
            out.extend(all_partitions(k, n - k));
        }
    }
    out
}

fn one_row_up_to(points: usize) -> Vec<Partition> {
    (0..=points).flat_map(|n| all_partitions(0, n)).collect()
}

/// Checks `H = F(C_H)` and `C = C_F(C)` on all partitions and words within the bounds.
pub fn roundtrip_check(seed: &Seed, b: Bounds) -> Result<RoundtripReport, CorrespondenceError> {
    const EXAMPLES: usize = 10;
    let all = partitions_up_to(b.point_bound);
    let words = all_words(b.length_bound, b.alphabet);
    let mut examples = Vec::new();
    let mut note = |s: String| {
        if examples.len() < EXAMPLES {
            examples.push(s);
        }
    };

    // in_c: membership in the starting (or derived) category
    // h_set: the subgroup at bound as a word set
    let (in_c, h_set, saturated): (Box<dyn Fn(&Partition) -> bool + Sync>, HashSet<Z2Word>, bool) =
        match seed {
            Seed::Oracle(h) => {
                let h1 = h.clone();
                let members: Vec<Partition> = one_row_up_to(b.point_bound)
                    .into_iter()
                    .filter(|p| category_of_subgroup_contains(h, p) == Verdict::Yes)
                    .collect();
                let f = words_of_partitions(&members, b.length_bound, b.alphabet);
                let f: HashSet<Z2Word> = f.into_iter().collect();
                let mut sub = 0;
                for w in &words {
                    let want = h.decide(w) == Verdict::Yes;
                    if want != f.contains(w) {
                        sub += 1;
                        note(format!("word {w}: subgroup says {want}, F(C_H) says {}", !want));
                    }
                }
                let cat = all
                    .par_iter()
                    .filter(|p| {
                        let a = category_of_subgroup_contains(&h1, p) == Verdict::Yes;
                        let w = p.word_of(None).expect("default labelling");
                        a != set_contains(&f, &w)
                    })
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>();
                for p in &cat {
                    note(format!("partition {p}: C_H and C_F(C_H) differ"));
                }
                return Ok(RoundtripReport {
                    seed: seed.to_string(),
                    bounds: b,
                    partitions_checked: all.len(),
                    words_checked: words.len(),
                    subgroup_size: f.len(),
                    category_disagreements: cat.len(),
                    subgroup_disagreements: sub,
                    examples,
                    saturated: true,
                });
            }
            Seed::Category(gens) => {
                let c = CategoryApprox::closure(gens, b.point_bound, b.work_bound, b.cap)?;
                let f = f_of_category(&c, b.length_bound, b.alphabet)?;
                let set: HashSet<Z2Word> = f.elements().iter().cloned().collect();
                let sat = c.is_saturated();
                (Box::new(move |p: &Partition| c.contains_quick(p)), set, sat)
            }
        };

    let cat: Vec<String> = all
        .par_iter()
        .filter(|p| {
            let w = p.word_of(None).expect("default labelling");
            in_c(p) != set_contains(&h_set, &w)
        })
        .map(|p| p.to_string())
        .collect();
    for p in &cat {
        note(format!("partition {p}: C and C_F(C) differ"));
    }
    let derived: Vec<Partition> = one_row_up_to(b.point_bound)
        .into_iter()
        .filter(|p| set_contains(&h_set, &p.word_of(None).expect("default labelling")))
        .collect();
    let f2: HashSet<Z2Word> = words_of_partitions(&derived, b.length_bound, b.alphabet)
        .into_iter()
        .collect();
    let mut sub = 0;
    for w in &words {
        if h_set.contains(w) != f2.contains(w) {
            sub += 1;
            note(format!("word {w}: F(C) and F(C_F(C)) differ"));
        }
    }
    Ok(RoundtripReport {
        seed: seed.to_string(),
        bounds: b,
        partitions_checked: all.len(),
        words_checked: words.len(),
        subgroup_size: h_set.len(),
        category_disagreements: cat.len(),
        subgroup_disagreements: sub,
        examples,
        saturated,
    })
}

/// Closure of `generators` inside the words over `a1..an`: generators using
/// more letters enter through their identifications into `n` letters.
pub fn restricted_closure(
    generators: &[Z2Word],
    n: u32,
    length_bound: usize,
    cap: usize,
) -> Result<SubgroupApprox<Z2Word>, CorrespondenceError> {
    let mut gens: BTreeSet<Z2Word> = BTreeSet::new();
    for g in generators {
        for w in identification_images(g, n, length_bound) {
            gens.insert(w);
        }
    }
    let gens: Vec<Z2Word> = gens.into_iter().collect();
    Ok(SubgroupApprox::closure(&gens, length_bound, true, n, cap)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct InductiveLimitStep {
    pub n: u32,
    pub size_n: usize,
    pub size_next_restricted: usize,
    pub agrees: bool,
}

/// Compares the closure over `n` letters with the closure over `n + 1`
/// letters cut down to `n` letters, for `n` up to `n_max - 1`.
pub fn inductive_limit_check(
    generators: &[Z2Word],
    n_max: u32,
    length_bound: usize,
    cap: usize,
) -> Result<Vec<InductiveLimitStep>, CorrespondenceError> {
    let mut out = Vec::new();
    for n in 1..n_max {
        let a = restricted_closure(generators, n, length_bound, cap)?;
        let b = restricted_closure(generators, n + 1, length_bound, cap)?;
        let sa: BTreeSet<Z2Word> = a.elements().iter().cloned().collect();
        let sb: BTreeSet<Z2Word> = b.restrict_to(n).into_iter().collect();
        out.push(InductiveLimitStep {
            n,
            size_n: sa.len(),
            size_next_restricted: sb.len(),
            agrees: sa == sb,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Named;

    fn z(s: &str) -> Z2Word {
        Z2Word::parse(s).unwrap()
    }

    #[test]
    fn oracles() {
        let halflib = z("a1.a2.a3.a1.a2.a3");
        assert_eq!(MembershipOracle::Parity.decide(&halflib), Verdict::Yes);
        assert_eq!(MembershipOracle::Parity.decide(&z("a1")), Verdict::No);
        assert_eq!(MembershipOracle::ExponentMod(3).decide(&z("(a1.a2)^3")), Verdict::Yes);
        assert_eq!(MembershipOracle::ExponentMod(3).decide(&z("(a1.a2)^2")), Verdict::No);
        assert_eq!(MembershipOracle::Trivial.decide(&Z2Word::identity()), Verdict::Yes);
        let r = MembershipOracle::Parity.restrict_to(2);
        assert_eq!(r.decide(&halflib), Verdict::No);
        assert!(MembershipOracle::exponent_mod(0).is_err());
    }

    #[test]
    fn word_enumeration_counts() {
        // 1 + 4 + 4*3 + 4*9
        assert_eq!(all_words(3, 4).len(), 53);
    }

    #[test]
    fn pair_positioner_category_gives_trivial_subgroup() {
        let c = CategoryApprox::closure(&[Named::PairPositioner.build()], 8, 14, 100_000).unwrap();
        let f = f_of_category(&c, 8, 4).unwrap();
        assert_eq!(f.sorted_elements(), vec![Z2Word::identity()]);
    }

    #[test]
    fn refuses_non_simplifiable() {
        let c = CategoryApprox::closure(&[Named::FourBlock.build()], 8, 14, 100_000).unwrap();
        assert_eq!(f_of_category(&c, 8, 4).unwrap_err(), CorrespondenceError::NotSimplifiable);
    }

    #[test]
    fn category_of_subgroup_membership() {
        let p = Named::HalfLib.build();
        assert_eq!(category_of_subgroup_contains(&MembershipOracle::Parity, &p), Verdict::Yes);
        assert_eq!(category_of_subgroup_contains(&MembershipOracle::Trivial, &p), Verdict::No);
        let pp = Named::PairPositioner.build();
        assert_eq!(category_of_subgroup_contains(&MembershipOracle::Trivial, &pp), Verdict::Yes);
    }

    #[test]
    fn inductive_limit_for_dihedral_relator() {
        let steps = inductive_limit_check(&[z("(a1.a2)^3")], 4, 8, 1_000_000).unwrap();
        assert!(steps.iter().all(|s| s.agrees), "{steps:?}");
    }
}
