//! Words in the free product of copies of Z2 (letters `a_i`, all involutions)
//! and in the free group on `x_i = a1 a_{i+1}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("cannot parse word {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("word {0} has odd length and has no free-group form")]
    OddWord(Z2Word),
    #[error("letter index must be at least 1")]
    ZeroLetter,
}

/// Reduced word in `Z2 * Z2 * ...`, letters are indices starting at 1.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Z2Word(Vec<u32>);

impl Z2Word {
    pub fn identity() -> Self {
        Z2Word(Vec::new())
    }

    pub fn letter(i: u32) -> Self {
        assert!(i >= 1, "letters start at 1");
        Z2Word(vec![i])
    }

    /// Cancels neighbouring equal letters.
    pub fn reduce(letters: &[u32]) -> Self {
        let mut out: Vec<u32> = Vec::with_capacity(letters.len());
        for &x in letters {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Z2Word(out)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.0.len().is_multiple_of(2)
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn mul(&self, rhs: &Z2Word) -> Z2Word {
        let mut out = self.0.clone();
        for &x in &rhs.0 {
            if out.last() == Some(&x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        Z2Word(out)
    }

    pub fn inverse(&self) -> Z2Word {
        Z2Word(self.0.iter().rev().copied().collect())
    }

    pub fn pow(&self, k: i64) -> Z2Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Z2Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Letters renamed to 1, 2, ... in order of first occurrence.
    pub fn normalize_letters(&self) -> Z2Word {
        let mut map: Vec<(u32, u32)> = Vec::new();
        let letters = self
            .0
            .iter()
            .map(|&x| match map.iter().find(|m| m.0 == x) {
                Some(m) => m.1,
                None => {
                    map.push((x, map.len() as u32 + 1));
                    map.len() as u32
                }
            })
            .collect();
        Z2Word(letters)
    }

    /// Distinct letters in increasing order.
    pub fn alphabet(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Applies a letter substitution `a_k -> a_f(k)` and reduces.
    pub fn substitute(&self, f: impl Fn(u32) -> u32) -> Z2Word {
        let letters: Vec<u32> = self.0.iter().map(|&x| f(x)).collect();
        Z2Word::reduce(&letters)
    }

    /// Free-group form via `a_j a_k = x_{j-1}^-1 x_{k-1}` with `x_0 = e`.
    pub fn to_free(&self) -> Result<FreeWord, WordError> {
        if !self.is_even() {
            return Err(WordError::OddWord(self.clone()));
        }
        let mut out = FreeWord::identity();
        for pair in self.0.chunks(2) {
            let (j, k) = (pair[0], pair[1]);
            if j > 1 {
                out.push(j - 1, -1);
            }
            if k > 1 {
                out.push(k - 1, 1);
            }
        }
        Ok(out)
    }

    pub fn from_free(w: &FreeWord) -> Z2Word {
        let mut out = Z2Word::identity();
        for &(k, e) in w.syllables() {
            let x = if e > 0 {
                Z2Word::reduce(&[1, k + 1])
            } else {
                Z2Word::reduce(&[k + 1, 1])
            };
            out = out.mul(&x.pow(e.abs()));
        }
        out
    }

    pub fn apply_s0(&self, g: &S0Gen) -> Z2Word {
        match g {
            S0Gen::Identify(map) => self.substitute(|x| map.get(&x).copied().unwrap_or(x)),
            S0Gen::Conjugate(k) => Z2Word::letter(*k).mul(self).mul(&Z2Word::letter(*k)),
        }
    }

    pub fn parse(text: &str) -> Result<Z2Word, WordError> {
        let atoms = parse_word(text, 'a')?;
        let mut out = Z2Word::identity();
        for (k, e) in atoms {
            out = out.mul(&Z2Word::letter(k).pow(e));
        }
        Ok(out)
    }
}

impl Ord for Z2Word {
    /// Shortlex order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Z2Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Z2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "a{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Z2Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z2Word({self})")
    }
}

impl Serialize for Z2Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for Z2Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Z2Word::parse(s)
    }
}

/// Reduced word in the free group on `x1, x2, ...` as syllables `(index, exponent)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(Vec<(u32, i64)>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(k: u32, e: i64) -> Self {
        let mut w = FreeWord::identity();
        w.push(k, e);
        w
    }

    pub fn from_syllables(s: &[(u32, i64)]) -> Self {
        let mut w = FreeWord::identity();
        for &(k, e) in s {
            w.push(k, e);
        }
        w
    }

    fn push(&mut self, k: u32, e: i64) {
        if e == 0 {
            return;
        }
        match self.0.last_mut() {
            Some((j, f)) if *j == k => {
                *f = f.checked_add(e).expect("exponent overflow");
                if *f == 0 {
                    self.0.pop();
                }
            }
            _ => self.0.push((k, e)),
        }
    }

    pub fn syllables(&self) -> &[(u32, i64)] {
        &self.0
    }

    /// Free length: sum of absolute exponents.
    pub fn len(&self) -> usize {
        self.0.iter().map(|s| s.1.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().map(|s| s.0).max().unwrap_or(0)
    }

    pub fn mul(&self, rhs: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &(k, e) in &rhs.0 {
            out.push(k, e);
        }
        out
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|&(k, e)| (k, -e)).collect())
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Exponent sum of `x_i`.
    pub fn exponent(&self, i: u32) -> i64 {
        self.0.iter().filter(|s| s.0 == i).map(|s| s.1).sum()
    }

    /// Exponent sums of `x_1 .. x_max`.
    pub fn abelianize(&self) -> Vec<i64> {
        (1..=self.max_letter()).map(|i| self.exponent(i)).collect()
    }

    /// Substitutes every `x_k` by `image(k)` and reduces.
    pub fn substitute(&self, image: impl Fn(u32) -> FreeWord) -> FreeWord {
        let mut out = FreeWord::identity();
        for &(k, e) in &self.0 {
            out = out.mul(&image(k).pow(e));
        }
        out
    }

    pub fn apply_s(&self, g: &SGen) -> FreeWord {
        match g {
            SGen::Identify(map) => {
                self.substitute(|k| FreeWord::generator(map.get(&k).copied().unwrap_or(k), 1))
            }
            SGen::LeftMultiply(i) => self.substitute(|k| {
                FreeWord::generator(*i, -1).mul(&FreeWord::generator(k, 1))
            }),
            SGen::Delete(d) => self.substitute(|k| {
                if k == *d {
                    FreeWord::identity()
                } else {
                    FreeWord::generator(k, 1)
                }
            }),
            SGen::InvertAll => self.substitute(|k| FreeWord::generator(k, -1)),
            SGen::Conjugate(c) => c.mul(self).mul(&c.inverse()),
        }
    }

    pub fn parse(text: &str) -> Result<FreeWord, WordError> {
        let atoms = parse_word(text, 'x')?;
        let mut out = FreeWord::identity();
        for (k, e) in atoms {
            out.push(k, e);
        }
        Ok(out)
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, &(k, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            if e == 1 {
                write!(f, "x{k}")?;
            } else {
                write!(f, "x{k}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({self})")
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for FreeWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FreeWord::parse(s)
    }
}

/// Generators of the endomorphism semigroup acting on `Z2 * Z2 * ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum S0Gen {
    /// `a_k -> a_map(k)` for the listed letters, identity elsewhere.
    Identify(BTreeMap<u32, u32>),
    /// `w -> a_k w a_k`.
    Conjugate(u32),
}

impl fmt::Display for S0Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            S0Gen::Identify(m) => {
                write!(f, "identify[")?;
                for (i, (a, b)) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "a{a}->a{b}")?;
                }
                write!(f, "]")
            }
            S0Gen::Conjugate(k) => write!(f, "conjugate[a{k}]"),
        }
    }
}

/// Generators of the endomorphism semigroup acting on the free group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SGen {
    /// `x_k -> x_map(k)` for the listed letters.
    Identify(BTreeMap<u32, u32>),
    /// `x_k -> x_i^-1 x_k` for every `k`.
    LeftMultiply(u32),
    /// `x_k -> e`.
    Delete(u32),
    /// `x_k -> x_k^-1` for every `k`.
    InvertAll,
    /// `w -> c w c^-1`.
    Conjugate(FreeWord),
}

impl fmt::Display for SGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SGen::Identify(m) => {
                write!(f, "identify[")?;
                for (i, (a, b)) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "x{a}->x{b}")?;
                }
                write!(f, "]")
            }
            SGen::LeftMultiply(i) => write!(f, "left-multiply[x{i}^-1]"),
            SGen::Delete(k) => write!(f, "delete[x{k}]"),
            SGen::InvertAll => write!(f, "invert-all"),
            SGen::Conjugate(c) => write!(f, "conjugate[{c}]"),
        }
    }
}

/// All maps from `letters` into `1..=alphabet`, as identification maps.
pub fn identification_maps(letters: &[u32], alphabet: u32) -> Vec<BTreeMap<u32, u32>> {
    let mut out = Vec::new();
    let mut current = vec![1u32; letters.len()];
    if alphabet == 0 {
        return out;
    }
    loop {
        out.push(letters.iter().copied().zip(current.iter().copied()).collect());
        let mut i = 0;
        loop {
            if i == current.len() {
                return out;
            }
            if current[i] < alphabet {
                current[i] += 1;
                break;
            }
            current[i] = 1;
            i += 1;
        }
    }
}

/// A group word type with a distinguished endomorphism semigroup.
pub trait GroupWord: Clone + Eq + Hash + Ord + fmt::Display + Send + Sync {
    type Endo: Clone + fmt::Display + Send + Sync;
    /// Name of the semigroup, for reports.
    const SEMIGROUP: &'static str;

    fn identity() -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn len(&self) -> usize;
    fn max_letter(&self) -> u32;
    /// Images of `self` under the semigroup generators restricted to `alphabet` letters.
    fn endo_images(&self, alphabet: u32) -> Vec<(Self::Endo, Self)>;
}

impl GroupWord for Z2Word {
    type Endo = S0Gen;
    const SEMIGROUP: &'static str = "S0";

    fn identity() -> Self {
        Z2Word::identity()
    }
    fn mul(&self, rhs: &Self) -> Self {
        Z2Word::mul(self, rhs)
    }
    fn inverse(&self) -> Self {
        Z2Word::inverse(self)
    }
    fn len(&self) -> usize {
        Z2Word::len(self)
    }
    fn max_letter(&self) -> u32 {
        Z2Word::max_letter(self)
    }

    fn endo_images(&self, alphabet: u32) -> Vec<(S0Gen, Z2Word)> {
        let mut out = Vec::new();
        for map in identification_maps(&self.alphabet(), alphabet) {
            if map.iter().all(|(a, b)| a == b) {
                continue;
            }
            let g = S0Gen::Identify(map);
            let w = self.apply_s0(&g);
            out.push((g, w));
        }
        for k in 1..=alphabet {
            let g = S0Gen::Conjugate(k);
            let w = self.apply_s0(&g);
            out.push((g, w));
        }
        out
    }
}

impl GroupWord for FreeWord {
    type Endo = SGen;
    const SEMIGROUP: &'static str = "S";

    fn identity() -> Self {
        FreeWord::identity()
    }
    fn mul(&self, rhs: &Self) -> Self {
        FreeWord::mul(self, rhs)
    }
    fn inverse(&self) -> Self {
        FreeWord::inverse(self)
    }
    fn len(&self) -> usize {
        FreeWord::len(self)
    }
    fn max_letter(&self) -> u32 {
        FreeWord::max_letter(self)
    }

    fn endo_images(&self, alphabet: u32) -> Vec<(SGen, FreeWord)> {
        let mut letters: Vec<u32> = self.0.iter().map(|s| s.0).collect();
        letters.sort_unstable();
        letters.dedup();
        let mut gens = Vec::new();
        for map in identification_maps(&letters, alphabet) {
            if map.iter().any(|(a, b)| a != b) {
                gens.push(SGen::Identify(map));
            }
        }
        for i in 1..=alphabet {
            gens.push(SGen::LeftMultiply(i));
        }
        for &k in &letters {
            gens.push(SGen::Delete(k));
        }
        gens.push(SGen::InvertAll);
        for i in 1..=alphabet {
            gens.push(SGen::Conjugate(FreeWord::generator(i, 1)));
            gens.push(SGen::Conjugate(FreeWord::generator(i, -1)));
        }
        gens.into_iter()
            .map(|g| {
                let w = self.apply_s(&g);
                (g, w)
            })
            .collect()
    }
}

/// Parses `a1.a2^3.(a1.a3)^-2`, `e`, or the empty string into `(letter, exponent)` atoms.
fn parse_word(text: &str, letter: char) -> Result<Vec<(u32, i64)>, WordError> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let err = |reason: &str| WordError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let out = parse_product(&chars, &mut pos, letter).map_err(|r| err(&r))?;
    if pos != chars.len() {
        return Err(err(&format!("unexpected character at position {pos}")));
    }
    Ok(out)
}

fn parse_product(c: &[char], pos: &mut usize, letter: char) -> Result<Vec<(u32, i64)>, String> {
    let mut out = Vec::new();
    if *pos == c.len() || c[*pos] == ')' {
        return Ok(out);
    }
    loop {
        out.extend(parse_factor(c, pos, letter)?);
        if *pos < c.len() && (c[*pos] == '.' || c[*pos] == '*') {
            *pos += 1;
        } else {
            return Ok(out);
        }
    }
}

fn parse_int(c: &[char], pos: &mut usize) -> Result<i64, String> {
    let start = *pos;
    if *pos < c.len() && (c[*pos] == '-' || c[*pos] == '+') {
        *pos += 1;
    }
    while *pos < c.len() && c[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let s: String = c[start..*pos].iter().collect();
    s.parse::<i64>().map_err(|_| format!("expected a number at position {start}"))
}

fn parse_factor(c: &[char], pos: &mut usize, letter: char) -> Result<Vec<(u32, i64)>, String> {
    let base: Vec<(u32, i64)> = match c.get(*pos) {
        Some('(') => {
            *pos += 1;
            let inner = parse_product(c, pos, letter)?;
            if c.get(*pos) != Some(&')') {
                return Err("missing ')'".into());
            }
            *pos += 1;
            inner
        }
        Some('e') => {
            *pos += 1;
            Vec::new()
        }
        Some(&ch) if ch == letter => {
            *pos += 1;
            let k = parse_int(c, pos)?;
            if k < 1 {
                return Err("letter index must be at least 1".into());
            }
            vec![(k as u32, 1)]
        }
        _ => return Err(format!("expected '{letter}<n>', 'e' or '(' at position {pos}")),
    };
    if c.get(*pos) == Some(&'^') {
        *pos += 1;
        let e = parse_int(c, pos)?;
        let mut out = Vec::new();
        if e >= 0 {
            for _ in 0..e {
                out.extend(base.iter().copied());
            }
        } else {
            let inv: Vec<(u32, i64)> = base.iter().rev().map(|&(k, x)| (k, -x)).collect();
            for _ in 0..(-e) {
                out.extend(inv.iter().copied());
            }
        }
        Ok(out)
    } else {
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> Z2Word {
        Z2Word::parse(s).unwrap()
    }

    fn x(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    #[test]
    fn z2_parsing_and_reduction() {
        assert_eq!(z("a1.a1"), Z2Word::identity());
        assert_eq!(z("(a1.a2)^3").to_string(), "a1.a2.a1.a2.a1.a2");
        assert_eq!(z("(a1.a2)^-1").to_string(), "a2.a1");
        assert_eq!(z("e").to_string(), "e");
        assert_eq!(z("").len(), 0);
        assert!(Z2Word::parse("a0").is_err());
        assert!(Z2Word::parse("a1.").is_err());
        assert!(Z2Word::parse("(a1").is_err());
    }

    #[test]
    fn free_conversion_examples() {
        let w = z("a1.a2.a3.a1.a2.a3").to_free().unwrap();
        assert_eq!(w.to_string(), "x1.x2^-1.x1^-1.x2");
        assert_eq!(Z2Word::from_free(&w), z("a1.a2.a3.a1.a2.a3"));
        assert_eq!(z("(a1.a2)^3").to_free().unwrap(), x("x1^3"));
        assert_eq!(z("a1").to_free(), Err(WordError::OddWord(z("a1"))));
        assert_eq!(z("a2.a1").to_free().unwrap(), x("x1^-1"));
    }

    #[test]
    fn s0_generators() {
        let id: BTreeMap<u32, u32> = [(2, 1)].into_iter().collect();
        assert_eq!(z("a1.a2.a1").apply_s0(&S0Gen::Identify(id)), z("a1"));
        assert_eq!(z("a1.a2").apply_s0(&S0Gen::Conjugate(1)), z("a2.a1"));
    }

    #[test]
    fn s_generators() {
        assert_eq!(x("x1").apply_s(&SGen::LeftMultiply(1)), FreeWord::identity());
        assert_eq!(x("x2").apply_s(&SGen::LeftMultiply(1)), x("x1^-1.x2"));
        assert_eq!(x("x1.x2^3").apply_s(&SGen::Delete(1)), x("x2^3"));
        assert_eq!(x("x1.x2^-1").apply_s(&SGen::InvertAll), x("x1^-1.x2"));
        let m: BTreeMap<u32, u32> = [(2, 3)].into_iter().collect();
        assert_eq!(
            x("x1.x2.x1^-1.x2^-1").apply_s(&SGen::Identify(m)),
            x("x1.x3.x1^-1.x3^-1")
        );
    }

    #[test]
    fn exponents() {
        let w = x("x1^3.x2^-1.x1^-1");
        assert_eq!(w.abelianize(), vec![2, -1]);
        assert_eq!(w.exponent(5), 0);
        assert_eq!(w.len(), 5);
        assert_eq!(w.to_string(), "x1^3.x2^-1.x1^-1");
        assert_eq!(x("x1^64").exponent(1), 64);
    }

    #[test]
    fn identification_map_count() {
        assert_eq!(identification_maps(&[1, 2], 3).len(), 9);
        assert_eq!(identification_maps(&[], 3).len(), 1);
    }
}
