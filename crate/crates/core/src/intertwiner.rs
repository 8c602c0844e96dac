//! The maps `T_p` in exact integer arithmetic and intertwiner checks against
//! concrete matrix families `u = (u_ij)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::partition::Partition;

/// Default ceiling on `n^k` for intertwiner checks.
pub const DEFAULT_BUDGET: usize = 10_000;

/// Failing index tuples kept per check.
const FAILURES_KEPT: usize = 10;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum IntertwinerError {
    #[error("representation file: {0}")]
    Format(String),
    #[error("representation violates the hyperoctahedral relations: {0}")]
    Flags(String),
    #[error("check needs {needed} index tuples per side, above the budget {budget}")]
    Budget { needed: usize, budget: usize },
    #[error("n must be at least 1")]
    ZeroDimension,
    #[error("choice must give a generator for each of the {letters} letters")]
    Choice { letters: usize },
    #[error("partition must be one-row and in single-leg form")]
    NotSingleLeg,
}

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.concat(),
        }
    }

    /// Projection onto the coordinates listed.
    pub fn projection(n: usize, coords: &[usize]) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for &i in coords {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        out
    }

    pub fn add_assign(&mut self, rhs: &IntMatrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }

    pub fn scale(&self, s: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn is_projection(&self) -> bool {
        self.is_symmetric() && self.mul(self) == *self
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Kinds of relations on the `u_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    /// `u_ij` self-adjoint with `u_ij^2` a projection.
    I,
    /// Squares sum to one along every row and column.
    Ii,
    /// Squares commute with each other.
    Iii,
    /// Squares commute with every `u_kl`.
    Iv,
}

impl RelationKind {
    pub const ALL: [RelationKind; 4] = [RelationKind::I, RelationKind::Ii, RelationKind::Iii, RelationKind::Iv];

    pub fn parse(text: &str) -> Option<RelationKind> {
        match text.trim().to_ascii_lowercase().as_str() {
            "i" | "1" => Some(RelationKind::I),
            "ii" | "2" => Some(RelationKind::Ii),
            "iii" | "3" => Some(RelationKind::Iii),
            "iv" | "4" => Some(RelationKind::Iv),
            _ => None,
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationKind::I => "i",
            RelationKind::Ii => "ii",
            RelationKind::Iii => "iii",
            RelationKind::Iv => "iv",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub kind: RelationKind,
    pub holds: bool,
    /// First few failures, indices 1-based.
    pub failures: Vec<String>,
}

/// Flags for the relations of the free hyperoctahedral quantum group.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HyperoctahedralFlags {
    pub self_adjoint: bool,
    pub squares_are_projections: bool,
    pub square_sums_are_one: bool,
    pub orthogonal: bool,
}

impl HyperoctahedralFlags {
    pub fn all(&self) -> bool {
        self.self_adjoint && self.squares_are_projections && self.square_sums_are_one && self.orthogonal
    }
}

/// A family `u_ij`, `1 <= i, j <= n`, of `dim x dim` integer matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    n: usize,
    dim: usize,
    u: Vec<IntMatrix>,
}

impl Representation {
    /// `u[i * n + j]` is `u_{i+1, j+1}`.
    pub fn new(n: usize, dim: usize, u: Vec<IntMatrix>) -> Result<Self, IntertwinerError> {
        if n == 0 {
            return Err(IntertwinerError::ZeroDimension);
        }
        if u.len() != n * n {
            return Err(IntertwinerError::Format(format!("expected {} matrices, got {}", n * n, u.len())));
        }
        if let Some(m) = u.iter().find(|m| m.rows != dim || m.cols != dim) {
            return Err(IntertwinerError::Format(format!(
                "matrix of shape {}x{}, expected {dim}x{dim}",
                m.rows, m.cols
            )));
        }
        Ok(Representation { n, dim, u })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `u_ij` with 0-based indices.
    pub fn entry(&self, i: usize, j: usize) -> &IntMatrix {
        &self.u[i * self.n + j]
    }

    fn square(&self, i: usize, j: usize) -> IntMatrix {
        let m = self.entry(i, j);
        m.mul(m)
    }

    pub fn transpose(&self) -> Representation {
        let mut u = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                u.push(self.entry(j, i).clone());
            }
        }
        Representation { n: self.n, dim: self.dim, u }
    }

    /// Reads `n`, `dim`, then `n^2` matrices `u_11, u_12, ..., u_nn`, each row-major.
    /// Everything after `#` on a line is ignored.
    pub fn parse(text: &str) -> Result<Self, IntertwinerError> {
        let mut nums = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("");
            for tok in line.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let v: i64 = tok
                    .parse()
                    .map_err(|_| IntertwinerError::Format(format!("not an integer: {tok}")))?;
                nums.push(v);
            }
        }
        if nums.len() < 2 {
            return Err(IntertwinerError::Format("missing n and dim".into()));
        }
        let (n, dim) = (nums[0], nums[1]);
        if n < 1 || dim < 1 {
            return Err(IntertwinerError::Format("n and dim must be positive".into()));
        }
        let (n, dim) = (n as usize, dim as usize);
        let body = &nums[2..];
        if body.len() != n * n * dim * dim {
            return Err(IntertwinerError::Format(format!(
                "expected {} entries, found {}",
                n * n * dim * dim,
                body.len()
            )));
        }
        let u = body
            .chunks(dim * dim)
            .map(|c| IntMatrix {
                rows: dim,
                cols: dim,
                data: c.to_vec(),
            })
            .collect();
        Representation::new(n, dim, u)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.dim);
        for i in 0..self.n {
            for j in 0..self.n {
                s.push_str(&format!("# u{}{}\n", i + 1, j + 1));
                let m = self.entry(i, j);
                for r in 0..self.dim {
                    let row: Vec<String> = (0..self.dim).map(|c| m.get(r, c).to_string()).collect();
                    s.push_str(&row.join(" "));
                    s.push('\n');
                }
            }
        }
        s
    }

    pub fn flags(&self) -> HyperoctahedralFlags {
        let n = self.n;
        let id = IntMatrix::identity(self.dim);
        let pairs = || (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)));
        let self_adjoint = self.u.iter().all(IntMatrix::is_symmetric);
        let squares_are_projections = pairs().all(|(i, j)| self.square(i, j).is_projection());
        let sums = (0..n).all(|i| {
            let mut r = IntMatrix::zero(self.dim, self.dim);
            let mut c = IntMatrix::zero(self.dim, self.dim);
            for k in 0..n {
                r.add_assign(&self.square(i, k));
                c.add_assign(&self.square(k, i));
            }
            r == id && c == id
        });
        let orthogonal = pairs().all(|(i, j)| {
            i == j
                || (0..n).all(|k| {
                    self.entry(i, k).mul(self.entry(j, k)).is_zero() && self.entry(k, i).mul(self.entry(k, j)).is_zero()
                })
        });
        HyperoctahedralFlags {
            self_adjoint,
            squares_are_projections,
            square_sums_are_one: sums,
            orthogonal,
        }
    }

    /// Exhaustive check of one relation kind.
    pub fn relation_check(&self, kind: RelationKind) -> RelationReport {
        let n = self.n;
        let mut failures = Vec::new();
        let mut fail = |s: String| {
            failures.push(s);
        };
        match kind {
            RelationKind::I => {
                for i in 0..n {
                    for j in 0..n {
                        let m = self.entry(i, j);
                        if !m.is_symmetric() {
                            fail(format!("u{}{} is not self-adjoint", i + 1, j + 1));
                        } else if !self.square(i, j).is_projection() {
                            fail(format!("u{}{}^2 is not a projection", i + 1, j + 1));
                        }
                    }
                }
            }
            RelationKind::Ii => {
                let id = IntMatrix::identity(self.dim);
                for i in 0..n {
                    let mut r = IntMatrix::zero(self.dim, self.dim);
                    let mut c = IntMatrix::zero(self.dim, self.dim);
                    for k in 0..n {
                        r.add_assign(&self.square(i, k));
                        c.add_assign(&self.square(k, i));
                    }
                    if r != id {
                        fail(format!("row {} squares do not sum to 1", i + 1));
                    }
                    if c != id {
                        fail(format!("column {} squares do not sum to 1", i + 1));
                    }
                }
            }
            RelationKind::Iii | RelationKind::Iv => {
                let squares: Vec<IntMatrix> = (0..n * n).map(|x| self.square(x / n, x % n)).collect();
                for a in 0..n * n {
                    for b in 0..n * n {
                        let other = if kind == RelationKind::Iii { &squares[b] } else { &self.u[b] };
                        if squares[a].mul(other) != other.mul(&squares[a]) {
                            let sq = if kind == RelationKind::Iii { "^2" } else { "" };
                            fail(format!(
                                "u{}{}^2 and u{}{}{sq} do not commute",
                                a / n + 1,
                                a % n + 1,
                                b / n + 1,
                                b % n + 1
                            ));
                        }
                    }
                }
            }
        }
        let holds = failures.is_empty();
        failures.truncate(FAILURES_KEPT);
        RelationReport { kind, holds, failures }
    }

    pub fn relation_holds(&self, kind: RelationKind) -> bool {
        self.relation_check(kind).holds
    }
}

/// `T_p` as a 0/1 map, multi-indices encoded in base `n`, most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseTensorMap {
    pub n: usize,
    pub k_in: usize,
    pub l_out: usize,
    /// `(output, input)` pairs with coefficient 1, sorted.
    pub entries: Vec<(usize, usize)>,
}

fn encode(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &x| acc * n + x)
}

pub fn decode(mut code: usize, len: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = code % n;
        code /= n;
    }
    out
}

fn checked_pow(n: usize, e: usize) -> Option<usize> {
    n.checked_pow(e as u32)
}

/// `delta_p` on 0-based index tuples.
pub fn delta(p: &Partition, upper: &[usize], lower: &[usize]) -> Result<bool, crate::partition::PartitionError> {
    p.delta(upper, lower)
}

impl SparseTensorMap {
    /// Image of `e_j` (input code `j`) as a list of output codes.
    pub fn column(&self, input: usize) -> Vec<usize> {
        self.entries.iter().filter(|e| e.1 == input).map(|e| e.0).collect()
    }

    /// `self ∘ before`, as a map from `(output, input)` to its coefficient.
    pub fn compose_after(&self, before: &SparseTensorMap) -> BTreeMap<(usize, usize), i64> {
        assert_eq!(self.k_in, before.l_out, "degree mismatch");
        let mut by_input: HashMap<usize, Vec<usize>> = HashMap::new();
        for &(o, i) in &self.entries {
            by_input.entry(i).or_default().push(o);
        }
        let mut out = BTreeMap::new();
        for &(mid, i) in &before.entries {
            if let Some(outs) = by_input.get(&mid) {
                for &o in outs {
                    *out.entry((o, i)).or_insert(0) += 1;
                }
            }
        }
        out
    }

    pub fn scaled(&self, s: i64) -> BTreeMap<(usize, usize), i64> {
        self.entries.iter().map(|&e| (e, s)).collect()
    }
}

/// `T_p` for base dimension `n`; one entry per assignment of values to blocks.
pub fn t_of(p: &Partition, n: usize) -> SparseTensorMap {
    let (k, l) = (p.upper_len(), p.lower_len());
    let blocks = p.block_count();
    let labels = p.labels();
    let total = n.pow(blocks as u32);
    let mut entries: Vec<(usize, usize)> = (0..total)
        .map(|code| {
            let vals = decode(code, blocks, n);
            let idx: Vec<usize> = labels.iter().map(|&b| vals[b as usize]).collect();
            (encode(&idx[k..], n), encode(&idx[..k], n))
        })
        .collect();
    entries.sort_unstable();
    SparseTensorMap { n, k_in: k, l_out: l, entries }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerReport {
    pub partition: String,
    pub n: usize,
    pub dim: usize,
    pub holds: bool,
    pub index_pairs_checked: usize,
    /// First few `(output, input)` tuples where the two sides differ, 1-based.
    pub failures: Vec<String>,
}

/// Checks `T_p u^{⊗k} = u^{⊗l} T_p` entrywise, refusing when `n^max(k, l)` exceeds `budget`.
pub fn intertwines_with_budget(
    rep: &Representation,
    p: &Partition,
    budget: usize,
) -> Result<IntertwinerReport, IntertwinerError> {
    let flags = rep.flags();
    if !flags.all() {
        return Err(IntertwinerError::Flags(format!("{flags:?}")));
    }
    let n = rep.n;
    let (k, l) = (p.upper_len(), p.lower_len());
    let needed = checked_pow(n, k.max(l)).unwrap_or(usize::MAX);
    if needed > budget {
        return Err(IntertwinerError::Budget { needed, budget });
    }
    let t = t_of(p, n);
    // admissible inputs c per output a, and admissible outputs d per input b
    let mut inputs_of: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut outputs_of: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(o, i) in &t.entries {
        inputs_of.entry(o).or_default().push(i);
        outputs_of.entry(i).or_default().push(o);
    }
    let nk = n.pow(k as u32);
    let nl = n.pow(l as u32);
    let product = |rows: &[usize], cols: &[usize]| -> IntMatrix {
        let mut m = IntMatrix::identity(rep.dim);
        for (&r, &c) in rows.iter().zip(cols) {
            m = m.mul(rep.entry(r, c));
        }
        m
    };
    let empty = Vec::new();
    let bad: Vec<Vec<(usize, usize)>> = (0..nl)
        .into_par_iter()
        .map(|a| {
            let av = decode(a, l, n);
            let mut bad = Vec::new();
            for b in 0..nk {
                let bv = decode(b, k, n);
                let mut lhs = IntMatrix::zero(rep.dim, rep.dim);
                for &c in inputs_of.get(&a).unwrap_or(&empty) {
                    lhs.add_assign(&product(&decode(c, k, n), &bv));
                }
                let mut rhs = IntMatrix::zero(rep.dim, rep.dim);
                for &d in outputs_of.get(&b).unwrap_or(&empty) {
                    rhs.add_assign(&product(&av, &decode(d, l, n)));
                }
                if lhs != rhs {
                    bad.push((a, b));
                }
            }
            bad
        })
        .collect();
    let bad: Vec<(usize, usize)> = bad.into_iter().flatten().collect();
    let show = |v: Vec<usize>| v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",");
    Ok(IntertwinerReport {
        partition: p.to_string(),
        n,
        dim: rep.dim,
        holds: bad.is_empty(),
        index_pairs_checked: nk * nl,
        failures: bad
            .iter()
            .take(FAILURES_KEPT)
            .map(|&(a, b)| format!("out ({}) in ({})", show(decode(a, l, n)), show(decode(b, k, n))))
            .collect(),
    })
}

pub fn intertwines(rep: &Representation, p: &Partition) -> Result<bool, IntertwinerError> {
    Ok(intertwines_with_budget(rep, p, DEFAULT_BUDGET)?.holds)
}

/// The 3x3 family on `C^3` whose squares commute but do not commute with `u_11`.
pub fn counterexample_rep() -> Representation {
    let p = |i: usize| IntMatrix::projection(3, &[i]);
    let swap = IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]);
    let zero = IntMatrix::zero(3, 3);
    let p13 = IntMatrix::projection(3, &[0, 2]);
    let u = vec![
        swap,
        p(2),
        zero.clone(),
        p(2),
        p(0),
        p(1),
        zero,
        p(1),
        p13,
    ];
    Representation::new(3, 3, u).expect("fixed shape")
}

/// `u_ii` diagonal with a single `-1` at position `i`, off-diagonal entries zero.
pub fn diagonal_sign_rep(n: usize) -> Representation {
    let mut u = vec![IntMatrix::zero(n, n); n * n];
    for i in 0..n {
        let mut m = IntMatrix::identity(n);
        m.set(i, i, -1);
        u[i * n + i] = m;
    }
    Representation::new(n, n, u).expect("fixed shape")
}

/// Every basis vector `x` of `C^dim` carries a permutation `s_x` of `0..n`
/// drawn from a small pool; `u_ij` acts as a random signed involution on the
/// span of `{x : s_x(i) = j}` and as zero elsewhere.
pub fn random_signed_permutation_block(n: usize, dim: usize, seed: u64) -> Representation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool_size = rng.gen_range(1..=3);
    let pool: Vec<Vec<usize>> = (0..pool_size)
        .map(|_| {
            let mut s: Vec<usize> = (0..n).collect();
            s.shuffle(&mut rng);
            s
        })
        .collect();
    let sigma: Vec<&Vec<usize>> = (0..dim).map(|_| &pool[rng.gen_range(0..pool.len())]).collect();
    let mut u = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut support: Vec<usize> = (0..dim).filter(|&x| sigma[x][i] == j).collect();
            support.shuffle(&mut rng);
            let mut m = IntMatrix::zero(dim, dim);
            let mut rest = support.as_slice();
            while let Some((&x, tail)) = rest.split_first() {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                match tail.split_first() {
                    Some((&y, tail2)) if rng.gen_bool(0.75) => {
                        m.set(x, y, sign);
                        m.set(y, x, sign);
                        rest = tail2;
                    }
                    _ => {
                        m.set(x, x, sign);
                        rest = tail;
                    }
                }
            }
            u.push(m);
        }
    }
    Representation::new(n, dim, u).expect("fixed shape")
}

#[derive(Clone, Debug, Serialize)]
pub struct WordProjection {
    /// The substituted product equals the range projection `q`.
    pub product_is_q: bool,
    /// `q a_1 ... a_s = q a_k ... a_{s+1}` for the requested split.
    pub split: Option<bool>,
}

/// Substitutes `u_{choice[r]}` for the `r`-th letter of a single-leg word
/// and compares with the range projection (product of the squares).
pub fn word_projection_check(
    rep: &Representation,
    p: &Partition,
    choice: &[(usize, usize)],
    split: Option<usize>,
) -> Result<WordProjection, IntertwinerError> {
    if !p.is_one_row() || !p.is_single_leg() {
        return Err(IntertwinerError::NotSingleLeg);
    }
    let letters = p.lower_labels();
    if choice.len() != p.block_count() || choice.iter().any(|&(i, j)| i >= rep.n || j >= rep.n) {
        return Err(IntertwinerError::Choice {
            letters: p.block_count(),
        });
    }
    let gen = |pos: usize| {
        let (i, j) = choice[letters[pos] as usize];
        rep.entry(i, j)
    };
    let kk = letters.len();
    let mut q = IntMatrix::identity(rep.dim);
    for pos in 0..kk {
        let m = gen(pos);
        q = q.mul(&m.mul(m));
    }
    let mut prod = IntMatrix::identity(rep.dim);
    for pos in 0..kk {
        prod = prod.mul(gen(pos));
    }
    let split = match split {
        Some(s) if (1..=kk).contains(&s) => {
            let mut left = q.clone();
            for pos in 0..s {
                left = left.mul(gen(pos));
            }
            let mut right = q.clone();
            for pos in (s..kk).rev() {
                right = right.mul(gen(pos));
            }
            Some(left == right)
        }
        Some(_) => return Err(IntertwinerError::Choice { letters: kk }),
        None => None,
    };
    Ok(WordProjection {
        product_is_q: prod == q,
        split,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WordProjectionSearch {
    pub choices_checked: usize,
    /// First choice (1-based generator indices, per letter) where the product differs from `q`.
    pub failing_choice: Option<Vec<(usize, usize)>>,
}

/// Tries every assignment of generators to the letters of `p`.
pub fn word_projection_search(rep: &Representation, p: &Partition) -> Result<WordProjectionSearch, IntertwinerError> {
    let m = p.block_count();
    let gens = rep.n * rep.n;
    let total = checked_pow(gens, m).unwrap_or(usize::MAX);
    if total > DEFAULT_BUDGET * 100 {
        return Err(IntertwinerError::Budget {
            needed: total,
            budget: DEFAULT_BUDGET * 100,
        });
    }
    for code in 0..total {
        let choice: Vec<(usize, usize)> = decode(code, m, gens)
            .into_iter()
            .map(|g| (g / rep.n, g % rep.n))
            .collect();
        if !word_projection_check(rep, p, &choice, None)?.product_is_q {
            return Ok(WordProjectionSearch {
                choices_checked: code + 1,
                failing_choice: Some(choice.iter().map(|&(i, j)| (i + 1, j + 1)).collect()),
            });
        }
    }
    Ok(WordProjectionSearch {
        choices_checked: total,
        failing_choice: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TransposeSymmetry {
    pub flags_equal: bool,
    /// `(kind, original, transposed)`.
    pub relations: Vec<(RelationKind, bool, bool)>,
    /// `(partition, original, transposed)` for each intertwiner check requested.
    pub intertwiners: Vec<(String, bool, bool)>,
}

impl TransposeSymmetry {
    pub fn unchanged(&self) -> bool {
        self.flags_equal
            && self.relations.iter().all(|r| r.1 == r.2)
            && self.intertwiners.iter().all(|r| r.1 == r.2)
    }
}

/// Reruns every relation check and the given intertwiner checks on `u^t`.
pub fn transpose_symmetry_check(
    rep: &Representation,
    partitions: &[Partition],
) -> Result<TransposeSymmetry, IntertwinerError> {
    let t = rep.transpose();
    let relations = RelationKind::ALL
        .iter()
        .map(|&k| (k, rep.relation_holds(k), t.relation_holds(k)))
        .collect();
    let mut intertwiners = Vec::new();
    for p in partitions {
        intertwiners.push((p.to_string(), intertwines(rep, p)?, intertwines(&t, p)?));
    }
    Ok(TransposeSymmetry {
        flags_equal: rep.flags() == t.flags(),
        relations,
        intertwiners,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Named;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert!(delta(&p(":aaaa"), &[], &[1, 1, 1, 1]).unwrap());
        assert!(delta(&p("ab:ba"), &[0, 1], &[1, 0]).unwrap());
        assert!(!delta(&p(":aa"), &[], &[0, 1]).unwrap());
        assert!(delta(&p(":aa"), &[0], &[0, 0]).is_err());
    }

    #[test]
    fn t_of_examples() {
        let id = t_of(&p("a:a"), 3);
        assert_eq!(id.entries, vec![(0, 0), (1, 1), (2, 2)]);
        let pair = t_of(&p(":aa"), 3);
        assert_eq!(pair.entries, vec![(0, 0), (4, 0), (8, 0)]);
        let four = t_of(&p(":aaaa"), 2);
        assert_eq!(four.column(0), vec![0, 15]);
    }

    #[test]
    fn counterexample_entries() {
        let r = counterexample_rep();
        assert!(r.flags().all());
        let w11 = r.entry(0, 0);
        assert_eq!(w11.mul(w11), IntMatrix::projection(3, &[0, 1]));
        let p1 = IntMatrix::projection(3, &[0]);
        let e1 = [1, 0, 0];
        assert_eq!(w11.mul(&p1).apply(&e1), vec![0, 1, 0]);
        assert_eq!(p1.mul(w11).apply(&e1), vec![0, 0, 0]);
        assert!(r.relation_holds(RelationKind::Iii));
        assert!(!r.relation_holds(RelationKind::Iv));
    }

    #[test]
    fn counterexample_intertwiners() {
        let r = counterexample_rep();
        assert!(intertwines(&r, &Named::FatCrossing.build()).unwrap());
        assert!(!intertwines(&r, &Named::PairPositioner.build()).unwrap());
        assert!(intertwines(&r, &Named::FourBlock.build()).unwrap());
    }

    #[test]
    fn diagonal_rep_satisfies_everything() {
        for n in 1..4 {
            let r = diagonal_sign_rep(n);
            assert!(r.flags().all());
            for k in RelationKind::ALL {
                assert!(r.relation_holds(k));
            }
        }
    }

    #[test]
    fn random_reps_are_hyperoctahedral() {
        for seed in 0..20 {
            let r = random_signed_permutation_block(3, 5, seed);
            assert!(r.flags().all(), "seed {seed}");
        }
    }

    #[test]
    fn file_round_trip() {
        let r = counterexample_rep();
        let back = Representation::parse(&r.to_text()).unwrap();
        assert_eq!(back, r);
        assert!(Representation::parse("2 1 1 0 0").is_err());
    }

    #[test]
    fn refuses_bad_flags_and_budget() {
        let bad = Representation::new(1, 1, vec![IntMatrix::from_rows(&[vec![2]])]).unwrap();
        assert!(matches!(intertwines(&bad, &p(":aa")), Err(IntertwinerError::Flags(_))));
        let r = diagonal_sign_rep(3);
        assert!(matches!(
            intertwines_with_budget(&r, &Named::FatCrossing.build(), 10),
            Err(IntertwinerError::Budget { .. })
        ));
    }

    #[test]
    fn word_projection() {
        let d = diagonal_sign_rep(2);
        let s = word_projection_search(&d, &p(":abab")).unwrap();
        assert!(s.failing_choice.is_none());
        let r = counterexample_rep();
        let s = word_projection_search(&r, &p(":abab")).unwrap();
        assert!(s.failing_choice.is_some());
        // orthogonal supports: u11 and u21 live on orthogonal ranges
        let w = word_projection_check(&r, &p(":ab"), &[(0, 0), (1, 0)], Some(1)).unwrap();
        assert!(w.product_is_q);
    }

    #[test]
    fn transpose_symmetry() {
        let r = counterexample_rep();
        let t = transpose_symmetry_check(&r, &[Named::FatCrossing.build()]).unwrap();
        assert!(t.unchanged());
        assert!(t.relations.iter().any(|x| x.0 == RelationKind::Iii && x.1));
    }
}
