//! One function per subcommand. Each returns a serializable report.

use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use partcat::closure::ClosureSummary;
use partcat::correspondence::{all_words, f_of_category, roundtrip_check, RoundtripReport};
use partcat::intertwiner::{
    counterexample_rep, diagonal_sign_rep, intertwines_with_budget, random_signed_permutation_block,
    transpose_symmetry_check, word_projection_search, HyperoctahedralFlags, IntertwinerReport, RelationReport,
    TransposeSymmetry, WordProjectionSearch, DEFAULT_BUDGET,
};
use partcat::quotient::{quotient_enumerate, quotient_from_relators, KernelOracle, QuotientTable};
use partcat::subgroup::ClosureDefects;
use partcat::words::GroupWord;
use partcat::{
    Bounds, CategoryApprox, FreeWord, Membership, MembershipOracle, Named, Partition, RelationKind, Representation,
    Seed, SubgroupApprox, Verdict, Z2Word,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::report::{Outcome, Report};

const EXAMPLES_KEPT: usize = 10;

pub fn parse_partition(text: &str) -> Result<Partition> {
    Partition::parse_any(text).with_context(|| format!("bad partition {text:?}"))
}

pub fn parse_partitions(texts: &[String]) -> Result<Vec<Partition>> {
    texts.iter().map(|t| parse_partition(t)).collect()
}

/// `trivial`, `parity`, `exp3`, `exp:3` or `exponent-mod-3`.
pub fn parse_oracle(text: &str) -> Result<MembershipOracle> {
    let t = text.trim().to_ascii_lowercase();
    match t.as_str() {
        "trivial" => return Ok(MembershipOracle::Trivial),
        "parity" => return Ok(MembershipOracle::Parity),
        _ => {}
    }
    let digits = ["exponent-mod-", "exp:", "exp"]
        .iter()
        .find_map(|p| t.strip_prefix(p))
        .ok_or_else(|| anyhow!("unknown oracle {text:?} (expected trivial, parity or expN)"))?;
    let s: u32 = digits.parse().with_context(|| format!("bad modulus in {text:?}"))?;
    Ok(MembershipOracle::exponent_mod(s)?)
}

fn close(cfg: &RunConfig, gens: &[Partition]) -> Result<CategoryApprox> {
    let b = &cfg.bounds;
    Ok(CategoryApprox::closure(gens, b.point_bound, b.work_bound, b.cap)?)
}

fn names(ps: &[Partition]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

#[derive(Debug, Serialize)]
pub struct ClosureReport {
    pub config: Bounds,
    pub summary: ClosureSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<String>>,
}

impl Report for ClosureReport {
    const COMMAND: &'static str = "closure";
    fn outcome(&self) -> Outcome {
        if self.summary.saturated {
            Outcome::Pass
        } else {
            Outcome::Inconclusive
        }
    }
    fn headline(&self) -> String {
        format!(
            "closure of <{}>: {} classes, {} members, {}",
            self.summary.generators.join(", "),
            self.summary.classes,
            self.summary.members,
            if self.summary.saturated { "saturated" } else { "cap reached" }
        )
    }
}

pub fn cmd_closure(cfg: &RunConfig, gens: &[Partition], list: bool) -> Result<ClosureReport> {
    let c = close(cfg, gens)?;
    let classes = list.then(|| {
        let mut v = names(&c.class_representatives());
        v.sort();
        v
    });
    Ok(ClosureReport {
        config: cfg.bounds,
        summary: c.summary(),
        classes,
    })
}

#[derive(Debug, Serialize)]
pub struct MemberReport {
    pub config: Bounds,
    pub generators: Vec<String>,
    pub target: String,
    pub verdict: Verdict,
    pub saturated: bool,
    pub operations: Option<usize>,
    pub certificate: Vec<String>,
    /// The certificate, replayed through the partition operations, gives the target.
    pub replayed: Option<bool>,
}

impl Report for MemberReport {
    const COMMAND: &'static str = "member";
    fn outcome(&self) -> Outcome {
        match (self.verdict, self.replayed) {
            (Verdict::Yes, Some(true)) => Outcome::Pass,
            (Verdict::Unknown, _) => Outcome::Inconclusive,
            _ => Outcome::Fail,
        }
    }
    fn headline(&self) -> String {
        format!("{} in <{}>: {}", self.target, self.generators.join(", "), self.verdict)
    }
}

pub fn cmd_member(cfg: &RunConfig, gens: &[Partition], target: &Partition) -> Result<MemberReport> {
    let c = close(cfg, gens)?;
    let (verdict, operations, certificate, replayed) = match c.contains(target) {
        Membership::Yes(cert) => {
            let ok = cert.replay(gens).map(|p| &p == target).unwrap_or(false);
            (Verdict::Yes, Some(cert.op_count()), cert.lines(), Some(ok))
        }
        Membership::Unknown => (Verdict::Unknown, None, Vec::new(), None),
    };
    Ok(MemberReport {
        config: cfg.bounds,
        generators: names(gens),
        target: target.to_string(),
        verdict,
        saturated: c.is_saturated(),
        operations,
        certificate,
        replayed,
    })
}

#[derive(Debug, Serialize)]
pub struct SimplifyReport {
    pub input: String,
    pub one_row: String,
    pub full: bool,
    /// Each one-step reduction, with the input's block letters.
    pub steps: Vec<String>,
    pub result: String,
}

impl Report for SimplifyReport {
    const COMMAND: &'static str = "simplify";
    fn outcome(&self) -> Outcome {
        Outcome::Pass
    }
    fn headline(&self) -> String {
        format!("{} -> {}", self.input, self.result)
    }
}

/// One reduction step, or all of them with `full`.
pub fn cmd_simplify(p: &Partition, full: bool) -> Result<SimplifyReport> {
    let one = p.to_one_row();
    let mut w = one.block_word()?;
    let mut steps = Vec::new();
    while !w.is_single_leg() {
        w = w.reduce_once();
        steps.push(w.to_string());
        if !full {
            break;
        }
    }
    let result = match (full, steps.last()) {
        (false, Some(s)) => s.clone(),
        _ => p.simplify().to_string(),
    };
    Ok(SimplifyReport {
        input: p.to_string(),
        one_row: one.to_string(),
        full,
        steps,
        result,
    })
}

#[derive(Debug, Serialize)]
pub struct WordReport {
    pub input: String,
    pub labelling: Option<Vec<u32>>,
    pub word: String,
    pub length: usize,
    pub even: bool,
    /// The word in the free basis `x_k = a1 a_{k+1}`, for even words.
    pub free: Option<String>,
}

impl Report for WordReport {
    const COMMAND: &'static str = "word";
    fn outcome(&self) -> Outcome {
        Outcome::Pass
    }
    fn headline(&self) -> String {
        format!("word of {}: {}", self.input, self.word)
    }
}

pub fn cmd_word(p: &Partition, labelling: Option<&[u32]>) -> Result<WordReport> {
    if labelling.is_some_and(|l| l.contains(&0)) {
        bail!("labelling letters start at 1");
    }
    let w = p.word_of(labelling)?;
    Ok(WordReport {
        input: p.to_string(),
        labelling: labelling.map(|l| l.to_vec()),
        word: w.to_string(),
        length: w.len(),
        even: w.is_even(),
        free: w.to_free().ok().map(|x| x.to_string()),
    })
}

/// Where the subgroup comes from.
#[derive(Debug, Clone)]
pub enum SubgroupSource {
    /// Generating words, in `a`-letters or in free letters.
    Words { words: Vec<String>, free: bool, invariant: bool },
    /// The image of the category generated by these partitions.
    Category(Vec<Partition>),
}

#[derive(Debug, Clone)]
pub struct SubgroupRequest {
    pub source: SubgroupSource,
    /// Oracle to compare with on all words at the bound.
    pub compare: Option<String>,
    pub list: bool,
    pub defects: bool,
    pub queries: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct QueryResult {
    pub word: String,
    pub member: bool,
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct Comparison {
    pub oracle: String,
    pub words_checked: usize,
    /// Accepted by the oracle but not in the subgroup.
    pub missing: usize,
    /// In the subgroup but rejected by the oracle.
    pub extra: usize,
    pub examples: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct SubgroupReport {
    pub config: Bounds,
    pub source: String,
    pub letters: &'static str,
    pub invariant: bool,
    pub size: usize,
    pub saturated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defects: Option<ClosureDefects>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    pub queries: Vec<QueryResult>,
    pub comparison: Option<Comparison>,
}

impl Report for SubgroupReport {
    const COMMAND: &'static str = "subgroup";
    fn outcome(&self) -> Outcome {
        if self.comparison.as_ref().is_some_and(|c| c.missing + c.extra > 0) {
            Outcome::Fail
        } else if !self.saturated {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        }
    }
    fn headline(&self) -> String {
        let mut s = format!("subgroup {}: {} elements", self.source, self.size);
        if let Some(c) = &self.comparison {
            s.push_str(&format!(", {} disagreements with {}", c.missing + c.extra, c.oracle));
        }
        s
    }
}

fn describe<W>(h: &SubgroupApprox<W>, req: &SubgroupRequest) -> Result<(Option<ClosureDefects>, Option<Vec<String>>, Vec<QueryResult>)>
where
    W: GroupWord + FromStr,
    W::Err: std::error::Error + Send + Sync + 'static,
{
    let defects = req.defects.then(|| h.closure_defects(EXAMPLES_KEPT));
    let elements = req
        .list
        .then(|| h.sorted_elements().iter().map(|w| w.to_string()).collect());
    let mut queries = Vec::new();
    for q in &req.queries {
        let w: W = q.parse().with_context(|| format!("bad word {q:?}"))?;
        queries.push(QueryResult {
            word: w.to_string(),
            member: h.contains(&w),
            witness: h.witness_chain(&w),
        });
    }
    Ok((defects, elements, queries))
}

fn compare(h: &SubgroupApprox<Z2Word>, oracle: &MembershipOracle, b: &Bounds) -> Comparison {
    let words = all_words(b.length_bound, b.alphabet);
    let mut c = Comparison {
        oracle: oracle.to_string(),
        words_checked: words.len(),
        missing: 0,
        extra: 0,
        examples: Vec::new(),
    };
    for w in &words {
        let want = oracle.decide(w) == Verdict::Yes;
        let have = h.contains(w);
        if want != have {
            if want {
                c.missing += 1;
            } else {
                c.extra += 1;
            }
            if c.examples.len() < EXAMPLES_KEPT {
                c.examples.push(format!("{w}: subgroup {have}, oracle {want}"));
            }
        }
    }
    c
}

pub fn cmd_subgroup(cfg: &RunConfig, req: &SubgroupRequest) -> Result<SubgroupReport> {
    let b = cfg.bounds;
    let oracle = req.compare.as_deref().map(parse_oracle).transpose()?;
    let report = |source: String, letters, invariant, size, saturated, parts: (_, _, _), comparison| SubgroupReport {
        config: b,
        source,
        letters,
        invariant,
        size,
        saturated,
        defects: parts.0,
        elements: parts.1,
        queries: parts.2,
        comparison,
    };
    match &req.source {
        SubgroupSource::Words { words, free: true, invariant } => {
            if oracle.is_some() {
                bail!("--compare needs words in a-letters");
            }
            let gens: Vec<FreeWord> = words
                .iter()
                .map(|w| FreeWord::parse(w).with_context(|| format!("bad word {w:?}")))
                .collect::<Result<_>>()?;
            let h = SubgroupApprox::closure(&gens, b.length_bound, *invariant, b.alphabet, b.cap)?;
            let source = format!("<{}>", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "));
            Ok(report(source, "x", *invariant, h.len(), h.is_saturated(), describe(&h, req)?, None))
        }
        SubgroupSource::Words { words, free: false, invariant } => {
            let gens: Vec<Z2Word> = words
                .iter()
                .map(|w| Z2Word::parse(w).with_context(|| format!("bad word {w:?}")))
                .collect::<Result<_>>()?;
            let h = SubgroupApprox::closure(&gens, b.length_bound, *invariant, b.alphabet, b.cap)?;
            let source = format!("<{}>", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "));
            let cmp = oracle.map(|o| compare(&h, &o, &b));
            Ok(report(source, "a", *invariant, h.len(), h.is_saturated(), describe(&h, req)?, cmp))
        }
        SubgroupSource::Category(gens) => {
            let c = close(cfg, gens)?;
            let h = f_of_category(&c, b.length_bound, b.alphabet)?;
            let source = format!("F(<{}>)", names(gens).join(", "));
            let cmp = oracle.map(|o| compare(&h, &o, &b));
            let saturated = c.is_saturated() && h.is_saturated();
            Ok(report(source, "a", true, h.len(), saturated, describe(&h, req)?, cmp))
        }
    }
}

impl Report for RoundtripReport {
    const COMMAND: &'static str = "roundtrip";
    fn outcome(&self) -> Outcome {
        if !self.passed() {
            Outcome::Fail
        } else if !self.saturated {
            Outcome::Inconclusive
        } else {
            Outcome::Pass
        }
    }
    fn headline(&self) -> String {
        format!(
            "round trip from {}: {} category and {} subgroup disagreements",
            self.seed, self.category_disagreements, self.subgroup_disagreements
        )
    }
}

pub fn cmd_roundtrip(cfg: &RunConfig, seed: &Seed) -> Result<RoundtripReport> {
    Ok(roundtrip_check(seed, cfg.bounds)?)
}

#[derive(Debug, Clone)]
pub enum QuotientSource {
    Relators { letters: u32, relators: Vec<Z2Word> },
    /// The kernel of the dihedral action of order `2s`.
    Dihedral(usize),
}

#[derive(Debug, Serialize)]
pub struct QuotientReport {
    pub config: Bounds,
    pub source: String,
    pub letters: u32,
    /// Word length of the bounded closure of the relators.
    pub closure_length: Option<usize>,
    pub order: Option<usize>,
    pub complete: bool,
    /// Comparisons the oracle left open; those words were kept apart.
    pub undecided: usize,
    pub involutions: bool,
    pub elements: Vec<String>,
    /// Lengths of the representatives, which are geodesic.
    pub lengths: Vec<usize>,
    /// `table[i][k]` is the coset of element `i` times `a_{k+1}`.
    pub table: Vec<Vec<Option<usize>>>,
}

impl Report for QuotientReport {
    const COMMAND: &'static str = "quotient";
    fn outcome(&self) -> Outcome {
        if self.complete {
            Outcome::Pass
        } else {
            Outcome::Inconclusive
        }
    }
    fn headline(&self) -> String {
        match self.order {
            Some(n) => format!("quotient by {}: {n} elements", self.source),
            None => format!("quotient by {}: more than {} elements", self.source, self.elements.len()),
        }
    }
}

pub fn cmd_quotient(
    cfg: &RunConfig,
    source: &QuotientSource,
    closure_length: Option<usize>,
    max_cosets: usize,
) -> Result<QuotientReport> {
    let (name, letters, used, t): (String, u32, Option<usize>, QuotientTable) = match source {
        QuotientSource::Relators { letters, relators } => {
            if *letters == 0 {
                bail!("need at least one letter");
            }
            let longest = relators.iter().map(|r| r.len()).max().unwrap_or(0);
            let len = closure_length.unwrap_or(cfg.bounds.length_bound.max(2 * longest));
            let t = quotient_from_relators(relators, *letters, len, max_cosets, cfg.bounds.cap)?;
            let names: Vec<String> = relators.iter().map(|r| r.to_string()).collect();
            (format!("<<{}>>", names.join(", ")), *letters, Some(len), t)
        }
        QuotientSource::Dihedral(s) => {
            if *s == 0 {
                bail!("dihedral order parameter must be positive");
            }
            let k = KernelOracle::dihedral(*s);
            (format!("the kernel of the dihedral action D{s}"), 2, None, quotient_enumerate(&k, 2, max_cosets))
        }
    };
    Ok(QuotientReport {
        config: cfg.bounds,
        source: name,
        letters,
        closure_length: used,
        order: t.order(),
        complete: t.complete,
        undecided: t.undecided,
        involutions: t.letters_are_involutions(),
        lengths: t.elements.iter().map(|w| w.len()).collect(),
        elements: t.elements.iter().map(|w| w.to_string()).collect(),
        table: t.right,
    })
}

/// `counterexample`, `diagonal:N`, `random:N:DIM:SEED`, or a file in the text format.
pub fn load_rep(spec: &str) -> Result<Representation> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<usize> { s.parse().with_context(|| format!("bad number {s:?} in {spec:?}")) };
    match parts.as_slice() {
        ["counterexample"] => Ok(counterexample_rep()),
        ["diagonal", n] => {
            let n = num(n)?;
            if n == 0 {
                bail!("diagonal representation needs n >= 1");
            }
            Ok(diagonal_sign_rep(n))
        }
        ["random", n, dim, seed] => {
            let (n, dim) = (num(n)?, num(dim)?);
            if n == 0 || dim == 0 {
                bail!("random representation needs n, dim >= 1");
            }
            Ok(random_signed_permutation_block(n, dim, num(seed)? as u64))
        }
        _ => {
            let text = std::fs::read_to_string(spec).with_context(|| format!("cannot read representation {spec:?}"))?;
            Ok(Representation::parse(&text)?)
        }
    }
}

#[derive(Debug, Clone)]
pub struct IntertwinerRequest {
    pub rep: String,
    pub partitions: Vec<Partition>,
    pub relations: Vec<RelationKind>,
    pub budget: usize,
    pub transpose: bool,
    pub word_projection: bool,
}

impl IntertwinerRequest {
    pub fn new(rep: &str) -> Self {
        IntertwinerRequest {
            rep: rep.to_string(),
            partitions: vec![Named::FatCrossing.build(), Named::PairPositioner.build(), Named::FourBlock.build()],
            relations: RelationKind::ALL.to_vec(),
            budget: DEFAULT_BUDGET,
            transpose: false,
            word_projection: false,
        }
    }
}

/// Intertwining of a partition against the relation it is equivalent to.
#[derive(Debug, Serialize)]
pub struct Equivalence {
    pub partition: String,
    pub relation: RelationKind,
    pub intertwines: bool,
    pub relation_holds: bool,
}

#[derive(Debug, Serialize)]
pub struct IntertwinerLabReport {
    pub rep: String,
    pub n: usize,
    pub dim: usize,
    pub flags: HyperoctahedralFlags,
    pub relations: Vec<RelationReport>,
    pub intertwiners: Vec<IntertwinerReport>,
    /// Checked when the flags hold and the partition is a fat crossing or pair positioner.
    pub equivalences: Vec<Equivalence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transpose: Option<TransposeSymmetry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub word_projections: Vec<(String, WordProjectionSearch)>,
}

impl Report for IntertwinerLabReport {
    const COMMAND: &'static str = "intertwiner";
    fn outcome(&self) -> Outcome {
        let eq_ok = self.equivalences.iter().all(|e| e.intertwines == e.relation_holds);
        let tr_ok = self.transpose.as_ref().is_none_or(|t| t.unchanged());
        if eq_ok && tr_ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
    fn headline(&self) -> String {
        let held: Vec<String> = self
            .intertwiners
            .iter()
            .map(|r| format!("{} {}", r.partition, if r.holds { "yes" } else { "no" }))
            .collect();
        format!("representation {} (n = {}, dim = {}): {}", self.rep, self.n, self.dim, held.join(", "))
    }
}

pub fn cmd_intertwiner(req: &IntertwinerRequest) -> Result<IntertwinerLabReport> {
    let rep = load_rep(&req.rep)?;
    let flags = rep.flags();
    let relations: Vec<RelationReport> = req.relations.iter().map(|&k| rep.relation_check(k)).collect();
    let mut intertwiners = Vec::new();
    let mut equivalences = Vec::new();
    for p in &req.partitions {
        let r = intertwines_with_budget(&rep, p, req.budget)?;
        let kind = if *p == Named::FatCrossing.build() {
            Some(RelationKind::Iii)
        } else if *p == Named::PairPositioner.build() {
            Some(RelationKind::Iv)
        } else {
            None
        };
        if let (true, Some(kind)) = (flags.all(), kind) {
            equivalences.push(Equivalence {
                partition: p.to_string(),
                relation: kind,
                intertwines: r.holds,
                relation_holds: rep.relation_holds(kind),
            });
        }
        intertwiners.push(r);
    }
    let transpose = if req.transpose {
        Some(transpose_symmetry_check(&rep, &req.partitions)?)
    } else {
        None
    };
    let mut word_projections = Vec::new();
    if req.word_projection {
        for p in req.partitions.iter().filter(|p| p.is_one_row()) {
            word_projections.push((p.to_string(), word_projection_search(&rep, p)?));
        }
    }
    Ok(IntertwinerLabReport {
        rep: req.rep.clone(),
        n: rep.n(),
        dim: rep.dim(),
        flags,
        relations,
        intertwiners,
        equivalences,
        transpose,
        word_projections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_names() {
        assert!(matches!(parse_oracle("Parity").unwrap(), MembershipOracle::Parity));
        for t in ["exp3", "exp:3", "exponent-mod-3"] {
            assert!(matches!(parse_oracle(t).unwrap(), MembershipOracle::ExponentMod(3)), "{t}");
        }
        assert!(parse_oracle("exp0").is_err());
        assert!(parse_oracle("odd").is_err());
    }

    #[test]
    fn simplify_one_step_and_full() {
        let p = parse_partition(":abbacacaca").unwrap();
        let one = cmd_simplify(&p, false).unwrap();
        assert_eq!(one.result, ":aacacaca");
        let full = cmd_simplify(&p, true).unwrap();
        assert_eq!(full.steps, [":aacacaca", ":cacaca"]);
        assert_eq!(full.result, ":ababab");
        let done = cmd_simplify(&parse_partition(":abab").unwrap(), false).unwrap();
        assert!(done.steps.is_empty());
        assert_eq!(done.result, ":abab");
    }

    #[test]
    fn word_with_labelling() {
        let p = parse_partition(":abab").unwrap();
        assert_eq!(cmd_word(&p, None).unwrap().free.as_deref(), Some("x1^2"));
        assert_eq!(cmd_word(&p, Some(&[2, 2])).unwrap().length, 0);
        assert!(cmd_word(&p, Some(&[0, 1])).is_err());
    }

    #[test]
    fn rep_specs() {
        assert_eq!(load_rep("counterexample").unwrap().n(), 3);
        assert_eq!(load_rep("diagonal:2").unwrap().n(), 2);
        assert_eq!(load_rep("random:3:4:1").unwrap().dim(), 4);
        assert!(load_rep("random:3:x:1").is_err());
        assert!(load_rep("/no/such/file").is_err());
    }
}
