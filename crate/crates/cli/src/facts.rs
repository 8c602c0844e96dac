//! Replays a corpus of pinned facts.

use anyhow::{anyhow, bail, Context, Result};
use partcat::correspondence::f_of_category;
use partcat::intertwiner::{intertwines, random_signed_permutation_block, t_of};
use partcat::partition::all_partitions;
use partcat::{
    Bounds, CategoryApprox, FreeWord, Named, Partition, RelationKind, Seed, SubgroupApprox, Z2Word,
};
use serde::Serialize;

use crate::commands::{
    cmd_member, cmd_quotient, cmd_roundtrip, cmd_simplify, cmd_subgroup, cmd_word, load_rep, parse_oracle,
    parse_partition, parse_partitions, QuotientSource, SubgroupRequest, SubgroupSource,
};
use crate::config::RunConfig;
use crate::report::{Outcome, Report};

pub const BUILTIN_CORPUS: &str = include_str!("../facts/corpus.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub id: String,
    pub kind: String,
    pub args: Vec<String>,
    pub line: usize,
}

/// Lines are `id | kind | arg | ...`; blank lines and `#` comments are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<Fact>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<String> = line.split('|').map(|f| f.trim().to_string()).collect();
        if fields.len() < 2 || fields[0].is_empty() || fields[1].is_empty() {
            bail!("line {}: expected `id | kind | arguments`", i + 1);
        }
        out.push(Fact {
            id: fields[0].clone(),
            kind: fields[1].clone(),
            args: fields[2..].to_vec(),
            line: i + 1,
        });
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
pub struct FactResult {
    pub id: String,
    pub kind: String,
    pub status: Outcome,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct FactsReport {
    pub config: Bounds,
    pub corpus: String,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub facts: Vec<FactResult>,
}

impl Report for FactsReport {
    const COMMAND: &'static str = "facts";
    fn outcome(&self) -> Outcome {
        self.facts.iter().fold(Outcome::Pass, |o, f| o.and(f.status))
    }
    fn headline(&self) -> String {
        format!(
            "facts from {}: {} of {} passed, {} failed, {} inconclusive",
            self.corpus, self.passed, self.total, self.failed, self.inconclusive
        )
    }
}

pub fn cmd_facts(cfg: &RunConfig, corpus_name: &str, corpus: &str, only: &[String]) -> Result<FactsReport> {
    let facts = parse_corpus(corpus)?;
    let mut results = Vec::new();
    for f in facts.iter().filter(|f| only.is_empty() || only.iter().any(|o| f.id.starts_with(o.as_str()))) {
        let (status, detail) = match replay(cfg, f) {
            Ok(r) => r,
            Err(e) => (Outcome::Fail, format!("error: {e:#}")),
        };
        results.push(FactResult {
            id: f.id.clone(),
            kind: f.kind.clone(),
            status,
            detail,
        });
    }
    let count = |o: Outcome| results.iter().filter(|r| r.status == o).count();
    Ok(FactsReport {
        config: cfg.bounds,
        corpus: corpus_name.to_string(),
        total: results.len(),
        passed: count(Outcome::Pass),
        failed: count(Outcome::Fail),
        inconclusive: count(Outcome::Inconclusive),
        facts: results,
    })
}

fn pass_if(ok: bool, detail: String) -> (Outcome, String) {
    (if ok { Outcome::Pass } else { Outcome::Fail }, detail)
}

fn gens(text: &str) -> Result<Vec<Partition>> {
    if text == "-" {
        return Ok(Vec::new());
    }
    parse_partitions(&text.split(',').map(|s| s.trim().to_string()).collect::<Vec<_>>())
}

fn flag(text: &str) -> Result<bool> {
    text.parse().map_err(|_| anyhow!("expected true or false, got {text:?}"))
}

fn close(cfg: &RunConfig, g: &[Partition]) -> Result<CategoryApprox> {
    let b = &cfg.bounds;
    Ok(CategoryApprox::closure(g, b.point_bound, b.work_bound, b.cap)?)
}

fn replay(cfg: &RunConfig, f: &Fact) -> Result<(Outcome, String)> {
    let a = &f.args;
    let arity = |n: usize| -> Result<()> {
        if a.len() == n {
            Ok(())
        } else {
            Err(anyhow!("line {}: {} takes {n} arguments, got {}", f.line, f.kind, a.len()))
        }
    };
    match f.kind.as_str() {
        "member" => {
            arity(2)?;
            let r = cmd_member(cfg, &gens(&a[0])?, &parse_partition(&a[1])?)?;
            let detail = match r.operations {
                Some(n) => format!("{} with a certificate of {n} operations", r.verdict),
                None => r.verdict.to_string(),
            };
            Ok((r.outcome(), detail))
        }
        "absent" => {
            arity(2)?;
            let c = close(cfg, &gens(&a[0])?)?;
            let found = c.contains_quick(&parse_partition(&a[1])?);
            if !c.is_saturated() {
                return Ok((Outcome::Inconclusive, "closure hit the cap".into()));
            }
            Ok(pass_if(!found, format!("found at bound: {found}")))
        }
        "verdict" => {
            arity(3)?;
            let c = close(cfg, &gens(&a[0])?)?;
            let got = match a[1].as_str() {
                "hyperoctahedral" => c.is_hyperoctahedral(),
                "simplifiable" => c.is_simplifiable(),
                other => bail!("unknown property {other:?}"),
            };
            Ok(pass_if(got.to_string() == a[2], format!("{} is {got}", a[1])))
        }
        "simplify-step" | "simplify" => {
            arity(2)?;
            let r = cmd_simplify(&parse_partition(&a[0])?, f.kind == "simplify")?;
            Ok(pass_if(r.result == a[1], format!("{} -> {}", r.input, r.result)))
        }
        "word" => {
            arity(2)?;
            let r = cmd_word(&parse_partition(&a[0])?, None)?;
            Ok(pass_if(r.word == a[1], format!("word {}", r.word)))
        }
        "roundtrip" => {
            arity(1)?;
            let seed = if let Some(o) = a[0].strip_prefix("oracle:") {
                Seed::Oracle(parse_oracle(o)?)
            } else if let Some(g) = a[0].strip_prefix("gens:") {
                Seed::Category(gens(g)?)
            } else {
                bail!("seed must start with oracle: or gens:");
            };
            let r = cmd_roundtrip(cfg, &seed)?;
            Ok((
                r.outcome(),
                format!(
                    "{} partitions and {} words, {} disagreements",
                    r.partitions_checked,
                    r.words_checked,
                    r.category_disagreements + r.subgroup_disagreements
                ),
            ))
        }
        "image" => {
            arity(2)?;
            let req = SubgroupRequest {
                source: SubgroupSource::Category(gens(&a[0])?),
                compare: Some(a[1].clone()),
                list: false,
                defects: false,
                queries: Vec::new(),
            };
            let r = cmd_subgroup(cfg, &req)?;
            let c = r.comparison.as_ref().expect("comparison requested");
            Ok((
                r.outcome(),
                format!("{} elements, {} missing, {} extra over {} words", r.size, c.missing, c.extra, c.words_checked),
            ))
        }
        "image-closed" => {
            arity(1)?;
            let b = &cfg.bounds;
            let h = f_of_category(&close(cfg, &gens(&a[0])?)?, b.length_bound, b.alphabet)?;
            let d = h.closure_defects(3);
            Ok(pass_if(d.is_empty(), format!("{} elements, defects {:?}", h.len(), d)))
        }
        "relation" => {
            arity(3)?;
            let rep = load_rep(&a[0])?;
            let kind = RelationKind::parse(&a[1]).ok_or_else(|| anyhow!("unknown relation {:?}", a[1]))?;
            let got = rep.relation_holds(kind);
            Ok(pass_if(got == flag(&a[2])?, format!("relation {kind} holds: {got}")))
        }
        "intertwines" => {
            arity(3)?;
            let rep = load_rep(&a[0])?;
            let got = intertwines(&rep, &parse_partition(&a[1])?)?;
            Ok(pass_if(got == flag(&a[2])?, format!("intertwines: {got}")))
        }
        "equivalence" => {
            arity(1)?;
            let count: u64 = a[0].parse().context("count")?;
            equivalence(count)
        }
        "t-compose" => {
            arity(2)?;
            let n: usize = a[0].parse().context("n")?;
            let side: usize = a[1].parse().context("points per side")?;
            t_compose(n, side)
        }
        "quotient" => {
            arity(3)?;
            let letters: u32 = a[0].parse().context("letters")?;
            let rel = Z2Word::parse(&a[1])?;
            let want: usize = a[2].parse().context("order")?;
            let src = QuotientSource::Relators {
                letters,
                relators: vec![rel],
            };
            let r = cmd_quotient(cfg, &src, None, 10 * want + 10)?;
            if r.outcome() != Outcome::Pass {
                return Ok((Outcome::Inconclusive, format!("{} cosets, incomplete", r.elements.len())));
            }
            Ok(pass_if(
                r.order == Some(want) && r.involutions,
                format!("order {:?}", r.order),
            ))
        }
        "odd-reaches-a1" => {
            arity(1)?;
            let w = Z2Word::parse(&a[0])?;
            if w.is_even() {
                bail!("{w} is even");
            }
            let b = &cfg.bounds;
            let h = SubgroupApprox::closure(std::slice::from_ref(&w), w.len(), true, b.alphabet.max(w.max_letter()), b.cap)?;
            let hit = h.contains(&Z2Word::letter(1));
            if !hit && !h.is_saturated() {
                return Ok((Outcome::Inconclusive, "closure hit the cap".into()));
            }
            Ok(pass_if(hit, format!("a1 reached: {hit}")))
        }
        "exponent-extraction" => {
            arity(4)?;
            let g: Vec<FreeWord> = a[0].split(',').map(|s| FreeWord::parse(s.trim())).collect::<Result<_, _>>()?;
            let len: usize = a[1].parse().context("length")?;
            let alphabet: u32 = a[2].parse().context("alphabet")?;
            let samples: usize = a[3].parse().context("samples")?;
            exponent_extraction(&g, len, alphabet, samples, cfg.bounds.cap)
        }
        other => bail!("line {}: unknown fact kind {other:?}", f.line),
    }
}

/// Random signed-permutation representations: fat crossing against relation iii,
/// pair positioner against relation iv.
fn equivalence(count: u64) -> Result<(Outcome, String)> {
    let fat = Named::FatCrossing.build();
    let pp = Named::PairPositioner.build();
    let mut bad = Vec::new();
    let mut iv_held = 0;
    for seed in 0..count {
        let n = if seed % 3 == 0 { 2 } else { 3 };
        let dim = 2 + (seed % 5) as usize;
        let rep = random_signed_permutation_block(n, dim, seed);
        let iii = rep.relation_holds(RelationKind::Iii);
        let iv = rep.relation_holds(RelationKind::Iv);
        iv_held += iv as usize;
        if !rep.flags().all() || intertwines(&rep, &fat)? != iii || intertwines(&rep, &pp)? != iv {
            bad.push(seed);
        }
    }
    Ok(pass_if(
        bad.is_empty(),
        format!("{count} representations, relation iv held in {iv_held}, mismatching seeds {bad:?}"),
    ))
}

/// Sparse check of `T_p T_q = n^loops T_pq` for all composable pairs.
fn t_compose(n: usize, side: usize) -> Result<(Outcome, String)> {
    let mut pairs = 0usize;
    let mut bad = Vec::new();
    for k in 0..=side {
        for l in 0..=side {
            for m in 0..=side {
                let qs = all_partitions(k, l);
                let ps = all_partitions(l, m);
                let tq: Vec<_> = qs.iter().map(|q| t_of(q, n)).collect();
                let tp: Vec<_> = ps.iter().map(|p| t_of(p, n)).collect();
                for (q, tq) in qs.iter().zip(&tq) {
                    for (p, tp) in ps.iter().zip(&tp) {
                        let (pq, loops) = Partition::compose(p, q)?;
                        let want = t_of(&pq, n).scaled((n as i64).pow(loops as u32));
                        if tp.compose_after(tq) != want && bad.len() < 5 {
                            bad.push(format!("{p} after {q}"));
                        }
                        pairs += 1;
                    }
                }
            }
        }
    }
    Ok(pass_if(bad.is_empty(), format!("{pairs} pairs, failures {bad:?}")))
}

/// Evenly spaced nontrivial elements of the closure; every `x_i^{e_i}` must lie in it.
fn exponent_extraction(g: &[FreeWord], len: usize, alphabet: u32, samples: usize, cap: usize) -> Result<(Outcome, String)> {
    let h = SubgroupApprox::closure(g, len, true, alphabet, cap)?;
    if !h.is_saturated() {
        return Ok((Outcome::Inconclusive, "closure hit the cap".into()));
    }
    let nontrivial: Vec<FreeWord> = h.sorted_elements().into_iter().filter(|w| !w.is_empty()).collect();
    if nontrivial.len() < samples {
        bail!("only {} nontrivial elements", nontrivial.len());
    }
    let mut bad = Vec::new();
    for j in 0..samples {
        let w = &nontrivial[j * nontrivial.len() / samples];
        for i in 1..=alphabet {
            let p = FreeWord::generator(i, 1).pow(w.exponent(i));
            if !h.contains(&p) && bad.len() < 5 {
                bad.push(format!("x{i}^{} from {w}", w.exponent(i)));
            }
        }
    }
    Ok(pass_if(
        bad.is_empty(),
        format!("{samples} of {} elements sampled, missing powers {bad:?}", nontrivial.len()),
    ))
}
