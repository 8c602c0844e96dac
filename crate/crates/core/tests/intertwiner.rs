use std::collections::BTreeMap;

use partcat::intertwiner::{
    counterexample_rep, decode, diagonal_sign_rep, intertwines, random_signed_permutation_block, t_of,
    transpose_symmetry_check, IntertwinerError,
};
use partcat::partition::all_partitions;
use partcat::{IntMatrix, Named, Partition, RelationKind, Representation};

/// Dense matrix of `T_p` built directly from the block condition.
fn dense_t(p: &Partition, n: usize) -> Vec<Vec<i64>> {
    let (k, l) = (p.upper_len(), p.lower_len());
    let rows = n.pow(l as u32);
    let cols = n.pow(k as u32);
    let mut m = vec![vec![0i64; cols]; rows];
    for (o, row) in m.iter_mut().enumerate() {
        let out = decode(o, l, n);
        for (i, x) in row.iter_mut().enumerate() {
            let inp = decode(i, k, n);
            let idx: Vec<usize> = inp.iter().chain(&out).copied().collect();
            let ok = (0..idx.len()).all(|a| (0..idx.len()).all(|b| p.labels()[a] != p.labels()[b] || idx[a] == idx[b]));
            *x = ok as i64;
        }
    }
    m
}

fn dense_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|t| row[t] * b[t][j]).sum()).collect())
        .collect()
}

#[test]
fn sparse_map_matches_dense_definition() {
    for n in [2usize, 3] {
        for pts in 0..=5 {
            for k in 0..=pts {
                for p in all_partitions(k, pts - k) {
                    let t = t_of(&p, n);
                    let d = dense_t(&p, n);
                    let mut from_sparse = vec![vec![0i64; n.pow(k as u32)]; n.pow((pts - k) as u32)];
                    for &(o, i) in &t.entries {
                        from_sparse[o][i] = 1;
                    }
                    assert_eq!(from_sparse, d, "{p}");
                    assert_eq!(t.entries.len(), n.pow(p.block_count() as u32));
                }
            }
        }
    }
}

#[test]
fn composition_scales_by_loops() {
    let mut pairs = 0;
    for n in [2usize, 3] {
        for k in 0..=3 {
            for l in 0..=3 {
                for m in 0..=3 {
                    let qs = all_partitions(k, l);
                    let ps = all_partitions(l, m);
                    let dq: Vec<_> = qs.iter().map(|q| dense_t(q, n)).collect();
                    let dp: Vec<_> = ps.iter().map(|p| dense_t(p, n)).collect();
                    for (q, tq) in qs.iter().zip(&dq) {
                        for (p, tp) in ps.iter().zip(&dp) {
                            let (pq, loops) = Partition::compose(p, q).unwrap();
                            let lhs = dense_mul(tp, tq);
                            let scale = (n as i64).pow(loops as u32);
                            let rhs: Vec<Vec<i64>> = dense_t(&pq, n)
                                .into_iter()
                                .map(|r| r.into_iter().map(|x| x * scale).collect())
                                .collect();
                            assert_eq!(lhs, rhs, "p = {p}, q = {q}, n = {n}");
                            let sparse = t_of(p, n).compose_after(&t_of(q, n));
                            let want: BTreeMap<(usize, usize), i64> = t_of(&pq, n).scaled(scale);
                            assert_eq!(sparse, want);
                            pairs += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(pairs > 100_000);
}

fn random_reps() -> Vec<Representation> {
    let mut reps = Vec::new();
    for seed in 0..24u64 {
        let n = if seed % 3 == 0 { 2 } else { 3 };
        let dim = 2 + (seed % 5) as usize;
        reps.push(random_signed_permutation_block(n, dim, seed));
    }
    reps
}

#[test]
fn intertwiners_match_relations_on_random_reps() {
    let fat = Named::FatCrossing.build();
    let pp = Named::PairPositioner.build();
    let mut iv_outcomes = [0usize; 2];
    for r in random_reps() {
        assert!(r.flags().all());
        assert_eq!(intertwines(&r, &fat).unwrap(), r.relation_holds(RelationKind::Iii));
        let iv = r.relation_holds(RelationKind::Iv);
        assert_eq!(intertwines(&r, &pp).unwrap(), iv, "{}", r.to_text());
        iv_outcomes[iv as usize] += 1;
        assert!(intertwines(&r, &Named::FourBlock.build()).unwrap());
    }
    assert!(iv_outcomes[0] > 0 && iv_outcomes[1] > 0, "{iv_outcomes:?}");
}

#[test]
fn squares_form_commuting_central_projections() {
    let mut reps = random_reps();
    reps.push(counterexample_rep());
    reps.push(diagonal_sign_rep(3));
    for r in reps {
        let n = r.n();
        let sq: Vec<IntMatrix> = (0..n * n)
            .map(|x| {
                let m = r.entry(x / n, x % n);
                m.mul(m)
            })
            .collect();
        for a in &sq {
            assert!(a.is_projection());
            for b in &sq {
                assert_eq!(a.mul(b), b.mul(a));
                assert!(a.mul(b).is_projection());
            }
        }
    }
}

#[test]
fn transposed_reps_behave_the_same() {
    let parts = [Named::FatCrossing.build(), Named::PairPositioner.build(), Named::FourBlock.build()];
    let mut reps = random_reps();
    reps.push(counterexample_rep());
    reps.push(diagonal_sign_rep(2));
    for r in reps {
        let t = transpose_symmetry_check(&r, &parts).unwrap();
        assert!(t.unchanged(), "{t:?}");
    }
}

#[test]
fn user_file_format() {
    let text = "# n dim\n2 1\n# u11\n1\n# u12\n0\n# u21\n0\n# u22\n-1\n";
    let r = Representation::parse(text).unwrap();
    assert!(r.flags().all());
    assert!(intertwines(&r, &Named::PairPositioner.build()).unwrap());
    assert!(matches!(Representation::parse("2 1 1 0 0 x"), Err(IntertwinerError::Format(_))));
}
