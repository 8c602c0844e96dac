use partcat::closure::ConnectMode;
use partcat::partition::all_partitions;
use partcat::{CategoryApprox, Membership, Named, Partition, Verdict};

const B: usize = 8;
const W: usize = 14;
const CAP: usize = 1_000_000;

fn named(s: &str) -> Partition {
    Partition::parse_any(s).unwrap()
}

fn close(gens: &[&str]) -> CategoryApprox {
    let g: Vec<Partition> = gens.iter().map(|s| named(s)).collect();
    let c = CategoryApprox::closure(&g, B, W, CAP).unwrap();
    assert!(c.is_saturated(), "{gens:?} did not saturate");
    c
}

fn all_up_to(points: usize) -> Vec<Partition> {
    let mut v = Vec::new();
    for n in 0..=points {
        for k in 0..=n {
            v.extend(all_partitions(k, n - k));
        }
    }
    v
}

fn relabel(w: &[u32]) -> Vec<u32> {
    let mut seen: Vec<u32> = Vec::new();
    w.iter()
        .map(|x| match seen.iter().position(|y| y == x) {
            Some(i) => i as u32,
            None => {
                seen.push(*x);
                seen.len() as u32 - 1
            }
        })
        .collect()
}

fn noncrossing(p: &Partition) -> bool {
    let c = p.clockwise();
    let n = c.len();
    for a in 0..n {
        for b in a + 1..n {
            for d in b + 1..n {
                for e in d + 1..n {
                    if c[a] == c[d] && c[b] == c[e] && c[a] != c[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn block_sizes(p: &Partition) -> Vec<usize> {
    let mut s = vec![0; p.block_count()];
    for &b in p.labels() {
        s[b as usize] += 1;
    }
    s
}

fn nc_even(p: &Partition) -> bool {
    noncrossing(p) && block_sizes(p).iter().all(|s| s % 2 == 0)
}

/// Every block has as many legs at odd clockwise positions as at even ones.
fn balanced(p: &Partition) -> bool {
    let c = p.clockwise();
    let mut diff = vec![0i64; p.block_count()];
    for (i, &b) in c.iter().enumerate() {
        diff[b as usize] += if i % 2 == 0 { 1 } else { -1 };
    }
    diff.iter().all(|&d| d == 0)
}

fn word_trivial(p: &Partition) -> bool {
    let mut st: Vec<u32> = Vec::new();
    for x in p.clockwise() {
        if st.last() == Some(&x) {
            st.pop();
        } else {
            st.push(x);
        }
    }
    st.is_empty()
}

fn is_fat_crossing_shape(p: &Partition) -> bool {
    let c = p.clockwise();
    if c.len() != 8 {
        return false;
    }
    (0..8).any(|r| {
        let rot: Vec<u32> = c[r..].iter().chain(&c[..r]).copied().collect();
        relabel(&rot) == [0, 0, 1, 1, 0, 0, 1, 1]
    })
}

fn assert_matches(c: &CategoryApprox, oracle: impl Fn(&Partition) -> bool, what: &str) {
    let mut missing = Vec::new();
    let mut extra = Vec::new();
    for p in all_up_to(B) {
        match (c.contains_quick(&p), oracle(&p)) {
            (true, false) => extra.push(p.to_string()),
            (false, true) => missing.push(p.to_string()),
            _ => {}
        }
    }
    assert!(missing.is_empty() && extra.is_empty(), "{what}: missing {missing:?}, extra {extra:?}");
}

#[test]
fn four_block_gives_noncrossing_even() {
    assert_matches(&close(&["fourblock"]), nc_even, "four block");
}

#[test]
fn fat_crossing_adds_its_rotations_only() {
    assert_matches(&close(&["fatcross"]), |p| nc_even(p) || is_fat_crossing_shape(p), "fat crossing");
}

#[test]
fn pair_positioner_gives_trivial_words() {
    assert_matches(&close(&["primary"]), word_trivial, "pair positioner");
}

#[test]
fn halflib_and_four_block_give_balanced_blocks() {
    assert_matches(&close(&["halflib", "fourblock"]), balanced, "halflib, four block");
}

#[test]
fn empty_generators_give_noncrossing_pairings() {
    let c = close(&[]);
    assert_matches(
        &c,
        |p| noncrossing(p) && block_sizes(p).iter().all(|&s| s == 2),
        "pairings",
    );
}

#[test]
fn generation_facts_with_certificates() {
    let facts: [(&[&str], &str); 5] = [
        (&["fatcross"], "fourblock"),
        (&["primary"], "fatcross"),
        (&["h3"], "primary"),
        (&["h4"], "primary"),
        (&["halflib", "fourblock"], "primary"),
    ];
    for (gens, target) in facts {
        let c = close(gens);
        let t = named(target);
        let Membership::Yes(cert) = c.contains(&t) else {
            panic!("{target} not found in <{gens:?}>");
        };
        let g: Vec<Partition> = gens.iter().map(|s| named(s)).collect();
        assert_eq!(cert.replay(&g).unwrap(), t, "{target} in {gens:?}");
    }
}

#[test]
fn every_member_replays() {
    for gens in [&["fatcross"][..], &["halflib", "fourblock"], &["h3"]] {
        let c = close(gens);
        let g: Vec<Partition> = gens.iter().map(|s| named(s)).collect();
        for p in all_up_to(6).into_iter().filter(|p| c.contains_quick(p)) {
            let cert = c.certificate(&p).expect("member has a certificate");
            assert_eq!(cert.replay(&g).unwrap(), p, "{gens:?}");
        }
    }
}

#[test]
fn fat_crossing_found_in_crossing_families() {
    let fat = Named::FatCrossing.build();
    for gens in [&["fourblock", "crossing"][..], &["halflib", "fourblock"], &["h3"], &["h4"]] {
        let c = close(gens);
        assert!(c.contains(&fat).is_yes(), "{gens:?}");
        assert_eq!(c.is_hyperoctahedral(), Verdict::Yes, "{gens:?}");
    }
}

#[test]
fn separation_of_four_block_and_fat_crossing() {
    let four = close(&["fourblock"]);
    let fat = close(&["fatcross"]);
    let f = Named::FatCrossing.build();
    assert!(!four.contains_quick(&f));
    assert!(matches!(four.contains(&f), Membership::Unknown));
    assert!(fat.contains_quick(&f));
    for p in four.class_representatives() {
        assert!(fat.contains_quick(&p));
    }
}

#[test]
fn monotone_in_generators() {
    let pairs: [(&[&str], &[&str]); 3] = [
        (&["fourblock"], &["fourblock", "crossing"]),
        (&["fatcross"], &["fatcross", "primary"]),
        (&["h4"], &["h4", "halflib"]),
    ];
    for (small, big) in pairs {
        let a = close(small);
        let b = close(big);
        for p in a.class_representatives() {
            assert!(b.contains_quick(&p), "{p} in <{small:?}> but not <{big:?}>");
        }
    }
}

#[test]
fn monotone_in_point_bound() {
    let g = [named("halflib"), named("fourblock")];
    let small = CategoryApprox::closure(&g, 6, W, CAP).unwrap();
    let big = CategoryApprox::closure(&g, 8, W, CAP).unwrap();
    for p in small.class_representatives() {
        assert!(big.contains_quick(&p));
    }
}

/// Exponents of each run of equal letters reduced to 1 (odd) or 2 (even).
fn reduce_exponents(p: &Partition) -> Partition {
    let w = p.lower_labels();
    let mut out = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let e = if (j - i) % 2 == 1 { 1 } else { 2 };
        out.extend(std::iter::repeat_n(w[i], e));
        i = j;
    }
    Partition::one_row_from(&out)
}

#[test]
fn run_exponents_reduce_by_parity() {
    for gens in [&["fourblock"][..], &["fatcross"], &["h3"], &["halflib", "fourblock"]] {
        let c = close(gens);
        for n in 0..=B {
            for p in all_partitions(0, n) {
                let q = reduce_exponents(&p);
                assert_eq!(c.contains_quick(&p), c.contains_quick(&q), "{gens:?}: {p} vs {q}");
            }
        }
    }
}

#[test]
fn simplifiable_membership_depends_on_simplified_form() {
    for gens in [&["primary"][..], &["halflib", "fourblock"], &["h3", "fourblock", "primary"]] {
        let c = close(gens);
        assert_eq!(c.is_simplifiable(), Verdict::Yes);
        for p in all_up_to(7) {
            assert_eq!(c.contains_quick(&p), c.contains_quick(&p.simplify()), "{gens:?}: {p}");
        }
    }
}

#[test]
fn single_leg_words_repeat_every_letter() {
    for gens in [&["h3"][..], &["halflib", "fourblock"], &["fatcross"], &["h4", "fourblock"]] {
        let c = close(gens);
        for p in c.single_leg_members().into_iter().filter(|p| p.point_count() > 0) {
            let w = p.lower_labels();
            assert!(w.len() >= 4 && w.len() % 2 == 0, "{p}");
            for b in 0..p.block_count() as u32 {
                assert!(w.iter().filter(|&&x| x == b).count() >= 2, "{p}");
            }
        }
    }
}

#[test]
fn single_leg_members_and_pair_positioner_regenerate() {
    let c = close(&["halflib", "fourblock"]);
    let mut g = c.single_leg_members();
    g.push(Named::PairPositioner.build());
    let d = CategoryApprox::closure(&g, B, W, CAP).unwrap();
    assert!(d.is_saturated());
    let mut a = c.class_representatives();
    let mut b = d.class_representatives();
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn blocks_can_be_connected() {
    let c = close(&["fatcross"]);
    let r = c.connectability_check(ConnectMode::Neighbouring, 10);
    assert!(r.precondition_met && r.checked > 0 && r.violations.is_empty(), "{r:?}");
    let c = close(&["halflib", "fourblock"]);
    let r = c.connectability_check(ConnectMode::Arbitrary, 10);
    assert!(r.precondition_met && r.violations.is_empty(), "{r:?}");
}

#[test]
fn double_singleton_breaks_hyperoctahedral() {
    let c = CategoryApprox::closure(&[named(":a"), named("fourblock")], 6, 10, CAP).unwrap();
    assert_eq!(c.is_hyperoctahedral(), Verdict::No);
}
