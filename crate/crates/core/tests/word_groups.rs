use partcat::correspondence::all_words;
use partcat::words::{GroupWord, S0Gen};
use partcat::{FreeWord, SubgroupApprox, Z2Word};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z(s: &str) -> Z2Word {
    Z2Word::parse(s).unwrap()
}

fn f(s: &str) -> FreeWord {
    FreeWord::parse(s).unwrap()
}

fn letters_strategy(max_len: usize, alphabet: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=alphabet, 0..=max_len)
}

/// Naive reduction: delete the leftmost equal neighbours until none are left.
fn naive_reduce(v: &[u32]) -> Vec<u32> {
    let mut w = v.to_vec();
    loop {
        match (1..w.len()).find(|&i| w[i] == w[i - 1]) {
            Some(i) => {
                w.drain(i - 1..=i);
            }
            None => return w,
        }
    }
}

#[test]
fn product_is_associative_on_short_words() {
    let words = all_words(3, 3);
    for a in &words {
        for b in &words {
            let ab = a.mul(b);
            for c in &words {
                assert_eq!(ab.mul(c), a.mul(&b.mul(c)));
            }
        }
    }
}

#[test]
fn basis_change_round_trips_on_even_words() {
    let mut n = 0;
    for w in all_words(8, 4).into_iter().filter(|w| w.is_even()) {
        let x = w.to_free().unwrap();
        assert_eq!(Z2Word::from_free(&x), w);
        n += 1;
    }
    assert!(n > 1000);
    assert!(z("a1").to_free().is_err());
}

#[test]
fn basis_change_of_generators() {
    assert_eq!(z("a1.a2").to_free().unwrap(), f("x1"));
    assert_eq!(z("a2.a3").to_free().unwrap(), f("x1^-1.x2"));
    assert_eq!(Z2Word::from_free(&f("x2^2")), z("a1.a3.a1.a3"));
}

#[test]
fn odd_words_reach_the_first_letter() {
    for w in ["a1", "a1.a2.a3", "a1.a2.a1.a2.a1", "a2.a3.a1.a3.a2", "a1.a2.a3.a4.a1"] {
        let w = z(w);
        let h = SubgroupApprox::closure(std::slice::from_ref(&w), w.len().max(1), true, 4, 1_000_000).unwrap();
        assert!(h.contains(&z("a1")), "{w}");
    }
}

#[test]
fn even_closures_have_no_lonely_letters() {
    for g in ["(a1.a2)^3", "a1.a2.a3.a1.a2.a3", "(a1.a2)^2", "a1.a2.a3.a2.a3.a1.a3.a2"] {
        let h = SubgroupApprox::closure(&[z(g)], 8, true, 4, 1_000_000).unwrap();
        assert!(h.is_saturated());
        for w in h.elements() {
            assert!(w.is_even(), "{w}");
            for x in w.alphabet() {
                assert!(w.letters().iter().filter(|&&y| y == x).count() >= 2, "{w} from {g}");
            }
        }
    }
}

#[test]
fn semigroup_preserves_even_words() {
    for w in all_words(6, 3).into_iter().filter(|w| w.is_even()) {
        for (g, img) in w.endo_images(4) {
            assert!(img.is_even(), "{g} maps {w} to {img}");
        }
        assert!(w.apply_s0(&S0Gen::Conjugate(4)).is_even());
    }
}

#[test]
fn exponent_extraction_on_sampled_words() {
    let gens = [f("x1^3"), f("x1.x2.x1^-1.x2^-1")];
    let h = SubgroupApprox::closure(&gens, 6, true, 3, 1_000_000).unwrap();
    assert!(h.is_saturated());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let nontrivial: Vec<&FreeWord> = h.elements().iter().filter(|w| !w.is_empty()).collect();
    let sample: Vec<&&FreeWord> = nontrivial.choose_multiple(&mut rng, 100).collect();
    assert_eq!(sample.len(), 100);
    for w in sample {
        for i in 1..=3 {
            let e = w.exponent(i);
            assert!(e % 3 == 0, "{w}");
            let p = FreeWord::generator(i, 1).pow(e);
            assert!(h.contains(&p), "x{i}^{e} from {w}");
        }
    }
}

#[test]
fn free_exponents_beyond_small_integers() {
    let w = f("x1^64").mul(&f("x1^-63"));
    assert_eq!(w, f("x1"));
    assert_eq!(f("x1^40.x2").pow(2).exponent(1), 80);
}

proptest! {
    #[test]
    fn reduction_matches_naive_and_is_idempotent(v in letters_strategy(10, 4)) {
        let w = Z2Word::reduce(&v);
        prop_assert_eq!(w.letters().to_vec(), naive_reduce(&v));
        prop_assert_eq!(Z2Word::reduce(w.letters()), w.clone());
    }

    #[test]
    fn product_is_associative(a in letters_strategy(8, 4), b in letters_strategy(8, 4), c in letters_strategy(8, 4)) {
        let (a, b, c) = (Z2Word::reduce(&a), Z2Word::reduce(&b), Z2Word::reduce(&c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_empty());
    }

    #[test]
    fn display_parses_back(v in letters_strategy(10, 5)) {
        let w = Z2Word::reduce(&v);
        prop_assert_eq!(Z2Word::parse(&w.to_string()).unwrap(), w.clone());
        if w.is_even() {
            let x = w.to_free().unwrap();
            prop_assert_eq!(FreeWord::parse(&x.to_string()).unwrap(), x);
        }
    }
}
