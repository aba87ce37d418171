use num_bigint::BigInt;
use ohno_core::index::{
    admissible_up_to, enumerate_shifts, hast, sha, star_single, Coefficient, Index, IndexCombination,
};
use ohno_core::mzv::{from_word, to_word};
use proptest::prelude::*;

fn index(max_depth: usize) -> impl Strategy<Value = Index> {
    prop::collection::vec(1u32..5, 0..=max_depth).prop_map(|v| Index::new(v).unwrap())
}

fn admissible() -> impl Strategy<Value = Index> {
    (prop::collection::vec(1u32..4, 0..6), 2u32..5).prop_map(|(mut v, last)| {
        v.push(last);
        Index::new(v).unwrap()
    })
}

fn one(k: &Index) -> IndexCombination {
    IndexCombination::from_index(k.clone())
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn sha_is_commutative_and_associative(a in index(3), b in index(3), c in index(3)) {
        prop_assert_eq!(sha(&one(&a), &one(&b)), sha(&one(&b), &one(&a)));
        prop_assert_eq!(sha(&sha(&one(&a), &one(&b)), &one(&c)), sha(&one(&a), &sha(&one(&b), &one(&c))));
        prop_assert_eq!(sha(&one(&a), &one(&Index::empty())), one(&a));
    }

    #[test]
    fn sha_counts_interleavings(a in index(4), b in index(4)) {
        let total = sha(&one(&a), &one(&b)).coefficient_sum();
        prop_assert_eq!(total, Coefficient::from_integer(BigInt::from(binomial(a.depth() + b.depth(), a.depth()))));
    }

    #[test]
    fn hast_adds_to_one_entry(k in 1u32..5, b in index(5).prop_filter("nonempty", |b| !b.is_empty())) {
        let h = hast(k, &one(&b)).unwrap();
        prop_assert_eq!(h.coefficient_sum(), Coefficient::from_integer(BigInt::from(b.depth())));
        for idx in h.indices() {
            prop_assert_eq!(idx.weight(), b.weight() + k);
            prop_assert_eq!(idx.depth(), b.depth());
        }
        let star = star_single(k, &one(&b)).unwrap();
        prop_assert_eq!(star, sha(&one(&Index::repeat(k, 1)), &one(&b)) + h);
    }

    #[test]
    fn duality_is_an_involution(k in admissible()) {
        let d = k.dual().unwrap();
        prop_assert_eq!(d.dual().unwrap(), k.clone());
        prop_assert_eq!(d.weight(), k.weight());
        prop_assert_eq!(d.depth() + k.depth(), k.weight() as usize);
        prop_assert_eq!(to_word(&d).unwrap(), to_word(&k).unwrap().reverse_swap());
    }

    #[test]
    fn text_round_trips(k in index(6)) {
        prop_assert_eq!(k.to_string().parse::<Index>().unwrap(), k.clone());
        let entries = k.entries().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        prop_assert_eq!(entries.parse::<Index>().unwrap(), k);
    }
}

#[test]
fn duality_exhaustive_to_weight_nine() {
    let all = admissible_up_to(9);
    assert_eq!(all.len(), (2..=9).map(|w| 1usize << (w - 2)).sum::<usize>());
    for k in all {
        let d = k.dual().unwrap();
        assert_eq!(d.dual().unwrap(), k);
        assert_eq!(from_word(&to_word(&k).unwrap()).unwrap(), k);
    }
}

#[test]
fn shift_counts_are_binomial() {
    for r in 1..=6 {
        for m in 0..=8u32 {
            let shifts = enumerate_shifts(r, m).unwrap();
            assert_eq!(shifts.len() as u64, binomial(m as usize + r - 1, r - 1), "r={r} m={m}");
            assert!(shifts.iter().all(|e| e.total() == m && e.len() == r));
        }
    }
}
