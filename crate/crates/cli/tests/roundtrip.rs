use num_bigint::BigInt;
use ohno_cli::expr::{evaluate, expand, parse};
use ohno_core::index::{Coefficient, Index, IndexCombination};
use proptest::prelude::*;

fn index() -> impl Strategy<Value = Index> {
    prop::collection::vec(1u32..6, 0..5).prop_map(|v| Index::new(v).unwrap())
}

fn combination() -> impl Strategy<Value = IndexCombination> {
    prop::collection::vec((index(), -20i64..20, 1i64..7), 0..6).prop_map(|terms| {
        let mut c = IndexCombination::zero();
        for (k, n, d) in terms {
            c.add_term(k, Coefficient::new(BigInt::from(n), BigInt::from(d)));
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn serialized_combinations_expand_to_themselves(c in combination()) {
        let text = c.to_string();
        prop_assert_eq!(expand(&parse(&text).unwrap()).unwrap(), c);
    }

    #[test]
    fn products_and_sums_parse_like_the_library(a in index(), b in index(), n in 1i64..5) {
        let text = format!("{n}*{a} # {b} - {b}");
        let mut want = ohno_core::index::sha(&IndexCombination::from_index(a), &IndexCombination::from_index(b.clone()))
            .scaled_int(n);
        want -= IndexCombination::from_index(b);
        prop_assert_eq!(evaluate(&text).unwrap(), want);
    }
}
