use proptest::prelude::*;
use qnorm::input::parse_element;
use qnorm_core::{GroupDescriptor, GroupElement, Word};

fn word(rank: i64) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, -3i64..=3), 0..6).prop_map(|p| Word::from_powers(&p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn free_elements_round_trip(w in word(3)) {
        let g = GroupDescriptor::free(3);
        let x = GroupElement::Word(w);
        prop_assert_eq!(parse_element(&g, &g.format(&x)).unwrap(), x);
    }

    #[test]
    fn shift_elements_round_trip(w in prop::collection::vec((-4i64..4, -2i64..=2), 0..5), n in -3i64..=3) {
        let g = GroupDescriptor::shift_extension(2);
        let x = GroupElement::shift(Word::from_powers(&w), n);
        prop_assert_eq!(parse_element(&g, &g.format(&x)).unwrap(), x);
    }

    #[test]
    fn product_elements_round_trip(a in word(2), w in prop::collection::vec((-2i64..2, -1i64..=1), 0..4), n in -2i64..=2) {
        let g = GroupDescriptor::product(GroupDescriptor::free(2), GroupDescriptor::shift_extension(1));
        let x = GroupElement::pair(GroupElement::Word(a), GroupElement::shift(Word::from_powers(&w), n));
        prop_assert_eq!(parse_element(&g, &g.format(&x)).unwrap(), x);
    }
}
