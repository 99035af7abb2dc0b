use merifold_core::braidspace::{BraidSpaceGroup, BraidWord};
use merifold_core::patternspace::HnnWord;
use merifold_core::satellites::{BraidSide, Satellite, TorusOracle, WhiteheadSide};
use merifold_core::Word;
use proptest::prelude::*;

fn ints(rank: i32, max: usize) -> impl Strategy<Value = Vec<i32>> {
    let letters: Vec<i32> = (1..=rank).flat_map(|i| [i, -i]).collect();
    prop::collection::vec(prop::sample::select(letters), 0..max)
}

fn hnn() -> impl Strategy<Value = HnnWord> {
    (0usize..4).prop_flat_map(|k| {
        (prop::collection::vec(ints(2, 5), k + 1), prop::collection::vec(prop::sample::select(vec![1i8, -1]), k)).prop_map(
            |(pieces, signs)| HnnWord { pieces: pieces.iter().map(|p| Word::from_ints(2, p)).collect(), signs },
        )
    })
}

/// `a0 | e b0 | E a1 ...` over the given letter sets.
fn sat_text(pattern: &'static [&'static str], companion: &'static [&'static str]) -> impl Strategy<Value = String> {
    let piece = |alphabet: &'static [&'static str]| {
        prop::collection::vec(prop::sample::select(alphabet.to_vec()), 0..4)
            .prop_map(|v| if v.is_empty() { "1".to_string() } else { v.join(" ") })
    };
    (0usize..3).prop_flat_map(move |k| {
        (prop::collection::vec(piece(pattern), k + 1), prop::collection::vec(piece(companion), k)).prop_map(|(a, b)| {
            let mut s = a[0].clone();
            for (b, a) in b.iter().zip(&a[1..]) {
                s = format!("{s} | e {b} | E {a}");
            }
            s
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn word_parse_inverts_display(rank in 1u32..5, raw in ints(4, 12)) {
        let raw: Vec<i32> = raw.into_iter().filter(|i| i.unsigned_abs() <= rank).collect();
        let w = Word::from_ints(rank, &raw);
        prop_assert_eq!(Word::parse(&w.to_string(), rank).unwrap(), w);
    }

    #[test]
    fn braid_parse_inverts_display(n in 2u32..6, raw in prop::collection::vec((1u32..5, prop::bool::ANY), 0..10)) {
        let letters: Vec<(u32, i8)> = raw.into_iter().filter(|&(i, _)| i < n).map(|(i, s)| (i, if s { 1 } else { -1 })).collect();
        let b = BraidWord::new(n, letters).unwrap();
        prop_assert_eq!(BraidWord::parse(&b.to_string(), n).unwrap(), b);
    }

    #[test]
    fn hnn_display_is_a_fixed_point(x in hnn()) {
        let once = HnnWord::parse(&x.to_string()).unwrap();
        prop_assert_eq!(once.to_string(), x.to_string());
        prop_assert_eq!(HnnWord::parse(&once.to_string()).unwrap(), once);
    }

    #[test]
    fn whitehead_satellite_path_round_trip(text in sat_text(&["x1", "X1", "x2", "X2", "l", "L"], &["a", "A", "b", "B"])) {
        let s = Satellite::new(WhiteheadSide::new(), TorusOracle::new(2, 3).unwrap()).unwrap();
        let x = s.parse_path(&text).unwrap();
        let y = s.parse_path(&s.show_path(&x)).unwrap();
        prop_assert_eq!(s.show_path(&y), s.show_path(&x));
        prop_assert!(s.path_equal(&x, &y));
    }

    #[test]
    fn cable_satellite_path_round_trip(text in sat_text(&["x1", "X1", "x2", "X2", "t", "T"], &["a", "A", "b", "B"])) {
        let s = Satellite::new(BraidSide::new(BraidSpaceGroup::cable(2, 1).unwrap()), TorusOracle::new(2, 3).unwrap()).unwrap();
        let x = s.parse_path(&text).unwrap();
        let y = s.parse_path(&s.show_path(&x)).unwrap();
        prop_assert_eq!(s.show_path(&y), s.show_path(&x));
        prop_assert!(s.path_equal(&x, &y));
    }
}
