use proptest::prelude::*;

use chordcount::count::oracle::{count_arrow_pattern_oracle, count_embeddings_oracle};
use chordcount::diagram::validate;
use chordcount::moves::inverse_site;
use chordcount::{
    apply_move, arrows_to_chords, builtin_formulas, count_arrow_pattern, count_embeddings,
    evaluate, find_sites, gen_cabc, gen_equivalent, parse_diagram, parse_formula, Arrow,
    ArrowDiagram, ArrowRule, Chord, Convention, Diagram, EvalMode, MoveKind, Pattern, PatternItem,
    PatternKind, Sign, SignedChordDiagram, Slot, Violation,
};

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

/// A perfect matching of `1..=2n` as endpoint pairs.
fn matching(max_n: usize) -> impl Strategy<Value = Vec<(Slot, Slot)>> {
    (0..=max_n)
        .prop_flat_map(|n| Just((1..=2 * n as Slot).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|slots| slots.chunks(2).map(|p| (p[0], p[1])).collect())
}

fn chords(max_n: usize) -> impl Strategy<Value = SignedChordDiagram> {
    matching(max_n)
        .prop_flat_map(|m| {
            let n = m.len();
            (Just(m), prop::collection::vec(sign(), n))
        })
        .prop_map(|(m, s)| {
            let cs = m
                .iter()
                .zip(s)
                .map(|(&(a, b), s)| Chord::new(a, b, s))
                .collect();
            SignedChordDiagram::new(m.len(), cs).unwrap()
        })
}

fn arrows(max_n: usize) -> impl Strategy<Value = ArrowDiagram> {
    matching(max_n)
        .prop_flat_map(|m| {
            let n = m.len();
            (Just(m), prop::collection::vec(sign(), n))
        })
        .prop_map(|(m, s)| {
            let a = m
                .iter()
                .zip(s)
                .map(|(&(t, h), s)| Arrow::new(t, h, s))
                .collect();
            ArrowDiagram::new(m.len(), a).unwrap()
        })
}

fn positive_arrows(max_n: usize) -> impl Strategy<Value = ArrowDiagram> {
    arrows(max_n).prop_map(|a| {
        let v = a
            .arrows()
            .iter()
            .map(|x| Arrow::new(x.tail, x.head, Sign::Plus))
            .collect();
        ArrowDiagram::new(a.n(), v).unwrap()
    })
}

fn pattern(kind: PatternKind, max_k: usize) -> impl Strategy<Value = Pattern> {
    (1..=max_k)
        .prop_flat_map(|k| Just((1..=2 * k as Slot).collect::<Vec<_>>()).prop_shuffle())
        .prop_flat_map(|slots| {
            let k = slots.len() / 2;
            (
                Just(slots),
                prop::collection::vec(prop::option::of(sign()), k),
            )
        })
        .prop_map(move |(slots, cons)| {
            let items = slots
                .chunks(2)
                .zip(cons)
                .map(|(p, constraint)| PatternItem {
                    from: p[0],
                    to: p[1],
                    constraint,
                })
                .collect();
            Pattern::new(kind, items).unwrap()
        })
}

fn binom(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

fn curve() -> impl Strategy<Value = (u32, u32, u32, u64, usize)> {
    (0..=3u32, 0..=2u32, 0..=2u32, any::<u64>(), 0..=25usize)
}

proptest! {
    #[test]
    fn chord_text_round_trip(d in chords(12)) {
        prop_assert_eq!(parse_diagram(&d.to_string()).unwrap(), Diagram::Chords(d));
    }

    #[test]
    fn arrow_text_round_trip(a in arrows(12)) {
        prop_assert_eq!(parse_diagram(&a.to_string()).unwrap(), Diagram::Arrows(a));
    }

    #[test]
    fn matchings_validate(m in matching(15)) {
        prop_assert!(validate(m.len(), &m).is_empty());
    }

    #[test]
    fn corrupted_matchings_fail(m in matching(15), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        prop_assume!(m.len() >= 2);
        let (i, j) = (i.index(m.len()), j.index(m.len()));
        prop_assume!(i != j);
        let mut bad = m.clone();
        bad[i].1 = m[j].0;
        let v = validate(m.len(), &bad);
        let reused = v.iter().any(|x| matches!(x, Violation::Reused { .. }));
        prop_assert!(reused);
        let unused = v.iter().any(|x| matches!(x, Violation::Unused { .. }));
        prop_assert!(unused);
        let mut short = m.clone();
        short.pop();
        prop_assert!(!validate(m.len(), &short).is_empty());
    }

    #[test]
    fn arrows_to_chords_is_injective_on_positive_diagrams(a in positive_arrows(10), minus in any::<bool>()) {
        let convention = Convention {
            arrow_rule: if minus { ArrowRule::ForwardMinus } else { ArrowRule::ForwardPlus },
            ..Convention::default()
        };
        let c = arrows_to_chords(&a, &convention);
        // The sign of each chord tells the arrow's direction back.
        let back: Vec<Arrow> = c.chords().iter().map(|ch| {
            let forward = (ch.sign == Sign::Plus) != minus;
            if forward { Arrow::new(ch.a, ch.b, Sign::Plus) } else { Arrow::new(ch.b, ch.a, Sign::Plus) }
        }).collect();
        prop_assert_eq!(ArrowDiagram::new(a.n(), back).unwrap(), a);
    }

    #[test]
    fn chord_counts_match_oracle(d in chords(8), p in pattern(PatternKind::Chord, 3), weighted in any::<bool>()) {
        let mode = if weighted { EvalMode::Weighted } else { EvalMode::Constrained };
        prop_assert_eq!(count_embeddings(&p, &d, mode).unwrap(), count_embeddings_oracle(&p, &d, mode).unwrap());
    }

    #[test]
    fn arrow_counts_match_oracle(a in arrows(8), p in pattern(PatternKind::Arrow, 3)) {
        prop_assert_eq!(count_arrow_pattern(&p, &a).unwrap(), count_arrow_pattern_oracle(&p, &a).unwrap());
    }

    #[test]
    fn modes_agree_on_all_plus_diagrams(d in chords(10), p in pattern(PatternKind::Chord, 3)) {
        let plus: Vec<Chord> = d.chords().iter().map(|c| Chord::new(c.a, c.b, Sign::Plus)).collect();
        let d = SignedChordDiagram::new(d.n(), plus).unwrap();
        prop_assert_eq!(
            count_embeddings(&p, &d, EvalMode::Weighted).unwrap(),
            count_embeddings(&p, &d, EvalMode::Constrained).unwrap()
        );
    }

    #[test]
    fn values_are_bounded(d in chords(14), weighted in any::<bool>()) {
        let mode = if weighted { EvalMode::Weighted } else { EvalMode::Constrained };
        for f in builtin_formulas() {
            let bound: i64 = f.terms().iter().map(|t| t.coefficient.abs() * binom(d.n(), t.pattern.k())).sum();
            prop_assert!(evaluate(f, &d, mode).unwrap().abs() <= bound);
        }
    }

    #[test]
    fn base_point_rotation_cycles(d in chords(10)) {
        let mut r = d.clone();
        for _ in 0..2 * d.n() {
            r = r.rotate_base_point();
        }
        prop_assert_eq!(r, d);
    }

    #[test]
    fn formula_text_round_trip(i in 0..6usize, j in any::<prop::sample::Index>()) {
        let f = builtin_formulas()[i].with_flipped_term(j.index(builtin_formulas()[i].terms().len()));
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn moves_keep_metadata((a, b, c, rng, steps) in curve()) {
        let seed = gen_cabc(a, b, c);
        let (out, _) = gen_equivalent(&seed, rng, steps, &MoveKind::INVARIANT);
        prop_assert_eq!(out.rot, Some(a as i64));
        prop_assert_eq!(out.jplus, Some(a as i64 - 2 * b as i64 + 2 * c as i64));
        let (out, log) = gen_equivalent(&seed, rng, steps, &MoveKind::ALL);
        prop_assert_eq!(out.rot, Some(a as i64));
        let direct = log.moves.iter().any(|m| matches!(m.kind(), MoveKind::Dr2Insert | MoveKind::Dr2Delete));
        prop_assert_eq!(out.jplus.is_some(), !direct);
    }

    #[test]
    fn every_move_has_an_inverse((a, b, c, rng, steps) in curve()) {
        let (start, _) = gen_equivalent(&gen_cabc(a, b, c), rng, steps, &MoveKind::ALL);
        let d = start.diagram;
        for kind in MoveKind::ALL {
            for site in find_sites(&d, kind) {
                let after = apply_move(&d, &site).unwrap();
                let back = apply_move(&after, &inverse_site(&d, &site)).unwrap();
                prop_assert_eq!(&back, &d, "{}", site);
            }
        }
    }
}

#[test]
fn base_point_matters() {
    // Two sequential chords become nested once the base point moves past an endpoint.
    let d = SignedChordDiagram::new(
        2,
        vec![Chord::new(1, 2, Sign::Plus), Chord::new(3, 4, Sign::Plus)],
    )
    .unwrap();
    let p = chordcount::parse_pattern("[1-2,3-4]").unwrap();
    assert_eq!(count_embeddings(&p, &d, EvalMode::Weighted).unwrap(), 1);
    assert_eq!(
        count_embeddings(&p, &d.rotate_base_point(), EvalMode::Weighted).unwrap(),
        0
    );
}
