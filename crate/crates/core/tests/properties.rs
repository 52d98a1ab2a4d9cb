use std::cmp::Ordering;

use proptest::prelude::*;
use surface_conjugacy::oracle::dehn_equal;
use surface_conjugacy::rewrite::RewriteRule;
use surface_conjugacy::{
    compare_lenlex, format_word, letter_rank, parse_word, Genus, Letter, SurfaceGroup, Word,
    WordStyle,
};

fn letters(g: u32, max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    let n = 2 * g as i64;
    prop::collection::vec(
        (1..=n, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i }),
        0..=max_len,
    )
}

fn genus_and_word(max_len: usize) -> impl Strategy<Value = (u32, Vec<i64>)> {
    (2u32..=3).prop_flat_map(move |g| (Just(g), letters(g, max_len)))
}

fn word(g: &SurfaceGroup, l: &[i64]) -> Word {
    g.word(l).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lenlex_is_a_total_order(a in letters(2, 6), b in letters(2, 6), c in letters(2, 6)) {
        let g = SurfaceGroup::new(2).unwrap();
        let (a, b, c) = (word(&g, &a), word(&g, &b), word(&g, &c));
        let ab = compare_lenlex(&a, &b).unwrap();
        prop_assert_eq!(ab, compare_lenlex(&b, &a).unwrap().reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if ab.is_le() && compare_lenlex(&b, &c).unwrap().is_le() {
            prop_assert!(compare_lenlex(&a, &c).unwrap().is_le());
        }
    }

    #[test]
    fn parse_format_round_trip((g, l) in genus_and_word(24)) {
        let grp = SurfaceGroup::new(g).unwrap();
        let w = word(&grp, &l);
        for style in [WordStyle::Int, WordStyle::Alpha] {
            let text = format_word(&w, style).unwrap();
            prop_assert_eq!(&parse_word(&text, grp.genus(), style).unwrap(), &w);
        }
    }

    #[test]
    fn normal_form_is_sound_and_idempotent((g, l) in genus_and_word(20)) {
        let grp = SurfaceGroup::new(g).unwrap();
        let w = word(&grp, &l);
        let (nf, trace) = grp.normal_form(&w).unwrap();
        prop_assert!(dehn_equal(&grp, &w, &nf).unwrap());
        prop_assert!(grp.is_irreducible(&nf));
        prop_assert_eq!(&grp.nf(&nf).unwrap(), &nf);
        prop_assert_eq!(&trace.replay(&grp).unwrap(), &nf);
        prop_assert!(trace.steps.iter().all(|s| s.lenlex_decreased));
    }

    #[test]
    fn randomized_rule_order_is_confluent((g, l) in genus_and_word(20), picks in prop::collection::vec(any::<u32>(), 64)) {
        let grp = SurfaceGroup::new(g).unwrap();
        let w = word(&grp, &l);
        let mut i = 0;
        let (reached, _) = grp
            .reduce_with(&w, |grp, cur| {
                let redexes: Vec<RewriteRule> = grp.find_redexes(cur);
                i += 1;
                Ok((!redexes.is_empty()).then(|| redexes[picks[i % picks.len()] as usize % redexes.len()]))
            })
            .unwrap();
        prop_assert_eq!(reached, grp.nf(&w).unwrap());
    }

    #[test]
    fn class_normal_form_is_a_conjugacy_invariant((g, l) in genus_and_word(16), s in letters(3, 6), rot in 0usize..16) {
        let grp = SurfaceGroup::new(g).unwrap();
        let w = word(&grp, &l);
        let max = 2 * g as i64;
        let s: Vec<i64> = s.into_iter().filter(|x| x.abs() <= max).collect();
        let s = word(&grp, &s);
        let conj = Word::product(grp.genus(), &[&s.inverse(), &w, &s]).unwrap();
        let base = grp.cyclic_normal_form(&w).unwrap();
        prop_assert_eq!(&grp.cyclic_normal_form(&conj).unwrap().class_nf, &base.class_nf);
        if !w.is_empty() {
            let r = w.rotate(rot % w.len());
            prop_assert_eq!(&grp.cyclic_normal_form(&r).unwrap().class_nf, &base.class_nf);
        }
        let c = &base.conjugator;
        let rebuilt = Word::product(grp.genus(), &[&c.inverse(), &base.rotated_class(), c]).unwrap();
        prop_assert!(dehn_equal(&grp, &rebuilt, &w).unwrap());
    }

    #[test]
    fn inverse_is_an_involution((g, l) in genus_and_word(20)) {
        let grp = SurfaceGroup::new(g).unwrap();
        let w = word(&grp, &l);
        prop_assert_eq!(&w.inverse().inverse(), &w);
        let prod = Word::product(grp.genus(), &[&w, &w.inverse()]).unwrap();
        prop_assert!(grp.nf(&prod).unwrap().is_empty());
    }

    #[test]
    fn certificates_hold_for_random_conjugates((g, l) in genus_and_word(12), s in letters(3, 5)) {
        let grp = SurfaceGroup::new(g).unwrap();
        let max = 2 * g as i64;
        let s: Vec<i64> = s.into_iter().filter(|x| x.abs() <= max).collect();
        let (u, s) = (word(&grp, &l), word(&grp, &s));
        let v = Word::product(grp.genus(), &[&s.inverse(), &u, &s]).unwrap();
        let cert = grp.conjugator(&u, &v).unwrap();
        prop_assert!(cert.conjugate && cert.bound_satisfied);
        prop_assert!(cert.r_sum <= 16 * g as usize);
        let w = cert.conjugator.unwrap();
        let lhs = Word::product(grp.genus(), &[&w.inverse(), &u, &w]).unwrap();
        prop_assert!(dehn_equal(&grp, &lhs, &v).unwrap());
    }

    #[test]
    fn words_containing_a_relator_are_not_minimal((g, pre) in genus_and_word(4), post in letters(2, 4), m in 0usize..24) {
        let grp = SurfaceGroup::new(g).unwrap();
        let fam = grp.relators();
        let member = fam.member(m % fam.len()).to_vec();
        let mut l: Vec<Letter> = word(&grp, &pre).into_letters();
        l.extend(member);
        l.extend(word(&grp, &post).into_letters());
        let w = Word::new(grp.genus(), l).unwrap();
        prop_assert!(grp.nf(&w).unwrap().len() < w.len());
    }
}

#[test]
fn letter_rank_is_a_bijection() {
    for g in 2..=4u32 {
        let genus = Genus::new(g).unwrap();
        let mut ranks: Vec<u32> = (1..=2 * g as i64)
            .flat_map(|i| [i, -i])
            .map(|i| letter_rank(Letter::new(i, genus).unwrap(), genus).unwrap())
            .collect();
        ranks.sort_unstable();
        assert_eq!(ranks, (1..=4 * g).collect::<Vec<_>>());
    }
}

#[test]
fn relator_members_are_antisymmetric() {
    for g in 2..=4u32 {
        let grp = SurfaceGroup::new(g).unwrap();
        let fam = grp.relators();
        let n = grp.genus().relator_len() as i64;
        for id in 0..fam.len() {
            for k in 1..=n {
                assert_eq!(fam.b(id, k), fam.b(id, k + n / 2).inverse());
            }
        }
    }
}
