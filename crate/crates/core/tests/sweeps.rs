//! Brute-force agreement sweeps and the LLFR lemmas at desk scale.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surface_conjugacy::oracle::{
    self, cayley_ball, conjugation_distances, dehn_equal, verify_distinct_by_dehn, ClOutcome,
};
use surface_conjugacy::sampling;
use surface_conjugacy::selfcheck::check_elimination;
use surface_conjugacy::{Error, Letter, SurfaceGroup, Word};

fn g2() -> SurfaceGroup {
    SurfaceGroup::new(2).unwrap()
}

fn ball(g: &SurfaceGroup, r: usize) -> Vec<Word> {
    cayley_ball(g, r, 1_000_000).unwrap().into_keys().collect()
}

#[test]
fn dehn_and_normal_forms_agree_on_the_radius_three_ball() {
    let g = g2();
    let b = ball(&g, 3);
    assert_eq!(b.len(), 1 + 8 + 56 + 392);
    for (i, u) in b.iter().enumerate() {
        for v in &b[i..] {
            assert_eq!(dehn_equal(&g, u, v).unwrap(), u == v, "{u} vs {v}");
        }
    }
    assert_eq!(verify_distinct_by_dehn(&g, &ball(&g, 2)).unwrap(), None);
}

#[test]
fn dehn_and_normal_forms_agree_on_random_pairs() {
    let g = g2();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fam = g.relators();
    for _ in 0..10_000 {
        let u = sampling::random_word(&g, &mut rng, 12);
        let v = if rng.gen_bool(0.5) {
            // Same element: splice a relator member into u.
            let mut l = u.letters().to_vec();
            let at = rng.gen_range(0..=l.len());
            let m = fam.member(rng.gen_range(0..fam.len())).to_vec();
            l.splice(at..at, m);
            Word::new(g.genus(), l).unwrap()
        } else {
            sampling::random_word(&g, &mut rng, 12)
        };
        assert_eq!(
            dehn_equal(&g, &u, &v).unwrap(),
            g.nf(&u).unwrap() == g.nf(&v).unwrap(),
            "{u} vs {v}"
        );
    }
}

#[test]
fn class_normal_forms_agree_with_conjugation_search() {
    let g = g2();
    let b = ball(&g, 3);
    let classes: Vec<Word> = b
        .iter()
        .map(|w| g.cyclic_normal_form(w).unwrap().class_nf)
        .collect();
    let index: std::collections::HashMap<&Word, usize> =
        b.iter().enumerate().map(|(i, w)| (w, i)).collect();
    for (i, w) in b.iter().enumerate() {
        let reached = conjugation_distances(&g, w, 3, 1_000_000, false).unwrap();
        for v in reached.keys() {
            if let Some(&j) = index.get(v) {
                assert_eq!(classes[i], classes[j], "{w} reaches {v}");
            }
        }
    }
    // Same class: a certified conjugator connects them.
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if classes[i] == classes[j] {
                let cert = g.conjugator(&b[i], &b[j]).unwrap();
                assert!(cert.conjugate && cert.bound_satisfied);
            }
        }
    }
}

#[test]
fn exact_lengths_are_symmetric_and_below_the_construction() {
    let g = g2();
    let b = ball(&g, 2);
    let mut pairs = 0;
    for (i, u) in b.iter().enumerate() {
        for v in &b[i + 1..] {
            let cert = g.conjugator_with_exact(u, v, 20, 1_000_000).unwrap();
            let Some(len) = cert.conjugator_len else {
                continue;
            };
            pairs += 1;
            let exact = cert
                .exact_cl
                .expect("search reaches the constructed length");
            assert!(exact <= len && len <= cert.bound);
            assert_eq!(
                oracle::exact_cl(&g, v, u, 20, 1_000_000).unwrap(),
                ClOutcome::Found(exact)
            );
        }
    }
    assert!(pairs > 0);
}

#[test]
fn subcase_one_two_instance() {
    let g = g2();
    // X^-1 U = 2 3 4 -1 -2 -3 -4 -1 ... starts a 7-LLFR of a rotation of R.
    let x = g.word(&[-4, -3, -2]).unwrap();
    let u = g.word(&[-1, -2, -3, -4, -1]).unwrap();
    let e = g.eliminate_4g1_general(&x, &u).unwrap();
    assert_eq!(e.y.to_signed(), vec![1]);
    assert_eq!(e.v.to_signed(), vec![-1, -1, -2, -3, -4]);
    assert_eq!(e.v.len(), u.len());
    assert_eq!(check_elimination(&g, &e).unwrap(), None);
}

#[test]
fn special_instance_and_maximal_strip() {
    let g = g2();
    let u = g.word(&[1, 2, 3]).unwrap();
    let one = g.word(&[4, -1, -2, -3, 1]).unwrap();
    let two = g.word(&[4, -1, -2, -3, -1, -2, -3, 1]).unwrap();
    for x in [&one, &two] {
        let e = g.eliminate_4g1_special(x, &u).unwrap();
        assert_eq!(e.y.to_signed(), vec![4, 1]);
        assert_eq!(check_elimination(&g, &e).unwrap(), None);
        // Fed back, the output no longer meets the LLFR hypothesis.
        assert!(matches!(
            g.eliminate_4g1_special(&e.y, &u),
            Err(Error::Contract(_))
        ));
    }
}

#[test]
fn general_elimination_rejects_the_special_shape() {
    let g = g2();
    let u = g.word(&[1, 2, 3, 1, 2, 3]).unwrap();
    let x = g.word(&[4, -1, -2, -3, 1]).unwrap();
    assert!(matches!(
        g.eliminate_4g1_general(&x, &u),
        Err(Error::Contract(_))
    ));
}

#[test]
fn mirrored_cases_match_the_inverse_construction() {
    for genus in [2, 3] {
        let g = SurfaceGroup::new(genus).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let inst = sampling::collect(&mut rng, 2_000, 1_000_000, |r| {
            sampling::elimination_instance(&g, r)
        });
        let mut mirrored = 0;
        for (x, u) in inst.iter().filter(|(_, u)| g.special_shape(u).is_none()) {
            let e = g.eliminate_4g1_general(x, u).unwrap();
            assert_eq!(check_elimination(&g, &e).unwrap(), None);
            if e.mirrored {
                mirrored += 1;
                let direct = g.eliminate_4g1_general(x, &u.inverse()).unwrap();
                assert!(!direct.mirrored);
                assert_eq!(direct.y, e.y);
                assert_eq!(direct.v, e.v.inverse());
            }
        }
        assert!(mirrored > 0);
    }
}

#[test]
fn prefix_lemma() {
    for genus in [2, 3] {
        let g = SurfaceGroup::new(genus).unwrap();
        let fam = g.relators();
        let two_g = 2 * genus as i64;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 2_000 {
            let b = rng.gen_range(0..fam.len());
            let t = rng.gen_range(1..=3);
            let x1 = g.nf(&sampling::random_word(&g, &mut rng, 10)).unwrap();
            let block: Vec<Letter> = (2..=two_g).rev().map(|i| fam.b(b, i)).collect();
            let head = fam.b(b, two_g + 1);
            let long = [vec![head], block.repeat(t), x1.letters().to_vec()].concat();
            if !g.is_irreducible(&Word::new(g.genus(), long).unwrap()) {
                continue;
            }
            checked += 1;
            let short = Word::new(g.genus(), [vec![head], x1.letters().to_vec()].concat()).unwrap();
            assert!(g.is_irreducible(&short), "{short}");
        }
    }
}

/// Counts reducible `X^-1 U X` with `U = (b_1..b_{2g-1})^t`, `X` irreducible
/// and not starting with `b_{2g}`, and `X^-1 U X` freely reduced.
fn special_shape_failures(genus: u32, samples: usize) -> usize {
    let g = SurfaceGroup::new(genus).unwrap();
    let fam = g.relators();
    let two_g = 2 * genus as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut checked, mut reducible) = (0, 0);
    while checked < samples {
        let b = rng.gen_range(0..fam.len());
        let head: Vec<Letter> = (1..two_g).map(|i| fam.b(b, i)).collect();
        let u = Word::new(g.genus(), head.repeat(rng.gen_range(1..=3))).unwrap();
        let x = g.nf(&sampling::random_word(&g, &mut rng, 10)).unwrap();
        if x.letters().first() == Some(&fam.b(b, two_g)) {
            continue;
        }
        let w = Word::product(g.genus(), &[&x.inverse(), &u, &x]).unwrap();
        if !g.is_freely_reduced(&w) {
            continue;
        }
        checked += 1;
        if !g.find_redexes(&w).is_empty() {
            reducible += 1;
        }
    }
    reducible
}

#[test]
fn special_shape_conjugates_are_irreducible_for_genus_three() {
    assert_eq!(special_shape_failures(3, 5_000), 0);
}

#[test]
fn special_shape_rigidity_fails_in_genus_two() {
    let g = g2();
    // U = b_1 b_2 b_3 for b = -2 -3 -4 1 2 3 4 -1, so b_4 = 1 and X does not
    // start with it; yet -4 -3 -2 -1 straddles the U X junction.
    let u = g.word(&[-2, -3, -4]).unwrap();
    let x = g.word(&[-3, -2, -1]).unwrap();
    assert_eq!(g.special_shape(&u).map(|s| s.1), Some(1));
    assert!(g.is_irreducible(&x));
    let w = Word::product(g.genus(), &[&x.inverse(), &u, &x]).unwrap();
    assert!(g.is_freely_reduced(&w));
    assert_eq!(
        g.nf(&w).unwrap().to_signed(),
        vec![1, 2, 3, -2, -3, -1, -2, -3, -4]
    );
    assert!(special_shape_failures(2, 5_000) > 0);
}

#[test]
fn prepared_forms_meet_their_invariants() {
    for genus in [2, 3] {
        let g = SurfaceGroup::new(genus).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..3_000 {
            let u = sampling::random_word(&g, &mut rng, 14);
            let p = g.prepare_conjugation_form(&u).unwrap();
            let f = &p.form;
            let w = f.expanded();
            assert!(dehn_equal(&g, &w, &u).unwrap());
            assert!(g.is_freely_reduced(&w) && g.is_irreducible(&f.x));
            assert!(g.is_cyclically_irreducible(&f.aprime));
            assert!(g
                .long_llfrs(&f.x.inverse().concat(&f.aprime).unwrap())
                .is_empty());
            assert!(g.long_llfrs(&f.aprime.concat(&f.x).unwrap()).is_empty());
            assert_eq!(f.class_nf.rotate(f.rotation_offset), f.aprime);
        }
    }
}
