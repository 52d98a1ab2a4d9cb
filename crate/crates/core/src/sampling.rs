//! Seeded random instances for sweeps.
//!
//! Uniform random words almost never meet the hypotheses of the junction
//! and elimination lemmas, so the generators here splice relator fragments
//! and periodic blocks into random context.

use rand::Rng;

use crate::presentation::{Letter, SurfaceGroup, Word};
use crate::rewrite::is_freely_reduced;

pub fn random_letters<R: Rng>(group: &SurfaceGroup, rng: &mut R, len: usize) -> Vec<Letter> {
    let alphabet = group.alphabet();
    (0..len)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
        .collect()
}

/// Uniform letters, length uniform in `0..=max_len`.
pub fn random_word<R: Rng>(group: &SurfaceGroup, rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(group.genus(), random_letters(group, rng, len))
        .expect("letters come from the alphabet")
}

/// `(u, s^-1 u s)` with both words raw (unreduced).
pub fn conjugate_pair<R: Rng>(
    group: &SurfaceGroup,
    rng: &mut R,
    max_u: usize,
    max_s: usize,
) -> (Word, Word) {
    let u = random_word(group, rng, max_u);
    let s = random_word(group, rng, max_s);
    let v = Word::product(group.genus(), &[&s.inverse(), &u, &s]).expect("same genus");
    (u, v)
}

fn word(group: &SurfaceGroup, letters: Vec<Letter>) -> Word {
    Word::new(group.genus(), letters).expect("letters come from the alphabet")
}

/// Irreducible `U`, `V` whose junction continues a fractional relator or a
/// periodic block, filtered to `UV` freely reduced with no `(4g-1)`-LLFR
/// across the junction. `None` when the draw misses the hypotheses.
pub fn junction_pair<R: Rng>(group: &SurfaceGroup, rng: &mut R) -> Option<(Word, Word)> {
    let fam = group.relators();
    let n = group.genus().relator_len();
    let two_g = group.genus().half() as i64;
    let m = rng.gen_range(0..fam.len());
    let member = fam.member(m);
    let cut = rng.gen_range(1..n);
    let len = rng.gen_range(0..8);
    let mut u = random_letters(group, rng, len);
    u.extend_from_slice(&member[..cut]);
    let mut v: Vec<Letter> = match rng.gen_range(0..3) {
        0 => {
            let ext = rng.gen_range(1..=n - cut);
            member[cut..cut + ext].to_vec()
        }
        mode => {
            let block: Vec<Letter> = (2..=two_g).map(|i| fam.b(m, i)).collect();
            let mut v = block.repeat(rng.gen_range(1..4));
            if mode == 2 {
                v.push(fam.b(m, two_g + 1));
            }
            v
        }
    };
    let len = rng.gen_range(0..8);
    v.extend(random_letters(group, rng, len));
    let u = group.nf(&word(group, u)).ok()?;
    let v = group.nf(&word(group, v)).ok()?;
    if u.is_empty() || v.is_empty() {
        return None;
    }
    let uv = u.concat(&v).ok()?;
    if !group.is_freely_reduced(&uv) || group.long_llfrs(&uv).iter().any(|l| l.straddles(u.len())) {
        return None;
    }
    Some((u, v))
}

/// `(X, U)` instantiating one of the elimination patterns (either side,
/// any case), filtered to the lemma hypotheses: `X` irreducible, `U`
/// cyclically irreducible, `X^-1 U X` freely reduced, and a
/// `(4g-1)`-LLFR in `X^-1 U` or `U X`.
pub fn elimination_instance<R: Rng>(group: &SurfaceGroup, rng: &mut R) -> Option<(Word, Word)> {
    let fam = group.relators();
    let two_g = group.genus().half() as i64;
    let b = rng.gen_range(0..fam.len());
    let bl = |i: i64| fam.b(b, i);
    let p: Vec<Letter> = (2..=two_g).map(bl).collect();
    let q: Vec<Letter> = (2..=two_g).rev().map(bl).collect();
    let t0 = rng.gen_range(1..=3);
    let (lx, lu) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
    let tail_x = random_letters(group, rng, lx);
    let tail_u = random_letters(group, rng, lu);
    let (x, u) = match rng.gen_range(0..4) {
        0 => (
            [q.repeat(t0), tail_x].concat(),
            [vec![bl(1)], p.repeat(t0), tail_u].concat(),
        ),
        1 => {
            let mut u = [vec![bl(1)], p.repeat(t0)].concat();
            u.pop();
            ([q.repeat(t0), tail_x].concat(), u)
        }
        2 => (
            [vec![bl(two_g + 1)], q.repeat(t0), tail_x].concat(),
            [p.repeat(t0), tail_u].concat(),
        ),
        _ => {
            let block: Vec<Letter> = (two_g + 1..2 * two_g).map(bl).collect();
            let head: Vec<Letter> = (1..two_g).map(bl).collect();
            (
                [vec![bl(two_g)], block.repeat(t0), tail_x].concat(),
                head.repeat(rng.gen_range(1..=2)),
            )
        }
    };
    let x = word(group, x);
    let mut u = word(group, u);
    if rng.gen_bool(0.5) {
        u = u.inverse();
    }
    if !group.is_irreducible(&x) || !group.is_cyclically_irreducible(&u) {
        return None;
    }
    let expanded = [x.inverse().letters(), u.letters(), x.letters()].concat();
    if !is_freely_reduced(&expanded) {
        return None;
    }
    let blocked = !group.long_llfrs(&x.inverse().concat(&u).ok()?).is_empty()
        || !group.long_llfrs(&u.concat(&x).ok()?).is_empty();
    blocked.then_some((x, u))
}

/// `(X, U)` meeting the hypotheses of the "at most one `(4g-1)`-LLFR"
/// lemma: `X` irreducible, `U` cyclically irreducible and not a single
/// block `b_1..b_{2g-1}`, `X^-1 U X` freely reduced. Half the draws come
/// from the elimination patterns, half from random class representatives.
pub fn uniqueness_instance<R: Rng>(group: &SurfaceGroup, rng: &mut R) -> Option<(Word, Word)> {
    let (x, u) = if rng.gen_bool(0.5) {
        elimination_instance(group, rng)?
    } else {
        let a = group
            .cyclic_normal_form(&random_word(group, rng, 10))
            .ok()?
            .class_nf;
        if a.is_empty() {
            return None;
        }
        let u = a.rotate(rng.gen_range(0..a.len()));
        let x = group.nf(&random_word(group, rng, 10)).ok()?;
        if !group.is_cyclically_irreducible(&u) {
            return None;
        }
        (x, u)
    };
    if let Some((_, 1)) = group.special_shape(&u) {
        return None;
    }
    let expanded = [x.inverse().letters(), u.letters(), x.letters()].concat();
    is_freely_reduced(&expanded).then_some((x, u))
}

/// Keeps drawing until `count` instances are found or `max_draws` runs out.
pub fn collect<R: Rng, T>(
    rng: &mut R,
    count: usize,
    max_draws: usize,
    mut draw: impl FnMut(&mut R) -> Option<T>,
) -> Vec<T> {
    let mut out = Vec::with_capacity(count);
    let mut draws = 0;
    while out.len() < count && draws < max_draws {
        draws += 1;
        if let Some(item) = draw(rng) {
            out.push(item);
        }
    }
    out
}
