//! Alphabet, words, length-lex order and the relator family of the
//! symmetric presentation `<c_1..c_2g | c_1..c_2g c_1^-1..c_2g^-1>`.
//!
//! Letters are signed integers: `i` stands for `c_i` and `-i` for `c_i^-1`.
//! The generator order is
//!
//! ```text
//! c_2g^-1 > ... > c_2^-1 > c_1^-1 > c_1 > c_2 > ... > c_2g
//! ```
//!
//! and is realised by [`Letter::rank`], which maps the alphabet bijectively
//! onto `1..=4g` (higher rank is greater).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported genus. Bounds the dense pair table in [`RelatorFamily`].
pub const MAX_GENUS: u32 = 256;

/// Largest exponent accepted by the wire format (`3^1000000` is fine,
/// `3^10000000` is rejected).
pub const MAX_EXPONENT: i64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Genus(u32);

impl Genus {
    pub fn new(g: u32) -> Result<Genus> {
        if !(2..=MAX_GENUS).contains(&g) {
            return Err(Error::InvalidGenus(g));
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of generators, `2g`.
    pub fn generators(self) -> u32 {
        2 * self.0
    }

    /// Alphabet size and relator length, `4g`.
    pub fn alphabet_size(self) -> usize {
        4 * self.0 as usize
    }

    pub fn relator_len(self) -> usize {
        4 * self.0 as usize
    }

    /// `2g` as a `usize`, the half-relator length.
    pub(crate) fn half(self) -> usize {
        2 * self.0 as usize
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A generator or inverse generator.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i16);

impl Letter {
    pub fn new(signed: i64, genus: Genus) -> Result<Letter> {
        let max = genus.generators();
        if signed == 0 || signed.unsigned_abs() > max as u64 {
            return Err(Error::InvalidLetter {
                letter: signed,
                max,
            });
        }
        Ok(Letter(signed as i16))
    }

    pub(crate) fn from_raw(signed: i16) -> Letter {
        debug_assert!(signed != 0);
        Letter(signed)
    }

    pub fn signed(self) -> i32 {
        self.0 as i32
    }

    /// Generator index `i` of `c_i^{±1}`.
    pub fn index(self) -> u32 {
        self.0.unsigned_abs() as u32
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Position in the generator order, in `1..=4g`.
    pub fn rank(self, genus: Genus) -> u32 {
        let two_g = genus.generators();
        if self.is_inverse() {
            two_g + self.index()
        } else {
            two_g + 1 - self.index()
        }
    }

    /// Zero-based rank, used for table lookups.
    pub(crate) fn slot(self, genus: Genus) -> usize {
        (self.rank(genus) - 1) as usize
    }

    pub(crate) fn from_slot(slot: usize, genus: Genus) -> Letter {
        let two_g = genus.generators() as usize;
        let rank = slot + 1;
        if rank > two_g {
            Letter(-((rank - two_g) as i16))
        } else {
            Letter((two_g + 1 - rank) as i16)
        }
    }

    pub(crate) fn cmp_in(self, other: Letter, genus: Genus) -> Ordering {
        self.rank(genus).cmp(&other.rank(genus))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Rank of `letter` in the generator order, checking it belongs to the
/// alphabet of `genus`.
pub fn letter_rank(letter: Letter, genus: Genus) -> Result<u32> {
    if letter.index() > genus.generators() {
        return Err(Error::InvalidLetter {
            letter: letter.signed() as i64,
            max: genus.generators(),
        });
    }
    Ok(letter.rank(genus))
}

/// A finite sequence of letters over the alphabet of a fixed genus.
///
/// `Ord` is the length-lexicographic order of the presentation; words of
/// different genus are ordered by genus first (use [`compare_lenlex`] to get
/// an error instead).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    genus: Genus,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(genus: Genus) -> Word {
        Word {
            genus,
            letters: Vec::new(),
        }
    }

    pub fn new(genus: Genus, letters: Vec<Letter>) -> Result<Word> {
        for &l in &letters {
            letter_rank(l, genus)?;
        }
        Ok(Word { genus, letters })
    }

    pub fn from_signed(genus: Genus, signed: &[i64]) -> Result<Word> {
        let letters = signed
            .iter()
            .map(|&s| Letter::new(s, genus))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word { genus, letters })
    }

    pub(crate) fn from_letters(genus: Genus, letters: Vec<Letter>) -> Word {
        Word { genus, letters }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_signed(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.signed()).collect()
    }

    /// Formal inverse: reverse the word and invert every letter.
    pub fn inverse(&self) -> Word {
        Word {
            genus: self.genus,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        check_same_genus(self, other)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word {
            genus: self.genus,
            letters,
        })
    }

    /// Concatenation of several words of the same genus.
    pub fn product(genus: Genus, parts: &[&Word]) -> Result<Word> {
        let mut letters = Vec::with_capacity(parts.iter().map(|w| w.len()).sum());
        for w in parts {
            if w.genus != genus {
                return Err(Error::GenusMismatch {
                    left: genus.get(),
                    right: w.genus.get(),
                });
            }
            letters.extend_from_slice(&w.letters);
        }
        Ok(Word { genus, letters })
    }

    /// Cyclic rotation moving the first `offset` letters to the back.
    /// Offsets are taken modulo the length; the empty word rotates to itself.
    pub fn rotate(&self, offset: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = offset % self.letters.len();
        let mut letters = Vec::with_capacity(self.letters.len());
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        Word {
            genus: self.genus,
            letters,
        }
    }

    pub fn subword(&self, range: std::ops::Range<usize>) -> Word {
        Word {
            genus: self.genus,
            letters: self.letters[range].to_vec(),
        }
    }

    /// Parses the integer wire format.
    pub fn parse(text: &str, genus: Genus) -> Result<Word> {
        parse_word(text, genus, WordStyle::Int)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.genus
            .cmp(&other.genus)
            .then_with(|| lenlex(self.genus, &self.letters, &other.letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_int(self))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(g={}, [{}])", self.genus, format_int(self))
    }
}

pub(crate) fn check_same_genus(a: &Word, b: &Word) -> Result<()> {
    if a.genus != b.genus {
        return Err(Error::GenusMismatch {
            left: a.genus.get(),
            right: b.genus.get(),
        });
    }
    Ok(())
}

pub(crate) fn lenlex(genus: Genus, a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.cmp_in(*y, genus))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// Length-lexicographic comparison under the generator order.
pub fn compare_lenlex(a: &Word, b: &Word) -> Result<Ordering> {
    check_same_genus(a, b)?;
    Ok(lenlex(a.genus, &a.letters, &b.letters))
}

/// Text encodings of words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum WordStyle {
    /// Whitespace-separated signed integers, optionally `i^e`.
    #[default]
    Int,
    /// `a..z` for `c_1..c_26`, upper case for inverses (genus <= 13).
    Alpha,
}

pub fn parse_word(text: &str, genus: Genus, style: WordStyle) -> Result<Word> {
    match style {
        WordStyle::Int => parse_int(text, genus),
        WordStyle::Alpha => parse_alpha(text, genus),
    }
}

pub fn format_word(w: &Word, style: WordStyle) -> Result<String> {
    match style {
        WordStyle::Int => Ok(format_int(w)),
        WordStyle::Alpha => format_alpha(w),
    }
}

fn format_int(w: &Word) -> String {
    let mut out = String::with_capacity(w.len() * 3);
    for (i, l) in w.letters.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&l.signed().to_string());
    }
    out
}

fn format_alpha(w: &Word) -> Result<String> {
    if w.genus.generators() > 26 {
        return Err(Error::InvalidParameter(format!(
            "alpha style needs genus <= 13, got {}",
            w.genus
        )));
    }
    Ok(w.letters
        .iter()
        .map(|l| {
            let c = (b'a' + (l.index() - 1) as u8) as char;
            if l.is_inverse() {
                c.to_ascii_uppercase()
            } else {
                c
            }
        })
        .collect())
}

fn parse_int(text: &str, genus: Genus) -> Result<Word> {
    let mut letters = Vec::new();
    let mut offset = 0;
    for token in text.split_whitespace() {
        // split_whitespace hands out subslices, so the byte position is
        // recoverable from the pointer difference.
        let position = token.as_ptr() as usize - text.as_ptr() as usize;
        offset = offset.max(position);
        let (base, exponent) = match token.split_once('^') {
            Some((b, e)) => (b, Some(e)),
            None => (token, None),
        };
        let index: i64 = base.parse().map_err(|_| Error::Parse {
            position,
            message: format!("malformed letter {base:?}"),
        })?;
        let letter = Letter::new(index, genus).map_err(|e| Error::Parse {
            position,
            message: e.to_string(),
        })?;
        let exponent: i64 = match exponent {
            None => 1,
            Some(e) => e.parse().map_err(|_| Error::Parse {
                position,
                message: format!("malformed exponent {e:?}"),
            })?,
        };
        if exponent.abs() > MAX_EXPONENT {
            return Err(Error::Parse {
                position,
                message: format!("exponent {exponent} exceeds {MAX_EXPONENT}"),
            });
        }
        let l = if exponent < 0 {
            letter.inverse()
        } else {
            letter
        };
        letters.extend(std::iter::repeat_n(l, exponent.unsigned_abs() as usize));
    }
    Ok(Word { genus, letters })
}

fn parse_alpha(text: &str, genus: Genus) -> Result<Word> {
    if genus.generators() > 26 {
        return Err(Error::InvalidParameter(format!(
            "alpha style needs genus <= 13, got {genus}"
        )));
    }
    let mut letters = Vec::new();
    for (position, c) in text.char_indices() {
        if c.is_whitespace() {
            continue;
        }
        if !c.is_ascii_alphabetic() {
            return Err(Error::Parse {
                position,
                message: format!("unexpected character {c:?}"),
            });
        }
        let index = (c.to_ascii_lowercase() as u8 - b'a') as i64 + 1;
        let signed = if c.is_ascii_uppercase() {
            -index
        } else {
            index
        };
        letters.push(Letter::new(signed, genus).map_err(|e| Error::Parse {
            position,
            message: e.to_string(),
        })?);
    }
    Ok(Word { genus, letters })
}

/// Identifier of a member of the relator family.
///
/// Ids `0..4g` are the rotations of `R = c_1..c_2g c_1^-1..c_2g^-1`
/// (id `i` starts at the `i`-th letter of `R`), ids `4g..8g` the rotations
/// of `R^-1`.
pub type RelatorId = usize;

/// The `8g` cyclic permutations of the relator and its inverse, with a
/// lookup table from consecutive letter pairs to the member they start.
///
/// Every ordered pair of letters occurs at most once as a cyclically
/// consecutive pair across the whole family, so the first two letters of a
/// fractional relator determine its member.
#[derive(Debug, Clone)]
pub struct RelatorFamily {
    genus: Genus,
    members: Vec<Vec<Letter>>,
    pair_index: Vec<u32>,
    starting_with: Vec<[RelatorId; 2]>,
}

const NO_MEMBER: u32 = u32::MAX;

impl RelatorFamily {
    pub fn new(genus: Genus) -> RelatorFamily {
        let two_g = genus.generators() as i16;
        let n = genus.relator_len();
        let relator: Vec<Letter> = (1..=two_g)
            .map(Letter::from_raw)
            .chain((1..=two_g).map(|i| Letter::from_raw(-i)))
            .collect();
        let inverse: Vec<Letter> = relator.iter().rev().map(|l| l.inverse()).collect();

        let mut members = Vec::with_capacity(2 * n);
        for base in [&relator, &inverse] {
            for i in 0..n {
                let mut m = Vec::with_capacity(n);
                m.extend_from_slice(&base[i..]);
                m.extend_from_slice(&base[..i]);
                members.push(m);
            }
        }

        let mut pair_index = vec![NO_MEMBER; n * n];
        let mut starting_with = vec![[usize::MAX; 2]; n];
        for (id, m) in members.iter().enumerate() {
            let slot = m[0].slot(genus) * n + m[1].slot(genus);
            debug_assert_eq!(pair_index[slot], NO_MEMBER, "pair repeated in family");
            pair_index[slot] = id as u32;
            let first = &mut starting_with[m[0].slot(genus)];
            if first[0] == usize::MAX {
                first[0] = id;
            } else {
                first[1] = id;
            }
        }
        RelatorFamily {
            genus,
            members,
            pair_index,
            starting_with,
        }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, id: RelatorId) -> &[Letter] {
        &self.members[id]
    }

    pub fn member_word(&self, id: RelatorId) -> Word {
        Word::from_letters(self.genus, self.members[id].clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = (RelatorId, &[Letter])> {
        self.members.iter().map(|m| m.as_slice()).enumerate()
    }

    /// `b_j` of member `id`, one-based with indices taken mod `4g`.
    pub fn b(&self, id: RelatorId, j: i64) -> Letter {
        let n = self.genus.relator_len() as i64;
        self.members[id][(j - 1).rem_euclid(n) as usize]
    }

    /// `b_from .. b_to` (inclusive, one-based, mod `4g`), stepping forwards
    /// when `from <= to` and backwards otherwise.
    pub(crate) fn run(&self, id: RelatorId, from: i64, to: i64) -> Vec<Letter> {
        if from <= to {
            (from..=to).map(|j| self.b(id, j)).collect()
        } else {
            (to..=from).rev().map(|j| self.b(id, j)).collect()
        }
    }

    /// The member whose `b_1` is `b_{1+shift}` of `id`.
    pub fn rotated(&self, id: RelatorId, shift: i64) -> RelatorId {
        let n = self.genus.relator_len();
        let base = id / n * n;
        base + ((id % n) as i64 + shift).rem_euclid(n as i64) as usize
    }

    /// The member starting with the consecutive pair `(a, b)`, if any.
    pub fn pair_member(&self, a: Letter, b: Letter) -> Option<RelatorId> {
        let n = self.genus.relator_len();
        match self.pair_index[a.slot(self.genus) * n + b.slot(self.genus)] {
            NO_MEMBER => None,
            id => Some(id as RelatorId),
        }
    }

    /// Lowest-id member whose first letter is `a`.
    pub fn first_starting_with(&self, a: Letter) -> RelatorId {
        self.starting_with[a.slot(self.genus)][0]
    }

    /// Longest prefix of a member matching `letters[start..]`, as
    /// `(member, k)` with `2 <= k <= 4g`.
    pub fn extent(&self, letters: &[Letter], start: usize) -> Option<(RelatorId, usize)> {
        if start + 1 >= letters.len() {
            return None;
        }
        let id = self.pair_member(letters[start], letters[start + 1])?;
        let m = &self.members[id];
        let k = m
            .iter()
            .zip(&letters[start..])
            .take_while(|(a, b)| a == b)
            .count();
        Some((id, k))
    }

    /// Human-readable member name, e.g. `R-rotation-0`.
    pub fn describe(&self, id: RelatorId) -> String {
        let n = self.genus.relator_len();
        if id < n {
            format!("R-rotation-{id}")
        } else {
            format!("Rinv-rotation-{}", id - n)
        }
    }
}

/// A surface group of fixed genus with its relator family. All algorithms
/// hang off this type; it is immutable and cheap to share.
#[derive(Debug, Clone)]
pub struct SurfaceGroup {
    genus: Genus,
    relators: RelatorFamily,
}

impl SurfaceGroup {
    pub fn new(genus: u32) -> Result<SurfaceGroup> {
        let genus = Genus::new(genus)?;
        Ok(SurfaceGroup {
            genus,
            relators: RelatorFamily::new(genus),
        })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn relators(&self) -> &RelatorFamily {
        &self.relators
    }

    pub fn identity(&self) -> Word {
        Word::empty(self.genus)
    }

    /// All `4g` letters in increasing order.
    pub fn alphabet(&self) -> Vec<Letter> {
        (0..self.genus.alphabet_size())
            .map(|s| Letter::from_slot(s, self.genus))
            .collect()
    }

    pub fn word(&self, signed: &[i64]) -> Result<Word> {
        Word::from_signed(self.genus, signed)
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        Word::parse(text, self.genus)
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        if w.genus() != self.genus {
            return Err(Error::GenusMismatch {
                left: self.genus.get(),
                right: w.genus().get(),
            });
        }
        Ok(())
    }

    pub fn relator_word(&self) -> Word {
        self.relators.member_word(0)
    }

    /// Every member whose length-`k` prefix (`k >= 2`) matches `w` at
    /// `start`, with the maximal such `k`.
    pub fn fractional_relator_extent(&self, w: &Word, start: usize) -> Vec<(RelatorId, usize)> {
        self.relators
            .extent(w.letters(), start)
            .filter(|&(_, k)| k >= 2)
            .into_iter()
            .collect()
    }

    pub fn relator_cyclic_words(&self) -> &RelatorFamily {
        &self.relators
    }
}

/// The relator family for genus `g`.
pub fn relator_cyclic_words(g: u32) -> Result<RelatorFamily> {
    Ok(RelatorFamily::new(Genus::new(g)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> SurfaceGroup {
        SurfaceGroup::new(2).unwrap()
    }

    #[test]
    fn ranks_follow_the_generator_chain() {
        let g = Genus::new(2).unwrap();
        let rank = |s| Letter::new(s, g).unwrap().rank(g);
        assert_eq!(rank(-4), 8);
        assert_eq!(rank(1), 4);
        assert_eq!(rank(4), 1);
        assert_eq!(rank(-1), 5);
        for genus in 2..=4 {
            let g = Genus::new(genus).unwrap();
            let mut ranks: Vec<u32> = SurfaceGroup::new(genus)
                .unwrap()
                .alphabet()
                .iter()
                .map(|l| l.rank(g))
                .collect();
            ranks.sort_unstable();
            assert_eq!(ranks, (1..=4 * genus).collect::<Vec<_>>());
        }
    }

    #[test]
    fn letter_rank_rejects_foreign_letters() {
        let g3 = Genus::new(3).unwrap();
        let l = Letter::new(6, g3).unwrap();
        assert!(letter_rank(l, Genus::new(2).unwrap()).is_err());
        assert!(Letter::new(0, g3).is_err());
    }

    #[test]
    fn lenlex_examples() {
        let g = g2();
        let w = |s: &[i64]| g.word(s).unwrap();
        assert_eq!(
            compare_lenlex(&w(&[1, 2]), &w(&[1])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            compare_lenlex(&w(&[-1]), &w(&[1])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            compare_lenlex(&w(&[4, 3, 2, 1]), &w(&[1, 2, 3, 4])).unwrap(),
            Ordering::Less
        );
        let other = SurfaceGroup::new(3).unwrap().word(&[1]).unwrap();
        assert!(matches!(
            compare_lenlex(&w(&[1]), &other),
            Err(Error::GenusMismatch { .. })
        ));
    }

    #[test]
    fn family_shape() {
        let fam = relator_cyclic_words(2).unwrap();
        assert_eq!(fam.len(), 16);
        let has = |s: &[i32]| {
            fam.iter()
                .any(|(_, m)| m.iter().map(|l| l.signed()).eq(s.iter().copied()))
        };
        assert!(has(&[1, 2, 3, 4, -1, -2, -3, -4]));
        assert!(has(&[4, 3, 2, 1, -4, -3, -2, -1]));
        assert!(relator_cyclic_words(1).is_err());

        for genus in 2..=5 {
            let fam = relator_cyclic_words(genus).unwrap();
            let two_g = 2 * genus as i64;
            let mut seen = std::collections::HashSet::new();
            for (id, m) in fam.iter() {
                assert_eq!(m.len(), 4 * genus as usize);
                assert!(seen.insert(m.to_vec()), "duplicate member");
                for k in 1..=4 * genus as i64 {
                    assert_eq!(fam.b(id, k), fam.b(id, k + two_g).inverse());
                    assert_eq!(fam.b(id, k), fam.b(id, k - two_g).inverse());
                }
            }
        }
    }

    #[test]
    fn rotated_members_agree_with_letters() {
        let fam = relator_cyclic_words(3).unwrap();
        for id in 0..fam.len() {
            for shift in -13..13 {
                let r = fam.rotated(id, shift);
                for j in 1..=12 {
                    assert_eq!(fam.b(r, j), fam.b(id, j + shift));
                }
            }
        }
    }

    #[test]
    fn fractional_extent_examples() {
        let g = g2();
        let w = g.word(&[1, 2, 3]).unwrap();
        assert_eq!(g.fractional_relator_extent(&w, 0), vec![(0, 3)]);
        assert!(g
            .fractional_relator_extent(&g.word(&[1, 1]).unwrap(), 0)
            .is_empty());
        let r = g.word(&[1, 2, 3, 4, -1, -2, -3, -4]).unwrap();
        assert_eq!(g.fractional_relator_extent(&r, 0), vec![(0, 8)]);
        assert_eq!(g.relators().describe(0), "R-rotation-0");
    }

    #[test]
    fn parse_examples() {
        let g = g2();
        assert_eq!(g.parse("1 2 -1").unwrap().to_signed(), vec![1, 2, -1]);
        assert_eq!(g.parse("2^-3 1").unwrap().to_signed(), vec![-2, -2, -2, 1]);
        assert_eq!(g.parse("-2^-2").unwrap().to_signed(), vec![2, 2]);
        assert_eq!(g.parse("3^0").unwrap().len(), 0);
        assert!(g.parse("").unwrap().is_empty());
        match g.parse("5 1") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 0),
            other => panic!("{other:?}"),
        }
        match g.parse("1  x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!(g.parse("1^99999999999").is_err());
        assert!(g.parse("1^").is_err());
    }

    #[test]
    fn alpha_style() {
        let g = g2();
        let w = parse_word("abA d", g.genus(), WordStyle::Alpha).unwrap();
        assert_eq!(w.to_signed(), vec![1, 2, -1, 4]);
        assert_eq!(format_word(&w, WordStyle::Alpha).unwrap(), "abAd");
        assert!(parse_word("e", g.genus(), WordStyle::Alpha).is_err());
        let big = SurfaceGroup::new(14).unwrap();
        assert!(format_word(&big.word(&[1]).unwrap(), WordStyle::Alpha).is_err());
    }

    #[test]
    fn rotation_and_inverse() {
        let g = g2();
        let w = g.word(&[1, 2, 3]).unwrap();
        assert_eq!(w.rotate(1).to_signed(), vec![2, 3, 1]);
        assert_eq!(w.rotate(4).to_signed(), vec![2, 3, 1]);
        assert_eq!(w.inverse().to_signed(), vec![-3, -2, -1]);
        assert_eq!(g.identity().rotate(3), g.identity());
    }
}
