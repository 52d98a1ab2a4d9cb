//! Independent ground truth.
//!
//! [`dehn_trivial`] is the classical Dehn algorithm. It only ever replaces
//! more than half of a relator by the shorter complement, never touches the
//! S3/S4 rules, and scans the relator family directly instead of going
//! through the pair table used by the rewriting engine.
//!
//! The ball and conjugation-graph searches key states by normal form for
//! speed; [`verify_distinct_by_dehn`] re-checks a subset of keys with the
//! Dehn oracle.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::presentation::{check_same_genus, lenlex, Letter, SurfaceGroup, Word};

/// Default state budget for searches.
pub const DEFAULT_MAX_STATES: usize = 1_000_000;
/// Default depth budget for conjugation-graph searches.
pub const DEFAULT_MAX_DEPTH: usize = 20;
/// Default cap on `|nf(w)|` for [`minimality_check`].
pub const DEFAULT_MINIMALITY_CAP: usize = 4;

/// Whether `w` represents the identity, by Dehn's algorithm.
pub fn dehn_trivial(group: &SurfaceGroup, w: &Word) -> bool {
    let fam = group.relators();
    let n = group.genus().relator_len();
    let half = group.genus().half();

    // Members indexed by their first letter: two per letter.
    let mut by_first: HashMap<Letter, Vec<&[Letter]>> = HashMap::new();
    for (_, m) in fam.iter() {
        by_first.entry(m[0]).or_default().push(m);
    }

    let mut cur = free_reduce(w.letters());
    'outer: loop {
        for p in 0..cur.len() {
            let Some(cands) = by_first.get(&cur[p]) else {
                continue;
            };
            for m in cands {
                let k = m.iter().zip(&cur[p..]).take_while(|(a, b)| a == b).count();
                if k > half {
                    // b_1..b_k = (b_{k+1}..b_4g)^-1
                    let complement: Vec<Letter> =
                        m[k..n].iter().rev().map(|l| l.inverse()).collect();
                    let mut next = Vec::with_capacity(cur.len() - k + complement.len());
                    next.extend_from_slice(&cur[..p]);
                    next.extend(complement);
                    next.extend_from_slice(&cur[p + k..]);
                    cur = free_reduce(&next);
                    continue 'outer;
                }
            }
        }
        return cur.is_empty();
    }
}

fn free_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

/// Whether `u` and `v` represent the same element, by Dehn's algorithm.
pub fn dehn_equal(group: &SurfaceGroup, u: &Word, v: &Word) -> Result<bool> {
    check_same_genus(u, v)?;
    group.check(u)?;
    Ok(dehn_trivial(group, &u.concat(&v.inverse())?))
}

/// Group elements of word length at most `radius`, keyed by normal form,
/// with their BFS distance from the identity.
pub fn cayley_ball(
    group: &SurfaceGroup,
    radius: usize,
    max_states: usize,
) -> Result<BTreeMap<Word, usize>> {
    let alphabet = group.alphabet();
    let mut ball = BTreeMap::new();
    ball.insert(group.identity(), 0);
    let mut frontier = vec![group.identity()];
    for d in 1..=radius {
        let mut next = Vec::new();
        for e in &frontier {
            for &x in &alphabet {
                let mut letters = e.letters().to_vec();
                letters.push(x);
                let w = group.nf(&Word::from_letters(group.genus(), letters))?;
                if ball.contains_key(&w) {
                    continue;
                }
                if w.len() != d {
                    return Err(Error::Invariant(format!(
                        "ball element {w} at distance {d} has normal form length {}",
                        w.len()
                    )));
                }
                if ball.len() >= max_states {
                    return Err(Error::Budget(format!(
                        "Cayley ball of radius {radius} exceeds {max_states} states"
                    )));
                }
                ball.insert(w.clone(), d);
                next.push(w);
            }
        }
        next.sort();
        frontier = next;
    }
    Ok(ball)
}

/// Checks pairwise Dehn-distinctness of `words`; returns the first equal
/// pair found.
pub fn verify_distinct_by_dehn(
    group: &SurfaceGroup,
    words: &[Word],
) -> Result<Option<(Word, Word)>> {
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            if dehn_equal(group, a, b)? {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// Outcome of a conjugation-graph search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClOutcome {
    Found(usize),
    Exhausted,
}

impl ClOutcome {
    pub fn found(self) -> Option<usize> {
        match self {
            ClOutcome::Found(d) => Some(d),
            ClOutcome::Exhausted => None,
        }
    }
}

/// Breadth-first search in the conjugation graph `s -> nf(x^-1 s x)`.
#[derive(Debug, Clone)]
pub struct ConjGraphSearch {
    pub start: Word,
    pub max_depth: usize,
    pub max_states: usize,
    /// Canonical state -> depth.
    pub visited: HashMap<Word, usize>,
    /// Depth of the last fully expanded level.
    pub completed_depth: usize,
    pub exhausted: bool,
}

impl ConjGraphSearch {
    pub fn new(
        group: &SurfaceGroup,
        start: &Word,
        max_depth: usize,
        max_states: usize,
    ) -> Result<Self> {
        let start = group.nf(start)?;
        let mut visited = HashMap::new();
        visited.insert(start.clone(), 0);
        Ok(ConjGraphSearch {
            start,
            max_depth,
            max_states,
            visited,
            completed_depth: 0,
            exhausted: false,
        })
    }

    /// Runs until `target` is reached (returning its depth) or the budgets
    /// run out. With `target = None`, expands the full `max_depth` ball.
    pub fn run(
        &mut self,
        group: &SurfaceGroup,
        target: Option<&Word>,
        parallel: bool,
    ) -> Result<ClOutcome> {
        let target = target.map(|t| group.nf(t)).transpose()?;
        if let Some(t) = &target {
            if let Some(&d) = self.visited.get(t) {
                return Ok(ClOutcome::Found(d));
            }
        }
        let alphabet = group.alphabet();
        let mut frontier: Vec<Word> = self
            .visited
            .iter()
            .filter(|(_, &d)| d == self.completed_depth)
            .map(|(w, _)| w.clone())
            .collect();
        frontier.sort();
        while self.completed_depth < self.max_depth {
            let depth = self.completed_depth + 1;
            let expand = |s: &Word| -> Result<Vec<Word>> {
                alphabet
                    .iter()
                    .map(|&x| {
                        let xw = Word::from_letters(group.genus(), vec![x]);
                        group.nf_product(&[&xw.inverse(), s, &xw])
                    })
                    .collect()
            };
            let children: Vec<Vec<Word>> = if parallel {
                frontier.par_iter().map(expand).collect::<Result<_>>()?
            } else {
                frontier.iter().map(expand).collect::<Result<_>>()?
            };
            // Merge in frontier order so the visited set does not depend on
            // expansion order.
            let mut next = Vec::new();
            for c in children.into_iter().flatten() {
                if self.visited.contains_key(&c) {
                    continue;
                }
                if self.visited.len() >= self.max_states {
                    self.exhausted = true;
                    return Ok(ClOutcome::Exhausted);
                }
                self.visited.insert(c.clone(), depth);
                next.push(c);
            }
            self.completed_depth = depth;
            if let Some(t) = &target {
                if self.visited.get(t) == Some(&depth) {
                    return Ok(ClOutcome::Found(depth));
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort();
            frontier = next;
        }
        self.exhausted = true;
        Ok(ClOutcome::Exhausted)
    }
}

/// Exact conjugator length `min |w|` over `w` with `w^-1 u w = v`.
pub fn exact_cl(
    group: &SurfaceGroup,
    u: &Word,
    v: &Word,
    max_depth: usize,
    max_states: usize,
) -> Result<ClOutcome> {
    check_same_genus(u, v)?;
    let mut search = ConjGraphSearch::new(group, u, max_depth, max_states)?;
    search.run(group, Some(v), false)
}

/// Conjugation-graph distances from `u` to every state within `max_depth`.
pub fn conjugation_distances(
    group: &SurfaceGroup,
    u: &Word,
    max_depth: usize,
    max_states: usize,
    parallel: bool,
) -> Result<HashMap<Word, usize>> {
    let mut search = ConjGraphSearch::new(group, u, max_depth, max_states)?;
    if search.run(group, None, parallel)? == ClOutcome::Exhausted
        && search.visited.len() >= max_states
    {
        return Err(Error::Budget(format!(
            "conjugation graph from {u} exceeds {max_states} states"
        )));
    }
    Ok(search.visited)
}

/// All words over the alphabet of length exactly `len`, in length-lex order.
pub fn words_of_length(group: &SurfaceGroup, len: usize) -> impl Iterator<Item = Word> + '_ {
    let total = group
        .alphabet()
        .len()
        .checked_pow(len as u32)
        .unwrap_or(usize::MAX);
    (0..total).map(move |code| word_from_code(group, len, code))
}

/// The `code`-th word of length `len` in length-lex order (base-`4g` digits
/// over the ranked alphabet).
pub fn word_from_code(group: &SurfaceGroup, len: usize, mut code: usize) -> Word {
    let alphabet = group.alphabet();
    let a = alphabet.len();
    let mut letters = vec![alphabet[0]; len];
    for slot in letters.iter_mut().rev() {
        *slot = alphabet[code % a];
        code /= a;
    }
    Word::from_letters(group.genus(), letters)
}

/// True iff no word strictly length-lex smaller than `nf(w)` represents the
/// same element, checked by exhaustive enumeration against Dehn's algorithm.
pub fn minimality_check(group: &SurfaceGroup, w: &Word, cap: usize) -> Result<bool> {
    let nf = group.nf(w)?;
    if nf.len() > cap {
        return Err(Error::Budget(format!(
            "minimality check needs |nf| <= {cap}, got {}",
            nf.len()
        )));
    }
    for len in 0..=nf.len() {
        for v in words_of_length(group, len) {
            if lenlex(group.genus(), v.letters(), nf.letters()).is_ge() {
                break;
            }
            if dehn_equal(group, &v, w)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pairwise-distinct normal forms reachable in a conjugation search, as a
/// set (used by acceptance spot checks).
pub fn visited_set(search: &ConjGraphSearch) -> HashSet<Word> {
    search.visited.keys().cloned().collect()
}
