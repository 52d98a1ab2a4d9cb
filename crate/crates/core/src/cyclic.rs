//! Cyclic irreducibility and the conjugacy-class normal form.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::presentation::{SurfaceGroup, Word};
use crate::rewrite::Trace;

/// One cyclic reduction: rotate the current word left by `offset`, then
/// normalize.
#[derive(Debug, Clone)]
pub struct CyclicStep {
    pub offset: usize,
    pub trace: Trace,
}

/// Output of [`SurfaceGroup::cyclic_normal_form`].
///
/// As group elements, `input = conjugator^-1 * rotate(class_nf, rotation_offset) * conjugator`.
#[derive(Debug, Clone)]
pub struct CyclicReductionResult {
    pub class_nf: Word,
    pub conjugator: Word,
    pub rotation_offset: usize,
    /// Reduction of the input to its normal form.
    pub trace: Trace,
    pub cyclic_steps: Vec<CyclicStep>,
}

impl CyclicReductionResult {
    /// `rotate(class_nf, rotation_offset)`.
    pub fn rotated_class(&self) -> Word {
        self.class_nf.rotate(self.rotation_offset)
    }
}

/// State budget for the class search in [`SurfaceGroup::cyclic_normal_form`].
pub const DEFAULT_CLASS_STATES: usize = 200_000;

/// All `|w|` left rotations of `w` in offset order (no deduplication).
pub fn rotations(w: &Word) -> Vec<Word> {
    if w.len() <= 1 {
        return vec![w.clone()];
    }
    (0..w.len()).map(|o| w.rotate(o)).collect()
}

/// Splits `A` into `(A1, A2)` with `rotate(A, u_offset) = A2 A1` and
/// `rotate(A, v_offset) = A1 A2`.
pub fn align_rotation(a: &Word, u_offset: usize, v_offset: usize) -> Result<(Word, Word)> {
    let n = a.len();
    for offset in [u_offset, v_offset] {
        if offset >= n.max(1) {
            return Err(Error::OffsetOutOfRange { offset, len: n });
        }
    }
    if n == 0 {
        return Ok((a.clone(), a.clone()));
    }
    let v_rot = a.rotate(v_offset);
    let cut = (u_offset + n - v_offset) % n;
    Ok((v_rot.subword(0..cut), v_rot.subword(cut..n)))
}

impl SurfaceGroup {
    /// True iff every rotation of `w` is irreducible.
    pub fn is_cyclically_irreducible(&self, w: &Word) -> bool {
        self.first_reducible_rotation(w).is_none()
    }

    fn first_reducible_rotation(&self, w: &Word) -> Option<usize> {
        if w.len() <= 1 {
            return None;
        }
        // Redexes are at most 4g + 2t(2g-1) long, so a doubled word covers
        // every wrap-around occurrence; scanning rotations individually is
        // simpler and fast at the sizes we handle.
        (0..w.len()).find(|&o| !self.is_irreducible(&w.rotate(o)))
    }

    /// Greedy phase: rotate and normalize until every rotation is
    /// irreducible. Returns the word and `K` with `w = K^-1 * word * K`.
    fn cyclically_reduce(&self, w: &Word, steps: &mut Vec<CyclicStep>) -> Result<(Word, Word)> {
        let mut cur = self.nf(w)?;
        let mut conj = self.identity();
        let mut seen: HashSet<Word> = HashSet::new();
        let mut seen_len = cur.len();
        let budget = steps.len() + (w.len() + 1) * self.genus().alphabet_size().pow(2);

        while let Some(offset) = self.first_reducible_rotation(&cur) {
            if steps.len() >= budget {
                return Err(Error::NonTermination {
                    steps: steps.len(),
                    context: format!("cyclic reduction of {w}"),
                });
            }
            if cur.len() != seen_len {
                seen.clear();
                seen_len = cur.len();
            }
            if !seen.insert(cur.clone()) {
                return Err(Error::NonTermination {
                    steps: steps.len(),
                    context: format!("cyclic reduction of {w} revisited {cur}"),
                });
            }
            // cur = P Q  ->  Q P = P^-1 cur P
            let p = cur.subword(0..offset);
            let (next, t) = self.normal_form(&cur.rotate(offset))?;
            conj = self.free_reduce(&p.inverse().concat(&conj)?);
            cur = next;
            steps.push(CyclicStep { offset, trace: t });
        }
        Ok((cur, conj))
    }

    /// Closure of a cyclically irreducible word of length `L` under
    /// rotations and replacements of fractional relators of length at
    /// least `2g - 1` by their inverse complements, through cyclic words of
    /// length at most `L + 2`.
    fn class_search(&self, start: &Word, max_states: usize) -> Result<ClassSearch> {
        let two_g = self.genus().half();
        let n_rel = self.genus().relator_len();
        let fam = self.relators();
        let base_len = start.len();

        // Each state is stored as its lenlex-least rotation together with K,
        // where start = K^-1 * state * K.
        let (root, root_k) = self.least_rotation(start, &self.identity())?;
        let mut index: HashMap<Word, usize> = HashMap::new();
        let mut states: Vec<(Word, Word)> = vec![(root.clone(), root_k)];
        index.insert(root, 0);
        let mut head = 0;
        while head < states.len() {
            let (s, k) = states[head].clone();
            head += 1;
            let n = s.len();
            for o in 0..n {
                let r = s.rotate(o);
                let Some((id, kmax)) = fam.extent(r.letters(), 0) else {
                    continue;
                };
                let k_rot = self.free_reduce(&s.subword(0..o).inverse().concat(&k)?);
                for len in (two_g - 1).max(2)..=kmax.min(n_rel) {
                    let mut letters: Vec<_> = fam.member(id)[len..]
                        .iter()
                        .rev()
                        .map(|l| l.inverse())
                        .collect();
                    letters.extend_from_slice(&r.letters()[len..]);
                    let cand = Word::new(self.genus(), letters)?;
                    let (cand, cand_k) = self.cyclic_free_reduce(&cand, &k_rot)?;
                    if cand.len() > base_len + 2 {
                        continue;
                    }
                    if cand.len() < base_len {
                        return Ok(ClassSearch::Shorter(cand, cand_k));
                    }
                    let (cand, cand_k) = self.least_rotation(&cand, &cand_k)?;
                    if index.contains_key(&cand) {
                        continue;
                    }
                    if states.len() >= max_states {
                        return Err(Error::Budget(format!(
                            "conjugacy class search from {start} exceeds {max_states} states"
                        )));
                    }
                    index.insert(cand.clone(), states.len());
                    states.push((cand, cand_k));
                }
            }
        }
        let best = states
            .into_iter()
            .filter(|(w, _)| w.len() == base_len && self.is_cyclically_irreducible(w))
            .min_by(|a, b| a.0.cmp(&b.0))
            .ok_or_else(|| Error::Invariant(format!("class search lost {start}")))?;
        Ok(ClassSearch::Minimal(best.0, best.1))
    }

    /// Freely and cyclically reduces `w`, tracking `K` as in
    /// [`Self::class_search`].
    fn cyclic_free_reduce(&self, w: &Word, k: &Word) -> Result<(Word, Word)> {
        let w = self.free_reduce(w);
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() / 2 && letters[i] == letters[letters.len() - 1 - i].inverse() {
            i += 1;
        }
        // w = P w' P^-1  ->  w' = P^-1 w P
        let p = w.subword(0..i);
        let inner = w.subword(i..letters.len() - i);
        Ok((inner, self.free_reduce(&p.inverse().concat(k)?)))
    }

    fn least_rotation(&self, w: &Word, k: &Word) -> Result<(Word, Word)> {
        let n = w.len();
        let best = (0..n.max(1))
            .min_by(|&a, &b| w.rotate(a).cmp(&w.rotate(b)).then(a.cmp(&b)))
            .unwrap_or(0);
        let p = w.subword(0..best);
        Ok((w.rotate(best), self.free_reduce(&p.inverse().concat(k)?)))
    }

    /// The canonical cyclically irreducible representative of the
    /// conjugacy class of `w`, with a conjugator into it.
    pub fn cyclic_normal_form(&self, w: &Word) -> Result<CyclicReductionResult> {
        self.cyclic_normal_form_with_budget(w, DEFAULT_CLASS_STATES)
    }

    pub fn cyclic_normal_form_with_budget(
        &self,
        w: &Word,
        max_states: usize,
    ) -> Result<CyclicReductionResult> {
        self.check(w)?;
        let (_, trace) = self.normal_form(w)?;
        let mut steps = Vec::new();
        // w = conj^-1 * cur * conj
        let mut cur = w.clone();
        let mut conj = self.identity();
        loop {
            let (reduced, k) = self.cyclically_reduce(&cur, &mut steps)?;
            conj = self.free_reduce(&k.concat(&conj)?);
            match self.class_search(&reduced, max_states)? {
                ClassSearch::Shorter(next, k) => {
                    conj = self.free_reduce(&k.concat(&conj)?);
                    cur = next;
                }
                ClassSearch::Minimal(class_nf, k) => {
                    conj = self.nf(&k.concat(&conj)?)?;
                    return Ok(CyclicReductionResult {
                        class_nf,
                        conjugator: conj,
                        rotation_offset: 0,
                        trace,
                        cyclic_steps: steps,
                    });
                }
            }
        }
    }
}

enum ClassSearch {
    Shorter(Word, Word),
    Minimal(Word, Word),
}
