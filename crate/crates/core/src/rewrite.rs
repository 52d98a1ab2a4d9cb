//! The S-rule rewriting system and reduction to length-lex normal form.
//!
//! For a relator member `b_1 .. b_4g` the rule families are
//!
//! | kind | leading word                  | replacement                 |
//! |------|-------------------------------|-----------------------------|
//! | S1   | `b_1 b_1^-1`                  | empty                       |
//! | S2   | `b_1 .. b_k`, `2g < k <= 4g`  | `b_4g^-1 .. b_{k+1}^-1`     |
//! | S3   | `b_1 (b_2..b_2g)^t b_{2g+1}`  | `(b_2g..b_2)^t`, `t >= 2`   |
//! | S4a  | `b_1 (b_2..b_2g)^t`           | `(b_2g..b_2)^t b_1`         |
//! | S4b  | `(b_1..b_{2g-1})^t b_2g`      | `b_2g (b_{2g-1}..b_1)^t`    |
//!
//! where S4a/S4b additionally need `b_1 > b_2g` and `t >= 1`. A word is
//! irreducible exactly when no leading word occurs in it.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{format_word, lenlex, Letter, RelatorId, SurfaceGroup, Word, WordStyle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleKind {
    S1,
    S2,
    S3,
    S4a,
    S4b,
}

impl RuleKind {
    fn priority(self) -> u8 {
        match self {
            RuleKind::S1 => 0,
            RuleKind::S2 => 1,
            RuleKind::S3 => 2,
            RuleKind::S4a | RuleKind::S4b => 3,
        }
    }
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleKind::S1 => "S1",
            RuleKind::S2 => "S2",
            RuleKind::S3 => "S3",
            RuleKind::S4a => "S4a",
            RuleKind::S4b => "S4b",
        };
        f.write_str(s)
    }
}

/// One applicable rule instance. Positions are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RewriteRule {
    pub kind: RuleKind,
    pub position: usize,
    pub relator: RelatorId,
    /// Fractional relator length, S2 only.
    pub k: Option<usize>,
    /// Block count, S3/S4 only.
    pub t: Option<usize>,
}

impl RewriteRule {
    /// Length of the leading word for a group of half-relator length `two_g`.
    pub fn leading_len(&self, two_g: usize) -> usize {
        let block = two_g - 1;
        match self.kind {
            RuleKind::S1 => 2,
            RuleKind::S2 => self.k.unwrap_or(0),
            RuleKind::S3 => 2 + self.t.unwrap_or(0) * block,
            RuleKind::S4a | RuleKind::S4b => 1 + self.t.unwrap_or(0) * block,
        }
    }

    /// Length decrease caused by applying the rule.
    pub fn length_drop(&self, two_g: usize) -> usize {
        match self.kind {
            RuleKind::S1 | RuleKind::S3 => 2,
            RuleKind::S2 => 2 * self.k.unwrap_or(0) - 2 * two_g,
            RuleKind::S4a | RuleKind::S4b => 0,
        }
    }

    /// Strategy key: smaller is preferred.
    fn strategy_key(&self) -> (u8, std::cmp::Reverse<usize>, usize, RelatorId, RuleKind) {
        let size = self.k.or(self.t).unwrap_or(0);
        (
            self.kind.priority(),
            std::cmp::Reverse(size),
            self.position,
            self.relator,
            self.kind,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteStep {
    pub rule: RewriteRule,
    pub before_len: usize,
    pub after_len: usize,
    pub lenlex_decreased: bool,
}

/// Reduction history from `initial` to `final_word`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub initial: Word,
    pub steps: Vec<RewriteStep>,
    pub final_word: Word,
}

impl Trace {
    /// Total length decrease over all steps.
    pub fn length_drop(&self) -> usize {
        self.initial.len() - self.final_word.len()
    }

    /// Line-oriented serialization: `initial <word>`, one
    /// `kind position relator_id k t before_len after_len` line per step
    /// (`-` for an absent parameter), then `final <word>`.
    pub fn render(&self, style: WordStyle) -> Result<String> {
        let mut out = format!("initial {}\n", format_word(&self.initial, style)?);
        for s in &self.steps {
            let opt = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
            out.push_str(&format!(
                "{} {} {} {} {} {} {}\n",
                s.rule.kind,
                s.rule.position,
                s.rule.relator,
                opt(s.rule.k),
                opt(s.rule.t),
                s.before_len,
                s.after_len
            ));
        }
        out.push_str(&format!(
            "final {}\n",
            format_word(&self.final_word, style)?
        ));
        Ok(out)
    }

    /// Re-applies every step to `initial`, returning the word reached.
    pub fn replay(&self, group: &SurfaceGroup) -> Result<Word> {
        let mut w = self.initial.clone();
        for s in &self.steps {
            w = group.apply_rule(&w, &s.rule)?;
        }
        Ok(w)
    }
}

/// Number of complete copies of `block` at the start of `letters`.
fn count_blocks(letters: &[Letter], block: &[Letter]) -> usize {
    let matched = letters
        .iter()
        .zip(block.iter().cycle())
        .take_while(|(a, b)| a == b)
        .count();
    matched / block.len()
}

impl SurfaceGroup {
    /// Every applicable rule, with `k` and `t` maximal per
    /// (position, relator, kind). Empty iff `w` is irreducible.
    pub fn find_redexes(&self, w: &Word) -> Vec<RewriteRule> {
        let mut out = Vec::new();
        self.scan_redexes(w.letters(), |r| {
            out.push(r);
            false
        });
        out
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        let mut found = false;
        self.scan_redexes(w.letters(), |_| {
            found = true;
            true
        });
        !found
    }

    /// Calls `visit` on each redex in position order; stops early once
    /// `visit` returns true.
    fn scan_redexes(&self, letters: &[Letter], mut visit: impl FnMut(RewriteRule) -> bool) {
        let fam = self.relators();
        let genus = self.genus();
        let two_g = genus.half();
        let n = letters.len();
        for p in 0..n.saturating_sub(1) {
            let (a, b) = (letters[p], letters[p + 1]);
            if b == a.inverse() {
                let rule = RewriteRule {
                    kind: RuleKind::S1,
                    position: p,
                    relator: fam.first_starting_with(a),
                    k: None,
                    t: None,
                };
                if visit(rule) {
                    return;
                }
                continue;
            }
            let Some(id) = fam.pair_member(a, b) else {
                continue;
            };
            let m = fam.member(id);
            let k = m
                .iter()
                .zip(&letters[p..])
                .take_while(|(x, y)| x == y)
                .count();
            if k > two_g {
                let rule = RewriteRule {
                    kind: RuleKind::S2,
                    position: p,
                    relator: id,
                    k: Some(k),
                    t: None,
                };
                if visit(rule) {
                    return;
                }
            }
            // b_2 .. b_2g blocks after b_1.
            let tail_block = &m[1..two_g];
            let t = count_blocks(&letters[p + 1..], tail_block);
            let after = p + 1 + t * (two_g - 1);
            if t >= 2 && after < n && letters[after] == m[two_g] {
                let rule = RewriteRule {
                    kind: RuleKind::S3,
                    position: p,
                    relator: id,
                    k: None,
                    t: Some(t),
                };
                if visit(rule) {
                    return;
                }
            }
            if m[0].cmp_in(m[two_g - 1], genus) == Ordering::Greater {
                if t >= 1 {
                    let rule = RewriteRule {
                        kind: RuleKind::S4a,
                        position: p,
                        relator: id,
                        k: None,
                        t: Some(t),
                    };
                    if visit(rule) {
                        return;
                    }
                }
                // (b_1 .. b_{2g-1})^t b_2g
                let head_block = &m[..two_g - 1];
                let t = count_blocks(&letters[p..], head_block);
                let after = p + t * (two_g - 1);
                if t >= 1 && after < n && letters[after] == m[two_g - 1] {
                    let rule = RewriteRule {
                        kind: RuleKind::S4b,
                        position: p,
                        relator: id,
                        k: None,
                        t: Some(t),
                    };
                    if visit(rule) {
                        return;
                    }
                }
            }
        }
    }

    fn leading_word(&self, rule: &RewriteRule) -> Result<Vec<Letter>> {
        let fam = self.relators();
        let two_g = self.genus().half() as i64;
        let id = rule.relator;
        if id >= fam.len() {
            return Err(Error::InvalidRule(format!("unknown relator {id}")));
        }
        let need_t = |min: usize| -> Result<usize> {
            match rule.t {
                Some(t) if t >= min => Ok(t),
                _ => Err(Error::InvalidRule(format!(
                    "{} needs t >= {min}",
                    rule.kind
                ))),
            }
        };
        let s4_order = || -> Result<()> {
            if fam.b(id, 1).cmp_in(fam.b(id, two_g), self.genus()) != Ordering::Greater {
                return Err(Error::InvalidRule(format!(
                    "{} needs b_1 > b_2g for relator {id}",
                    rule.kind
                )));
            }
            Ok(())
        };
        Ok(match rule.kind {
            RuleKind::S1 => {
                let b1 = fam.b(id, 1);
                vec![b1, b1.inverse()]
            }
            RuleKind::S2 => {
                let k = rule.k.unwrap_or(0) as i64;
                if k <= two_g || k > 2 * two_g {
                    return Err(Error::InvalidRule(format!(
                        "S2 needs 2g < k <= 4g, got {k}"
                    )));
                }
                fam.run(id, 1, k)
            }
            RuleKind::S3 => {
                let t = need_t(2)?;
                let mut v = vec![fam.b(id, 1)];
                for _ in 0..t {
                    v.extend(fam.run(id, 2, two_g));
                }
                v.push(fam.b(id, two_g + 1));
                v
            }
            RuleKind::S4a => {
                let t = need_t(1)?;
                s4_order()?;
                let mut v = vec![fam.b(id, 1)];
                for _ in 0..t {
                    v.extend(fam.run(id, 2, two_g));
                }
                v
            }
            RuleKind::S4b => {
                let t = need_t(1)?;
                s4_order()?;
                let mut v = Vec::new();
                for _ in 0..t {
                    v.extend(fam.run(id, 1, two_g - 1));
                }
                v.push(fam.b(id, two_g));
                v
            }
        })
    }

    fn replacement(&self, rule: &RewriteRule) -> Vec<Letter> {
        let fam = self.relators();
        let two_g = self.genus().half() as i64;
        let id = rule.relator;
        let t = rule.t.unwrap_or(0);
        match rule.kind {
            RuleKind::S1 => Vec::new(),
            RuleKind::S2 => {
                let k = rule.k.unwrap_or(0) as i64;
                ((k + 1)..=2 * two_g)
                    .rev()
                    .map(|j| fam.b(id, j).inverse())
                    .collect()
            }
            RuleKind::S3 => {
                let mut v = Vec::new();
                for _ in 0..t {
                    v.extend(fam.run(id, two_g, 2));
                }
                v
            }
            RuleKind::S4a => {
                let mut v = Vec::new();
                for _ in 0..t {
                    v.extend(fam.run(id, two_g, 2));
                }
                v.push(fam.b(id, 1));
                v
            }
            RuleKind::S4b => {
                let mut v = vec![fam.b(id, two_g)];
                for _ in 0..t {
                    v.extend(fam.run(id, two_g - 1, 1));
                }
                v
            }
        }
    }

    /// Replaces the leading word of `rule` in `w` by its right-hand side.
    pub fn apply_rule(&self, w: &Word, rule: &RewriteRule) -> Result<Word> {
        self.check(w)?;
        let lead = self.leading_word(rule)?;
        let end = rule.position + lead.len();
        if end > w.len() || w.letters()[rule.position..end] != lead[..] {
            return Err(Error::InvalidRule(format!(
                "{} at {} does not match {}",
                rule.kind, rule.position, w
            )));
        }
        let rhs = self.replacement(rule);
        let mut letters = Vec::with_capacity(w.len() - lead.len() + rhs.len());
        letters.extend_from_slice(&w.letters()[..rule.position]);
        letters.extend(rhs);
        letters.extend_from_slice(&w.letters()[end..]);
        Ok(Word::from_letters(self.genus(), letters))
    }

    /// The rule the canonical strategy applies next: S1, then S2 with
    /// largest `k`, then S3 then S4 with largest `t`; ties go to the leftmost
    /// position, then the lowest relator id.
    pub fn canonical_redex(&self, w: &Word) -> Option<RewriteRule> {
        let mut best: Option<RewriteRule> = None;
        self.scan_redexes(w.letters(), |r| {
            if best.is_none_or(|b| r.strategy_key() < b.strategy_key()) {
                best = Some(r);
            }
            // The first S1 found is optimal.
            r.kind == RuleKind::S1
        });
        best
    }

    fn step_cap(&self, w: &Word) -> usize {
        let a = self.genus().alphabet_size();
        w.len().max(1) * a * a
    }

    /// Reduces `w` to its normal form with the canonical strategy.
    pub fn normal_form(&self, w: &Word) -> Result<(Word, Trace)> {
        self.reduce_with(w, |g, cur| Ok(g.canonical_redex(cur)))
    }

    /// Normal form without recording a trace.
    pub fn nf(&self, w: &Word) -> Result<Word> {
        self.check(w)?;
        let cap = self.step_cap(w);
        let mut cur = self.free_reduce(w);
        let mut steps = 0;
        while let Some(rule) = self.canonical_redex(&cur) {
            steps += 1;
            if steps > cap {
                return Err(Error::NonTermination {
                    steps,
                    context: format!("normal form of {w}"),
                });
            }
            cur = self.apply_rule(&cur, &rule)?;
        }
        Ok(cur)
    }

    /// Reduces `w` choosing each step with `choose`; shared by the canonical
    /// strategy and the randomized confluence checks.
    pub fn reduce_with<F>(&self, w: &Word, mut choose: F) -> Result<(Word, Trace)>
    where
        F: FnMut(&SurfaceGroup, &Word) -> Result<Option<RewriteRule>>,
    {
        self.check(w)?;
        let cap = self.step_cap(w);
        let genus = self.genus();
        let mut cur = w.clone();
        let mut steps = Vec::new();
        while let Some(rule) = choose(self, &cur)? {
            if steps.len() >= cap {
                return Err(Error::NonTermination {
                    steps: steps.len(),
                    context: format!("normal form of {w}"),
                });
            }
            let next = self.apply_rule(&cur, &rule)?;
            let decreased = lenlex(genus, next.letters(), cur.letters()) == Ordering::Less;
            if !decreased {
                return Err(Error::Invariant(format!(
                    "{} at {} did not decrease {cur}",
                    rule.kind, rule.position
                )));
            }
            steps.push(RewriteStep {
                rule,
                before_len: cur.len(),
                after_len: next.len(),
                lenlex_decreased: decreased,
            });
            cur = next;
        }
        Ok((
            cur.clone(),
            Trace {
                initial: w.clone(),
                steps,
                final_word: cur,
            },
        ))
    }

    /// Cancels adjacent inverse pairs until none is left.
    pub fn free_reduce(&self, w: &Word) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
        for &l in w.letters() {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word::from_letters(w.genus(), stack)
    }

    pub fn is_freely_reduced(&self, w: &Word) -> bool {
        is_freely_reduced(w.letters())
    }

    /// Normal form of the product of several words.
    pub fn nf_product(&self, parts: &[&Word]) -> Result<Word> {
        self.nf(&Word::product(self.genus(), parts)?)
    }

    /// Whether `u` and `v` have the same normal form.
    pub fn equal(&self, u: &Word, v: &Word) -> Result<bool> {
        Ok(self.nf(u)? == self.nf(v)?)
    }
}

pub(crate) fn is_freely_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|p| p[1] != p[0].inverse())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> SurfaceGroup {
        SurfaceGroup::new(2).unwrap()
    }

    #[test]
    fn s1_redex() {
        let g = g2();
        let w = g.word(&[1, -1]).unwrap();
        let r = g.find_redexes(&w);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].kind, RuleKind::S1);
        assert_eq!(r[0].position, 0);
        assert!(g.apply_rule(&w, &r[0]).unwrap().is_empty());
    }

    #[test]
    fn s2_redex_and_application() {
        let g = g2();
        let w = g.word(&[1, 2, 3, 4, -1]).unwrap();
        let r = g.find_redexes(&w);
        let s2 = r.iter().find(|r| r.kind == RuleKind::S2).expect("S2 redex");
        assert_eq!(s2.k, Some(5));
        assert_eq!(s2.relator, 0);
        assert_eq!(g.apply_rule(&w, s2).unwrap().to_signed(), vec![4, 3, 2]);
        assert!(g.is_freely_reduced(&w));
        assert!(!g.is_irreducible(&w));
    }

    #[test]
    fn s4a_redex() {
        let g = g2();
        let w = g.word(&[1, 2, 3, 4]).unwrap();
        let r = g.find_redexes(&w);
        let s4 = r.iter().find(|r| r.kind == RuleKind::S4a).unwrap();
        assert_eq!(s4.t, Some(1));
        assert_eq!(g.apply_rule(&w, s4).unwrap().to_signed(), vec![4, 3, 2, 1]);
        let (nf, trace) = g.normal_form(&w).unwrap();
        assert_eq!(nf.to_signed(), vec![4, 3, 2, 1]);
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn s3_needs_two_blocks() {
        let g = g2();
        // b_1 (b_2 b_3 b_4)^2 b_5 with R: 1 (2 3 4)(2 3 4) -1
        let w = g.word(&[1, 2, 3, 4, 2, 3, 4, -1]).unwrap();
        let r = g.find_redexes(&w);
        let s3 = r.iter().find(|r| r.kind == RuleKind::S3).unwrap();
        assert_eq!(s3.t, Some(2));
        assert_eq!(
            g.apply_rule(&w, s3).unwrap().to_signed(),
            vec![4, 3, 2, 4, 3, 2]
        );
        // t = 1 is covered by S2 with k = 2g + 1.
        let w = g.word(&[1, 2, 3, 4, -1]).unwrap();
        assert!(g.find_redexes(&w).iter().all(|r| r.kind != RuleKind::S3));
    }

    #[test]
    fn s4b_shape() {
        let g = g2();
        // (b_1 b_2 b_3)^2 b_4 with R: (1 2 3)(1 2 3) 4
        let w = g.word(&[1, 2, 3, 1, 2, 3, 4]).unwrap();
        let r = g.find_redexes(&w);
        let s4b = r
            .iter()
            .find(|r| r.kind == RuleKind::S4b && r.position == 0)
            .unwrap();
        assert_eq!(s4b.t, Some(2));
        assert_eq!(
            g.apply_rule(&w, s4b).unwrap().to_signed(),
            vec![4, 3, 2, 1, 3, 2, 1]
        );
    }

    #[test]
    fn normal_form_examples() {
        let g = g2();
        let rel = g.relator_word();
        assert!(g.normal_form(&rel).unwrap().0.is_empty());
        assert!(g.nf(&g.word(&[1, -1]).unwrap()).unwrap().is_empty());
        assert!(g.is_irreducible(&g.identity()));
        assert!(g.free_reduce(&g.word(&[1, 2, -2, -1]).unwrap()).is_empty());
    }

    #[test]
    fn stale_rule_is_rejected() {
        let g = g2();
        let w = g.word(&[1, -1]).unwrap();
        let rule = g.find_redexes(&w)[0];
        let other = g.word(&[1, 2]).unwrap();
        assert!(matches!(
            g.apply_rule(&other, &rule),
            Err(Error::InvalidRule(_))
        ));
    }

    #[test]
    fn trace_replays_and_renders() {
        let g = g2();
        let w = g.word(&[2, 1, 2, 3, 4, -1, -2, 3]).unwrap();
        let (nf, trace) = g.normal_form(&w).unwrap();
        assert_eq!(trace.replay(&g).unwrap(), nf);
        for s in &trace.steps {
            assert_eq!(s.before_len - s.after_len, s.rule.length_drop(4));
        }
        let text = trace.render(WordStyle::Int).unwrap();
        assert!(text.starts_with("initial 2 1 2 3 4 -1 -2 3\n"));
        assert!(text.ends_with(&format!("final {nf}\n")));
    }
}
