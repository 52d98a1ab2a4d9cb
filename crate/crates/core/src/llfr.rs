//! Locally longest fractional relators and the elimination of
//! `(4g-1)`-LLFRs from conjugation forms `X^-1 U X`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{Letter, RelatorId, SurfaceGroup, Word};
use crate::rewrite::is_freely_reduced;

/// A `k`-fractional relator occurrence that extends in neither direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Llfr {
    pub start: usize,
    pub length: usize,
    pub relator: RelatorId,
}

impl Llfr {
    pub fn end(&self) -> usize {
        self.start + self.length
    }

    /// Whether the occurrence contains the letters at `junction - 1` and
    /// `junction`.
    pub fn straddles(&self, junction: usize) -> bool {
        self.start < junction && junction < self.end()
    }
}

/// `u = X^-1 * Aprime * X` with the elimination preconditions discharged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationForm {
    pub x: Word,
    pub aprime: Word,
    /// `aprime = rotate(class_nf, rotation_offset)`.
    pub rotation_offset: usize,
    pub class_nf: Word,
}

impl ConjugationForm {
    /// `X^-1 Aprime X` as a word.
    pub fn expanded(&self) -> Word {
        Word::from_letters(
            self.x.genus(),
            [
                self.x.inverse().letters(),
                self.aprime.letters(),
                self.x.letters(),
            ]
            .concat(),
        )
    }
}

/// Which construction an elimination used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EliminationCase {
    /// Periodic blocks end in `X^-1`, and `U` is long enough to hold them.
    Case1Long,
    /// Periodic blocks run one letter into `X`.
    Case1Short,
    /// `X` starts with `b_{2g+1}`.
    Case2,
    /// `U = (b_1..b_{2g-1})^t`.
    Special,
}

/// One call of an elimination operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub x: Word,
    pub u: Word,
    pub y: Word,
    pub v: Word,
    pub case: EliminationCase,
    /// The LLFR sat in `U X` and the construction ran on the inverse.
    pub mirrored: bool,
    /// `(Y, V)` as given by the construction, before junction cancellation.
    pub raw_y: Word,
    pub raw_v: Word,
    /// Letters of `Y` cancelled against `V` afterwards.
    pub cancelled: usize,
}

/// [`ConjugationForm`] plus the eliminations that produced it.
#[derive(Debug, Clone)]
pub struct PreparedForm {
    pub form: ConjugationForm,
    /// `u = C^-1 rotate(class_nf, offset) C` from the cyclic normal form.
    pub initial_conjugator: Word,
    pub initial_offset: usize,
    pub eliminations: Vec<Elimination>,
    pub redecompositions: usize,
}

fn count_blocks(letters: &[Letter], block: &[Letter]) -> usize {
    letters
        .chunks_exact(block.len())
        .take_while(|c| *c == block)
        .count()
}

fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}

impl SurfaceGroup {
    /// All LLFRs of `w`, sorted by start.
    pub fn find_llfrs(&self, w: &Word) -> Vec<Llfr> {
        let fam = self.relators();
        let n_rel = self.genus().relator_len();
        let letters = w.letters();
        let mut out = Vec::new();
        for p in 0..letters.len().saturating_sub(1) {
            let Some((id, k)) = fam.extent(letters, p) else {
                continue;
            };
            let extends_left = p > 0 && k < n_rel && letters[p - 1] == fam.b(id, n_rel as i64);
            if !extends_left {
                out.push(Llfr {
                    start: p,
                    length: k,
                    relator: id,
                });
            }
        }
        out
    }

    /// The `(4g-1)`-LLFRs of `w`.
    pub fn long_llfrs(&self, w: &Word) -> Vec<Llfr> {
        let target = self.genus().relator_len() - 1;
        self.find_llfrs(w)
            .into_iter()
            .filter(|l| l.length == target)
            .collect()
    }

    fn has_long_llfr(&self, left: &Word, right: &Word) -> Result<bool> {
        Ok(!self.long_llfrs(&left.concat(right)?).is_empty())
    }

    /// Cancels letters between `C^-1` and `A` (and between `A` and `C`) by
    /// rotating `A`. Returns `X`, the rotation of `A`, and its offset.
    pub fn decompose_freely_reduced(&self, c: &Word, a: &Word) -> Result<(Word, Word, usize)> {
        crate::presentation::check_same_genus(c, a)?;
        if a.is_empty() {
            return Ok((self.identity(), self.identity(), 0));
        }
        let n = a.len();
        let mut shift = 0usize;
        let mut skip = 0;
        let cl = c.letters();
        while skip < cl.len() {
            let x1 = cl[skip];
            let rot = a.rotate(shift);
            if rot.letters()[0] == x1 {
                // x1^-1 (x1 R) x1 = R x1
                shift = (shift + 1) % n;
            } else if rot.letters()[n - 1] == x1.inverse() {
                // x1^-1 (R x1^-1) x1 = x1^-1 R
                shift = (shift + n - 1) % n;
            } else {
                break;
            }
            skip += 1;
        }
        Ok((c.subword(skip..c.len()), a.rotate(shift), shift))
    }

    /// The member `b` and power `t` with `u = (b_1..b_{2g-1})^t`, if any.
    pub fn special_shape(&self, u: &Word) -> Option<(RelatorId, usize)> {
        let block_len = self.genus().half() - 1;
        let l = u.letters();
        if l.len() < block_len || !l.len().is_multiple_of(block_len) {
            return None;
        }
        let id = self.relators().pair_member(l[0], l[1])?;
        let block = &self.relators().member(id)[..block_len];
        (count_blocks(l, block) * block_len == l.len()).then_some((id, l.len() / block_len))
    }

    fn check_elimination_inputs(&self, x: &Word, u: &Word) -> Result<()> {
        crate::presentation::check_same_genus(x, u)?;
        self.check(x)?;
        if !self.is_irreducible(x) {
            return Err(contract(format!("X = {x} is not irreducible")));
        }
        if !self.is_cyclically_irreducible(u) {
            return Err(contract(format!("U = {u} is not cyclically irreducible")));
        }
        let expanded = [x.inverse().letters(), u.letters(), x.letters()].concat();
        if !is_freely_reduced(&expanded) {
            return Err(contract("X^-1 U X is not freely reduced"));
        }
        Ok(())
    }

    /// Replaces `(X, U)` by `(Y, V)` with `V` a rotation of `U` and
    /// `X^-1 U X = Y^-1 V Y`, removing the `(4g-1)`-LLFR at a junction.
    pub fn eliminate_4g1_general(&self, x: &Word, u: &Word) -> Result<Elimination> {
        self.check_elimination_inputs(x, u)?;
        if self.special_shape(u).is_some() {
            return Err(contract(format!(
                "U = {u} has the shape (b_1..b_(2g-1))^t; use the special elimination"
            )));
        }
        let (raw_y, raw_v, case, mirrored) = if self.has_long_llfr(&x.inverse(), u)? {
            let (y, v, case) = self.eliminate_left(x, u)?;
            (y, v, case, false)
        } else if self.has_long_llfr(u, x)? {
            let (y, v, case) = self.eliminate_left(x, &u.inverse())?;
            (y, v.inverse(), case, true)
        } else {
            return Err(contract("neither X^-1 U nor U X has a (4g-1)-LLFR"));
        };
        // In the short first case the normal form of Y can begin with the
        // first letter of V; cancel such letters by rotating V.
        let (y, v, _) = self.decompose_freely_reduced(&raw_y, &raw_v)?;
        Ok(Elimination {
            x: x.clone(),
            u: u.clone(),
            cancelled: raw_y.len() - y.len(),
            y,
            v,
            case,
            mirrored,
            raw_y,
            raw_v,
        })
    }

    /// The general construction with the LLFR at the `X^-1 U` junction.
    fn eliminate_left(&self, x: &Word, u: &Word) -> Result<(Word, Word, EliminationCase)> {
        let fam = self.relators();
        let two_g = self.genus().half();
        let block = two_g - 1;
        let xinv_u = x.inverse().concat(u)?;
        let llfr = self
            .long_llfrs(&xinv_u)
            .into_iter()
            .find(|l| l.straddles(x.len()))
            .ok_or_else(|| contract("the (4g-1)-LLFR of X^-1 U does not straddle the junction"))?;
        let in_x = x.len() - llfr.start;
        let b = fam.rotated(llfr.relator, block as i64);
        let p_block = fam.run(b, 2, two_g as i64);
        let q_block = fam.run(b, two_g as i64, 2);
        let b_2g1 = fam.b(b, two_g as i64 + 1);
        let ux = u.concat(x)?;

        let (y, v, case) = if in_x == block {
            // X = Q^t0 X1, U X = b_1 P^t0 Z
            let p = count_blocks(x.letters(), &q_block);
            let q = count_blocks(&ux.letters()[1..], &p_block);
            let t0 = p.min(q);
            if t0 == 0 {
                return Err(contract("no periodic block at the junction"));
            }
            let x1 = x.subword(t0 * block..x.len());
            let head = 1 + t0 * block;
            if u.len() >= head {
                let v = u.subword(head..u.len()).concat(&u.subword(0..head))?;
                let y = self.nf(&Word::from_letters(
                    self.genus(),
                    [&[b_2g1], x1.letters()].concat(),
                ))?;
                (y, v, EliminationCase::Case1Long)
            } else {
                if u.len() != t0 * block {
                    return Err(contract(format!(
                        "U = {u} does not end one letter short of the periodic blocks"
                    )));
                }
                let cut = u.len() - (two_g - 2);
                let v = u.subword(cut..u.len()).concat(&u.subword(0..cut))?;
                let y = self.nf(&Word::from_letters(
                    self.genus(),
                    [&[b_2g1][..], &q_block, x1.letters()].concat(),
                ))?;
                (y, v, EliminationCase::Case1Short)
            }
        } else if in_x == two_g {
            // X = b_{2g+1} Q^t0 X1, U = P^t0 U1
            if x.letters()[0] != b_2g1 {
                return Err(contract("X does not start with b_(2g+1)"));
            }
            let p = count_blocks(&x.letters()[1..], &q_block);
            let q = count_blocks(u.letters(), &p_block);
            let t0 = p.min(q);
            if t0 == 0 {
                return Err(contract("no periodic block at the junction"));
            }
            let x1 = x.subword(1 + t0 * block..x.len());
            let v = u
                .subword(t0 * block..u.len())
                .concat(&u.subword(0..t0 * block))?;
            let y = self.nf(&Word::from_letters(
                self.genus(),
                [&[b_2g1], x1.letters()].concat(),
            ))?;
            (y, v, EliminationCase::Case2)
        } else {
            return Err(contract(format!(
                "(4g-1)-LLFR has {in_x} letters in X^-1; expected {block} or {two_g}"
            )));
        };
        Ok((y, v, case))
    }

    /// For `U = (b_1..b_{2g-1})^t`: replaces `X` by a shorter `Y` with
    /// `X^-1 U X = Y^-1 U Y`.
    pub fn eliminate_4g1_special(&self, x: &Word, u: &Word) -> Result<Elimination> {
        self.check_elimination_inputs(x, u)?;
        if self.special_shape(u).is_none() {
            return Err(contract(format!(
                "U = {u} is not of the form (b_1..b_(2g-1))^t"
            )));
        }
        let (y, mirrored) = if self.has_long_llfr(u, x)? {
            (self.strip_special(x, u)?, false)
        } else if self.has_long_llfr(&x.inverse(), u)? {
            (self.strip_special(x, &u.inverse())?, true)
        } else {
            return Err(contract("neither X^-1 U nor U X has a (4g-1)-LLFR"));
        };
        Ok(Elimination {
            x: x.clone(),
            u: u.clone(),
            raw_y: y.clone(),
            raw_v: u.clone(),
            y,
            v: u.clone(),
            case: EliminationCase::Special,
            mirrored,
            cancelled: 0,
        })
    }

    /// `X = b_{2g} (b_{2g+1}..b_{4g-1})^t1 X1` with `t1` maximal, to
    /// `b_{2g} X1`.
    fn strip_special(&self, x: &Word, u: &Word) -> Result<Word> {
        let fam = self.relators();
        let two_g = self.genus().half() as i64;
        let (b, _) = self
            .special_shape(u)
            .ok_or_else(|| contract(format!("U = {u} is not of the form (b_1..b_(2g-1))^t")))?;
        let b_2g = fam.b(b, two_g);
        let block = fam.run(b, two_g + 1, 2 * two_g - 1);
        let xl = x.letters();
        if xl.first() != Some(&b_2g) {
            return Err(contract("X does not start with b_(2g)"));
        }
        let t1 = count_blocks(&xl[1..], &block);
        if t1 == 0 {
            return Err(contract("X has no (b_(2g+1)..b_(4g-1)) block after b_(2g)"));
        }
        let rest = &xl[1 + t1 * block.len()..];
        self.nf(&Word::from_letters(
            self.genus(),
            [&[b_2g][..], rest].concat(),
        ))
    }

    /// Conjugation form of `u` with no `(4g-1)`-LLFR at either junction.
    pub fn prepare_conjugation_form(&self, u: &Word) -> Result<PreparedForm> {
        let cnf = self.cyclic_normal_form(u)?;
        let class_nf = cnf.class_nf.clone();
        let (mut x, mut aprime, _) =
            self.decompose_freely_reduced(&cnf.conjugator, &cnf.rotated_class())?;
        let mut eliminations = Vec::new();
        let mut redecompositions = 0;
        let limit = x.len() + 1;
        loop {
            let blocked =
                self.has_long_llfr(&x.inverse(), &aprime)? || self.has_long_llfr(&aprime, &x)?;
            if !blocked {
                break;
            }
            if eliminations.len() >= limit {
                return Err(Error::NonTermination {
                    steps: eliminations.len(),
                    context: format!("LLFR elimination for {u}"),
                });
            }
            let step = if self.special_shape(&aprime).is_some() {
                self.eliminate_4g1_special(&x, &aprime)?
            } else {
                self.eliminate_4g1_general(&x, &aprime)?
            };
            if step.y.len() >= x.len() {
                return Err(Error::NonTermination {
                    steps: eliminations.len(),
                    context: format!("elimination did not shorten X = {x} (got {})", step.y),
                });
            }
            let (nx, na, _) = self.decompose_freely_reduced(&step.y, &step.v)?;
            if nx.len() != step.y.len() {
                redecompositions += 1;
            }
            x = nx;
            aprime = na;
            eliminations.push(step);
        }
        let rotation_offset = rotation_offset_of(&class_nf, &aprime)
            .ok_or_else(|| Error::Invariant(format!("{aprime} is not a rotation of {class_nf}")))?;
        Ok(PreparedForm {
            form: ConjugationForm {
                x,
                aprime,
                rotation_offset,
                class_nf,
            },
            initial_conjugator: cnf.conjugator,
            initial_offset: cnf.rotation_offset,
            eliminations,
            redecompositions,
        })
    }
}

/// Least `o` with `rotate(a, o) = target`.
pub fn rotation_offset_of(a: &Word, target: &Word) -> Option<usize> {
    if a.len() != target.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0);
    }
    (0..a.len()).find(|&o| a.rotate(o) == *target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dehn_equal;

    fn g2() -> SurfaceGroup {
        SurfaceGroup::new(2).unwrap()
    }

    #[test]
    fn llfr_examples() {
        let g = g2();
        let l = g.find_llfrs(&g.word(&[1, 2, 3]).unwrap());
        assert_eq!(
            l,
            vec![Llfr {
                start: 0,
                length: 3,
                relator: 0
            }]
        );
        let w = g.word(&[1, 2, 3, 4, -1, -2, -3]).unwrap();
        assert_eq!(g.long_llfrs(&w).len(), 1);
        assert!(g.find_llfrs(&g.identity()).is_empty());
    }

    #[test]
    fn decomposition_examples() {
        let g = g2();
        let (x, a, _) = g
            .decompose_freely_reduced(&g.word(&[2]).unwrap(), &g.word(&[1]).unwrap())
            .unwrap();
        assert_eq!((x.to_signed(), a.to_signed()), (vec![2], vec![1]));
        let (x, a, _) = g
            .decompose_freely_reduced(&g.word(&[1]).unwrap(), &g.word(&[1]).unwrap())
            .unwrap();
        assert_eq!((x.to_signed(), a.to_signed()), (vec![], vec![1]));
        let c = g.word(&[-3, 1]).unwrap();
        let a0 = g.word(&[1, 2]).unwrap();
        let (x, a, _) = g.decompose_freely_reduced(&c, &a0).unwrap();
        assert!(x.len() <= 2);
        let lhs = Word::product(g.genus(), &[&c.inverse(), &a0, &c]).unwrap();
        let rhs = Word::product(g.genus(), &[&x.inverse(), &a, &x]).unwrap();
        assert!(dehn_equal(&g, &lhs, &rhs).unwrap());
    }

    #[test]
    fn prepared_witness() {
        let g = g2();
        let p = g.prepare_conjugation_form(&g.word(&[1]).unwrap()).unwrap();
        assert!(p.form.x.is_empty());
        assert_eq!(p.form.aprime.to_signed(), vec![1]);
        let p = g
            .prepare_conjugation_form(&g.word(&[-2, -2, 1, 2, 2]).unwrap())
            .unwrap();
        assert_eq!(p.form.aprime.to_signed(), vec![1]);
        assert_eq!(p.form.x.to_signed(), vec![2, 2]);
    }

    #[test]
    fn special_shape_detection() {
        let g = g2();
        assert!(g.special_shape(&g.word(&[1, 2, 3]).unwrap()).is_some());
        assert_eq!(
            g.special_shape(&g.word(&[1, 2, 3, 1, 2, 3]).unwrap())
                .map(|s| s.1),
            Some(2)
        );
        assert!(g.special_shape(&g.word(&[1, 2, 3, 4]).unwrap()).is_none());
        assert!(g.special_shape(&g.word(&[1, 2]).unwrap()).is_none());
    }

    #[test]
    fn general_rejects_special_shape() {
        let g = g2();
        let u = g.word(&[1, 2, 3, 1, 2, 3]).unwrap();
        assert!(matches!(
            g.eliminate_4g1_general(&g.identity(), &u),
            Err(Error::Contract(_))
        ));
    }
}
