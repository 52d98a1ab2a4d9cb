//! Executable acceptance suite. Each criterion is a seeded sweep that
//! cross-checks the engine against the brute-force oracles.

use std::fmt;
use std::sync::OnceLock;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::conjugacy::{lower_bound_witness, parity_check, ConjugacyCertificate};
use crate::error::{Error, Result};
use crate::llfr::{Elimination, EliminationCase};
use crate::oracle::{self, dehn_equal, ClOutcome};
use crate::presentation::{SurfaceGroup, Word};
use crate::sampling;

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "normal-form soundness"),
    (2, "normal-form minimality"),
    (3, "confluence"),
    (4, "conjugator upper bound"),
    (5, "lower-bound family"),
    (6, "parity"),
    (7, "junction drop and step count"),
    (8, "reduction telemetry"),
    (9, "(4g-1)-LLFR uniqueness"),
    (10, "elimination postconditions"),
];

#[derive(Debug, Clone, Serialize)]
pub struct SelfcheckConfig {
    pub seed: u64,
    /// Random instances per sampled sweep (and per genus where two are used).
    pub samples: usize,
    pub exhaustive_len: usize,
    pub random_len: usize,
    pub confluence_len: usize,
    pub minimality_radius: usize,
    pub ball_radius: usize,
    pub max_states: usize,
    pub max_depth: usize,
}

impl Default for SelfcheckConfig {
    fn default() -> Self {
        SelfcheckConfig {
            seed: 0,
            samples: 10_000,
            exhaustive_len: 6,
            random_len: 12,
            confluence_len: 20,
            minimality_radius: 4,
            ball_radius: 3,
            max_states: oracle::DEFAULT_MAX_STATES,
            max_depth: oracle::DEFAULT_MAX_DEPTH,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: {} checked, {} ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checked,
            self.detail,
            self.elapsed_ms
        )
    }
}

/// Per-sample generator: independent of thread scheduling.
fn sample_rng(seed: u64, stream: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos((index as u128) << 24);
    rng
}

const DRAWS_PER_SAMPLE: usize = 100_000;

/// Outcome of one sweep: instances checked and the first failure, if any.
struct Tally {
    checked: usize,
    failure: Option<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failure: None,
            notes: Vec::new(),
        }
    }

    fn absorb(&mut self, checked: usize, failure: Option<String>) {
        self.checked += checked;
        if self.failure.is_none() {
            self.failure = failure;
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

/// Runs `check` over `items` in parallel; reports the lowest-index failure.
fn sweep<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> Result<(usize, Option<String>)> {
    let failures: Vec<(usize, String)> = items
        .par_iter()
        .enumerate()
        .map(|(i, item)| check(item).map(|f| f.map(|msg| (i, msg))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok((
        items.len(),
        failures.into_iter().min_by_key(|(i, _)| *i).map(|(_, m)| m),
    ))
}

/// Draws `count` instances with per-index generators; indices whose
/// generator never yields an instance are dropped.
fn draw<T: Send>(
    seed: u64,
    stream: u64,
    count: usize,
    gen: impl Fn(&mut ChaCha8Rng) -> Option<T> + Sync,
) -> Vec<T> {
    (0..count)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = sample_rng(seed, stream, i);
            (0..DRAWS_PER_SAMPLE).find_map(|_| gen(&mut rng))
        })
        .collect()
}

fn group(g: u32) -> SurfaceGroup {
    SurfaceGroup::new(g).expect("genus >= 2")
}

/// A certified conjugate pair from the ball sweep.
struct BallPair {
    genus: u32,
    cert: ConjugacyCertificate,
}

pub struct Selfcheck {
    cfg: SelfcheckConfig,
    ball_pairs: OnceLock<std::result::Result<Vec<BallPair>, String>>,
}

impl Selfcheck {
    pub fn new(cfg: SelfcheckConfig) -> Self {
        Selfcheck {
            cfg,
            ball_pairs: OnceLock::new(),
        }
    }

    pub fn config(&self) -> &SelfcheckConfig {
        &self.cfg
    }

    pub fn run_all(&self) -> Vec<CriterionReport> {
        CRITERIA.iter().map(|&(id, _)| self.run(id)).collect()
    }

    pub fn run(&self, id: u8) -> CriterionReport {
        let start = Instant::now();
        let name = CRITERIA
            .iter()
            .find(|(i, _)| *i == id)
            .map(|(_, n)| *n)
            .unwrap_or("unknown criterion");
        let outcome = match id {
            1 => self.soundness(),
            2 => self.minimality(),
            3 => self.confluence(),
            4 => self.upper_bound(),
            5 => self.lower_bound(),
            6 => self.parity(),
            7 => self.junction(),
            8 => self.telemetry(),
            9 => self.uniqueness(),
            10 => self.elimination(),
            _ => Err(Error::InvalidParameter(format!("no criterion {id}"))),
        };
        let (passed, checked, detail) = match outcome {
            Ok(t) => {
                let notes = t.notes.join("; ");
                match t.failure {
                    None => (
                        t.checked > 0,
                        t.checked,
                        if notes.is_empty() { "ok".into() } else { notes },
                    ),
                    Some(f) => (false, t.checked, format!("counterexample: {f}")),
                }
            }
            Err(e) => (false, 0, format!("error: {e}")),
        };
        CriterionReport {
            id,
            name,
            passed,
            checked,
            detail,
            elapsed_ms: start.elapsed().as_millis(),
        }
    }

    fn soundness(&self) -> Result<Tally> {
        let g = group(2);
        let mut t = Tally::new();
        let alpha = g.alphabet().len();
        let check = |w: &Word| -> Result<Option<String>> {
            let nf = g.nf(w)?;
            Ok((!dehn_equal(&g, w, &nf)?).then(|| format!("nf({w}) = {nf}")))
        };
        for len in 0..=self.cfg.exhaustive_len {
            let total = alpha.pow(len as u32);
            let failures: Vec<(usize, String)> = (0..total)
                .into_par_iter()
                .map(|code| {
                    let w = oracle::word_from_code(&g, len, code);
                    check(&w).map(|f| f.map(|m| (code, m)))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            t.absorb(
                total,
                failures.into_iter().min_by_key(|(c, _)| *c).map(|(_, m)| m),
            );
        }
        let words = draw(self.cfg.seed, 10, self.cfg.samples, |rng| {
            Some(sampling::random_word(&g, rng, self.cfg.random_len))
        });
        let (n, f) = sweep(&words, check)?;
        t.absorb(n, f);
        t.note(format!(
            "exhaustive |w| <= {} plus {} random |w| <= {}",
            self.cfg.exhaustive_len, n, self.cfg.random_len
        ));
        Ok(t)
    }

    fn minimality(&self) -> Result<Tally> {
        let g = group(2);
        let cap = self.cfg.minimality_radius;
        let ball: Vec<Word> = oracle::cayley_ball(&g, cap, self.cfg.max_states)?
            .into_keys()
            .collect();
        let (n, f) = sweep(&ball, |w| {
            Ok((!oracle::minimality_check(&g, w, cap)?)
                .then(|| format!("{w} is not length-lex minimal")))
        })?;
        let mut t = Tally::new();
        t.absorb(n, f);
        t.note(format!("every element with |nf| <= {cap}"));
        Ok(t)
    }

    fn confluence(&self) -> Result<Tally> {
        let mut t = Tally::new();
        for (stream, genus) in [(30u64, 2u32), (31, 3)] {
            let g = group(genus);
            let seeds: Vec<usize> = (0..self.cfg.samples).collect();
            let (n, f) = sweep(&seeds, |&i| {
                let mut rng = sample_rng(self.cfg.seed, stream, i);
                let w = sampling::random_word(&g, &mut rng, self.cfg.confluence_len);
                let canonical = g.nf(&w)?;
                let (random, _) = g.reduce_with(&w, |grp, cur| {
                    Ok(grp.find_redexes(cur).choose(&mut rng).cloned())
                })?;
                Ok((random != canonical).then(|| {
                    format!("g={genus} {w}: random order {random}, canonical {canonical}")
                }))
            })?;
            t.absorb(n, f);
        }
        t.note(format!("{} words per genus, g = 2, 3", self.cfg.samples));
        Ok(t)
    }

    /// Certificates for every unordered pair of distinct conjugate elements
    /// of the g = 2 ball.
    fn ball_pairs(&self) -> Result<&[BallPair]> {
        let cached = self
            .ball_pairs
            .get_or_init(|| self.compute_ball_pairs().map_err(|e| e.to_string()));
        match cached {
            Ok(v) => Ok(v),
            Err(e) => Err(Error::Invariant(format!("ball sweep failed: {e}"))),
        }
    }

    fn compute_ball_pairs(&self) -> Result<Vec<BallPair>> {
        let g = group(2);
        let ball: Vec<Word> = oracle::cayley_ball(&g, self.cfg.ball_radius, self.cfg.max_states)?
            .into_keys()
            .collect();
        let classes: Vec<Word> = ball
            .par_iter()
            .map(|w| g.cyclic_normal_form(w).map(|c| c.class_nf))
            .collect::<Result<_>>()?;
        let mut pairs = Vec::new();
        for i in 0..ball.len() {
            for j in i + 1..ball.len() {
                if classes[i] == classes[j] {
                    pairs.push((i, j));
                }
            }
        }
        pairs
            .par_iter()
            .map(|&(i, j)| {
                Ok(BallPair {
                    genus: 2,
                    cert: g.conjugator(&ball[i], &ball[j])?,
                })
            })
            .collect()
    }

    fn upper_bound(&self) -> Result<Tally> {
        let pairs = self.ball_pairs()?;
        let g = group(2);
        let (n, f) = sweep(pairs, |p| {
            let c = &p.cert;
            let Some(w) = c.conjugator.as_ref().filter(|_| c.conjugate) else {
                return Ok(Some(format!(
                    "{} ~ {} not certified as conjugate",
                    c.u, c.v
                )));
            };
            let nf = g.nf(w)?;
            if nf.len() > c.bound {
                return Ok(Some(format!(
                    "{} ~ {}: |nf(w)| = {} > {}",
                    c.u,
                    c.v,
                    nf.len(),
                    c.bound
                )));
            }
            let lhs = Word::product(g.genus(), &[&w.inverse(), &c.u, w])?;
            Ok((!dehn_equal(&g, &lhs, &c.v)?).then(|| format!("{w}^-1 {} {w} != {}", c.u, c.v)))
        })?;
        let max_len = pairs
            .iter()
            .filter_map(|p| p.cert.conjugator_len)
            .max()
            .unwrap_or(0);
        let mut t = Tally::new();
        t.absorb(n, f);
        t.note(format!(
            "radius {} ball, max |w| = {max_len}",
            self.cfg.ball_radius
        ));
        Ok(t)
    }

    fn lower_bound(&self) -> Result<Tally> {
        let mut t = Tally::new();
        for genus in [2u32, 3] {
            let g = group(genus);
            for n in 2..=4usize {
                let (u, v, expected) = lower_bound_witness(genus, n)?;
                let got = oracle::exact_cl(&g, &u, &v, self.cfg.max_depth, self.cfg.max_states)?;
                let fail = (got != ClOutcome::Found(expected))
                    .then(|| format!("g={genus} n={n}: exact_cl {got:?}, expected {expected}"));
                t.absorb(1, fail);
            }
        }
        t.note("n = 2, 3, 4 for g = 2, 3");
        Ok(t)
    }

    fn parity(&self) -> Result<Tally> {
        let mut t = Tally::new();
        let pairs = self.ball_pairs()?;
        let (n, f) = sweep(pairs, |p| {
            let c = &p.cert;
            Ok((!parity_check(&c.u, &c.v)).then(|| format!("g={} {} ~ {}", p.genus, c.u, c.v)))
        })?;
        t.absorb(n, f);
        for (stream, genus) in [(60u64, 2u32), (61, 3)] {
            let g = group(genus);
            let raw = draw(self.cfg.seed, stream, self.cfg.samples, |rng| {
                Some(sampling::conjugate_pair(&g, rng, 12, 6))
            });
            let (n, f) = sweep(&raw, |(u, v)| {
                let (nu, nv) = (g.nf(u)?, g.nf(v)?);
                if !g.is_conjugate(&nu, &nv)? {
                    return Ok(Some(format!(
                        "g={genus} {u} and {v} not detected as conjugate"
                    )));
                }
                let ok = parity_check(u, v) && parity_check(&nu, &nv);
                Ok((!ok).then(|| format!("g={genus} {u} ~ {v}")))
            })?;
            t.absorb(n, f);
        }
        t.note(format!(
            "{} ball pairs plus random conjugates for g = 2, 3",
            pairs.len()
        ));
        Ok(t)
    }

    fn junction(&self) -> Result<Tally> {
        let mut t = Tally::new();
        let (mut max_drop, mut max_steps) = (0, 0);
        for (stream, genus) in [(70u64, 2u32), (71, 3)] {
            let g = group(genus);
            let limit = 4 * genus as usize;
            let pairs = draw(self.cfg.seed, stream, self.cfg.samples, |rng| {
                sampling::junction_pair(&g, rng)
            });
            let stats: Vec<(usize, usize)> = pairs
                .par_iter()
                .map(|(u, v)| {
                    let (nf, trace) = g.normal_form(&u.concat(v)?)?;
                    Ok((u.len() + v.len() - nf.len(), trace.steps.len()))
                })
                .collect::<Result<_>>()?;
            let fail = pairs
                .iter()
                .zip(&stats)
                .find(|(_, &(d, s))| d > limit || s > 3)
                .map(|((u, v), (d, s))| format!("g={genus} U={u} V={v}: drop {d}, {s} steps"));
            max_drop = max_drop.max(stats.iter().map(|s| s.0).max().unwrap_or(0));
            max_steps = max_steps.max(stats.iter().map(|s| s.1).max().unwrap_or(0));
            t.absorb(pairs.len(), fail);
        }
        t.note(format!(
            "g = 2, 3; max drop {max_drop}, max steps {max_steps}"
        ));
        Ok(t)
    }

    fn telemetry(&self) -> Result<Tally> {
        let pairs = self.ball_pairs()?;
        let (n, f) =
            sweep(pairs, |p| {
                let c = &p.cert;
                let limit = 16 * p.genus as usize;
                Ok((c.r_sum > limit)
                    .then(|| format!("{} ~ {}: r_sum {} > {limit}", c.u, c.v, c.r_sum)))
            })?;
        let max = pairs.iter().map(|p| p.cert.r_sum).max().unwrap_or(0);
        let mut t = Tally::new();
        t.absorb(n, f);
        t.note(format!("max r_sum {max}"));
        Ok(t)
    }

    fn uniqueness(&self) -> Result<Tally> {
        let mut t = Tally::new();
        let mut with_llfr = 0;
        for (stream, genus) in [(90u64, 2u32), (91, 3)] {
            let g = group(genus);
            let inst = draw(self.cfg.seed, stream, self.cfg.samples, |rng| {
                sampling::uniqueness_instance(&g, rng)
            });
            let counts: Vec<usize> = inst
                .par_iter()
                .map(|(x, u)| {
                    let w = Word::product(g.genus(), &[&x.inverse(), u, x]).expect("same genus");
                    g.long_llfrs(&w).len()
                })
                .collect();
            with_llfr += counts.iter().filter(|&&c| c == 1).count();
            let (n, f) = sweep(&inst, |(x, u)| {
                let w = Word::product(g.genus(), &[&x.inverse(), u, x])?;
                let (j1, j2) = (x.len(), x.len() + u.len());
                let llfrs = g.long_llfrs(&w);
                if llfrs.len() > 1 {
                    return Ok(Some(format!(
                        "g={genus} X={x} U={u}: {} (4g-1)-LLFRs",
                        llfrs.len()
                    )));
                }
                Ok(llfrs
                    .iter()
                    .find(|l| l.straddles(j1) == l.straddles(j2))
                    .map(|l| format!("g={genus} X={x} U={u}: LLFR at {} does not straddle exactly one junction", l.start)))
            })?;
            t.absorb(n, f);
        }
        t.note(format!("{with_llfr} instances carry one (4g-1)-LLFR"));
        Ok(t)
    }

    fn elimination(&self) -> Result<Tally> {
        let mut t = Tally::new();
        let mut calls = 0;
        let mut spanning = 0;
        for (stream, genus) in [(100u64, 2u32), (101, 3)] {
            let g = group(genus);
            let inst = draw(self.cfg.seed, stream, self.cfg.samples, |rng| {
                sampling::elimination_instance(&g, rng)
            });
            let outcomes: Vec<(Option<String>, bool)> = inst
                .par_iter()
                .map(|(x, u)| {
                    let e = if g.special_shape(u).is_some() {
                        g.eliminate_4g1_special(x, u)?
                    } else {
                        g.eliminate_4g1_general(x, u)?
                    };
                    Ok((check_elimination(&g, &e)?, spans_v(&g, &e.y, &e.v)?))
                })
                .collect::<Result<_>>()?;
            spanning += outcomes.iter().filter(|o| o.1).count();
            calls += inst.len();
            t.absorb(inst.len(), outcomes.into_iter().find_map(|o| o.0));

            let words = draw(self.cfg.seed, stream + 10, self.cfg.samples, |rng| {
                Some(sampling::random_word(&g, rng, 14))
            });
            let outcomes: Vec<(usize, Option<String>)> = words
                .par_iter()
                .map(|w| {
                    let p = g.prepare_conjugation_form(w)?;
                    for e in &p.eliminations {
                        if let Some(msg) = check_elimination(&g, e)? {
                            return Ok((p.eliminations.len(), Some(msg)));
                        }
                    }
                    let expanded = p.form.expanded();
                    let bad = !dehn_equal(&g, &expanded, w)?
                        || !g.is_freely_reduced(&expanded)
                        || has_half_llfr(&g, &p.form.x, &p.form.aprime)?;
                    Ok((
                        p.eliminations.len(),
                        bad.then(|| format!("g={genus} prepared form of {w} is invalid")),
                    ))
                })
                .collect::<Result<_>>()?;
            let prepared_calls: usize = outcomes.iter().map(|o| o.0).sum();
            let f = outcomes.into_iter().find_map(|o| o.1);
            calls += prepared_calls;
            t.absorb(prepared_calls, f);
        }
        t.note(format!(
            "{calls} elimination calls over pattern instances and prepared forms, g = 2, 3"
        ));
        t.note(format!(
            "{spanning} special t = 1 outputs keep an LLFR spanning all of U"
        ));
        Ok(t)
    }
}

/// Postconditions of one elimination call; `Some` describes the violation.
pub fn check_elimination(group: &SurfaceGroup, e: &Elimination) -> Result<Option<String>> {
    let genus = group.genus();
    let before = Word::product(genus, &[&e.x.inverse(), &e.u, &e.x])?;
    let after = Word::product(genus, &[&e.y.inverse(), &e.v, &e.y])?;
    let label = || format!("{:?} X={} U={}", e.case, e.x, e.u);
    if !dehn_equal(group, &before, &after)? {
        return Ok(Some(format!("{}: group element changed", label())));
    }
    if !group.is_freely_reduced(&after) {
        return Ok(Some(format!(
            "{}: Y^-1 V Y = {after} is not freely reduced",
            label()
        )));
    }
    // The special construction only clears the two halves; with t = 1 an
    // LLFR may still run across all of U.
    let blocked = if e.case == EliminationCase::Special {
        has_half_llfr(group, &e.y, &e.v)?
    } else {
        !group.long_llfrs(&after).is_empty()
    };
    if blocked {
        return Ok(Some(format!(
            "{}: Y^-1 V Y = {after} keeps a (4g-1)-LLFR",
            label()
        )));
    }
    if e.y.len() >= e.x.len() {
        return Ok(Some(format!(
            "{}: |Y| = {} not below |X| = {}",
            label(),
            e.y.len(),
            e.x.len()
        )));
    }
    if !group.is_irreducible(&e.y) || crate::llfr::rotation_offset_of(&e.u, &e.v).is_none() {
        return Ok(Some(format!(
            "{}: Y reducible or V not a rotation of U",
            label()
        )));
    }
    Ok(None)
}

fn has_half_llfr(group: &SurfaceGroup, y: &Word, v: &Word) -> Result<bool> {
    Ok(!group.long_llfrs(&y.inverse().concat(v)?).is_empty()
        || !group.long_llfrs(&v.concat(y)?).is_empty())
}

/// A `(4g-1)`-LLFR in `Y^-1 V Y` containing all of `V`.
fn spans_v(group: &SurfaceGroup, y: &Word, v: &Word) -> Result<bool> {
    let w = Word::product(group.genus(), &[&y.inverse(), v, y])?;
    let (j1, j2) = (y.len(), y.len() + v.len());
    Ok(group
        .long_llfrs(&w)
        .iter()
        .any(|l| l.straddles(j1) && l.straddles(j2)))
}

/// Runs every criterion with `cfg`.
pub fn run_all(cfg: SelfcheckConfig) -> Vec<CriterionReport> {
    Selfcheck::new(cfg).run_all()
}
