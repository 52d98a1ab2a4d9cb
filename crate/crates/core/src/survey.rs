//! Ball surveys: one record per pair of ball elements, streamed as
//! JSON-lines or CSV in canonical pair order.

use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::time::Instant;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle;
use crate::presentation::{SurfaceGroup, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub genus: u32,
    pub u: String,
    pub v: String,
    pub conjugate: bool,
    pub conjugator_len: Option<usize>,
    pub bound: usize,
    pub exact_cl: Option<usize>,
    pub r_sum: usize,
    pub elapsed_ms: u64,
}

impl SurveyRecord {
    pub fn key(&self) -> (String, String) {
        (self.u.clone(), self.v.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurveyFormat {
    JsonLines,
    Csv,
}

#[derive(Debug, Clone)]
pub struct SurveyConfig {
    pub radius: usize,
    pub conjugate_only: bool,
    /// Draw this many pairs (seeded) instead of taking all of them.
    pub sample: Option<usize>,
    pub seed: u64,
    /// Record wall-clock time per pair; off keeps output byte-reproducible.
    pub timing: bool,
    pub exact: bool,
    pub max_depth: usize,
    pub max_states: usize,
}

impl Default for SurveyConfig {
    fn default() -> Self {
        SurveyConfig {
            radius: 2,
            conjugate_only: false,
            sample: None,
            seed: 0,
            timing: false,
            exact: true,
            max_depth: oracle::DEFAULT_MAX_DEPTH,
            max_states: oracle::DEFAULT_MAX_STATES,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SurveySummary {
    pub pairs: usize,
    pub written: usize,
    pub skipped: usize,
    pub conjugate: usize,
    pub bound_violations: usize,
    /// Largest `exact_cl - (n - 1)` with `n = (|u| + |v|) / 2`, over
    /// conjugate pairs with a known exact length.
    pub max_excess_over_n_minus_1: Option<i64>,
    pub max_exact_cl: Option<usize>,
    pub max_r_sum: usize,
}

/// Unordered pairs `(u, v)` of distinct ball elements, `u < v` in
/// length-lex order, listed in canonical order.
pub fn survey_pairs(group: &SurfaceGroup, cfg: &SurveyConfig) -> Result<Vec<(Word, Word)>> {
    let ball: Vec<Word> = oracle::cayley_ball(group, cfg.radius, cfg.max_states)?
        .into_keys()
        .collect();
    let classes: Option<Vec<Word>> = if cfg.conjugate_only {
        Some(
            ball.par_iter()
                .map(|w| group.cyclic_normal_form(w).map(|c| c.class_nf))
                .collect::<Result<_>>()?,
        )
    } else {
        None
    };
    let mut pairs = Vec::new();
    for i in 0..ball.len() {
        for j in i + 1..ball.len() {
            if classes.as_ref().is_none_or(|c| c[i] == c[j]) {
                pairs.push((ball[i].clone(), ball[j].clone()));
            }
        }
    }
    if let Some(n) = cfg.sample {
        if n < pairs.len() {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut picked = index::sample(&mut rng, pairs.len(), n).into_vec();
            picked.sort_unstable();
            pairs = picked.into_iter().map(|i| pairs[i].clone()).collect();
        }
    }
    Ok(pairs)
}

pub fn survey_record(
    group: &SurfaceGroup,
    u: &Word,
    v: &Word,
    cfg: &SurveyConfig,
) -> Result<SurveyRecord> {
    let start = Instant::now();
    let cert = if cfg.exact {
        group.conjugator_with_exact(u, v, cfg.max_depth, cfg.max_states)?
    } else {
        group.conjugator(u, v)?
    };
    Ok(SurveyRecord {
        genus: group.genus().get(),
        u: u.to_string(),
        v: v.to_string(),
        conjugate: cert.conjugate,
        conjugator_len: cert.conjugator_len,
        bound: cert.bound,
        exact_cl: cert.exact_cl,
        r_sum: cert.r_sum,
        elapsed_ms: if cfg.timing {
            start.elapsed().as_millis() as u64
        } else {
            0
        },
    })
}

/// Keys already present in an interrupted output, and the byte length of
/// its last complete line (anything after it should be truncated).
pub fn read_existing<R: BufRead>(
    mut input: R,
    format: SurveyFormat,
) -> Result<(HashSet<(String, String)>, u64)> {
    let mut keys = HashSet::new();
    let mut valid = 0u64;
    let mut line = String::new();
    let mut first = true;
    loop {
        line.clear();
        let n = input.read_line(&mut line)?;
        if n == 0 || !line.ends_with('\n') {
            break;
        }
        let body = line.trim_end();
        let record = match format {
            SurveyFormat::JsonLines => serde_json::from_str::<SurveyRecord>(body).ok(),
            SurveyFormat::Csv if first => {
                first = false;
                valid += n as u64;
                continue;
            }
            SurveyFormat::Csv => csv::ReaderBuilder::new()
                .has_headers(false)
                .from_reader(body.as_bytes())
                .deserialize::<SurveyRecord>()
                .next()
                .and_then(|r| r.ok()),
        };
        let Some(record) = record else { break };
        keys.insert(record.key());
        valid += n as u64;
    }
    Ok((keys, valid))
}

/// Record writer for either format; flushes after every batch.
pub struct SurveySink<W: Write> {
    format: SurveyFormat,
    out: W,
    header_pending: bool,
}

impl<W: Write> SurveySink<W> {
    /// `with_header` applies to CSV only.
    pub fn new(out: W, format: SurveyFormat, with_header: bool) -> Self {
        SurveySink {
            format,
            out,
            header_pending: with_header && format == SurveyFormat::Csv,
        }
    }

    pub fn write(&mut self, records: &[SurveyRecord]) -> Result<()> {
        match self.format {
            SurveyFormat::JsonLines => {
                for r in records {
                    let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
                    writeln!(self.out, "{line}")?;
                }
            }
            SurveyFormat::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .has_headers(self.header_pending)
                    .from_writer(&mut self.out);
                for r in records {
                    w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
                }
                w.flush()?;
                drop(w);
                if !records.is_empty() {
                    self.header_pending = false;
                }
            }
        }
        self.out.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

const BATCH: usize = 256;

/// Runs the survey, skipping pairs whose key is in `skip`. Batches are
/// computed in parallel and written in canonical order.
pub fn run_survey<W: Write>(
    group: &SurfaceGroup,
    cfg: &SurveyConfig,
    sink: &mut SurveySink<W>,
    skip: &HashSet<(String, String)>,
) -> Result<SurveySummary> {
    let pairs = survey_pairs(group, cfg)?;
    let todo: Vec<&(Word, Word)> = pairs
        .iter()
        .filter(|(u, v)| !skip.contains(&(u.to_string(), v.to_string())))
        .collect();
    let mut summary = SurveySummary {
        pairs: pairs.len(),
        skipped: pairs.len() - todo.len(),
        ..SurveySummary::default()
    };
    for chunk in todo.chunks(BATCH) {
        let records: Vec<SurveyRecord> = chunk
            .par_iter()
            .map(|(u, v)| survey_record(group, u, v, cfg))
            .collect::<Result<_>>()?;
        sink.write(&records)?;
        for (r, (u, v)) in records.iter().zip(chunk) {
            summary.absorb(r, u.len() + v.len());
        }
    }
    Ok(summary)
}

impl SurveySummary {
    fn absorb(&mut self, r: &SurveyRecord, total_len: usize) {
        self.written += 1;
        if !r.conjugate {
            return;
        }
        self.conjugate += 1;
        if r.conjugator_len.is_some_and(|c| c > r.bound) {
            self.bound_violations += 1;
        }
        self.max_r_sum = self.max_r_sum.max(r.r_sum);
        if let Some(cl) = r.exact_cl {
            let excess = cl as i64 - ((total_len / 2) as i64 - 1);
            self.max_excess_over_n_minus_1 = Some(
                self.max_excess_over_n_minus_1
                    .map_or(excess, |m| m.max(excess)),
            );
            self.max_exact_cl = Some(self.max_exact_cl.map_or(cl, |m| m.max(cl)));
        }
    }
}
