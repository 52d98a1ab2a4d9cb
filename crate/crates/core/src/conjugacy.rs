//! Conjugacy decision, conjugator construction and the bound
//! `CL(2n) <= n + 8g - 1`.

use serde::{Serialize, Serializer};

use crate::cyclic::align_rotation;
use crate::error::{Error, Result};
use crate::llfr::PreparedForm;
use crate::oracle::{self, ClOutcome};
use crate::presentation::{check_same_genus, Genus, SurfaceGroup, Word};

fn word_str<S: Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

fn opt_word_str<S: Serializer>(w: &Option<Word>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match w {
        Some(w) => s.serialize_some(&w.to_string()),
        None => s.serialize_none(),
    }
}

/// Length drops along the two-stage reductions of `X^-1 A' X` and
/// `Y^-1 A'' Y`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ReductionTelemetry {
    pub r1: usize,
    pub r2: usize,
    pub r1_prime: usize,
    pub r2_prime: usize,
}

impl ReductionTelemetry {
    pub fn sum(&self) -> usize {
        self.r1 + self.r2 + self.r1_prime + self.r2_prime
    }
}

/// Result of [`SurfaceGroup::conjugator`]. When `conjugate` holds,
/// `conjugator^-1 * u * conjugator = v`.
#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyCertificate {
    #[serde(serialize_with = "word_str")]
    pub u: Word,
    #[serde(serialize_with = "word_str")]
    pub v: Word,
    pub conjugate: bool,
    #[serde(serialize_with = "opt_word_str")]
    pub conjugator: Option<Word>,
    pub conjugator_len: Option<usize>,
    pub bound: usize,
    pub bound_satisfied: bool,
    pub r_sum: usize,
    pub exact_cl: Option<usize>,
    #[serde(skip)]
    pub telemetry: ReductionTelemetry,
    /// The candidate that was not chosen, normalized.
    #[serde(skip)]
    pub alternative: Option<Word>,
}

impl ConjugacyCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// `floor((|u| + |v|) / 2) + 8g - 1` from raw word lengths.
pub fn conjugator_bound(genus: Genus, u_len: usize, v_len: usize) -> usize {
    (u_len + v_len) / 2 + 8 * genus.get() as usize - 1
}

/// `|u| = |v| (mod 2)`.
pub fn parity_check(u: &Word, v: &Word) -> bool {
    u.len() % 2 == v.len() % 2
}

/// Exponent sums per generator.
pub fn abelianization(w: &Word) -> Vec<i64> {
    let mut out = vec![0i64; w.genus().generators() as usize];
    for l in w.letters() {
        out[l.index() as usize - 1] += if l.is_inverse() { -1 } else { 1 };
    }
    out
}

/// `u = c_1`, `v = c_2^{1-n} c_1 c_2^{n-1}` with `CL(u, v) = n - 1`.
pub fn lower_bound_witness(genus: u32, n: usize) -> Result<(Word, Word, usize)> {
    let genus = Genus::new(genus)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "witness needs n >= 2, got {n}"
        )));
    }
    let u = Word::from_signed(genus, &[1])?;
    let mut v = vec![-2i64; n - 1];
    v.push(1);
    v.extend(std::iter::repeat_n(2, n - 1));
    Ok((u, Word::from_signed(genus, &v)?, n - 1))
}

impl SurfaceGroup {
    pub fn is_conjugate(&self, u: &Word, v: &Word) -> Result<bool> {
        check_same_genus(u, v)?;
        self.check(u)?;
        if abelianization(u) != abelianization(v) {
            return Ok(false);
        }
        Ok(self.cyclic_normal_form(u)?.class_nf == self.cyclic_normal_form(v)?.class_nf)
    }

    /// `R_1 + R_2` for `u = X^-1 A' X`.
    fn reduction_drops(&self, prepared: &PreparedForm, u: &Word) -> Result<(usize, usize)> {
        let f = &prepared.form;
        let head = self.nf_product(&[&f.x.inverse(), &f.aprime])?;
        let total = self.nf(u)?;
        let r1 = (f.x.len() + f.aprime.len())
            .checked_sub(head.len())
            .ok_or_else(|| Error::Invariant("negative first reduction".into()))?;
        let r2 = (head.len() + f.x.len())
            .checked_sub(total.len())
            .ok_or_else(|| Error::Invariant("negative second reduction".into()))?;
        Ok((r1, r2))
    }

    /// Decides conjugacy and, when conjugate, builds a conjugator from the
    /// prepared forms of `u` and `v`.
    pub fn conjugator(&self, u: &Word, v: &Word) -> Result<ConjugacyCertificate> {
        check_same_genus(u, v)?;
        self.check(u)?;
        let bound = conjugator_bound(self.genus(), u.len(), v.len());
        let mut cert = ConjugacyCertificate {
            u: u.clone(),
            v: v.clone(),
            conjugate: false,
            conjugator: None,
            conjugator_len: None,
            bound,
            bound_satisfied: false,
            r_sum: 0,
            exact_cl: None,
            telemetry: ReductionTelemetry::default(),
            alternative: None,
        };
        if abelianization(u) != abelianization(v) {
            return Ok(cert);
        }
        let pu = self.prepare_conjugation_form(u)?;
        let pv = self.prepare_conjugation_form(v)?;
        if pu.form.class_nf != pv.form.class_nf {
            return Ok(cert);
        }
        let (a1, a2) = align_rotation(
            &pu.form.class_nf,
            pu.form.rotation_offset,
            pv.form.rotation_offset,
        )?;
        let (x, y) = (&pu.form.x, &pv.form.x);
        // u = X^-1 A2 A1 X and v = Y^-1 A1 A2 Y; both X^-1 A1^-1 Y and
        // X^-1 A2 Y conjugate u to v.
        let c = self.nf_product(&[&x.inverse(), &a1.inverse(), y])?;
        let c_alt = self.nf_product(&[&x.inverse(), &a2, y])?;
        let (chosen, other) = if c_alt.len() < c.len() {
            (c_alt, c)
        } else {
            (c, c_alt)
        };

        let lhs = self.nf_product(&[&chosen.inverse(), u, &chosen])?;
        if lhs != self.nf(v)? {
            return Err(Error::Invariant(format!(
                "constructed conjugator {chosen} does not conjugate {u} to {v}"
            )));
        }
        let (r1, r2) = self.reduction_drops(&pu, u)?;
        let (r1_prime, r2_prime) = self.reduction_drops(&pv, v)?;
        cert.telemetry = ReductionTelemetry {
            r1,
            r2,
            r1_prime,
            r2_prime,
        };
        cert.r_sum = cert.telemetry.sum();
        cert.conjugate = true;
        cert.conjugator_len = Some(chosen.len());
        cert.bound_satisfied = chosen.len() <= bound;
        cert.conjugator = Some(chosen);
        cert.alternative = Some(other);
        Ok(cert)
    }

    /// [`Self::conjugator`] plus the exact conjugator length by search.
    pub fn conjugator_with_exact(
        &self,
        u: &Word,
        v: &Word,
        max_depth: usize,
        max_states: usize,
    ) -> Result<ConjugacyCertificate> {
        let mut cert = self.conjugator(u, v)?;
        if cert.conjugate {
            let depth = cert.conjugator_len.unwrap_or(max_depth).min(max_depth);
            cert.exact_cl = match oracle::exact_cl(self, u, v, depth, max_states)? {
                ClOutcome::Found(d) => Some(d),
                ClOutcome::Exhausted => None,
            };
        }
        Ok(cert)
    }
}
