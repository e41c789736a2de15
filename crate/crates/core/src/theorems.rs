//! One verifier per claim: the field computed from characters against the
//! field the claim predicts, compared as canonical descriptors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime, is_prime_power, mult_order, prime_power, totient};
use crate::error::{Error, Result};
use crate::exact::Cyclotomic;
use crate::galois::{compositum, field_of, named_field, unique_subfield, FieldDescriptor, NamedField};
use crate::glm::{
    exists_order, k_ellr_report, k_glm, k_glm_class_values, lemma31_report, lemma31_tuples, GeneratorOptions,
};
use crate::tables::{CharTable, Group};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm4Ell2,
    TwoRRemark,
    Thm5,
    Thm6,
    L1,
    L1p,
    L2,
    KdSmall,
    K5,
    K8Table,
    K2,
    K4,
    Lemma31,
}

impl Claim {
    pub const ALL: [Claim; 17] = [
        Claim::Thm1,
        Claim::Thm2,
        Claim::Thm3,
        Claim::Thm4,
        Claim::Thm4Ell2,
        Claim::TwoRRemark,
        Claim::Thm5,
        Claim::Thm6,
        Claim::L1,
        Claim::L1p,
        Claim::L2,
        Claim::KdSmall,
        Claim::K5,
        Claim::K8Table,
        Claim::K2,
        Claim::K4,
        Claim::Lemma31,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Thm1 => "Thm1",
            Claim::Thm2 => "Thm2",
            Claim::Thm3 => "Thm3",
            Claim::Thm4 => "Thm4",
            Claim::Thm4Ell2 => "Thm4-ell2",
            Claim::TwoRRemark => "2r-remark",
            Claim::Thm5 => "Thm5",
            Claim::Thm6 => "Thm6",
            Claim::L1 => "L1",
            Claim::L1p => "L1p",
            Claim::L2 => "L2",
            Claim::KdSmall => "Kd-small",
            Claim::K5 => "K5",
            Claim::K8Table => "K8-table",
            Claim::K2 => "K2",
            Claim::K4 => "K4",
            Claim::Lemma31 => "Lemma3.1",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Claim::Thm1 => "K(GL_m) = Q(omega_d(r) : d <= m, r unit mod q^d - 1)",
            Claim::Thm2 => "K_{l^r}(GL_m) is the subfield of Q(zeta_{l^r}) of degree phi(l^r)/ord_{l^r}(q), l odd, l != p",
            Claim::Thm3 => "K(GL_2) = Q(zeta_{q-1}, zeta_{q^2-1}^r + zeta_{q^2-1}^{qr})",
            Claim::Thm4 => "K_{l^r}(GL_2) = Q(zeta), Q(zeta + zeta^-1) or Q for q = 1, -1, 0 mod l^r, l odd",
            Claim::Thm4Ell2 => "the three cases of Thm4 for l = 2 when q = +-1 mod 2^r",
            Claim::TwoRRemark => "K_{2^r}(GL_2) for q = 2^{r-1} +- 1 mod 2^r",
            Claim::Thm5 => "K(SL_2) = Q(sqrt(q*), zeta_{q-1} + zeta_{q-1}^-1, zeta_{q+1} + zeta_{q+1}^-1), no sqrt for p = 2",
            Claim::Thm6 => "K_{l^r}(SL_2) = Q(zeta + zeta^-1) for q = +-1, Q(sqrt(q*)) (Q if p = 2) for q = 0 mod l^r",
            Claim::L1 => "K_d(GL_2) = Q(zeta_d) for d | q - 1",
            Claim::L1p => "K_{pd}(GL_2) = Q(zeta_d) for d | q - 1",
            Claim::L2 => "K_d(GL_2) = Q(zeta_d^r + zeta_d^{qr}) for d | q^2 - 1, d not dividing q - 1",
            Claim::KdSmall => "K_d(GL_2) = Q for d = 3, 4, 6 and q = -1 mod d",
            Claim::K5 => "K_5(GL_2) = Q(sqrt(5)) for q = -1 mod 5",
            Claim::K8Table => "K_8(GL_2) = Q(zeta_8), Q(sqrt(-2)), Q(i), Q(sqrt(2)) for q = 1, 3, 5, 7 mod 8",
            Claim::K2 => "K_2(GL_m) = Q",
            Claim::K4 => "K_4(GL_m) = Q(i) if q = 1 mod 4, else Q",
            Claim::Lemma31 => "each product of Gauss periods with i_r a unit generates Q(zeta_{l^r})^<tau_q>",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = |x: &str| x.to_ascii_lowercase().replace(['-', '_', '.'], "");
        Claim::ALL
            .into_iter()
            .find(|c| norm(c.id()) == norm(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown claim {s:?}")))
    }
}

impl Serialize for Claim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for Claim {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameters of one verification; unused ones stay `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    pub q: u64,
    pub l: Option<u64>,
    pub r: Option<u32>,
    pub d: Option<u64>,
    pub m: Option<u32>,
}

impl Params {
    pub fn q(q: u64) -> Self {
        Params { q, ..Default::default() }
    }

    pub fn ellr(mut self, l: u64, r: u32) -> Self {
        self.l = Some(l);
        self.r = Some(r);
        self
    }

    pub fn d(mut self, d: u64) -> Self {
        self.d = Some(d);
        self
    }

    pub fn m(mut self, m: u32) -> Self {
        self.m = Some(m);
        self
    }

    pub fn to_map(&self) -> BTreeMap<String, u64> {
        let mut out = BTreeMap::from([("q".to_string(), self.q)]);
        let opt = [("l", self.l), ("r", self.r.map(u64::from)), ("d", self.d), ("m", self.m.map(u64::from))];
        for (k, v) in opt {
            if let Some(v) = v {
                out.insert(k.to_string(), v);
            }
        }
        if let (Some(l), Some(r)) = (self.l, self.r) {
            out.insert("l^r".to_string(), l.pow(r));
        }
        out
    }

    fn need_ellr(&self, claim: Claim) -> Result<(u64, u32, u64)> {
        match (self.l, self.r) {
            (Some(l), Some(r)) if is_prime(l) && r >= 1 => {
                let lr = l
                    .checked_pow(r)
                    .ok_or(Error::BoundExceeded { what: "l^r", value: u64::MAX, max: u64::MAX })?;
                Ok((l, r, lr))
            }
            (Some(l), Some(_)) if !is_prime(l) => Err(Error::NotPrime(l)),
            _ => Err(Error::InvalidArgument(format!("{claim} needs a prime l and r >= 1"))),
        }
    }

    fn need_d(&self, claim: Claim) -> Result<u64> {
        self.d.filter(|&d| d > 0).ok_or_else(|| Error::InvalidArgument(format!("{claim} needs d >= 1")))
    }

    fn m_or(&self, default: u32) -> u32 {
        self.m.unwrap_or(default)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationResult {
    pub claim: Claim,
    pub params: BTreeMap<String, u64>,
    pub computed: Option<FieldDescriptor>,
    pub predicted: Option<FieldDescriptor>,
    pub status: Status,
    pub notes: Vec<String>,
}

impl VerificationResult {
    fn skipped(claim: Claim, params: &Params, reason: String) -> Self {
        VerificationResult {
            claim,
            params: params.to_map(),
            computed: None,
            predicted: None,
            status: Status::Skipped,
            notes: vec![reason],
        }
    }
}

fn named(spec: NamedField) -> Result<FieldDescriptor> {
    named_field(&spec)
}

fn not_covered(claim: Claim, why: String) -> Error {
    Error::Indeterminate(format!("{claim} does not cover {why}"))
}

fn pq(q: u64) -> Result<(u64, u32)> {
    prime_power(q).ok_or(Error::NotPrimePower(q))
}

/// `Q(zeta_n)`, `Q(zeta_n + zeta_n^-1)` or `Q` according to `q mod n`.
fn three_cases(claim: Claim, q: u64, n: u64) -> Result<FieldDescriptor> {
    if n <= 2 || q % n == 1 {
        // Q(zeta_1) = Q(zeta_2) = Q
        named(NamedField::Cyclotomic(n))
    } else if q % n == n - 1 {
        named(NamedField::RealCyclotomic(n))
    } else if q % n == 0 {
        Ok(FieldDescriptor::rationals())
    } else {
        Err(not_covered(claim, format!("q = {q} mod {n} = {}", q % n)))
    }
}

/// The field the claim predicts for `params`. [`Error::Indeterminate`]
/// means the parameters fall outside the claim's hypotheses.
pub fn predict(claim: Claim, params: &Params) -> Result<FieldDescriptor> {
    let q = params.q;
    let (p, n) = pq(q)?;
    match claim {
        Claim::Thm1 => k_glm(params.m_or(2), q),
        Claim::Thm2 => {
            let (l, r, lr) = params.need_ellr(claim)?;
            if l == 2 || l == p {
                return Err(not_covered(claim, format!("l = {l} (needs l odd and l != p)")));
            }
            let ord = mult_order(q % lr, lr).expect("q coprime to l");
            unique_subfield(l, r, totient(lr) / ord)
        }
        Claim::Thm3 => {
            let big = q * q - 1;
            let mut gens = vec![Cyclotomic::try_root(q - 1, 1)?];
            for r in 1..=big / 2 {
                let r = r as i64;
                gens.push(&Cyclotomic::try_root(big, r)? + &Cyclotomic::try_root(big, r * q as i64)?);
            }
            field_of(&gens)
        }
        Claim::Thm4 => {
            let (l, _, lr) = params.need_ellr(claim)?;
            if l == 2 {
                return Err(not_covered(claim, "l = 2".into()));
            }
            three_cases(claim, q, lr)
        }
        Claim::Thm4Ell2 => {
            let (l, _, lr) = params.need_ellr(claim)?;
            if l != 2 {
                return Err(not_covered(claim, format!("l = {l}")));
            }
            if q % lr == 1 || q % lr == lr - 1 || q % lr == 0 {
                three_cases(claim, q, lr)
            } else {
                Err(not_covered(claim, format!("q = {} mod {lr}", q % lr)))
            }
        }
        Claim::TwoRRemark => {
            let (l, r, lr) = params.need_ellr(claim)?;
            if l != 2 || r < 2 {
                return Err(not_covered(claim, format!("l^r = {lr} (needs 2^r, r >= 2)")));
            }
            let half = lr / 2;
            if q % lr == half - 1 {
                Ok(compositum(&[named(NamedField::RealCyclotomic(half))?, named(NamedField::ImaginaryCyclotomic(lr))?]))
            } else if q % lr == half + 1 {
                named(NamedField::Cyclotomic(half))
            } else {
                Err(not_covered(claim, format!("q = {} mod {lr}", q % lr)))
            }
        }
        Claim::Thm5 => {
            let mut parts = vec![named(NamedField::RealCyclotomic(q - 1))?, named(NamedField::RealCyclotomic(q + 1))?];
            if p != 2 {
                parts.push(named(NamedField::SqrtQStar { p, n })?);
            }
            Ok(compositum(&parts))
        }
        Claim::Thm6 => {
            let (_, _, lr) = params.need_ellr(claim)?;
            if q % lr == 1 || q % lr == lr - 1 {
                named(NamedField::RealCyclotomic(lr))
            } else if q % lr == 0 {
                if p == 2 {
                    Ok(FieldDescriptor::rationals())
                } else {
                    named(NamedField::SqrtQStar { p, n })
                }
            } else {
                Err(not_covered(claim, format!("q = {} mod {lr}", q % lr)))
            }
        }
        Claim::L1 | Claim::L1p => {
            let d = params.need_d(claim)?;
            if (q - 1) % d != 0 {
                return Err(not_covered(claim, format!("d = {d} (needs d | q - 1)")));
            }
            named(NamedField::Cyclotomic(d))
        }
        Claim::L2 => {
            let d = params.need_d(claim)?;
            if (q * q - 1) % d != 0 || (q - 1) % d == 0 {
                return Err(not_covered(claim, format!("d = {d} (needs d | q^2 - 1, d not dividing q - 1)")));
            }
            let gens = (1..=d as i64)
                .map(|r| Ok(&Cyclotomic::try_root(d, r)? + &Cyclotomic::try_root(d, r * q as i64)?))
                .collect::<Result<Vec<_>>>()?;
            field_of(&gens)
        }
        Claim::KdSmall => {
            let d = params.need_d(claim)?;
            if ![3, 4, 6].contains(&d) || q % d != d - 1 {
                return Err(not_covered(claim, format!("d = {d}, q = {} mod d", q % d)));
            }
            Ok(FieldDescriptor::rationals())
        }
        Claim::K5 => {
            if q % 5 != 4 {
                return Err(not_covered(claim, format!("q = {} mod 5", q % 5)));
            }
            named(NamedField::Quadratic(5))
        }
        Claim::K8Table => match q % 8 {
            1 => named(NamedField::Cyclotomic(8)),
            3 => named(NamedField::Quadratic(-2)),
            5 => named(NamedField::GaussianRationals),
            7 => named(NamedField::Quadratic(2)),
            _ => Err(not_covered(claim, format!("even q = {q}"))),
        },
        Claim::K2 => Ok(FieldDescriptor::rationals()),
        Claim::K4 => {
            if q % 4 == 1 {
                named(NamedField::GaussianRationals)
            } else {
                Ok(FieldDescriptor::rationals())
            }
        }
        Claim::Lemma31 => {
            let (l, r, lr) = params.need_ellr(claim)?;
            if l == 2 || l == p {
                return Err(not_covered(claim, format!("l = {l} (needs l odd and l != p)")));
            }
            let k_r = mult_order(q % lr, lr).expect("q coprime to l");
            unique_subfield(l, r, totient(lr) / k_r)
        }
    }
}

type TableKey = (Group, u64, usize);

fn table(group: Group, q: u64, rank: usize) -> Result<Arc<CharTable>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<CharTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("table cache").get(&(group, q, rank)) {
        return Ok(t.clone());
    }
    let t = Arc::new(CharTable::build_with_generator(group, q, rank)?);
    cache.lock().expect("table cache").insert((group, q, rank), t.clone());
    Ok(t)
}

/// What the computation side produced.
struct Computed {
    field: FieldDescriptor,
    notes: Vec<String>,
    /// `Some(false)` overrides equality (Lemma 3.1 checks every tuple).
    verdict: Option<bool>,
}

impl Computed {
    fn field(field: FieldDescriptor) -> Self {
        Computed { field, notes: Vec::new(), verdict: None }
    }
}

fn table_field(group: Group, q: u64, order: Option<u64>, rank: usize) -> Result<Computed> {
    let t = table(group, q, rank)?;
    let mut out = Computed::field(t.field_generated(order)?);
    if group == Group::Sl2 {
        out.notes.extend(t.notes().iter().cloned());
    }
    Ok(out)
}

fn compute(claim: Claim, params: &Params, rank: usize) -> Result<Computed> {
    let q = params.q;
    let (p, _) = pq(q)?;
    match claim {
        Claim::Thm1 => match params.m_or(2) {
            2 => table_field(Group::Gl2, q, None, rank),
            m => {
                let mut c = Computed::field(k_glm_class_values(m, q)?);
                c.notes.push(format!("computed from theta(f) over all polynomials of degree <= {m}"));
                Ok(c)
            }
        },
        Claim::Thm2 => {
            let (l, r, lr) = params.need_ellr(claim)?;
            let m = params.m_or(2);
            if !exists_order(m, q, l, r)? {
                return Err(Error::NoElementOfOrder { order: lr, group: format!("GL_{m}(F_{q})") });
            }
            if m == 2 {
                return table_field(Group::Gl2, q, Some(lr), rank);
            }
            let rep = k_ellr_report(m, q, l, r, GeneratorOptions::default())?;
            let mut c = Computed::field(rep.from_generators.clone());
            c.notes.push(format!(
                "{} distinct products; <tau_q> fixed field {}",
                rep.generator_count,
                if rep.fixed_field == rep.from_generators { "agrees" } else { "differs" }
            ));
            Ok(c)
        }
        Claim::Thm3 => table_field(Group::Gl2, q, None, rank),
        Claim::Thm4 | Claim::Thm4Ell2 | Claim::TwoRRemark => {
            let (_, _, lr) = params.need_ellr(claim)?;
            table_field(Group::Gl2, q, Some(lr), rank)
        }
        Claim::Thm5 => table_field(Group::Sl2, q, None, rank),
        Claim::Thm6 => {
            let (_, _, lr) = params.need_ellr(claim)?;
            table_field(Group::Sl2, q, Some(lr), rank)
        }
        Claim::L1 | Claim::L2 | Claim::KdSmall => table_field(Group::Gl2, q, Some(params.need_d(claim)?), rank),
        Claim::L1p => table_field(Group::Gl2, q, Some(p * params.need_d(claim)?), rank),
        Claim::K5 => table_field(Group::Gl2, q, Some(5), rank),
        Claim::K8Table => table_field(Group::Gl2, q, Some(8), rank),
        Claim::K2 | Claim::K4 => {
            let (r, lr) = if claim == Claim::K2 { (1, 2) } else { (2, 4) };
            let m = params.m_or(2);
            if m == 2 {
                return table_field(Group::Gl2, q, Some(lr), rank);
            }
            if !exists_order(m, q, 2, r)? {
                return Err(Error::NoElementOfOrder { order: lr, group: format!("GL_{m}(F_{q})") });
            }
            if p == 2 {
                let mut c = Computed::field(FieldDescriptor::rationals());
                c.notes.push("elements of 2-power order are unipotent; unipotent values are integers".into());
                return Ok(c);
            }
            let rep = k_ellr_report(m, q, 2, r, GeneratorOptions::default())?;
            Ok(Computed::field(rep.from_generators))
        }
        Claim::Lemma31 => {
            let (l, r, _) = params.need_ellr(claim)?;
            let tuples = lemma31_tuples(l, r);
            let reports =
                tuples.iter().map(|t| lemma31_report(q, l, r, t)).collect::<Result<Vec<_>>>()?;
            let bad: Vec<_> = reports.iter().filter(|rep| !rep.holds()).collect();
            let zero = reports.iter().filter(|rep| rep.product_is_zero).count();
            let shown = bad.first().copied().unwrap_or(&reports[0]);
            let mut c = Computed::field(shown.field.clone());
            c.verdict = Some(bad.is_empty());
            c.notes.push(format!(
                "{} tuples, {} fail, {} products vanish; k_r = {}",
                reports.len(),
                bad.len(),
                zero,
                mult_order(q % l.pow(r), l.pow(r)).unwrap_or(0)
            ));
            if let Some(b) = bad.first() {
                c.notes.push(format!(
                    "first failing tuple {:?}: field {}, {} conjugates against {}",
                    b.indices, b.field, b.conjugates, b.expected_conjugates
                ));
            }
            Ok(c)
        }
    }
}

/// Verifies one claim with the default finite-field generator.
pub fn verify(claim: Claim, params: &Params) -> Result<VerificationResult> {
    verify_with_generator(claim, params, 0)
}

/// [`verify`] with the `rank`-th primitive element generating `F_{q^2}`.
///
/// Hypotheses that do not apply and missing elements of the required
/// order give [`Status::Skipped`]; malformed parameters and exceeded bounds
/// are errors.
pub fn verify_with_generator(claim: Claim, params: &Params, rank: usize) -> Result<VerificationResult> {
    let predicted = match predict(claim, params) {
        Ok(f) => f,
        Err(Error::Indeterminate(why)) => return Ok(VerificationResult::skipped(claim, params, why)),
        Err(e) => return Err(e),
    };
    let computed = match compute(claim, params, rank) {
        Ok(c) => c,
        Err(e @ Error::NoElementOfOrder { .. }) => {
            return Ok(VerificationResult::skipped(claim, params, e.to_string()));
        }
        Err(e) => return Err(e),
    };
    let pass = computed.verdict.unwrap_or(true) && computed.field == predicted;
    let mut notes = computed.notes;
    if !pass {
        notes.push(format!("computed {} but predicted {}", computed.field, predicted));
    }
    Ok(VerificationResult {
        claim,
        params: params.to_map(),
        computed: Some(computed.field),
        predicted: Some(predicted),
        status: if pass { Status::Pass } else { Status::Fail },
        notes,
    })
}

/// Parameter ranges for [`sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepRange {
    pub q_max: u64,
    pub ellr_max: u64,
    pub m_max: u32,
}

impl Default for SweepRange {
    fn default() -> Self {
        SweepRange { q_max: 13, ellr_max: 27, m_max: 3 }
    }
}

/// `q^m - 1` cap for the `m >= 3` Theorem 1 items, which enumerate every orbit sum.
const THM1_LEVEL_CAP: u64 = 1000;

/// The parameter sets a sweep visits for one claim, sorted.
pub fn sweep_params(claim: Claim, range: &SweepRange) -> Vec<Params> {
    let qs: Vec<u64> = (2..=range.q_max).filter(|&q| is_prime_power(q)).collect();
    let ellrs: Vec<(u64, u32, u64)> = (2..=range.ellr_max)
        .filter_map(|v| prime_power(v).map(|(l, r)| (l, r, v)))
        .collect();
    let ms = 2..=range.m_max.max(2);
    let mut out = Vec::new();
    for &q in &qs {
        let p = prime_power(q).expect("prime power").0;
        match claim {
            Claim::Thm1 => {
                for m in ms.clone() {
                    if m == 2 || q.pow(m) - 1 <= THM1_LEVEL_CAP {
                        out.push(Params::q(q).m(m));
                    }
                }
            }
            Claim::Thm2 => {
                for m in ms.clone() {
                    for &(l, r, _) in &ellrs {
                        if l != 2 && l != p && exists_order(m, q, l, r).unwrap_or(false) {
                            out.push(Params::q(q).ellr(l, r).m(m));
                        }
                    }
                }
            }
            Claim::Thm3 | Claim::Thm5 => out.push(Params::q(q)),
            Claim::Thm4 => {
                // an odd l^r order needs l^r | q - 1, l^r | q + 1 or l^r = p
                for &(l, r, lr) in ellrs.iter().filter(|e| e.0 != 2) {
                    if [0, 1, lr - 1].contains(&(q % lr)) {
                        out.push(Params::q(q).ellr(l, r));
                    }
                }
            }
            Claim::Thm4Ell2 | Claim::TwoRRemark | Claim::Thm6 => {
                for &(l, r, lr) in &ellrs {
                    let params = Params::q(q).ellr(l, r);
                    let applies = match claim {
                        Claim::Thm6 => [0, 1, lr - 1].contains(&(q % lr)),
                        _ => l == 2 && predict(claim, &params).is_ok(),
                    };
                    if applies {
                        out.push(params);
                    }
                }
            }
            Claim::L1 | Claim::L1p => {
                for d in divisors(q - 1) {
                    out.push(Params::q(q).d(d));
                }
            }
            Claim::L2 => {
                for d in divisors(q * q - 1).into_iter().filter(|d| (q - 1) % d != 0) {
                    out.push(Params::q(q).d(d));
                }
            }
            Claim::KdSmall => {
                for d in [3, 4, 6] {
                    if q % d == d - 1 {
                        out.push(Params::q(q).d(d));
                    }
                }
            }
            Claim::K5 => {
                if q % 5 == 4 {
                    out.push(Params::q(q));
                }
            }
            Claim::K8Table => {
                if q % 2 == 1 {
                    out.push(Params::q(q));
                }
            }
            Claim::K2 | Claim::K4 => {
                for m in ms.clone() {
                    out.push(Params::q(q).m(m));
                }
            }
            Claim::Lemma31 => {
                for &(l, r, _) in ellrs.iter().filter(|e| e.0 != 2 && e.0 != p) {
                    out.push(Params::q(q).ellr(l, r));
                }
            }
        }
    }
    out.sort();
    out
}

/// Pass, fail and skip counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(results: &[VerificationResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

/// Runs every claim over its parameter sets in parallel. Results come back
/// ordered by claim, then parameters; the first hard error aborts.
pub fn sweep(claims: &[Claim], range: &SweepRange) -> Result<Vec<VerificationResult>> {
    let mut claims = claims.to_vec();
    claims.sort();
    claims.dedup();
    let items: Vec<(Claim, Params)> = claims
        .iter()
        .flat_map(|&c| sweep_params(c, range).into_iter().map(move |p| (c, p)))
        .collect();
    items.par_iter().map(|(c, p)| verify(*c, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_round_trip() {
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>().unwrap(), c);
        }
        assert_eq!("lemma31".parse::<Claim>().unwrap(), Claim::Lemma31);
        assert!("Thm9".parse::<Claim>().is_err());
    }

    #[test]
    fn predictions() {
        let f = predict(Claim::Thm4, &Params::q(7).ellr(3, 1)).unwrap();
        assert_eq!(f, named(NamedField::Cyclotomic(3)).unwrap());
        let f = predict(Claim::K8Table, &Params::q(13)).unwrap();
        assert_eq!(f, named(NamedField::GaussianRationals).unwrap());
        let f = predict(Claim::Thm6, &Params::q(5).ellr(5, 1)).unwrap();
        assert_eq!(f.quadratic_radicand(), Some(5));
        assert!(matches!(predict(Claim::K5, &Params::q(7)), Err(Error::Indeterminate(_))));
    }

    #[test]
    fn verify_examples() {
        let v = verify(Claim::L2, &Params::q(3).d(8)).unwrap();
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.computed.unwrap().quadratic_radicand(), Some(-2));
        let v = verify(Claim::Thm5, &Params::q(4)).unwrap();
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.computed.unwrap().quadratic_radicand(), Some(5));
        let v = verify(Claim::Thm4, &Params::q(3).ellr(3, 1)).unwrap();
        assert_eq!(v.status, Status::Pass);
        assert!(v.computed.unwrap().is_rational());
        let v = verify(Claim::Thm4, &Params::q(4).ellr(7, 1)).unwrap();
        assert_eq!(v.status, Status::Skipped);
    }
}
