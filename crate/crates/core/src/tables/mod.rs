//! Conjugacy classes and exact character tables of `GL_2(F_q)` and `SL_2(F_q)`.
//!
//! Characters are evaluated from closed formulas on demand; nothing is stored
//! as a dense matrix except where a check needs it. Every value is a
//! [`RootSum`] at the table level (`q^2 - 1`, times `p` for odd-`q` `SL_2`).
//!
//! Class parameters are discrete logarithms: `F_{q^2}` is built from its
//! deterministic generator `g`, `F_q^×` is generated by `eps = g^{q+1}`, and
//! the norm-one group `C` by `g^{q-1}`.

mod gl2;
mod sl2;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{lcm, prime_power};
use crate::config::{bounds, check};
use crate::error::{Error, Result};
use crate::exact::{level_data, Rational, RootSum};
use crate::finite_field::{make_field_with_generator, FqCtx};
use crate::galois::{field_of_sums, FieldDescriptor};

pub use sl2::{resolve_split_classes, Prefactor, SplitResolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Gl2,
    Sl2,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Gl2 => "GL2",
            Group::Sl2 => "SL2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassFamily {
    #[serde(rename = "a_x")]
    A,
    #[serde(rename = "b_x")]
    B,
    #[serde(rename = "c_xy")]
    Cxy,
    #[serde(rename = "d_zeta")]
    DZeta,
    #[serde(rename = "pm_I")]
    Central,
    #[serde(rename = "b_xy")]
    Bxy,
    #[serde(rename = "c_x")]
    Cx,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CharFamily {
    U,
    V,
    W,
    X,
    #[serde(rename = "W'")]
    WPrime,
    #[serde(rename = "W''")]
    WDoublePrime,
    #[serde(rename = "X'")]
    XPrime,
    #[serde(rename = "X''")]
    XDoublePrime,
}

/// A conjugacy class with its discrete-log parameters.
///
/// GL2: `a_x`, `b_x` carry `[log_eps x]`, `c_xy` carries `[log x, log y]`
/// with `log x < log y`, `d_zeta` carries `[log_g zeta]` (least of the pair
/// `zeta, zeta^q`). SL2: `pm_I` and `b_xy` carry `[sign of x, log_eps y]`,
/// `c_x` carries `[log_eps x]`, `d_zeta` carries `[j]` with `zeta = (g^{q-1})^j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub family: ClassFamily,
    pub params: Vec<i64>,
    pub label: String,
    pub size: u64,
    pub order: u64,
}

/// An irreducible character. GL2: `U_k`, `V_k` carry `[k]` (`1 <= k <= q-1`,
/// `U_1` trivial), `W` carries `[j, k]` with `j < k`, `X` carries `[n]`, the
/// least of `n, qn mod q^2-1`. SL2: `W` carries `[a]` and `X` carries `[b]`
/// (characters of `F_q^×` and `C` up to inversion).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharId {
    pub family: CharFamily,
    pub params: Vec<u64>,
    pub label: String,
}

#[derive(Clone, Debug)]
enum Formulas {
    Gl2,
    Sl2Odd(sl2::OddData),
    Sl2Even,
}

#[derive(Clone, Debug)]
pub struct CharTable {
    group: Group,
    q: u64,
    p: u64,
    n: u32,
    level: u64,
    order: u64,
    ctx: FqCtx,
    classes: Vec<ConjClass>,
    chars: Vec<CharId>,
    formulas: Formulas,
    notes: Vec<String>,
}

/// Exponent of `zeta_m^e` at level `level` (`m | level`).
pub(crate) fn zeta_exp(level: u64, m: u64, e: i64) -> u64 {
    debug_assert_eq!(level % m, 0);
    let e = e.rem_euclid(m as i64) as u64;
    e * (level / m)
}

impl CharTable {
    pub fn build(group: Group, q: u64) -> Result<Self> {
        Self::build_with_generator(group, q, 0)
    }

    /// Builds the table with the `rank`-th primitive element of `F_{q^2}` as
    /// generator; rank 0 is the default.
    pub fn build_with_generator(group: Group, q: u64, rank: usize) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        check("table q", q, bounds().max_table_q)?;
        let ctx = make_field_with_generator(p, 2 * n, rank)?;
        match group {
            Group::Gl2 => gl2::build(q, p, n, ctx),
            Group::Sl2 => sl2::build(q, p, n, ctx),
        }
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Cyclotomic level holding every value.
    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn field_context(&self) -> &FqCtx {
        &self.ctx
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn chars(&self) -> &[CharId] {
        &self.chars
    }

    /// Remarks recorded while building, e.g. resolver activity.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// `chi(c)` for character index `chi` and class index `c`.
    pub fn value(&self, chi: usize, c: usize) -> RootSum {
        let (id, class) = (&self.chars[chi], &self.classes[c]);
        match &self.formulas {
            Formulas::Gl2 => gl2::value(self, id, class),
            Formulas::Sl2Odd(data) => sl2::value_odd(self, data, chi, c),
            Formulas::Sl2Even => sl2::value_even(self, id, class),
        }
    }

    pub fn degree(&self, chi: usize) -> u64 {
        let v = self.value(chi, 0).to_cyclotomic();
        v.as_rational()
            .and_then(|r| r.to_i64())
            .expect("degrees are integers") as u64
    }

    /// Indices of the classes whose elements have order `d`.
    pub fn classes_of_order(&self, d: u64) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.classes[c].order == d).collect()
    }

    /// Field generated by all values on the given classes.
    pub fn field_on(&self, classes: &[usize]) -> Result<FieldDescriptor> {
        let mut seen: BTreeSet<Vec<(u64, Rational)>> = BTreeSet::new();
        let mut gens: Vec<RootSum> = Vec::new();
        for &c in classes {
            for chi in 0..self.chars.len() {
                let v = self.value(chi, c).compact();
                let key: Vec<(u64, Rational)> = std::iter::once((v.level(), Rational::zero()))
                    .chain(v.terms().map(|(e, r)| (e, r.clone())))
                    .collect();
                if seen.insert(key) {
                    gens.push(v);
                }
            }
        }
        field_of_sums(&gens)
    }

    /// `K(G)` or `K_d(G)`.
    pub fn field_generated(&self, order: Option<u64>) -> Result<FieldDescriptor> {
        let classes = match order {
            None => (0..self.classes.len()).collect(),
            Some(d) => self.classes_of_order(d),
        };
        if classes.is_empty() {
            return Err(Error::NoElementOfOrder {
                order: order.unwrap_or(0),
                group: format!("{}(F_{})", self.group, self.q),
            });
        }
        self.field_on(&classes)
    }

    /// Values scaled by 2, as sparse integer terms; every table entry is
    /// half-integral.
    fn scaled_row(&self, chi: usize) -> Vec<Vec<(u64, i128)>> {
        (0..self.classes.len())
            .map(|c| {
                self.value(chi, c)
                    .terms()
                    .map(|(e, r)| {
                        let s = r * &Rational::integer(2);
                        let v = s.to_i64().expect("table entries are half-integers");
                        (e, v as i128)
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks both orthogonality relations and the degree identity exactly.
    pub fn orthogonality(&self) -> OrthogonalityReport {
        let k = self.chars.len();
        let rows: Vec<Vec<Vec<(u64, i128)>>> = (0..k).into_par_iter().map(|chi| self.scaled_row(chi)).collect();
        let sizes: Vec<i128> = self.classes.iter().map(|c| c.size as i128).collect();
        let order = self.order as i128;
        let level = self.level;

        let row_failures: Vec<(usize, usize)> = (0..k)
            .into_par_iter()
            .flat_map_iter(|a| {
                let rows = &rows;
                let sizes = &sizes;
                (a..k).filter_map(move |b| {
                    let pairs = (0..sizes.len()).map(|c| (sizes[c], &rows[a][c], &rows[b][c]));
                    let target = if a == b { order } else { 0 };
                    (!inner_product_is(level, pairs, 4 * target)).then_some((a, b))
                })
            })
            .collect();

        let m = self.classes.len();
        let col_failures: Vec<(usize, usize)> = (0..m)
            .into_par_iter()
            .flat_map_iter(|c| {
                let rows = &rows;
                let sizes = &sizes;
                (c..m).filter_map(move |d| {
                    let pairs = (0..k).map(|chi| (1i128, &rows[chi][c], &rows[chi][d]));
                    let target = if c == d { order / sizes[c] } else { 0 };
                    (!inner_product_is(level, pairs, 4 * target)).then_some((c, d))
                })
            })
            .collect();

        let degree_square_sum: u64 = (0..k).map(|chi| self.degree(chi).pow(2)).sum();
        OrthogonalityReport {
            row_failures,
            column_failures: col_failures,
            degree_square_sum,
            group_order: self.order,
        }
    }

    /// Per `(family, order)` class counts.
    pub fn order_census(&self) -> BTreeMap<(ClassFamily, u64), u64> {
        let mut out = BTreeMap::new();
        for c in &self.classes {
            *out.entry((c.family, c.order)).or_insert(0) += 1;
        }
        out
    }

    /// Serializable dump of the whole table.
    pub fn dump(&self) -> TableDump {
        let values = (0..self.chars.len())
            .map(|chi| {
                (0..self.classes.len())
                    .map(|c| {
                        let v = self.value(chi, c).compact().to_cyclotomic().lowered();
                        ValueDump {
                            level: v.level(),
                            coeffs: v.coeffs().to_vec(),
                            pretty: v.pretty(),
                        }
                    })
                    .collect()
            })
            .collect();
        TableDump {
            group: self.group,
            q: self.q,
            p: self.p,
            n: self.n,
            group_order: self.order,
            classes: self.classes.clone(),
            characters: self
                .chars
                .iter()
                .enumerate()
                .map(|(i, id)| CharDump { id: id.clone(), degree: self.degree(i) })
                .collect(),
            values,
            notes: self.notes.clone(),
        }
    }
}

/// `sum_c w_c * a_c * conj(b_c) == target` (as an element of `Q(zeta_level)`).
fn inner_product_is<'a>(
    level: u64,
    items: impl Iterator<Item = (i128, &'a Vec<(u64, i128)>, &'a Vec<(u64, i128)>)>,
    target: i128,
) -> bool {
    let mut acc = vec![0i128; level as usize];
    for (w, a, b) in items {
        for &(e, x) in a {
            for &(f, y) in b {
                acc[((e + level - f) % level) as usize] += w * x * y;
            }
        }
    }
    let terms: Vec<(u64, i128)> = acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(e, c)| (e as u64, c))
        .collect();
    let ld = level_data(level);
    match ld.reduce_i128(&terms) {
        Some(red) => red[0] == target && red[1..].iter().all(|&c| c == 0),
        None => {
            let big: Vec<_> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
            let red = ld.reduce_big(&big);
            red[0] == target.into() && red[1..].iter().all(|c| c == &0.into())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub row_failures: Vec<(usize, usize)>,
    pub column_failures: Vec<(usize, usize)>,
    pub degree_square_sum: u64,
    pub group_order: u64,
}

impl OrthogonalityReport {
    pub fn passed(&self) -> bool {
        self.row_failures.is_empty()
            && self.column_failures.is_empty()
            && self.degree_square_sum == self.group_order
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValueDump {
    pub level: u64,
    pub coeffs: Vec<Rational>,
    /// Human-readable form for text output; JSON carries the exact coefficients only.
    #[serde(skip_serializing, default)]
    pub pretty: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharDump {
    pub id: CharId,
    pub degree: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableDump {
    pub group: Group,
    pub q: u64,
    pub p: u64,
    pub n: u32,
    pub group_order: u64,
    pub classes: Vec<ConjClass>,
    pub characters: Vec<CharDump>,
    /// `values[chi][class]`, each value lowered to its minimal level.
    pub values: Vec<Vec<ValueDump>>,
    pub notes: Vec<String>,
}

/// `K(G)` or `K_d(G)` for `G = GL_2(F_q)` or `SL_2(F_q)`.
pub fn field_generated(group: Group, q: u64, order: Option<u64>) -> Result<FieldDescriptor> {
    CharTable::build(group, q)?.field_generated(order)
}

/// One row of the class-order census: the count predicted by the closed
/// formula next to the count found by enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub family: ClassFamily,
    pub order: u64,
    pub predicted: u64,
    pub actual: u64,
}

impl CensusRow {
    pub fn agrees(&self) -> bool {
        self.predicted == self.actual
    }
}

/// Compares GL2 per-order class counts with the four closed formulas:
/// `phi(d)` scalar classes and `phi(d)` classes of order `pd` for `d | q-1`,
/// `phi(d)(d - (phi(d)+1)/2)` diagonal classes for `1 < d | q-1`, and
/// `phi(d)/2` elliptic classes for `d | q^2-1`, `d` not dividing `q-1`.
pub fn gl2_census(q: u64) -> Result<Vec<CensusRow>> {
    use crate::arith::{divisors, totient};
    let table = CharTable::build(Group::Gl2, q)?;
    let census = table.order_census();
    let actual = |f: ClassFamily, d: u64| census.get(&(f, d)).copied().unwrap_or(0);
    let p = table.p();
    let mut rows = Vec::new();
    for d in divisors(q - 1) {
        let phi = totient(d);
        rows.push(CensusRow { family: ClassFamily::A, order: d, predicted: phi, actual: actual(ClassFamily::A, d) });
        rows.push(CensusRow { family: ClassFamily::B, order: p * d, predicted: phi, actual: actual(ClassFamily::B, p * d) });
        if d > 1 {
            // phi(d) * (d - (phi(d) + 1) / 2), kept exact with doubled terms
            let predicted = (phi * (2 * d - phi - 1)) / 2;
            rows.push(CensusRow { family: ClassFamily::Cxy, order: d, predicted, actual: actual(ClassFamily::Cxy, d) });
        }
    }
    for d in divisors(q * q - 1) {
        if (q - 1) % d != 0 {
            rows.push(CensusRow {
                family: ClassFamily::DZeta,
                order: d,
                predicted: totient(d) / 2,
                actual: actual(ClassFamily::DZeta, d),
            });
        }
    }
    // orders realised by c_xy classes but absent from the formula's range
    for (&(f, d), &count) in &census {
        if f == ClassFamily::Cxy && !rows.iter().any(|r| r.family == f && r.order == d) {
            rows.push(CensusRow { family: f, order: d, predicted: 0, actual: count });
        }
    }
    Ok(rows)
}

pub(crate) fn table_level(parts: &[u64]) -> u64 {
    parts.iter().fold(1, |acc, &x| lcm(acc, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{named_field, NamedField};

    #[test]
    fn gl2_small_counts() {
        let t = CharTable::build(Group::Gl2, 3).unwrap();
        assert_eq!(t.classes().len(), 8);
        assert_eq!(t.classes().iter().map(|c| c.size).sum::<u64>(), 48);
        assert!(t.orthogonality().passed());
    }

    #[test]
    fn gl2_named_values() {
        let t = CharTable::build(Group::Gl2, 5).unwrap();
        let u1 = t.chars().iter().position(|c| c.label == "U_1").unwrap();
        for c in 0..t.classes().len() {
            assert_eq!(t.value(u1, c).to_cyclotomic(), crate::exact::Cyclotomic::one(1));
        }
        let v2 = t.chars().iter().position(|c| c.label == "V_2").unwrap();
        for (c, class) in t.classes().iter().enumerate() {
            if class.family == ClassFamily::B {
                assert!(t.value(v2, c).to_cyclotomic().is_zero());
            }
        }
    }

    #[test]
    fn gl2_fields() {
        let z3 = named_field(&NamedField::Cyclotomic(3)).unwrap();
        assert_eq!(field_generated(Group::Gl2, 7, Some(3)).unwrap(), z3);
        assert!(field_generated(Group::Gl2, 5, Some(3)).unwrap().is_rational());
        assert!(matches!(field_generated(Group::Gl2, 5, Some(7)), Err(Error::NoElementOfOrder { .. })));
    }

    #[test]
    fn sl2_small_counts() {
        let t5 = CharTable::build(Group::Sl2, 5).unwrap();
        assert_eq!(t5.classes().len(), 9);
        assert_eq!(t5.classes().iter().map(|c| c.size).sum::<u64>(), 120);
        assert!(t5.orthogonality().passed());
        let t4 = CharTable::build(Group::Sl2, 4).unwrap();
        assert_eq!((t4.classes().len(), t4.chars().len()), (5, 5));
        assert!(t4.orthogonality().passed());
    }

    #[test]
    fn sl2_fields() {
        let s5 = named_field(&NamedField::Quadratic(5)).unwrap();
        assert_eq!(field_generated(Group::Sl2, 5, None).unwrap(), s5);
    }

    #[test]
    fn census_q5_order4() {
        let rows = gl2_census(5).unwrap();
        let c4 = rows.iter().find(|r| r.family == ClassFamily::Cxy && r.order == 4).unwrap();
        assert_eq!(c4.predicted, 5);
    }
}
