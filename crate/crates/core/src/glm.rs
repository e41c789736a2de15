//! `GL_m(F_q)` through class types.
//!
//! A conjugacy class is a finite family of distinct monic irreducibles
//! `f_i != t` of degree `d_i`, each with a partition `lambda_i` of a
//! multiplicity `k_i`, subject to `sum k_i d_i = m`. Character values are not
//! computed; the fields they generate are, from the orbit sums `omega_d(r)`
//! and the products of Gauss periods that the cuspidal characters produce.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::arith::{gcd, is_prime, lcm, mult_order, prime_power, totient, units};
use crate::config::{bounds, check, check_level};
use crate::error::{Error, Result};
use crate::exact::{cyclotomic_polynomial, Cyclotomic, Rational};
use crate::finite_field::{irreducibles, make_field, root_order, FqPoly};
use crate::galois::{field_of, fixed_field_of, named_field, unique_subfield, FieldDescriptor, NamedField};
use crate::tables::{CharTable, Group};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let top = self.largest();
        Partition((1..=top).map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32).collect())
    }

    /// `part -> number of parts equal to it`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut out = BTreeMap::new();
        for &p in &self.0 {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// Order of the centralizer of the unipotent class `lambda` in
    /// `GL_k(F_Q)`: `Q^{sum lambda'_i^2 - sum m_j(m_j+1)/2} prod_j prod_{i <= m_j} (Q^i - 1)`.
    pub fn centralizer_order(&self, big_q: u128) -> Option<u128> {
        let conj_sq: u64 = self.conjugate().0.iter().map(|&c| (c as u64).pow(2)).sum();
        let mults = self.multiplicities();
        let tri: u64 = mults.values().map(|&m| (m as u64) * (m as u64 + 1) / 2).sum();
        let mut out = big_q.checked_pow((conj_sq - tri) as u32)?;
        for &m in mults.values() {
            for i in 1..=m {
                out = out.checked_mul(big_q.checked_pow(i)? - 1)?;
            }
        }
        Some(out)
    }
}

/// All partitions of `k`, in reverse lexicographic order.
pub fn partitions(k: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    #[serde(skip)]
    pub poly: FqPoly,
    /// Rendered polynomial, for labels.
    pub poly_label: String,
    pub degree: u32,
    pub multiplicity: u32,
    pub partition: Partition,
    /// Multiplicative order of a root of the polynomial.
    pub root_order: u64,
}

/// Degree, multiplicity and partition of one entry; the polynomial forgotten.
pub type TypeEntry = (u32, u32, Vec<u32>);

/// A class type: the sorted multiset of [`TypeEntry`].
pub type TypeKey = Vec<TypeEntry>;

/// A conjugacy class of `GL_m(F_q)` described by its class data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassType {
    pub m: u32,
    pub q: u64,
    pub entries: Vec<ClassEntry>,
}

impl ClassType {
    pub fn p(&self) -> u64 {
        prime_power(self.q).expect("q is a prime power").0
    }

    /// `lcm(ord alpha_i)`, the order of the semisimple part.
    pub fn semisimple_order(&self) -> u64 {
        self.entries.iter().fold(1, |acc, e| lcm(acc, e.root_order))
    }

    /// Full element order: the semisimple order times `p^c`, where `p^c` is
    /// the least power of `p` reaching the largest Jordan block.
    pub fn element_order(&self) -> u64 {
        let p = self.p();
        let block = self.entries.iter().map(|e| e.partition.largest()).max().unwrap_or(1) as u64;
        let mut unip = 1;
        while unip < block {
            unip *= p;
        }
        self.semisimple_order() * unip
    }

    pub fn centralizer_order(&self) -> Result<u128> {
        let mut out: u128 = 1;
        for e in &self.entries {
            let big_q = (self.q as u128).pow(e.degree);
            out = e
                .partition
                .centralizer_order(big_q)
                .and_then(|c| out.checked_mul(c))
                .ok_or(Error::BoundExceeded { what: "centralizer order", value: u64::MAX, max: u64::MAX })?;
        }
        Ok(out)
    }

    pub fn class_size(&self) -> Result<u128> {
        Ok(glm_order(self.m, self.q)? / self.centralizer_order()?)
    }

    pub fn type_key(&self) -> TypeKey {
        let mut key: TypeKey = self
            .entries
            .iter()
            .map(|e| (e.degree, e.multiplicity, e.partition.0.clone()))
            .collect();
        key.sort();
        key
    }

    pub fn label(&self) -> String {
        self.entries
            .iter()
            .map(|e| format!("({})^{:?}", e.poly_label, e.partition.0))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn check_mq(m: u32, q: u64) -> Result<(u64, u32)> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    check("m", m as u64, bounds().max_m)?;
    prime_power(q).ok_or(Error::NotPrimePower(q))
}

/// `|GL_m(F_q)| = q^{m(m-1)/2} prod_{k <= m} Phi_k(q)^{floor(m/k)}`.
pub fn glm_order(m: u32, q: u64) -> Result<u128> {
    check_mq(m, q)?;
    let overflow = || Error::BoundExceeded { what: "|GL_m(F_q)|", value: u64::MAX, max: u64::MAX };
    let mut out = (q as u128).checked_pow(m * (m - 1) / 2).ok_or_else(overflow)?;
    for k in 1..=m {
        let phi_k: i128 = cyclotomic_polynomial(k as u64)
            .iter()
            .rev()
            .fold(0i128, |acc, &c| acc * q as i128 + c as i128);
        let factor = (phi_k as u128).checked_pow(m / k).ok_or_else(overflow)?;
        out = out.checked_mul(factor).ok_or_else(overflow)?;
    }
    Ok(out)
}

/// Every conjugacy class of `GL_m(F_q)`, in a fixed order.
pub fn class_types(m: u32, q: u64) -> Result<Vec<ClassType>> {
    let (p, n) = check_mq(m, q)?;
    check("q^m", q.checked_pow(m).unwrap_or(u64::MAX), bounds().max_field_size)?;
    let ctx = make_field(p, n)?;
    let mut polys = Vec::new();
    for d in 1..=m {
        for f in irreducibles(d, &ctx)? {
            if f.is_t() {
                continue;
            }
            let ord = root_order(&f, &ctx)?;
            polys.push((f.render(&ctx), f, d, ord));
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    extend(&polys, 0, m, &mut cur, &mut |entries| {
        out.push(ClassType { m, q, entries: entries.to_vec() });
    });
    Ok(out)
}

fn extend(
    polys: &[(String, FqPoly, u32, u64)],
    from: usize,
    rest: u32,
    cur: &mut Vec<ClassEntry>,
    emit: &mut impl FnMut(&[ClassEntry]),
) {
    if rest == 0 {
        emit(cur);
        return;
    }
    for (j, (label, f, d, ord)) in polys.iter().enumerate().skip(from) {
        for k in 1..=rest / d {
            for lambda in partitions(k) {
                cur.push(ClassEntry {
                    poly: f.clone(),
                    poly_label: label.clone(),
                    degree: *d,
                    multiplicity: k,
                    partition: lambda,
                    root_order: *ord,
                });
                extend(polys, j + 1, rest - k * d, cur, emit);
                cur.pop();
            }
        }
    }
}

/// Number of classes of each type.
pub fn type_census(m: u32, q: u64) -> Result<BTreeMap<TypeKey, u64>> {
    let mut out = BTreeMap::new();
    for c in class_types(m, q)? {
        *out.entry(c.type_key()).or_insert(0) += 1;
    }
    Ok(out)
}

/// `omega_d(r) = sum_{k < d} zeta_{q^d - 1}^{r q^k}`.
pub fn omega(d: u32, r: i64, q: u64) -> Result<Cyclotomic> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    let level = q
        .checked_pow(d)
        .map(|v| v - 1)
        .ok_or(Error::LevelTooLarge { level: u64::MAX, max: bounds().max_level })?;
    check_level(level)?;
    let one = Rational::integer(1);
    let base = crate::arith::rem_euclid(r, level) as u128;
    let terms: Vec<(u64, &Rational)> = (0..d)
        .map(|k| ((base * (q as u128).pow(k) % level as u128) as u64, &one))
        .collect();
    Cyclotomic::try_from_terms(level, terms)
}

/// Residues modulo `q^d - 1`, one per orbit of multiplication by `q`.
fn orbit_representatives(level: u64, q: u64, residues: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in residues {
        if seen.contains(&r) {
            continue;
        }
        out.push(r);
        let mut x = r;
        while seen.insert(x) {
            x = ((x as u128 * q as u128) % level as u128) as u64;
        }
    }
    out
}

fn omega_field(m: u32, q: u64, all_residues: bool) -> Result<FieldDescriptor> {
    check_mq(m, q)?;
    let mut gens = Vec::new();
    for d in 1..=m {
        let level = q.checked_pow(d).ok_or(Error::LevelTooLarge { level: u64::MAX, max: bounds().max_level })? - 1;
        check_level(level)?;
        let residues: Vec<u64> = if all_residues { (0..level.max(1)).collect() } else { units(level) };
        for r in orbit_representatives(level.max(1), q, residues) {
            gens.push(omega(d, r as i64, q)?);
        }
    }
    field_of(&gens)
}

/// `Q({omega_d(r) : d <= m, r a unit mod q^d - 1})`.
pub fn k_glm(m: u32, q: u64) -> Result<FieldDescriptor> {
    omega_field(m, q, false)
}

/// Field of the values `theta(f) = sum_k theta(alpha^{q^k})` over every
/// polynomial of degree `d <= m` and every character `theta` of
/// `F_{q^d}^×`, that is `omega_d(r)` for all residues `r`. These are the
/// values cuspidal characters take on primary classes, up to nonzero integers.
pub fn k_glm_class_values(m: u32, q: u64) -> Result<FieldDescriptor> {
    omega_field(m, q, true)
}

/// Whether `GL_m(F_q)` has an element of order `l^r`.
pub fn exists_order(m: u32, q: u64, l: u64, r: u32) -> Result<bool> {
    let (p, _) = check_mq(m, q)?;
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    if l == p {
        // a Jordan block of size b has order p^c with p^{c-1} < b <= p^c
        return Ok(l.checked_pow(r - 1).is_some_and(|v| v < m as u64));
    }
    let lr = l.checked_pow(r).ok_or(Error::BoundExceeded { what: "l^r", value: u64::MAX, max: bounds().max_ellr })?;
    Ok(mult_order(q % lr, lr).is_some_and(|k| k <= m as u64))
}

/// How the products of Gauss periods are enumerated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GeneratorOptions {
    /// Restrict the top index `i_r` to units of `Z_{l^r}`. The characters of
    /// `F_{q^d}^×` reach every residue, so the default is `false`.
    pub top_units_only: bool,
    /// Bound on the total degree `sum k_a` of the contributing factors;
    /// `None` means `m`.
    pub budget: Option<u64>,
}

/// `S_a(i) = sum_{t < k_a} zeta_{l^a}^{i q^t}` as exponents at level `l^top`.
fn period_exponents(l: u64, a: u32, top: u32, q: u64, i: u64) -> Result<Vec<u64>> {
    let la = l.pow(a);
    let k = mult_order(q % la, la).ok_or(Error::Inconsistent(format!("{q} is not a unit mod {la}")))?;
    let scale = l.pow(top - a);
    let mut x = i % la;
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(x * scale);
        x = x * (q % la) % la;
    }
    Ok(out)
}

/// The product `prod_j S_{a_j}(i_j)` at level `l^top`.
fn period_product(l: u64, top: u32, q: u64, factors: &[(u32, u64)]) -> Result<Cyclotomic> {
    let level = l.pow(top);
    let mut acc: BTreeMap<u64, i64> = BTreeMap::from([(0, 1)]);
    for &(a, i) in factors {
        let exps = period_exponents(l, a, top, q, i)?;
        let mut next = BTreeMap::new();
        for (&e, &c) in &acc {
            for &f in &exps {
                *next.entry((e + f) % level).or_insert(0) += c;
            }
        }
        acc = next;
    }
    let coeffs: Vec<(u64, Rational)> = acc.into_iter().map(|(e, c)| (e, Rational::integer(c))).collect();
    Cyclotomic::try_from_terms(level, coeffs.iter().map(|(e, c)| (*e, c)))
}

fn check_ellr(q: u64, l: u64, r: u32) -> Result<(u64, u64)> {
    let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if !is_prime(l) {
        return Err(Error::NotPrime(l));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let lr = l.checked_pow(r).unwrap_or(u64::MAX);
    check("l^r", lr, bounds().max_ellr)?;
    Ok((p, lr))
}

/// Values `prod_a S_a(i_a)` of characters at elements of order `l^r`, `l != p`.
pub fn order_ellr_value_generators(m: u32, q: u64, l: u64, r: u32) -> Result<Vec<Cyclotomic>> {
    order_ellr_value_generators_with(m, q, l, r, GeneratorOptions::default())
}

/// [`order_ellr_value_generators`] with explicit options. An element of
/// order `l^r` carries eigenvalue orbits at levels `l^a`, of sizes `k_a =
/// ord_{l^a}(q)`, at least one at the top level; each multiset of levels whose
/// sizes fit the budget contributes the products over all index choices.
/// Results are distinct, in enumeration order.
pub fn order_ellr_value_generators_with(
    m: u32,
    q: u64,
    l: u64,
    r: u32,
    opts: GeneratorOptions,
) -> Result<Vec<Cyclotomic>> {
    let (p, _) = check_ellr(q, l, r)?;
    if l == p {
        return Err(Error::InvalidArgument(format!("l = {l} is the characteristic")));
    }
    if !exists_order(m, q, l, r)? {
        return Err(Error::NoElementOfOrder { order: l.pow(r), group: format!("GL_{m}(F_{q})") });
    }
    let budget = opts.budget.unwrap_or(m as u64);
    let k: Vec<u64> = (1..=r).map(|a| mult_order(q % l.pow(a), l.pow(a)).expect("q coprime to l")).collect();
    let mut multisets = Vec::new();
    level_multisets(&k, 1, budget, &mut Vec::new(), &mut multisets);
    let mut seen: HashSet<Vec<Rational>> = HashSet::new();
    let mut out = Vec::new();
    for levels in multisets.iter().filter(|ls| ls.contains(&r)) {
        let choices: Vec<Vec<u64>> = levels
            .iter()
            .map(|&a| {
                let la = l.pow(a);
                if a == r && opts.top_units_only {
                    units(la)
                } else {
                    (0..la).collect()
                }
            })
            .collect();
        let mut idx = vec![0usize; levels.len()];
        'tuples: loop {
            let factors: Vec<(u32, u64)> = levels.iter().zip(&idx).zip(&choices).map(|((&a, &j), c)| (a, c[j])).collect();
            let v = period_product(l, r, q, &factors)?;
            if seen.insert(v.coeffs().to_vec()) {
                out.push(v);
            }
            for pos in 0..idx.len() {
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    continue 'tuples;
                }
                idx[pos] = 0;
            }
            break;
        }
    }
    Ok(out)
}

/// Nondecreasing sequences of levels in `from..=r` with `sum k_a <= budget`.
fn level_multisets(k: &[u64], from: u32, budget: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    for a in from..=k.len() as u32 {
        let cost = k[a as usize - 1];
        if cost <= budget {
            cur.push(a);
            level_multisets(k, a, budget - cost, cur, out);
            cur.pop();
        }
    }
}

/// The three descriptions of `K_{l^r}(GL_m(F_q))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllrReport {
    pub from_generators: FieldDescriptor,
    pub fixed_field: FieldDescriptor,
    /// Only for odd `l`.
    pub unique_subfield: Option<FieldDescriptor>,
    pub generator_count: usize,
}

impl EllrReport {
    pub fn coincide(&self) -> bool {
        self.from_generators == self.fixed_field
            && self.unique_subfield.as_ref().is_none_or(|u| *u == self.fixed_field)
    }
}

/// Generator field, `<tau_q>` fixed field and unique subfield by degree.
pub fn k_ellr_report(m: u32, q: u64, l: u64, r: u32, opts: GeneratorOptions) -> Result<EllrReport> {
    let gens = order_ellr_value_generators_with(m, q, l, r, opts)?;
    let lr = l.pow(r);
    let fixed_field = fixed_field_of(lr, &[q % lr])?;
    let unique = if l == 2 {
        None
    } else {
        let ord = mult_order(q % lr, lr).expect("q coprime to l");
        Some(unique_subfield(l, r, totient(lr) / ord)?)
    };
    Ok(EllrReport { from_generators: field_of(&gens)?, fixed_field, unique_subfield: unique, generator_count: gens.len() })
}

/// `K_{l^r}(GL_m(F_q))`.
///
/// For odd `l != p` the generator field is computed and checked against the
/// `<tau_q>` fixed field and the unique subfield of the expected degree; a
/// disagreement is an [`Error::Inconsistent`]. `l = p` gives `Q`, `l^r = 2`
/// gives `Q`, `l^r = 4` gives `Q(i)` exactly when `q = 1 mod 4`. Higher
/// powers of 2 are only answered for `m = 2`, from the table.
pub fn k_ellr_glm(m: u32, q: u64, l: u64, r: u32) -> Result<FieldDescriptor> {
    let (p, lr) = check_ellr(q, l, r)?;
    if !exists_order(m, q, l, r)? {
        return Err(Error::NoElementOfOrder { order: lr, group: format!("GL_{m}(F_{q})") });
    }
    if l == p || lr == 2 {
        return Ok(FieldDescriptor::rationals());
    }
    if lr == 4 {
        return Ok(if q % 4 == 1 { named_field(&NamedField::GaussianRationals)? } else { FieldDescriptor::rationals() });
    }
    if l == 2 {
        if m == 2 {
            return CharTable::build(Group::Gl2, q)?.field_generated(Some(lr));
        }
        return Err(Error::Indeterminate(format!(
            "K_{lr}(GL_{m}(F_{q})): the field at 2-power orders above 4 is not determined for m > 2"
        )));
    }
    let rep = k_ellr_report(m, q, l, r, GeneratorOptions::default())?;
    if !rep.coincide() {
        return Err(Error::Inconsistent(format!(
            "K_{lr}(GL_{m}(F_{q})): generators give {}, fixed field {}, unique subfield {:?}",
            rep.from_generators, rep.fixed_field, rep.unique_subfield
        )));
    }
    Ok(rep.from_generators)
}

/// Outcome of checking one index tuple against the single-product claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma31Report {
    pub q: u64,
    pub l: u64,
    pub r: u32,
    pub indices: Vec<u64>,
    pub product_is_zero: bool,
    pub field: FieldDescriptor,
    pub expected: FieldDescriptor,
    pub conjugates: u64,
    pub expected_conjugates: u64,
}

impl Lemma31Report {
    pub fn holds(&self) -> bool {
        self.field == self.expected && self.conjugates == self.expected_conjugates
    }
}

/// Field and Galois orbit of the single product `prod_{a=1}^r S_a(i_a)`.
pub fn lemma31_report(q: u64, l: u64, r: u32, indices: &[u64]) -> Result<Lemma31Report> {
    let (p, lr) = check_ellr(q, l, r)?;
    if l == p {
        return Err(Error::InvalidArgument(format!("l = {l} is the characteristic")));
    }
    if indices.len() != r as usize {
        return Err(Error::InvalidArgument(format!("expected {r} indices, got {}", indices.len())));
    }
    if gcd(indices[r as usize - 1] % lr, lr) != 1 {
        return Err(Error::NotAUnit { s: indices[r as usize - 1] as i64, level: lr });
    }
    let factors: Vec<(u32, u64)> = indices.iter().enumerate().map(|(a, &i)| (a as u32 + 1, i)).collect();
    let v = period_product(l, r, q, &factors)?;
    let mut orbit: HashSet<Vec<Rational>> = HashSet::new();
    for s in units(lr) {
        orbit.insert(v.galois(s as i64)?.coeffs().to_vec());
    }
    let k_r = mult_order(q % lr, lr).expect("q coprime to l");
    Ok(Lemma31Report {
        q,
        l,
        r,
        indices: indices.to_vec(),
        product_is_zero: v.is_zero(),
        field: field_of(&[v])?,
        expected: fixed_field_of(lr, &[q % lr])?,
        conjugates: orbit.len() as u64,
        expected_conjugates: totient(lr) / k_r,
    })
}

/// Whether the single product generates `Q(zeta_{l^r})^{<tau_q>}` and has
/// `phi(l^r)/k_r` distinct conjugates.
pub fn lemma31_check(q: u64, l: u64, r: u32, indices: &[u64]) -> Result<bool> {
    Ok(lemma31_report(q, l, r, indices)?.holds())
}

/// Every admissible tuple: `i_a` in `Z_{l^a}` for `a < r`, `i_r` a unit.
pub fn lemma31_tuples(l: u64, r: u32) -> Vec<Vec<u64>> {
    let mut out: Vec<Vec<u64>> = vec![vec![]];
    for a in 1..=r {
        let la = l.pow(a);
        let choices: Vec<u64> = if a == r { units(la) } else { (0..la).collect() };
        out = out
            .into_iter()
            .flat_map(|t| {
                choices.iter().map(move |&c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_count() {
        let counts: Vec<usize> = (1..=6).map(|k| partitions(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
        assert_eq!(partitions(3)[0].parts(), &[3]);
        let p = Partition::new(vec![3, 1, 1]).unwrap();
        assert_eq!(p.conjugate().parts(), &[3, 1, 1]);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn class_counts() {
        // number of conjugacy classes of GL_m(F_q)
        for (m, q, n) in [(1u32, 5u64, 4usize), (2, 3, 8), (3, 2, 6), (3, 3, 24), (4, 2, 14)] {
            assert_eq!(class_types(m, q).unwrap().len(), n, "GL_{m}({q})");
        }
    }

    #[test]
    fn sizes_sum_to_order() {
        for (m, q) in [(2u32, 4u64), (3, 2), (3, 3), (4, 2)] {
            let total: u128 = class_types(m, q).unwrap().iter().map(|c| c.class_size().unwrap()).sum();
            assert_eq!(total, glm_order(m, q).unwrap());
        }
        assert_eq!(glm_order(3, 2).unwrap(), 168);
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(2, 1, 2).unwrap(), Cyclotomic::integer(1, -1));
        assert_eq!(omega(3, 0, 5).unwrap(), Cyclotomic::integer(1, 3));
        assert_eq!(omega(1, 2, 7).unwrap(), Cyclotomic::root(6, 2));
    }

    #[test]
    fn exists_order_examples() {
        assert!(exists_order(2, 7, 3, 1).unwrap());
        assert!(!exists_order(2, 2, 7, 1).unwrap());
        assert!(exists_order(3, 2, 7, 1).unwrap());
        // a 3x3 Jordan block over F_2 has order 4, a 2x2 block order 2
        assert!(exists_order(3, 2, 2, 2).unwrap());
        assert!(!exists_order(2, 2, 2, 2).unwrap());
    }

    #[test]
    fn orbit_sums_q2_l7() {
        let g = order_ellr_value_generators_with(3, 2, 7, 1, GeneratorOptions { top_units_only: true, budget: None })
            .unwrap();
        let a = &(&Cyclotomic::root(7, 1) + &Cyclotomic::root(7, 2)) + &Cyclotomic::root(7, 4);
        let b = &(&Cyclotomic::root(7, 3) + &Cyclotomic::root(7, 5)) + &Cyclotomic::root(7, 6);
        assert_eq!(g.len(), 2);
        assert!(g.contains(&a) && g.contains(&b));
    }

    #[test]
    fn k_ellr_examples() {
        assert_eq!(k_ellr_glm(3, 2, 7, 1).unwrap().quadratic_radicand(), Some(-7));
        assert_eq!(k_ellr_glm(2, 7, 3, 1).unwrap(), named_field(&NamedField::Cyclotomic(3)).unwrap());
        assert!(k_ellr_glm(2, 2, 3, 1).unwrap().is_rational());
        assert!(matches!(k_ellr_glm(2, 2, 7, 1), Err(Error::NoElementOfOrder { .. })));
        assert!(matches!(k_ellr_glm(3, 3, 2, 3), Err(Error::Indeterminate(_))));
    }

    #[test]
    fn lemma31_examples() {
        assert!(lemma31_check(2, 3, 2, &[0, 1]).unwrap());
        assert!(lemma31_check(4, 5, 1, &[1]).unwrap());
        // zeta_9 + zeta_9^7 + zeta_9^4 = 0
        let rep = lemma31_report(7, 3, 2, &[0, 1]).unwrap();
        assert!(rep.product_is_zero);
        assert!(!rep.holds());
    }
}
