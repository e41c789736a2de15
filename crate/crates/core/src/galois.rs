//! Subfields of cyclotomic fields through the Galois correspondence.
//!
//! An abelian field `K` is described by its conductor `f` and the subgroup
//! `H` of `Z_f^×` that fixes it inside `Q(zeta_f)`. With the conductor chosen
//! minimal this description is canonical, so field equality is plain equality
//! of descriptors.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{divisors, factorize, gcd, is_prime, lcm, totient, units};
use crate::config::check_level;
use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, Rational, RootSum};
use crate::finite_field::make_field;

/// A subgroup of `Z_n^×`, elements sorted ascending and reduced mod `n`.
///
/// For `n = 1` the group is `{0}`, the lone residue class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ResidueGroup {
    modulus: u64,
    elements: Vec<u64>,
}

impl ResidueGroup {
    pub fn full(n: u64) -> Self {
        ResidueGroup { modulus: n, elements: units(n) }
    }

    pub fn trivial(n: u64) -> Self {
        ResidueGroup { modulus: n, elements: vec![1 % n] }
    }

    /// Validates closure and membership of 1.
    pub fn from_elements(n: u64, elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let set: BTreeSet<u64> = elements.into_iter().map(|s| s % n).collect();
        let g = ResidueGroup { modulus: n, elements: set.into_iter().collect() };
        if !g.is_subgroup() {
            return Err(Error::InvalidArgument(format!("not a subgroup of Z_{n}^×: {:?}", g.elements)));
        }
        Ok(g)
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(n: u64, gens: &[u64]) -> Self {
        let mut set: BTreeSet<u64> = BTreeSet::from([1 % n]);
        let mut frontier = vec![1 % n];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = ((x as u128 * g as u128) % n as u128) as u64;
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        ResidueGroup { modulus: n, elements: set.into_iter().collect() }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, s: u64) -> bool {
        self.elements.binary_search(&(s % self.modulus)).is_ok()
    }

    pub fn is_subgroup(&self) -> bool {
        let n = self.modulus;
        if !self.contains(1 % n) || self.elements.iter().any(|&s| gcd(s, n) != 1 && n != 1) {
            return false;
        }
        self.elements.iter().all(|&a| {
            self.elements
                .iter()
                .all(|&b| self.contains(((a as u128 * b as u128) % n as u128) as u64))
        })
    }

    /// Image under reduction `Z_n^× -> Z_m^×`, for `m | n`.
    pub fn image(&self, m: u64) -> Self {
        assert!(self.modulus % m == 0, "{m} does not divide {}", self.modulus);
        let set: BTreeSet<u64> = self.elements.iter().map(|s| s % m).collect();
        ResidueGroup { modulus: m, elements: set.into_iter().collect() }
    }

    /// Full preimage in `Z_n^×`, for `modulus | n`.
    pub fn preimage(&self, n: u64) -> Self {
        assert!(n % self.modulus == 0);
        ResidueGroup {
            modulus: n,
            elements: units(n).into_iter().filter(|&s| self.contains(s)).collect(),
        }
    }

    fn intersect(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        ResidueGroup {
            modulus: self.modulus,
            elements: self.elements.iter().copied().filter(|&s| other.contains(s)).collect(),
        }
    }

    fn is_subset_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|&s| other.contains(s))
    }
}

/// Canonical descriptor of an abelian number field.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldDescriptor {
    conductor: u64,
    fixing: ResidueGroup,
    degree: u64,
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor { conductor: 1, fixing: ResidueGroup::full(1), degree: 1 }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn fixing_subgroup(&self) -> &ResidueGroup {
        &self.fixing
    }

    pub fn fixing_residues(&self) -> &[u64] {
        self.fixing.elements()
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    /// True when `other` is a subfield of `self`.
    pub fn contains(&self, other: &FieldDescriptor) -> bool {
        let n = lcm(self.conductor, other.conductor);
        self.fixing.preimage(n).is_subset_of(&other.fixing.preimage(n))
    }

    /// Recognized names, most specific first.
    pub fn names(&self) -> Vec<String> {
        let f = self.conductor;
        if f == 1 {
            return vec!["Q".into()];
        }
        let mut out = Vec::new();
        if self.degree == totient(f) {
            if f == 4 {
                out.push("Q(i)".into());
            }
            out.push(format!("Q(zeta_{f})"));
            return out;
        }
        if self.degree == 2 {
            if let Some(m) = self.quadratic_radicand() {
                out.push(format!("Q(sqrt({m}))"));
            }
        }
        let minus_one = f - 1;
        if self.fixing.elements == [1, minus_one] {
            out.push(format!("Q(zeta_{f} + zeta_{f}^-1)"));
        }
        if out.is_empty() {
            out.push(format!("degree-{} subfield of Q(zeta_{f})", self.degree));
        }
        out
    }

    /// Squarefree `m` with `self = Q(sqrt(m))`, for quadratic fields.
    pub fn quadratic_radicand(&self) -> Option<i64> {
        if self.degree != 2 {
            return None;
        }
        let f = self.conductor as i64;
        let base = if f % 4 == 0 { f / 4 } else { f };
        [base, -base]
            .into_iter()
            .filter(|&m| m != 1 && is_squarefree(m))
            .find(|&m| named_field(&NamedField::Quadratic(m)).ok().as_ref() == Some(self))
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Field(conductor {}, degree {}, fixed by {:?})",
            self.conductor, self.degree, self.fixing.elements
        )
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names()[0])
    }
}

#[derive(Serialize, Deserialize)]
struct DescriptorRepr {
    conductor: u64,
    fixing_residues: Vec<u64>,
    degree: u64,
    #[serde(default, skip_deserializing)]
    names: Vec<String>,
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DescriptorRepr {
            conductor: self.conductor,
            fixing_residues: self.fixing.elements.clone(),
            degree: self.degree,
            names: self.names(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = DescriptorRepr::deserialize(d)?;
        let h = ResidueGroup::from_elements(r.conductor.max(1), r.fixing_residues)
            .map_err(D::Error::custom)?;
        let out = field_reduce(&h);
        if out.conductor != r.conductor || out.degree != r.degree {
            return Err(D::Error::custom("field descriptor is not in canonical form"));
        }
        Ok(out)
    }
}

/// Canonical descriptor of `Q(zeta_N)^H`.
///
/// Picks the least divisor `n` of `N` whose reduction kernel lies in `H` and
/// maps `H` onto `Z_n^×`. Idempotent.
pub fn field_reduce(h: &ResidueGroup) -> FieldDescriptor {
    let big = h.modulus;
    let all = units(big);
    for n in divisors(big) {
        let kernel_inside = all
            .iter()
            .filter(|&&s| s % n == 1 % n)
            .all(|&s| h.contains(s));
        if kernel_inside {
            let image = h.image(n);
            let degree = totient(n) / image.order();
            return FieldDescriptor { conductor: n, fixing: image, degree };
        }
    }
    unreachable!("n = N always qualifies")
}

/// `{s in Z_N^× : sigma_s(g) = g for every generator}`.
pub fn stabilizer(gens: &[Cyclotomic], n: u64) -> Result<ResidueGroup> {
    check_level(n)?;
    let mut h = units(n);
    let mut seen: HashSet<(u64, Vec<Rational>)> = HashSet::new();
    for g in gens {
        if g.as_rational().is_some() {
            continue;
        }
        let g = if n % g.level() == 0 { g.clone() } else { g.change_level(n)? };
        if !seen.insert((g.level(), g.coeffs().to_vec())) {
            continue;
        }
        let l = g.level();
        let mut memo: HashMap<u64, bool> = HashMap::new();
        h.retain(|&s| *memo.entry(s % l).or_insert_with(|| g.galois_unchecked(s % l) == g));
        if h.len() == 1 {
            break;
        }
    }
    let group = ResidueGroup { modulus: n, elements: h };
    debug_assert!(group.is_subgroup(), "stabilizer is not a subgroup");
    Ok(group)
}

/// The field generated over `Q` by `gens`.
pub fn field_of(gens: &[Cyclotomic]) -> Result<FieldDescriptor> {
    let n = gens.iter().fold(1u64, |acc, g| lcm(acc, g.level()));
    check_level(n)?;
    Ok(field_reduce(&stabilizer(gens, n)?))
}

/// [`field_of`] for values kept in group-ring form.
pub fn field_of_sums(gens: &[RootSum]) -> Result<FieldDescriptor> {
    let mut canon: Vec<Cyclotomic> = Vec::new();
    let mut seen: HashSet<(u64, Vec<Rational>)> = HashSet::new();
    for g in gens {
        let c = g.compact().try_to_cyclotomic()?;
        if c.as_rational().is_some() {
            continue;
        }
        if seen.insert((c.level(), c.coeffs().to_vec())) {
            canon.push(c);
        }
    }
    field_of(&canon)
}

/// Fixed field of the subgroup of `Z_N^×` generated by `gens`.
pub fn fixed_field_of(n: u64, gens: &[u64]) -> Result<FieldDescriptor> {
    check_level(n)?;
    if let Some(&s) = gens.iter().find(|&&s| gcd(s % n, n) != 1 && n != 1) {
        return Err(Error::NotAUnit { s: s as i64, level: n });
    }
    Ok(field_reduce(&ResidueGroup::generated_by(n, gens)))
}

/// Unique subfield of degree `d` of `Q(zeta_{l^r})`, `l` an odd prime.
pub fn unique_subfield(l: u64, r: u32, d: u64) -> Result<FieldDescriptor> {
    if !is_prime(l) || l == 2 {
        return Err(Error::InvalidArgument(format!("{l} is not an odd prime")));
    }
    let n = l.pow(r);
    check_level(n)?;
    let phi = totient(n);
    if d == 0 || phi % d != 0 {
        return Err(Error::DegreeDoesNotDivide { degree: d, order: phi });
    }
    // the index-d subgroup of a cyclic group is the group of d-th powers
    let h = ResidueGroup {
        modulus: n,
        elements: units(n)
            .into_iter()
            .map(|s| crate::arith::pow_mod(s, d, n))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    };
    let out = field_reduce(&h);
    debug_assert_eq!(out.degree, d);
    Ok(out)
}

/// Smallest field containing all of `fields`.
pub fn compositum(fields: &[FieldDescriptor]) -> FieldDescriptor {
    let n = fields.iter().fold(1, |acc, f| lcm(acc, f.conductor));
    let h = fields
        .iter()
        .fold(ResidueGroup::full(n), |acc, f| acc.intersect(&f.fixing.preimage(n)));
    field_reduce(&h)
}

pub fn is_squarefree(m: i64) -> bool {
    m != 0 && factorize(m.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Legendre symbol `(a/p)` for an odd prime `p`, by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    match crate::arith::pow_mod(a, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// `k = ord_n(q)`, rejecting `gcd(q, n) != 1`.
pub fn mult_order(q: u64, n: u64) -> Result<u64> {
    crate::arith::mult_order(q, n).ok_or(Error::NotAUnit { s: q as i64, level: n })
}

/// `q* = (-1)^{(q-1)/2} q` for odd `q`.
pub fn qstar(q: u64) -> i64 {
    if q % 4 == 1 {
        q as i64
    } else {
        -(q as i64)
    }
}

/// Quadratic Gauss sum of `F_{p^n}`: `sum_u eta(u) zeta_p^{Tr(u)}`, whose square is `q*`.
pub fn sqrt_qstar_element(p: u64, n: u32) -> Result<Cyclotomic> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    let ctx = make_field(p, n)?;
    let mut g = RootSum::zero(p);
    for u in ctx.nonzero() {
        let tr = ctx.prime_field_value(ctx.trace(u, 1)?).expect("trace lies in F_p");
        g.add_term(tr, Rational::integer(ctx.quadratic_character(u)? as i64));
    }
    let g = g.try_to_cyclotomic()?;
    let sq = &g * &g;
    if sq != Cyclotomic::integer(p, qstar(ctx.q())) {
        return Err(Error::Inconsistent(format!("Gauss sum square for q = {} is {sq}", ctx.q())));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedField {
    Rationals,
    GaussianRationals,
    Cyclotomic(u64),
    /// `Q(zeta_d + zeta_d^-1)`
    RealCyclotomic(u64),
    /// `Q(zeta_d - zeta_d^-1)`
    ImaginaryCyclotomic(u64),
    /// `Q(sqrt(m))`, `m` squarefree and not 0 or 1
    Quadratic(i64),
    /// `Q(sqrt(q*))` for `q = p^n`, `p` odd
    SqrtQStar { p: u64, n: u32 },
}

/// Explicit cyclotomic generators of a named field.
pub fn named_generators(spec: &NamedField) -> Result<Vec<Cyclotomic>> {
    let root = |d: u64, e: i64| Cyclotomic::try_root(d, e);
    Ok(match *spec {
        NamedField::Rationals => vec![],
        NamedField::GaussianRationals => vec![root(4, 1)?],
        NamedField::Cyclotomic(d) => vec![root(d, 1)?],
        NamedField::RealCyclotomic(d) => vec![&root(d, 1)? + &root(d, -1)?],
        NamedField::ImaginaryCyclotomic(d) => vec![&root(d, 1)? - &root(d, -1)?],
        NamedField::Quadratic(m) => vec![sqrt_of_squarefree(m)?],
        NamedField::SqrtQStar { p, n } => vec![sqrt_qstar_element(p, n)?],
    })
}

pub fn named_field(spec: &NamedField) -> Result<FieldDescriptor> {
    field_of(&named_generators(spec)?)
}

/// An element whose square is `m`, built from prime Gauss sums and `zeta_8`.
fn sqrt_of_squarefree(m: i64) -> Result<Cyclotomic> {
    if m == 1 || !is_squarefree(m) {
        return Err(Error::NotSquarefree(m));
    }
    let mut acc = Cyclotomic::one(1);
    let mut covered: i64 = 1;
    for (p, _) in factorize(m.unsigned_abs()) {
        if p == 2 {
            continue;
        }
        acc = &acc * &sqrt_qstar_element(p, 1)?;
        covered *= qstar(p);
    }
    let rest = m / covered;
    let z8 = |e| Cyclotomic::root(8, e);
    let extra = match rest {
        1 => None,
        -1 => Some(Cyclotomic::root(4, 1)),
        2 => Some(&z8(1) + &z8(-1)),
        -2 => Some(&z8(1) + &z8(3)),
        _ => unreachable!("squarefree quotient of odd part"),
    };
    if let Some(e) = extra {
        acc = &acc * &e;
    }
    debug_assert_eq!(&acc * &acc, Cyclotomic::integer(acc.level(), m));
    Ok(acc)
}
