//! Elements of cyclotomic fields `Q(zeta_n)`.
//!
//! A [`Cyclotomic`] is stored in the power basis `1, zeta_n, ..., zeta_n^{phi(n)-1}`
//! after reduction modulo `Phi_n`, which is a unique normal form at a fixed
//! level. Binary operations unify levels at the lcm and never lower the result
//! on their own; [`Cyclotomic::change_level`] and [`Cyclotomic::lowered`] do that
//! explicitly.
//!
//! [`RootSum`] is the group-ring form `sum c_e zeta_n^e` with exponents taken
//! mod `n`. It is not canonical, but products and Galois actions on it are cheap,
//! so character values are built in this form and reduced once.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::level::level_data;
use super::rational::Rational;
use crate::arith::{divisors, gcd, lcm, rem_euclid, totient, units};
use crate::config::check_level;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Cyclotomic {
    level: u64,
    coeffs: Vec<Rational>,
}

/// Returns the common denominator and the scaled integer numerators.
pub(crate) fn clear_denominators<'a>(
    coeffs: impl IntoIterator<Item = &'a Rational>,
) -> (BigInt, Vec<BigInt>) {
    let coeffs: Vec<&Rational> = coeffs.into_iter().collect();
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (den, nums)
}

impl Cyclotomic {
    /// Reduces `sum c * zeta_level^e`. The level must already be checked.
    pub(crate) fn from_terms_unchecked<'a>(
        level: u64,
        terms: impl IntoIterator<Item = (u64, &'a Rational)>,
    ) -> Self {
        let (exps, coeffs): (Vec<u64>, Vec<&Rational>) =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).unzip();
        let (den, nums) = clear_denominators(coeffs);
        let int_terms: Vec<(u64, BigInt)> = exps.into_iter().zip(nums).collect();
        Self::from_int_terms(level, &den, &int_terms)
    }

    fn from_int_terms(level: u64, den: &BigInt, terms: &[(u64, BigInt)]) -> Self {
        let ld = level_data(level);
        let reduced = ld.reduce_int(terms);
        let coeffs = reduced
            .into_iter()
            .map(|c| Rational::from_bigints(c, den.clone()))
            .collect();
        Cyclotomic { level, coeffs }
    }

    pub fn try_from_terms<'a>(
        level: u64,
        terms: impl IntoIterator<Item = (u64, &'a Rational)>,
    ) -> Result<Self> {
        check_level(level)?;
        Ok(Self::from_terms_unchecked(level, terms))
    }

    /// Builds an element from canonical coefficients, checking their number.
    pub fn from_coeffs(level: u64, coeffs: Vec<Rational>) -> Result<Self> {
        check_level(level)?;
        let phi = totient(level) as usize;
        if coeffs.len() != phi {
            return Err(Error::InvalidArgument(format!(
                "level {level} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Cyclotomic { level, coeffs })
    }

    pub fn zero(level: u64) -> Self {
        check_level(level).expect("level guard");
        let phi = totient(level) as usize;
        Cyclotomic { level, coeffs: vec![Rational::zero(); phi] }
    }

    pub fn from_rational(level: u64, r: Rational) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = r;
        z
    }

    pub fn integer(level: u64, n: i64) -> Self {
        Self::from_rational(level, Rational::integer(n))
    }

    pub fn one(level: u64) -> Self {
        Self::integer(level, 1)
    }

    /// `zeta_n^e`, exponent reduced mod `n`.
    pub fn try_root(n: u64, e: i64) -> Result<Self> {
        check_level(n)?;
        let e = rem_euclid(e, n);
        Ok(Self::from_terms_unchecked(n, [(e, &Rational::one())]))
    }

    /// Like [`Self::try_root`] but panics when the level guard trips.
    pub fn root(n: u64, e: i64) -> Self {
        Self::try_root(n, e).unwrap_or_else(|err| panic!("{err}"))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Non-zero `(exponent, coefficient)` pairs of the canonical form.
    pub fn exponent_terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64, c))
    }

    pub fn to_root_sum(&self) -> RootSum {
        let mut out = RootSum::zero(self.level);
        for (e, c) in self.exponent_terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    /// Same number at level `m`, where `level | m`.
    pub fn lift(&self, m: u64) -> Result<Self> {
        if m % self.level != 0 {
            return Err(Error::InvalidArgument(format!(
                "cannot lift level {} to {m}",
                self.level
            )));
        }
        if m == self.level {
            return Ok(self.clone());
        }
        check_level(m)?;
        let k = m / self.level;
        Ok(Self::from_terms_unchecked(
            m,
            self.exponent_terms().map(|(e, c)| (e * k, c)),
        ))
    }

    /// Moves the element to level `m`, lifting or lowering as needed.
    ///
    /// Lowering solves for coordinates in the power basis of `Q(zeta_m)`
    /// and fails if the element is not in that subfield.
    pub fn change_level(&self, m: u64) -> Result<Self> {
        check_level(m)?;
        if m % self.level == 0 {
            return self.lift(m);
        }
        let big = lcm(self.level, m);
        check_level(big)?;
        let target = self.lift(big)?;
        let k = big / m;
        let phi_m = totient(m) as usize;
        let columns: Vec<Cyclotomic> = (0..phi_m as u64)
            .map(|i| Self::from_terms_unchecked(big, [(i * k, &Rational::one())]))
            .collect();
        let solution = solve_columns(&columns, &target).ok_or(Error::NotInSubfield {
            from: self.level,
            to: m,
        })?;
        Ok(Cyclotomic { level: m, coeffs: solution })
    }

    /// Image under `zeta_n -> zeta_n^s`.
    pub fn galois(&self, s: i64) -> Result<Self> {
        let n = self.level;
        let s_red = rem_euclid(s, n);
        if gcd(s_red, n) != 1 && n != 1 {
            return Err(Error::NotAUnit { s, level: n });
        }
        Ok(self.galois_unchecked(s_red))
    }

    pub(crate) fn galois_unchecked(&self, s: u64) -> Self {
        let n = self.level;
        Self::from_terms_unchecked(
            n,
            self.exponent_terms()
                .map(|(e, c)| (((e as u128 * s as u128) % n as u128) as u64, c)),
        )
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois_unchecked(rem_euclid(-1, self.level))
    }

    /// Smallest level at which this number can be written.
    pub fn minimal_level(&self) -> u64 {
        let n = self.level;
        for d in divisors(n) {
            if d == n {
                return n;
            }
            let fixed = units(n)
                .into_iter()
                .filter(|s| s % d == 1 % d)
                .all(|s| self.galois_unchecked(s) == *self);
            if fixed && self.change_level(d).is_ok() {
                return d;
            }
        }
        n
    }

    /// Copy of the element at its minimal level.
    pub fn lowered(&self) -> Self {
        let m = self.minimal_level();
        self.change_level(m).expect("minimal level is representable")
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one(self.level);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.level == b.level {
            return (a.clone(), b.clone());
        }
        let l = lcm(a.level, b.level);
        let lift = |x: &Self| x.lift(l).unwrap_or_else(|err| panic!("{err}"));
        (lift(a), lift(b))
    }

    fn mul_same_level(&self, other: &Self) -> Self {
        let n = self.level;
        let (da, na) = clear_denominators(&self.coeffs);
        let (db, nb) = clear_denominators(&other.coeffs);
        let mut conv: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (i, x) in na.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in nb.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                *conv.entry(((i + j) as u64) % n).or_default() += x * y;
            }
        }
        let terms: Vec<(u64, BigInt)> = conv.into_iter().collect();
        Self::from_int_terms(n, &(da * db), &terms)
    }

    /// Human-readable form such as `-1 + 2·ζ_12^5`.
    pub fn pretty(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.exponent_terms() {
            let mono = match e {
                0 => String::new(),
                1 => format!("ζ_{}", self.level),
                _ => format!("ζ_{}^{}", self.level, e),
            };
            let abs = c.abs();
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono
            } else {
                format!("{abs}·{mono}")
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{sign} {body}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Solves `sum y_i * columns[i] = target` over Q, all at one level.
fn solve_columns(columns: &[Cyclotomic], target: &Cyclotomic) -> Option<Vec<Rational>> {
    let rows = target.coeffs.len();
    let cols = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c.coeffs[r].clone()).collect();
            row.push(target.coeffs[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut y = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        y[c] = m[i][cols].clone();
    }
    Some(y)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.level, self.pretty())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::unify(self, rhs);
        Cyclotomic {
            level: a.level,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::unify(self, rhs);
        Cyclotomic {
            level: a.level,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = Cyclotomic::unify(self, rhs);
        a.mul_same_level(&b)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(Cyclotomic);
owned_ops!(RootSum);

/// Sparse group-ring element `sum c_e zeta_n^e`, exponents mod `n`.
#[derive(Clone, Debug)]
pub struct RootSum {
    level: u64,
    terms: BTreeMap<u64, Rational>,
}

impl RootSum {
    pub fn zero(level: u64) -> Self {
        assert!(level > 0, "level must be positive");
        RootSum { level, terms: BTreeMap::new() }
    }

    pub fn root(level: u64, e: i64) -> Self {
        Self::term(level, e, Rational::one())
    }

    pub fn term(level: u64, e: i64, c: Rational) -> Self {
        let mut out = Self::zero(level);
        out.add_term(rem_euclid(e, level), c);
        out
    }

    pub fn scalar(level: u64, c: Rational) -> Self {
        Self::term(level, 0, c)
    }

    pub fn integer(level: u64, n: i64) -> Self {
        Self::scalar(level, Rational::integer(n))
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when no terms remain. A non-empty sum may still equal zero.
    pub fn is_trivially_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = e % self.level;
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Rewrites the sum at level `m`, a multiple of the current level.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.level == 0, "cannot lift level {} to {m}", self.level);
        let k = m / self.level;
        RootSum {
            level: m,
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Smallest level carrying the same exponent pattern, from the gcd of exponents.
    pub fn compact(&self) -> Self {
        let g = self.terms.keys().fold(self.level, |g, &e| gcd(g, e));
        if g <= 1 {
            return self.clone();
        }
        RootSum {
            level: self.level / g,
            terms: self.terms.iter().map(|(e, c)| (e / g, c.clone())).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.level);
        for (e, c) in self.terms() {
            out.add_term(e, c * r);
        }
        out
    }

    /// Applies `zeta_n -> zeta_n^s` on exponents.
    pub fn galois(&self, s: i64) -> Self {
        let n = self.level;
        let s = rem_euclid(s, n) as u128;
        let mut out = Self::zero(n);
        for (e, c) in self.terms() {
            out.add_term(((e as u128 * s) % n as u128) as u64, c.clone());
        }
        out
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn try_to_cyclotomic(&self) -> Result<Cyclotomic> {
        Cyclotomic::try_from_terms(self.level, self.terms())
    }

    /// Canonical form; panics if the level guard trips.
    pub fn to_cyclotomic(&self) -> Cyclotomic {
        self.try_to_cyclotomic().unwrap_or_else(|err| panic!("{err}"))
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.level == b.level {
            return (a.clone(), b.clone());
        }
        let l = lcm(a.level, b.level);
        (a.lift(l), b.lift(l))
    }
}

impl Add for &RootSum {
    type Output = RootSum;
    fn add(self, rhs: &RootSum) -> RootSum {
        let (mut a, b) = RootSum::unify(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl Sub for &RootSum {
    type Output = RootSum;
    fn sub(self, rhs: &RootSum) -> RootSum {
        self + &(-rhs)
    }
}

impl Mul for &RootSum {
    type Output = RootSum;
    fn mul(self, rhs: &RootSum) -> RootSum {
        let (a, b) = RootSum::unify(self, rhs);
        let mut out = RootSum::zero(a.level);
        for (e, c) in a.terms() {
            for (f, d) in b.terms() {
                out.add_term((e + f) % a.level, c * d);
            }
        }
        out
    }
}

impl Neg for &RootSum {
    type Output = RootSum;
    fn neg(self) -> RootSum {
        RootSum {
            level: self.level,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, e: i64) -> Cyclotomic {
        Cyclotomic::root(n, e)
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(z(4, 2), Cyclotomic::integer(4, -1));
        assert_eq!(z(1, 0), Cyclotomic::one(1));
        assert_eq!(&z(3, 1) + &z(3, 2), Cyclotomic::integer(3, -1));
        assert_eq!(&z(8, 1) * &z(8, 7), Cyclotomic::one(8));
        let s = (1..5).fold(Cyclotomic::zero(5), |acc, e| &acc + &z(5, e));
        assert_eq!(s, Cyclotomic::integer(5, -1));
    }

    #[test]
    fn galois_examples() {
        let a = &z(4, 1) + &Cyclotomic::from_rational(4, Rational::new(1, 3));
        assert_eq!(a.galois(1).unwrap(), a);
        assert_eq!(z(4, 1).galois(3).unwrap(), -&z(4, 1));
        let c = &z(9, 1) + &z(9, -1);
        assert_eq!(c.galois(2).unwrap(), &z(9, 2) + &z(9, -2));
        assert!(z(9, 1).galois(3).is_err());
    }

    #[test]
    fn mixed_levels_unify() {
        // zeta_3 = zeta_12^4, -1 = zeta_4^2
        assert_eq!(z(3, 1), z(12, 4));
        assert_eq!((&z(3, 1) * &z(4, 1)).level(), 12);
        assert_eq!(&z(3, 1) * &z(4, 1), z(12, 7));
    }

    #[test]
    fn lowering() {
        let x = z(12, 4);
        assert_eq!(x.change_level(3).unwrap(), z(3, 1));
        assert_eq!(x.minimal_level(), 3);
        assert!(z(12, 1).change_level(4).is_err());
        // Q(zeta_6) = Q(zeta_3)
        assert_eq!(z(6, 1).minimal_level(), 3);
        assert_eq!(z(6, 1).change_level(3).unwrap(), -&z(3, 2));
        assert_eq!(Cyclotomic::integer(30, 7).minimal_level(), 1);
    }

    #[test]
    fn root_sum_roundtrip() {
        let r = &RootSum::root(12, 5) + &RootSum::term(12, 7, Rational::new(-1, 2));
        let c = r.to_cyclotomic();
        assert_eq!(c.to_root_sum().to_cyclotomic(), c);
        assert_eq!(RootSum::root(12, 4).compact().level(), 3);
    }

    #[test]
    fn pretty_form() {
        assert_eq!(z(4, 2).pretty(), "-1");
        assert_eq!(Cyclotomic::zero(7).pretty(), "0");
        let x = &Cyclotomic::integer(5, 2) - &z(5, 2).scale(&Rational::new(1, 2));
        assert_eq!(x.pretty(), "2 - 1/2·ζ_5^2");
    }
}
