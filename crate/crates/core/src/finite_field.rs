//! Arithmetic in `F_q = F_p[x]/(f)`.
//!
//! Elements are packed integers `a_0 + a_1 p + ... + a_{n-1} p^{n-1}` for the
//! polynomial `a_0 + a_1 x + ...`, so the encoding order is also the
//! enumeration order used to pick the generator. Contexts are deterministic:
//! the modulus is the lexicographically smallest monic irreducible (constant
//! term compared first) and the generator is the first primitive element.

use std::fmt;

use crate::arith::{divisors, is_prime, mobius, prime_divisors};
use crate::config::{bounds, check};
use crate::error::{Error, Result};

/// Log/exp tables are built up to this field size.
const LOG_TABLE_LIMIT: u64 = 1 << 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem(u64);

impl FqElem {
    pub fn encoding(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone)]
pub struct FqCtx {
    p: u64,
    n: u32,
    q: u64,
    /// Monic modulus over `F_p`, constant term first.
    modulus: Vec<u64>,
    generator: FqElem,
    exp: Option<Vec<FqElem>>,
    log: Option<Vec<u64>>,
    group_primes: Vec<u64>,
}

impl fmt::Debug for FqCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FqCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

/// `F_{p^n}` with the default (first) primitive element as generator.
pub fn make_field(p: u64, n: u32) -> Result<FqCtx> {
    make_field_with_generator(p, n, 0)
}

/// `F_q` for a prime power literal `q`.
pub fn make_field_q(q: u64) -> Result<FqCtx> {
    let (p, n) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p, n)
}

/// Like [`make_field`], but the generator is the primitive element of the
/// given rank in enumeration order (rank 0 is the default).
pub fn make_field_with_generator(p: u64, n: u32, rank: usize) -> Result<FqCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    let q = p
        .checked_pow(n)
        .ok_or(Error::BoundExceeded { what: "field size", value: u64::MAX, max: bounds().max_field_size })?;
    check("field size", q, bounds().max_field_size)?;
    let modulus = if n == 1 {
        vec![0, 1]
    } else {
        smallest_irreducible_over_prime(p, n as usize)
    };
    let mut ctx = FqCtx {
        p,
        n,
        q,
        modulus,
        generator: FqElem(if q == 2 { 1 } else { 0 }),
        exp: None,
        log: None,
        group_primes: prime_divisors(q - 1),
    };
    let gen = ctx
        .nonzero()
        .filter(|&a| ctx.is_primitive(a))
        .nth(rank)
        .ok_or_else(|| Error::InvalidArgument(format!("F_{q} has fewer than {} primitive elements", rank + 1)))?;
    ctx.generator = gen;
    if q <= LOG_TABLE_LIMIT {
        ctx.build_tables();
    }
    Ok(ctx)
}

/// Lex-smallest monic irreducible of degree `n` over `F_p`, constant term first.
fn smallest_irreducible_over_prime(p: u64, n: usize) -> Vec<u64> {
    let base = make_field(p, 1).expect("prime field");
    let total = p.pow(n as u32);
    for idx in 0..total {
        // a_0 is the most significant digit of idx
        let mut coeffs = vec![0u64; n + 1];
        let mut rest = idx;
        for i in (0..n).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[n] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let f = FqPoly::new(coeffs.iter().map(|&c| FqElem(c)).collect());
        if is_irreducible(&f, &base) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FqCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FqElem {
        self.generator
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        FqElem(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> FqElem {
        FqElem(k.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FqElem {
        assert!(coeffs.len() <= self.n as usize, "too many coefficients");
        FqElem(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p))
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut rest = a.0;
        for _ in 0..self.n {
            out.push(rest % self.p);
            rest /= self.p;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        if self.n == 1 {
            return FqElem((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FqElem(out)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        if let (Some(exp), Some(log)) = (&self.exp, &self.log) {
            let k = (log[a.0 as usize] + log[b.0 as usize]) % (self.q - 1);
            return exp[k as usize];
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: FqElem, b: FqElem) -> FqElem {
        let n = self.n as usize;
        let p = self.p;
        let x = self.coeffs(a);
        let y = self.coeffs(b);
        let mut prod = vec![0u64; 2 * n - 1];
        for (i, &xi) in x.iter().enumerate().filter(|(_, c)| **c != 0) {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % p;
            }
        }
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &m) in self.modulus[..n].iter().enumerate() {
                let t = prod[k - n + j] + (p - c) * m % p;
                prod[k - n + j] = t % p;
            }
        }
        self.from_coeffs(&prod[..n])
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        if e == 0 {
            return FqElem(1);
        }
        if a.0 == 0 {
            return a;
        }
        if let (Some(exp), Some(log)) = (&self.exp, &self.log) {
            let k = (log[a.0 as usize] as u128 * e as u128) % (self.q - 1) as u128;
            return exp[k as usize];
        }
        let mut acc = FqElem(1);
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            None
        } else {
            Some(self.pow(a, self.q - 2))
        }
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Option<FqElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p)
    }

    /// `generator^k`.
    pub fn exp(&self, k: u64) -> FqElem {
        match &self.exp {
            Some(t) => t[(k % (self.q - 1)) as usize],
            None => self.pow(self.generator, k % (self.q - 1)),
        }
    }

    /// Discrete logarithm to the generator; `None` for zero.
    pub fn log(&self, a: FqElem) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.log {
            return Some(t[a.0 as usize]);
        }
        let mut cur = FqElem(1);
        for k in 0..self.q - 1 {
            if cur == a {
                return Some(k);
            }
            cur = self.mul_slow(cur, self.generator);
        }
        None
    }

    fn is_primitive(&self, a: FqElem) -> bool {
        self.group_primes
            .iter()
            .all(|&r| self.pow(a, (self.q - 1) / r) != FqElem(1))
    }

    fn build_tables(&mut self) {
        let size = self.q as usize;
        let mut exp = Vec::with_capacity(size - 1);
        let mut log = vec![0u64; size];
        let mut cur = FqElem(1);
        for k in 0..self.q - 1 {
            exp.push(cur);
            log[cur.0 as usize] = k;
            cur = self.mul_slow(cur, self.generator);
        }
        debug_assert_eq!(cur, FqElem(1));
        self.exp = Some(exp);
        self.log = Some(log);
    }

    /// Multiplicative order of a non-zero element.
    pub fn elem_order(&self, a: FqElem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::InvalidArgument("zero has no multiplicative order".into()));
        }
        if let Some(k) = self.log.as_ref().map(|t| t[a.0 as usize]) {
            return Ok((self.q - 1) / crate::arith::gcd(k, self.q - 1));
        }
        let mut ord = self.q - 1;
        for &r in &self.group_primes {
            while ord % r == 0 && self.pow(a, ord / r) == FqElem(1) {
                ord /= r;
            }
        }
        Ok(ord)
    }

    fn check_subfield(&self, m: u32) -> Result<()> {
        if m == 0 || self.n % m != 0 {
            return Err(Error::DegreeDoesNotDivide { degree: m as u64, order: self.n as u64 });
        }
        Ok(())
    }

    /// Conjugates `a^{p^{m i}}`, `0 <= i < n/m`.
    fn conjugates(&self, a: FqElem, m: u32) -> Vec<FqElem> {
        let step = self.p.pow(m);
        let mut out = Vec::with_capacity((self.n / m) as usize);
        let mut cur = a;
        for _ in 0..self.n / m {
            out.push(cur);
            cur = self.pow(cur, step);
        }
        out
    }

    /// Trace down to `F_{p^m}`.
    pub fn trace(&self, a: FqElem, m: u32) -> Result<FqElem> {
        self.check_subfield(m)?;
        Ok(self
            .conjugates(a, m)
            .into_iter()
            .fold(FqElem(0), |acc, c| self.add(acc, c)))
    }

    /// Norm down to `F_{p^m}`.
    pub fn norm(&self, a: FqElem, m: u32) -> Result<FqElem> {
        self.check_subfield(m)?;
        Ok(self
            .conjugates(a, m)
            .into_iter()
            .fold(FqElem(1), |acc, c| self.mul(acc, c)))
    }

    pub fn is_in_subfield(&self, a: FqElem, m: u32) -> bool {
        self.n % m == 0 && self.pow(a, self.p.pow(m)) == a
    }

    /// Value in `0..p` when `a` lies in the prime field.
    pub fn prime_field_value(&self, a: FqElem) -> Option<u64> {
        (a.0 < self.p).then_some(a.0)
    }

    /// Quadratic character `a^{(q-1)/2}` as `+1` or `-1`.
    pub fn quadratic_character(&self, a: FqElem) -> Result<i8> {
        if self.p == 2 {
            return Err(Error::InvalidArgument("quadratic character needs odd q".into()));
        }
        if a.0 == 0 {
            return Err(Error::InvalidArgument("quadratic character of zero".into()));
        }
        Ok(if self.pow(a, (self.q - 1) / 2) == FqElem(1) { 1 } else { -1 })
    }
}

/// Polynomial over `F_q`, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FqPoly {
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn x() -> Self {
        FqPoly { coeffs: vec![FqElem(0), FqElem(1)] }
    }

    pub fn constant(c: FqElem) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_t(&self) -> bool {
        self.coeffs == [FqElem(0), FqElem(1)]
    }

    fn sub(&self, other: &Self, ctx: &FqCtx) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[FqElem], i: usize| v.get(i).copied().unwrap_or_default();
        Self::new(
            (0..len)
                .map(|i| ctx.sub(get(&self.coeffs, i), get(&other.coeffs, i)))
                .collect(),
        )
    }

    fn mul(&self, other: &Self, ctx: &FqCtx) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![FqElem(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Self::new(out)
    }

    fn rem(&self, m: &Self, ctx: &FqCtx) -> Self {
        assert!(!m.is_zero(), "division by zero polynomial");
        let dm = m.coeffs.len() - 1;
        let lead_inv = ctx.inv(m.coeffs[dm]).unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let top = r.len() - 1;
            let c = ctx.mul(r[top], lead_inv);
            if !c.is_zero() {
                for (j, &mc) in m.coeffs.iter().enumerate() {
                    let idx = top - dm + j;
                    r[idx] = ctx.sub(r[idx], ctx.mul(c, mc));
                }
            }
            r.pop();
        }
        Self::new(r)
    }

    fn gcd(&self, other: &Self, ctx: &FqCtx) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, ctx);
            a = b;
            b = r;
        }
        a
    }

    fn mulmod(&self, other: &Self, m: &Self, ctx: &FqCtx) -> Self {
        self.mul(other, ctx).rem(m, ctx)
    }

    fn powmod(&self, mut e: u64, m: &Self, ctx: &FqCtx) -> Self {
        let mut acc = Self::constant(FqElem(1)).rem(m, ctx);
        let mut base = self.rem(m, ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m, ctx);
            }
            base = base.mulmod(&base, m, ctx);
            e >>= 1;
        }
        acc
    }

    /// `x^{q^k} mod m`.
    fn frobenius_power_of_x(k: u32, m: &Self, ctx: &FqCtx) -> Self {
        let mut h = Self::x().rem(m, ctx);
        for _ in 0..k {
            h = h.powmod(ctx.q(), m, ctx);
        }
        h
    }

    pub fn render(&self, ctx: &FqCtx) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = if ctx.n() == 1 {
                c.encoding().to_string()
            } else {
                format!("#{}", c.encoding())
            };
            parts.push(match (i, c.encoding()) {
                (0, _) => coef,
                (1, 1) => "t".to_string(),
                (1, _) => format!("{coef}t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{coef}t^{i}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Rabin's irreducibility test for a monic polynomial over `F_q`.
pub fn is_irreducible(f: &FqPoly, ctx: &FqCtx) -> bool {
    let d = f.degree();
    if d < 1 {
        return false;
    }
    let d = d as u32;
    let x = FqPoly::x();
    if !FqPoly::frobenius_power_of_x(d, f, ctx).sub(&x.rem(f, ctx), ctx).is_zero() {
        return false;
    }
    prime_divisors(d as u64).into_iter().all(|r| {
        let h = FqPoly::frobenius_power_of_x(d / r as u32, f, ctx).sub(&x, ctx);
        h.gcd(f, ctx).degree() == 0
    })
}

/// All monic irreducible polynomials of degree `d` over `F_q`, `t` included.
pub fn irreducibles(d: u32, ctx: &FqCtx) -> Result<Vec<FqPoly>> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let q = ctx.q();
    let total = q
        .checked_pow(d)
        .ok_or(Error::BoundExceeded { what: "q^d", value: u64::MAX, max: bounds().max_field_size })?;
    check("q^d", total, bounds().max_field_size)?;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        let mut rest = idx;
        for _ in 0..d {
            coeffs.push(FqElem(rest % q));
            rest /= q;
        }
        coeffs.push(FqElem(1));
        let f = FqPoly::new(coeffs);
        if is_irreducible(&f, ctx) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Number of monic irreducibles of degree `d` over `F_q` by the Moebius formula.
pub fn irreducible_count(q: u64, d: u32) -> u64 {
    let s: i128 = divisors(d as u64)
        .into_iter()
        .map(|e| mobius(e) as i128 * (q as i128).pow(d / e as u32))
        .sum();
    (s / d as i128) as u64
}

/// Multiplicative order of a root of the irreducible `f != t`, that is the
/// order of `t` in `F_q[t]/(f)`.
pub fn root_order(f: &FqPoly, ctx: &FqCtx) -> Result<u64> {
    if f.is_t() || f.degree() < 1 {
        return Err(Error::InvalidArgument("root order needs an irreducible other than t".into()));
    }
    let group = ctx.q().pow(f.degree() as u32) - 1;
    let one = FqPoly::constant(FqElem(1));
    let t = FqPoly::x();
    let mut ord = group;
    for r in prime_divisors(group) {
        while ord % r == 0 && t.powmod(ord / r, f, ctx) == one {
            ord /= r;
        }
    }
    Ok(ord)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_moduli() {
        assert_eq!(make_field(2, 1).unwrap().q(), 2);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert!(make_field(4, 1).is_err());
    }

    #[test]
    fn orders() {
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.elem_order(f9.one()).unwrap(), 1);
        assert_eq!(f9.elem_order(f9.generator()).unwrap(), 8);
        let f7 = make_field(7, 1).unwrap();
        let e2 = f7.pow(f7.generator(), 2);
        assert_eq!(f7.elem_order(e2).unwrap(), 3);
    }

    #[test]
    fn quadratic_character_examples() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.quadratic_character(f7.one()).unwrap(), 1);
        assert_eq!(f7.quadratic_character(f7.generator()).unwrap(), -1);
        assert_eq!(f7.quadratic_character(f7.from_int(-1)).unwrap(), -1);
    }

    #[test]
    fn norm_is_power() {
        let q = 5u64;
        let f = make_field(5, 2).unwrap();
        for a in f.nonzero() {
            assert_eq!(f.norm(a, 1).unwrap(), f.pow(a, q + 1));
        }
        assert_eq!(f.trace(f.zero(), 1).unwrap(), f.zero());
    }

    #[test]
    fn slow_and_table_multiplication_agree() {
        let f = make_field(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), if a.is_zero() || b.is_zero() { f.zero() } else { f.mul_slow(a, b) });
            }
        }
    }

    #[test]
    fn irreducible_examples() {
        let f3 = make_field(3, 1).unwrap();
        let lin: Vec<_> = irreducibles(1, &f3).unwrap().into_iter().filter(|f| !f.is_t()).collect();
        assert_eq!(lin.len(), 2);
        assert_eq!(irreducibles(2, &f3).unwrap().len(), 3);
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(irreducibles(3, &f2).unwrap().len(), 2);
        assert_eq!(irreducible_count(4, 2), 6);
    }

    #[test]
    fn root_orders() {
        let f2 = make_field(2, 1).unwrap();
        for f in irreducibles(3, &f2).unwrap() {
            assert_eq!(root_order(&f, &f2).unwrap(), 7);
        }
        let quad = irreducibles(2, &f2).unwrap();
        assert_eq!(root_order(&quad[0], &f2).unwrap(), 3);
    }

    #[test]
    fn alternate_generator() {
        let a = make_field(5, 2).unwrap();
        let b = make_field_with_generator(5, 2, 3).unwrap();
        assert_ne!(a.generator(), b.generator());
        assert_eq!(b.elem_order(b.generator()).unwrap(), 24);
    }
}
