//! Per-level data for `Q(zeta_n)`: the cyclotomic polynomial and, for small
//! levels, a table of reduced powers of `zeta_n`.
//!
//! Everything here works on integer coefficient vectors. Rational inputs are
//! handled by the callers, which clear denominators first.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{divisors, mobius, totient};

/// Power tables are kept only while `n * phi(n)` stays below this.
const POWER_TABLE_LIMIT: u64 = 1 << 22;

pub(crate) struct LevelData {
    pub n: u64,
    pub phi: usize,
    /// Monic `Phi_n`, constant term first, length `phi + 1`.
    pub cyclo: Vec<i64>,
    /// Row `e` holds the canonical coefficients of `zeta_n^e`, `0 <= e < n`.
    powers: Option<Vec<i64>>,
}

static CACHE: OnceLock<RwLock<HashMap<u64, Arc<LevelData>>>> = OnceLock::new();

/// Cached data for level `n`. The caller is responsible for the level guard.
pub(crate) fn level_data(n: u64) -> Arc<LevelData> {
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(ld) = cache.read().unwrap().get(&n) {
        return ld.clone();
    }
    let ld = Arc::new(LevelData::build(n));
    cache.write().unwrap().entry(n).or_insert(ld).clone()
}

/// `Phi_n` via the Moebius product `prod_{d | n} (x^d - 1)^{mu(n/d)}`.
pub(crate) fn cyclotomic_poly_i128(n: u64) -> Vec<i128> {
    let mut num: Vec<i128> = vec![1];
    let mut dens = Vec::new();
    for d in divisors(n) {
        match mobius(n / d) {
            1 => {
                let d = d as usize;
                let mut next = vec![0i128; num.len() + d];
                for (i, &c) in num.iter().enumerate() {
                    next[i + d] += c;
                    next[i] -= c;
                }
                num = next;
            }
            -1 => dens.push(d as usize),
            _ => {}
        }
    }
    for d in dens {
        // num = quot * (x^d - 1)  =>  quot[i] = quot[i - d] - num[i]
        let len = num.len() - d;
        let mut quot = vec![0i128; len];
        for i in 0..len {
            let prev = if i >= d { quot[i - d] } else { 0 };
            quot[i] = prev - num[i];
        }
        num = quot;
    }
    num
}

impl LevelData {
    fn build(n: u64) -> Self {
        let phi = totient(n) as usize;
        let cyclo: Vec<i64> = cyclotomic_poly_i128(n)
            .into_iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
            .collect();
        debug_assert_eq!(cyclo.len(), phi + 1);
        let powers = if n.saturating_mul(phi as u64) <= POWER_TABLE_LIMIT {
            Self::power_table(n, phi, &cyclo)
        } else {
            None
        };
        LevelData { n, phi, cyclo, powers }
    }

    fn power_table(n: u64, phi: usize, cyclo: &[i64]) -> Option<Vec<i64>> {
        let n = n as usize;
        let mut table = vec![0i64; n * phi];
        let mut row = vec![0i64; phi];
        row[0] = 1;
        for e in 0..n {
            table[e * phi..(e + 1) * phi].copy_from_slice(&row);
            // multiply by x and reduce the overflow term with Phi_n
            let top = row[phi - 1];
            for j in (1..phi).rev() {
                row[j] = row[j - 1].checked_sub(top.checked_mul(cyclo[j])?)?;
            }
            row[0] = top.checked_mul(cyclo[0])?.checked_neg()?;
        }
        Some(table)
    }

    fn power_row(&self, e: u64) -> Option<&[i64]> {
        self.powers.as_ref().map(|t| {
            let e = (e % self.n) as usize;
            &t[e * self.phi..(e + 1) * self.phi]
        })
    }

    /// Canonical coefficients of `sum c * zeta^e`; `None` on i128 overflow.
    pub fn reduce_i128(&self, terms: &[(u64, i128)]) -> Option<Vec<i128>> {
        let mut out = vec![0i128; self.phi];
        if self.powers.is_some() {
            for &(e, c) in terms {
                if c == 0 {
                    continue;
                }
                let row = self.power_row(e).unwrap();
                for (o, &r) in out.iter_mut().zip(row) {
                    if r != 0 {
                        *o = o.checked_add(c.checked_mul(r as i128)?)?;
                    }
                }
            }
            return Some(out);
        }
        let n = self.n as usize;
        let mut dense = vec![0i128; n];
        for &(e, c) in terms {
            let slot = &mut dense[(e % self.n) as usize];
            *slot = slot.checked_add(c)?;
        }
        for e in (self.phi..n).rev() {
            let c = dense[e];
            if c == 0 {
                continue;
            }
            dense[e] = 0;
            let base = e - self.phi;
            for j in 0..self.phi {
                let k = self.cyclo[j];
                if k != 0 {
                    dense[base + j] = dense[base + j].checked_sub(c.checked_mul(k as i128)?)?;
                }
            }
        }
        dense.truncate(self.phi);
        out.copy_from_slice(&dense);
        Some(out)
    }

    /// Arbitrary-precision counterpart of [`Self::reduce_i128`].
    pub fn reduce_big(&self, terms: &[(u64, BigInt)]) -> Vec<BigInt> {
        let n = self.n as usize;
        let mut dense = vec![BigInt::zero(); n];
        for (e, c) in terms {
            dense[(*e % self.n) as usize] += c;
        }
        for e in (self.phi..n).rev() {
            if dense[e].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut dense[e]);
            let base = e - self.phi;
            for j in 0..self.phi {
                let k = self.cyclo[j];
                if k != 0 {
                    dense[base + j] -= &c * k;
                }
            }
        }
        dense.truncate(self.phi);
        dense
    }

    /// Integer reduction with automatic fallback to big integers.
    pub fn reduce_int(&self, terms: &[(u64, BigInt)]) -> Vec<BigInt> {
        let small: Option<Vec<(u64, i128)>> = terms
            .iter()
            .map(|(e, c)| c.to_i128().map(|c| (*e, c)))
            .collect();
        if let Some(small) = small {
            if let Some(out) = self.reduce_i128(&small) {
                return out.into_iter().map(BigInt::from).collect();
            }
        }
        self.reduce_big(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly_i128(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly_i128(2), vec![1, 1]);
        assert_eq!(cyclotomic_poly_i128(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly_i128(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn power_table_and_long_division_agree() {
        for n in [1u64, 2, 7, 12, 15, 30, 45, 60] {
            let ld = level_data(n);
            let plain = LevelData {
                n,
                phi: ld.phi,
                cyclo: ld.cyclo.clone(),
                powers: None,
            };
            for e in 0..2 * n {
                let terms = [(e, 3i128), (e * 7 + 1, -2)];
                assert_eq!(ld.reduce_i128(&terms), plain.reduce_i128(&terms), "n={n} e={e}");
            }
        }
    }
}
