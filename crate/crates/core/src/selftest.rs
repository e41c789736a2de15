//! Invariant suites behind the `selftest` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{divisors, is_prime, units};
use crate::exact::{cyclotomic_polynomial, Cyclotomic, Rational};
use crate::galois::{field_of, field_reduce, qstar, sqrt_qstar_element, stabilizer};
use crate::tables::{CharTable, Group};
use crate::theorems::{verify_with_generator, Claim, Params};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

const SEED: u64 = 0x5eed_cafe;
const LEVELS: [u64; 9] = [3, 5, 7, 8, 9, 12, 15, 20, 24];

fn sample(rng: &mut ChaCha8Rng, n: u64) -> Cyclotomic {
    let terms: Vec<(u64, Rational)> = (0..rng.gen_range(1..5))
        .map(|_| (rng.gen_range(0..n), Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3))))
        .collect();
    Cyclotomic::try_from_terms(n, terms.iter().map(|(e, c)| (*e, c))).expect("small level")
}

fn check(name: &str, cases: usize, failure: Option<String>) -> Check {
    Check { name: name.into(), passed: failure.is_none(), cases, detail: failure }
}

/// `sigma_s` is a ring automorphism, `sigma_s sigma_t = sigma_{st}`, `sigma_{-1}` is conjugation.
pub fn galois_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = 0;
    for n in LEVELS {
        for _ in 0..20 {
            let (a, b) = (sample(&mut rng, n), sample(&mut rng, n));
            let us = units(n);
            let s = us[rng.gen_range(0..us.len())];
            let t = us[rng.gen_range(0..us.len())];
            let g = |x: &Cyclotomic, s: u64| x.galois(s as i64).expect("unit");
            let ok = g(&(&a + &b), s) == &g(&a, s) + &g(&b, s)
                && g(&(&a * &b), s) == &g(&a, s) * &g(&b, s)
                && g(&g(&a, t), s) == g(&a, s * t % n)
                && g(&a, 1) == a
                && a.galois(-1).expect("unit") == a.conj();
            cases += 1;
            if !ok {
                return check("galois action laws", cases, Some(format!("level {n}, s = {s}, t = {t}, a = {a}, b = {b}")));
            }
        }
    }
    check("galois action laws", cases, None)
}

/// `(x^n - 1) / prod_{d | n, d < n} Phi_d` by long division, constant term first.
fn phi_by_division(n: u64, known: &[Vec<i64>]) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let den = &known[d as usize];
        let mut quot = vec![0i64; num.len() - den.len() + 1];
        for i in (0..quot.len()).rev() {
            let c = num[i + den.len() - 1];
            quot[i] = c;
            for (j, &dj) in den.iter().enumerate() {
                num[i + j] -= c * dj;
            }
        }
        debug_assert!(num.iter().all(|&c| c == 0), "division by Phi_{d} leaves a remainder");
        num = quot;
    }
    num
}

pub fn cyclotomic_polynomials(max: u64) -> Check {
    let mut known = vec![vec![]];
    for n in 1..=max {
        let oracle = phi_by_division(n, &known);
        if cyclotomic_polynomial(n) != oracle {
            return check("cyclotomic polynomials vs division", n as usize, Some(format!("n = {n}")));
        }
        known.push(oracle);
    }
    check("cyclotomic polynomials vs division", max as usize, None)
}

pub fn gauss_squares(max_p: u64, max_n: u32) -> Check {
    let mut cases = 0;
    for p in (3..=max_p).filter(|&p| is_prime(p)) {
        for n in 1..=max_n {
            cases += 1;
            let ok = sqrt_qstar_element(p, n)
                .map(|g| &g * &g == Cyclotomic::integer(1, qstar(p.pow(n))))
                .unwrap_or(false);
            if !ok {
                return check("Gauss sum squares", cases, Some(format!("p = {p}, n = {n}")));
            }
        }
    }
    check("Gauss sum squares", cases, None)
}

/// Stabilizers are subgroups fixing every generator; reducing a field's own
/// fixing group, or its preimage at a multiple level, returns the field.
pub fn stabilizers_and_reduction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut cases = 0;
    for n in LEVELS {
        for _ in 0..10 {
            cases += 1;
            let gens: Vec<Cyclotomic> = (0..rng.gen_range(1..3)).map(|_| sample(&mut rng, n)).collect();
            let h = stabilizer(&gens, n).expect("level in bounds");
            let fixes = h.elements().iter().all(|&s| gens.iter().all(|g| g.galois(s as i64).expect("unit") == *g));
            let f = field_of(&gens).expect("level in bounds");
            let again = field_reduce(f.fixing_subgroup());
            let lifted = field_reduce(&f.fixing_subgroup().preimage(f.conductor() * 6));
            if !(h.is_subgroup() && fixes && again == f && lifted == f) {
                return check("stabilizer closure and reduction", cases, Some(format!("level {n}: {gens:?}")));
            }
        }
    }
    check("stabilizer closure and reduction", cases, None)
}

pub fn orthogonality(qs: &[u64]) -> Check {
    let mut cases = 0;
    for &q in qs {
        for group in [Group::Gl2, Group::Sl2] {
            cases += 1;
            let ok = CharTable::build(group, q).map(|t| t.orthogonality().passed()).unwrap_or(false);
            if !ok {
                return check("orthogonality", cases, Some(format!("{group} q = {q}")));
            }
        }
    }
    check("orthogonality", cases, None)
}

/// A full Thm4 verification with the first and second primitive elements.
pub fn generator_independence() -> Check {
    let mut cases = 0;
    for (q, l) in [(13u64, 7u64), (11, 3), (7, 3)] {
        cases += 1;
        let params = Params::q(q).ellr(l, 1);
        let a = verify_with_generator(Claim::Thm4, &params, 0);
        let b = verify_with_generator(Claim::Thm4, &params, 1);
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => {
                return check("generator-choice independence", cases, Some(format!("q = {q}, l = {l}: {a:?} vs {b:?}")))
            }
        }
    }
    check("generator-choice independence", cases, None)
}

/// Everything, at the default sizes.
pub fn run() -> SelftestReport {
    SelftestReport {
        checks: vec![
            galois_laws(),
            cyclotomic_polynomials(60),
            gauss_squares(23, 2),
            stabilizers_and_reduction(),
            orthogonality(&[2, 3, 4, 5, 7, 8, 9]),
            generator_independence(),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_oracle_small() {
        let mut known = vec![vec![]];
        for n in 1..=12 {
            let f = phi_by_division(n, &known);
            known.push(f);
        }
        assert_eq!(known[1], vec![-1, 1]);
        assert_eq!(known[12], vec![1, 0, -1, 0, 1]);
        assert_eq!(known[9], vec![1, 0, 0, 1, 0, 0, 1]);
    }
}
