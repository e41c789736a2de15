use charfields::arith::{factorize, gcd, totient, units};
use charfields::finite_field::{make_field, FqCtx, FqElem};
use charfields::galois::{compositum, field_of, field_reduce, ResidueGroup};
use charfields::glm::{glm_order, partitions, Partition};
use charfields::{Cyclotomic, Rational, RootSum};
use proptest::prelude::*;

const LEVELS: [u64; 12] = [1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 20, 24];

fn element(level: u64, terms: Vec<(u64, i64, i64)>) -> Cyclotomic {
    terms.into_iter().fold(Cyclotomic::zero(level), |acc, (e, a, b)| {
        &acc + &Cyclotomic::root(level, e as i64).scale(&Rational::new(a, b))
    })
}

fn terms() -> impl Strategy<Value = Vec<(u64, i64, i64)>> {
    prop::collection::vec((0u64..48, -6i64..=6, 1i64..=4), 0..5)
}

fn elem_at(level: u64) -> impl Strategy<Value = Cyclotomic> {
    terms().prop_map(move |t| element(level, t))
}

/// Three elements at one level, plus a unit residue mod that level.
fn triple() -> impl Strategy<Value = (u64, Cyclotomic, Cyclotomic, Cyclotomic, u64)> {
    prop::sample::select(LEVELS.to_vec()).prop_flat_map(|n| {
        let us = units(n);
        (Just(n), elem_at(n), elem_at(n), elem_at(n), prop::sample::select(us))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws((_, a, b, c, _) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Cyclotomic::one(a.level()), a.clone());
        prop_assert_eq!(&(-&a) + &a, Cyclotomic::zero(1));
    }

    #[test]
    fn galois_is_a_ring_homomorphism((n, a, b, _, s) in triple(), t_seed in 0usize..64) {
        let us = units(n);
        let t = us[t_seed % us.len()];
        let sa = a.galois(s as i64).unwrap();
        let sb = b.galois(s as i64).unwrap();
        prop_assert_eq!((&a + &b).galois(s as i64).unwrap(), &sa + &sb);
        prop_assert_eq!((&a * &b).galois(s as i64).unwrap(), &sa * &sb);
        let st = (s * t % n.max(1)) as i64;
        prop_assert_eq!(sa.galois(t as i64).unwrap(), a.galois(st).unwrap());
        prop_assert_eq!(a.conj(), a.galois(-1).unwrap());
        prop_assert_eq!(a.galois(1).unwrap(), a.clone());
    }

    #[test]
    fn non_units_are_rejected(n in prop::sample::select(vec![4u64, 6, 9, 12, 15]), k in 1u64..6) {
        let s = n.min(k * prime_factor(n));
        let a = Cyclotomic::root(n, 1);
        prop_assert!(a.galois(s as i64).is_err());
    }

    #[test]
    fn lift_and_lower_round_trip((n, a, _, _, _) in triple(), k in 1u64..5) {
        let m = n * k;
        let up = a.lift(m).unwrap();
        prop_assert_eq!(up.level(), m);
        prop_assert_eq!(&up, &a);
        let down = up.change_level(n).unwrap();
        prop_assert_eq!(down.level(), n);
        prop_assert_eq!(down.coeffs(), a.coeffs());
        let ml = a.minimal_level();
        prop_assert_eq!(n % ml, 0);
        prop_assert_eq!(a.lowered(), a.clone());
        prop_assert_eq!(a.lowered().level(), ml);
    }

    #[test]
    fn root_sums_reduce_homomorphically(n in prop::sample::select(LEVELS.to_vec()), x in terms(), y in terms(), s_seed in 0usize..64) {
        let sum = |t: &[(u64, i64, i64)]| {
            let mut r = RootSum::zero(n);
            for &(e, a, b) in t {
                r.add_term(e % n, Rational::new(a, b));
            }
            r
        };
        let (rx, ry) = (sum(&x), sum(&y));
        prop_assert_eq!((&rx + &ry).to_cyclotomic(), &rx.to_cyclotomic() + &ry.to_cyclotomic());
        prop_assert_eq!((&rx * &ry).to_cyclotomic(), &rx.to_cyclotomic() * &ry.to_cyclotomic());
        let us = units(n);
        let s = us[s_seed % us.len()] as i64;
        prop_assert_eq!(rx.galois(s).to_cyclotomic(), rx.to_cyclotomic().galois(s).unwrap());
        prop_assert_eq!(rx.to_cyclotomic().to_root_sum().to_cyclotomic(), rx.to_cyclotomic());
    }

    #[test]
    fn rationals_are_in_lowest_terms(a in -10_000i64..10_000, b in prop::num::i64::ANY.prop_filter("nonzero", |b| *b != 0 && *b != i64::MIN)) {
        let r = Rational::new(a, b);
        prop_assert!(r.denom() > &0.into());
        let g = num_gcd(r.numer().clone(), r.denom().clone());
        prop_assert_eq!(g, 1.into());
        let back: Rational = r.to_string().parse().unwrap();
        prop_assert_eq!(&back, &r);
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }

    #[test]
    fn field_reduce_is_idempotent(n in prop::sample::select(vec![3u64, 5, 7, 8, 9, 12, 13, 15, 16, 20, 21, 24, 28]), picks in prop::collection::vec(0usize..64, 0..3)) {
        let us = units(n);
        let gens: Vec<u64> = picks.iter().map(|i| us[i % us.len()]).collect();
        let h = ResidueGroup::generated_by(n, &gens);
        prop_assert!(h.is_subgroup());
        let f = field_reduce(&h);
        prop_assert_eq!(n % f.conductor(), 0);
        prop_assert_eq!(f.degree() * f.fixing_subgroup().order(), totient(f.conductor()));
        prop_assert_eq!(field_reduce(f.fixing_subgroup()), f.clone());
        // degree over Q equals the index of H
        prop_assert_eq!(f.degree() * h.order(), totient(n));
        let json = serde_json::to_value(&f).unwrap();
        let back: charfields::galois::FieldDescriptor = serde_json::from_value(json).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn fields_of_elements_are_monotone((_, a, b, _, _) in triple()) {
        let fa = field_of(std::slice::from_ref(&a)).unwrap();
        let fb = field_of(std::slice::from_ref(&b)).unwrap();
        let fab = field_of(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(&fab, &compositum(&[fa.clone(), fb.clone()]));
        prop_assert!(fab.contains(&fa) && fab.contains(&fb));
        prop_assert!(fa.contains(&field_of(&[&a * &a]).unwrap()));
        prop_assert!(fab.contains(&field_of(&[&a + &b]).unwrap()));
        prop_assert!(field_of(&[&a * &a.conj()]).unwrap().contains(&charfields::galois::FieldDescriptor::rationals()));
    }
}

fn prime_factor(n: u64) -> u64 {
    factorize(n)[0].0
}

fn num_gcd(a: num_bigint::BigInt, b: num_bigint::BigInt) -> num_bigint::BigInt {
    use num_integer::Integer;
    a.gcd(&b)
}

const FIELDS: [(u64, u32); 10] = [(2, 1), (3, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2)];

fn field_and_elems() -> impl Strategy<Value = (u64, u32, u64, u64, u64)> {
    prop::sample::select(FIELDS.to_vec()).prop_flat_map(|(p, n)| {
        let q = p.pow(n);
        (Just(p), Just(n), 0..q, 0..q, 0..q)
    })
}

fn elem(ctx: &FqCtx, code: u64) -> FqElem {
    let (p, n) = (ctx.p(), ctx.n());
    let coeffs: Vec<u64> = (0..n).map(|i| code / p.pow(i) % p).collect();
    ctx.from_coeffs(&coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn finite_field_axioms((p, n, x, y, z) in field_and_elems()) {
        let k = make_field(p, n).unwrap();
        let (a, b, c) = (elem(&k, x), elem(&k, y), elem(&k, z));
        prop_assert_eq!(k.add(a, b), k.add(b, a));
        prop_assert_eq!(k.mul(a, b), k.mul(b, a));
        prop_assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(a, k.neg(a)), k.zero());
        prop_assert_eq!(k.sub(k.add(a, b), b), a);
        prop_assert_eq!(k.mul(a, k.one()), a);
        prop_assert_eq!(k.pow(a, k.q()), a);
        prop_assert_eq!(k.coeffs(a), k.coeffs(k.from_coeffs(&k.coeffs(a))));
        if !a.is_zero() {
            let inv = k.inv(a).unwrap();
            prop_assert_eq!(k.mul(a, inv), k.one());
            let e = k.log(a).unwrap();
            prop_assert_eq!(k.exp(e), a);
            prop_assert_eq!((k.q() - 1) % k.elem_order(a).unwrap(), 0);
        } else {
            prop_assert!(k.inv(a).is_none());
        }
        // Frobenius is a field automorphism
        prop_assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
        prop_assert_eq!(k.frobenius(k.mul(a, b)), k.mul(k.frobenius(a), k.frobenius(b)));
        prop_assert_eq!(k.frobenius(a), k.pow(a, p));
    }

    #[test]
    fn trace_and_norm((p, n, x, y, _) in field_and_elems()) {
        let k = make_field(p, n).unwrap();
        let (a, b) = (elem(&k, x), elem(&k, y));
        for m in (1..=n).filter(|m| n % m == 0) {
            let (ta, tb) = (k.trace(a, m).unwrap(), k.trace(b, m).unwrap());
            prop_assert!(k.is_in_subfield(ta, m));
            prop_assert_eq!(k.trace(k.add(a, b), m).unwrap(), k.add(ta, tb));
            let (na, nb) = (k.norm(a, m).unwrap(), k.norm(b, m).unwrap());
            prop_assert!(k.is_in_subfield(na, m));
            prop_assert_eq!(k.norm(k.mul(a, b), m).unwrap(), k.mul(na, nb));
            prop_assert_eq!(na.is_zero(), a.is_zero());
        }
        if n > 1 {
            prop_assert!(k.trace(a, n + 1).is_err());
        }
    }
}

#[test]
fn subfield_membership_counts() {
    for &(p, n) in &FIELDS {
        let k = make_field(p, n).unwrap();
        for m in (1..=n).filter(|m| n % m == 0) {
            let count = k.elements().filter(|&a| k.is_in_subfield(a, m)).count() as u64;
            assert_eq!(count, p.pow(m), "F_{}^{} inside F_{}^{}", p, m, p, n);
        }
    }
}

const PARTITION_COUNTS: [usize; 13] = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];

#[test]
fn partition_counts() {
    for (k, &c) in PARTITION_COUNTS.iter().enumerate() {
        assert_eq!(partitions(k as u32).len(), c, "p({k})");
    }
}

proptest! {
    #[test]
    fn partitions_are_well_formed(k in 1u32..12, idx in 0usize..100) {
        let all = partitions(k);
        let lam = &all[idx % all.len()];
        prop_assert_eq!(lam.size(), k);
        prop_assert!(lam.parts().windows(2).all(|w| w[0] >= w[1]));
        let conj = lam.conjugate();
        prop_assert_eq!(conj.size(), k);
        prop_assert_eq!(conj.conjugate(), lam.clone());
        prop_assert_eq!(conj.largest() as usize, lam.parts().len());
        let mult_total: u32 = lam.multiplicities().iter().map(|(&part, &m)| part * m).sum();
        prop_assert_eq!(mult_total, k);
        prop_assert_eq!(Partition::new(lam.parts().to_vec()).unwrap(), lam.clone());
    }

    #[test]
    fn unipotent_elements_number_q_to_the_k_k_minus_one(k in 1u32..5, q in prop::sample::select(vec![2u64, 3, 4, 5, 7])) {
        let order = glm_order(k, q).unwrap();
        let total: u128 = partitions(k).iter().map(|l| order / l.centralizer_order(q as u128).unwrap()).sum();
        prop_assert_eq!(total, (q as u128).pow(k * (k - 1)));
    }

    #[test]
    fn factorization_multiplies_back(n in 1u64..200_000) {
        let f = factorize(n);
        prop_assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        prop_assert_eq!(units(n).len() as u64, totient(n));
        prop_assert!(units(n).iter().all(|&u| gcd(u, n) == 1));
    }
}
