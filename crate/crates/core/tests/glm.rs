use std::collections::BTreeSet;

use charfields::arith::{factorize, prime_power};
use charfields::glm::{
    class_types, exists_order, glm_order, k_ellr_glm, k_ellr_report, k_glm, lemma31_report, lemma31_tuples,
    omega, type_census, GeneratorOptions,
};
use charfields::tables::{CharTable, Group};

#[test]
fn exists_order_matches_enumeration() {
    for (m, q) in [(2u32, 2u64), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (2, 7)] {
        let orders: BTreeSet<u64> = class_types(m, q).unwrap().iter().map(|c| c.element_order()).collect();
        for l in [2u64, 3, 5, 7, 13] {
            for r in 1..=4u32 {
                let lr = l.pow(r);
                assert_eq!(exists_order(m, q, l, r).unwrap(), orders.contains(&lr), "GL_{m}({q}) order {lr}");
            }
        }
    }
}

#[test]
fn glm_order_matches_product_formula() {
    for m in 1..=4u32 {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let direct: u128 =
                (q as u128).pow(m * (m - 1) / 2) * (1..=m).map(|k| (q as u128).pow(k) - 1).product::<u128>();
            assert_eq!(glm_order(m, q).unwrap(), direct);
        }
    }
}

#[test]
fn rank_two_matches_gl2_table() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let census = type_census(2, q).unwrap();
        let get = |k: Vec<(u32, u32, Vec<u32>)>| census.get(&k).copied().unwrap_or(0);
        assert_eq!(get(vec![(1, 2, vec![1, 1])]), q - 1, "a_x");
        assert_eq!(get(vec![(1, 2, vec![2])]), q - 1, "b_x");
        assert_eq!(get(vec![(1, 1, vec![1]), (1, 1, vec![1])]), (q - 1) * (q - 2) / 2, "c_xy");
        assert_eq!(get(vec![(2, 1, vec![1])]), (q * q - q) / 2, "d_zeta");
        let t = CharTable::build(Group::Gl2, q).unwrap();
        let classes = class_types(2, q).unwrap();
        assert_eq!(classes.len(), t.classes().len());
        let mut a: Vec<u64> = classes.iter().map(|c| c.element_order()).collect();
        let mut b: Vec<u64> = t.classes().iter().map(|c| c.order).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b, "element orders q = {q}");
        let sizes: Vec<u128> = classes.iter().map(|c| c.class_size().unwrap()).collect();
        assert_eq!(sizes.iter().sum::<u128>(), t.group_order() as u128);
    }
}

#[test]
fn omega_is_q_stable() {
    for q in [2u64, 3, 4, 5] {
        for d in 1..=3u32 {
            let level = q.pow(d) - 1;
            for r in 0..level.min(40) {
                let w = omega(d, r as i64, q).unwrap();
                if level > 1 {
                    assert_eq!(w.galois(q as i64).unwrap(), w);
                }
            }
        }
    }
}

#[test]
fn theorem_one_at_rank_two_matches_table() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let t = CharTable::build(Group::Gl2, q).unwrap();
        assert_eq!(k_glm(2, q).unwrap(), t.field_generated(None).unwrap(), "q = {q}");
    }
}

#[test]
fn three_descriptions_coincide() {
    for m in 2..=4u32 {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let p = prime_power(q).unwrap().0;
            for lr in [3u64, 5, 7, 9, 11, 13, 25, 27] {
                let (l, r) = (factorize(lr)[0].0, factorize(lr)[0].1);
                if l == p || !exists_order(m, q, l, r).unwrap() {
                    continue;
                }
                let rep = k_ellr_report(m, q, l, r, GeneratorOptions::default()).unwrap();
                assert!(rep.coincide(), "m = {m}, q = {q}, l^r = {lr}: {rep:?}");
                assert_eq!(k_ellr_glm(m, q, l, r).unwrap(), rep.fixed_field);
            }
        }
    }
}

#[test]
fn theorem_two_examples() {
    let f = k_ellr_glm(3, 2, 7, 1).unwrap();
    assert_eq!((f.degree(), f.quadratic_radicand()), (2, Some(-7)));
    let f = k_ellr_glm(3, 3, 13, 1).unwrap();
    assert_eq!((f.conductor(), f.degree()), (13, 4));
}

#[test]
fn lemma31_independent_of_tuple_where_it_holds() {
    // q = 2, l^r = 9: the top period vanishes, but ord_9(2) = phi(9) so Q is the predicted field
    let reports: Vec<_> =
        lemma31_tuples(3, 2).iter().map(|t| lemma31_report(2, 3, 2, t).unwrap()).collect();
    assert!(reports.iter().all(|r| r.holds()));
    // q = 4: ord_9(4) = 3 is divisible by 3, so every product vanishes
    let reports: Vec<_> =
        lemma31_tuples(3, 2).iter().map(|t| lemma31_report(4, 3, 2, t).unwrap()).collect();
    assert!(reports.iter().all(|r| r.product_is_zero && !r.holds()));
    // the units-only generator set then sees nothing, the full one does
    let literal = k_ellr_report(3, 4, 3, 2, GeneratorOptions { top_units_only: true, budget: None }).unwrap();
    assert!(literal.from_generators.is_rational());
    assert_eq!(k_ellr_glm(3, 4, 3, 2).unwrap().degree(), 2);
}
