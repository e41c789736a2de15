use super::{zeta_exp, CharFamily, CharId, CharTable, ClassFamily, ConjClass, Formulas};
use crate::arith::lcm;
use crate::error::Result;
use crate::exact::{Rational, RootSum};
use crate::finite_field::FqCtx;

pub(super) fn build(q: u64, p: u64, n: u32, ctx: FqCtx) -> Result<CharTable> {
    let big = q * q - 1;
    let classes = classes(q, p, &ctx)?;
    let chars = characters(q);
    Ok(CharTable {
        group: super::Group::Gl2,
        q,
        p,
        n,
        level: big,
        order: (q * q - 1) * (q * q - q),
        ctx,
        classes,
        chars,
        formulas: Formulas::Gl2,
        notes: Vec::new(),
    })
}

fn classes(q: u64, p: u64, ctx: &FqCtx) -> Result<Vec<ConjClass>> {
    let big = q * q - 1;
    // x = eps^i = g^{(q+1) i}
    let ord_eps = |i: u64| ctx.elem_order(ctx.exp((q + 1) * i));
    let mut out = Vec::new();
    for i in 0..q - 1 {
        out.push(ConjClass {
            family: ClassFamily::A,
            params: vec![i as i64],
            label: format!("a[{i}]"),
            size: 1,
            order: ord_eps(i)?,
        });
    }
    for i in 0..q - 1 {
        out.push(ConjClass {
            family: ClassFamily::B,
            params: vec![i as i64],
            label: format!("b[{i}]"),
            size: q * q - 1,
            order: p * ord_eps(i)?,
        });
    }
    for i in 0..q - 1 {
        for j in i + 1..q - 1 {
            out.push(ConjClass {
                family: ClassFamily::Cxy,
                params: vec![i as i64, j as i64],
                label: format!("c[{i},{j}]"),
                size: q * q + q,
                order: lcm(ord_eps(i)?, ord_eps(j)?),
            });
        }
    }
    for j in 1..big {
        let conj = (j * q) % big;
        if j % (q + 1) == 0 || conj < j {
            continue;
        }
        out.push(ConjClass {
            family: ClassFamily::DZeta,
            params: vec![j as i64],
            label: format!("d[{j}]"),
            size: q * q - q,
            order: ctx.elem_order(ctx.exp(j))?,
        });
    }
    Ok(out)
}

fn characters(q: u64) -> Vec<CharId> {
    let big = q * q - 1;
    let mut out = Vec::new();
    for k in 1..q {
        out.push(CharId { family: CharFamily::U, params: vec![k], label: format!("U_{k}") });
    }
    for k in 1..q {
        out.push(CharId { family: CharFamily::V, params: vec![k], label: format!("V_{k}") });
    }
    for j in 1..q {
        for k in j + 1..q {
            out.push(CharId { family: CharFamily::W, params: vec![j, k], label: format!("W_{j},{k}") });
        }
    }
    for m in 1..big {
        let conj = (m * q) % big;
        if m % (q + 1) == 0 || conj < m {
            continue;
        }
        out.push(CharId { family: CharFamily::X, params: vec![m], label: format!("X_{m}") });
    }
    out
}

/// The standard GL2 character formulas, evaluated at one class.
pub(super) fn value(t: &CharTable, id: &CharId, class: &ConjClass) -> RootSum {
    let q = t.q;
    let level = t.level;
    let qm1 = q - 1;
    let qi = q as i64;
    // alpha_k(eps^i) = zeta_{q-1}^{(k-1) i}
    let alpha = |k: u64, i: i64| zeta_exp(level, qm1, (k as i64 - 1) * i);
    // phi_m(g^j) = zeta_{q^2-1}^{m j}
    let phi = |m: u64, j: i64| zeta_exp(level, level, m as i64 * j);
    let root = |e: u64, c: i64| RootSum::term(level, e as i64, Rational::integer(c));
    let zero = RootSum::zero(level);
    let x = class.params.first().copied().unwrap_or(0);
    let k = id.params[0];
    match (id.family, class.family) {
        (CharFamily::U, ClassFamily::A | ClassFamily::B) => root(alpha(k, 2 * x), 1),
        (CharFamily::U | CharFamily::V, ClassFamily::Cxy) => root(alpha(k, x + class.params[1]), 1),
        // det d_zeta = zeta^{q+1} = eps^j
        (CharFamily::U, ClassFamily::DZeta) => root(alpha(k, x), 1),
        (CharFamily::V, ClassFamily::A) => root(alpha(k, 2 * x), qi),
        (CharFamily::V, ClassFamily::B) => zero,
        (CharFamily::V, ClassFamily::DZeta) => root(alpha(k, x), -1),
        (CharFamily::W, fam) => {
            let (j, k) = (id.params[0], id.params[1]);
            match fam {
                ClassFamily::A => root((alpha(j, x) + alpha(k, x)) % level, qi + 1),
                ClassFamily::B => root((alpha(j, x) + alpha(k, x)) % level, 1),
                ClassFamily::Cxy => {
                    let y = class.params[1];
                    &root((alpha(j, x) + alpha(k, y)) % level, 1) + &root((alpha(j, y) + alpha(k, x)) % level, 1)
                }
                _ => zero,
            }
        }
        (CharFamily::X, fam) => {
            // x = eps^i = g^{(q+1) i}
            let x_exp = (q as i64 + 1) * x;
            match fam {
                ClassFamily::A => root(phi(k, x_exp), qi - 1),
                ClassFamily::B => root(phi(k, x_exp), -1),
                ClassFamily::Cxy => zero,
                _ => &root(phi(k, x), -1) + &root(phi(k, x * qi), -1),
            }
        }
        _ => unreachable!("GL2 has no {:?} characters", id.family),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{CharTable, Group};

    #[test]
    fn inventory_and_degrees() {
        for q in [2u64, 3, 4, 5] {
            let t = CharTable::build(Group::Gl2, q).unwrap();
            assert_eq!(t.classes().len() as u64, q * q - 1);
            assert_eq!(t.chars().len() as u64, q * q - 1);
            let degs: u64 = (0..t.chars().len()).map(|i| t.degree(i).pow(2)).sum();
            assert_eq!(degs, (q * q - 1) * (q * q - q));
        }
    }

    #[test]
    fn x_at_scalars() {
        let t = CharTable::build(Group::Gl2, 4).unwrap();
        let x = t.chars().iter().position(|c| c.label.starts_with('X')).unwrap();
        assert_eq!(t.degree(x), 3);
    }
}
