//! The q_r generating family and the objects built from it.
//!
//! `sum_r q_r(x) t^r = prod_i (1+x_i*t)/(1-x_i*t)`, with `q_r = 0` for
//! `r < 0`; the doubled family `q_r(x,x)` squares each factor and is computed
//! by convolution `q_r(x,x) = sum_s q_s q_{r-s}`. On top of these:
//! 2-reduced Schur polynomials `S_lambda = det(q_{lambda_i - i + j})`,
//! two-row values `Q_(r,s)`, and Schur Q-functions as Pfaffians of the skew
//! table of two-row values.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;
use thiserror::Error;

use crate::bases::signed_permutations;
use crate::ctx::Ctx;
use crate::partition::Partition;
use crate::poly::{rat, ExactPoly, Rat, VarSpace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QSeriesError {
    #[error("skew table must have even order, got {0}")]
    OddOrder(usize),
    #[error("table is not antisymmetric at ({0},{1})")]
    NotAntisymmetric(usize, usize),
}

/// Which q-family: plain variables or compounded `(x,x)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum QKind {
    Single,
    Doubled,
}

fn compute_singles(n: u32, len: usize) -> Vec<Arc<ExactPoly>> {
    let space = VarSpace::new(n);
    // Convolve the per-variable series (1+x_i t)/(1-x_i t) = 1 + 2 sum_k x_i^k t^k.
    let mut series: Vec<ExactPoly> = vec![ExactPoly::one(space)];
    series.resize(len, ExactPoly::zero(space));
    for i in 0..n {
        let mut factor: Vec<ExactPoly> = Vec::with_capacity(len);
        factor.push(ExactPoly::one(space));
        for k in 1..len {
            factor.push(ExactPoly::var_pow(space, space.x(i), k as u16).scale(&rat(2)));
        }
        let mut next = vec![ExactPoly::zero(space); len];
        for t in 0..len {
            for k in 0..=t {
                if !series[t - k].is_zero() && !factor[k].is_zero() {
                    next[t] = &next[t] + &(&series[t - k] * &factor[k]);
                }
            }
        }
        series = next;
    }
    series.into_iter().map(Arc::new).collect()
}

fn q_family(ctx: &Ctx, n: u32, kind: QKind, min_len: usize) -> Arc<Vec<Arc<ExactPoly>>> {
    if let Some(v) = ctx.q_families.read().unwrap().get(&(n, kind)) {
        if v.len() >= min_len {
            return Arc::clone(v);
        }
    }
    let len = min_len.max(8);
    let fresh = match kind {
        QKind::Single => compute_singles(n, len),
        QKind::Doubled => {
            let singles = q_family(ctx, n, QKind::Single, len);
            (0..len)
                .map(|r| {
                    let mut acc = ExactPoly::zero(VarSpace::new(n));
                    for s in 0..=r {
                        acc = &acc + &(&*singles[s] * &*singles[r - s]);
                    }
                    Arc::new(acc)
                })
                .collect()
        }
    };
    let fresh = Arc::new(fresh);
    let mut map = ctx.q_families.write().unwrap();
    let slot = map.entry((n, kind)).or_insert_with(|| Arc::clone(&fresh));
    if slot.len() < fresh.len() {
        *slot = Arc::clone(&fresh);
    }
    Arc::clone(slot)
}

/// `q_r` in `n` variables; zero for negative `r`.
pub fn q_poly(ctx: &Ctx, r: i64, n: u32, kind: QKind) -> Arc<ExactPoly> {
    if r < 0 {
        return Arc::new(ExactPoly::zero(VarSpace::new(n)));
    }
    let fam = q_family(ctx, n, kind, r as usize + 1);
    Arc::clone(&fam[r as usize])
}

/// Determinant by signed permutation expansion (orders here stay tiny).
pub fn determinant(space: VarSpace, entries: &[Vec<ExactPoly>]) -> ExactPoly {
    let order = entries.len();
    let mut out = ExactPoly::zero(space);
    for (perm, sign) in signed_permutations(order) {
        let mut term = ExactPoly::one(space);
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &entries[i][j];
            if term.is_zero() {
                break;
            }
        }
        out = if sign > 0 { &out + &term } else { &out - &term };
    }
    out
}

/// 2-reduced Schur polynomial `S_lambda = det(q_{lambda_i - i + j})` of order
/// `l(lambda)`; the determinant is stable under padding `lambda` with zeros.
pub fn schur_two_reduced(ctx: &Ctx, lambda: &Partition, n: u32) -> Arc<ExactPoly> {
    ctx.schur_two_reduced.get_or_compute(&(lambda.clone(), n), || {
        let space = VarSpace::new(n);
        let order = lambda.len();
        let entries: Vec<Vec<ExactPoly>> = (0..order)
            .map(|i| {
                (0..order)
                    .map(|j| {
                        let r = lambda.part(i) as i64 - i as i64 + j as i64;
                        (*q_poly(ctx, r, n, QKind::Single)).clone()
                    })
                    .collect()
            })
            .collect();
        determinant(space, &entries)
    })
}

/// Two-row value `Q_(r,s) = q_r q_s + 2 sum_{i=1}^{s} (-1)^i q_{r+i} q_{s-i}`,
/// zero at `(0,0)`. Antisymmetric in `(r,s)`.
pub fn q_pair(ctx: &Ctx, r: u32, s: u32, n: u32, kind: QKind) -> ExactPoly {
    let space = VarSpace::new(n);
    if r == 0 && s == 0 {
        return ExactPoly::zero(space);
    }
    let mut out = &*q_poly(ctx, r as i64, n, kind) * &*q_poly(ctx, s as i64, n, kind);
    for i in 1..=s as i64 {
        let term = (&*q_poly(ctx, r as i64 + i, n, kind)
            * &*q_poly(ctx, s as i64 - i, n, kind))
            .scale(&rat(2));
        out = if i % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

/// Antisymmetric square table of polynomials with even order.
#[derive(Clone, Debug)]
pub struct SkewTable {
    space: VarSpace,
    entries: Vec<Vec<ExactPoly>>,
}

impl SkewTable {
    pub fn new(space: VarSpace, entries: Vec<Vec<ExactPoly>>) -> Result<Self, QSeriesError> {
        let order = entries.len();
        if order % 2 != 0 {
            return Err(QSeriesError::OddOrder(order));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != order {
                return Err(QSeriesError::NotAntisymmetric(i, row.len()));
            }
            for (j, entry) in row.iter().enumerate() {
                if entry != &entries[j][i].neg() {
                    return Err(QSeriesError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(SkewTable { space, entries })
    }

    /// Builds the table from values above the diagonal; antisymmetry holds by
    /// construction.
    pub fn from_upper(
        space: VarSpace,
        order: usize,
        mut upper: impl FnMut(usize, usize) -> ExactPoly,
    ) -> Result<Self, QSeriesError> {
        if order % 2 != 0 {
            return Err(QSeriesError::OddOrder(order));
        }
        let mut entries = vec![vec![ExactPoly::zero(space); order]; order];
        for i in 0..order {
            for j in i + 1..order {
                let v = upper(i, j);
                entries[j][i] = v.neg();
                entries[i][j] = v;
            }
        }
        Ok(SkewTable { space, entries })
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &ExactPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<ExactPoly>] {
        &self.entries
    }
}

/// Pfaffian by first-row expansion, memoized on index subsets.
pub fn pfaffian(table: &SkewTable) -> ExactPoly {
    let order = table.order();
    let space = table.space;
    let full: u64 = if order == 64 { u64::MAX } else { (1u64 << order) - 1 };
    let mut memo: HashMap<u64, ExactPoly> = HashMap::new();

    fn rec(
        table: &SkewTable,
        space: VarSpace,
        mask: u64,
        memo: &mut HashMap<u64, ExactPoly>,
    ) -> ExactPoly {
        if mask == 0 {
            return ExactPoly::one(space);
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let mut out = ExactPoly::zero(space);
        let mut position = 0usize;
        for j in (first + 1)..64 {
            if mask & (1 << j) == 0 {
                continue;
            }
            position += 1;
            let entry = table.entry(first, j);
            if !entry.is_zero() {
                let rest = rec(table, space, mask & !(1 << first) & !(1 << j), memo);
                let term = entry * &rest;
                out = if position % 2 == 1 {
                    &out + &term
                } else {
                    &out - &term
                };
            }
        }
        memo.insert(mask, out.clone());
        out
    }

    rec(table, space, full, &mut memo)
}

/// Schur Q-function `Q_lambda = Pf(Q_(lambda_i,lambda_j))`, padding odd-length
/// `lambda` with a single zero part.
pub fn schur_q(ctx: &Ctx, lambda: &Partition, n: u32, kind: QKind) -> Arc<ExactPoly> {
    ctx.schur_q_polys
        .get_or_compute(&(lambda.clone(), n, kind), || {
            let space = VarSpace::new(n);
            let mut rows: Vec<u32> = lambda.parts().to_vec();
            if rows.len() % 2 != 0 {
                rows.push(0);
            }
            let table = SkewTable::from_upper(space, rows.len(), |i, j| {
                q_pair(ctx, rows[i], rows[j], n, kind)
            })
            .expect("even order by construction");
            pfaffian(&table)
        })
}

/// Scales a polynomial by `2^-n`.
pub fn halve_n(p: &ExactPoly, n: u32) -> ExactPoly {
    p.scale(&Rat::new(One::one(), num_bigint::BigInt::from(1i64 << n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Grading;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.iter().copied())
    }

    fn x(s: VarSpace, i: u32) -> ExactPoly {
        ExactPoly::var(s, s.x(i))
    }

    /// Oracle: expand `prod_i (1+x_i t) * prod_i (sum_k x_i^k t^k)` as 2n
    /// separate factor series in t and read off the coefficient of `t^r`.
    fn q_oracle(r: usize, n: u32, doubled: bool) -> ExactPoly {
        let space = VarSpace::new(n);
        let len = r + 1;
        let mut series = vec![ExactPoly::zero(space); len];
        series[0] = ExactPoly::one(space);
        let reps = if doubled { 2 } else { 1 };
        let mut factors: Vec<Vec<ExactPoly>> = Vec::new();
        for _ in 0..reps {
            for i in 0..n {
                // 1 + x_i t
                let mut lin = vec![ExactPoly::zero(space); len];
                lin[0] = ExactPoly::one(space);
                if len > 1 {
                    lin[1] = x(space, i);
                }
                factors.push(lin);
                // geometric series
                let geo: Vec<ExactPoly> = (0..len)
                    .map(|k| ExactPoly::var_pow(space, space.x(i), k as u16))
                    .collect();
                factors.push(geo);
            }
        }
        for factor in factors {
            let mut next = vec![ExactPoly::zero(space); len];
            for t in 0..len {
                for k in 0..=t {
                    next[t] = &next[t] + &(&series[t - k] * &factor[k]);
                }
            }
            series = next;
        }
        series[r].clone()
    }

    #[test]
    fn q_examples() {
        let ctx = Ctx::new();
        assert_eq!(*q_poly(&ctx, 0, 3, QKind::Single), ExactPoly::one(VarSpace::new(3)));
        let s1 = VarSpace::new(1);
        assert_eq!(*q_poly(&ctx, 2, 1, QKind::Single), x(s1, 0).pow(2).scale(&rat(2)));
        assert_eq!(
            q_poly(&ctx, 2, 2, QKind::Single).to_string(),
            "2*x1^2 + 4*x1*x2 + 2*x2^2"
        );
        assert_eq!(
            *q_poly(&ctx, 3, 1, QKind::Doubled),
            x(s1, 0).pow(3).scale(&rat(12))
        );
        assert!(q_poly(&ctx, -1, 2, QKind::Single).is_zero());
    }

    #[test]
    fn q_matches_series_oracle() {
        let ctx = Ctx::new();
        for n in 1..=2u32 {
            for r in 0..=6usize
            {
                assert_eq!(
                    *q_poly(&ctx, r as i64, n, QKind::Single),
                    q_oracle(r, n, false),
                    "single r={r} n={n}"
                );
                assert_eq!(
                    *q_poly(&ctx, r as i64, n, QKind::Doubled),
                    q_oracle(r, n, true),
                    "doubled r={r} n={n}"
                );
            }
        }
    }

    #[test]
    fn doubled_agrees_with_substitution() {
        // q_r(x,x) equals the 2n-variable q_r with the second half of the
        // variables bound to the first half.
        let ctx = Ctx::new();
        for n in 1..=2u32 {
            let wide = VarSpace::new(2 * n);
            let narrow = VarSpace::new(n);
            let mut bind: BTreeMap<crate::poly::Var, ExactPoly> = BTreeMap::new();
            for i in 0..n {
                bind.insert(wide.x(i), ExactPoly::var(narrow, narrow.x(i)));
                bind.insert(wide.x(n + i), ExactPoly::var(narrow, narrow.x(i)));
            }
            for r in 0..=8i64 {
                let wide_q = q_poly(&ctx, r, 2 * n, QKind::Single);
                let substituted = wide_q.substitute(narrow, &bind).unwrap();
                assert_eq!(substituted, *q_poly(&ctx, r, n, QKind::Doubled), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn alternating_convolution_vanishes() {
        let ctx = Ctx::new();
        for n in 1..=3u32 {
            for r in 1..=12i64 {
                let mut acc = ExactPoly::zero(VarSpace::new(n));
                for s in 0..=r {
                    let term = &*q_poly(&ctx, s, n, QKind::Single)
                        * &*q_poly(&ctx, r - s, n, QKind::Single);
                    acc = if s % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                assert!(acc.is_zero(), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn two_reduced_examples() {
        let ctx = Ctx::new();
        assert_eq!(
            *schur_two_reduced(&ctx, &Partition::empty(), 2),
            ExactPoly::one(VarSpace::new(2))
        );
        let s1 = VarSpace::new(1);
        assert_eq!(*schur_two_reduced(&ctx, &p(&[1]), 1), x(s1, 0).scale(&rat(2)));
        // det [[q2, q3], [q0, q1]] = q2 q1 - q3 at one variable.
        assert_eq!(
            *schur_two_reduced(&ctx, &p(&[2, 1]), 1),
            x(s1, 0).pow(3).scale(&rat(2))
        );
    }

    #[test]
    fn q_pair_examples() {
        let ctx = Ctx::new();
        let q1 = q_poly(&ctx, 1, 2, QKind::Single);
        assert_eq!(q_pair(&ctx, 1, 0, 2, QKind::Single), *q1);
        assert!(q_pair(&ctx, 0, 0, 2, QKind::Single).is_zero());
        assert!(q_pair(&ctx, 2, 1, 1, QKind::Single).is_zero());
    }

    #[test]
    fn pfaffian_examples() {
        let s = VarSpace::new(1);
        let empty = SkewTable::new(s, Vec::new()).unwrap();
        assert_eq!(pfaffian(&empty), ExactPoly::one(s));

        let a = x(s, 0);
        let two = SkewTable::from_upper(s, 2, |_, _| a.clone()).unwrap();
        assert_eq!(pfaffian(&two), a);

        // Order 4 with a12 = a34 = 1, everything else 0.
        let one = ExactPoly::one(s);
        let four = SkewTable::from_upper(s, 4, |i, j| {
            if (i, j) == (0, 1) || (i, j) == (2, 3) {
                one.clone()
            } else {
                ExactPoly::zero(s)
            }
        })
        .unwrap();
        assert_eq!(pfaffian(&four), one);

        assert!(matches!(
            SkewTable::from_upper(s, 3, |_, _| ExactPoly::zero(s)),
            Err(QSeriesError::OddOrder(3))
        ));
        let bad = SkewTable::new(s, vec![vec![ExactPoly::zero(s), a.clone()], vec![a.clone(), ExactPoly::zero(s)]]);
        assert!(matches!(bad, Err(QSeriesError::NotAntisymmetric(_, _))));
    }

    #[test]
    fn schur_q_examples() {
        let ctx = Ctx::new();
        let s1 = VarSpace::new(1);
        assert_eq!(
            *schur_q(&ctx, &p(&[1]), 1, QKind::Single),
            x(s1, 0).scale(&rat(2))
        );
        assert_eq!(
            *schur_q(&ctx, &p(&[2, 1]), 1, QKind::Single),
            q_pair(&ctx, 2, 1, 1, QKind::Single)
        );
        for r in 1..=4u32 {
            assert!(schur_q(&ctx, &p(&[r, r]), 2, QKind::Single).is_zero(), "r={r}");
        }
        assert_eq!(*schur_q(&ctx, &Partition::empty(), 2, QKind::Single), ExactPoly::one(VarSpace::new(2)));
    }

    #[test]
    fn homogeneity() {
        let ctx = Ctx::new();
        for n in 1..=2u32 {
            for r in 0..=8u32 {
                for kind in [QKind::Single, QKind::Doubled] {
                    let q = q_poly(&ctx, r as i64, n, kind);
                    assert!(q.is_homogeneous(Grading::X, r), "q_{r} n={n}");
                }
            }
        }
        for lambda in [p(&[2]), p(&[2, 1]), p(&[3, 2]), p(&[4, 2, 1])] {
            let w = lambda.weight();
            let s = schur_two_reduced(&ctx, &lambda, 2);
            assert!(s.is_homogeneous(Grading::X, w), "S_{lambda}");
            let q = schur_q(&ctx, &lambda, 2, QKind::Single);
            assert!(q.is_homogeneous(Grading::X, w), "Q_{lambda}");
        }
    }

    #[test]
    fn doubling_lemma_small() {
        // The three convolution identities for q(x,x), small range; the full
        // sweep runs in the acceptance suite.
        let ctx = Ctx::new();
        for n in 1..=2u32 {
            for u in 0..=4i64 {
                let lhs_even = q_poly(&ctx, 2 * (u + 1), n, QKind::Doubled);
                let mut even_sum = ExactPoly::zero(VarSpace::new(n));
                for k in 0..=u + 1 {
                    even_sum = &even_sum
                        + &(&*q_poly(&ctx, 2 * k, n, QKind::Single)
                            * &*q_poly(&ctx, 2 * (u + 1 - k), n, QKind::Single));
                }
                assert_eq!(*lhs_even, even_sum.scale(&rat(2)), "even u={u} n={n}");

                let mut odd_sum = ExactPoly::zero(VarSpace::new(n));
                for k in 0..=u {
                    odd_sum = &odd_sum
                        + &(&*q_poly(&ctx, 2 * k + 1, n, QKind::Single)
                            * &*q_poly(&ctx, 2 * (u - k) + 1, n, QKind::Single));
                }
                assert_eq!(*lhs_even, odd_sum.scale(&rat(2)), "odd-odd u={u} n={n}");

                let lhs_odd = q_poly(&ctx, 2 * u + 1, n, QKind::Doubled);
                let mut mixed = ExactPoly::zero(VarSpace::new(n));
                for k in 0..=u {
                    mixed = &mixed
                        + &(&*q_poly(&ctx, 2 * k + 1, n, QKind::Single)
                            * &*q_poly(&ctx, 2 * (u - k), n, QKind::Single));
                }
                assert_eq!(*lhs_odd, mixed.scale(&rat(2)), "mixed u={u} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn q_pair_is_antisymmetric(r in 0u32..=8, s in 0u32..=8) {
            let ctx = Ctx::new();
            let a = q_pair(&ctx, r, s, 2, QKind::Single);
            let b = q_pair(&ctx, s, r, 2, QKind::Single);
            prop_assert_eq!(a, b.neg());
        }

        #[test]
        fn pfaffian_squares_to_determinant(
            order_half in 0usize..=3,
            seed in proptest::collection::vec(-6i64..=6, 15),
        ) {
            let s = VarSpace::new(1);
            let order = 2 * order_half;
            let mut it = seed.into_iter();
            let table = SkewTable::from_upper(s, order, |_, _| {
                ExactPoly::constant(s, rat(it.next().unwrap_or(0)))
            }).unwrap();
            let pf = pfaffian(&table);
            let det = determinant(s, table.entries());
            prop_assert_eq!(&pf * &pf, det);
        }
    }
}
