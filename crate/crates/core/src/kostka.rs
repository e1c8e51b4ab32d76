//! Kostka numbers and exact weight-block tables.
//!
//! `K_{lambda,mu}` counts semistandard tableaux of shape `lambda` and content
//! `mu`, computed here by the horizontal-strip chain recursion: entries equal
//! to the largest value of a tableau occupy a horizontal strip, so columns of
//! a weight block are accumulated by repeatedly adding horizontal strips of
//! sizes `mu_1, mu_2, ...`. This stays exact and fast up to the weights the
//! acceptance sweeps need (16), where expanding Schur polynomials in that
//! many variables would be hopeless.
//!
//! A [`WeightBlock`] is the square table over one weight, restricted either
//! by length (the transition matrix of the n-variable ring) or by largest
//! part. Both restrictions are order ideals of dominance, so the inverse of
//! the restricted table agrees entry-wise with the restriction of the full
//! inverse; `consistency` tests pin that down.

use std::collections::HashMap;

use crate::partition::{enumerate_partitions, Partition};

/// Binomial coefficient with the convention that a negative argument (upper
/// or lower) gives 0, as does `b > a`.
pub fn binomial(a: i64, b: i64) -> i128 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut out: i128 = 1;
    for i in 0..b {
        out = out * (a - i) as i128 / (i + 1) as i128;
    }
    out
}

/// Restriction defining a weight block's index set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum IndexCap {
    /// Partitions with at most this many parts (rows of the Kostka matrix of
    /// the n-variable ring).
    MaxLen(u32),
    /// Partitions with every part at most this value.
    MaxPart(u32),
}

/// Enumerates `kappa` obtained from `nu` by adding a horizontal strip of the
/// given size.
fn add_horizontal_strips(nu: &Partition, size: u32) -> Vec<Partition> {
    let m = nu.len();
    let mut out = Vec::new();
    let mut rows = vec![0u32; m + 1];
    fn rec(
        nu: &Partition,
        row: usize,
        budget: u32,
        rows: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        let m = nu.len();
        if row == m + 1 {
            if budget == 0 {
                let parts: Vec<u32> = (0..=m).map(|i| nu.part(i) + rows[i]).collect();
                out.push(Partition::from_parts(parts.into_iter().filter(|&p| p > 0)));
            }
            return;
        }
        // Additions below row 1 are capped so the strip has one cell per column.
        let cap = if row == 0 {
            budget
        } else {
            budget.min(nu.part(row - 1) - nu.part(row))
        };
        for a in 0..=cap {
            rows[row] = a;
            rec(nu, row + 1, budget - a, rows, out);
        }
        rows[row] = 0;
    }
    rec(nu, 0, size, &mut rows, &mut out);
    out
}

/// All Kostka numbers `K_{lambda,mu}` for a fixed content `mu`, as a map from
/// shapes of weight `|mu|`.
fn kostka_column(mu: &Partition) -> HashMap<Partition, i128> {
    let mut state: HashMap<Partition, i128> = HashMap::new();
    state.insert(Partition::empty(), 1);
    for &s in mu.parts() {
        let mut next: HashMap<Partition, i128> = HashMap::new();
        for (nu, cnt) in &state {
            for kappa in add_horizontal_strips(nu, s) {
                *next.entry(kappa).or_insert(0) += cnt;
            }
        }
        state = next;
    }
    state
}

/// Single Kostka number.
pub fn kostka_number(shape: &Partition, content: &Partition) -> i128 {
    if shape.weight() != content.weight() {
        return 0;
    }
    kostka_column(content)
        .get(shape)
        .copied()
        .unwrap_or(0)
}

/// Square Kostka / inverse-Kostka table over the partitions of one weight,
/// indexed in descending lexicographic order (which refines dominance, so the
/// Kostka side is unitriangular). The inverse is produced by
/// back-substitution and the product is re-verified on construction.
#[derive(Clone, Debug)]
pub struct WeightBlock {
    pub weight: u32,
    pub index: Vec<Partition>,
    pub kostka: Vec<Vec<i128>>,
    pub inverse: Vec<Vec<i128>>,
}

impl WeightBlock {
    pub fn build(weight: u32, cap: IndexCap) -> Self {
        let index = match cap {
            IndexCap::MaxLen(n) => enumerate_partitions(weight, n, weight.max(1)),
            IndexCap::MaxPart(p) => enumerate_partitions(weight, weight.max(1), p),
        };
        let pos: HashMap<&Partition, usize> =
            index.iter().enumerate().map(|(i, q)| (q, i)).collect();
        let size = index.len();
        let mut kostka = vec![vec![0i128; size]; size];
        for (j, mu) in index.iter().enumerate() {
            for (shape, value) in kostka_column(mu) {
                if let Some(&i) = pos.get(&shape) {
                    kostka[i][j] = value;
                }
            }
        }
        for i in 0..size {
            assert_eq!(kostka[i][i], 1, "Kostka diagonal must be 1");
            for j in 0..i {
                assert_eq!(kostka[i][j], 0, "Kostka block must be unitriangular");
            }
        }
        // Invert the unitriangular matrix column by column.
        let mut inverse = vec![vec![0i128; size]; size];
        for j in 0..size {
            inverse[j][j] = 1;
            for i in (0..j).rev() {
                let mut acc: i128 = 0;
                for k in i + 1..=j {
                    acc = acc
                        .checked_add(kostka[i][k].checked_mul(inverse[k][j]).expect("overflow"))
                        .expect("overflow");
                }
                inverse[i][j] = -acc;
            }
        }
        let block = WeightBlock {
            weight,
            index,
            kostka,
            inverse,
        };
        assert!(block.roundtrip_is_identity(), "K * K^-1 != I");
        block
    }

    pub fn size(&self) -> usize {
        self.index.len()
    }

    pub fn position(&self, q: &Partition) -> Option<usize> {
        self.index.iter().position(|r| r == q)
    }

    pub fn kostka_entry(&self, row: &Partition, col: &Partition) -> Option<i128> {
        Some(self.kostka[self.position(row)?][self.position(col)?])
    }

    pub fn inverse_entry(&self, row: &Partition, col: &Partition) -> Option<i128> {
        Some(self.inverse[self.position(row)?][self.position(col)?])
    }

    pub fn roundtrip_is_identity(&self) -> bool {
        let size = self.size();
        for i in 0..size {
            for j in 0..size {
                let mut acc: i128 = 0;
                for k in 0..size {
                    acc += self.kostka[i][k] * self.inverse[k][j];
                }
                if acc != i128::from(i == j) {
                    return false;
                }
            }
        }
        true
    }
}

/// Closed form for inverse-Kostka entries when both partitions have parts of
/// size at most 2:
/// `(-1)^(m2(lambda)-m2(mu)) * C(l(lambda)-m2(mu), m1(lambda))`.
/// Returns `None` (not 0) when the closed form does not apply, i.e. a part
/// exceeds 2 or the weights differ.
pub fn inverse_kostka_two_column(lambda: &Partition, mu: &Partition) -> Option<i128> {
    if lambda.first_part() > 2 || mu.first_part() > 2 || lambda.weight() != mu.weight() {
        return None;
    }
    let m2l = lambda.multiplicity(2) as i64;
    let m2m = mu.multiplicity(2) as i64;
    let sign = if (m2l - m2m).rem_euclid(2) == 0 { 1 } else { -1 };
    let value = binomial(
        lambda.len() as i64 - m2m,
        lambda.multiplicity(1) as i64,
    );
    Some(sign as i128 * value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts.iter().copied())
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(4, -1), 0);
        assert_eq!(binomial(24, 12), 2_704_156);
    }

    #[test]
    fn known_kostka_numbers() {
        assert_eq!(kostka_number(&p(&[2, 1]), &p(&[1, 1, 1])), 2);
        assert_eq!(kostka_number(&p(&[3]), &p(&[1, 1, 1])), 1);
        assert_eq!(kostka_number(&p(&[2, 2]), &p(&[2, 1, 1])), 1);
        assert_eq!(kostka_number(&p(&[1, 1]), &p(&[2])), 0);
        assert_eq!(kostka_number(&p(&[4, 2]), &p(&[2, 2, 1, 1])), 4);
        // Weight mismatch.
        assert_eq!(kostka_number(&p(&[2]), &p(&[1])), 0);
    }

    #[test]
    fn small_blocks() {
        let b0 = WeightBlock::build(0, IndexCap::MaxLen(2));
        assert_eq!(b0.index, vec![Partition::empty()]);
        assert_eq!(b0.kostka, vec![vec![1]]);
        assert_eq!(b0.inverse, vec![vec![1]]);

        let b1 = WeightBlock::build(1, IndexCap::MaxLen(3));
        assert_eq!(b1.kostka, vec![vec![1]]);
        assert_eq!(b1.inverse, vec![vec![1]]);

        let b2 = WeightBlock::build(2, IndexCap::MaxLen(2));
        assert_eq!(b2.index, vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(b2.kostka, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(b2.inverse, vec![vec![1, -1], vec![0, 1]]);

        let b3 = WeightBlock::build(3, IndexCap::MaxLen(3));
        assert_eq!(b3.index, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(
            b3.kostka,
            vec![vec![1, 1, 1], vec![0, 1, 2], vec![0, 0, 1]]
        );
        assert_eq!(
            b3.inverse,
            vec![vec![1, -1, 1], vec![0, 1, -2], vec![0, 0, 1]]
        );
    }

    #[test]
    fn restricted_blocks_are_consistent() {
        // Inverse entries must not depend on the chosen restriction wherever
        // the indices are present in both blocks.
        for w in 0..=8u32 {
            let full = WeightBlock::build(w, IndexCap::MaxLen(w.max(1)));
            for n in 1..=3u32 {
                for cap in [IndexCap::MaxLen(n), IndexCap::MaxPart(n)] {
                    let sub = WeightBlock::build(w, cap);
                    for row in &sub.index {
                        for col in &sub.index {
                            assert_eq!(
                                sub.inverse_entry(row, col),
                                full.inverse_entry(row, col),
                                "w={w} cap={cap:?} row={row} col={col}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_column_closed_form_examples() {
        assert_eq!(inverse_kostka_two_column(&p(&[2]), &p(&[1, 1])), Some(-1));
        assert_eq!(inverse_kostka_two_column(&p(&[1, 1]), &p(&[2])), Some(0));
        assert_eq!(inverse_kostka_two_column(&p(&[2]), &p(&[2])), Some(1));
        assert_eq!(inverse_kostka_two_column(&p(&[3]), &p(&[2, 1])), None);
        assert_eq!(inverse_kostka_two_column(&p(&[2]), &p(&[1])), None);
    }

    #[test]
    fn two_column_closed_form_matches_blocks() {
        for w in 0..=10u32 {
            let block = WeightBlock::build(w, IndexCap::MaxPart(2));
            for row in &block.index {
                for col in &block.index {
                    assert_eq!(
                        inverse_kostka_two_column(row, col),
                        block.inverse_entry(row, col),
                        "w={w} row={row} col={col}"
                    );
                }
            }
        }
    }
}
