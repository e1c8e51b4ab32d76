//! Classical symmetric-polynomial bases and basis expansion.
//!
//! Monomial, elementary, and power-sum polynomials are built directly from
//! their orbit/product definitions; Schur polynomials come from the
//! bialternant quotient `a_{lambda+delta}/a_delta` with exact multivariate
//! division (zero remainder asserted). Basis expansions go through the
//! monomial coefficients and a linear solve: unitriangular back-substitution
//! against the Kostka block for the Schur family, dense Gaussian elimination
//! for the elementary family. Littlewood-Richardson coefficients are the
//! Schur-family expansion of a product of two Schur polynomials.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::ctx::Ctx;
use crate::kostka::IndexCap;
use crate::partition::{enumerate_partitions, IndexSeq, Partition};
use crate::poly::{Block, ExactPoly, Rat, VarSpace};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BasesError {
    #[error("partition {0} has more parts than variables (n={1})")]
    LengthExceedsVariables(Partition, u32),
    #[error("partition {0} has a part exceeding the variable count (n={1})")]
    PartExceedsVariables(Partition, u32),
    #[error("alternant index must have length {expected}, got {got}")]
    AlternantLength { expected: u32, got: usize },
    #[error("polynomial is not symmetric in x1..xn")]
    NotSymmetric,
    #[error("polynomial is not in the span of the requested family")]
    NotInSpan,
    #[error("expected a polynomial in the x-block only")]
    HasYVariables,
    #[error("bialternant division left a nonzero remainder")]
    InexactDivision,
}

/// Signed permutations of `0..n` (Heap's algorithm; sign flips per swap).
pub(crate) fn signed_permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    let mut sign: i8 = 1;
    let mut c = vec![0usize; n];
    out.push((items.clone(), sign));
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            sign = -sign;
            out.push((items.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Distinct arrangements of a multiset of non-negative integers, in a
/// deterministic order.
fn distinct_arrangements(values: &[u32]) -> Vec<Vec<u32>> {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_insert(0) += 1;
    }
    let keys: Vec<u32> = counts.keys().rev().copied().collect();
    fn rec(
        keys: &[u32],
        counts: &mut BTreeMap<u32, u32>,
        len: usize,
        acc: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if acc.len() == len {
            out.push(acc.clone());
            return;
        }
        for &k in keys {
            if counts[&k] > 0 {
                *counts.get_mut(&k).unwrap() -= 1;
                acc.push(k);
                rec(keys, counts, len, acc, out);
                acc.pop();
                *counts.get_mut(&k).unwrap() += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&keys, &mut counts, values.len(), &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisKind {
    Monomial,
    Elementary,
    PowerSum,
}

/// Monomial symmetric polynomial `m_lambda` in `x1..xn`.
fn monomial_sym(lambda: &Partition, n: u32) -> Result<ExactPoly, BasesError> {
    if lambda.len() as u32 > n {
        return Err(BasesError::LengthExceedsVariables(lambda.clone(), n));
    }
    let space = VarSpace::new(n);
    let padded: Vec<u32> = (0..n as usize).map(|i| lambda.part(i)).collect();
    let mut out = ExactPoly::zero(space);
    for arrangement in distinct_arrangements(&padded) {
        let vars: Vec<_> = arrangement
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (space.x(i as u32), e as u16))
            .collect();
        out = &out + &ExactPoly::monomial(space, &vars, Rat::one());
    }
    Ok(out)
}

/// The requested classical basis polynomial in `x1..xn`.
pub fn basis_poly(kind: BasisKind, lambda: &Partition, n: u32) -> Result<ExactPoly, BasesError> {
    let space = VarSpace::new(n);
    match kind {
        BasisKind::Monomial => monomial_sym(lambda, n),
        BasisKind::Elementary => {
            if lambda.first_part() > n {
                return Err(BasesError::PartExceedsVariables(lambda.clone(), n));
            }
            let mut out = ExactPoly::one(space);
            for &part in lambda.parts() {
                let column = Partition::from_parts(std::iter::repeat(1).take(part as usize));
                out = &out * &monomial_sym(&column, n)?;
            }
            Ok(out)
        }
        BasisKind::PowerSum => {
            let mut out = ExactPoly::one(space);
            for &part in lambda.parts() {
                let row = Partition::from_parts([part]);
                out = &out * &monomial_sym(&row, n)?;
            }
            Ok(out)
        }
    }
}

/// Alternant `a_alpha = sum_sigma sgn(sigma) sigma(z^alpha)` over the chosen
/// variable block, with each exponent multiplied by `scale` (scale 2 realizes
/// squared-variable alternants like `a_alpha(y^2)`).
pub fn alternant_in(
    space: VarSpace,
    block: Block,
    alpha: &IndexSeq,
    scale: u16,
) -> Result<ExactPoly, BasesError> {
    let n = space.n;
    if alpha.len() as u32 != n {
        return Err(BasesError::AlternantLength {
            expected: n,
            got: alpha.len(),
        });
    }
    let mut out = ExactPoly::zero(space);
    for (perm, sign) in signed_permutations(n as usize) {
        let mut vars = Vec::with_capacity(n as usize);
        for (i, &e) in alpha.entries().iter().enumerate() {
            if e > 0 {
                let v = match block {
                    Block::X => space.x(perm[i] as u32),
                    Block::Y => space.y(perm[i] as u32),
                };
                vars.push((v, (e as u16) * scale));
            }
        }
        let c = if sign > 0 { Rat::one() } else { -Rat::one() };
        out = &out + &ExactPoly::monomial(space, &vars, c);
    }
    Ok(out)
}

/// Alternant in the x-block of an n-variable space.
pub fn alternant(alpha: &IndexSeq, n: u32) -> Result<ExactPoly, BasesError> {
    alternant_in(VarSpace::new(n), Block::X, alpha, 1)
}

/// Exact single-divisor division in lexicographic order; fails unless the
/// remainder is zero.
pub fn exact_divide(f: &ExactPoly, g: &ExactPoly) -> Result<ExactPoly, BasesError> {
    let space = f.space();
    let (g_mono, g_coeff) = g.lex_leading().ok_or(BasesError::InexactDivision)?;
    let mut remainder = f.clone();
    let mut quotient = ExactPoly::zero(space);
    while let Some((r_mono, r_coeff)) = remainder.lex_leading() {
        if !ExactPoly::divides(&g_mono, &r_mono) {
            return Err(BasesError::InexactDivision);
        }
        let q_mono = ExactPoly::mono_quotient(&r_mono, &g_mono);
        let q_coeff = &r_coeff / &g_coeff;
        quotient.push_term(q_mono.clone(), q_coeff.clone());
        remainder.sub_mul_mono(&q_mono, &q_coeff, g);
    }
    Ok(quotient)
}

/// Schur polynomial `s_lambda` in `x1..xn` as the bialternant quotient.
pub fn schur(ctx: &Ctx, lambda: &Partition, n: u32) -> Result<Arc<ExactPoly>, BasesError> {
    if lambda.len() as u32 > n {
        return Err(BasesError::LengthExceedsVariables(lambda.clone(), n));
    }
    let key = (lambda.clone(), n);
    let mut failure = None;
    let value = ctx.schur_polys.get_or_compute(&key, || {
        match schur_uncached(lambda, n) {
            Ok(p) => p,
            Err(e) => {
                failure = Some(e);
                ExactPoly::zero(VarSpace::new(n))
            }
        }
    });
    match failure {
        None => Ok(value),
        Some(e) => Err(e),
    }
}

fn schur_uncached(lambda: &Partition, n: u32) -> Result<ExactPoly, BasesError> {
    let delta: Vec<u32> = (0..n).rev().collect();
    let shifted = IndexSeq::new(
        (0..n as usize).map(|i| lambda.part(i) + delta[i]),
    );
    let numerator = alternant(&shifted, n)?;
    let vandermonde = alternant(&IndexSeq::new(delta), n)?;
    exact_divide(&numerator, &vandermonde)
}

/// Finitely supported map partition -> coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BasisExpansion {
    coeffs: BTreeMap<Partition, Rat>,
}

impl BasisExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: Partition, value: Rat) {
        if !value.is_zero() {
            self.coeffs.insert(key, value);
        }
    }

    pub fn coeff(&self, key: &Partition) -> Rat {
        self.coeffs.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Rat)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Splits a pure-x polynomial into homogeneous components by total degree.
fn homogeneous_components(f: &ExactPoly) -> Result<BTreeMap<u32, ExactPoly>, BasesError> {
    let space = f.space();
    let n = space.n as usize;
    let mut out: BTreeMap<u32, ExactPoly> = BTreeMap::new();
    for (exps, coeff) in f.terms() {
        if exps[n..].iter().any(|&e| e != 0) {
            return Err(BasesError::HasYVariables);
        }
        let degree: u32 = exps.iter().map(|&e| e as u32).sum();
        let (mono, c, _) = ExactPoly::raw_term(space, exps.to_vec(), coeff.clone());
        out.entry(degree)
            .or_insert_with(|| ExactPoly::zero(space))
            .push_term(mono, c);
    }
    Ok(out)
}

/// Monomial-basis coefficients of one homogeneous symmetric component,
/// verified by reconstruction.
fn monomial_coefficients(
    component: &ExactPoly,
    n: u32,
) -> Result<BasisExpansion, BasesError> {
    let mut out = BasisExpansion::new();
    for (exps, coeff) in component.terms() {
        let xs = &exps[..n as usize];
        if xs.windows(2).all(|w| w[0] >= w[1]) {
            let parts: Vec<u32> = xs.iter().map(|&e| e as u32).collect();
            out.insert(Partition::from_parts(parts), coeff.clone());
        }
    }
    // Reconstruct; any discrepancy means the input was not symmetric.
    let mut rebuilt = ExactPoly::zero(component.space());
    for (mu, c) in out.iter() {
        rebuilt = &rebuilt + &monomial_sym(mu, n)?.scale(c);
    }
    if &rebuilt != component {
        return Err(BasesError::NotSymmetric);
    }
    Ok(out)
}

/// Target family for [`expand_in_basis`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpandFamily {
    Monomial,
    Schur,
    Elementary,
}

/// Coefficients of `e_xi` (parts <= n) against the monomial basis (length <=
/// n) within one weight; the two index sets are conjugate so the matrix is
/// square and invertible.
#[derive(Clone, Debug)]
pub struct ElementaryMatrix {
    pub weight: u32,
    pub n: u32,
    pub e_index: Vec<Partition>,
    pub m_index: Vec<Partition>,
    /// rows[i][j] = coefficient of `m_{m_index[j]}` in `e_{e_index[i]}`.
    pub rows: Vec<Vec<Rat>>,
}

pub fn elementary_matrix(ctx: &Ctx, weight: u32, n: u32) -> Arc<ElementaryMatrix> {
    ctx.elementary_matrices.get_or_compute(&(weight, n), || {
        let e_index = enumerate_partitions(weight, weight.max(1), n);
        let m_index = enumerate_partitions(weight, n, weight.max(1));
        let rows = e_index
            .iter()
            .map(|xi| {
                let poly = basis_poly(BasisKind::Elementary, xi, n).expect("xi has parts <= n");
                let coeffs = monomial_coefficients(&poly, n).expect("e_xi is symmetric");
                m_index.iter().map(|mu| coeffs.coeff(mu)).collect()
            })
            .collect();
        ElementaryMatrix {
            weight,
            n,
            e_index,
            m_index,
            rows,
        }
    })
}

/// Expands a symmetric polynomial in the requested family, one weight block
/// at a time. Reconstruction is exact by construction of each solve.
pub fn expand_in_basis(
    ctx: &Ctx,
    f: &ExactPoly,
    family: ExpandFamily,
    n: u32,
) -> Result<BasisExpansion, BasesError> {
    let mut out = BasisExpansion::new();
    for (weight, component) in homogeneous_components(f)? {
        let monomial = monomial_coefficients(&component, n)?;
        match family {
            ExpandFamily::Monomial => {
                for (mu, c) in monomial.iter() {
                    out.insert(mu.clone(), c.clone());
                }
            }
            ExpandFamily::Schur => {
                let block = ctx.weight_block(weight, IndexCap::MaxLen(n));
                // b = K^T c with K unitriangular: forward substitution in
                // descending-lex order.
                let b: Vec<Rat> = block.index.iter().map(|mu| monomial.coeff(mu)).collect();
                let mut c = vec![Rat::zero(); b.len()];
                for j in 0..b.len() {
                    let mut acc = b[j].clone();
                    for i in 0..j {
                        if block.kostka[i][j] != 0 {
                            acc -= &c[i] * Rat::from_integer(block.kostka[i][j].into());
                        }
                    }
                    c[j] = acc;
                }
                for (lambda, value) in block.index.iter().zip(c) {
                    out.insert(lambda.clone(), value);
                }
            }
            ExpandFamily::Elementary => {
                let mat = elementary_matrix(ctx, weight, n);
                let b: Vec<Rat> = mat.m_index.iter().map(|mu| monomial.coeff(mu)).collect();
                let c = solve_transposed(&mat.rows, b).ok_or(BasesError::NotInSpan)?;
                for (xi, value) in mat.e_index.iter().zip(c) {
                    out.insert(xi.clone(), value);
                }
            }
        }
    }
    Ok(out)
}

/// Solves `A^T c = b` by Gaussian elimination over exact rationals.
fn solve_transposed(rows: &[Vec<Rat>], b: Vec<Rat>) -> Option<Vec<Rat>> {
    let size = rows.len();
    // Build the transposed augmented system.
    let mut m: Vec<Vec<Rat>> = (0..size)
        .map(|i| {
            let mut row: Vec<Rat> = (0..size).map(|j| rows[j][i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone().recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..size {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for cc in col..=size {
                    let delta = &factor * &m[col][cc];
                    m[r][cc] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[size].clone()).collect())
}

/// Littlewood-Richardson coefficients: the Schur-family expansion of
/// `s_mu * s_nu` in the n-variable ring.
pub fn lr_coefficients(
    ctx: &Ctx,
    mu: &Partition,
    nu: &Partition,
    n: u32,
) -> Result<Arc<BasisExpansion>, BasesError> {
    for q in [mu, nu] {
        if q.len() as u32 > n {
            return Err(BasesError::LengthExceedsVariables(q.clone(), n));
        }
    }
    let key = (mu.clone(), nu.clone(), n);
    let mut failure = None;
    let value = ctx.lr_expansions.get_or_compute(&key, || {
        let compute = || -> Result<BasisExpansion, BasesError> {
            let product = &*schur(ctx, mu, n)? * &*schur(ctx, nu, n)?;
            expand_in_basis(ctx, &product, ExpandFamily::Schur, n)
        };
        match compute() {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                BasisExpansion::new()
            }
        }
    });
    match failure {
        None => Ok(value),
        Some(e) => Err(e),
    }
}
