//! Sparse multivariate polynomials over exact rationals.
//!
//! A [`VarSpace`] of size `n` carries two variable blocks, `x1..xn` and
//! `y1..yn`. Terms map exponent keys to nonzero `BigRational` coefficients
//! and are kept in canonical graded-lex order (total degree ascending, then
//! lexicographically dominant monomial first), so equality is structural and
//! rendering is deterministic. No rounding happens anywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `num/den`.
pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("operands live in different variable spaces ({0} vs {1} variables per block)")]
    SpaceMismatch(u32, u32),
    #[error("no binding for variable {0}")]
    UnboundVariable(Var),
    #[error("graded exponential requires every term to have y-degree >= 1")]
    ConstantTermInExponent,
    #[error("polynomial has y-variables, expected pure x-block")]
    UnexpectedYVariables,
}

/// Two disjoint, ordered variable blocks of equal size.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VarSpace {
    pub n: u32,
}

impl VarSpace {
    pub fn new(n: u32) -> Self {
        VarSpace { n }
    }

    pub fn x(&self, idx: u32) -> Var {
        debug_assert!(idx < self.n);
        Var {
            block: Block::X,
            idx,
        }
    }

    pub fn y(&self, idx: u32) -> Var {
        debug_assert!(idx < self.n);
        Var {
            block: Block::Y,
            idx,
        }
    }

    fn width(&self) -> usize {
        2 * self.n as usize
    }

    fn slot(&self, v: Var) -> usize {
        match v.block {
            Block::X => v.idx as usize,
            Block::Y => (self.n + v.idx) as usize,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Block {
    X,
    Y,
}

/// A single variable identity; `idx` is 0-based, display is 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub block: Block,
    pub idx: u32,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.block {
            Block::X => "x",
            Block::Y => "y",
        };
        write!(f, "{}{}", name, self.idx + 1)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Degree gradings a polynomial can be truncated by.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grading {
    X,
    Y,
    Total,
}

/// Exponent key: dense exponent vector over `x1..xn,y1..yn`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    exps: Vec<u16>,
}

impl Mono {
    fn unit(width: usize) -> Self {
        Mono {
            exps: vec![0; width],
        }
    }

    fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    fn block_degree(&self, n: usize, block: Block) -> u32 {
        let range = match block {
            Block::X => 0..n,
            Block::Y => n..2 * n,
        };
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Graded order, lexicographically dominant monomial first within a
        // degree, so map iteration matches the canonical rendering order.
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mono{:?}", self.exps)
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactPoly {
    space: VarSpace,
    terms: BTreeMap<Mono, Rat>,
}

impl ExactPoly {
    pub fn zero(space: VarSpace) -> Self {
        ExactPoly {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: VarSpace) -> Self {
        Self::constant(space, Rat::one())
    }

    pub fn constant(space: VarSpace, c: Rat) -> Self {
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(Mono::unit(space.width()), c);
        }
        p
    }

    pub fn var(space: VarSpace, v: Var) -> Self {
        Self::var_pow(space, v, 1)
    }

    pub fn var_pow(space: VarSpace, v: Var, e: u16) -> Self {
        let mut mono = Mono::unit(space.width());
        mono.exps[space.slot(v)] = e;
        let mut p = Self::zero(space);
        if e == 0 {
            return Self::one(space);
        }
        p.terms.insert(mono, Rat::one());
        p
    }

    /// Monomial `c * prod v^e` from explicit (variable, exponent) pairs.
    pub fn monomial(space: VarSpace, vars: &[(Var, u16)], c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero(space);
        }
        let mut mono = Mono::unit(space.width());
        for &(v, e) in vars {
            mono.exps[space.slot(v)] += e;
        }
        let mut p = Self::zero(space);
        p.terms.insert(mono, c);
        p
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self, grading: Grading) -> u32 {
        self.terms
            .keys()
            .map(|m| match grading {
                Grading::Total => m.total_degree(),
                b => m.block_degree(self.space.n as usize, if b == Grading::X { Block::X } else { Block::Y }),
            })
            .max()
            .unwrap_or(0)
    }

    /// True when every term has the same degree `d` in the given grading.
    pub fn is_homogeneous(&self, grading: Grading, d: u32) -> bool {
        self.terms.keys().all(|m| {
            (match grading {
                Grading::Total => m.total_degree(),
                Grading::X => m.block_degree(self.space.n as usize, Block::X),
                Grading::Y => m.block_degree(self.space.n as usize, Block::Y),
            }) == d
        })
    }

    fn add_term(&mut self, mono: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_space(&self, other: &Self) -> Result<(), PolyError> {
        if self.space != other.space {
            return Err(PolyError::SpaceMismatch(self.space.n, other.space.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_space(other)?;
        let mut out = Self::zero(self.space);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        ExactPoly {
            space: self.space,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.space);
        }
        ExactPoly {
            space: self.space,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.space);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact image under the ring morphism sending each variable occurring in
    /// `self` to its binding. The bindings fix the target space.
    pub fn substitute(
        &self,
        target: VarSpace,
        bindings: &BTreeMap<Var, ExactPoly>,
    ) -> Result<ExactPoly, PolyError> {
        for p in bindings.values() {
            if p.space != target {
                return Err(PolyError::SpaceMismatch(p.space.n, target.n));
            }
        }
        let n = self.space.n;
        let mut out = ExactPoly::zero(target);
        for (mono, coeff) in &self.terms {
            let mut term = ExactPoly::constant(target, coeff.clone());
            for (slot, &e) in mono.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = if (slot as u32) < n {
                    Var {
                        block: Block::X,
                        idx: slot as u32,
                    }
                } else {
                    Var {
                        block: Block::Y,
                        idx: slot as u32 - n,
                    }
                };
                let image = bindings.get(&v).ok_or(PolyError::UnboundVariable(v))?;
                term = &term * &image.pow(e as u32);
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Drops every term whose degree in the chosen grading exceeds `max_degree`.
    pub fn truncate(&self, grading: Grading, max_degree: u32) -> Self {
        let n = self.space.n as usize;
        ExactPoly {
            space: self.space,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| {
                    let d = match grading {
                        Grading::Total => m.total_degree(),
                        Grading::X => m.block_degree(n, Block::X),
                        Grading::Y => m.block_degree(n, Block::Y),
                    };
                    d <= max_degree
                })
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Truncated series exponential `sum_{k<=D} self^k / k!`, graded by
    /// y-degree. Every term of `self` must have y-degree at least 1, which
    /// makes the truncation exact: terms of y-degree <= D in exp(self) agree
    /// with the returned polynomial.
    pub fn graded_exp(&self, max_y_degree: u32) -> Result<ExactPoly, PolyError> {
        let n = self.space.n as usize;
        if self.terms.keys().any(|m| m.block_degree(n, Block::Y) == 0) {
            return Err(PolyError::ConstantTermInExponent);
        }
        let mut out = ExactPoly::one(self.space);
        let mut power = ExactPoly::one(self.space);
        let mut factorial = Rat::one();
        for k in 1..=max_y_degree {
            power = (&power * self).truncate(Grading::Y, max_y_degree);
            if power.is_zero() {
                break;
            }
            factorial *= rat(k as i64);
            out = &out + &power.scale(&factorial.recip());
        }
        Ok(out)
    }

    /// Moves the x-block onto the y-block, multiplying every exponent by
    /// `scale`; used to form values like f(y) or f(y^2) from f(x). The input
    /// must not involve y-variables.
    pub fn x_block_to_y(&self, scale: u16) -> Result<ExactPoly, PolyError> {
        let n = self.space.n as usize;
        let mut out = ExactPoly::zero(self.space);
        for (mono, coeff) in &self.terms {
            if mono.block_degree(n, Block::Y) != 0 {
                return Err(PolyError::UnexpectedYVariables);
            }
            let mut exps = vec![0u16; 2 * n];
            for i in 0..n {
                exps[n + i] = mono.exps[i].checked_mul(scale).expect("exponent overflow");
            }
            out.add_term(Mono { exps }, coeff.clone());
        }
        Ok(out)
    }

    /// Coefficient of the given exponent vector (length 2n), zero if absent.
    pub fn coeff(&self, exps: &[u16]) -> Rat {
        let mono = Mono {
            exps: exps.to_vec(),
        };
        self.terms.get(&mono).cloned().unwrap_or_else(Rat::zero)
    }

    /// Iterates terms in canonical order as (exponents, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Rat)> {
        self.terms.iter().map(|(m, c)| (m.exps.as_slice(), c))
    }

    /// Leading term in pure lexicographic order (x1 > x2 > ... > yn), used by
    /// the exact division routine.
    pub(crate) fn lex_leading(&self) -> Option<(Mono, Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| a.exps.cmp(&b.exps))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    pub(crate) fn sub_mul_mono(&mut self, mono: &Mono, c: &Rat, other: &ExactPoly) {
        for (m, k) in &other.terms {
            self.add_term(mono.mul(m), -(c * k));
        }
    }

    pub(crate) fn raw_term(space: VarSpace, exps: Vec<u16>, c: Rat) -> (Mono, Rat, VarSpace) {
        (Mono { exps }, c, space)
    }

    pub(crate) fn divides(a: &Mono, b: &Mono) -> bool {
        a.exps.iter().zip(&b.exps).all(|(x, y)| x <= y)
    }

    pub(crate) fn mono_quotient(b: &Mono, a: &Mono) -> Mono {
        Mono {
            exps: b.exps.iter().zip(&a.exps).map(|(x, y)| x - y).collect(),
        }
    }

    pub(crate) fn push_term(&mut self, mono: Mono, c: Rat) {
        self.add_term(mono, c);
    }
}

impl std::ops::Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: Self) -> ExactPoly {
        self.checked_add(rhs).expect("variable space mismatch")
    }
}

impl std::ops::Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: Self) -> ExactPoly {
        self.checked_sub(rhs).expect("variable space mismatch")
    }
}

impl std::ops::Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: Self) -> ExactPoly {
        self.checked_mul(rhs).expect("variable space mismatch")
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.space.n;
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (slot, &e) in mono.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = if (slot as u32) < n {
                    Var {
                        block: Block::X,
                        idx: slot as u32,
                    }
                } else {
                    Var {
                        block: Block::Y,
                        idx: slot as u32 - n,
                    }
                };
                if e == 1 {
                    factors.push(v.to_string());
                } else {
                    factors.push(format!("{v}^{e}"));
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactPoly({self})")
    }
}

/// Sum of a slice of polynomials over a common space.
pub fn sum(space: VarSpace, polys: impl IntoIterator<Item = ExactPoly>) -> ExactPoly {
    let mut out = ExactPoly::zero(space);
    for p in polys {
        out = &out + &p;
    }
    out
}

/// Shared handle used by caches.
pub type PolyHandle = Arc<ExactPoly>;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(n: u32) -> VarSpace {
        VarSpace::new(n)
    }

    fn x(s: VarSpace, i: u32) -> ExactPoly {
        ExactPoly::var(s, s.x(i))
    }

    fn y(s: VarSpace, i: u32) -> ExactPoly {
        ExactPoly::var(s, s.y(i))
    }

    #[test]
    fn ring_op_examples() {
        let s = sp(2);
        let a = &x(s, 0) + &x(s, 1);
        let b = &x(s, 0) - &x(s, 1);
        let prod = &a * &b;
        let want = &(&x(s, 0) * &x(s, 0)) - &(&x(s, 1) * &x(s, 1));
        assert_eq!(prod, want);
        assert_eq!(&a + &ExactPoly::zero(s), a);
        assert_eq!(a.pow(2).to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let a = ExactPoly::one(sp(1));
        let b = ExactPoly::one(sp(2));
        assert_eq!(
            a.checked_add(&b).unwrap_err(),
            PolyError::SpaceMismatch(1, 2)
        );
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn substitute_examples() {
        let s = sp(2);
        // y1^2*y2 with y_i -> x_i.
        let p = &y(s, 0).pow(2) * &y(s, 1);
        let bind: BTreeMap<Var, ExactPoly> =
            [(s.y(0), x(s, 0)), (s.y(1), x(s, 1))].into_iter().collect();
        let q = p.substitute(s, &bind).unwrap();
        assert_eq!(q, &x(s, 0).pow(2) * &x(s, 1));

        // x1 + y1 with y1 -> x1, x1 -> x1 gives 2*x1.
        let p = &x(s, 0) + &y(s, 0);
        let bind: BTreeMap<Var, ExactPoly> =
            [(s.y(0), x(s, 0)), (s.x(0), x(s, 0))].into_iter().collect();
        assert_eq!(p.substitute(s, &bind).unwrap(), x(s, 0).scale(&rat(2)));

        // Missing binding is an error.
        let err = p.substitute(s, &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, PolyError::UnboundVariable(_)));
    }

    #[test]
    fn truncate_examples() {
        let s = sp(1);
        let p = &(&ExactPoly::one(s) + &y(s, 0)) + &y(s, 0).pow(2);
        assert_eq!(p.truncate(Grading::Y, 1), &ExactPoly::one(s) + &y(s, 0));
        assert_eq!(p.truncate(Grading::Y, 5), p);
        let q = &x(s, 0).pow(3) * &y(s, 0);
        assert!(q.truncate(Grading::Y, 0).is_zero());
    }

    #[test]
    fn graded_exp_examples() {
        let s = sp(1);
        assert_eq!(
            ExactPoly::zero(s).graded_exp(3).unwrap(),
            ExactPoly::one(s)
        );
        // exp(y1) to degree 2.
        let e = y(s, 0).graded_exp(2).unwrap();
        let want = &(&ExactPoly::one(s) + &y(s, 0)) + &y(s, 0).pow(2).scale(&ratio(1, 2));
        assert_eq!(e, want);
        // exp(2*x1*y1) to y-degree 2 matches (1+x1*y1)/(1-x1*y1) expanded
        // directly: 1 + 2*x1*y1 + 2*x1^2*y1^2.
        let arg = (&x(s, 0) * &y(s, 0)).scale(&rat(2));
        let e = arg.graded_exp(2).unwrap();
        let xy = &x(s, 0) * &y(s, 0);
        let direct = (&(&ExactPoly::one(s) + &xy)
            * &(&(&ExactPoly::one(s) + &xy) + &xy.pow(2)))
            .truncate(Grading::Y, 2);
        assert_eq!(e, direct);
        assert_eq!(e.to_string(), "1 + 2*x1*y1 + 2*x1^2*y1^2");
        // Nonzero y-degree-0 component is rejected.
        assert_eq!(
            x(s, 0).graded_exp(2).unwrap_err(),
            PolyError::ConstantTermInExponent
        );
    }

    #[test]
    fn rendering_is_graded_lex() {
        let s = sp(2);
        let p = &(&x(s, 0).pow(2) * &x(s, 1)).scale(&rat(2))
            + &x(s, 1).pow(3).scale(&ratio(1, 2));
        assert_eq!(p.to_string(), "2*x1^2*x2 + 1/2*x2^3");
        let q = &(&x(s, 0).pow(2) * &x(s, 1)) + &(&x(s, 0) * &x(s, 1).pow(2));
        assert_eq!(q.to_string(), "x1^2*x2 + x1*x2^2");
        assert_eq!(ExactPoly::zero(s).to_string(), "0");
        let neg = &x(s, 1).neg() + &x(s, 0);
        assert_eq!(neg.to_string(), "x1 - x2");
    }

    #[test]
    fn x_block_to_y_squares() {
        let s = sp(2);
        let p = &x(s, 0).pow(2) + &(&x(s, 0) * &x(s, 1));
        let q = p.x_block_to_y(2).unwrap();
        assert_eq!(q, &y(s, 0).pow(4) + &(&y(s, 0).pow(2) * &y(s, 1).pow(2)));
        assert!(q.x_block_to_y(1).is_err());
    }

    /// Strategy for small random polynomials in a 2-variable space.
    fn small_poly() -> impl Strategy<Value = ExactPoly> {
        proptest::collection::vec(
            (0u16..3, 0u16..3, 0u16..2, 0u16..2, -4i64..=4),
            0..6,
        )
        .prop_map(|terms| {
            let s = sp(2);
            let mut p = ExactPoly::zero(s);
            for (a, b, c, d, k) in terms {
                let m = ExactPoly::monomial(
                    s,
                    &[(s.x(0), a), (s.x(1), b), (s.y(0), c), (s.y(1), d)],
                    rat(k),
                );
                p = &p + &m;
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, ExactPoly::zero(a.space()));
        }

        #[test]
        fn substitution_is_a_ring_morphism(a in small_poly(), b in small_poly()) {
            let s = sp(2);
            // y1 -> x1 + x2, y2 -> x1^2, x_i -> x_i.
            let bind: BTreeMap<Var, ExactPoly> = [
                (s.x(0), ExactPoly::var(s, s.x(0))),
                (s.x(1), ExactPoly::var(s, s.x(1))),
                (s.y(0), &ExactPoly::var(s, s.x(0)) + &ExactPoly::var(s, s.x(1))),
                (s.y(1), ExactPoly::var(s, s.x(0)).pow(2)),
            ].into_iter().collect();
            let lhs = (&a * &b).substitute(s, &bind).unwrap();
            let rhs = &a.substitute(s, &bind).unwrap() * &b.substitute(s, &bind).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs = (&a + &b).substitute(s, &bind).unwrap();
            let rhs = &a.substitute(s, &bind).unwrap() + &b.substitute(s, &bind).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn truncation_composes(p in small_poly(), d1 in 0u32..6, d2 in 0u32..6) {
            let one_then_other = p.truncate(Grading::Y, d1).truncate(Grading::Y, d2);
            prop_assert_eq!(one_then_other, p.truncate(Grading::Y, d1.min(d2)));
        }

        #[test]
        fn graded_exp_is_additive(a in small_poly(), b in small_poly(), d in 0u32..=6) {
            // Restrict to arguments with y-degree >= 1 everywhere.
            let a = &a.truncate(Grading::Y, 3) - &a.truncate(Grading::Y, 0);
            let b = &b.truncate(Grading::Y, 3) - &b.truncate(Grading::Y, 0);
            let lhs = (&a + &b).graded_exp(d).unwrap();
            let rhs = (&a.graded_exp(d).unwrap() * &b.graded_exp(d).unwrap())
                .truncate(Grading::Y, d);
            prop_assert_eq!(lhs.truncate(Grading::Y, d), rhs);
        }
    }
}
