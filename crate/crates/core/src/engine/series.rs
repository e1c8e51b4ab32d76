//! Truncated-series checks.
//!
//! These identities involve formal series in the y-block; each check compares
//! in multiplied form (never dividing a truncated series by an alternant) and
//! truncates both sides at the same y-degree, which keeps the comparison
//! exact up to that grade.

use std::fmt;
use std::time::Instant;

use num_traits::One;

use crate::bases::{alternant_in, schur};
use crate::ctx::Ctx;
use crate::engine::{
    delta_big, delta_small, f_g_poly, te_to, CheckReport, EngineError, Parity, Variant,
};
use crate::partition::{partitions_max_length, IndexSeq, Partition};
use crate::poly::{ratio, Block, ExactPoly, Grading, Rat, VarSpace};
use crate::qseries::schur_two_reduced;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PhiSign {
    Plus,
    Minus,
}

impl fmt::Display for PhiSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiSign::Plus => write!(f, "plus"),
            PhiSign::Minus => write!(f, "minus"),
        }
    }
}

fn delta_index(n: u32) -> IndexSeq {
    IndexSeq::new((0..n).rev())
}

/// `y1*y2*...*yn`.
fn y_product(space: VarSpace) -> ExactPoly {
    let vars: Vec<_> = (0..space.n).map(|i| (space.y(i), 1u16)).collect();
    ExactPoly::monomial(space, &vars, num_traits::One::one())
}

/// The kernel `sum_{m odd, m<=D} (2/m) p_m(x) p_m(y)`; terms with `m > D`
/// exceed the y-degree bound and cannot contribute.
fn odd_power_sum_kernel(n: u32, max_y_degree: u32) -> Result<ExactPoly, EngineError> {
    let space = VarSpace::new(n);
    let mut out = ExactPoly::zero(space);
    let mut m = 1u32;
    while m <= max_y_degree {
        let row = Partition::from_parts([m]);
        let pm_x = crate::bases::basis_poly(crate::bases::BasisKind::PowerSum, &row, n)?;
        let pm_y = pm_x.x_block_to_y(1)?;
        out = &out + &(&pm_x * &pm_y).scale(&ratio(2, m as i64));
        m += 2;
    }
    Ok(out)
}

/// Totally even (plus) or totally odd (minus) part of
/// `a_delta(y) * exp(kernel)`, truncated at the given y-degree. This is the
/// numerator of the corresponding quotient series; callers verify identities
/// in the multiplied-out form against `a_delta(y^2)`.
pub fn phi_numerator(
    ctx: &Ctx,
    n: u32,
    sign: PhiSign,
    max_y_degree: u32,
) -> Result<ExactPoly, EngineError> {
    let need = n * n.saturating_sub(1);
    if max_y_degree < need {
        return Err(EngineError::DegreeTooSmall {
            need,
            got: max_y_degree,
        });
    }
    let key = (n, sign == PhiSign::Plus, max_y_degree);
    let mut failure = None;
    let value = ctx.phi_numerators.get_or_compute(&key, || {
        let compute = || -> Result<ExactPoly, EngineError> {
            let space = VarSpace::new(n);
            let kernel = odd_power_sum_kernel(n, max_y_degree)?;
            let series = kernel.graded_exp(max_y_degree)?;
            let a_delta_y = alternant_in(space, Block::Y, &delta_index(n), 1)?;
            let numerator = (&a_delta_y * &series).truncate(Grading::Y, max_y_degree);
            Ok(te_to(
                &numerator,
                match sign {
                    PhiSign::Plus => Parity::Even,
                    PhiSign::Minus => Parity::Odd,
                },
            ))
        };
        match compute() {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                ExactPoly::zero(VarSpace::new(n))
            }
        }
    });
    match failure {
        None => Ok((*value).clone()),
        Some(e) => Err(e),
    }
}

/// Verifies, up to the y-degree bound, that the numerator series equals
/// `a_delta(y^2) * sum_lambda s_lambda(y^2) S_{2lambda+delta}(x)` for the plus
/// sign, and the same with `y1..yn * s_lambda(y^2) S_{2lambda+Delta}(x)` for
/// the minus sign.
pub fn check_phi(
    ctx: &Ctx,
    n: u32,
    sign: PhiSign,
    max_y_degree: u32,
) -> Result<CheckReport, EngineError> {
    let started = Instant::now();
    let params = format!("n={n} sign={sign} d={max_y_degree}");
    let space = VarSpace::new(n);
    let numerator = phi_numerator(ctx, n, sign, max_y_degree)?;
    let a_delta_y2 = alternant_in(space, Block::Y, &delta_index(n), 2)?;
    let base_degree = n * (n - 1) + if sign == PhiSign::Minus { n } else { 0 };
    let shift = match sign {
        PhiSign::Plus => delta_small(n),
        PhiSign::Minus => delta_big(n),
    };
    let mut rhs = ExactPoly::zero(space);
    let mut w = 0u32;
    while base_degree + 2 * w <= max_y_degree {
        for lambda in partitions_max_length(w, n) {
            let s_y2 = schur(ctx, &lambda, n)?.x_block_to_y(2)?;
            let shape = lambda.scale_add(2, &shift, n)?;
            let s2r = schur_two_reduced(ctx, &shape, n);
            let mut term = &(&a_delta_y2 * &s_y2) * &*s2r;
            if sign == PhiSign::Minus {
                term = &term * &y_product(space);
            }
            rhs = &rhs + &term;
        }
        w += 1;
    }
    let diff = &numerator - &rhs.truncate(Grading::Y, max_y_degree);
    Ok(CheckReport::gated("phi_expansion", params, started, diff))
}

/// Verifies the defining relations in multiplied form:
/// even: `N_minus^2 = a_delta(y^2) * sum_lambda a_{lambda+Delta}(y^2) f_lambda(x)`,
/// odd:  `N_plus N_minus = a_delta(y^2) * sum_lambda y1..yn a_{lambda+delta}(y^2) g_lambda(x)`,
/// where `N_(+/-)` are the numerator series of the two quotients. The shifts
/// differ because squaring the minus series absorbs `y1^2..yn^2` into the
/// squared-variable alternant while the mixed product leaves a single
/// `y1..yn` outside; the degree bookkeeping pins both down.
pub fn check_defining_relation(
    ctx: &Ctx,
    n: u32,
    variant: Variant,
    max_y_degree: u32,
) -> Result<CheckReport, EngineError> {
    let started = Instant::now();
    let params = format!("n={n} variant={variant} d={max_y_degree}");
    let space = VarSpace::new(n);
    let base_degree = match variant {
        Variant::Even => 2 * n * n,
        Variant::Odd => 2 * n * n - n,
    };
    if max_y_degree < base_degree {
        return Err(EngineError::DegreeTooSmall {
            need: base_degree,
            got: max_y_degree,
        });
    }
    let n_minus = phi_numerator(ctx, n, PhiSign::Minus, max_y_degree)?;
    let lhs = match variant {
        Variant::Even => (&n_minus * &n_minus).truncate(Grading::Y, max_y_degree),
        Variant::Odd => {
            let n_plus = phi_numerator(ctx, n, PhiSign::Plus, max_y_degree)?;
            (&n_plus * &n_minus).truncate(Grading::Y, max_y_degree)
        }
    };
    let shift = match variant {
        Variant::Even => delta_big(n),
        Variant::Odd => delta_small(n),
    };
    let a_delta_y2 = alternant_in(space, Block::Y, &delta_index(n), 2)?;
    let mut rhs = ExactPoly::zero(space);
    let mut w = 0u32;
    while base_degree + 2 * w <= max_y_degree {
        for lambda in partitions_max_length(w, n) {
            let shape = lambda.scale_add(1, &shift, n)?;
            let a_shape = alternant_in(space, Block::Y, &shape.to_index_seq(n as usize), 2)?;
            let coeff = f_g_poly(ctx, &lambda, n, variant)?;
            let mut term = &a_shape * &coeff;
            if variant == Variant::Odd {
                term = &term * &y_product(space);
            }
            rhs = &rhs + &term;
        }
        w += 1;
    }
    rhs = (&a_delta_y2 * &rhs).truncate(Grading::Y, max_y_degree);
    let diff = &lhs - &rhs;
    Ok(CheckReport::gated(
        "defining_relation",
        params,
        started,
        diff,
    ))
}

/// The Cauchy-type identity
/// `sum_lambda s_lambda(y) S_lambda(x) = prod_{i,j} (1+x_i y_j)/(1-x_i y_j)`,
/// compared after truncating both sides at total y-degree `max_y_degree`.
/// The right side is expanded directly from its 2n^2 factor series.
pub fn check_cauchy(ctx: &Ctx, n: u32, max_y_degree: u32) -> Result<CheckReport, EngineError> {
    let started = Instant::now();
    let params = format!("n={n} d={max_y_degree}");
    let space = VarSpace::new(n);

    let mut lhs = ExactPoly::zero(space);
    for w in 0..=max_y_degree {
        for lambda in partitions_max_length(w, n) {
            let s_y = schur(ctx, &lambda, n)?.x_block_to_y(1)?;
            lhs = &lhs + &(&s_y * &*schur_two_reduced(ctx, &lambda, n));
        }
    }

    let mut rhs = ExactPoly::one(space);
    for i in 0..n {
        for j in 0..n {
            let xy = ExactPoly::monomial(space, &[(space.x(i), 1), (space.y(j), 1)], Rat::one());
            let linear = &ExactPoly::one(space) + &xy;
            let mut geometric = ExactPoly::zero(space);
            let mut power = ExactPoly::one(space);
            for _ in 0..=max_y_degree {
                geometric = &geometric + &power;
                power = &power * &xy;
            }
            rhs = (&rhs * &(&linear * &geometric)).truncate(Grading::Y, max_y_degree);
        }
    }
    let diff = &lhs - &rhs;
    Ok(CheckReport::gated("cauchy_identity", params, started, diff))
}
