//! Suite definitions: each suite expands to a list of independent check
//! tasks, run on a fixed-size worker pool and emitted in canonical order
//! (sorted by check id, then parameters) regardless of scheduling.

use clap::ValueEnum;
use rayon::prelude::*;

use schurq_core::engine::{
    check_binomial_pair, check_cauchy, check_defining_relation, check_ebasis_forms,
    check_er_closed_form, check_inverse_kostka_identity_sweep, check_main_conjecture,
    check_n2_coefficient, check_phi, check_q_doubling_lemma, check_q_expression,
    two_column_partitions, CheckReport, PhiSign, Variant,
};
use schurq_core::partition::partitions_max_length;
use schurq_core::Ctx;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Suite {
    /// Main identity sweep over the proved range (n <= 2).
    Core,
    /// q-doubling convolution lemma and the binomial lemma.
    Lemmas,
    /// Two-column closed form vs. inverted blocks, and the split identity.
    Kostka,
    /// Series expansions: Cauchy kernel, numerator expansions, defining relations.
    Phi,
    /// Coefficient-wise identity at instance size 2.
    N2,
    /// Report-only sweep of the open range at instance size 3.
    Explore,
}

pub const GATING_SUITES: [Suite; 5] =
    [Suite::Core, Suite::Lemmas, Suite::Kostka, Suite::Phi, Suite::N2];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub n_max: u32,
    pub weight_max: u32,
    pub y_degree_max: u32,
    pub workers: usize,
}

type Task = Box<dyn Fn(&Ctx) -> CheckReport + Send + Sync>;

fn both() -> [Variant; 2] {
    [Variant::Even, Variant::Odd]
}

fn core_tasks(cfg: &SuiteConfig, tasks: &mut Vec<Task>) {
    for n in 1..=cfg.n_max.min(2) {
        for w in 0..=cfg.weight_max {
            for lambda in partitions_max_length(w, n) {
                for variant in both() {
                    let lambda = lambda.clone();
                    tasks.push(Box::new(move |ctx| {
                        check_main_conjecture(ctx, &lambda, n, variant)
                            .expect("lambda fits n by construction")
                    }));
                }
            }
        }
        // The same identity family grouped against elementary-basis
        // coefficients, including the window cross-check.
        for variant in both() {
            let weight_max = cfg.weight_max;
            tasks.push(Box::new(move |ctx| {
                check_ebasis_forms(ctx, n, variant, weight_max)
                    .expect("instance size is positive")
            }));
        }
    }
}

fn lemmas_tasks(tasks: &mut Vec<Task>) {
    // Fixed desk-scale ranges; see the README for why these are not
    // flag-driven.
    for n in 1..=3u32 {
        for u in 0..=10u32 {
            tasks.push(Box::new(move |ctx| check_q_doubling_lemma(ctx, u, n)));
        }
    }
    for total in 0..=24i64 {
        for n in 0..=total {
            let m = total - n;
            tasks.push(Box::new(move |_| check_binomial_pair(n, m)));
        }
    }
}

fn kostka_tasks(tasks: &mut Vec<Task>) {
    for w in 0..=16u32 {
        tasks.push(Box::new(move |ctx| check_er_closed_form(ctx, w)));
    }
    for xi in two_column_partitions(10) {
        tasks.push(Box::new(move |ctx| {
            check_inverse_kostka_identity_sweep(ctx, &xi, 6)
        }));
    }
}

fn phi_tasks(cfg: &SuiteConfig, tasks: &mut Vec<Task>) {
    for n in 1..=cfg.n_max.min(2) {
        let d = cfg.y_degree_max;
        for sign in [PhiSign::Plus, PhiSign::Minus] {
            let d_eff = d.max(n * (n - 1));
            tasks.push(Box::new(move |ctx| {
                check_phi(ctx, n, sign, d_eff).expect("degree bound satisfied")
            }));
        }
        for variant in both() {
            let need = match variant {
                Variant::Even => 2 * n * n,
                Variant::Odd => 2 * n * n - n,
            };
            let d_eff = d.max(need);
            tasks.push(Box::new(move |ctx| {
                check_defining_relation(ctx, n, variant, d_eff)
                    .expect("degree bound satisfied")
            }));
        }
        tasks.push(Box::new(move |ctx| {
            check_cauchy(ctx, n, d).expect("cauchy accepts any degree bound")
        }));
    }
}

fn n2_tasks(cfg: &SuiteConfig, tasks: &mut Vec<Task>) {
    for xi in two_column_partitions(cfg.weight_max) {
        for variant in both() {
            let xi = xi.clone();
            tasks.push(Box::new(move |ctx| {
                check_n2_coefficient(ctx, &xi, variant).expect("xi has parts <= 2")
            }));
        }
        for variant in both() {
            // The closed Q-expression behind the coefficient identity, in the
            // same two-variable ring.
            let xi = xi.clone();
            if xi.len() <= 2 {
                tasks.push(Box::new(move |ctx| {
                    check_q_expression(ctx, &xi, 2, variant).expect("length <= 2")
                }));
            }
        }
    }
}

fn explore_tasks(cfg: &SuiteConfig, tasks: &mut Vec<Task>) {
    let n = 3u32;
    for w in 0..=cfg.weight_max {
        for lambda in partitions_max_length(w, n) {
            for variant in both() {
                let lambda = lambda.clone();
                tasks.push(Box::new(move |ctx| {
                    check_main_conjecture(ctx, &lambda, n, variant)
                        .expect("lambda fits n by construction")
                }));
            }
        }
    }
    for variant in both() {
        let weight_max = cfg.weight_max;
        tasks.push(Box::new(move |ctx| {
            check_ebasis_forms(ctx, n, variant, weight_max).expect("instance size is positive")
        }));
    }
}

pub fn build_tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let mut tasks: Vec<Task> = Vec::new();
    for suite in &cfg.suites {
        match suite {
            Suite::Core => core_tasks(cfg, &mut tasks),
            Suite::Lemmas => lemmas_tasks(&mut tasks),
            Suite::Kostka => kostka_tasks(&mut tasks),
            Suite::Phi => phi_tasks(cfg, &mut tasks),
            Suite::N2 => n2_tasks(cfg, &mut tasks),
            Suite::Explore => explore_tasks(cfg, &mut tasks),
        }
    }
    tasks
}

/// Runs every task on a pool of the configured size and returns the reports
/// in canonical order.
pub fn run_suites(cfg: &SuiteConfig) -> Result<Vec<CheckReport>, rayon::ThreadPoolBuildError> {
    let ctx = Ctx::new();
    let tasks = build_tasks(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()?;
    let mut reports: Vec<CheckReport> =
        pool.install(|| tasks.par_iter().map(|task| task(&ctx)).collect());
    reports.sort_by(|a, b| (a.check, &a.params).cmp(&(b.check, &b.params)));
    Ok(reports)
}
