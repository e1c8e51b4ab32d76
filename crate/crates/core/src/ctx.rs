//! Shared memo tables.
//!
//! Every cached value is a pure function of its key, so concurrent workers
//! may race to insert: the first write wins and any losing computation
//! produced an identical value. Locks are never held while computing.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use crate::bases::{BasisExpansion, ElementaryMatrix};
use crate::kostka::{IndexCap, WeightBlock};
use crate::partition::Partition;
use crate::poly::ExactPoly;
use crate::qseries::QKind;

pub(crate) struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    fn new() -> Self {
        Memo {
            map: RwLock::new(HashMap::new()),
        }
    }

    pub(crate) fn get_or_compute(&self, key: &K, compute: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map.read().unwrap().get(key) {
            return Arc::clone(v);
        }
        let value = Arc::new(compute());
        let mut map = self.map.write().unwrap();
        Arc::clone(map.entry(key.clone()).or_insert(value))
    }
}

/// Cache context threaded through every computation that benefits from
/// memoized q-series, Schur polynomials, LR expansions, or Kostka blocks.
pub struct Ctx {
    pub(crate) q_families: RwLock<HashMap<(u32, QKind), Arc<Vec<Arc<ExactPoly>>>>>,
    pub(crate) schur_polys: Memo<(Partition, u32), ExactPoly>,
    pub(crate) schur_two_reduced: Memo<(Partition, u32), ExactPoly>,
    pub(crate) schur_q_polys: Memo<(Partition, u32, QKind), ExactPoly>,
    pub(crate) lr_expansions: Memo<(Partition, Partition, u32), BasisExpansion>,
    pub(crate) weight_blocks: Memo<(u32, IndexCap), WeightBlock>,
    pub(crate) elementary_matrices: Memo<(u32, u32), ElementaryMatrix>,
    /// Keyed by (n, is_plus, y-degree bound).
    pub(crate) phi_numerators: Memo<(u32, bool, u32), ExactPoly>,
}

impl Ctx {
    pub fn new() -> Self {
        Ctx {
            q_families: RwLock::new(HashMap::new()),
            schur_polys: Memo::new(),
            schur_two_reduced: Memo::new(),
            schur_q_polys: Memo::new(),
            lr_expansions: Memo::new(),
            weight_blocks: Memo::new(),
            elementary_matrices: Memo::new(),
            phi_numerators: Memo::new(),
        }
    }

    pub fn weight_block(&self, weight: u32, cap: IndexCap) -> Arc<WeightBlock> {
        self.weight_blocks
            .get_or_compute(&(weight, cap), || WeightBlock::build(weight, cap))
    }

    /// Inverse-Kostka entry `K^{-1}_{lambda,mu}` for arbitrary partitions;
    /// zero when the weights differ. Looked up in the block over partitions
    /// whose parts are bounded by the larger first part; restricting by
    /// largest part is dominance-compatible so the entry does not depend on
    /// the bound.
    pub fn inverse_kostka(&self, lambda: &Partition, mu: &Partition) -> i128 {
        if lambda.weight() != mu.weight() {
            return 0;
        }
        let cap = lambda.first_part().max(mu.first_part()).max(1);
        let block = self.weight_block(lambda.weight(), IndexCap::MaxPart(cap));
        block
            .inverse_entry(lambda, mu)
            .expect("partitions must index the part-capped block")
    }
}

impl Default for Ctx {
    fn default() -> Self {
        Self::new()
    }
}
