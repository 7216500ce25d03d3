//! Random forest: seeded bootstrap samples, a fresh random feature subset
//! at every split, majority vote across trees.
//!
//! Tree `i` draws from an RNG seeded with `seed.wrapping_add(i)`, so
//! training trees in any order (or in parallel) produces the same forest.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::features::{Dataset, Label};
use crate::Scalar;

use super::tree::{grow_tree, TreeModel};
use super::ModelSpec;

pub(crate) fn train_forest<S: Scalar>(spec: &ModelSpec, dataset: &Dataset<S>) -> Vec<TreeModel<S>> {
    let tree_count = spec.param_usize("trees").max(1);
    let feature_count = dataset.schema.len();
    let mtry = spec.param_usize("mtry").clamp(1, feature_count);
    let bootstrap = spec.param("bootstrap") != 0.0;
    let n = dataset.len();

    (0..tree_count)
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.wrapping_add(index as u64));
            let rows: Vec<(&[S], Label)> = if bootstrap {
                (0..n)
                    .map(|_| {
                        let pick = rng.gen_range(0..n);
                        let e = &dataset.examples[pick];
                        (e.values.as_slice(), e.label)
                    })
                    .collect()
            } else {
                dataset.examples.iter().map(|e| (e.values.as_slice(), e.label)).collect()
            };
            let mut sampler = || {
                if mtry >= feature_count {
                    (0..feature_count).collect()
                } else {
                    let mut subset =
                        rand::seq::index::sample(&mut rng, feature_count, mtry).into_vec();
                    subset.sort_unstable();
                    subset
                }
            };
            grow_tree(&rows, &mut sampler)
        })
        .collect()
}

/// Fraction of trees voting flaky.
pub(crate) fn score<S: Scalar>(trees: &[TreeModel<S>], values: &[S]) -> f64 {
    if trees.is_empty() {
        return 0.0;
    }
    let flaky_votes = trees.iter().filter(|t| t.vote(values) == Label::Flaky).count();
    flaky_votes as f64 / trees.len() as f64
}
