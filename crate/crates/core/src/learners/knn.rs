//! K-nearest neighbours over raw (unscaled) features with Euclidean
//! distance; distance ties resolve to the lower training index.

use crate::Scalar;

use super::KnnExample;

/// Fraction of flaky labels among the k nearest stored examples.
pub(crate) fn score<S: Scalar>(k: usize, examples: &[KnnExample<S>], values: &[S]) -> f64 {
    if examples.is_empty() {
        return 0.0;
    }
    let mut by_distance: Vec<(f64, usize)> = examples
        .iter()
        .enumerate()
        .map(|(index, example)| {
            let squared: S = example
                .values
                .iter()
                .zip(values)
                .map(|(a, b)| (*a - *b) * (*a - *b))
                .sum();
            // Squared distance orders identically to Euclidean distance.
            (squared.to_f64_lossy(), index)
        })
        .collect();
    by_distance.sort_by(|a, b| a.partial_cmp(b).expect("distances must not be NaN"));

    let take = k.min(by_distance.len());
    let flaky = by_distance[..take]
        .iter()
        .filter(|(_, index)| examples[*index].label.is_flaky())
        .count();
    flaky as f64 / take as f64
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::super::tests::{dataset_from_rows, row, sleepy_dataset};
    use super::super::{train, Algorithm, ModelSpec};
    use crate::features::Label;

    fn knn_spec(k: f64, seed: u64) -> ModelSpec {
        let mut overrides = BTreeMap::new();
        overrides.insert("k".to_string(), k);
        ModelSpec::resolve(Algorithm::Knn, seed, &overrides).unwrap()
    }

    #[test]
    fn k1_recalls_every_training_point() {
        let d = sleepy_dataset(5);
        let model = train(&knn_spec(1.0, 42), &d).unwrap();
        for e in &d.examples {
            let p = model.predict(&e.values).unwrap();
            assert_eq!(p.label, e.label);
            assert_eq!(p.score, if e.label.is_flaky() { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn distance_ties_prefer_the_lower_index() {
        // Two training points equidistant from the query; the first is
        // flaky, so k=1 must answer flaky.
        let mut near_flaky = row(1.0);
        near_flaky[19] = 8.0;
        let mut near_non_flaky = row(0.0);
        near_non_flaky[19] = 8.0;
        let d = dataset_from_rows(&[
            (near_flaky, Label::Flaky),
            (near_non_flaky, Label::NonFlaky),
        ]);
        let model = train(&knn_spec(1.0, 42), &d).unwrap();

        // Equidistant query: sleepy=0.5 and smells_count=0.5 sit midway
        // between the two stored rows in every differing coordinate.
        let mut query = row(0.5);
        query[19] = 8.0;
        let p = model.predict(&query).unwrap();
        assert_eq!(p.label, Label::Flaky);
    }

    #[test]
    fn k_larger_than_training_set_uses_all_points() {
        let d = dataset_from_rows(&[
            (row(1.0), Label::Flaky),
            (row(0.0), Label::NonFlaky),
            (row(0.0), Label::NonFlaky),
        ]);
        let model = train(&knn_spec(50.0, 42), &d).unwrap();
        let p = model.predict(&row(1.0)).unwrap();
        assert!((p.score - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(p.label, Label::NonFlaky);
    }

    #[test]
    fn default_k_is_five_and_score_is_the_neighbor_fraction() {
        let d = dataset_from_rows(&[
            (row(1.0), Label::Flaky),
            (row(1.0), Label::Flaky),
            (row(1.0), Label::Flaky),
            (row(1.0), Label::NonFlaky),
            (row(1.0), Label::NonFlaky),
            (row(0.0), Label::NonFlaky),
        ]);
        let spec = ModelSpec::with_defaults(Algorithm::Knn, 42);
        assert_eq!(spec.param("k"), 5.0);
        let model = train(&spec, &d).unwrap();
        // The five sleepy rows are the 5 nearest to a sleepy query: 3/5.
        let p = model.predict(&row(1.0)).unwrap();
        assert!((p.score - 0.6).abs() < 1e-12);
        assert_eq!(p.label, Label::Flaky);
    }
}
