//! The four linear-score models: logistic regression, perceptron, linear
//! SVM (Pegasos), and two-class LDA. All standardize features internally
//! (train-set mean and population standard deviation, recorded in the
//! model); targets are encoded flaky = +1, non-flaky = −1. The bias term
//! is never regularized.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::features::{Dataset, Label};
use crate::Scalar;

use super::{ModelError, ModelSpec};

/// Per-feature affine scaling fitted on the training set. Features with
/// zero spread keep scale 1 so transformation stays defined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Standardizer<S: Scalar> {
    pub means: Vec<S>,
    pub stds: Vec<S>,
}

impl<S: Scalar> Standardizer<S> {
    pub fn fit(dataset: &Dataset<S>) -> Self {
        let n = S::from_usize_lossy(dataset.len().max(1));
        let d = dataset.schema.len();
        let mut means = vec![S::zero(); d];
        for e in &dataset.examples {
            for (m, v) in means.iter_mut().zip(&e.values) {
                *m = *m + *v;
            }
        }
        for m in &mut means {
            *m = *m / n;
        }
        let mut vars = vec![S::zero(); d];
        for e in &dataset.examples {
            for ((var, v), m) in vars.iter_mut().zip(&e.values).zip(&means) {
                let diff = *v - *m;
                *var = *var + diff * diff;
            }
        }
        let stds = vars
            .into_iter()
            .map(|var| {
                let std = (var / n).sqrt();
                if std > S::zero() { std } else { S::one() }
            })
            .collect();
        Standardizer { means, stds }
    }

    pub fn transform(&self, values: &[S]) -> Vec<S> {
        values
            .iter()
            .zip(&self.means)
            .zip(&self.stds)
            .map(|((v, m), s)| (*v - *m) / *s)
            .collect()
    }
}

/// How a linear score maps to the reported score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScoreKind {
    /// Sigmoid of the linear value: a probability, threshold 0.5.
    Probability,
    /// The raw linear value: a signed margin, threshold 0.
    Margin,
}

/// Weights + bias with optional internal standardization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct LinearModel<S: Scalar> {
    pub weights: Vec<S>,
    pub bias: S,
    pub standardizer: Option<Standardizer<S>>,
    pub score_kind: ScoreKind,
}

impl<S: Scalar> LinearModel<S> {
    pub(crate) fn linear_value(&self, values: &[S]) -> S {
        let transformed;
        let x = match &self.standardizer {
            Some(std) => {
                transformed = std.transform(values);
                &transformed
            }
            None => {
                transformed = values.to_vec();
                &transformed
            }
        };
        self.weights.iter().zip(x).map(|(w, v)| *w * *v).sum::<S>() + self.bias
    }

    pub(crate) fn score(&self, values: &[S]) -> f64 {
        let z = self.linear_value(values).to_f64_lossy();
        match self.score_kind {
            ScoreKind::Probability => sigmoid(z),
            ScoreKind::Margin => z,
        }
    }
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn targets<S: Scalar>(dataset: &Dataset<S>) -> Vec<S> {
    dataset
        .examples
        .iter()
        .map(|e| if e.label == Label::Flaky { S::one() } else { -S::one() })
        .collect()
}

fn standardized_rows<S: Scalar>(dataset: &Dataset<S>, std: &Standardizer<S>) -> Vec<Vec<S>> {
    dataset.examples.iter().map(|e| std.transform(&e.values)).collect()
}

/// L2-regularized mean logistic loss and its gradient.
///
/// loss = (1/n) Σ ln(1 + exp(−yᵢ·(w·xᵢ + b))) + (λ/2)‖w‖²; the bias is
/// not regularized. Returns (loss, ∂loss/∂w, ∂loss/∂b). Public so the
/// analytic gradient can be checked against finite differences.
pub fn logistic_loss_and_gradient<S: Scalar>(
    rows: &[Vec<S>],
    targets: &[S],
    weights: &[S],
    bias: S,
    lambda: S,
) -> (S, Vec<S>, S) {
    let n = S::from_usize_lossy(rows.len().max(1));
    let mut loss = S::zero();
    let mut grad_w = vec![S::zero(); weights.len()];
    let mut grad_b = S::zero();

    for (x, y) in rows.iter().zip(targets) {
        let z = weights.iter().zip(x).map(|(w, v)| *w * *v).sum::<S>() + bias;
        let margin = *y * z;
        loss = loss + log1p_exp(-margin);
        // d/dz ln(1+exp(−yz)) = −y·σ(−yz)
        let coeff = -*y * sigmoid_s(-margin);
        for (g, v) in grad_w.iter_mut().zip(x) {
            *g = *g + coeff * *v;
        }
        grad_b = grad_b + coeff;
    }

    loss = loss / n;
    grad_b = grad_b / n;
    let half = S::from_f64_lossy(0.5);
    let mut penalty = S::zero();
    for (g, w) in grad_w.iter_mut().zip(weights) {
        *g = *g / n + lambda * *w;
        penalty = penalty + *w * *w;
    }
    loss = loss + half * lambda * penalty;
    (loss, grad_w, grad_b)
}

/// ln(1 + exp(t)) without overflow for large |t|.
fn log1p_exp<S: Scalar>(t: S) -> S {
    if t > S::zero() {
        t + (S::one() + (-t).exp()).ln()
    } else {
        (S::one() + t.exp()).ln()
    }
}

fn sigmoid_s<S: Scalar>(t: S) -> S {
    if t >= S::zero() {
        S::one() / (S::one() + (-t).exp())
    } else {
        let e = t.exp();
        e / (S::one() + e)
    }
}

pub(crate) fn train_logistic_regression<S: Scalar>(
    spec: &ModelSpec,
    dataset: &Dataset<S>,
    notes: &mut Vec<String>,
) -> LinearModel<S> {
    let lambda = S::from_f64_lossy(spec.param("lambda"));
    let learning_rate = S::from_f64_lossy(spec.param("learning_rate"));
    let epochs = spec.param_usize("epochs").max(1);
    let tolerance = S::from_f64_lossy(spec.param("tolerance"));

    let standardizer = Standardizer::fit(dataset);
    let rows = standardized_rows(dataset, &standardizer);
    let y = targets(dataset);

    let mut weights = vec![S::zero(); dataset.schema.len()];
    let mut bias = S::zero();
    let mut converged = false;
    let mut epochs_run = 0usize;
    for _ in 0..epochs {
        let (_, grad_w, grad_b) = logistic_loss_and_gradient(&rows, &y, &weights, bias, lambda);
        let norm = (grad_w.iter().map(|g| *g * *g).sum::<S>() + grad_b * grad_b).sqrt();
        if norm < tolerance {
            converged = true;
            break;
        }
        for (w, g) in weights.iter_mut().zip(&grad_w) {
            *w = *w - learning_rate * *g;
        }
        bias = bias - learning_rate * grad_b;
        epochs_run += 1;
    }
    if converged {
        notes.push(format!("gradient descent converged after {epochs_run} epochs"));
    } else {
        notes.push(format!("gradient descent stopped at the {epochs}-epoch cap"));
    }

    LinearModel {
        weights,
        bias,
        standardizer: Some(standardizer),
        score_kind: ScoreKind::Probability,
    }
}

pub(crate) fn train_perceptron<S: Scalar>(
    spec: &ModelSpec,
    dataset: &Dataset<S>,
    notes: &mut Vec<String>,
) -> LinearModel<S> {
    let epochs = spec.param_usize("epochs").max(1);
    let standardizer = Standardizer::fit(dataset);
    let rows = standardized_rows(dataset, &standardizer);
    let y = targets(dataset);

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut weights = vec![S::zero(); dataset.schema.len()];
    let mut bias = S::zero();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut converged = false;
    for epoch in 0..epochs {
        order.shuffle(&mut rng);
        let mut updates = 0usize;
        for &i in &order {
            let z = weights.iter().zip(&rows[i]).map(|(w, v)| *w * *v).sum::<S>() + bias;
            if y[i] * z <= S::zero() {
                for (w, v) in weights.iter_mut().zip(&rows[i]) {
                    *w = *w + y[i] * *v;
                }
                bias = bias + y[i];
                updates += 1;
            }
        }
        if updates == 0 {
            converged = true;
            notes.push(format!("perceptron converged after {} epochs", epoch + 1));
            break;
        }
    }
    if !converged {
        notes.push(format!("perceptron stopped at the {epochs}-epoch cap"));
    }

    LinearModel { weights, bias, standardizer: Some(standardizer), score_kind: ScoreKind::Margin }
}

pub(crate) fn train_svm<S: Scalar>(spec: &ModelSpec, dataset: &Dataset<S>) -> LinearModel<S> {
    let lambda = S::from_f64_lossy(spec.param("lambda"));
    let epochs = spec.param_usize("epochs").max(1);
    let standardizer = Standardizer::fit(dataset);
    let rows = standardized_rows(dataset, &standardizer);
    let y = targets(dataset);

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut weights = vec![S::zero(); dataset.schema.len()];
    let mut bias = S::zero();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let mut t = S::zero();
    for _ in 0..epochs {
        order.shuffle(&mut rng);
        for &i in &order {
            t = t + S::one();
            let eta = S::one() / (lambda * t);
            let z = weights.iter().zip(&rows[i]).map(|(w, v)| *w * *v).sum::<S>() + bias;
            let shrink = S::one() - eta * lambda;
            for w in &mut weights {
                *w = *w * shrink;
            }
            if y[i] * z < S::one() {
                for (w, v) in weights.iter_mut().zip(&rows[i]) {
                    *w = *w + eta * y[i] * *v;
                }
                bias = bias + eta * y[i];
            }
        }
    }

    LinearModel { weights, bias, standardizer: Some(standardizer), score_kind: ScoreKind::Margin }
}

pub(crate) fn train_lda<S: Scalar>(
    spec: &ModelSpec,
    dataset: &Dataset<S>,
) -> Result<LinearModel<S>, ModelError> {
    let epsilon_scale = S::from_f64_lossy(spec.param("epsilon_scale"));
    let standardizer = Standardizer::fit(dataset);
    let rows = standardized_rows(dataset, &standardizer);
    let y = targets(dataset);
    let d = dataset.schema.len();
    let n = rows.len();

    let mut mean_flaky = vec![S::zero(); d];
    let mut mean_non = vec![S::zero(); d];
    let mut n_flaky = 0usize;
    for (x, target) in rows.iter().zip(&y) {
        let mean = if *target > S::zero() {
            n_flaky += 1;
            &mut mean_flaky
        } else {
            &mut mean_non
        };
        for (m, v) in mean.iter_mut().zip(x) {
            *m = *m + *v;
        }
    }
    let n_non = n - n_flaky;
    for m in &mut mean_flaky {
        *m = *m / S::from_usize_lossy(n_flaky);
    }
    for m in &mut mean_non {
        *m = *m / S::from_usize_lossy(n_non);
    }

    // Pooled covariance with the classic n−2 denominator.
    let denom = S::from_usize_lossy((n.max(3)) - 2);
    let mut cov = vec![vec![S::zero(); d]; d];
    for (x, target) in rows.iter().zip(&y) {
        let mean = if *target > S::zero() { &mean_flaky } else { &mean_non };
        let centered: Vec<S> = x.iter().zip(mean).map(|(v, m)| *v - *m).collect();
        for (i, ci) in centered.iter().enumerate() {
            for (j, cj) in centered.iter().enumerate() {
                cov[i][j] = cov[i][j] + *ci * *cj;
            }
        }
    }
    let mut trace = S::zero();
    for (i, row) in cov.iter_mut().enumerate() {
        for value in row.iter_mut() {
            *value = *value / denom;
        }
        trace = trace + row[i];
    }
    let epsilon = if trace > S::zero() {
        epsilon_scale * trace / S::from_usize_lossy(d)
    } else {
        epsilon_scale
    };
    for (i, row) in cov.iter_mut().enumerate() {
        row[i] = row[i] + epsilon;
    }

    let delta: Vec<S> = mean_flaky.iter().zip(&mean_non).map(|(a, b)| *a - *b).collect();
    let weights = solve_linear_system(cov, delta).ok_or_else(|| ModelError::Degenerate {
        reason: "pooled covariance is singular even after regularization".to_string(),
    })?;

    let midpoint_term: S = weights
        .iter()
        .zip(mean_flaky.iter().zip(&mean_non))
        .map(|(w, (a, b))| *w * (*a + *b))
        .sum();
    let half = S::from_f64_lossy(0.5);
    let prior_term =
        (S::from_usize_lossy(n_flaky) / S::from_usize_lossy(n_non)).ln();
    let bias = prior_term - half * midpoint_term;

    Ok(LinearModel {
        weights,
        bias,
        standardizer: Some(standardizer),
        score_kind: ScoreKind::Margin,
    })
}

/// Gaussian elimination with partial pivoting; None when singular.
fn solve_linear_system<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Option<Vec<S>> {
    let n = b.len();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r1, &r2| {
                a[r1][col].abs().partial_cmp(&a[r2][col].abs()).expect("no NaN in system")
            })?;
        if a[pivot_row][col].abs() == S::zero() {
            return None;
        }
        a.swap(col, pivot_row);
        b.swap(col, pivot_row);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == S::zero() {
                continue;
            }
            for k in col..n {
                a[row][k] = a[row][k] - factor * a[col][k];
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    let mut x = vec![S::zero(); n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in col + 1..n {
            acc = acc - a[col][k] * x[k];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use rand::Rng;

    use super::super::tests::sleepy_dataset;
    use super::super::{train, Algorithm, ModelSpec};
    use super::*;

    #[test]
    fn all_four_fit_linearly_separable_data_perfectly() {
        let d = sleepy_dataset(8);
        for algo in [
            Algorithm::LogisticRegression,
            Algorithm::Perceptron,
            Algorithm::SvmLinear,
            Algorithm::Lda,
        ] {
            let model = train(&ModelSpec::with_defaults(algo, 42), &d).unwrap();
            for e in &d.examples {
                assert_eq!(
                    model.predict(&e.values).unwrap().label,
                    e.label,
                    "{algo} misclassified a separable training point"
                );
            }
        }
    }

    #[test]
    fn analytic_gradient_matches_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let n = 6;
            let d = 3;
            let rows: Vec<Vec<f64>> =
                (0..n).map(|_| (0..d).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect();
            let targets: Vec<f64> =
                (0..n).map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 }).collect();
            let weights: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let bias: f64 = rng.gen_range(-1.0..1.0);
            let lambda = 1e-4;

            let (_, grad_w, grad_b) =
                logistic_loss_and_gradient(&rows, &targets, &weights, bias, lambda);

            let h = 1e-6;
            for i in 0..d {
                let mut plus = weights.clone();
                plus[i] += h;
                let mut minus = weights.clone();
                minus[i] -= h;
                let (lp, _, _) = logistic_loss_and_gradient(&rows, &targets, &plus, bias, lambda);
                let (lm, _, _) = logistic_loss_and_gradient(&rows, &targets, &minus, bias, lambda);
                let fd = (lp - lm) / (2.0 * h);
                let rel = (grad_w[i] - fd).abs() / grad_w[i].abs().max(1e-8);
                assert!(rel < 1e-5, "weight {i}: analytic {} vs fd {fd}", grad_w[i]);
            }
            let (lp, _, _) =
                logistic_loss_and_gradient(&rows, &targets, &weights, bias + h, lambda);
            let (lm, _, _) =
                logistic_loss_and_gradient(&rows, &targets, &weights, bias - h, lambda);
            let fd = (lp - lm) / (2.0 * h);
            let rel = (grad_b - fd).abs() / grad_b.abs().max(1e-8);
            assert!(rel < 1e-5, "bias: analytic {grad_b} vs fd {fd}");
        }
    }

    #[test]
    fn standardizer_centers_and_scales() {
        let d = sleepy_dataset(4);
        let std = Standardizer::fit(&d);
        // loc is constant 10 → mean 10, spread 0 → scale 1.
        assert_eq!(std.means[19], 10.0);
        assert_eq!(std.stds[19], 1.0);
        // sleepy alternates 1/0 → mean 0.5, std 0.5.
        assert_eq!(std.means[16], 0.5);
        assert_eq!(std.stds[16], 0.5);
        let transformed = std.transform(&d.examples[0].values);
        assert_eq!(transformed[16], 1.0);
        assert_eq!(transformed[19], 0.0);
    }

    #[test]
    fn solver_handles_pivoting_and_detects_singularity()
    {
        // Requires a row swap: leading zero pivot.
        let a: Vec<Vec<f64>> = vec![vec![0.0, 2.0], vec![3.0, 1.0]];
        let b = vec![4.0, 5.0];
        let x = solve_linear_system(a, b).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 2.0).abs() < 1e-12);

        let singular = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(solve_linear_system(singular, vec![1.0, 2.0]).is_none());
    }

    #[test]
    fn logistic_regression_records_convergence_notes() {
        let d = sleepy_dataset(4);
        let model =
            train(&ModelSpec::with_defaults(Algorithm::LogisticRegression, 42), &d).unwrap();
        assert_eq!(model.training_summary.notes.len(), 1);
        assert!(model.training_summary.notes[0].contains("epoch"));
    }

    #[test]
    fn margin_models_report_margins_not_probabilities() {
        let d = sleepy_dataset(6);
        for algo in [Algorithm::Perceptron, Algorithm::SvmLinear, Algorithm::Lda] {
            let model = train(&ModelSpec::with_defaults(algo, 42), &d).unwrap();
            let flaky_score = model.predict(&d.examples[0].values).unwrap().score;
            let non_flaky_score = model.predict(&d.examples[1].values).unwrap().score;
            assert!(flaky_score > 0.0, "{algo}");
            assert!(non_flaky_score < 0.0, "{algo}");
        }
    }
}
