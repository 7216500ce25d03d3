//! Binary CART with Gini impurity.
//!
//! Candidate thresholds are midpoints between consecutive distinct sorted
//! values; the best split maximizes the Gini decrease, ties broken by
//! lowest feature index then lowest threshold. Nodes are grown until pure
//! or until no candidate threshold exists, so a zero-decrease split is
//! still taken when it partitions the data — necessary for fitting
//! XOR-shaped targets exactly.

use serde::{Deserialize, Serialize};

use crate::features::{Dataset, Label};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
#[serde(bound = "")]
pub enum TreeNode<S: Scalar> {
    Leaf {
        flaky: usize,
        non_flaky: usize,
    },
    Split {
        feature: usize,
        threshold: S,
        left: usize,
        right: usize,
    },
}

/// A decision tree as an arena of nodes; the root is node 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct TreeModel<S: Scalar> {
    pub nodes: Vec<TreeNode<S>>,
}

impl<S: Scalar> TreeModel<S> {
    /// Fraction of flaky training examples in the reached leaf.
    pub fn score(&self, values: &[S]) -> f64 {
        let mut node = 0;
        loop {
            match &self.nodes[node] {
                TreeNode::Leaf { flaky, non_flaky } => {
                    let total = flaky + non_flaky;
                    return if total == 0 { 0.0 } else { *flaky as f64 / total as f64 };
                }
                TreeNode::Split { feature, threshold, left, right } => {
                    node = if values[*feature] <= *threshold { *left } else { *right };
                }
            }
        }
    }

    /// Hard vote: flaky iff the leaf is majority-flaky (ties non-flaky).
    pub fn vote(&self, values: &[S]) -> Label {
        if self.score(values) > 0.5 {
            Label::Flaky
        } else {
            Label::NonFlaky
        }
    }
}

pub(crate) fn train_tree<S: Scalar>(dataset: &Dataset<S>) -> TreeModel<S> {
    let rows: Vec<(&[S], Label)> =
        dataset.examples.iter().map(|e| (e.values.as_slice(), e.label)).collect();
    let all: Vec<usize> = (0..dataset.schema.len()).collect();
    grow_tree(&rows, &mut || all.clone())
}

/// Grows one tree. `sampler` yields the candidate feature indices for
/// each split (all features for a plain tree, a random subset per node
/// for forests); expansion order is depth-first, left child first.
pub(crate) fn grow_tree<S: Scalar>(
    rows: &[(&[S], Label)],
    sampler: &mut dyn FnMut() -> Vec<usize>,
) -> TreeModel<S> {
    let mut nodes = Vec::new();
    let indices: Vec<usize> = (0..rows.len()).collect();
    build_node(&mut nodes, rows, indices, sampler);
    TreeModel { nodes }
}

fn build_node<S: Scalar>(
    nodes: &mut Vec<TreeNode<S>>,
    rows: &[(&[S], Label)],
    indices: Vec<usize>,
    sampler: &mut dyn FnMut() -> Vec<usize>,
) -> usize {
    let flaky = indices.iter().filter(|&&i| rows[i].1.is_flaky()).count();
    let non_flaky = indices.len() - flaky;
    if flaky == 0 || non_flaky == 0 {
        nodes.push(TreeNode::Leaf { flaky, non_flaky });
        return nodes.len() - 1;
    }

    let candidates = sampler();
    let Some((feature, threshold)) = find_best_split(rows, &indices, &candidates) else {
        nodes.push(TreeNode::Leaf { flaky, non_flaky });
        return nodes.len() - 1;
    };

    let (left_indices, right_indices): (Vec<usize>, Vec<usize>) =
        indices.into_iter().partition(|&i| rows[i].0[feature] <= threshold);
    debug_assert!(!left_indices.is_empty() && !right_indices.is_empty());

    let slot = nodes.len();
    nodes.push(TreeNode::Leaf { flaky: 0, non_flaky: 0 }); // placeholder
    let left = build_node(nodes, rows, left_indices, sampler);
    let right = build_node(nodes, rows, right_indices, sampler);
    nodes[slot] = TreeNode::Split { feature, threshold, left, right };
    slot
}

/// Returns the (feature, threshold) maximizing the Gini decrease, or None
/// when every candidate feature is constant on this node.
///
/// Instead of the decrease itself, the equivalent quantity
/// Σ_side (flaky² + non_flaky²)/size is maximized; it is computed from
/// integer counts only, so equal splits compare exactly equal and the
/// documented tie-break is meaningful.
fn find_best_split<S: Scalar>(
    rows: &[(&[S], Label)],
    indices: &[usize],
    candidates: &[usize],
) -> Option<(usize, S)> {
    let mut features: Vec<usize> = candidates.to_vec();
    features.sort_unstable();
    features.dedup();

    let two = S::from_f64_lossy(2.0);
    let n = indices.len();
    let total_flaky = indices.iter().filter(|&&i| rows[i].1.is_flaky()).count();

    let mut best: Option<(f64, usize, S)> = None;
    for &feature in &features {
        let mut pairs: Vec<(S, bool)> = indices
            .iter()
            .map(|&i| (rows[i].0[feature], rows[i].1.is_flaky()))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("feature values must not be NaN"));

        let mut left_flaky = 0usize;
        for boundary in 0..n - 1 {
            if pairs[boundary].1 {
                left_flaky += 1;
            }
            if pairs[boundary].0 < pairs[boundary + 1].0 {
                let mut threshold = (pairs[boundary].0 + pairs[boundary + 1].0) / two;
                // Rounding can push the midpoint onto the right value for
                // adjacent floats; fall back to the left value so `≤`
                // still separates the sides.
                if !(threshold < pairs[boundary + 1].0) {
                    threshold = pairs[boundary].0;
                }
                let left_n = boundary + 1;
                let right_n = n - left_n;
                let left_non = left_n - left_flaky;
                let right_flaky = total_flaky - left_flaky;
                let right_non = right_n - right_flaky;
                let score = (left_flaky * left_flaky + left_non * left_non) as f64
                    / left_n as f64
                    + (right_flaky * right_flaky + right_non * right_non) as f64
                        / right_n as f64;
                let better = match &best {
                    None => true,
                    Some((best_score, _, _)) => score > *best_score,
                };
                if better {
                    best = Some((score, feature, threshold));
                }
            }
        }
    }
    best.map(|(_, feature, threshold)| (feature, threshold))
}
