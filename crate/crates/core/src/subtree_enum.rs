//! Generating functions of subtrees with maximum degree at most `k`.
//!
//! Every vertex carries a [`DegreeVector`] whose entry `i` generates the
//! subtrees rooted at that vertex, built from already-contracted pendant
//! vertices, in which the vertex has degree exactly `i`. Contracting a pendant
//! vertex folds its vector into its neighbor's; the weight of the eliminated
//! vertex is exactly the weight of the subtrees that were lost with it, so
//! accumulating those weights yields the full generating function.

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::tree::Tree;
use crate::weighted::{Contraction, Order, VertexWeight, WeightedTree};

/// Per-degree rooted generating functions `(f_0, ..., f_k)` at a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVector(Vec<BiPoly>);

impl DegreeVector {
    /// `(y, 0, ..., 0)`: the vertex alone, marked by `y`.
    pub fn initial(k: usize) -> Self {
        DegreeVector::with_head(BiPoly::y(), k)
    }

    /// `(1, 0, ..., 0)`: counts instead of generating functions.
    pub fn unit(k: usize) -> Self {
        DegreeVector::with_head(BiPoly::one(), k)
    }

    fn with_head(head: BiPoly, k: usize) -> Self {
        let mut entries = vec![BiPoly::zero(); k + 1];
        entries[0] = head;
        DegreeVector(entries)
    }

    pub fn from_entries(entries: Vec<BiPoly>) -> Self {
        DegreeVector(entries)
    }

    pub fn entries(&self) -> &[BiPoly] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `f_0 + ... + f_upto`; empty (zero) when `upto` is negative.
    pub fn sum_to(&self, upto: isize) -> BiPoly {
        if upto < 0 {
            return BiPoly::zero();
        }
        self.0.iter().take(upto as usize + 1).sum()
    }

    pub fn total(&self) -> BiPoly {
        self.0.iter().sum()
    }
}

impl VertexWeight for DegreeVector {
    fn slots(&self) -> usize {
        self.0.len()
    }

    fn absorb(&self, leaf: &Self, edge_w: &BiPoly, k: usize) -> Result<Self> {
        leaf_update_subtree(self, leaf, edge_w, k)
    }
}

/// Anchor vertices a counted structure must contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchors<'a> {
    None,
    One(&'a str),
    Two(&'a str, &'a str),
}

impl<'a> Anchors<'a> {
    pub fn from_labels(labels: &[&'a str]) -> Result<Self> {
        match *labels {
            [] => Ok(Anchors::None),
            [v] => Ok(Anchors::One(v)),
            [a, b] => Ok(Anchors::Two(a, b)),
            _ => Err(Error::InvalidArgument(format!(
                "at most two anchors, got {}",
                labels.len()
            ))),
        }
    }

    pub fn labels(&self) -> Vec<&'a str> {
        match *self {
            Anchors::None => vec![],
            Anchors::One(v) => vec![v],
            Anchors::Two(a, b) => vec![a, b],
        }
    }
}

fn check_len(v: &DegreeVector, k: usize) -> Result<()> {
    if v.len() != k + 1 {
        return Err(Error::LengthMismatch {
            expected: k + 1,
            found: v.len(),
        });
    }
    Ok(())
}

/// Folds pendant `leaf` into `parent` through an edge of weight `edge_w`:
/// `parent'_i = parent_i + parent_{i-1} * edge_w * (leaf_0 + ... + leaf_{k-1})`
/// for `i >= 1`, every read taken from the old `parent`.
pub fn leaf_update_subtree(
    parent: &DegreeVector,
    leaf: &DegreeVector,
    edge_w: &BiPoly,
    k: usize,
) -> Result<DegreeVector> {
    check_len(parent, k)?;
    check_len(leaf, k)?;
    let attach = edge_w * &leaf.sum_to(k as isize - 1);
    let mut out = parent.0.clone();
    if !attach.is_zero() {
        for (slot, below) in out[1..].iter_mut().zip(&parent.0) {
            *slot += below * &attach;
        }
    }
    Ok(DegreeVector(out))
}

/// `(y, 0, ..., 0)` on every vertex and `z` on every edge.
pub fn default_weights(t: &Tree, k: usize) -> WeightedTree<DegreeVector> {
    WeightedTree::uniform(t.clone(), DegreeVector::initial(k), BiPoly::z())
}

/// `(1, 0, ..., 0)` on every vertex and `1` on every edge; results are plain counts.
pub fn unit_weights(t: &Tree, k: usize) -> WeightedTree<DegreeVector> {
    WeightedTree::uniform(t.clone(), DegreeVector::unit(k), BiPoly::one())
}

/// Generating function of all subtrees of maximum degree `<= k`, with `y`
/// per vertex and `z` per edge.
pub fn count_all(t: &Tree, k: usize) -> BiPoly {
    count_all_weighted(default_weights(t, k), k, Order::Lexicographic)
        .expect("default weights have k + 1 slots")
}

pub fn count_all_weighted(wt: WeightedTree<DegreeVector>, k: usize, order: Order) -> Result<BiPoly> {
    count_all_observed(wt, k, order, |_, _| {})
}

/// Like [`count_all_weighted`], calling `observe(contraction, accumulated)`
/// after every elimination.
pub fn count_all_observed<F>(
    wt: WeightedTree<DegreeVector>,
    k: usize,
    order: Order,
    mut observe: F,
) -> Result<BiPoly>
where
    F: FnMut(&Contraction<DegreeVector>, &BiPoly),
{
    let mut run = Contraction::new(wt, k, &[], order)?;
    let mut acc = BiPoly::zero();
    while let Some(step) = run.step()? {
        acc += step.leaf_weight.total();
        observe(&run, &acc);
    }
    let last = run.last_vertex().expect("full contraction leaves one vertex");
    acc += run.weight_at(last).total();
    Ok(acc)
}

/// Generating function of the subtrees of maximum degree `<= k` containing `v`.
pub fn count_containing(t: &Tree, k: usize, v: &str) -> Result<BiPoly> {
    count_containing_weighted(default_weights(t, k), k, v, Order::Lexicographic)
}

pub fn count_containing_weighted(
    wt: WeightedTree<DegreeVector>,
    k: usize,
    v: &str,
    order: Order,
) -> Result<BiPoly> {
    let mut run = Contraction::new(wt, k, &[v], order)?;
    run.run()?;
    Ok(run.weight(v)?.total())
}

/// Generating function of the subtrees of maximum degree `<= k` containing
/// both `vi` and `vj`. Needs `k >= 1`.
pub fn count_containing_pair(t: &Tree, k: usize, vi: &str, vj: &str) -> Result<BiPoly> {
    count_containing_pair_weighted(default_weights(t, k), k, vi, vj, Order::Lexicographic)
}

pub fn count_containing_pair_weighted(
    wt: WeightedTree<DegreeVector>,
    k: usize,
    vi: &str,
    vj: &str,
    order: Order,
) -> Result<BiPoly> {
    let path = wt.tree().path_between(vi, vj)?;
    let path: Vec<String> = path.into_iter().map(str::to_string).collect();
    if k < 1 {
        return Err(Error::KTooSmall { k, min: 1 });
    }
    let edge_product: BiPoly = path
        .windows(2)
        .map(|w| wt.edge_weight(&w[0], &w[1]).cloned())
        .collect::<Result<Vec<_>>>()?
        .iter()
        .product();

    let mut run = Contraction::new(wt, k, &[vi, vj], order)?;
    run.run()?;
    debug_assert_eq!(run.live_vertices(), path.len());

    let k = k as isize;
    let mut result = &run.weight(vi)?.sum_to(k - 1) * &run.weight(vj)?.sum_to(k - 1);
    for inner in &path[1..path.len() - 1] {
        result = &result * &run.weight(inner)?.sum_to(k - 2);
    }
    Ok(&result * &edge_product)
}

/// Subtrees whose maximum degree is exactly `k`: the `<= k` generating
/// function minus the `<= k - 1` one.
pub fn count_exact_degree(t: &Tree, k: usize, anchors: Anchors<'_>) -> Result<BiPoly> {
    if k < 1 {
        return Err(Error::KTooSmall { k, min: 1 });
    }
    let upper = count_with_anchors(t, k, anchors)?;
    let lower = match (anchors, k) {
        // no pair of distinct vertices fits in a degree-0 subtree
        (Anchors::Two(vi, vj), 1) => {
            t.path_between(vi, vj)?;
            BiPoly::zero()
        }
        _ => count_with_anchors(t, k - 1, anchors)?,
    };
    upper.subtract_nonneg(&lower)
}

/// Dispatches to the all / one-vertex / two-vertex operation.
pub fn count_with_anchors(t: &Tree, k: usize, anchors: Anchors<'_>) -> Result<BiPoly> {
    match anchors {
        Anchors::None => Ok(count_all(t, k)),
        Anchors::One(v) => count_containing(t, k, v),
        Anchors::Two(vi, vj) => count_containing_pair(t, k, vi, vj),
    }
}
