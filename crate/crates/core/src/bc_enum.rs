//! Generating functions of BC-subtrees (all leaves pairwise at even distance)
//! with maximum degree at most `k`.
//!
//! Each vertex carries a [`ParityDegreeVector`]: `odd[i]` generates rooted
//! subtrees whose leaves all lie at odd distance from the root, `even[i]`
//! those whose leaves all lie at even distance, the root having degree `i`.
//! In `odd` the marker `y` counts the odd-distance vertices, in `even` the
//! even-distance ones (root included). Either way `y` ends up counting the
//! parity class that holds the leaves.
//!
//! Single vertices and single edges are never BC-subtrees here; the smallest
//! one is a path on three vertices.

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::subtree_enum::Anchors;
use crate::tree::Tree;
use crate::weighted::{Contraction, Order, Picker, VertexWeight, WeightedTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityDegreeVector {
    pub odd: Vec<BiPoly>,
    pub even: Vec<BiPoly>,
}

fn range_sum(v: &[BiPoly], from: usize, to: isize) -> BiPoly {
    if to < from as isize {
        return BiPoly::zero();
    }
    v[from..=(to as usize)].iter().sum()
}

impl ParityDegreeVector {
    /// `odd = (1, 0, ..., 0)`, `even = (y, 0, ..., 0)`.
    pub fn initial(k: usize) -> Self {
        ParityDegreeVector::with_heads(BiPoly::one(), BiPoly::y(), k)
    }

    /// `odd = even = (1, 0, ..., 0)`; results are plain counts.
    pub fn unit(k: usize) -> Self {
        ParityDegreeVector::with_heads(BiPoly::one(), BiPoly::one(), k)
    }

    fn with_heads(odd0: BiPoly, even0: BiPoly, k: usize) -> Self {
        let mut odd = vec![BiPoly::zero(); k + 1];
        let mut even = vec![BiPoly::zero(); k + 1];
        odd[0] = odd0;
        even[0] = even0;
        ParityDegreeVector { odd, even }
    }

    /// `odd[from] + ... + odd[to]`, zero for an empty range.
    pub fn odd_sum(&self, from: usize, to: isize) -> BiPoly {
        range_sum(&self.odd, from, to)
    }

    /// `even[from] + ... + even[to]`, zero for an empty range.
    pub fn even_sum(&self, from: usize, to: isize) -> BiPoly {
        range_sum(&self.even, from, to)
    }
}

impl VertexWeight for ParityDegreeVector {
    fn slots(&self) -> usize {
        if self.odd.len() == self.even.len() {
            self.odd.len()
        } else {
            usize::MAX
        }
    }

    fn absorb(&self, leaf: &Self, edge_w: &BiPoly, k: usize) -> Result<Self> {
        leaf_update_bc(self, leaf, edge_w, k)
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::KTooSmall { k, min: 2 });
    }
    Ok(())
}

fn check_len(v: &ParityDegreeVector, k: usize) -> Result<()> {
    for half in [&v.odd, &v.even] {
        if half.len() != k + 1 {
            return Err(Error::LengthMismatch {
                expected: k + 1,
                found: half.len(),
            });
        }
    }
    Ok(())
}

/// Folds pendant `leaf` into `parent`:
/// `odd'_i = odd_i + odd_{i-1} * edge_w * (leaf.even_0 + ... + leaf.even_{k-1})`,
/// `even'_i = even_i + even_{i-1} * edge_w * (leaf.odd_1 + ... + leaf.odd_{k-1})`,
/// for `i >= 1`, reading only the old `parent`.
pub fn leaf_update_bc(
    parent: &ParityDegreeVector,
    leaf: &ParityDegreeVector,
    edge_w: &BiPoly,
    k: usize,
) -> Result<ParityDegreeVector> {
    check_k(k)?;
    check_len(parent, k)?;
    check_len(leaf, k)?;
    let k_top = k as isize - 1;
    let odd_attach = edge_w * &leaf.even_sum(0, k_top);
    let even_attach = edge_w * &leaf.odd_sum(1, k_top);
    let mut out = parent.clone();
    for i in 1..=k {
        if !odd_attach.is_zero() {
            out.odd[i] += &parent.odd[i - 1] * &odd_attach;
        }
        if !even_attach.is_zero() {
            out.even[i] += &parent.even[i - 1] * &even_attach;
        }
    }
    Ok(out)
}

pub fn default_weights(t: &Tree, k: usize) -> WeightedTree<ParityDegreeVector> {
    WeightedTree::uniform(t.clone(), ParityDegreeVector::initial(k), BiPoly::z())
}

pub fn unit_weights(t: &Tree, k: usize) -> WeightedTree<ParityDegreeVector> {
    WeightedTree::uniform(t.clone(), ParityDegreeVector::unit(k), BiPoly::one())
}

/// Rooted odd/even generating functions at `root`: `odd[j]` is the
/// generating function of rooted subtrees with every leaf at odd distance
/// from `root` and `root` of degree `j`, likewise `even[j]`.
pub fn rooted_parity_vectors(t: &Tree, k: usize, root: &str) -> Result<ParityDegreeVector> {
    rooted_parity_vectors_weighted(default_weights(t, k), k, root, Order::Lexicographic)
}

pub fn rooted_parity_vectors_weighted(
    wt: WeightedTree<ParityDegreeVector>,
    k: usize,
    root: &str,
    order: Order,
) -> Result<ParityDegreeVector> {
    check_k(k)?;
    let mut run = Contraction::new(wt, k, &[root], order)?;
    run.run()?;
    Ok(run.weight(root)?.clone())
}

/// Weight of the BC-subtrees that use the edge joining `v` and `u`, given the
/// rooted vectors of `v`'s side at `v` and `u`'s side at `u`.
fn cross_term(v_side: &ParityDegreeVector, u_side: &ParityDegreeVector, edge_w: &BiPoly, k: usize) -> BiPoly {
    let top = k as isize - 1;
    let leaves_beyond_v = &v_side.odd_sum(1, top) * &u_side.even_sum(0, top);
    let leaves_beyond_u = &v_side.even_sum(0, top) * &u_side.odd_sum(1, top);
    &(leaves_beyond_v + leaves_beyond_u) * edge_w
}

/// Edge ids ordered by `(smaller label, larger label)`.
fn sorted_edges(t: &Tree) -> Vec<usize> {
    let key = |e: usize| {
        let (a, b) = t.edges()[e];
        let (x, y) = (t.label(a), t.label(b));
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let mut ids: Vec<usize> = (0..t.edges().len()).collect();
    ids.sort_by(|&a, &b| key(a).cmp(&key(b)));
    ids
}

/// Generating function of all BC-subtrees of maximum degree `<= k`: `y`
/// counts the parity class holding the leaves, `z` counts edges.
pub fn count_bc_all(t: &Tree, k: usize) -> Result<BiPoly> {
    count_bc_all_weighted(default_weights(t, k), k, Order::Lexicographic)
}

/// `order` chooses the split edge at every level and the pendant
/// elimination order inside the rooted computations.
pub fn count_bc_all_weighted(
    wt: WeightedTree<ParityDegreeVector>,
    k: usize,
    order: Order,
) -> Result<BiPoly> {
    let mut picker = Picker::new(order);
    count_bc_all_with(wt, k, order, |t| {
        let edges = sorted_edges(t);
        edges[picker.pick(edges.len())]
    })
}

/// Splits first at the edge `a`-`b`, then lexicographically.
pub fn count_bc_all_first_split(
    wt: WeightedTree<ParityDegreeVector>,
    k: usize,
    a: &str,
    b: &str,
) -> Result<BiPoly> {
    check_k(k)?;
    let (ta, tb, g) = wt.split_at_edge(a, b)?;
    let pa = rooted_parity_vectors_weighted(ta.clone(), k, a, Order::Lexicographic)?;
    let pb = rooted_parity_vectors_weighted(tb.clone(), k, b, Order::Lexicographic)?;
    let mut acc = cross_term(&pb, &pa, &g, k);
    acc += count_bc_all_weighted(ta, k, Order::Lexicographic)?;
    acc += count_bc_all_weighted(tb, k, Order::Lexicographic)?;
    Ok(acc)
}

fn count_bc_all_with<F>(
    wt: WeightedTree<ParityDegreeVector>,
    k: usize,
    order: Order,
    mut choose_edge: F,
) -> Result<BiPoly>
where
    F: FnMut(&Tree) -> usize,
{
    check_k(k)?;
    wt.check_slots(k)?;
    let mut acc = BiPoly::zero();
    let mut pending = vec![wt];
    while let Some(part) = pending.pop() {
        if part.tree().edges().is_empty() {
            continue;
        }
        let e = choose_edge(part.tree());
        let (u, p) = part.tree().edges()[e];
        let (u, p) = (part.tree().label(u).to_string(), part.tree().label(p).to_string());
        let (tu, tp, g) = part.split_indices(e);
        let pu = rooted_parity_vectors_weighted(tu.clone(), k, &u, order)?;
        let pp = rooted_parity_vectors_weighted(tp.clone(), k, &p, order)?;
        acc += cross_term(&pp, &pu, &g, k);
        pending.push(tp);
        pending.push(tu);
    }
    Ok(acc)
}

/// Generating function of the BC-subtrees of maximum degree `<= k` that
/// contain `v`.
pub fn count_bc_containing(t: &Tree, k: usize, v: &str) -> Result<BiPoly> {
    count_bc_containing_weighted(default_weights(t, k), k, v, Order::Lexicographic)
}

/// Peels the edges at `v` one by one: each peeled edge contributes the
/// BC-subtrees through it, and the working tree shrinks to `v`'s side.
pub fn count_bc_containing_weighted(
    wt: WeightedTree<ParityDegreeVector>,
    k: usize,
    v: &str,
    order: Order,
) -> Result<BiPoly> {
    wt.tree().index_of(v)?;
    check_k(k)?;
    wt.check_slots(k)?;
    let mut picker = Picker::new(order);
    let mut acc = BiPoly::zero();
    let mut current = wt;
    loop {
        let vi = current.tree().index_of(v)?;
        let mut nbrs: Vec<&str> = current
            .tree()
            .neighbors(vi)
            .iter()
            .map(|&(w, _)| current.tree().label(w))
            .collect();
        if nbrs.is_empty() {
            return Ok(acc);
        }
        nbrs.sort_unstable();
        let w = nbrs[picker.pick(nbrs.len())].to_string();
        let (tv, tw, g) = current.split_at_edge(v, &w)?;
        let pv = rooted_parity_vectors_weighted(tv.clone(), k, v, order)?;
        let pw = rooted_parity_vectors_weighted(tw, k, &w, order)?;
        acc += cross_term(&pv, &pw, &g, k);
        current = tv;
    }
}

/// Generating function of the BC-subtrees of maximum degree `<= k` that
/// contain both `vi` and `vj`.
pub fn count_bc_containing_pair(t: &Tree, k: usize, vi: &str, vj: &str) -> Result<BiPoly> {
    count_bc_containing_pair_weighted(default_weights(t, k), k, vi, vj, Order::Lexicographic)
}

/// Contracts everything off the `vi`-`vj` path, then combines the path
/// vertices. Two alternatives exist: the leaves lie in the class of
/// even-indexed path vertices (`vi` uses its odd vector) or in the class of
/// odd-indexed ones (`vi` uses its even vector). Path vertex `u_i` takes the
/// vector matching its position's parity in each alternative.
pub fn count_bc_containing_pair_weighted(
    wt: WeightedTree<ParityDegreeVector>,
    k: usize,
    vi: &str,
    vj: &str,
    order: Order,
) -> Result<BiPoly> {
    let path: Vec<String> = wt
        .tree()
        .path_between(vi, vj)?
        .into_iter()
        .map(str::to_string)
        .collect();
    check_k(k)?;
    let edge_product: BiPoly = path
        .windows(2)
        .map(|w| wt.edge_weight(&w[0], &w[1]).cloned())
        .collect::<Result<Vec<_>>>()?
        .iter()
        .product();

    let mut run = Contraction::new(wt, k, &[vi, vj], order)?;
    run.run()?;

    let l = path.len() - 1;
    let top = k as isize - 1;
    let mut leaves_even_idx = BiPoly::one();
    let mut leaves_odd_idx = BiPoly::one();
    for (i, label) in path.iter().enumerate() {
        let w = run.weight(label)?;
        let endpoint = i == 0 || i == l;
        let (odd_part, even_part) = if endpoint {
            (w.odd_sum(1, top), w.even_sum(0, top))
        } else {
            (w.odd_sum(0, top - 1), w.even_sum(0, top - 1))
        };
        if i % 2 == 0 {
            leaves_even_idx = &leaves_even_idx * &odd_part;
            leaves_odd_idx = &leaves_odd_idx * &even_part;
        } else {
            leaves_even_idx = &leaves_even_idx * &even_part;
            leaves_odd_idx = &leaves_odd_idx * &odd_part;
        }
    }
    Ok(&(leaves_even_idx + leaves_odd_idx) * &edge_product)
}

pub fn count_bc_with_anchors(t: &Tree, k: usize, anchors: Anchors<'_>) -> Result<BiPoly> {
    match anchors {
        Anchors::None => count_bc_all(t, k),
        Anchors::One(v) => count_bc_containing(t, k, v),
        Anchors::Two(vi, vj) => count_bc_containing_pair(t, k, vi, vj),
    }
}

/// BC-subtrees whose maximum degree is exactly `k` (needs `k >= 3`).
pub fn count_bc_exact_degree(t: &Tree, k: usize, anchors: Anchors<'_>) -> Result<BiPoly> {
    if k < 3 {
        return Err(Error::KTooSmall { k, min: 3 });
    }
    let upper = count_bc_with_anchors(t, k, anchors)?;
    let lower = count_bc_with_anchors(t, k - 1, anchors)?;
    upper.subtract_nonneg(&lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BiPoly {
        s.parse().unwrap()
    }

    fn pv(odd: &[&str], even: &[&str]) -> ParityDegreeVector {
        ParityDegreeVector {
            odd: odd.iter().map(|s| p(s)).collect(),
            even: even.iter().map(|s| p(s)).collect(),
        }
    }

    fn tree(text: &str) -> Tree {
        Tree::parse_edge_list(text).unwrap()
    }

    fn path3() -> Tree {
        tree("a b\nb c")
    }

    fn path5() -> Tree {
        tree("a b\nb m\nm d\nd e")
    }

    fn star(m: usize) -> Tree {
        let text: String = (1..=m).map(|i| format!("c l{i}\n")).collect();
        tree(&text)
    }

    #[test]
    fn leaf_update_examples() {
        let z = BiPoly::z();
        let init = ParityDegreeVector::initial(2);
        let once = leaf_update_bc(&init, &init, &z, 2).unwrap();
        assert_eq!(once, pv(&["1", "y*z", "0"], &["y", "0", "0"]));
        // path a-b-c: c into b, then b into a
        let at_a = leaf_update_bc(&init, &once, &z, 2).unwrap();
        assert_eq!(at_a, pv(&["1", "y*z", "0"], &["y", "y^2*z^2", "0"]));

        let init3 = ParityDegreeVector::initial(3);
        let one_leaf = leaf_update_bc(&init3, &init3, &z, 3).unwrap();
        let two_leaves = leaf_update_bc(&one_leaf, &init3, &z, 3).unwrap();
        assert_eq!(two_leaves, pv(&["1", "2*y*z", "y^2*z^2", "0"], &["y", "0", "0", "0"]));
    }

    #[test]
    fn leaf_update_guards() {
        let z = BiPoly::z();
        let a = ParityDegreeVector::initial(1);
        assert_eq!(leaf_update_bc(&a, &a, &z, 1), Err(Error::KTooSmall { k: 1, min: 2 }));
        let b = ParityDegreeVector::initial(2);
        let c = ParityDegreeVector::initial(3);
        assert_eq!(
            leaf_update_bc(&b, &c, &z, 2),
            Err(Error::LengthMismatch { expected: 3, found: 4 })
        );
    }

    #[test]
    fn rooted_examples() {
        let single = Tree::single("s").unwrap();
        assert_eq!(
            rooted_parity_vectors(&single, 3, "s").unwrap(),
            ParityDegreeVector::initial(3)
        );
        assert_eq!(
            rooted_parity_vectors(&path3(), 2, "a").unwrap(),
            pv(&["1", "y*z", "0"], &["y", "y^2*z^2", "0"])
        );
        assert_eq!(
            rooted_parity_vectors(&star(3), 3, "c").unwrap(),
            pv(&["1", "3*y*z", "3*y^2*z^2", "y^3*z^3"], &["y", "0", "0", "0"])
        );
        assert_eq!(
            rooted_parity_vectors(&path3(), 2, "q"),
            Err(Error::UnknownVertex("q".into()))
        );
    }

    #[test]
    fn count_all_examples() {
        assert_eq!(count_bc_all(&path3(), 2).unwrap(), p("y^2*z^2"));
        assert_eq!(count_bc_all(&path5(), 2).unwrap(), p("3*y^2*z^2 + y^3*z^4"));
        assert_eq!(count_bc_all(&star(3), 3).unwrap(), p("3*y^2*z^2 + y^3*z^3"));
        assert_eq!(count_bc_all(&star(3), 2).unwrap(), p("3*y^2*z^2"));
        assert!(count_bc_all(&Tree::single("a").unwrap(), 2).unwrap().is_zero());
        assert!(count_bc_all(&tree("a b"), 2).unwrap().is_zero());
        assert_eq!(count_bc_all(&path3(), 1), Err(Error::KTooSmall { k: 1, min: 2 }));
    }

    #[test]
    fn containing_examples() {
        assert_eq!(count_bc_containing(&path5(), 2, "a").unwrap(), p("y^2*z^2 + y^3*z^4"));
        assert_eq!(count_bc_containing(&path3(), 2, "b").unwrap(), p("y^2*z^2"));
        let single = Tree::single("s").unwrap();
        assert!(count_bc_containing(&single, 2, "s").unwrap().is_zero());
        assert_eq!(
            count_bc_containing(&path3(), 2, "x"),
            Err(Error::UnknownVertex("x".into()))
        );
    }

    #[test]
    fn pair_examples() {
        assert_eq!(count_bc_containing_pair(&path3(), 2, "a", "b").unwrap(), p("y^2*z^2"));
        assert_eq!(
            count_bc_containing_pair(&path5(), 2, "a", "m").unwrap(),
            p("y^2*z^2 + y^3*z^4")
        );
        assert_eq!(
            count_bc_containing_pair(&star(3), 3, "l1", "l2").unwrap(),
            p("y^2*z^2 + y^3*z^3")
        );
        assert_eq!(
            count_bc_containing_pair(&path3(), 2, "b", "b"),
            Err(Error::SameVertex("b".into()))
        );
        assert_eq!(
            count_bc_containing_pair(&path3(), 1, "a", "b"),
            Err(Error::KTooSmall { k: 1, min: 2 })
        );
    }

    #[test]
    fn exact_degree_examples() {
        assert_eq!(count_bc_exact_degree(&star(3), 3, Anchors::None).unwrap(), p("y^3*z^3"));
        assert!(count_bc_exact_degree(&path5(), 3, Anchors::None).unwrap().is_zero());
        assert_eq!(count_bc_exact_degree(&star(4), 4, Anchors::None).unwrap(), p("y^4*z^4"));
        assert_eq!(
            count_bc_exact_degree(&star(4), 2, Anchors::None),
            Err(Error::KTooSmall { k: 2, min: 3 })
        );
    }

    #[test]
    fn split_choice_does_not_matter_on_small_trees() {
        let t = Tree::random(9, 4).unwrap();
        let expected = count_bc_all(&t, 3).unwrap();
        for seed in 0..10 {
            let got = count_bc_all_weighted(default_weights(&t, 3), 3, Order::Seeded(seed)).unwrap();
            assert_eq!(got, expected);
        }
    }
}
