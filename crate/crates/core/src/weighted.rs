//! Weighted trees and the pendant-vertex contraction engine shared by the
//! subtree and BC-subtree algorithms.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::tree::Tree;

/// A per-vertex weight that can absorb a contracted pendant neighbor.
pub trait VertexWeight: Clone {
    /// Number of degree slots, i.e. `k + 1`.
    fn slots(&self) -> usize;

    /// Folds the weight of pendant `leaf`, attached through an edge of weight
    /// `edge_w`, into `self`.
    fn absorb(&self, leaf: &Self, edge_w: &BiPoly, k: usize) -> Result<Self>;
}

/// A tree with one weight per vertex and one [`BiPoly`] per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTree<W> {
    tree: Tree,
    vertex_weights: Vec<W>,
    edge_weights: Vec<BiPoly>,
}

impl<W: VertexWeight> WeightedTree<W> {
    pub fn new(tree: Tree, vertex_weights: Vec<W>, edge_weights: Vec<BiPoly>) -> Result<Self> {
        if vertex_weights.len() != tree.len() {
            return Err(Error::InvalidArgument(format!(
                "{} vertex weights for {} vertices",
                vertex_weights.len(),
                tree.len()
            )));
        }
        if edge_weights.len() != tree.edges().len() {
            return Err(Error::InvalidArgument(format!(
                "{} edge weights for {} edges",
                edge_weights.len(),
                tree.edges().len()
            )));
        }
        Ok(WeightedTree {
            tree,
            vertex_weights,
            edge_weights,
        })
    }

    /// Every vertex gets `vertex`, every edge gets `edge`.
    pub fn uniform(tree: Tree, vertex: W, edge: BiPoly) -> Self {
        let vertex_weights = vec![vertex; tree.len()];
        let edge_weights = vec![edge; tree.edges().len()];
        WeightedTree {
            tree,
            vertex_weights,
            edge_weights,
        }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn vertex_weights(&self) -> &[W] {
        &self.vertex_weights
    }

    pub fn edge_weights(&self) -> &[BiPoly] {
        &self.edge_weights
    }

    pub fn weight(&self, label: &str) -> Result<&W> {
        Ok(&self.vertex_weights[self.tree.index_of(label)?])
    }

    pub fn set_weight(&mut self, label: &str, w: W) -> Result<()> {
        let v = self.tree.index_of(label)?;
        self.vertex_weights[v] = w;
        Ok(())
    }

    pub fn edge_weight(&self, a: &str, b: &str) -> Result<&BiPoly> {
        let (ai, bi) = (self.tree.index_of(a)?, self.tree.index_of(b)?);
        let e = self
            .tree
            .edge_between(ai, bi)
            .ok_or_else(|| Error::InvalidArgument(format!("no edge `{a}`-`{b}`")))?;
        Ok(&self.edge_weights[e])
    }

    pub fn set_edge_weight(&mut self, a: &str, b: &str, w: BiPoly) -> Result<()> {
        let (ai, bi) = (self.tree.index_of(a)?, self.tree.index_of(b)?);
        let e = self
            .tree
            .edge_between(ai, bi)
            .ok_or_else(|| Error::InvalidArgument(format!("no edge `{a}`-`{b}`")))?;
        self.edge_weights[e] = w;
        Ok(())
    }

    /// Checks that every vertex weight has `k + 1` slots.
    pub fn check_slots(&self, k: usize) -> Result<()> {
        match self.vertex_weights.iter().find(|w| w.slots() != k + 1) {
            Some(w) => Err(Error::LengthMismatch {
                expected: k + 1,
                found: w.slots(),
            }),
            None => Ok(()),
        }
    }

    /// Removes pendant `u` with its edge. Other weights are untouched; moving
    /// `u`'s weight into its neighbor is the caller's job.
    pub fn remove_leaf(&self, u: &str) -> Result<Self> {
        let ui = self.tree.index_of(u)?;
        if self.tree.degree(ui) != 1 {
            return Err(Error::NotPendant(u.to_string()));
        }
        let mut keep = vec![true; self.tree.len()];
        keep[ui] = false;
        Ok(self.induced(&keep))
    }

    fn induced(&self, keep: &[bool]) -> Self {
        let (tree, origin) = self.tree.induced(keep);
        let vertex_weights = (0..self.tree.len())
            .filter(|&v| keep[v])
            .map(|v| self.vertex_weights[v].clone())
            .collect();
        let edge_weights = origin.iter().map(|&e| self.edge_weights[e].clone()).collect();
        WeightedTree {
            tree,
            vertex_weights,
            edge_weights,
        }
    }

    /// Splits at edge id `e = (a, b)` into the component of `a`, the
    /// component of `b`, and the weight of `e`.
    pub(crate) fn split_indices(&self, e: usize) -> (Self, Self, BiPoly) {
        let (a, _) = self.tree.edges()[e];
        let mut side_a = vec![false; self.tree.len()];
        for v in self.tree.reachable_from(a, Some(e)) {
            side_a[v] = true;
        }
        let side_b: Vec<bool> = side_a.iter().map(|&x| !x).collect();
        (
            self.induced(&side_a),
            self.induced(&side_b),
            self.edge_weights[e].clone(),
        )
    }

    /// Splits at the edge `a`-`b`.
    pub fn split_at_edge(&self, a: &str, b: &str) -> Result<(Self, Self, BiPoly)> {
        let (ai, bi) = (self.tree.index_of(a)?, self.tree.index_of(b)?);
        let e = self
            .tree
            .edge_between(ai, bi)
            .ok_or_else(|| Error::InvalidArgument(format!("no edge `{a}`-`{b}`")))?;
        let (mut x, mut y, w) = self.split_indices(e);
        if !x.tree.contains(a) {
            std::mem::swap(&mut x, &mut y);
        }
        Ok((x, y, w))
    }
}

/// How the next pendant vertex (or split edge) is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    /// Smallest label first; reproducible traces.
    #[default]
    Lexicographic,
    /// Uniformly among the candidates, from a seeded stream.
    Seeded(u64),
}

pub(crate) enum Picker {
    Lexicographic,
    Seeded(Box<ChaCha8Rng>),
}

impl Picker {
    pub(crate) fn new(order: Order) -> Self {
        match order {
            Order::Lexicographic => Picker::Lexicographic,
            Order::Seeded(seed) => Picker::Seeded(Box::new(ChaCha8Rng::seed_from_u64(seed))),
        }
    }

    /// Index into `candidates`, which are sorted lexicographically.
    pub(crate) fn pick(&mut self, len: usize) -> usize {
        match self {
            Picker::Lexicographic => 0,
            Picker::Seeded(rng) => rng.gen_range(0..len),
        }
    }
}

/// One elimination performed by [`Contraction::step`].
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionStep<W> {
    /// Label of the removed pendant vertex.
    pub removed: String,
    /// Label of its neighbor, which absorbed its weight.
    pub into: String,
    /// The removed vertex's weight just before removal.
    pub leaf_weight: W,
}

/// Working copy of a weighted tree that is contracted one pendant vertex at a
/// time. Protected vertices are never eliminated.
pub struct Contraction<W> {
    wt: WeightedTree<W>,
    k: usize,
    alive: Vec<bool>,
    degree: Vec<usize>,
    // rank[v] = position of v's label in sorted order
    rank: Vec<usize>,
    by_rank: Vec<usize>,
    pendants: BTreeSet<usize>,
    protected: Vec<usize>,
    live: usize,
    picker: Picker,
}

impl<W: VertexWeight> Contraction<W> {
    pub fn new(wt: WeightedTree<W>, k: usize, protected: &[&str], order: Order) -> Result<Self> {
        wt.check_slots(k)?;
        let protected = protected
            .iter()
            .map(|l| wt.tree.index_of(l))
            .collect::<Result<Vec<_>>>()?;
        let n = wt.tree.len();
        let mut by_rank: Vec<usize> = (0..n).collect();
        by_rank.sort_by(|&a, &b| wt.tree.label(a).cmp(wt.tree.label(b)));
        let mut rank = vec![0; n];
        for (r, &v) in by_rank.iter().enumerate() {
            rank[v] = r;
        }
        let degree: Vec<usize> = (0..n).map(|v| wt.tree.degree(v)).collect();
        let pendants = (0..n)
            .filter(|&v| degree[v] == 1 && !protected.contains(&v))
            .map(|v| rank[v])
            .collect();
        Ok(Contraction {
            k,
            alive: vec![true; n],
            degree,
            rank,
            by_rank,
            pendants,
            protected,
            live: n,
            picker: Picker::new(order),
            wt,
        })
    }

    pub fn live_vertices(&self) -> usize {
        self.live
    }

    /// Current weight of a vertex that has not been eliminated.
    pub fn weight(&self, label: &str) -> Result<&W> {
        let v = self.wt.tree.index_of(label)?;
        if !self.alive[v] {
            return Err(Error::UnknownVertex(label.to_string()));
        }
        Ok(&self.wt.vertex_weights[v])
    }

    pub(crate) fn weight_at(&self, v: usize) -> &W {
        &self.wt.vertex_weights[v]
    }

    /// Eliminates one unprotected pendant vertex, or returns `None` when
    /// there is none left.
    pub fn step(&mut self) -> Result<Option<ContractionStep<W>>> {
        if self.pendants.is_empty() {
            return Ok(None);
        }
        let at = self.picker.pick(self.pendants.len());
        let r = *self.pendants.iter().nth(at).expect("index within set");
        self.pendants.remove(&r);
        let u = self.by_rank[r];
        let (p, e) = self
            .wt
            .tree
            .neighbors(u)
            .iter()
            .copied()
            .find(|&(w, _)| self.alive[w])
            .expect("pendant vertex has one live neighbor");

        let leaf_weight = self.wt.vertex_weights[u].clone();
        let updated = self.wt.vertex_weights[p].absorb(&leaf_weight, &self.wt.edge_weights[e], self.k)?;
        self.wt.vertex_weights[p] = updated;

        self.alive[u] = false;
        self.live -= 1;
        self.degree[u] = 0;
        self.degree[p] -= 1;
        match self.degree[p] {
            1 if !self.protected.contains(&p) => {
                self.pendants.insert(self.rank[p]);
            }
            0 => {
                self.pendants.remove(&self.rank[p]);
            }
            _ => {}
        }
        Ok(Some(ContractionStep {
            removed: self.wt.tree.label(u).to_string(),
            into: self.wt.tree.label(p).to_string(),
            leaf_weight,
        }))
    }

    /// Runs [`Contraction::step`] until no unprotected pendant is left.
    pub fn run(&mut self) -> Result<()> {
        while self.step()?.is_some() {}
        Ok(())
    }

    /// The live part of the working tree with its current weights.
    pub fn snapshot(&self) -> WeightedTree<W> {
        self.wt.induced(&self.alive)
    }

    /// The single vertex left once contraction has finished with at most
    /// one protected vertex.
    pub(crate) fn last_vertex(&self) -> Option<usize> {
        (self.live == 1).then(|| self.alive.iter().position(|&a| a).expect("one live vertex"))
    }
}
