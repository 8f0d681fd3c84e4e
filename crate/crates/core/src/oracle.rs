//! Brute-force reference counts built straight from the definitional
//! subtree weights. Exponential in the tree size; meant for small trees only.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::bc_enum::{self, ParityDegreeVector};
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::subtree_enum::{self, Anchors, DegreeVector};
use crate::tree::Tree;
use crate::weighted::WeightedTree;

pub const DEFAULT_MAX_VERTICES: usize = 14;

/// A connected vertex subset together with its induced edges and leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeWitness {
    pub vertex_set: Vec<String>,
    pub edge_set: Vec<(String, String)>,
    /// Degree-1 vertices; a single vertex is its own leaf.
    pub leaf_set: Vec<String>,
    vertices: Vec<usize>,
    edges: Vec<usize>,
    degree: Vec<usize>,
}

impl SubtreeWitness {
    fn new(t: &Tree, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        let mut member = vec![false; t.len()];
        for &v in &vertices {
            member[v] = true;
        }
        let edges: Vec<usize> = (0..t.edges().len())
            .filter(|&e| {
                let (a, b) = t.edges()[e];
                member[a] && member[b]
            })
            .collect();
        let mut degree = vec![0; t.len()];
        for &e in &edges {
            let (a, b) = t.edges()[e];
            degree[a] += 1;
            degree[b] += 1;
        }
        let leaves: Vec<usize> = if vertices.len() == 1 {
            vertices.clone()
        } else {
            vertices.iter().copied().filter(|&v| degree[v] == 1).collect()
        };
        let name = |v: usize| t.label(v).to_string();
        SubtreeWitness {
            vertex_set: vertices.iter().map(|&v| name(v)).collect(),
            edge_set: edges
                .iter()
                .map(|&e| {
                    let (a, b) = t.edges()[e];
                    (name(a), name(b))
                })
                .collect(),
            leaf_set: leaves.iter().map(|&v| name(v)).collect(),
            vertices,
            edges,
            degree,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.vertex_set.iter().any(|l| l == label)
    }

    fn has(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    fn is_leaf(&self, v: usize) -> bool {
        self.degree[v] == 1
    }

    fn max_degree(&self) -> usize {
        self.vertices.iter().map(|&v| self.degree[v]).max().unwrap_or(0)
    }

    /// Distance parity (`true` = odd) from `from` to every vertex of the
    /// witness, indexed by tree vertex.
    fn parity_from(&self, t: &Tree, from: usize) -> Vec<bool> {
        let mut odd = vec![false; t.len()];
        let mut seen = vec![false; t.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(x) = queue.pop_front() {
            for &(y, e) in t.neighbors(x) {
                if !seen[y] && self.has(y) && self.edges.contains(&e) {
                    seen[y] = true;
                    odd[y] = !odd[x];
                    queue.push_back(y);
                }
            }
        }
        odd
    }
}

/// Every connected vertex subset of `t`, once each, ordered by size and then
/// by the vertex indices.
pub fn enumerate_connected_subtrees(t: &Tree) -> Vec<SubtreeWitness> {
    let mut sets = Vec::new();
    for root in 0..t.len() {
        let frontier: Vec<usize> = t
            .neighbors(root)
            .iter()
            .map(|&(w, _)| w)
            .filter(|&w| w > root)
            .collect();
        grow(t, root, vec![root], frontier, &mut vec![false; t.len()], &mut sets);
    }
    let mut out: Vec<SubtreeWitness> = sets.into_iter().map(|s| SubtreeWitness::new(t, s)).collect();
    out.sort_by(|a, b| (a.len(), &a.vertices).cmp(&(b.len(), &b.vertices)));
    out
}

/// Connected sets whose minimum vertex is `root`: branch on the first
/// frontier vertex, either taking it or banning it for this branch.
fn grow(
    t: &Tree,
    root: usize,
    set: Vec<usize>,
    mut frontier: Vec<usize>,
    banned: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(x) = frontier.pop() else {
        out.push(set);
        return;
    };
    banned[x] = true;
    grow(t, root, set.clone(), frontier.clone(), banned, out);
    banned[x] = false;

    let mut taken = set;
    taken.push(x);
    for &(w, _) in t.neighbors(x) {
        if w > root && !banned[w] && !taken.contains(&w) && !frontier.contains(&w) {
            frontier.push(w);
        }
    }
    grow(t, root, taken, frontier, banned, out);
}

/// Max-degree-`k` subtree weight: the product over vertices of
/// `f(v)_0 + ... + f(v)_{k - deg v}` times the product of edge weights.
pub fn omega_k(wt: &WeightedTree<DegreeVector>, w: &SubtreeWitness, k: usize) -> BiPoly {
    let mut acc = edge_product(wt, w);
    for &v in &w.vertices {
        let f = &wt.vertex_weights()[v];
        acc = &acc * &f.sum_to(k as isize - w.degree[v] as isize);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

fn edge_product<W: crate::weighted::VertexWeight>(wt: &WeightedTree<W>, w: &SubtreeWitness) -> BiPoly {
    w.edges.iter().map(|&e| &wt.edge_weights()[e]).product()
}

fn sum_range(v: &[BiPoly], from: usize, to: isize) -> BiPoly {
    if to < from as isize {
        return BiPoly::zero();
    }
    let to = (to as usize).min(v.len() - 1);
    v[from..=to].iter().sum()
}

/// At least two edges and every leaf in one distance-parity class.
pub fn is_bc(t: &Tree, w: &SubtreeWitness) -> bool {
    if w.edges.len() < 2 {
        return false;
    }
    let leaves: Vec<usize> = w.vertices.iter().copied().filter(|&v| w.is_leaf(v)).collect();
    let odd = w.parity_from(t, leaves[0]);
    leaves.iter().all(|&l| !odd[l])
}

/// BC-subtree weight `(b1 b2 b3 + b4 b5 b6) b7`, with the classes taken
/// relative to the smallest leaf of the witness.
pub fn omega_bc(wt: &WeightedTree<ParityDegreeVector>, w: &SubtreeWitness, k: usize) -> BiPoly {
    let t = wt.tree();
    let Some(&v_l) = w.vertices.iter().find(|&&v| w.is_leaf(v)) else {
        return BiPoly::zero();
    };
    let odd_class = w.parity_from(t, v_l);
    let top = |v: usize| k as isize - w.degree[v] as isize;

    let mut first = BiPoly::one();
    let mut second = BiPoly::one();
    for &u in &w.vertices {
        let f = &wt.vertex_weights()[u];
        let (a, b) = if !odd_class[u] {
            // b1 and b4/b5
            let b1 = sum_range(&f.even, 0, top(u));
            let b45 = if w.is_leaf(u) {
                sum_range(&f.odd, 1, top(u))
            } else {
                sum_range(&f.odd, 0, top(u))
            };
            (b1, b45)
        } else {
            // b2/b3 and b6
            let b23 = if w.is_leaf(u) {
                sum_range(&f.odd, 1, top(u))
            } else {
                sum_range(&f.odd, 0, top(u))
            };
            let b6 = sum_range(&f.even, 0, top(u));
            (b23, b6)
        };
        first = &first * &a;
        second = &second * &b;
    }
    &(first + second) * &edge_product(wt, w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Rooted parity weight of `w` at `root` for root degree `j`.
pub fn omega_rooted_parity(
    wt: &WeightedTree<ParityDegreeVector>,
    w: &SubtreeWitness,
    root: &str,
    k: usize,
    j: usize,
    parity: Parity,
) -> Result<BiPoly> {
    let t = wt.tree();
    let r = t.index_of(root)?;
    if !w.has(r) {
        return Err(Error::UnknownVertex(root.to_string()));
    }
    let fr = &wt.vertex_weights()[r];
    let own = match parity {
        Parity::Odd => &fr.odd,
        Parity::Even => &fr.even,
    };
    if w.len() == 1 {
        return Ok(own.get(j).cloned().unwrap_or_default());
    }
    let Some(shift) = j.checked_sub(w.degree[r]) else {
        return Ok(BiPoly::zero());
    };
    let mut acc = own.get(shift).cloned().unwrap_or_default();
    if acc.is_zero() {
        return Ok(acc);
    }
    let odd_dist = w.parity_from(t, r);
    let top = |v: usize| k as isize - w.degree[v] as isize;
    // vertices whose parity class must hold the leaves
    let leaf_class_is_odd = parity == Parity::Odd;
    for &u in w.vertices.iter().filter(|&&u| u != r) {
        let f = &wt.vertex_weights()[u];
        let factor = if odd_dist[u] == leaf_class_is_odd {
            sum_range(&f.even, 0, top(u))
        } else if w.is_leaf(u) {
            sum_range(&f.odd, 1, top(u))
        } else {
            sum_range(&f.odd, 0, top(u))
        };
        acc = &acc * &factor;
        if acc.is_zero() {
            return Ok(acc);
        }
    }
    Ok(&acc * &edge_product(wt, w))
}

/// Both parity weights for every `j` at once.
pub fn omega_rooted_parity_all(
    wt: &WeightedTree<ParityDegreeVector>,
    w: &SubtreeWitness,
    root: &str,
    k: usize,
) -> Result<ParityDegreeVector> {
    let mut out = ParityDegreeVector {
        odd: Vec::with_capacity(k + 1),
        even: Vec::with_capacity(k + 1),
    };
    for j in 0..=k {
        out.odd.push(omega_rooted_parity(wt, w, root, k, j, Parity::Odd)?);
        out.even.push(omega_rooted_parity(wt, w, root, k, j, Parity::Even)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Family {
    #[default]
    Subtree,
    Bc,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Subtree => "subtree",
            Family::Bc => "bc",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subtree" | "subtrees" => Ok(Family::Subtree),
            "bc" => Ok(Family::Bc),
            other => Err(Error::InvalidArgument(format!("unknown family `{other}`"))),
        }
    }
}

/// Brute-force counter with a vertex bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub max_vertices: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

impl Oracle {
    pub fn with_bound(max_vertices: usize) -> Self {
        Oracle { max_vertices }
    }

    fn witnesses(&self, t: &Tree, anchors: Anchors<'_>) -> Result<Vec<SubtreeWitness>> {
        if t.len() > self.max_vertices {
            return Err(Error::TooLarge {
                n: t.len(),
                max: self.max_vertices,
            });
        }
        let wanted = anchors.labels();
        for l in &wanted {
            t.index_of(l)?;
        }
        if let Anchors::Two(a, b) = anchors {
            if a == b {
                return Err(Error::SameVertex(a.to_string()));
            }
        }
        Ok(enumerate_connected_subtrees(t)
            .into_iter()
            .filter(|w| wanted.iter().all(|l| w.contains(l)))
            .collect())
    }

    /// Default-weight count for either family.
    pub fn count(&self, t: &Tree, k: usize, family: Family, anchors: Anchors<'_>) -> Result<BiPoly> {
        match family {
            Family::Subtree => self.count_subtrees_weighted(&subtree_enum::default_weights(t, k), k, anchors),
            Family::Bc => {
                if k < 2 {
                    return Err(Error::KTooSmall { k, min: 2 });
                }
                self.count_bc_weighted(&bc_enum::default_weights(t, k), k, anchors)
            }
        }
    }

    pub fn count_subtrees_weighted(
        &self,
        wt: &WeightedTree<DegreeVector>,
        k: usize,
        anchors: Anchors<'_>,
    ) -> Result<BiPoly> {
        wt.check_slots(k)?;
        Ok(self
            .witnesses(wt.tree(), anchors)?
            .iter()
            .map(|w| omega_k(wt, w, k))
            .sum())
    }

    pub fn count_bc_weighted(
        &self,
        wt: &WeightedTree<ParityDegreeVector>,
        k: usize,
        anchors: Anchors<'_>,
    ) -> Result<BiPoly> {
        wt.check_slots(k)?;
        Ok(self
            .witnesses(wt.tree(), anchors)?
            .iter()
            .filter(|w| is_bc(wt.tree(), w))
            .map(|w| omega_bc(wt, w, k))
            .sum())
    }

    /// Sums of the rooted parity weights over every witness containing
    /// `root`.
    pub fn rooted_parity_vectors(
        &self,
        wt: &WeightedTree<ParityDegreeVector>,
        k: usize,
        root: &str,
    ) -> Result<ParityDegreeVector> {
        wt.check_slots(k)?;
        let mut acc = ParityDegreeVector {
            odd: vec![BiPoly::zero(); k + 1],
            even: vec![BiPoly::zero(); k + 1],
        };
        for w in self.witnesses(wt.tree(), Anchors::One(root))? {
            let part = omega_rooted_parity_all(wt, &w, root, k)?;
            for j in 0..=k {
                acc.odd[j] += &part.odd[j];
                acc.even[j] += &part.even[j];
            }
        }
        Ok(acc)
    }

    /// `y^|V| z^|E|` summed over every subtree, with no degree bound.
    pub fn unconstrained(&self, t: &Tree) -> Result<BiPoly> {
        Ok(self
            .witnesses(t, Anchors::None)?
            .iter()
            .map(|w| BiPoly::monomial(1u32, w.len() as u32, w.edges.len() as u32))
            .sum())
    }
}

pub fn oracle_count(t: &Tree, k: usize, family: Family, anchors: Anchors<'_>) -> Result<BiPoly> {
    Oracle::default().count(t, k, family, anchors)
}

/// Closed form of a default-weight witness: `y^|V| z^|E|` if the degree
/// bound holds, else zero.
pub fn closed_form_k(w: &SubtreeWitness, k: usize) -> BiPoly {
    if w.max_degree() <= k {
        BiPoly::monomial(1u32, w.len() as u32, w.edges.len() as u32)
    } else {
        BiPoly::zero()
    }
}
