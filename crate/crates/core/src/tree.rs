//! Labeled trees: parsing, rendering, random generation and the structural
//! queries used by the contraction algorithms.

use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};
use std::cmp::Reverse;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A connected acyclic undirected graph with unique string labels.
///
/// Vertices keep the order in which they were introduced; edge ids index
/// [`Tree::edges`].
#[derive(Debug, Clone)]
pub struct Tree {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

fn check_label(label: &str, line: usize) -> Result<()> {
    if label.is_empty() || label.contains('#') || label.chars().any(char::is_whitespace) {
        return Err(Error::Parse {
            line,
            message: format!("invalid vertex label `{label}`"),
        });
    }
    Ok(())
}

impl Tree {
    /// Builds a tree from labels and index pairs, checking the tree property.
    pub fn from_edges(labels: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Tree> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotATree("no vertices".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            check_label(l, 0)?;
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::NotATree(format!("duplicate vertex `{l}`")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (id, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!("edge ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::NotATree(format!("self-loop at `{}`", labels[a])));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::NotATree(format!(
                    "duplicate edge `{}`-`{}`",
                    labels[a], labels[b]
                )));
            }
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        if edges.len() + 1 != n {
            return Err(Error::NotATree(format!(
                "{} vertices but {} edges",
                n,
                edges.len()
            )));
        }
        let tree = Tree {
            labels,
            index,
            edges,
            adj,
        };
        if tree.reachable_from(0, None).len() != n {
            return Err(Error::NotATree("graph is disconnected".into()));
        }
        Ok(tree)
    }

    /// The one-vertex tree.
    pub fn single(label: &str) -> Result<Tree> {
        Tree::from_edges(vec![label.to_string()], Vec::new())
    }

    /// Builds a tree from label pairs; vertices are ordered by first appearance.
    pub fn from_label_edges<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Tree> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |l: &str| -> usize {
            *index.entry(l.to_string()).or_insert_with(|| {
                labels.push(l.to_string());
                labels.len() - 1
            })
        };
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .map(|(a, b)| (intern(a.as_ref()), intern(b.as_ref())))
            .collect();
        Tree::from_edges(labels, edges)
    }

    /// Parses the edge-list text format: one `u v` pair per line, `#` comment
    /// lines and blank lines ignored, a lone `u` line for the one-vertex tree.
    pub fn parse_edge_list(text: &str) -> Result<Tree> {
        let mut pairs: Vec<(String, String)> = Vec::new();
        let mut lone: Option<(usize, String)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            for t in &tokens {
                check_label(t, line_no)?;
            }
            match tokens.as_slice() {
                [u] => {
                    if lone.is_some() || !pairs.is_empty() {
                        return Err(Error::Parse {
                            line: line_no,
                            message: "a single-label line must be the only entry".into(),
                        });
                    }
                    lone = Some((line_no, u.to_string()));
                }
                [u, v] => {
                    if let Some((l, _)) = lone {
                        return Err(Error::Parse {
                            line: l,
                            message: "a single-label line must be the only entry".into(),
                        });
                    }
                    pairs.push((u.to_string(), v.to_string()));
                }
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected `u v`, found {} tokens", tokens.len()),
                    })
                }
            }
        }
        match lone {
            Some((_, u)) => Tree::single(&u),
            None if pairs.is_empty() => Err(Error::Parse {
                line: 0,
                message: "empty input".into(),
            }),
            None => Tree::from_label_edges(&pairs),
        }
    }

    /// Decodes a Prüfer sequence over the labels `v1..vn`, `n = seq.len() + 2`.
    /// Entries are 1-based vertex numbers.
    pub fn from_prufer(seq: &[usize]) -> Result<Tree> {
        let n = seq.len() + 2;
        if let Some(bad) = seq.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::InvalidArgument(format!(
                "Prüfer entry {bad} outside 1..={n}"
            )));
        }
        let mut degree = vec![1usize; n];
        for &x in seq {
            degree[x - 1] += 1;
        }
        let mut leaves: BinaryHeap<Reverse<usize>> = (0..n)
            .filter(|&v| degree[v] == 1)
            .map(Reverse)
            .collect();
        let mut edges = Vec::with_capacity(n - 1);
        for &x in seq {
            let Reverse(leaf) = leaves.pop().expect("a Prüfer prefix always leaves a leaf");
            let x = x - 1;
            edges.push((leaf, x));
            degree[x] -= 1;
            if degree[x] == 1 {
                leaves.push(Reverse(x));
            }
        }
        let Reverse(a) = leaves.pop().expect("two vertices remain");
        let Reverse(b) = leaves.pop().expect("two vertices remain");
        edges.push((a, b));
        Tree::from_edges(numbered_labels(n), edges)
    }

    /// Uniform random labeled tree on `v1..vn`.
    ///
    /// The Prüfer sequence is drawn from a ChaCha8 stream seeded with
    /// `seed_from_u64(seed)`, one `gen_range(1..=n)` per entry, so a given
    /// `(n, seed)` always yields the same tree.
    pub fn random(n: usize, seed: u64) -> Result<Tree> {
        match n {
            0 => Err(Error::InvalidArgument("random tree needs n >= 1".into())),
            1 => Tree::single("v1"),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
                Tree::from_prufer(&seq)
            }
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v` paired with the connecting edge id.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edge id joining `a` and `b`, if adjacent.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adj[a].iter().find(|&&(w, _)| w == b).map(|&(_, e)| e)
    }

    /// Degree-1 vertices in lexicographic label order.
    pub fn pendant_vertices(&self) -> Vec<&str> {
        let mut out: Vec<&str> = (0..self.len())
            .filter(|&v| self.degree(v) == 1)
            .map(|v| self.label(v))
            .collect();
        out.sort_unstable();
        out
    }

    /// The unique path `u = u_0, ..., u_l = v`.
    pub fn path_between(&self, u: &str, v: &str) -> Result<Vec<&str>> {
        let path = self.path_indices(self.index_of(u)?, self.index_of(v)?)?;
        Ok(path.into_iter().map(|i| self.label(i)).collect())
    }

    pub(crate) fn path_indices(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        if u == v {
            return Err(Error::SameVertex(self.label(u).to_string()));
        }
        let mut parent = vec![usize::MAX; self.len()];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &(w, _) in &self.adj[x] {
                if parent[w] == usize::MAX {
                    parent[w] = x;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    /// Vertices reachable from `start`, optionally without crossing `cut`.
    pub(crate) fn reachable_from(&self, start: usize, cut: Option<usize>) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for &(w, e) in &self.adj[x] {
                if Some(e) != cut && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out
    }

    /// Induced subtree on `keep` (which must be connected). Returns the new
    /// tree plus, for each new edge, the id of the original edge.
    pub(crate) fn induced(&self, keep: &[bool]) -> (Tree, Vec<usize>) {
        let mut remap = vec![usize::MAX; self.len()];
        let mut labels = Vec::new();
        for v in 0..self.len() {
            if keep[v] {
                remap[v] = labels.len();
                labels.push(self.labels[v].clone());
            }
        }
        let mut edges = Vec::new();
        let mut origin = Vec::new();
        for (id, &(a, b)) in self.edges.iter().enumerate() {
            if keep[a] && keep[b] {
                edges.push((remap[a], remap[b]));
                origin.push(id);
            }
        }
        let tree = Tree::from_edges(labels, edges).expect("connected induced subgraph of a tree");
        (tree, origin)
    }

    /// Removes pendant vertex `u` and its edge.
    pub fn remove_leaf(&self, u: &str) -> Result<Tree> {
        let ui = self.index_of(u)?;
        if self.degree(ui) != 1 {
            return Err(Error::NotPendant(u.to_string()));
        }
        let mut keep = vec![true; self.len()];
        keep[ui] = false;
        Ok(self.induced(&keep).0)
    }

    /// Splits at the edge `a`-`b`, returning the component containing `a`
    /// and the one containing `b`.
    pub fn split_at_edge(&self, a: &str, b: &str) -> Result<(Tree, Tree)> {
        let (ai, bi) = (self.index_of(a)?, self.index_of(b)?);
        let e = self
            .edge_between(ai, bi)
            .ok_or_else(|| Error::InvalidArgument(format!("no edge `{a}`-`{b}`")))?;
        let (ta, _, tb, _) = self.split_indices(e);
        Ok((ta, tb))
    }

    /// Splits at edge id `e = (a, b)`: components of `a` and of `b`, each
    /// with its edge-origin map.
    pub(crate) fn split_indices(&self, e: usize) -> (Tree, Vec<usize>, Tree, Vec<usize>) {
        let (a, _) = self.edges[e];
        let mut side_a = vec![false; self.len()];
        for v in self.reachable_from(a, Some(e)) {
            side_a[v] = true;
        }
        let side_b: Vec<bool> = side_a.iter().map(|&x| !x).collect();
        let (ta, oa) = self.induced(&side_a);
        let (tb, ob) = self.induced(&side_b);
        (ta, oa, tb, ob)
    }

    /// Edge-list text accepted by [`Tree::parse_edge_list`].
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Sorted `(min label, max label)` pairs; identifies the tree up to vertex order.
    pub fn label_edges(&self) -> Vec<(&str, &str)> {
        let mut out: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.label(a), self.label(b));
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        out.sort_unstable();
        out
    }
}

pub(crate) fn numbered_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

impl PartialEq for Tree {
    fn eq(&self, other: &Tree) -> bool {
        let mut a: Vec<&String> = self.labels.iter().collect();
        let mut b: Vec<&String> = other.labels.iter().collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b && self.label_edges() == other.label_edges()
    }
}

impl Eq for Tree {}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return writeln!(f, "{}", self.labels[0]);
        }
        for &(a, b) in &self.edges {
            writeln!(f, "{} {}", self.labels[a], self.labels[b])?;
        }
        Ok(())
    }
}
