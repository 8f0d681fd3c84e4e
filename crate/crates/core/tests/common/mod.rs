#![allow(dead_code)]

use maxdeg_subtrees::bc_enum;
use maxdeg_subtrees::oracle::enumerate_connected_subtrees;
use maxdeg_subtrees::subtree_enum::{self, count_all_observed};
use maxdeg_subtrees::{Anchors, BiPoly, Error, Family, Oracle, Order, Tree};

pub type Check = Result<String, String>;

/// Seeded ensemble: tree `i` has `lo + i % (hi - lo + 1)` vertices and seed `i`.
pub fn ensemble(count: usize, lo: usize, hi: usize) -> Vec<Tree> {
    (0..count)
        .map(|i| Tree::random(lo + i % (hi - lo + 1), i as u64).expect("n >= 1"))
        .collect()
}

fn mismatch(what: &str, t: &Tree, k: usize, got: &BiPoly, want: &BiPoly) -> String {
    format!("{what} differs at k={k} on tree [{}]: got {got}, oracle {want}", t.label_edges().iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" "))
}

pub fn pairs(t: &Tree) -> Vec<(&str, &str)> {
    let labels = t.labels();
    let mut out = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            out.push((labels[i].as_str(), labels[j].as_str()));
        }
    }
    out
}

pub fn subtree_equivalence(trees: &[Tree]) -> Check {
    let oracle = Oracle::default();
    let mut checks = 0usize;
    for t in trees {
        for k in 0..t.len() {
            let want = oracle.count(t, k, Family::Subtree, Anchors::None).map_err(|e| e.to_string())?;
            let got = subtree_enum::count_all(t, k);
            if got != want {
                return Err(mismatch("count_all", t, k, &got, &want));
            }
            checks += 1;
            for v in t.labels() {
                let want = oracle.count(t, k, Family::Subtree, Anchors::One(v)).map_err(|e| e.to_string())?;
                let got = subtree_enum::count_containing(t, k, v).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(mismatch(&format!("count_containing({v})"), t, k, &got, &want));
                }
                checks += 1;
            }
            for (a, b) in pairs(t) {
                let want = oracle.count(t, k, Family::Subtree, Anchors::Two(a, b)).map_err(|e| e.to_string())?;
                let got = match subtree_enum::count_containing_pair(t, k, a, b) {
                    Ok(p) => p,
                    Err(Error::KTooSmall { k: 0, min: 1 }) => BiPoly::zero(),
                    Err(e) => return Err(e.to_string()),
                };
                if got != want {
                    return Err(mismatch(&format!("count_containing_pair({a},{b})"), t, k, &got, &want));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{} trees, {checks} polynomial comparisons", trees.len()))
}

pub fn bc_equivalence(trees: &[Tree]) -> Check {
    let oracle = Oracle::default();
    let mut checks = 0usize;
    for t in trees.iter().filter(|t| t.len() >= 3) {
        for k in 2..t.len() {
            let wt = bc_enum::default_weights(t, k);
            let want = oracle.count(t, k, Family::Bc, Anchors::None).map_err(|e| e.to_string())?;
            let got = bc_enum::count_bc_all(t, k).map_err(|e| e.to_string())?;
            if got != want {
                return Err(mismatch("count_bc_all", t, k, &got, &want));
            }
            checks += 1;
            for v in t.labels() {
                let want = oracle.count(t, k, Family::Bc, Anchors::One(v)).map_err(|e| e.to_string())?;
                let got = bc_enum::count_bc_containing(t, k, v).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(mismatch(&format!("count_bc_containing({v})"), t, k, &got, &want));
                }
                let want = oracle.rooted_parity_vectors(&wt, k, v).map_err(|e| e.to_string())?;
                let got = bc_enum::rooted_parity_vectors(t, k, v).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(format!("rooted_parity_vectors({v}) differ at k={k}: {got:?} vs {want:?}"));
                }
                checks += 2;
            }
            for (a, b) in pairs(t) {
                let want = oracle.count(t, k, Family::Bc, Anchors::Two(a, b)).map_err(|e| e.to_string())?;
                let got = bc_enum::count_bc_containing_pair(t, k, a, b).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(mismatch(&format!("count_bc_containing_pair({a},{b})"), t, k, &got, &want));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} comparisons"))
}

/// The double spider: A and M each carry four pendant leaves, plus A-M and M-H.
pub fn t1() -> Tree {
    let mut text = String::from("A M\nM H\n");
    for i in 1..=4 {
        text.push_str(&format!("A a{i}\nM m{i}\n"));
    }
    Tree::parse_edge_list(&text).expect("valid tree")
}

pub fn example_one() -> Check {
    let t = t1();
    let all = subtree_enum::count_all(&t, 4);
    let expected = [11u32, 10, 25, 50, 90, 120, 100, 40];
    for (i, &c) in expected.iter().enumerate() {
        let got = all.coefficient(i as u32 + 1, i as u32);
        if got != c.into() {
            return Err(format!("coefficient of y^{}z^{i} is {got}, expected {c}", i + 1));
        }
    }
    if all.len() != expected.len() {
        return Err(format!("unexpected extra terms in {all}"));
    }
    let one = subtree_enum::count_containing(&t, 4, "A").map_err(|e| e.to_string())?;
    let two = subtree_enum::count_containing_pair(&t, 4, "A", "H").map_err(|e| e.to_string())?;
    let counts = (all.eval_counts(), one.eval_counts(), two.eval_counts());
    if counts != (446u32.into(), 406u32.into(), 165u32.into()) {
        return Err(format!("counts {counts:?}, expected 446/406/165"));
    }
    let oracle = Oracle::default();
    for (anchors, got) in [(Anchors::None, &all), (Anchors::One("A"), &one), (Anchors::Two("A", "H"), &two)] {
        let want = oracle.count(&t, 4, Family::Subtree, anchors).map_err(|e| e.to_string())?;
        if &want != got {
            return Err(format!("oracle disagrees for {anchors:?}: {want}"));
        }
    }
    Ok("446 / 406 / 165, oracle agrees".to_string())
}

pub fn path(n: usize) -> Tree {
    if n == 1 {
        return Tree::single("p1").expect("valid label");
    }
    let text: String = (1..n).map(|i| format!("p{i} p{}\n", i + 1)).collect();
    Tree::parse_edge_list(&text).expect("valid path")
}

pub fn star(m: usize) -> Tree {
    let text: String = (1..=m).map(|i| format!("c l{i}\n")).collect();
    Tree::parse_edge_list(&text).expect("valid star")
}

pub fn bc_closed_forms() -> Check {
    let s = star(3);
    let full = bc_enum::count_bc_all(&s, 3).map_err(|e| e.to_string())?;
    let capped = bc_enum::count_bc_all(&s, 2).map_err(|e| e.to_string())?;
    if full != "3*y^2*z^2 + y^3*z^3".parse().unwrap() || capped != "3*y^2*z^2".parse().unwrap() {
        return Err(format!("star: {full} / {capped}"));
    }
    for n in 3..=7usize {
        let t = path(n);
        let expected: usize = (1..).take_while(|j| 2 * j < n).map(|j| n - 2 * j).sum();
        for k in 2..n {
            let got = bc_enum::count_bc_all(&t, k).map_err(|e| e.to_string())?;
            if got.eval_counts() != expected.into() {
                return Err(format!("P{n}, k={k}: {} BC-subtrees, expected {expected}", got.eval_counts()));
            }
            if got.terms().any(|(m, _)| m.dz < 2 || m.dy as usize > n) {
                return Err(format!("P{n}: malformed term in {got}"));
            }
        }
    }
    let p5 = bc_enum::count_bc_all(&path(5), 2).map_err(|e| e.to_string())?;
    if p5.eval_counts() != 4u32.into() {
        return Err("P5 should have 4 BC-subtrees".into());
    }
    Ok("star 4/3, P3..P7 match sum of (n - 2j)".to_string())
}

pub fn order_invariance(trees: usize, orders_per_tree: usize) -> Check {
    let mut runs = 0;
    for i in 0..trees {
        let t = Tree::random(5 + i % 16, 1000 + i as u64).map_err(|e| e.to_string())?;
        let k = 1 + i % 4;
        let reference = subtree_enum::count_all(&t, k);
        let root = t.labels()[i % t.len()].clone();
        let kb = k.max(2);
        let rooted = bc_enum::rooted_parity_vectors(&t, kb, &root).map_err(|e| e.to_string())?;
        for o in 0..orders_per_tree {
            let order = Order::Seeded((i * orders_per_tree + o) as u64);
            let got = subtree_enum::count_all_weighted(subtree_enum::default_weights(&t, k), k, order)
                .map_err(|e| e.to_string())?;
            if got != reference {
                return Err(format!("count_all depends on elimination order (tree {i}, order {o})"));
            }
            let got = bc_enum::rooted_parity_vectors_weighted(bc_enum::default_weights(&t, kb), kb, &root, order)
                .map_err(|e| e.to_string())?;
            if got != rooted {
                return Err(format!("rooted parity vectors depend on order (tree {i}, order {o})"));
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} random orders"))
}

pub fn split_invariance(trees: &[Tree]) -> Check {
    let mut splits = 0;
    for t in trees.iter().filter(|t| t.len() >= 3) {
        for k in 2..t.len() {
            let reference = bc_enum::count_bc_all(t, k).map_err(|e| e.to_string())?;
            for (a, b) in t.label_edges() {
                let got = bc_enum::count_bc_all_first_split(bc_enum::default_weights(t, k), k, a, b)
                    .map_err(|e| e.to_string())?;
                if got != reference {
                    return Err(format!("first split at {a}-{b} changes the result at k={k}"));
                }
                splits += 1;
            }
            let got = bc_enum::count_bc_all_weighted(bc_enum::default_weights(t, k), k, Order::Seeded(k as u64))
                .map_err(|e| e.to_string())?;
            if got != reference {
                return Err(format!("random split order changes the result at k={k}"));
            }
        }
    }
    Ok(format!("{splits} first-split edges"))
}

/// At every contraction step the accumulated part plus the oracle count of
/// the contracted weighted tree equals the oracle count of the input.
pub fn step_conservation(trees: &[Tree]) -> Check {
    let oracle = Oracle::default();
    let mut steps = 0;
    for t in trees.iter().filter(|t| t.len() <= 8) {
        for k in 0..t.len() {
            let target = oracle.count(t, k, Family::Subtree, Anchors::None).map_err(|e| e.to_string())?;
            let mut failure = None;
            count_all_observed(subtree_enum::default_weights(t, k), k, Order::Lexicographic, |run, acc| {
                if failure.is_some() {
                    return;
                }
                let rest = oracle
                    .count_subtrees_weighted(&run.snapshot(), k, Anchors::None)
                    .expect("small tree");
                if &rest + acc != target {
                    failure = Some(format!("conservation fails at k={k} after {} live vertices", run.live_vertices()));
                }
                steps += 1;
            })
            .map_err(|e| e.to_string())?;
            if let Some(f) = failure {
                return Err(f);
            }
        }
    }
    Ok(format!("{steps} contraction steps"))
}

/// Oracle counts of a contracted tree with the protected vertices kept
/// equal the counts on the original tree, for both families.
pub fn contracted_oracle_agreement(t: &Tree, k: usize, protect: &[&str]) -> Result<(), String> {
    use maxdeg_subtrees::Contraction;
    let oracle = Oracle::default();
    let anchors = Anchors::from_labels(protect).map_err(|e| e.to_string())?;
    let want = oracle.count(t, k, Family::Subtree, anchors).map_err(|e| e.to_string())?;
    let mut run = Contraction::new(subtree_enum::default_weights(t, k), k, protect, Order::Lexicographic)
        .map_err(|e| e.to_string())?;
    while run.step().map_err(|e| e.to_string())?.is_some() {
        let got = oracle
            .count_subtrees_weighted(&run.snapshot(), k, anchors)
            .map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("anchored count changed under contraction: {got} vs {want}"));
        }
    }
    if k >= 2 && protect.len() == 1 {
        let root = protect[0];
        let want = oracle
            .rooted_parity_vectors(&bc_enum::default_weights(t, k), k, root)
            .map_err(|e| e.to_string())?;
        let mut run = Contraction::new(bc_enum::default_weights(t, k), k, protect, Order::Lexicographic)
            .map_err(|e| e.to_string())?;
        while run.step().map_err(|e| e.to_string())?.is_some() {
            let got = oracle
                .rooted_parity_vectors(&run.snapshot(), k, root)
                .map_err(|e| e.to_string())?;
            if got != want {
                return Err(format!("rooted parity sums changed under contraction at {root}"));
            }
        }
    }
    Ok(())
}

pub fn witness_total(t: &Tree) -> usize {
    enumerate_connected_subtrees(t).len()
}
