//! All non-isomorphic free trees of a given order.
//!
//! The production generator walks canonical level sequences with the
//! constant-amortized-time successor rule of Wright, Richmond, Odlyzko and
//! McKay (the free-tree refinement of Beyer and Hedetniemi's rooted-tree
//! generator). An independent Prüfer-sequence count, deduplicated by
//! canonical code, cross-checks it at small orders.

use std::collections::HashSet;

use crate::{Error, Result, Tree};

pub const DEFAULT_ENUMERATION_CAP: usize = 18;
pub const DEFAULT_PRUFER_CAP: usize = 10;

/// Free trees of order `n` in generation order (one per isomorphism class).
pub struct FreeTrees {
    n: usize,
    layout: Option<Vec<usize>>,
    started: bool,
}

impl FreeTrees {
    pub fn new(n: usize) -> FreeTrees {
        assert!(n >= 1, "trees have at least one vertex");
        // Start from the path, rooted at its center.
        let layout = (0..=n / 2).chain(1..n.div_ceil(2)).collect();
        FreeTrees {
            n,
            layout: Some(layout),
            started: false,
        }
    }
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.n == 1 {
            return self.layout.take().map(|_| Tree::path(1));
        }
        let mut layout = self.layout.take()?;
        if self.started {
            layout = next_rooted(&layout, None)?;
        }
        self.started = true;
        while !is_free_canonical(&layout) {
            layout = jump(&layout)?;
        }
        let tree = layout_to_tree(&layout);
        self.layout = Some(layout);
        Some(tree)
    }
}

/// Splits off the leftmost subtree of the root: returns that subtree's
/// levels (shifted up by one) and the remaining tree.
fn split(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(_, &l)| l == 1)
        .nth(1)
        .map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|l| l - 1).collect();
    let rest = std::iter::once(0).chain(layout[m..].iter().copied()).collect();
    (left, rest)
}

/// The level sequence is the canonical one for its free tree (rooted at the
/// center, heaviest subtree first).
fn is_free_canonical(layout: &[usize]) -> bool {
    let (left, rest) = split(layout);
    let lh = left.iter().copied().max().unwrap_or(0);
    let rh = rest.iter().copied().max().unwrap_or(0);
    if rh != lh {
        return rh > lh;
    }
    match left.len().cmp(&rest.len()) {
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => left <= rest,
        std::cmp::Ordering::Less => true,
    }
}

/// Beyer–Hedetniemi successor of a rooted level sequence, optionally from a
/// forced position `p`.
fn next_rooted(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while p > 0 && pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut next = pred.to_vec();
    for i in p..next.len() {
        next[i] = next[i - p + q];
    }
    Some(next)
}

/// Skips ahead from a non-canonical sequence.
fn jump(candidate: &[usize]) -> Option<Vec<usize>> {
    let (left, _) = split(candidate);
    let p = left.len();
    let mut next = next_rooted(candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split(&next);
        let h = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (i, slot) in next[len - (h + 1)..].iter_mut().enumerate() {
            *slot = i + 1;
        }
    }
    Some(next)
}

fn layout_to_tree(layout: &[usize]) -> Tree {
    let mut last_at_level: Vec<usize> = Vec::new();
    let mut edges = Vec::with_capacity(layout.len().saturating_sub(1));
    for (v, &level) in layout.iter().enumerate() {
        if level > 0 {
            edges.push((last_at_level[level - 1], v));
        }
        last_at_level.truncate(level);
        last_at_level.push(v);
    }
    Tree::from_edges(layout.len(), edges).expect("level sequences describe trees")
}

/// Every tree of order `n`, sorted by canonical code, paired with its code.
pub fn all_trees_coded(n: usize) -> Result<Vec<(String, Tree)>> {
    all_trees_coded_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn all_trees_coded_capped(n: usize, cap: usize) -> Result<Vec<(String, Tree)>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "tree enumeration",
            order: n,
            cap,
        });
    }
    let mut trees: Vec<(String, Tree)> = FreeTrees::new(n)
        .map(|t| (t.canonical_code(), t))
        .collect();
    trees.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(trees)
}

/// Stream of all trees of one order in canonical-code order.
pub struct TreeStream {
    n: usize,
    inner: std::vec::IntoIter<(String, Tree)>,
}

impl TreeStream {
    pub fn order(&self) -> usize {
        self.n
    }
}

impl Iterator for TreeStream {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        self.inner.next().map(|(_, t)| t)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.inner.size_hint()
    }
}

impl ExactSizeIterator for TreeStream {}

pub fn all_trees(n: usize) -> Result<TreeStream> {
    Ok(TreeStream {
        n,
        inner: all_trees_coded(n)?.into_iter(),
    })
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into a tree.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Result<Tree> {
    if n < 2 || seq.len() != n - 2 {
        return Err(Error::Parse(format!(
            "a Prüfer sequence for {n} vertices has length {}",
            n.saturating_sub(2)
        )));
    }
    if let Some(&v) = seq.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: v, order: n });
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] = 0;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(n, edges)
}

/// Number of isomorphism classes of trees on `n` vertices, counted by
/// decoding Prüfer sequences and deduplicating by canonical code.
///
/// Every class has a labelling in which degree does not increase with the
/// vertex id, and a vertex of degree `d` occurs `d - 1` times in the Prüfer
/// sequence, so it suffices to decode the sequences whose label counts are
/// non-increasing in the label.
pub fn count_trees_labeled_oracle(n: usize) -> Result<usize> {
    count_trees_labeled_oracle_capped(n, DEFAULT_PRUFER_CAP)
}

pub fn count_trees_labeled_oracle_capped(n: usize, cap: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "Prüfer oracle",
            order: n,
            cap,
        });
    }
    if n <= 2 {
        return Ok(1);
    }
    let mut codes = HashSet::new();
    let mut counts = Vec::new();
    degree_profiles(n - 2, n - 2, n, &mut counts, &mut |counts| {
        let mut remaining = counts.to_vec();
        let mut seq = Vec::with_capacity(n - 2);
        arrangements(&mut remaining, &mut seq, n - 2, &mut |seq| {
            let tree = prufer_decode(n, seq).expect("valid sequence");
            codes.insert(tree.canonical_code());
        });
    });
    Ok(codes.len())
}

/// Non-increasing count vectors of length `slots` summing to `total`.
fn degree_profiles(
    total: usize,
    max_part: usize,
    slots: usize,
    counts: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if counts.len() == slots {
        if total == 0 {
            visit(counts);
        }
        return;
    }
    for part in (0..=max_part.min(total)).rev() {
        counts.push(part);
        degree_profiles(total - part, part, slots, counts, visit);
        counts.pop();
    }
}

/// Distinct sequences using label `v` exactly `remaining[v]` times.
fn arrangements(
    remaining: &mut [usize],
    seq: &mut Vec<usize>,
    len: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    if seq.len() == len {
        visit(seq);
        return;
    }
    for v in 0..remaining.len() {
        if remaining[v] > 0 {
            remaining[v] -= 1;
            seq.push(v);
            arrangements(remaining, seq, len, visit);
            seq.pop();
            remaining[v] += 1;
        }
    }
}
