//! Simple undirected graphs over dense vertex ids, trees, rooted views and
//! the structural queries the rest of the crate is built on.

use std::collections::VecDeque;
use std::ops::Deref;

use crate::{Error, Result, VertexSet};

/// A finite simple graph on the vertices `0..n`.
///
/// Adjacency lists are kept sorted, so iteration order is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    size: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and endpoints `>= n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        let mut size = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            size += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, size })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Sorted neighbor list. Panics if `v` is out of range.
    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    /// Open neighborhood `N(v)`.
    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(VertexSet::from_members(
            self.order(),
            self.adj[v].iter().copied(),
        ))
    }

    /// Closed neighborhood `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighbors(&self, v: usize) -> Result<VertexSet> {
        let mut set = self.neighbors(v)?;
        set.insert(v);
        Ok(set)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Breadth-first distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }
}

/// A tree: a connected graph with exactly `n - 1` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    graph: Graph,
}

impl Deref for Tree {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

impl TryFrom<Graph> for Tree {
    type Error = Error;

    fn try_from(graph: Graph) -> Result<Tree> {
        Tree::new(graph)
    }
}

impl Tree {
    pub fn new(graph: Graph) -> Result<Tree> {
        if graph.size() + 1 != graph.order() {
            return Err(Error::NotATree(format!(
                "{} vertices but {} edges",
                graph.order(),
                graph.size()
            )));
        }
        if !graph.is_connected() {
            return Err(Error::NotATree("disconnected".into()));
        }
        Ok(Tree { graph })
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Tree> {
        Tree::new(Graph::new(n, edges)?)
    }

    pub fn as_graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// The path `P_n` labelled `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Tree {
        Tree::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is a tree")
    }

    /// The star `K_{1,t}` with center `0`.
    pub fn star(t: usize) -> Tree {
        Tree::from_edges(t + 1, (1..=t).map(|v| (0, v))).expect("star is a tree")
    }

    /// The double star `DS_{p,q}`: centers `0` and `1`, then the `p` leaves
    /// of `0`, then the `q` leaves of `1`.
    pub fn double_star(p: usize, q: usize) -> Tree {
        let edges = std::iter::once((0, 1))
            .chain((0..p).map(|i| (0, 2 + i)))
            .chain((0..q).map(|i| (1, 2 + p + i)));
        Tree::from_edges(2 + p + q, edges).expect("double star is a tree")
    }

    /// The healthy spider `S_{t,t}`: center `0`, leg `k` is `0-(2k+1)-(2k+2)`.
    pub fn healthy_spider(t: usize) -> Tree {
        let edges = (0..t).flat_map(|k| [(0, 2 * k + 1), (2 * k + 1, 2 * k + 2)]);
        Tree::from_edges(2 * t + 1, edges).expect("spider is a tree")
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Tree> {
        if perm.len() != self.order() {
            return Err(Error::Parse("permutation length mismatch".into()));
        }
        Tree::from_edges(self.order(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// The subtree induced by `keep` (which must induce a connected subgraph),
    /// relabelled densely in the order given. Returns the local-to-original map.
    pub fn induced(&self, keep: &[usize]) -> Result<(Tree, Vec<usize>)> {
        let mut local = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            self.check_vertex(v)?;
            local[v] = i;
        }
        let edges: Vec<_> = self
            .edges()
            .filter(|&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|(u, v)| (local[u], local[v]))
            .collect();
        Ok((Tree::from_edges(keep.len(), edges)?, keep.to_vec()))
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Vertices adjacent to at least one leaf (support vertices).
    pub fn stems(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&v| self.adj(v).iter().any(|&u| self.is_leaf(u)))
            .collect()
    }

    pub fn leaf_neighbors(&self, v: usize) -> usize {
        self.adj(v).iter().filter(|&&u| self.is_leaf(u)).count()
    }

    /// `K_{1,t}` with `t >= 2`, so the tree has at least 3 vertices.
    pub fn is_star(&self) -> bool {
        self.order() >= 3 && (0..self.order()).any(|v| self.degree(v) == self.order() - 1)
    }

    /// All-pairs edge distances.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.order())
            .map(|s| {
                self.bfs_distances(s)
                    .into_iter()
                    .map(|d| d.expect("trees are connected"))
                    .collect()
            })
            .collect()
    }

    pub fn diameter(&self) -> usize {
        let far = |s: usize| {
            let dist = self.bfs_distances(s);
            (0..self.order())
                .map(|v| (dist[v].unwrap(), v))
                .max_by_key(|&(d, v)| (d, std::cmp::Reverse(v)))
                .unwrap()
        };
        let (_, a) = far(0);
        far(a).0
    }

    /// The unique path from `u` to `v`.
    pub fn path_between(&self, u: usize, v: usize) -> Vec<usize> {
        let rooted = self.root_at(u).expect("vertex in range");
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = rooted.parent(cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Among all diametral paths `x₀…x_d` (in both orientations), one whose
    /// penultimate vertex `x_{d-1}` has maximum degree; ties are broken by the
    /// lexicographically smallest vertex sequence.
    pub fn diametral_path_max_penultimate(&self) -> Result<DiametralPath> {
        if self.order() < 2 {
            return Err(Error::Unsupported(
                "a diametral path needs at least two vertices".into(),
            ));
        }
        let dist = self.distance_matrix();
        let diam = dist.iter().flatten().copied().max().unwrap();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (x0, row) in dist.iter().enumerate() {
            for xd in 0..self.order() {
                if row[xd] != diam {
                    continue;
                }
                // x_{d-1} is the neighbor of x_d one step closer to x_0.
                let pen = *self
                    .adj(xd)
                    .iter()
                    .find(|&&w| row[w] + 1 == diam)
                    .unwrap();
                let deg = self.degree(pen);
                if best.as_ref().is_some_and(|(bd, _)| deg < *bd) {
                    continue;
                }
                let path = self.path_between(x0, xd);
                let replace = match &best {
                    None => true,
                    Some((bd, bp)) => deg > *bd || path < *bp,
                };
                if replace {
                    best = Some((deg, path));
                }
            }
        }
        let (_, vertices) = best.unwrap();
        Ok(DiametralPath { vertices })
    }

    pub fn root_at(&self, root: usize) -> Result<RootedTree> {
        self.check_vertex(root)?;
        let n = self.order();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in self.adj(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    children[u].push(v);
                    queue.push_back(v);
                }
            }
        }
        Ok(RootedTree {
            tree: self.clone(),
            root,
            parent,
            children,
            order,
        })
    }

    /// The one or two central vertices, found by repeatedly stripping leaves.
    pub fn centers(&self) -> Vec<usize> {
        let n = self.order();
        if n <= 2 {
            return (0..n).collect();
        }
        let mut degree: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        let mut remaining = n;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &leaf in &layer {
                degree[leaf] = 0;
                for &w in self.adj(leaf) {
                    if degree[w] > 0 {
                        degree[w] -= 1;
                        if degree[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }

    /// Isomorphism-invariant code: the AHU parenthesis string of the tree
    /// rooted at its center (the smaller of the two for bicentral trees).
    pub fn canonical_code(&self) -> String {
        self.centers()
            .into_iter()
            .map(|c| self.root_at(c).unwrap().ahu_code(c))
            .min()
            .unwrap()
    }
}

/// A path `x₀x₁…x_d` whose length is the diameter of its tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiametralPath {
    pub vertices: Vec<usize>,
}

impl DiametralPath {
    /// Path length `d` in edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() <= 1
    }

    /// `x_i`, counted from the start.
    pub fn x(&self, i: usize) -> usize {
        self.vertices[i]
    }

    /// `x_{d-k}`, counted back from the far end.
    pub fn from_end(&self, k: usize) -> usize {
        self.vertices[self.len() - k]
    }
}

/// A tree with a distinguished root and parent/children arrays.
#[derive(Clone, Debug)]
pub struct RootedTree {
    tree: Tree,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl RootedTree {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// `C(v)`, sorted by id.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Vertices in breadth-first order from the root.
    pub fn bfs_order(&self) -> &[usize] {
        &self.order
    }

    /// `D(v)`: all proper descendants of `v`, in breadth-first order.
    pub fn descendants(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut queue = VecDeque::from_iter(self.children[v].iter().copied());
        while let Some(u) = queue.pop_front() {
            out.push(u);
            queue.extend(self.children[u].iter().copied());
        }
        out
    }

    /// Vertex set of `T_v`, the subtree induced by `D(v) ∪ {v}`.
    pub fn subtree(&self, v: usize) -> VertexSet {
        let mut set = VertexSet::from_members(self.tree.order(), self.descendants(v));
        set.insert(v);
        set
    }

    pub fn depth(&self, v: usize) -> usize {
        let mut d = 0;
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            d += 1;
            cur = p;
        }
        d
    }

    /// AHU code of the subtree `T_v`.
    pub fn ahu_code(&self, v: usize) -> String {
        let n = self.tree.order();
        let mut codes: Vec<Option<String>> = vec![None; n];
        let mut inside = self.descendants(v);
        inside.insert(0, v);
        for &u in inside.iter().rev() {
            let mut kids: Vec<String> = self.children[u]
                .iter()
                .map(|&c| codes[c].take().unwrap())
                .collect();
            kids.sort_unstable();
            let mut code = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
            code.push('(');
            kids.iter().for_each(|k| code.push_str(k));
            code.push(')');
            codes[u] = Some(code);
        }
        codes[v].take().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_graphs() {
        assert_eq!(Graph::new(0, []), Err(Error::EmptyGraph));
        assert_eq!(Graph::new(2, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::new(2, [(0, 2)]), Err(Error::VertexOutOfRange { vertex: 2, .. })));
        assert!(matches!(Tree::from_edges(3, [(0, 1)]), Err(Error::NotATree(_))));
        assert!(matches!(
            Tree::from_edges(4, [(0, 1), (1, 2), (2, 0)]),
            Err(Error::NotATree(_))
        ));
    }

    #[test]
    fn neighborhoods() {
        let p3 = Tree::path(3);
        assert_eq!(p3.neighbors(1).unwrap().to_vec(), vec![0, 2]);
        assert_eq!(p3.closed_neighbors(1).unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(Tree::star(3).neighbors(0).unwrap().to_vec(), vec![1, 2, 3]);
        let single = Graph::new(1, []).unwrap();
        assert!(single.neighbors(0).unwrap().is_empty());
        assert!(matches!(p3.neighbors(3), Err(Error::VertexOutOfRange { vertex: 3, order: 3 })));
    }

    #[test]
    fn distances() {
        assert_eq!(Tree::path(4).distance_matrix()[0][3], 3);
        assert_eq!(Tree::star(3).distance_matrix()[1][2], 2);
        assert_eq!(Tree::path(1).distance_matrix(), vec![vec![0]]);
    }

    #[test]
    fn diametral_paths() {
        let p4 = Tree::path(4).diametral_path_max_penultimate().unwrap();
        assert_eq!(p4.vertices, vec![0, 1, 2, 3]);
        assert_eq!(p4.len(), 3);

        // DS_{2,2}: every diametral path runs leaf-center-center-leaf, and
        // both centers have degree 3.
        let ds = Tree::double_star(2, 2);
        let path = ds.diametral_path_max_penultimate().unwrap();
        assert_eq!(path.len(), 3);
        assert_eq!(ds.degree(path.from_end(1)), 3);
        assert_eq!(path.vertices, vec![2, 0, 1, 4]);

        assert_eq!(Tree::healthy_spider(2).diametral_path_max_penultimate().unwrap().len(), 4);
        assert!(Tree::path(1).diametral_path_max_penultimate().is_err());
    }

    #[test]
    fn penultimate_degree_is_maximized() {
        // Spine 0-1-2-3-4 with two extra leaves on 3: the orientation ending
        // at 4 (penultimate 3, degree 4) beats the one ending at 0.
        let t = Tree::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (3, 6)]).unwrap();
        let path = t.diametral_path_max_penultimate().unwrap();
        assert_eq!(path.from_end(1), 3);
        assert_eq!(path.vertices, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn rooted_views() {
        let p3 = Tree::path(3).root_at(0).unwrap();
        assert_eq!(p3.parent(2), Some(1));
        assert_eq!(p3.parent(1), Some(0));
        assert_eq!(p3.parent(0), None);
        assert_eq!(Tree::star(3).root_at(0).unwrap().children(0), &[1, 2, 3]);
        let p4 = Tree::path(4).root_at(0).unwrap();
        assert_eq!(p4.subtree(2).to_vec(), vec![2, 3]);
        assert_eq!(p4.descendants(1), vec![2, 3]);
        assert_eq!(p4.depth(3), 3);
        assert!(Tree::path(4).root_at(4).is_err());
    }

    #[test]
    fn canonical_codes() {
        let p4 = Tree::path(4);
        let relabeled = p4.relabel(&[2, 0, 3, 1]).unwrap();
        assert_eq!(p4.canonical_code(), relabeled.canonical_code());
        assert_ne!(p4.canonical_code(), Tree::star(3).canonical_code());
        assert_eq!(
            Tree::double_star(2, 3).canonical_code(),
            Tree::double_star(3, 2).canonical_code()
        );
        assert_eq!(Tree::path(1).canonical_code(), "()");
        assert_eq!(Tree::path(2).canonical_code(), "(())");
    }

    #[test]
    fn centers_and_classes() {
        assert_eq!(Tree::path(5).centers(), vec![2]);
        assert_eq!(Tree::path(4).centers(), vec![1, 2]);
        let ds = Tree::double_star(1, 2);
        assert_eq!(ds.leaves(), vec![2, 3, 4]);
        assert_eq!(ds.stems(), vec![0, 1]);
        assert!(Tree::star(2).is_star());
        assert!(!Tree::path(2).is_star());
        assert!(!Tree::path(4).is_star());
    }
}
