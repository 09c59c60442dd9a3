//! HDBSCAN over an abstract pairwise-distance source.
//!
//! Pipeline: mutual-reachability distances with core distances at
//! k = min_cluster_size, an exact Prim minimum spanning tree over the
//! complete mutual-reachability graph, a single-linkage tree, a condensed
//! cluster tree at the minimum cluster size, and excess-of-mass cluster
//! extraction. Points outside every selected cluster are noise.
//!
//! All tie-breaking is by stable input index, so identical inputs yield
//! identical labelings.

use std::collections::VecDeque;

/// Anything that can answer "how far apart are items i and j".
pub(crate) trait PairwiseDistances {
    fn len(&self) -> usize;
    fn distance(&self, i: usize, j: usize) -> f64;
}

pub(crate) fn hdbscan_labels<D: PairwiseDistances>(space: &D, min_cluster_size: usize) -> Vec<i32> {
    let n = space.len();
    if n == 0 {
        return Vec::new();
    }
    // A non-root cluster requires a split with both sides at or above the
    // minimum size, which needs at least 2 * min_cluster_size points.
    if n < 2 * min_cluster_size {
        return vec![-1; n];
    }
    let core = core_distances(space, min_cluster_size);
    let mst = prim_mst(space, &core);
    let slt = single_linkage(&mst, n);
    let (edges, num_clusters) = condense_tree(&slt, n, min_cluster_size);
    let selected = extract_eom_clusters(&edges, n, num_clusters);
    label_points(&edges, &selected, n)
}

/// Distance from each point to its k-th nearest neighbor, counting the
/// point itself as the first.
fn core_distances<D: PairwiseDistances>(space: &D, k: usize) -> Vec<f64> {
    let n = space.len();
    let mut core = vec![0.0; n];
    let mut scratch = Vec::with_capacity(n - 1);
    for i in 0..n {
        scratch.clear();
        for j in 0..n {
            if j != i {
                scratch.push(space.distance(i, j));
            }
        }
        let rank = (k - 1).min(scratch.len()); // neighbors excluding self
        let (_, kth, _) = scratch.select_nth_unstable_by(rank - 1, f64::total_cmp);
        core[i] = *kth;
    }
    core
}

fn mutual_reachability<D: PairwiseDistances>(space: &D, core: &[f64], i: usize, j: usize) -> f64 {
    space.distance(i, j).max(core[i]).max(core[j])
}

struct MstEdge {
    a: usize,
    b: usize,
    distance: f64,
}

/// Dense Prim over the complete mutual-reachability graph. On equal
/// frontier distances the lowest index wins.
fn prim_mst<D: PairwiseDistances>(space: &D, core: &[f64]) -> Vec<MstEdge> {
    let n = space.len();
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut mst = Vec::with_capacity(n - 1);
    let mut current = 0usize;
    for _ in 1..n {
        in_tree[current] = true;
        let mut next = usize::MAX;
        let mut next_dist = f64::INFINITY;
        for j in 0..n {
            if in_tree[j] {
                continue;
            }
            let d = mutual_reachability(space, core, current, j);
            if d < best[j] {
                best[j] = d;
            }
            if best[j] < next_dist {
                next_dist = best[j];
                next = j;
            }
        }
        mst.push(MstEdge {
            a: current,
            b: next,
            distance: next_dist,
        });
        current = next;
    }
    // Stable sort: ties keep construction order.
    mst.sort_by(|x, y| x.distance.total_cmp(&y.distance));
    mst
}

struct SltNode {
    left: usize,
    right: usize,
    distance: f64,
    size: usize,
}

/// Merge MST edges in distance order into a dendrogram. Node ids: points
/// are 0..n, merge i creates node n + i.
fn single_linkage(mst: &[MstEdge], n: usize) -> Vec<SltNode> {
    let mut uf = UnionFind::new(n);
    let mut slt = Vec::with_capacity(n - 1);
    for e in mst {
        let left = uf.find(e.a);
        let right = uf.find(e.b);
        slt.push(SltNode {
            left,
            right,
            distance: e.distance,
            size: uf.size(left) + uf.size(right),
        });
        uf.union(left, right);
    }
    slt
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    next: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        let slots = 2 * n - 1;
        let mut size = vec![0; slots];
        size[..n].fill(1);
        UnionFind {
            parent: (0..slots).collect(),
            size,
            next: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let up = self.parent[x];
            self.parent[x] = root;
            x = up;
        }
        root
    }

    fn size(&self, x: usize) -> usize {
        self.size[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let merged = self.next;
        self.next += 1;
        self.parent[a] = merged;
        self.parent[b] = merged;
        self.size[merged] = self.size[a] + self.size[b];
    }
}

/// One row of the condensed tree: `child` (a cluster id >= n or a point id
/// < n) left `parent` at density `lambda`.
pub(crate) struct CondensedEdge {
    parent: usize,
    child: usize,
    lambda: f64,
    size: usize,
}

/// Walk the single-linkage tree from the root, keeping only splits where
/// both sides reach the minimum cluster size. Smaller sides "fall out" of
/// their parent cluster, point by point, at the split's lambda; a cluster
/// with one undersized side keeps its id through the split.
fn condense_tree(slt: &[SltNode], n: usize, mcs: usize) -> (Vec<CondensedEdge>, usize) {
    let root = 2 * n - 2;
    let mut relabel = vec![0usize; 2 * n - 1];
    relabel[root] = n;
    let mut next_label = n + 1;
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([root]);
    while let Some(node) = queue.pop_front() {
        let s = &slt[node - n];
        let lambda = if s.distance > 0.0 {
            1.0 / s.distance
        } else {
            f64::INFINITY
        };
        let parent_label = relabel[node];
        let left_size = subtree_size(slt, n, s.left);
        let right_size = subtree_size(slt, n, s.right);
        match (left_size >= mcs, right_size >= mcs) {
            (true, true) => {
                // A real split: both sides become new clusters. Sizes >= 2
                // guarantee both children are internal nodes.
                for (child, size) in [(s.left, left_size), (s.right, right_size)] {
                    relabel[child] = next_label;
                    edges.push(CondensedEdge {
                        parent: parent_label,
                        child: next_label,
                        lambda,
                        size,
                    });
                    next_label += 1;
                    queue.push_back(child);
                }
            }
            (false, false) => {
                emit_points(slt, n, s.left, parent_label, lambda, &mut edges);
                emit_points(slt, n, s.right, parent_label, lambda, &mut edges);
            }
            (true, false) => {
                relabel[s.left] = parent_label;
                queue.push_back(s.left);
                emit_points(slt, n, s.right, parent_label, lambda, &mut edges);
            }
            (false, true) => {
                relabel[s.right] = parent_label;
                queue.push_back(s.right);
                emit_points(slt, n, s.left, parent_label, lambda, &mut edges);
            }
        }
    }
    (edges, next_label - n)
}

fn subtree_size(slt: &[SltNode], n: usize, id: usize) -> usize {
    if id < n {
        1
    } else {
        slt[id - n].size
    }
}

/// Record every point under `id` as falling out of `parent_label` at
/// `lambda`.
fn emit_points(
    slt: &[SltNode],
    n: usize,
    id: usize,
    parent_label: usize,
    lambda: f64,
    edges: &mut Vec<CondensedEdge>,
) {
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        if x < n {
            edges.push(CondensedEdge {
                parent: parent_label,
                child: x,
                lambda,
                size: 1,
            });
        } else {
            let s = &slt[x - n];
            queue.push_back(s.left);
            queue.push_back(s.right);
        }
    }
}

/// Excess-of-mass selection: a cluster survives when its stability is at
/// least the combined stability of its child clusters; a selected cluster
/// absorbs all its descendants. The root is never selected.
fn extract_eom_clusters(edges: &[CondensedEdge], n: usize, num_clusters: usize) -> Vec<bool> {
    let idx = |id: usize| id - n;
    let mut birth = vec![0.0f64; num_clusters];
    for e in edges {
        if e.child >= n {
            birth[idx(e.child)] = e.lambda;
        }
    }
    let mut stability = vec![0.0f64; num_clusters];
    for e in edges {
        let gap = e.lambda - birth[idx(e.parent)];
        // Infinite birth and death (duplicate points) contributes no mass.
        if gap.is_nan() {
            continue;
        }
        stability[idx(e.parent)] += gap * e.size as f64;
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); num_clusters];
    for e in edges {
        if e.child >= n {
            children[idx(e.parent)].push(idx(e.child));
        }
    }
    let mut selected = vec![false; num_clusters];
    // Children always carry higher ids than their parent, so descending
    // order visits them first. Index 0 is the root.
    for c in (1..num_clusters).rev() {
        let child_sum: f64 = children[c].iter().map(|&d| stability[d]).sum();
        if stability[c] < child_sum {
            stability[c] = child_sum;
        } else {
            selected[c] = true;
            let mut queue: VecDeque<usize> = children[c].iter().copied().collect();
            while let Some(d) = queue.pop_front() {
                selected[d] = false;
                queue.extend(children[d].iter().copied());
            }
        }
    }
    selected
}

/// A point belongs to the nearest selected ancestor of the cluster it fell
/// out of; points with no selected ancestor are noise. Final cluster ids
/// are assigned by first occurrence in point order.
fn label_points(edges: &[CondensedEdge], selected: &[bool], n: usize) -> Vec<i32> {
    let idx = |id: usize| id - n;
    let mut cluster_parent = vec![usize::MAX; selected.len()];
    let mut point_parent = vec![usize::MAX; n];
    for e in edges {
        if e.child >= n {
            cluster_parent[idx(e.child)] = idx(e.parent);
        } else {
            point_parent[e.child] = idx(e.parent);
        }
    }
    let mut final_ids: Vec<Option<i32>> = vec![None; selected.len()];
    let mut next_id = 0i32;
    let mut labels = vec![-1i32; n];
    for (p, label) in labels.iter_mut().enumerate() {
        let mut c = point_parent[p];
        while c != usize::MAX && !selected[c] {
            c = cluster_parent[c];
        }
        if c != usize::MAX {
            *label = *final_ids[c].get_or_insert_with(|| {
                let id = next_id;
                next_id += 1;
                id
            });
        }
    }
    labels
}
