//! The intersection graph `Γ(G)` and its vertex connectivity.
//!
//! Vertices are the proper non-trivial subgroups in lattice order, i.e. sorted
//! by (order, member set). Local connectivity is a unit-capacity max-flow on
//! the vertex-split network; `κ` is then the minimum over pairs of minimal
//! subgroups.

use std::fmt::Write as _;

use serde::Serialize;

use crate::arith::is_prime;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::{all_subgroups, SubgroupLattice};
use crate::limits::Limits;

const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct IntersectionGraph {
    /// Lattice index of each vertex.
    lattice_index: Vec<usize>,
    orders: Vec<usize>,
    adj: Vec<BitSet>,
}

impl IntersectionGraph {
    pub fn build(l: &SubgroupLattice) -> Self {
        let lattice_index = l.proper_nontrivial();
        let n = lattice_index.len();
        let orders = lattice_index.iter().map(|&i| l.get(i).order()).collect();
        let mut adj = vec![BitSet::new(n); n];
        for a in 0..n {
            for b in a + 1..n {
                let (ha, hb) = (l.get(lattice_index[a]), l.get(lattice_index[b]));
                if ha.members().intersection_len(hb.members()) > 1 {
                    adj[a].insert(b);
                    adj[b].insert(a);
                }
            }
        }
        IntersectionGraph { lattice_index, orders, adj }
    }

    /// Every vertex gets order 0 and its own index as lattice index.
    /// Every vertex gets order 0 and no lattice index.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![BitSet::new(n); n];
        for &(a, b) in edges {
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        IntersectionGraph { lattice_index: (0..n).collect(), orders: vec![0; n], adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, row) in self.adj.iter().enumerate() {
            out.extend(row.iter().filter(|&b| b > a).map(|b| (a, b)));
        }
        out
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).min()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.iter().all(|row| row.len() == n - 1)
    }

    /// Subgroup order of vertex `v`.
    pub fn order(&self, v: usize) -> usize {
        self.orders[v]
    }

    pub fn lattice_index(&self, v: usize) -> usize {
        self.lattice_index[v]
    }

    pub fn vertex_of(&self, lattice_index: usize) -> Option<usize> {
        self.lattice_index.binary_search(&lattice_index).ok()
    }

    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.components_without(&BitSet::new(self.vertex_count()))
    }

    /// Components of the graph with `removed` deleted, each sorted, listed by
    /// smallest vertex.
    pub fn components_without(&self, removed: &BitSet) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = removed.clone();
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                let fresh: Vec<usize> = self.adj[v].iter_difference(&seen).collect();
                for w in fresh {
                    seen.insert(w);
                    comp.push(w);
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Maximum number of internally vertex-disjoint `a`–`b` paths. For
    /// adjacent terminals this is one (the edge itself) plus the count with
    /// the edge removed.
    pub fn max_independent_paths(&self, a: usize, b: usize) -> Result<usize> {
        if a == b {
            return Err(Error::Precondition("terminals must be distinct".into()));
        }
        Ok(self.local_connectivity(a, b, usize::MAX))
    }

    /// As [`max_independent_paths`](Self::max_independent_paths), but stops
    /// once `cap` paths are found.
    pub fn local_connectivity(&self, s: usize, t: usize, cap: usize) -> usize {
        let direct = usize::from(self.is_adjacent(s, t));
        if cap <= direct {
            return cap;
        }
        // Each common neighbour is a path of its own; often that alone
        // reaches the cap and the flow network is never built.
        if direct + self.adj[s].intersection_len(&self.adj[t]) >= cap {
            return cap;
        }
        let mut flow = Flow::new(self, s, t);
        flow.saturate_common_neighbors(cap - direct);
        while flow.value < cap - direct && flow.augment() {}
        direct + flow.value
    }

    /// A minimum `s`–`t` vertex separator for non-adjacent terminals.
    pub fn min_vertex_cut(&self, s: usize, t: usize) -> Result<Vec<usize>> {
        if s == t || self.is_adjacent(s, t) {
            return Err(Error::Precondition("terminals must be distinct and non-adjacent".into()));
        }
        let mut flow = Flow::new(self, s, t);
        flow.saturate_common_neighbors(usize::MAX);
        while flow.augment() {}
        Ok(flow.source_side_cut())
    }

    /// Articulation points. For `K₂` both vertices count as cut vertices.
    /// The flag is false (and the list empty) when the graph is disconnected.
    pub fn cut_vertices(&self) -> CutVertices {
        let n = self.vertex_count();
        if !self.is_connected() {
            return CutVertices { connected: false, vertices: Vec::new() };
        }
        if n == 2 {
            return CutVertices { connected: true, vertices: vec![0, 1] };
        }
        if n < 2 {
            return CutVertices { connected: true, vertices: Vec::new() };
        }
        // Iterative Tarjan low-link from vertex 0.
        let mut disc = vec![NONE; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        let mut stack: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        disc[0] = time;
        low[0] = time;
        time += 1;
        stack.push((0, NONE, self.adj[0].to_vec()));
        let mut root_children = 0;
        while let Some((v, parent, pending)) = stack.last_mut() {
            let v = *v;
            let parent = *parent;
            if let Some(w) = pending.pop() {
                if disc[w] == NONE {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == 0 {
                        root_children += 1;
                    }
                    stack.push((w, v, self.adj[w].to_vec()));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != NONE {
                    low[parent] = low[parent].min(low[v]);
                    if parent != 0 && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        is_cut[0] = root_children > 1;
        CutVertices { connected: true, vertices: (0..n).filter(|&v| is_cut[v]).collect() }
    }

    /// Exhaustive minimum separating set: the smallest vertex set whose
    /// removal leaves more than one component, first in lexicographic order.
    pub fn min_separating_set_bruteforce(&self, max_vertices: usize) -> Result<(usize, Vec<usize>)> {
        let (size, mut all) = self.bruteforce_separators(max_vertices, true)?;
        Ok((size, all.swap_remove(0)))
    }

    /// Every separating set of minimum size, by exhaustive search.
    pub fn minimum_separating_sets_bruteforce(&self, max_vertices: usize) -> Result<(usize, Vec<Vec<usize>>)> {
        self.bruteforce_separators(max_vertices, false)
    }

    fn bruteforce_separators(&self, max_vertices: usize, first_only: bool) -> Result<(usize, Vec<Vec<usize>>)> {
        let n = self.vertex_count();
        if n > max_vertices {
            return Err(Error::Precondition(format!("{n} vertices exceeds the exhaustive bound {max_vertices}")));
        }
        if self.is_complete() {
            return Err(Error::Precondition("a complete graph has no separating set".into()));
        }
        for size in 0..n {
            let mut found = Vec::new();
            let mut subset: Vec<usize> = (0..size).collect();
            loop {
                let removed = BitSet::from_indices(n, subset.iter().copied());
                if self.components_without(&removed).len() > 1 {
                    found.push(subset.clone());
                    if first_only {
                        return Ok((size, found));
                    }
                }
                if !next_combination(&mut subset, n) {
                    break;
                }
            }
            if !found.is_empty() {
                return Ok((size, found));
            }
        }
        unreachable!("a non-complete graph has two non-adjacent vertices")
    }

    /// Whether `set` contains every proper supergroup of each of its members.
    pub fn is_upward_closed(&self, l: &SubgroupLattice, set: &[usize]) -> bool {
        let mask = BitSet::from_indices(self.vertex_count(), set.iter().copied());
        set.iter().all(|&v| {
            l.strict_supergroups(self.lattice_index[v])
                .iter()
                .filter(|&&j| l.is_proper_nontrivial(j))
                .all(|&j| self.vertex_of(j).is_some_and(|w| mask.contains(w)))
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph intersection {\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(
                out,
                "  v{v} [label=\"order={},subgroup={}\"];",
                self.orders[v], self.lattice_index[v]
            );
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn export(&self) -> GraphExport {
        GraphExport {
            vertex_count: self.vertex_count(),
            orders: self.orders.clone(),
            adjacency: self.adj.iter().map(BitSet::to_vec).collect(),
            edges: self.edges(),
        }
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutVertices {
    pub connected: bool,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphExport {
    pub vertex_count: usize,
    pub orders: Vec<usize>,
    pub adjacency: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
}

type SearchResult = (BitSet, BitSet, Vec<(usize, Side)>, Vec<(usize, Side)>, bool);

/// Unit vertex-capacity flow between `s` and `t`. Each inner vertex carries at
/// most one path; `prev`/`next` record its neighbours on that path.
struct Flow<'g> {
    g: &'g IntersectionGraph,
    s: usize,
    t: usize,
    prev: Vec<usize>,
    next: Vec<usize>,
    value: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    In,
    Out,
}

#[derive(Clone, Copy)]
enum Arc {
    /// Flow along the graph edge `from → to`.
    Edge(usize, usize),
    /// Cancel existing flow on `from → to`.
    Cancel(usize, usize),
}

impl<'g> Flow<'g> {
    fn new(g: &'g IntersectionGraph, s: usize, t: usize) -> Self {
        let n = g.vertex_count();
        Flow { g, s, t, prev: vec![NONE; n], next: vec![NONE; n], value: 0 }
    }

    /// Routes one path through each common neighbour of `s` and `t`.
    fn saturate_common_neighbors(&mut self, cap: usize) {
        let common = self.g.adj[self.s].intersection(&self.g.adj[self.t]);
        for c in common.iter() {
            if self.value >= cap {
                break;
            }
            self.prev[c] = self.s;
            self.next[c] = self.t;
            self.value += 1;
        }
    }

    fn carries(&self, v: usize) -> bool {
        self.prev[v] != NONE
    }

    /// Residual search; returns reached-in/out sets, parent arcs, and whether
    /// the sink was reached.
    fn search(&self) -> SearchResult {
        let n = self.g.vertex_count();
        let (s, t) = (self.s, self.t);
        let mut seen_in = BitSet::new(n);
        let mut seen_out = BitSet::new(n);
        let mut par_in = vec![(NONE, Side::Out); n];
        let mut par_out = vec![(NONE, Side::Out); n];
        let mut queue: std::collections::VecDeque<(usize, Side)> = Default::default();
        seen_out.insert(s);
        seen_in.insert(s);
        queue.push_back((s, Side::Out));
        while let Some((v, side)) = queue.pop_front() {
            match side {
                Side::Out => {
                    let targets: Vec<usize> = self.g.adj[v].iter_difference(&seen_in).collect();
                    for w in targets {
                        if v == s && w == t {
                            continue;
                        }
                        // Edge arcs are uncapacitated so that minimum cuts consist
                        // of vertices; an arc already carrying flow leads nowhere new.
                        seen_in.insert(w);
                        par_in[w] = (v, Side::Out);
                        if w == t {
                            return (seen_in, seen_out, par_in, par_out, true);
                        }
                        queue.push_back((w, Side::In));
                    }
                    if v != s && self.carries(v) && seen_in.insert(v) {
                        par_in[v] = (v, Side::Out);
                        queue.push_back((v, Side::In));
                    }
                }
                Side::In => {
                    if !self.carries(v) {
                        if seen_out.insert(v) {
                            par_out[v] = (v, Side::In);
                            queue.push_back((v, Side::Out));
                        }
                    } else {
                        let p = self.prev[v];
                        if p != s && seen_out.insert(p) {
                            par_out[p] = (v, Side::In);
                            queue.push_back((p, Side::Out));
                        }
                    }
                }
            }
        }
        (seen_in, seen_out, par_in, par_out, false)
    }

    fn augment(&mut self) -> bool {
        let (_, _, par_in, par_out, found) = self.search();
        if !found {
            return false;
        }
        let mut arcs = Vec::new();
        let (mut v, mut side) = (self.t, Side::In);
        while !(v == self.s && side == Side::Out) {
            let (u, uside) = if side == Side::In { par_in[v] } else { par_out[v] };
            match (uside, side) {
                (Side::Out, Side::In) if u != v => arcs.push(Arc::Edge(u, v)),
                (Side::In, Side::Out) if u != v => arcs.push(Arc::Cancel(v, u)),
                _ => {}
            }
            v = u;
            side = uside;
        }
        for arc in &arcs {
            if let Arc::Cancel(a, b) = *arc {
                if a != self.s {
                    self.next[a] = NONE;
                }
                self.prev[b] = NONE;
            }
        }
        for arc in &arcs {
            if let Arc::Edge(a, b) = *arc {
                if a != self.s {
                    self.next[a] = b;
                }
                if b != self.t {
                    self.prev[b] = a;
                }
            }
        }
        self.value += 1;
        true
    }

    /// After a maximum flow: the inner vertices whose in-side is reachable but
    /// whose out-side is not. This is a minimum `s`–`t` separator.
    fn source_side_cut(&self) -> Vec<usize> {
        let (seen_in, seen_out, _, _, found) = self.search();
        debug_assert!(!found);
        let mut cut: Vec<usize> = seen_in
            .iter_difference(&seen_out)
            .filter(|&v| v != self.s && v != self.t && self.carries(v))
            .collect();
        cut.sort_unstable();
        cut
    }
}

/// Vertex connectivity with the group conventions: `-2` for the trivial
/// group, `-1` for prime order, `n-1` for a complete graph on `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Kappa(pub i64);

impl Kappa {
    pub fn value(self) -> i64 {
        self.0
    }
}

impl std::fmt::Display for Kappa {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Conventions shared by both κ routes; `None` means a flow computation is needed.
fn kappa_convention(group_order: usize, graph: &IntersectionGraph) -> Option<Kappa> {
    if group_order == 1 {
        return Some(Kappa(-2));
    }
    if is_prime(group_order) {
        return Some(Kappa(-1));
    }
    if graph.is_complete() {
        return Some(Kappa(graph.vertex_count() as i64 - 1));
    }
    None
}

/// κ as the minimum number of independent paths over pairs of minimal
/// subgroups. Also returns the pair attaining it, if any.
pub fn kappa_with_pair(
    group_order: usize,
    l: &SubgroupLattice,
    graph: &IntersectionGraph,
) -> (Kappa, Option<(usize, usize)>) {
    if let Some(k) = kappa_convention(group_order, graph) {
        return (k, None);
    }
    let minimal: Vec<usize> = l
        .minimal_indices()
        .into_iter()
        .map(|i| graph.vertex_of(i).expect("minimal subgroups are vertices"))
        .collect();
    let mut best = graph.vertex_count();
    let mut pair = None;
    'outer: for (i, &a) in minimal.iter().enumerate() {
        for &b in &minimal[i + 1..] {
            let k = graph.local_connectivity(a, b, best);
            if k < best {
                best = k;
                pair = Some((a, b));
                if best == 0 {
                    break 'outer;
                }
            }
        }
    }
    (Kappa(best as i64), pair)
}

pub fn kappa_from_parts(group_order: usize, l: &SubgroupLattice, graph: &IntersectionGraph) -> Kappa {
    kappa_with_pair(group_order, l, graph).0
}

/// κ as the minimum over all vertex pairs, ignoring the lattice.
pub fn kappa_all_pairs(group_order: usize, graph: &IntersectionGraph) -> Kappa {
    if let Some(k) = kappa_convention(group_order, graph) {
        return k;
    }
    let n = graph.vertex_count();
    let mut best = n;
    for a in 0..n {
        for b in a + 1..n {
            best = best.min(graph.local_connectivity(a, b, best));
            if best == 0 {
                return Kappa(0);
            }
        }
    }
    Kappa(best as i64)
}

pub fn kappa(g: &FiniteGroup, limits: &Limits) -> Result<Kappa> {
    Ok(GroupAnalysis::new(g.clone(), limits)?.kappa)
}

/// `|V(Γ)| > k` and `κ ≥ k`.
pub fn is_k_connected(g: &FiniteGroup, k: usize, limits: &Limits) -> Result<bool> {
    Ok(GroupAnalysis::new(g.clone(), limits)?.is_k_connected(k))
}

/// A group together with its lattice, intersection graph and κ.
#[derive(Clone, Debug)]
pub struct GroupAnalysis {
    pub group: FiniteGroup,
    pub lattice: SubgroupLattice,
    pub graph: IntersectionGraph,
    pub kappa: Kappa,
    extremal_pair: Option<(usize, usize)>,
}

impl GroupAnalysis {
    pub fn new(group: FiniteGroup, limits: &Limits) -> Result<Self> {
        let lattice = all_subgroups(&group, limits)?;
        let graph = IntersectionGraph::build(&lattice);
        let (kappa, extremal_pair) = kappa_with_pair(group.order(), &lattice, &graph);
        Ok(GroupAnalysis { group, lattice, graph, kappa, extremal_pair })
    }

    pub fn is_k_connected(&self, k: usize) -> bool {
        self.graph.vertex_count() > k && self.kappa.0 >= k as i64
    }

    /// A minimum separating set that is upward closed, as vertex indices.
    ///
    /// For a disconnected graph this is empty. For a complete graph, where the
    /// convention `κ(Kₙ) = n-1` applies, it is every vertex except one minimal
    /// subgroup. `None` when there are no vertices.
    pub fn separator_witness(&self) -> Option<Vec<usize>> {
        let n = self.graph.vertex_count();
        if n == 0 {
            return None;
        }
        if self.graph.is_complete() {
            let keep = self.graph.vertex_of(self.lattice.minimal_indices()[0]).expect("vertex");
            return Some((0..n).filter(|&v| v != keep).collect());
        }
        if self.kappa.0 == 0 {
            return Some(Vec::new());
        }
        let (a, b) = self.extremal_pair.expect("non-complete connected graph has two minimal subgroups");
        Some(self.graph.min_vertex_cut(a, b).expect("minimal subgroups are never adjacent"))
    }
}
