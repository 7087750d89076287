//! Internal combinatorial solvers: Dinic max-flow (order feasibility),
//! successive-shortest-paths min-cost flow (transportation), Kuhn's
//! augmenting-path matching (Hall permutations), and a dense Hungarian
//! assignment solver.
//!
//! These engines are deliberately independent of one another so that
//! agreements between them in the test suite are meaningful cross-checks
//! rather than tautologies.

/// Residual edge for the max-flow graph.
#[derive(Clone, Debug)]
struct FlowEdge {
    to: usize,
    cap: i64,
}

/// Dinic max-flow on a small dense-ish graph with integer capacities.
pub(crate) struct Dinic {
    adj: Vec<Vec<usize>>,
    edges: Vec<FlowEdge>,
}

impl Dinic {
    pub(crate) fn new(nodes: usize) -> Self {
        Dinic {
            adj: vec![Vec::new(); nodes],
            edges: Vec::new(),
        }
    }

    /// Adds a directed edge and its zero-capacity reverse; returns the edge
    /// id (the reverse is `id ^ 1`).
    pub(crate) fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> usize {
        let id = self.edges.len();
        self.adj[from].push(id);
        self.edges.push(FlowEdge { to, cap });
        self.adj[to].push(id + 1);
        self.edges.push(FlowEdge { to: from, cap: 0 });
        id
    }

    /// Flow currently pushed through edge `id`.
    pub(crate) fn flow_of(&self, id: usize) -> i64 {
        self.edges[id ^ 1].cap
    }

    fn bfs_levels(&self, s: usize, t: usize) -> Option<Vec<i32>> {
        let mut level = vec![-1; self.adj.len()];
        let mut queue = std::collections::VecDeque::new();
        level[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && level[e.to] < 0 {
                    level[e.to] = level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        if level[t] >= 0 {
            Some(level)
        } else {
            None
        }
    }

    fn dfs_push(
        &mut self,
        u: usize,
        t: usize,
        pushed: i64,
        level: &[i32],
        iter: &mut [usize],
    ) -> i64 {
        if u == t {
            return pushed;
        }
        while iter[u] < self.adj[u].len() {
            let id = self.adj[u][iter[u]];
            let (to, cap) = {
                let e = &self.edges[id];
                (e.to, e.cap)
            };
            if cap > 0 && level[to] == level[u] + 1 {
                let d = self.dfs_push(to, t, pushed.min(cap), level, iter);
                if d > 0 {
                    self.edges[id].cap -= d;
                    self.edges[id ^ 1].cap += d;
                    return d;
                }
            }
            iter[u] += 1;
        }
        0
    }

    /// Runs max-flow from `s` to `t` and returns its value.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while let Some(level) = self.bfs_levels(s, t) {
            let mut iter = vec![0usize; self.adj.len()];
            loop {
                let pushed = self.dfs_push(s, t, i64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
        flow
    }

    /// Nodes reachable from `s` in the residual graph (the min-cut side).
    pub(crate) fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &id in &self.adj[u] {
                let e = &self.edges[id];
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }
}

/// One arc of a transportation solution: source index, sink index, shipped
/// integer amount.
pub(crate) type TransportArc = (usize, usize, i64);

#[derive(Clone, Debug)]
struct CostEdge {
    to: usize,
    cap: i64,
    cost: f64,
}

/// Successive-shortest-paths min-cost flow with node potentials, specialized
/// here to the transportation problem: integer supplies and demands with
/// equal totals, float arc costs.
///
/// Nodes are `0..m` sources, `m..m+n` sinks, then a super source and super
/// sink. Edges are inserted in `(i, j)` lexicographic order and Dijkstra
/// breaks ties by first improvement, so the returned plan is deterministic.
struct MinCostFlow {
    adj: Vec<Vec<usize>>,
    edges: Vec<CostEdge>,
    potential: Vec<f64>,
}

impl MinCostFlow {
    fn new(nodes: usize) -> Self {
        MinCostFlow {
            adj: vec![Vec::new(); nodes],
            edges: Vec::new(),
            potential: vec![0.0; nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64, cost: f64) -> usize {
        let id = self.edges.len();
        self.adj[from].push(id);
        self.edges.push(CostEdge { to, cap, cost });
        self.adj[to].push(id + 1);
        self.edges.push(CostEdge {
            to: from,
            cap: 0,
            cost: -cost,
        });
        id
    }

    fn flow_of(&self, id: usize) -> i64 {
        self.edges[id ^ 1].cap
    }

    /// Ships `total` units from `s` to `t`; errors if the network cannot
    /// carry them or the augmentation budget is exhausted.
    fn ship(&mut self, s: usize, t: usize, total: i64) -> Result<(), String> {
        let nodes = self.adj.len();
        let mut shipped = 0i64;
        let mut augmentations = 0usize;
        let max_augmentations = 64 * nodes * nodes + 1024;

        while shipped < total {
            // Dijkstra on reduced costs cost(u,v) + p[u] − p[v] ≥ 0.
            const UNSET: usize = usize::MAX;
            let mut dist = vec![f64::INFINITY; nodes];
            let mut prev_edge = vec![UNSET; nodes];
            let mut done = vec![false; nodes];
            dist[s] = 0.0;
            loop {
                let mut u = UNSET;
                let mut best = f64::INFINITY;
                for v in 0..nodes {
                    if !done[v] && dist[v] < best {
                        best = dist[v];
                        u = v;
                    }
                }
                if u == UNSET {
                    break;
                }
                done[u] = true;
                for &id in &self.adj[u] {
                    let e = &self.edges[id];
                    if e.cap <= 0 {
                        continue;
                    }
                    // Roundoff can push a reduced cost a hair below zero.
                    let rc = (e.cost + self.potential[u] - self.potential[e.to]).max(0.0);
                    let nd = dist[u] + rc;
                    if nd < dist[e.to] {
                        dist[e.to] = nd;
                        prev_edge[e.to] = id;
                    }
                }
            }
            if prev_edge[t] == UNSET {
                return Err("flow network cannot carry the required mass".into());
            }

            // Bottleneck along the s → t path.
            let mut bottleneck = total - shipped;
            let mut v = t;
            while v != s {
                let id = prev_edge[v];
                bottleneck = bottleneck.min(self.edges[id].cap);
                v = self.edges[id ^ 1].to;
            }
            debug_assert!(bottleneck > 0);

            let mut v = t;
            while v != s {
                let id = prev_edge[v];
                self.edges[id].cap -= bottleneck;
                self.edges[id ^ 1].cap += bottleneck;
                v = self.edges[id ^ 1].to;
            }
            shipped += bottleneck;

            for (p, d) in self.potential.iter_mut().zip(&dist) {
                if d.is_finite() {
                    *p += d;
                }
            }

            augmentations += 1;
            if augmentations > max_augmentations {
                return Err(format!(
                    "min-cost flow exceeded {max_augmentations} augmentations"
                ));
            }
        }
        Ok(())
    }
}

/// Solves the transportation problem and returns the shipped arcs in
/// `(i, j)` lexicographic order.
pub(crate) fn solve_transportation(
    supply: &[i64],
    demand: &[i64],
    cost: &[Vec<f64>],
) -> Result<Vec<TransportArc>, String> {
    let m = supply.len();
    let n = demand.len();
    debug_assert_eq!(supply.iter().sum::<i64>(), demand.iter().sum::<i64>());

    let s = m + n;
    let t = m + n + 1;
    let mut g = MinCostFlow::new(m + n + 2);
    let mut arc_ids = vec![vec![0usize; n]; m];
    for i in 0..m {
        for j in 0..n {
            arc_ids[i][j] = g.add_edge(i, m + j, i64::MAX / 4, cost[i][j]);
        }
    }
    for (i, &si) in supply.iter().enumerate() {
        g.add_edge(s, i, si, 0.0);
    }
    for (j, &dj) in demand.iter().enumerate() {
        g.add_edge(m + j, t, dj, 0.0);
    }

    let total: i64 = supply.iter().sum();
    g.ship(s, t, total)?;

    let mut arcs = Vec::new();
    for (i, row) in arc_ids.iter().enumerate() {
        for (j, &id) in row.iter().enumerate() {
            let f = g.flow_of(id);
            if f > 0 {
                arcs.push((i, j, f));
            }
        }
    }
    Ok(arcs)
}

/// Kuhn's augmenting-path bipartite matching. `adj[i]` lists the right
/// vertices compatible with left vertex `i`. Returns the match count and,
/// for each left vertex, its partner.
pub(crate) fn kuhn_matching(
    n_left: usize,
    n_right: usize,
    adj: &[Vec<usize>],
) -> (usize, Vec<Option<usize>>) {
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];

    fn try_augment(
        i: usize,
        adj: &[Vec<usize>],
        visited: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for &j in &adj[i] {
            if visited[j] {
                continue;
            }
            visited[j] = true;
            if match_right[j].is_none()
                || try_augment(match_right[j].unwrap(), adj, visited, match_right)
            {
                match_right[j] = Some(i);
                return true;
            }
        }
        false
    }

    let mut count = 0;
    for i in 0..n_left {
        let mut visited = vec![false; n_right];
        if try_augment(i, adj, &mut visited, &mut match_right) {
            count += 1;
        }
    }
    let mut match_left: Vec<Option<usize>> = vec![None; n_left];
    for (j, m) in match_right.iter().enumerate() {
        if let Some(i) = *m {
            match_left[i] = Some(j);
        }
    }
    (count, match_left)
}

/// Dense O(n³) Hungarian algorithm over float costs; returns the column
/// assigned to each row of a minimum-cost perfect matching.
pub(crate) fn hungarian(costs: &[Vec<f64>]) -> Vec<usize> {
    let n = costs.len();
    if n == 0 {
        return Vec::new();
    }
    debug_assert!(costs.iter().all(|row| row.len() == n));

    let inf = f64::INFINITY;
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];

        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0usize;

            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = costs[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }

            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }

            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }

        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}
