// Unit-capacity flow networks over the vertex-split digraph.
//
// Vertex v becomes in(v) = 2v and out(v) = 2v + 1 joined by an edge of
// capacity 1 (0 for blocked vertices) and cost 1. Every arc uv becomes
// out(u) -> in(v) with capacity 1 and cost 0. Two extra nodes serve as a
// super source and a super sink.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::digraph::{Digraph, Vertex, VertexSet};

pub(crate) const fn node_in(v: Vertex) -> usize {
    2 * v
}

pub(crate) const fn node_out(v: Vertex) -> usize {
    2 * v + 1
}

pub(crate) struct SplitNetwork {
    n: usize,
    to: Vec<usize>,
    cap: Vec<i32>,
    base_cap: Vec<i32>,
    cost: Vec<i32>,
    adj: Vec<Vec<usize>>,
    touched: Vec<usize>,
}

impl SplitNetwork {
    /// Network for the live part of `d`; vertices in `blocked` keep their
    /// nodes but get zero throughput.
    pub fn new(d: &Digraph, blocked: Option<&VertexSet>) -> Self {
        let n = d.order();
        let mut net = SplitNetwork {
            n,
            to: Vec::new(),
            cap: Vec::new(),
            base_cap: Vec::new(),
            cost: Vec::new(),
            adj: vec![Vec::new(); 2 * n + 2],
            touched: Vec::new(),
        };
        for v in d.vertices() {
            let c = if blocked.is_some_and(|b| b.contains(v)) { 0 } else { 1 };
            net.add_edge(node_in(v), node_out(v), c, 1);
        }
        for (u, v) in d.arcs() {
            net.add_edge(node_out(u), node_in(v), 1, 0);
        }
        net
    }

    pub fn source(&self) -> usize {
        2 * self.n
    }

    pub fn sink(&self) -> usize {
        2 * self.n + 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize, cap: i32, cost: i32) {
        let e = self.to.len();
        self.to.extend([b, a]);
        self.cap.extend([cap, 0]);
        self.base_cap.extend([cap, 0]);
        self.cost.extend([cost, -cost]);
        self.adj[a].push(e);
        self.adj[b].push(e + 1);
    }

    pub fn reset(&mut self) {
        for &e in &self.touched {
            self.cap[e] = self.base_cap[e];
            self.cap[e ^ 1] = self.base_cap[e ^ 1];
        }
        self.touched.clear();
    }

    fn push_unit(&mut self, e: usize) {
        self.cap[e] -= 1;
        self.cap[e ^ 1] += 1;
        self.touched.push(e);
    }

    /// Augments along shortest residual paths until the flow reaches `limit`
    /// or no augmenting path is left. Returns the flow value.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let nodes = self.adj.len();
        let mut pred_edge = vec![usize::MAX; nodes];
        let mut flow = 0;
        while flow < limit {
            pred_edge.iter_mut().for_each(|p| *p = usize::MAX);
            let mut seen = vec![false; nodes];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            let mut found = false;
            'bfs: while let Some(a) = queue.pop_front() {
                for &e in &self.adj[a] {
                    let b = self.to[e];
                    if self.cap[e] > 0 && !seen[b] {
                        seen[b] = true;
                        pred_edge[b] = e;
                        if b == t {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(b);
                    }
                }
            }
            if !found {
                break;
            }
            let mut b = t;
            while b != s {
                let e = pred_edge[b];
                self.push_unit(e);
                b = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Successive shortest paths with Bellman-Ford on the residual network.
    /// Returns the flow value (at most `amount`) and its total cost.
    pub fn min_cost_flow(&mut self, s: usize, t: usize, amount: usize) -> (usize, i64) {
        let nodes = self.adj.len();
        let mut flow = 0;
        let mut total = 0i64;
        while flow < amount {
            let mut dist = vec![i64::MAX; nodes];
            let mut in_queue = vec![false; nodes];
            let mut pred_edge = vec![usize::MAX; nodes];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            in_queue[s] = true;
            while let Some(a) = queue.pop_front() {
                in_queue[a] = false;
                for &e in &self.adj[a] {
                    if self.cap[e] <= 0 {
                        continue;
                    }
                    let b = self.to[e];
                    let nd = dist[a] + i64::from(self.cost[e]);
                    if nd < dist[b] {
                        dist[b] = nd;
                        pred_edge[b] = e;
                        if !in_queue[b] {
                            in_queue[b] = true;
                            queue.push_back(b);
                        }
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            let mut b = t;
            while b != s {
                let e = pred_edge[b];
                self.push_unit(e);
                b = self.to[e ^ 1];
            }
            total += dist[t];
            flow += 1;
        }
        (flow, total)
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for &e in &self.adj[a] {
                let b = self.to[e];
                if self.cap[e] > 0 && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen
    }

    /// Vertices whose in-node is on the source side of the residual cut but
    /// whose out-node is not.
    pub fn cut_vertices(&self, s: usize) -> Vec<Vertex> {
        let seen = self.residual_reachable(s);
        (0..self.n).filter(|&v| seen[node_in(v)] && !seen[node_out(v)]).collect()
    }

    /// Splits the current flow from `s` to `t` into vertex sequences. Flow
    /// cycles not attached to `s` are ignored.
    pub fn decompose(&self, s: usize, t: usize) -> Vec<Vec<Vertex>> {
        let mut remaining: Vec<i32> =
            (0..self.to.len()).map(|e| if e % 2 == 0 { self.base_cap[e] - self.cap[e] } else { 0 }).collect();
        let mut paths = Vec::new();
        loop {
            let Some(&first) = self.adj[s].iter().find(|&&e| remaining[e] > 0) else {
                break;
            };
            let mut path = Vec::new();
            if s < 2 * self.n && s % 2 == 1 {
                path.push(s / 2);
            }
            let mut e = first;
            loop {
                remaining[e] -= 1;
                let b = self.to[e];
                if b < 2 * self.n && b % 2 == 0 {
                    path.push(b / 2);
                }
                if b == t {
                    break;
                }
                match self.adj[b].iter().find(|&&f| remaining[f] > 0) {
                    Some(&f) => e = f,
                    None => break,
                }
            }
            paths.push(path);
        }
        paths
    }
}
