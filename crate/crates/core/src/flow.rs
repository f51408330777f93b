//! Max flow, feasible flow with lower bounds, and min-cost flow.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("max_flow does not accept lower bounds (arc {0}); use feasible_flow")]
    LowerBoundsPresent(usize),
    #[error("malformed network: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub lower: i64,
    /// `None` is an infinite capacity.
    pub cap: Option<i64>,
    pub cost: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub num_nodes: usize,
    pub source: usize,
    pub sink: usize,
    pub arcs: Vec<FlowArc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub flows: Vec<i64>,
    pub value: i64,
}

impl FlowNetwork {
    /// Network with nodes 0 = source and 1 = sink.
    pub fn new() -> Self {
        FlowNetwork { num_nodes: 2, source: 0, sink: 1, arcs: Vec::new() }
    }

    pub fn add_node(&mut self) -> usize {
        self.num_nodes += 1;
        self.num_nodes - 1
    }

    pub fn add_arc(&mut self, from: usize, to: usize, lower: i64, cap: Option<i64>, cost: i64) -> usize {
        self.arcs.push(FlowArc { from, to, lower, cap, cost });
        self.arcs.len() - 1
    }

    fn check(&self) -> Result<(), FlowError> {
        if self.source >= self.num_nodes || self.sink >= self.num_nodes || self.source == self.sink {
            return Err(FlowError::Malformed("bad terminals".into()));
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if a.from >= self.num_nodes || a.to >= self.num_nodes {
                return Err(FlowError::Malformed(format!("arc {i} references a missing node")));
            }
            if a.lower < 0 || a.cap.is_some_and(|c| c < 0) {
                return Err(FlowError::Malformed(format!("arc {i} has a negative bound")));
            }
        }
        Ok(())
    }

    fn infinity(&self, extra: i64) -> i64 {
        let s: i64 = self.arcs.iter().map(|a| a.cap.unwrap_or(0) + a.lower).sum();
        s + extra.abs() + 1
    }

    /// Checks windows and conservation; returns the s-t value.
    pub fn validate(&self, flows: &[i64]) -> Result<i64, String> {
        if flows.len() != self.arcs.len() {
            return Err("flow vector length mismatch".into());
        }
        let mut bal = vec![0i64; self.num_nodes];
        for (i, (a, &f)) in self.arcs.iter().zip(flows).enumerate() {
            if f < a.lower || a.cap.is_some_and(|c| f > c) {
                return Err(format!("arc {i} flow {f} outside window"));
            }
            bal[a.from] -= f;
            bal[a.to] += f;
        }
        for (v, &b) in bal.iter().enumerate() {
            if v != self.source && v != self.sink && b != 0 {
                return Err(format!("conservation violated at node {v}"));
            }
        }
        Ok(bal[self.sink])
    }
}

impl Default for FlowNetwork {
    fn default() -> Self {
        Self::new()
    }
}

struct Residual {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual { head: vec![Vec::new(); n], to: Vec::new(), cap: Vec::new(), cost: Vec::new() }
    }

    fn add_node(&mut self) -> usize {
        self.head.push(Vec::new());
        self.head.len() - 1
    }

    /// Returns the forward edge id; the reverse is id ^ 1.
    fn add(&mut self, u: usize, v: usize, cap: i64, cost: i64) -> usize {
        let e = self.to.len();
        self.to.extend([v, u]);
        self.cap.extend([cap, 0]);
        self.cost.extend([cost, -cost]);
        self.head[u].push(e);
        self.head[v].push(e + 1);
        e
    }

    /// Edmonds-Karp from s to t, pushing at most `limit`.
    fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let n = self.head.len();
        let mut total = 0;
        let mut pred = vec![usize::MAX; n];
        while total < limit {
            pred.fill(usize::MAX);
            let mut q = VecDeque::from([s]);
            let mut seen = vec![false; n];
            seen[s] = true;
            while let Some(u) = q.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.head[u] {
                    let v = self.to[e];
                    if self.cap[e] > 0 && !seen[v] {
                        seen[v] = true;
                        pred[v] = e;
                        q.push_back(v);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut push = limit - total;
            let mut v = t;
            while v != s {
                let e = pred[v];
                push = push.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.to[e ^ 1];
            }
            total += push;
        }
        total
    }

    /// Successive shortest paths with Dijkstra; all residual costs must start non-negative.
    fn min_cost_flow(&mut self, s: usize, t: usize, need: i64) -> Option<i64> {
        let n = self.head.len();
        let mut pot = vec![0i64; n];
        let mut sent = 0;
        let mut cost = 0;
        let mut dist = vec![i64::MAX; n];
        let mut pred = vec![usize::MAX; n];
        while sent < need {
            dist.fill(i64::MAX);
            pred.fill(usize::MAX);
            dist[s] = 0;
            let mut heap = BinaryHeap::from([Reverse((0i64, s))]);
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &e in &self.head[u] {
                    if self.cap[e] <= 0 {
                        continue;
                    }
                    let v = self.to[e];
                    let nd = d + self.cost[e] + pot[u] - pot[v];
                    if nd < dist[v] {
                        dist[v] = nd;
                        pred[v] = e;
                        heap.push(Reverse((nd, v)));
                    }
                }
            }
            if dist[t] == i64::MAX {
                return None;
            }
            for v in 0..n {
                if dist[v] != i64::MAX {
                    pot[v] += dist[v];
                }
            }
            let mut push = need - sent;
            let mut v = t;
            while v != s {
                let e = pred[v];
                push = push.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = pred[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                cost += push * self.cost[e];
                v = self.to[e ^ 1];
            }
            sent += push;
        }
        Some(cost)
    }
}

pub fn max_flow(net: &FlowNetwork) -> Result<FlowAssignment, FlowError> {
    net.check()?;
    if let Some(i) = net.arcs.iter().position(|a| a.lower != 0) {
        return Err(FlowError::LowerBoundsPresent(i));
    }
    let inf = net.infinity(0);
    let mut r = Residual::new(net.num_nodes);
    let ids: Vec<usize> = net.arcs.iter().map(|a| r.add(a.from, a.to, a.cap.unwrap_or(inf), 0)).collect();
    r.max_flow(net.source, net.sink, i64::MAX);
    finish(net, &r, &ids, &vec![0; net.arcs.len()])
}

fn finish(net: &FlowNetwork, r: &Residual, ids: &[usize], base: &[i64]) -> Result<FlowAssignment, FlowError> {
    let flows: Vec<i64> = ids.iter().zip(base).map(|(&e, &b)| b + r.cap[e ^ 1]).collect();
    let value = net.validate(&flows).map_err(FlowError::Malformed)?;
    Ok(FlowAssignment { flows, value })
}

/// Maximum-value flow respecting all windows, or `None` when the lower bounds are unsatisfiable.
pub fn feasible_flow(net: &FlowNetwork) -> Result<Option<FlowAssignment>, FlowError> {
    net.check()?;
    let inf = net.infinity(0);
    let mut r = Residual::new(net.num_nodes);
    let mut excess = vec![0i64; net.num_nodes];
    let mut ids = Vec::with_capacity(net.arcs.len());
    for a in &net.arcs {
        let cap = a.cap.unwrap_or(inf);
        if a.lower > cap {
            return Ok(None);
        }
        ids.push(r.add(a.from, a.to, cap - a.lower, 0));
        excess[a.to] += a.lower;
        excess[a.from] -= a.lower;
    }
    // return arcs both ways, so flows of negative value are representable too
    let back = r.add(net.sink, net.source, inf, 0);
    let fwd = r.add(net.source, net.sink, inf, 0);
    let ss = r.add_node();
    let tt = r.add_node();
    let mut need = 0;
    for (v, &x) in excess.iter().enumerate() {
        if x > 0 {
            r.add(ss, v, x, 0);
            need += x;
        } else if x < 0 {
            r.add(v, tt, -x, 0);
        }
    }
    if r.max_flow(ss, tt, need) < need {
        return Ok(None);
    }
    // drop the return arcs, then push as much extra s-t flow as the residual allows
    for e in [back, fwd] {
        r.cap[e] = 0;
        r.cap[e ^ 1] = 0;
    }
    r.max_flow(net.source, net.sink, i64::MAX);
    let lowers: Vec<i64> = net.arcs.iter().map(|a| a.lower).collect();
    finish(net, &r, &ids, &lowers).map(Some)
}

/// Cheapest flow of value exactly `required`, with its cost.
pub fn min_cost_flow(net: &FlowNetwork, required: i64) -> Result<Option<(FlowAssignment, i64)>, FlowError> {
    net.check()?;
    let inf = net.infinity(required);
    let mut arcs = net.arcs.clone();
    arcs.push(FlowArc { from: net.sink, to: net.source, lower: required, cap: Some(required), cost: 0 });
    let mut r = Residual::new(net.num_nodes);
    let mut excess = vec![0i64; net.num_nodes];
    let mut ids = Vec::with_capacity(arcs.len());
    let mut base = Vec::with_capacity(arcs.len());
    for a in &arcs {
        let cap = a.cap.unwrap_or(inf);
        if a.lower > cap {
            return Ok(None);
        }
        // start negative arcs saturated so every residual cost is non-negative
        let f0 = if a.cost < 0 { cap } else { a.lower };
        let e = r.add(a.from, a.to, cap - f0, a.cost);
        r.cap[e ^ 1] = f0 - a.lower;
        ids.push(e);
        base.push(a.lower);
        excess[a.to] += f0;
        excess[a.from] -= f0;
    }
    let ss = r.add_node();
    let tt = r.add_node();
    let mut need = 0;
    for (v, &x) in excess.iter().enumerate() {
        if x > 0 {
            r.add(ss, v, x, 0);
            need += x;
        } else if x < 0 {
            r.add(v, tt, -x, 0);
        }
    }
    if r.min_cost_flow(ss, tt, need).is_none() {
        return Ok(None);
    }
    let n_orig = net.arcs.len();
    let flows: Vec<i64> = ids[..n_orig].iter().zip(&base).map(|(&e, &b)| b + r.cap[e ^ 1]).collect();
    let value = net.validate(&flows).map_err(FlowError::Malformed)?;
    debug_assert_eq!(value, required);
    let cost = flows.iter().zip(&net.arcs).map(|(f, a)| f * a.cost).sum();
    Ok(Some((FlowAssignment { flows, value }, cost)))
}
