//! Backtracking embedding of a pattern hypergraph into a host whose k-sets
//! carry classes (colors, or presence in an edge set).

use super::{sorted_buf, Exhausted, Meter};
use crate::hypergraph::Hypergraph;

pub(crate) trait Host {
    fn vertex_count(&self) -> usize;
    /// Class of a sorted k-set of host vertices; `None` when the set is absent.
    fn class(&self, sorted: &[usize]) -> Option<u8>;
}

/// Placement order for pattern vertices, and for each position the pattern
/// edges whose last placed vertex sits there.
#[derive(Debug, Clone)]
pub(crate) struct Plan {
    order: Vec<usize>,
    closing: Vec<Vec<usize>>,
    edges: Vec<Vec<usize>>,
}

impl Plan {
    /// Greedy order: `first` goes first verbatim, then repeatedly the vertex
    /// that closes the most edges, then touches the most placed vertices,
    /// then has the highest degree.
    pub(crate) fn new(h: &Hypergraph, first: &[usize]) -> Self {
        let n = h.vertex_count();
        let degrees = h.degrees();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for &v in first {
            placed[v] = true;
            order.push(v);
        }
        while order.len() < n {
            let mut best: Option<(usize, (usize, usize, usize))> = None;
            for v in (0..n).filter(|&v| !placed[v]) {
                let mut closes = 0;
                let mut touches = 0;
                for e in h.edges().iter().filter(|e| e.contains(&v)) {
                    let others = e.iter().filter(|&&u| u != v && placed[u]).count();
                    if others == e.len() - 1 {
                        closes += 1;
                    }
                    touches += others;
                }
                let key = (closes, touches, degrees[v]);
                if best.is_none_or(|(_, b)| key > b) {
                    best = Some((v, key));
                }
            }
            let (v, _) = best.expect("unplaced vertex exists");
            placed[v] = true;
            order.push(v);
        }
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut closing = vec![Vec::new(); n];
        for (idx, e) in h.edges().iter().enumerate() {
            let last = e.iter().map(|&v| position[v]).max().expect("edges are nonempty");
            closing[last].push(idx);
        }
        Plan {
            order,
            closing,
            edges: h.edges().to_vec(),
        }
    }
}

/// A successful embedding: pattern vertex `i` maps to host vertex `map[i]`;
/// `class` is the common class, `None` for edgeless patterns.
pub(crate) struct Found {
    pub(crate) map: Vec<usize>,
    pub(crate) class: Option<u8>,
}

struct State<'a, H: Host> {
    host: &'a H,
    plan: &'a Plan,
    map: Vec<usize>,
    used: Vec<bool>,
    target: Option<u8>,
}

/// Searches for an injective map under which every pattern edge lands on a
/// present host k-set, all of one class (`target`, or any single class when
/// `target` is `None`). The first `prefix.len()` positions of the plan are
/// fixed to `prefix`.
pub(crate) fn embed<H: Host>(
    host: &H,
    plan: &Plan,
    target: Option<u8>,
    prefix: &[usize],
    meter: &mut Meter,
) -> Result<Option<Found>, Exhausted> {
    let n = plan.order.len();
    if host.vertex_count() < n {
        return Ok(None);
    }
    let mut st = State {
        host,
        plan,
        map: vec![usize::MAX; n],
        used: vec![false; host.vertex_count()],
        target,
    };
    for (pos, &x) in prefix.iter().enumerate() {
        if st.used[x] {
            return Ok(None);
        }
        st.map[plan.order[pos]] = x;
        st.used[x] = true;
        if !st.closes_ok(pos) {
            return Ok(None);
        }
    }
    if st.extend(prefix.len(), meter)? {
        Ok(Some(Found {
            map: st.map,
            class: st.target,
        }))
    } else {
        Ok(None)
    }
}

impl<H: Host> State<'_, H> {
    /// Checks the edges closed at `pos`, fixing the class if still open.
    /// On failure the target is left as it was on entry.
    fn closes_ok(&mut self, pos: usize) -> bool {
        let entry = self.target;
        for &idx in &self.plan.closing[pos] {
            let e = &self.plan.edges[idx];
            let mut image = [0usize; super::MAX_K];
            for (slot, &v) in image.iter_mut().zip(e) {
                *slot = self.map[v];
            }
            let (buf, len) = sorted_buf(&image[..e.len()]);
            match (self.host.class(&buf[..len]), self.target) {
                (None, _) => {
                    self.target = entry;
                    return false;
                }
                (Some(c), None) => self.target = Some(c),
                (Some(c), Some(t)) if c != t => {
                    self.target = entry;
                    return false;
                }
                _ => {}
            }
        }
        true
    }

    fn extend(&mut self, pos: usize, meter: &mut Meter) -> Result<bool, Exhausted> {
        if pos == self.plan.order.len() {
            return Ok(true);
        }
        let v = self.plan.order[pos];
        for x in 0..self.host.vertex_count() {
            if self.used[x] {
                continue;
            }
            meter.tick()?;
            let entry = self.target;
            self.map[v] = x;
            self.used[x] = true;
            if self.closes_ok(pos) && self.extend(pos + 1, meter)? {
                return Ok(true);
            }
            self.used[x] = false;
            self.map[v] = usize::MAX;
            self.target = entry;
        }
        Ok(false)
    }
}
