use std::collections::{BTreeMap, BTreeSet};

use super::CalibrationSnapshot;
use crate::codes::{EncodingLayout, LayoutKind, QubitAssignment, RootPosition};
use crate::{Error, Result};

/// Undirected coupling graph of a device.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviceGraph {
    adj: BTreeMap<usize, BTreeSet<usize>>,
}

impl DeviceGraph {
    pub fn from_snapshot(s: &CalibrationSnapshot) -> Self {
        let mut adj: BTreeMap<usize, BTreeSet<usize>> = s.qubits.iter().map(|q| (q.index, BTreeSet::new())).collect();
        for e in &s.edges {
            let [a, b] = e.pair;
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
        DeviceGraph { adj }
    }

    pub fn neighbors(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.get(&q).into_iter().flatten().copied()
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.keys().copied()
    }

    /// Directed simple paths with `len` nodes, in lexicographic order, up to `limit`.
    pub fn paths(&self, len: usize, limit: usize, mut keep: impl FnMut(&[usize]) -> bool) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(len);
        for s in self.nodes() {
            stack.push(s);
            self.extend_path(&mut stack, len, limit, &mut keep, &mut out, None);
            stack.pop();
            if out.len() >= limit {
                break;
            }
        }
        out
    }

    /// Simple cycles with `len` nodes, each listed once: it starts at its
    /// smallest node and its second node is smaller than its last.
    pub fn cycles(&self, len: usize, limit: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(len);
        for s in self.nodes() {
            stack.push(s);
            let mut keep = |p: &[usize]| p[1] < p[p.len() - 1] && p.iter().all(|&q| q >= p[0]);
            self.extend_path(&mut stack, len, limit, &mut keep, &mut out, Some(s));
            stack.pop();
            if out.len() >= limit {
                break;
            }
        }
        out
    }

    fn extend_path(
        &self,
        stack: &mut Vec<usize>,
        len: usize,
        limit: usize,
        keep: &mut impl FnMut(&[usize]) -> bool,
        out: &mut Vec<Vec<usize>>,
        close_to: Option<usize>,
    ) {
        if out.len() >= limit {
            return;
        }
        let last = *stack.last().expect("non-empty");
        if stack.len() == len {
            let closes = close_to.is_none_or(|s| len > 2 && self.neighbors(last).any(|n| n == s));
            if closes && keep(stack) {
                out.push(stack.clone());
            }
            return;
        }
        let next: Vec<usize> = self.neighbors(last).filter(|n| !stack.contains(n)).collect();
        for n in next {
            if close_to.is_some_and(|s| n < s) {
                continue;
            }
            stack.push(n);
            self.extend_path(stack, len, limit, keep, out, close_to);
            stack.pop();
        }
    }
}

/// Up to `limit` placements of `template`'s shape on the device, in a fixed order.
///
/// Chains with the root at the edge map onto directed paths (root first). Other
/// chains and split layouts map onto paths with the root in the middle, each
/// undirected path once. Circular layouts map onto cycles of `n_rep + 2`
/// qubits with the root on the smallest index and the flag opposite to it.
pub fn find_embeddings(
    snapshot: &CalibrationSnapshot,
    template: &EncodingLayout,
    limit: usize,
) -> Result<Vec<EncodingLayout>> {
    let g = DeviceGraph::from_snapshot(snapshot);
    let n = template.n_rep();
    let m = n / 2;
    let kind = template.kind();
    let build = |root: usize, a: Vec<usize>, b: Vec<usize>, flag: Option<usize>, pos: RootPosition| {
        EncodingLayout::new(
            kind,
            n,
            pos,
            QubitAssignment {
                root,
                branch_a: a,
                branch_b: b,
                flag,
            },
        )
    };
    let found = match (kind, template.root_position()) {
        (LayoutKind::Chain, RootPosition::Edge) => g
            .paths(n + 1, limit, |_| true)
            .into_iter()
            .map(|p| build(p[0], p[1..].to_vec(), Vec::new(), None, RootPosition::Edge))
            .collect::<Result<Vec<_>>>()?,
        (LayoutKind::Circular, _) => g
            .cycles(n + 2, limit)
            .into_iter()
            .map(|c| {
                let a = c[1..=m].to_vec();
                let b = c[m + 2..].iter().rev().copied().collect();
                build(c[0], a, b, Some(c[m + 1]), RootPosition::Middle)
            })
            .collect::<Result<Vec<_>>>()?,
        _ => g
            .paths(n + 1, limit, |p| p[0] < p[p.len() - 1])
            .into_iter()
            .map(|p| {
                let a = p[..m].iter().rev().copied().collect();
                build(p[m], a, p[m + 1..].to_vec(), None, RootPosition::Middle)
            })
            .collect::<Result<Vec<_>>>()?,
    };
    if found.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "no placement of a {} on device {}",
            template.label(),
            snapshot.device
        )));
    }
    Ok(found)
}
