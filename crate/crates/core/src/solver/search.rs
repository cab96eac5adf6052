use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

use rayon::prelude::*;

use crate::combinatorics::{binom_u64, colex_rank, initial_segment, level, Subset};
use crate::compression::{lower_covers, upper_covers};
use crate::johnson::{boundary_sorted, for_each_neighbor, Family};

use super::gray::RevolvingDoor;

/// Compares two families of the same level in colex order: the family
/// holding the largest member of the symmetric difference is the larger.
pub fn family_colex_cmp(a: &[Subset], b: &[Subset]) -> Ordering {
    let (mut i, mut j) = (a.len(), b.len());
    while i > 0 && j > 0 {
        match a[i - 1].cmp(&b[j - 1]) {
            Ordering::Equal => {
                i -= 1;
                j -= 1;
            }
            other => return other,
        }
    }
    i.cmp(&j)
}

/// Outcome of a bounded search.
#[derive(Clone, Debug)]
pub(crate) struct SearchOutcome {
    pub best_boundary: u64,
    pub witness: Vec<Subset>,
    pub nodes: u64,
    pub complete: bool,
    /// Every optimal family, when requested.
    pub optima: Option<Vec<Vec<Subset>>>,
}

/// Largest `C(n, m) * (degree + 1)` for which the exhaustive search builds
/// its adjacency table.
pub(crate) const EXHAUSTIVE_TABLE_LIMIT: u64 = 1 << 26;

/// Every k-subset of the vertex set, walked in revolving-door order.
pub(crate) fn exhaustive(n: u32, m: u32, k: u64, budget: u64) -> SearchOutcome {
    let seg = initial_segment(k, m).expect("k is in range").into_members();
    let seg_boundary = boundary_sorted(&Family::from_sorted(n, m, seg.clone())).len() as u64;
    let vertices_count = binom_u64(n as u64, m as u64).expect("n <= 64");
    let degree = (m * (n - m)) as u64;
    if vertices_count.saturating_mul(degree + 1) > EXHAUSTIVE_TABLE_LIMIT {
        return SearchOutcome {
            best_boundary: seg_boundary,
            witness: seg,
            nodes: 0,
            complete: false,
            optima: None,
        };
    }
    let vertices: Vec<Subset> = level(n, m).collect();
    let closed: Vec<Vec<u32>> = vertices
        .iter()
        .map(|&x| {
            let mut v = vec![colex_rank(x) as u32];
            for_each_neighbor(x, n, |y| v.push(colex_rank(y) as u32));
            v
        })
        .collect();

    let mut counts = vec![0u32; vertices.len()];
    let mut ball = 0u64;
    let mut door = RevolvingDoor::new(vertices.len(), k as usize);
    for &v in door.current() {
        for &u in &closed[v] {
            if counts[u as usize] == 0 {
                ball += 1;
            }
            counts[u as usize] += 1;
        }
    }
    let mut best = ball - k;
    let mut best_combo: Vec<usize> = door.current().to_vec();
    let mut nodes = 1u64;
    let mut complete = true;
    while let Some(swap) = door.advance() {
        if nodes >= budget {
            complete = false;
            break;
        }
        nodes += 1;
        for &u in &closed[swap.out] {
            counts[u as usize] -= 1;
            if counts[u as usize] == 0 {
                ball -= 1;
            }
        }
        for &u in &closed[swap.enter] {
            if counts[u as usize] == 0 {
                ball += 1;
            }
            counts[u as usize] += 1;
        }
        let value = ball - k;
        if value < best || (value == best && ranks_colex_less(door.current(), &best_combo)) {
            best = value;
            best_combo.clear();
            best_combo.extend_from_slice(door.current());
        }
    }
    SearchOutcome {
        best_boundary: best,
        witness: best_combo.iter().map(|&r| vertices[r]).collect(),
        nodes,
        complete,
        optima: None,
    }
}

fn ranks_colex_less(a: &[usize], b: &[usize]) -> bool {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return x < y;
        }
    }
    false
}

struct Shared {
    n: u32,
    m: u32,
    k: usize,
    budget: u64,
    collect_all: bool,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

#[derive(Default)]
struct Local {
    best: Option<(u64, Vec<Subset>)>,
    optima: Vec<Vec<Subset>>,
}

impl Local {
    fn offer(&mut self, value: u64, family: &[Subset], collect_all: bool) {
        match &self.best {
            Some((b, _)) if value > *b => {}
            Some((b, _)) if value == *b => {
                if collect_all {
                    self.optima.push(family.to_vec());
                }
                let (_, w) = self.best.as_ref().unwrap();
                if family_colex_cmp(family, w) == Ordering::Less {
                    self.best = Some((value, family.to_vec()));
                }
            }
            _ => {
                self.best = Some((value, family.to_vec()));
                if collect_all {
                    self.optima.clear();
                    self.optima.push(family.to_vec());
                }
            }
        }
    }

    fn merge(self, other: Local, collect_all: bool) -> Local {
        let Local {
            best: a,
            optima: mut oa,
        } = self;
        let Local {
            best: b,
            optima: ob,
        } = other;
        match (a, b) {
            (None, b) => Local {
                best: b,
                optima: ob,
            },
            (a, None) => Local {
                best: a,
                optima: oa,
            },
            (Some((va, wa)), Some((vb, wb))) => match va.cmp(&vb) {
                Ordering::Less => Local {
                    best: Some((va, wa)),
                    optima: oa,
                },
                Ordering::Greater => Local {
                    best: Some((vb, wb)),
                    optima: ob,
                },
                Ordering::Equal => {
                    if collect_all {
                        oa.extend(ob);
                    }
                    let w = if family_colex_cmp(&wb, &wa) == Ordering::Less {
                        wb
                    } else {
                        wa
                    };
                    Local {
                        best: Some((va, w)),
                        optima: oa,
                    }
                }
            },
        }
    }
}

impl Shared {
    // false once the budget is spent
    fn tick(&self) -> bool {
        if self.exhausted.load(AtomicOrdering::Relaxed) {
            return false;
        }
        let used = self.nodes.fetch_add(1, AtomicOrdering::Relaxed) + 1;
        if used > self.budget {
            self.exhausted.store(true, AtomicOrdering::Relaxed);
            return false;
        }
        true
    }

    fn candidates(&self, members: &[Subset]) -> Vec<Subset> {
        let Some(&last) = members.last() else {
            return vec![Subset::initial(self.m)];
        };
        let mut out: Vec<Subset> = members
            .iter()
            .flat_map(|&y| upper_covers(y, self.n))
            .filter(|&z| {
                z > last
                    && members.binary_search(&z).is_err()
                    && lower_covers(z).all(|w| members.binary_search(&w).is_ok())
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn evaluate(&self, members: &[Subset], local: &mut Local) {
        let fam = Family::from_sorted(self.n, self.m, members.to_vec());
        let value = boundary_sorted(&fam).len() as u64;
        local.offer(value, members, self.collect_all);
    }

    // Depth-first over down-sets, adding members in increasing colex order.
    fn explore(&self, members: &mut Vec<Subset>, local: &mut Local) {
        if members.len() == self.k {
            self.evaluate(members, local);
            return;
        }
        for c in self.candidates(members) {
            if !self.tick() {
                return;
            }
            members.push(c);
            self.explore(members, local);
            members.pop();
        }
    }

    fn prefixes(&self, depth: usize, members: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
        if members.len() == depth {
            out.push(members.clone());
            return;
        }
        for c in self.candidates(members) {
            if !self.tick() {
                return;
            }
            members.push(c);
            self.prefixes(depth, members, out);
            members.pop();
        }
    }
}

/// Every compressed (shift-stable) k-family inside `[n]`. Subtrees below a
/// fixed prefix are searched in parallel and reduced by boundary size, then
/// colex order, so the result does not depend on scheduling.
pub(crate) fn compressed(n: u32, m: u32, k: u64, budget: u64, collect_all: bool) -> SearchOutcome {
    let shared = Shared {
        n,
        m,
        k: k as usize,
        budget,
        collect_all,
        nodes: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };
    let depth = shared.k.min(3);
    let mut prefixes = Vec::new();
    shared.prefixes(depth, &mut Vec::new(), &mut prefixes);

    let local = prefixes
        .into_par_iter()
        .map(|mut p| {
            let mut local = Local::default();
            shared.explore(&mut p, &mut local);
            local
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Local::default(), |acc, l| acc.merge(l, collect_all));

    let complete = !shared.exhausted.load(AtomicOrdering::Relaxed);
    let nodes = shared.nodes.load(AtomicOrdering::Relaxed).min(budget);
    let (best_boundary, witness, optima) = match local.best {
        Some((v, w)) => {
            let mut optima = local.optima;
            optima.sort_by(|a, b| family_colex_cmp(a, b));
            optima.dedup();
            (v, w, collect_all.then_some(optima))
        }
        None => {
            // budget ran out before any full family: fall back to the segment
            let seg = initial_segment(k, m).expect("k is in range").into_members();
            let v = boundary_sorted(&Family::from_sorted(n, m, seg.clone())).len() as u64;
            (v, seg, None)
        }
    };
    SearchOutcome {
        best_boundary,
        witness,
        nodes,
        complete,
        optima,
    }
}
