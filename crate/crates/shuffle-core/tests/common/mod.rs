//! Shared fixtures for the integration suites: exhaustive enumerations of
//! small graphs, seeded random generators, and a brute-force optimum to
//! check the dynamic program against.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use shuffle_core::greedy::greedy_cost;
use shuffle_core::rtg::{Edge, Permutation, RegId, Rtg};

pub fn rtg(edges: &[Edge]) -> Rtg {
    Rtg::from_edges(edges.iter().copied()).expect("fixture graph is valid")
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every copy set of `g`: for each register with several outgoing
/// transfers, pick the one transfer that stays.
pub fn all_copy_sets(g: &Rtg) -> Vec<Vec<Edge>> {
    let readers: Vec<(RegId, Vec<RegId>)> = g
        .vertices()
        .iter()
        .map(|&v| (v, g.out_targets(v)))
        .filter(|(_, targets)| targets.len() > 1)
        .collect();
    let mut sets = vec![Vec::new()];
    for (v, targets) in readers {
        let mut grown = Vec::with_capacity(sets.len() * targets.len());
        for base in &sets {
            for keep in 0..targets.len() {
                let mut set = base.clone();
                set.extend(
                    targets.iter().enumerate().filter(|&(i, _)| i != keep).map(|(_, &t)| (v, t)),
                );
                grown.push(set);
            }
        }
        sets = grown;
    }
    for set in &mut sets {
        set.sort_unstable();
    }
    sets
}

/// Cheapest total length over every copy set, found the slow way.
pub fn brute_force_min_length(g: &Rtg) -> usize {
    all_copy_sets(g)
        .iter()
        .map(|set| {
            let residual = g.without_edges(set).expect("cut leaves one transfer per source");
            let sig = residual.signature().expect("residual is outdegree-1");
            set.len() + greedy_cost(&sig) as usize
        })
        .min()
        .expect("every graph has at least one copy set")
}

/// Every outdegree-1 RTG whose vertex set is exactly `{0, .., m-1}`:
/// partial injections with no untouched register and at least one transfer.
pub fn enumerate_outdegree_one(m: usize) -> Vec<Rtg> {
    let mut out = Vec::new();
    let mut targets: Vec<Option<RegId>> = vec![None; m];
    let mut used = vec![false; m];
    fn rec(
        v: usize,
        m: usize,
        targets: &mut Vec<Option<RegId>>,
        used: &mut Vec<bool>,
        out: &mut Vec<Rtg>,
    ) {
        if v == m {
            let edges: Vec<Edge> = targets
                .iter()
                .enumerate()
                .filter_map(|(u, t)| t.map(|t| (u as RegId, t)))
                .collect();
            if edges.is_empty() {
                return;
            }
            let mut touched = vec![false; m];
            for &(u, w) in &edges {
                touched[u as usize] = true;
                touched[w as usize] = true;
            }
            if touched.iter().all(|&t| t) {
                out.push(Rtg::from_edges(edges).expect("partial injection is a valid RTG"));
            }
            return;
        }
        rec(v + 1, m, targets, used, out);
        for t in 0..m {
            if !used[t] {
                used[t] = true;
                targets[v] = Some(t as RegId);
                rec(v + 1, m, targets, used, out);
                targets[v] = None;
                used[t] = false;
            }
        }
    }
    rec(0, m, &mut targets, &mut used, &mut out);
    out
}

/// Every RTG whose vertex set is exactly `{0, .., m-1}`: each register
/// independently picks an inbound source (or none).
pub fn enumerate_rtgs(m: usize) -> Vec<Rtg> {
    let combos = (m + 1).pow(m as u32);
    let mut out = Vec::new();
    for mut code in 0..combos {
        let mut edges = Vec::new();
        for v in 0..m {
            let pick = code % (m + 1);
            code /= m + 1;
            if pick > 0 {
                edges.push(((pick - 1) as RegId, v as RegId));
            }
        }
        if edges.is_empty() {
            continue;
        }
        let mut touched = vec![false; m];
        for &(u, w) in &edges {
            touched[u as usize] = true;
            touched[w as usize] = true;
        }
        if touched.iter().all(|&t| t) {
            out.push(Rtg::from_edges(edges).expect("in-source assignment is a valid RTG"));
        }
    }
    out
}

/// Random RTG: each register draws an inbound source with probability 0.8;
/// out-degrees then follow a short-tailed distribution with plenty of
/// multi-read registers.
pub fn random_rtg(rng: &mut ChaCha8Rng, max_verts: usize) -> Rtg {
    loop {
        let m = rng.gen_range(2..=max_verts);
        let mut edges = Vec::new();
        for v in 0..m {
            if rng.gen_bool(0.8) {
                edges.push((rng.gen_range(0..m) as RegId, v as RegId));
            }
        }
        if !edges.is_empty() {
            return Rtg::from_edges(edges).expect("in-source drawing is a valid RTG");
        }
    }
}

/// Random outdegree-1 RTG: a random partial injection, i.e. a disjoint
/// union of paths, cycles and self-loops.
pub fn random_outdegree_one(rng: &mut ChaCha8Rng, max_verts: usize) -> Rtg {
    loop {
        let m = rng.gen_range(2..=max_verts);
        let mut targets: Vec<RegId> = (0..m as RegId).collect();
        targets.shuffle(rng);
        let mut edges = Vec::new();
        for v in 0..m {
            if rng.gen_bool(0.85) {
                edges.push((v as RegId, targets[v]));
            }
        }
        if !edges.is_empty() {
            return Rtg::from_edges(edges).expect("partial injection is a valid RTG");
        }
    }
}

/// Random PRTG: a full permutation of `2..=max_verts` registers, i.e. a
/// disjoint union of cycles and self-loops.
pub fn random_prtg(rng: &mut ChaCha8Rng, max_verts: usize) -> Rtg {
    let m = rng.gen_range(2..=max_verts);
    let mut targets: Vec<RegId> = (0..m as RegId).collect();
    targets.shuffle(rng);
    Rtg::from_edges((0..m as RegId).map(|v| (v, targets[v as usize])))
        .expect("permutation is a valid RTG")
}

/// The movement of every distinct permutation instruction over the given
/// registers: rotations of two to five, and swap-plus-rotation shapes.
pub fn all_permi_ops(verts: &[RegId]) -> Vec<Permutation> {
    let mut ops = Vec::new();
    for len in 2..=5.min(verts.len()) {
        for combo in combinations(verts, len) {
            for rest in orderings(&combo[1..]) {
                let mut cycle = vec![combo[0]];
                cycle.extend(rest);
                ops.push(Permutation::from_cycle(&cycle).expect("distinct registers"));
            }
        }
    }
    for pair in combinations(verts, 2) {
        let others: Vec<RegId> = verts.iter().copied().filter(|r| !pair.contains(r)).collect();
        for len in [2usize, 3] {
            for combo in combinations(&others, len) {
                if len == 2 && combo[0] < pair[0] {
                    continue; // the symmetric 2+2 double counts once
                }
                for rest in orderings(&combo[1..]) {
                    let mut cycle = vec![combo[0]];
                    cycle.extend(rest);
                    let swap = Permutation::from_cycle(&pair).expect("distinct registers");
                    let rot = Permutation::from_cycle(&cycle).expect("distinct registers");
                    ops.push(swap.then(&rot));
                }
            }
        }
    }
    ops
}

/// One random permutation-instruction movement over the given registers.
pub fn random_permi_op(rng: &mut ChaCha8Rng, verts: &[RegId]) -> Permutation {
    assert!(verts.len() >= 2);
    let mut chosen = verts.to_vec();
    chosen.shuffle(rng);
    if verts.len() >= 4 && rng.gen_bool(0.4) {
        let len = rng.gen_range(2..=3.min(verts.len() - 2));
        let swap = Permutation::from_cycle(&chosen[..2]).expect("distinct registers");
        let rot = Permutation::from_cycle(&chosen[2..2 + len]).expect("distinct registers");
        swap.then(&rot)
    } else {
        let len = rng.gen_range(2..=5.min(verts.len()));
        Permutation::from_cycle(&chosen[..len]).expect("distinct registers")
    }
}

fn combinations(items: &[RegId], len: usize) -> Vec<Vec<RegId>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn rec(
        items: &[RegId],
        len: usize,
        start: usize,
        current: &mut Vec<RegId>,
        out: &mut Vec<Vec<RegId>>,
    ) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, len, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, len, 0, &mut current, &mut out);
    out
}

fn orderings(items: &[RegId]) -> Vec<Vec<RegId>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in orderings(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}
