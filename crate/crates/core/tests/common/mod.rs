//! Test-support: instance generators and independent exact oracles.
//!
//! The oracles never touch the incremental-evaluation path they are used
//! to check: brute force scores configurations straight off the edge list,
//! and the torus oracle enumerates column profiles.

#![allow(dead_code)]

use std::path::PathBuf;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cutbench::instances::ProblemInstance;

/// Repo-local warm cache with the seven Gset instances.
pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/gset")
}

pub fn load_gset(id: &str) -> ProblemInstance {
    cutbench::instances::load_instance(id, &data_dir(), true)
        .unwrap_or_else(|e| panic!("loading {id} from repo cache: {e}"))
}

/// Toroidal rows x cols grid with +-1 weights drawn from ChaCha8(seed).
/// Requires rows, cols >= 3 so wrap-around edges stay distinct.
pub fn toroidal_grid(rows: usize, cols: usize, seed: u64) -> ProblemInstance {
    assert!(rows >= 3 && cols >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx = |r: usize, c: usize| (r * cols + c + 1) as u32;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let w = if rng.gen::<bool>() { 1 } else { -1 };
            edges.push((idx(r, c), idx(r, (c + 1) % cols), w));
            let w = if rng.gen::<bool>() { 1 } else { -1 };
            edges.push((idx(r, c), idx((r + 1) % rows, c), w));
        }
    }
    ProblemInstance::from_parts(
        &format!("torus{rows}x{cols}s{seed}"),
        rows * cols,
        edges,
        "generated",
    )
    .unwrap()
}

/// Random instance on n vertices: each pair becomes an edge with the given
/// probability, weights uniform in {-2, -1, 1, 2}; always connected enough
/// to be interesting but never empty.
pub fn random_instance(n: usize, edge_prob: f64, seed: u64) -> ProblemInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=n as u32 {
        for v in (u + 1)..=n as u32 {
            if rng.gen::<f64>() < edge_prob {
                let w = *[-2, -1, 1, 2].choose(&mut rng).unwrap();
                edges.push((u, v, w));
            }
        }
    }
    if edges.is_empty() && n >= 2 {
        edges.push((1, 2, 1));
    }
    ProblemInstance::from_parts(&format!("rand{n}s{seed}"), n, edges, "generated").unwrap()
}

/// Exhaustive max cut for n <= 20, straight off the edge list.
pub fn brute_force_max_cut(inst: &ProblemInstance) -> i64 {
    let n = inst.n();
    assert!(n <= 20, "brute force limited to n <= 20");
    let edges = inst.edges();
    let mut best = i64::MIN;
    // Vertex 1 fixed on one side; the cut is invariant under global flips.
    for mask in 0u32..(1 << (n - 1)) {
        let side = |v: u32| -> u32 {
            if v == 1 {
                0
            } else {
                (mask >> (v - 2)) & 1
            }
        };
        let mut cut = 0i64;
        for &(u, v, w) in edges {
            if side(u) != side(v) {
                cut += w as i64;
            }
        }
        best = best.max(cut);
    }
    best
}

/// Exact max cut of a toroidal rows x cols grid by transfer-matrix
/// enumeration over column profiles. Works for rows <= 12 or so; columns
/// are unbounded. Independent of both the solvers and the incremental
/// model (costs come straight from the edge list).
pub fn torus_exact_max_cut(inst: &ProblemInstance, rows: usize, cols: usize) -> i64 {
    assert_eq!(inst.n(), rows * cols);
    assert!(rows <= 16);
    let idx = |r: usize, c: usize| (r * cols + c + 1) as u32;

    // Recover the weight grids from the edge list.
    let mut wh = vec![vec![0i64; cols]; rows]; // (r,c) -> (r,(c+1)%cols)
    let mut wv = vec![vec![0i64; cols]; rows]; // (r,c) -> ((r+1)%rows,c)
    for &(u, v, w) in inst.edges() {
        let (a, b) = (u.min(v), u.max(v));
        let mut matched = false;
        'scan: for r in 0..rows {
            for c in 0..cols {
                let here = idx(r, c);
                let right = idx(r, (c + 1) % cols);
                let down = idx((r + 1) % rows, c);
                if (a, b) == (here.min(right), here.max(right)) {
                    wh[r][c] = w as i64;
                    matched = true;
                    break 'scan;
                }
                if (a, b) == (here.min(down), here.max(down)) {
                    wv[r][c] = w as i64;
                    matched = true;
                    break 'scan;
                }
            }
        }
        assert!(matched, "edge ({u},{v}) is not a torus edge");
    }

    let states = 1usize << rows;
    // vertical cost of a column profile, per column
    let vcost = |c: usize, s: usize| -> i64 {
        (0..rows)
            .map(|r| {
                let a = (s >> r) & 1;
                let b = (s >> ((r + 1) % rows)) & 1;
                if a != b {
                    wv[r][c]
                } else {
                    0
                }
            })
            .sum()
    };
    // horizontal cost from column c to c+1 depends on the XOR of profiles
    let mut hcost = vec![vec![0i64; states]; cols];
    for (c, row) in hcost.iter_mut().enumerate() {
        for (m, slot) in row.iter_mut().enumerate() {
            *slot = (0..rows)
                .filter(|&r| (m >> r) & 1 == 1)
                .map(|r| wh[r][c])
                .sum();
        }
    }
    let mut vcols = vec![vec![0i64; states]; cols];
    for (c, col) in vcols.iter_mut().enumerate() {
        for (s, slot) in col.iter_mut().enumerate() {
            *slot = vcost(c, s);
        }
    }

    let mut best = i64::MIN;
    // fix bit 0 of the first column (global flip symmetry)
    for first in 0..states / 2 {
        let mut dp = vec![i64::MIN; states];
        dp[first] = vcols[0][first];
        for c in 0..cols - 1 {
            let mut next = vec![i64::MIN; states];
            for (s, &val) in dp.iter().enumerate() {
                if val == i64::MIN {
                    continue;
                }
                for (t, slot) in next.iter_mut().enumerate() {
                    let cand = val + hcost[c][s ^ t] + vcols[c + 1][t];
                    if cand > *slot {
                        *slot = cand;
                    }
                }
            }
            dp = next;
        }
        for (t, &val) in dp.iter().enumerate() {
            if val > i64::MIN {
                best = best.max(val + hcost[cols - 1][t ^ first]);
            }
        }
    }
    best
}
