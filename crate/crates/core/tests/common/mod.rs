#![allow(dead_code)]

pub mod oracle;

use localslice::{parse_quiver, ClusterCategory, Quiver, TiltingSet, Window, Zq, ZqVertex};
use oracle::{place, PathAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn quiver(text: &str) -> Quiver {
    parse_quiver(text).expect("test quiver parses")
}

pub fn kronecker() -> Quiver {
    quiver("node 1\nnode 2\narrow 1 2 2\n")
}

/// Euclidean type A with arrows 1->2->3 and 1->3.
pub fn a21() -> Quiver {
    quiver("node 1\nnode 2\nnode 3\narrow 1 2\narrow 2 3\narrow 1 3\n")
}

pub fn a21_op() -> Quiver {
    a21().op()
}

/// Wild: 1 => 2 -> 3.
pub fn wild() -> Quiver {
    quiver("node 1\nnode 2\nnode 3\narrow 1 2 2\narrow 2 3\n")
}

pub fn a3_linear() -> Quiver {
    quiver("node 1\nnode 2\nnode 3\narrow 1 2\narrow 2 3\n")
}

pub fn a3_sink() -> Quiver {
    quiver("node 1\nnode 2\nnode 3\narrow 1 2\narrow 3 2\n")
}

pub fn example2() -> Quiver {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../fixtures/example2.quiver"
    ))
    .expect("example2 fixture");
    localslice::cluster::parse_tilting_input(&text)
        .expect("example2 parses")
        .quiver
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/../../fixtures/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .expect("fixture exists")
}

/// Distinct tilting sets with a transjective summand, from the initial set and seeded
/// random mutation sequences of length at most 4.
pub fn random_tilting_sets(q: &Quiver, seed: u64, want: usize) -> Vec<(Vec<usize>, TiltingSet)> {
    let init = TiltingSet::for_path_algebra(q).expect("path algebra of a non-Dynkin quiver");
    let n = q.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Vec<usize>, TiltingSet)> = vec![(Vec::new(), init.clone())];
    let mut attempts = 0;
    while out.len() < want && attempts < 200 {
        attempts += 1;
        let len = rng.gen_range(1..=4);
        let mut seq: Vec<usize> = Vec::new();
        while seq.len() < len {
            let k = rng.gen_range(1..=n);
            if seq.last() != Some(&k) {
                seq.push(k);
            }
        }
        let t = init.mutate_sequence(&seq).expect("mutation succeeds");
        if t.transjective_count() == 0 || out.iter().any(|(_, u)| *u == t) {
            continue;
        }
        out.push((seq, t));
    }
    out
}

/// Compares mesh hom dimensions with representation Hom dimensions on all pairs of
/// vertices with levels in `lo..=hi`; returns the number of pairs and the mismatches.
pub fn mesh_vs_representations(base: &Quiver, lo: i64, hi: i64) -> (usize, Vec<String>) {
    let alg = PathAlgebra::for_zq_base(base);
    let objs = place(&alg, base, lo, hi);
    let zq = Zq::new(base.clone());
    let cat = ClusterCategory::from_zq_base(base).expect("non-Dynkin base");
    let w = Window::new(lo, hi).unwrap();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for (i, row) in objs.iter().enumerate() {
        for (qx, ox) in row.iter().enumerate() {
            let x = ZqVertex::new(lo + i as i64, oracle::node(qx));
            let hammock = zq.hammock(x, &w).expect("hammock");
            for (j, row2) in objs.iter().enumerate() {
                for (qy, oy) in row2.iter().enumerate() {
                    let y = ZqVertex::new(lo + j as i64, oracle::node(qy));
                    let expected = alg.hom_derived(ox, oy) as u64;
                    let mesh = hammock.get(y).expect("inside window");
                    pairs += 1;
                    if mesh != expected {
                        bad.push(format!(
                            "hom({x}, {y}): mesh {mesh}, representations {expected}"
                        ));
                    }
                    if cat.hom(x, y).ok() != Some(expected) {
                        bad.push(format!("hom table ({x}, {y}) differs from {expected}"));
                    }
                }
            }
        }
    }
    (pairs, bad)
}

/// Dynkin variant: no cluster category, mesh hammocks only.
pub fn mesh_vs_representations_dynkin(base: &Quiver, lo: i64, hi: i64) -> (usize, Vec<String>) {
    let alg = PathAlgebra::for_zq_base(base);
    let objs = place(&alg, base, lo, hi);
    let zq = Zq::new(base.clone());
    let w = Window::new(lo, hi).unwrap();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for (i, row) in objs.iter().enumerate() {
        for (qx, ox) in row.iter().enumerate() {
            let x = ZqVertex::new(lo + i as i64, oracle::node(qx));
            let hammock = zq.hammock(x, &w).expect("hammock");
            for (j, row2) in objs.iter().enumerate() {
                for (qy, oy) in row2.iter().enumerate() {
                    let y = ZqVertex::new(lo + j as i64, oracle::node(qy));
                    let expected = alg.hom_derived(ox, oy) as u64;
                    let mesh = hammock.get(y).expect("inside window");
                    pairs += 1;
                    if mesh != expected {
                        bad.push(format!(
                            "hom({x}, {y}): mesh {mesh}, representations {expected}"
                        ));
                    }
                }
            }
        }
    }
    (pairs, bad)
}
