//! Brute-force oracles shared by the integration tests. They read only the raw gluings and
//! the skeleton, never the library's matching or geometry code.

#![allow(dead_code)]

use std::collections::HashSet;

use normkit::tri::Triangulation;
use normkit::NormalVector;

/// Vertex pairs of the three quad types.
const QUADS: [[[u8; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

/// The quad type cutting corner `c` off face `f`: the one pairing `c` with `f`.
fn corner_quad(c: u8, f: u8) -> usize {
    (0..3).find(|&q| QUADS[q].iter().any(|s| s.contains(&c) && s.contains(&f))).unwrap()
}

/// Arcs of `v` on face `f` of `tet` around corner `c`.
pub fn arcs_at(v: &[u64], tet: usize, f: u8, c: u8) -> u64 {
    v[7 * tet + c as usize] + v[7 * tet + 4 + corner_quad(c, f)]
}

/// Points of `v` on the edge `{u, w}` of `tet`.
pub fn edge_points(v: &[u64], tet: usize, u: u8, w: u8) -> u64 {
    let mut n = v[7 * tet + u as usize] + v[7 * tet + w as usize];
    for q in 0..3 {
        if !QUADS[q].iter().any(|s| s.contains(&u) && s.contains(&w)) {
            n += v[7 * tet + 4 + q];
        }
    }
    n
}

/// Matching equations as (tet, face, corner) triples that must carry equal arc counts.
pub fn matching_pairs(t: &Triangulation) -> Vec<((usize, u8, u8), (usize, u8, u8))> {
    let mut out = Vec::new();
    for (a, row) in t.gluings().iter().enumerate() {
        for f in 0..4u8 {
            if let Some(g) = row[f as usize] {
                if (a, f) < (g.tet, g.face) {
                    for c in (0..4u8).filter(|&c| c != f) {
                        out.push(((a, f, c), (g.tet, g.face, g.perm[c as usize])));
                    }
                }
            }
        }
    }
    out
}

pub fn satisfies_matching(t: &Triangulation, v: &[u64]) -> bool {
    matching_pairs(t).iter().all(|&((a, f, c), (b, g, d))| arcs_at(v, a, f, c) == arcs_at(v, b, g, d))
}

pub fn quads_ok(v: &[u64]) -> bool {
    v.chunks(7).all(|c| c[4..].iter().filter(|&&x| x > 0).count() <= 1)
}

pub fn admissible(t: &Triangulation, v: &[u64]) -> bool {
    quads_ok(v) && satisfies_matching(t, v)
}

/// Euler characteristic by counting surface vertices, arcs and pieces.
pub fn euler(t: &Triangulation, v: &[u64]) -> i64 {
    let pieces: u64 = v.iter().sum();
    let mut twice_arcs = 0u64;
    for (a, row) in t.gluings().iter().enumerate() {
        for f in 0..4u8 {
            let n: u64 = (0..4u8).filter(|&c| c != f).map(|c| arcs_at(v, a, f, c)).sum();
            twice_arcs += if row[f as usize].is_some() { n } else { 2 * n };
        }
    }
    let points = weight(t, v);
    points as i64 - (twice_arcs / 2) as i64 + pieces as i64
}

/// Points on the edges of the triangulation, one representative per edge class.
pub fn weight(t: &Triangulation, v: &[u64]) -> u64 {
    t.edges
        .iter()
        .map(|e| {
            let (a, k) = e.rep;
            let (u, w) = normkit::tri::EDGE_VERTS[k];
            edge_points(v, a, u, w)
        })
        .sum()
}

/// Arcs on boundary faces.
pub fn boundary_length(t: &Triangulation, v: &[u64]) -> u64 {
    let mut n = 0;
    for (a, row) in t.gluings().iter().enumerate() {
        for f in 0..4u8 {
            if row[f as usize].is_none() {
                n += (0..4u8).filter(|&c| c != f).map(|c| arcs_at(v, a, f, c)).sum::<u64>();
            }
        }
    }
    n
}

/// Every nonzero admissible vector with all entries at most `cap`, by depth-first search
/// that checks each matching equation as soon as its columns are fixed.
pub fn lattice_scan(t: &Triangulation, cap: u64) -> Vec<Vec<u64>> {
    let n = 7 * t.tet_count();
    let pairs = matching_pairs(t);
    let col = |(a, f, c): (usize, u8, u8)| [7 * a + c as usize, 7 * a + 4 + corner_quad(c, f)];
    let mut ready: Vec<Vec<([usize; 2], [usize; 2])>> = vec![Vec::new(); n];
    for &(x, y) in &pairs {
        let (cx, cy) = (col(x), col(y));
        let last = cx.iter().chain(&cy).copied().max().unwrap();
        ready[last].push((cx, cy));
    }
    let mut out = Vec::new();
    let mut v = vec![0u64; n];
    fn go(i: usize, v: &mut Vec<u64>, cap: u64, ready: &[Vec<([usize; 2], [usize; 2])>], out: &mut Vec<Vec<u64>>) {
        if i == v.len() {
            if v.iter().any(|&x| x > 0) {
                out.push(v.clone());
            }
            return;
        }
        let quad_used = i % 7 >= 4 && (7 * (i / 7) + 4..i).any(|j| v[j] > 0);
        let top = if quad_used { 0 } else { cap };
        for x in 0..=top {
            v[i] = x;
            let ok = ready[i].iter().all(|(a, b)| v[a[0]] + v[a[1]] == v[b[0]] + v[b[1]]);
            if ok {
                go(i + 1, v, cap, ready, out);
            }
        }
        v[i] = 0;
    }
    go(0, &mut v, cap, &ready, &mut out);
    out
}

pub fn le(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Elements of `scan` that are not the sum of two nonzero elements of `scan`. Since `scan`
/// is closed under admissible differences, these are the irreducible lattice points.
pub fn irreducibles(scan: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut sorted: Vec<&Vec<u64>> = scan.iter().collect();
    sorted.sort_by_key(|v| v.iter().sum::<u64>());
    let mut irr: Vec<Vec<u64>> = Vec::new();
    for v in sorted {
        if !irr.iter().any(|f| le(f, v)) {
            irr.push(v.clone());
        }
    }
    irr
}

/// Whether `v` is a nonnegative integer combination of `basis`, by memoised subtraction.
pub fn decomposes(v: &[u64], basis: &[Vec<u64>], memo: &mut HashSet<Vec<u64>>) -> bool {
    if v.iter().all(|&x| x == 0) || memo.contains(v) {
        return true;
    }
    for b in basis {
        if le(b, v) {
            let rest: Vec<u64> = v.iter().zip(b).map(|(x, y)| x - y).collect();
            if decomposes(&rest, basis, memo) {
                memo.insert(v.to_vec());
                return true;
            }
        }
    }
    false
}

pub fn nv(v: &[u64]) -> NormalVector {
    NormalVector(v.to_vec())
}

/// Arc counts of each type on the boundary torus `b`, read from its first triangle.
pub fn torus_arcs(t: &Triangulation, b: usize, v: &[u64]) -> [u64; 3] {
    let comp = &t.components[b];
    let frame = comp.torus.as_ref().expect("one-vertex torus");
    let bt = &t.boundary_tris[frame.tris[0]];
    let mut z = [0u64; 3];
    for s in 0..3 {
        z[frame.edge_at[0][s]] += arcs_at(v, bt.tet, bt.face, bt.corners[s]);
    }
    z
}

/// `(p, q)` with `p > 0`, or `p == 0` and `q > 0`.
pub fn canonical(p: i64, q: i64) -> (i64, i64) {
    if p < 0 || (p == 0 && q < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
