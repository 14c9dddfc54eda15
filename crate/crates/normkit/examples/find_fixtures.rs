//! Brute-force search for small fixture triangulations.
use std::collections::BTreeMap;

use normkit::bounds::audit_zero_efficiency;
use normkit::normal::{enumerate_fundamental_solutions, Budget};
use normkit::surface::{classify, reconstruct};
use normkit::tri::{GluingTable, Triangulation};

/// Odd permutations only: every orientable table is isomorphic to one with all tetrahedra
/// oriented alike, and then every gluing reverses orientation.
fn perms_taking(f: u8, g: u8) -> Vec<[u8; 4]> {
    normkit::tri::all_perms().into_iter().filter(|p| p[f as usize] == g && normkit::tri::perm_sign(p) < 0).collect()
}

fn find(p: &mut [usize], x: usize) -> usize {
    let mut x = x;
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Vertex and edge class counts by union-find.
fn counts(table: &GluingTable) -> (usize, usize) {
    let t = table.tets;
    let mut pv: Vec<usize> = (0..4 * t).collect();
    let mut pe: Vec<usize> = (0..6 * t).collect();
    for a in 0..t {
        for f in 0..4u8 {
            if let Some((b, _g, p)) = table.gluings[a][f as usize] {
                for v in 0..4u8 {
                    if v == f {
                        continue;
                    }
                    let (x, y) = (find(&mut pv, 4 * a + v as usize), find(&mut pv, 4 * b + p[v as usize] as usize));
                    pv[x] = y;
                    for w in v + 1..4 {
                        if w == f {
                            continue;
                        }
                        let e1 = normkit::tri::edge_index(v, w);
                        let (pv2, pw2) = (p[v as usize], p[w as usize]);
                        let e2 = normkit::tri::edge_index(pv2.min(pw2), pv2.max(pw2));
                        let (x, y) = (find(&mut pe, 6 * a + e1), find(&mut pe, 6 * b + e2));
                        pe[x] = y;
                    }
                }
            }
        }
    }
    let nv = (0..4 * t).filter(|&i| find(&mut pv, i) == i).count();
    let ne = (0..6 * t).filter(|&i| find(&mut pe, i) == i).count();
    (nv, ne)
}

fn matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let a = items[0];
    for i in 1..items.len() {
        let rest: Vec<usize> = items[1..].iter().enumerate().filter(|&(j, _)| j + 1 != i).map(|(_, &x)| x).collect();
        for mut m in matchings(&rest) {
            m.push((a, items[i]));
            out.push(m);
        }
    }
    out
}

fn search(tets: usize, boundary_faces: usize) -> BTreeMap<String, Triangulation> {
    let n = 4 * tets;
    let mut found = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != boundary_faces {
            continue;
        }
        let glued: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
        for m in matchings(&glued) {
            let options: Vec<Vec<[u8; 4]>> = m.iter().map(|&(x, y)| perms_taking((x % 4) as u8, (y % 4) as u8)).collect();
            let mut idx = vec![0usize; m.len()];
            loop {
                let mut table = GluingTable { tets, gluings: vec![[None; 4]; tets] };
                for (k, &(x, y)) in m.iter().enumerate() {
                    let p = options[k][idx[k]];
                    let inv = normkit::tri::perm_inverse(&p);
                    table.gluings[x / 4][x % 4] = Some((y / 4, (y % 4) as u8, p));
                    table.gluings[y / 4][y % 4] = Some((x / 4, (x % 4) as u8, inv));
                }
                let (nv, ne) = counts(&table);
                // One vertex per torus boundary and Euler characteristic zero.
                let ncomp = boundary_faces / 2;
                let faces = boundary_faces + (n - boundary_faces) / 2;
                let pre = nv == ncomp && nv as i64 - ne as i64 + faces as i64 - tets as i64 == 0;
                if !pre {
                    // fall through to the odometer
                } else if let Ok(t) = Triangulation::from_table(&table) {
                    let ok = t.is_connected()
                        && t.is_valid()
                        && t.orientable
                        && t.vertices.iter().all(|v| v.manifold_link())
                        && t.is_minimal_vertex()
                        && t.components.iter().all(|c| c.one_vertex_torus);
                    if ok {
                        found.entry(t.canonical_hash()).or_insert(t);
                    }
                }
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < options[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
            }
        }
    }
    found
}

fn main() {
    let tets: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    for bf in [2usize, 4] {
        let found = search(tets, bf);
        println!("== {tets} tets, {bf} boundary faces: {} candidates", found.len());
        for t in found.values() {
            let t = Triangulation::from_table(&t.canonical_table()).unwrap();
            let audit = audit_zero_efficiency(&t).unwrap();
            let basis = enumerate_fundamental_solutions(&t, None, &Budget::default()).unwrap();
            let mut kinds = Vec::new();
            for f in &basis.fundamentals {
                let sg = reconstruct(f, &t).unwrap();
                let c = classify(&sg);
                kinds.push(format!("{}{}", sg.euler, if c.is_disk { "D" } else if c.is_annulus_or_mobius { "A" } else { "" }));
            }
            println!(
                "{} edges={} spheres={} disks={} compress={} fund={} [{}]",
                t.to_json(),
                t.edges.len(),
                audit.nonlinking_spheres.len(),
                audit.nonlinking_disks.len(),
                audit.compressing_disks.len(),
                basis.len(),
                kinds.join(" ")
            );
        }
    }
}
