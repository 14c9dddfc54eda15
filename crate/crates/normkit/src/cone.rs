//! Exact cone machinery: filtered double description, integer kernels, Hermite reduction
//! and Hilbert bases of simplicial and general pointed cones.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Bits {
        Bits(vec![0; (n + 63) / 64])
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn or(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a | b).collect())
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Coordinate groups of which at most one may be nonzero (the quad triples).
#[derive(Clone, Debug)]
pub(crate) struct Exclusions {
    pub groups: Vec<[usize; 3]>,
}

impl Exclusions {
    pub fn allows(&self, support: &Bits) -> bool {
        self.groups.iter().all(|g| g.iter().filter(|&&i| support.get(i)).count() <= 1)
    }
}

fn support_of(v: &[BigInt]) -> Bits {
    let mut b = Bits::new(v.len());
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            b.set(i);
        }
    }
    b
}

fn primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(x);
        if g.is_one() {
            return;
        }
    }
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Row-reduction helper: returns the rank of the integer rows.
pub(crate) fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            for k in c..ncols {
                let val = &m[i][k] * &a - &m[r][k] * &b;
                m[i][k] = val;
            }
            primitive(&mut m[i]);
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Drop rows linearly dependent on earlier rows.
pub(crate) fn independent_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut kept: Vec<Vec<BigInt>> = Vec::new();
    for row in rows {
        let mut trial = kept.clone();
        trial.push(row.clone());
        if rank(&trial) == trial.len() {
            kept = trial;
        }
    }
    kept
}

/// Extreme rays of {x >= 0 : rows.x = 0} whose supports pass the exclusions,
/// as primitive integer vectors in lexicographic order.
/// `max_pairs` caps the total number of ray pairs examined.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], n: usize, excl: &Exclusions, max_rays: usize, max_pairs: u64) -> Option<Vec<Vec<BigInt>>> {
    let rows = independent_rows(rows);
    let small: Option<Vec<Vec<i128>>> = rows.iter().map(|r| r.iter().map(|x| x.to_i128()).collect()).collect();
    if let Some(small) = small {
        match dd::<i128>(&small, n, excl, max_rays, max_pairs) {
            Ok(out) => return out.map(|o| o.into_iter().map(|v| v.into_iter().map(BigInt::from).collect()).collect()),
            Err(Overflow) => {}
        }
    }
    dd::<BigInt>(&rows, n, excl, max_rays, max_pairs).unwrap_or(None)
}

struct Overflow;

trait Num: Clone + Ord + Sized {
    fn nil() -> Self;
    fn unit() -> Self;
    fn mul_add(a: &Self, x: &Self, b: &Self, y: &Self) -> Result<Self, Overflow>;
    fn dot(a: &[Self], b: &[Self]) -> Result<Self, Overflow>;
    fn neg(&self) -> Self;
    fn sign(&self) -> i8;
    fn primitive(v: &mut [Self]);
}

impl Num for i128 {
    fn nil() -> i128 {
        0
    }
    fn unit() -> i128 {
        1
    }
    fn mul_add(a: &i128, x: &i128, b: &i128, y: &i128) -> Result<i128, Overflow> {
        let l = a.checked_mul(*x).ok_or(Overflow)?;
        let r = b.checked_mul(*y).ok_or(Overflow)?;
        l.checked_add(r).ok_or(Overflow)
    }
    fn dot(a: &[i128], b: &[i128]) -> Result<i128, Overflow> {
        let mut s: i128 = 0;
        for (x, y) in a.iter().zip(b) {
            if *x != 0 && *y != 0 {
                s = s.checked_add(x.checked_mul(*y).ok_or(Overflow)?).ok_or(Overflow)?;
            }
        }
        Ok(s)
    }
    fn neg(&self) -> i128 {
        -self
    }
    fn sign(&self) -> i8 {
        self.signum() as i8
    }
    fn primitive(v: &mut [i128]) {
        let mut g: i128 = 0;
        for x in v.iter() {
            g = g.gcd(x);
            if g == 1 {
                return;
            }
        }
        if g > 1 {
            for x in v.iter_mut() {
                *x /= g;
            }
        }
    }
}

impl Num for BigInt {
    fn nil() -> BigInt {
        BigInt::from(0)
    }
    fn unit() -> BigInt {
        BigInt::from(1)
    }
    fn mul_add(a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt) -> Result<BigInt, Overflow> {
        Ok(a * x + b * y)
    }
    fn dot(a: &[BigInt], b: &[BigInt]) -> Result<BigInt, Overflow> {
        Ok(a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum())
    }
    fn neg(&self) -> BigInt {
        -self
    }
    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn primitive(v: &mut [BigInt]) {
        primitive(v)
    }
}

/// Double description with greedy row order (fewest new pairs first) and the
/// exclusion filter applied to every intermediate ray.
fn dd<T: Num>(rows: &[Vec<T>], n: usize, excl: &Exclusions, max_rays: usize, max_pairs: u64) -> Result<Option<Vec<Vec<T>>>, Overflow> {
    struct Ray<T> {
        v: Vec<T>,
        zeros: Bits,
    }
    let words = (n + 63) / 64;
    let mut rays: Vec<Ray<T>> = (0..n)
        .map(|i| {
            let mut v = vec![T::nil(); n];
            v[i] = T::unit();
            let mut zeros = Bits::new(n);
            for j in 0..n {
                if j != i {
                    zeros.set(j);
                }
            }
            Ray { v, zeros }
        })
        .collect();
    let mut remaining: Vec<&Vec<T>> = rows.iter().collect();
    let mut and = vec![0u64; words];
    let mut done = 0;
    let mut pairs = 0u64;
    while !remaining.is_empty() {
        let mut best: Option<(usize, usize, Vec<i8>, Vec<T>)> = None;
        for (ri, h) in remaining.iter().enumerate() {
            let vals: Vec<T> = rays.iter().map(|r| T::dot(&r.v, h)).collect::<Result<_, _>>()?;
            let signs: Vec<i8> = vals.iter().map(|x| x.sign()).collect();
            let p = signs.iter().filter(|&&s| s > 0).count();
            let q = signs.iter().filter(|&&s| s < 0).count();
            let cost = p * q;
            if best.as_ref().map_or(true, |b| cost < b.1) {
                best = Some((ri, cost, signs, vals));
            }
        }
        let (ri, _, signs, vals) = best.expect("rows remain");
        remaining.remove(ri);
        done += 1;
        let dim_after = n - done;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| signs[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| signs[i] < 0).collect();
        pairs += (pos.len() * neg.len()) as u64;
        if pairs > max_pairs {
            return Ok(None);
        }
        let counts: Vec<usize> = rays.iter().map(|r| r.zeros.count()).collect();
        let mut next: Vec<Ray<T>> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let mut zc = 0;
                for w in 0..words {
                    and[w] = rays[p].zeros.0[w] & rays[q].zeros.0[w];
                    zc += and[w].count_ones() as usize;
                }
                // Adjacent rays of the new cone share at least dim_after - 1 tight facets.
                if zc + 1 < dim_after {
                    continue;
                }
                let in_supp = |i: usize| and[i / 64] >> (i % 64) & 1 == 0;
                if !excl.groups.iter().all(|g| g.iter().filter(|&&i| in_supp(i)).count() <= 1) {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(i, r)| {
                    i == p || i == q || counts[i] < zc || !r.zeros.0.iter().zip(&and).all(|(a, b)| a & b == *b)
                });
                if !adjacent {
                    continue;
                }
                let a = &vals[p];
                let b = vals[q].neg();
                let mut v: Vec<T> = rays[q].v.iter().zip(&rays[p].v).map(|(x, y)| T::mul_add(a, x, &b, y)).collect::<Result<_, _>>()?;
                T::primitive(&mut v);
                next.push(Ray { v, zeros: Bits(and.clone()) });
            }
            if next.len() > max_rays {
                return Ok(None);
            }
        }
        for (i, r) in rays.into_iter().enumerate() {
            if signs[i] == 0 {
                next.push(r);
            }
        }
        if next.len() > max_rays {
            return Ok(None);
        }
        rays = next;
    }
    let mut out: Vec<Vec<T>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(Some(out))
}

/// Z-basis (as columns) of the integer kernel of `a` (m x n), via unimodular column reduction.
pub(crate) fn integer_kernel(a: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    // Columns of U, stored as vectors.
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut c = vec![BigInt::zero(); n];
            c[j] = BigInt::one();
            c
        })
        .collect();
    let mut col = 0;
    for i in 0..m.len() {
        if col == n {
            break;
        }
        loop {
            let piv = (col..n).filter(|&j| !m[i][j].is_zero()).min_by_key(|&j| m[i][j].abs());
            let Some(j) = piv else { break };
            swap_cols(&mut m, &mut u, col, j);
            let mut done = true;
            for j in col + 1..n {
                if m[i][j].is_zero() {
                    continue;
                }
                let q = m[i][j].div_floor(&m[i][col]);
                sub_col(&mut m, &mut u, j, col, &q);
                if !m[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                col += 1;
                break;
            }
        }
    }
    let mut basis: Vec<Vec<BigInt>> = u[col..].to_vec();
    size_reduce(&mut basis);
    basis
}

fn swap_cols(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    u.swap(a, b);
}

/// col_j -= q * col_k
fn sub_col(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let t = &row[k] * q;
        row[j] -= t;
    }
    let ck = u[k].clone();
    for (x, y) in u[j].iter_mut().zip(ck) {
        *x -= y * q;
    }
}

/// Cheap pairwise size reduction to keep kernel bases small.
fn size_reduce(basis: &mut [Vec<BigInt>]) {
    let norm = |v: &Vec<BigInt>| -> BigInt { v.iter().map(|x| x * x).sum() };
    for _ in 0..4 {
        let mut changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let nj = norm(&basis[j]);
                if nj.is_zero() {
                    continue;
                }
                let dot: BigInt = basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).sum();
                // Round dot / nj to nearest.
                let two = BigInt::from(2);
                let q = (&dot * &two + &nj).div_floor(&(&nj * &two));
                if !q.is_zero() {
                    let bj = basis[j].clone();
                    for (x, y) in basis[i].iter_mut().zip(bj) {
                        *x -= y * &q;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Solve `cols * c = target` for c, where `cols` are linearly independent integer vectors.
pub(crate) fn solve_in_basis(cols: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigRational>> {
    let d = cols.len();
    let n = target.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| BigRational::from_integer(c[i].clone())).collect();
            row.push(BigRational::from_integer(target[i].clone()));
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..d {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else { return None };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for k in c..=d {
            m[r][k] = &m[r][k] * &inv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=d {
                    let t = &m[r][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if (r..n).any(|i| !m[i][d].is_zero()) {
        return None;
    }
    Some((0..d).map(|c| m[c][d].clone()).collect())
}

/// Pulling triangulation of the pointed cone spanned by `ids` (sorted), using coordinate
/// hyperplanes of the ambient orthant as the facet-defining inequalities.
pub(crate) fn triangulate(ids: &[usize], dim: usize, vecs: &[Vec<BigInt>], memo: &mut HashMap<Vec<usize>, usize>) -> Vec<Vec<usize>> {
    if ids.len() == dim {
        return vec![ids.to_vec()];
    }
    let v0 = ids[0];
    let n = vecs[v0].len();
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for j in 0..n {
        if vecs[v0][j].is_zero() {
            continue;
        }
        let f: Vec<usize> = ids.iter().copied().filter(|&r| vecs[r][j].is_zero()).collect();
        if f.is_empty() || facets.contains(&f) {
            continue;
        }
        let rk = *memo.entry(f.clone()).or_insert_with(|| rank(&f.iter().map(|&r| vecs[r].clone()).collect::<Vec<_>>()));
        if rk == dim - 1 {
            facets.insert(f);
        }
    }
    let mut out = Vec::new();
    for f in facets {
        for mut s in triangulate(&f, dim - 1, vecs, memo) {
            s.insert(0, v0);
            out.push(s);
        }
    }
    out
}

/// Nonzero lattice points of the half-open parallelepiped spanned by the columns of `r`
/// (square, full rank, in lattice coordinates), or None if there are more than `cap`.
pub(crate) fn parallelepiped_points(r: &[Vec<BigInt>], cap: usize) -> Option<Vec<Vec<BigInt>>> {
    let d = r.len();
    // Columns as vectors: r[j] is column j.
    let mut m: Vec<Vec<BigInt>> = (0..d).map(|i| (0..d).map(|j| r[j][i].clone()).collect()).collect();
    // Column Hermite reduction to lower triangular form; only the diagonal is needed.
    let mut diag = Vec::with_capacity(d);
    for i in 0..d {
        loop {
            let piv = (i..d).filter(|&j| !m[i][j].is_zero()).min_by_key(|&j| m[i][j].abs());
            let Some(j) = piv else { return Some(Vec::new()) };
            if j != i {
                for row in m.iter_mut() {
                    row.swap(i, j);
                }
            }
            let mut done = true;
            for j in i + 1..d {
                if m[i][j].is_zero() {
                    continue;
                }
                let q = m[i][j].div_floor(&m[i][i]);
                for row in m.iter_mut() {
                    let t = &row[i] * &q;
                    row[j] -= t;
                }
                if !m[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        diag.push(m[i][i].abs());
    }
    let total = diag.iter().fold(BigInt::one(), |a, b| a * b);
    if total > BigInt::from(cap as u64 + 1) {
        return None;
    }
    let inv = inverse(r)?;
    let mut out = Vec::new();
    let mut q = vec![BigInt::zero(); d];
    loop {
        if q.iter().any(|x| !x.is_zero()) {
            // lambda = R^{-1} q, reduced mod 1.
            let mut p = vec![BigInt::zero(); d];
            let mut frac = Vec::with_capacity(d);
            for i in 0..d {
                let lam: BigRational = (0..d).map(|k| &inv[i][k] * BigRational::from_integer(q[k].clone())).sum();
                frac.push(&lam - lam.floor());
            }
            for i in 0..d {
                let mut acc = BigRational::zero();
                for (j, f) in frac.iter().enumerate() {
                    acc += f * BigRational::from_integer(r[j][i].clone());
                }
                debug_assert!(acc.is_integer());
                p[i] = acc.to_integer();
            }
            if p.iter().any(|x| !x.is_zero()) {
                out.push(p);
            }
        }
        // Advance the mixed-radix counter.
        let mut k = 0;
        loop {
            if k == d {
                return Some(out);
            }
            q[k] += 1;
            if q[k] < diag[k] {
                break;
            }
            q[k] = BigInt::zero();
            k += 1;
        }
    }
}

/// Inverse of the matrix whose columns are `cols`, as rows of rationals.
fn inverse(cols: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let d = cols.len();
    let mut m: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..d).map(|j| BigRational::from_integer(cols[j][i].clone())).collect();
            for k in 0..d {
                row.push(if k == i { BigRational::one() } else { BigRational::zero() });
            }
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let iv = m[c][c].recip();
        for k in 0..2 * d {
            m[c][k] = &m[c][k] * &iv;
        }
        for i in 0..d {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..2 * d {
                    let t = &m[c][k] * &f;
                    m[i][k] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[d..].to_vec()).collect())
}

/// Maximal cliques of a graph on `0..n` (Bron-Kerbosch with pivoting), each sorted.
pub(crate) fn maximal_cliques(n: usize, adj: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn bk(r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, adj: &[Vec<bool>], out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort();
            out.push(c);
            return;
        }
        let pivot = p.iter().chain(x.iter()).copied().max_by_key(|&u| p.iter().filter(|&&v| adj[u][v]).count()).unwrap();
        let cand: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        let mut p = p;
        let mut x = x;
        for v in cand {
            let np: Vec<usize> = p.iter().copied().filter(|&w| adj[v][w]).collect();
            let nx: Vec<usize> = x.iter().copied().filter(|&w| adj[v][w]).collect();
            r.push(v);
            bk(r, np, nx, adj, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    bk(&mut Vec::new(), (0..n).collect(), Vec::new(), adj, &mut out);
    out.sort();
    out
}

pub(crate) struct HilbertOutcome {
    pub elements: Vec<Vec<BigInt>>,
    /// Indices of cliques not processed because the budget ran out.
    pub unexplored: Vec<usize>,
    pub cliques: usize,
}

/// Hilbert basis of the admissible part of {x >= 0 : rows.x = 0}, given its admissible
/// extreme rays. Each maximal admissible face is a full cone of its own; lattice points of
/// its fundamental parallelepipeds generate it, and irreducible ones are kept.
pub(crate) fn hilbert_basis(rows: &[Vec<BigInt>], n: usize, rays: &[Vec<BigInt>], excl: &Exclusions, cap: usize) -> HilbertOutcome {
    let supports: Vec<Bits> = rays.iter().map(|r| support_of(r)).collect();
    let k = rays.len();
    let mut adj = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            adj[i][j] = i != j && excl.allows(&supports[i].or(&supports[j]));
        }
    }
    let cliques = if k == 0 { Vec::new() } else { maximal_cliques(k, &adj) };
    let mut candidates: BTreeSet<Vec<BigInt>> = rays.iter().cloned().collect();
    let mut used = 0usize;
    let mut unexplored = Vec::new();
    for (ci, clique) in cliques.iter().enumerate() {
        if used > cap {
            unexplored.push(ci);
            continue;
        }
        let mut supp = Bits::new(n);
        for &i in clique {
            supp = supp.or(&supports[i]);
        }
        let cols: Vec<usize> = (0..n).filter(|&j| supp.get(j)).collect();
        let sub: Vec<Vec<BigInt>> = rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
        let kernel = integer_kernel(&sub, cols.len());
        let d = kernel.len();
        let local: Vec<Vec<BigInt>> = clique.iter().map(|&i| cols.iter().map(|&j| rays[i][j].clone()).collect()).collect();
        let coords: Vec<Vec<BigInt>> = local
            .iter()
            .map(|v| {
                solve_in_basis(&kernel, v)
                    .expect("ray lies in its face lattice")
                    .into_iter()
                    .map(|x| {
                        debug_assert!(x.is_integer());
                        x.to_integer()
                    })
                    .collect()
            })
            .collect();
        let mut memo = HashMap::new();
        let ids: Vec<usize> = (0..clique.len()).collect();
        let simplices = triangulate(&ids, d, &local, &mut memo);
        let mut over = false;
        for s in simplices {
            let r: Vec<Vec<BigInt>> = s.iter().map(|&i| coords[i].clone()).collect();
            let Some(points) = parallelepiped_points(&r, cap.saturating_sub(used)) else {
                over = true;
                break;
            };
            used += points.len();
            for p in points {
                let mut x = vec![BigInt::zero(); n];
                for (li, &j) in cols.iter().enumerate() {
                    let mut acc = BigInt::zero();
                    for (c, kv) in kernel.iter().enumerate() {
                        acc += &kv[li] * &p[c];
                    }
                    x[j] = acc;
                }
                debug_assert!(x.iter().all(|v| !v.is_negative()));
                candidates.insert(x);
            }
        }
        if over {
            unexplored.push(ci);
        }
    }
    let cands: Vec<Vec<BigInt>> = candidates.into_iter().collect();
    let elements = irreducible(&cands);
    HilbertOutcome { elements, unexplored, cliques: cliques.len() }
}

/// Elements of `cands` with no other candidate below them componentwise.
pub(crate) fn irreducible(cands: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut order: Vec<usize> = (0..cands.len()).collect();
    let sums: Vec<BigInt> = cands.iter().map(|v| v.iter().sum()).collect();
    order.sort_by(|&a, &b| sums[a].cmp(&sums[b]));
    let mut kept: Vec<usize> = Vec::new();
    for &i in &order {
        let below = kept.iter().any(|&j| cands[j].iter().zip(&cands[i]).all(|(a, b)| a <= b));
        if !below {
            kept.push(i);
        }
    }
    let mut out: Vec<Vec<BigInt>> = kept.into_iter().map(|i| cands[i].clone()).collect();
    out.sort();
    out
}
