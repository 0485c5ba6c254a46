//! Brute-force oracles that share no code with the library's linear algebra:
//! everything here is decided by enumerating vectors or matrices.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use cslab::algebra::Algebra;
use cslab::linalg::Matrix;
use cslab::module::RightModule;

/// All vectors of length `k` over GF(p), in counter order.
pub fn all_vectors(p: u32, k: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![0u8; k]];
    for i in 0..k {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for v in &out {
            for c in 0..p {
                let mut w = v.clone();
                w[i] = c as u8;
                next.push(w);
            }
        }
        out = next;
    }
    out
}

pub fn vec_mat(p: u32, v: &[u8], m: &Matrix) -> Vec<u8> {
    (0..m.cols()).map(|c| (v.iter().enumerate().map(|(r, &x)| x as u32 * m.get(r, c)).sum::<u32>() % p) as u8).collect()
}

pub fn mat_mul(p: u32, a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(p, a.rows(), b.cols());
    for r in 0..a.rows() {
        for c in 0..b.cols() {
            let s: u32 = (0..a.cols()).map(|k| a.get(r, k) * b.get(k, c)).sum();
            out.set(r, c, s % p);
        }
    }
    out
}

/// Every element of the row space of `m`.
pub fn row_space_set(m: &Matrix) -> BTreeSet<Vec<u8>> {
    all_vectors(m.p(), m.rows()).iter().map(|c| vec_mat(m.p(), c, m)).collect()
}

/// `log_p(n)` for an exact power of `p`.
pub fn log_p(p: u32, mut n: usize) -> usize {
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % p as usize, 0, "{n} is not a power of {p}");
        n /= p as usize;
        k += 1;
    }
    k
}

pub fn rank_oracle(m: &Matrix) -> usize {
    log_p(m.p(), row_space_set(m).len())
}

/// Number of `x` with `m · xᵀ = 0`.
pub fn right_kernel_size(m: &Matrix) -> usize {
    all_vectors(m.p(), m.cols()).iter().filter(|x| vec_mat(m.p(), x, &m.transpose()).iter().all(|&v| v == 0)).count()
}

/// Whether `actions` define a right module: unit acts as the identity and
/// `ρ(a_i)ρ(a_j) = Σ_k c_ijk ρ(a_k)`.
pub fn is_module(a: &Algebra, dim: usize, actions: &[Matrix]) -> bool {
    let p = a.p();
    let n = a.dim();
    let mut unit = Matrix::zeros(p, dim, dim);
    for (k, &u) in a.unit().iter().enumerate() {
        for r in 0..dim {
            for c in 0..dim {
                let v = (unit.get(r, c) + u as u32 * actions[k].get(r, c)) % p;
                unit.set(r, c, v);
            }
        }
    }
    if unit != Matrix::identity(p, dim) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = mat_mul(p, &actions[i], &actions[j]);
            let mut rhs = Matrix::zeros(p, dim, dim);
            for k in 0..n {
                let c = a.constant(i, j, k);
                for r in 0..dim {
                    for s in 0..dim {
                        rhs.set(r, s, (rhs.get(r, s) + c * actions[k].get(r, s)) % p);
                    }
                }
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn matrix_from(p: u32, rows: usize, cols: usize, v: &[u8]) -> Matrix {
    let mut m = Matrix::zeros(p, rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, v[r * cols + c] as u32);
        }
    }
    m
}

/// `dim Hom(m, n)` by testing every matrix.
pub fn hom_dim_oracle(m: &RightModule, n: &RightModule) -> usize {
    let p = m.p();
    let (a, b) = (m.dim(), n.dim());
    let count = all_vectors(p, a * b)
        .iter()
        .filter(|v| {
            let x = matrix_from(p, a, b, v);
            (0..m.algebra().dim()).all(|i| mat_mul(p, m.action(i), &x) == mat_mul(p, &x, n.action(i)))
        })
        .count();
    log_p(p, count)
}

/// `dim Ext¹(top, bottom)`: counts cochains giving a module structure on
/// the block matrices `[[ρ_top, δ], [0, ρ_bottom]]` and divides by the
/// number of coboundaries `ρ_top X − X ρ_bottom`.
pub fn ext_dim_oracle(top: &RightModule, bottom: &RightModule) -> usize {
    let a = top.algebra();
    let p = a.p();
    let (s, t, n) = (top.dim(), bottom.dim(), a.dim());
    let block = |deltas: &[Matrix]| -> Vec<Matrix> {
        (0..n)
            .map(|i| {
                let mut x = Matrix::zeros(p, s + t, s + t);
                x.set_block(0, 0, top.action(i));
                x.set_block(0, s, &deltas[i]);
                x.set_block(s, s, bottom.action(i));
                x
            })
            .collect()
    };
    let mut cocycles = 0usize;
    for v in all_vectors(p, n * s * t) {
        let deltas: Vec<Matrix> = (0..n).map(|i| matrix_from(p, s, t, &v[i * s * t..(i + 1) * s * t])).collect();
        if is_module(a, s + t, &block(&deltas)) {
            cocycles += 1;
        }
    }
    let mut boundaries = BTreeSet::new();
    for v in all_vectors(p, s * t) {
        let x = matrix_from(p, s, t, &v);
        let image: Vec<Vec<u8>> = (0..n)
            .map(|i| {
                let d = mat_mul(p, top.action(i), &x).sub(&mat_mul(p, &x, bottom.action(i)));
                d.as_slice().to_vec()
            })
            .collect();
        boundaries.insert(image);
    }
    log_p(p, cocycles) - log_p(p, boundaries.len())
}

/// Every submodule of `m` as a set of vectors.
pub fn submodule_sets(m: &RightModule) -> BTreeSet<BTreeSet<Vec<u8>>> {
    let p = m.p();
    let vectors = all_vectors(p, m.dim());
    let mut found = BTreeSet::new();
    // a submodule is the closure of a set of generators; close every single
    // vector, then sums of pairs until stable
    let close = |gens: &BTreeSet<Vec<u8>>| -> BTreeSet<Vec<u8>> {
        let mut set = gens.clone();
        set.insert(vec![0; m.dim()]);
        loop {
            let mut next = set.clone();
            for x in &set {
                for y in &set {
                    next.insert(x.iter().zip(y).map(|(a, b)| ((a + b) as u32 % p) as u8).collect());
                }
                for i in 0..m.algebra().dim() {
                    next.insert(vec_mat(p, x, m.action(i)));
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    };
    let cyclic: Vec<BTreeSet<Vec<u8>>> = vectors.iter().map(|v| close(&[v.clone()].into())).collect();
    for c in &cyclic {
        found.insert(c.clone());
    }
    loop {
        let mut added = false;
        let current: Vec<_> = found.iter().cloned().collect();
        for x in &current {
            for c in &cyclic {
                let s = close(&x.union(c).cloned().collect());
                if found.insert(s) {
                    added = true;
                }
            }
        }
        if !added {
            return found;
        }
    }
}

/// Length of the longest chain in the submodule lattice.
pub fn length_oracle(m: &RightModule) -> usize {
    let subs: Vec<BTreeSet<Vec<u8>>> = submodule_sets(m).into_iter().collect();
    let mut order: Vec<usize> = (0..subs.len()).collect();
    order.sort_by_key(|&i| subs[i].len());
    let mut best = vec![0usize; subs.len()];
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[..pos] {
            if subs[j].len() < subs[i].len() && subs[j].is_subset(&subs[i]) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}
