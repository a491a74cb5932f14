//! Brute-force oracles shared by the integration tests. None of these use
//! the closure enumeration or the Möbius recursion they are checked against.

#![allow(dead_code)]

use std::collections::BTreeSet;

use arrangelat::exactalg::{Matrix, Rationals};
use arrangelat::lattice::Flat;
use arrangelat::Arrangement;

/// Determinant by Leibniz expansion over all permutations.
pub fn leibniz_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0i128;
    permutations(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let prod: i128 = (0..n).map(|i| m[i][p[i]]).product();
        total += if inversions % 2 == 0 { prod } else { -prod };
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

/// Rank as the largest `k` with a nonzero `k × k` minor.
pub fn brute_force_rank(m: &[Vec<i128>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (1..=rows.min(cols))
        .rev()
        .find(|&k| {
            subsets(rows, k).iter().any(|rs| {
                subsets(cols, k).iter().any(|cs| {
                    let minor: Vec<Vec<i128>> =
                        rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                    leibniz_det(&minor) != 0
                })
            })
        })
        .unwrap_or(0)
}

/// Every nonempty intersection of a subset of hyperplanes, over all `2^m`
/// subsets, deduplicated by canonical system.
pub fn subset_flats(a: &Arrangement) -> BTreeSet<Flat<Rationals>> {
    let rows = a.augmented_rows();
    let n = a.ambient_dim();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << rows.len() {
        let chosen: Vec<_> =
            (0..rows.len()).filter(|i| mask & (1 << i) != 0).map(|i| rows[i].clone()).collect();
        let m = Matrix::from_rows(Rationals, n + 1, chosen).unwrap();
        if let Some(f) = Flat::from_system(&m) {
            out.insert(f);
        }
    }
    out
}

/// Bell numbers via the Bell triangle.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 1..n {
        let mut next = vec![*row.last().unwrap()];
        for v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    *row.last().unwrap()
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Coefficients of `(1+t)(1+2t)…(1+(n−1)t)`, constant first.
pub fn braid_product(n: usize) -> Vec<i128> {
    let mut poly = vec![1i128];
    for k in 1..n as i128 {
        let mut next = vec![0i128; poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] += k * c;
        }
        poly = next;
    }
    poly
}
