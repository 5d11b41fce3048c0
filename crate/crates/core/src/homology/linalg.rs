//! Exact matrix rank over GF(2), GF(p) and the rationals.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank over GF(2) of a matrix whose rows are packed bit vectors.
pub fn rank_gf2(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let words = rows.first().map_or(0, |r| r.len());
    for col in 0..words * 64 {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[w] & b != 0 {
                for (x, y) in row[w..].iter_mut().zip(&pivot[w..]) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Rank over GF(p) of a dense matrix with entries already reduced mod `p`.
/// `p` must be prime and below 2^32.
pub fn rank_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = inv_mod(m[rank][col], p);
        for x in m[rank][col..].iter_mut() {
            *x = *x * inv % p;
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f != 0 {
                for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Runs in `i128` with checked arithmetic and restarts with arbitrary
/// precision integers on overflow, so the result is always exact.
pub fn rank_rational(m: &[Vec<i64>]) -> usize {
    let small: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match bareiss_i128(small) {
        Some(r) => r,
        None => {
            let big = m
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            bareiss_big(big)
        }
    }
}

fn bareiss_i128(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let pv = pivot[col];
        for row in tail.iter_mut() {
            let f = row[col];
            for j in col + 1..cols {
                let num = pv
                    .checked_mul(row[j])?
                    .checked_sub(f.checked_mul(pivot[j])?)?;
                debug_assert_eq!(num % prev, 0);
                row[j] = num / prev;
            }
            row[col] = 0;
        }
        prev = pv;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}

fn bareiss_big(mut m: Vec<Vec<BigInt>>) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let pv = pivot[col].clone();
        for row in tail.iter_mut() {
            let f = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                let num = &pv * &row[j] - &f * &pivot[j];
                row[j] = num / &prev;
            }
        }
        prev = pv;
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
