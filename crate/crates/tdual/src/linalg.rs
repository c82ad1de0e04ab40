//! Dense exact linear algebra over ℚ and ℤ. Pivoting is lexicographic so
//! every routine is deterministic.

use num_traits::{One, Signed, Zero};

use crate::scalars::{rat_int, Int, Rat};

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(pr.iter()) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_q(a: &[Vec<Rat>], ncols: usize) -> usize {
    let mut m = a.to_vec();
    rref(&mut m, ncols).len()
}

pub fn rank_int(a: &[Vec<Int>], ncols: usize) -> usize {
    rank_q(&to_rat(a), ncols)
}

pub fn to_rat(a: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    a.iter().map(|r| r.iter().map(rat_int).collect()).collect()
}

/// Solves A x = b over ℚ, free variables set to zero.
pub fn solve_q(a: &[Vec<Rat>], ncols: usize, b: &[Rat]) -> Option<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols);
    for row in m.iter().skip(pivots.len()) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][ncols].clone();
    }
    Some(x)
}

/// Basis of {x : A x = 0}.
pub fn kernel_q(a: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Integer basis of {y : yᵀ A = 0}, each vector scaled to clear denominators.
pub fn left_kernel_int(a: &[Vec<Int>], nrows: usize, ncols: usize) -> Vec<Vec<Int>> {
    let at: Vec<Vec<Rat>> = (0..ncols).map(|c| (0..nrows).map(|r| rat_int(&a[r][c])).collect()).collect();
    kernel_q(&at, nrows)
        .into_iter()
        .map(|v| {
            let d = crate::scalars::common_denom(v.iter());
            v.iter().map(|x| (x * rat_int(&d)).to_integer()).collect()
        })
        .collect()
}

/// Diagonal reduction P A Q = D over ℤ (no divisibility normalisation).
pub struct Diagonal {
    pub p: Vec<Vec<Int>>,
    pub q: Vec<Vec<Int>>,
    pub d: Vec<Int>,
}

fn identity(n: usize) -> Vec<Vec<Int>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()).collect()
}

pub fn diagonalize(a: &[Vec<Int>], nrows: usize, ncols: usize) -> Diagonal {
    let mut m: Vec<Vec<Int>> = a.to_vec();
    let mut p = identity(nrows);
    let mut q = identity(ncols);
    let mut d = Vec::new();
    let k = nrows.min(ncols);
    for t in 0..k {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !m[i][j].is_zero() && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(t, bi);
        p.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        for row in q.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if m[i][t].is_zero() {
                    continue;
                }
                let f = floor_div(&m[i][t], &m[t][t]);
                row_sub(&mut m, i, t, &f);
                row_sub(&mut p, i, t, &f);
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    p.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..ncols {
                if m[t][j].is_zero() {
                    continue;
                }
                let f = floor_div(&m[t][j], &m[t][t]);
                col_sub(&mut m, j, t, &f);
                col_sub(&mut q, j, t, &f);
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in q.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        d.push(m[t][t].clone());
    }
    Diagonal { p, q, d }
}

fn floor_div(a: &Int, b: &Int) -> Int {
    num_integer::Integer::div_floor(a, b)
}

fn row_sub(m: &mut [Vec<Int>], i: usize, t: usize, f: &Int) {
    let src = m[t].clone();
    for (x, y) in m[i].iter_mut().zip(src.iter()) {
        *x -= f * y;
    }
}

fn col_sub(m: &mut [Vec<Int>], j: usize, t: usize, f: &Int) {
    for row in m.iter_mut() {
        let y = row[t].clone();
        row[j] -= f * y;
    }
}

/// Solves A x = b with x integral; b may be rational.
pub fn solve_z(a: &[Vec<Int>], nrows: usize, ncols: usize, b: &[Rat]) -> Option<Vec<Int>> {
    let dg = diagonalize(a, nrows, ncols);
    let pb: Vec<Rat> = dg
        .p
        .iter()
        .map(|row| row.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + rat_int(x) * y))
        .collect();
    let mut y = vec![Int::zero(); ncols];
    for (i, v) in pb.iter().enumerate() {
        if i < dg.d.len() {
            let yi = v / rat_int(&dg.d[i]);
            if !yi.is_integer() {
                return None;
            }
            y[i] = yi.to_integer();
        } else if !v.is_zero() {
            return None;
        }
    }
    Some(
        dg.q
            .iter()
            .map(|row| row.iter().zip(&y).fold(Int::zero(), |acc, (x, yy)| acc + x * yy))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};

    fn zm(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn q_solve_and_rank() {
        let a = to_rat(&zm(&[&[1, 1], &[1, -1], &[2, 0]]));
        let x = solve_q(&a, 2, &[rat(3, 1), rat(1, 1), rat(4, 1)]).unwrap();
        assert_eq!(x, vec![rat(2, 1), rat(1, 1)]);
        assert!(solve_q(&a, 2, &[rat(3, 1), rat(1, 1), rat(5, 1)]).is_none());
        assert_eq!(rank_q(&a, 2), 2);
        assert_eq!(kernel_q(&a, 2).len(), 0);
    }

    #[test]
    fn z_solve_detects_divisibility() {
        let a = zm(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve_z(&a, 2, 2, &[rat(4, 1), rat(9, 1)]), Some(vec![int(2), int(3)]));
        assert!(solve_z(&a, 2, 2, &[rat(1, 1), rat(9, 1)]).is_none());
        let a = zm(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let x = solve_z(&a, 3, 3, &[rat(2, 1), rat(-6, 1), rat(10, 1)]).unwrap();
        let ax: Vec<Int> = a.iter().map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum()).collect();
        assert_eq!(ax, vec![int(2), int(-6), int(10)]);
    }

    #[test]
    fn diagonal_identity() {
        let a = zm(&[&[3, 5], &[7, 11], &[1, 1]]);
        let dg = diagonalize(&a, 3, 2);
        let pa: Vec<Vec<Int>> = dg.p.iter().map(|pr| (0..2).map(|c| pr.iter().zip(&a).map(|(x, r)| x * &r[c]).sum()).collect()).collect();
        let paq: Vec<Vec<Int>> = pa.iter().map(|r| (0..2).map(|c| r.iter().zip(&dg.q).map(|(x, qr)| x * &qr[c]).sum()).collect()).collect();
        for i in 0..3 {
            for j in 0..2 {
                if i != j {
                    assert!(paq[i][j].is_zero());
                }
            }
        }
        assert_eq!(dg.d.len(), 2);
    }
}
