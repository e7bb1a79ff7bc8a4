//! Dense exact linear algebra over Q and Z.
//!
//! Matrices are plain `Vec<Vec<_>>` in row-major order. Everything here is
//! exact; the only rounding in the crate happens when a determinant is
//! finally turned into a logarithm.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{Q, Z};

pub type QMatrix = Vec<Vec<Q>>;
pub type ZMatrix = Vec<Vec<Z>>;

pub fn to_q_rows(rows: &[Vec<Z>]) -> QMatrix {
    rows.iter()
        .map(|r| r.iter().cloned().map(Q::from_integer).collect())
        .collect()
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// columns; each returned row has a 1 in its pivot column and zeros in the
/// pivot columns of the other rows.
pub fn rref(mut rows: QMatrix, ncols: usize) -> (QMatrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    rref(rows.to_vec(), ncols).1.len()
}

/// Basis of the right kernel {x : M x = 0} over Q. Basis vector `j` has a 1
/// in the `j`-th free column and zeros in all other free columns; the free
/// columns are returned alongside.
pub fn rational_kernel(rows: &[Vec<Q>], ncols: usize) -> (QMatrix, Vec<usize>) {
    let (r, pivots) = rref(rows.to_vec(), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    (basis, free)
}

/// Integer points of the Q-span of `basis`, where the rows of `basis`
/// restricted to `unit_cols` form an identity matrix. The result is an
/// integer basis of (span ∩ Z^N), not yet in normal form.
pub fn integral_points(basis: &[Vec<Q>], unit_cols: &[usize]) -> ZMatrix {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let ncols = basis[0].len();
    // Rows of `coeffs` generate the lattice of admissible coefficient vectors.
    let mut coeffs: ZMatrix = (0..k)
        .map(|i| (0..k).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    for c in 0..ncols {
        if unit_cols.contains(&c) {
            continue;
        }
        let column: Vec<Q> = basis.iter().map(|b| b[c].clone()).collect();
        let m = crate::exact::denom_lcm(&column);
        if m.is_one() {
            continue;
        }
        let weights: Vec<Z> = column
            .iter()
            .map(|v| (v * Q::from_integer(m.clone())).to_integer())
            .collect();
        impose_congruence(&mut coeffs, &weights, &m);
    }
    coeffs
        .iter()
        .map(|a| {
            (0..ncols)
                .map(|c| {
                    let s: Q = a
                        .iter()
                        .zip(basis)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, b)| Q::from_integer(x.clone()) * &b[c])
                        .sum();
                    debug_assert!(s.is_integer());
                    s.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Restricts the lattice spanned by `rows` to {x : Σ x_j w_j ≡ 0 mod m}.
fn impose_congruence(rows: &mut ZMatrix, weights: &[Z], m: &Z) {
    let mut res: Vec<Z> = rows
        .iter()
        .map(|r| r.iter().zip(weights).map(|(a, w)| a * w).sum::<Z>().mod_floor(m))
        .collect();
    loop {
        let live: Vec<usize> = (0..rows.len()).filter(|&i| !res[i].is_zero()).collect();
        if live.is_empty() {
            return;
        }
        let pivot = *live.iter().min_by(|&&a, &&b| res[a].cmp(&res[b])).unwrap();
        if live.len() == 1 {
            let g = res[pivot].gcd(m);
            let factor = m / g;
            for x in rows[pivot].iter_mut() {
                *x *= &factor;
            }
            return;
        }
        let pr = res[pivot].clone();
        let prow = rows[pivot].clone();
        for &l in &live {
            if l == pivot {
                continue;
            }
            let qt = &res[l] / &pr;
            for (x, p) in rows[l].iter_mut().zip(&prow) {
                *x -= &qt * p;
            }
            res[l] = (&res[l] - &qt * &pr).mod_floor(m);
        }
    }
}

/// Row-style Hermite normal form of an integer matrix with zero rows
/// dropped: pivots strictly increase, are positive, and entries above each
/// pivot are reduced into [0, pivot).
pub fn hnf(mut rows: ZMatrix) -> ZMatrix {
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz
                .iter()
                .min_by(|&&a, &&b| rows[a][c].abs().cmp(&rows[b][c].abs()))
                .unwrap();
            rows.swap(r, p);
            if nz.len() == 1 {
                break;
            }
            let prow = rows[r].clone();
            for i in (r + 1)..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let qt = rows[i][c].div_floor(&prow[c]);
                for (x, p) in rows[i].iter_mut().zip(&prow) {
                    *x -= &qt * p;
                }
            }
        }
        if r == rows.len() || rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let prow = rows[r].clone();
        for i in 0..r {
            let qt = rows[i][c].div_floor(&prow[c]);
            if qt.is_zero() {
                continue;
            }
            for (x, p) in rows[i].iter_mut().zip(&prow) {
                *x -= &qt * p;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Saturated integer kernel {x ∈ Z^N : M x = 0} of a rational matrix, in HNF.
pub fn integer_kernel(rows: &[Vec<Q>], ncols: usize) -> ZMatrix {
    let (basis, free) = rational_kernel(rows, ncols);
    hnf(integral_points(&basis, &free))
}

/// Saturation (Q-span ∩ Z^N) of the lattice generated by integer vectors,
/// in HNF. Deterministic in the span alone.
pub fn saturate_rows(vectors: &[Vec<Z>], ncols: usize) -> ZMatrix {
    let (r, pivots) = rref(to_q_rows(vectors), ncols);
    hnf(integral_points(&r, &pivots))
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det(m: &[Vec<Q>]) -> Q {
    // Rows are scaled to integers, then Bareiss fraction-free elimination
    // keeps every intermediate an exact minor.
    let n = m.len();
    let mut scale = Z::one();
    let mut a: ZMatrix = m
        .iter()
        .map(|row| {
            let l = crate::exact::denom_lcm(row);
            let out = row
                .iter()
                .map(|x| (x * Q::from_integer(l.clone())).to_integer())
                .collect();
            scale *= l;
            out
        })
        .collect();
    let mut sign = false;
    let mut prev = Z::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            sign = !sign;
        }
        for i in (c + 1)..n {
            for j in (c + 1)..n {
                let v = (&a[i][j] * &a[c][c] - &a[i][c] * &a[c][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = Z::zero();
        }
        prev = a[c][c].clone();
    }
    let d = if n == 0 { Z::one() } else { prev };
    let d = if sign { -d } else { d };
    Q::new(d, scale)
}

/// X with A·X = B for nonsingular square A, by fraction-free forward
/// elimination on the integer-scaled system and rational back substitution.
pub fn solve(a: &[Vec<Q>], b: &[Vec<Q>]) -> Option<QMatrix> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut rows: ZMatrix = a
        .iter()
        .zip(b)
        .map(|(ar, br)| {
            let full: Vec<Q> = ar.iter().chain(br).cloned().collect();
            let l = crate::exact::denom_lcm(&full);
            full.iter()
                .map(|x| (x * Q::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut prev = Z::one();
    for c in 0..n {
        let p = (c..n).find(|&i| !rows[i][c].is_zero())?;
        rows.swap(p, c);
        for i in (c + 1)..n {
            for j in (c + 1)..(n + m) {
                let v = (&rows[i][j] * &rows[c][c] - &rows[i][c] * &rows[c][j]) / &prev;
                rows[i][j] = v;
            }
            rows[i][c] = Z::zero();
        }
        prev = rows[c][c].clone();
    }
    let mut x = vec![vec![Q::zero(); m]; n];
    for i in (0..n).rev() {
        for col in 0..m {
            let mut acc = Q::from_integer(rows[i][n + col].clone());
            for j in (i + 1)..n {
                if !rows[i][j].is_zero() {
                    acc -= Q::from_integer(rows[i][j].clone()) * &x[j][col];
                }
            }
            x[i][col] = acc / Q::from_integer(rows[i][i].clone());
        }
    }
    Some(x)
}

/// Inverse of a nonsingular rational matrix (Gauss–Jordan).
pub fn inverse(m: &[Vec<Q>]) -> Option<QMatrix> {
    let n = m.len();
    let aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Coordinates x with Σ x_i basis_i = v, when v lies in the Q-span.
pub fn coordinates_in(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let k = basis.len();
    let n = v.len();
    if k == 0 {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    // Columns are basis vectors; last column is v.
    let rows: QMatrix = (0..n)
        .map(|c| {
            let mut r: Vec<Q> = basis.iter().map(|b| b[c].clone()).collect();
            r.push(v[c].clone());
            r
        })
        .collect();
    let (r, pivots) = rref(rows, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[k].clone();
    }
    Some(x)
}

/// Unimodular completion: given the rows of a k×r integer matrix whose
/// row span is saturated in Z^r, returns r−k further integer rows so that
/// all r rows form a basis of Z^r.
pub fn complete_basis(a: &[Vec<Z>], r: usize) -> ZMatrix {
    let k = a.len();
    let mut m: ZMatrix = a.to_vec();
    // `inv` tracks U^{-1} for the column operations M -> M U.
    let mut inv: ZMatrix = (0..r)
        .map(|i| (0..r).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    for (row, pc) in (0..k).zip(0..r) {
        for j in (pc + 1)..r {
            let b = m[row][j].clone();
            if b.is_zero() {
                continue;
            }
            let a0 = m[row][pc].clone();
            let eg = a0.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (bg, ag) = (&b / &g, &a0 / &g);
            for mrow in m.iter_mut() {
                let ci = mrow[pc].clone();
                let cj = mrow[j].clone();
                mrow[pc] = &x * &ci + &y * &cj;
                mrow[j] = -&bg * &ci + &ag * &cj;
            }
            let ri = inv[pc].clone();
            let rj = inv[j].clone();
            inv[pc] = ri.iter().zip(&rj).map(|(p, q)| &ag * p + &bg * q).collect();
            inv[j] = ri.iter().zip(&rj).map(|(p, q)| -&y * p + &x * q).collect();
        }
    }
    inv.split_off(k)
}

pub fn dot_q(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> QMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&l| !row[l].is_zero())
                        .map(|l| &row[l] * &b[l][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}
