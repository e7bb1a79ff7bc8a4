//! LLL reduction over exact rationals, driven entirely by the Gram matrix
//! so that it works for any positive-definite rational metric.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{Q, Z};
use crate::linalg::{QMatrix, ZMatrix};

/// Output of [`lll_gram`]: `transform` is unimodular and the reduced basis
/// is `transform · basis`; `gram` is the Gram matrix of the reduced basis.
#[derive(Clone, Debug)]
pub struct LllOutput {
    pub transform: ZMatrix,
    pub gram: QMatrix,
    /// Gram–Schmidt coefficients μ_{ij} (j < i) of the reduced basis.
    pub mu: QMatrix,
    /// Squared Gram–Schmidt lengths |b*_i|² of the reduced basis.
    pub gso_sq: Vec<Q>,
}

pub fn default_delta() -> Q {
    Q::new(Z::from(99), Z::from(100))
}

fn round_q(x: &Q) -> Z {
    let half = Q::new(Z::one(), Z::from(2));
    (x + half).floor().to_integer()
}

/// Gram–Schmidt data (μ, |b*|²) computed from a Gram matrix.
pub fn gram_schmidt(gram: &[Vec<Q>]) -> (QMatrix, Vec<Q>) {
    let n = gram.len();
    let mut mu = vec![vec![Q::zero(); n]; n];
    let mut b = vec![Q::zero(); n];
    // r[i][j] = <b_i, b*_j>
    let mut r = vec![vec![Q::zero(); n]; n];
    for i in 0..n {
        for j in 0..i {
            let mut v = gram[i][j].clone();
            for l in 0..j {
                if !mu[j][l].is_zero() && !r[i][l].is_zero() {
                    v -= &mu[j][l] * &r[i][l];
                }
            }
            r[i][j] = v;
            mu[i][j] = &r[i][j] / &b[j];
        }
        let mut v = gram[i][i].clone();
        for l in 0..i {
            if !mu[i][l].is_zero() {
                v -= &mu[i][l] * &r[i][l];
            }
        }
        b[i] = v;
        mu[i][i] = Q::one();
    }
    (mu, b)
}

/// LLL-reduces the basis whose Gram matrix is `gram` (positive definite).
pub fn lll_gram(gram: &[Vec<Q>], delta: &Q) -> LllOutput {
    let n = gram.len();
    let mut u = identity(n);
    if n == 0 {
        return LllOutput {
            transform: u,
            gram: Vec::new(),
            mu: Vec::new(),
            gso_sq: Vec::new(),
        };
    }
    let (mut mu, mut b) = gram_schmidt(gram);
    let half = Q::new(Z::one(), Z::from(2));

    let size_reduce = |k: usize, j: usize, mu: &mut QMatrix, u: &mut ZMatrix| {
        if mu[k][j].abs() <= half {
            return;
        }
        let qt = round_q(&mu[k][j]);
        let qq = Q::from_integer(qt.clone());
        let uj = u[j].clone();
        for (x, y) in u[k].iter_mut().zip(&uj) {
            *x -= &qt * y;
        }
        for l in 0..j {
            let t = &qq * &mu[j][l];
            mu[k][l] -= t;
        }
        mu[k][j] -= qq;
    };

    let mut k = 1;
    while k < n {
        size_reduce(k, k - 1, &mut mu, &mut u);
        let m = mu[k][k - 1].clone();
        if b[k] < (delta - &m * &m) * &b[k - 1] {
            let bnew = &b[k] + &m * &m * &b[k - 1];
            mu[k][k - 1] = &m * &b[k - 1] / &bnew;
            let bk = &b[k - 1] * &b[k] / &bnew;
            b[k] = bk;
            b[k - 1] = bnew;
            u.swap(k, k - 1);
            for j in 0..k - 1 {
                let tmp = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = tmp;
            }
            for i in (k + 1)..n {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &m * &t;
                mu[i][k - 1] = &t + &mu[k][k - 1] * &mu[i][k];
            }
            k = (k - 1).max(1);
        } else {
            for j in (0..k - 1).rev() {
                size_reduce(k, j, &mut mu, &mut u);
            }
            k += 1;
        }
    }
    let new_gram = transform_gram(gram, &u);
    for (i, row) in mu.iter_mut().enumerate() {
        row[i] = Q::one();
        for x in row.iter_mut().skip(i + 1) {
            *x = Q::zero();
        }
    }
    LllOutput {
        transform: u,
        gram: new_gram,
        mu,
        gso_sq: b,
    }
}

/// U G Uᵀ.
pub fn transform_gram(gram: &[Vec<Q>], u: &[Vec<Z>]) -> QMatrix {
    let n = u.len();
    let uq: QMatrix = u
        .iter()
        .map(|r| r.iter().cloned().map(Q::from_integer).collect())
        .collect();
    let ug = crate::linalg::mat_mul(&uq, gram);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    ug[i]
                        .iter()
                        .zip(&uq[j])
                        .filter(|(_, b)| !b.is_zero())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// U G Uᵀ over the integers.
pub fn transform_gram_z(gram: &[Vec<Z>], u: &[Vec<Z>]) -> ZMatrix {
    let n = u.len();
    let ug: ZMatrix = u
        .iter()
        .map(|r| {
            (0..gram.len())
                .map(|j| {
                    r.iter()
                        .zip(gram)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, g)| x * &g[j])
                        .sum()
                })
                .collect()
        })
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    ug[i]
                        .iter()
                        .zip(&u[j])
                        .filter(|(_, b)| !b.is_zero())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Checks the size-reduction and Lovász conditions exactly.
pub fn is_lll_reduced(gram: &[Vec<Q>], delta: &Q) -> bool {
    let (mu, b) = gram_schmidt(gram);
    let half = Q::new(Z::one(), Z::from(2));
    let n = gram.len();
    for i in 0..n {
        for j in 0..i {
            if mu[i][j].abs() > half {
                return false;
            }
        }
    }
    (1..n).all(|k| b[k] >= (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1])
}

fn identity(n: usize) -> ZMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect()
}

/// Fraction-free LLL on an integral positive-definite Gram matrix, with
/// δ = `delta_num / delta_den`. All Gram–Schmidt data are kept as the
/// integers d_i = det of the leading i×i Gram minor and λ_{ij} = d_{j+1}·μ_{ij}.
/// Returns the unimodular transform and the reduced Gram matrix.
pub fn lll_gram_integral(gram: &[Vec<Z>], delta_num: u32, delta_den: u32) -> (ZMatrix, ZMatrix) {
    let n = gram.len();
    let mut g: ZMatrix = gram.to_vec();
    let mut u = identity(n);
    if n <= 1 {
        return (u, g);
    }
    let (num, den) = (Z::from(delta_num), Z::from(delta_den));
    // d[i] is the leading i×i minor, so d[0] = 1.
    let mut d = vec![Z::zero(); n + 1];
    d[0] = Z::one();
    d[1] = g[0][0].clone();
    let mut lam = vec![vec![Z::zero(); n]; n];

    let reduce = |k: usize, l: usize, g: &mut ZMatrix, u: &mut ZMatrix, lam: &mut ZMatrix, d: &[Z]| {
        let dl = &d[l + 1];
        if Z::from(2) * lam[k][l].abs() <= *dl {
            return;
        }
        let q = (Z::from(2) * &lam[k][l] + dl).div_floor(&(Z::from(2) * dl));
        let ul = u[l].clone();
        for (x, y) in u[k].iter_mut().zip(&ul) {
            *x -= &q * y;
        }
        let gl = g[l].clone();
        for (x, y) in g[k].iter_mut().zip(&gl) {
            *x -= &q * y;
        }
        let gkl = g[k][l].clone();
        for j in 0..n {
            if j != k {
                g[j][k] = g[k][j].clone();
            }
        }
        g[k][k] -= &q * gkl;
        lam[k][l] -= &q * dl;
        for i in 0..l {
            let t = &q * &lam[l][i];
            lam[k][i] -= t;
        }
    };

    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut v = g[k][j].clone();
                for i in 0..j {
                    v = (&d[i + 1] * v - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = v;
                } else {
                    assert!(!v.is_zero(), "Gram matrix is not positive definite");
                    d[k + 1] = v;
                }
            }
        }
        reduce(k, k - 1, &mut g, &mut u, &mut lam, &d);
        let l = &lam[k][k - 1];
        if &den * &d[k + 1] * &d[k - 1] < &num * &d[k] * &d[k] - &den * l * l {
            u.swap(k, k - 1);
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            for j in 0..k - 1 {
                let tmp = lam[k][j].clone();
                lam[k][j] = lam[k - 1][j].clone();
                lam[k - 1][j] = tmp;
            }
            let l = lam[k][k - 1].clone();
            let b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
            for i in (k + 1)..=kmax {
                let t = lam[i][k].clone();
                lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
                lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k + 1];
            }
            d[k] = b;
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                reduce(k, l, &mut g, &mut u, &mut lam, &d);
            }
            k += 1;
        }
    }
    (u, g)
}
