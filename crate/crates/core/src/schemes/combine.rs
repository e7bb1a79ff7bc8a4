//! Small nonnegative integer combinations with no vanishing component.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Q;

/// Given v_1..v_n in Q^n with (v_i)_i ≠ 0, returns m_1..m_n with
/// 0 ≤ m_i ≤ n such that Σ m_i v_i has no zero component.
///
/// Follows the inductive construction: combine the first k − 1 vectors into
/// w, keep m_k = 0 if w_k ≠ 0, and otherwise take the smallest m_k ∈ [1, k]
/// that avoids the k − 1 forbidden values −w_j/(v_k)_j.
pub fn combine_avoiding_zeros(vectors: &[Vec<Q>]) -> Result<Vec<u64>> {
    let n = vectors.len();
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != n {
            return Err(Error::Shape(format!("vector {i} has length {}, expected {n}", v.len())));
        }
        if v[i].is_zero() {
            return Err(Error::Precondition(format!("component {i} of vector {i} is zero")));
        }
    }
    let mut m = vec![0u64; n];
    let mut w = vec![Q::zero(); n];
    for k in 0..n {
        let u = &vectors[k];
        if k == 0 || w[k].is_zero() {
            let choice = (1..=(k as u64 + 1))
                .find(|&c| {
                    let c = Q::from_integer(c.into());
                    (0..k).all(|j| !(&w[j] + &c * &u[j]).is_zero())
                })
                .expect("k forbidden values cannot cover k + 1 candidates");
            m[k] = choice;
            let c = Q::from_integer(choice.into());
            for (wj, uj) in w.iter_mut().zip(u) {
                *wj += &c * uj;
            }
        }
    }
    Ok(m)
}

/// Σ m_i v_i.
pub fn apply_combination(vectors: &[Vec<Q>], m: &[u64]) -> Vec<Q> {
    let n = vectors.first().map_or(0, Vec::len);
    let mut out = vec![Q::zero(); n];
    for (v, &c) in vectors.iter().zip(m) {
        let c = Q::from_integer(c.into());
        for (o, x) in out.iter_mut().zip(v) {
            *o += &c * x;
        }
    }
    out
}
