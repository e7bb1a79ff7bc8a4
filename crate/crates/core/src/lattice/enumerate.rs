//! Exhaustive short-vector enumeration inside an ellipsoid, run on an
//! LLL-reduced basis. Floating-point Gram–Schmidt data only prunes the
//! search; every candidate is re-measured exactly.

use num_traits::Zero;

use crate::exact::{q_to_f64, Q, Z};

/// All nonzero coefficient vectors x (up to sign) with exact x·G·xᵀ equal to
/// the minimum over the lattice, given a starting upper bound `bound_sq`
/// that is attained by some lattice vector.
pub fn shortest_coefficients(gram: &[Vec<Q>], mu: &[Vec<Q>], gso_sq: &[Q], bound_sq: &Q) -> (Q, Vec<Vec<i64>>) {
    let n = gram.len();
    let mu_f: Vec<Vec<f64>> = mu.iter().map(|r| r.iter().map(q_to_f64).collect()).collect();
    let b_f: Vec<f64> = gso_sq.iter().map(q_to_f64).collect();
    let mut state = Search {
        gram,
        mu: mu_f,
        b: b_f,
        best: bound_sq.clone(),
        radius: q_to_f64(bound_sq) * (1.0 + 1e-9),
        found: Vec::new(),
        x: vec![0i64; n],
    };
    state.recurse(n, 0.0);
    let mut found = state.found;
    // Keep one representative per ± pair.
    for v in found.iter_mut() {
        if let Some(first) = v.iter().rev().find(|c| **c != 0) {
            if *first < 0 {
                v.iter_mut().for_each(|c| *c = -*c);
            }
        }
    }
    found.sort();
    found.dedup();
    (state.best, found)
}

struct Search<'a> {
    gram: &'a [Vec<Q>],
    mu: Vec<Vec<f64>>,
    b: Vec<f64>,
    best: Q,
    radius: f64,
    found: Vec<Vec<i64>>,
    x: Vec<i64>,
}

impl Search<'_> {
    fn recurse(&mut self, level: usize, partial: f64) {
        if level == 0 {
            if self.x.iter().all(|&c| c == 0) {
                return;
            }
            let exact = exact_norm(self.gram, &self.x);
            if exact < self.best {
                self.best = exact;
                self.radius = q_to_f64(&self.best) * (1.0 + 1e-9);
                self.found.clear();
                self.found.push(self.x.clone());
            } else if exact == self.best {
                self.found.push(self.x.clone());
            }
            return;
        }
        let i = level - 1;
        let n = self.x.len();
        let center: f64 = -((i + 1)..n).map(|j| self.x[j] as f64 * self.mu[j][i]).sum::<f64>();
        let bi = self.b[i];
        let slack = (self.radius - partial).max(0.0);
        let width = (slack / bi).sqrt();
        let lo = (center - width - 1e-9).ceil() as i64;
        let hi = (center + width + 1e-9).floor() as i64;
        for v in lo..=hi {
            let d = v as f64 - center;
            let p = partial + d * d * bi;
            if p > self.radius * (1.0 + 1e-12) + 1e-300 {
                continue;
            }
            self.x[i] = v;
            self.recurse(i, p);
        }
        self.x[i] = 0;
    }
}

pub fn exact_norm(gram: &[Vec<Q>], x: &[i64]) -> Q {
    let mut total = Q::zero();
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0 {
                continue;
            }
            total += &gram[i][j] * Q::from_integer(Z::from(xi * xj));
        }
    }
    total
}
