//! Acceptance run: one PASS/FAIL line per criterion, each backed by an
//! oracle computed here independently of the library code path.

#![allow(clippy::needless_range_loop)]

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arakelov::arithhilbert::{ambient_asymptotic_ratio, arith_hilbert, arith_hilbert_ambient, check_mlnull};
use arakelov::forms::{monomials, space_dim, HomogeneousForm};
use arakelov::heights::{
    bezout_check, bezout_instances, derive_seed, divisor_height, fs_log_integral, random_theta,
    split_divisor_height_oracle, transcendence_profile, Cycle, HeightEstimate,
};
use arakelov::lattice::{saturate_with_metric, short_vector, Metric};
use arakelov::schemes::{check_al_hilbert, hilbert_fn, interpolate, FatPoint, SchemeSpec};
use arakelov::suite::{empirical_constants, standard_suite, SuiteConfig};

type Z = BigInt;
type Q = BigRational;

// ---------------------------------------------------------------- oracles

fn binom(n: u64, k: u64) -> Z {
    let mut r = Z::one();
    for i in 0..k {
        r = r * Z::from(n - i) / Z::from(i + 1);
    }
    r
}

fn factorial(n: u64) -> Z {
    (1..=n).fold(Z::one(), |acc, k| acc * Z::from(k))
}

/// The multinomial D!/(i_0!…i_t!) of an exponent vector.
fn multinomial(e: &[u32]) -> Z {
    let d: u64 = e.iter().map(|&x| x as u64).sum();
    e.iter().fold(factorial(d), |acc, &x| acc / factorial(x as u64))
}

fn ln_z(n: &Z) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 60;
    (n >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_q(x: &Q) -> f64 {
    ln_z(x.numer()) - ln_z(x.denom())
}

/// C(D+t; I) = (D+t)! / (i_0!…i_t! t!).
fn extended_multinomial(e: &[u32]) -> Z {
    let d: u64 = e.iter().map(|&x| x as u64).sum();
    let t = e.len() as u64 - 1;
    multinomial(e) * factorial(d + t) / factorial(d) / factorial(t)
}

/// Π over monomials of 1/C(D+t; I): the L² Gram determinant of all forms.
fn ambient_det_oracle(t: usize, d: usize) -> Q {
    let den = monomials(t, d)
        .iter()
        .fold(Z::one(), |acc, m| acc * extended_multinomial(m.exponents()));
    Q::new(Z::one(), den)
}

/// Squared L² norm Σ c_I² / C(D+t; I), exactly.
fn l2_norm_sq(f: &HomogeneousForm) -> Q {
    f.terms()
        .map(|(m, c)| c * c / Q::from_integer(extended_multinomial(m.exponents())))
        .fold(Q::zero(), |a, b| a + b)
}

fn eval(f: &HomogeneousForm, p: &[i64]) -> Q {
    f.terms()
        .map(|(m, c)| {
            let mono = m
                .exponents()
                .iter()
                .zip(p)
                .fold(Z::one(), |acc, (&e, &x)| acc * Z::from(x).pow(e));
            c * Q::from_integer(mono)
        })
        .fold(Q::zero(), |a, b| a + b)
}

fn det_q(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c].clone();
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    det
}

fn inverse_f64(g: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut a: Vec<Vec<f64>> = g
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).unwrap();
        a.swap(p, c);
        let piv = a[c][c];
        for v in a[c].iter_mut() {
            *v /= piv;
        }
        for r in 0..n {
            if r != c {
                let f = a[r][c];
                for k in 0..2 * n {
                    a[r][k] -= f * a[c][k];
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Smallest exact squared length over nonzero lattice vectors, by
/// enumerating the coefficient box |x_i| ≤ sqrt(bound · (G⁻¹)_ii). Returns
/// None when the box is too large to enumerate.
fn brute_force_min(gram: &[Vec<Q>], bound: &Q) -> Option<Q> {
    let n = gram.len();
    let gf: Vec<Vec<f64>> = gram
        .iter()
        .map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect())
        .collect();
    let inv = inverse_f64(&gf);
    let b = bound.to_f64().unwrap();
    let r: Vec<i64> = (0..n)
        .map(|i| ((b * inv[i][i]).max(0.0).sqrt() * (1.0 + 1e-9)).floor() as i64 + 1)
        .collect();
    let total: f64 = r.iter().map(|&x| (2 * x + 1) as f64).product();
    if total > 3e6 {
        return None;
    }
    let mut best: Option<Q> = None;
    let mut x: Vec<i64> = r.iter().map(|&v| -v).collect();
    loop {
        if x.iter().any(|&v| v != 0) {
            let approx: f64 = (0..n)
                .map(|i| (0..n).map(|j| gf[i][j] * (x[i] * x[j]) as f64).sum::<f64>())
                .sum();
            if approx <= b * (1.0 + 1e-6) + 1e-12 {
                let mut s = Q::zero();
                for i in 0..n {
                    for j in 0..n {
                        s += &gram[i][j] * Q::from_integer(Z::from(x[i] * x[j]));
                    }
                }
                if best.as_ref().is_none_or(|m| s < *m) {
                    best = Some(s);
                }
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return best;
            }
            if x[k] < r[k] {
                x[k] += 1;
                break;
            }
            x[k] = -r[k];
            k += 1;
        }
    }
}

// ------------------------------------------------------------- harness

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion(n: usize, name: &str, budget: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let pass = out.pass && in_time;
    println!(
        "{} criterion {n:>2} {name}: {} [{:.2}s / {}s]",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    pass
}

fn random_point(rng: &mut ChaCha8Rng, t: usize, range: i64) -> Vec<i64> {
    loop {
        let p: Vec<i64> = (0..=t).map(|_| rng.random_range(-range..=range)).collect();
        if p.iter().any(|&x| x != 0) {
            return p;
        }
    }
}

fn proportional(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

fn random_points(rng: &mut ChaCha8Rng, t: usize, n: usize, avoid: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    while out.len() < n {
        let p = random_point(rng, t, 4);
        if !out.iter().chain(avoid).any(|q| proportional(&p, q)) {
            out.push(p);
        }
    }
    out
}

/// Instances collected for the nonnegativity sweep.
#[derive(Default)]
struct Collected {
    schemes: Vec<(SchemeSpec, usize)>,
    heights: Vec<HeightEstimate>,
}

fn main() {
    let mut collected = Collected::default();
    let mut all = true;

    all &= criterion(1, "exact arithmetic degrees", Duration::from_secs(10), || {
        let p1 = arith_hilbert_ambient(1, 1).value;
        let p2 = arith_hilbert_ambient(2, 1).value;
        let mut ok = (p1 - 2f64.ln()).abs() < 1e-12 && (p2 - 1.5 * 3f64.ln()).abs() < 1e-12;
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(1, 0));
        let mut bad = 0;
        for _ in 0..100 {
            let t = rng.random_range(1..=2);
            let d = rng.random_range(1..=6);
            let n = rng.random_range(1..=4);
            let pts = random_points(&mut rng, t, n, &[]);
            let x = SchemeSpec::reduced_points(t, &pts).unwrap();
            let v = arith_hilbert(&x, d).unwrap();
            let ideal = v.ideal_det_gram.clone().unwrap();
            if &v.det_gram * &ideal != ambient_det_oracle(t, d) {
                bad += 1;
            }
            collected.schemes.push((x, d));
        }
        ok &= bad == 0;
        Outcome {
            pass: ok,
            detail: format!("H^(P1,1) = {p1:.15}, H^(P2,1) = {p2:.15}, additivity failures {bad}/100"),
        }
    });

    all &= criterion(2, "Minkowski certificates", Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(2, 0));
        let (mut bad_mink, mut bad_oracle, mut compared) = (0, 0, 0);
        for _ in 0..200 {
            let (t, d) = loop {
                let t = rng.random_range(1..=3);
                let d = rng.random_range(1..=6);
                if space_dim(t, d) <= 28 {
                    break (t, d);
                }
            };
            let n = space_dim(t, d);
            let r = rng.random_range(1..=6.min(n));
            let gens: Vec<Vec<Z>> = (0..r)
                .map(|_| (0..n).map(|_| Z::from(rng.random_range(-3i64..=3))).collect())
                .collect();
            let l = saturate_with_metric(&gens, n, Metric::l2_forms(t, d));
            if l.rank() == 0 {
                continue;
            }
            let cert = short_vector(&l).unwrap();
            // Exact Minkowski: |v|^{2r} ≤ r^r det, recomputed here.
            let rank = l.rank();
            let gram: Vec<Vec<Q>> = l
                .basis()
                .iter()
                .map(|a| l.basis().iter().map(|b| l.metric().inner_z(a, b)).collect())
                .collect();
            let det = det_q(gram.clone());
            let lhs = num_traits::pow(cert.squared_length.clone(), rank);
            let rhs = Q::from_integer(Z::from(rank).pow(rank as u32)) * &det;
            if !(lhs <= rhs && cert.log_length <= cert.minkowski_rhs + 1e-12) {
                bad_mink += 1;
            }
            if l.metric().inner_z(&cert.vector, &cert.vector) != cert.squared_length || !l.contains(&cert.vector) {
                bad_mink += 1;
            }
            if rank <= 4 {
                if let Some(m) = brute_force_min(&gram, &cert.squared_length) {
                    compared += 1;
                    if m != cert.squared_length {
                        bad_oracle += 1;
                    }
                }
            }
        }
        Outcome {
            pass: bad_mink == 0 && bad_oracle == 0 && compared >= 50,
            detail: format!("Minkowski failures {bad_mink}/200, brute-force mismatches {bad_oracle}/{compared}"),
        }
    });

    all &= criterion(3, "algebraic Hilbert bounds", Duration::from_secs(10), || {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(3, 0));
        let (mut bad_bound, mut bad_exact) = (0, 0);
        for _ in 0..100 {
            let t = rng.random_range(1..=3);
            let mut d = rng.random_range(1..=5);
            let x = if rng.random_bool(0.6) {
                let n = rng.random_range(1..=3);
                let pts = random_points(&mut rng, t, n, &[]);
                let mut x = SchemeSpec::empty(t);
                let mut bound = 0u64;
                for p in pts {
                    let m = rng.random_range(1..=3usize);
                    bound += binom((m + t - 1) as u64, t as u64).to_u64().unwrap();
                    x.add_point(FatPoint::new(p.into_iter().map(Z::from).collect(), m).unwrap())
                        .unwrap();
                }
                let h = hilbert_fn(&x, d).unwrap() as u64;
                if h > bound || h > space_dim(t, d) as u64 {
                    bad_exact += 1;
                }
                x
            } else {
                let e = rng.random_range(1..=3);
                d = d.max(e);
                let coeffs: Vec<i64> = (0..space_dim(t, e)).map(|_| rng.random_range(-3..=3)).collect();
                let Ok(g) = HomogeneousForm::from_integers(t, e, &coeffs) else {
                    continue;
                };
                if g.is_zero() {
                    continue;
                }
                let mut x = SchemeSpec::empty(t);
                x.add_hypersurface(g).unwrap();
                // A single hypersurface: H(D) = C(D+t, t) − C(D−e+t, t).
                let expect = binom((d + t) as u64, t as u64)
                    - if d >= e {
                        binom((d - e + t) as u64, t as u64)
                    } else {
                        Z::zero()
                    };
                if Z::from(hilbert_fn(&x, d).unwrap()) != expect {
                    bad_exact += 1;
                }
                x
            };
            if check_al_hilbert(&x, d).unwrap().iter().any(|r| r.failed()) {
                bad_bound += 1;
            }
            collected.schemes.push((x, d));
        }
        let mut fat_checked = 0;
        for t in 1..=3 {
            for n in 1..=4 {
                for d in n - 1..=n + 2 {
                    let p = FatPoint::new((0..=t).map(|i| Z::from(i as i64 + 1)).collect(), n).unwrap();
                    let x = SchemeSpec::from_points(t, vec![p]).unwrap();
                    fat_checked += 1;
                    if Z::from(hilbert_fn(&x, d).unwrap()) != binom((n + t - 1) as u64, t as u64) {
                        bad_exact += 1;
                    }
                }
            }
        }
        Outcome {
            pass: bad_bound == 0 && bad_exact == 0,
            detail: format!(
                "bound failures {bad_bound}/100, oracle mismatches {bad_exact} (incl. {fat_checked} fat-point cases)"
            ),
        }
    });

    all &= criterion(4, "interpolation certificates", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(4, 0));
        let (mut bad, mut done) = (0, 0);
        while done < 50 {
            let ny = rng.random_range(1..=3);
            let yp = random_points(&mut rng, 2, ny, &[]);
            if ny == 3 {
                let m: Vec<Vec<Q>> = yp
                    .iter()
                    .map(|p| p.iter().map(|&c| Q::from_integer(Z::from(c))).collect())
                    .collect();
                if det_q(m).is_zero() {
                    continue; // collinear triples need a cubic generator
                }
            }
            let nx = rng.random_range(1..=3);
            let xp = random_points(&mut rng, 2, nx, &yp);
            let y = SchemeSpec::reduced_points(2, &yp).unwrap();
            let x = SchemeSpec::reduced_points(2, &xp).unwrap();
            done += 1;
            let Ok(r) = interpolate(&y, &x, 4) else {
                bad += 1;
                continue;
            };
            let vanishes = yp.iter().all(|p| eval(&r.form, p).is_zero());
            let avoids = xp.iter().all(|p| !eval(&r.form, p).is_zero());
            let log_norm = 0.5 * ln_q(&l2_norm_sq(&r.form));
            if !(vanishes && avoids && r.certificate_holds() && (log_norm - r.log_norm).abs() < 1e-9)
                || log_norm > r.minkowski_rhs
            {
                bad += 1;
            }
            collected.schemes.push((y, 4));
        }
        Outcome {
            pass: bad == 0,
            detail: format!("failures {bad}/50 at D = 4"),
        }
    });

    all &= criterion(5, "Monte Carlo height oracles", Duration::from_secs(60), || {
        let n = 1_000_000;
        let within = |e: &HeightEstimate, target: f64| (e.value - target).abs() <= 3.0 * e.stderr;
        let a = fs_log_integral(&HomogeneousForm::variable(1, 0), n, derive_seed(5, 0)).unwrap();
        let b = fs_log_integral(&HomogeneousForm::variable(2, 0), n, derive_seed(5, 1)).unwrap();
        let f = HomogeneousForm::from_integers(1, 2, &[1, -1, 0]).unwrap();
        let c = divisor_height(&f, n, derive_seed(5, 2)).unwrap();
        let split = split_divisor_height_oracle(&f, &[vec![Z::zero(), Z::one()], vec![Z::one(), Z::one()]]).unwrap();
        let line = divisor_height(&HomogeneousForm::variable(2, 0), n, derive_seed(5, 3)).unwrap();
        let half_log2 = 0.5 * 2f64.ln();
        let ok = within(&a, -0.5)
            && within(&b, -0.75)
            && within(&c, half_log2)
            && (split.value - half_log2).abs() < 1e-12
            && within(&c, split.value)
            && within(&line, 0.5);
        let detail = format!(
            "t=1: {:.5}±{:.1e}, t=2: {:.5}±{:.1e}, h(x0(x0-x1)) = {:.5}±{:.1e} vs {:.6}, h(line) = {:.5}±{:.1e}",
            a.value, a.stderr, b.value, b.stderr, c.value, c.stderr, split.value, line.value, line.stderr
        );
        collected.heights.extend([c, line]);
        Outcome { pass: ok, detail }
    });

    all &= criterion(6, "nonnegativity sweep", Duration::from_secs(60), || {
        let mut extra = Vec::new();
        let forms = [
            HomogeneousForm::from_integers(1, 2, &[1, 0, -1]).unwrap(),
            HomogeneousForm::from_integers(2, 2, &[1, -2, 0, 3, 1, -1]).unwrap(),
            HomogeneousForm::from_integers(1, 3, &[2, 0, 0, 1]).unwrap(),
        ];
        for (k, f) in forms.iter().enumerate() {
            extra.push(divisor_height(f, 100_000, derive_seed(6, k as u64)).unwrap());
        }
        let bad_h = collected
            .heights
            .iter()
            .chain(&extra)
            .filter(|h| h.value < -3.0 * h.stderr)
            .count();
        let bad_m = collected
            .schemes
            .iter()
            .filter(|(x, d)| !check_mlnull(x, *d).unwrap().holds)
            .count();
        Outcome {
            pass: bad_h == 0 && bad_m == 0,
            detail: format!(
                "divisor heights below -3σ: {bad_h}/{}, negative H^_X(D): {bad_m}/{}",
                collected.heights.len() + extra.len(),
                collected.schemes.len()
            ),
        }
    });

    all &= criterion(7, "arithmetic Bézout", Duration::from_secs(60), || {
        let seed = derive_seed(7, 0);
        let mut bad = 0;
        let mut oracle_checked = 0;
        for (k, (x, y)) in bezout_instances(seed, 30).iter().enumerate() {
            let r = bezout_check(2, x, y, 200_000, derive_seed(seed, k as u64), 3.0).unwrap();
            if !r.holds {
                bad += 1;
            }
            if let (Cycle::Hyperplanes(a), Cycle::Hyperplanes(b)) = (x, y) {
                if a.len() == 1 && b.len() == 1 {
                    // Lines meet in a x b; h(line) = σ₁ + log|a|; excess ½ log 2.
                    let (a, b) = (&a[0], &b[0]);
                    let c = [
                        &a[1] * &b[2] - &a[2] * &b[1],
                        &a[2] * &b[0] - &a[0] * &b[2],
                        &a[0] * &b[1] - &a[1] * &b[0],
                    ];
                    let g = c.iter().fold(Z::zero(), |g, x| num_integer::Integer::gcd(&g, x));
                    let n2 = |v: &[Z]| v.iter().map(|x| x * x).sum::<Z>();
                    let prim: Vec<Z> = c.iter().map(|x| x / &g).collect();
                    let lhs = 0.5 * ln_z(&n2(&prim));
                    let rhs = 1.0 + 0.5 * ln_z(&n2(a)) + 0.5 * ln_z(&n2(b)) + 0.5 * 2f64.ln();
                    oracle_checked += 1;
                    if (lhs - r.lhs).abs() > 1e-9 || (rhs - r.rhs).abs() > 1e-9 || lhs > rhs {
                        bad += 1;
                    }
                }
            }
        }
        Outcome {
            pass: bad == 0 && oracle_checked > 0,
            detail: format!("failures {bad}/30 ({oracle_checked} line pairs recomputed independently)"),
        }
    });

    all &= criterion(8, "empirical constants bounded", Duration::from_secs(60), || {
        let reports = standard_suite(&SuiteConfig::default()).unwrap();
        let consts = empirical_constants(&reports);
        let worst = consts.iter().map(|r| r.lhs.abs()).fold(0.0, f64::max);
        let failed = reports.iter().filter(|r| r.failed()).count();
        Outcome {
            pass: !consts.is_empty() && worst <= 10.0 && failed == 0,
            detail: format!(
                "{} constants emitted, max |c| = {worst:.4}; {failed} failed of {} reports",
                consts.len(),
                reports.len()
            ),
        }
    });

    all &= criterion(9, "asymptotic sanity", Duration::from_secs(5), || {
        let mut ok = true;
        let mut parts = Vec::new();
        for d in [48usize, 64, 96, 128] {
            // For t = 1, C(D+1; i, D−i) = (D+1)·C(D, i); the ratio is H^·2!/(σ₁D²).
            let oracle: f64 = (0..=d)
                .map(|i| 0.5 * ln_z(&(binom(d as u64, i as u64) * Z::from(d + 1))))
                .sum::<f64>()
                * 4.0
                / (d * d) as f64;
            let r = ambient_asymptotic_ratio(1, d);
            ok &= (0.75..=1.25).contains(&r) && (r - oracle).abs() < 1e-9;
            parts.push(format!("D={d}: {r:.4}"));
        }
        Outcome {
            pass: ok,
            detail: parts.join(", "),
        }
    });

    all &= criterion(10, "transcendence experiment", Duration::from_secs(120), || {
        let (d, h) = (10usize, 10.0);
        let target = 0.4 * (0.5 * (d * d) as f64 + h * d as f64);
        let mut hits = 0;
        let mut bad_oracle = 0;
        let mut table = vec!["  seed,D,H,achieved,rhs_paper,ratio".to_string()];
        for k in 0..10 {
            let seed = derive_seed(10, k);
            let theta = random_theta(seed);
            let p = transcendence_profile(theta, d, h).unwrap();
            if p.achieved >= target {
                hits += 1;
            }
            // Recompute log|f|_{L²} and −log|f(θ)|/‖θ‖^D exactly from the witness.
            let log_norm = 0.5 * ln_q(&l2_norm_sq(&p.witness_form));
            let tq: Vec<(Q, Q)> = theta
                .iter()
                .map(|c| (Q::from_float(c.re).unwrap(), Q::from_float(c.im).unwrap()))
                .collect();
            let mul = |a: &(Q, Q), b: &(Q, Q)| (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0);
            let mut value = (Q::zero(), Q::zero());
            for (m, c) in p.witness_form.terms() {
                let e = m.exponents();
                let mut term = (c.clone(), Q::zero());
                for (i, &ei) in e.iter().enumerate() {
                    for _ in 0..ei {
                        term = mul(&term, &tq[i]);
                    }
                }
                value = (value.0 + term.0, value.1 + term.1);
            }
            let abs_sq = &value.0 * &value.0 + &value.1 * &value.1;
            let theta_sq: Q = tq.iter().map(|(a, b)| a * a + b * b).fold(Q::zero(), |x, y| x + y);
            let achieved = if abs_sq.is_zero() {
                f64::INFINITY
            } else {
                -0.5 * ln_q(&abs_sq) + 0.25 * d as f64 * ln_q(&theta_sq)
            };
            let agrees = if achieved.is_finite() {
                (achieved - p.achieved).abs() <= 1e-6 * achieved.abs().max(1.0)
            } else {
                !p.achieved.is_finite()
            };
            if !agrees || log_norm > h + 1e-12 || (log_norm - p.witness_log_norm).abs() > 1e-9 || abs_sq.is_negative() {
                bad_oracle += 1;
            }
            table.push(format!("  {seed},{}", p.csv_row().join(",")));
        }
        for line in &table {
            println!("{line}");
        }
        Outcome {
            pass: hits >= 8 && bad_oracle == 0,
            detail: format!("{hits}/10 runs reach {target}; witness oracle mismatches {bad_oracle}"),
        }
    });

    if !all {
        std::process::exit(1);
    }
}
