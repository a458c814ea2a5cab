//! Independent oracles shared by the integration suites. Nothing here calls
//! into the library's numeric routines.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::Rng;

/// Per-expert record of a literal CFCS evaluation.
#[derive(Debug, Clone, Copy)]
pub struct OracleStep {
    pub xl: f64,
    pub xm: f64,
    pub xr: f64,
    pub xls: f64,
    pub xrs: f64,
    pub x: f64,
    pub bnp: f64,
}

/// CFCS written out one equation at a time over plain `(l, m, r)` tuples.
/// All three components are standardized against the smallest left bound.
pub fn cfcs_oracle(samples: &[(f64, f64, f64)]) -> (Vec<OracleStep>, f64) {
    let k_count = samples.len();
    let mut min_l = samples[0].0;
    let mut max_r = samples[0].2;
    for k in 1..k_count {
        if samples[k].0 < min_l {
            min_l = samples[k].0;
        }
        if samples[k].2 > max_r {
            max_r = samples[k].2;
        }
    }
    let delta = max_r - min_l;
    if delta == 0.0 {
        return (vec![], min_l);
    }

    let mut steps = Vec::new();
    let mut total = 0.0;
    for k in 0..k_count {
        let (l, m, r) = samples[k];
        // standardize
        let xl = (l - min_l) / delta;
        let xm = (m - min_l) / delta;
        let xr = (r - min_l) / delta;
        // left and right normalized values
        let xls = xm / (1.0 + xm - xl);
        let xrs = xr / (1.0 + xr - xm);
        // total normalized value
        let x = (xls * (1.0 - xls) + xrs * xrs) / (1.0 + xrs - xls);
        // crisp score of expert k
        let bnp = min_l + x * delta;
        total += bnp;
        steps.push(OracleStep { xl, xm, xr, xls, xrs, x, bnp });
    }
    (steps, total / k_count as f64)
}

pub type Dense = Vec<Vec<f64>>;

pub fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += a[i][k] * b[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

/// `Σ_{k=1}^{terms} D^k`.
pub fn neumann_series(d: &Dense, terms: usize) -> Dense {
    let n = d.len();
    let mut power = d.clone();
    let mut sum = d.clone();
    for _ in 1..terms {
        power = dense_mul(&power, d);
        for i in 0..n {
            for j in 0..n {
                sum[i][j] += power[i][j];
            }
        }
    }
    sum
}

/// Random non-negative `n × n` matrix rescaled so its largest row sum is `target`.
pub fn random_substochastic<R: Rng>(rng: &mut R, n: usize, target: f64) -> Dense {
    let mut m: Dense = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0.0..10.0)).collect()).collect();
    let max_row = m.iter().map(|r| r.iter().sum::<f64>()).fold(0.0, f64::max);
    for row in &mut m {
        for v in row.iter_mut() {
            *v *= target / max_row;
        }
    }
    m
}

pub fn max_abs_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max)
}
