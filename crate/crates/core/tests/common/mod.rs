//! Random seeds and a numeric mutation oracle shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use clusterkit::{Seed, Var};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub fn v(s: &str) -> Var {
    Var::new(s).unwrap()
}

/// A random seed with `1..=max_n` exchangeable and `0..=max_m` frozen
/// variables and entries in `[-bound, bound]`, skew-symmetrizable with
/// symmetrizer entries in {1, 2, 3}.
pub fn random_seed<R: Rng>(rng: &mut R, max_n: usize, max_m: usize, bound: i64) -> Seed {
    let n = rng.gen_range(1..=max_n);
    let m = rng.gen_range(0..=max_m);
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let mut b = vec![vec![0i64; n]; n + m];
    for i in 0..n {
        for j in (i + 1)..n {
            // d_i b_ij = -d_j b_ji with b_ij = k d_j / g and b_ji = -k d_i / g.
            let g = num_integer::gcd(d[i], d[j]);
            let (u, w) = (d[j] / g, d[i] / g);
            let kmax = bound / u.max(w);
            if kmax == 0 || rng.gen_bool(0.4) {
                continue;
            }
            let k = rng.gen_range(-kmax..=kmax);
            b[i][j] = k * u;
            b[j][i] = -k * w;
        }
    }
    for row in b.iter_mut().skip(n) {
        for x in row.iter_mut() {
            if rng.gen_bool(0.5) {
                *x = rng.gen_range(-bound..=bound);
            }
        }
    }
    let ex: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let fx: Vec<String> = (n + 1..=n + m).map(|i| format!("x{i}")).collect();
    let ex: Vec<&str> = ex.iter().map(String::as_str).collect();
    let fx: Vec<&str> = fx.iter().map(String::as_str).collect();
    Seed::from_names(&ex, &fx, b).unwrap()
}

/// A random sequence of exchangeable variables of length at most `max_len`.
pub fn random_sequence<R: Rng>(rng: &mut R, seed: &Seed, max_len: usize) -> Vec<Var> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| seed.ex()[rng.gen_range(0..seed.n())].clone()).collect()
}

/// Upper bound on the number of terms of the exchange binomial at position `k`.
pub fn exchange_size_bound(seed: &Seed, k: usize) -> f64 {
    let (mut pos, mut neg) = (0f64, 0f64);
    for (row, value) in seed.matrix().entries().iter().zip(seed.values()) {
        let log = (value.len() as f64).ln() * row[k].unsigned_abs() as f64;
        if row[k] > 0 {
            pos += log;
        } else {
            neg += log;
        }
    }
    pos.exp() + neg.exp()
}

/// Mutations along `seq` while each exchange binomial stays under `budget`
/// terms; the seeds visited, starting with `seed`.
pub fn bounded_path(seed: &Seed, seq: &[Var], budget: f64) -> Vec<Seed> {
    let mut path = vec![seed.clone()];
    for x in seq {
        let s = path.last().unwrap();
        let k = s.ex().iter().position(|y| y == x).unwrap();
        if exchange_size_bound(s, k) > budget {
            break;
        }
        let next = s.mutate(x).unwrap();
        path.push(next);
    }
    path
}

/// Mutation on numbers: the initial variables are specialized to distinct
/// primes and every cluster variable is tracked as an exact rational.
#[derive(Clone, Debug)]
pub struct NumericSeed {
    pub n: usize,
    pub b: Vec<Vec<i64>>,
    pub values: Vec<BigRational>,
}

const PRIMES: [i64; 12] = [101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157];

impl NumericSeed {
    pub fn new(n: usize, b: Vec<Vec<i64>>) -> Self {
        let values = (0..b.len()).map(|i| BigRational::from_integer(PRIMES[i].into())).collect();
        NumericSeed { n, b, values }
    }

    pub fn mutate(&self, k: usize) -> NumericSeed {
        let rows = self.b.len();
        let mut plus = BigRational::one();
        let mut minus = BigRational::one();
        for i in 0..rows {
            let e = self.b[i][k];
            for _ in 0..e.abs() {
                if e > 0 {
                    plus *= &self.values[i];
                } else {
                    minus *= &self.values[i];
                }
            }
        }
        let mut values = self.values.clone();
        values[k] = (plus + minus) / &self.values[k];
        let mut b = self.b.clone();
        for i in 0..rows {
            for j in 0..self.n {
                b[i][j] = if i == k || j == k {
                    -self.b[i][j]
                } else {
                    let (bik, bkj) = (self.b[i][k], self.b[k][j]);
                    self.b[i][j] + (bik.abs() * bkj + bik * bkj.abs()) / 2
                };
            }
        }
        NumericSeed { n: self.n, b, values }
    }

    /// Seed up to reordering of the exchangeable slots.
    fn key(&self) -> (Vec<BigRational>, Vec<Vec<i64>>) {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| self.values[a].cmp(&self.values[b]));
        let rows: Vec<usize> = order.iter().copied().chain(self.n..self.b.len()).collect();
        let matrix = rows.iter().map(|&i| order.iter().map(|&j| self.b[i][j]).collect()).collect();
        (rows.iter().map(|&i| self.values[i].clone()).collect(), matrix)
    }
}

/// Breadth-first closure of the numeric seed: number of seeds up to slot
/// order and the set of exchangeable values, or `None` past `max_seeds`.
pub fn numeric_closure(start: NumericSeed, max_seeds: usize) -> Option<(usize, BTreeSet<BigRational>)> {
    let mut seen = HashSet::new();
    let mut values = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.key());
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        values.extend(s.values[..s.n].iter().cloned());
        for k in 0..s.n {
            let t = s.mutate(k);
            if seen.insert(t.key()) {
                if seen.len() > max_seeds {
                    return None;
                }
                queue.push_back(t);
            }
        }
    }
    Some((seen.len(), values))
}

/// Evaluates a Laurent polynomial in `x1, x2, ...` at the oracle's primes.
pub fn evaluate(p: &clusterkit::LaurentPoly) -> BigRational {
    let mut total = BigRational::zero();
    for (m, c) in p.terms() {
        let mut t = BigRational::from_integer(c.clone());
        for (x, e) in m.exponents() {
            let i: usize = x.name()[1..].parse().unwrap();
            let base = BigRational::from_integer(BigInt::from(PRIMES[i - 1]));
            let power = num_traits::pow(base, e.unsigned_abs() as usize);
            t = if *e > 0 { t * power } else { t / power };
        }
        total += t;
    }
    total
}

/// Finite type test on the principal part: every matrix in the mutation
/// class has `|b_ij b_ji| <= 3`. Explores labelled matrices only.
pub fn is_finite_type(seed: &Seed) -> bool {
    let n = seed.n();
    let start: Vec<Vec<i64>> = seed.matrix().entries()[..n].to_vec();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            for j in 0..n {
                if (b[i][j] * b[j][i]).abs() > 3 {
                    return false;
                }
            }
        }
        for k in 0..n {
            let next = NumericSeed { n, b: b.clone(), values: vec![BigRational::one(); n] }.mutate(k).b;
            if seen.insert(next.clone()) {
                if seen.len() > 5000 {
                    return false;
                }
                queue.push_back(next);
            }
        }
    }
    true
}
