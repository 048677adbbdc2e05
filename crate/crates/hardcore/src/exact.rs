//! Exact independent-set counting: the bivariate independence polynomial,
//! partition function, class measures and the full Gibbs distribution on
//! small graphs. All counts are arbitrary-precision integers; activities may
//! be exact rationals so identities can be tested with zero tolerance.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::Graph;

/// Enumeration budgets. Bipartite enumeration is over subsets of side 1,
/// general enumeration over all vertices.
pub const MAX_SIDE: usize = 28;
pub const MAX_VERTICES: usize = 30;
pub const MAX_GIBBS_VERTICES: usize = 20;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("graph exceeds the enumeration budget ({0} > {1})")]
    SizeBudget(usize, usize),
    #[error("operation requires a bipartite graph")]
    NotBipartite,
    #[error("operation requires equal side sizes (got {0} and {1})")]
    UnequalSides(usize, usize),
}

/// Exact counts `c[a][b]` of independent sets with `a` vertices on side 1 and
/// `b` on side 2 of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateIndependencePolynomial {
    pub counts: Vec<Vec<BigUint>>,
    pub n1: usize,
    pub n2: usize,
}

impl BivariateIndependencePolynomial {
    /// Total number of independent sets.
    pub fn total(&self) -> BigUint {
        self.counts.iter().flatten().sum()
    }

    /// Σ c[a][b] λ^{a+b} with exact rational λ.
    pub fn evaluate(&self, lambda: &BigRational) -> BigRational {
        let mut powers = vec![BigRational::one()];
        for _ in 0..(self.n1 + self.n2) {
            powers.push(powers.last().unwrap() * lambda);
        }
        let mut z = BigRational::zero();
        for (a, row) in self.counts.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    z += BigRational::from_integer(c.clone().into()) * &powers[a + b];
                }
            }
        }
        z
    }
}

/// Gibbs probabilities of the three imbalance classes.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ClassMeasures {
    pub mu_1: f64,
    pub mu_2: f64,
    pub mu_b: f64,
    pub delta: f64,
}

fn binomials(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for k in 0..n {
        let next = &row[k] * BigUint::from(n - k) / BigUint::from(k + 1);
        row.push(next);
    }
    row
}

/// Bivariate independence polynomial by enumerating subsets of side 1. Every
/// subset of a side is independent, so for each side-1 subset `S` the side-2
/// choices are the subsets of `V₂ ∖ N(S)`, counted by binomials.
pub fn independence_polynomial(
    g: &Graph,
) -> Result<BivariateIndependencePolynomial, ExactError> {
    let sides = g.sides().ok_or(ExactError::NotBipartite)?;
    let side1: Vec<u32> = (0..g.n_vertices() as u32)
        .filter(|&v| sides[v as usize] == 0)
        .collect();
    let n1 = side1.len();
    let n2 = g.n_vertices() - n1;
    if n1 > MAX_SIDE {
        return Err(ExactError::SizeBudget(n1, MAX_SIDE));
    }
    let adj = g.adjacency();
    // neighborhood of each side-1 vertex as a bitmask over side-2 positions
    let mut pos2 = vec![usize::MAX; g.n_vertices()];
    let mut next = 0;
    for v in 0..g.n_vertices() {
        if sides[v] == 1 {
            pos2[v] = next;
            next += 1;
        }
    }
    let nbr_mask: Vec<u64> = side1
        .iter()
        .map(|&v| {
            adj[v as usize]
                .iter()
                .fold(0u64, |m, &w| m | (1u64 << pos2[w as usize]))
        })
        .collect();

    let binom: Vec<Vec<BigUint>> = (0..=n2).map(binomials).collect();
    let mut counts = vec![vec![BigUint::zero(); n2 + 1]; n1 + 1];
    for subset in 0..(1u64 << n1) {
        let a = subset.count_ones() as usize;
        let mut blocked = 0u64;
        for i in 0..n1 {
            if subset >> i & 1 == 1 {
                blocked |= nbr_mask[i];
            }
        }
        let free = n2 - blocked.count_ones() as usize;
        for b in 0..=free {
            counts[a][b] += &binom[free][b];
        }
    }
    Ok(BivariateIndependencePolynomial { counts, n1, n2 })
}

/// Independent-set counts by size, for any graph within the vertex budget.
pub fn size_counts(g: &Graph) -> Result<Vec<BigUint>, ExactError> {
    if g.n_vertices() > MAX_VERTICES {
        return Err(ExactError::SizeBudget(g.n_vertices(), MAX_VERTICES));
    }
    let masks = g.neighbor_masks();
    let all = if g.n_vertices() == 64 {
        u64::MAX
    } else {
        (1u64 << g.n_vertices()) - 1
    };
    let mut counts = vec![BigUint::zero(); g.n_vertices() + 1];
    count_rec(&masks, all, 0, &mut counts);
    while counts.last().is_some_and(Zero::is_zero) && counts.len() > 1 {
        counts.pop();
    }
    Ok(counts)
}

// Z(G) = Z(G − v) + λ·Z(G − N[v]) on a max-degree vertex; a fully isolated
// remainder is resolved by binomials in one step.
fn count_rec(masks: &[u64], active: u64, picked: usize, counts: &mut [BigUint]) {
    let mut best_v = usize::MAX;
    let mut best_deg = 0;
    let mut m = active;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let deg = (masks[v] & active).count_ones() as usize;
        if best_v == usize::MAX || deg > best_deg {
            best_v = v;
            best_deg = deg;
        }
    }
    if best_v == usize::MAX || best_deg == 0 {
        let k = active.count_ones() as usize;
        for (j, c) in binomials(k).into_iter().enumerate() {
            counts[picked + j] += c;
        }
        return;
    }
    count_rec(masks, active & !(1 << best_v), picked, counts);
    count_rec(
        masks,
        active & !(1 << best_v) & !masks[best_v],
        picked + 1,
        counts,
    );
}

/// Z_G(λ) = Σ_I λ^{|I|} with exact rational activity.
pub fn partition_function_rational(
    g: &Graph,
    lambda: &BigRational,
) -> Result<BigRational, ExactError> {
    let counts = size_counts(g)?;
    let mut z = BigRational::zero();
    let mut pow = BigRational::one();
    for c in counts {
        z += BigRational::from_integer(c.into()) * &pow;
        pow *= lambda;
    }
    Ok(z)
}

/// Z_G(λ) in floating point.
pub fn partition_function(g: &Graph, lambda: f64) -> Result<f64, ExactError> {
    let counts = size_counts(g)?;
    let mut z = 0.0;
    let mut pow = 1.0;
    for c in counts {
        z += c.to_f64().unwrap_or(f64::INFINITY) * pow;
        pow *= lambda;
    }
    Ok(z)
}

/// The activity transform of the vertex blowup: `(1+λ)^k − 1`.
pub fn blowup_activity(lambda: &BigRational, k: usize) -> BigRational {
    let mut p = BigRational::one();
    let onel = BigRational::one() + lambda;
    for _ in 0..k {
        p *= &onel;
    }
    p - BigRational::one()
}

/// Gibbs measure of the classes I₁^δ (biased to side 1: `a > b + δn`),
/// I₂^δ and the nearly balanced I_B^δ. Comparisons are exact rational.
pub fn class_measures(
    g: &Graph,
    lambda: &BigRational,
    delta: &BigRational,
) -> Result<ClassMeasures, ExactError> {
    let poly = independence_polynomial(g)?;
    if poly.n1 != poly.n2 {
        return Err(ExactError::UnequalSides(poly.n1, poly.n2));
    }
    let n = poly.n1;
    let slack = delta * BigRational::from_integer(n.into());
    let mut powers = vec![BigRational::one()];
    for _ in 0..2 * n {
        powers.push(powers.last().unwrap() * lambda);
    }
    let mut w1 = BigRational::zero();
    let mut w2 = BigRational::zero();
    let mut wb = BigRational::zero();
    for (a, row) in poly.counts.iter().enumerate() {
        for (b, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = BigRational::from_integer(c.clone().into()) * &powers[a + b];
            let a_r = BigRational::from_integer(a.into());
            let b_r = BigRational::from_integer(b.into());
            if a_r > &b_r + &slack {
                w1 += w;
            } else if b_r > &a_r + &slack {
                w2 += w;
            } else {
                wb += w;
            }
        }
    }
    let z = &w1 + &w2 + &wb;
    let mu_1 = (&w1 / &z).to_f64().unwrap();
    let mu_2 = (&w2 / &z).to_f64().unwrap();
    Ok(ClassMeasures {
        mu_1,
        mu_2,
        mu_b: 1.0 - mu_1 - mu_2,
        delta: delta.to_f64().unwrap(),
    })
}

/// Full Gibbs distribution as (occupancy bitmask, probability) pairs.
pub fn exact_gibbs_distribution(
    g: &Graph,
    lambda: f64,
) -> Result<Vec<(u64, f64)>, ExactError> {
    let n = g.n_vertices();
    if n > MAX_GIBBS_VERTICES {
        return Err(ExactError::SizeBudget(n, MAX_GIBBS_VERTICES));
    }
    let masks = g.neighbor_masks();
    let mut sets = Vec::new();
    let mut z = 0.0;
    enumerate_rec(&masks, n, 0, 0, lambda, 1.0, &mut sets, &mut z);
    for (_, w) in &mut sets {
        *w /= z;
    }
    Ok(sets)
}

fn enumerate_rec(
    masks: &[u64],
    n: usize,
    v: usize,
    set: u64,
    lambda: f64,
    weight: f64,
    out: &mut Vec<(u64, f64)>,
    z: &mut f64,
) {
    if v == n {
        out.push((set, weight));
        *z += weight;
        return;
    }
    enumerate_rec(masks, n, v + 1, set, lambda, weight, out, z);
    if masks[v] & set == 0 {
        enumerate_rec(masks, n, v + 1, set | 1 << v, lambda, weight * lambda, out, z);
    }
}
