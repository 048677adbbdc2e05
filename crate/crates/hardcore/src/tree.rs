//! Critical activities and fixed points of the occupancy recursion on regular
//! trees: λ_c, λ_{1/2}, the map φ, the densities p⁻/p*/p⁺ and q⁻/q⁺,
//! finite-tree marginals, and the two-level contraction factor γ = q⁺q⁻.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("degree must be at least 3 (got {0})")]
    DegreeTooSmall(usize),
    #[error("activity must be positive (got {0})")]
    NonPositiveActivity(f64),
    #[error("x = {0} outside the open interval (0, 1)")]
    DensityOutOfRange(f64),
    #[error("fixed-point iteration did not converge")]
    NoConvergence,
    #[error("operation requires λ > λ_c (λ = {lambda}, λ_c = {lambda_c})")]
    BelowCritical { lambda: f64, lambda_c: f64 },
}

/// Root-occupation fixed points of the tree recursion at a given (Δ, λ).
#[derive(Debug, Clone, serde::Serialize)]
pub struct CriticalPoints {
    pub delta: usize,
    pub lambda: f64,
    pub p_minus: f64,
    pub p_star: f64,
    pub p_plus: f64,
    pub q_minus: f64,
    pub q_plus: f64,
}

/// Uniqueness threshold λ_c(T_Δ) = (Δ−1)^{Δ−1} / (Δ−2)^Δ, exact.
pub fn lambda_c(delta: usize) -> Result<BigRational, TreeError> {
    if delta < 3 {
        return Err(TreeError::DegreeTooSmall(delta));
    }
    let num = BigInt::from(delta as u64 - 1).pow(delta as u32 - 1);
    let den = BigInt::from(delta as u64 - 2).pow(delta as u32);
    Ok(BigRational::new(num, den))
}

pub fn lambda_c_f64(delta: usize) -> Result<f64, TreeError> {
    Ok(lambda_c(delta)?.to_f64().unwrap())
}

/// The occupancy map φ(x) = (1−x)·(1 − (x / (λ(1−x)))^{1/Δ}).
///
/// The result may be non-positive when x ≥ λ(1−x); it is returned as-is.
pub fn phi(x: f64, lambda: f64, delta: usize) -> Result<f64, TreeError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(TreeError::DensityOutOfRange(x));
    }
    if delta < 3 {
        return Err(TreeError::DegreeTooSmall(delta));
    }
    if lambda <= 0.0 {
        return Err(TreeError::NonPositiveActivity(lambda));
    }
    let ratio = x / (lambda * (1.0 - x));
    Ok((1.0 - x) * (1.0 - ratio.powf(1.0 / delta as f64)))
}

const FP_TOL: f64 = 1e-13;

/// One level of the (Δ−1)-ary recursion: q ↦ t/(1+t) with t = λ(1−q)^{Δ−1}.
fn q_step(q: f64, lambda: f64, delta: usize) -> f64 {
    let t = lambda * (1.0 - q).powi(delta as i32 - 1);
    t / (1.0 + t)
}

// Iterate two levels at a time (a monotone map, so the orbit is monotone)
// with Aitken extrapolation to cope with the rate → 1 degeneracy near λ_c.
fn iterate_two_level(start: f64, lambda: f64, delta: usize) -> Result<f64, TreeError> {
    let two = |x: f64| q_step(q_step(x, lambda, delta), lambda, delta);
    let mut x = start;
    for _ in 0..200_000 {
        let x1 = two(x);
        let x2 = two(x1);
        let d1 = x1 - x;
        let d2 = x2 - x1;
        if d2.abs() < FP_TOL {
            return Ok(x2);
        }
        let denom = d2 - d1;
        let accel = if denom.abs() > 1e-300 {
            x2 - d2 * d2 / denom
        } else {
            x2
        };
        x = if accel > 0.0 && accel < 1.0 { accel } else { x2 };
    }
    // Near λ_c the map is tangent to the diagonal and the iteration stalls,
    // but the fixed point still attracts from both sides, so T(x) − x changes
    // sign across it and bisection from the stalled iterate finishes the job.
    let f = |x: f64| two(x) - x;
    let mut h = 1e-12;
    while h < 1.0 {
        let (mut lo, mut hi) = ((x - h).max(1e-15), (x + h).min(1.0 - 1e-15));
        if f(lo) > 0.0 && f(hi) < 0.0 {
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if f(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(0.5 * (lo + hi));
        }
        h *= 2.0;
    }
    Err(TreeError::NoConvergence)
}

/// Solve x = φ(x) by bisection; φ is strictly decreasing so the root is
/// unique.
fn p_star(lambda: f64, delta: usize) -> f64 {
    let mut lo = 1e-15;
    let mut hi = 1.0 - 1e-15;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi(mid, lambda, delta).unwrap() > mid {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All fixed points at (λ, Δ): p* from bisection on φ, q⁺ and q⁻ as the
/// even- and odd-depth limits of the (Δ−1)-ary recursion, and the
/// complete-tree densities recovered from q⁺ = p⁺/(1−p⁻), q⁻ = p⁻/(1−p⁺).
pub fn fixed_points(lambda: f64, delta: usize) -> Result<CriticalPoints, TreeError> {
    if delta < 3 {
        return Err(TreeError::DegreeTooSmall(delta));
    }
    if lambda <= 0.0 {
        return Err(TreeError::NonPositiveActivity(lambda));
    }
    let p_star = p_star(lambda, delta);
    // depth 0 is a bare root, an even-depth tree, so its orbit under the
    // two-level map converges to q⁺
    let q0 = lambda / (1.0 + lambda);
    let q_plus = iterate_two_level(q0, lambda, delta)?;
    let q_minus = iterate_two_level(q_step(q0, lambda, delta), lambda, delta)?;
    let denom = 1.0 - q_plus * q_minus;
    Ok(CriticalPoints {
        delta,
        lambda,
        p_minus: q_minus * (1.0 - q_plus) / denom,
        p_star,
        p_plus: q_plus * (1.0 - q_minus) / denom,
        q_minus,
        q_plus,
    })
}

/// Left-hand side of the λ_{1/2} defining equation minus one:
/// (1 + λ^{-1/Δ})^{1−1/Δ} (1 − λ^{-1/Δ})^{1/Δ} − 1.
fn lambda_half_residual(lambda: f64, delta: usize) -> f64 {
    let d = delta as f64;
    let t = lambda.powf(-1.0 / d);
    (1.0 + t).powf(1.0 - 1.0 / d) * (1.0 - t).powf(1.0 / d) - 1.0
}

/// Minimum solution of the λ_{1/2} equation, i.e. the smallest activity with
/// p⁺ = 1/2. Located by an ascending scan in steps of 0.01 (the equation may
/// have several roots and the minimum is wanted) followed by bisection.
pub fn lambda_half(delta: usize) -> Result<f64, TreeError> {
    if delta < 3 {
        return Err(TreeError::DegreeTooSmall(delta));
    }
    // the left-hand side is only defined for λ > 1, and is negative there
    // until the root
    let mut lo = 1.0 + 1e-9;
    let mut hi = lo;
    loop {
        hi += 0.01;
        if lambda_half_residual(hi, delta) > 0.0 {
            break;
        }
        lo = hi;
        if hi > 1e6 {
            return Err(TreeError::NoConvergence);
        }
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if lambda_half_residual(mid, delta) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ArityMode {
    /// T_ℓ: the root has Δ children, internal vertices Δ−1.
    CompleteDegree,
    /// T̂_ℓ: the root has Δ−1 children like every internal vertex.
    BranchingOnly,
}

/// Root-occupation marginal of the depth-ℓ tree, by bottom-up recursion.
/// ℓ = 1 is a bare root with marginal λ/(1+λ).
pub fn finite_tree_marginal(levels: usize, lambda: f64, delta: usize, mode: ArityMode) -> f64 {
    assert!(levels >= 1 && levels <= 1_000_000);
    let mut q = lambda / (1.0 + lambda); // depth-1 subtree
    let b = (delta - 1) as u32;
    for _ in 2..levels {
        let t = lambda * (1.0 - q).powi(b as i32);
        q = t / (1.0 + t);
    }
    if levels == 1 {
        return q;
    }
    let root_children = match mode {
        ArityMode::CompleteDegree => delta as i32,
        ArityMode::BranchingOnly => b as i32,
    };
    let t = lambda * (1.0 - q).powi(root_children);
    t / (1.0 + t)
}

/// Two-level derivative limit of the (Δ−1)-ary recursion at q⁺:
/// λ²(1−q⁺)^{Δ−2}(1+λ(1−q⁺)^{Δ−1})^{Δ−2} / [λ + (1+λ(1−q⁺)^{Δ−1})^{Δ−1}]².
/// Equals q⁺·q⁻.
pub fn contraction_factor(lambda: f64, delta: usize) -> Result<f64, TreeError> {
    let lc = lambda_c_f64(delta)?;
    if lambda <= lc {
        return Err(TreeError::BelowCritical {
            lambda,
            lambda_c: lc,
        });
    }
    let fp = fixed_points(lambda, delta)?;
    let q = fp.q_plus;
    let d = delta as i32;
    let inner = 1.0 + lambda * (1.0 - q).powi(d - 1);
    let num = lambda * lambda * (1.0 - q).powi(d - 2) * inner.powi(d - 2);
    let den = lambda + inner.powi(d - 1);
    Ok(num / (den * den))
}
