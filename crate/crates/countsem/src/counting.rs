//! Graded attacker/defender counts and the damped counting semantics.
//!
//! With `A` the attack matrix and `e` the all-ones vector, the entry `i` of
//! `A^l e` counts the walks of length `l` ending at argument `i`: attackers
//! of `x_i` when `l` is odd, defenders when `l` is even. The simple model
//! sums these counts with alternating signs; the damped model additionally
//! scales length-`l` walks by `alpha^l` and normalizes `A` by its infinity
//! norm `N`, which bounds every strength into `[0, 1]`:
//!
//! ```text
//! v = sum over l of (-alpha)^l (A/N)^l e      (partial sums v_k)
//! v_k = e - alpha (A/N) v_{k-1}               (equivalent recurrence)
//! ```
//!
//! The limit is the unique fixed point of `v = e - alpha (A/N) v`; it is
//! approximated by iterating the recurrence from `e` until the successive
//! change drops below a tolerance, or computed exactly by solving the linear
//! system `(I + alpha A/N) v = e`.

use thiserror::Error;

use crate::matrix::AttackMatrix;

/// Default damping factor; long walks are discounted by `alpha^l`.
pub const DEFAULT_ALPHA: f64 = 0.98;
/// Default successive-change tolerance for the iteration.
pub const DEFAULT_EPSILON: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("damping factor must lie in (0, 1), got {0}")]
    AlphaOutOfRange(f64),
    #[error("tolerance must be positive and finite, got {0}")]
    EpsilonOutOfRange(f64),
    #[error("max_iter must be at least 1")]
    ZeroMaxIter,
    #[error("no convergence after {iterations} iterations (last change {change:.3e})")]
    NonConvergence {
        iterations: usize,
        change: f64,
        last: Vec<f64>,
    },
}

/// Walk counts grow exponentially in cyclic graphs; they are computed with
/// checked 128-bit arithmetic and never wrap silently.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("walk counts overflow 128-bit integers at length {length}")]
pub struct CountOverflow {
    pub length: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EstimateError {
    #[error("tolerance must lie in (0, 1), got {0}")]
    EpsilonOutOfRange(f64),
    #[error("damping factor must lie in (0, 1), got {0}")]
    AlphaOutOfRange(f64),
    #[error("spectral radius must lie in [0, 1], got {0}")]
    RhoOutOfRange(f64),
    #[error("alpha * rho = {0} >= 1 admits no convergence estimate")]
    NoContraction(f64),
}

/// Per-argument walk counts at (or summed up to) a given walk length.
#[derive(Debug, Clone, PartialEq)]
pub struct CountVector<T> {
    pub values: Vec<T>,
    pub walk_length: usize,
}

/// Converged per-argument strengths in `[1 - alpha, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthVector {
    pub values: Vec<f64>,
    pub alpha: f64,
    /// Tolerance met by the result: the requested successive-change bound for
    /// the iterative solver, the measured residual for the direct solver.
    pub epsilon: f64,
    /// Iterations performed; 0 for the direct solver.
    pub iterations: usize,
}

impl StrengthVector {
    /// Infinity norm of `v - (e - alpha A~ v)`, the defect against the
    /// fixed-point equation.
    pub fn residual(&self, a: &AttackMatrix) -> f64 {
        let step = iterate_counting(a, self.alpha, &self.values);
        inf_distance(&self.values, &step)
    }
}

/// Fixed point of the categoriser valuation `v(x) = 1 / (1 + t)` with `t`
/// the sum of the direct attackers' values. Unattacked arguments get 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoriserValuation {
    pub values: Vec<f64>,
    pub epsilon: f64,
    pub iterations: usize,
}

/// Predicted iteration count for reaching tolerance `epsilon` at damping
/// `alpha` and spectral radius `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceEstimate {
    pub rho: f64,
    pub k_max: f64,
    pub k_max_ceil: u64,
}

fn inf_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn check_alpha(alpha: f64) -> Result<(), SolveError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(SolveError::AlphaOutOfRange(alpha));
    }
    Ok(())
}

fn check_epsilon(epsilon: f64) -> Result<(), SolveError> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(SolveError::EpsilonOutOfRange(epsilon));
    }
    Ok(())
}

/// Walk counts `A^l e`: entry `i` is the number of length-`l` walks ending at
/// `x_i` in the attack graph.
pub fn graded_counts(a: &AttackMatrix, length: usize) -> Result<CountVector<i128>, CountOverflow> {
    let mut values = vec![1i128; a.dim()];
    for step in 1..=length {
        values = a
            .matvec_i128(&values)
            .ok_or(CountOverflow { length: step })?;
    }
    Ok(CountVector {
        values,
        walk_length: length,
    })
}

/// Alternating partial sum `sum_{l=0}^{k} (-1)^l A^l e` of the un-damped
/// counting model.
pub fn simple_counting(a: &AttackMatrix, k: usize) -> Result<CountVector<i128>, CountOverflow> {
    let n = a.dim();
    let mut walk = vec![1i128; n];
    let mut acc = vec![1i128; n];
    for length in 1..=k {
        walk = a.matvec_i128(&walk).ok_or(CountOverflow { length })?;
        let sign: i128 = if length % 2 == 0 { 1 } else { -1 };
        for (accum, &w) in acc.iter_mut().zip(&walk) {
            *accum = w
                .checked_mul(sign)
                .and_then(|signed| accum.checked_add(signed))
                .ok_or(CountOverflow { length })?;
        }
    }
    Ok(CountVector {
        values: acc,
        walk_length: k,
    })
}

/// Damped partial sum `sum_{l=0}^{k} (-1)^l alpha^l (A/N)^l e`.
pub fn damped_partial(a: &AttackMatrix, alpha: f64, k: usize) -> CountVector<f64> {
    let n = a.dim();
    let scale = if a.normalization() == 0 {
        0.0
    } else {
        alpha / a.normalization() as f64
    };
    let mut walk = vec![1.0; n];
    let mut acc = vec![1.0; n];
    let mut scratch = vec![0.0; n];
    for length in 1..=k {
        a.matvec_scaled(&walk, scale, &mut scratch);
        std::mem::swap(&mut walk, &mut scratch);
        let sign = if length % 2 == 0 { 1.0 } else { -1.0 };
        for (accum, &w) in acc.iter_mut().zip(&walk) {
            *accum += sign * w;
        }
    }
    CountVector {
        values: acc,
        walk_length: k,
    }
}

/// One recurrence step `e - alpha (A/N) v_prev`.
pub fn iterate_counting(a: &AttackMatrix, alpha: f64, v_prev: &[f64]) -> Vec<f64> {
    let scale = if a.normalization() == 0 {
        0.0
    } else {
        alpha / a.normalization() as f64
    };
    let mut out = vec![0.0; a.dim()];
    a.matvec_scaled(v_prev, scale, &mut out);
    for entry in &mut out {
        *entry = 1.0 - *entry;
    }
    out
}

/// Default iteration budget: ten times the predicted worst-case iteration
/// count at `rho = 1`, with a floor of 1000.
pub fn default_max_iter(epsilon: f64, alpha: f64) -> usize {
    match estimate_iterations(epsilon, alpha, 1.0) {
        Ok(est) => (10 * est.k_max_ceil as usize).max(1000),
        Err(_) => 1000,
    }
}

/// Iterates the recurrence from `v = e` until the successive change in the
/// infinity norm drops to `epsilon`, recording the change sequence.
pub fn solve_counting_traced(
    a: &AttackMatrix,
    alpha: f64,
    epsilon: f64,
    max_iter: usize,
) -> Result<(StrengthVector, Vec<f64>), SolveError> {
    check_alpha(alpha)?;
    check_epsilon(epsilon)?;
    if max_iter == 0 {
        return Err(SolveError::ZeroMaxIter);
    }
    let mut v = vec![1.0; a.dim()];
    let mut deltas = Vec::new();
    for iteration in 1..=max_iter {
        let next = iterate_counting(a, alpha, &v);
        let change = inf_distance(&next, &v);
        deltas.push(change);
        v = next;
        if change <= epsilon {
            return Ok((
                StrengthVector {
                    values: v,
                    alpha,
                    epsilon,
                    iterations: iteration,
                },
                deltas,
            ));
        }
    }
    Err(SolveError::NonConvergence {
        iterations: max_iter,
        change: *deltas.last().expect("max_iter >= 1"),
        last: v,
    })
}

/// The counting semantics via fixed-point iteration.
pub fn solve_counting(
    a: &AttackMatrix,
    alpha: f64,
    epsilon: f64,
    max_iter: usize,
) -> Result<StrengthVector, SolveError> {
    solve_counting_traced(a, alpha, epsilon, max_iter).map(|(sv, _)| sv)
}

/// The counting semantics via the closed form: solves `(I + alpha A/N) v = e`
/// directly. The system is strictly diagonally dominant, so elimination with
/// partial pivoting cannot break down.
pub fn solve_counting_direct(a: &AttackMatrix, alpha: f64) -> Result<StrengthVector, SolveError> {
    check_alpha(alpha)?;
    let n = a.dim();
    let scale = if a.normalization() == 0 {
        0.0
    } else {
        alpha / a.normalization() as f64
    };
    let mut mat = vec![0.0; n * n];
    for i in 0..n {
        mat[i * n + i] = 1.0;
        for j in a.row(i) {
            mat[i * n + j] += scale;
        }
    }
    let mut values = solve_dense(&mut mat, vec![1.0; n]);
    // The fixed point assigns exactly 1 to unattacked arguments; clear the
    // elimination round-off there.
    for i in 0..n {
        if a.row(i).next().is_none() {
            values[i] = 1.0;
        }
    }
    let mut sv = StrengthVector {
        values,
        alpha,
        epsilon: 0.0,
        iterations: 0,
    };
    sv.epsilon = sv.residual(a).max(f64::EPSILON);
    Ok(sv)
}

/// Gaussian elimination with partial pivoting on a row-major square system.
fn solve_dense(mat: &mut [f64], mut rhs: Vec<f64>) -> Vec<f64> {
    let n = rhs.len();
    assert_eq!(mat.len(), n * n);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| mat[r * n + col].abs().total_cmp(&mat[s * n + col].abs()))
            .expect("nonempty pivot range");
        if pivot_row != col {
            for j in 0..n {
                mat.swap(col * n + j, pivot_row * n + j);
            }
            rhs.swap(col, pivot_row);
        }
        let pivot = mat[col * n + col];
        assert!(pivot != 0.0, "diagonally dominant system must be regular");
        for row in col + 1..n {
            let factor = mat[row * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            mat[row * n + col] = 0.0;
            for j in col + 1..n {
                mat[row * n + j] -= factor * mat[col * n + j];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut solution = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for j in row + 1..n {
            acc -= mat[row * n + j] * solution[j];
        }
        solution[row] = acc / mat[row * n + row];
    }
    solution
}

/// Estimate of the spectral radius of the normalized attack matrix `A/N`.
///
/// Nilpotent matrices (acyclic attack graphs) are detected exactly: the
/// iterates of a nonnegative matrix starting from the all-ones vector vanish
/// within `n` steps iff the matrix is nilpotent, in which case the radius is
/// 0. Otherwise the dominant eigenvalue of `I + A/N` is located by power
/// iteration (the shift makes the Perron root strictly dominant even for
/// periodic graphs) and the radius is recovered by subtracting 1.
pub fn spectral_radius(a: &AttackMatrix, tol: f64) -> f64 {
    assert!(tol > 0.0, "tolerance must be positive");
    let n = a.dim();
    if n == 0 || a.normalization() == 0 {
        return 0.0;
    }
    let mut probe = vec![1.0; n];
    let mut scratch = vec![0.0; n];
    for _ in 0..n {
        a.matvec_normalized(&probe, &mut scratch);
        std::mem::swap(&mut probe, &mut scratch);
        if probe.iter().all(|&x| x == 0.0) {
            return 0.0;
        }
    }

    let mut v = vec![1.0; n];
    let mut estimate = f64::INFINITY;
    let max_rounds = 100_000;
    for _ in 0..max_rounds {
        a.matvec_normalized(&v, &mut scratch);
        // w = (I + A/N) v with v normalized to unit infinity norm.
        let mut sup = 0.0f64;
        for i in 0..n {
            scratch[i] += v[i];
            sup = sup.max(scratch[i].abs());
        }
        for i in 0..n {
            v[i] = scratch[i] / sup;
        }
        let previous = estimate;
        estimate = sup;
        if (estimate - previous).abs() <= tol {
            break;
        }
    }
    (estimate - 1.0).clamp(0.0, 1.0)
}

/// Predicted iteration bound `log10(epsilon) / log10(alpha * rho)`.
pub fn estimate_iterations(
    epsilon: f64,
    alpha: f64,
    rho: f64,
) -> Result<ConvergenceEstimate, EstimateError> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(EstimateError::EpsilonOutOfRange(epsilon));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(EstimateError::AlphaOutOfRange(alpha));
    }
    if !(0.0..=1.0).contains(&rho) {
        return Err(EstimateError::RhoOutOfRange(rho));
    }
    if rho == 0.0 {
        // The iteration is exact after a single step.
        return Ok(ConvergenceEstimate {
            rho,
            k_max: 1.0,
            k_max_ceil: 1,
        });
    }
    let contraction = alpha * rho;
    if contraction >= 1.0 {
        return Err(EstimateError::NoContraction(contraction));
    }
    let k_max = epsilon.log10() / contraction.log10();
    Ok(ConvergenceEstimate {
        rho,
        k_max,
        k_max_ceil: k_max.ceil() as u64,
    })
}

/// Categoriser valuation: fixed point of `v(x) = 1 / (1 + sum of direct
/// attacker values)`, iterated from the all-ones vector.
pub fn categoriser_valuation(
    a: &AttackMatrix,
    epsilon: f64,
    max_iter: usize,
) -> Result<CategoriserValuation, SolveError> {
    check_epsilon(epsilon)?;
    if max_iter == 0 {
        return Err(SolveError::ZeroMaxIter);
    }
    let n = a.dim();
    let mut v = vec![1.0; n];
    let mut sums = vec![0.0; n];
    let mut last_change = f64::INFINITY;
    for iteration in 1..=max_iter {
        a.matvec_scaled(&v, 1.0, &mut sums);
        let next: Vec<f64> = sums.iter().map(|&t| 1.0 / (1.0 + t)).collect();
        let change = inf_distance(&next, &v);
        last_change = change;
        v = next;
        if change <= epsilon {
            return Ok(CategoriserValuation {
                values: v,
                epsilon,
                iterations: iteration,
            });
        }
    }
    Err(SolveError::NonConvergence {
        iterations: max_iter,
        change: last_change,
        last: v,
    })
}
