//! Markov-decision foundations: row-stochastic transition matrices, the
//! controlled-restarts environment (CRE), its reward function, and exact
//! matrix operations used by estimation and planning alike.
//!
//! In the CRE the passive action lets an arm drift under a stochastic
//! monotone matrix, while the active action deterministically resets it to
//! state 0 and collects a reward of `state^2`. All state indices are
//! 0-based; the reset target is index 0.

use ndarray::{Array2, ArrayView1};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::RngStream;

/// Absolute tolerance for row sums of a stochastic matrix.
pub const ROW_SUM_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum MdpError {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry ({row},{col}) = {value} is outside [0,1]")]
    EntryOutOfRange { row: usize, col: usize, value: f64 },

    #[error("row {row} sums to {sum}, expected 1 within {ROW_SUM_TOL}")]
    RowSum { row: usize, sum: f64 },

    #[error("persistence p = {p} must lie in (1/{n_states}, 1]")]
    PersistenceOutOfRange { p: f64, n_states: usize },

    #[error("need at least 2 states, got {0}")]
    TooFewStates(usize),

    #[error("power {k} exceeds configured k_max = {k_max}")]
    PowerExceedsKMax { k: usize, k_max: usize },

    #[error("state {state} out of range for {n_states} states")]
    StateOutOfRange { state: usize, n_states: usize },
}

/// A row-stochastic square matrix over states (or augmented state-action
/// pairs). Rows must sum to 1 within [`ROW_SUM_TOL`]; construction refuses
/// to renormalize so that estimation bugs surface instead of hiding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    entries: Array2<f64>,
}

impl TransitionMatrix {
    pub fn new(entries: Array2<f64>) -> Result<Self, MdpError> {
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(MdpError::NotSquare { rows, cols });
        }
        if rows == 0 {
            return Err(MdpError::TooFewStates(0));
        }
        for (i, row) in entries.rows().into_iter().enumerate() {
            let mut sum = 0.0;
            for (j, &v) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&v) || !v.is_finite() {
                    return Err(MdpError::EntryOutOfRange { row: i, col: j, value: v });
                }
                sum += v;
            }
            if (sum - 1.0).abs() > ROW_SUM_TOL {
                return Err(MdpError::RowSum { row: i, sum });
            }
        }
        Ok(Self { entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MdpError> {
        let n = rows.len();
        let mut m = Array2::zeros((n, n));
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MdpError::NotSquare { rows: n, cols: r.len() });
            }
            for (j, &v) in r.iter().enumerate() {
                m[[i, j]] = v;
            }
        }
        Self::new(m)
    }

    /// The identity matrix (every state absorbing).
    pub fn identity(n_states: usize) -> Self {
        Self { entries: Array2::eye(n_states) }
    }

    /// Matrix with every row equal to the uniform distribution.
    pub fn uniform(n_states: usize) -> Self {
        Self {
            entries: Array2::from_elem((n_states, n_states), 1.0 / n_states as f64),
        }
    }

    pub fn n_states(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<f64> {
        &self.entries
    }

    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.entries[[from, to]]
    }

    pub fn row(&self, state: usize) -> ArrayView1<'_, f64> {
        self.entries.row(state)
    }

    /// Row i FOSD-dominated by row i+1 for all i: prefix sums nonincreasing
    /// down the rows. This is the stochastic-monotone order used by the CRE.
    pub fn is_stochastic_monotone(&self, tol: f64) -> bool {
        let n = self.n_states();
        for i in 0..n.saturating_sub(1) {
            let mut cum_hi = 0.0;
            let mut cum_lo = 0.0;
            for j in 0..n {
                cum_hi = cum_hi + self.entries[[i, j]];
                cum_lo = cum_lo + self.entries[[i + 1, j]];
                if cum_lo > cum_hi + tol {
                    return false;
                }
            }
        }
        true
    }

    /// One row per line, entries comma-separated at full (round-trip)
    /// precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.entries.rows() {
            let line: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, MdpError> {
        let rows: Vec<Vec<f64>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split(',')
                    .map(|tok| tok.trim().parse::<f64>().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect();
        Self::from_rows(&rows)
    }
}

/// Parameters of one CRE arm's passive matrix: diagonal persistence `p`,
/// off-diagonal mass split evenly as `q = (1-p)/(n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CreArmSpec {
    pub p: f64,
    pub n_states: usize,
}

impl CreArmSpec {
    pub fn new(p: f64, n_states: usize) -> Result<Self, MdpError> {
        if n_states < 2 {
            return Err(MdpError::TooFewStates(n_states));
        }
        // p > 1/n is the stochastic-monotonicity precondition.
        if !(p > 1.0 / n_states as f64 && p <= 1.0) {
            return Err(MdpError::PersistenceOutOfRange { p, n_states });
        }
        Ok(Self { p, n_states })
    }

    pub fn q(&self) -> f64 {
        (1.0 - self.p) / (self.n_states as f64 - 1.0)
    }
}

/// Passive-action matrix of a CRE arm: `p` on the diagonal, `q` off it.
pub fn cre_passive(spec: CreArmSpec) -> TransitionMatrix {
    let n = spec.n_states;
    let q = spec.q();
    let mut m = Array2::from_elem((n, n), q);
    for i in 0..n {
        m[[i, i]] = spec.p;
        // Row sums to 1 exactly: recompute the diagonal from the off-diagonal
        // mass to kill accumulated rounding.
        m[[i, i]] = 1.0 - q * (n as f64 - 1.0);
    }
    TransitionMatrix::new(m).expect("CRE passive matrix is row-stochastic by construction")
}

/// Active-action matrix of a CRE arm: deterministic reset to state 0.
pub fn cre_reset(n_states: usize) -> Result<TransitionMatrix, MdpError> {
    if n_states < 2 {
        return Err(MdpError::TooFewStates(n_states));
    }
    let mut m = Array2::zeros((n_states, n_states));
    for i in 0..n_states {
        m[[i, 0]] = 1.0;
    }
    Ok(TransitionMatrix { entries: m })
}

/// CRE reward: 0 under the passive action, `state^2` under the active one.
pub fn cre_reward(state: usize, action: u8) -> f64 {
    if action == 0 {
        0.0
    } else {
        (state * state) as f64
    }
}

/// `P^k` by iterated multiplication. `k` is bounded by `k_max` (the maximum
/// number of consecutive chain steps a single observation gap may span).
pub fn matrix_power(
    p: &TransitionMatrix,
    k: usize,
    k_max: usize,
) -> Result<TransitionMatrix, MdpError> {
    if k > k_max {
        return Err(MdpError::PowerExceedsKMax { k, k_max });
    }
    Ok(matrix_power_unchecked(p, k))
}

pub(crate) fn matrix_power_unchecked(p: &TransitionMatrix, k: usize) -> TransitionMatrix {
    let n = p.n_states();
    let mut acc = Array2::eye(n);
    for _ in 0..k {
        acc = acc.dot(&p.entries);
    }
    TransitionMatrix { entries: acc }
}

/// All powers `P^0 .. P^k` in one pass; estimation gradients consume these.
pub(crate) fn matrix_powers(p: &TransitionMatrix, k: usize) -> Vec<Array2<f64>> {
    let n = p.n_states();
    let mut out = Vec::with_capacity(k + 1);
    out.push(Array2::eye(n));
    for i in 1..=k {
        let next = out[i - 1].dot(&p.entries);
        out.push(next);
    }
    out
}

/// Draw the next state from row `state` of `P` by inverse-CDF on a single
/// uniform variate.
pub fn sample_next(
    p: &TransitionMatrix,
    state: usize,
    rng: &mut RngStream,
) -> Result<usize, MdpError> {
    let n = p.n_states();
    if state >= n {
        return Err(MdpError::StateOutOfRange { state, n_states: n });
    }
    let u: f64 = rng.random();
    let mut cum = 0.0;
    for j in 0..n {
        cum += p.entries[[state, j]];
        if u < cum {
            return Ok(j);
        }
    }
    // Guard against row sums a hair under 1.
    Ok(n - 1)
}
