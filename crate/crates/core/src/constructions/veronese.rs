use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};

/// Degree `d` monomials in `n` variables with `a_i ≤ e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeroneseSpec {
    pub n: usize,
    pub d: u32,
    /// Non-decreasing bounds with `1 ≤ e_i ≤ d`.
    pub bounds: Vec<u32>,
}

impl VeroneseSpec {
    pub fn new(n: usize, d: u32, bounds: Vec<u32>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidSpec("n and d must be positive".into()));
        }
        if bounds.len() != n {
            return Err(Error::InvalidSpec(format!("expected {n} bounds, got {}", bounds.len())));
        }
        if bounds.iter().any(|&e| e == 0 || e > d) {
            return Err(Error::InvalidSpec("bounds must satisfy 1 <= e_i <= d".into()));
        }
        if bounds.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidSpec("bounds must be non-decreasing".into()));
        }
        Ok(VeroneseSpec { n, d, bounds })
    }

    /// `t = d + n - 1 - Σ e_i`; may be negative.
    pub fn t(&self) -> i64 {
        self.d as i64 + self.n as i64 - 1 - self.bounds.iter().map(|&e| e as i64).sum::<i64>()
    }
}

/// Prediction `depth S/I = t`, clamped at 0 and flagged when `t < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VeronesePrediction {
    pub t: i64,
    pub depth: usize,
    /// Set when `t < 0` and the clamp `max(0, t)` was applied.
    pub clamped: bool,
}

pub fn predicted_depth_veronese(spec: &VeroneseSpec) -> VeronesePrediction {
    let t = spec.t();
    VeronesePrediction {
        t,
        depth: t.max(0) as usize,
        clamped: t < 0,
    }
}

pub fn veronese_type(spec: &VeroneseSpec) -> Result<MonomialIdeal> {
    let vars = Arc::new(VariableSet::indexed("x", spec.n));
    let mut gens = Vec::new();
    let mut a = vec![0u32; spec.n];
    bounded_compositions(&spec.bounds, 0, spec.d, &mut a, &mut gens);
    if gens.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    MonomialIdeal::new(vars, gens)
}

fn bounded_compositions(bounds: &[u32], pos: usize, left: u32, a: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if pos == bounds.len() {
        if left == 0 {
            out.push(Monomial::new(a.clone()));
        }
        return;
    }
    let rest_cap: u32 = bounds[pos + 1..].iter().sum();
    let lo = left.saturating_sub(rest_cap);
    for e in lo..=bounds[pos].min(left) {
        a[pos] = e;
        bounded_compositions(bounds, pos + 1, left - e, a, out);
    }
    a[pos] = 0;
}

/// `I_{n,d}`: all squarefree monomials of degree `d`, for `2 ≤ d < n`.
pub fn squarefree_veronese(n: usize, d: u32) -> Result<MonomialIdeal> {
    if d < 2 || d as usize >= n {
        return Err(Error::InvalidSpec("squarefree Veronese needs 2 <= d < n".into()));
    }
    veronese_type(&VeroneseSpec::new(n, d, vec![1; n])?)
}

/// `max{0, n - k(n - d) - 1}` for `k = 1..=kmax`.
pub fn predicted_squarefree_veronese_profile(n: usize, d: u32, kmax: usize) -> Vec<usize> {
    (1..=kmax)
        .map(|k| (n as i64 - k as i64 * (n as i64 - d as i64) - 1).max(0) as usize)
        .collect()
}
