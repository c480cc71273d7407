use super::Lqfa;
use crate::{tol, Error, Result};

/// Probability that `a` accepts `σ^k`.
pub fn accept_probability(a: &Lqfa, k: usize) -> f64 {
    let mut config = a.initial_configuration();
    for _ in 0..k {
        config = a.read_symbol(&config);
    }
    a.accept_weight(&config)
}

/// Acceptance probabilities for `σ^0 .. σ^k_max`, advancing one configuration
/// incrementally instead of restarting for every length.
pub fn event_table(a: &Lqfa, k_max: usize) -> EventTable {
    let mut config = a.initial_configuration();
    let mut probabilities = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        if k > 0 {
            config = a.read_symbol(&config);
        }
        probabilities.push(a.accept_weight(&config));
    }
    EventTable::new(probabilities)
}

/// The stochastic event `k ↦ p(σ^k)` restricted to `0..=k_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct EventTable {
    probabilities: Vec<f64>,
}

impl EventTable {
    /// Values are clamped into `[0, 1]`; anything further out than the
    /// probability tolerance indicates a simulation bug.
    pub fn new(probabilities: Vec<f64>) -> Self {
        debug_assert!(
            probabilities
                .iter()
                .all(|p| (-tol::PROBABILITY..=1.0 + tol::PROBABILITY).contains(p)),
            "probability out of range: {probabilities:?}"
        );
        Self {
            probabilities: probabilities
                .into_iter()
                .map(|p| p.clamp(0.0, 1.0))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.probabilities.get(k).copied()
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// `(k, p)` pairs in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.probabilities.iter().copied().enumerate()
    }
}

/// Cut point and isolation read off an event table.
#[derive(Clone, Debug, PartialEq)]
pub struct CutPointReport {
    /// Midpoint of `min_accept` and `max_reject`.
    pub lambda: f64,
    /// Half of `min_accept - max_reject`.
    pub rho: f64,
    /// Smallest probability over member lengths (1 when there are none).
    pub min_accept: f64,
    /// Largest probability over non-member lengths (0 when there are none).
    pub max_reject: f64,
    /// Midpoint of the claimed bounds.
    pub claimed_lambda: f64,
    /// Half the gap between the claimed bounds.
    pub claimed_rho: f64,
    /// Lengths whose probability breaks the claimed bound for their side.
    pub violations: Vec<usize>,
}

impl CutPointReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// [`cut_point_report_with_tolerance`] at the default probability tolerance.
pub fn cut_point_report(
    table: &EventTable,
    members: impl Fn(usize) -> bool,
    claimed_accept_bound: f64,
    claimed_reject_bound: f64,
) -> Result<CutPointReport> {
    cut_point_report_with_tolerance(
        table,
        members,
        claimed_accept_bound,
        claimed_reject_bound,
        tol::PROBABILITY,
    )
}

/// Members must reach `claimed_accept_bound - tolerance`, non-members must
/// stay below `claimed_reject_bound + tolerance`.
pub fn cut_point_report_with_tolerance(
    table: &EventTable,
    members: impl Fn(usize) -> bool,
    claimed_accept_bound: f64,
    claimed_reject_bound: f64,
    tolerance: f64,
) -> Result<CutPointReport> {
    if table.is_empty() {
        return Err(Error::InvalidInput("empty event table".into()));
    }
    let unit = 0.0..=1.0;
    if !unit.contains(&claimed_accept_bound) || !unit.contains(&claimed_reject_bound) {
        return Err(Error::InvalidInput(
            "claimed bounds must lie in [0, 1]".into(),
        ));
    }
    if claimed_accept_bound < claimed_reject_bound {
        return Err(Error::InvalidInput(format!(
            "accept bound {claimed_accept_bound} is below reject bound {claimed_reject_bound}"
        )));
    }
    let mut min_accept = 1.0_f64;
    let mut max_reject = 0.0_f64;
    let mut violations = Vec::new();
    for (k, p) in table.iter() {
        if members(k) {
            min_accept = min_accept.min(p);
            if p < claimed_accept_bound - tolerance {
                violations.push(k);
            }
        } else {
            max_reject = max_reject.max(p);
            if p > claimed_reject_bound + tolerance {
                violations.push(k);
            }
        }
    }
    Ok(CutPointReport {
        lambda: 0.5 * (min_accept + max_reject),
        rho: 0.5 * (min_accept - max_reject),
        min_accept,
        max_reject,
        claimed_lambda: 0.5 * (claimed_accept_bound + claimed_reject_bound),
        claimed_rho: 0.5 * (claimed_accept_bound - claimed_reject_bound),
        violations,
    })
}
