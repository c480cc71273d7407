//! Unary regular languages and their isolated-cut-point LQFA recognizers.
//!
//! A unary DFA is summarised by its preperiod `T`, period `P` and the set of
//! accepting states among `0 .. T+P-1`. For `T > 0` the language splits into a
//! finite part `L_T ⊆ σ^{≤T}` and a periodic tail `L_P ⊆ σ^{≥T+1}`. Each part
//! is recognised by a deterministic cyclic automaton filtered through `M^(T+1)`
//! (or its complement), and the two are joined by an LQFA union.

use std::collections::{BTreeMap, BTreeSet};

use crate::linalg::{cyclic_permutation, projector_onto, StateVector, Unitary};
use crate::mell::build_mell_capped;
use crate::semantics::{
    complement, cut_point_report, event_table, product, CutPointReport, Lqfa, Observable, Stage,
};
use crate::{Error, Result, DEFAULT_DIM_CAP};

/// A minimal unary DFA in `(T, P, accept)` form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryDfa {
    t: usize,
    p: usize,
    accept: BTreeSet<usize>,
}

impl UnaryDfa {
    pub fn new(t: usize, p: usize, accept: impl IntoIterator<Item = usize>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInput("period must be at least 1".into()));
        }
        let accept: BTreeSet<usize> = accept.into_iter().collect();
        if let Some(&q) = accept.iter().find(|&&q| q >= t + p) {
            return Err(Error::InvalidInput(format!(
                "accepting state {q} out of range 0..{}",
                t + p
            )));
        }
        Ok(Self { t, p, accept })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn accept(&self) -> &BTreeSet<usize> {
        &self.accept
    }
}

/// Whether `σ^k` is accepted by `d`.
pub fn membership(d: &UnaryDfa, k: usize) -> bool {
    let state = if k < d.t { k } else { d.t + (k - d.t) % d.p };
    d.accept.contains(&state)
}

/// Accepted lengths `0 ..= T` as residues modulo `T + 1`, or `None` when
/// `T = 0` and there is no finite part to lift.
pub fn lift_finite_part(d: &UnaryDfa) -> Option<BTreeSet<usize>> {
    if d.t == 0 {
        return None;
    }
    Some((0..=d.t).filter(|&i| membership(d, i)).collect())
}

/// Accepted tail lengths `T+1 .. T+P` as residues modulo `P`.
pub fn lift_periodic_part(d: &UnaryDfa) -> BTreeSet<usize> {
    (0..d.p)
        .map(|i| d.t + 1 + i)
        .filter(|&k| membership(d, k))
        .map(|k| k % d.p)
        .collect()
}

/// The `m`-state cyclic automaton accepting `σ^k` exactly when `k mod m` is in
/// `residues`.
pub fn build_periodic_moqfa(m: usize, residues: &BTreeSet<usize>) -> Result<Lqfa> {
    if m == 0 {
        return Err(Error::InvalidInput("cyclic automaton needs m >= 1".into()));
    }
    if let Some(&r) = residues.iter().find(|&&r| r >= m) {
        return Err(Error::InvalidInput(format!(
            "residue {r} out of range 0..{m}"
        )));
    }
    let step = Stage::new_unchecked(
        Unitary::from_matrix(cyclic_permutation(m)?)?,
        Observable::identity(m),
    );
    Lqfa::new(
        StateVector::basis(m, 0)?,
        vec![step],
        vec![Stage::identity(m)],
        projector_onto(m, residues.iter().copied())?,
    )
}

/// Smallest `n ≥ 2` with `((n-1)/n)^{t+1} > 1/2`.
pub fn choose_n(t: usize) -> usize {
    (2..)
        .find(|&n| isolation_bound(n, t) > 0.5)
        .expect("the bound tends to 1")
}

/// `((n-1)/n)^{t+1}`.
pub fn isolation_bound(n: usize, t: usize) -> f64 {
    let nf = n as f64;
    ((nf - 1.0) / nf).powi(t as i32 + 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SynthesisParams {
    /// Fourier dimension of `M^(T+1)`.
    pub n: usize,
    /// Verification horizon.
    pub k_max: usize,
    /// Slack for bound checks.
    pub tolerance: f64,
    /// Largest dense factor allowed.
    pub dim_cap: usize,
}

impl SynthesisParams {
    /// `n = choose_n(T)`, `k_max = T + 3P + 5`.
    pub fn auto(d: &UnaryDfa) -> Self {
        Self::with_n(d, choose_n(d.t.max(1)))
    }

    pub fn with_n(d: &UnaryDfa, n: usize) -> Self {
        Self {
            n,
            k_max: d.t + 3 * d.p + 5,
            tolerance: crate::tol::PROBABILITY,
            dim_cap: DEFAULT_DIM_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// `T > 0`: finite and periodic parts joined by a union.
    Full,
    /// `T = 0`: the cyclic automaton alone.
    PeriodicOnly,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::PeriodicOnly => "periodic-only",
        }
    }
}

/// The synthesized recognizer `A_L` and its named building blocks.
#[derive(Clone, Debug)]
pub struct AssembledRecognizer {
    pub automaton: Lqfa,
    pub params: SynthesisParams,
    /// Members are accepted with at least this probability, non-members with
    /// at most one minus it.
    pub bound: f64,
    pub mode: Mode,
    /// `A_Tcirc`, `A_Pcirc`, `M_T1`, `Mbar_T1`, `A_T`, `A_P` (only `A_Pcirc`
    /// in periodic-only mode).
    pub parts: BTreeMap<&'static str, Lqfa>,
}

impl AssembledRecognizer {
    /// Basis-state counts of every part and of `A_L`.
    pub fn part_dims(&self) -> BTreeMap<&'static str, usize> {
        let mut dims: BTreeMap<_, _> = self.parts.iter().map(|(k, a)| (*k, a.dim())).collect();
        dims.insert("A_L", self.automaton.dim());
        dims
    }

    pub fn part(&self, name: &str) -> Option<&Lqfa> {
        self.parts.get(name)
    }

    /// Claimed `(accept, reject)` bounds. With an undersized `n` the bound
    /// falls below 1/2 and only the cut point 1/2 itself is claimed.
    pub fn claimed_bounds(&self) -> (f64, f64) {
        (self.bound.max(0.5), (1.0 - self.bound).min(0.5))
    }
}

/// Assembles `A_L`, refusing parameters without positive isolation.
pub fn assemble(d: &UnaryDfa, params: SynthesisParams) -> Result<AssembledRecognizer> {
    if d.t > 0 && params.n >= 2 && isolation_bound(params.n, d.t) <= 0.5 {
        return Err(Error::InvalidParameter(format!(
            "n = {} gives ((n-1)/n)^{} = {} <= 1/2, no isolation; n = {} is the smallest that works",
            params.n,
            d.t + 1,
            isolation_bound(params.n, d.t),
            choose_n(d.t)
        )));
    }
    assemble_unchecked(d, params)
}

/// [`assemble`] without the isolation check, for probing undersized `n`.
pub fn assemble_unchecked(d: &UnaryDfa, params: SynthesisParams) -> Result<AssembledRecognizer> {
    let cap = params.dim_cap;
    let check = |what: &str, dim: usize| -> Result<()> {
        if dim > cap {
            return Err(Error::Capacity {
                what: what.into(),
                required: dim,
                cap,
            });
        }
        Ok(())
    };
    let mut parts = BTreeMap::new();

    let Some(finite) = lift_finite_part(d) else {
        let residues = (0..d.p).filter(|&k| membership(d, k)).collect();
        check("A_Pcirc", d.p)?;
        let a_p = build_periodic_moqfa(d.p, &residues)?;
        parts.insert("A_Pcirc", a_p.clone());
        return Ok(AssembledRecognizer {
            automaton: a_p,
            params,
            bound: 1.0,
            mode: Mode::PeriodicOnly,
            parts,
        });
    };
    if params.n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n must be >= 2, got {}",
            params.n
        )));
    }

    check("A_Tcirc", d.t + 1)?;
    check("A_Pcirc", d.p)?;
    let a_tc = build_periodic_moqfa(d.t + 1, &finite)?;
    let a_pc = build_periodic_moqfa(d.p, &lift_periodic_part(d))?;
    let m = build_mell_capped(params.n, d.t + 1, cap)?.into_automaton();
    let m_bar = complement(&m);

    let a_t = product(&a_tc, &m_bar)?;
    let a_p = product(&a_pc, &m)?;
    let a_l = complement(&product(&complement(&a_t), &complement(&a_p))?);

    let bound = isolation_bound(params.n, d.t);
    parts.insert("A_Tcirc", a_tc);
    parts.insert("A_Pcirc", a_pc);
    parts.insert("M_T1", m);
    parts.insert("Mbar_T1", m_bar);
    parts.insert("A_T", a_t);
    parts.insert("A_P", a_p);
    Ok(AssembledRecognizer {
        automaton: a_l,
        params,
        bound,
        mode: Mode::Full,
        parts,
    })
}

/// Evaluates `r` on `σ^0 .. σ^k_max` and checks it against the membership
/// oracle and the claimed bounds.
pub fn verify(r: &AssembledRecognizer, d: &UnaryDfa) -> Result<CutPointReport> {
    let k_max = r.params.k_max;
    if k_max < d.t + 2 * d.p {
        return Err(Error::InvalidParameter(format!(
            "horizon {k_max} is shorter than T + 2P = {}",
            d.t + 2 * d.p
        )));
    }
    let table = event_table(&r.automaton, k_max);
    let (accept, reject) = r.claimed_bounds();
    crate::semantics::cut_point_report_with_tolerance(
        &table,
        |k| membership(d, k),
        accept,
        reject,
        r.params.tolerance,
    )
}

/// [`cut_point_report`] of an explicit table, for callers that already hold one.
pub fn report_for(
    table: &crate::semantics::EventTable,
    r: &AssembledRecognizer,
    d: &UnaryDfa,
) -> Result<CutPointReport> {
    let (accept, reject) = r.claimed_bounds();
    cut_point_report(table, |k| membership(d, k), accept, reject)
}
