//! The `M^(l)` family: LQFAs accepting `σ^k` with probability at least
//! `((n-1)/n)^l` when `k ≥ l` and with probability 0 when `k < l`.
//!
//! `M^(1)` has states `q_0, q_1, .., q_{n-1}`, reads `σ` with `F_n` followed
//! by the canonical observable and accepts on `q_1 .. q_{n-1}`. Each expansion
//! gives every accepting state `q` fresh children `q·1 .. q·(n-1)`; these
//! become the new accepting group. A new first stage applies `F_n` on each
//! block `{q} ∪ children(q)` and measures canonically on old-accepting and
//! new states, then the previous stages run with the new states untouched.

use crate::linalg::{fourier, projector_onto, StateVector, Unitary};
use crate::semantics::{Lqfa, Observable, Stage};
use crate::{Error, Result, DEFAULT_DIM_CAP};

/// `M^(l)` together with its state bookkeeping.
#[derive(Clone, Debug)]
pub struct MellAutomaton {
    n: usize,
    ell: usize,
    automaton: Lqfa,
    /// `groups[h]` lists the basis indices of depth-`h` states.
    groups: Vec<Vec<usize>>,
    /// Path label of every basis state; `q_0` is the empty path.
    paths: Vec<Vec<u32>>,
}

impl MellAutomaton {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn automaton(&self) -> &Lqfa {
        &self.automaton
    }

    pub fn into_automaton(self) -> Lqfa {
        self.automaton
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    /// Basis indices of the depth-`h` group, `0 ≤ h ≤ ell`. Groups interleave
    /// under the depth-first ordering, so they are index lists, not ranges.
    pub fn group(&self, h: usize) -> &[usize] {
        &self.groups[h]
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn accepting(&self) -> &[usize] {
        &self.groups[self.ell]
    }

    pub fn paths(&self) -> &[Vec<u32>] {
        &self.paths
    }
}

/// `Σ_{i=0}^{ell} (n-1)^i`, or `None` on overflow.
pub fn mell_dim(n: usize, ell: usize) -> Option<usize> {
    let mut total = 0usize;
    let mut term = 1usize;
    for i in 0..=ell {
        total = total.checked_add(term)?;
        if i < ell {
            term = term.checked_mul(n - 1)?;
        }
    }
    Some(total)
}

pub fn build_m1(n: usize) -> Result<MellAutomaton> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "M^(1) needs n >= 2, got {n}"
        )));
    }
    let stage = Stage::new_unchecked(Unitary::from_matrix(fourier(n)?)?, Observable::canonical(n));
    let accepting: Vec<usize> = (1..n).collect();
    let automaton = Lqfa::new(
        StateVector::basis(n, 0)?,
        vec![stage],
        vec![Stage::identity(n)],
        projector_onto(n, accepting.iter().copied())?,
    )?;
    let paths = std::iter::once(vec![])
        .chain((1..n as u32).map(|c| vec![c]))
        .collect();
    Ok(MellAutomaton {
        n,
        ell: 1,
        automaton,
        groups: vec![vec![0], accepting],
        paths,
    })
}

/// [`expand_capped`] with the default dimension cap.
pub fn expand(m: &MellAutomaton) -> Result<MellAutomaton> {
    expand_capped(m, DEFAULT_DIM_CAP)
}

/// `M^(l)` to `M^(l+1)`.
pub fn expand_capped(m: &MellAutomaton, cap: usize) -> Result<MellAutomaton> {
    let n = m.n;
    let old_dim = m.dim();
    let required = m
        .accepting()
        .len()
        .checked_mul(n - 1)
        .and_then(|fresh| fresh.checked_add(old_dim))
        .unwrap_or(usize::MAX);
    if required > cap {
        return Err(Error::Capacity {
            what: format!("M^({})", m.ell + 1),
            required,
            cap,
        });
    }

    let mut paths: Vec<(Vec<u32>, Option<usize>)> = m
        .paths
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, Some(i)))
        .collect();
    for &q in m.accepting() {
        for c in 1..n as u32 {
            let mut p = m.paths[q].clone();
            p.push(c);
            paths.push((p, None));
        }
    }
    paths.sort_by(|a, b| a.0.cmp(&b.0));
    let new_dim = paths.len();

    let mut map = vec![0; old_dim];
    let mut index_of = std::collections::HashMap::with_capacity(new_dim);
    for (i, (p, old)) in paths.iter().enumerate() {
        if let Some(o) = old {
            map[*o] = i;
        }
        index_of.insert(p.clone(), i);
    }

    let depth = m.ell + 1;
    let mut groups: Vec<Vec<usize>> = m
        .groups
        .iter()
        .map(|g| {
            let mut g: Vec<usize> = g.iter().map(|&i| map[i]).collect();
            g.sort_unstable();
            g
        })
        .collect();
    groups.push(
        (0..new_dim)
            .filter(|&i| paths[i].0.len() == depth)
            .collect(),
    );

    let f = fourier(n)?;
    let mut blocks = Vec::with_capacity(m.accepting().len());
    let mut measured = Vec::new();
    for &q in m.accepting() {
        let parent = map[q];
        let mut block = vec![parent];
        for c in 1..n as u32 {
            let mut p = m.paths[q].clone();
            p.push(c);
            block.push(index_of[&p]);
        }
        measured.extend_from_slice(&block);
        blocks.push((block, f.clone()));
    }
    measured.sort_unstable();
    let b = Stage::new_unchecked(
        Unitary::from_blocks(new_dim, blocks)?,
        Observable::canonical_on(new_dim, &measured)?,
    );

    let (machine, _) = m.automaton.as_leaf().expect("M^(l) is a leaf automaton");
    let fresh = format!("depth{depth}");
    let mut sigma = Vec::with_capacity(machine.sigma_pipeline().len() + 1);
    sigma.push(b);
    sigma.extend(machine.sigma_pipeline().iter().map(|s| {
        Stage::new_unchecked(
            s.unitary().embed(new_dim, &map),
            s.observable().embed(new_dim, &map, &fresh),
        )
    }));

    let automaton = Lqfa::new(
        StateVector::basis(new_dim, map[0])?,
        sigma,
        vec![Stage::identity(new_dim)],
        projector_onto(new_dim, groups[depth].iter().copied())?,
    )?;
    Ok(MellAutomaton {
        n,
        ell: depth,
        automaton,
        groups,
        paths: paths.into_iter().map(|(p, _)| p).collect(),
    })
}

/// [`build_mell_capped`] with the default dimension cap.
pub fn build_mell(n: usize, ell: usize) -> Result<MellAutomaton> {
    build_mell_capped(n, ell, DEFAULT_DIM_CAP)
}

/// `M^(1)` expanded `ell - 1` times.
pub fn build_mell_capped(n: usize, ell: usize, cap: usize) -> Result<MellAutomaton> {
    if ell < 1 {
        return Err(Error::InvalidParameter("M^(l) needs l >= 1".into()));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "M^(l) needs n >= 2, got {n}"
        )));
    }
    if n > cap {
        return Err(Error::Capacity {
            what: "M^(1)".into(),
            required: n,
            cap,
        });
    }
    let mut m = build_m1(n)?;
    for _ in 1..ell {
        m = expand_capped(&m, cap)?;
    }
    Ok(m)
}

/// Per-state probabilities `x_1..x_l` of the depth groups of `M^(l)` after
/// `k` symbols. `q_0` carries the same value as depth 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceState {
    n: usize,
    ell: usize,
    k: usize,
    x: Vec<f64>,
}

impl RecurrenceState {
    /// The state after one symbol: `x_1 = 1/n`, deeper groups empty.
    pub fn new(n: usize, ell: usize) -> Result<Self> {
        if n < 2 || ell < 1 {
            return Err(Error::InvalidParameter(format!(
                "recurrence needs n >= 2 and l >= 1, got n={n}, l={ell}"
            )));
        }
        let mut x = vec![0.0; ell];
        x[0] = 1.0 / n as f64;
        Ok(Self { n, ell, k: 1, x })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `x_h` for `1 ≤ h ≤ l`.
    pub fn x(&self, h: usize) -> f64 {
        self.x[h - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.x
    }

    /// `x_1 + Σ_h (n-1)^h x_h`; stays 1.
    pub fn mass(&self) -> f64 {
        let r = (self.n - 1) as f64;
        self.x[0]
            + self
                .x
                .iter()
                .enumerate()
                .map(|(i, v)| r.powi(i as i32 + 1) * v)
                .sum::<f64>()
    }

    /// `x_h(k) = Σ_{j=0}^{l-h} (n-1)^j/n^{j+1} x_{j+h-1}(k-1) + ((n-1)/n)^{l-h+1} x_l(k-1)`
    /// with `x_0 = x_1`.
    pub fn step(&self) -> Self {
        let n = self.n as f64;
        let r = n - 1.0;
        let ell = self.ell;
        let prev = |i: usize| self.x[i.max(1) - 1];
        let x = (1..=ell)
            .map(|h| {
                let chain: f64 = (0..=ell - h)
                    .map(|j| r.powi(j as i32) / n.powi(j as i32 + 1) * prev(j + h - 1))
                    .sum();
                chain + (r / n).powi((ell - h + 1) as i32) * prev(ell)
            })
            .collect();
        Self {
            n: self.n,
            ell,
            k: self.k + 1,
            x,
        }
    }
}

pub fn recurrence_step(s: &RecurrenceState) -> RecurrenceState {
    s.step()
}

/// `(n-1)^l x_l(k)`, the acceptance probability of `M^(l)` on `σ^k`.
pub fn recurrence_event(n: usize, ell: usize, k: usize) -> Result<f64> {
    let mut s = RecurrenceState::new(n, ell)?;
    if k < ell {
        return Ok(0.0);
    }
    while s.k < k {
        s = s.step();
    }
    Ok(((n - 1) as f64).powi(ell as i32) * s.x(ell))
}

/// Acceptance probability of `M^(3)` on `σ^k` in closed form.
pub fn closed_form_m3(n: usize, k: usize) -> f64 {
    if k <= 2 {
        return 0.0;
    }
    let nf = n as f64;
    let r2 = (nf - 1.0).powi(2);
    let q = (2.0 * nf - 2.0) / (nf * nf);
    (nf - 1.0) / nf * (1.0 - (q.powi(k as i32 - 2) * r2 + 1.0) / (r2 + 1.0))
}

/// Cut point and isolation radius obtained by thresholding `M^(3)` between
/// `σ^{t-1}` and `σ^t`: the midpoint and half-gap of the two event values.
pub fn shortcut_isolation_m3(n: usize, t: usize) -> Result<(f64, f64)> {
    if n < 2 || t < 4 {
        return Err(Error::InvalidParameter(format!(
            "shortcut isolation needs n >= 2 and t >= 4, got n={n}, t={t}"
        )));
    }
    let lo = closed_form_m3(n, t - 1);
    let hi = closed_form_m3(n, t);
    Ok((0.5 * (lo + hi), 0.5 * (hi - lo)))
}

/// `(1/2)(2/n)^{t-3}((n-1)/n)^t`, the half-difference of consecutive
/// `M^(3)` values in closed form.
pub fn shortcut_radius_m3(n: usize, t: usize) -> f64 {
    let nf = n as f64;
    0.5 * (2.0 / nf).powi(t as i32 - 3) * ((nf - 1.0) / nf).powi(t as i32)
}
