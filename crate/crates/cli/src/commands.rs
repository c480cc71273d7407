use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use lqfa_core::{
    assemble, assemble_unchecked, build_mell_capped, closed_form_m3, event_table, membership,
    recurrence_event, verify as verify_recognizer, AssembledRecognizer, SynthesisParams, UnaryDfa,
    DEFAULT_DIM_CAP,
};

use crate::csv_io::{format_probability, write_event_csv};
use crate::manifest::{write_atomically, Manifest};
use crate::{CliError, DfaDocument};

pub const DIM_CAP_VAR: &str = "QFA_DIM_CAP";

/// The dimension cap from `QFA_DIM_CAP`, or the default when unset.
pub fn dim_cap_from_env() -> Result<usize, CliError> {
    match std::env::var(DIM_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&c: &usize| c > 0)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "{DIM_CAP_VAR} must be a positive integer, got {v:?}"
                ))
            }),
        Err(_) => Ok(DEFAULT_DIM_CAP),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Engine {
    Simulate,
    Recurrence,
    ClosedForm,
}

/// `--n auto` or an explicit Fourier dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NChoice {
    #[default]
    Auto,
    Fixed(usize),
}

impl FromStr for NChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(NChoice::Auto);
        }
        s.parse()
            .map(NChoice::Fixed)
            .map_err(|_| format!("expected \"auto\" or a positive integer, got {s:?}"))
    }
}

fn stdout_err(source: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

/// Event table of `M^(ell)` from the chosen engine.
pub fn mell(
    n: usize,
    ell: usize,
    k_max: usize,
    engine: Engine,
    cap: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if n < 2 || ell < 1 {
        return Err(CliError::Usage(format!(
            "need --n >= 2 and --ell >= 1, got n={n}, ell={ell}"
        )));
    }
    let probabilities: Vec<f64> = match engine {
        Engine::Simulate => {
            let m = build_mell_capped(n, ell, cap)?;
            event_table(m.automaton(), k_max).probabilities().to_vec()
        }
        Engine::Recurrence => (0..=k_max)
            .map(|k| recurrence_event(n, ell, k))
            .collect::<Result<_, _>>()?,
        Engine::ClosedForm => {
            if ell != 3 {
                return Err(CliError::Usage(format!(
                    "the closed-form engine requires --ell 3, got {ell}"
                )));
            }
            (0..=k_max).map(|k| closed_form_m3(n, k)).collect()
        }
    };
    write_event_csv(out, &probabilities)
}

fn params_for(d: &UnaryDfa, n: NChoice, cap: usize) -> SynthesisParams {
    let mut params = match n {
        NChoice::Auto => SynthesisParams::auto(d),
        NChoice::Fixed(n) => SynthesisParams::with_n(d, n),
    };
    params.dim_cap = cap;
    params
}

fn build(d: &UnaryDfa, n: NChoice, cap: usize) -> Result<AssembledRecognizer, CliError> {
    Ok(assemble(d, params_for(d, n, cap))?)
}

/// Assembles the recognizer and writes its manifest to `out_path`, or to
/// `stdout` when no path is given.
pub fn synthesize(
    doc: &DfaDocument,
    n: NChoice,
    out_path: Option<&Path>,
    cap: usize,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let d = doc.to_dfa()?;
    let r = build(&d, n, cap)?;
    let json = Manifest::new(&r, d.t(), d.p()).to_json();
    match out_path {
        Some(path) => write_atomically(path, json.as_bytes()),
        None => stdout.write_all(json.as_bytes()).map_err(stdout_err),
    }
}

/// Prints the per-length table and cut-point summary. Returns the exit
/// code: 0 when every length respects its bound, 1 otherwise.
///
/// An explicit `n` skips the isolation check so undersized choices can be
/// inspected.
pub fn verify(
    doc: &DfaDocument,
    n: NChoice,
    k_max: Option<usize>,
    cap: usize,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let d = doc.to_dfa()?;
    let mut params = params_for(&d, n, cap);
    if let Some(k) = k_max {
        params.k_max = k;
    }
    let r = match n {
        NChoice::Auto => assemble(&d, params)?,
        NChoice::Fixed(_) => assemble_unchecked(&d, params)?,
    };
    let report = verify_recognizer(&r, &d)?;
    let table = event_table(&r.automaton, r.params.k_max);
    let (accept, reject) = r.claimed_bounds();

    let mut text = String::new();
    text.push_str(&format!(
        "{:>4}  {:<6}  {:<16}  {}\n",
        "k", "member", "probability", "ok"
    ));
    for (k, p) in table.iter() {
        let member = membership(&d, k);
        let ok = !report.violations.contains(&k);
        text.push_str(&format!(
            "{k:>4}  {:<6}  {:<16}  {}\n",
            if member { "yes" } else { "no" },
            format_probability(p),
            if ok { "yes" } else { "NO" }
        ));
    }
    text.push_str(&format!(
        "mode {}, n {}, bound {}\n",
        r.mode.as_str(),
        r.params.n,
        format_probability(r.bound)
    ));
    text.push_str(&format!(
        "claimed: members >= {}, non-members <= {}, lambda {}, rho {}\n",
        format_probability(accept),
        format_probability(reject),
        format_probability(report.claimed_lambda),
        format_probability(report.claimed_rho)
    ));
    text.push_str(&format!(
        "observed: min member {}, max non-member {}, lambda {}, rho {}\n",
        format_probability(report.min_accept),
        format_probability(report.max_reject),
        format_probability(report.lambda),
        format_probability(report.rho)
    ));
    if report.violations.is_empty() {
        text.push_str("violations: 0\n");
    } else {
        let ks: Vec<String> = report.violations.iter().map(usize::to_string).collect();
        text.push_str(&format!(
            "violations: {} at k = {}\n",
            report.violations.len(),
            ks.join(", ")
        ));
    }
    out.write_all(text.as_bytes()).map_err(stdout_err)?;
    Ok(if report.is_clean() { 0 } else { 1 })
}

/// Event table of the assembled recognizer.
pub fn event(
    doc: &DfaDocument,
    n: NChoice,
    k_max: Option<usize>,
    cap: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let d = doc.to_dfa()?;
    let r = build(&d, n, cap)?;
    let k_max = k_max.unwrap_or(r.params.k_max);
    write_event_csv(out, event_table(&r.automaton, k_max).probabilities())
}
