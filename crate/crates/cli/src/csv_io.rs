//! The `k,probability` event format.

use std::io::{Read, Write};

use crate::CliError;

pub const HEADER: [&str; 2] = ["k", "probability"];

/// `p` with 12 significant digits, trailing zeros dropped; scientific
/// notation below `1e-4`, as C's `%.12g`.
pub fn format_probability(p: f64) -> String {
    if p == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", p);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, p)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_event_csv<W: Write>(out: W, probabilities: &[f64]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for (k, p) in probabilities.iter().enumerate() {
        w.write_record([k.to_string(), format_probability(*p)])?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: "<output>".into(),
        source,
    })?;
    Ok(())
}

/// Parses an event table, checking the header and that `k` runs 0, 1, 2, ...
pub fn read_event_csv<R: Read>(input: R) -> Result<Vec<f64>, CliError> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().ne(HEADER) {
        return Err(CliError::Csv(format!(
            "header must be {}",
            HEADER.join(",")
        )));
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let k: usize = rec[0]
            .parse()
            .map_err(|_| CliError::Csv(format!("bad length {:?}", &rec[0])))?;
        if k != out.len() {
            return Err(CliError::Csv(format!(
                "expected k = {}, found {k}",
                out.len()
            )));
        }
        let p: f64 = rec[1]
            .parse()
            .map_err(|_| CliError::Csv(format!("bad probability {:?}", &rec[1])))?;
        out.push(p);
    }
    Ok(out)
}
