//! Readers and writers for the waveform, trace, correlation and weight files.

use std::io::Write;

use wavedesign::metrics::{level_db, CorrelationSet};
use wavedesign::{Complex64, IterationTrace, WaveformSet, WeightProfile};

use crate::error::{CliError, CliResult};
use crate::meta::RunMetadata;

pub const WAVEFORM_HEADER: [&str; 4] = ["m", "p", "re", "im"];
pub const TRACE_HEADER: [&str; 4] = ["iter", "objective", "objective_db", "elapsed_ns"];
pub const CORRELATION_HEADER: [&str; 6] = ["m", "mprime", "lag", "re", "im", "level_db"];

/// Largest tolerated ||entry| − 1| when reading waveforms.
pub const UNIMODULAR_TOL: f64 = 1e-6;

/// 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_err(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => std::io::Error::other(format!("{other:?}")),
    }
}

fn start<W: Write>(mut out: W, meta: Option<&RunMetadata>, header: &[&str]) -> std::io::Result<csv::Writer<W>> {
    if let Some(m) = meta {
        out.write_all(m.to_header().as_bytes())?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    Ok(w)
}

pub fn write_waveforms<W: Write>(out: W, meta: Option<&RunMetadata>, y: &WaveformSet) -> std::io::Result<()> {
    let mut w = start(out, meta, &WAVEFORM_HEADER)?;
    for m in 0..y.num_codes() {
        for (p, z) in y.column(m).iter().enumerate() {
            let row = [(m + 1).to_string(), (p + 1).to_string(), fmt_f64(z.re), fmt_f64(z.im)];
            w.write_record(&row).map_err(csv_err)?;
        }
    }
    w.flush()
}

/// `timing = false` writes zero for every elapsed time.
pub fn write_trace<W: Write>(
    out: W,
    meta: Option<&RunMetadata>,
    trace: &IterationTrace,
    timing: bool,
) -> std::io::Result<()> {
    let mut w = start(out, meta, &TRACE_HEADER)?;
    for r in trace.records() {
        let ns = if timing { r.elapsed_ns } else { 0 };
        let row = [r.iter.to_string(), fmt_f64(r.objective), fmt_f64(r.objective_db), ns.to_string()];
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()
}

/// Every ordered pair (m, m'), lags ascending, limited to |lag| ≤ `window`.
pub fn write_correlations<W: Write>(
    out: W,
    meta: Option<&RunMetadata>,
    c: &CorrelationSet,
    window: Option<usize>,
) -> std::io::Result<()> {
    let mut w = start(out, meta, &CORRELATION_HEADER)?;
    let p = c.code_length() as isize;
    let reach = window.map_or(p - 1, |l| (l as isize).min(p - 1));
    for a in 0..c.num_codes() {
        for b in 0..c.num_codes() {
            for lag in -reach..=reach {
                let z = c.get(a, b, lag);
                let row = [
                    (a + 1).to_string(),
                    (b + 1).to_string(),
                    lag.to_string(),
                    fmt_f64(z.re),
                    fmt_f64(z.im),
                    fmt_f64(level_db(z)),
                ];
                w.write_record(&row).map_err(csv_err)?;
            }
        }
    }
    w.flush()
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn check_header(rdr: &mut csv::Reader<&[u8]>, expected: &[&str], source_name: &str) -> CliResult<()> {
    let perr = |line, message| CliError::Parse {
        source_name: source_name.to_string(),
        line,
        message,
    };
    let headers = rdr.headers().map_err(|e| perr(line_of(&e), e.to_string()))?;
    let line = headers.position().map_or(1, |p| p.line());
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        return Err(perr(line, format!("header `{}`, expected `{}`", got.join(","), expected.join(","))));
    }
    Ok(())
}

fn line_of(e: &csv::Error) -> u64 {
    e.position().map_or(0, |p| p.line())
}

fn records<'a>(
    rdr: &'a mut csv::Reader<&'a [u8]>,
    width: usize,
    source_name: &'a str,
) -> impl Iterator<Item = CliResult<(u64, csv::StringRecord)>> + 'a {
    rdr.records().map(move |r| {
        let rec = r.map_err(|e| CliError::Parse {
            source_name: source_name.to_string(),
            line: line_of(&e),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != width {
            return Err(CliError::Parse {
                source_name: source_name.to_string(),
                line,
                message: format!("{} fields, expected {width}", rec.len()),
            });
        }
        Ok((line, rec))
    })
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, name: &str, line: u64, source_name: &str) -> CliResult<T> {
    let s = &rec[i];
    s.parse().map_err(|_| CliError::Parse {
        source_name: source_name.to_string(),
        line,
        message: format!("column `{name}`: cannot parse `{s}`"),
    })
}

/// Parses a waveform file, rejecting gaps, duplicates and non-unimodular entries.
pub fn parse_waveforms(text: &str, source_name: &str) -> CliResult<(Option<RunMetadata>, WaveformSet)> {
    let meta = RunMetadata::parse_header(text, source_name)?;
    let mut rdr = reader(text);
    check_header(&mut rdr, &WAVEFORM_HEADER, source_name)?;
    let mut rows = Vec::new();
    for r in records(&mut rdr, 4, source_name) {
        let (line, rec) = r?;
        let m: usize = field(&rec, 0, "m", line, source_name)?;
        let p: usize = field(&rec, 1, "p", line, source_name)?;
        let re: f64 = field(&rec, 2, "re", line, source_name)?;
        let im: f64 = field(&rec, 3, "im", line, source_name)?;
        if m == 0 || p == 0 {
            return Err(CliError::Parse {
                source_name: source_name.to_string(),
                line,
                message: "indices are 1-based".into(),
            });
        }
        rows.push((line, m, p, Complex64::new(re, im)));
    }
    let (Some(num_codes), Some(code_length)) = (rows.iter().map(|r| r.1).max(), rows.iter().map(|r| r.2).max()) else {
        return Err(CliError::Validation(format!("{source_name}: no waveform rows")));
    };
    let mut data: Vec<Option<Complex64>> = vec![None; num_codes * code_length];
    for &(line, m, p, z) in &rows {
        let slot = &mut data[(m - 1) * code_length + (p - 1)];
        if slot.is_some() {
            return Err(CliError::Parse {
                source_name: source_name.to_string(),
                line,
                message: format!("duplicate entry m={m}, p={p}"),
            });
        }
        if (z.norm() - 1.0).abs().is_nan() || (z.norm() - 1.0).abs() > UNIMODULAR_TOL {
            return Err(CliError::Validation(format!(
                "{source_name}: line {line}: entry m={m}, p={p} has magnitude {}, not unit modulus",
                z.norm()
            )));
        }
        *slot = Some(z);
    }
    let data: Vec<Complex64> = data
        .iter()
        .enumerate()
        .map(|(i, z)| {
            z.ok_or_else(|| {
                CliError::Validation(format!(
                    "{source_name}: missing entry m={}, p={}",
                    i / code_length + 1,
                    i % code_length + 1
                ))
            })
        })
        .collect::<CliResult<_>>()?;
    let y = WaveformSet::from_column_major(code_length, num_codes, data, UNIMODULAR_TOL)?;
    Ok((meta, y))
}

/// Parses a trace file back into its records.
pub fn parse_trace(text: &str, source_name: &str) -> CliResult<(Option<RunMetadata>, IterationTrace)> {
    let meta = RunMetadata::parse_header(text, source_name)?;
    let mut rdr = reader(text);
    check_header(&mut rdr, &TRACE_HEADER, source_name)?;
    let mut trace = IterationTrace::new();
    let mut last = None;
    for r in records(&mut rdr, 4, source_name) {
        let (line, rec) = r?;
        let iter: usize = field(&rec, 0, "iter", line, source_name)?;
        let objective: f64 = field(&rec, 1, "objective", line, source_name)?;
        let ns: u128 = field(&rec, 3, "elapsed_ns", line, source_name)?;
        if last.is_some_and(|l| iter <= l) {
            return Err(CliError::Parse {
                source_name: source_name.to_string(),
                line,
                message: "iterations must increase".into(),
            });
        }
        last = Some(iter);
        trace.push(iter, objective, ns);
    }
    Ok((meta, trace))
}

/// One weight per line for lags 0, 1, …, P−1. Blank lines and `#` comments
/// are skipped.
pub fn parse_weights(text: &str, source_name: &str) -> CliResult<WeightProfile> {
    let mut gamma = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let g: f64 = line.parse().map_err(|_| CliError::Parse {
            source_name: source_name.to_string(),
            line: i as u64 + 1,
            message: format!("cannot parse weight `{line}`"),
        })?;
        gamma.push(g);
    }
    WeightProfile::new(gamma).map_err(|e| CliError::Validation(format!("{source_name}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use wavedesign::metrics::correlations;
    use wavedesign::waveform::random_unimodular;

    fn to_string(f: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn waveforms_round_trip_bitwise() {
        let y = random_unimodular(3, 5, 11);
        let text = to_string(|b| write_waveforms(b, None, &y));
        assert!(text.starts_with("m,p,re,im\n1,1,"));
        let (meta, back) = parse_waveforms(&text, "w").unwrap();
        assert!(meta.is_none());
        assert_eq!(back.as_slice(), y.as_slice());
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.1).parse::<f64>().unwrap(), -0.1);
    }

    #[test]
    fn bad_cell_reports_line() {
        let text = "# hand written\nm,p,re,im\n1,1,1,0\n1,2,abc,0\n";
        let err = parse_waveforms(text, "w.csv").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, .. }), "{err}");
    }

    #[test]
    fn short_row_reports_line() {
        let err = parse_waveforms("m,p,re,im\n1,1,1,0\n1,2,1\n", "w").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn wrong_header_rejected() {
        assert!(matches!(parse_waveforms("a,b,c,d\n1,1,1,0\n", "w"), Err(CliError::Parse { line: 1, .. })));
    }

    #[test]
    fn non_unimodular_is_validation() {
        let err = parse_waveforms("m,p,re,im\n1,1,1,0\n1,2,0.5,0\n", "w").unwrap_err();
        assert!(matches!(err, CliError::Validation(_)), "{err}");
        assert!(parse_waveforms("m,p,re,im\n1,1,1.0000005,0\n", "w").is_ok());
    }

    #[test]
    fn gaps_and_duplicates() {
        assert!(matches!(parse_waveforms("m,p,re,im\n1,1,1,0\n2,2,1,0\n", "w"), Err(CliError::Validation(_))));
        assert!(matches!(parse_waveforms("m,p,re,im\n1,1,1,0\n1,1,1,0\n", "w"), Err(CliError::Parse { line: 3, .. })));
    }

    #[test]
    fn window_limits_lags() {
        let y = random_unimodular(2, 6, 1);
        let c = correlations(&y);
        let text = to_string(|b| write_correlations(b, None, &c, Some(2)));
        assert_eq!(text.lines().count(), 1 + 4 * 5);
        let full = to_string(|b| write_correlations(b, None, &c, None));
        assert_eq!(full.lines().count(), 1 + 4 * 11);
        let wide = to_string(|b| write_correlations(b, None, &c, Some(100)));
        assert_eq!(wide, full);
    }

    #[test]
    fn trace_round_trip_and_timing_mask() {
        let mut t = IterationTrace::new();
        t.push(0, 10.0, 0);
        t.push(1, 4.0, 1234);
        let text = to_string(|b| write_trace(b, None, &t, true));
        assert_eq!(parse_trace(&text, "t").unwrap().1, t);
        let masked = to_string(|b| write_trace(b, None, &t, false));
        assert!(masked.lines().nth(2).unwrap().ends_with(",0"));
    }

    #[test]
    fn weights_file() {
        let w = parse_weights("# lag weights\n1\n0.5\n\n0 # off\n", "g").unwrap();
        assert_eq!(w.gamma(), &[1.0, 0.5, 0.0]);
        let err = parse_weights("1\nx\n", "g").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }));
        assert!(matches!(parse_weights("1\n-1\n", "g"), Err(CliError::Validation(_))));
    }
}
