//! Run metadata carried as `# key: value` comment lines at the top of output CSVs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub struct RunMetadata {
    pub algorithm: String,
    pub waveforms: usize,
    pub length: usize,
    pub seed: u64,
    pub accelerate: bool,
    pub squarem: String,
    pub rng: String,
    pub stop: String,
    pub tol: f64,
    pub max_iters: usize,
    /// `none`, `band:B` or `file:PATH`.
    pub weights: String,
    pub exec: String,
    pub status: String,
    pub iterations: usize,
    pub elapsed_ns: u128,
    pub final_objective: f64,
    pub final_objective_db: f64,
}

const KEYS: [&str; 17] = [
    "algorithm",
    "waveforms",
    "length",
    "seed",
    "accelerate",
    "squarem",
    "rng",
    "stop",
    "tol",
    "max_iters",
    "weights",
    "exec",
    "status",
    "iterations",
    "elapsed_ns",
    "final_objective",
    "final_objective_db",
];

impl RunMetadata {
    fn values(&self) -> [String; 17] {
        // `{:?}` prints the shortest decimal that parses back to the same f64.
        [
            self.algorithm.clone(),
            self.waveforms.to_string(),
            self.length.to_string(),
            self.seed.to_string(),
            self.accelerate.to_string(),
            self.squarem.clone(),
            self.rng.clone(),
            self.stop.clone(),
            format!("{:?}", self.tol),
            self.max_iters.to_string(),
            self.weights.clone(),
            self.exec.clone(),
            self.status.clone(),
            self.iterations.to_string(),
            self.elapsed_ns.to_string(),
            format!("{:?}", self.final_objective),
            format!("{:?}", self.final_objective_db),
        ]
    }

    /// Comment block, one `# key: value` line per field, newline-terminated.
    pub fn to_header(&self) -> String {
        let mut out = String::new();
        for (k, v) in KEYS.iter().zip(self.values()) {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out
    }

    /// Reads the leading comment block of `text`. Returns `None` when the
    /// file carries no metadata at all.
    pub fn parse_header(text: &str, source_name: &str) -> CliResult<Option<Self>> {
        let mut found = BTreeMap::new();
        let mut last_line = 0u64;
        for (i, line) in text.lines().enumerate() {
            let Some(body) = line.strip_prefix('#') else { break };
            last_line = i as u64 + 1;
            let body = body.strip_prefix(' ').unwrap_or(body);
            let Some((k, v)) = body.split_once(": ") else {
                continue;
            };
            if KEYS.contains(&k) {
                found.insert(k.to_string(), (v.to_string(), last_line));
            }
        }
        if found.is_empty() {
            return Ok(None);
        }
        let take = |key: &str| -> CliResult<(String, u64)> {
            found.get(key).cloned().ok_or_else(|| CliError::Parse {
                source_name: source_name.to_string(),
                line: last_line,
                message: format!("metadata key `{key}` missing"),
            })
        };
        fn num<T: std::str::FromStr>(source_name: &str, key: &str, (v, line): (String, u64)) -> CliResult<T> {
            v.parse().map_err(|_| CliError::Parse {
                source_name: source_name.to_string(),
                line,
                message: format!("metadata `{key}` value `{v}` does not parse"),
            })
        }
        macro_rules! field {
            (str $k:literal) => {
                take($k)?.0
            };
            (num $k:literal) => {
                num(source_name, $k, take($k)?)?
            };
        }
        Ok(Some(Self {
            algorithm: field!(str "algorithm"),
            waveforms: field!(num "waveforms"),
            length: field!(num "length"),
            seed: field!(num "seed"),
            accelerate: field!(num "accelerate"),
            squarem: field!(str "squarem"),
            rng: field!(str "rng"),
            stop: field!(str "stop"),
            tol: field!(num "tol"),
            max_iters: field!(num "max_iters"),
            weights: field!(str "weights"),
            exec: field!(str "exec"),
            status: field!(str "status"),
            iterations: field!(num "iterations"),
            elapsed_ns: field!(num "elapsed_ns"),
            final_objective: field!(num "final_objective"),
            final_objective_db: field!(num "final_objective_db"),
        }))
    }
}
