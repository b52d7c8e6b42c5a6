//! Distribution specs: named families, probability files, or inline weight
//! lists, tried in that order.
//!
//!   uniform:m            equal mass on m symbols
//!   dirac-uniform:m:w    mass w spread over m symbols plus an atom of 1-w
//!   zipf:m:s             p_i proportional to i^-s, i = 1..m
//!   <path>               one probability per line, # comments allowed
//!   w1,w2,...            inline non-negative weights, normalized

use gt_risk::Distribution;
use std::path::Path;

pub fn parse(spec: &str) -> Result<Distribution, String> {
    let s = spec.trim();
    if s.is_empty() {
        return Err("empty distribution spec".to_string());
    }
    if let Some(rest) = s.strip_prefix("uniform:") {
        let m: usize = rest
            .parse()
            .map_err(|_| format!("uniform:m needs an integer alphabet size, got '{rest}'"))?;
        return Distribution::uniform(m).map_err(|e| e.to_string());
    }
    if let Some(rest) = s.strip_prefix("dirac-uniform:") {
        let (m_str, w_str) = rest
            .split_once(':')
            .ok_or_else(|| format!("expected dirac-uniform:m:w, got '{s}'"))?;
        let m: usize = m_str
            .parse()
            .map_err(|_| format!("dirac-uniform block size must be an integer, got '{m_str}'"))?;
        let w: f64 = w_str
            .parse()
            .map_err(|_| format!("dirac-uniform weight must be a number, got '{w_str}'"))?;
        return Distribution::dirac_uniform(m, w).map_err(|e| e.to_string());
    }
    if let Some(rest) = s.strip_prefix("zipf:") {
        let (m_str, s_str) = rest
            .split_once(':')
            .ok_or_else(|| format!("expected zipf:m:s, got '{s}'"))?;
        let m: usize = m_str
            .parse()
            .map_err(|_| format!("zipf alphabet size must be an integer, got '{m_str}'"))?;
        let exponent: f64 = s_str
            .parse()
            .map_err(|_| format!("zipf exponent must be a number, got '{s_str}'"))?;
        return Distribution::zipf(m, exponent).map_err(|e| e.to_string());
    }
    let path = Path::new(s);
    if path.exists() {
        return parse_file(path);
    }
    let weights = s
        .split(',')
        .map(|t| {
            t.trim().parse::<f64>().map_err(|_| {
                format!(
                    "'{}' in '{s}' is not a number (spec must be a named family, \
                     an existing file, or a comma-separated weight list)",
                    t.trim()
                )
            })
        })
        .collect::<Result<Vec<f64>, String>>()?;
    Distribution::from_weights(&weights).map_err(|e| e.to_string())
}

fn parse_file(path: &Path) -> Result<Distribution, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut probs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let p: f64 = line
            .parse()
            .map_err(|_| format!("{}:{}: '{line}' is not a number", path.display(), i + 1))?;
        probs.push(p);
    }
    if probs.is_empty() {
        return Err(format!("{}: no probabilities found", path.display()));
    }
    Distribution::from_probs(&probs).map_err(|e| format!("{}: {e}", path.display()))
}
