//! Tables of ordinates γ of nontrivial zeros ρ = 1/2 + iγ.
//!
//! Text format: one ordinate per line, ascending, `#` starts a comment line.
//! An optional second column gives the multiplicity.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Riemann–von Mangoldt main term (T/2π)·log(T/2πe) + 7/8.
pub fn rvm_estimate(t: f64) -> f64 {
    let x = t / (2.0 * PI);
    x * (x.ln() - 1.0) + 0.875
}

const RVM_TOLERANCE: f64 = 2.0;

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    multiplicities: Vec<u32>,
    source: String,
}

impl ZeroTable {
    /// Validates and wraps ordinates. Empty multiplicities mean all ones.
    pub fn new(gammas: Vec<f64>, multiplicities: Vec<u32>, source: impl Into<String>) -> Result<Self> {
        if gammas.is_empty() {
            return Err(Error::EmptyTable);
        }
        let multiplicities = if multiplicities.is_empty() {
            vec![1; gammas.len()]
        } else {
            multiplicities
        };
        if multiplicities.len() != gammas.len() {
            return Err(Error::InvalidTable("multiplicity count differs from ordinate count".into()));
        }
        if let Some(i) = multiplicities.iter().position(|&m| m == 0) {
            return Err(Error::InvalidTable(format!("multiplicity 0 at entry {}", i + 1)));
        }
        for (i, w) in gammas.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(Error::Parse {
                    line: i + 2,
                    msg: format!("ordinate {} does not exceed {}", w[1], w[0]),
                });
            }
        }
        if !(gammas[0] > 0.0) {
            return Err(Error::Parse {
                line: 1,
                msg: format!("ordinate {} is not positive", gammas[0]),
            });
        }
        let table = Self {
            gammas,
            multiplicities,
            source: source.into(),
        };
        table.check_counts()?;
        Ok(table)
    }

    fn check_counts(&self) -> Result<()> {
        let first = self.gammas[0];
        if !(14.13..=14.14).contains(&first) {
            return Err(Error::InvalidTable(format!(
                "first ordinate {first} is not in [14.13, 14.14]"
            )));
        }
        for t in [50.0, 100.0, 500.0, self.max_gamma()] {
            if t > self.max_gamma() {
                continue;
            }
            let n = self.count_below(t)? as f64;
            let est = rvm_estimate(t);
            if (n - est).abs() > RVM_TOLERANCE {
                return Err(Error::InvalidTable(format!(
                    "{n} zeros up to T = {t}, Riemann-von Mangoldt predicts {est:.3}"
                )));
            }
        }
        Ok(())
    }

    /// Parses table text, keeping at most `limit` ordinates.
    pub fn parse(text: &str, source: impl Into<String>, limit: Option<usize>) -> Result<Self> {
        let cap = limit.unwrap_or(usize::MAX);
        let mut gammas = Vec::new();
        let mut mult = Vec::new();
        let mut any_mult = false;
        for (idx, raw) in text.lines().enumerate() {
            if gammas.len() >= cap {
                break;
            }
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let mut cols = body.split_whitespace();
            let g: f64 = cols
                .next()
                .unwrap()
                .parse()
                .map_err(|e| Error::Parse { line, msg: format!("{e}: {body:?}") })?;
            if !(g > 0.0) || !g.is_finite() {
                return Err(Error::Parse { line, msg: format!("ordinate {g} is not positive") });
            }
            if let Some(&prev) = gammas.last() {
                if g <= prev {
                    return Err(Error::Parse {
                        line,
                        msg: format!("ordinate {g} does not exceed {prev}"),
                    });
                }
            }
            let m = match cols.next() {
                Some(c) => {
                    any_mult = true;
                    match c.parse::<u32>() {
                        Ok(m) if m >= 1 => m,
                        _ => {
                            return Err(Error::Parse { line, msg: format!("bad multiplicity {c:?}") })
                        }
                    }
                }
                None => 1,
            };
            gammas.push(g);
            mult.push(m);
        }
        if !any_mult {
            mult.clear();
        }
        Self::new(gammas, mult, source)
    }

    pub fn load(path: impl AsRef<Path>, limit: Option<usize>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path.display().to_string(), limit)
    }

    /// Shortest round-trip decimal form, readable by [`ZeroTable::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.source);
        let plain = self.multiplicities.iter().all(|&m| m == 1);
        for (g, m) in self.gammas.iter().zip(&self.multiplicities) {
            if plain {
                let _ = writeln!(out, "{g}");
            } else {
                let _ = writeln!(out, "{g} {m}");
            }
        }
        out
    }

    /// Sum of multiplicities over γ ≤ t.
    pub fn count_below(&self, t: f64) -> Result<u64> {
        if t > self.max_gamma() {
            return Err(crate::error::out_of_range(
                "T",
                t,
                format!("table coverage (0, {}]", self.max_gamma()),
            ));
        }
        let k = self.gammas.partition_point(|&g| g <= t);
        Ok(self.multiplicities[..k].iter().map(|&m| m as u64).sum())
    }

    /// First `n` entries as a new table.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(crate::error::out_of_range(
                "n",
                n as f64,
                format!("1..={}", self.len()),
            ));
        }
        Ok(Self {
            gammas: self.gammas[..n].to_vec(),
            multiplicities: self.multiplicities[..n].to_vec(),
            source: self.source.clone(),
        })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn max_gamma(&self) -> f64 {
        *self.gammas.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

#[cfg(test)]
pub(crate) const FIRST_30: [f64; 30] = [
    14.134725141734693790,
    21.022039638771554993,
    25.010857580145688763,
    30.424876125859513210,
    32.935061587739189691,
    37.586178158825671257,
    40.918719012147495187,
    43.327073280914999519,
    48.005150881167159728,
    49.773832477672302182,
    52.970321477714460644,
    56.446247697063394804,
    59.347044002602353080,
    60.831778524609809844,
    65.112544048081606661,
    67.079810529494173714,
    69.546401711173979253,
    72.067157674481907583,
    75.704690699083933168,
    77.144840068874805373,
    79.337375020249367923,
    82.910380854086030183,
    84.735492980517050106,
    87.425274613125229407,
    88.809111207634465424,
    92.491899270558484296,
    94.651344040519886967,
    95.870634228245309759,
    98.831194218193692233,
    101.31785100573139123,
];

#[cfg(test)]
mod tests {
    use super::*;

    fn text(gs: &[f64]) -> String {
        let mut s = String::from("# test zeros\n");
        for g in gs {
            s.push_str(&format!("{g:.18}\n"));
        }
        s
    }

    #[test]
    fn parses_first_line_exactly() {
        let t = ZeroTable::parse("14.134725141734693790\n21.022039638771554993\n", "t", None).unwrap();
        assert_eq!(t.gammas()[0], 14.134725141734693790);
        assert_eq!(t.multiplicities(), &[1, 1]);
    }

    #[test]
    fn limit_truncates() {
        let t = ZeroTable::parse(&text(&FIRST_30[..10]), "t", Some(1)).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn non_monotone_reports_line() {
        let err = ZeroTable::parse("# c\n13.0\n14.134725\n12.0\n", "t", None).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn small_first_ordinate_rejected() {
        let err = ZeroTable::parse("13.0\n14.134725\n", "t", None).unwrap_err();
        assert!(matches!(err, Error::InvalidTable(_)), "{err}");
    }

    #[test]
    fn empty_and_garbage() {
        assert!(matches!(ZeroTable::parse("# nothing\n", "t", None), Err(Error::EmptyTable)));
        assert!(matches!(ZeroTable::parse("abc\n", "t", None), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(ZeroTable::parse("-3\n", "t", None), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn counts() {
        let t = ZeroTable::parse(&text(&FIRST_30), "t", None).unwrap();
        assert_eq!(t.count_below(14.0).unwrap(), 0);
        assert_eq!(t.count_below(14.2).unwrap(), 1);
        assert_eq!(t.count_below(100.0).unwrap(), 29);
        assert!(t.count_below(200.0).is_err());
        assert!((rvm_estimate(100.0) - 29.0).abs() < 0.1);
    }

    #[test]
    fn multiplicity_column() {
        let t = ZeroTable::parse("14.134725 2\n21.022039\n25.010857\n", "t", None).unwrap();
        assert_eq!(t.multiplicities(), &[2, 1, 1]);
        assert_eq!(t.count_below(21.5).unwrap(), 3);
        assert!(ZeroTable::parse("14.134725 0\n", "t", None).is_err());
    }

    #[test]
    fn wrong_density_rejected() {
        let mut gs = FIRST_30.to_vec();
        gs.retain(|g| *g < 50.0 || *g > 70.0);
        assert!(ZeroTable::parse(&text(&gs), "t", None).is_err());
    }

    #[test]
    fn round_trip_is_exact() {
        let t = ZeroTable::parse(&text(&FIRST_30), "t", None).unwrap();
        let back = ZeroTable::parse(&t.to_text(), "t", None).unwrap();
        assert_eq!(t.gammas(), back.gammas());
    }
}
