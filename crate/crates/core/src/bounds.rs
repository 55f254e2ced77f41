//! Upper bounds on `dim S + dim I` for a `(k, k-t)`-SCID of size `n`, and the
//! best-bound selection by parameter regime.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scid::ScidReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("invalid parameters n = {n}, k = {k}, t = {t}: need n >= 2 and 1 <= t <= k")]
    InvalidParams { n: usize, k: usize, t: usize },
    #[error("{bound} bound does not apply: {reason}")]
    NotApplicable { bound: &'static str, reason: &'static str },
    #[error("the analyzed family is not a SCID")]
    NotAScid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScidParams {
    pub n: usize,
    pub k: usize,
    pub t: usize,
}

impl ScidParams {
    pub fn new(n: usize, k: usize, t: usize) -> Result<ScidParams, BoundError> {
        if n < 2 || t == 0 || t > k {
            return Err(BoundError::InvalidParams { n, k, t });
        }
        Ok(ScidParams { n, k, t })
    }

    /// `(n-1)(k-t) <= k`, the regime where `nk` is attained.
    pub fn max_construction_applies(&self) -> bool {
        (self.n - 1) * (self.k - self.t) <= self.k
    }
}

pub fn bound_general(p: ScidParams) -> usize {
    p.n * p.k
}

pub fn bound_pair3(p: ScidParams) -> Result<usize, BoundError> {
    if p.n != 3 {
        return Err(BoundError::NotApplicable { bound: "three-member", reason: "n != 3" });
    }
    Ok(2 * (p.k + p.t))
}

pub fn bound_linear(p: ScidParams) -> Result<usize, BoundError> {
    if p.n < 3 {
        return Err(BoundError::NotApplicable { bound: "linear", reason: "n < 3" });
    }
    Ok((p.n - 1) * p.k + 2 * p.t)
}

pub fn bound_refined(p: ScidParams) -> Result<usize, BoundError> {
    if p.n < 3 {
        return Err(BoundError::NotApplicable { bound: "refined", reason: "n < 3" });
    }
    if p.k < 2 * p.t {
        return Err(BoundError::NotApplicable { bound: "refined", reason: "k < 2t" });
    }
    Ok(2 * p.k + 2 * (p.n - 2) * p.t - (p.n - 3))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sharpness {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `(k-t)(n-1) <= k`: best bound `nk`, attained.
    MaxAttainable,
    /// `k >= 2t`, `n >= 3`: best bound `2k + 2(n-2)t - (n-3)`, sharpness open.
    Refined,
    /// `k < 2t`, `(k-t)(n-1) > k`: best bound `nk`, never attained.
    GeneralNotSharp,
}

impl Regime {
    pub fn condition(self) -> &'static str {
        match self {
            Regime::MaxAttainable => "(k-t)(n-1) <= k",
            Regime::Refined => "k >= 2t, n >= 3",
            Regime::GeneralNotSharp => "k < 2t, (k-t)(n-1) > k",
        }
    }
}

impl fmt::Display for Sharpness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sharpness::Yes => "yes",
            Sharpness::No => "no",
            Sharpness::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub params: ScidParams,
    pub general: usize,
    pub pair3: Option<usize>,
    pub linear: Option<usize>,
    pub refined: Option<usize>,
    pub best: usize,
    pub sharp: Sharpness,
    pub regime: Regime,
}

impl BoundReport {
    /// Every applicable bound with its label.
    pub fn applicable(&self) -> Vec<(&'static str, usize)> {
        let mut out = vec![("general", self.general)];
        out.extend(self.pair3.map(|b| ("pair3", b)));
        out.extend(self.linear.map(|b| ("linear", b)));
        out.extend(self.refined.map(|b| ("refined", b)));
        out
    }

    /// Labels of the bounds `sum` exceeds.
    pub fn violated_by(&self, sum: usize) -> Vec<&'static str> {
        self.applicable().into_iter().filter(|&(_, b)| sum > b).map(|(l, _)| l).collect()
    }
}

pub fn best_bound(p: ScidParams) -> BoundReport {
    let general = bound_general(p);
    let pair3 = bound_pair3(p).ok();
    let linear = bound_linear(p).ok();
    let refined = bound_refined(p).ok();
    let (regime, sharp) = if p.max_construction_applies() {
        (Regime::MaxAttainable, Sharpness::Yes)
    } else if p.k >= 2 * p.t && p.n >= 3 {
        (Regime::Refined, Sharpness::Unknown)
    } else {
        (Regime::GeneralNotSharp, Sharpness::No)
    };
    let best = [Some(general), pair3, linear, refined].into_iter().flatten().min().unwrap();
    BoundReport { params: p, general, pair3, linear, refined, best, sharp, regime }
}

/// Result of holding an analyzed family against every applicable bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub bounds: BoundReport,
    pub sum: usize,
    pub violation: bool,
    pub violated: Vec<String>,
    /// `best - sum`; negative only on a violation.
    pub slack: i64,
}

pub fn check_family(report: &ScidReport) -> Result<BoundCheck, BoundError> {
    let t = report.t.filter(|_| report.is_scid).ok_or(BoundError::NotAScid)?;
    let params = ScidParams::new(report.n, report.k, t)?;
    let bounds = best_bound(params);
    let sum = report.sum();
    let violated: Vec<String> = bounds.violated_by(sum).into_iter().map(String::from).collect();
    Ok(BoundCheck {
        slack: bounds.best as i64 - sum as i64,
        violation: !violated.is_empty(),
        violated,
        bounds,
        sum,
    })
}

fn cell(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |b| b.to_string())
}

/// Aligned text table: every bound, then the regime row that selected the best one.
pub fn render_table(r: &BoundReport) -> String {
    let p = r.params;
    let rows = [
        ("general", "nk".to_string(), r.general.to_string()),
        ("three-member", "2(k+t), n = 3".to_string(), cell(r.pair3)),
        ("linear", "(n-1)k+2t, n >= 3".to_string(), cell(r.linear)),
        ("refined", "2k+2(n-2)t-(n-3), k >= 2t, n >= 3".to_string(), cell(r.refined)),
    ];
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, k = {}, t = {}", p.n, p.k, p.t);
    let _ = writeln!(out, "{:<14} {:<36} {:>6}", "bound", "formula", "value");
    for (name, formula, value) in rows {
        let _ = writeln!(out, "{name:<14} {formula:<36} {value:>6}");
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<26} {:<18} sharp", "condition", "best bound");
    let _ = writeln!(out, "{:<26} {:<18} {}", r.regime.condition(), r.best, r.sharp);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, k: usize, t: usize) -> ScidParams {
        ScidParams::new(n, k, t).unwrap()
    }

    #[test]
    fn individual_bounds() {
        assert_eq!(bound_general(p(2, 5, 2)), 10);
        assert_eq!(bound_general(p(3, 2, 1)), 6);
        assert_eq!(bound_general(p(4, 3, 2)), 12);

        assert_eq!(bound_pair3(p(3, 2, 1)).unwrap(), 6);
        assert_eq!(bound_pair3(p(3, 3, 2)).unwrap(), 10);
        assert_eq!(bound_pair3(p(3, 5, 1)).unwrap(), 12);
        assert!(bound_pair3(p(4, 2, 1)).is_err());

        assert_eq!(bound_linear(p(3, 5, 1)).unwrap(), 12);
        assert_eq!(bound_linear(p(4, 3, 1)).unwrap(), 11);
        assert_eq!(bound_linear(p(5, 4, 1)).unwrap(), 18);
        assert!(bound_linear(p(2, 4, 1)).is_err());

        assert_eq!(bound_refined(p(4, 2, 1)).unwrap(), 7);
        assert_eq!(bound_refined(p(3, 4, 1)).unwrap(), 10);
        assert_eq!(bound_refined(p(4, 4, 1)).unwrap(), 11);
        assert!(bound_refined(p(4, 3, 2)).is_err());
        assert!(bound_refined(p(2, 4, 1)).is_err());
    }

    #[test]
    fn regimes() {
        let r = best_bound(p(3, 2, 1));
        assert_eq!((r.best, r.sharp, r.regime), (6, Sharpness::Yes, Regime::MaxAttainable));
        let r = best_bound(p(4, 2, 1));
        assert_eq!((r.best, r.sharp, r.regime), (7, Sharpness::Unknown, Regime::Refined));
        let r = best_bound(p(5, 3, 2));
        assert_eq!((r.best, r.sharp, r.regime), (15, Sharpness::No, Regime::GeneralNotSharp));
        assert_eq!(best_bound(p(2, 7, 1)).regime, Regime::MaxAttainable);
    }

    #[test]
    fn invalid_params() {
        assert!(ScidParams::new(1, 2, 1).is_err());
        assert!(ScidParams::new(3, 2, 0).is_err());
        assert!(ScidParams::new(3, 2, 3).is_err());
    }

    #[test]
    fn table_mentions_best() {
        let s = render_table(&best_bound(p(4, 2, 1)));
        assert!(s.contains("k >= 2t, n >= 3"));
        assert!(s.contains("unknown"));
    }

    #[test]
    fn sharpness_serializes_lowercase() {
        assert_eq!(serde_json::to_string(&Sharpness::Unknown).unwrap(), "\"unknown\"");
        assert_eq!(serde_json::to_string(&Regime::MaxAttainable).unwrap(), "\"max_attainable\"");
    }
}
