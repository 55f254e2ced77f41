//! Which values of `dim S + dim I` in `[2k, nk]` the constructions realize for
//! given `(n, k, t, q)`, and which are left uncovered.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::construct::{self, ConstructionKind};
use crate::gf::Field;
use crate::scid::analyze;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `(n-1)(k-t) <= k`: coordinate constructions cover `[2k + (n-2)t, nk]`.
    Upper,
    /// Some `eta` with `n <= (q^(t(n-eta))-1)/(q^t-1)`: sunflowers cover part of `[2k, 2k + (n-2)t]`.
    Lower,
}

impl Condition {
    pub fn text(self) -> &'static str {
        match self {
            Condition::Upper => "(n-1)(k-t) <= k",
            Condition::Lower => "n <= (q^(t(n-eta))-1)/(q^t-1)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub kind: ConstructionKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta: Option<usize>,
    pub condition: Condition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub sum: usize,
    pub realizations: Vec<Realization>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gap: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub q: u32,
    pub upper_condition: bool,
    /// Values of `eta` for which the sunflower cardinality condition holds.
    pub lower_etas: Vec<usize>,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumReport {
    pub fn achieved(&self) -> BTreeSet<usize> {
        self.entries.iter().filter(|e| !e.realizations.is_empty()).map(|e| e.sum).collect()
    }

    pub fn gaps(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.realizations.is_empty()).map(|e| e.sum).collect()
    }
}

fn sunflower_fits(n: usize, t: usize, q: u32, eta: usize) -> bool {
    let big_q = (q as u128).pow(t as u32);
    match big_q.checked_pow((n - eta) as u32) {
        Some(top) => n as u128 <= (top - 1) / (big_q - 1),
        None => true,
    }
}

/// Every legal parameter tuple of every construction.
fn candidates(n: usize, k: usize, t: usize, q: u32) -> Vec<(Realization, Option<usize>, Option<usize>)> {
    let mut out = Vec::new();
    let mut push = |kind, eta: Option<usize>, eps: Option<usize>, condition| {
        out.push((Realization { kind, eps, eta, condition }, eta, eps));
    };
    if (n - 1) * (k - t) <= k {
        push(ConstructionKind::Max, None, None, Condition::Upper);
        if n >= 3 {
            for eps in 1..=k - t {
                push(ConstructionKind::Spectrum1, None, Some(eps), Condition::Upper);
            }
            for eta in 3..n {
                for eps in 0..=k - t {
                    push(ConstructionKind::Spectrum2, Some(eta), Some(eps), Condition::Upper);
                }
            }
        }
    }
    for eta in (1..n.saturating_sub(1)).filter(|&eta| sunflower_fits(n, t, q, eta)) {
        for eps in 0..t {
            push(ConstructionKind::Sunflower, Some(eta), Some(eps), Condition::Lower);
        }
    }
    out
}

/// Runs every applicable construction and tabulates the sums it realizes.
pub fn spectrum(n: usize, k: usize, t: usize, field: &Field) -> Result<SpectrumReport, construct::ConstructError> {
    if n < 2 || t == 0 || t > k {
        return Err(construct::ConstructError::InvalidParams(format!(
            "need n >= 2 and 1 <= t <= k (n = {n}, k = {k}, t = {t})"
        )));
    }
    let q = field.order();
    let upper_condition = (n - 1) * (k - t) <= k;
    let lower_etas: Vec<usize> = (1..n.saturating_sub(1)).filter(|&eta| sunflower_fits(n, t, q, eta)).collect();
    let mut entries: Vec<SpectrumEntry> =
        (2 * k..=n * k).map(|sum| SpectrumEntry { sum, realizations: Vec::new(), gap: None }).collect();

    for (real, eta, eps) in candidates(n, k, t, q) {
        let c = construct::build(real.kind, n, k, t, field, eta, eps)?;
        let sum = analyze(&c.family)?.sum();
        entries[sum - 2 * k].realizations.push(real);
    }
    let split = 2 * k + (n - 2) * t;
    for e in entries.iter_mut().filter(|e| e.realizations.is_empty()) {
        let upper = e.sum >= split;
        e.gap = Some(if upper && !upper_condition {
            format!("{} fails", Condition::Upper.text())
        } else if !upper && lower_etas.is_empty() {
            format!("{} fails for every 1 <= eta <= n-2", Condition::Lower.text())
        } else {
            "not realized by any construction".to_string()
        });
    }
    Ok(SpectrumReport { n, k, t, q, upper_condition, lower_etas, entries })
}

fn describe(r: &Realization) -> String {
    let mut s = r.kind.name().to_string();
    if let Some(eta) = r.eta {
        let _ = write!(s, " eta={eta}");
    }
    if let Some(eps) = r.eps {
        let _ = write!(s, " eps={eps}");
    }
    s
}

pub fn render_table(r: &SpectrumReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}, k = {}, t = {}, q = {}", r.n, r.k, r.t, r.q);
    let _ = writeln!(out, "{}: {}", Condition::Upper.text(), if r.upper_condition { "holds" } else { "fails" });
    let etas = if r.lower_etas.is_empty() {
        "none".to_string()
    } else {
        r.lower_etas.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
    };
    let _ = writeln!(out, "{}: eta in {{{etas}}}", Condition::Lower.text());
    let _ = writeln!(out);
    let _ = writeln!(out, "{:>5}  {:<26} condition", "sum", "construction");
    for e in &r.entries {
        match e.realizations.first() {
            Some(real) => {
                let _ = writeln!(out, "{:>5}  {:<26} {}", e.sum, describe(real), real.condition.text());
            }
            None => {
                let _ = writeln!(out, "{:>5}  {:<26} {}", e.sum, "gap", e.gap.as_deref().unwrap_or(""));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn small_spectra_are_full() {
        let r = spectrum(3, 2, 1, &f2()).unwrap();
        assert_eq!(r.achieved(), BTreeSet::from([4, 5, 6]));
        let r = spectrum(3, 3, 2, &f2()).unwrap();
        assert_eq!(r.achieved(), BTreeSet::from([6, 7, 8, 9]));
        assert!(r.gaps().is_empty());
    }

    #[test]
    fn gaps_are_explained() {
        // (n-1)(k-t) = 4 > 3 and no sunflower of 6 members fits for eta = 4
        let r = spectrum(6, 3, 2, &f2()).unwrap();
        assert!(!r.upper_condition);
        assert!(r.entries.iter().any(|e| e.gap.as_deref() == Some("(n-1)(k-t) <= k fails")));
        assert!(render_table(&r).contains("gap"));
    }
}
