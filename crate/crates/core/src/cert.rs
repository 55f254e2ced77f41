//! JSON certificates bundling a family, its construction trace, analysis and
//! bound check, plus independent re-verification of such documents.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::bounds::{check_family, BoundCheck};
use crate::construct::{self, check_max_conditions, Construction, ConstructionKind, ConstructionTrace, TraceJson};
use crate::linalg::LinalgError;
use crate::scid::{analyze, FamilyJson, ReportJson, ScidError, SubspaceFamily};

pub const CERT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertParams {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub command: String,
    pub seed: Option<u64>,
    pub timestamp: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub params: CertParams,
    pub family: FamilyJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<TraceJson>,
    pub report: ReportJson,
    pub bounds: BoundCheck,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("family is not a SCID")]
    NotAScid,
    #[error(transparent)]
    Scid(#[from] ScidError),
}

impl Certificate {
    pub fn from_construction(c: &Construction, provenance: Provenance) -> Result<Certificate, CertError> {
        let p = c.trace.params;
        let mut cert = Certificate::for_family(&c.family, provenance)?;
        cert.params.eps = p.eps;
        cert.params.eta = p.eta;
        cert.trace = Some(c.trace.to_json());
        Ok(cert)
    }

    pub fn for_family(family: &SubspaceFamily, provenance: Provenance) -> Result<Certificate, CertError> {
        let report = analyze(family)?;
        let bounds = check_family(&report).map_err(|_| CertError::NotAScid)?;
        Ok(Certificate {
            version: CERT_VERSION.to_string(),
            params: CertParams {
                n: report.n,
                k: report.k,
                t: bounds.bounds.params.t,
                q: family.field().order(),
                eps: None,
                eta: None,
            },
            family: family.to_json(),
            trace: None,
            report: report.to_json(),
            bounds,
            provenance,
        })
    }

    pub fn to_canonical_json(&self) -> String {
        canonical_json(self)
    }
}

/// Sorted keys, no insignificant whitespace.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string(&v).expect("serializable")
}

/// One field whose stored value differs from the recomputed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub path: String,
    pub stored: Value,
    pub recomputed: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub ok: bool,
    /// `certificate` or `family`.
    pub input: String,
    pub is_scid: bool,
    pub sum: Option<usize>,
    pub problems: Vec<String>,
    pub mismatches: Vec<Mismatch>,
}

/// Input that cannot be interpreted at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MalformedInput {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("unrecognized document: {0}")]
    Shape(String),
    #[error(transparent)]
    Entry(LinalgError),
}

fn diff(path: &str, stored: &Value, recomputed: &Value, out: &mut Vec<Mismatch>) {
    match (stored, recomputed) {
        (Value::Object(a), Value::Object(b)) => {
            let keys: std::collections::BTreeSet<&String> = a.keys().chain(b.keys()).collect();
            for key in keys {
                let sub = format!("{path}.{key}");
                diff(&sub, a.get(key).unwrap_or(&Value::Null), b.get(key).unwrap_or(&Value::Null), out);
            }
        }
        (Value::Array(a), Value::Array(b)) if a.len() == b.len() => {
            for (i, (x, y)) in a.iter().zip(b).enumerate() {
                diff(&format!("{path}[{i}]"), x, y, out);
            }
        }
        _ if stored != recomputed => out.push(Mismatch {
            path: path.to_string(),
            stored: stored.clone(),
            recomputed: recomputed.clone(),
        }),
        _ => {}
    }
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Rebuilds the family, mapping mathematical defects to problems and
/// uninterpretable entries to [`MalformedInput`].
fn load_family(fj: &FamilyJson, problems: &mut Vec<String>) -> Result<Option<SubspaceFamily>, MalformedInput> {
    match fj.to_family() {
        Ok((family, non_canonical)) => {
            for i in non_canonical {
                problems.push(format!("member {} basis is not in reduced row-echelon form", i + 1));
            }
            Ok(Some(family))
        }
        Err(ScidError::Linalg(e @ (LinalgError::BadEntry(_) | LinalgError::RaggedRows { .. }))) => Err(MalformedInput::Entry(e)),
        Err(ScidError::Malformed(m)) => Err(MalformedInput::Shape(m)),
        Err(e) => {
            problems.push(e.to_string());
            Ok(None)
        }
    }
}

fn check_trace(family: &SubspaceFamily, tj: &TraceJson, problems: &mut Vec<String>) -> Result<(), MalformedInput> {
    let mut components = std::collections::BTreeMap::new();
    for (label, sj) in &tj.components {
        if sj.ambient != family.ambient() {
            problems.push(format!("trace component {label} has ambient {}", sj.ambient));
            continue;
        }
        let (s, canonical) = sj.to_subspace(family.field()).map_err(MalformedInput::Entry)?;
        if !canonical {
            problems.push(format!("trace component {label} basis is not in reduced row-echelon form"));
        }
        components.insert(label.clone(), s);
    }
    let trace = ConstructionTrace { kind: tj.kind, params: tj.params, components };
    if let Err(e) = trace.check_component_dims() {
        problems.push(format!("trace: {e}"));
    }
    if trace.kind == ConstructionKind::Max {
        if let Err(e) = check_max_conditions(family, &trace) {
            problems.push(format!("trace: {e}"));
        }
    }
    let p = tj.params;
    if p.q != family.field().order() {
        problems.push(format!("trace records q = {} but the family is over a field of order {}", p.q, family.field().order()));
        return Ok(());
    }
    match construct::build(tj.kind, p.n, p.k, p.t, family.field(), p.eta, p.eps) {
        Ok(rebuilt) => {
            if rebuilt.family != *family {
                problems.push(format!("family differs from a fresh {} construction with the recorded parameters", tj.kind.name()));
            }
            if rebuilt.trace != trace {
                problems.push("trace differs from a fresh construction with the recorded parameters".into());
            }
        }
        Err(e) => problems.push(format!("recorded construction parameters are invalid: {e}")),
    }
    Ok(())
}

/// Verifies a certificate or a bare family document.
pub fn verify_document(text: &str) -> Result<Verification, MalformedInput> {
    let value: Value = serde_json::from_str(text).map_err(|e| MalformedInput::Json(e.to_string()))?;
    let is_cert = value.get("report").is_some() || value.get("version").is_some();
    let mut problems = Vec::new();
    let mut mismatches = Vec::new();

    let (family_json, cert) = if is_cert {
        let cert: Certificate = serde_json::from_value(value).map_err(|e| MalformedInput::Shape(e.to_string()))?;
        (cert.family.clone(), Some(cert))
    } else {
        let fj: FamilyJson = serde_json::from_value(value).map_err(|e| MalformedInput::Shape(e.to_string()))?;
        (fj, None)
    };
    let input = if cert.is_some() { "certificate" } else { "family" }.to_string();
    let Some(family) = load_family(&family_json, &mut problems)? else {
        return Ok(Verification { ok: false, input, is_scid: false, sum: None, problems, mismatches });
    };
    let report = match analyze(&family) {
        Ok(r) => r,
        Err(e) => {
            problems.push(e.to_string());
            return Ok(Verification { ok: false, input, is_scid: false, sum: None, problems, mismatches });
        }
    };
    if !report.is_scid {
        problems.push("pairwise intersection dimensions are not constant".into());
    }
    let bounds = check_family(&report).ok();
    if let Some(b) = &bounds {
        if b.violation {
            problems.push(format!("sum {} exceeds the {} bound", b.sum, b.violated.join(", ")));
        }
    }

    if let Some(cert) = &cert {
        if cert.version != CERT_VERSION {
            problems.push(format!("unsupported certificate version {:?}", cert.version));
        }
        diff("report", &json(&cert.report), &json(&report.to_json()), &mut mismatches);
        match &bounds {
            Some(b) => diff("bounds", &json(&cert.bounds), &json(b), &mut mismatches),
            None => problems.push("stored bounds cannot be recomputed for a non-SCID".into()),
        }
        let p = cert.params;
        let recomputed = (report.n, report.k, report.t, family.field().order());
        if (p.n, p.k, Some(p.t), p.q) != recomputed {
            diff(
                "params",
                &json(&(p.n, p.k, Some(p.t), p.q)),
                &json(&recomputed),
                &mut mismatches,
            );
        }
        if let Some(tj) = &cert.trace {
            check_trace(&family, tj, &mut problems)?;
        }
    }
    Ok(Verification {
        ok: problems.is_empty() && mismatches.is_empty(),
        input,
        is_scid: report.is_scid,
        sum: Some(report.sum()),
        problems,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct_max;
    use crate::gf::Field;

    fn prov() -> Provenance {
        Provenance { command: "test".into(), seed: None, timestamp: "0".into() }
    }

    fn cert() -> String {
        let c = construct_max(3, 2, 1, &Field::prime(2).unwrap()).unwrap();
        Certificate::from_construction(&c, prov()).unwrap().to_canonical_json()
    }

    #[test]
    fn round_trip_verifies() {
        let v = verify_document(&cert()).unwrap();
        assert!(v.ok, "{v:?}");
        assert_eq!(v.sum, Some(6));
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let s = cert();
        assert!(!s.contains(' ') || !s.contains(": "));
        let bounds_at = s.find("\"bounds\"").unwrap();
        let family_at = s.find("\"family\"").unwrap();
        assert!(bounds_at < family_at);
    }

    #[test]
    fn tampering_is_detected() {
        let mut v: Value = serde_json::from_str(&cert()).unwrap();
        v["family"]["members"][0]["basis"][0][2] = Value::from(1);
        let out = verify_document(&v.to_string()).unwrap();
        assert!(!out.ok);
        assert!(!out.mismatches.is_empty() || !out.problems.is_empty());
    }

    #[test]
    fn bare_family_and_garbage() {
        let c = construct_max(3, 2, 1, &Field::prime(2).unwrap()).unwrap();
        let v = verify_document(&canonical_json(&c.family.to_json())).unwrap();
        assert!(v.ok);
        assert_eq!(v.input, "family");
        assert!(matches!(verify_document("not json"), Err(MalformedInput::Json(_))));
        assert!(matches!(verify_document("{\"x\": 1}"), Err(MalformedInput::Shape(_))));
    }
}
