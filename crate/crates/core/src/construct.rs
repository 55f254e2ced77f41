//! Explicit SCIDs realizing the attainable values of `dim S + dim I`.
//!
//! The coordinate constructions (`max`, `spectrum1`, `spectrum2`) give every
//! component space its own block of standard coordinates, so "spanning maximal
//! dimension" holds by construction and every intersection is the span of the
//! shared coordinates. The ambient dimension is the total block size, which is
//! also `dim S`.
//!
//! Sunflowers come from field reduction: lines of `V(m, q^t)` become a partial
//! `t`-spread of `V(mt, q)`, which is then lifted over a center.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Field, GfError};
use crate::linalg::{self, LinalgError, Subspace, SubspaceJson};
use crate::scid::{ScidError, SubspaceFamily};
use crate::search::{self, SearchError, SubspaceEnumerator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("subspace is not defined over an extension of the requested base field")]
    NoBaseField,
    #[error("not a spread: {0}")]
    NotASpread(String),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scid(#[from] ScidError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

pub type Result<T> = std::result::Result<T, ConstructError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    Max,
    Spectrum1,
    Spectrum2,
    Sunflower,
}

impl ConstructionKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::Max => "max",
            ConstructionKind::Spectrum1 => "spectrum1",
            ConstructionKind::Spectrum2 => "spectrum2",
            ConstructionKind::Sunflower => "sunflower",
        }
    }
}

impl std::str::FromStr for ConstructionKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "max" => Ok(ConstructionKind::Max),
            "spectrum1" => Ok(ConstructionKind::Spectrum1),
            "spectrum2" => Ok(ConstructionKind::Spectrum2),
            "sunflower" => Ok(ConstructionKind::Sunflower),
            other => Err(format!("unknown construction kind '{other}'")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub q: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eta: Option<usize>,
}

/// Named component spaces a construction used, all in the family's ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub kind: ConstructionKind,
    pub params: ConstructionParams,
    pub components: BTreeMap<String, Subspace>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TraceJson {
    pub kind: ConstructionKind,
    pub params: ConstructionParams,
    pub components: BTreeMap<String, SubspaceJson>,
}

impl ConstructionTrace {
    pub fn component(&self, label: &str) -> Option<&Subspace> {
        self.components.get(label)
    }

    pub fn to_json(&self) -> TraceJson {
        TraceJson {
            kind: self.kind,
            params: self.params,
            components: self.components.iter().map(|(k, v)| (k.clone(), v.to_json())).collect(),
        }
    }

    /// Dimension each labelled component must have for this construction.
    pub fn expected_dim(&self, label: &str) -> Option<usize> {
        let ConstructionParams { n, k, t, eps, eta, .. } = self.params;
        let (eps, eta) = (eps.unwrap_or(0), eta.unwrap_or(2));
        let kt = k - t;
        let prefix = label.split('_').next().unwrap_or(label);
        Some(match (self.kind, prefix) {
            (ConstructionKind::Sunflower, "sigma") => t,
            (ConstructionKind::Sunflower, "C") => kt,
            (ConstructionKind::Sunflower, "E") => eps,
            (ConstructionKind::Sunflower, "U") => t - eps,
            (ConstructionKind::Sunflower, _) => return None,
            (_, "U") => k - (n - 1) * kt,
            (_, "V") => kt,
            (_, "E") => eps,
            (_, "D") if label == "D" => kt,
            (_, "D") => kt - eps,
            (ConstructionKind::Spectrum2, "P") if eta > 2 => kt * (eta - 2),
            (_, "P") | (_, "X") => eps,
            (_, "Y") => (eta - 1) * eps,
            _ => return None,
        })
    }

    /// Checks every component against [`ConstructionTrace::expected_dim`].
    pub fn check_component_dims(&self) -> std::result::Result<(), String> {
        for (label, space) in &self.components {
            match self.expected_dim(label) {
                Some(d) if d == space.dim() => {}
                Some(d) => return Err(format!("{label} has dimension {}, expected {d}", space.dim())),
                None => return Err(format!("unexpected component {label}")),
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub family: SubspaceFamily,
    pub trace: ConstructionTrace,
}

/// Coordinate-block allocator shared by the coordinate constructions.
struct Layout {
    next: usize,
    blocks: BTreeMap<String, Vec<usize>>,
}

impl Layout {
    fn new() -> Layout {
        Layout { next: 0, blocks: BTreeMap::new() }
    }

    fn alloc(&mut self, label: String, dim: usize) -> Vec<usize> {
        let coords: Vec<usize> = (self.next..self.next + dim).collect();
        self.next += dim;
        self.blocks.insert(label, coords.clone());
        coords
    }

    /// Records a sub-block of an existing block.
    fn record(&mut self, label: String, coords: Vec<usize>) -> Vec<usize> {
        self.blocks.insert(label, coords.clone());
        coords
    }

    fn get(&self, label: &str) -> &[usize] {
        &self.blocks[label]
    }

    fn finish(self, field: &Field, kind: ConstructionKind, params: ConstructionParams, members: Vec<Vec<usize>>) -> Result<Construction> {
        let d = self.next;
        let members = members.into_iter().map(|c| Subspace::coordinates(field, d, c)).collect();
        let components = self
            .blocks
            .into_iter()
            .map(|(label, c)| (label, Subspace::coordinates(field, d, c)))
            .collect();
        Ok(Construction {
            family: SubspaceFamily::new(members)?,
            trace: ConstructionTrace { kind, params, components },
        })
    }
}

fn v_label(i: usize, j: usize) -> String {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    format!("V_{a}_{b}")
}

fn check_basic(n: usize, k: usize, t: usize) -> Result<()> {
    if n < 2 || t == 0 || t > k {
        return Err(ConstructError::InvalidParams(format!("need n >= 2 and 1 <= t <= k (n = {n}, k = {k}, t = {t})")));
    }
    Ok(())
}

fn check_max_regime(n: usize, k: usize, t: usize) -> Result<()> {
    check_basic(n, k, t)?;
    if (n - 1) * (k - t) > k {
        return Err(ConstructError::PreconditionViolated(format!(
            "(n-1)(k-t) <= k fails: ({n}-1)({k}-{t}) = {} > {k}",
            (n - 1) * (k - t)
        )));
    }
    Ok(())
}

fn params(n: usize, k: usize, t: usize, field: &Field, eps: Option<usize>, eta: Option<usize>) -> ConstructionParams {
    ConstructionParams { n, k, t, q: field.order(), eps, eta }
}

/// Members `pi_1..pi_n` attaining `dim S + dim I = nk`.
pub fn construct_max(n: usize, k: usize, t: usize, field: &Field) -> Result<Construction> {
    check_max_regime(n, k, t)?;
    let u = k - (n - 1) * (k - t);
    let mut layout = Layout::new();
    for i in 1..=n {
        layout.alloc(format!("U_{i}"), u);
    }
    for i in 1..=n {
        for j in i + 1..=n {
            layout.alloc(v_label(i, j), k - t);
        }
    }
    let members = (1..=n)
        .map(|i| {
            let mut c = layout.get(&format!("U_{i}")).to_vec();
            for j in (1..=n).filter(|&j| j != i) {
                c.extend_from_slice(layout.get(&v_label(i, j)));
            }
            c
        })
        .collect();
    layout.finish(field, ConstructionKind::Max, params(n, k, t, field, None, None), members)
}

/// Which of the three max-construction conditions failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionFailure {
    #[error("missing component {0}")]
    MissingComponent(String),
    #[error("condition 1: V_{0}_{1} is not the intersection of members {0} and {1}")]
    Intersection(usize, usize),
    #[error("condition 2: member {0} is not spanned by U_{0} and its intersections")]
    MemberSpan(usize),
    #[error("condition 3: components span dimension {found}, expected {expected}")]
    Independence { found: usize, expected: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Checks the three conditions characterizing `dim S + dim I = nk` against a
/// trace holding `U_i` and `V_i_j` (1-based labels).
pub fn check_max_conditions(family: &SubspaceFamily, trace: &ConstructionTrace) -> std::result::Result<(), ConditionFailure> {
    let members = family.members();
    let n = members.len();
    let get = |label: String| trace.component(&label).ok_or(ConditionFailure::MissingComponent(label));

    for i in 1..=n {
        for j in i + 1..=n {
            if get(v_label(i, j))? != &members[i - 1].intersect(&members[j - 1])? {
                return Err(ConditionFailure::Intersection(i, j));
            }
        }
    }
    for i in 1..=n {
        let mut parts = vec![get(format!("U_{i}"))?.clone()];
        for j in (1..=n).filter(|&j| j != i) {
            parts.push(members[i - 1].intersect(&members[j - 1])?);
        }
        if linalg::span_all(family.field(), family.ambient(), &parts)? != members[i - 1] {
            return Err(ConditionFailure::MemberSpan(i));
        }
    }
    let mut all = Vec::new();
    for i in 1..=n {
        all.push(get(format!("U_{i}"))?.clone());
        for j in i + 1..=n {
            all.push(get(v_label(i, j))?.clone());
        }
    }
    let found = linalg::span_all(family.field(), family.ambient(), &all)?.dim();
    let expected = all.iter().map(Subspace::dim).sum();
    if found != expected {
        return Err(ConditionFailure::Independence { found, expected });
    }
    Ok(())
}

/// `dim S + dim I = nk - eps`, overlapping three members in an `eps`-space `E`.
pub fn construct_spectrum1(n: usize, k: usize, t: usize, field: &Field, eps: usize) -> Result<Construction> {
    check_max_regime(n, k, t)?;
    if eps > k - t {
        return Err(ConstructError::PreconditionViolated(format!("0 <= eps <= k-t fails: eps = {eps} > {}", k - t)));
    }
    if eps == 0 {
        let mut c = construct_max(n, k, t, field)?;
        c.trace.kind = ConstructionKind::Spectrum1;
        c.trace.params.eps = Some(0);
        return Ok(c);
    }
    if n < 3 {
        return Err(ConstructError::PreconditionViolated("n >= 3 is required when eps > 0".into()));
    }
    let kt = k - t;
    let u = k - (n - 1) * kt;
    let mut layout = Layout::new();
    for i in 1..=n {
        layout.alloc(format!("U_{i}"), u);
    }
    for i in 1..=n {
        for j in i + 1..=n {
            if (i, j) != (1, 2) && (i, j) != (2, n) {
                layout.alloc(v_label(i, j), kt);
            }
        }
    }
    let e = layout.get(&v_label(1, n))[..eps].to_vec();
    let e = layout.record("E".into(), e);
    let d1 = layout.alloc("D_1".into(), kt - eps);
    let d2 = layout.alloc("D_2".into(), kt - eps);
    let p1 = layout.alloc("P_1".into(), eps);
    let p2 = layout.alloc("P_2".into(), eps);
    let pn = layout.alloc(format!("P_{n}"), eps);

    let cat = |parts: &[&[usize]]| parts.concat();
    let mut members = Vec::with_capacity(n);
    let mut m1 = cat(&[&d1, &p1, layout.get("U_1")]);
    for j in 3..=n {
        m1.extend_from_slice(layout.get(&v_label(1, j)));
    }
    members.push(m1);
    let mut m2 = cat(&[&e, &d1, &d2, &p2, layout.get("U_2")]);
    for j in 3..n {
        m2.extend_from_slice(layout.get(&v_label(2, j)));
    }
    members.push(m2);
    for j in 3..n {
        let mut mj = layout.get(&format!("U_{j}")).to_vec();
        for i in (1..=n).filter(|&i| i != j) {
            mj.extend_from_slice(layout.get(&v_label(i, j)));
        }
        members.push(mj);
    }
    let mut mn = cat(&[&d2, &pn, layout.get(&format!("U_{n}")), layout.get(&v_label(1, n))]);
    for j in 3..n {
        mn.extend_from_slice(layout.get(&v_label(j, n)));
    }
    members.push(mn);
    layout.finish(field, ConstructionKind::Spectrum1, params(n, k, t, field, Some(eps), None), members)
}

/// `dim S + dim I = nk - (eta-2)(k-t) - eps`: members `1..eta-1` and `n` share `D`.
pub fn construct_spectrum2(n: usize, k: usize, t: usize, field: &Field, eta: usize, eps: usize) -> Result<Construction> {
    check_max_regime(n, k, t)?;
    if eta < 2 || eta + 1 > n {
        return Err(ConstructError::PreconditionViolated(format!("2 <= eta <= n-1 fails: eta = {eta}, n = {n}")));
    }
    if eps > k - t {
        return Err(ConstructError::PreconditionViolated(format!("0 <= eps <= k-t fails: eps = {eps} > {}", k - t)));
    }
    if eta == 2 {
        let mut c = construct_spectrum1(n, k, t, field, eps)?;
        c.trace.kind = ConstructionKind::Spectrum2;
        c.trace.params.eta = Some(2);
        c.trace.params.eps = Some(eps);
        return Ok(c);
    }
    let kt = k - t;
    let u = k - (n - 1) * kt;
    // members glued along D
    let glued: Vec<usize> = (1..eta).chain([n]).collect();
    let mut layout = Layout::new();
    for i in 1..=n {
        layout.alloc(format!("U_{i}"), u);
    }
    let d = layout.alloc("D".into(), kt);
    for &i in &glued {
        layout.alloc(format!("P_{i}"), kt * (eta - 2));
    }
    let p = params(n, k, t, field, Some(eps), Some(eta));

    if eps == 0 {
        let free: Vec<usize> = (eta..n).collect();
        for i in 1..=n {
            for j in i + 1..=n {
                if free.contains(&i) || free.contains(&j) {
                    layout.alloc(v_label(i, j), kt);
                }
            }
        }
        let mut members = vec![Vec::new(); n];
        for &i in &glued {
            let mut c = [&d[..], layout.get(&format!("U_{i}")), layout.get(&format!("P_{i}"))].concat();
            for &j in &free {
                c.extend_from_slice(layout.get(&v_label(i, j)));
            }
            members[i - 1] = c;
        }
        for &j in &free {
            let mut c = layout.get(&format!("U_{j}")).to_vec();
            for i in (1..=n).filter(|&i| i != j) {
                c.extend_from_slice(layout.get(&v_label(i, j)));
            }
            members[j - 1] = c;
        }
        return layout.finish(field, ConstructionKind::Spectrum2, p, members);
    }

    let e = layout.record("E".into(), d[..eps].to_vec());
    for &i in &glued {
        layout.alloc(format!("D_{i}"), kt - eps);
    }
    let y = layout.alloc("Y".into(), (eta - 1) * eps);
    for &i in &glued {
        layout.alloc(format!("X_{i}"), eps);
    }
    let free: Vec<usize> = (eta + 1..n).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            if free.contains(&i) || free.contains(&j) {
                layout.alloc(v_label(i, j), kt);
            }
        }
    }
    let mut members = vec![Vec::new(); n];
    for &i in &glued {
        let mut c = [
            &d[..],
            layout.get(&format!("D_{i}")),
            layout.get(&format!("U_{i}")),
            layout.get(&format!("P_{i}")),
            layout.get(&format!("X_{i}")),
        ]
        .concat();
        for &j in &free {
            c.extend_from_slice(layout.get(&v_label(i, j)));
        }
        members[i - 1] = c;
    }
    let mut c = e.clone();
    for &i in &glued {
        c.extend_from_slice(layout.get(&format!("D_{i}")));
    }
    c.extend_from_slice(layout.get(&format!("U_{eta}")));
    c.extend_from_slice(&y);
    for &j in &free {
        c.extend_from_slice(layout.get(&v_label(eta, j)));
    }
    members[eta - 1] = c;
    for &j in &free {
        let mut c = layout.get(&format!("U_{j}")).to_vec();
        for i in (1..=n).filter(|&i| i != j) {
            c.extend_from_slice(layout.get(&v_label(i, j)));
        }
        members[j - 1] = c;
    }
    layout.finish(field, ConstructionKind::Spectrum2, p, members)
}

/// Field reduction: the `F_q`-subspace of `V(mt, q)` obtained by unpacking every
/// vector of `u` coordinate-wise over `base`.
pub fn field_reduce(u: &Subspace, base: &Field) -> Result<Subspace> {
    let ext = u.field();
    let t = ext.degree_over(base).map_err(|_| ConstructError::NoBaseField)?;
    let m = u.ambient();
    let betas: Vec<u32> = (0..t)
        .map(|l| {
            let mut e = vec![0; t];
            e[l] = 1;
            ext.from_base_vector(&e, base)
        })
        .collect::<std::result::Result<_, _>>()?;
    let mut rows = Vec::with_capacity(u.dim() * t);
    for b in u.rows() {
        for &beta in &betas {
            let mut v = Vec::with_capacity(m * t);
            for &x in b {
                v.extend(ext.as_base_vector(ext.mul(beta, x), base)?);
            }
            rows.push(v);
        }
    }
    Ok(Subspace::from_rows(base, m * t, &rows)?)
}

/// Number of lines of `V(m, Q)`, or `None` when it overflows.
fn line_count(m: usize, order: u128) -> Option<u128> {
    let top = order.checked_pow(m as u32)?;
    Some((top - 1) / (order - 1))
}

/// The Desarguesian `t`-spread of `V(mt, q)`: the field reduction of every line of `V(m, q^t)`.
pub fn desarguesian_spread(m: usize, field: &Field, t: usize) -> Result<Vec<Subspace>> {
    if m == 0 || t == 0 {
        return Err(ConstructError::InvalidParams("need m >= 1 and t >= 1".into()));
    }
    let ext = field.extension(t)?;
    let lines = SubspaceEnumerator::new(m, 1, &ext, search::enumeration_cap())?;
    lines.map(|l| field_reduce(&l, field)).collect()
}

/// Lifts a spanning partial spread of `V(m, q)` to a sunflower in `V(m + c, q)`
/// whose center is spanned by the last `c` coordinates.
pub fn lift_spread_to_sunflower(spread: &SubspaceFamily, c: usize) -> Result<SubspaceFamily> {
    let members = spread.members();
    let t = members[0].dim();
    if members.iter().any(|s| s.dim() != t) {
        return Err(ConstructError::NotASpread("members have different dimensions".into()));
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if members[i].intersection_dim(&members[j])? != 0 {
                return Err(ConstructError::NotASpread(format!("members {} and {} meet nontrivially", i + 1, j + 1)));
            }
        }
    }
    let m = spread.ambient();
    if linalg::span_all(spread.field(), m, members)?.dim() != m {
        return Err(ConstructError::NotASpread("members do not span the ambient space".into()));
    }
    let center = Subspace::coordinates(spread.field(), m + c, m..m + c);
    let lifted = members
        .iter()
        .map(|s| s.embed(m + c).span_sum(&center))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(SubspaceFamily::new(lifted)?)
}

/// A `(k, k-t)`-sunflower with `dim S + dim I = 2k + (n-2)t - eta t + eps`.
pub fn construct_sunflower(n: usize, k: usize, t: usize, field: &Field, eta: usize, eps: usize) -> Result<Construction> {
    check_basic(n, k, t)?;
    if eta == 0 || eta + 2 > n {
        return Err(ConstructError::PreconditionViolated(format!("1 <= eta <= n-2 fails: eta = {eta}, n = {n}")));
    }
    if eps >= t {
        return Err(ConstructError::PreconditionViolated(format!("0 <= eps < t fails: eps = {eps}, t = {t}")));
    }
    let m = n - eta;
    let big_q = (field.order() as u128).pow(t as u32);
    if line_count(m, big_q).is_some_and(|lines| (n as u128) > lines) {
        return Err(ConstructError::PreconditionViolated(format!(
            "n <= (q^(t(n-eta))-1)/(q^t-1) fails: n = {n}, q = {}, t = {t}, eta = {eta}",
            field.order()
        )));
    }
    let ext = field.extension(t)?;
    let standard: Vec<Subspace> = (0..m).map(|i| Subspace::coordinates(&ext, m, [i])).collect();
    let mut lines: Vec<Subspace> = SubspaceEnumerator::new_unbounded(m, 1, &ext)?
        .filter(|l| !standard.contains(l))
        .take(eta)
        .collect();
    lines.extend(standard);

    let mut spread = lines.iter().map(|l| field_reduce(l, field)).collect::<Result<Vec<_>>>()?;
    let mut components = BTreeMap::new();
    let base_dim = m * t;
    let ambient = base_dim + eps;
    let center_dim = k - t;
    let total = ambient + center_dim;
    if eps > 0 {
        spread = spread.iter().map(|s| s.embed(ambient)).collect();
        let e = Subspace::coordinates(field, ambient, base_dim..ambient);
        let u = spread[0].leading(t - eps);
        spread[0] = u.span_sum(&e)?;
        components.insert("E".to_string(), e.embed(total));
        components.insert("U".to_string(), u.embed(total));
    }
    let spread = SubspaceFamily::new(spread)?;
    let family = lift_spread_to_sunflower(&spread, center_dim)?;
    for (i, s) in spread.members().iter().enumerate() {
        components.insert(format!("sigma_{}", i + 1), s.embed(total));
    }
    components.insert("C".to_string(), Subspace::coordinates(field, total, ambient..total));
    Ok(Construction {
        family,
        trace: ConstructionTrace {
            kind: ConstructionKind::Sunflower,
            params: params(n, k, t, field, Some(eps), Some(eta)),
            components,
        },
    })
}

/// Runs the named construction.
pub fn build(kind: ConstructionKind, n: usize, k: usize, t: usize, field: &Field, eta: Option<usize>, eps: Option<usize>) -> Result<Construction> {
    let eps = eps.unwrap_or(0);
    match kind {
        ConstructionKind::Max => construct_max(n, k, t, field),
        ConstructionKind::Spectrum1 => construct_spectrum1(n, k, t, field, eps),
        ConstructionKind::Spectrum2 => construct_spectrum2(n, k, t, field, eta.unwrap_or(2), eps),
        ConstructionKind::Sunflower => construct_sunflower(n, k, t, field, eta.unwrap_or(1), eps),
    }
}

/// Closed-form `dim S + dim I` promised for a construction.
pub fn target_sum(kind: ConstructionKind, n: usize, k: usize, t: usize, eta: Option<usize>, eps: Option<usize>) -> usize {
    let eps = eps.unwrap_or(0);
    match kind {
        ConstructionKind::Max => n * k,
        ConstructionKind::Spectrum1 => n * k - eps,
        ConstructionKind::Spectrum2 => n * k - (eta.unwrap_or(2) - 2) * (k - t) - eps,
        ConstructionKind::Sunflower => 2 * k + (n - 2) * t - eta.unwrap_or(1) * t + eps,
    }
}
