//! Families of equal-dimension subspaces and their SCID analysis: pairwise
//! intersection dimensions, the spans `S` and `I`, sunflower centers and
//! partial spreads.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::Field;
use crate::linalg::{self, LinalgError, Subspace, SubspaceJson};
use crate::par::{self, Execution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScidError {
    #[error("a family needs at least two members, got {0}")]
    TooFewMembers(usize),
    #[error("members do not share field and ambient dimension")]
    IncompatibleMembers,
    #[error("members {0} and {1} coincide")]
    DuplicateMember(usize, usize),
    #[error("members have different dimensions")]
    MixedMemberDimensions,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("malformed family: {0}")]
    Malformed(String),
}

/// An ordered family `pi_1, ..., pi_n` (n >= 2) of pairwise distinct subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFamily {
    field: Field,
    ambient: usize,
    members: Vec<Subspace>,
}

impl SubspaceFamily {
    pub fn new(members: Vec<Subspace>) -> Result<SubspaceFamily, ScidError> {
        if members.len() < 2 {
            return Err(ScidError::TooFewMembers(members.len()));
        }
        let field = members[0].field().clone();
        let ambient = members[0].ambient();
        if members.iter().any(|m| m.field() != &field || m.ambient() != ambient) {
            return Err(ScidError::IncompatibleMembers);
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if members[i] == members[j] {
                    return Err(ScidError::DuplicateMember(i, j));
                }
            }
        }
        Ok(SubspaceFamily { field, ambient, members })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sub-family on the given member indices.
    pub fn select(&self, indices: &[usize]) -> Result<SubspaceFamily, ScidError> {
        SubspaceFamily::new(indices.iter().map(|&i| self.members[i].clone()).collect())
    }

    /// Members in canonical order; two families are equal as sets iff their sorted forms agree.
    pub fn sorted(&self) -> SubspaceFamily {
        let mut members = self.members.clone();
        members.sort();
        SubspaceFamily { members, ..self.clone() }
    }

    pub fn set_eq(&self, other: &SubspaceFamily) -> bool {
        self.sorted() == other.sorted()
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            field: self.field.clone(),
            ambient: self.ambient,
            members: self.members.iter().map(Subspace::to_json).collect(),
        }
    }
}

/// Serialized family: `{"field": {...}, "ambient": d, "members": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyJson {
    pub field: Field,
    pub ambient: usize,
    pub members: Vec<SubspaceJson>,
}

impl FamilyJson {
    /// Rebuilds the family, canonicalizing member bases. Also returns the indices
    /// of members whose stored basis was not already canonical.
    pub fn to_family(&self) -> Result<(SubspaceFamily, Vec<usize>), ScidError> {
        let mut members = Vec::with_capacity(self.members.len());
        let mut non_canonical = Vec::new();
        for (i, m) in self.members.iter().enumerate() {
            if m.ambient != self.ambient {
                return Err(ScidError::Malformed(format!("member {i} has ambient {}", m.ambient)));
            }
            let (s, canonical) = m.to_subspace(&self.field)?;
            if !canonical {
                non_canonical.push(i);
            }
            members.push(s);
        }
        Ok((SubspaceFamily::new(members)?, non_canonical))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScidReport {
    pub n: usize,
    pub k: usize,
    /// `dims[i][j] = dim(pi_i ∩ pi_j)`, with `k` on the diagonal.
    pub pairwise_dims: Vec<Vec<usize>>,
    pub is_scid: bool,
    /// `k` minus the common intersection dimension, when the family is a SCID.
    pub t: Option<usize>,
    pub span: Subspace,
    pub intersections: Subspace,
    pub sunflower_center: Option<Subspace>,
    pub is_partial_spread: bool,
}

impl ScidReport {
    pub fn dim_s(&self) -> usize {
        self.span.dim()
    }

    pub fn dim_i(&self) -> usize {
        self.intersections.dim()
    }

    /// `dim S + dim I`.
    pub fn sum(&self) -> usize {
        self.dim_s() + self.dim_i()
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            n: self.n,
            k: self.k,
            pairwise_dims: self.pairwise_dims.clone(),
            is_scid: self.is_scid,
            t: self.t,
            dim_s: self.dim_s(),
            dim_i: self.dim_i(),
            sum: self.sum(),
            s: self.span.to_json(),
            i: self.intersections.to_json(),
            sunflower_center: self.sunflower_center.as_ref().map(Subspace::to_json),
            is_partial_spread: self.is_partial_spread,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub n: usize,
    pub k: usize,
    pub pairwise_dims: Vec<Vec<usize>>,
    pub is_scid: bool,
    pub t: Option<usize>,
    pub dim_s: usize,
    pub dim_i: usize,
    pub sum: usize,
    #[serde(rename = "S")]
    pub s: SubspaceJson,
    #[serde(rename = "I")]
    pub i: SubspaceJson,
    pub sunflower_center: Option<SubspaceJson>,
    pub is_partial_spread: bool,
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

pub fn analyze(family: &SubspaceFamily) -> Result<ScidReport, ScidError> {
    analyze_with(family, Execution::Parallel)
}

pub fn analyze_with(family: &SubspaceFamily, exec: Execution) -> Result<ScidReport, ScidError> {
    let members = family.members();
    let n = members.len();
    let k = members[0].dim();
    if members.iter().any(|m| m.dim() != k) {
        return Err(ScidError::MixedMemberDimensions);
    }
    let index_pairs = pairs(n);
    let meets = par::map(exec, index_pairs.clone(), |(i, j)| members[i].intersect(&members[j]))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;

    let mut pairwise_dims = vec![vec![k; n]; n];
    for (&(i, j), m) in index_pairs.iter().zip(&meets) {
        pairwise_dims[i][j] = m.dim();
        pairwise_dims[j][i] = m.dim();
    }
    let common = meets[0].dim();
    let is_scid = meets.iter().all(|m| m.dim() == common);
    let t = is_scid.then(|| k - common);

    let span = linalg::span_all(family.field(), family.ambient(), members)?;
    let intersections = linalg::span_all(family.field(), family.ambient(), &meets)?;
    let sunflower_center = meets.iter().all(|m| m == &meets[0]).then(|| meets[0].clone());

    Ok(ScidReport {
        n,
        k,
        pairwise_dims,
        is_scid,
        t,
        span,
        intersections,
        sunflower_center,
        is_partial_spread: is_scid && common == 0,
    })
}

/// True iff every member has dimension `k` and all pairwise intersections have dimension `k - t`.
pub fn verify_scid(family: &SubspaceFamily, k: usize, t: usize) -> bool {
    if t > k || family.members().iter().any(|m| m.dim() != k) {
        return false;
    }
    let members = family.members();
    pairs(members.len())
        .into_iter()
        .all(|(i, j)| members[i].intersection_dim(&members[j]).is_ok_and(|d| d == k - t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(d: usize, c: &[usize]) -> Subspace {
        Subspace::coordinates(&Field::prime(2).unwrap(), d, c.iter().copied())
    }

    fn triangle() -> SubspaceFamily {
        SubspaceFamily::new(vec![coords(3, &[0, 1]), coords(3, &[0, 2]), coords(3, &[1, 2])]).unwrap()
    }

    #[test]
    fn analyzes_the_triangle() {
        let r = analyze(&triangle()).unwrap();
        assert!(r.is_scid);
        assert_eq!((r.k, r.t), (2, Some(1)));
        assert_eq!((r.dim_s(), r.dim_i(), r.sum()), (3, 3, 6));
        assert!(r.sunflower_center.is_none());
        assert!(!r.is_partial_spread);
        assert_eq!(r.pairwise_dims, vec![vec![2, 1, 1], vec![1, 2, 1], vec![1, 1, 2]]);
    }

    #[test]
    fn two_members_sum_to_2k() {
        let fam = SubspaceFamily::new(vec![coords(5, &[0, 1, 2]), coords(5, &[0, 3, 4])]).unwrap();
        let r = analyze(&fam).unwrap();
        assert_eq!(r.t, Some(2));
        assert_eq!(r.sum(), 6);
    }

    #[test]
    fn detects_sunflower() {
        let fam = SubspaceFamily::new(vec![coords(4, &[0, 1]), coords(4, &[0, 2]), coords(4, &[0, 3])]).unwrap();
        let r = analyze(&fam).unwrap();
        assert_eq!(r.sunflower_center, Some(coords(4, &[0])));
        assert_eq!((r.dim_s(), r.dim_i(), r.sum()), (4, 1, 5));
        assert!(verify_scid(&fam, 2, 1));
    }

    #[test]
    fn verify_rejects_wrong_parameters() {
        let fam = triangle();
        assert!(verify_scid(&fam, 2, 1));
        assert!(!verify_scid(&fam, 2, 2));
        assert!(!verify_scid(&fam, 3, 1));
        // pi_2 and pi_3 meet trivially
        let bad = SubspaceFamily::new(vec![coords(4, &[0, 1]), coords(4, &[0, 2]), coords(4, &[1, 3])]).unwrap();
        assert!(!verify_scid(&bad, 2, 1));
        // 3-spaces with pi_3 meeting pi_1 in k - t + 1 dimensions
        let bad = SubspaceFamily::new(vec![coords(5, &[0, 1, 2]), coords(5, &[0, 3, 4]), coords(5, &[0, 1, 3])]);
        assert!(!verify_scid(&bad.unwrap(), 3, 2));
        let bad = SubspaceFamily::new(vec![coords(4, &[0, 1]), coords(4, &[0, 2]), coords(4, &[0, 1, 3])]);
        assert!(!verify_scid(&bad.unwrap(), 2, 1));
    }

    #[test]
    fn non_scid_report() {
        let fam = SubspaceFamily::new(vec![coords(4, &[0, 1]), coords(4, &[0, 2]), coords(4, &[2, 3])]).unwrap();
        let r = analyze(&fam).unwrap();
        assert!(!r.is_scid);
        assert_eq!(r.t, None);
        assert!(r.intersections.is_subspace_of(&r.span).unwrap());
    }

    #[test]
    fn family_validation() {
        assert_eq!(SubspaceFamily::new(vec![coords(3, &[0])]).unwrap_err(), ScidError::TooFewMembers(1));
        assert_eq!(
            SubspaceFamily::new(vec![coords(3, &[0]), coords(3, &[0])]).unwrap_err(),
            ScidError::DuplicateMember(0, 1)
        );
        assert_eq!(
            SubspaceFamily::new(vec![coords(3, &[0]), coords(4, &[0])]).unwrap_err(),
            ScidError::IncompatibleMembers
        );
        let mixed = SubspaceFamily::new(vec![coords(3, &[0]), coords(3, &[1, 2])]).unwrap();
        assert_eq!(analyze(&mixed).unwrap_err(), ScidError::MixedMemberDimensions);
    }

    #[test]
    fn json_round_trip_and_order_insensitivity() {
        let fam = triangle();
        let json = serde_json::to_string(&fam.to_json()).unwrap();
        let back: FamilyJson = serde_json::from_str(&json).unwrap();
        let (fam2, nc) = back.to_family().unwrap();
        assert_eq!(fam2, fam);
        assert!(nc.is_empty());
        let rev = SubspaceFamily::new(fam.members().iter().rev().cloned().collect()).unwrap();
        assert!(rev.set_eq(&fam));
        assert_ne!(rev, fam);
    }
}
