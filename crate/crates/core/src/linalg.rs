//! Matrices and canonical subspaces over a finite field.
//!
//! A [`Subspace`] always stores its reduced row-echelon basis, so two subspaces
//! are equal exactly when their bases agree entry for entry. Sum and
//! intersection go through the Zassenhaus stacked matrix.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("subspaces live over different fields")]
    FieldMismatch,
    #[error("first subspace is not contained in the second")]
    NotNested,
    #[error("invalid dimensions: k = {k}, d = {d}")]
    BadDims { d: usize, k: usize },
    #[error("vector is not in the subspace")]
    NotInSubspace,
    #[error("row of length {found}, expected {expected}")]
    RaggedRows { expected: usize, found: usize },
    #[error("entry {0} is not a field element")]
    BadEntry(u32),
}

pub type Result<T> = std::result::Result<T, LinalgError>;

/// A dense row-major matrix with entries as field element codes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: Field,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u32>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::RaggedRows { expected: cols, found: row.len() });
            }
            if let Some(&bad) = row.iter().find(|&&x| !field.contains(x)) {
                return Err(LinalgError::BadEntry(bad));
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix { field: field.clone(), cols, data })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        if self.cols == 0 {
            0
        } else {
            self.data.len() / self.cols
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u32]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
    }

    /// Gauss-Jordan elimination in place; returns the pivot columns.
    /// Zero rows are dropped.
    pub fn reduce(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows(), self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).expect("pivot is nonzero");
            for j in c..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            for i in 0..rows {
                let factor = self.data[i * cols + c];
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = f.mul(factor, self.data[r * cols + j]);
                    self.data[i * cols + j] = f.sub(self.data[i * cols + j], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(r * cols);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().reduce().len()
    }
}

/// A subspace of `F_q^d` in canonical reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    pivots: Vec<usize>,
    basis: Vec<u32>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(d={}, {:?})", self.ambient, self.rows().collect::<Vec<_>>())
    }
}

/// Canonical order: ambient, dimension, pivot columns, then basis entries row-major.
/// For a fixed `(d, k)` this is the enumeration order of the search module.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim(), &self.pivots, &self.basis).cmp(&(
            other.ambient,
            other.dim(),
            &other.pivots,
            &other.basis,
        ))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Row space of `m` in canonical form.
pub fn rref(m: &Matrix) -> Subspace {
    let mut m = m.clone();
    let pivots = m.reduce();
    Subspace { field: m.field, ambient: m.cols, pivots, basis: m.data }
}

fn unit(d: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { field: field.clone(), ambient, pivots: Vec::new(), basis: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace::coordinates(field, ambient, 0..ambient)
    }

    /// Span of the standard basis vectors `e_i`, `i` in `coords` (0-based).
    pub fn coordinates(field: &Field, ambient: usize, coords: impl IntoIterator<Item = usize>) -> Subspace {
        let mut coords: Vec<usize> = coords.into_iter().collect();
        coords.sort_unstable();
        coords.dedup();
        assert!(coords.iter().all(|&c| c < ambient), "coordinate out of range");
        let basis = coords.iter().flat_map(|&c| unit(ambient, c)).collect();
        Subspace { field: field.clone(), ambient, pivots: coords, basis }
    }

    /// Wraps data already in reduced row-echelon form.
    pub(crate) fn from_canonical(field: &Field, ambient: usize, pivots: Vec<usize>, basis: Vec<u32>) -> Subspace {
        debug_assert_eq!(basis.len(), pivots.len() * ambient);
        Subspace { field: field.clone(), ambient, pivots, basis }
    }

    /// Row space of an arbitrary generating set.
    pub fn from_rows(field: &Field, ambient: usize, rows: &[Vec<u32>]) -> Result<Subspace> {
        Ok(rref(&Matrix::from_rows(field, ambient, rows)?))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.basis[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.dim()).map(move |i| self.row(i))
    }

    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix { field: self.field.clone(), cols: self.ambient, data: self.basis.clone() }
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the subspace.
    fn residue(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = r[p];
            if c == 0 {
                continue;
            }
            for (x, &b) in r.iter_mut().zip(self.row(i)) {
                *x = f.sub(*x, f.mul(c, b));
            }
        }
        r
    }

    pub fn contains_vector(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(LinalgError::RaggedRows { expected: self.ambient, found: v.len() });
        }
        Ok(self.residue(v).iter().all(|&x| x == 0))
    }

    pub fn span_sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let mut m = self.to_matrix();
        m.data.extend_from_slice(&other.basis);
        Ok(rref(&m))
    }

    /// `dim(self + other)` without materializing the canonical basis.
    pub fn sum_dim(&self, other: &Subspace) -> Result<usize> {
        self.compatible(other)?;
        let mut m = self.to_matrix();
        m.data.extend_from_slice(&other.basis);
        Ok(m.reduce().len())
    }

    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    /// Zassenhaus: reduce `[A | A; B | 0]`; rows whose left half vanishes
    /// carry a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let d = self.ambient;
        let mut m = Matrix::zeros(&self.field, 0, 2 * d);
        for row in self.rows() {
            let mut r = row.to_vec();
            r.extend_from_slice(row);
            m.push_row(&r);
        }
        for row in other.rows() {
            let mut r = row.to_vec();
            r.resize(2 * d, 0);
            m.push_row(&r);
        }
        let pivots = m.reduce();
        let rows: Vec<Vec<u32>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= d)
            .map(|(i, _)| m.row(i)[d..].to_vec())
            .collect();
        Subspace::from_rows(&self.field, d, &rows)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.rows().all(|r| other.residue(r).iter().all(|&x| x == 0)))
    }

    /// Greedy direct complement of `self` inside `within`, scanning `within`'s
    /// basis rows in order.
    pub fn complement_within(&self, within: &Subspace) -> Result<Subspace> {
        Ok(rref(&self.complement_rows(within)?))
    }

    fn complement_rows(&self, within: &Subspace) -> Result<Matrix> {
        if !self.is_subspace_of(within)? {
            return Err(LinalgError::NotNested);
        }
        let mut current = self.clone();
        let mut chosen = Matrix::zeros(&self.field, 0, self.ambient);
        for row in within.rows() {
            if current.dim() == within.dim() {
                break;
            }
            if !current.contains_vector(row)? {
                chosen.push_row(row);
                current = current.span_sum(&Subspace::from_rows(&self.field, self.ambient, &[row.to_vec()])?)?;
            }
        }
        Ok(chosen)
    }

    /// Zero-pads every basis vector on the right up to `ambient`.
    pub fn embed(&self, ambient: usize) -> Subspace {
        assert!(ambient >= self.ambient);
        let rows: Vec<Vec<u32>> = self
            .rows()
            .map(|r| {
                let mut v = r.to_vec();
                v.resize(ambient, 0);
                v
            })
            .collect();
        Subspace::from_rows(&self.field, ambient, &rows).expect("padded rows are well formed")
    }

    /// Subspace spanned by the first `k` canonical basis rows.
    pub fn leading(&self, k: usize) -> Subspace {
        let k = k.min(self.dim());
        Subspace {
            field: self.field.clone(),
            ambient: self.ambient,
            pivots: self.pivots[..k].to_vec(),
            basis: self.basis[..k * self.ambient].to_vec(),
        }
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson { ambient: self.ambient, basis: self.basis_rows() }
    }
}

/// Iterated span of any number of subspaces sharing field and ambient.
pub fn span_all<'a>(field: &Field, ambient: usize, spaces: impl IntoIterator<Item = &'a Subspace>) -> Result<Subspace> {
    let mut m = Matrix::zeros(field, 0, ambient);
    for s in spaces {
        if s.ambient != ambient {
            return Err(LinalgError::AmbientMismatch(ambient, s.ambient));
        }
        if &s.field != field {
            return Err(LinalgError::FieldMismatch);
        }
        m.data.extend_from_slice(&s.basis);
    }
    Ok(rref(&m))
}

/// Serialized subspace: `{"ambient": d, "basis": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub basis: Vec<Vec<u32>>,
}

impl SubspaceJson {
    /// Canonicalizes the stored rows; the flag says whether they were already canonical.
    pub fn to_subspace(&self, field: &Field) -> Result<(Subspace, bool)> {
        let s = Subspace::from_rows(field, self.ambient, &self.basis)?;
        let canonical = s.basis_rows() == self.basis;
        Ok((s, canonical))
    }
}

/// Projection of `total` onto `total / center`, in coordinates of a fixed complement.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    total: Subspace,
    center: Subspace,
    complement: Matrix,
    /// Row `i` expresses canonical basis row `i` of `total` in the basis `[center; complement]`.
    transition: Vec<Vec<u32>>,
}

pub fn quotient_map(total: &Subspace, center: &Subspace) -> Result<QuotientMap> {
    QuotientMap::new(total, center)
}

impl QuotientMap {
    pub fn new(total: &Subspace, center: &Subspace) -> Result<QuotientMap> {
        let complement = center.complement_rows(total)?;
        let f = total.field.clone();
        let n = total.dim();
        let d = total.ambient;
        // [B | I] reduces to [R | T] with R the canonical basis of `total` and R = T B
        let mut aug = Matrix::zeros(&f, 0, d + n);
        let mut push = |row: &[u32], i: usize| {
            let mut r = row.to_vec();
            r.extend(unit(n, i));
            aug.push_row(&r);
        };
        let mut i = 0;
        for row in center.rows().chain((0..complement.rows()).map(|j| complement.row(j))) {
            push(row, i);
            i += 1;
        }
        aug.reduce();
        let transition = (0..n).map(|i| aug.row(i)[d..].to_vec()).collect();
        Ok(QuotientMap { total: total.clone(), center: center.clone(), complement, transition })
    }

    pub fn total(&self) -> &Subspace {
        &self.total
    }

    pub fn center(&self) -> &Subspace {
        &self.center
    }

    pub fn target_dim(&self) -> usize {
        self.total.dim() - self.center.dim()
    }

    /// Coordinates of `v` modulo the center; errors when `v` is outside `total`.
    pub fn project(&self, v: &[u32]) -> Result<Vec<u32>> {
        if !self.total.contains_vector(v)? {
            return Err(LinalgError::NotInSubspace);
        }
        let f = &self.total.field;
        let c = self.center.dim();
        let mut coords = vec![0; self.total.dim()];
        for (i, &p) in self.total.pivots.iter().enumerate() {
            let a = v[p];
            if a == 0 {
                continue;
            }
            for (x, &t) in coords.iter_mut().zip(&self.transition[i]) {
                *x = f.add(*x, f.mul(a, t));
            }
        }
        Ok(coords.split_off(c))
    }

    pub fn image(&self, x: &Subspace) -> Result<Subspace> {
        let rows = x.rows().map(|r| self.project(r)).collect::<Result<Vec<_>>>()?;
        Subspace::from_rows(&self.total.field, self.target_dim(), &rows)
    }

    /// The subspace of `total` containing the center whose image is `y`.
    pub fn preimage(&self, y: &Subspace) -> Result<Subspace> {
        if y.ambient != self.target_dim() {
            return Err(LinalgError::AmbientMismatch(self.target_dim(), y.ambient));
        }
        let f = &self.total.field;
        let d = self.total.ambient;
        let mut rows = self.center.basis_rows();
        for coeffs in y.rows() {
            let mut v = vec![0; d];
            for (j, &a) in coeffs.iter().enumerate() {
                for (x, &w) in v.iter_mut().zip(self.complement.row(j)) {
                    *x = f.add(*x, f.mul(a, w));
                }
            }
            rows.push(v);
        }
        Subspace::from_rows(f, d, &rows)
    }
}

/// A seeded uniformly random `k`-subspace of `F_q^d`.
pub fn random_subspace(d: usize, k: usize, field: &Field, seed: u64) -> Result<Subspace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_subspace_with(d, k, field, &mut rng)
}

pub fn random_subspace_with<R: Rng>(d: usize, k: usize, field: &Field, rng: &mut R) -> Result<Subspace> {
    if k > d {
        return Err(LinalgError::BadDims { d, k });
    }
    let q = field.order();
    loop {
        let rows: Vec<Vec<u32>> = (0..k).map(|_| (0..d).map(|_| rng.gen_range(0..q)).collect()).collect();
        let s = Subspace::from_rows(field, d, &rows)?;
        if s.dim() == k {
            return Ok(s);
        }
    }
}
