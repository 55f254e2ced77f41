//! Brute-force oracle: Grassmannian enumeration and exact maximization of
//! `dim S + dim I` over all SCIDs in a small ambient space.

use std::sync::atomic::{AtomicUsize, Ordering};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{best_bound, BoundError, ScidParams};
use crate::gf::Field;
use crate::linalg::{random_subspace_with, LinalgError, Subspace};
use crate::par::{self, Execution};
use crate::scid::{analyze, FamilyJson, ScidError, SubspaceFamily};

/// Environment variable overriding [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_VAR: &str = "SCID_ENUM_CAP";
pub const DEFAULT_ENUM_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("need 0 <= k <= d (d = {d}, k = {k})")]
    BadDims { d: usize, k: usize },
    #[error("enumeration of {count} subspaces exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error("count overflows 128 bits")]
    Overflow,
    #[error("invalid search parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scid(#[from] ScidError),
}

pub type Result<T> = std::result::Result<T, SearchError>;

/// Cap on enumeration sizes, from `SCID_ENUM_CAP` when set.
pub fn enumeration_cap() -> u128 {
    std::env::var(ENUM_CAP_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

/// Number of `k`-subspaces of `F_q^d`.
pub fn gaussian_binomial(d: usize, k: usize, q: u64) -> Result<u128> {
    if k > d {
        return Err(SearchError::BadDims { d, k });
    }
    let q = q as u128;
    let pow = |e: usize| q.checked_pow(e as u32).ok_or(SearchError::Overflow);
    let mut acc: u128 = 1;
    // after step i, acc = [d choose i+1]_q, an integer
    for i in 0..k {
        let num = pow(d - i)? - 1;
        let den = pow(i + 1)? - 1;
        acc = acc.checked_mul(num).ok_or(SearchError::Overflow)? / den;
    }
    Ok(acc)
}

/// Position in the canonical ordering of the `k`-subspaces of `F_q^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumerationCursor {
    pub d: usize,
    pub k: usize,
    pub position: u128,
}

/// Lazy stream of every `k`-subspace of `F_q^d` in canonical order: pivot
/// columns lexicographically, then free entries row-major.
#[derive(Clone, Debug)]
pub struct SubspaceEnumerator {
    field: Field,
    d: usize,
    k: usize,
    total: u128,
    position: u128,
    pivots: Vec<usize>,
    slots: Vec<(usize, usize)>,
    digits: Vec<u32>,
}

fn free_slots(d: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..d {
            if !pivots.contains(&c) {
                out.push((r, c));
            }
        }
    }
    out
}

fn next_combination(c: &mut [usize], d: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < d - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl SubspaceEnumerator {
    pub fn new(d: usize, k: usize, field: &Field, cap: u128) -> Result<SubspaceEnumerator> {
        let e = SubspaceEnumerator::new_unbounded(d, k, field)?;
        if e.total > cap {
            return Err(SearchError::CapExceeded { count: e.total, cap });
        }
        Ok(e)
    }

    /// No cap; for streams that are consumed only partially.
    pub fn new_unbounded(d: usize, k: usize, field: &Field) -> Result<SubspaceEnumerator> {
        let total = gaussian_binomial(d, k, field.order() as u64)?;
        let pivots: Vec<usize> = (0..k).collect();
        let slots = free_slots(d, &pivots);
        Ok(SubspaceEnumerator {
            field: field.clone(),
            d,
            k,
            total,
            position: 0,
            digits: vec![0; slots.len()],
            slots,
            pivots,
        })
    }

    pub fn resume(field: &Field, cursor: EnumerationCursor, cap: u128) -> Result<SubspaceEnumerator> {
        let mut e = SubspaceEnumerator::new(cursor.d, cursor.k, field, cap)?;
        e.seek(cursor.position);
        Ok(e)
    }

    pub fn total(&self) -> u128 {
        self.total
    }

    pub fn cursor(&self) -> EnumerationCursor {
        EnumerationCursor { d: self.d, k: self.k, position: self.position }
    }

    /// Moves to `position`; positions past the end exhaust the stream.
    pub fn seek(&mut self, position: u128) {
        self.position = position.min(self.total);
        if position >= self.total {
            return;
        }
        let q = self.field.order() as u128;
        let mut rest = position;
        let mut pivots: Vec<usize> = (0..self.k).collect();
        loop {
            let slots = free_slots(self.d, &pivots);
            let count = q.pow(slots.len() as u32);
            if rest < count {
                let mut digits = vec![0; slots.len()];
                for x in digits.iter_mut().rev() {
                    *x = (rest % q) as u32;
                    rest /= q;
                }
                self.pivots = pivots;
                self.slots = slots;
                self.digits = digits;
                return;
            }
            rest -= count;
            next_combination(&mut pivots, self.d);
        }
    }

    fn current(&self) -> Subspace {
        let d = self.d;
        let mut basis = vec![0; self.k * d];
        for (r, &p) in self.pivots.iter().enumerate() {
            basis[r * d + p] = 1;
        }
        for (&(r, c), &x) in self.slots.iter().zip(&self.digits) {
            basis[r * d + c] = x;
        }
        Subspace::from_canonical(&self.field, d, self.pivots.clone(), basis)
    }

    fn advance(&mut self) {
        let q = self.field.order();
        for x in self.digits.iter_mut().rev() {
            *x += 1;
            if *x < q {
                return;
            }
            *x = 0;
        }
        if next_combination(&mut self.pivots, self.d) {
            self.slots = free_slots(self.d, &self.pivots);
            self.digits = vec![0; self.slots.len()];
        }
    }
}

impl Iterator for SubspaceEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.position >= self.total {
            return None;
        }
        let s = self.current();
        self.position += 1;
        if self.position < self.total {
            self.advance();
        }
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.total - self.position).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

/// All `k`-subspaces of `F_q^d`, subject to [`enumeration_cap`].
pub fn enumerate_subspaces(d: usize, k: usize, field: &Field) -> Result<SubspaceEnumerator> {
    SubspaceEnumerator::new(d, k, field, enumeration_cap())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub q: u32,
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub best_sum: Option<usize>,
    pub witness: Option<SubspaceFamily>,
    /// Enumeration positions of the witness members (exhaustive search only).
    pub witness_indices: Option<Vec<usize>>,
    /// Search nodes visited (exhaustive) or samples drawn (random).
    pub explored: u64,
    pub exhaustive: bool,
    /// Best applicable bound at `(n, k, t)`.
    pub upper_bound: usize,
    /// Complete SCIDs seen whose sum exceeded `upper_bound`.
    pub bound_violations: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchResultJson {
    pub params: SearchParams,
    pub best_sum: Option<usize>,
    pub witness: Option<FamilyJson>,
    pub witness_indices: Option<Vec<usize>>,
    pub explored: u64,
    pub exhaustive: bool,
    pub upper_bound: usize,
    pub bound_violations: u64,
}

impl SearchResult {
    fn empty(upper_bound: usize, exhaustive: bool) -> SearchResult {
        SearchResult {
            best_sum: None,
            witness: None,
            witness_indices: None,
            explored: 0,
            exhaustive,
            upper_bound,
            bound_violations: 0,
        }
    }

    pub fn reached_bound(&self) -> bool {
        self.best_sum.is_some_and(|s| s >= self.upper_bound)
    }

    /// Combines with the result for a later range. Once the bound is reached the
    /// later range is ignored, matching a single pass that stops there.
    pub fn merge(self, later: SearchResult) -> SearchResult {
        if self.reached_bound() {
            return self;
        }
        let mut out = if later.best_sum > self.best_sum {
            SearchResult { explored: self.explored, bound_violations: self.bound_violations, ..later.clone() }
        } else {
            self
        };
        out.explored += later.explored;
        out.bound_violations += later.bound_violations;
        out
    }

    pub fn to_json(&self, params: SearchParams) -> SearchResultJson {
        SearchResultJson {
            params,
            best_sum: self.best_sum,
            witness: self.witness.as_ref().map(SubspaceFamily::to_json),
            witness_indices: self.witness_indices.clone(),
            explored: self.explored,
            exhaustive: self.exhaustive,
            upper_bound: self.upper_bound,
            bound_violations: self.bound_violations,
        }
    }
}

fn check_params(n: usize, k: usize, t: usize, d: usize) -> Result<ScidParams> {
    if k > d {
        return Err(SearchError::BadDims { d, k });
    }
    Ok(ScidParams::new(n, k, t)?)
}

/// Every `k`-subspace of `F_q^d` and the compatibility graph "meet in dimension `k - t`".
pub struct SearchSpace {
    params: ScidParams,
    field: Field,
    d: usize,
    spaces: Vec<Subspace>,
    /// `adj[i]`: bitset of `j > i` with `dim(pi_i ∩ pi_j) = k - t`.
    adj: Vec<Vec<u64>>,
}

impl SearchSpace {
    pub fn new(n: usize, k: usize, t: usize, field: &Field, d: usize, exec: Execution) -> Result<SearchSpace> {
        let params = check_params(n, k, t, d)?;
        let spaces: Vec<Subspace> = enumerate_subspaces(d, k, field)?.collect();
        let words = spaces.len().div_ceil(64);
        let target = k - t;
        let adj = par::map_range(exec, spaces.len(), |i| {
            let mut bits = vec![0u64; words];
            for j in i + 1..spaces.len() {
                if spaces[i].intersection_dim(&spaces[j]).expect("same ambient") == target {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            bits
        });
        Ok(SearchSpace { params, field: field.clone(), d, spaces, adj })
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn params(&self) -> SearchParams {
        let ScidParams { n, k, t } = self.params;
        SearchParams { n, k, t, q: self.field.order(), d: self.d }
    }

    fn family(&self, indices: &[usize]) -> SubspaceFamily {
        SubspaceFamily::new(indices.iter().map(|&i| self.spaces[i].clone()).collect()).expect("distinct members")
    }

    /// Every SCID as strictly increasing index tuples, in lexicographic order.
    pub fn all_scids(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        for i in 0..self.len() {
            chosen.push(i);
            self.collect(&mut chosen, &self.adj[i], &mut out);
            chosen.pop();
        }
        out
    }

    fn collect(&self, chosen: &mut Vec<usize>, cand: &[u64], out: &mut Vec<Vec<usize>>) {
        if chosen.len() == self.params.n {
            out.push(chosen.clone());
            return;
        }
        for j in bits(cand) {
            let next: Vec<u64> = cand.iter().zip(&self.adj[j]).map(|(a, b)| a & b).collect();
            chosen.push(j);
            self.collect(chosen, &next, out);
            chosen.pop();
        }
    }

    /// Exact maximum over SCIDs whose first member lies in `first`.
    pub fn max_sum_range(&self, first: std::ops::Range<usize>, exec: Execution) -> SearchResult {
        let bound = best_bound(self.params).best;
        let first = first.start.min(self.len())..first.end.min(self.len());
        let stop = AtomicUsize::new(usize::MAX);
        let results = par::map(exec, first.collect(), |i| {
            if i > stop.load(Ordering::Relaxed) {
                return None;
            }
            let r = self.subtree(i, bound);
            if r.reached_bound() {
                stop.fetch_min(i, Ordering::Relaxed);
            }
            Some(r)
        });
        let mut acc = SearchResult::empty(bound, true);
        for r in results {
            if acc.reached_bound() {
                break;
            }
            acc = acc.merge(r.expect("subtrees before the stopping index are searched"));
        }
        acc
    }

    pub fn max_sum(&self, exec: Execution) -> SearchResult {
        self.max_sum_range(0..self.len(), exec)
    }

    fn subtree(&self, i: usize, bound: usize) -> SearchResult {
        let mut dfs = Dfs {
            space: self,
            bound,
            chosen: vec![i],
            best: None,
            best_indices: Vec::new(),
            explored: 0,
            violations: 0,
        };
        let s = self.spaces[i].clone();
        let zero = Subspace::zero(&self.field, self.d);
        dfs.visit(&s, &zero, &self.adj[i]);
        let mut r = SearchResult::empty(bound, true);
        r.explored = dfs.explored;
        r.bound_violations = dfs.violations;
        if let Some(best) = dfs.best {
            r.best_sum = Some(best);
            r.witness = Some(self.family(&dfs.best_indices));
            r.witness_indices = Some(dfs.best_indices);
        }
        r
    }
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + b)
        })
    })
}

fn count_bits(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

struct Dfs<'a> {
    space: &'a SearchSpace,
    bound: usize,
    chosen: Vec<usize>,
    best: Option<usize>,
    best_indices: Vec<usize>,
    explored: u64,
    violations: u64,
}

impl Dfs<'_> {
    /// Admissible estimate of any completion: adding a member raises the sum by
    /// at most `k`, and by at most `2t` once two members are present.
    fn estimate(&self, sum: usize) -> usize {
        let ScidParams { n, k, t } = self.space.params;
        let mut est = sum;
        for m in self.chosen.len()..n {
            est += if m >= 2 { k.min(2 * t) } else { k };
        }
        est.min(self.bound)
    }

    fn visit(&mut self, s: &Subspace, i: &Subspace, cand: &[u64]) {
        self.explored += 1;
        let sum = s.dim() + i.dim();
        let n = self.space.params.n;
        if self.chosen.len() == n {
            if sum > self.bound {
                self.violations += 1;
            }
            if self.best.is_none_or(|b| sum > b) {
                self.best = Some(sum);
                self.best_indices = self.chosen.clone();
            }
            return;
        }
        if self.best.is_some_and(|b| self.estimate(sum) <= b) || count_bits(cand) < n - self.chosen.len() {
            return;
        }
        for j in bits(cand).collect::<Vec<_>>() {
            if self.best.is_some_and(|b| self.estimate(sum) <= b) {
                return;
            }
            let pj = &self.space.spaces[j];
            let s2 = s.span_sum(pj).expect("same ambient");
            let mut i2 = i.clone();
            for &c in &self.chosen {
                i2 = i2.span_sum(&self.space.spaces[c].intersect(pj).expect("same ambient")).expect("same ambient");
            }
            let next: Vec<u64> = cand.iter().zip(&self.space.adj[j]).map(|(a, b)| a & b).collect();
            self.chosen.push(j);
            self.visit(&s2, &i2, &next);
            self.chosen.pop();
        }
    }
}

/// Exact maximum of `dim S + dim I` over all `(k, k-t)`-SCIDs of size `n` in `F_q^d`.
pub fn max_sum_bruteforce(n: usize, k: usize, t: usize, field: &Field, d: usize) -> Result<SearchResult> {
    max_sum_bruteforce_with(n, k, t, field, d, Execution::default())
}

pub fn max_sum_bruteforce_with(n: usize, k: usize, t: usize, field: &Field, d: usize, exec: Execution) -> Result<SearchResult> {
    Ok(SearchSpace::new(n, k, t, field, d, exec)?.max_sum(exec))
}

/// Ambient large enough for every SCID with these parameters: each member after
/// the first adds at most `t` to `dim S`.
pub fn default_ambient(n: usize, k: usize, t: usize) -> usize {
    k + (n - 1) * t
}

/// Seeded randomized greedy sampling; `best_sum` is a lower bound on the true maximum.
pub fn random_scid_search(n: usize, k: usize, t: usize, field: &Field, d: usize, seed: u64, iterations: u64) -> Result<SearchResult> {
    random_scid_search_with(n, k, t, field, d, seed, iterations, Execution::default())
}

/// Attempts per member slot before a sample is abandoned.
const ATTEMPTS_PER_SLOT: usize = 64;

#[allow(clippy::too_many_arguments)]
pub fn random_scid_search_with(
    n: usize,
    k: usize,
    t: usize,
    field: &Field,
    d: usize,
    seed: u64,
    iterations: u64,
    exec: Execution,
) -> Result<SearchResult> {
    let params = check_params(n, k, t, d)?;
    let bound = best_bound(params).best;
    let samples = par::map_range(exec, iterations as usize, |it| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(it as u64);
        let mut members = vec![random_subspace_with(d, k, field, &mut rng).expect("k <= d")];
        let mut attempts = 0;
        while members.len() < n && attempts < ATTEMPTS_PER_SLOT * n {
            attempts += 1;
            let c = random_subspace_with(d, k, field, &mut rng).expect("k <= d");
            if members.iter().all(|m| m != &c && m.intersection_dim(&c).expect("same ambient") == k - t) {
                members.push(c);
            }
        }
        (members.len() == n).then(|| {
            let family = SubspaceFamily::new(members).expect("distinct members");
            let sum = analyze(&family).expect("valid family").sum();
            (sum, family)
        })
    });
    let mut out = SearchResult::empty(bound, false);
    out.explored = iterations;
    for (sum, family) in samples.into_iter().flatten() {
        if sum > bound {
            out.bound_violations += 1;
        }
        if out.best_sum.is_none_or(|b| sum > b) {
            out.best_sum = Some(sum);
            out.witness = Some(family);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scid::verify_scid;

    fn f(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_binomial(3, 1, 2).unwrap(), 7);
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
        assert_eq!(gaussian_binomial(6, 0, 5).unwrap(), 1);
        assert_eq!(gaussian_binomial(2, 1, 4).unwrap(), 5);
        assert!(matches!(gaussian_binomial(2, 3, 2), Err(SearchError::BadDims { .. })));
    }

    #[test]
    fn enumeration_order_small() {
        let got: Vec<Vec<Vec<u32>>> = enumerate_subspaces(2, 1, &f(2)).unwrap().map(|s| s.basis_rows()).collect();
        assert_eq!(got, vec![vec![vec![1, 0]], vec![vec![1, 1]], vec![vec![0, 1]]]);
        let all: Vec<Subspace> = enumerate_subspaces(3, 3, &f(2)).unwrap().collect();
        assert_eq!(all, vec![Subspace::full(&f(2), 3)]);
        let zero: Vec<Subspace> = enumerate_subspaces(3, 0, &f(2)).unwrap().collect();
        assert_eq!(zero, vec![Subspace::zero(&f(2), 3)]);
        assert_eq!(enumerate_subspaces(4, 2, &f(2)).unwrap().count(), 35);
    }

    #[test]
    fn enumeration_is_sorted_and_canonical() {
        for q in [2, 3, 4] {
            let all: Vec<Subspace> = enumerate_subspaces(4, 2, &f(q)).unwrap().collect();
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            for s in &all {
                assert_eq!(&Subspace::from_rows(&f(q), 4, &s.basis_rows()).unwrap(), s);
            }
        }
    }

    #[test]
    fn seek_matches_stream() {
        let field = f(3);
        let all: Vec<Subspace> = enumerate_subspaces(4, 2, &field).unwrap().collect();
        for pos in [0, 1, 12, 57, all.len() - 1] {
            let mut e = enumerate_subspaces(4, 2, &field).unwrap();
            e.seek(pos as u128);
            assert_eq!(e.next().as_ref(), Some(&all[pos]));
            let c = EnumerationCursor { d: 4, k: 2, position: pos as u128 };
            let rest: Vec<Subspace> = SubspaceEnumerator::resume(&field, c, 1000).unwrap().collect();
            assert_eq!(rest, all[pos..]);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            SubspaceEnumerator::new(6, 3, &f(2), 100),
            Err(SearchError::CapExceeded { count: 1395, cap: 100 })
        ));
    }

    #[test]
    fn oracle_examples() {
        let r = max_sum_bruteforce(2, 2, 1, &f(2), 3).unwrap();
        assert_eq!(r.best_sum, Some(4));
        let r = max_sum_bruteforce(3, 2, 1, &f(2), 4).unwrap();
        assert_eq!(r.best_sum, Some(6));
        let w = r.witness.unwrap();
        assert!(verify_scid(&w, 2, 1));
        assert_eq!(analyze(&w).unwrap().sum(), 6);
        assert_eq!(r.bound_violations, 0);
    }

    #[test]
    fn no_scid_found_when_none_fit() {
        // three lines of F_2^2 are the only 1-spaces; four pairwise distinct ones do not exist
        let r = max_sum_bruteforce(4, 1, 1, &f(2), 2).unwrap();
        assert_eq!(r.best_sum, None);
        assert!(r.witness.is_none());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let field = f(2);
        let a = max_sum_bruteforce_with(4, 2, 1, &field, 5, Execution::Sequential).unwrap();
        let b = max_sum_bruteforce_with(4, 2, 1, &field, 5, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn split_ranges_merge_to_single_pass() {
        let field = f(2);
        let space = SearchSpace::new(3, 2, 1, &field, 4, Execution::Sequential).unwrap();
        let whole = space.max_sum(Execution::Sequential);
        for cut in [0, 1, 5, 17, space.len()] {
            let a = space.max_sum_range(0..cut, Execution::Sequential);
            let b = space.max_sum_range(cut..space.len(), Execution::Sequential);
            assert_eq!(a.merge(b), whole, "cut at {cut}");
        }
    }

    #[test]
    fn random_search_reproducible() {
        let field = f(2);
        let a = random_scid_search(3, 2, 1, &field, 3, 1, 200).unwrap();
        let b = random_scid_search_with(3, 2, 1, &field, 3, 1, 200, Execution::Sequential).unwrap();
        assert_eq!(a, b);
        assert!(!a.exhaustive);
        let w = a.witness.unwrap();
        assert!(verify_scid(&w, 2, 1));
        assert_eq!(analyze(&w).unwrap().sum(), a.best_sum.unwrap());
    }
}
