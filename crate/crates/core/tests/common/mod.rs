//! Independent prime-field linear algebra used as a test oracle. Shares no
//! code with the library: plain elimination mod p and nullspace-based
//! intersections.

#![allow(dead_code)]

pub type Rows = Vec<Vec<u32>>;

fn inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Row echelon form mod p; returns the nonzero rows and pivot columns.
pub fn echelon(p: u32, mut m: Rows) -> (Rows, Vec<usize>) {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(s) = (r..m.len()).find(|&i| !m[i][c].is_multiple_of(p)) else { continue };
        m.swap(r, s);
        let iv = inv(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (*x as u64 * iv as u64 % p as u64) as u32;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let sub = f as u64 * m[r][j] as u64 % p as u64;
                    m[i][j] = ((m[i][j] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(p: u32, m: &[Vec<u32>]) -> usize {
    echelon(p, m.to_vec()).0.len()
}

/// Basis of `{z : z^T m = 0}`.
fn left_nullspace(p: u32, m: &[Vec<u32>]) -> Rows {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let transposed: Rows = (0..cols).map(|c| (0..rows).map(|r| m[r][c]).collect()).collect();
    let (red, pivots) = if cols == 0 { (Vec::new(), Vec::new()) } else { echelon(p, transposed) };
    let mut out = Vec::new();
    for free in (0..rows).filter(|c| !pivots.contains(c)) {
        let mut z = vec![0; rows];
        z[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            z[pc] = (p - red[i][free] % p) % p;
        }
        out.push(z);
    }
    out
}

pub fn intersection(p: u32, a: &[Vec<u32>], b: &[Vec<u32>]) -> Rows {
    let mut m: Rows = a.to_vec();
    m.extend(b.iter().map(|r| r.iter().map(|&x| (p - x % p) % p).collect()));
    let d = a.first().or(b.first()).map_or(0, Vec::len);
    left_nullspace(p, &m)
        .into_iter()
        .map(|z| {
            let mut v = vec![0u64; d];
            for (i, row) in a.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    v[j] = (v[j] + z[i] as u64 * x as u64) % p as u64;
                }
            }
            v.into_iter().map(|x| x as u32).collect()
        })
        .collect()
}

/// `(dim S, dim I, pairwise intersection dims)` for members given by generating rows.
pub fn span_data(p: u32, members: &[Rows]) -> (usize, usize, Vec<usize>) {
    let all: Rows = members.iter().flatten().cloned().collect();
    let dim_s = rank(p, &all);
    let mut inter = Vec::new();
    let mut dims = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let x = intersection(p, &members[i], &members[j]);
            dims.push(rank(p, &x));
            inter.extend(x);
        }
    }
    (dim_s, rank(p, &inter), dims)
}
