//! Dense exact linear algebra over the prime field F_q.
//!
//! Everything here is deterministic: row reduction always picks the leftmost
//! pivot column and the topmost nonzero row, subspace enumeration emits
//! canonical reduced-row-echelon bases in a fixed order, and all counts are
//! exact integers. Matrices are small (desk scale), so the implementation
//! favors clarity over blocking or bit packing.

use num::{BigUint, One};

use crate::error::{Error, Result};

/// Largest ambient dimension for which all subspaces may be enumerated.
pub const MAX_SUBSPACE_AMBIENT: usize = 6;

/// Largest number of field combinations `count_invertible` will scan.
pub const MAX_INVERTIBLE_SCAN: u64 = 1_000_000;

fn field_inv(q: u64, x: u64) -> u64 {
    debug_assert!(x != 0 && x < q);
    // Fermat: x^{q-2} mod q. q is prime and small, so this is cheap.
    let mut acc = 1u64;
    let mut base = x % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        e >>= 1;
    }
    acc
}

/// Row-major dense matrix over F_q with entries in `[0, q)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GFMatrix {
    q: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl std::fmt::Debug for GFMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})[", self.q)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl GFMatrix {
    pub fn zero(q: u64, rows: usize, cols: usize) -> Self {
        GFMatrix { q, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(q: u64, n: usize) -> Self {
        let mut m = GFMatrix::zero(q, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(q: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = GFMatrix::zero(q, rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Schema("ragged matrix rows".into()));
            }
            for (j, &x) in row.iter().enumerate() {
                if x >= q {
                    return Err(Error::Schema(format!("entry {x} out of range for F_{q}")));
                }
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// Rebuild from a row-major flat list, the wire format for matrices.
    pub fn from_flat(q: u64, rows: usize, cols: usize, entries: &[u64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Schema(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(&x) = entries.iter().find(|&&x| x >= q) {
            return Err(Error::Schema(format!("entry {x} out of range for F_{q}")));
        }
        Ok(GFMatrix { q, rows, cols, data: entries.to_vec() })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u64) {
        debug_assert!(x < self.q);
        self.data[r * self.cols + c] = x;
    }

    pub fn entries_row_major(&self) -> &[u64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn add(&self, rhs: &GFMatrix) -> GFMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| (a + b) % self.q)
            .collect();
        GFMatrix { q: self.q, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> GFMatrix {
        let data = self.data.iter().map(|&a| (self.q - a) % self.q).collect();
        GFMatrix { q: self.q, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &GFMatrix) -> GFMatrix {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: u64) -> GFMatrix {
        let c = c % self.q;
        let data = self.data.iter().map(|&a| a * c % self.q).collect();
        GFMatrix { q: self.q, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, rhs: &GFMatrix) -> GFMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = GFMatrix::zero(self.q, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = (out.get(i, j) + a * rhs.get(k, j)) % self.q;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &x)| (acc + a * x) % self.q)
            })
            .collect()
    }

    pub fn transpose(&self) -> GFMatrix {
        let mut out = GFMatrix::zero(self.q, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns, computed with
    /// leftmost-pivot, topmost-row elimination.
    pub fn rref(&self) -> (GFMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let tmp = m.get(r, j);
                m.set(r, j, m.get(pr, j));
                m.set(pr, j, tmp);
            }
            let inv = field_inv(m.q, m.get(r, c));
            for j in 0..m.cols {
                m.set(r, j, m.get(r, j) * inv % m.q);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + (m.q - f) * m.get(r, j)) % m.q;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<GFMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        // Row-reduce [A | I]; A invertible iff the left block reaches I.
        let mut aug = GFMatrix::zero(self.q, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = GFMatrix::zero(self.q, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Basis of the right nullspace `{x : Ax = 0}`, one vector per free
    /// column in ascending column order.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                let x = red.get(r, free);
                if x != 0 {
                    v[pc] = self.q - x;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Stack `blocks[i]` along the diagonal.
    pub fn block_diag(q: u64, blocks: &[&GFMatrix]) -> GFMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = GFMatrix::zero(q, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            assert_eq!(b.q, q);
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.get(i, j));
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }
}

/// Subspace of F_q^n held as a canonical RREF basis. Two subspaces are equal
/// iff their canonical bases are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: GFMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_span(q: u64, ambient: usize, vectors: &[Vec<u64>]) -> Subspace {
        let stack: Vec<Vec<u64>> = vectors.to_vec();
        let m = GFMatrix::from_rows(q, &stack).expect("span vectors must be reduced mod q");
        assert!(stack.iter().all(|v| v.len() == ambient));
        let (red, pivots) = m.rref();
        let mut basis = GFMatrix::zero(q, pivots.len(), ambient);
        for r in 0..pivots.len() {
            for c in 0..ambient {
                basis.set(r, c, red.get(r, c));
            }
        }
        Subspace { ambient, basis, pivots }
    }

    pub fn zero_space(q: u64, ambient: usize) -> Subspace {
        Subspace { ambient, basis: GFMatrix::zero(q, 0, ambient), pivots: vec![] }
    }

    pub fn full(q: u64, ambient: usize) -> Subspace {
        Subspace::from_span(q, ambient, &(0..ambient).map(|i| unit_vec(ambient, i)).collect::<Vec<_>>())
    }

    pub fn q(&self) -> u64 {
        self.basis.q
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis_matrix(&self) -> &GFMatrix {
        &self.basis
    }

    /// Residue of `v` after eliminating all pivot coordinates; zero iff
    /// `v` lies in the subspace. The residue map is linear with kernel
    /// exactly this subspace.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ambient);
        let q = self.q();
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let f = out[pc];
            if f != 0 {
                for j in 0..self.ambient {
                    out[j] = (out[j] + (q - f) * self.basis.get(r, j)) % q;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies here.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    /// Projection to and section from the quotient F_q^n / U in the basis of
    /// non-pivot coordinates: `proj` is (n-k) x n with kernel exactly U, and
    /// `proj * sect` is the identity on the quotient.
    pub fn quotient_maps(&self) -> (GFMatrix, GFMatrix) {
        let q = self.q();
        let n = self.ambient;
        let mut is_pivot = vec![false; n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut proj = GFMatrix::zero(q, free.len(), n);
        for (i, e) in (0..n).map(|c| {
            let mut v = vec![0u64; n];
            v[c] = 1;
            self.reduce(&v)
        }).enumerate() {
            for (r, &fc) in free.iter().enumerate() {
                proj.set(r, i, e[fc]);
            }
        }
        let mut sect = GFMatrix::zero(q, n, free.len());
        for (r, &fc) in free.iter().enumerate() {
            sect.set(fc, r, 1);
        }
        (proj, sect)
    }
}

fn unit_vec(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    v[i] = 1;
    v
}

/// All k-dimensional subspaces of F_q^n in a fixed deterministic order:
/// pivot-column sets in lexicographic order, free entries counting up in
/// base q. Refuses ambient dimensions past the enumeration budget.
pub fn subspaces(q: u64, n: usize, k: usize) -> Result<Vec<Subspace>> {
    if n > MAX_SUBSPACE_AMBIENT {
        return Err(Error::Budget(format!(
            "subspace enumeration in ambient dimension {n} > {MAX_SUBSPACE_AMBIENT}"
        )));
    }
    if k > n {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        // Free positions: (row r, col c) with c > pivots[r] and c not a pivot.
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut free_pos = Vec::new();
        for r in 0..k {
            for c in (pivots[r] + 1)..n {
                if !is_pivot[c] {
                    free_pos.push((r, c));
                }
            }
        }
        let mut fill = vec![0u64; free_pos.len()];
        loop {
            let mut basis = GFMatrix::zero(q, k, n);
            for r in 0..k {
                basis.set(r, pivots[r], 1);
            }
            for (&(r, c), &x) in free_pos.iter().zip(&fill) {
                basis.set(r, c, x);
            }
            out.push(Subspace { ambient: n, basis, pivots: pivots.clone() });
            // Odometer increment.
            let mut i = free_pos.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                fill[i] += 1;
                if fill[i] < q {
                    break;
                }
                fill[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if free_pos.is_empty() || i == usize::MAX {
                break;
            }
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Number of k-dimensional subspaces of F_q^n by the exact product formula
/// `prod_{i=0}^{k-1} (q^{n-i} - 1) / (q^{k-i} - 1)`.
pub fn gauss_binom_count(q: u64, n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((k - i) as u32) - 1u32;
    }
    let (quot, rem) = num::Integer::div_rem(&num, &den);
    assert!(rem == BigUint::ZERO, "Gaussian binomial product is exact");
    quot
}

/// Order of GL_n(F_q): `prod_{i=0}^{n-1} (q^n - q^i)`.
pub fn gl_order(q: u64, n: usize) -> BigUint {
    let q = BigUint::from(q);
    let mut acc = BigUint::one();
    for i in 0..n {
        acc *= q.pow(n as u32) - q.pow(i as u32);
    }
    acc
}

/// Count the invertible elements in the F_q-span of `basis`, where each
/// element is a tuple of square blocks (one per vertex) and invertibility
/// means every block is invertible. Scans all q^len combinations; refuses
/// spans past the budget.
pub fn count_invertible(q: u64, dims: &[usize], basis: &[Vec<GFMatrix>]) -> Result<u64> {
    let combos = (q as f64).powi(basis.len() as i32);
    if combos > MAX_INVERTIBLE_SCAN as f64 {
        return Err(Error::Budget(format!(
            "invertibility scan over {}^{} combinations exceeds {MAX_INVERTIBLE_SCAN}",
            q,
            basis.len()
        )));
    }
    for elem in basis {
        assert_eq!(elem.len(), dims.len());
        for (blk, &d) in elem.iter().zip(dims) {
            assert_eq!((blk.rows(), blk.cols()), (d, d));
        }
    }
    let mut count = 0u64;
    let mut coeffs = vec![0u64; basis.len()];
    loop {
        let mut combo: Vec<GFMatrix> = dims.iter().map(|&d| GFMatrix::zero(q, d, d)).collect();
        for (c, elem) in coeffs.iter().zip(basis) {
            if *c == 0 {
                continue;
            }
            for (acc, blk) in combo.iter_mut().zip(elem) {
                *acc = acc.add(&blk.scale(*c));
            }
        }
        if combo.iter().all(|m| m.is_invertible()) {
            count += 1;
        }
        let mut i = coeffs.len();
        loop {
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
            if i == 0 {
                return Ok(count);
            }
        }
    }
}
