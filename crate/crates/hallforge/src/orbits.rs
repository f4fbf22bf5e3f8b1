//! Crate-internal engine for enumerating GL-orbits of matrix diagrams.
//!
//! Both nilpotent representations and 1-periodic complexes are tuples of
//! matrices indexed by "slots": a slot `(t, s)` holds a `d_t x d_s` matrix
//! over F_q, and the group `prod_v GL_{d_v}(F_q)` acts by
//! `M_slot -> g_t M_slot g_s^{-1}`. Arrows of a quiver are slots with
//! `t != s`; a 1-periodic differential contributes one diagonal slot per
//! vertex. Orbits of this action are exactly isomorphism classes.
//!
//! Enumeration scans all matrix tuples in lexicographic order of their
//! entry encoding, skips tuples that fail the caller's validity predicate,
//! and marks whole orbits via breadth-first closure under a generating set
//! of the acting group. The first tuple found in each orbit is therefore the
//! lexicographically least member and serves as the canonical representative.
//! Orbit sizes come out of the same walk, which gives automorphism group
//! orders by orbit-stabilizer against the exactly known group order.

use std::collections::HashMap;

use crate::gflinalg::{GFMatrix, Subspace};

/// Entry encoding of a matrix tuple: all entries, slot by slot, row-major.
pub(crate) fn encode(mats: &[GFMatrix]) -> Vec<u64> {
    let mut out = Vec::with_capacity(mats.iter().map(|m| m.entries_row_major().len()).sum());
    for m in mats {
        out.extend_from_slice(m.entries_row_major());
    }
    out
}

/// Number of matrix tuples for the given shape, saturating at u128::MAX.
pub(crate) fn state_count(q: u64, dims: &[usize], slots: &[(usize, usize)]) -> u128 {
    let mut acc: u128 = 1;
    for &(t, s) in slots {
        let cells = dims[t] * dims[s];
        for _ in 0..cells {
            acc = acc.saturating_mul(q as u128);
        }
    }
    acc
}

/// Generators of GL_n(F_q) for prime q, as (g, g_inverse) pairs: all
/// elementary transvections E_ij(1) and, for q > 2, the scaling of each
/// coordinate by a primitive root. Gaussian elimination writes any
/// invertible matrix as a product of these, so they generate.
pub(crate) fn gl_generators(q: u64, n: usize) -> Vec<(GFMatrix, GFMatrix)> {
    let mut gens = Vec::new();
    if n == 0 {
        return gens;
    }
    if q > 2 {
        let zeta = primitive_root(q);
        let zeta_inv = zeta_pow_inv(q, zeta);
        for k in 0..n {
            let mut d = GFMatrix::identity(q, n);
            d.set(k, k, zeta);
            let mut dinv = GFMatrix::identity(q, n);
            dinv.set(k, k, zeta_inv);
            gens.push((d, dinv));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut e = GFMatrix::identity(q, n);
            e.set(i, j, 1);
            let mut einv = GFMatrix::identity(q, n);
            einv.set(i, j, q - 1);
            gens.push((e, einv));
        }
    }
    // Close the generator list under inversion so breadth-first search walks
    // the full subgroup orbit without relying on element orders.
    let inverses: Vec<_> = gens.iter().map(|(g, gi)| (gi.clone(), g.clone())).collect();
    gens.extend(inverses);
    gens
}

fn primitive_root(q: u64) -> u64 {
    'cand: for g in 2..q {
        let mut x = 1u64;
        for _ in 0..q - 2 {
            x = x * g % q;
            if x == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    1 // q = 2: the unit group is trivial
}

fn zeta_pow_inv(q: u64, zeta: u64) -> u64 {
    let mut x = 1u64;
    let mut inv = 1u64;
    loop {
        let nx = x * zeta % q;
        if nx == 1 {
            return inv;
        }
        inv = nx; // after the loop ends, inv = zeta^{ord-1} = zeta^{-1}
        x = nx;
    }
}

/// Apply the group element that is `g` at vertex `v` and the identity
/// elsewhere: slots into `v` are hit by `g` on the left, slots out of `v`
/// by `g^{-1}` on the right, diagonal slots at `v` by both.
pub(crate) fn apply_vertex_gen(
    slots: &[(usize, usize)],
    mats: &[GFMatrix],
    v: usize,
    g: &GFMatrix,
    g_inv: &GFMatrix,
) -> Vec<GFMatrix> {
    slots
        .iter()
        .zip(mats)
        .map(|(&(t, s), m)| {
            let mut out = m.clone();
            if t == v {
                out = g.mul(&out);
            }
            if s == v {
                out = out.mul(g_inv);
            }
            out
        })
        .collect()
}

pub(crate) struct OrbitData {
    /// Lexicographically least tuple of the orbit.
    pub canonical: Vec<GFMatrix>,
    pub size: u64,
}

pub(crate) struct OrbitEnumeration {
    pub orbits: Vec<OrbitData>,
    /// Orbit position for every valid tuple of this shape, by encoding.
    pub index: HashMap<Vec<u64>, u32>,
}

/// Enumerate the orbits of all valid matrix tuples of the given shape.
/// `valid` must be constant on orbits (an isomorphism invariant).
pub(crate) fn enumerate_orbits(
    q: u64,
    dims: &[usize],
    slots: &[(usize, usize)],
    valid: impl Fn(&[GFMatrix]) -> bool,
) -> OrbitEnumeration {
    let gens: Vec<(usize, GFMatrix, GFMatrix)> = (0..dims.len())
        .flat_map(|v| {
            gl_generators(q, dims[v])
                .into_iter()
                .map(move |(g, gi)| (v, g, gi))
        })
        .collect();

    let mut orbits: Vec<OrbitData> = Vec::new();
    let mut index: HashMap<Vec<u64>, u32> = HashMap::new();

    let shapes: Vec<(usize, usize)> = slots.iter().map(|&(t, s)| (dims[t], dims[s])).collect();
    let total_cells: usize = shapes.iter().map(|&(r, c)| r * c).sum();
    let mut entries = vec![0u64; total_cells];

    loop {
        if !index.contains_key(&entries) {
            let mats = tuple_from_entries(q, &shapes, &entries);
            if valid(&mats) {
                let id = orbits.len() as u32;
                let mut size = 0u64;
                let mut queue = vec![mats.clone()];
                index.insert(entries.clone(), id);
                while let Some(cur) = queue.pop() {
                    size += 1;
                    for (v, g, gi) in &gens {
                        let next = apply_vertex_gen(slots, &cur, *v, g, gi);
                        let enc = encode(&next);
                        if let std::collections::hash_map::Entry::Vacant(e) = index.entry(enc) {
                            e.insert(id);
                            queue.push(next);
                        }
                    }
                }
                orbits.push(OrbitData { canonical: mats, size });
            }
        }
        // Odometer over entries; finished when it wraps around.
        let mut i = total_cells;
        loop {
            if i == 0 {
                return OrbitEnumeration { orbits, index };
            }
            i -= 1;
            entries[i] += 1;
            if entries[i] < q {
                break;
            }
            entries[i] = 0;
            if i == 0 {
                return OrbitEnumeration { orbits, index };
            }
        }
    }
}

fn tuple_from_entries(q: u64, shapes: &[(usize, usize)], entries: &[u64]) -> Vec<GFMatrix> {
    let mut mats = Vec::with_capacity(shapes.len());
    let mut off = 0;
    for &(r, c) in shapes {
        mats.push(GFMatrix::from_flat(q, r, c, &entries[off..off + r * c]).expect("entries < q"));
        off += r * c;
    }
    mats
}

/// Matrices of the tuple restricted to a tuple of invariant subspaces, in
/// the canonical subspace bases; `None` if some slot does not map the
/// source subspace into the target subspace.
pub(crate) fn restrict_to_invariant(
    slots: &[(usize, usize)],
    mats: &[GFMatrix],
    subs: &[Subspace],
) -> Option<Vec<GFMatrix>> {
    let q = subs.first().map_or(2, |s| s.q()); // empty subs means no vertices at all
    let mut out = Vec::with_capacity(slots.len());
    for (&(t, s), m) in slots.iter().zip(mats) {
        let (ut, us) = (&subs[t], &subs[s]);
        let mut restricted = GFMatrix::zero(q, ut.dim(), us.dim());
        for r in 0..us.dim() {
            let image = m.mul_vec(us.basis_matrix().row(r));
            let coords = ut.coords(&image)?;
            for (i, &x) in coords.iter().enumerate() {
                restricted.set(i, r, x);
            }
        }
        out.push(restricted);
    }
    Some(out)
}

/// Matrices induced by the tuple on the quotients by an invariant tuple of
/// subspaces, in the canonical complement coordinates.
pub(crate) fn quotient_by_invariant(
    slots: &[(usize, usize)],
    mats: &[GFMatrix],
    subs: &[Subspace],
) -> Vec<GFMatrix> {
    let maps: Vec<_> = subs.iter().map(|u| u.quotient_maps()).collect();
    slots
        .iter()
        .zip(mats)
        .map(|(&(t, s), m)| maps[t].0.mul(m).mul(&maps[s].1))
        .collect()
}

/// Basis of the space of diagram maps `f = (f_v): A -> B`, i.e. tuples of
/// matrices `f_v: A_v -> B_v` with `f_t A_slot = B_slot f_s` for every slot.
pub(crate) fn intertwiner_basis(
    q: u64,
    slots: &[(usize, usize)],
    dims_a: &[usize],
    mats_a: &[GFMatrix],
    dims_b: &[usize],
    mats_b: &[GFMatrix],
) -> Vec<Vec<GFMatrix>> {
    let nv = dims_a.len();
    assert_eq!(dims_b.len(), nv);
    // Variables: entries of each f_v (dims_b[v] x dims_a[v]), row-major,
    // vertex by vertex.
    let var_offset: Vec<usize> = {
        let mut off = vec![0usize; nv + 1];
        for v in 0..nv {
            off[v + 1] = off[v] + dims_b[v] * dims_a[v];
        }
        off
    };
    let nvars = var_offset[nv];
    let var = |v: usize, i: usize, j: usize| var_offset[v] + i * dims_a[v] + j;

    let nrows: usize = slots.iter().map(|&(t, s)| dims_b[t] * dims_a[s]).sum();
    let mut sys = GFMatrix::zero(q, nrows, nvars);
    let mut row = 0;
    for (k, &(t, s)) in slots.iter().enumerate() {
        let (am, bm) = (&mats_a[k], &mats_b[k]);
        // Equation (i, j): sum_m f_t[i, m] A[m, j] - sum_m B[i, m] f_s[m, j] = 0.
        for i in 0..dims_b[t] {
            for j in 0..dims_a[s] {
                for m in 0..dims_a[t] {
                    let c = am.get(m, j);
                    if c != 0 {
                        let idx = var(t, i, m);
                        sys.set(row, idx, (sys.get(row, idx) + c) % q);
                    }
                }
                for m in 0..dims_b[s] {
                    let c = bm.get(i, m);
                    if c != 0 {
                        let idx = var(s, m, j);
                        sys.set(row, idx, (sys.get(row, idx) + q - c) % q);
                    }
                }
                row += 1;
            }
        }
    }
    debug_assert_eq!(row, nrows);

    sys.nullspace()
        .into_iter()
        .map(|x| {
            (0..nv)
                .map(|v| {
                    GFMatrix::from_flat(
                        q,
                        dims_b[v],
                        dims_a[v],
                        &x[var_offset[v]..var_offset[v + 1]],
                    )
                    .expect("nullspace entries are reduced")
                })
                .collect()
        })
        .collect()
}

/// Run `f` on every tuple of subspaces with prescribed dimensions, one per
/// vertex, in the deterministic enumeration order.
pub(crate) fn for_subspace_tuples(
    q: u64,
    ambient: &[usize],
    sub_dims: &[usize],
    mut f: impl FnMut(&[Subspace]) -> crate::error::Result<()>,
) -> crate::error::Result<()> {
    assert_eq!(ambient.len(), sub_dims.len());
    let per_vertex: Vec<Vec<Subspace>> = ambient
        .iter()
        .zip(sub_dims)
        .map(|(&n, &k)| crate::gflinalg::subspaces(q, n, k))
        .collect::<crate::error::Result<_>>()?;
    if per_vertex.iter().any(|s| s.is_empty()) {
        return Ok(());
    }
    let mut picks = vec![0usize; per_vertex.len()];
    loop {
        let tuple: Vec<Subspace> = picks
            .iter()
            .zip(&per_vertex)
            .map(|(&i, subs)| subs[i].clone())
            .collect();
        f(&tuple)?;
        let mut i = picks.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            picks[i] += 1;
            if picks[i] < per_vertex[i].len() {
                break;
            }
            picks[i] = 0;
            if i == 0 {
                return Ok(());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_generate_gl() {
        // Closure of the generators under multiplication has |GL_n(F_q)|
        // elements for small n, q.
        for (q, n, order) in [(2u64, 2usize, 6u64), (3, 2, 48), (5, 1, 4), (2, 3, 168)] {
            let gens = gl_generators(q, n);
            let mut seen = std::collections::HashSet::new();
            let mut queue = vec![GFMatrix::identity(q, n)];
            seen.insert(encode(&[GFMatrix::identity(q, n)]));
            while let Some(m) = queue.pop() {
                for (g, _) in &gens {
                    let next = g.mul(&m);
                    if seen.insert(encode(std::slice::from_ref(&next))) {
                        queue.push(next);
                    }
                }
            }
            assert_eq!(seen.len() as u64, order, "q={q} n={n}");
        }
    }

    #[test]
    fn orbit_sizes_partition_the_state_space() {
        // 2x2 matrices over F_2 under GL_2 x GL_2 (one slot between two
        // vertices): orbits are ranks 0, 1, 2.
        let dims = [2usize, 2usize];
        let slots = [(1usize, 0usize)];
        let en = enumerate_orbits(2, &dims, &slots, |_| true);
        assert_eq!(en.orbits.len(), 3);
        let total: u64 = en.orbits.iter().map(|o| o.size).sum();
        assert_eq!(total, 16);
        assert_eq!(en.index.len(), 16);
        let sizes: Vec<u64> = en.orbits.iter().map(|o| o.size).collect();
        // Rank 0 once, rank 1 nine times, rank 2 six times.
        assert_eq!(sizes, vec![1, 9, 6]);
    }

    #[test]
    fn intertwiners_of_identity_slot() {
        // A = B = (F_2^2 --id--> F_2^2): maps are pairs (f_0, f_1) with
        // f_1 = f_0, a 4-dimensional space.
        let id = GFMatrix::identity(2, 2);
        let basis = intertwiner_basis(
            2,
            &[(1, 0)],
            &[2, 2],
            std::slice::from_ref(&id),
            &[2, 2],
            std::slice::from_ref(&id),
        );
        assert_eq!(basis.len(), 4);
        for f in &basis {
            assert_eq!(f[0], f[1]);
        }
    }
}
