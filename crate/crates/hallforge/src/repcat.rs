//! Nilpotent F_q-representations of a quiver: isomorphism classes up to a
//! dimension bound, Hom and Ext^1 dimensions, automorphism group orders,
//! and Hall numbers.
//!
//! A representation assigns F_q^{d_v} to each vertex and a matrix to each
//! arrow; it is nilpotent when the iterated radical (sum of arrow images)
//! vanishes, which is automatic on acyclic quivers. Class tables are built
//! by scanning all matrix tuples of each dimension vector and marking
//! GL-orbits; the canonical representative of a class is the
//! lexicographically least tuple, and class ids number classes by total
//! dimension, then by dimension vector in descending lexicographic order,
//! then by canonical representative. Id 0 is the zero representation and the
//! simple at vertex i is the (i+1)-st class.
//!
//! Automorphism group orders come from orbit-stabilizer against the exact
//! order of `prod_v GL_{d_v}(F_q)`; unit tests cross-check them by counting
//! invertible elements of the endomorphism algebra directly. The Hall number
//! `F^L_{M N}` counts subrepresentations of (the canonical) L isomorphic to
//! N with quotient isomorphic to M, by direct enumeration of invariant
//! subspace tuples. `|Ext^1(M, N)_L|`, the count of extension classes with
//! prescribed middle L, is recovered from the Hall number by the
//! Riedtmann-Peng formula; every division in it is checked exact.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num::{BigUint, Integer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gflinalg::{gl_order, GFMatrix, Subspace};
use crate::orbits;
use crate::quiver::{DimVec, Quiver};

/// Largest total dimension a class table will be built for.
pub const MAX_REP_TOTAL_DIM: usize = 6;

/// Largest total number of matrix tuples a table build may scan.
pub const MAX_TABLE_STATES: u128 = 4_000_000;

/// Identifier of an isomorphism class within one table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassId(pub u32);

impl std::fmt::Display for ClassId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Concrete representation: one dimension per vertex, one matrix per arrow
/// with shape `d_target x d_source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    pub dims: Vec<usize>,
    pub mats: Vec<GFMatrix>,
}

impl Rep {
    pub fn zero(quiver: &Quiver, q: u64, dims: Vec<usize>) -> Rep {
        let mats = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| GFMatrix::zero(q, dims[t], dims[s]))
            .collect();
        Rep { dims, mats }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim_vec(&self) -> DimVec {
        DimVec::from_dims(&self.dims)
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let q = self.mats.first().map_or_else(
            || other.mats.first().map_or(2, |m| m.q()),
            |m| m.q(),
        );
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| GFMatrix::block_diag(q, &[a, b]))
            .collect();
        Rep { dims, mats }
    }

    fn check_shape(&self, quiver: &Quiver, q: u64) -> Result<()> {
        if self.dims.len() != quiver.num_vertices() {
            return Err(Error::Schema(format!(
                "representation has {} vertex dimensions, quiver has {} vertices",
                self.dims.len(),
                quiver.num_vertices()
            )));
        }
        if self.mats.len() != quiver.arrows().len() {
            return Err(Error::Schema(format!(
                "representation has {} matrices, quiver has {} arrows",
                self.mats.len(),
                quiver.arrows().len()
            )));
        }
        for (m, &(s, t)) in self.mats.iter().zip(quiver.arrows()) {
            if m.q() != q || m.rows() != self.dims[t] || m.cols() != self.dims[s] {
                return Err(Error::Schema(format!(
                    "arrow {s}->{t} matrix has shape {}x{} over F_{}, expected {}x{} over F_{q}",
                    m.rows(),
                    m.cols(),
                    m.q(),
                    self.dims[t],
                    self.dims[s]
                )));
            }
        }
        Ok(())
    }
}

/// Nilpotency via radical descent: rad^{k+1}_t = sum_{arrows s->t} M(rad^k_s)
/// starting from the whole space; the representation is nilpotent iff the
/// chain reaches zero. On acyclic quivers this always terminates at zero.
pub fn is_nilpotent(quiver: &Quiver, q: u64, rep: &Rep) -> bool {
    let n = quiver.num_vertices();
    let mut rad: Vec<Subspace> = (0..n).map(|v| Subspace::full(q, rep.dims[v])).collect();
    let mut total: usize = rad.iter().map(|s| s.dim()).sum();
    loop {
        if total == 0 {
            return true;
        }
        let mut next: Vec<Vec<Vec<u64>>> = vec![Vec::new(); n];
        for (m, &(s, t)) in rep.mats.iter().zip(quiver.arrows()) {
            for r in 0..rad[s].dim() {
                next[t].push(m.mul_vec(rad[s].basis_matrix().row(r)));
            }
        }
        let new_rad: Vec<Subspace> = next
            .iter()
            .enumerate()
            .map(|(v, vs)| Subspace::from_span(q, rep.dims[v], vs))
            .collect();
        let new_total = new_rad.iter().map(|s| s.dim()).sum();
        if new_total == total {
            return false; // stabilized above zero
        }
        rad = new_rad;
        total = new_total;
    }
}

/// One isomorphism class: canonical representative, orbit size, and the
/// order of its automorphism group.
pub struct IsoClass {
    pub id: ClassId,
    pub rep: Rep,
    pub orbit_size: u64,
    pub aut_order: BigUint,
}

/// Table of all nilpotent isomorphism classes with total dimension at most
/// the bound, plus memoized Hom dimensions and Hall numbers.
pub struct RepTable {
    quiver: Arc<Quiver>,
    q: u64,
    max_total_dim: usize,
    classes: Vec<IsoClass>,
    by_dims: BTreeMap<Vec<usize>, Vec<ClassId>>,
    index: HashMap<(Vec<usize>, Vec<u64>), ClassId>,
    hom_cache: Mutex<HashMap<(ClassId, ClassId), usize>>,
    hall_cache: Mutex<HashMap<(ClassId, ClassId, ClassId), u64>>,
}

/// All dimension vectors with the given coordinate count and total, in
/// descending lexicographic order, so that at total 1 the simples come out
/// in vertex order.
pub(crate) fn dim_vectors(nv: usize, total: usize) -> Vec<Vec<usize>> {
    if nv == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in dim_vectors(nv - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl RepTable {
    /// Build the class table. Refuses bounds past `MAX_REP_TOTAL_DIM` and
    /// state spaces past `MAX_TABLE_STATES`.
    pub fn build(quiver: Arc<Quiver>, q: u64, max_total_dim: usize) -> Result<RepTable> {
        if max_total_dim > MAX_REP_TOTAL_DIM {
            return Err(Error::Budget(format!(
                "class table bound {max_total_dim} > {MAX_REP_TOTAL_DIM}"
            )));
        }
        let slots: Vec<(usize, usize)> =
            quiver.arrows().iter().map(|&(s, t)| (t, s)).collect();
        let mut cost: u128 = 0;
        for total in 0..=max_total_dim {
            for dims in dim_vectors(quiver.num_vertices(), total) {
                cost = cost.saturating_add(orbits::state_count(q, &dims, &slots));
            }
        }
        if cost > MAX_TABLE_STATES {
            return Err(Error::Budget(format!(
                "class table for q={q}, bound {max_total_dim} scans {cost} tuples > {MAX_TABLE_STATES}"
            )));
        }

        let mut table = RepTable {
            quiver: quiver.clone(),
            q,
            max_total_dim,
            classes: Vec::new(),
            by_dims: BTreeMap::new(),
            index: HashMap::new(),
            hom_cache: Mutex::new(HashMap::new()),
            hall_cache: Mutex::new(HashMap::new()),
        };
        for total in 0..=max_total_dim {
            for dims in dim_vectors(quiver.num_vertices(), total) {
                let en = orbits::enumerate_orbits(q, &dims, &slots, |mats| {
                    is_nilpotent(
                        &quiver,
                        q,
                        &Rep { dims: dims.clone(), mats: mats.to_vec() },
                    )
                });
                let base = table.classes.len() as u32;
                let group_order: BigUint =
                    dims.iter().map(|&d| gl_order(q, d)).product();
                let mut ids = Vec::with_capacity(en.orbits.len());
                for (k, orbit) in en.orbits.into_iter().enumerate() {
                    let id = ClassId(base + k as u32);
                    let (aut, rem) = group_order.div_rem(&BigUint::from(orbit.size));
                    if rem != BigUint::ZERO {
                        return Err(Error::Internal(format!(
                            "orbit size {} does not divide |G| for dims {dims:?}",
                            orbit.size
                        )));
                    }
                    table.classes.push(IsoClass {
                        id,
                        rep: Rep { dims: dims.clone(), mats: orbit.canonical },
                        orbit_size: orbit.size,
                        aut_order: aut,
                    });
                    ids.push(id);
                }
                for (enc, pos) in en.index {
                    table.index.insert((dims.clone(), enc), ClassId(base + pos));
                }
                table.by_dims.insert(dims, ids);
            }
        }
        Ok(table)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn max_total_dim(&self) -> usize {
        self.max_total_dim
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, id: ClassId) -> &IsoClass {
        &self.classes[id.0 as usize]
    }

    pub fn classes(&self) -> impl Iterator<Item = &IsoClass> {
        self.classes.iter()
    }

    pub fn zero_class(&self) -> ClassId {
        ClassId(0)
    }

    /// Class of the simple at the given vertex.
    pub fn simple(&self, vertex: usize) -> ClassId {
        assert!(vertex < self.quiver.num_vertices());
        ClassId(1 + vertex as u32)
    }

    pub fn dim_vec(&self, id: ClassId) -> DimVec {
        self.class(id).rep.dim_vec()
    }

    pub fn aut_order(&self, id: ClassId) -> &BigUint {
        &self.class(id).aut_order
    }

    pub fn classes_with_dims(&self, dims: &[usize]) -> &[ClassId] {
        self.by_dims.get(dims).map_or(&[], |v| v.as_slice())
    }

    /// Classes whose dimension vector equals the given (nonnegative) vector.
    pub fn classes_with_dim_vec(&self, dv: &DimVec) -> &[ClassId] {
        match dv.as_dims() {
            Some(dims) => self.classes_with_dims(&dims),
            None => &[],
        }
    }

    /// All classes of total dimension <= the given bound.
    pub fn classes_up_to_total(&self, bound: usize) -> Vec<ClassId> {
        self.classes
            .iter()
            .filter(|c| c.rep.total_dim() <= bound)
            .map(|c| c.id)
            .collect()
    }

    /// Isomorphism class of an arbitrary representation within the table
    /// bound. Errors on malformed shapes, dimensions out of range, and
    /// non-nilpotent representations.
    pub fn iso_class_of(&self, rep: &Rep) -> Result<ClassId> {
        rep.check_shape(&self.quiver, self.q)?;
        if rep.total_dim() > self.max_total_dim {
            return Err(Error::DimOutOfRange(format!(
                "total dimension {} exceeds table bound {}",
                rep.total_dim(),
                self.max_total_dim
            )));
        }
        let key = (rep.dims.clone(), orbits::encode(&rep.mats));
        if let Some(&id) = self.index.get(&key) {
            return Ok(id);
        }
        if !is_nilpotent(&self.quiver, self.q, rep) {
            return Err(Error::Schema(
                "representation is not nilpotent".into(),
            ));
        }
        Err(Error::Internal(
            "nilpotent representation missing from class index".into(),
        ))
    }

    /// Hom-space basis as tuples of per-vertex matrices.
    pub fn hom_basis(&self, a: ClassId, b: ClassId) -> Vec<Vec<GFMatrix>> {
        let (ra, rb) = (&self.class(a).rep, &self.class(b).rep);
        let slots: Vec<(usize, usize)> =
            self.quiver.arrows().iter().map(|&(s, t)| (t, s)).collect();
        orbits::intertwiner_basis(self.q, &slots, &ra.dims, &ra.mats, &rb.dims, &rb.mats)
    }

    pub fn hom_dim(&self, a: ClassId, b: ClassId) -> usize {
        if let Some(&d) = self.hom_cache.lock().unwrap().get(&(a, b)) {
            return d;
        }
        let d = self.hom_basis(a, b).len();
        self.hom_cache.lock().unwrap().insert((a, b), d);
        d
    }

    /// dim Ext^1(A, B) = dim Hom(A, B) - <dim A, dim B>. Over a hereditary
    /// category this is nonnegative; a negative value is an internal defect.
    pub fn ext1_dim(&self, a: ClassId, b: ClassId) -> Result<usize> {
        let hom = self.hom_dim(a, b) as i64;
        let euler = self.quiver.euler_form(&self.dim_vec(a), &self.dim_vec(b));
        let ext = hom - euler;
        if ext < 0 {
            return Err(Error::Internal(format!(
                "negative ext dimension {ext} for classes {a}, {b}"
            )));
        }
        Ok(ext as usize)
    }

    /// Hall number F^L_{M N}: the number of subrepresentations of L
    /// isomorphic to N whose quotient is isomorphic to M.
    pub fn hall_number(&self, m: ClassId, n: ClassId, l: ClassId) -> Result<u64> {
        if let Some(&v) = self.hall_cache.lock().unwrap().get(&(m, n, l)) {
            return Ok(v);
        }
        let dl = self.dim_vec(l);
        let dn = self.dim_vec(n);
        let dm = self.dim_vec(m);
        let v = if &(&dm + &dn) != &dl {
            0
        } else {
            let rl = &self.class(l).rep;
            let slots: Vec<(usize, usize)> =
                self.quiver.arrows().iter().map(|&(s, t)| (t, s)).collect();
            let sub_dims = dn.as_dims().expect("class dims are nonnegative");
            let mut count = 0u64;
            orbits::for_subspace_tuples(self.q, &rl.dims, &sub_dims, |subs| {
                if let Some(sub_mats) = orbits::restrict_to_invariant(&slots, &rl.mats, subs) {
                    let sub = Rep { dims: sub_dims.clone(), mats: sub_mats };
                    if self.iso_class_of(&sub)? == n {
                        let quo_mats = orbits::quotient_by_invariant(&slots, &rl.mats, subs);
                        let quo_dims: Vec<usize> = rl
                            .dims
                            .iter()
                            .zip(&sub_dims)
                            .map(|(&a, &b)| a - b)
                            .collect();
                        let quo = Rep { dims: quo_dims, mats: quo_mats };
                        if self.iso_class_of(&quo)? == m {
                            count += 1;
                        }
                    }
                }
                Ok(())
            })?;
            count
        };
        self.hall_cache.lock().unwrap().insert((m, n, l), v);
        Ok(v)
    }

    /// Number of extension classes in Ext^1(M, N) with middle isomorphic to
    /// L, by the Riedtmann-Peng formula
    /// `|Ext^1(M,N)_L| = F^L_{MN} |Hom(M,N)| a_M a_N / a_L`.
    pub fn ext1_count_with_middle(&self, m: ClassId, n: ClassId, l: ClassId) -> Result<BigUint> {
        let f = self.hall_number(m, n, l)?;
        if f == 0 {
            return Ok(BigUint::ZERO);
        }
        let hom = BigUint::from(self.q).pow(self.hom_dim(m, n) as u32);
        let num = BigUint::from(f) * hom * self.aut_order(m) * self.aut_order(n);
        let (count, rem) = num.div_rem(self.aut_order(l));
        if rem != BigUint::ZERO {
            return Err(Error::NonIntegral("Riedtmann-Peng extension count"));
        }
        Ok(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gflinalg::count_invertible;
    use num::One;

    fn table(quiver: Quiver, q: u64, bound: usize) -> RepTable {
        RepTable::build(Arc::new(quiver), q, bound).unwrap()
    }

    fn find_by_dims(t: &RepTable, dims: &[usize]) -> Vec<ClassId> {
        t.classes_with_dims(dims).to_vec()
    }

    #[test]
    fn a1_has_one_class_per_total_dimension() {
        // Krull-Schmidt on a point: the only class of total dimension n is
        // the n-fold sum of the simple.
        let t = table(Quiver::linear(1), 2, 4);
        assert_eq!(t.num_classes(), 5);
        for n in 0..=4usize {
            assert_eq!(find_by_dims(&t, &[n]).len(), 1);
        }
    }

    #[test]
    fn a2_class_table_at_bound_two() {
        let t = table(Quiver::linear(2), 2, 2);
        assert_eq!(t.num_classes(), 7);
        assert_eq!(find_by_dims(&t, &[1, 1]).len(), 2);
        // Simples come out in vertex order right after the zero class.
        assert_eq!(t.dim_vec(t.zero_class()), DimVec(vec![0, 0]));
        assert_eq!(t.dim_vec(t.simple(0)), DimVec(vec![1, 0]));
        assert_eq!(t.dim_vec(t.simple(1)), DimVec(vec![0, 1]));
        // At (1,1) the split class has the zero matrix (lex-least), the
        // indecomposable projective has matrix [1].
        let ids = find_by_dims(&t, &[1, 1]);
        assert!(t.class(ids[0]).rep.mats[0].is_zero());
        assert_eq!(t.class(ids[1]).rep.mats[0].get(0, 0), 1);
    }

    #[test]
    fn cyclic_quiver_keeps_only_nilpotent_classes() {
        // Two vertices with arrows both ways: at dims (1,1) the classes with
        // both maps nonzero are not nilpotent and must be excluded.
        let q2 = Quiver::new(vec!["1".into(), "2".into()], vec![(0, 1), (1, 0)]).unwrap();
        let t = table(q2, 2, 2);
        let ids = find_by_dims(&t, &[1, 1]);
        // Zero maps, or exactly one of the two maps nonzero.
        assert_eq!(ids.len(), 3);
        for id in ids {
            let r = &t.class(id).rep;
            assert!(
                r.mats[0].is_zero() || r.mats[1].is_zero(),
                "non-nilpotent class survived"
            );
        }
    }

    #[test]
    fn automorphism_orders_match_direct_unit_counts() {
        // Dual route: orbit-stabilizer vs direct enumeration of units in the
        // endomorphism algebra.
        for (quiver, q, bound) in [
            (Quiver::linear(2), 2u64, 3usize),
            (Quiver::linear(1), 3, 2),
            (Quiver::kronecker(), 2, 2),
        ] {
            let t = table(quiver, q, bound);
            for c in t.classes() {
                let basis = t.hom_basis(c.id, c.id);
                let direct = count_invertible(q, &c.rep.dims, &basis).unwrap();
                assert_eq!(
                    BigUint::from(direct),
                    *t.aut_order(c.id),
                    "class {} (dims {:?}) at q={q}",
                    c.id,
                    c.rep.dims
                );
            }
        }
    }

    #[test]
    fn automorphism_orders_hand_values() {
        let t = table(Quiver::linear(2), 3, 2);
        assert_eq!(*t.aut_order(t.zero_class()), BigUint::one());
        assert_eq!(*t.aut_order(t.simple(0)), BigUint::from(2u32)); // |GL_1(F_3)|
        let p = find_by_dims(&t, &[1, 1])[1];
        // End(P) = F_3, so Aut(P) has order 2.
        assert_eq!(*t.aut_order(p), BigUint::from(2u32));
        let s1s1 = find_by_dims(&t, &[2, 0])[0];
        assert_eq!(*t.aut_order(s1s1), BigUint::from(48u32)); // |GL_2(F_3)|
    }

    #[test]
    fn hom_dimensions_on_a2() {
        let t = table(Quiver::linear(2), 2, 2);
        let (s1, s2) = (t.simple(0), t.simple(1));
        let p = find_by_dims(&t, &[1, 1])[1];
        assert_eq!(t.hom_dim(p, p), 1);
        assert_eq!(t.hom_dim(p, s2), 0); // S_2 is the socle, not a quotient
        assert_eq!(t.hom_dim(s2, p), 1); // socle inclusion
        assert_eq!(t.hom_dim(p, s1), 1); // top projection
        assert_eq!(t.hom_dim(s1, p), 0);
        assert_eq!(t.hom_dim(s1, s2), 0);
    }

    #[test]
    fn ext_dimensions_on_a2() {
        let t = table(Quiver::linear(2), 2, 2);
        let (s1, s2) = (t.simple(0), t.simple(1));
        let p = find_by_dims(&t, &[1, 1])[1];
        assert_eq!(t.ext1_dim(s1, s2).unwrap(), 1);
        assert_eq!(t.ext1_dim(s2, s1).unwrap(), 0);
        assert_eq!(t.ext1_dim(p, p).unwrap(), 0);
        assert_eq!(t.ext1_dim(s1, s1).unwrap(), 0);
    }

    #[test]
    fn hall_numbers_hand_values() {
        // On a point: F^{S+S}_{S,S} = q + 1, one subspace per line.
        for q in [2u64, 3] {
            let t = table(Quiver::linear(1), q, 2);
            let s = t.simple(0);
            let ss = find_by_dims(&t, &[2])[0];
            assert_eq!(t.hall_number(s, s, ss).unwrap(), q + 1);
            // Unit constraints.
            assert_eq!(t.hall_number(t.zero_class(), s, s).unwrap(), 1);
            assert_eq!(t.hall_number(s, t.zero_class(), s).unwrap(), 1);
            // Dimension mismatch forces zero.
            assert_eq!(t.hall_number(s, s, s).unwrap(), 0);
        }
        // On A_2: P has a unique subrepresentation isomorphic to S_2, and no
        // subrepresentation isomorphic to S_1.
        let t = table(Quiver::linear(2), 3, 2);
        let (s1, s2) = (t.simple(0), t.simple(1));
        let p = find_by_dims(&t, &[1, 1])[1];
        let split = find_by_dims(&t, &[1, 1])[0];
        assert_eq!(t.hall_number(s1, s2, p).unwrap(), 1);
        assert_eq!(t.hall_number(s2, s1, p).unwrap(), 0);
        assert_eq!(t.hall_number(s1, s2, split).unwrap(), 1);
        assert_eq!(t.hall_number(s2, s1, split).unwrap(), 1);
    }

    #[test]
    fn extension_counts_by_riedtmann_peng() {
        // Ext^1(S,S) over a point is zero: only the split middle, once.
        for q in [2u64, 3, 5] {
            let t = table(Quiver::linear(1), q, 2);
            let s = t.simple(0);
            let ss = find_by_dims(&t, &[2])[0];
            assert_eq!(t.ext1_count_with_middle(s, s, ss).unwrap(), BigUint::one());
        }
        // Ext^1(S_1, S_2) on A_2 is one-dimensional: q - 1 nonsplit classes
        // with middle P, 1 split class with split middle.
        for q in [2u64, 3, 5] {
            let t = table(Quiver::linear(2), q, 2);
            let (s1, s2) = (t.simple(0), t.simple(1));
            let p = find_by_dims(&t, &[1, 1])[1];
            let split = find_by_dims(&t, &[1, 1])[0];
            assert_eq!(
                t.ext1_count_with_middle(s1, s2, p).unwrap(),
                BigUint::from(q - 1)
            );
            assert_eq!(
                t.ext1_count_with_middle(s1, s2, split).unwrap(),
                BigUint::one()
            );
            assert_eq!(t.ext1_count_with_middle(s2, s1, p).unwrap(), BigUint::ZERO);
        }
    }

    #[test]
    fn riedtmann_peng_counts_close_up_to_ext_group_order() {
        // Summing |Ext^1(M,N)_L| over all middles L gives |Ext^1(M,N)|.
        for q in [2u64, 3] {
            let t = table(Quiver::linear(2), q, 3);
            let pairs: Vec<(ClassId, ClassId)> = t
                .classes_up_to_total(3)
                .into_iter()
                .flat_map(|a| {
                    t.classes_up_to_total(3).into_iter().map(move |b| (a, b))
                })
                .filter(|(a, b)| {
                    (t.dim_vec(*a).total() + t.dim_vec(*b).total()) as usize <= 3
                })
                .collect();
            for (m, n) in pairs {
                let dsum = &t.dim_vec(m) + &t.dim_vec(n);
                let mut total = BigUint::ZERO;
                for l in t.classes_with_dim_vec(&dsum) {
                    total += t.ext1_count_with_middle(m, n, *l).unwrap();
                }
                let expect = BigUint::from(q).pow(t.ext1_dim(m, n).unwrap() as u32);
                assert_eq!(total, expect, "q={q} M={m} N={n}");
            }
        }
    }

    #[test]
    fn hall_numbers_are_associative() {
        // sum_X F^M_{A X} F^X_{B C} = sum_Y F^M_{Y C} F^Y_{A B}.
        let t = table(Quiver::linear(2), 2, 3);
        let small = t.classes_up_to_total(3);
        for &a in &small {
            for &b in &small {
                for &c in &small {
                    let dsum = &(&t.dim_vec(a) + &t.dim_vec(b)) + &t.dim_vec(c);
                    if dsum.total() > 3 {
                        continue;
                    }
                    for m in t.classes_with_dim_vec(&dsum) {
                        let lhs: u64 = t
                            .classes_with_dim_vec(&(&t.dim_vec(b) + &t.dim_vec(c)))
                            .iter()
                            .map(|&x| {
                                t.hall_number(a, x, *m).unwrap() * t.hall_number(b, c, x).unwrap()
                            })
                            .sum();
                        let rhs: u64 = t
                            .classes_with_dim_vec(&(&t.dim_vec(a) + &t.dim_vec(b)))
                            .iter()
                            .map(|&y| {
                                t.hall_number(y, c, *m).unwrap() * t.hall_number(a, b, y).unwrap()
                            })
                            .sum();
                        assert_eq!(lhs, rhs, "A={a} B={b} C={c} M={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn iso_class_of_matches_construction() {
        let t = table(Quiver::linear(2), 2, 4);
        let s1 = &t.class(t.simple(0)).rep;
        let s2 = &t.class(t.simple(1)).rep;
        let p = Rep {
            dims: vec![1, 1],
            mats: vec![GFMatrix::identity(2, 1)],
        };
        let pp = p.direct_sum(&p);
        let quad = t.iso_class_of(&pp).unwrap();
        assert_eq!(t.dim_vec(quad), DimVec(vec![2, 2]));
        // P+P is not isomorphic to S_1+S_1+S_2+S_2.
        let split = s1.direct_sum(s1).direct_sum(&s2.direct_sum(s2));
        assert_ne!(t.iso_class_of(&split).unwrap(), quad);
        // Summand order does not change the class.
        let s12 = s1.direct_sum(s2);
        let s21 = s2.direct_sum(s1);
        assert_eq!(
            t.iso_class_of(&s12).unwrap(),
            t.iso_class_of(&s21).unwrap()
        );
    }

    #[test]
    fn iso_class_errors() {
        let t = table(Quiver::linear(2), 2, 2);
        let too_big = Rep::zero(&Quiver::linear(2), 2, vec![2, 1]);
        match t.iso_class_of(&too_big) {
            Err(Error::DimOutOfRange(_)) => {}
            other => panic!("expected dim error, got {other:?}"),
        }
        let cyc = Quiver::new(vec!["1".into(), "2".into()], vec![(0, 1), (1, 0)]).unwrap();
        let tc = table(cyc.clone(), 2, 2);
        let bad = Rep {
            dims: vec![1, 1],
            mats: vec![GFMatrix::identity(2, 1), GFMatrix::identity(2, 1)],
        };
        match tc.iso_class_of(&bad) {
            Err(Error::Schema(msg)) => assert!(msg.contains("nilpotent")),
            other => panic!("expected nilpotency error, got {other:?}"),
        }
    }

    #[test]
    fn budget_guards_fire() {
        match RepTable::build(Arc::new(Quiver::linear(2)), 2, 9).map(|_| ()) {
            Err(Error::Budget(_)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
        // Kronecker at q=3 and bound 6 has 3^18 tuples at dims (3,3).
        match RepTable::build(Arc::new(Quiver::kronecker()), 3, 6).map(|_| ()) {
            Err(Error::Budget(_)) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn dim_vector_order_is_descending_lex() {
        assert_eq!(
            dim_vectors(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert_eq!(dim_vectors(1, 3), vec![vec![3]]);
        assert_eq!(dim_vectors(0, 0), vec![Vec::<usize>::new()]);
    }
}
