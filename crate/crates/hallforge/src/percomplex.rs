//! 1-periodic complexes of nilpotent representations and the abelian
//! category C_1 they form.
//!
//! A 1-periodic complex is a pair (X, d) of a representation X and a
//! degree-preserving endomorphism d with d^2 = 0 commuting with every arrow;
//! equivalently a module over kQ tensored with k[d]/(d^2). Two families
//! matter structurally: stalks C_X = (X, 0) and the contractible complexes
//! K_X = (X + X, [[0, Id], [0, 0]]), which become invertible torus classes
//! at the Hall-algebra level.
//!
//! Homology H(X, d) = ker d / im d inherits arrow maps, and every class
//! satisfies the restriction identity
//! `dim X = dim H + 2 * dim(im d)` coordinatewise.
//!
//! Class tables reuse the orbit engine of the representation layer with one
//! extra diagonal matrix slot per vertex, so the canonical-representative
//! and automorphism-order conventions match. Hom spaces, automorphism
//! orders, Hall numbers, and extension counts with prescribed middle are
//! computed inside C_1 by the same mechanisms as for representations; the
//! stalk identities Hom_{C_1}(C_A, C_B) = Hom(A, B) and
//! Aut(C_A) = Aut(A) are verified in tests rather than assumed.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num::{BigUint, Integer};

use crate::error::{Error, Result};
use crate::gflinalg::{gl_order, GFMatrix, Subspace};
use crate::orbits;
use crate::quiver::{DimVec, Quiver};
use crate::repcat::{dim_vectors, ClassId, Rep, RepTable, MAX_TABLE_STATES};

/// Largest total dimension a complex table will be built for.
pub const MAX_CPLX_TOTAL_DIM: usize = 4;

/// Identifier of a complex isomorphism class within one table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CplxClassId(pub u32);

impl std::fmt::Display for CplxClassId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Concrete 1-periodic complex: a representation plus one square matrix per
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerComplex {
    pub base: Rep,
    pub diff: Vec<GFMatrix>,
}

impl PerComplex {
    /// Stalk complex (X, 0).
    pub fn stalk(q: u64, base: Rep) -> PerComplex {
        let diff = base.dims.iter().map(|&d| GFMatrix::zero(q, d, d)).collect();
        PerComplex { base, diff }
    }

    /// Contractible complex K_X = (X + X, [[0, Id], [0, 0]]).
    pub fn contractible(q: u64, x: &Rep) -> PerComplex {
        let base = x.direct_sum(x);
        let diff = x
            .dims
            .iter()
            .map(|&d| {
                let mut m = GFMatrix::zero(q, 2 * d, 2 * d);
                for i in 0..d {
                    m.set(i, d + i, 1);
                }
                m
            })
            .collect();
        PerComplex { base, diff }
    }

    pub fn dims(&self) -> &[usize] {
        &self.base.dims
    }

    pub fn total_dim(&self) -> usize {
        self.base.total_dim()
    }

    /// Restriction class in the Grothendieck group of the representation
    /// category: the dimension vector of the underlying representation.
    pub fn res_dim_vec(&self) -> DimVec {
        self.base.dim_vec()
    }

    pub fn direct_sum(&self, other: &PerComplex) -> PerComplex {
        let q = self.diff.first().map_or(2, |m| m.q());
        PerComplex {
            base: self.base.direct_sum(&other.base),
            diff: self
                .diff
                .iter()
                .zip(&other.diff)
                .map(|(a, b)| GFMatrix::block_diag(q, &[a, b]))
                .collect(),
        }
    }

    fn all_mats(&self) -> Vec<GFMatrix> {
        let mut mats = self.base.mats.clone();
        mats.extend(self.diff.iter().cloned());
        mats
    }

    /// Complex axioms: correct shapes, d^2 = 0, and d commuting with every
    /// arrow. Nilpotency of the base is checked separately.
    pub fn validate(&self, quiver: &Quiver, q: u64) -> Result<()> {
        if self.diff.len() != quiver.num_vertices() {
            return Err(Error::Schema(format!(
                "complex has {} differentials, quiver has {} vertices",
                self.diff.len(),
                quiver.num_vertices()
            )));
        }
        for (v, d) in self.diff.iter().enumerate() {
            let n = self.base.dims[v];
            if d.q() != q || d.rows() != n || d.cols() != n {
                return Err(Error::Schema(format!(
                    "differential at vertex {v} has shape {}x{}, expected {n}x{n}",
                    d.rows(),
                    d.cols()
                )));
            }
            if !d.mul(d).is_zero() {
                return Err(Error::Schema(format!(
                    "differential at vertex {v} does not square to zero"
                )));
            }
        }
        for (m, &(s, t)) in self.base.mats.iter().zip(quiver.arrows()) {
            if self.diff[t].mul(m) != m.mul(&self.diff[s]) {
                return Err(Error::Schema(format!(
                    "differential does not commute with arrow {s}->{t}"
                )));
            }
        }
        Ok(())
    }

    /// Homology (ker d / im d) with its inherited arrow maps, together with
    /// the per-vertex rank of d.
    pub fn homology(&self, quiver: &Quiver, q: u64) -> (Rep, Vec<usize>) {
        let nv = quiver.num_vertices();
        let arrow_slots: Vec<(usize, usize)> =
            quiver.arrows().iter().map(|&(s, t)| (t, s)).collect();
        let kers: Vec<Subspace> = (0..nv)
            .map(|v| Subspace::from_span(q, self.base.dims[v], &self.diff[v].nullspace()))
            .collect();
        // Arrows preserve kernels because they commute with d.
        let ker_mats = orbits::restrict_to_invariant(&arrow_slots, &self.base.mats, &kers)
            .expect("arrows preserve ker d");
        // Image of d in kernel coordinates (d^2 = 0 puts it inside).
        let im_in_ker: Vec<Subspace> = (0..nv)
            .map(|v| {
                let dt = self.diff[v].transpose();
                let cols: Vec<Vec<u64>> = (0..dt.rows())
                    .map(|r| {
                        kers[v]
                            .coords(dt.row(r))
                            .expect("im d lies inside ker d")
                    })
                    .collect();
                Subspace::from_span(q, kers[v].dim(), &cols)
            })
            .collect();
        let h_mats = orbits::quotient_by_invariant(&arrow_slots, &ker_mats, &im_in_ker);
        let h_dims: Vec<usize> = (0..nv)
            .map(|v| kers[v].dim() - im_in_ker[v].dim())
            .collect();
        let ranks: Vec<usize> = im_in_ker.iter().map(|s| s.dim()).collect();
        (Rep { dims: h_dims, mats: h_mats }, ranks)
    }
}

/// One isomorphism class of complexes.
pub struct CplxClass {
    pub id: CplxClassId,
    pub cplx: PerComplex,
    pub orbit_size: u64,
    pub aut_order: BigUint,
}

/// Table of complex isomorphism classes up to a total-dimension bound, tied
/// to a representation table on the same quiver for homology lookups.
pub struct CplxTable {
    reps: Arc<RepTable>,
    max_total_dim: usize,
    classes: Vec<CplxClass>,
    by_dims: BTreeMap<Vec<usize>, Vec<CplxClassId>>,
    index: HashMap<(Vec<usize>, Vec<u64>), CplxClassId>,
    homology_cache: Mutex<HashMap<CplxClassId, (ClassId, Vec<usize>)>>,
    hom_cache: Mutex<HashMap<(CplxClassId, CplxClassId), usize>>,
    hall_cache: Mutex<HashMap<(CplxClassId, CplxClassId, CplxClassId), u64>>,
}

impl CplxTable {
    /// Build the complex class table. The bound may not exceed the
    /// representation table's bound (homology must resolve there), the hard
    /// cap, or the state budget.
    pub fn build(reps: Arc<RepTable>, max_total_dim: usize) -> Result<CplxTable> {
        if max_total_dim > MAX_CPLX_TOTAL_DIM {
            return Err(Error::Budget(format!(
                "complex table bound {max_total_dim} > {MAX_CPLX_TOTAL_DIM}"
            )));
        }
        if max_total_dim > reps.max_total_dim() {
            return Err(Error::DimOutOfRange(format!(
                "complex bound {max_total_dim} exceeds representation table bound {}",
                reps.max_total_dim()
            )));
        }
        let quiver = reps.quiver().clone();
        let q = reps.q();
        let slots = cplx_slots(&quiver);
        let mut cost: u128 = 0;
        for total in 0..=max_total_dim {
            for dims in dim_vectors(quiver.num_vertices(), total) {
                cost = cost.saturating_add(orbits::state_count(q, &dims, &slots));
            }
        }
        if cost > MAX_TABLE_STATES {
            return Err(Error::Budget(format!(
                "complex table for q={q}, bound {max_total_dim} scans {cost} tuples > {MAX_TABLE_STATES}"
            )));
        }

        let mut table = CplxTable {
            reps,
            max_total_dim,
            classes: Vec::new(),
            by_dims: BTreeMap::new(),
            index: HashMap::new(),
            homology_cache: Mutex::new(HashMap::new()),
            hom_cache: Mutex::new(HashMap::new()),
            hall_cache: Mutex::new(HashMap::new()),
        };
        let n_arrows = quiver.arrows().len();
        for total in 0..=max_total_dim {
            for dims in dim_vectors(quiver.num_vertices(), total) {
                let en = orbits::enumerate_orbits(q, &dims, &slots, |mats| {
                    let cplx = cplx_from_mats(&dims, mats, n_arrows);
                    cplx.validate(&quiver, q).is_ok()
                        && crate::repcat::is_nilpotent(&quiver, q, &cplx.base)
                });
                let base_id = table.classes.len() as u32;
                let group_order: BigUint = dims.iter().map(|&d| gl_order(q, d)).product();
                let mut ids = Vec::with_capacity(en.orbits.len());
                for (k, orbit) in en.orbits.into_iter().enumerate() {
                    let id = CplxClassId(base_id + k as u32);
                    let (aut, rem) = group_order.div_rem(&BigUint::from(orbit.size));
                    if rem != BigUint::ZERO {
                        return Err(Error::Internal(format!(
                            "orbit size {} does not divide |G| for dims {dims:?}",
                            orbit.size
                        )));
                    }
                    table.classes.push(CplxClass {
                        id,
                        cplx: cplx_from_mats(&dims, &orbit.canonical, n_arrows),
                        orbit_size: orbit.size,
                        aut_order: aut,
                    });
                    ids.push(id);
                }
                for (enc, pos) in en.index {
                    table.index.insert((dims.clone(), enc), CplxClassId(base_id + pos));
                }
                table.by_dims.insert(dims, ids);
            }
        }
        Ok(table)
    }

    pub fn reps(&self) -> &Arc<RepTable> {
        &self.reps
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.reps.quiver()
    }

    pub fn q(&self) -> u64 {
        self.reps.q()
    }

    pub fn max_total_dim(&self) -> usize {
        self.max_total_dim
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, id: CplxClassId) -> &CplxClass {
        &self.classes[id.0 as usize]
    }

    pub fn classes(&self) -> impl Iterator<Item = &CplxClass> {
        self.classes.iter()
    }

    pub fn aut_order(&self, id: CplxClassId) -> &BigUint {
        &self.class(id).aut_order
    }

    pub fn classes_with_dims(&self, dims: &[usize]) -> &[CplxClassId] {
        self.by_dims.get(dims).map_or(&[], |v| v.as_slice())
    }

    pub fn iso_class_of(&self, cplx: &PerComplex) -> Result<CplxClassId> {
        let quiver = self.quiver();
        let q = self.q();
        cplx.validate(quiver, q)?;
        if cplx.total_dim() > self.max_total_dim {
            return Err(Error::DimOutOfRange(format!(
                "total dimension {} exceeds complex table bound {}",
                cplx.total_dim(),
                self.max_total_dim
            )));
        }
        let key = (cplx.base.dims.clone(), orbits::encode(&cplx.all_mats()));
        if let Some(&id) = self.index.get(&key) {
            return Ok(id);
        }
        if !crate::repcat::is_nilpotent(quiver, q, &cplx.base) {
            return Err(Error::Schema("complex base is not nilpotent".into()));
        }
        Err(Error::Internal("valid complex missing from class index".into()))
    }

    /// Class of the stalk complex on a representation class.
    pub fn stalk_class(&self, rep: ClassId) -> Result<CplxClassId> {
        let r = self.reps.class(rep).rep.clone();
        self.iso_class_of(&PerComplex::stalk(self.q(), r))
    }

    /// Class of the contractible complex K_X on a representation class.
    pub fn contractible_class(&self, rep: ClassId) -> Result<CplxClassId> {
        let r = &self.reps.class(rep).rep;
        self.iso_class_of(&PerComplex::contractible(self.q(), r))
    }

    /// Homology class in the representation table together with the
    /// per-vertex rank of the differential.
    pub fn homology_class(&self, id: CplxClassId) -> Result<(ClassId, Vec<usize>)> {
        if let Some(v) = self.homology_cache.lock().unwrap().get(&id) {
            return Ok(v.clone());
        }
        let (h, ranks) = self.class(id).cplx.homology(self.quiver(), self.q());
        let hc = self.reps.iso_class_of(&h)?;
        let out = (hc, ranks);
        self.homology_cache.lock().unwrap().insert(id, out.clone());
        Ok(out)
    }

    pub fn hom_basis(&self, a: CplxClassId, b: CplxClassId) -> Vec<Vec<GFMatrix>> {
        let (ca, cb) = (&self.class(a).cplx, &self.class(b).cplx);
        let slots = cplx_slots(self.quiver());
        orbits::intertwiner_basis(
            self.q(),
            &slots,
            &ca.base.dims,
            &ca.all_mats(),
            &cb.base.dims,
            &cb.all_mats(),
        )
    }

    pub fn hom_dim(&self, a: CplxClassId, b: CplxClassId) -> usize {
        if let Some(&d) = self.hom_cache.lock().unwrap().get(&(a, b)) {
            return d;
        }
        let d = self.hom_basis(a, b).len();
        self.hom_cache.lock().unwrap().insert((a, b), d);
        d
    }

    /// Hall number in C_1: subcomplexes of L isomorphic to N with quotient
    /// complex isomorphic to M.
    pub fn hall_number(
        &self,
        m: CplxClassId,
        n: CplxClassId,
        l: CplxClassId,
    ) -> Result<u64> {
        if let Some(&v) = self.hall_cache.lock().unwrap().get(&(m, n, l)) {
            return Ok(v);
        }
        let (dm, dn, dl) = (
            self.class(m).cplx.res_dim_vec(),
            self.class(n).cplx.res_dim_vec(),
            self.class(l).cplx.res_dim_vec(),
        );
        let v = if &(&dm + &dn) != &dl {
            0
        } else {
            let cl = &self.class(l).cplx;
            let slots = cplx_slots(self.quiver());
            let all = cl.all_mats();
            let sub_dims = dn.as_dims().expect("class dims are nonnegative");
            let quo_dims: Vec<usize> = cl
                .base
                .dims
                .iter()
                .zip(&sub_dims)
                .map(|(&a, &b)| a - b)
                .collect();
            let n_arrows = self.quiver().arrows().len();
            let mut count = 0u64;
            orbits::for_subspace_tuples(self.q(), &cl.base.dims, &sub_dims, |subs| {
                if let Some(sub_mats) = orbits::restrict_to_invariant(&slots, &all, subs) {
                    let sub = cplx_from_mats(&sub_dims, &sub_mats, n_arrows);
                    if self.iso_class_of(&sub)? == n {
                        let quo_mats = orbits::quotient_by_invariant(&slots, &all, subs);
                        let quo = cplx_from_mats(&quo_dims, &quo_mats, n_arrows);
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

    /// `|Ext^1_{C_1}(M, N)_L|` by the Riedtmann-Peng formula inside C_1.
    pub fn ext1_count_with_middle(
        &self,
        m: CplxClassId,
        n: CplxClassId,
        l: CplxClassId,
    ) -> Result<BigUint> {
        let f = self.hall_number(m, n, l)?;
        if f == 0 {
            return Ok(BigUint::ZERO);
        }
        let hom = BigUint::from(self.q()).pow(self.hom_dim(m, n) as u32);
        let num = BigUint::from(f) * hom * self.aut_order(m) * self.aut_order(n);
        let (count, rem) = num.div_rem(self.aut_order(l));
        if rem != BigUint::ZERO {
            return Err(Error::NonIntegral("Riedtmann-Peng extension count in C_1"));
        }
        Ok(count)
    }

    /// `|Ext^1_{C_1}(M, N)|`: the extension-middle counts summed over all
    /// classes of the correct restriction vector.
    pub fn ext1_total(&self, m: CplxClassId, n: CplxClassId) -> Result<BigUint> {
        let dsum = &self.class(m).cplx.res_dim_vec() + &self.class(n).cplx.res_dim_vec();
        let dims = dsum.as_dims().expect("class dims are nonnegative");
        let mut acc = BigUint::ZERO;
        for &l in self.classes_with_dims(&dims) {
            acc += self.ext1_count_with_middle(m, n, l)?;
        }
        Ok(acc)
    }

    /// `dim Ext^1_{C_1}(M, N)`; the total extension count is a power of q
    /// because Ext^1 is an F_q-vector space, and anything else is a defect.
    pub fn ext1_dim(&self, m: CplxClassId, n: CplxClassId) -> Result<usize> {
        let total = self.ext1_total(m, n)?;
        let q = BigUint::from(self.q());
        let mut d = 0usize;
        let mut pow = BigUint::from(1u32);
        while pow < total {
            pow *= &q;
            d += 1;
        }
        if pow != total {
            return Err(Error::Internal(format!(
                "|Ext^1_C1| = {total} is not a power of q = {}",
                self.q()
            )));
        }
        Ok(d)
    }
}

fn cplx_slots(quiver: &Quiver) -> Vec<(usize, usize)> {
    let mut slots: Vec<(usize, usize)> =
        quiver.arrows().iter().map(|&(s, t)| (t, s)).collect();
    slots.extend((0..quiver.num_vertices()).map(|v| (v, v)));
    slots
}

fn cplx_from_mats(dims: &[usize], mats: &[GFMatrix], n_arrows: usize) -> PerComplex {
    PerComplex {
        base: Rep { dims: dims.to_vec(), mats: mats[..n_arrows].to_vec() },
        diff: mats[n_arrows..].to_vec(),
    }
}
