//! Hall-algebra elements and the exact products on them.
//!
//! Three algebras share one element representation, distinguished by kind:
//!
//! * `rep`: the Ringel-Hall algebra of the representation category, basis
//!   `[M]` over representation classes, product
//!   `[M] . [N] = sum_L (|Ext^1(M,N)_L| / |Hom(M,N)|) [L]`.
//! * `ihall`: the twisted semi-derived Hall algebra of 1-periodic
//!   complexes, basis `(M, alpha) = [C_M] * [K_alpha]` of a representation
//!   class and an integral torus exponent. Torus classes are central and
//!   invertible; the product is the closed quadruple-sum formula below.
//! * `dh`: the 1-periodic derived Hall algebra, basis `u_M`; its structure
//!   constants live in the derived-Hall module.
//!
//! The ihall product of basis elements is
//!
//! ```text
//! (A, alpha) * (B, beta) =
//!   sum_{M,N,L,I} v^{-<A,B>} q^{<N,L>} F^M_{NL} F^A_{IN} F^B_{LI}
//!                 (a_N a_L a_I / a_M) (M, alpha + beta + A - N)
//! ```
//!
//! where the sum runs over classes with N + I = A, L + I = B, M = N + L in
//! the Grothendieck group, F are Hall numbers, and a are automorphism
//! counts. Every coefficient stays in Q(sqrt(q)).
//!
//! A 1-periodic complex X normalizes to the basis element
//! `(H(X), im-rank vector of d)`, which identifies the quotient presentation
//! of the semi-derived algebra on this basis.

use std::collections::BTreeMap;

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::percomplex::PerComplex;
use crate::quiver::DimVec;
use crate::repcat::{ClassId, RepTable};
use crate::scalars::{v_pow, Coeff, CoeffJson};

/// Which algebra an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Rep,
    IHall,
    Dh,
}

impl ElementKind {
    pub fn name(self) -> &'static str {
        match self {
            ElementKind::Rep => "rep",
            ElementKind::IHall => "ihall",
            ElementKind::Dh => "dh",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "rep" => Ok(ElementKind::Rep),
            "ihall" => Ok(ElementKind::IHall),
            "dh" => Ok(ElementKind::Dh),
            _ => Err(Error::Schema(format!("unknown element kind {s:?}"))),
        }
    }
}

/// Basis key of a single term. The ordering (class id, then torus exponent)
/// fixes the serialization order of elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisKey {
    Rep(ClassId),
    IHall(ClassId, DimVec),
    Dh(ClassId),
}

impl BasisKey {
    pub fn kind(&self) -> ElementKind {
        match self {
            BasisKey::Rep(_) => ElementKind::Rep,
            BasisKey::IHall(..) => ElementKind::IHall,
            BasisKey::Dh(_) => ElementKind::Dh,
        }
    }

    pub fn class_id(&self) -> ClassId {
        match self {
            BasisKey::Rep(c) | BasisKey::IHall(c, _) | BasisKey::Dh(c) => *c,
        }
    }
}

/// Exact finite linear combination of basis keys of one kind. Zero terms are
/// pruned, so equality of elements is equality of the term maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallElement {
    kind: ElementKind,
    terms: BTreeMap<BasisKey, Coeff>,
}

impl HallElement {
    pub fn zero(kind: ElementKind) -> Self {
        HallElement { kind, terms: BTreeMap::new() }
    }

    pub fn basis(key: BasisKey, q: u64) -> Self {
        let kind = key.kind();
        HallElement::single(kind, key, Coeff::one(q))
    }

    pub fn single(kind: ElementKind, key: BasisKey, coeff: Coeff) -> Self {
        assert_eq!(key.kind(), kind);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        HallElement { kind, terms }
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, key: &BasisKey) -> Option<&Coeff> {
        self.terms.get(key)
    }

    pub fn add_term(&mut self, key: BasisKey, coeff: &Coeff) {
        assert_eq!(key.kind(), self.kind, "term kind must match element kind");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(e) => {
                let sum = &*e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.into_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &HallElement) -> Result<HallElement> {
        if self.kind != rhs.kind {
            return Err(Error::KindMismatch(self.kind.name(), rhs.kind.name()));
        }
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &HallElement) -> Result<HallElement> {
        self.add(&rhs.scale_neg())
    }

    fn scale_neg(&self) -> HallElement {
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect();
        HallElement { kind: self.kind, terms }
    }

    pub fn scale(&self, c: &Coeff) -> HallElement {
        if c.is_zero() {
            return HallElement::zero(self.kind);
        }
        let terms = self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect();
        HallElement { kind: self.kind, terms }
    }
}

/// `sum_i scalars[i] * elements[i]`; all elements must share one kind, which
/// is also the kind of the (possibly empty) result.
pub fn linear_combine(
    kind: ElementKind,
    items: &[(Coeff, &HallElement)],
) -> Result<HallElement> {
    let mut out = HallElement::zero(kind);
    for (c, e) in items {
        out = out.add(&e.scale(c))?;
    }
    Ok(out)
}

/// JSON wire form of one element.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementJson {
    pub kind: String,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub key: KeyJson,
    pub coeff: CoeffJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KeyJson {
    pub id: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<i64>>,
}

impl HallElement {
    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            kind: self.kind.name().into(),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| TermJson {
                    key: match k {
                        BasisKey::Rep(id) | BasisKey::Dh(id) => {
                            KeyJson { id: id.0, alpha: None }
                        }
                        BasisKey::IHall(id, alpha) => {
                            KeyJson { id: id.0, alpha: Some(alpha.0.clone()) }
                        }
                    },
                    coeff: c.to_json(),
                })
                .collect(),
        }
    }

    pub fn from_json(q: u64, nv: usize, json: &ElementJson) -> Result<HallElement> {
        let kind = ElementKind::parse(&json.kind)?;
        let mut out = HallElement::zero(kind);
        for t in &json.terms {
            let key = match (kind, &t.key.alpha) {
                (ElementKind::Rep, None) => BasisKey::Rep(ClassId(t.key.id)),
                (ElementKind::Dh, None) => BasisKey::Dh(ClassId(t.key.id)),
                (ElementKind::IHall, Some(a)) => {
                    if a.len() != nv {
                        return Err(Error::Schema(format!(
                            "torus exponent has {} coordinates, quiver has {nv} vertices",
                            a.len()
                        )));
                    }
                    BasisKey::IHall(ClassId(t.key.id), DimVec(a.clone()))
                }
                (ElementKind::IHall, None) => {
                    return Err(Error::Schema("ihall term is missing its torus exponent".into()))
                }
                (_, Some(_)) => {
                    return Err(Error::Schema(format!(
                        "{} term carries a torus exponent",
                        kind.name()
                    )))
                }
            };
            out.add_term(key, &Coeff::from_json(q, &t.coeff)?);
        }
        Ok(out)
    }
}

fn rational_of(n: &num::BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// Ringel-Hall product on `rep` elements:
/// `[M] . [N] = sum_L (|Ext^1(M,N)_L| / |Hom(M,N)|) [L]` over classes L with
/// the summed dimension vector.
pub fn ringel_product(
    table: &RepTable,
    x: &HallElement,
    y: &HallElement,
) -> Result<HallElement> {
    for e in [x, y] {
        if e.kind() != ElementKind::Rep {
            return Err(Error::KindMismatch("rep", e.kind().name()));
        }
    }
    let q = table.q();
    let mut out = HallElement::zero(ElementKind::Rep);
    for (kx, cx) in x.terms() {
        for (ky, cy) in y.terms() {
            let (m, n) = (kx.class_id(), ky.class_id());
            let dsum = &table.dim_vec(m) + &table.dim_vec(n);
            if dsum.total() as usize > table.max_total_dim() {
                return Err(Error::DimOutOfRange(format!(
                    "product lands in total dimension {} beyond table bound {}",
                    dsum.total(),
                    table.max_total_dim()
                )));
            }
            let hom_pow = crate::scalars::q_rat_pow(q, table.hom_dim(m, n) as i64);
            let cxy = cx * cy;
            for &l in table.classes_with_dim_vec(&dsum) {
                let ext = table.ext1_count_with_middle(m, n, l)?;
                if ext == num::BigUint::ZERO {
                    continue;
                }
                let gamma = Coeff::from_rational(q, rational_of(&ext) / hom_pow.clone());
                out.add_term(BasisKey::Rep(l), &(&cxy * &gamma));
            }
        }
    }
    Ok(out)
}

/// Twisted semi-derived Hall product on `ihall` elements by the closed
/// quadruple-sum formula; see the module docs.
pub fn ihall_product(
    table: &RepTable,
    x: &HallElement,
    y: &HallElement,
) -> Result<HallElement> {
    for e in [x, y] {
        if e.kind() != ElementKind::IHall {
            return Err(Error::KindMismatch("ihall", e.kind().name()));
        }
    }
    let q = table.q();
    let quiver = table.quiver().clone();
    let mut out = HallElement::zero(ElementKind::IHall);
    for (kx, cx) in x.terms() {
        for (ky, cy) in y.terms() {
            let (BasisKey::IHall(a, alpha), BasisKey::IHall(b, beta)) = (kx, ky) else {
                unreachable!("ihall elements contain ihall keys");
            };
            let (da, db) = (table.dim_vec(*a), table.dim_vec(*b));
            if (da.total() + db.total()) as usize > table.max_total_dim() {
                return Err(Error::DimOutOfRange(format!(
                    "product lands in total dimension {} beyond table bound {}",
                    da.total() + db.total(),
                    table.max_total_dim()
                )));
            }
            let cxy = cx * cy;
            let euler_ab = quiver.euler_form(&da, &db);
            // N runs over subclasses of A's dimension vector.
            for n in table.classes_up_to_total(da.total() as usize) {
                let dn = table.dim_vec(n);
                let di = &da - &dn;
                let dl = &db - &di;
                if !di.is_nonneg() || !dl.is_nonneg() {
                    continue;
                }
                let torus = &(&alpha.clone() + beta) + &di;
                for &i in table.classes_with_dim_vec(&di) {
                    let f_a = table.hall_number(i, n, *a)?;
                    if f_a == 0 {
                        continue;
                    }
                    for &l in table.classes_with_dim_vec(&dl) {
                        let f_b = table.hall_number(l, i, *b)?;
                        if f_b == 0 {
                            continue;
                        }
                        let dm = &dn + &dl;
                        let aut_ratio_num =
                            table.aut_order(n) * table.aut_order(l) * table.aut_order(i);
                        for &m in table.classes_with_dim_vec(&dm) {
                            let f_m = table.hall_number(n, l, m)?;
                            if f_m == 0 {
                                continue;
                            }
                            let exp = -euler_ab + 2 * quiver.euler_form(&dn, &dl);
                            let rat = BigRational::new(
                                BigInt::from(f_m * f_a * f_b) * BigInt::from(aut_ratio_num.clone()),
                                BigInt::from(table.aut_order(m).clone()),
                            );
                            let coeff =
                                &v_pow(q, exp) * &Coeff::from_rational(q, rat);
                            out.add_term(
                                BasisKey::IHall(m, torus.clone()),
                                &(&cxy * &coeff),
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Basis element the complex X reduces to in the semi-derived algebra:
/// `(H(X), rank vector of d)`. Stalks land on `(X, 0)`, contractibles on
/// torus classes `(0, dim X)`.
pub fn normalize_complex(table: &RepTable, cplx: &PerComplex) -> Result<HallElement> {
    cplx.validate(table.quiver(), table.q())?;
    let (h, ranks) = cplx.homology(table.quiver(), table.q());
    let hc = table.iso_class_of(&h)?;
    Ok(HallElement::basis(
        BasisKey::IHall(hc, DimVec::from_dims(&ranks)),
        table.q(),
    ))
}
