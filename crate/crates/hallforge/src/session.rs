//! A session fixes the ambient data every computation shares: the quiver,
//! the prime field size, and the dimension bound of the class table. Tables
//! derived from that data (1-periodic complex tables, derived structure
//! constants) are built on demand and cached.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::dhall::DhTable;
use crate::error::{Error, Result};
use crate::hallalg::{BasisKey, ElementKind};
use crate::percomplex::CplxTable;
use crate::quiver::{DimVec, Quiver};
use crate::repcat::{ClassId, RepTable};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub struct Session {
    reps: Arc<RepTable>,
    dh: DhTable,
    cplx: Mutex<HashMap<usize, Arc<CplxTable>>>,
}

impl Session {
    /// Builds the class table up front, so budget violations surface at
    /// session creation rather than midway through a computation.
    pub fn new(quiver: Quiver, q: u64, max_dim: usize) -> Result<Session> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let reps = Arc::new(RepTable::build(Arc::new(quiver), q, max_dim)?);
        let dh = DhTable::new(reps.clone());
        Ok(Session { reps, dh, cplx: Mutex::new(HashMap::new()) })
    }

    pub fn reps(&self) -> &Arc<RepTable> {
        &self.reps
    }

    pub fn quiver(&self) -> &Quiver {
        self.reps.quiver()
    }

    pub fn q(&self) -> u64 {
        self.reps.q()
    }

    pub fn max_dim(&self) -> usize {
        self.reps.max_total_dim()
    }

    pub fn dh(&self) -> &DhTable {
        &self.dh
    }

    /// Default total-dimension bound for 1-periodic complex enumeration:
    /// complexes double the entry count, so the feasible bound shrinks as q
    /// grows.
    pub fn complex_bound(&self) -> usize {
        let cap = match self.q() {
            2 => 4,
            3 => 3,
            _ => 2,
        };
        self.max_dim().min(cap)
    }

    pub fn complex_table(&self) -> Result<Arc<CplxTable>> {
        self.complex_table_with_bound(self.complex_bound())
    }

    pub fn complex_table_with_bound(&self, bound: usize) -> Result<Arc<CplxTable>> {
        let mut cache = self.cplx.lock().unwrap();
        if let Some(t) = cache.get(&bound) {
            return Ok(t.clone());
        }
        let t = Arc::new(CplxTable::build(self.reps.clone(), bound)?);
        cache.insert(bound, t.clone());
        Ok(t)
    }

    /// Parses a basis-key expression for the given algebra kind.
    ///
    /// * `<n>`: class id n (the zero class is `0`).
    /// * `S<k>`: the simple at the k-th vertex, 1-based.
    /// * `K(a1,...,an)`: a torus class, only in the semi-derived algebra.
    /// * `<key>@(a1,...,an)`: class with an explicit torus exponent.
    pub fn parse_key(&self, kind: ElementKind, expr: &str) -> Result<BasisKey> {
        let expr = expr.trim();
        let nv = self.quiver().num_vertices();
        let (class_part, alpha) = if let Some((head, tail)) = expr.split_once('@') {
            (head.trim(), Some(self.parse_exponent(tail.trim())?))
        } else if expr.starts_with('K') {
            ("0", Some(self.parse_exponent(expr[1..].trim())?))
        } else {
            (expr, None)
        };
        let id = self.parse_class(class_part)?;
        match (kind, alpha) {
            (ElementKind::Rep, None) => Ok(BasisKey::Rep(id)),
            (ElementKind::Dh, None) => Ok(BasisKey::Dh(id)),
            (ElementKind::IHall, alpha) => {
                Ok(BasisKey::IHall(id, alpha.unwrap_or_else(|| DimVec::zero(nv))))
            }
            (_, Some(_)) => Err(Error::UnknownKey(format!(
                "{expr:?}: torus exponents only exist in the semi-derived algebra"
            ))),
        }
    }

    fn parse_class(&self, s: &str) -> Result<ClassId> {
        if let Some(k) = s.strip_prefix('S') {
            let k: usize = k
                .parse()
                .map_err(|_| Error::UnknownKey(format!("{s:?} is not a simple-class key")))?;
            if k == 0 || k > self.quiver().num_vertices() {
                return Err(Error::UnknownKey(format!(
                    "{s:?}: vertex index out of range 1..={}",
                    self.quiver().num_vertices()
                )));
            }
            return Ok(self.reps.simple(k - 1));
        }
        let id: u32 = s
            .parse()
            .map_err(|_| Error::UnknownKey(format!("{s:?} is not a class key")))?;
        if id as usize >= self.reps.num_classes() {
            return Err(Error::UnknownKey(format!(
                "class id {id} out of range, table holds {} classes",
                self.reps.num_classes()
            )));
        }
        Ok(ClassId(id))
    }

    fn parse_exponent(&self, s: &str) -> Result<DimVec> {
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| {
                Error::UnknownKey(format!("{s:?}: torus exponent must look like (a1,...,an)"))
            })?;
        let coords: std::result::Result<Vec<i64>, _> =
            inner.split(',').map(|t| t.trim().parse::<i64>()).collect();
        let coords = coords
            .map_err(|_| Error::UnknownKey(format!("{s:?}: torus exponent must be integral")))?;
        if coords.len() != self.quiver().num_vertices() {
            return Err(Error::UnknownKey(format!(
                "torus exponent has {} coordinates, quiver has {}",
                coords.len(),
                self.quiver().num_vertices()
            )));
        }
        Ok(DimVec(coords))
    }
}
