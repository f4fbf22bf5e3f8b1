//! Quivers, dimension vectors, the Euler form, and the Cartan matrix.
//!
//! A quiver here is a finite directed multigraph without loops; oriented
//! cycles between distinct vertices are allowed. The Grothendieck group of
//! the nilpotent representation category is free on the vertices, so classes
//! are plain integer dimension vectors and the Euler form has the closed
//! formula
//!
//! ```text
//! <a, b> = sum_i a_i b_i - sum_{arrows s->t} a_s b_t
//! ```
//!
//! whose symmetrization on unit vectors is the Cartan matrix
//! `c_ij = 2 delta_ij - #{edges between i and j}`.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of the Grothendieck group: one integer per vertex. Signed so that
/// it can also carry torus exponents and differences of classes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVec(pub Vec<i64>);

impl DimVec {
    pub fn zero(n: usize) -> Self {
        DimVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVec(v)
    }

    pub fn from_dims(dims: &[usize]) -> Self {
        DimVec(dims.iter().map(|&d| d as i64).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Nonnegative and even in every coordinate.
    pub fn halved(&self) -> Option<DimVec> {
        if self.0.iter().all(|&x| x >= 0 && x % 2 == 0) {
            Some(DimVec(self.0.iter().map(|&x| x / 2).collect()))
        } else {
            None
        }
    }

    pub fn as_dims(&self) -> Option<Vec<usize>> {
        if self.is_nonneg() {
            Some(self.0.iter().map(|&x| x as usize).collect())
        } else {
            None
        }
    }

    pub fn scaled(&self, c: i64) -> DimVec {
        DimVec(self.0.iter().map(|&x| c * x).collect())
    }
}

impl Index<usize> for DimVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &DimVec {
    type Output = DimVec;
    fn add(self, rhs: &DimVec) -> DimVec {
        assert_eq!(self.len(), rhs.len());
        DimVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimVec {
    type Output = DimVec;
    fn sub(self, rhs: &DimVec) -> DimVec {
        assert_eq!(self.len(), rhs.len());
        DimVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DimVec {
    type Output = DimVec;
    fn neg(self) -> DimVec {
        DimVec(self.0.iter().map(|&a| -a).collect())
    }
}

impl fmt::Debug for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// JSON wire form of a quiver.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
}

/// Finite loop-free quiver. Arrows are stored as (source, target) vertex
/// index pairs; parallel arrows are kept with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    labels: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(labels: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Schema(format!("duplicate vertex label {l:?}")));
            }
        }
        for &(s, t) in &arrows {
            if s >= n || t >= n {
                return Err(Error::Schema(format!("arrow ({s},{t}) references a missing vertex")));
            }
            if s == t {
                return Err(Error::Schema(format!(
                    "loop at vertex {:?}: loops are not supported",
                    labels[s]
                )));
            }
        }
        Ok(Quiver { labels, arrows })
    }

    pub fn from_json(doc: &QuiverJson) -> Result<Self> {
        let idx = |l: &String| {
            doc.vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::Schema(format!("arrow references unknown vertex {l:?}")))
        };
        let arrows = doc
            .arrows
            .iter()
            .map(|(s, t)| Ok((idx(s)?, idx(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(doc.vertices.clone(), arrows)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let doc: QuiverJson =
            serde_json::from_str(s).map_err(|e| Error::Schema(format!("bad quiver json: {e}")))?;
        Quiver::from_json(&doc)
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            vertices: self.labels.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| (self.labels[s].clone(), self.labels[t].clone()))
                .collect(),
        }
    }

    /// Linearly oriented type A quiver `1 -> 2 -> ... -> n`.
    pub fn linear(n: usize) -> Quiver {
        Quiver::new(
            (1..=n).map(|i| i.to_string()).collect(),
            (1..n).map(|i| (i - 1, i)).collect(),
        )
        .expect("linear quiver is valid")
    }

    /// Two vertices joined by two parallel arrows `1 => 2`.
    pub fn kronecker() -> Quiver {
        Quiver::new(vec!["1".into(), "2".into()], vec![(0, 1), (0, 1)]).expect("valid")
    }

    /// n isolated vertices, no arrows.
    pub fn discrete(n: usize) -> Quiver {
        Quiver::new((1..=n).map(|i| i.to_string()).collect(), vec![]).expect("valid")
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Cartan matrix entry `2 delta_ij - #{edges between i and j}`, counting
    /// arrows regardless of orientation.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        let edges = self
            .arrows
            .iter()
            .filter(|&&(s, t)| (s, t) == (i, j) || (s, t) == (j, i))
            .count() as i64;
        if i == j {
            2 - edges // loop-free, so this is always 2
        } else {
            -edges
        }
    }

    /// Euler form `<a, b> = sum_i a_i b_i - sum_{s->t} a_s b_t` on the
    /// Grothendieck group.
    pub fn euler_form(&self, a: &DimVec, b: &DimVec) -> i64 {
        assert_eq!(a.len(), self.num_vertices());
        assert_eq!(b.len(), self.num_vertices());
        let vertex_part: i64 = (0..self.num_vertices()).map(|i| a[i] * b[i]).sum();
        let arrow_part: i64 = self.arrows.iter().map(|&(s, t)| a[s] * b[t]).sum();
        vertex_part - arrow_part
    }

    /// Symmetrized Euler form `(a, b) = <a, b> + <b, a>`.
    pub fn sym_form(&self, a: &DimVec, b: &DimVec) -> i64 {
        self.euler_form(a, b) + self.euler_form(b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_wire_format() {
        let q = Quiver::from_json_str(
            r#"{"vertices": ["1", "2"], "arrows": [["1", "2"]]}"#,
        )
        .unwrap();
        assert_eq!(q.num_vertices(), 2);
        assert_eq!(q.arrows(), &[(0, 1)]);
        assert_eq!(q, Quiver::linear(2));
    }

    #[test]
    fn rejects_bad_input() {
        let loopy = r#"{"vertices": ["1"], "arrows": [["1", "1"]]}"#;
        match Quiver::from_json_str(loopy) {
            Err(Error::Schema(msg)) => assert!(msg.contains("loop"), "{msg}"),
            other => panic!("expected schema error, got {other:?}"),
        }
        assert!(Quiver::from_json_str(r#"{"vertices": ["1"], "arrows": [["1", "2"]]}"#).is_err());
        assert!(Quiver::from_json_str(r#"{"vertices": ["1", "1"], "arrows": []}"#).is_err());
        assert!(Quiver::from_json_str("[]").is_err());
    }

    #[test]
    fn cartan_matrices() {
        let a2 = Quiver::linear(2);
        assert_eq!(
            [[a2.cartan(0, 0), a2.cartan(0, 1)], [a2.cartan(1, 0), a2.cartan(1, 1)]],
            [[2, -1], [-1, 2]]
        );
        let kr = Quiver::kronecker();
        assert_eq!(kr.cartan(0, 1), -2);
        assert_eq!(kr.cartan(1, 0), -2);
        // A cyclically oriented pair of arrows also symmetrizes to -2.
        let cyc = Quiver::new(vec!["1".into(), "2".into()], vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(cyc.cartan(0, 1), -2);
        assert_eq!(Quiver::discrete(2).cartan(0, 1), 0);
    }

    #[test]
    fn euler_form_hand_values() {
        let a2 = Quiver::linear(2);
        let e1 = DimVec::unit(2, 0);
        let e2 = DimVec::unit(2, 1);
        assert_eq!(a2.euler_form(&e1, &e2), -1);
        assert_eq!(a2.euler_form(&e2, &e1), 0);
        assert_eq!(a2.euler_form(&e1, &e1), 1);
        assert_eq!(Quiver::kronecker().euler_form(&e1, &e2), -2);
        let p = DimVec(vec![1, 1]);
        assert_eq!(a2.euler_form(&p, &p), 1);
    }

    fn quivers() -> Vec<Quiver> {
        vec![
            Quiver::linear(1),
            Quiver::linear(2),
            Quiver::linear(3),
            Quiver::kronecker(),
            Quiver::discrete(2),
            Quiver::new(vec!["1".into(), "2".into()], vec![(0, 1), (1, 0)]).unwrap(),
        ]
    }

    #[test]
    fn symmetrized_form_is_cartan_on_units() {
        for q in quivers() {
            for i in 0..q.num_vertices() {
                for j in 0..q.num_vertices() {
                    let ei = DimVec::unit(q.num_vertices(), i);
                    let ej = DimVec::unit(q.num_vertices(), j);
                    assert_eq!(q.sym_form(&ei, &ej), q.cartan(i, j));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn euler_form_is_bilinear(
            qi in 0usize..6,
            a in proptest::collection::vec(-5i64..=5, 3),
            b in proptest::collection::vec(-5i64..=5, 3),
            c in proptest::collection::vec(-5i64..=5, 3),
            s in -3i64..=3,
        ) {
            let q = &quivers()[qi];
            let n = q.num_vertices();
            let a = DimVec(a[..n].to_vec());
            let b = DimVec(b[..n].to_vec());
            let c = DimVec(c[..n].to_vec());
            let left = q.euler_form(&(&a + &b.scaled(s)), &c);
            prop_assert_eq!(left, q.euler_form(&a, &c) + s * q.euler_form(&b, &c));
            let right = q.euler_form(&c, &(&a + &b.scaled(s)));
            prop_assert_eq!(right, q.euler_form(&c, &a) + s * q.euler_form(&c, &b));
        }
    }
}
