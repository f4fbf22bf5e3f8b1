//! JSON views of session data shared by the command-line interface and the
//! C bindings: the class table and the derived structure-constant table.
//! Output order is fixed by class ids, so serialization is byte-stable for
//! a fixed quiver, field size, and bound.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quiver::QuiverJson;
use crate::repcat::ClassId;
use crate::scalars::CoeffJson;
use crate::session::Session;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassJson {
    pub id: u32,
    pub dim: Vec<usize>,
    pub mats: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GEntryJson {
    pub a: u32,
    pub b: u32,
    pub m: u32,
    pub coeff: CoeffJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GTableJson {
    pub quiver: QuiverJson,
    pub q: u64,
    pub classes: Vec<ClassJson>,
    pub g: Vec<GEntryJson>,
}

pub fn class_list(session: &Session) -> Vec<ClassJson> {
    let reps = session.reps();
    (0..reps.num_classes())
        .map(|i| {
            let c = reps.class(ClassId(i as u32));
            ClassJson {
                id: c.id.0,
                dim: c.rep.dims.clone(),
                mats: c.rep.mats.iter().map(|m| m.entries_row_major().to_vec()).collect(),
            }
        })
        .collect()
}

/// Every nonzero structure constant `G_AB^M` with A + B inside the table
/// bound, sorted by (a, b, m).
pub fn g_table(session: &Session) -> Result<GTableJson> {
    let reps = session.reps();
    let dh = session.dh();
    let n = reps.num_classes();
    let mut g = Vec::new();
    for a in 0..n {
        let a = ClassId(a as u32);
        for b in 0..n {
            let b = ClassId(b as u32);
            let dsum = &reps.dim_vec(a) + &reps.dim_vec(b);
            if dsum.total() as usize > reps.max_total_dim() {
                continue;
            }
            for m in 0..n {
                let m = ClassId(m as u32);
                if (&dsum - &reps.dim_vec(m)).halved().is_none() {
                    continue;
                }
                let coeff = dh.g_constant(a, b, m)?;
                if !coeff.is_zero() {
                    g.push(GEntryJson { a: a.0, b: b.0, m: m.0, coeff: coeff.to_json() });
                }
            }
        }
    }
    Ok(GTableJson { quiver: session.quiver().to_json(), q: session.q(), classes: class_list(session), g })
}
