//! Tilting complexes over Ω(T): the shrinking complex that flattens every
//! tree at once, the enlarging complex that moves one edge onto the cycle,
//! their certificates, and the matching graph surgery.

mod certificate;
mod enlarge;
mod generators;
mod shrink;

use crate::algebra::{omega_relations, quotient_basis, QuotientAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{BrauerGraph, EdgeId};
use crate::homological::ProjComplex;
use crate::quiver::{build_quiver, BrauerQuiver};

pub use certificate::{check_tilting, end_cartan, GenerationWitness, TiltCertificate};
pub use enlarge::{enlarge_complex, enlarge_data, enlarge_graph_move, EnlargeData};
pub use generators::verify_end_generators;
pub use shrink::{shrink_complex, shrink_ordering, shrink_pattern};

/// A graph together with its Brauer quiver and the algebra Ω(T).
#[derive(Clone, Debug)]
pub struct OmegaAlgebra<F> {
    pub graph: BrauerGraph,
    pub quiver: BrauerQuiver,
    pub algebra: QuotientAlgebra<F>,
}

impl<F: Field> OmegaAlgebra<F> {
    /// Builds Ω(T) with the default cap and margin.
    pub fn new(g: &BrauerGraph) -> Result<Self> {
        Self::with_params(g, None, None)
    }

    pub fn with_params(g: &BrauerGraph, cap: Option<usize>, margin: Option<usize>) -> Result<Self> {
        let quiver = build_quiver(g)?;
        let p = omega_relations(&quiver)?;
        let cap = cap.unwrap_or_else(|| p.default_cap());
        let margin = margin.unwrap_or_else(|| p.default_margin());
        let algebra = quotient_basis(&p, cap, margin)?;
        Ok(OmegaAlgebra {
            graph: g.clone(),
            quiver,
            algebra,
        })
    }

    /// Quiver vertex of an edge label.
    pub fn vertex(&self, e: &EdgeId) -> Result<usize> {
        self.quiver
            .quiver
            .vertex_index(e)
            .ok_or_else(|| Error::Domain(format!("no edge {e}")))
    }

    pub fn label(&self, v: usize) -> &EdgeId {
        &self.quiver.quiver.vertices[v]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TiltKind {
    Shrink,
    Enlarge(EnlargeData),
}

/// One complex per quiver vertex, listed in the End-ring vertex order.
#[derive(Clone, Debug)]
pub struct TiltingComplex<F> {
    pub kind: TiltKind,
    pub ordering: Vec<EdgeId>,
    pub summands: Vec<ProjComplex<F>>,
}

impl<F: Field> TiltingComplex<F> {
    pub fn summand(&self, e: &EdgeId) -> Result<&ProjComplex<F>> {
        self.ordering
            .iter()
            .position(|z| z == e)
            .map(|k| &self.summands[k])
            .ok_or_else(|| Error::Internal(format!("no summand for {e}")))
    }

    pub fn total(&self) -> ProjComplex<F> {
        ProjComplex::direct_sum(&self.summands.iter().collect::<Vec<_>>())
    }

    pub fn width(&self) -> i32 {
        self.total().width()
    }

    pub fn dump(&self, alg: &QuotientAlgebra<F>) -> String {
        let mut s = String::new();
        for (z, c) in self.ordering.iter().zip(&self.summands) {
            s.push_str(&format!("Q({z}):\n"));
            for line in c.dump(alg).lines() {
                s.push_str(&format!("  {line}\n"));
            }
        }
        s
    }
}
