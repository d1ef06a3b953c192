use std::sync::Arc;

use crate::fincat::{CatDiagram, FinCat, FunctorData, ObjId};
use crate::groth::{groth, GrothTotal};
use crate::opfib::{check_split_opfib, Cleavage, CleavedOpfib, OpfibError, SplitReport};

use super::DiagramOpfib;

/// Every fibre category and transition functor replaced by its opposite.
/// Names are kept, so applying this twice gives back the same tables.
pub fn dualize_diagram(f: &CatDiagram) -> CatDiagram {
    f.opposite_fibres()
}

/// `φ^op: G^op ⇒ F^op`. Each cleavage is kept verbatim: a chosen lift
/// `E → f_*E` in `G(A)` becomes a chosen cartesian morphism into `E` in
/// `G(A)^op`, so the dual is a split fibration componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualOpfib {
    pub over: CatDiagram,
    pub total: CatDiagram,
    pub components: Vec<FunctorData>,
    pub cleavages: Vec<Cleavage>,
}

pub fn dualize_opfib(phi: &DiagramOpfib) -> DualOpfib {
    let over = phi.over().opposite_fibres();
    let total = phi.total().opposite_fibres();
    let base = phi.base();
    let components = base
        .objects()
        .map(|a| {
            let p = phi.at(a).functor();
            FunctorData::assemble(
                total.at(a).clone(),
                over.at(a).clone(),
                p.ob_map().to_vec(),
                p.mor_map().to_vec(),
            )
        })
        .collect();
    let cleavages = base
        .objects()
        .map(|a| phi.at(a).cleavage().clone())
        .collect();
    DualOpfib {
        over,
        total,
        components,
        cleavages,
    }
}

impl DualOpfib {
    /// Dualizing back yields the original opfibration.
    pub fn dualize(&self) -> Result<DiagramOpfib, OpfibError> {
        let over = self.over.opposite_fibres();
        let total = self.total.opposite_fibres();
        let components = self
            .components
            .iter()
            .zip(&self.cleavages)
            .enumerate()
            .map(|(i, (p, c))| {
                let a = ObjId::new(i);
                let q = FunctorData::assemble(
                    total.at(a).clone(),
                    over.at(a).clone(),
                    p.ob_map().to_vec(),
                    p.mor_map().to_vec(),
                );
                CleavedOpfib::new(q, c.clone())
            })
            .collect::<Result<_, _>>()?;
        Ok(DiagramOpfib::candidate(over, total, components))
    }

    /// Every component is a split fibration with its cleavage.
    pub fn check(&self) -> Result<Vec<SplitReport>, OpfibError> {
        self.components
            .iter()
            .zip(&self.cleavages)
            .map(|(p, c)| check_split_fib(p, c.clone()))
            .collect()
    }
}

/// A split fibration is a functor whose opposite is a split opfibration;
/// `cleavage` maps `(E, f)` with `f: X → p(E)` to a cartesian morphism into
/// `E` over `f`.
pub fn check_split_fib(p: &FunctorData, cleavage: Cleavage) -> Result<SplitReport, OpfibError> {
    let q = CleavedOpfib::new(p.opposite(), cleavage)?;
    Ok(check_split_opfib(&q))
}

/// `∫^op P` for a diagram `P` on `A^op`: the Grothendieck construction of
/// `P` read covariantly on the opposite base, whose projection to `A^op`
/// is the opposite of a fibration over `A`.
pub fn groth_op(p: &CatDiagram) -> GrothTotal {
    groth(p)
}

/// `yA = Hom_A(-, a)` as a Set-valued diagram on `A^op`.
pub fn representable_presheaf(a: &FinCat, at: ObjId) -> CatDiagram {
    CatDiagram::corepresentable(&Arc::new(a.opposite()), at)
}
