//! Relative extensions L = F[y]/(g(y)) and the real places of F that no real
//! place of L lies over.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_arith::{is_squarefree, Polynomial};
use crate::number_field::{sign_at_place, FieldElement, Irreducibility, NumberField, RealPlace};
use crate::real_roots::{sturm_chain, SturmChain};

/// How archimedean ramification is read for every verdict this crate emits.
pub const RAMIFICATION_CONVENTION: &str = "ramified = no real place above";

pub struct RelativeExtension {
    base: NumberField,
    var: String,
    g: Polynomial<FieldElement>,
    status: Irreducibility,
    chain: SturmChain<FieldElement>,
}

impl fmt::Debug for RelativeExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RelativeExtension")
            .field("base", &self.base)
            .field("var", &self.var)
            .field("g", &self.g)
            .finish()
    }
}

/// Places of L above one real place of F.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealPlaceFiber {
    pub place: RealPlace,
    pub real_above: usize,
    pub complex_pairs_above: usize,
    pub ramified: bool,
}

/// Validates `g` (monic, squarefree over F). Irreducibility over F is taken
/// on the caller's word.
pub fn make_relative_extension(
    base: &NumberField,
    g: Polynomial<FieldElement>,
) -> Result<RelativeExtension> {
    RelativeExtension::new(base, "y", g)
}

impl RelativeExtension {
    pub fn new(
        base: &NumberField,
        var: impl Into<String>,
        g: Polynomial<FieldElement>,
    ) -> Result<RelativeExtension> {
        if g.is_constant() {
            return Err(Error::Precondition(
                "relative defining polynomial must have degree at least 1".into(),
            ));
        }
        if g.coeffs().iter().any(|c| c.field() != base) {
            return Err(Error::FieldMismatch);
        }
        if !g.is_monic() {
            return Err(Error::NotMonic);
        }
        if !is_squarefree(&g) {
            return Err(Error::NotSquarefree);
        }
        let chain = sturm_chain(&g)?;
        Ok(RelativeExtension {
            base: base.clone(),
            var: var.into(),
            g,
            status: Irreducibility::Asserted,
            chain,
        })
    }

    pub fn base(&self) -> &NumberField {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn defining_polynomial(&self) -> &Polynomial<FieldElement> {
        &self.g
    }

    pub fn rel_degree(&self) -> usize {
        self.g.deg()
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.status
    }

    pub fn fiber(&self, v: &RealPlace) -> Result<RealPlaceFiber> {
        fiber(self, v)
    }

    pub fn ramified_real_places(&self) -> Result<Vec<RealPlace>> {
        ramified_real_places(self)
    }
}

/// Counts real roots of σ_v(g) by reading the leading-coefficient signs of
/// the Sturm chain of g through σ_v.
pub fn fiber(ext: &RelativeExtension, v: &RealPlace) -> Result<RealPlaceFiber> {
    if v.field() != &ext.base {
        return Err(Error::FieldMismatch);
    }
    let real_above = ext.chain.count_all_with(|c| sign_at_place(c, v))?;
    let complex_pairs_above = (ext.rel_degree() - real_above) / 2;
    Ok(RealPlaceFiber {
        place: v.clone(),
        real_above,
        complex_pairs_above,
        ramified: real_above == 0,
    })
}

/// The places of F with no real place of L above them, in place order.
pub fn ramified_real_places(ext: &RelativeExtension) -> Result<Vec<RealPlace>> {
    let mut out = Vec::new();
    for v in ext.base.real_places() {
        if fiber(ext, &v)?.ramified {
            out.push(v);
        }
    }
    Ok(out)
}
