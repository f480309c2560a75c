//! Norm decisions for products of Steinberg symbols.
//!
//! The image of `{f, g}` in K₂(ℝ)_tor ≅ ℤ/2 at a real place v is nonzero
//! exactly when f and g are both negative under v. A product of symbols is a
//! norm from L iff, at every real place of F with no real place of L above
//! it, an even number of its factors (counted with exponent) are of that
//! kind. For K₂ₙ with n ≢ 1 (mod 4) the local torsion vanishes and every
//! element is a norm.

use std::fmt;

use crate::error::{Error, Result};
use crate::number_field::{
    element_with_signs, sign_at_place, FieldElement, NumberField, RealPlace,
};
use crate::relative_ext::{ramified_real_places, RelativeExtension};

#[derive(Clone, PartialEq, Eq)]
pub struct SteinbergSymbol {
    f: FieldElement,
    g: FieldElement,
}

impl SteinbergSymbol {
    pub fn new(f: FieldElement, g: FieldElement) -> Result<SteinbergSymbol> {
        if f.field() != g.field() {
            return Err(Error::FieldMismatch);
        }
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(SteinbergSymbol { f, g })
    }

    pub fn f(&self) -> &FieldElement {
        &self.f
    }

    pub fn g(&self) -> &FieldElement {
        &self.g
    }

    pub fn field(&self) -> &NumberField {
        self.f.field()
    }
}

impl fmt::Debug for SteinbergSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.f, self.g)
    }
}

/// Formal product `∏ {fᵢ, gᵢ}^{eᵢ}`, kept exactly as given.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolProduct {
    field: NumberField,
    factors: Vec<(SteinbergSymbol, i64)>,
}

impl SymbolProduct {
    pub fn new(field: &NumberField) -> SymbolProduct {
        SymbolProduct {
            field: field.clone(),
            factors: Vec::new(),
        }
    }

    pub fn from_factors(
        field: &NumberField,
        factors: Vec<(SteinbergSymbol, i64)>,
    ) -> Result<SymbolProduct> {
        let mut out = SymbolProduct::new(field);
        for (s, e) in factors {
            out.push(s, e)?;
        }
        Ok(out)
    }

    pub fn single(s: SteinbergSymbol) -> SymbolProduct {
        SymbolProduct {
            field: s.field().clone(),
            factors: vec![(s, 1)],
        }
    }

    pub fn push(&mut self, s: SteinbergSymbol, exponent: i64) -> Result<()> {
        if s.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        self.factors.push((s, exponent));
        Ok(())
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn factors(&self) -> &[(SteinbergSymbol, i64)] {
        &self.factors
    }
}

/// Image of a symbol product in (ℤ/2)^{S_r}, one bit per ramified place.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParityVector {
    pub places: Vec<RealPlace>,
    pub bits: Vec<u8>,
}

impl ParityVector {
    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn support(&self) -> Vec<RealPlace> {
        self.places
            .iter()
            .zip(&self.bits)
            .filter(|(_, &b)| b == 1)
            .map(|(v, _)| v.clone())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictReason {
    /// n ≢ 1 (mod 4): K₂ₙ(ℝ)_tor = 0.
    TrivialTorsion,
    /// No ramified real place.
    EmptySr,
    ParityZero,
    ParityNonzero,
}

impl VerdictReason {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictReason::TrivialTorsion => "trivial_torsion",
            VerdictReason::EmptySr => "empty_Sr",
            VerdictReason::ParityZero => "parity_zero",
            VerdictReason::ParityNonzero => "parity_nonzero",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormVerdict {
    pub is_norm: bool,
    pub n: u32,
    /// Absent when the local torsion is trivial.
    pub parity: Option<ParityVector>,
    pub ramified_places: Vec<RealPlace>,
    pub failing_places: Vec<RealPlace>,
    pub reason: VerdictReason,
    /// Set for n ≡ 1 (mod 4), n > 1: the sign criterion is applied to the
    /// image of a K₂ symbol product, not to a general element of K₂ₙ.
    pub symbolic_caveat: bool,
}

/// The obstruction group `(ℤ/2)^rank`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ObstructionGroup {
    pub n: u32,
    pub rank: usize,
    /// S_r when `rank > 0`, otherwise empty.
    pub places: Vec<RealPlace>,
}

impl fmt::Display for ObstructionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rank {
            0 => write!(f, "0"),
            r => write!(f, "(Z/2)^{r}"),
        }
    }
}

/// 2-rank of K₂ₙ(ℝ)_tor: 1 when n ≡ 1 (mod 4), else 0.
pub fn torsion_rank_at_real(n: u32) -> Result<u32> {
    if n < 1 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    Ok(u32::from(n % 4 == 1))
}

/// Real Hilbert symbol of `{f, g}` at v: 1 iff both are negative there.
pub fn local_symbol_sign(s: &SteinbergSymbol, v: &RealPlace) -> Result<u8> {
    let sf = sign_at_place(&s.f, v)?;
    if sf > 0 {
        return Ok(0);
    }
    let sg = sign_at_place(&s.g, v)?;
    Ok(u8::from(sg < 0))
}

fn parity_over(places: &[RealPlace], x: &SymbolProduct) -> Result<ParityVector> {
    let mut bits = Vec::with_capacity(places.len());
    for v in places {
        let mut bit = 0u8;
        for (s, e) in &x.factors {
            if e.rem_euclid(2) == 1 {
                bit ^= local_symbol_sign(s, v)?;
            }
        }
        bits.push(bit);
    }
    Ok(ParityVector {
        places: places.to_vec(),
        bits,
    })
}

fn check_base(ext: &RelativeExtension, x: &SymbolProduct) -> Result<()> {
    if x.field() != ext.base() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

pub fn parity_vector(ext: &RelativeExtension, x: &SymbolProduct) -> Result<ParityVector> {
    check_base(ext, x)?;
    let sr = ramified_real_places(ext)?;
    parity_over(&sr, x)
}

pub fn is_norm(ext: &RelativeExtension, x: &SymbolProduct, n: u32) -> Result<NormVerdict> {
    check_base(ext, x)?;
    let rank = torsion_rank_at_real(n)?;
    let sr = ramified_real_places(ext)?;
    let symbolic_caveat = n > 1 && rank == 1;
    if rank == 0 {
        return Ok(NormVerdict {
            is_norm: true,
            n,
            parity: None,
            ramified_places: sr,
            failing_places: Vec::new(),
            reason: VerdictReason::TrivialTorsion,
            symbolic_caveat,
        });
    }
    let parity = parity_over(&sr, x)?;
    let failing_places = parity.support();
    let reason = if sr.is_empty() {
        VerdictReason::EmptySr
    } else if failing_places.is_empty() {
        VerdictReason::ParityZero
    } else {
        VerdictReason::ParityNonzero
    };
    Ok(NormVerdict {
        is_norm: failing_places.is_empty(),
        n,
        parity: Some(parity),
        ramified_places: sr,
        failing_places,
        reason,
        symbolic_caveat,
    })
}

/// Single-symbol criterion: at every ramified place at least one entry is
/// positive.
pub fn is_norm_single(ext: &RelativeExtension, s: &SteinbergSymbol) -> Result<bool> {
    if s.field() != ext.base() {
        return Err(Error::FieldMismatch);
    }
    for v in ramified_real_places(ext)? {
        if local_symbol_sign(s, &v)? == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn obstruction_group(ext: &RelativeExtension, n: u32) -> Result<ObstructionGroup> {
    let t = torsion_rank_at_real(n)?;
    let places = if t == 0 {
        Vec::new()
    } else {
        ramified_real_places(ext)?
    };
    Ok(ObstructionGroup {
        n,
        rank: places.len(),
        places,
    })
}

/// `{f, f}` with f negative exactly at `v`; its parity vector is the basis
/// vector of v. Fails unless v is ramified.
pub fn witness_non_norm(ext: &RelativeExtension, v: &RealPlace) -> Result<SymbolProduct> {
    if v.field() != ext.base() {
        return Err(Error::FieldMismatch);
    }
    let sr = ramified_real_places(ext)?;
    if !sr.iter().any(|w| w.index() == v.index()) {
        return Err(Error::PlaceNotRamified(v.index()));
    }
    let targets: Vec<i8> = ext
        .base()
        .real_places()
        .iter()
        .map(|w| if w.index() == v.index() { -1 } else { 1 })
        .collect();
    let f = element_with_signs(ext.base(), &targets)?;
    let x = SymbolProduct::single(SteinbergSymbol::new(f.clone(), f)?);
    let parity = parity_over(&sr, &x)?;
    let support: Vec<usize> = parity.support().iter().map(RealPlace::index).collect();
    debug_assert_eq!(support, vec![v.index()]);
    if support != [v.index()] {
        return Err(Error::Inconsistent(format!(
            "witness for place {} has parity support {support:?}",
            v.index()
        )));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{qpoly, Polynomial};
    use crate::number_field::make_number_field;
    use crate::relative_ext::make_relative_extension;

    fn lift(f: &NumberField, c: &[i64]) -> Polynomial<FieldElement> {
        Polynomial::new(c.iter().map(|&k| f.from_int(k)).collect())
    }

    fn q_i() -> RelativeExtension {
        let q = NumberField::rationals();
        make_relative_extension(&q, lift(&q, &[1, 0, 1])).unwrap()
    }

    fn q_sqrt2_i() -> RelativeExtension {
        let f = make_number_field(qpoly(&[-2, 0, 1])).unwrap();
        make_relative_extension(&f, lift(&f, &[1, 0, 1])).unwrap()
    }

    fn sym(f: &NumberField, a: &[i64], b: &[i64]) -> SteinbergSymbol {
        SteinbergSymbol::new(
            f.element_from_ints(a).unwrap(),
            f.element_from_ints(b).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn torsion_ranks() {
        assert_eq!(torsion_rank_at_real(1).unwrap(), 1);
        assert_eq!(torsion_rank_at_real(2).unwrap(), 0);
        assert_eq!(torsion_rank_at_real(5).unwrap(), 1);
        assert!(torsion_rank_at_real(0).is_err());
    }

    #[test]
    fn local_signs() {
        let q = NumberField::rationals();
        let v = &q.real_places()[0];
        assert_eq!(local_symbol_sign(&sym(&q, &[-1], &[-1]), v).unwrap(), 1);
        assert_eq!(local_symbol_sign(&sym(&q, &[3], &[-1]), v).unwrap(), 0);
        assert_eq!(local_symbol_sign(&sym(&q, &[-5], &[6]), v).unwrap(), 0);
        assert!(SteinbergSymbol::new(q.from_int(0), q.from_int(2)).is_err());
    }

    #[test]
    fn parity_examples() {
        let ext = q_i();
        let q = ext.base().clone();
        let m = sym(&q, &[-1], &[-1]);
        let t = sym(&q, &[3], &[-1]);
        let bits = |x: SymbolProduct| parity_vector(&ext, &x).unwrap().bits;
        assert_eq!(bits(SymbolProduct::single(m.clone())), vec![1]);
        assert_eq!(
            bits(SymbolProduct::from_factors(&q, vec![(m.clone(), 2)]).unwrap()),
            vec![0]
        );
        assert_eq!(
            bits(SymbolProduct::from_factors(&q, vec![(m.clone(), 1), (t, 1)]).unwrap()),
            vec![1]
        );
        assert_eq!(
            bits(SymbolProduct::from_factors(&q, vec![(m, -1)]).unwrap()),
            vec![1]
        );
    }

    #[test]
    fn verdict_examples() {
        let ext = q_i();
        let q = ext.base().clone();
        let v = is_norm(&ext, &SymbolProduct::single(sym(&q, &[3], &[-1])), 1).unwrap();
        assert!(v.is_norm);
        assert_eq!(v.reason, VerdictReason::ParityZero);
        let v = is_norm(&ext, &SymbolProduct::single(sym(&q, &[-1], &[-1])), 1).unwrap();
        assert!(!v.is_norm);
        assert_eq!(v.reason, VerdictReason::ParityNonzero);
        assert_eq!(
            v.failing_places
                .iter()
                .map(|p| p.index())
                .collect::<Vec<_>>(),
            vec![0]
        );
        let v = is_norm(&ext, &SymbolProduct::single(sym(&q, &[-1], &[-1])), 2).unwrap();
        assert!(v.is_norm);
        assert_eq!(v.reason, VerdictReason::TrivialTorsion);
        assert!(v.parity.is_none());
        let v = is_norm(&ext, &SymbolProduct::single(sym(&q, &[-1], &[-1])), 5).unwrap();
        assert!(!v.is_norm && v.symbolic_caveat);

        let c2 = make_relative_extension(&q, lift(&q, &[-2, 0, 0, 1])).unwrap();
        let v = is_norm(&c2, &SymbolProduct::single(sym(&q, &[-1], &[-1])), 1).unwrap();
        assert!(v.is_norm);
        assert_eq!(v.reason, VerdictReason::EmptySr);
    }

    #[test]
    fn single_symbol_examples() {
        let ext = q_sqrt2_i();
        let f = ext.base().clone();
        assert!(!is_norm_single(&ext, &sym(&f, &[-1], &[-2, 1])).unwrap());
        assert!(is_norm_single(&ext, &sym(&f, &[-1], &[2, 1])).unwrap());
        assert!(is_norm_single(&ext, &sym(&f, &[7], &[-2, 1])).unwrap());
    }

    #[test]
    fn obstruction_examples() {
        assert_eq!(obstruction_group(&q_i(), 1).unwrap().rank, 1);
        assert_eq!(obstruction_group(&q_i(), 2).unwrap().rank, 0);
        let g = obstruction_group(&q_sqrt2_i(), 1).unwrap();
        assert_eq!(g.rank, 2);
        assert_eq!(g.to_string(), "(Z/2)^2");
        assert_eq!(obstruction_group(&q_i(), 3).unwrap().to_string(), "0");
        assert!(obstruction_group(&q_i(), 0).is_err());
    }

    #[test]
    fn witnesses() {
        let ext = q_i();
        let v = ext.base().real_places()[0].clone();
        let w = witness_non_norm(&ext, &v).unwrap();
        let verdict = is_norm(&ext, &w, 1).unwrap();
        assert!(!verdict.is_norm);

        let ext = q_sqrt2_i();
        for v in ext.base().real_places() {
            let w = witness_non_norm(&ext, &v).unwrap();
            let p = parity_vector(&ext, &w).unwrap();
            let expect: Vec<u8> = (0..2).map(|i| u8::from(i == v.index())).collect();
            assert_eq!(p.bits, expect);
        }

        // y² − x over ℚ(√2) ramifies only place 0.
        let f = ext.base().clone();
        let g = Polynomial::new(vec![-&f.generator(), f.zero(), f.one()]);
        let mixed = make_relative_extension(&f, g).unwrap();
        let v1 = f.real_places()[1].clone();
        assert_eq!(
            witness_non_norm(&mixed, &v1),
            Err(Error::PlaceNotRamified(1))
        );
    }
}
