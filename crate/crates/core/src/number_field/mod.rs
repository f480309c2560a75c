//! Number fields ℚ[x]/(p(x)), their elements, and their real places.

mod irreducibility;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_arith::{
    format_rational, is_squarefree, poly_divrem, poly_xgcd, rat, ExactField, Polynomial, Rational,
};
use crate::real_roots::{IsolatingInterval, RationalSturm};

use irreducibility::Probe;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    /// Proven irreducible by the rational root test or a modular probe.
    Verified,
    /// Accepted on the caller's word. A nonzero element vanishing at a real
    /// root is reported as [`Error::Inconsistent`].
    Asserted,
}

impl Irreducibility {
    pub fn as_str(self) -> &'static str {
        match self {
            Irreducibility::Verified => "verified",
            Irreducibility::Asserted => "asserted",
        }
    }
}

struct FieldData {
    name: String,
    var: String,
    min_poly: Polynomial<Rational>,
    chain: RationalSturm,
    status: Irreducibility,
    places: OnceLock<Vec<IsolatingInterval>>,
}

/// Handle to F = ℚ[x]/(p(x)) with p monic and squarefree. Cheap to clone.
#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.min_poly == other.0.min_poly
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("name", &self.0.name)
            .field("min_poly", &self.0.min_poly)
            .finish()
    }
}

/// Builds a field with default labels `F` and `x`.
pub fn make_number_field(min_poly: Polynomial<Rational>) -> Result<NumberField> {
    NumberField::new("F", "x", min_poly)
}

impl NumberField {
    pub fn new(
        name: impl Into<String>,
        var: impl Into<String>,
        min_poly: Polynomial<Rational>,
    ) -> Result<NumberField> {
        if min_poly.is_constant() {
            return Err(Error::Precondition(
                "defining polynomial must have degree at least 1".into(),
            ));
        }
        if !min_poly.is_monic() {
            return Err(Error::NotMonic);
        }
        if !is_squarefree(&min_poly) {
            return Err(Error::NotSquarefree);
        }
        let chain = RationalSturm::new(&min_poly)?;
        let status = match irreducibility::probe(&min_poly, &chain) {
            Probe::Irreducible => Irreducibility::Verified,
            Probe::Reducible(why) => return Err(Error::Reducible(why)),
            Probe::Unknown => Irreducibility::Asserted,
        };
        Ok(NumberField(Arc::new(FieldData {
            name: name.into(),
            var: var.into(),
            min_poly,
            chain,
            status,
            places: OnceLock::new(),
        })))
    }

    /// ℚ itself, presented as ℚ[x]/(x).
    pub fn rationals() -> NumberField {
        NumberField::new("Q", "x", Polynomial::new(vec![rat(0), rat(1)]))
            .expect("x is a valid defining polynomial")
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn var(&self) -> &str {
        &self.0.var
    }

    pub fn min_poly(&self) -> &Polynomial<Rational> {
        &self.0.min_poly
    }

    pub fn degree(&self) -> usize {
        self.0.min_poly.deg()
    }

    pub fn irreducibility(&self) -> Irreducibility {
        self.0.status
    }

    /// Warning text for fields whose irreducibility could not be proven.
    pub fn warning(&self) -> Option<String> {
        match self.0.status {
            Irreducibility::Verified => None,
            Irreducibility::Asserted => Some(format!(
                "irreducibility of the defining polynomial of {} is asserted, not proven",
                self.0.name
            )),
        }
    }

    pub(crate) fn chain(&self) -> &RationalSturm {
        &self.0.chain
    }

    fn place_boxes(&self) -> &[IsolatingInterval] {
        self.0.places.get_or_init(|| self.0.chain.isolate())
    }

    pub fn real_places(&self) -> Vec<RealPlace> {
        real_places(self)
    }

    pub fn real_place(&self, index: usize) -> Result<RealPlace> {
        let boxes = self.place_boxes();
        boxes
            .get(index)
            .map(|b| RealPlace {
                field: self.clone(),
                index,
                interval: b.clone(),
            })
            .ok_or(Error::PlaceOutOfRange {
                index,
                count: boxes.len(),
            })
    }

    pub fn signature(&self) -> (usize, usize) {
        signature(self)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            rep: Polynomial::zero(),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        FieldElement {
            field: self.clone(),
            rep: Polynomial::constant(r),
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rational(rat(n))
    }

    /// The class of x.
    pub fn generator(&self) -> FieldElement {
        self.from_poly(&Polynomial::new(vec![rat(0), rat(1)]))
    }

    /// The class of an arbitrary rational polynomial, reduced mod p.
    pub fn from_poly(&self, poly: &Polynomial<Rational>) -> FieldElement {
        let rep = poly_divrem(poly, &self.0.min_poly)
            .expect("defining polynomial is nonzero")
            .1;
        FieldElement {
            field: self.clone(),
            rep,
        }
    }

    /// Element from at most `degree` coefficients, ascending; shorter lists
    /// are zero-padded.
    pub fn element(&self, coeffs: Vec<Rational>) -> Result<FieldElement> {
        if coeffs.len() > self.degree() {
            return Err(Error::Malformed(format!(
                "element has {} coefficients, field degree is {}",
                coeffs.len(),
                self.degree()
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            rep: Polynomial::new(coeffs),
        })
    }

    pub fn element_from_ints(&self, coeffs: &[i64]) -> Result<FieldElement> {
        self.element(coeffs.iter().map(|&c| rat(c)).collect())
    }
}

/// An element of a number field, stored fully reduced.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: NumberField,
    rep: Polynomial<Rational>,
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// Reduced representative polynomial, degree below the field degree.
    pub fn representative(&self) -> &Polynomial<Rational> {
        &self.rep
    }

    /// Coefficients padded to the field degree.
    pub fn coeffs(&self) -> Vec<Rational> {
        let mut c = self.rep.coeffs().to_vec();
        c.resize(self.field.degree(), Rational::zero());
        c
    }

    /// Minimal-length coefficient list (trailing zeros dropped; zero is `[]`).
    pub fn trimmed_coeffs(&self) -> &[Rational] {
        self.rep.coeffs()
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.rep.coeffs() {
            [] => Some(Rational::zero()),
            [c] => Some(c.clone()),
            _ => None,
        }
    }

    fn check_same(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "arithmetic between elements of different number fields"
        );
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        elem_inverse(self)
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.is_zero() {
            return write!(f, "0");
        }
        let var = self.field.var();
        let mut first = true;
        for (i, c) in self.rep.coeffs().iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let s = format_rational(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let coef = if i > 0 && mag == "1" {
                String::new()
            } else {
                mag
            };
            let sep = if i > 0 && !coef.is_empty() { "*" } else { "" };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}{sep}{var}")?,
                _ => write!(f, "{coef}{sep}{var}^{i}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement {
            field: self.field.clone(),
            rep: self.rep.add(&rhs.rep),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement {
            field: self.field.clone(),
            rep: self.rep.sub(&rhs.rep),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_same(rhs);
        self.field.from_poly(&self.rep.mul(&rhs.rep))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            rep: self.rep.neg(),
        }
    }
}

impl ExactField for FieldElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn int_like(&self, n: i64) -> Self {
        self.field.from_int(n)
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self> {
        elem_inverse(self)
    }
}

/// Inverse by extended Euclid against the defining polynomial.
pub fn elem_inverse(a: &FieldElement) -> Result<FieldElement> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let (g, s, _) = poly_xgcd(&a.rep, a.field.min_poly())?;
    if !g.is_constant() {
        return Err(Error::Inconsistent(format!(
            "{a} is a zero divisor in {}; its defining polynomial has factor {}",
            a.field.name(),
            crate::cli_io::format_poly(&g)
        )));
    }
    Ok(a.field.from_poly(&s))
}

/// A real embedding, identified with an isolated real root of the defining
/// polynomial. Index 0 is the smallest root.
#[derive(Clone, PartialEq, Eq)]
pub struct RealPlace {
    field: NumberField,
    index: usize,
    interval: IsolatingInterval,
}

impl RealPlace {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn interval(&self) -> &IsolatingInterval {
        &self.interval
    }

    /// The isolating interval shrunk to width at most `width`.
    pub fn refined_interval(&self, width: &Rational) -> IsolatingInterval {
        self.field.chain().refine(&self.interval, width)
    }
}

impl fmt::Debug for RealPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RealPlace({}, #{} {:?})",
            self.field.name(),
            self.index,
            self.interval
        )
    }
}

pub fn real_places(field: &NumberField) -> Vec<RealPlace> {
    field
        .place_boxes()
        .iter()
        .enumerate()
        .map(|(index, b)| RealPlace {
            field: field.clone(),
            index,
            interval: b.clone(),
        })
        .collect()
}

/// `(r₁, r₂)`: real embeddings and complex-conjugate pairs.
pub fn signature(field: &NumberField) -> (usize, usize) {
    let r1 = field.place_boxes().len();
    (r1, (field.degree() - r1) / 2)
}

/// Exact sign of the image of `a` under the real embedding `v`.
pub fn sign_at_place(a: &FieldElement, v: &RealPlace) -> Result<i8> {
    if a.field != v.field {
        return Err(Error::FieldMismatch);
    }
    if a.is_zero() {
        return Ok(0);
    }
    let s = a.field.chain().sign_of_at_root(&v.interval, &a.rep)?;
    if s == 0 {
        return Err(Error::Inconsistent(format!(
            "nonzero element {a} vanishes at real place {} of {}; the defining polynomial is reducible",
            v.index,
            a.field.name()
        )));
    }
    Ok(s)
}

/// A nonzero element with prescribed signs `±1` at the real places, in place
/// order. Uses Lagrange interpolation through points approaching the roots.
pub fn element_with_signs(field: &NumberField, targets: &[i8]) -> Result<FieldElement> {
    let places = field.real_places();
    if targets.len() != places.len() {
        return Err(Error::Precondition(format!(
            "{} sign targets for {} real places",
            targets.len(),
            places.len()
        )));
    }
    if let Some(bad) = targets.iter().find(|t| t.abs() != 1) {
        return Err(Error::Precondition(format!("sign target {bad} is not ±1")));
    }
    if targets.iter().all(|&t| t == 1) {
        return Ok(field.one());
    }
    let mut boxes: Vec<IsolatingInterval> = places.iter().map(|v| v.interval.clone()).collect();
    loop {
        let nodes: Vec<Rational> = boxes.iter().map(IsolatingInterval::midpoint).collect();
        let values: Vec<Rational> = targets.iter().map(|&t| rat(t as i64)).collect();
        let candidate = field.from_poly(&lagrange(&nodes, &values));
        let mut ok = !candidate.is_zero();
        for (v, &t) in places.iter().zip(targets) {
            if !ok {
                break;
            }
            ok = sign_at_place(&candidate, v)? == t;
        }
        if ok {
            return Ok(candidate);
        }
        boxes = boxes
            .iter()
            .map(|b| field.chain().refine(b, &(b.width() / rat(2))))
            .collect();
    }
}

fn lagrange(nodes: &[Rational], values: &[Rational]) -> Polynomial<Rational> {
    let mut out = Polynomial::zero();
    for (i, (xi, yi)) in nodes.iter().zip(values).enumerate() {
        let mut basis = Polynomial::constant(yi.clone());
        for (j, xj) in nodes.iter().enumerate() {
            if i != j {
                let lin = Polynomial::new(vec![-xj.clone(), Rational::one()]);
                basis = basis.mul(&lin).scale(&(xi - xj).recip());
            }
        }
        out = out.add(&basis);
    }
    out
}
