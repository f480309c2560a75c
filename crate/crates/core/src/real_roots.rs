//! Sturm sequences, real root counting and isolation, and exact sign
//! determination at isolated algebraic roots.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact_arith::{
    format_rational, poly_divrem, poly_gcd, poly_squarefree_part, rat, ExactField, IntPoly,
    Polynomial, Rational,
};

/// Open rational interval `(low, high)` holding exactly one root of its
/// polynomial; neither endpoint is a root.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IsolatingInterval {
    low: Rational,
    high: Rational,
}

impl IsolatingInterval {
    /// Only checks `low < high`; isolation is checked by the operations
    /// that take a box.
    pub fn new(low: Rational, high: Rational) -> Result<Self> {
        if low >= high {
            return Err(Error::Precondition(format!(
                "interval [{}, {}] is empty",
                format_rational(&low),
                format_rational(&high)
            )));
        }
        Ok(IsolatingInterval { low, high })
    }

    pub fn low(&self) -> &Rational {
        &self.low
    }

    pub fn high(&self) -> &Rational {
        &self.high
    }

    pub fn width(&self) -> Rational {
        &self.high - &self.low
    }

    pub fn midpoint(&self) -> Rational {
        (&self.low + &self.high) / rat(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.low < x && x < &self.high
    }

    fn not_isolating(&self) -> Error {
        Error::NotIsolating {
            low: format_rational(&self.low),
            high: format_rational(&self.high),
        }
    }
}

impl fmt::Debug for IsolatingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.low),
            format_rational(&self.high)
        )
    }
}

impl fmt::Display for IsolatingInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `s₀ = p`, `s₁ = p′`, `sᵢ₊₁ = −rem(sᵢ₋₁, sᵢ)`, ending at a nonzero constant.
#[derive(Clone, PartialEq, Debug)]
pub struct SturmChain<K> {
    chain: Vec<Polynomial<K>>,
}

/// Builds the Sturm chain of a squarefree polynomial over any exact field.
pub fn sturm_chain<K: ExactField>(p: &Polynomial<K>) -> Result<SturmChain<K>> {
    if p.is_zero() {
        return Err(Error::Precondition(
            "Sturm chain of the zero polynomial".into(),
        ));
    }
    let mut chain = vec![p.clone()];
    let mut cur = p.derivative();
    while !cur.is_zero() {
        let prev = chain.last().unwrap();
        let (_, r) = poly_divrem(prev, &cur)?;
        chain.push(cur);
        cur = r.neg();
    }
    if !chain.last().unwrap().is_constant() {
        return Err(Error::NotSquarefree);
    }
    Ok(SturmChain { chain })
}

impl<K: ExactField> SturmChain<K> {
    pub fn members(&self) -> &[Polynomial<K>] {
        &self.chain
    }

    pub fn polynomial(&self) -> &Polynomial<K> {
        &self.chain[0]
    }

    /// Number of real roots, reading the sign of each leading coefficient
    /// through `sign`. `sign` must be a ring embedding into ℝ followed by the
    /// sign function; this is what lets a chain built over a number field
    /// count the real roots of its image under one real embedding.
    pub fn count_all_with<E>(&self, mut sign: E) -> Result<usize>
    where
        E: FnMut(&K) -> Result<i8>,
    {
        let mut at_pos = Vec::with_capacity(self.chain.len());
        let mut at_neg = Vec::with_capacity(self.chain.len());
        for s in &self.chain {
            let lc = sign(s.leading_coeff().expect("chain members are nonzero"))?;
            at_pos.push(lc);
            at_neg.push(if s.deg() % 2 == 0 { lc } else { -lc });
        }
        Ok(variations(&at_neg) - variations(&at_pos))
    }
}

fn variations(signs: &[i8]) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for &s in signs.iter().filter(|&&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm chain of a squarefree rational polynomial together with integer
/// multiples of its members, which is what all sign reads go through.
#[derive(Clone, Debug)]
pub struct RationalSturm {
    chain: SturmChain<Rational>,
    ints: Vec<IntPoly>,
}

impl RationalSturm {
    pub fn new(p: &Polynomial<Rational>) -> Result<RationalSturm> {
        let chain = sturm_chain(p)?;
        let ints = chain.chain.iter().map(IntPoly::from_rational).collect();
        Ok(RationalSturm { chain, ints })
    }

    pub fn chain(&self) -> &SturmChain<Rational> {
        &self.chain
    }

    pub fn polynomial(&self) -> &Polynomial<Rational> {
        self.chain.polynomial()
    }

    /// Sign of the polynomial at a rational point.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        self.ints[0].sign_at(x)
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        let signs: Vec<i8> = self.ints.iter().map(|s| s.sign_at(x)).collect();
        variations(&signs)
    }

    pub fn count_all(&self) -> usize {
        self.chain
            .count_all_with(|c| Ok(crate::exact_arith::sign_of(c)))
            .expect("rational signs never fail")
    }

    /// Roots in the open interval `(low, high)`; endpoints must not be roots.
    pub fn count_between(&self, low: &Rational, high: &Rational) -> Result<usize> {
        for e in [low, high] {
            if self.sign_at(e) == 0 {
                return Err(Error::EndpointIsRoot(format_rational(e)));
            }
        }
        Ok(self
            .variations_at(low)
            .saturating_sub(self.variations_at(high)))
    }

    /// Isolating intervals for every real root, in increasing order, with
    /// pairwise disjoint closures.
    pub fn isolate(&self) -> Vec<IsolatingInterval> {
        let p = self.polynomial();
        if p.is_constant() {
            return Vec::new();
        }
        let bound = cauchy_bound(p);
        let mut out = Vec::new();
        // Right half pushed first so the left half is processed first.
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((low, high)) = stack.pop() {
            let count = self
                .count_between(&low, &high)
                .expect("split points are never roots");
            match count {
                0 => {}
                1 => out.push(IsolatingInterval { low, high }),
                _ => {
                    let m = self.split_point(&low, &high);
                    stack.push((m.clone(), high));
                    stack.push((low, m));
                }
            }
        }
        // Neighbouring boxes may share a split point; shrink until closures
        // are disjoint.
        for i in 1..out.len() {
            while out[i - 1].high >= out[i].low {
                out[i - 1] = self.bisect(&out[i - 1]);
                out[i] = self.bisect(&out[i]);
            }
        }
        out
    }

    /// A non-root point in `(low, high)` near the midpoint.
    fn split_point(&self, low: &Rational, high: &Rational) -> Rational {
        let mid = (low + high) / rat(2);
        if self.sign_at(&mid) != 0 {
            return mid;
        }
        let mut step = (high - low) / rat(4);
        loop {
            let cand = &mid + &step;
            if self.sign_at(&cand) != 0 {
                return cand;
            }
            step /= rat(2);
        }
    }

    pub fn isolates(&self, b: &IsolatingInterval) -> Result<()> {
        match self.count_between(&b.low, &b.high) {
            Ok(1) => Ok(()),
            Ok(_) | Err(Error::EndpointIsRoot(_)) => Err(b.not_isolating()),
            Err(e) => Err(e),
        }
    }

    /// One bisection step on a box isolating a simple root. If the midpoint
    /// is the root itself, returns a box of half the width centred on it.
    fn bisect(&self, b: &IsolatingInterval) -> IsolatingInterval {
        let mid = b.midpoint();
        let at_mid = self.sign_at(&mid);
        if at_mid == 0 {
            let quarter = b.width() / rat(4);
            return IsolatingInterval {
                low: &mid - &quarter,
                high: &mid + quarter,
            };
        }
        if self.sign_at(&b.low) == at_mid {
            IsolatingInterval {
                low: mid,
                high: b.high.clone(),
            }
        } else {
            IsolatingInterval {
                low: b.low.clone(),
                high: mid,
            }
        }
    }

    /// Refines a box known to isolate a root until its width is at most
    /// `width_bound`.
    pub fn refine(&self, b: &IsolatingInterval, width_bound: &Rational) -> IsolatingInterval {
        let mut cur = b.clone();
        while &cur.width() > width_bound {
            cur = self.bisect(&cur);
        }
        cur
    }

    /// Exact sign of `q(α)` for the root `α` isolated by `b`, which must
    /// already be known to isolate.
    pub fn sign_of_at_root(&self, b: &IsolatingInterval, q: &Polynomial<Rational>) -> Result<i8> {
        if q.is_constant() {
            return Ok(q.coeff(0).map_or(0, crate::exact_arith::sign_of));
        }
        // q(α) = 0 iff α is a root of gcd(p, q).
        let g = poly_gcd(self.polynomial(), q)?;
        if !g.is_constant() && RationalSturm::new(&g)?.count_between(&b.low, &b.high)? == 1 {
            return Ok(0);
        }
        let q_sturm = RationalSturm::new(&poly_squarefree_part(q)?)?;
        let q_int = IntPoly::from_rational(q);
        let mut cur = b.clone();
        loop {
            let lo = q_int.sign_at(&cur.low);
            let hi = q_int.sign_at(&cur.high);
            if lo != 0 && lo == hi && q_sturm.count_between(&cur.low, &cur.high)? == 0 {
                return Ok(lo);
            }
            cur = self.bisect(&cur);
        }
    }
}

/// Number of distinct real roots of a squarefree rational polynomial, in all
/// of ℝ or in an open range whose endpoints are not roots.
pub fn count_real_roots(
    p: &Polynomial<Rational>,
    range: Option<(&Rational, &Rational)>,
) -> Result<usize> {
    let s = RationalSturm::new(p)?;
    match range {
        None => Ok(s.count_all()),
        Some((low, high)) => s.count_between(low, high),
    }
}

/// Cauchy bound `1 + max |aᵢ / aₙ|`; every real root lies strictly inside.
pub fn cauchy_bound(p: &Polynomial<Rational>) -> Rational {
    let lc = p.leading_coeff().expect("nonzero polynomial").abs();
    let n = p.deg();
    p.coeffs()[..n]
        .iter()
        .map(|a| a.abs() / &lc)
        .max()
        .unwrap_or_else(|| rat(0))
        + rat(1)
}

/// Isolating intervals for every real root of a squarefree rational
/// polynomial, in increasing order of the roots.
pub fn isolate_real_roots(p: &Polynomial<Rational>) -> Result<Vec<IsolatingInterval>> {
    Ok(RationalSturm::new(p)?.isolate())
}

/// Shrinks an isolating box until its width is at most `width_bound`.
pub fn refine_interval(
    p: &Polynomial<Rational>,
    b: &IsolatingInterval,
    width_bound: &Rational,
) -> Result<IsolatingInterval> {
    if !width_bound.is_positive() {
        return Err(Error::Precondition("width bound must be positive".into()));
    }
    let s = RationalSturm::new(p)?;
    s.isolates(b)?;
    Ok(s.refine(b, width_bound))
}

/// Exact sign of `q(α)` where `α` is the root of `p` isolated by `b`.
///
/// `q(α) = 0` is decided through `gcd(p, q)`; otherwise the box is halved
/// until `q` has equal nonzero signs at both ends and no root inside.
pub fn sign_at_root(
    p: &Polynomial<Rational>,
    b: &IsolatingInterval,
    q: &Polynomial<Rational>,
) -> Result<i8> {
    let s = RationalSturm::new(p)?;
    s.isolates(b)?;
    s.sign_of_at_root(b, q)
}
