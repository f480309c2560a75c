//! Cheap irreducibility evidence for monic rational polynomials: a rational
//! root search, then factorisation degree patterns modulo small primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact_arith::{format_rational, Polynomial, Rational};
use crate::real_roots::RationalSturm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Probe {
    /// Proven irreducible over ℚ.
    Irreducible,
    /// Proven reducible; the string explains why.
    Reducible(String),
    /// No conclusion from the probes.
    Unknown,
}

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// `p` must be monic and squarefree with `chain` its Sturm chain.
pub(crate) fn probe(p: &Polynomial<Rational>, chain: &RationalSturm) -> Probe {
    let n = p.deg();
    if n == 1 {
        return Probe::Irreducible;
    }
    let d = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    if let Some(root) = rational_root(p, chain, &d) {
        return Probe::Reducible(format!("rational root {}", format_rational(&root)));
    }
    if n <= 3 {
        // No rational root and degree ≤ 3 leaves no room for a factor.
        return Probe::Irreducible;
    }
    // d^n · p(y / d) is monic with integer coefficients and factors exactly
    // like p over ℚ.
    let int_coeffs: Vec<BigInt> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| (c * Rational::from_integer(d.pow((n - i) as u32))).to_integer())
        .collect();

    // Bit k set: a factor of degree k over ℚ is still conceivable.
    let mut possible: u128 = if n < 127 {
        (1u128 << (n + 1)) - 1
    } else {
        u128::MAX
    };
    let full = possible;
    for &prime in &PRIMES {
        let f = reduce_mod(&int_coeffs, prime);
        if !fp::is_squarefree(&f, prime) {
            continue;
        }
        let pattern = fp::degree_pattern(&f, prime);
        if pattern.len() == 1 {
            return Probe::Irreducible;
        }
        let mut sums: u128 = 1;
        for k in pattern {
            sums |= sums << k;
        }
        possible &= sums & full;
        let interior = possible & !1 & !(1u128 << n);
        if interior == 0 {
            return Probe::Irreducible;
        }
    }
    Probe::Unknown
}

/// Any rational root of p has the form k / d for an integer k.
fn rational_root(p: &Polynomial<Rational>, chain: &RationalSturm, d: &BigInt) -> Option<Rational> {
    let boxes = chain.isolate();
    let step = Rational::new(BigInt::one(), d.clone());
    let dq = Rational::from_integer(d.clone());
    for b in boxes {
        let b = chain.refine(&b, &step);
        let lo = (b.low() * &dq).ceil().to_integer();
        let hi = (b.high() * &dq).floor().to_integer();
        let mut k = lo;
        while k <= hi {
            let cand = Rational::new(k.clone(), d.clone());
            if p.eval(&cand).is_zero() {
                return Some(cand);
            }
            k += 1;
        }
    }
    None
}

fn reduce_mod(coeffs: &[BigInt], prime: u64) -> Vec<u64> {
    let m = BigInt::from(prime);
    let mut out: Vec<u64> = coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(&m);
            debug_assert!(!r.is_negative());
            r.to_u64().unwrap()
        })
        .collect();
    fp::trim(&mut out);
    out
}

/// Dense polynomials over 𝔽ₚ, ascending coefficients, small p.
mod fp {
    pub(super) fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lc_inv = inv(*b.last().unwrap(), p);
        let db = b.len() - 1;
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db] * lc_inv % p;
            if c == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - c * y % p) % p;
            }
            q[k] = c;
        }
        r.truncate(db);
        trim(&mut q);
        trim(&mut r);
        (q, r)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * (i as u64 % p) % p)
            .collect();
        trim(&mut out);
        out
    }

    pub(super) fn is_squarefree(f: &[u64], p: u64) -> bool {
        let d = derivative(f, p);
        !d.is_empty() && gcd(f, &d, p).len() == 1
    }

    /// `base^e mod f`
    fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = divrem(base, f, p).1;
        while e > 0 {
            if e & 1 == 1 {
                result = divrem(&mul(&result, &b, p), f, p).1;
            }
            b = divrem(&mul(&b, &b, p), f, p).1;
            e >>= 1;
        }
        result
    }

    /// Degrees of the irreducible factors of a squarefree monic `f`
    /// (distinct-degree factorisation).
    pub(super) fn degree_pattern(f: &[u64], p: u64) -> Vec<usize> {
        let x = vec![0u64, 1];
        let mut rest = f.to_vec();
        let mut h = x.clone();
        let mut degrees = Vec::new();
        let mut d = 1;
        while 2 * d < rest.len() {
            h = powmod(&h, p, &rest, p);
            let g = gcd(&rest, &sub(&h, &x, p), p);
            let gdeg = g.len() - 1;
            if gdeg > 0 {
                degrees.extend(std::iter::repeat_n(d, gdeg / d));
                rest = divrem(&rest, &g, p).0;
                h = divrem(&h, &rest, p).1;
            }
            d += 1;
        }
        if rest.len() > 1 {
            degrees.push(rest.len() - 1);
        }
        degrees
    }

}
