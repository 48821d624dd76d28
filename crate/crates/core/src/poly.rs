//! Univariate polynomials over a field (coefficients low degree first) and
//! their evaluation on algebra elements.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::Algebra;
use crate::exactla::matrix::{axpy, zero_vec};
use crate::exactla::{Field, Matrix, Rationals, Subspace, Vector};

pub type Poly<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(f: &F, mut p: Poly<F>) -> Poly<F> {
    while p.last().is_some_and(|c| f.is_zero(c)) {
        p.pop();
    }
    p
}

/// Degree, with the zero polynomial at `None`.
pub fn degree<F: Field>(f: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|c| !f.is_zero(c))
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>) {
    let db = degree(f, b).expect("division by zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = trim(f, a.to_vec());
    let mut q = vec![f.zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(f, &r) {
        if dr < db {
            break;
        }
        let c = f.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        q[shift] = f.add(&q[shift], &c);
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            r[shift + i] = f.sub(&r[shift + i], &f.mul(&c, bi));
        }
        r = trim(f, r);
    }
    (trim(f, q), r)
}

/// (g, u, v) with u·a + v·b = g = gcd(a, b), g monic.
pub fn ext_gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F>, Poly<F>, Poly<F>) {
    let (mut r0, mut r1) = (trim(f, a.to_vec()), trim(f, b.to_vec()));
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while degree(f, &r1).is_some() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match degree(f, &r0) {
        Some(d) => {
            let li = f.inv(&r0[d]).expect("nonzero");
            let scale = |p: &[F::Elem]| trim(f, p.iter().map(|c| f.mul(c, &li)).collect());
            (scale(&r0), scale(&s0), scale(&t0))
        }
        None => (r0, s0, t0),
    }
}

pub fn eval<F: Field>(f: &F, p: &[F::Elem], x: &F::Elem) -> F::Elem {
    p.iter()
        .rev()
        .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Roots in the base field, without multiplicity, in a deterministic order.
pub fn roots<F: Field>(f: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    let p = trim(f, p.to_vec());
    if degree(f, &p).unwrap_or(0) == 0 {
        return Vec::new();
    }
    f.poly_roots(&p)
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out.sort();
    Some(out)
}

/// Rational root test on a polynomial with rational coefficients. Gives up
/// (returning the roots found so far) when the coefficients are too large to
/// factor by trial division.
pub fn rational_roots(p: &[BigRational]) -> Vec<BigRational> {
    let q = Rationals;
    let p = trim(&q, p.to_vec());
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut out = Vec::new();
    if ints.first().is_some_and(|c| c.is_zero()) {
        out.push(BigRational::zero());
        while ints.first().is_some_and(|c| c.is_zero()) {
            ints.remove(0);
        }
    }
    if ints.len() < 2 {
        return out;
    }
    let (Some(num), Some(den)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return out;
    };
    let qp: Vec<BigRational> = ints
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let mut cands = Vec::new();
    for a in &num {
        for b in &den {
            let r = BigRational::new(a.clone(), b.clone());
            cands.push(r.clone());
            cands.push(-r);
        }
    }
    cands.sort();
    cands.dedup();
    for c in cands {
        if eval(&q, &qp, &c).is_zero() {
            out.push(c);
        }
    }
    out.sort();
    out
}

/// p(x) in the algebra, with `one` standing for the constant term (a corner
/// idempotent when working inside e·B·e).
pub fn eval_element<F: Field>(
    b: &Algebra<F>,
    p: &[F::Elem],
    x: &[F::Elem],
    one: &[F::Elem],
) -> Vector<F> {
    let f = b.field();
    let mut acc = zero_vec(f, b.dim());
    for c in p.iter().rev() {
        acc = b.mul(&acc, x);
        axpy(f, &mut acc, c, one);
    }
    acc
}

/// Minimal polynomial of x in the unital algebra with identity `one`
/// (x must satisfy one·x = x·one = x).
pub fn min_poly<F: Field>(b: &Algebra<F>, x: &[F::Elem], one: &[F::Elem]) -> Poly<F> {
    let f = b.field();
    let mut powers: Vec<Vector<F>> = vec![one.to_vec()];
    loop {
        let next = b.mul(powers.last().unwrap(), x);
        let k = powers.len();
        let span = Subspace::span(f, b.dim(), &powers);
        if span.contains(&next) {
            let m = Matrix::from_columns(f, b.dim(), &powers).expect("columns");
            let c = crate::exactla::solve_vector(&m, &next).expect("in span");
            let mut poly: Poly<F> = c.iter().map(|v| f.neg(v)).collect();
            poly.push(f.one());
            debug_assert_eq!(poly.len(), k + 1);
            return poly;
        }
        powers.push(next);
    }
}

/// A nontrivial idempotent polynomial in x (inside the corner with identity
/// `one`), obtained from a root of the minimal polynomial whose primary
/// component is proper. None if the minimal polynomial has no usable root.
pub fn primary_idempotent<F: Field>(
    b: &Algebra<F>,
    x: &[F::Elem],
    one: &[F::Elem],
) -> Option<Vector<F>> {
    let f = b.field();
    let m = min_poly(b, x, one);
    for r in roots(f, &m) {
        let lin = vec![f.neg(&r), f.one()];
        let mut pk = vec![f.one()];
        let mut h = m.clone();
        loop {
            let (q, rem) = divrem(f, &h, &lin);
            if degree(f, &rem).is_some() {
                break;
            }
            h = q;
            pk = mul(f, &pk, &lin);
        }
        if degree(f, &h).unwrap_or(0) == 0 {
            continue;
        }
        let (_, _, v) = ext_gcd(f, &pk, &h);
        let e = eval_element(b, &mul(f, &v, &h), x, one);
        return Some(e);
    }
    None
}
