//! Exact arithmetic in F_q for prime powers q up to 2^16.
//!
//! An element is identified by its index `0..q`. The base-p digits of the
//! index are the coefficients of a polynomial over F_p, constant term first,
//! taken modulo the field's defining polynomial. Index 0 is zero and index 1
//! is one in every field.
//!
//! Fields with q ≤ 256 carry full addition, multiplication and inverse tables.
//! Larger fields compute on the fly.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Raw element index. Every supported q fits (q ≤ 2^16).
pub type Elem = u16;

pub const MAX_Q: u64 = 1 << 16;
const TABLE_LIMIT: u32 = 256;

/// A finite field F_q. Cheap to clone; immutable and shareable across threads.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

struct Inner {
    q: u32,
    p: u32,
    e: u32,
    /// Monic defining polynomial, constant term first, length e + 1.
    modulus: Vec<u32>,
    arith: Arith,
}

enum Arith {
    Table(Tables),
    Prime,
    Poly,
}

struct Tables {
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // the defining polynomial is canonical, so q determines the field
        self.inner.q == other.inner.q
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.q)
    }
}

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

impl Field {
    /// Builds F_q with its canonical defining polynomial: the lexicographically
    /// smallest monic irreducible of degree e, comparing coefficient vectors
    /// constant term first.
    pub fn new(q: u64) -> Result<Field> {
        if q > MAX_Q {
            return Err(Error::NotPrimePower(q));
        }
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, e)
        };
        let q = q as u32;
        let mut inner = Inner {
            q,
            p,
            e,
            modulus,
            arith: if e == 1 { Arith::Prime } else { Arith::Poly },
        };
        if q <= TABLE_LIMIT {
            inner.arith = Arith::Table(build_tables(&inner));
        }
        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    /// Defining polynomial, constant term first (monic, length e + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_prime(&self) -> bool {
        self.inner.e == 1
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.inner.q).map(|i| i as Elem)
    }

    /// The element `m · 1` for an integer m.
    pub fn from_int(&self, m: i64) -> Elem {
        m.rem_euclid(self.inner.p as i64) as Elem
    }

    /// Checked element wrapper.
    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index >= self.inner.q {
            return Err(Error::OutOfRange(format!(
                "element index {index} in F_{}",
                self.inner.q
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            index: index as Elem,
        })
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.inner;
        match &inner.arith {
            Arith::Table(t) => t.add[a as usize * inner.q as usize + b as usize],
            Arith::Prime => ((a as u32 + b as u32) % inner.p) as Elem,
            Arith::Poly => {
                if inner.p == 2 {
                    a ^ b
                } else {
                    digitwise(inner, a, b, |x, y| (x + y) % inner.p)
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let inner = &*self.inner;
        match &inner.arith {
            Arith::Table(t) => t.neg[a as usize],
            Arith::Prime => ((inner.p - a as u32) % inner.p) as Elem,
            Arith::Poly => digitwise(inner, a, 0, |x, _| (inner.p - x) % inner.p),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.inner;
        match &inner.arith {
            Arith::Table(t) => t.mul[a as usize * inner.q as usize + b as usize],
            Arith::Prime => ((a as u32 * b as u32) % inner.p) as Elem,
            Arith::Poly => poly_mul(inner, a, b),
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero { q: self.inner.q });
        }
        Ok(match &self.inner.arith {
            Arith::Table(t) => t.inv[a as usize],
            _ => self.pow(a, self.inner.q as u64 - 2),
        })
    }

    /// `a^r` with `0^0 = 1`.
    pub fn pow(&self, a: Elem, mut r: u64) -> Elem {
        let mut acc = 1;
        let mut base = a;
        while r > 0 {
            if r & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            r >>= 1;
        }
        acc
    }

    /// `dst[i] += c * src[i]`, the elimination kernel.
    pub fn axpy(&self, dst: &mut [Elem], c: Elem, src: &[Elem]) {
        debug_assert_eq!(dst.len(), src.len());
        if c == 0 {
            return;
        }
        let inner = &*self.inner;
        match &inner.arith {
            Arith::Table(t) => {
                let q = inner.q as usize;
                let row = &t.mul[c as usize * q..(c as usize + 1) * q];
                if inner.p == 2 {
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d ^= row[s as usize];
                    }
                } else {
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d = t.add[*d as usize * q + row[s as usize] as usize];
                    }
                }
            }
            Arith::Prime => {
                let p = inner.p as u64;
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = ((*d as u64 + c as u64 * s as u64) % p) as Elem;
                }
            }
            Arith::Poly => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = self.add(*d, self.mul(c, s));
                }
            }
        }
    }

    /// `v[i] *= c`.
    pub fn scale(&self, v: &mut [Elem], c: Elem) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Standard bilinear form `Σ a_i b_i`.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        debug_assert_eq!(a.len(), b.len());
        let inner = &*self.inner;
        if inner.e == 1 {
            let p = inner.p as u64;
            let mut acc = 0u64;
            for (&x, &y) in a.iter().zip(b) {
                acc += x as u64 * y as u64;
                if acc >= 1 << 62 {
                    acc %= p;
                }
            }
            return (acc % p) as Elem;
        }
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// `Σ_{β ∈ F_q} β^r`, by literal summation over the field.
    pub fn power_sum(&self, r: u64) -> Elem {
        self.elements()
            .fold(0, |acc, b| self.add(acc, self.pow(b, r)))
    }
}

/// An element tied to its field; mixing fields is an error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    index: Elem,
}

impl FieldElement {
    pub fn index(&self) -> Elem {
        self.index
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.q(),
                right: other.field.q(),
            });
        }
        Ok(())
    }

    fn with(&self, index: Elem) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            index,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.index, other.index)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.index, other.index)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.index, other.index)))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.with(self.field.inv(self.index)?))
    }

    pub fn pow(&self, r: u64) -> FieldElement {
        self.with(self.field.pow(self.index, r))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index)
    }
}

fn digits(inner: &Inner, a: Elem) -> Vec<u32> {
    let mut out = vec![0; inner.e as usize];
    let mut a = a as u32;
    for d in out.iter_mut() {
        *d = a % inner.p;
        a /= inner.p;
    }
    out
}

fn undigits(p: u32, d: &[u32]) -> Elem {
    d.iter().rev().fold(0u32, |acc, &x| acc * p + x) as Elem
}

fn digitwise(inner: &Inner, a: Elem, b: Elem, f: impl Fn(u32, u32) -> u32) -> Elem {
    let (da, db) = (digits(inner, a), digits(inner, b));
    let out: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| f(x, y)).collect();
    undigits(inner.p, &out)
}

fn poly_mul(inner: &Inner, a: Elem, b: Elem) -> Elem {
    let p = inner.p;
    let e = inner.e as usize;
    let (da, db) = (digits(inner, a), digits(inner, b));
    let mut prod = vec![0u32; 2 * e - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem_monic(&mut prod, &inner.modulus, p);
    prod.truncate(e);
    prod.resize(e, 0);
    undigits(p, &prod)
}

/// Reduces `a` in place modulo the monic polynomial `m` over F_p.
fn poly_rem_monic(a: &mut Vec<u32>, m: &[u32], p: u32) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap_or(0);
        if lead == 0 {
            continue;
        }
        let shift = a.len() - dm;
        for (i, &c) in m[..dm].iter().enumerate() {
            a[shift + i] = (a[shift + i] + (p - lead) * c) % p;
        }
    }
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = t;
            for _ in 0..d {
                g.push((t % p as u64) as u32);
                t /= p as u64;
            }
            g.push(1);
            let mut r = f.to_vec();
            poly_rem_monic(&mut r, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for t in 0..count {
        // c_0 is the most significant digit of t, so t counts in lex order
        let mut f = vec![0u32; e as usize + 1];
        let mut rest = t;
        for i in (0..e as usize).rev() {
            f[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        f[e as usize] = 1;
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q as usize;
    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    for a in 0..q {
        for b in 0..q {
            let (x, y) = (a as Elem, b as Elem);
            add[a * q + b] = if inner.e == 1 {
                ((a + b) % q) as Elem
            } else {
                digitwise(inner, x, y, |s, t| (s + t) % inner.p)
            };
            mul[a * q + b] = if inner.e == 1 {
                ((a * b) % q) as Elem
            } else {
                poly_mul(inner, x, y)
            };
        }
    }
    let mut neg = vec![0; q];
    let mut inv = vec![0; q];
    for a in 0..q {
        for b in 0..q {
            if add[a * q + b] == 0 {
                neg[a] = b as Elem;
            }
            if mul[a * q + b] == 1 {
                inv[a] = b as Elem;
            }
        }
    }
    Tables { add, mul, neg, inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime_powers_upto(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&q| prime_power(q).is_some()).collect()
    }

    #[test]
    fn prime_field_multiplication() {
        let f = Field::new(5).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.mul(3, 4), 2);
    }

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0, 1, 6, 10, 12, 100, 65537 * 2] {
            assert_eq!(Field::new(q).unwrap_err(), Error::NotPrimePower(q));
        }
        assert!(Field::new(1 << 17).is_err());
    }

    #[test]
    fn f4_modulus_is_the_unique_irreducible_quadratic() {
        // a monic quadratic over F_2 is irreducible iff it has no root in F_2
        let irreducible: Vec<[u32; 3]> = (0..4u32)
            .map(|t| [t & 1, (t >> 1) & 1, 1])
            .filter(|c| (0..2u32).all(|x| (c[0] + c[1] * x + c[2] * x * x) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![[1, 1, 1]]);
        let f = Field::new(4).unwrap();
        assert_eq!(f.modulus(), &irreducible[0]);
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn f8_modulus_follows_lex_order_constant_first() {
        // x^3+x^2+1 -> (1,0,1) precedes x^3+x+1 -> (1,1,0)
        let f = Field::new(8).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn pow_zero_zero_is_one() {
        for q in [2, 3, 4, 9, 257, 512] {
            let f = Field::new(q).unwrap();
            assert_eq!(f.pow(0, 0), 1);
            assert_eq!(f.pow(0, 3), 0);
        }
    }

    #[test]
    fn inverse_of_zero_fails() {
        let f = Field::new(7).unwrap();
        assert_eq!(f.inv(0), Err(Error::DivisionByZero { q: 7 }));
    }

    #[test]
    fn mixed_field_elements_are_rejected() {
        let f3 = Field::new(3).unwrap();
        let f9 = Field::new(9).unwrap();
        let a = f3.element(1).unwrap();
        let b = f9.element(1).unwrap();
        assert!(matches!(
            a.add(&b),
            Err(Error::FieldMismatch { left: 3, right: 9 })
        ));
        assert_eq!(a.add(&a).unwrap().index(), 2);
        assert!(f3.element(3).is_err());
    }

    #[test]
    fn axioms_hold_on_full_tables() {
        for q in prime_powers_upto(32) {
            let f = Field::new(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in prime_powers_upto(64) {
            let f = Field::new(q).unwrap();
            let order = |a: Elem| (1..q).find(|&r| f.pow(a, r) == 1).unwrap();
            assert!(f.elements().skip(1).any(|a| order(a) == q - 1), "q={q}");
        }
    }

    #[test]
    fn fermat_and_frobenius() {
        for q in prime_powers_upto(64)
            .into_iter()
            .chain([81, 128, 243, 256, 289, 343, 512, 625, 1024])
        {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, q), a);
                if a != 0 {
                    assert_eq!(f.pow(a, q - 1), 1);
                }
            }
        }
    }

    #[test]
    fn table_and_on_the_fly_paths_agree() {
        // same canonical modulus, so arithmetic must coincide
        for q in [256u64, 243, 125] {
            let f = Field::new(q).unwrap();
            let inner = &*f.inner;
            for a in (0..q as u32).step_by(7) {
                for b in (0..q as u32).step_by(5) {
                    let (a, b) = (a as Elem, b as Elem);
                    let slow = if inner.e == 1 {
                        ((a as u32 * b as u32) % inner.p) as Elem
                    } else {
                        poly_mul(inner, a, b)
                    };
                    assert_eq!(f.mul(a, b), slow);
                }
            }
        }
    }

    #[test]
    fn large_fields_are_consistent() {
        for q in [257u64, 65521, 1 << 16, 3u64.pow(10)] {
            let f = Field::new(q).unwrap();
            for a in [1u16, 2, 3, 100, (q - 1) as u16] {
                let ai = f.inv(a).unwrap();
                assert_eq!(f.mul(a, ai), 1);
                assert_eq!(f.sub(f.add(a, 77), 77), a);
            }
        }
    }

    #[test]
    fn power_sum_examples() {
        let f5 = Field::new(5).unwrap();
        assert_eq!(f5.power_sum(4), 4);
        assert_eq!(f5.power_sum(2), 0);
        assert_eq!(Field::new(3).unwrap().power_sum(0), 0);
    }

    #[test]
    fn power_sum_matches_closed_form() {
        for q in prime_powers_upto(64) {
            let f = Field::new(q).unwrap();
            let minus_one = f.neg(1);
            for r in 0..=2 * q {
                let expected = if r > 0 && r % (q - 1) == 0 {
                    minus_one
                } else {
                    0
                };
                assert_eq!(f.power_sum(r), expected, "q={q} r={r}");
            }
        }
    }

    #[test]
    fn axpy_and_dot_match_scalar_ops() {
        for q in [2u64, 3, 4, 7, 9, 16, 257, 512] {
            let f = Field::new(q).unwrap();
            let a: Vec<Elem> = (0..40)
                .map(|i| ((i * 31 + 5) % q as usize) as Elem)
                .collect();
            let b: Vec<Elem> = (0..40)
                .map(|i| ((i * 17 + 3) % q as usize) as Elem)
                .collect();
            let c = (q - 1) as Elem;
            let mut d = a.clone();
            f.axpy(&mut d, c, &b);
            for i in 0..40 {
                assert_eq!(d[i], f.add(a[i], f.mul(c, b[i])));
            }
            let naive = a
                .iter()
                .zip(&b)
                .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
            assert_eq!(f.dot(&a, &b), naive);
        }
    }
}
