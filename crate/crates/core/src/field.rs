//! Finite fields `F_q`, `q = p^e <= 64`, with dense element codes.
//!
//! An element is the integer `sum a_i p^i` standing for `sum a_i t^i` modulo the
//! stored irreducible polynomial. Addition, multiplication, negation and
//! inversion are table lookups.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_FIELD_SIZE: usize = 64;

/// A field element code in `0..q`.
pub type Elem = u8;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: usize,
    e: usize,
    q: usize,
    /// Monic modulus, coefficients from the constant term up; length `e + 1`.
    modulus: Vec<usize>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn digits(mut x: usize, p: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    out
}

fn from_digits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo monic `m` over `F_p`, coefficient vectors low-first.
fn poly_rem(a: &[usize], m: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = digits(code, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// `F_{p^e}` with the lexicographically least monic irreducible modulus.
    pub fn new(p: usize, e: usize) -> Result<Self> {
        Self::with_max(p, e, DEFAULT_MAX_FIELD_SIZE)
    }

    pub fn with_max(p: usize, e: usize, max_size: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let q = (p as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
        if q > max_size as u128 || q > 256 {
            return Err(Error::InvalidArgument(format!(
                "field size {p}^{e} exceeds maximum {max_size}"
            )));
        }
        let q = q as usize;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(e as u32))
                .map(|code| {
                    let mut f = digits(code, p, e);
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible(f, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let db = digits(b, p, e);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = from_digits(&s, p) as Elem;
                let mut prod = vec![0; 2 * e - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = if e == 1 { prod } else { poly_rem(&prod, &modulus, p) };
                mul[a * q + b] = from_digits(&r, p) as Elem;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (0..q).find(|&b| mul[a * q + b] == 1).expect("field element invertible") as Elem
                }
            })
            .collect();
        Ok(FiniteField {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: Elem, n: usize) -> Elem {
        (0..n).fold(1, |acc, _| self.mul(acc, a))
    }

    /// The image of an integer under `Z -> F_q`.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|a| a as Elem)
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(|a| a as Elem)
    }

    /// The class of the generator `t` of the polynomial representation.
    pub fn generator(&self) -> Elem {
        if self.e == 1 {
            if self.q == 2 {
                1
            } else {
                self.primitive_element()
            }
        } else {
            self.p as Elem
        }
    }

    pub fn primitive_element(&self) -> Elem {
        self.units()
            .find(|&g| {
                let mut x = g;
                let mut n = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    n += 1;
                }
                n == self.q - 1
            })
            .unwrap_or(1)
    }

    pub fn multiplicative_order(&self, a: Elem) -> usize {
        assert!(a != 0);
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p)
    }

    /// Exhaustive check of the field axioms; returns the first violated law.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let els: Vec<Elem> = self.elements().collect();
        for &a in &els {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("negation fails at {a}"));
            }
            if a != 0 && self.mul(a, self.inv(a)) != 1 {
                return Err(format!("inverse fails at {a}"));
            }
            for &b in &els {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a},{b})"));
                }
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        let frob: std::collections::BTreeSet<Elem> = els.iter().map(|&a| self.frobenius(a)).collect();
        if frob.len() != self.q {
            return Err("Frobenius is not bijective".into());
        }
        for &a in &els {
            for &b in &els {
                if self.frobenius(self.add(a, b)) != self.add(self.frobenius(a), self.frobenius(b))
                    || self.frobenius(self.mul(a, b)) != self.mul(self.frobenius(a), self.frobenius(b))
                {
                    return Err(format!("Frobenius not a homomorphism at ({a},{b})"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f2 = FiniteField::new(2, 1).unwrap();
        assert_eq!(f2.add(1, 1), 0);
        let f3 = FiniteField::new(3, 1).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.from_int(-1), 2);
    }

    #[test]
    fn f4_has_primitive_cube_root() {
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let w = f4.generator();
        assert_eq!(f4.add(f4.add(f4.mul(w, w), w), 1), 0);
        assert_eq!(f4.pow(w, 3), 1);
        assert_ne!(w, 1);
        f4.check_axioms().unwrap();
    }

    #[test]
    fn every_small_field_satisfies_axioms() {
        for (p, e) in [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (7, 1)] {
            FiniteField::new(p, e).unwrap().check_axioms().unwrap();
        }
        // exhaustive check stays cheap up to 64 elements
        FiniteField::new(2, 6).unwrap();
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FiniteField::new(4, 1).is_err());
        assert!(FiniteField::new(2, 7).is_err());
        assert!(FiniteField::new(2, 0).is_err());
    }
}
