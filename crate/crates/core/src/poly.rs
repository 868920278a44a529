//! Univariate polynomials over GF(p^m), binomial coefficients modulo p, and
//! the hyperderivative operator.
//!
//! The j-th hyperderivative of `f(x) = sum f_i x^i` is
//! `D_j f(x) = sum C(i, j) f_i x^(i-j)` with the convention `C(i, j) = 0`
//! unless `0 <= j <= i`. Binomial coefficients are computed over the integers
//! and then reduced mod p, so j >= p is fine; a Lucas-theorem fast path is
//! used for large upper indices and both paths are cross-checked in tests.

use std::fmt;

use num::bigint::BigInt;
use num::{One, Zero};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

// ---------------------------------------------------------------------------
// binomial coefficients
// ---------------------------------------------------------------------------

/// C(n, k) over the integers with the convention that it vanishes unless
/// `0 <= k <= n`.
pub fn binomial_bigint(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// n! over the integers.
pub fn factorial_bigint(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Upper-index threshold above which `binomial_mod_p` switches to Lucas.
const LUCAS_THRESHOLD: u64 = 64;

pub(crate) fn binomial_mod_p_lucas(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * binomial_small_mod(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

/// C(n, k) mod p for digits n, k < p.
fn binomial_small_mod(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    if den == 0 {
        // cannot happen for digits < p
        unreachable!()
    }
    num * mod_inverse(den, p) % p
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p prime and a nonzero mod p
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn binomial_mod_p_bigint(i: u64, j: u64, p: u64) -> u64 {
    let b = binomial_bigint(i as i64, j as i64);
    let r = b % BigInt::from(p);
    let digits = r.to_u64_digits().1;
    digits.first().copied().unwrap_or(0)
}

/// C(i, j) mod p; zero when `j < 0` or `j > i`.
pub fn binomial_mod_p(i: u64, j: i64, p: u64) -> u64 {
    if j < 0 || j as u64 > i {
        return 0;
    }
    let j = j as u64;
    if i > LUCAS_THRESHOLD {
        binomial_mod_p_lucas(i, j, p)
    } else {
        binomial_mod_p_bigint(i, j, p)
    }
}

// ---------------------------------------------------------------------------
// polynomials
// ---------------------------------------------------------------------------

/// Degree of a polynomial; the zero polynomial gets a distinguished marker
/// rather than a sentinel integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    NegativeInfinity,
    Finite(usize),
}

impl Degree {
    /// True when the degree is at most `bound` (the zero polynomial always is).
    pub fn at_most(self, bound: usize) -> bool {
        match self {
            Degree::NegativeInfinity => true,
            Degree::Finite(d) => d <= bound,
        }
    }
}

/// A polynomial over GF(p^m), coefficients constant-first with trailing
/// zeros trimmed (the zero polynomial stores no coefficients).
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Display for Polynomial {
    /// Text form: space-separated coefficient encodings, constant-first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", c.enc())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]", self)
    }
}

impl Polynomial {
    pub fn new(field: Field, coeffs: Vec<Elem>) -> Result<Polynomial> {
        for c in &coeffs {
            if c.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        let mut poly = Polynomial { field, coeffs };
        poly.trim();
        Ok(poly)
    }

    /// Polynomial from coefficient encodings, constant-first.
    pub fn from_encs(field: &Field, encs: &[u64]) -> Result<Polynomial> {
        let coeffs = encs
            .iter()
            .map(|&e| field.from_enc(e))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::new(field.clone(), coeffs)
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    /// The monomial x^k.
    pub fn monomial(field: &Field, k: usize) -> Polynomial {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        Polynomial {
            field: field.clone(),
            coeffs,
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegativeInfinity
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn try_add(&self, rhs: &Polynomial) -> Result<Polynomial> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch);
        }
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i).try_add(&rhs.coeff(i)))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::new(self.field.clone(), coeffs)
    }

    pub fn scale(&self, c: &Elem) -> Result<Polynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.try_mul(c))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::new(self.field.clone(), coeffs)
    }

    /// The j-th hyperderivative: coefficient of x^(i-j) becomes C(i, j) f_i.
    pub fn hyperderivative(&self, j: u64) -> Polynomial {
        let p = self.field.characteristic();
        let mut coeffs = Vec::new();
        for (i, fi) in self.coeffs.iter().enumerate() {
            let i = i as u64;
            if i < j {
                continue;
            }
            let c = binomial_mod_p(i, j as i64, p);
            let scaled = self
                .field
                .from_enc(self.field.enc_mul(self.field.from_int(c as i64).enc(), fi.enc()))
                .expect("encoding in range");
            coeffs.push(scaled);
        }
        Polynomial::new(self.field.clone(), coeffs).expect("same field")
    }

    /// Evaluate by Horner's rule.
    pub fn eval(&self, a: &Elem) -> Result<Elem> {
        if a.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.field.from_enc(self.eval_enc(a.enc())).expect("encoding in range"))
    }

    /// Evaluate at an encoded point.
    pub(crate) fn eval_enc(&self, a: u64) -> u64 {
        let f = &self.field;
        let mut acc = 0u64;
        for c in self.coeffs.iter().rev() {
            acc = f.enc_add(f.enc_mul(acc, a), c.enc());
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use num::ToPrimitive;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_mod_p(5, 2, 7), 3); // 10 mod 7
        assert_eq!(binomial_mod_p(4, 6, 5), 0); // j > i
        assert_eq!(binomial_mod_p(4, -1, 5), 0); // j < 0
        assert_eq!(binomial_mod_p(9, 3, 3), 0); // 84 = 0 mod 3
        assert_eq!(binomial_mod_p_lucas(9, 3, 3), 0);
    }

    #[test]
    fn lucas_and_bigint_paths_agree() {
        for p in [2u64, 3, 5, 7, 13, 31] {
            for i in 0..=60u64 {
                for j in 0..=i {
                    assert_eq!(
                        binomial_mod_p_lucas(i, j, p),
                        binomial_mod_p_bigint(i, j, p),
                        "C({i},{j}) mod {p}"
                    );
                }
            }
        }
        // above the threshold the public function takes the Lucas path
        assert_eq!(binomial_mod_p(100, 3, 7), binomial_mod_p_bigint(100, 3, 7));
    }

    #[test]
    fn binomial_difference_identity() {
        // C(i,k)C(j,k) - C(i-1,k)C(j+1,k) = (j-i+1)/k * C(i-1,k-1)C(j,k-1),
        // with the division exact over the integers.
        for i in 1..=30i64 {
            for k in 1..=30i64 {
                for j in 0..=30i64 {
                    let lhs = binomial_bigint(i, k) * binomial_bigint(j, k)
                        - binomial_bigint(i - 1, k) * binomial_bigint(j + 1, k);
                    let num =
                        BigInt::from(j - i + 1) * binomial_bigint(i - 1, k - 1) * binomial_bigint(j, k - 1);
                    assert!((&num % BigInt::from(k)).is_zero(), "division exact at ({i},{j},{k})");
                    assert_eq!(lhs, num / BigInt::from(k));
                }
            }
        }
    }

    #[test]
    fn hyperderivative_examples() {
        let f7 = Field::prime(7).unwrap();
        // d^2/dx^2 style: x^3 -> C(3,2) x = 3x
        let x3 = Polynomial::monomial(&f7, 3);
        let d2 = x3.hyperderivative(2);
        assert_eq!(d2.coeffs().iter().map(|c| c.enc()).collect::<Vec<_>>(), [0, 3]);

        // j = 0 is the identity
        let f = Polynomial::from_encs(&f7, &[1, 4, 0, 2]).unwrap();
        assert_eq!(f.hyperderivative(0), f);

        // j beyond the degree kills the polynomial
        let f5 = Field::prime(5).unwrap();
        let x2 = Polynomial::monomial(&f5, 2);
        assert!(x2.hyperderivative(3).is_zero());
        assert_eq!(x2.hyperderivative(3).degree(), Degree::NegativeInfinity);
    }

    #[test]
    fn hyperderivative_is_linear() {
        let field = Field::new(5, 2, None).unwrap();
        let mut rng = Rng::new(21);
        for _ in 0..200 {
            let f = random_poly(&field, &mut rng, 8);
            let g = random_poly(&field, &mut rng, 8);
            let j = rng.below(6);
            let lhs = f.try_add(&g).unwrap().hyperderivative(j);
            let rhs = f.hyperderivative(j).try_add(&g.hyperderivative(j)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn iterated_first_derivative_is_j_factorial_times_hyperderivative() {
        // D_1^j = j! D_j for j < p
        for p in [5u64, 7, 13] {
            let field = Field::prime(p).unwrap();
            let mut rng = Rng::new(p);
            for _ in 0..100 {
                let f = random_poly(&field, &mut rng, 9);
                for j in 0..p.min(6) {
                    let mut iterated = f.clone();
                    for _ in 0..j {
                        iterated = iterated.hyperderivative(1);
                    }
                    let jf = (1..=j).fold(BigInt::one(), |acc, v| acc * BigInt::from(v));
                    let jf = (jf % BigInt::from(p)).to_u64().unwrap();
                    let rhs = f.hyperderivative(j).scale(&field.from_int(jf as i64)).unwrap();
                    assert_eq!(iterated, rhs);
                }
            }
        }
    }

    #[test]
    fn eval_examples() {
        let f7 = Field::prime(7).unwrap();
        let f = Polynomial::from_encs(&f7, &[1, 0, 1]).unwrap(); // x^2 + 1
        assert_eq!(f.eval(&f7.from_int(3)).unwrap().enc(), 3); // 10 mod 7

        let zero = Polynomial::zero(&f7);
        assert_eq!(zero.eval(&f7.from_int(4)).unwrap().enc(), 0);

        let c = Polynomial::from_encs(&f7, &[5]).unwrap();
        assert_eq!(c.eval(&f7.from_int(2)).unwrap().enc(), 5);

        let f11 = Field::prime(11).unwrap();
        assert!(f.eval(&f11.from_int(3)).is_err());
    }

    #[test]
    fn text_form_is_space_separated_encodings() {
        let f7 = Field::prime(7).unwrap();
        let f = Polynomial::from_encs(&f7, &[1, 0, 3]).unwrap();
        assert_eq!(f.to_string(), "1 0 3");
        assert_eq!(Polynomial::zero(&f7).to_string(), "");
    }

    fn random_poly(field: &Field, rng: &mut Rng, max_len: u64) -> Polynomial {
        let len = rng.below(max_len) as usize;
        let coeffs = (0..len)
            .map(|_| field.from_enc(rng.below(field.order())).unwrap())
            .collect();
        Polynomial::new(field.clone(), coeffs).unwrap()
    }
}
