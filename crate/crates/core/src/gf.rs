//! Prime fields GF(p) and extension fields GF(p^m) with exact arithmetic and
//! a canonical integer encoding.
//!
//! An element is a length-m vector of residues in `[0, p)` (constant-first),
//! interpreted modulo the field's monic irreducible modulus polynomial. The
//! encoding `enc(a) = sum coeffs[i] * p^i` is a bijection onto `[0, q)` with
//! `q = p^m`; it is the text form of an element and the at-rest matrix
//! representation used everywhere else in the crate.
//!
//! When no modulus is supplied, the field uses the lexicographically smallest
//! monic irreducible polynomial of degree m over GF(p), ordering coefficient
//! vectors `(c_0, ..., c_{m-1})` as base-p integers. Identical `(p, m)` inputs
//! therefore always produce identical fields.
//!
//! For q <= 2^16 the field lazily builds discrete log / Zech tables and
//! routes multiplicative work through them. The tables are an internal
//! optimization: every operation has a table-free generic path, and the two
//! are cross-checked in tests.

use std::fmt;
use std::sync::{Arc, OnceLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Coeffs = SmallVec<[u64; 4]>;

pub(crate) const NONE32: u32 = u32::MAX;

/// Largest field order for which log/Zech tables are built.
const TABLE_LIMIT: u64 = 1 << 16;

// ---------------------------------------------------------------------------
// u64 modular helpers
// ---------------------------------------------------------------------------

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    // extended Euclid over the integers
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of a unit");
    t0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin, exact for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &sp in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == sp {
            return true;
        }
        if n % sp == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// polynomials over GF(p), constant-first, used for modulus arithmetic
// ---------------------------------------------------------------------------

fn ptrim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pdeg(v: &[u64]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn peval(f: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in f.iter().rev() {
        acc = (mulmod(acc, x, p) + c) % p;
    }
    acc
}

fn psub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    ptrim(&mut out);
    out
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % p as u128;
        }
    }
    let mut out: Vec<u64> = out.into_iter().map(|c| c as u64).collect();
    ptrim(&mut out);
    out
}

/// Remainder of `a` modulo `b` (`b` nonzero, any leading coefficient).
fn prem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    ptrim(&mut r);
    let db = pdeg(b).expect("nonzero divisor");
    let lead_inv = invmod(b[db], p);
    while let Some(dr) = pdeg(&r) {
        if dr < db {
            break;
        }
        let f = mulmod(r[dr], lead_inv, p);
        let shift = dr - db;
        for i in 0..=db {
            let sub = mulmod(f, b[i], p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        ptrim(&mut r);
    }
    r
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    ptrim(&mut x);
    ptrim(&mut y);
    while !y.is_empty() {
        let r = prem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn pmulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    prem(&pmul(a, b, p), modulus, p)
}

fn ppowmod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = prem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = pmulmod(&acc, &b, modulus, p);
        }
        b = pmulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

/// Irreducibility over GF(p). Degree <= 3 uses the no-root criterion when the
/// field is small enough to enumerate; otherwise the Frobenius-power gcd test.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = match pdeg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if m == 1 {
        return true;
    }
    if m <= 3 && p <= TABLE_LIMIT {
        return (0..p).all(|x| peval(f, x, p) != 0);
    }
    // Rabin: x^{p^m} = x mod f, and gcd(x^{p^{m/l}} - x, f) = 1 for primes l | m
    let x = vec![0u64, 1];
    let frob = |k: usize| -> Vec<u64> {
        let mut g = x.clone();
        for _ in 0..k {
            g = ppowmod(&g, p, f, p);
        }
        g
    };
    for l in prime_factors(m as u64) {
        let h = frob(m / l as usize);
        let g = pgcd(&psub(&h, &x, p), f, p);
        if pdeg(&g) != Some(0) {
            return false;
        }
    }
    frob(m) == x
}

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

pub(crate) struct ZechTables {
    pub(crate) qm1: u32,
    /// Discrete log by encoding; `log[0]` is the zero sentinel.
    pub(crate) log: Vec<u32>,
    /// `exp[k]` = encoding of g^k, doubled so `exp[i + j]` needs no reduction.
    pub(crate) exp: Vec<u32>,
    /// Zech logarithm: `zech[k] = log(1 + g^k)`, sentinel when `1 + g^k = 0`.
    pub(crate) zech: Vec<u32>,
    pub(crate) log_neg1: u32,
}

pub(crate) struct FieldInner {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    zech: OnceLock<Option<ZechTables>>,
}

/// A finite field GF(p^m). Cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.0.p, self.0.m)?;
        if self.0.m > 1 {
            write!(f, " [")?;
            for (i, c) in self.0.modulus.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", c)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl Field {
    /// Construct GF(p^m). When `modulus` is omitted the canonical one is
    /// searched; a supplied modulus must be monic of degree m and irreducible
    /// (coefficients constant-first).
    pub fn new(p: u64, m: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::ParamRange("extension degree m must be >= 1".into()));
        }
        let q = p.checked_pow(m).ok_or(Error::FieldTooLarge)?;
        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m as usize + 1 {
                    return Err(Error::ModulusShape { expected: m });
                }
                let reduced: Vec<u64> = coeffs.iter().map(|&c| c % p).collect();
                if reduced[m as usize] != 1 {
                    return Err(Error::ModulusShape { expected: m });
                }
                if !is_irreducible(&reduced, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                reduced
            }
            None => default_modulus(p, m, q),
        };
        Ok(Field(Arc::new(FieldInner {
            p,
            m,
            q,
            modulus,
            zech: OnceLock::new(),
        })))
    }

    /// GF(p) shorthand.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.0.m
    }

    /// Field order q = p^m.
    pub fn order(&self) -> u64 {
        self.0.q
    }

    /// Modulus coefficients, constant-first, length m+1.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Elem {
        self.elem_from_enc_unchecked(0)
    }

    pub fn one(&self) -> Elem {
        self.elem_from_enc_unchecked(1 % self.0.q)
    }

    /// Embed an integer via its residue mod p.
    pub fn from_int(&self, v: i64) -> Elem {
        let r = v.rem_euclid(self.0.p as i64) as u64;
        self.elem_from_enc_unchecked(r)
    }

    /// Element from its coefficient vector (reduced mod p; at most m entries).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem> {
        if coeffs.len() > self.0.m as usize {
            return Err(Error::ParamRange(format!(
                "coefficient vector of length {} exceeds extension degree {}",
                coeffs.len(),
                self.0.m
            )));
        }
        let mut c: Coeffs = coeffs.iter().map(|&x| x % self.0.p).collect();
        c.resize(self.0.m as usize, 0);
        Ok(Elem {
            field: self.clone(),
            coeffs: c,
        })
    }

    /// Element from its canonical integer encoding.
    pub fn from_enc(&self, enc: u64) -> Result<Elem> {
        if enc >= self.0.q {
            return Err(Error::ParamRange(format!(
                "encoding {} out of range for field of order {}",
                enc, self.0.q
            )));
        }
        Ok(self.elem_from_enc_unchecked(enc))
    }

    fn elem_from_enc_unchecked(&self, enc: u64) -> Elem {
        Elem {
            field: self.clone(),
            coeffs: self.0.decode(enc),
        }
    }

    /// The first `count` elements in increasing encoding order.
    pub fn enumerate(&self, count: u64) -> Result<Vec<Elem>> {
        if count > self.0.q {
            return Err(Error::EnumerationOverflow {
                count,
                q: self.0.q,
            });
        }
        Ok((0..count).map(|e| self.elem_from_enc_unchecked(e)).collect())
    }

    pub(crate) fn zech(&self) -> Option<&ZechTables> {
        self.0
            .zech
            .get_or_init(|| self.0.build_zech())
            .as_ref()
    }

    // ---- arithmetic on encodings ------------------------------------------

    pub fn enc_add(&self, a: u64, b: u64) -> u64 {
        self.0.add_generic(a, b)
    }

    pub fn enc_sub(&self, a: u64, b: u64) -> u64 {
        self.0.add_generic(a, self.0.neg_generic(b))
    }

    pub fn enc_neg(&self, a: u64) -> u64 {
        self.0.neg_generic(a)
    }

    pub fn enc_mul(&self, a: u64, b: u64) -> u64 {
        if let Some(z) = self.zech() {
            if a == 0 || b == 0 {
                return 0;
            }
            z.exp[(z.log[a as usize] + z.log[b as usize]) as usize] as u64
        } else {
            self.0.mul_generic(a, b)
        }
    }

    pub fn enc_inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        if let Some(z) = self.zech() {
            let k = z.log[a as usize];
            return Ok(z.exp[(z.qm1 - k) as usize % z.qm1 as usize] as u64);
        }
        self.0.inv_generic(a)
    }

    pub fn enc_pow(&self, a: u64, mut e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 % self.0.q } else { 0 };
        }
        if let Some(z) = self.zech() {
            let k = z.log[a as usize] as u64;
            let r = (k % z.qm1 as u64) * (e % z.qm1 as u64) % z.qm1 as u64;
            return z.exp[r as usize] as u64;
        }
        let mut acc = 1 % self.0.q;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.0.mul_generic(acc, base);
            }
            base = self.0.mul_generic(base, base);
            e >>= 1;
        }
        acc
    }

    #[cfg(test)]
    pub(crate) fn enc_mul_generic(&self, a: u64, b: u64) -> u64 {
        self.0.mul_generic(a, b)
    }
}

/// Lexicographically smallest monic irreducible of degree m over GF(p),
/// ordering the coefficient vectors `(c_0, ..., c_{m-1})` as base-p integers.
fn default_modulus(p: u64, m: u32, q: u64) -> Vec<u64> {
    let md = m as usize;
    let mut candidate = vec![0u64; md + 1];
    candidate[md] = 1;
    for v in 0..q {
        let mut rest = v;
        for c in candidate.iter_mut().take(md) {
            *c = rest % p;
            rest /= p;
        }
        if is_irreducible(&candidate, p) {
            return candidate;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

impl FieldInner {
    pub(crate) fn decode(&self, mut enc: u64) -> Coeffs {
        let mut out = Coeffs::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(enc % self.p);
            enc /= self.p;
        }
        out
    }

    pub(crate) fn encode(&self, coeffs: &[u64]) -> u64 {
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = acc * self.p + c;
        }
        acc
    }

    fn add_generic(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let mut out = Coeffs::with_capacity(self.m as usize);
        for i in 0..self.m as usize {
            let s = da[i] + db[i];
            out.push(if s >= self.p { s - self.p } else { s });
        }
        self.encode(&out)
    }

    fn neg_generic(&self, a: u64) -> u64 {
        if self.m == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let da = self.decode(a);
        let mut out = Coeffs::with_capacity(self.m as usize);
        for &c in da.iter() {
            out.push(if c == 0 { 0 } else { self.p - c });
        }
        self.encode(&out)
    }

    fn mul_generic(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            return mulmod(a, b, self.p);
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let md = self.m as usize;
        let mut conv = vec![0u128; 2 * md - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                conv[i + j] += x as u128 * y as u128;
            }
        }
        let mut coeffs: Vec<u64> = conv.into_iter().map(|c| (c % self.p as u128) as u64).collect();
        // reduce by the monic modulus
        for d in (md..coeffs.len()).rev() {
            let c = coeffs[d];
            if c == 0 {
                continue;
            }
            coeffs[d] = 0;
            let shift = d - md;
            for i in 0..md {
                let sub = mulmod(c, self.modulus[i], self.p);
                coeffs[shift + i] = (coeffs[shift + i] + self.p - sub) % self.p;
            }
        }
        self.encode(&coeffs[..md])
    }

    fn inv_generic(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        if self.m == 1 {
            return Ok(invmod(a, self.p));
        }
        // extended Euclid in GF(p)[x] between a (as a polynomial) and modulus
        let mut coeffs: Vec<u64> = self.decode(a).to_vec();
        ptrim(&mut coeffs);
        let p = self.p;
        let (mut r0, mut r1) = (self.modulus.clone(), coeffs);
        let (mut t0, mut t1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            // r0 = q*r1 + r, computed by long division
            let db = pdeg(&r1).unwrap();
            let lead_inv = invmod(r1[db], p);
            let mut r = r0.clone();
            let mut qpoly = vec![0u64; r.len().saturating_sub(db)];
            while let Some(dr) = pdeg(&r) {
                if dr < db {
                    break;
                }
                let f = mulmod(r[dr], lead_inv, p);
                qpoly[dr - db] = f;
                for i in 0..=db {
                    let sub = mulmod(f, r1[i], p);
                    r[dr - db + i] = (r[dr - db + i] + p - sub) % p;
                }
                ptrim(&mut r);
            }
            ptrim(&mut qpoly);
            let tnext = psub(&t0, &pmul(&qpoly, &t1, p), p);
            (r0, r1) = (r1, r);
            (t0, t1) = (t1, tnext);
        }
        // r0 = gcd, a nonzero constant since the modulus is irreducible
        debug_assert_eq!(pdeg(&r0), Some(0));
        let scale = invmod(r0[0], p);
        let mut inv: Vec<u64> = t0.iter().map(|&c| mulmod(c, scale, p)).collect();
        inv.resize(self.m as usize, 0);
        Ok(self.encode(&inv))
    }

    fn build_zech(&self) -> Option<ZechTables> {
        if self.q > TABLE_LIMIT {
            return None;
        }
        let q = self.q;
        let qm1 = (q - 1) as u32;
        let factors = prime_factors(q - 1);
        let generator = (1..q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&f| self.pow_generic(g, (q - 1) / f) != 1)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; 2 * qm1 as usize];
        let mut log = vec![NONE32; q as usize];
        let mut acc = 1u64;
        for k in 0..qm1 {
            exp[k as usize] = acc as u32;
            log[acc as usize] = k;
            acc = self.mul_generic(acc, generator);
        }
        debug_assert_eq!(acc, 1, "generator order equals q-1");
        for k in 0..qm1 as usize {
            exp[qm1 as usize + k] = exp[k];
        }
        let zech = (0..qm1)
            .map(|k| {
                let s = self.add_generic(1, exp[k as usize] as u64);
                if s == 0 {
                    NONE32
                } else {
                    log[s as usize]
                }
            })
            .collect();
        let log_neg1 = log[self.neg_generic(1) as usize];
        Some(ZechTables {
            qm1,
            log,
            exp,
            zech,
            log_neg1,
        })
    }

    fn pow_generic(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.q;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_generic(acc, base);
            }
            base = self.mul_generic(base, base);
            e >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Elem
// ---------------------------------------------------------------------------

/// One element of a [`Field`], stored as its canonical coefficient vector.
#[derive(Clone)]
pub struct Elem {
    field: Field,
    coeffs: Coeffs,
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for Elem {}

impl std::hash::Hash for Elem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.characteristic().hash(state);
        self.field.extension_degree().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.enc())
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.enc())
    }
}

impl Elem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Canonical integer encoding, `sum coeffs[i] * p^i`.
    pub fn enc(&self) -> u64 {
        self.field.0.encode(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &Elem) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, rhs: &Elem) -> Result<Elem> {
        self.same_field(rhs)?;
        Ok(self
            .field
            .elem_from_enc_unchecked(self.field.enc_add(self.enc(), rhs.enc())))
    }

    pub fn try_sub(&self, rhs: &Elem) -> Result<Elem> {
        self.same_field(rhs)?;
        Ok(self
            .field
            .elem_from_enc_unchecked(self.field.enc_sub(self.enc(), rhs.enc())))
    }

    pub fn try_mul(&self, rhs: &Elem) -> Result<Elem> {
        self.same_field(rhs)?;
        Ok(self
            .field
            .elem_from_enc_unchecked(self.field.enc_mul(self.enc(), rhs.enc())))
    }

    pub fn neg(&self) -> Elem {
        self.field
            .elem_from_enc_unchecked(self.field.enc_neg(self.enc()))
    }

    pub fn inv(&self) -> Result<Elem> {
        Ok(self
            .field
            .elem_from_enc_unchecked(self.field.enc_inv(self.enc())?))
    }

    pub fn pow(&self, e: u64) -> Elem {
        self.field
            .elem_from_enc_unchecked(self.field.enc_pow(self.enc(), e))
    }
}

macro_rules! elem_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait for &Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                self.$try(rhs).expect("operands from the same field")
            }
        }
    };
}
elem_binop!(Add, add, try_add);
elem_binop!(Sub, sub, try_sub);
elem_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::neg(self)
    }
}
