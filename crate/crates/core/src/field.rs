//! Small finite fields F_{p^k} with exact arithmetic.
//!
//! Elements are stored as `u16` integers encoding polynomials over F_p in
//! base p (for p = 2 this is the usual bitmask encoding). Multiplication and
//! inversion go through log/antilog tables built from a discovered generator,
//! so every operation is a couple of array lookups.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("no monic irreducible of degree {1} found over F_{0}")]
    NoIrreducible(u16, u32),
    #[error("no multiplicative generator found for F_{0}")]
    NoGenerator(usize),
    #[error("modulus of the base field has no root in the extension")]
    NoEmbedding,
}

/// F_{p^k} with log/antilog multiplication tables.
#[derive(Debug)]
pub struct SmallField {
    pub p: u16,
    pub k: u32,
    pub q: usize,
    /// Monic irreducible of degree k over F_p, little-endian digit list.
    modulus: Vec<u16>,
    /// log[a] for a in 1..q (index 0 unused).
    log: Vec<u32>,
    /// exp[i] for i in 0..2(q-1), so products of logs need no reduction.
    exp: Vec<u16>,
}

impl SmallField {
    pub fn new(p: u16, k: u32) -> Result<SmallField, FieldError> {
        assert!(k >= 1 && (p as u64).pow(k) <= u16::MAX as u64 + 1);
        let q = (p as usize).pow(k);
        let modulus = find_irreducible(p, k)?;
        // Find a generator of the multiplicative group by direct order test,
        // multiplying with raw polynomial arithmetic (tables don't exist yet).
        let mut generator = 0u16;
        for cand in 2..q as u16 {
            let mut x = cand;
            let mut order = 1usize;
            while x != 1 {
                x = mul_raw(p, k, &modulus, x, cand);
                order += 1;
                if order > q - 1 {
                    break;
                }
            }
            if order == q - 1 {
                generator = cand;
                break;
            }
        }
        if generator == 0 {
            return Err(FieldError::NoGenerator(q));
        }
        let mut log = vec![0u32; q];
        let mut exp = vec![0u16; 2 * (q - 1)];
        let mut x = 1u16;
        for i in 0..(q - 1) {
            exp[i] = x;
            exp[i + q - 1] = x;
            log[x as usize] = i as u32;
            x = mul_raw(p, k, &modulus, x, generator);
        }
        Ok(SmallField { p, k, q, modulus, log, exp })
    }

    pub fn zero(&self) -> u16 {
        0
    }

    pub fn one(&self) -> u16 {
        1
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.q as u16
    }

    pub fn add(&self, a: u16, b: u16) -> u16 {
        if self.p == 2 {
            a ^ b
        } else {
            digit_zip(self.p, self.k, a, b, |x, y| (x + y) % self.p)
        }
    }

    pub fn neg(&self, a: u16) -> u16 {
        if self.p == 2 {
            a
        } else {
            digit_zip(self.p, self.k, a, 0, |x, _| (self.p - x) % self.p)
        }
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u16) -> u16 {
        assert!(a != 0, "inverse of zero");
        self.exp[(self.q - 1) as usize - self.log[a as usize] as usize]
    }

    pub fn div(&self, a: u16, b: u16) -> u16 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u16, e: i64) -> u16 {
        if a == 0 {
            assert!(e > 0, "0^e only defined for e > 0");
            return 0;
        }
        let m = (self.q - 1) as i64;
        let r = ((self.log[a as usize] as i64 * (e.rem_euclid(m))) % m) as usize;
        self.exp[r]
    }

    /// Multiply by an integer scalar (repeated addition, i.e. reduction mod p).
    pub fn int_mul(&self, n: i64, a: u16) -> u16 {
        let r = n.rem_euclid(self.p as i64) as u16;
        let mut acc = 0u16;
        for _ in 0..r {
            acc = self.add(acc, a);
        }
        acc
    }

    /// The embedding F_{p^k} -> F_{p^m} (k | m), returned as a lookup table
    /// indexed by this field's elements.
    pub fn embedding_into(&self, ext: &SmallField) -> Result<Vec<u16>, FieldError> {
        assert_eq!(self.p, ext.p);
        assert_eq!(ext.k % self.k, 0);
        // A root of our modulus inside the extension generates a copy of us.
        let mut root = None;
        for r in ext.elements() {
            let mut acc = 0u16;
            for &c in self.modulus.iter().rev() {
                acc = ext.add(ext.mul(acc, r), c);
            }
            if acc == 0 && (r != 0 || self.k == 1) {
                root = Some(r);
                break;
            }
        }
        let root = root.ok_or(FieldError::NoEmbedding)?;
        let mut map = vec![0u16; self.q];
        for a in self.elements() {
            let mut acc = 0u16;
            for i in (0..self.k).rev() {
                let digit = (a as usize / (self.p as usize).pow(i)) % self.p as usize;
                acc = ext.add(ext.mul(acc, root), digit as u16);
            }
            map[a as usize] = acc;
        }
        Ok(map)
    }
}

fn digit_zip(p: u16, k: u32, a: u16, b: u16, f: impl Fn(u16, u16) -> u16) -> u16 {
    let mut out = 0u16;
    let mut base = 1u16;
    let mut x = a;
    let mut y = b;
    for _ in 0..k {
        out += f(x % p, y % p) * base;
        x /= p;
        y /= p;
        base = base.saturating_mul(p);
    }
    out
}

fn encode(p: u16, digits: &[u16]) -> u16 {
    let mut out = 0u32;
    for &d in digits.iter().rev() {
        out = out * p as u32 + d as u32;
    }
    out as u16
}

fn decode(p: u16, k: u32, a: u16) -> Vec<u16> {
    let mut out = Vec::with_capacity(k as usize);
    let mut x = a;
    for _ in 0..k {
        out.push(x % p);
        x /= p;
    }
    out
}

/// Product in F_p[x]/(modulus), on raw digit encodings. Used only while
/// bootstrapping the log tables.
fn mul_raw(p: u16, k: u32, modulus: &[u16], a: u16, b: u16) -> u16 {
    let da = decode(p, k, a);
    let db = decode(p, k, b);
    let mut prod = vec![0u16; 2 * k as usize];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // Reduce modulo the monic modulus of degree k.
    for i in (k as usize..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &m) in modulus.iter().enumerate().take(k as usize) {
            let idx = i - k as usize + j;
            prod[idx] = (prod[idx] + c * (p - m % p)) % p;
        }
    }
    encode(p, &prod[..k as usize])
}

/// Smallest monic irreducible of degree k over F_p (by encoded constant part).
fn find_irreducible(p: u16, k: u32) -> Result<Vec<u16>, FieldError> {
    let pk = (p as usize).pow(k);
    'cand: for c in 0..pk {
        let mut digits = decode(p, k, c as u16);
        digits.push(1); // monic of degree k
        if digits[0] == 0 {
            continue; // divisible by x
        }
        // Trial division by every monic polynomial of degree 1..=k/2.
        let dmax = if k == 1 { 0 } else { (k / 2).max(1) };
        for d in 1..=dmax {
            for m in 0..(p as usize).pow(d) {
                let mut div = decode(p, d, m as u16);
                div.push(1);
                if rem_is_zero(p, &digits, &div) {
                    continue 'cand;
                }
            }
        }
        return Ok(digits);
    }
    Err(FieldError::NoIrreducible(p, k))
}

/// Does `div` (monic) divide `num` exactly over F_p?
fn rem_is_zero(p: u16, num: &[u16], div: &[u16]) -> bool {
    let mut rem = num.to_vec();
    let dd = div.len() - 1;
    for i in (dd..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        rem[i] = 0;
        for (j, &m) in div.iter().enumerate().take(dd) {
            let idx = i - dd + j;
            rem[idx] = (rem[idx] + c * (p - m % p)) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}
